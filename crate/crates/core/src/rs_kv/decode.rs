use super::{kv_factorize, kv_interpolate, kv_multiplicity, MultiplicityMatrix, RSCode, RsError};
use crate::channel::ReliabilityMatrix;
use crate::galois::Elem;
use crate::scalar::Probability;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeCandidate {
    pub codeword: Vec<Elem>,
    pub message: Vec<Elem>,
    /// `S_M(c) = sum_i m[c(i)][i]`
    pub score: u64,
}

/// Decodes with an explicit multiplicity matrix; the list is ranked by score
/// (descending), then lexicographically by codeword.
pub fn kv_decode_with_multiplicity(
    code: &RSCode,
    m: &MultiplicityMatrix,
) -> Result<Vec<DecodeCandidate>, RsError> {
    let q = kv_interpolate(code, m)?;
    let mut list: Vec<DecodeCandidate> = kv_factorize(code.field(), &q, code.k())
        .into_iter()
        .map(|f| {
            let codeword = code.encode_poly(&f);
            DecodeCandidate {
                score: m.score(&codeword),
                message: f.padded(code.k()),
                codeword,
            }
        })
        .collect();
    if list.is_empty() {
        return Err(RsError::EmptyList);
    }
    list.sort_by(|a, b| b.score.cmp(&a.score).then_with(|| a.codeword.cmp(&b.codeword)));
    Ok(list)
}

/// Koetter-Vardy decoding with a greedy budget of `s` multiplicity increments.
pub fn kv_decode<T: Probability>(
    code: &RSCode,
    pi: &ReliabilityMatrix<T>,
    s: usize,
) -> Result<Vec<DecodeCandidate>, RsError> {
    if pi.n() != code.n() {
        return Err(RsError::LengthMismatch {
            expected: code.n(),
            got: pi.n(),
        });
    }
    kv_decode_with_multiplicity(code, &kv_multiplicity(pi, s.max(1)))
}

/// `<Pi, floor(c)> / sqrt(<Pi, Pi>)`.
pub fn kv_success_ratio<T: Probability>(pi: &ReliabilityMatrix<T>, c: &[Elem]) -> f64 {
    let num = pi.inner_with_word(c).to_f64_lossy();
    let den = pi.inner_self().to_f64_lossy().sqrt();
    num / den
}

/// Asymptotic Koetter-Vardy condition `<Pi, floor(c)> / sqrt(<Pi, Pi>) >= sqrt(k - 1)`,
/// with a rounding allowance of 1e-12.
pub fn kv_success_predicate<T: Probability>(pi: &ReliabilityMatrix<T>, c: &[Elem], k: usize) -> bool {
    kv_success_ratio(pi, c) >= ((k.max(1) - 1) as f64).sqrt() - 1e-12
}

/// Budget schedule for [`kv_decode_adaptive`]: start at `s0` and double while
/// no list member passes [`kv_success_predicate`], up to `s_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdaptiveSchedule {
    pub s0: usize,
    pub s_max: usize,
}

impl AdaptiveSchedule {
    /// `s0 = 2n`, `s_max = 10n`.
    pub fn for_length(n: usize) -> Self {
        AdaptiveSchedule {
            s0: 2 * n,
            s_max: 10 * n,
        }
    }

    /// A single fixed budget.
    pub fn fixed(s: usize) -> Self {
        AdaptiveSchedule { s0: s, s_max: s }
    }
}

/// Returns the first list containing a member that satisfies the success
/// predicate, or the last nonempty list when the budget runs out.
pub fn kv_decode_adaptive<T: Probability>(
    code: &RSCode,
    pi: &ReliabilityMatrix<T>,
    schedule: AdaptiveSchedule,
) -> Result<Vec<DecodeCandidate>, RsError> {
    let mut s = schedule.s0.max(1);
    let mut last = Err(RsError::EmptyList);
    loop {
        let attempt = kv_decode(code, pi, s);
        if let Ok(list) = &attempt {
            if list
                .iter()
                .any(|c| kv_success_predicate(pi, &c.codeword, code.k()))
            {
                return attempt;
            }
        }
        if attempt.is_ok() || last.is_err() {
            last = attempt;
        }
        if s >= schedule.s_max {
            return last;
        }
        s = (s * 2).min(schedule.s_max);
    }
}
