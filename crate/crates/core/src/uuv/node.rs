use std::sync::Arc;

use super::{DiagonalQuadruple, UuvError};
use crate::galois::{Elem, FieldContext, Matrix};
use crate::rs_kv::RSCode;

/// Reed-Solomon leaf or a (U|U+V) / `[U,V]·D` node over two children of equal length.
#[derive(Clone, Debug, PartialEq)]
pub enum CodeNode {
    Leaf(RSCode),
    Node {
        u: Box<CodeNode>,
        v: Box<CodeNode>,
        /// `None` is the plain (u | u + v) combination.
        d: Option<DiagonalQuadruple>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodeMatrices {
    pub g: Matrix,
    pub h: Matrix,
}

impl CodeNode {
    pub fn leaf(code: RSCode) -> Self {
        CodeNode::Leaf(code)
    }

    pub fn plain(u: CodeNode, v: CodeNode) -> Result<Self, UuvError> {
        Self::combine(u, v, None)
    }

    pub fn matrix_product(
        u: CodeNode,
        v: CodeNode,
        d: DiagonalQuadruple,
    ) -> Result<Self, UuvError> {
        Self::combine(u, v, Some(d))
    }

    fn combine(u: CodeNode, v: CodeNode, d: Option<DiagonalQuadruple>) -> Result<Self, UuvError> {
        if u.length() != v.length() {
            return Err(UuvError::ChildLengthMismatch {
                u: u.length(),
                v: v.length(),
            });
        }
        if u.field() != v.field() {
            return Err(UuvError::FieldMismatch);
        }
        if let Some(d) = &d {
            if d.len() != u.length() {
                return Err(UuvError::LengthMismatch {
                    expected: u.length(),
                    got: d.len(),
                });
            }
        }
        Ok(CodeNode::Node {
            u: Box::new(u),
            v: Box::new(v),
            d,
        })
    }

    /// Balanced plain tree with RS leaves of length `leaf_n` and dimensions
    /// `dims`, listed in message order (u-subtree first). `dims.len()` must be
    /// a power of two.
    pub fn balanced(
        field: Arc<FieldContext>,
        leaf_n: usize,
        dims: &[usize],
    ) -> Result<Self, UuvError> {
        if !dims.len().is_power_of_two() {
            return Err(UuvError::LengthMismatch {
                expected: dims.len().next_power_of_two(),
                got: dims.len(),
            });
        }
        if dims.len() == 1 {
            return Ok(CodeNode::Leaf(RSCode::new(field, leaf_n, dims[0])?));
        }
        let (a, b) = dims.split_at(dims.len() / 2);
        Self::plain(
            Self::balanced(field.clone(), leaf_n, a)?,
            Self::balanced(field, leaf_n, b)?,
        )
    }

    pub fn field(&self) -> &FieldContext {
        self.field_arc()
    }

    pub fn field_arc(&self) -> &Arc<FieldContext> {
        match self {
            CodeNode::Leaf(c) => c.field_arc(),
            CodeNode::Node { u, .. } => u.field_arc(),
        }
    }

    pub fn length(&self) -> usize {
        match self {
            CodeNode::Leaf(c) => c.n(),
            CodeNode::Node { u, .. } => 2 * u.length(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            CodeNode::Leaf(c) => c.k(),
            CodeNode::Node { u, v, .. } => u.dimension() + v.dimension(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            CodeNode::Leaf(_) => 0,
            CodeNode::Node { u, v, .. } => 1 + u.depth().max(v.depth()),
        }
    }

    /// Leaves in message order.
    pub fn leaves(&self) -> Vec<&RSCode> {
        match self {
            CodeNode::Leaf(c) => vec![c],
            CodeNode::Node { u, v, .. } => {
                let mut out = u.leaves();
                out.extend(v.leaves());
                out
            }
        }
    }

    /// The node's quadruple, identity for plain nodes; `None` for leaves.
    pub fn quadruple(&self) -> Option<DiagonalQuadruple> {
        match self {
            CodeNode::Leaf(_) => None,
            CodeNode::Node { u, d, .. } => Some(
                d.clone()
                    .unwrap_or_else(|| DiagonalQuadruple::identity(u.length())),
            ),
        }
    }

    /// Message split as `(m_u | m_v)`.
    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>, UuvError> {
        if message.len() != self.dimension() {
            return Err(UuvError::LengthMismatch {
                expected: self.dimension(),
                got: message.len(),
            });
        }
        match self {
            CodeNode::Leaf(c) => Ok(c.encode(message)?),
            CodeNode::Node { u, v, d } => {
                let (mu, mv) = message.split_at(u.dimension());
                let (cu, cv) = (u.encode(mu)?, v.encode(mv)?);
                Ok(assemble(self.field(), d.as_ref(), &cu, &cv))
            }
        }
    }

    pub fn generator_matrix(&self) -> Matrix {
        match self {
            CodeNode::Leaf(c) => c.generator_matrix(),
            CodeNode::Node { u, v, .. } => product_generator(
                self.field(),
                &u.generator_matrix(),
                &v.generator_matrix(),
                &self.quadruple().expect("node"),
            ),
        }
    }

    /// Generator of the dual: `[H_u, H_v]·D'` with `D'` from
    /// [`DiagonalQuadruple::dual`].
    pub fn parity_check_matrix(&self) -> Matrix {
        match self {
            CodeNode::Leaf(c) => c.parity_check_matrix(),
            CodeNode::Node { u, v, .. } => {
                let f = self.field();
                product_generator(
                    f,
                    &u.parity_check_matrix(),
                    &v.parity_check_matrix(),
                    &self.quadruple().expect("node").dual(f),
                )
            }
        }
    }

    pub fn build_matrices(&self) -> CodeMatrices {
        CodeMatrices {
            g: self.generator_matrix(),
            h: self.parity_check_matrix(),
        }
    }

    /// Exact minimum weight by enumerating one message per projective
    /// point (leading nonzero coordinate 1). Refuses `q^k > 2^26`.
    pub fn min_distance_bruteforce(&self) -> Result<usize, UuvError> {
        let f = self.field();
        let q = f.q() as usize;
        let k = self.dimension();
        let count = (q as f64).powi(k as i32);
        if count > (1u64 << 26) as f64 {
            return Err(UuvError::TooLarge(count));
        }
        let g = self.generator_matrix();
        let n = g.cols();
        let mut best = usize::MAX;
        for top in 0..k {
            let mut word = g.row(top).to_vec();
            let mut digits = vec![0usize; top];
            loop {
                best = best.min(word.iter().filter(|e| !e.is_zero()).count());
                // mixed-radix increment, updating the word by the coefficient change
                let mut j = 0;
                while j < top {
                    let old = Elem(digits[j] as u16);
                    digits[j] = (digits[j] + 1) % q;
                    let new = Elem(digits[j] as u16);
                    let delta = f.sub(new, old);
                    f.axpy(&mut word[..n], delta, g.row(j));
                    if digits[j] != 0 {
                        break;
                    }
                    j += 1;
                }
                if j == top {
                    break;
                }
            }
        }
        Ok(best)
    }
}

/// `(u D1 + v D2 | u D3 + v D4)`, or `(u | u + v)` when `d` is `None`.
pub(crate) fn assemble(
    f: &FieldContext,
    d: Option<&DiagonalQuadruple>,
    cu: &[Elem],
    cv: &[Elem],
) -> Vec<Elem> {
    match d {
        Some(d) => d.combine(f, cu, cv),
        None => cu
            .iter()
            .copied()
            .chain(cu.iter().zip(cv).map(|(&a, &b)| f.add(a, b)))
            .collect(),
    }
}

/// Generator of `[U, V]·D` from generators of `U` and `V`:
/// rows `(g D1 | g D3)` for `g` in `G_u`, then `(g D2 | g D4)` for `g` in `G_v`.
pub fn product_generator(f: &FieldContext, gu: &Matrix, gv: &Matrix, d: &DiagonalQuadruple) -> Matrix {
    let n = d.len();
    let zeros = vec![Elem::ZERO; n];
    let mut rows = Vec::with_capacity(gu.rows() + gv.rows());
    for r in 0..gu.rows() {
        rows.push(d.combine(f, gu.row(r), &zeros));
    }
    for r in 0..gv.rows() {
        rows.push(d.combine(f, &zeros, gv.row(r)));
    }
    if rows.is_empty() {
        return Matrix::zeros(0, 2 * n);
    }
    Matrix::from_rows(rows)
}

impl CodeNode {
    /// See [`product_generator`].
    pub fn product_generator(
        f: &FieldContext,
        gu: &Matrix,
        gv: &Matrix,
        d: &DiagonalQuadruple,
    ) -> Matrix {
        product_generator(f, gu, gv, d)
    }
}
