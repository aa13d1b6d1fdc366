use std::fmt;

use super::node::assemble;
use super::{CodeNode, DiagonalQuadruple, UuvError};
use crate::channel::{
    reliability_affine_remap, reliability_product, reliability_sum, ReliabilityColumn,
};
use crate::galois::{Elem, FieldContext};
use crate::rs_kv::{kv_decode_adaptive, AdaptiveSchedule};
use crate::{Column, ReliabilityMatrix};

/// Interpolation budget used at every leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecoderConfig {
    /// Fixed budget `s`; adaptive doubling when `None`.
    pub s: Option<usize>,
    /// Adaptive ceiling as a multiple of the leaf length.
    pub s_max_factor: usize,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig {
            s: None,
            s_max_factor: 10,
        }
    }
}

impl DecoderConfig {
    pub fn schedule(&self, n: usize) -> AdaptiveSchedule {
        match self.s {
            Some(s) => AdaptiveSchedule::fixed(s),
            None => AdaptiveSchedule {
                s0: 2 * n,
                s_max: (self.s_max_factor * n).max(2 * n),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: Vec<Elem>,
    pub message: Vec<Elem>,
}

/// Symbolic description of a leaf's channel in terms of the received blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChannelExpr {
    /// Received block `y_i`, 1-based.
    Received(usize),
    Sum(Box<ChannelExpr>, Box<ChannelExpr>),
    Product(Box<ChannelExpr>, Box<ChannelExpr>),
}

impl fmt::Display for ChannelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelExpr::Received(i) => write!(f, "y{i}"),
            ChannelExpr::Sum(a, b) => write!(f, "({a}+{b})"),
            ChannelExpr::Product(a, b) => write!(f, "({a}x{b})"),
        }
    }
}

/// Channel seen by one leaf, in decoding order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafTrace {
    /// `u`/`v` choices from the root, e.g. `"vu"`.
    pub path: String,
    /// One expression per leaf-length block of the leaf's input.
    pub channel: Vec<ChannelExpr>,
}

impl CodeNode {
    pub fn soft_decode(&self, pi: &ReliabilityMatrix, cfg: &DecoderConfig) -> Result<Decoded, UuvError> {
        self.soft_decode_traced(pi, cfg).map(|(d, _)| d)
    }

    /// Also returns the channel expression each leaf decoded.
    pub fn soft_decode_traced(
        &self,
        pi: &ReliabilityMatrix,
        cfg: &DecoderConfig,
    ) -> Result<(Decoded, Vec<LeafTrace>), UuvError> {
        if pi.n() != self.length() || pi.q() != self.field().size() {
            return Err(UuvError::LengthMismatch {
                expected: self.length(),
                got: pi.n(),
            });
        }
        let blocks = 1usize << self.depth();
        let exprs = (1..=blocks).map(ChannelExpr::Received).collect();
        let mut trace = Vec::new();
        let out = decode_rec(self, pi.columns().to_vec(), exprs, cfg, String::new(), &mut trace)?;
        Ok((out, trace))
    }
}

fn decode_rec(
    node: &CodeNode,
    cols: Vec<Column>,
    exprs: Vec<ChannelExpr>,
    cfg: &DecoderConfig,
    path: String,
    trace: &mut Vec<LeafTrace>,
) -> Result<Decoded, UuvError> {
    match node {
        CodeNode::Leaf(code) => {
            trace.push(LeafTrace {
                path,
                channel: exprs,
            });
            let pi = ReliabilityMatrix::new(cols).expect("columns share one alphabet");
            let list = kv_decode_adaptive(code, &pi, cfg.schedule(code.n()))?;
            let best = list.into_iter().next().expect("nonempty list");
            Ok(Decoded {
                codeword: best.codeword,
                message: best.message,
            })
        }
        CodeNode::Node { u, v, d } => {
            let f = node.field();
            let quad = d
                .clone()
                .unwrap_or_else(|| DiagonalQuadruple::identity(u.length()));
            quad.check_decodable()?;
            let n = u.length();
            let (left, right) = cols.split_at(n);
            let half = exprs.len() / 2;
            let (el, er) = exprs.split_at(half);

            let v_cols = (0..n)
                .map(|i| v_column(f, &quad, i, &left[i], &right[i]))
                .collect::<Result<Vec<_>, UuvError>>()?;
            let v_exprs = pair(el, er, ChannelExpr::Sum);
            let dv = decode_rec(v, v_cols, v_exprs, cfg, format!("{path}v"), trace)?;

            let u_cols = (0..n)
                .map(|i| u_column(f, &quad, i, &left[i], &right[i], dv.codeword[i]))
                .collect::<Result<Vec<_>, UuvError>>()?;
            let u_exprs = pair(el, er, ChannelExpr::Product);
            let du = decode_rec(u, u_cols, u_exprs, cfg, format!("{path}u"), trace)?;

            let mut message = du.message;
            message.extend(dv.message);
            Ok(Decoded {
                codeword: assemble(f, d.as_ref(), &du.codeword, &dv.codeword),
                message,
            })
        }
    }
}

fn pair(
    a: &[ChannelExpr],
    b: &[ChannelExpr],
    op: fn(Box<ChannelExpr>, Box<ChannelExpr>) -> ChannelExpr,
) -> Vec<ChannelExpr> {
    a.iter()
        .zip(b)
        .map(|(x, y)| op(Box::new(x.clone()), Box::new(y.clone())))
        .collect()
}

/// Column of `v(i)`: `d1 X_R - d3 X_L = v det`, so take the sum of the
/// columns of `d3 X_L` and `d1 X_R`, then rescale by `det`.
fn v_column(
    f: &FieldContext,
    d: &DiagonalQuadruple,
    i: usize,
    left: &Column,
    right: &Column,
) -> Result<Column, UuvError> {
    let inv1 = f.inv(d.d1[i])?;
    let inv3 = f.inv(d.d3[i])?;
    let a = reliability_affine_remap(f, left, inv3, Elem::ZERO).expect("nonzero scale");
    let b = reliability_affine_remap(f, right, inv1, Elem::ZERO).expect("nonzero scale");
    let mut s = reliability_sum(f, &a, &b).expect("same alphabet");
    s.normalize();
    Ok(reliability_affine_remap(f, &s, d.det(f, i), Elem::ZERO).expect("nonsingular"))
}

/// Column of `u(i)` given `v(i)`: two looks `u = (y_L - v d2) / d1` and
/// `u = (y_R - v d4) / d3`, combined by the normalized product. Disjoint
/// supports fall back to the uniform column.
fn u_column(
    f: &FieldContext,
    d: &DiagonalQuadruple,
    i: usize,
    left: &Column,
    right: &Column,
    v: Elem,
) -> Result<Column, UuvError> {
    let a = reliability_affine_remap(f, left, d.d1[i], f.mul(v, d.d2[i])).expect("d1 nonzero");
    let b = reliability_affine_remap(f, right, d.d3[i], f.mul(v, d.d4[i])).expect("d3 nonzero");
    Ok(reliability_product(f, &a, &b, Elem::ZERO)
        .unwrap_or_else(|_| ReliabilityColumn::uniform(f.size())))
}
