//! Key files: `"UUVM"`, version `0x01`, kind byte, little-endian `u32`
//! fields `q, n, k_u, k_v, t`, a payload and a trailing little-endian CRC32
//! of everything before it.
//!
//! Public payload: `G_pub` row-major as `u16`. Secret payload: `S` row-major
//! as `u16`, the permutation as `2n` `u32`, then `d1, d2, d3, d4` as `n`
//! `u16` each.
//!
//! Element files: `u32` count followed by that many `u16`, little-endian.

use std::sync::Arc;

use super::{McElieceError, PublicKey, SecretKey};
use crate::galois::{Elem, FieldContext, Matrix};
use crate::uuv::DiagonalQuadruple;

const MAGIC: &[u8; 4] = b"UUVM";
const VERSION: u8 = 0x01;
const HEADER: usize = 4 + 1 + 1 + 5 * 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeyKind {
    Public = 0,
    Secret = 1,
}

struct Header {
    q: u32,
    n: usize,
    k_u: usize,
    k_v: usize,
    t: usize,
}

fn put_u16s(out: &mut Vec<u8>, xs: &[Elem]) {
    for x in xs {
        out.extend_from_slice(&x.0.to_le_bytes());
    }
}

fn header(kind: KeyKind, h: &Header) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(kind as u8);
    for v in [h.q, h.n as u32, h.k_u as u32, h.k_v as u32, h.t as u32] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

fn seal(mut out: Vec<u8>) -> Vec<u8> {
    let crc = crc32fast::hash(&out);
    out.extend_from_slice(&crc.to_le_bytes());
    out
}

pub fn save_public(pk: &PublicKey) -> Vec<u8> {
    let h = Header {
        q: pk.field.q(),
        n: pk.n,
        k_u: pk.k_u,
        k_v: pk.k_v,
        t: pk.t,
    };
    let mut out = header(KeyKind::Public, &h);
    put_u16s(&mut out, pk.g_pub.data());
    seal(out)
}

pub fn save_secret(sk: &SecretKey) -> Vec<u8> {
    let h = Header {
        q: sk.field.q(),
        n: sk.n,
        k_u: sk.k_u,
        k_v: sk.k_v,
        t: sk.t,
    };
    let mut out = header(KeyKind::Secret, &h);
    put_u16s(&mut out, sk.s.data());
    for p in &sk.perm {
        out.extend_from_slice(&p.to_le_bytes());
    }
    for d in [&sk.d.d1, &sk.d.d2, &sk.d.d3, &sk.d.d4] {
        put_u16s(&mut out, d);
    }
    seal(out)
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> &[u8] {
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        s
    }

    fn u32(&mut self) -> u32 {
        u32::from_le_bytes(self.take(4).try_into().unwrap())
    }

    fn elems(&mut self, n: usize, q: u32) -> Result<Vec<Elem>, McElieceError> {
        let raw = self.take(2 * n);
        raw.chunks_exact(2)
            .map(|c| {
                let v = u16::from_le_bytes([c[0], c[1]]);
                if (v as u32) < q {
                    Ok(Elem(v))
                } else {
                    Err(McElieceError::CorruptKey(format!("element {v} outside GF({q})")))
                }
            })
            .collect()
    }
}

/// Validates framing, checksum and header; returns the header and a reader
/// positioned at the payload.
fn open(bytes: &[u8], kind: KeyKind) -> Result<(Header, Reader<'_>), McElieceError> {
    if bytes.len() < HEADER + 4 {
        return Err(McElieceError::CorruptLength);
    }
    if &bytes[..4] != MAGIC {
        return Err(McElieceError::BadMagic);
    }
    if bytes[4] != VERSION {
        return Err(McElieceError::VersionMismatch(bytes[4]));
    }
    if bytes[5] != kind as u8 {
        return Err(McElieceError::KindMismatch { expected: kind });
    }
    let mut r = Reader { bytes, pos: 6 };
    let q = r.u32();
    let [n, k_u, k_v, t] = [(); 4].map(|_| r.u32() as usize);
    let (n128, k128) = (n as u128, k_u as u128 + k_v as u128);
    let payload = match kind {
        KeyKind::Public => 2 * k128 * 2 * n128,
        KeyKind::Secret => 2 * k128 * k128 + 4 * 2 * n128 + 4 * 2 * n128,
    };
    if bytes.len() as u128 != (HEADER + 4) as u128 + payload {
        return Err(McElieceError::CorruptLength);
    }
    let (body, tail) = bytes.split_at(bytes.len() - 4);
    if crc32fast::hash(body) != u32::from_le_bytes(tail.try_into().unwrap()) {
        return Err(McElieceError::Crc);
    }
    if n == 0 || k_u == 0 || k_v == 0 || k_u > n || k_v > n || n as u64 > q as u64 {
        return Err(McElieceError::CorruptKey(format!(
            "parameters q = {q}, n = {n}, k_u = {k_u}, k_v = {k_v}"
        )));
    }
    Ok((Header { q, n, k_u, k_v, t }, r))
}

pub fn load_public(bytes: &[u8]) -> Result<PublicKey, McElieceError> {
    let (h, mut r) = open(bytes, KeyKind::Public)?;
    let field = Arc::new(FieldContext::new(h.q)?);
    let k = h.k_u + h.k_v;
    let g_pub = Matrix::from_vec(k, 2 * h.n, r.elems(k * 2 * h.n, h.q)?);
    Ok(PublicKey {
        field,
        n: h.n,
        k_u: h.k_u,
        k_v: h.k_v,
        t: h.t,
        g_pub,
    })
}

pub fn load_secret(bytes: &[u8]) -> Result<SecretKey, McElieceError> {
    let (h, mut r) = open(bytes, KeyKind::Secret)?;
    let field = Arc::new(FieldContext::new(h.q)?);
    let k = h.k_u + h.k_v;
    let s = Matrix::from_vec(k, k, r.elems(k * k, h.q)?);
    let perm: Vec<u32> = (0..2 * h.n).map(|_| r.u32()).collect();
    let mut seen = vec![false; 2 * h.n];
    for &p in &perm {
        match seen.get_mut(p as usize) {
            Some(s) if !*s => *s = true,
            _ => return Err(McElieceError::CorruptKey("permutation is not a bijection".into())),
        }
    }
    let [d1, d2, d3, d4] = [(); 4].map(|_| r.elems(h.n, h.q));
    let d = DiagonalQuadruple::new(&field, d1?, d2?, d3?, d4?)
        .map_err(|e| McElieceError::CorruptKey(e.to_string()))?;
    if s.rank(&field) != k {
        return Err(McElieceError::CorruptKey("scrambler is singular".into()));
    }
    Ok(SecretKey {
        field,
        n: h.n,
        k_u: h.k_u,
        k_v: h.k_v,
        t: h.t,
        d,
        perm,
        s,
    })
}

pub fn write_elements(xs: &[Elem]) -> Vec<u8> {
    let mut out = Vec::with_capacity(4 + 2 * xs.len());
    out.extend_from_slice(&(xs.len() as u32).to_le_bytes());
    put_u16s(&mut out, xs);
    out
}

pub fn read_elements(bytes: &[u8]) -> Result<Vec<Elem>, McElieceError> {
    if bytes.len() < 4 {
        return Err(McElieceError::CorruptLength);
    }
    let count = u32::from_le_bytes(bytes[..4].try_into().unwrap()) as u64;
    if bytes.len() as u64 != 4 + 2 * count {
        return Err(McElieceError::CorruptLength);
    }
    Ok(bytes[4..]
        .chunks_exact(2)
        .map(|c| Elem(u16::from_le_bytes([c[0], c[1]])))
        .collect())
}
