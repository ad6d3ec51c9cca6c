//! Arithmetic frame shared by every other module: an odd prime `p`, a
//! ramification-controlling exponent `r` with `e = p^r - 1`, and a
//! coefficient field `E = F_{p^n}` with `r | n`, so `E` contains a copy
//! of `k = F_{p^r}`.
//!
//! Index convention: positions live in `Z/r` and are written `0..r-1`;
//! the wrap step is `r-1 -> 0`. Twisting embeddings are
//! `tau_i(x) = x^{p^{(r-i) mod r}}`, so `tau_0` is the inclusion of `k`.

use crate::field::{Field, FF};
use crate::{Error, Result};

#[derive(Clone)]
pub struct Frame {
    pub p: i64,
    pub r: usize,
    pub n: usize,
    /// `e = p^r - 1`
    pub e: i64,
    pub field: Field,
    /// A fixed generator of `k^* = F_{p^r}^*` inside `E`: `zeta = g^{(q-1)/e}`.
    pub zeta: FF,
}

impl Frame {
    pub fn new(p: i64, r: usize, n: usize) -> Result<Frame> {
        let field = Field::new(p, n)?;
        Frame::with_field(p, r, field)
    }

    pub fn with_field(p: i64, r: usize, field: Field) -> Result<Frame> {
        if field.p != p {
            return Err(Error::InvalidParams("field characteristic does not match p".into()));
        }
        let n = field.n;
        if r == 0 || n % r != 0 {
            return Err(Error::InvalidParams(format!("need r | n, got r = {r}, n = {n}")));
        }
        let e = p.pow(r as u32) - 1;
        let zeta = field.from_dlog((field.q - 1) / e);
        Ok(Frame { p, r, n, e, field, zeta })
    }

    /// `p^k mod e` for `k >= 0`.
    pub fn p_pow_mod_e(&self, k: usize) -> i64 {
        let mut acc = 1i64;
        for _ in 0..k {
            acc = acc * self.p % self.e;
        }
        acc
    }

    /// Canonical residue of an exponent mod `e`.
    pub fn mod_e(&self, t: i64) -> i64 {
        t.rem_euclid(self.e)
    }

    /// Index arithmetic in `Z/r`.
    pub fn idx(&self, i: i64) -> usize {
        i.rem_euclid(self.r as i64) as usize
    }

    /// `tau_i(x) = x^{p^{(r-i) mod r}}`; requires `x` to lie in `k`.
    pub fn tau(&self, i: usize, x: FF) -> FF {
        debug_assert!(self.in_subfield_k(x), "tau applied outside k");
        let k = (self.r - i % self.r) % self.r;
        let mut y = x;
        for _ in 0..k {
            y = self.field.frob(y);
        }
        y
    }

    /// Whether `x` lies in `k = F_{p^r}` inside `E`.
    pub fn in_subfield_k(&self, x: FF) -> bool {
        self.field.pow_frob(x, self.r) == x
    }

    /// `tau_i(zeta)^t` — the basic eigenvalue building block.
    pub fn tau_zeta_pow(&self, i: usize, t: i64) -> FF {
        self.field.pow(self.tau(i, self.zeta), t)
    }

    /// Discrete log of `x` base `zeta`, defined when `x` is in `k^*`.
    pub fn dlog_zeta(&self, x: FF) -> Result<i64> {
        let t = self
            .field
            .dlog(x)
            .ok_or_else(|| Error::Precondition("dlog of zero".into()))?;
        let step = (self.field.q - 1) / self.e;
        if t % step != 0 {
            return Err(Error::NotInSubfield);
        }
        Ok(t / step)
    }
}

impl Field {
    /// `x^{p^k}`, iterated Frobenius.
    pub fn pow_frob(&self, x: FF, k: usize) -> FF {
        let mut y = x;
        for _ in 0..k {
            y = self.frob(y);
        }
        y
    }
}

/// A subset of `Z/r`, packed as a bitmask over positions `0..r-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct JSet {
    pub bits: u64,
    pub r: usize,
}

impl JSet {
    pub fn new(bits: u64, r: usize) -> JSet {
        assert!(r <= 63);
        JSet { bits: bits & ((1 << r) - 1), r }
    }

    pub fn from_members(members: &[usize], r: usize) -> JSet {
        let mut bits = 0u64;
        for &m in members {
            bits |= 1 << (m % r);
        }
        JSet::new(bits, r)
    }

    /// `1_J(i)` with `i` taken mod `r`.
    pub fn ind(&self, i: i64) -> i64 {
        let k = i.rem_euclid(self.r as i64) as u64;
        ((self.bits >> k) & 1) as i64
    }

    /// `1 - 1_J(i)`, the indicator of the complement.
    pub fn coind(&self, i: i64) -> i64 {
        1 - self.ind(i)
    }

    pub fn complement(&self) -> JSet {
        JSet::new(!self.bits, self.r)
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.r).filter(|&i| self.bits >> i & 1 == 1).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == (1 << self.r) - 1
    }
}

impl std::fmt::Debug for JSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for m in self.members() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
            first = false;
        }
        write!(f, "}}")
    }
}
