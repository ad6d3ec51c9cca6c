//! Tame characters, unramified twists, weights, and the character-matching
//! condition that ties a weight and a subset `J` to a pair of characters.
//!
//! A tame character is `omega_0^t` with `t` taken mod `e`; the family is
//! generated by `omega_i = omega_0^{p^{(r-i) mod r}}`, which satisfies
//! `omega_{i+1}^p = omega_i`.

use crate::field::FF;
use crate::params::{Frame, JSet};
use crate::{Error, Result};

/// `omega_0^t` on tame inertia.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TameChar {
    pub t: i64,
}

/// A character split as tame part times unramified part; `unram` is the
/// value on a geometric Frobenius.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GKChar {
    pub tame: TameChar,
    pub unram: FF,
}

impl GKChar {
    pub fn new(frame: &Frame, t: i64, unram: FF) -> Result<GKChar> {
        if unram.is_zero() {
            return Err(Error::InvalidParams("unramified scalar must be nonzero".into()));
        }
        Ok(GKChar { tame: TameChar { t: frame.mod_e(t) }, unram })
    }
}

/// Highest-weight data: `det^{a_i} Sym^{b_i - 1}` per embedding.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weight {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl Weight {
    pub fn new(frame: &Frame, a: Vec<i64>, b: Vec<i64>) -> Result<Weight> {
        let (p, r) = (frame.p, frame.r);
        if a.len() != r || b.len() != r {
            return Err(Error::InvalidParams("weight vectors must have length r".into()));
        }
        if a.iter().any(|&x| x < 0 || x > p - 1) {
            return Err(Error::InvalidParams("need 0 <= a_i <= p-1".into()));
        }
        if a.iter().all(|&x| x == p - 1) {
            return Err(Error::InvalidParams("not all a_i may equal p-1".into()));
        }
        if b.iter().any(|&x| x < 1 || x > p) {
            return Err(Error::InvalidParams("need 1 <= b_i <= p".into()));
        }
        Ok(Weight { a, b })
    }
}

/// `prod_i omega_i^{c_i}` normalized to an `omega_0`-power:
/// `t = sum_i c_i p^{(r-i) mod r} mod e`.
pub fn omega_product(frame: &Frame, c: &[i64]) -> TameChar {
    assert_eq!(c.len(), frame.r);
    let mut t = 0i64;
    for (i, &ci) in c.iter().enumerate() {
        let k = (frame.r - i % frame.r) % frame.r;
        t = frame.mod_e(t + frame.mod_e(ci) * frame.p_pow_mod_e(k));
    }
    TameChar { t }
}

/// `2 <= b_i <= p-2` for every index.
pub fn is_regular(frame: &Frame, w: &Weight) -> bool {
    w.b.iter().all(|&x| 2 <= x && x <= frame.p - 2)
}

/// Whether the pair of tame characters matches the weight along `J`:
/// `psi' = prod omega_i^{a_i + b_i 1_J(i)}` and `psi''` the same with the
/// complementary indicator.
pub fn condition_a_check(
    frame: &Frame,
    psi_p: TameChar,
    psi_pp: TameChar,
    w: &Weight,
    j: JSet,
) -> bool {
    let r = frame.r;
    let cp: Vec<i64> = (0..r).map(|i| w.a[i] + w.b[i] * j.ind(i as i64)).collect();
    let cpp: Vec<i64> = (0..r).map(|i| w.a[i] + w.b[i] * j.coind(i as i64)).collect();
    omega_product(frame, &cp) == psi_p && omega_product(frame, &cpp) == psi_pp
}

/// Exhaustively lists all `(Weight, J)` passing `condition_a_check`,
/// optionally restricted to `a = 0` and to regular `b`.
pub fn condition_a_solve(
    frame: &Frame,
    psi_p: TameChar,
    psi_pp: TameChar,
    require_a_zero: bool,
    require_regular: bool,
) -> Vec<(Weight, JSet)> {
    let (p, r) = (frame.p, frame.r);
    let a_choices: Vec<Vec<i64>> = if require_a_zero {
        vec![vec![0; r]]
    } else {
        tuples(0, p - 1, r)
    };
    let (blo, bhi) = if require_regular { (2, p - 2) } else { (1, p) };
    let b_choices = tuples(blo, bhi, r);
    let mut out = Vec::new();
    for a in &a_choices {
        if a.iter().all(|&x| x == p - 1) {
            continue;
        }
        for b in &b_choices {
            let w = Weight { a: a.clone(), b: b.clone() };
            for bits in 0u64..(1 << r) {
                let j = JSet::new(bits, r);
                if condition_a_check(frame, psi_p, psi_pp, &w, j) {
                    out.push((w.clone(), j));
                }
            }
        }
    }
    out
}

/// All vectors of length `len` with entries in `[lo, hi]`.
pub(crate) fn tuples(lo: i64, hi: i64, len: usize) -> Vec<Vec<i64>> {
    if hi < lo {
        return Vec::new();
    }
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &out {
            for x in lo..=hi {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}
