//! Rank-1 objects by their numerical invariants: filtration exponents
//! `m_i`, descent exponents `mu_i`, wrap scalar `a`, and level `kappa`.
//! Provides the attached character, the class-J construction, the
//! Hom-existence criterion, and the max/pushout of two objects with the
//! same character.

use crate::characters::GKChar;
use crate::field::FF;
use crate::params::{Frame, JSet};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BrRank1 {
    pub kappa: i64,
    pub m: Vec<i64>,
    pub mu: Vec<i64>,
    pub a: FF,
}

impl BrRank1 {
    pub fn new(frame: &Frame, kappa: i64, m: Vec<i64>, mu: Vec<i64>, a: FF) -> Result<BrRank1> {
        let r = frame.r;
        if kappa < 2 || kappa > frame.p - 1 {
            return Err(Error::InvalidParams(format!("kappa = {kappa} out of [2, p-1]")));
        }
        if m.len() != r || mu.len() != r {
            return Err(Error::InvalidParams("m, mu must have length r".into()));
        }
        if m.iter().any(|&x| x < 0 || x > frame.e * (kappa - 1)) {
            return Err(Error::InvalidParams("m_i out of [0, e(kappa-1)]".into()));
        }
        if a.is_zero() {
            return Err(Error::InvalidParams("scalar a must be nonzero".into()));
        }
        let mu = mu.iter().map(|&x| frame.mod_e(x)).collect();
        Ok(BrRank1 { kappa, m, mu, a })
    }
}

/// The exponent recurrence `mu_{i+1} = p(mu_i + m_i) mod e` at every
/// index, wrap included.
pub fn validate(frame: &Frame, x: &BrRank1) -> bool {
    (0..frame.r).all(|i| {
        let next = frame.mod_e(frame.p * (x.mu[i] + x.m[i]));
        next == x.mu[frame.idx(i as i64 + 1)]
    })
}

/// The weighted filtration average `(sum_j p^{r-j} m_{i+j}) / e`, an
/// integer for every valid object.
pub fn mu_fil(frame: &Frame, x: &BrRank1) -> Result<Vec<i64>> {
    let r = frame.r;
    (0..r)
        .map(|i| {
            let mut s = 0i64;
            for j in 0..r {
                s += frame.p.pow((r - j) as u32) * x.m[frame.idx((i + j) as i64)];
            }
            if s % frame.e != 0 {
                return Err(Error::InvariantViolation(format!(
                    "filtration average not integral at index {i}: {s} / {}",
                    frame.e
                )));
            }
            Ok(s / frame.e)
        })
        .collect()
}

/// The character attached to a valid rank-1 object: tame exponent
/// `(kappa-1)(1+p+...+p^{r-1}) - (mu_i + mu_fil_i)` read as an
/// `omega_i`-power, normalized to an `omega_0`-power; the computation is
/// repeated at every index and must agree.
pub fn tst_char(frame: &Frame, x: &BrRank1) -> Result<GKChar> {
    if !validate(frame, x) {
        return Err(Error::Precondition("exponent recurrence fails".into()));
    }
    let fil = mu_fil(frame, x)?;
    let geom: i64 = (0..frame.r).map(|k| frame.p_pow_mod_e(k)).sum();
    let mut t0: Option<i64> = None;
    for i in 0..frame.r {
        let xi = frame.mod_e((x.kappa - 1) * geom - (x.mu[i] + fil[i]));
        let t = frame.mod_e(xi * frame.p_pow_mod_e((frame.r - i) % frame.r));
        match t0 {
            None => t0 = Some(t),
            Some(prev) => {
                if prev != t {
                    return Err(Error::InvariantViolation(format!(
                        "character exponent disagrees between indices: {prev} vs {t} at i={i}"
                    )));
                }
            }
        }
    }
    GKChar::new(frame, t0.unwrap(), x.a)
}

/// The level-2 object of class `J` with prescribed character:
/// `m_i = e (1 - 1_J(i+1))` and the matching `mu`.
pub fn class_j(frame: &Frame, j: JSet, psi: GKChar) -> Result<BrRank1> {
    let r = frame.r;
    let n = psi.tame.t;
    let m: Vec<i64> = (0..r).map(|i| frame.e * j.coind(i as i64 + 1)).collect();
    let mu: Vec<i64> = (0..r)
        .map(|i| {
            let mut s = -frame.p_pow_mod_e(i) * frame.mod_e(n);
            for jj in 1..=r {
                s += frame.p.pow((r - jj) as u32) * j.ind((i + jj + 1) as i64);
            }
            frame.mod_e(s)
        })
        .collect();
    let x = BrRank1::new(frame, 2, m, mu, psi.unram)?;
    if !validate(frame, &x) {
        return Err(Error::InvariantViolation("class-J object fails the recurrence".into()));
    }
    let back = tst_char(frame, &x)?;
    if back != psi {
        return Err(Error::InvariantViolation(format!(
            "class-J character round trip failed: wanted t={}, got t={}",
            psi.tame.t, back.tame.t
        )));
    }
    Ok(x)
}

/// Raise the level: `m_i += e(kappa2 - kappa)`; character unchanged.
pub fn iota_raise(frame: &Frame, x: &BrRank1, kappa2: i64) -> Result<BrRank1> {
    if kappa2 < x.kappa {
        return Err(Error::Precondition(format!("kappa2 = {kappa2} < kappa = {}", x.kappa)));
    }
    let shift = frame.e * (kappa2 - x.kappa);
    BrRank1::new(frame, kappa2, x.m.iter().map(|&mi| mi + shift).collect(), x.mu.clone(), x.a)
}

fn same_generic_fiber(frame: &Frame, a: &BrRank1, b: &BrRank1) -> Result<()> {
    if a.kappa != b.kappa {
        return Err(Error::Precondition("objects at different levels".into()));
    }
    if tst_char(frame, a)? != tst_char(frame, b)? {
        return Err(Error::Precondition("objects carry different characters".into()));
    }
    Ok(())
}

/// A nonzero map `A -> B` exists iff the filtration averages satisfy
/// `fil^B >= fil^A` pointwise; the map then sends the generator of
/// component i to `u^{v_i}` times the target generator.
pub fn hom_exists(frame: &Frame, a: &BrRank1, b: &BrRank1) -> Result<Option<Vec<i64>>> {
    same_generic_fiber(frame, a, b)?;
    let fa = mu_fil(frame, a)?;
    let fb = mu_fil(frame, b)?;
    let v: Vec<i64> = fa.iter().zip(&fb).map(|(&x, &y)| y - x).collect();
    if v.iter().any(|&x| x < 0) {
        return Ok(None);
    }
    debug_assert!(v.iter().all(|&x| x < frame.e * frame.p));
    Ok(Some(v))
}

pub struct Pushout {
    pub c: BrRank1,
    /// Hom valuations A -> C.
    pub va: Vec<i64>,
    /// Hom valuations B -> C.
    pub vb: Vec<i64>,
    pub gamma_fil: Vec<i64>,
}

/// The least common over-object of A and B: filtration averages are the
/// pointwise max, with explicit exponents.
pub fn max_pushout(frame: &Frame, a: &BrRank1, b: &BrRank1) -> Result<Pushout> {
    same_generic_fiber(frame, a, b)?;
    let r = frame.r;
    let fa = mu_fil(frame, a)?;
    let fb = mu_fil(frame, b)?;
    let n: Vec<i64> = (0..r)
        .map(|i| {
            let d = (fb[i] - fa[i]).max(0);
            if d % frame.p != 0 {
                return Err(Error::InvariantViolation(format!(
                    "fil difference not divisible by p at index {i}: {d}"
                )));
            }
            Ok(d / frame.p)
        })
        .collect::<Result<_>>()?;
    let c_m: Vec<i64> = (0..r)
        .map(|i| a.m[i] + frame.p * n[i] - n[frame.idx(i as i64 + 1)])
        .collect();
    let gamma_fil: Vec<i64> = (0..r).map(|i| fa[i].max(fb[i])).collect();
    let gamma: Vec<i64> = (0..r).map(|i| frame.mod_e(a.mu[i] + fa[i] - gamma_fil[i])).collect();
    for i in 0..r {
        let (lo, hi) = (a.m[i].min(b.m[i]), a.m[i].max(b.m[i]));
        if c_m[i] < lo || c_m[i] > hi {
            return Err(Error::InvariantViolation(format!(
                "pushout exponent escapes [min, max] at index {i}: {}",
                c_m[i]
            )));
        }
    }
    let c = BrRank1::new(frame, a.kappa, c_m, gamma, a.a)?;
    if !validate(frame, &c) {
        return Err(Error::InvariantViolation("pushout fails the recurrence".into()));
    }
    let fc = mu_fil(frame, &c)?;
    if fc != gamma_fil {
        return Err(Error::InvariantViolation("pushout filtration average mismatch".into()));
    }
    if tst_char(frame, &c)? != tst_char(frame, a)? {
        return Err(Error::InvariantViolation("pushout changed the character".into()));
    }
    let va = hom_exists(frame, a, &c)?
        .ok_or_else(|| Error::InvariantViolation("missing hom A -> pushout".into()))?;
    let vb = hom_exists(frame, b, &c)?
        .ok_or_else(|| Error::InvariantViolation("missing hom B -> pushout".into()))?;
    Ok(Pushout { c, va, vb, gamma_fil })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr() -> Frame {
        Frame::new(5, 2, 2).unwrap()
    }

    fn obj(frame: &Frame, kappa: i64, m: &[i64], mu: &[i64]) -> BrRank1 {
        BrRank1::new(frame, kappa, m.to_vec(), mu.to_vec(), frame.field.one()).unwrap()
    }

    #[test]
    fn validate_fixtures() {
        let f = fr();
        assert!(validate(&f, &obj(&f, 2, &[24, 0], &[22, 14])));
        assert!(validate(&f, &obj(&f, 2, &[0, 0], &[0, 0])));
        assert!(!validate(&f, &obj(&f, 2, &[1, 0], &[0, 0])));
    }

    #[test]
    fn mu_fil_fixtures() {
        let f = fr();
        assert_eq!(mu_fil(&f, &obj(&f, 2, &[24, 0], &[22, 14])).unwrap(), vec![25, 5]);
        assert_eq!(mu_fil(&f, &obj(&f, 2, &[0, 0], &[0, 0])).unwrap(), vec![0, 0]);
        assert_eq!(mu_fil(&f, &obj(&f, 2, &[24, 24], &[0, 0])).unwrap(), vec![30, 30]);
    }

    #[test]
    fn tst_char_fixtures() {
        let f = fr();
        // etale-type level-2 object
        assert_eq!(tst_char(&f, &obj(&f, 2, &[24, 24], &[0, 0])).unwrap().tame.t, 0);
        // multiplicative-type: cyclotomic exponent 1 + p
        assert_eq!(tst_char(&f, &obj(&f, 2, &[0, 0], &[0, 0])).unwrap().tame.t, 6);
        // class-J fixture
        assert_eq!(tst_char(&f, &obj(&f, 2, &[24, 0], &[22, 14])).unwrap().tame.t, 7);
    }

    #[test]
    fn class_j_fixture() {
        let f = fr();
        let psi = GKChar::new(&f, 7, f.field.one()).unwrap();
        let x = class_j(&f, JSet::from_members(&[0], 2), psi).unwrap();
        assert_eq!(x.m, vec![24, 0]);
        assert_eq!(x.mu, vec![22, 14]);
        // full J gives the multiplicative shape
        let triv = GKChar::new(&f, 0, f.field.one()).unwrap();
        let y = class_j(&f, JSet::from_members(&[0, 1], 2), triv).unwrap();
        assert_eq!(y.m, vec![0, 0]);
    }

    #[test]
    fn class_j_round_trip_exhaustive() {
        let f = fr();
        for bits in 0u64..4 {
            let j = JSet::new(bits, 2);
            for t in 0..24 {
                for adl in [0i64, 1, 5] {
                    let psi = GKChar::new(&f, t, f.field.from_dlog(adl)).unwrap();
                    let x = class_j(&f, j, psi).unwrap();
                    assert_eq!(tst_char(&f, &x).unwrap(), psi);
                }
            }
        }
        // r = 1, empty J
        let f1 = Frame::new(5, 1, 1).unwrap();
        for t in 0..4 {
            let psi = GKChar::new(&f1, t, f1.field.one()).unwrap();
            let x = class_j(&f1, JSet::new(0, 1), psi).unwrap();
            assert_eq!(x.m, vec![4]);
            assert_eq!(x.mu, vec![f1.mod_e(-t)]);
        }
    }

    #[test]
    fn iota_raise_preserves_char() {
        let f = fr();
        let x = obj(&f, 2, &[24, 0], &[22, 14]);
        let y = iota_raise(&f, &x, 4).unwrap();
        assert_eq!(y.m, vec![72, 48]);
        assert_eq!(tst_char(&f, &y).unwrap(), tst_char(&f, &x).unwrap());
        assert_eq!(iota_raise(&f, &x, 2).unwrap(), x);
        assert!(iota_raise(&f, &y, 2).is_err());
    }

    #[test]
    fn hom_exists_r1_fixture() {
        let f = Frame::new(5, 1, 1).unwrap();
        let a = BrRank1::new(&f, 2, vec![0], vec![1], f.field.one()).unwrap();
        let b = BrRank1::new(&f, 2, vec![4], vec![0], f.field.one()).unwrap();
        assert_eq!(tst_char(&f, &a).unwrap(), tst_char(&f, &b).unwrap());
        assert_eq!(hom_exists(&f, &a, &b).unwrap(), Some(vec![5]));
        assert_eq!(hom_exists(&f, &b, &a).unwrap(), None);
        assert_eq!(hom_exists(&f, &a, &a).unwrap(), Some(vec![0]));
    }

    #[test]
    fn max_pushout_fixture() {
        let f = fr();
        let a = obj(&f, 2, &[18, 6], &[0, 18]);
        let b = obj(&f, 2, &[6, 18], &[10, 8]);
        let push = max_pushout(&f, &a, &b).unwrap();
        assert_eq!(push.c.m, vec![16, 16]);
        assert_eq!(push.c.mu, vec![0, 8]);
        assert_eq!(push.gamma_fil, vec![20, 20]);
        // symmetry of the construction
        let push2 = max_pushout(&f, &b, &a).unwrap();
        assert_eq!(push2.c.m, push.c.m);
        assert_eq!(push2.c.mu, push.c.mu);
        // comparable case collapses onto the larger object
        let a1 = BrRank1::new(&Frame::new(5, 1, 1).unwrap(), 2, vec![0], vec![1], FF(1)).unwrap();
        let f1 = Frame::new(5, 1, 1).unwrap();
        let b1 = BrRank1::new(&f1, 2, vec![4], vec![0], FF(1)).unwrap();
        let p1 = max_pushout(&f1, &a1, &b1).unwrap();
        assert_eq!(p1.c.m, b1.m);
        assert_eq!(p1.c.mu, b1.mu);
    }

    #[test]
    fn fil_recurrence_property() {
        // p(mu_i + fil_i) = mu_{i+1} + fil_{i+1} mod e for all valid objects
        let f = fr();
        for m0 in (0..=24).step_by(6) {
            for m1 in (0..=24).step_by(6) {
                for mu0 in 0..24 {
                    let mu1 = f.mod_e(5 * (mu0 + m0));
                    let back = f.mod_e(5 * (mu1 + m1));
                    if back != mu0 {
                        continue;
                    }
                    let x = obj(&f, 2, &[m0, m1], &[mu0, mu1]);
                    assert!(validate(&f, &x));
                    let fil = mu_fil(&f, &x).unwrap();
                    assert_eq!(f.mod_e(5 * (x.mu[0] + fil[0])), f.mod_e(x.mu[1] + fil[1]));
                    assert_eq!(f.mod_e(5 * (x.mu[1] + fil[1])), f.mod_e(x.mu[0] + fil[0]));
                }
            }
        }
    }
}
