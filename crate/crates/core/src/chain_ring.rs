//! Exact linear algebra over the chain ring `R = E[u]/u^{ep}`: the
//! semilinear operators (Frobenius on `u`, the tame substitution
//! `u -> tau_i(zeta) u`, the derivation `-u d/du`), and canonical
//! echelon forms for submodules of `R^d` with syzygy tracking.
//!
//! `R` is local with maximal ideal `(u)`, so every ideal is `(u^t)`;
//! the echelon form below normalizes each pivot to exactly `u^t`,
//! back-reduces entries at pivot columns below degree `t`, and keeps
//! the annihilator `u^{N-t} * row` of every pivot in play, giving a
//! Howell-style form: span equality is syntactic row equality, and
//! membership is decided by greedy reduction.

use crate::field::FF;
use crate::params::Frame;
use crate::{Error, Result};

/// Dense element of `R`, coefficient `j` multiplying `u^j`; length is
/// always the nilpotency degree `ep`.
pub type RElem = Vec<FF>;
pub type RVec = Vec<RElem>;
/// Row-major rectangular matrix over `R`.
pub type RMat = Vec<Vec<RElem>>;

/// Handle bundling the frame with the truncation degree `N = ep`.
pub struct Ring<'a> {
    pub fr: &'a Frame,
    pub nn: usize,
}

impl<'a> Ring<'a> {
    pub fn new(fr: &'a Frame) -> Ring<'a> {
        Ring { fr, nn: (fr.e * fr.p) as usize }
    }

    pub fn zero(&self) -> RElem {
        vec![FF::ZERO; self.nn]
    }

    pub fn one(&self) -> RElem {
        self.monomial(self.fr.field.one(), 0)
    }

    /// `c * u^j`; degrees past the truncation vanish.
    pub fn monomial(&self, c: FF, j: usize) -> RElem {
        let mut v = self.zero();
        if j < self.nn {
            v[j] = c;
        }
        v
    }

    pub fn from_ff(&self, c: FF) -> RElem {
        self.monomial(c, 0)
    }

    pub fn is_zero(&self, a: &RElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// u-valuation; `None` for the zero element.
    pub fn val(&self, a: &RElem) -> Option<usize> {
        a.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, a: &RElem, b: &RElem) -> RElem {
        a.iter().zip(b).map(|(&x, &y)| self.fr.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &RElem, b: &RElem) -> RElem {
        a.iter().zip(b).map(|(&x, &y)| self.fr.field.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &RElem) -> RElem {
        a.iter().map(|&x| self.fr.field.neg(x)).collect()
    }

    pub fn smul(&self, c: FF, a: &RElem) -> RElem {
        a.iter().map(|&x| self.fr.field.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &RElem, b: &RElem) -> RElem {
        let f = &self.fr.field;
        let mut out = self.zero();
        for (i, &ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if i + j >= self.nn {
                    break;
                }
                out[i + j] = f.add(out[i + j], f.mul(ai, bj));
            }
        }
        out
    }

    /// Drop the `t` lowest coefficient slots: `u^{-t} * a`, defined when
    /// `val(a) >= t`.
    pub fn shift_down(&self, a: &RElem, t: usize) -> RElem {
        debug_assert!(self.val(a).map_or(true, |v| v >= t));
        let mut out = self.zero();
        out[..self.nn - t].copy_from_slice(&a[t..]);
        out
    }

    pub fn shift_up(&self, a: &RElem, t: usize) -> RElem {
        let mut out = self.zero();
        if t < self.nn {
            out[t..].copy_from_slice(&a[..self.nn - t]);
        }
        out
    }

    pub fn is_unit(&self, a: &RElem) -> bool {
        !a[0].is_zero()
    }

    /// Inverse of a unit, by series back-substitution.
    pub fn inv_unit(&self, a: &RElem) -> RElem {
        assert!(self.is_unit(a), "inverse of a non-unit");
        let f = &self.fr.field;
        let c0inv = f.inv(a[0]);
        if a[1..].iter().all(|c| c.is_zero()) {
            return self.from_ff(c0inv);
        }
        let mut inv = self.zero();
        inv[0] = c0inv;
        for k in 1..self.nn {
            let mut s = FF::ZERO;
            for j in 1..=k {
                s = f.add(s, f.mul(a[j], inv[k - j]));
            }
            inv[k] = f.neg(f.mul(c0inv, s));
        }
        inv
    }

    /// Exact division `a / b` when it exists: `b = u^t * unit` and
    /// `val(a) >= t` (or `a = 0`).
    pub fn div_exact(&self, a: &RElem, b: &RElem) -> Option<RElem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        let t = self.val(b)?;
        if self.val(a).unwrap() < t {
            return None;
        }
        let unit = self.shift_down(b, t);
        Some(self.mul(&self.shift_down(a, t), &self.inv_unit(&unit)))
    }

    /// Frobenius on the variable: fixes `E`, sends `u` to `u^p`.
    pub fn r_phi(&self, a: &RElem) -> RElem {
        let mut out = self.zero();
        for (j, &c) in a.iter().enumerate() {
            let k = j * self.fr.p as usize;
            if k >= self.nn {
                break;
            }
            out[k] = c;
        }
        out
    }

    /// The tame substitution in component `i`: `u -> tau_i(zeta) u`.
    pub fn r_ghat(&self, i: usize, a: &RElem) -> RElem {
        let f = &self.fr.field;
        let z = self.fr.tau(i, self.fr.zeta);
        let mut out = self.zero();
        let mut zj = f.one();
        for (j, &c) in a.iter().enumerate() {
            out[j] = f.mul(c, zj);
            zj = f.mul(zj, z);
        }
        out
    }

    /// The E-linear derivation with `delta(u) = -u`, i.e. `-u d/du`.
    pub fn delta(&self, a: &RElem) -> RElem {
        let f = &self.fr.field;
        a.iter()
            .enumerate()
            .map(|(j, &c)| f.mul(f.int(-(j as i64)), c))
            .collect()
    }

    // ---- vectors and matrices ----

    pub fn vzero(&self, d: usize) -> RVec {
        vec![self.zero(); d]
    }

    pub fn vis_zero(&self, v: &RVec) -> bool {
        v.iter().all(|x| self.is_zero(x))
    }

    pub fn vadd(&self, a: &RVec, b: &RVec) -> RVec {
        a.iter().zip(b).map(|(x, y)| self.add(x, y)).collect()
    }

    pub fn vsub(&self, a: &RVec, b: &RVec) -> RVec {
        a.iter().zip(b).map(|(x, y)| self.sub(x, y)).collect()
    }

    /// Ring scalar times vector.
    pub fn vscale(&self, s: &RElem, v: &RVec) -> RVec {
        v.iter().map(|x| self.mul(s, x)).collect()
    }

    pub fn mat_id(&self, d: usize) -> RMat {
        (0..d)
            .map(|i| (0..d).map(|j| if i == j { self.one() } else { self.zero() }).collect())
            .collect()
    }

    /// Matrix applied to a coefficient (column) vector.
    pub fn mat_apply(&self, m: &RMat, v: &RVec) -> RVec {
        m.iter()
            .map(|row| {
                let mut acc = self.zero();
                for (a, x) in row.iter().zip(v) {
                    acc = self.add(&acc, &self.mul(a, x));
                }
                acc
            })
            .collect()
    }

    pub fn mat_mul(&self, a: &RMat, b: &RMat) -> RMat {
        let cols = b[0].len();
        a.iter()
            .map(|arow| {
                (0..cols)
                    .map(|j| {
                        let mut acc = self.zero();
                        for (k, x) in arow.iter().enumerate() {
                            acc = self.add(&acc, &self.mul(x, &b[k][j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    pub fn mat_map(&self, m: &RMat, f: impl Fn(&RElem) -> RElem) -> RMat {
        m.iter().map(|row| row.iter().map(&f).collect()).collect()
    }

    pub fn mat_eq(&self, a: &RMat, b: &RMat) -> bool {
        a == b
    }
}

/// Canonical echelon form of a submodule of `R^d`, with an expression of
/// each canonical row in the original generators and a generating set of
/// the syzygy module of those generators.
pub struct SpanForm {
    pub d: usize,
    pub ngens: usize,
    /// Canonical rows, pivot columns strictly increasing.
    pub rows: Vec<RVec>,
    /// `(column, valuation)` per canonical row.
    pub pivots: Vec<(usize, usize)>,
    /// `exprs[k]` writes `rows[k]` as a combination of the input generators.
    pub exprs: Vec<Vec<RElem>>,
    /// Generators of `{ c : sum_j c_j gens_j = 0 }`.
    pub syzygies: Vec<Vec<RElem>>,
}

struct AugRow {
    value: RVec,
    tag: Vec<RElem>,
}

impl<'a> Ring<'a> {
    pub fn span_form(&self, gens: &[RVec], d: usize) -> SpanForm {
        let ngens = gens.len();
        let mut pool: Vec<AugRow> = gens
            .iter()
            .enumerate()
            .map(|(k, g)| {
                assert_eq!(g.len(), d, "generator length mismatch");
                let mut tag = vec![self.zero(); ngens];
                tag[k] = self.one();
                AugRow { value: g.clone(), tag }
            })
            .collect();

        let mut rows: Vec<AugRow> = Vec::new();
        let mut pivots: Vec<(usize, usize)> = Vec::new();

        for c in 0..d {
            // pick the pool row of least valuation at column c
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in pool.iter().enumerate() {
                if let Some(v) = self.val(&row.value[c]) {
                    if best.map_or(true, |(_, bv)| v < bv) {
                        best = Some((i, v));
                    }
                }
            }
            let Some((idx, t)) = best else { continue };
            let mut piv = pool.swap_remove(idx);
            // normalize the pivot entry to exactly u^t
            let winv = self.inv_unit(&self.shift_down(&piv.value[c], t));
            piv.value = self.vscale(&winv, &piv.value);
            piv.tag = self.vscale(&winv, &piv.tag);
            // keep the pivot's annihilator in play for later columns
            if t > 0 {
                let ann = self.monomial(self.fr.field.one(), self.nn - t);
                pool.push(AugRow {
                    value: self.vscale(&ann, &piv.value),
                    tag: self.vscale(&ann, &piv.tag),
                });
            }
            // eliminate column c from the rest of the pool
            for row in pool.iter_mut() {
                if self.is_zero(&row.value[c]) {
                    continue;
                }
                let q = self.shift_down(&row.value[c], t);
                row.value = self.vsub(&row.value, &self.vscale(&q, &piv.value));
                row.tag = sub_tags(self, &row.tag, &self.vscale(&q, &piv.tag));
            }
            // back-reduce earlier rows at column c below degree t
            for row in rows.iter_mut() {
                let mut high = row.value[c].clone();
                for slot in high.iter_mut().take(t) {
                    *slot = FF::ZERO;
                }
                if self.is_zero(&high) {
                    continue;
                }
                let q = self.shift_down(&high, t);
                row.value = self.vsub(&row.value, &self.vscale(&q, &piv.value));
                row.tag = sub_tags(self, &row.tag, &self.vscale(&q, &piv.tag));
            }
            rows.push(piv);
            pivots.push((c, t));
        }

        let mut syzygies = Vec::new();
        for row in pool {
            debug_assert!(self.vis_zero(&row.value), "leftover row with nonzero value part");
            if !self.vis_zero(&row.tag) {
                syzygies.push(row.tag);
            }
        }
        let (rows, exprs) = rows.into_iter().map(|r| (r.value, r.tag)).unzip();
        SpanForm { d, ngens, rows, pivots, exprs, syzygies }
    }
}

fn sub_tags(ring: &Ring, a: &[RElem], b: &[RElem]) -> Vec<RElem> {
    a.iter().zip(b).map(|(x, y)| ring.sub(x, y)).collect()
}

impl SpanForm {
    /// Two span forms describe the same submodule iff they are identical.
    pub fn same_span(&self, other: &SpanForm) -> bool {
        self.d == other.d && self.rows == other.rows
    }

    /// Reduces `v` against the canonical rows; on success returns
    /// coefficients on the ORIGINAL generators.
    pub fn member(&self, ring: &Ring, v: &RVec) -> Option<Vec<RElem>> {
        assert_eq!(v.len(), self.d);
        let mut rem = v.clone();
        let mut coeffs = vec![ring.zero(); self.ngens];
        for (k, &(c, t)) in self.pivots.iter().enumerate() {
            if ring.is_zero(&rem[c]) {
                continue;
            }
            if ring.val(&rem[c]).unwrap() < t {
                return None;
            }
            let q = ring.shift_down(&rem[c], t);
            rem = ring.vsub(&rem, &ring.vscale(&q, &self.rows[k]));
            for (slot, e) in coeffs.iter_mut().zip(&self.exprs[k]) {
                *slot = ring.add(slot, &ring.mul(&q, e));
            }
        }
        if ring.vis_zero(&rem) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, ring: &Ring, v: &RVec) -> bool {
        self.member(ring, v).is_some()
    }

    pub fn contains_all(&self, ring: &Ring, gens: &[RVec]) -> bool {
        gens.iter().all(|g| self.contains(ring, g))
    }

    /// Number of valuation-zero pivots — the free rank of the largest
    /// free direct summand visible in this form.
    pub fn unit_pivot_count(&self) -> usize {
        self.pivots.iter().filter(|&&(_, t)| t == 0).count()
    }

    pub fn is_full_module(&self) -> bool {
        self.pivots.len() == self.d && self.unit_pivot_count() == self.d
    }
}

/// Generators of the intersection of two spans, from the syzygies of the
/// concatenated generating families.
pub fn span_intersection(ring: &Ring, xs: &[RVec], ys: &[RVec], d: usize) -> Vec<RVec> {
    let mut stacked: Vec<RVec> = xs.to_vec();
    stacked.extend_from_slice(ys);
    let form = ring.span_form(&stacked, d);
    let mut out = Vec::new();
    for syz in &form.syzygies {
        // sum_{j<nx} s_j x_j = -sum_{j>=nx} s_j y_j lies in both spans
        let mut v = ring.vzero(d);
        for (j, x) in xs.iter().enumerate() {
            v = ring.vadd(&v, &ring.vscale(&syz[j], x));
        }
        if !ring.vis_zero(&v) {
            out.push(v);
        }
    }
    out
}

impl<'a> Ring<'a> {
    /// Convenience: check a precondition-style dimension match.
    pub fn expect_dim(&self, got: usize, want: usize, what: &str) -> Result<()> {
        if got != want {
            return Err(Error::DimensionMismatch(format!("{what}: got {got}, want {want}")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Deterministic pseudo-random stream for structural tests.
    struct Lcg(u64);
    impl Lcg {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            self.0 >> 33
        }
        fn below(&mut self, n: u64) -> u64 {
            self.next() % n
        }
    }

    fn small_frame() -> Frame {
        Frame::new(3, 1, 1).unwrap() // e = 2, ep = 6
    }

    fn rand_elem(ring: &Ring, rng: &mut Lcg) -> RElem {
        (0..ring.nn).map(|_| FF(rng.below(ring.fr.field.q as u64) as u32)).collect()
    }

    #[test]
    fn ring_laws_small() {
        let fr = small_frame();
        let ring = Ring::new(&fr);
        let mut rng = Lcg(7);
        for _ in 0..200 {
            let a = rand_elem(&ring, &mut rng);
            let b = rand_elem(&ring, &mut rng);
            let c = rand_elem(&ring, &mut rng);
            assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
            assert_eq!(
                ring.mul(&a, &ring.add(&b, &c)),
                ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
            );
            assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
        }
    }

    #[test]
    fn unit_inverse_round_trip() {
        let fr = small_frame();
        let ring = Ring::new(&fr);
        let mut rng = Lcg(11);
        for _ in 0..100 {
            let mut a = rand_elem(&ring, &mut rng);
            a[0] = FF(1 + rng.below(fr.field.q as u64 - 1) as u32);
            assert_eq!(ring.mul(&a, &ring.inv_unit(&a)), ring.one());
        }
    }

    #[test]
    fn phi_is_multiplicative() {
        let fr = Frame::new(5, 2, 2).unwrap();
        let ring = Ring::new(&fr);
        let mut rng = Lcg(3);
        for _ in 0..20 {
            let a = rand_elem(&ring, &mut rng);
            let b = rand_elem(&ring, &mut rng);
            assert_eq!(ring.r_phi(&ring.mul(&a, &b)), ring.mul(&ring.r_phi(&a), &ring.r_phi(&b)));
            assert_eq!(ring.r_phi(&ring.add(&a, &b)), ring.add(&ring.r_phi(&a), &ring.r_phi(&b)));
        }
        // truncation boundary: u^e maps to u^{ep} = 0
        let ue = ring.monomial(fr.field.one(), fr.e as usize);
        assert!(ring.is_zero(&ring.r_phi(&ue)));
        // monomial rule
        let c = fr.field.from_dlog(5);
        assert_eq!(ring.r_phi(&ring.monomial(c, 3)), ring.monomial(c, 15));
    }

    #[test]
    fn ghat_has_order_e() {
        let fr = Frame::new(5, 2, 2).unwrap();
        let ring = Ring::new(&fr);
        for i in 0..2 {
            let u = ring.monomial(fr.field.one(), 1);
            let mut x = u.clone();
            for _ in 0..fr.e {
                x = ring.r_ghat(i, &x);
            }
            assert_eq!(x, u);
            // u^e is fixed
            let ue = ring.monomial(fr.field.one(), fr.e as usize);
            assert_eq!(ring.r_ghat(i, &ue), ue);
        }
        // ghat is a ring homomorphism
        let mut rng = Lcg(9);
        for _ in 0..10 {
            let a = rand_elem(&ring, &mut rng);
            let b = rand_elem(&ring, &mut rng);
            assert_eq!(ring.r_ghat(1, &ring.mul(&a, &b)), ring.mul(&ring.r_ghat(1, &a), &ring.r_ghat(1, &b)));
        }
    }

    #[test]
    fn delta_is_a_derivation() {
        let fr = small_frame();
        let ring = Ring::new(&fr);
        let mut rng = Lcg(13);
        let u = ring.monomial(fr.field.one(), 1);
        assert_eq!(ring.delta(&u), ring.neg(&u));
        for _ in 0..50 {
            let a = rand_elem(&ring, &mut rng);
            let b = rand_elem(&ring, &mut rng);
            let lhs = ring.delta(&ring.mul(&a, &b));
            let rhs = ring.add(&ring.mul(&ring.delta(&a), &b), &ring.mul(&a, &ring.delta(&b)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn chain_ideal_law() {
        // every ideal of R is (u^t): span of any elements = span of u^{min val}
        let fr = small_frame();
        let ring = Ring::new(&fr);
        let mut rng = Lcg(17);
        for _ in 0..100 {
            let k = 1 + rng.below(3) as usize;
            let gens: Vec<RVec> = (0..k).map(|_| vec![rand_elem(&ring, &mut rng)]).collect();
            let form = ring.span_form(&gens, 1);
            let minval = gens.iter().filter_map(|g| ring.val(&g[0])).min();
            match minval {
                None => assert!(form.rows.is_empty()),
                Some(t) => {
                    assert_eq!(form.rows.len(), 1);
                    assert_eq!(form.rows[0][0], ring.monomial(fr.field.one(), t));
                }
            }
        }
    }

    #[test]
    fn membership_d1_examples() {
        let fr = Frame::new(5, 2, 2).unwrap();
        let ring = Ring::new(&fr);
        let one = fr.field.one();
        let form = ring.span_form(&[vec![ring.monomial(one, 3)], vec![ring.monomial(one, 7)]], 1);
        // canonical generator u^3
        assert_eq!(form.rows.len(), 1);
        assert_eq!(form.rows[0][0], ring.monomial(one, 3));
        assert!(!form.contains(&ring, &vec![ring.monomial(one, 2)]));
        let c = form.member(&ring, &vec![ring.monomial(one, 5)]).unwrap();
        // coefficients on the ORIGINAL generators reproduce the vector
        let rebuilt = ring.add(
            &ring.mul(&c[0], &ring.monomial(one, 3)),
            &ring.mul(&c[1], &ring.monomial(one, 7)),
        );
        assert_eq!(rebuilt, ring.monomial(one, 5));
        // syzygy family kills the generators
        for syz in &form.syzygies {
            let v = ring.add(
                &ring.mul(&syz[0], &ring.monomial(one, 3)),
                &ring.mul(&syz[1], &ring.monomial(one, 7)),
            );
            assert!(ring.is_zero(&v));
        }
        assert!(!form.syzygies.is_empty());
    }

    #[test]
    fn span_equality_matches_double_inclusion() {
        let fr = small_frame();
        let ring = Ring::new(&fr);
        let mut rng = Lcg(23);
        for _ in 0..120 {
            let d = 2;
            let kx = 1 + rng.below(3) as usize;
            let ky = 1 + rng.below(3) as usize;
            let xs: Vec<RVec> = (0..kx)
                .map(|_| (0..d).map(|_| rand_elem(&ring, &mut rng)).collect())
                .collect();
            let ys: Vec<RVec> = (0..ky)
                .map(|_| (0..d).map(|_| rand_elem(&ring, &mut rng)).collect())
                .collect();
            let fx = ring.span_form(&xs, d);
            let fy = ring.span_form(&ys, d);
            let incl = fx.contains_all(&ring, &ys) && fy.contains_all(&ring, &xs);
            assert_eq!(fx.same_span(&fy), incl);
            // canonical form re-spans its input
            assert!(fx.contains_all(&ring, &xs));
            for (k, row) in fx.rows.iter().enumerate() {
                // exprs really express the canonical rows
                let mut v = ring.vzero(d);
                for (j, x) in xs.iter().enumerate() {
                    v = ring.vadd(&v, &ring.vscale(&fx.exprs[k][j], x));
                }
                assert_eq!(&v, row);
            }
        }
    }

    #[test]
    fn syzygies_generate_kernel() {
        // brute-force kernel check at tiny size: every syzygy kills the
        // generators, and membership reduction of (0|s) succeeds for
        // random kernel elements constructed from the syzygy family.
        let fr = small_frame();
        let ring = Ring::new(&fr);
        let mut rng = Lcg(29);
        for _ in 0..60 {
            let d = 2;
            let k = 2 + rng.below(2) as usize;
            let gens: Vec<RVec> = (0..k)
                .map(|_| (0..d).map(|_| rand_elem(&ring, &mut rng)).collect())
                .collect();
            let form = ring.span_form(&gens, d);
            for syz in &form.syzygies {
                let mut v = ring.vzero(d);
                for (j, g) in gens.iter().enumerate() {
                    v = ring.vadd(&v, &ring.vscale(&syz[j], g));
                }
                assert!(ring.vis_zero(&v));
            }
            // member() coefficients rebuild their input
            for g in &gens {
                let c = form.member(&ring, g).unwrap();
                let mut v = ring.vzero(d);
                for (j, gg) in gens.iter().enumerate() {
                    v = ring.vadd(&v, &ring.vscale(&c[j], gg));
                }
                assert_eq!(&v, g);
            }
        }
    }

    #[test]
    fn absorption() {
        let fr = small_frame();
        let ring = Ring::new(&fr);
        let one = fr.field.one();
        let x = vec![ring.one(), ring.monomial(one, 2)];
        let ux = ring.vscale(&ring.monomial(one, 1), &x);
        let f1 = ring.span_form(&[ux, x.clone()], 2);
        let f2 = ring.span_form(&[x], 2);
        assert!(f1.same_span(&f2));
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let fr = Frame::new(5, 2, 2).unwrap();
        let ring = Ring::new(&fr);
        let one = fr.field.one();
        let xs = vec![vec![ring.monomial(one, 3)]];
        let ys = vec![vec![ring.monomial(one, 7)]];
        let int = span_intersection(&ring, &xs, &ys, 1);
        let form = ring.span_form(&int, 1);
        assert_eq!(form.rows.len(), 1);
        assert_eq!(form.rows[0][0], ring.monomial(one, 7));
    }
}
