//! The coefficient field `E = F_{p^n}`, realized through an explicit
//! irreducible polynomial and a distinguished multiplicative generator.
//!
//! Elements are stored as discrete logs; addition goes through a Zech
//! logarithm table. Both the modulus and the generator are recorded so
//! that runs are reproducible and portable.

use crate::{Error, Result};

/// An element of `E`. Code 0 is the zero element, code `1 + t` is `g^t`
/// for the distinguished generator `g`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FF(pub(crate) u32);

impl FF {
    pub const ZERO: FF = FF(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Debug for FF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 == 0 {
            write!(f, "0")
        } else {
            write!(f, "g^{}", self.0 - 1)
        }
    }
}

const ZECH_NONE: u32 = u32::MAX;

#[derive(Clone)]
pub struct Field {
    pub p: i64,
    pub n: usize,
    /// `p^n`
    pub q: i64,
    /// Monic irreducible modulus, little-endian coefficients, length `n + 1`.
    pub poly: Vec<i64>,
    /// The distinguished generator as a polynomial residue, length `n`.
    pub generator: Vec<i64>,
    /// `zech[k]` is the code of `1 + g^k` (ZECH_NONE when that sum is zero).
    zech: Vec<u32>,
    /// Embeddings of the prime-field integers `0..p`.
    ints: Vec<FF>,
}

impl Field {
    /// Builds `F_{p^n}` with the default (lexicographically first) modulus
    /// and the smallest generator.
    pub fn new(p: i64, n: usize) -> Result<Field> {
        let poly = find_irreducible(p, n)?;
        Field::with_modulus(p, n, poly, None)
    }

    /// Builds the field from an explicit modulus, optionally with an
    /// explicit generator (checked for primitivity).
    pub fn with_modulus(
        p: i64,
        n: usize,
        poly: Vec<i64>,
        generator: Option<Vec<i64>>,
    ) -> Result<Field> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} must be an odd prime >= 3")));
        }
        if n == 0 {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        let q = p.checked_pow(n as u32).filter(|&q| q <= 1 << 22).ok_or_else(|| {
            Error::InvalidParams(format!("field size p^n = {p}^{n} too large for table arithmetic"))
        })?;
        if poly.len() != n + 1 || poly[n] != 1 || poly.iter().any(|&c| c < 0 || c >= p) {
            return Err(Error::InvalidParams("modulus must be monic of degree n with coefficients in [0, p)".into()));
        }
        if !is_irreducible(&poly, p, n) {
            return Err(Error::InvalidParams("modulus is not irreducible".into()));
        }
        let gen = match generator {
            Some(g) => {
                if g.len() != n || g.iter().any(|&c| c < 0 || c >= p) {
                    return Err(Error::InvalidParams("generator must have n coefficients in [0, p)".into()));
                }
                if !is_primitive(&g, &poly, p, q) {
                    return Err(Error::InvalidParams("given element is not a multiplicative generator".into()));
                }
                g
            }
            None => find_generator(&poly, p, n, q)?,
        };

        // exp table: g^k as polynomial residues, then dlog by encoded value.
        let qm1 = (q - 1) as usize;
        let mut exp: Vec<Vec<i64>> = Vec::with_capacity(qm1);
        let mut cur = vec![0i64; n];
        cur[0] = 1;
        for _ in 0..qm1 {
            exp.push(cur.clone());
            cur = poly_mulmod(&cur, &gen, &poly, p);
        }
        let mut dlog = vec![u32::MAX; q as usize];
        for (k, v) in exp.iter().enumerate() {
            let code = encode(v, p);
            if dlog[code] != u32::MAX {
                return Err(Error::InvalidParams("generator has order < q - 1".into()));
            }
            dlog[code] = k as u32;
        }
        let mut zech = vec![ZECH_NONE; qm1];
        for k in 0..qm1 {
            let mut v = exp[k].clone();
            v[0] = (v[0] + 1) % p;
            let code = encode(&v, p);
            if v.iter().all(|&c| c == 0) {
                zech[k] = ZECH_NONE;
            } else {
                zech[k] = dlog[code] + 1;
            }
        }
        let mut ints = vec![FF::ZERO; p as usize];
        for k in 1..p as usize {
            let mut v = vec![0i64; n];
            v[0] = k as i64;
            ints[k] = FF(dlog[encode(&v, p)] + 1);
        }
        Ok(Field { p, n, q, poly, generator: gen, zech, ints })
    }

    pub fn one(&self) -> FF {
        FF(1)
    }

    /// Embedding of a rational integer through the prime field.
    pub fn int(&self, k: i64) -> FF {
        self.ints[k.rem_euclid(self.p) as usize]
    }

    pub fn add(&self, a: FF, b: FF) -> FF {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let (x, y) = (a.0 - 1, b.0 - 1);
        // g^x + g^y = g^y (1 + g^{x-y})
        let qm1 = (self.q - 1) as u32;
        let d = (x + qm1 - y) % qm1;
        let z = self.zech[d as usize];
        if z == ZECH_NONE {
            FF::ZERO
        } else {
            FF((y + z - 1) % qm1 + 1)
        }
    }

    pub fn neg(&self, a: FF) -> FF {
        if a.is_zero() {
            return a;
        }
        // -1 = g^{(q-1)/2} since q is odd
        let qm1 = (self.q - 1) as u32;
        FF((a.0 - 1 + qm1 / 2) % qm1 + 1)
    }

    pub fn sub(&self, a: FF, b: FF) -> FF {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FF, b: FF) -> FF {
        if a.is_zero() || b.is_zero() {
            return FF::ZERO;
        }
        let qm1 = (self.q - 1) as u32;
        FF((a.0 - 1 + b.0 - 1) % qm1 + 1)
    }

    pub fn inv(&self, a: FF) -> FF {
        assert!(!a.is_zero(), "inverse of zero");
        let qm1 = (self.q - 1) as u32;
        FF((qm1 - (a.0 - 1)) % qm1 + 1)
    }

    pub fn div(&self, a: FF, b: FF) -> FF {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FF, e: i64) -> FF {
        if a.is_zero() {
            assert!(e > 0, "0^e undefined for e <= 0");
            return FF::ZERO;
        }
        let qm1 = self.q - 1;
        let t = (a.0 as i64 - 1) * (e.rem_euclid(qm1)) % qm1;
        FF(t as u32 + 1)
    }

    pub fn frob(&self, a: FF) -> FF {
        self.pow(a, self.p)
    }

    pub fn dlog(&self, a: FF) -> Option<i64> {
        if a.is_zero() {
            None
        } else {
            Some(a.0 as i64 - 1)
        }
    }

    pub fn from_dlog(&self, t: i64) -> FF {
        FF(t.rem_euclid(self.q - 1) as u32 + 1)
    }
}

fn encode(v: &[i64], p: i64) -> usize {
    let mut code = 0usize;
    for &c in v.iter().rev() {
        code = code * p as usize + c as usize;
    }
    code
}

pub(crate) fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut m: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

// ---- polynomial arithmetic over F_p, little-endian coefficient vectors ----

fn poly_trim(v: &mut Vec<i64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_mulmod(a: &[i64], b: &[i64], m: &[i64], p: i64) -> Vec<i64> {
    let n = m.len() - 1;
    let mut prod = vec![0i64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce by the monic modulus
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (j, &mj) in m.iter().enumerate().take(n) {
            let idx = k - n + j;
            prod[idx] = (prod[idx] - c * mj).rem_euclid(p);
        }
    }
    prod.truncate(n.max(1));
    prod.resize(n.max(1), 0);
    prod
}

fn poly_powmod(base: &[i64], mut e: i64, m: &[i64], p: i64) -> Vec<i64> {
    let n = m.len() - 1;
    let mut acc = vec![0i64; n.max(1)];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_rem(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    if db == 0 {
        return vec![0]; // nonzero constant divides everything
    }
    let lead_inv = int_inv(bb[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % p;
        if c != 0 {
            for j in 0..=db {
                r[dr - db + j] = (r[dr - db + j] - c * bb[j]).rem_euclid(p);
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn int_inv(a: i64, p: i64) -> i64 {
    // p prime, a != 0 mod p
    let mut acc = 1i64;
    let mut b = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn is_irreducible(f: &[i64], p: i64, n: usize) -> bool {
    if n == 1 {
        return true;
    }
    // Rabin test: x^{p^n} == x mod f, and gcd(x^{p^{n/d}} - x, f) = 1
    // for every prime divisor d of n.
    let x = vec![0, 1];
    let mut xp = x.clone();
    // iterated Frobenius: xp_k = x^{p^k} mod f computed step by step
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(x.clone());
    for _ in 0..n {
        xp = poly_powmod(&xp, p, f, p);
        powers.push(xp.clone());
    }
    let mut top = powers[n].clone();
    poly_trim(&mut top);
    let mut xx = x.clone();
    poly_trim(&mut xx);
    if top != xx {
        return false;
    }
    for d in prime_factors(n as i64) {
        let k = n / d as usize;
        let mut diff: Vec<i64> = powers[k].clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] - 1).rem_euclid(p);
        let g = poly_gcd(f, &diff, p);
        if !(g.len() == 1 && g[0] != 0) {
            return false;
        }
    }
    true
}

fn find_irreducible(p: i64, n: usize) -> Result<Vec<i64>> {
    if n == 1 {
        return Ok(vec![0, 1]);
    }
    let total = p.pow(n as u32);
    for c in 0..total {
        let mut f = Vec::with_capacity(n + 1);
        let mut t = c;
        for _ in 0..n {
            f.push(t % p);
            t /= p;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p, n) {
            return Ok(f);
        }
    }
    Err(Error::InvalidParams(format!("no irreducible polynomial of degree {n} found")))
}

fn is_primitive(g: &[i64], f: &[i64], p: i64, q: i64) -> bool {
    if g.iter().all(|&c| c == 0) {
        return false;
    }
    for d in prime_factors(q - 1) {
        let mut pw = poly_powmod(g, (q - 1) / d, f, p);
        poly_trim(&mut pw);
        if pw.len() == 1 && pw[0] == 1 {
            return false;
        }
    }
    true
}

fn find_generator(f: &[i64], p: i64, n: usize, q: i64) -> Result<Vec<i64>> {
    for c in 1..q {
        let mut g = Vec::with_capacity(n);
        let mut t = c;
        for _ in 0..n {
            g.push(t % p);
            t /= p;
        }
        if is_primitive(&g, f, p, q) {
            return Ok(g);
        }
    }
    Err(Error::InvalidParams("no multiplicative generator found".into()))
}
