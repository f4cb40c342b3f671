//! Randomized polynomial identity testing.
//!
//! Rational identities are checked modulo the 62-bit prime `2^62 - 57`;
//! identities over `GF(p)` are checked in an extension `GF(p^m)` large enough
//! that a nonzero polynomial of the tested degree vanishes at a uniform random
//! point with probability at most `deg / p^m`.

use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{mulmod, powmod, Field};
use crate::mpoly::MPoly;

/// Smallest sample set used for any test, regardless of degree.
pub const MIN_SAMPLE_SIZE: u128 = 1 << 20;

/// Field in which random evaluations happen.
pub trait SzField: Clone + Debug + Send + Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn from_u64(&self, v: u64) -> Self::E;
    fn random<R: Rng>(&self, rng: &mut R) -> Self::E;
    fn size(&self) -> u128;
    fn render(&self, a: &Self::E) -> String;
}

/// Integers modulo `2^62 - 57`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModQ {
    q: u64,
}

pub const SZ_PRIME: u64 = (1u64 << 62) - 57;

impl Default for ModQ {
    fn default() -> Self {
        ModQ { q: SZ_PRIME }
    }
}

impl ModQ {
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a % self.q == 0 {
            None
        } else {
            Some(powmod(a, self.q - 2, self.q))
        }
    }
}

impl SzField for ModQ {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.q as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.q as u128 - *b as u128) % self.q as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.q)
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.q
    }
    fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.q)
    }
    fn size(&self) -> u128 {
        self.q as u128
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// `GF(p^m)` as `GF(p)[x] / (f)` for a monic irreducible `f` of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    p: u64,
    /// Low-order coefficients of `f`, which is `x^m + modulus[m-1] x^(m-1) + ...`.
    modulus: Vec<u64>,
}

impl ExtField {
    /// Smallest extension with at least `max(min_size, 2^20)` elements.
    pub fn with_min_size(p: u64, min_size: u128) -> Self {
        let target = min_size.max(MIN_SAMPLE_SIZE);
        let mut m = 1usize;
        let mut size = p as u128;
        while size < target {
            m += 1;
            size = size.saturating_mul(p as u128);
        }
        ExtField {
            p,
            modulus: find_irreducible(p, m),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len()
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

// Dense polynomials over GF(p), lowest degree first, no trailing zeros.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(*x, *y, p)) % p;
        }
    }
    trim(out)
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let inv_lc = powmod(b[db], p - 2, p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = mulmod(*r.last().unwrap(), inv_lc, p);
        for (i, bi) in b.iter().enumerate() {
            let t = mulmod(c, *bi, p);
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: &[u64], mut e: u128, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), f, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), f, p);
        e >>= 1;
    }
    acc
}

/// Ben-Or test: `f` of degree `m` is irreducible iff
/// `gcd(x^(p^i) - x, f) = 1` for all `i <= m/2`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 0..m / 2 {
        xp = poly_powmod(&xp, p as u128, f, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(f, &trim(diff), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn find_irreducible(p: u64, m: usize) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    // deterministic search so results never depend on ambient randomness
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ ((m as u64) << 32));
    loop {
        let mut f: Vec<u64> = (0..m).map(|_| rng.gen_range(0..p)).collect();
        if f[0] == 0 {
            continue;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            f.pop();
            return f;
        }
    }
}

impl SzField for ExtField {
    type E = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.from_u64(1)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let m = self.degree();
        let p = self.p;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(*x, *y, p)) % p;
            }
        }
        // x^m = -(modulus[0] + ... + modulus[m-1] x^(m-1))
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, fi) in self.modulus.iter().enumerate() {
                let t = mulmod(c, *fi, p);
                prod[k - m + i] = (prod[k - m + i] + p - t) % p;
            }
        }
        prod.truncate(m);
        prod
    }
    fn from_u64(&self, v: u64) -> Vec<u64> {
        let mut e = self.zero();
        e[0] = v % self.p;
        e
    }
    fn random<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.degree()).map(|_| rng.gen_range(0..self.p)).collect()
    }
    fn size(&self) -> u128 {
        (self.p as u128).saturating_pow(self.degree() as u32)
    }
    fn render(&self, a: &Vec<u64>) -> String {
        if a.iter().skip(1).all(|c| *c == 0) {
            return a[0].to_string();
        }
        let parts: Vec<String> = a.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Outcome of a randomized identity test.
#[derive(Clone, Debug, PartialEq)]
pub enum Identity {
    /// Equal with high probability; a false positive has probability at
    /// most `failure_bound`, which is `10^log10_bound` (the latter survives
    /// underflow).
    EqualWhp {
        trials: usize,
        failure_bound: f64,
        log10_bound: f64,
    },
    /// Definitely unequal; `witness` assigns a value to every variable.
    Unequal { witness: Vec<(String, String)> },
}

impl Identity {
    pub fn holds(&self) -> bool {
        matches!(self, Identity::EqualWhp { .. })
    }
}

/// Schwartz-Zippel bound `(deg / |S|)^trials`.
pub fn failure_bound(degree: u32, size: u128, trials: usize) -> f64 {
    let ratio = degree as f64 / size as f64;
    ratio.powi(trials as i32)
}

/// `log10` of [`failure_bound`]; `-inf` for degree 0.
pub fn log10_failure_bound(degree: u32, size: u128, trials: usize) -> f64 {
    trials as f64 * ((degree as f64).log10() - (size as f64).log10())
}

/// Evaluates `p` at a point of the sample field; `None` when a coefficient
/// has no image there.
pub fn eval_sz<F: Field>(p: &MPoly<F>, sz: &F::Sz, point: &[<F::Sz as SzField>::E]) -> Option<<F::Sz as SzField>::E> {
    let field = p.field();
    let mut acc = sz.zero();
    for (m, c) in p.terms() {
        let mut t = field.sz_embed(sz, c)?;
        for (i, v) in point.iter().enumerate() {
            let e = m.exponent(p.vars(), i);
            for _ in 0..e {
                t = sz.mul(&t, v);
            }
        }
        acc = sz.add(&acc, &t);
    }
    Some(acc)
}

/// Maximum number of resamples when a denominator vanishes at a point.
const MAX_RESAMPLES: usize = 64;

/// Tests `p == q` by evaluation at `trials` random points; deterministic
/// given `seed`.
pub fn random_eval_equal<F: Field>(p: &MPoly<F>, q: &MPoly<F>, trials: usize, seed: u64) -> Identity {
    assert!(trials >= 1, "at least one trial");
    let degree = p.total_degree().unwrap_or(0).max(q.total_degree().unwrap_or(0));
    let sz = p.field().sz_field(2 * degree as u128 + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p.vars().len();
    for _ in 0..trials {
        for _ in 0..MAX_RESAMPLES {
            let point: Vec<_> = (0..n).map(|_| sz.random(&mut rng)).collect();
            let (Some(a), Some(b)) = (eval_sz(p, &sz, &point), eval_sz(q, &sz, &point)) else {
                continue;
            };
            if a != b {
                let witness = p
                    .vars()
                    .names()
                    .iter()
                    .cloned()
                    .zip(point.iter().map(|v| sz.render(v)))
                    .collect();
                return Identity::Unequal { witness };
            }
            break;
        }
    }
    Identity::EqualWhp {
        trials,
        failure_bound: failure_bound(degree, sz.size(), trials),
        log10_bound: log10_failure_bound(degree, sz.size(), trials),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::vars::VarTable;

    #[test]
    fn extension_field_is_a_field() {
        let f = ExtField::with_min_size(2, 0);
        assert_eq!(f.degree(), 20);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // a^(p^m - 1) = 1 for nonzero a
        for _ in 0..5 {
            let a = f.random(&mut rng);
            if a == f.zero() {
                continue;
            }
            let mut acc = f.one();
            let mut base = a.clone();
            let mut e = f.size() - 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = f.mul(&acc, &base);
                }
                base = f.mul(&base, &base);
                e >>= 1;
            }
            assert_eq!(acc, f.one());
        }
    }

    #[test]
    fn irreducibility_test() {
        // x^2 + x + 1 irreducible over GF(2), x^2 + 1 = (x+1)^2 is not
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn square_expansion_equal() {
        let v = VarTable::new(&["t1", "t2"], &[], &[]).unwrap();
        let x = |i| MPoly::var(&Rationals, &v, i);
        let p = (&x(0) + &x(1)).pow(2);
        let q = &(&x(0).pow(2) + &(&x(0) * &x(1)).scale(&Rationals.from_i64(2))) + &x(1).pow(2);
        let r = random_eval_equal(&p, &q, 5, 7);
        assert!(r.holds());
        if let Identity::EqualWhp { failure_bound, .. } = r {
            assert!(failure_bound < 1e-80);
        }
    }

    #[test]
    fn distinct_variables_unequal_with_witness() {
        let v = VarTable::new(&["t1", "t2"], &[], &[]).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let r = random_eval_equal(&MPoly::var(&f2, &v, 0), &MPoly::var(&f2, &v, 1), 1, 3);
        match r {
            Identity::Unequal { witness } => assert_eq!(witness.len(), 2),
            other => panic!("expected unequal, got {other:?}"),
        }
    }
}
