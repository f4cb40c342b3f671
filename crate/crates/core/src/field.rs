//! Exact base fields: the rationals and prime fields.
//!
//! Polynomials, matrices and algebras are generic over [`Field`]. A field is a
//! small value object (the rationals carry no data, a prime field carries its
//! modulus) that performs arithmetic on its element type, so the modulus of
//! `GF(p)` can be chosen at run time.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::identity::{ExtField, ModQ, SzField};

/// Which exact field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field acting on its element type.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;
    /// Sample field used for randomized identity testing.
    type Sz: SzField;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// `n / d`; fails when `d` vanishes in the field.
    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Whether the canonical text form of `a` starts with a minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;
    /// Canonical text of `a`.
    fn render(&self, a: &Self::Elem) -> String;

    /// Sample field of at least `min_size` elements (and at least 2^20)
    /// into which this field's elements embed.
    fn sz_field(&self, min_size: u128) -> Self::Sz;
    /// Image of `a` in the sample field; `None` when a denominator vanishes.
    fn sz_embed(&self, sz: &Self::Sz, a: &Self::Elem) -> Option<<Self::Sz as SzField>::E>;

    /// Scale making a coefficient list primitive: over the rationals the
    /// result has coprime integer coefficients with a positive first entry,
    /// over a prime field the first entry becomes 1.
    fn content_scale(&self, coeffs: &[Self::Elem]) -> Self::Elem;

    /// The prime field elements, in order, when the field is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Image of `a` in `GF(p)`, when there is a ring map from this field.
    fn reduce_mod(&self, a: &Self::Elem, p: &PrimeField) -> Option<u64>;
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

/// A prime field with a modulus fixed at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgs(format!("{p} is not a prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for Rationals {
    fn reduce_mod(&self, a: &BigRational, p: &PrimeField) -> Option<u64> {
        reduce_rational(a, p)
    }
    type Elem = BigRational;
    type Sz = ModQ;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<BigRational> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(n.clone(), d.clone()))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn content_scale(&self, coeffs: &[BigRational]) -> BigRational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in coeffs.iter().filter(|c| !c.is_zero()) {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return BigRational::one();
        }
        let s = BigRational::new(l, g);
        match coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => -s,
            _ => s,
        }
    }
    fn sz_field(&self, _min_size: u128) -> ModQ {
        ModQ::default()
    }
    fn sz_embed(&self, sz: &ModQ, a: &BigRational) -> Option<u64> {
        let q = BigInt::from(sz.modulus());
        let n = a.numer().mod_floor(&q).to_u64()?;
        let d = a.denom().mod_floor(&q).to_u64()?;
        if d == 0 {
            return None;
        }
        Some(mulmod(n, sz.inv(d)?, sz.modulus()))
    }
}

impl Field for PrimeField {
    type Elem = u64;
    type Sz = ExtField;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_bigint(n)
    }
    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<u64> {
        let d = self.reduce_bigint(d);
        let di = self.inv(&d).ok_or(Error::DivisionByZero)?;
        Ok(mulmod(self.reduce_bigint(n), di, self.p))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.p == 0 {
            None
        } else {
            Some(powmod(*a, self.p - 2, self.p))
        }
    }
    fn is_negative(&self, _a: &u64) -> bool {
        false
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn content_scale(&self, coeffs: &[u64]) -> u64 {
        coeffs
            .iter()
            .find(|c| **c != 0)
            .and_then(|c| self.inv(c))
            .unwrap_or(1)
    }
    fn sz_field(&self, min_size: u128) -> ExtField {
        ExtField::with_min_size(self.p, min_size)
    }
    fn sz_embed(&self, sz: &ExtField, a: &u64) -> Option<Vec<u64>> {
        Some(sz.from_u64(*a))
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn reduce_mod(&self, a: &u64, p: &PrimeField) -> Option<u64> {
        (p.p == self.p).then_some(*a)
    }
}

/// Rational reduction into `GF(p)`; `None` when `p` divides the denominator.
pub fn reduce_rational(a: &BigRational, target: &PrimeField) -> Option<u64> {
    target
        .from_ratio(a.numer(), a.denom())
        .ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(4611686018427387847)); // 2^62 - 57
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert!(PrimeField::new(6).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.pow(&3, 6), 1);
        let half = f
            .from_ratio(&BigInt::from(1), &BigInt::from(2))
            .unwrap();
        assert_eq!(f.mul(&half, &2), 1);
    }

    #[test]
    fn rationals_render_lowest_terms() {
        let q = Rationals;
        let x = q.from_ratio(&BigInt::from(4), &BigInt::from(-6)).unwrap();
        assert_eq!(q.render(&x), "-2/3");
        assert!(q.is_negative(&x));
    }
}
