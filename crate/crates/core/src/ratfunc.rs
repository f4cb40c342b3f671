//! Fractions of multivariate polynomials.
//!
//! No multivariate GCDs are taken: fractions are only normalized so that the
//! denominator has leading coefficient 1, and equality is decided by
//! cross-multiplication.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mpoly::MPoly;

#[derive(Clone)]
pub struct RatFunc<F: Field> {
    num: MPoly<F>,
    den: MPoly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: MPoly<F>, den: MPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.vars() != den.vars() {
            return Err(Error::VarTableMismatch);
        }
        let inv = den
            .field()
            .inv(den.leading_coefficient().unwrap())
            .expect("nonzero leading coefficient");
        let (num, den) = (num.scale(&inv), den.scale(&inv));
        if den.is_one() {
            return Ok(RatFunc { num, den });
        }
        // cheap simplification when the denominator happens to divide
        if let Ok(q) = num.exact_divide(&den) {
            let one = MPoly::one(den.field(), den.vars());
            return Ok(RatFunc { num: q, den: one });
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MPoly<F>) -> Self {
        let one = MPoly::one(p.field(), p.vars());
        RatFunc { num: p, den: one }
    }

    pub fn numerator(&self) -> &MPoly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this fraction equals, if the division is exact.
    pub fn to_poly(&self) -> Option<MPoly<F>> {
        self.num.exact_divide(&self.den).ok()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl<F: Field> PartialEq for RatFunc<F> {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
