//! Univariate polynomials in `T` with polynomial or rational-function
//! coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mpoly::MPoly;
use crate::ratfunc::RatFunc;

/// Coefficient ring of a [`UPoly`].
pub trait Coeff: Clone {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn same(&self, o: &Self) -> bool;
}

impl<F: Field> Coeff for MPoly<F> {
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        MPoly::zero(self.field(), self.vars())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn same(&self, o: &Self) -> bool {
        self == o
    }
}

impl<F: Field> Coeff for RatFunc<F> {
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        RatFunc::from_poly(MPoly::zero(self.numerator().field(), self.numerator().vars()))
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn same(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

/// `coeffs[k]` is the coefficient of `T^k`; the last entry is nonzero.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug)]
pub struct UPoly<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> PartialEq for UPoly<C> {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs.len() == o.coeffs.len()
            && self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a.same(b))
    }
}

impl<C: Coeff> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), o.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly { coeffs: Vec::new() };
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Long division where `div_lead(c)` divides `c` by the leading
    /// coefficient of `q`.
    fn divmod_with(&self, q: &Self, div_lead: impl Fn(&C) -> Result<C>) -> Result<(Self, Self)> {
        let dq = q.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok((UPoly { coeffs: Vec::new() }, self.clone()));
        }
        let zero = rem[0].zero_like();
        let mut quot = vec![zero; rem.len() - dq];
        for k in (dq..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = div_lead(&rem[k])?;
            for (i, qi) in q.coeffs.iter().enumerate() {
                let idx = k - dq + i;
                rem[idx] = rem[idx].sub(&c.mul(qi));
            }
            quot[k - dq] = c;
        }
        rem.truncate(dq);
        Ok((Self::new(quot), Self::new(rem)))
    }
}

impl<F: Field> UPoly<MPoly<F>> {
    /// Division by a polynomial whose leading coefficient is a nonzero
    /// constant (e.g. monic), staying inside polynomial coefficients.
    pub fn divmod(&self, q: &Self) -> Result<(Self, Self)> {
        let lead = q.leading().ok_or(Error::DivisionByZero)?;
        let lc = lead.constant_value().ok_or_else(|| {
            Error::InvalidArgs("divisor leading coefficient is not a constant; use divmod_frac".into())
        })?;
        let inv = lead.field().inv(&lc).ok_or(Error::DivisionByZero)?;
        self.divmod_with(q, |c| Ok(c.scale(&inv)))
    }

    /// Division over the fraction field of the coefficient ring.
    pub fn divmod_frac(&self, q: &Self) -> Result<(UPoly<RatFunc<F>>, UPoly<RatFunc<F>>)> {
        self.to_frac().divmod_frac(&q.to_frac())
    }

    pub fn to_frac(&self) -> UPoly<RatFunc<F>> {
        UPoly {
            coeffs: self.coeffs.iter().cloned().map(RatFunc::from_poly).collect(),
        }
    }

    /// Value at `T = v`.
    pub fn eval(&self, v: &MPoly<F>) -> Option<MPoly<F>> {
        let mut it = self.coeffs.iter().rev();
        let mut acc = it.next()?.clone();
        for c in it {
            acc = &(&acc * v) + c;
        }
        Some(acc)
    }

    /// Text form with `var` as the indeterminate, descending powers, and
    /// multi-term coefficients in parentheses.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let first = out.is_empty();
            let neg = c.field().is_negative(c.leading_coefficient().unwrap());
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let coeff = if mag.num_terms() > 1 {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if power.is_empty() {
                out.push_str(&coeff);
            } else if mag.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{coeff}*{power}"));
            }
        }
        out
    }
}

impl<F: Field> UPoly<RatFunc<F>> {
    pub fn divmod_frac(&self, q: &Self) -> Result<(Self, Self)> {
        let lead = q.leading().ok_or(Error::DivisionByZero)?.clone();
        self.divmod_with(q, |c| c.div(&lead))
    }
}

impl<F: Field> fmt::Display for UPoly<MPoly<F>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("T"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::vars::VarTable;
    use std::sync::Arc;

    fn setup() -> (Arc<VarTable>, impl Fn(i64) -> MPoly<Rationals>, MPoly<Rationals>) {
        let v = VarTable::new(&["t1"], &[], &[]).unwrap();
        let v2 = v.clone();
        let c = move |k| MPoly::from_i64(&Rationals, &v2, k);
        let t1 = MPoly::var(&Rationals, &v, 0);
        (v, c, t1)
    }

    #[test]
    fn divide_by_linear() {
        let (_, c, _) = setup();
        let p = UPoly::new(vec![c(-1), c(0), c(1)]);
        let q = UPoly::new(vec![c(-1), c(1)]);
        let (quot, rem) = p.divmod(&q).unwrap();
        assert_eq!(quot, UPoly::new(vec![c(1), c(1)]));
        assert!(rem.is_zero());
    }

    #[test]
    fn symbolic_remainder() {
        let (_, c, t1) = setup();
        let p = UPoly::new(vec![c(1), c(0), c(1)]);
        let q = UPoly::new(vec![-&t1, c(1)]);
        let (quot, rem) = p.divmod(&q).unwrap();
        assert_eq!(quot, UPoly::new(vec![t1.clone(), c(1)]));
        assert_eq!(rem, UPoly::new(vec![&t1.pow(2) + &c(1)]));
    }

    #[test]
    fn division_over_fraction_field() {
        let (_, c, t1) = setup();
        // (T^2) / (t1*T + 1): quotient T/t1 - 1/t1^2, remainder 1/t1^2
        let p = UPoly::new(vec![c(0), c(0), c(1)]);
        let q = UPoly::new(vec![c(1), t1.clone()]);
        assert!(p.divmod(&q).is_err());
        let (quot, rem) = p.divmod_frac(&q).unwrap();
        let back = quot.mul(&q.to_frac()).add(&rem);
        assert_eq!(back, p.to_frac());
        assert_eq!(rem.degree(), Some(0));
        assert!(p.divmod(&UPoly::new(vec![])).is_err());
    }

    #[test]
    fn render_with_parenthesized_coefficients() {
        let v = VarTable::new(&["r", "s"], &["a", "b"], &[]).unwrap();
        let x = |n: &str| MPoly::named(&Rationals, &v, n);
        let two = MPoly::from_i64(&Rationals, &v, 2);
        let c1 = -(&(&two * &x("r")) + &(&x("a") * &x("s")));
        let c0 = &(&x("r").pow(2) + &(&(&x("a") * &x("r")) * &x("s"))) - &(&x("b") * &x("s").pow(2));
        let p = UPoly::new(vec![c0, c1, MPoly::one(&Rationals, &v)]);
        assert_eq!(p.to_string(), "T^2 - (2*r + a*s)*T + (r^2 + a*r*s - b*s^2)");
    }
}
