//! Algebras with evaluated structure constants, for sampling checks.

use std::fmt::Debug;

use crate::algebra::Frame;
use crate::field::Field;
use crate::identity::SzField;
use crate::mpoly::MPoly;

/// Commutative ring arithmetic on an element type.
pub trait Ring {
    type E: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

impl<S: SzField> Ring for S {
    type E = S::E;

    fn zero(&self) -> S::E {
        SzField::zero(self)
    }
    fn one(&self) -> S::E {
        SzField::one(self)
    }
    fn add(&self, a: &S::E, b: &S::E) -> S::E {
        SzField::add(self, a, b)
    }
    fn sub(&self, a: &S::E, b: &S::E) -> S::E {
        SzField::sub(self, a, b)
    }
    fn mul(&self, a: &S::E, b: &S::E) -> S::E {
        SzField::mul(self, a, b)
    }
}

/// An exact field viewed as a [`Ring`].
#[derive(Clone, Copy, Debug)]
pub struct Base<'a, F: Field>(pub &'a F);

impl<F: Field> Ring for Base<'_, F> {
    type E = F::Elem;

    fn zero(&self) -> F::Elem {
        self.0.zero()
    }
    fn one(&self) -> F::Elem {
        self.0.one()
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.add(a, b)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.mul(a, b)
    }
}

/// Structure constants evaluated at a point of the parameter space.
#[derive(Clone, Debug)]
pub struct NumericFrame<R: Ring> {
    ring: R,
    n: usize,
    table: Vec<Vec<R::E>>,
    unit: Vec<R::E>,
}

impl<R: Ring> NumericFrame<R> {
    /// Evaluates every structure constant with `eval`; `None` if any
    /// evaluation fails.
    pub fn new<F: Field>(frame: &Frame<F>, ring: R, eval: impl Fn(&MPoly<F>) -> Option<R::E>) -> Option<Self> {
        let table = frame
            .table()
            .iter()
            .map(|v| v.iter().map(&eval).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let unit = frame.unit().coords().iter().map(&eval).collect::<Option<Vec<_>>>()?;
        Some(NumericFrame {
            ring,
            n: frame.dim(),
            table,
            unit,
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> &[R::E] {
        &self.unit
    }

    pub fn scale(&self, x: &[R::E], c: &R::E) -> Vec<R::E> {
        x.iter().map(|v| self.ring.mul(v, c)).collect()
    }

    pub fn add(&self, x: &[R::E], y: &[R::E]) -> Vec<R::E> {
        x.iter().zip(y).map(|(a, b)| self.ring.add(a, b)).collect()
    }

    pub fn multiply(&self, x: &[R::E], y: &[R::E]) -> Vec<R::E> {
        let r = &self.ring;
        let zero = r.zero();
        let mut out = vec![r.zero(); self.n];
        for (i, xi) in x.iter().enumerate() {
            if *xi == zero {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if *yj == zero {
                    continue;
                }
                let c = r.mul(xi, yj);
                for (k, s) in self.table[i * self.n + j].iter().enumerate() {
                    if *s != zero {
                        out[k] = r.add(&out[k], &r.mul(&c, s));
                    }
                }
            }
        }
        out
    }

    /// Rows of the matrix of left multiplication by `x`.
    pub fn left_matrix(&self, x: &[R::E]) -> Vec<Vec<R::E>> {
        let r = &self.ring;
        let mut rows = vec![vec![r.zero(); self.n]; self.n];
        for j in 0..self.n {
            let mut e = vec![r.zero(); self.n];
            e[j] = r.one();
            for (k, v) in self.multiply(x, &e).into_iter().enumerate() {
                rows[k][j] = v;
            }
        }
        rows
    }

    /// `sum_k coeffs[k] x^k`.
    pub fn eval_poly(&self, coeffs: &[R::E], x: &[R::E]) -> Vec<R::E> {
        let mut acc = vec![self.ring.zero(); self.n];
        for c in coeffs.iter().rev() {
            acc = self.multiply(&acc, x);
            acc = self.add(&acc, &self.scale(&self.unit, c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog_in;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn numeric_matches_symbolic() {
        let h = catalog_in(&Rationals, "quaternion").unwrap();
        let f = Rationals;
        let point: Vec<_> = [0, 0, 0, 0, -1, 3].iter().map(|&v| f.from_i64(v)).collect();
        let nf = NumericFrame::new(h.frame(), Base(&f), |p| Some(p.eval(&point))).unwrap();
        let x: Vec<_> = [1, 2, 0, -1].iter().map(|&v| f.from_i64(v)).collect();
        let y: Vec<_> = [0, 1, 1, 5].iter().map(|&v| f.from_i64(v)).collect();
        let xy = nf.multiply(&x, &y);
        let s = h.specialize(&[("al", f.from_i64(-1)), ("be", f.from_i64(3))]).unwrap();
        let c = |v: &[num_rational::BigRational]| {
            s.element(v.iter().map(|e| MPoly::constant(&f, s.vars(), e.clone())).collect())
                .unwrap()
        };
        assert_eq!(c(&xy), s.multiply(&c(&x), &c(&y)).unwrap());
    }

    #[test]
    fn left_matrix_of_unit() {
        let p = PrimeField::new(5).unwrap();
        let m = catalog_in(&p, "matrix:2").unwrap();
        let nf = NumericFrame::new(m.frame(), Base(&p), |q| Some(q.eval(&[0, 0, 0, 0]))).unwrap();
        let l = nf.left_matrix(nf.unit());
        for (i, row) in l.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, u64::from(i == j));
            }
        }
    }
}
