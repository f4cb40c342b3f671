//! Sparse multivariate polynomials in canonical form.
//!
//! Terms are kept strictly sorted in descending term order and never carry a
//! zero coefficient, so two polynomials over the same table are equal exactly
//! when their term vectors are equal.
//!
//! The term order is a block order: first graded lexicographic on the
//! coordinate and auxiliary variables, ties broken graded lexicographic on the
//! parameters. Printing puts parameters before coordinates inside a term, so
//! the quaternion norm reads `a^2 - al*b^2 - be*c^2 + al*be*d^2`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::vars::{same_table, VarTable};

type Exps = SmallVec<[u16; 8]>;

/// Exponent vector split into the weighted block and the parameter block.
/// The derived ordering is the term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    wdeg: u32,
    w: Exps,
    pdeg: u32,
    p: Exps,
}

impl Monomial {
    pub fn one(vars: &VarTable) -> Self {
        Monomial {
            wdeg: 0,
            w: SmallVec::from_elem(0, vars.n_weighted()),
            pdeg: 0,
            p: SmallVec::from_elem(0, vars.n_params()),
        }
    }

    pub fn from_exponents(vars: &VarTable, exps: &[u32]) -> Self {
        let mut m = Monomial::one(vars);
        for (i, &e) in exps.iter().enumerate() {
            m.set(vars, i, e);
        }
        m
    }

    fn set(&mut self, vars: &VarTable, i: usize, e: u32) {
        let e16 = u16::try_from(e).expect("exponent overflow");
        match vars.slot(i) {
            (true, k) => {
                self.wdeg = self.wdeg - self.w[k] as u32 + e;
                self.w[k] = e16;
            }
            (false, k) => {
                self.pdeg = self.pdeg - self.p[k] as u32 + e;
                self.p[k] = e16;
            }
        }
    }

    pub fn exponent(&self, vars: &VarTable, i: usize) -> u32 {
        match vars.slot(i) {
            (true, k) => self.w[k] as u32,
            (false, k) => self.p[k] as u32,
        }
    }

    /// Exponents in variable-table order.
    pub fn exponents(&self, vars: &VarTable) -> Vec<u32> {
        (0..vars.len()).map(|i| self.exponent(vars, i)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.wdeg + self.pdeg
    }

    /// Degree in coordinates and auxiliaries (parameters weighted zero).
    pub fn coordinate_degree(&self) -> u32 {
        self.wdeg
    }

    pub fn is_one(&self) -> bool {
        self.wdeg == 0 && self.pdeg == 0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            wdeg: self.wdeg + other.wdeg,
            w: self.w.iter().zip(&other.w).map(|(a, b)| a + b).collect(),
            pdeg: self.pdeg + other.pdeg,
            p: self.p.iter().zip(&other.p).map(|(a, b)| a + b).collect(),
        }
    }

    fn divide(&self, other: &Monomial) -> Option<Monomial> {
        if self.wdeg < other.wdeg || self.pdeg < other.pdeg {
            return None;
        }
        let mut w = Exps::with_capacity(self.w.len());
        for (a, b) in self.w.iter().zip(&other.w) {
            w.push(a.checked_sub(*b)?);
        }
        let mut p = Exps::with_capacity(self.p.len());
        for (a, b) in self.p.iter().zip(&other.p) {
            p.push(a.checked_sub(*b)?);
        }
        Some(Monomial {
            wdeg: self.wdeg - other.wdeg,
            w,
            pdeg: self.pdeg - other.pdeg,
            p,
        })
    }
}

/// A polynomial over the field `F` in the variables of a [`VarTable`].
#[derive(Clone)]
pub struct MPoly<F: Field> {
    field: F,
    vars: Arc<VarTable>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for MPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl<F: Field> Eq for MPoly<F> {}

impl<F: Field> fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl<F: Field> MPoly<F> {
    pub fn zero(field: &F, vars: &Arc<VarTable>) -> Self {
        MPoly {
            field: field.clone(),
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(field: &F, vars: &Arc<VarTable>, c: F::Elem) -> Self {
        let mut p = Self::zero(field, vars);
        if !field.is_zero(&c) {
            p.terms.push((Monomial::one(vars), c));
        }
        p
    }

    pub fn one(field: &F, vars: &Arc<VarTable>) -> Self {
        Self::constant(field, vars, field.one())
    }

    pub fn from_i64(field: &F, vars: &Arc<VarTable>, c: i64) -> Self {
        Self::constant(field, vars, field.from_i64(c))
    }

    pub fn var(field: &F, vars: &Arc<VarTable>, i: usize) -> Self {
        let mut m = Monomial::one(vars);
        m.set(vars, i, 1);
        MPoly {
            field: field.clone(),
            vars: vars.clone(),
            terms: vec![(m, field.one())],
        }
    }

    /// Variable by name; panics when absent.
    pub fn named(field: &F, vars: &Arc<VarTable>, name: &str) -> Self {
        let i = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(field, vars, i)
    }

    /// Builds a polynomial from `(exponents in table order, coefficient)` pairs,
    /// combining duplicates.
    pub fn from_terms(
        field: &F,
        vars: &Arc<VarTable>,
        terms: impl IntoIterator<Item = (Vec<u32>, F::Elem)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            let m = Monomial::from_exponents(vars, &e);
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(field, vars, acc)
    }

    fn from_map(field: &F, vars: &Arc<VarTable>, acc: HashMap<Monomial, F::Elem>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly {
            field: field.clone(),
            vars: vars.clone(),
            terms,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<F::Elem> {
        match self.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.constant_value(), Some(c) if self.field.is_one(&c))
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(&self.vars, var))
            .max()
            .unwrap_or(0)
    }

    /// Whether any term involves a variable for which `pred` holds.
    pub fn involves(&self, pred: impl Fn(usize) -> bool) -> bool {
        (0..self.vars.len()).any(|i| pred(i) && self.degree_in(i) > 0)
    }

    fn check_table(&self, other: &Self) -> Result<()> {
        if same_table(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(Error::VarTableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        Ok(self.mul_impl(other))
    }

    /// `self^e`; negative exponents are rejected.
    pub fn checked_pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
        Ok(self.pow(e as u32))
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if subtract { f.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if subtract {
                        f.sub(&a[i].1, &b[j].1)
                    } else {
                        f.add(&a[i].1, &b[j].1)
                    };
                    if !f.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if subtract { f.neg(&t.1) } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MPoly {
            field: f.clone(),
            vars: self.vars.clone(),
            terms: out,
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f, &self.vars);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, F::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = f.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(f, &self.vars, acc)
    }

    /// Product with a single term; the term order is preserved.
    fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, &self.vars);
        }
        MPoly {
            field: f.clone(),
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), f.mul(cc, c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(&Monomial::one(&self.vars), c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, &self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / q`, or an error when `q` does not divide `self`.
    pub fn exact_divide(&self, q: &Self) -> Result<Self> {
        self.check_table(q)?;
        let f = &self.field;
        let Some((lm, lc)) = q.terms.first() else {
            return Err(Error::DivisionByZero);
        };
        let inv_lc = f.inv(lc).ok_or(Error::DivisionByZero)?;
        if q.terms.len() == 1 {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let Some(qm) = m.divide(lm) else {
                    return Err(self.inexact(q));
                };
                terms.push((qm, f.mul(c, &inv_lc)));
            }
            return Ok(MPoly {
                field: f.clone(),
                vars: self.vars.clone(),
                terms,
            });
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let Some(qm) = m.divide(lm) else {
                return Err(self.inexact(q));
            };
            let qc = f.mul(c, &inv_lc);
            let step = q.mul_term(&qm, &qc);
            rem = rem.merge(&step, true);
            quot.push((qm, qc));
        }
        Ok(MPoly {
            field: f.clone(),
            vars: self.vars.clone(),
            terms: quot,
        })
    }

    fn inexact(&self, q: &Self) -> Error {
        let show = |p: &Self| {
            let s = p.to_string();
            if s.len() > 80 {
                format!("{}... ({} terms)", &s[..80], p.num_terms())
            } else {
                s
            }
        };
        Error::InexactDivision(format!("{} by {}", show(self), show(q)))
    }

    /// Common weighted degree of all terms, or `None` if the terms disagree.
    /// Errors on the zero polynomial.
    pub fn is_homogeneous(&self, weights: &[i64]) -> Result<Option<i64>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        assert_eq!(weights.len(), self.vars.len(), "one weight per variable");
        let mut deg = None;
        for (m, _) in &self.terms {
            let d: i64 = (0..self.vars.len())
                .map(|i| weights[i] * m.exponent(&self.vars, i) as i64)
                .sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return Ok(None),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Homogeneous degree in coordinates and auxiliaries, parameters weighted 0.
    pub fn coordinate_degree(&self) -> Result<Option<i64>> {
        self.is_homogeneous(&self.vars.coordinate_weights())
    }

    /// Evaluates at a full point (one value per variable).
    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.vars.len(), "one value per variable");
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                let e = m.exponent(&self.vars, i);
                if e > 0 {
                    t = f.mul(&t, &f.pow(v, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Evaluates into another ring given coefficient and variable images.
    pub fn eval_with<R: Clone>(
        &self,
        coeff: impl Fn(&F::Elem) -> R,
        point: &[R],
        zero: R,
        add: impl Fn(&R, &R) -> R,
        mul: impl Fn(&R, &R) -> R,
    ) -> R {
        assert_eq!(point.len(), self.vars.len(), "one value per variable");
        let mut powers: Vec<Vec<R>> = point.iter().map(|v| vec![v.clone()]).collect();
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(&self.vars, i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() < e {
                    let next = mul(pw.last().unwrap(), &pw[0]);
                    pw.push(next);
                }
                t = mul(&t, &pw[e - 1]);
            }
            acc = add(&acc, &t);
        }
        acc
    }

    /// Replaces every variable `i` by `images[i]`, a polynomial over `target`.
    pub fn substitute(&self, target: &Arc<VarTable>, images: &[MPoly<F>]) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        if images.iter().any(|p| !same_table(&p.vars, target)) {
            return Err(Error::VarTableMismatch);
        }
        let f = &self.field;
        let mut powers: Vec<Vec<MPoly<F>>> = images.iter().map(|p| vec![p.clone()]).collect();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(f, target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(&self.vars, i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() < e {
                    let next = pw.last().unwrap().mul_impl(&pw[0]);
                    pw.push(next);
                }
                t = t.mul_impl(&pw[e - 1]);
            }
            for (tm, tc) in t.terms {
                match acc.get_mut(&tm) {
                    Some(v) => *v = f.add(v, &tc),
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Ok(Self::from_map(f, target, acc))
    }

    /// Substitutes constants for a subset of variables, keeping the table.
    pub fn eval_partial(&self, values: &[(usize, F::Elem)]) -> Self {
        let images: Vec<MPoly<F>> = (0..self.vars.len())
            .map(|i| match values.iter().find(|(j, _)| *j == i) {
                Some((_, v)) => MPoly::constant(&self.field, &self.vars, v.clone()),
                None => MPoly::var(&self.field, &self.vars, i),
            })
            .collect();
        self.substitute(&self.vars.clone(), &images)
            .expect("images share the table")
    }

    /// Renames variables into `target`: variable `i` becomes `map[i]`.
    /// Fails if a variable that occurs in `self` has no image.
    pub fn remap(&self, target: &Arc<VarTable>, map: &[Option<usize>]) -> Result<Self> {
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(target);
            for i in 0..self.vars.len() {
                let e = m.exponent(&self.vars, i);
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => nm.set(target, j, nm.exponent(target, j) + e),
                    None => {
                        return Err(Error::Internal(format!(
                            "variable {} has no image",
                            self.vars.name(i)
                        )))
                    }
                }
            }
            acc.insert(nm, c.clone());
        }
        Ok(Self::from_map(&self.field, target, acc))
    }

    /// Moves into `target` matching variables by name.
    pub fn rename_into(&self, target: &Arc<VarTable>) -> Result<Self> {
        self.remap(target, &self.vars.map_by_name(target))
    }

    /// Splits by powers of `var`: entry `k` is the coefficient of `var^k`,
    /// still over the same table.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(&self.vars, var);
            let mut nm = m.clone();
            nm.set(&self.vars, var, 0);
            parts[e as usize].push((nm, c.clone()));
        }
        parts
            .into_iter()
            .map(|mut t| {
                // removing one variable keeps the block order within each part
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MPoly {
                    field: self.field.clone(),
                    vars: self.vars.clone(),
                    terms: t,
                }
            })
            .collect()
    }

    /// Maps coefficients into another field (e.g. reduction mod p).
    pub fn map_coefficients<G: Field>(
        &self,
        field: &G,
        f: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Option<MPoly<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !field.is_zero(&v) {
                terms.push((m.clone(), v));
            }
        }
        Some(MPoly {
            field: field.clone(),
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Scalar content normalization: the coefficient list of the result
    /// is primitive in the sense of [`Field::content_scale`].
    pub fn content_scale_of(polys: &[&Self]) -> Option<F::Elem> {
        let coeffs: Vec<F::Elem> = polys
            .iter()
            .flat_map(|p| p.terms.iter().map(|(_, c)| c.clone()))
            .collect();
        if coeffs.is_empty() {
            return None;
        }
        Some(polys[0].field.content_scale(&coeffs))
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = &self.field;
        let order: Vec<usize> = self
            .vars
            .params()
            .chain((0..self.vars.len()).filter(|&i| self.vars.slot(i).0))
            .collect();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = f.is_negative(c);
            let abs = if neg { f.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(out, "-")?;
                }
            } else {
                write!(out, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !f.is_one(&abs) || m.is_one() {
                factors.push(f.render(&abs));
            }
            for &i in &order {
                match m.exponent(&self.vars, i) {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    e => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            write!(out, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a, F: Field> $tr<&'a MPoly<F>> for &'a MPoly<F> {
            type Output = MPoly<F>;
            fn $m(self, rhs: &'a MPoly<F>) -> MPoly<F> {
                self.$imp(rhs).expect("operands share a variable table")
            }
        }
        impl<F: Field> $tr<MPoly<F>> for MPoly<F> {
            type Output = MPoly<F>;
            fn $m(self, rhs: MPoly<F>) -> MPoly<F> {
                (&self).$imp(&rhs).expect("operands share a variable table")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        let f = &self.field;
        MPoly {
            field: f.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        -&self
    }
}
