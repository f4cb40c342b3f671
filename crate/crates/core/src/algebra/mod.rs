//! Algebras presented by structure constants `e_i e_j = sum_k c^{ij}_k e_k`.
//!
//! The constants are polynomials in the declared parameters. Every algebra
//! owns a variable table with its coordinate variables (one per basis
//! vector) followed by the parameters; the universal element is
//! `t_1 e_1 + ... + t_n e_n` over that table.

mod catalog;
mod construct;
mod hom;

use std::fmt;
use std::sync::Arc;

pub use catalog::{catalog, catalog_in, catalog_names, dim3_generic, AnyAlgebra};
pub use construct::{base_change, direct_product, tensor_product, BaseChange, Product, Tensor};
pub use hom::{AlgebraHom, HomKind};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::matrix::PolyMatrix;
use crate::mpoly::MPoly;
use crate::upoly::UPoly;
use crate::vars::{same_table, VarKind, VarTable};

/// Coordinates of an element in the basis of its algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<F: Field> {
    coords: Vec<MPoly<F>>,
}

impl<F: Field> Element<F> {
    pub fn coords(&self) -> &[MPoly<F>] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &MPoly<F> {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<MPoly<F>> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.coords[0].vars()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Whether some coordinate involves a coordinate or auxiliary variable.
    pub fn involves_coordinates(&self) -> bool {
        let v = self.vars().clone();
        self.coords
            .iter()
            .any(|c| c.involves(|i| v.kind(i) != VarKind::Parameter))
    }
}

/// Structure constants and unit embedded into a particular variable table.
///
/// All element arithmetic goes through a frame; elements built over another
/// table are rejected.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<F: Field> {
    field: F,
    vars: Arc<VarTable>,
    n: usize,
    table: Vec<Vec<MPoly<F>>>,
    support: Vec<Vec<usize>>,
    unit: Vec<MPoly<F>>,
}

impl<F: Field> Frame<F> {
    /// `table[i*n + j]` holds the coordinates of `e_i e_j`.
    pub fn new(field: &F, vars: &Arc<VarTable>, table: Vec<Vec<MPoly<F>>>, unit: Vec<MPoly<F>>) -> Result<Self> {
        let n = unit.len();
        if n == 0 || table.len() != n * n || table.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "structure table for dimension {n} has {} entries",
                table.len()
            )));
        }
        let all = table.iter().flatten().chain(unit.iter());
        for p in all {
            if !same_table(p.vars(), vars) {
                return Err(Error::VarTableMismatch);
            }
            if p.field() != field {
                return Err(Error::FieldMismatch(
                    p.field().spec().to_string(),
                    field.spec().to_string(),
                ));
            }
        }
        let support = table
            .iter()
            .map(|r| (0..n).filter(|&k| !r[k].is_zero()).collect())
            .collect();
        Ok(Frame {
            field: field.clone(),
            vars: vars.clone(),
            n,
            table,
            support,
            unit,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Coordinates of `e_i e_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[MPoly<F>] {
        &self.table[i * self.n + j]
    }

    pub fn table(&self) -> &[Vec<MPoly<F>>] {
        &self.table
    }

    pub fn zero_poly(&self) -> MPoly<F> {
        MPoly::zero(&self.field, &self.vars)
    }

    pub fn zero(&self) -> Element<F> {
        Element {
            coords: vec![self.zero_poly(); self.n],
        }
    }

    pub fn unit(&self) -> Element<F> {
        Element {
            coords: self.unit.clone(),
        }
    }

    pub fn basis(&self, i: usize) -> Element<F> {
        let mut x = self.zero();
        x.coords[i] = MPoly::one(&self.field, &self.vars);
        x
    }

    pub fn element(&self, coords: Vec<MPoly<F>>) -> Result<Element<F>> {
        let x = Element { coords };
        self.check(&x)?;
        Ok(x)
    }

    /// The element whose coordinates are the variables with the given names.
    pub fn element_of_vars(&self, names: &[String]) -> Result<Element<F>> {
        let coords = names
            .iter()
            .map(|n| {
                self.vars
                    .index_of(n)
                    .map(|i| MPoly::var(&self.field, &self.vars, i))
                    .ok_or_else(|| Error::InvalidArgs(format!("unknown variable {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(coords)
    }

    pub fn check(&self, x: &Element<F>) -> Result<()> {
        if x.coords.len() != self.n {
            return Err(Error::AlgebraMismatch);
        }
        if x.coords.iter().any(|c| !same_table(c.vars(), &self.vars)) {
            return Err(Error::VarTableMismatch);
        }
        Ok(())
    }

    pub fn scalar(&self, c: &MPoly<F>) -> Element<F> {
        Element {
            coords: self.unit.iter().map(|u| u * c).collect(),
        }
    }

    pub fn add(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        Element {
            coords: x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        Element {
            coords: x.coords.iter().zip(&y.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, x: &Element<F>, c: &MPoly<F>) -> Element<F> {
        Element {
            coords: x.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn multiply(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>> {
        self.check(x)?;
        self.check(y)?;
        let n = self.n;
        let mut out = vec![self.zero_poly(); n];
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                let sup = &self.support[i * n + j];
                if yj.is_zero() || sup.is_empty() {
                    continue;
                }
                let xy = xi * yj;
                for &k in sup {
                    let c = &self.table[i * n + j][k];
                    out[k] = if c.is_one() { &out[k] + &xy } else { &out[k] + &(&xy * c) };
                }
            }
        }
        Ok(Element { coords: out })
    }

    pub fn pow(&self, x: &Element<F>, k: u32) -> Result<Element<F>> {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// Matrix of `y -> x*y`; column `j` holds the coordinates of `x e_j`.
    pub fn left_regular_matrix(&self, x: &Element<F>) -> Result<PolyMatrix<F>> {
        self.check(x)?;
        let n = self.n;
        let mut entries = vec![self.zero_poly(); n * n];
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for &k in &self.support[i * n + j] {
                    let e = &mut entries[k * n + j];
                    *e = &*e + &(xi * &self.table[i * n + j][k]);
                }
            }
        }
        PolyMatrix::new(n, n, entries)
    }

    /// `p(x)` with `p` a polynomial in `T` whose coefficients are scalars
    /// over this frame's table.
    pub fn eval_upoly(&self, p: &UPoly<MPoly<F>>, x: &Element<F>) -> Result<Element<F>> {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.multiply(&acc, x)?;
            acc = self.add(&acc, &self.scalar(c));
        }
        Ok(acc)
    }

    /// The same constants over another table, matching variables by name.
    pub fn rename_into(&self, vars: &Arc<VarTable>) -> Result<Frame<F>> {
        let mv = |p: &MPoly<F>| p.rename_into(vars);
        let table = self
            .table
            .iter()
            .map(|r| r.iter().map(mv).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = self.unit.iter().map(mv).collect::<Result<Vec<_>>>()?;
        Frame::new(&self.field, vars, table, unit)
    }
}

/// Side of a failed unit axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A single failed identity, one coordinate at a time.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation<F: Field> {
    /// Coordinate `coord` of `(e_i e_j) e_k - e_i (e_j e_k)`.
    Associativity {
        i: usize,
        j: usize,
        k: usize,
        coord: usize,
        residual: MPoly<F>,
    },
    /// Coordinate `coord` of `1 e_i - e_i` or `e_i 1 - e_i`.
    Unit {
        side: Side,
        i: usize,
        coord: usize,
        residual: MPoly<F>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport<F: Field> {
    pub violations: Vec<Violation<F>>,
}

impl<F: Field> ValidationReport<F> {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render(&self, basis: &[String]) -> String {
        let mut out = String::new();
        for v in &self.violations {
            let line = match v {
                Violation::Associativity {
                    i,
                    j,
                    k,
                    coord,
                    residual,
                } => format!(
                    "({a}*{b})*{c} - {a}*({b}*{c}) has {d}-coordinate {residual}",
                    a = basis[*i],
                    b = basis[*j],
                    c = basis[*k],
                    d = basis[*coord]
                ),
                Violation::Unit {
                    side,
                    i,
                    coord,
                    residual,
                } => {
                    let prod = match side {
                        Side::Left => format!("unit*{}", basis[*i]),
                        Side::Right => format!("{}*unit", basis[*i]),
                    };
                    format!("{prod} - {} has {}-coordinate {residual}", basis[*i], basis[*coord])
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F: Field> {
    name: String,
    basis: Vec<String>,
    frame: Frame<F>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut ch = s.chars();
    ch.next().is_some_and(|c| c.is_ascii_alphabetic())
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Coordinate names for a basis: the basis names themselves when they are
/// identifiers distinct from the parameters, otherwise `t1..tn`.
pub fn default_coordinates(basis: &[String], params: &[String]) -> Vec<String> {
    if basis.iter().all(|b| is_identifier(b) && !params.contains(b)) {
        return basis.to_vec();
    }
    numbered_names(basis.len(), params)
}

/// `t1..tn`, or the first of a few fallback prefixes whose names avoid `taken`.
pub(crate) fn numbered_names(n: usize, taken: &[String]) -> Vec<String> {
    for prefix in ["t", "x", "z", "w", "coord"] {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|m| !taken.contains(m)) {
            return names;
        }
    }
    (1..=n).map(|i| format!("coord_{i}_")).collect()
}

impl<F: Field> Algebra<F> {
    /// Variable table for coordinates `coords` and parameters `params`.
    pub fn make_vars<S: AsRef<str>>(coords: &[S], params: &[S]) -> Result<Arc<VarTable>> {
        VarTable::new(coords, params, &[])
    }

    /// Builds an algebra from a frame whose table has the coordinate
    /// variables first and then the parameters. Only the shape is checked;
    /// use [`Algebra::validate`] for the algebra axioms.
    pub fn new(name: impl Into<String>, basis: Vec<String>, frame: Frame<F>) -> Result<Self> {
        let vars = frame.vars().clone();
        if basis.len() != frame.dim() || vars.n_coords() != frame.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} basis names, {} coordinates, dimension {}",
                basis.len(),
                vars.n_coords(),
                frame.dim()
            )));
        }
        if vars.indices(VarKind::Aux).next().is_some() {
            return Err(Error::InvalidArgs("auxiliary variables in an algebra table".into()));
        }
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].contains(b) {
                return Err(Error::NameClash(b.clone()));
            }
            if vars.param_names().contains(b) {
                return Err(Error::NameClash(b.clone()));
            }
        }
        let is_coord = |i: usize| vars.kind(i) == VarKind::Coordinate;
        if frame.table.iter().flatten().chain(&frame.unit).any(|p| p.involves(is_coord)) {
            return Err(Error::InvalidArgs(
                "structure constants must involve parameters only".into(),
            ));
        }
        Ok(Algebra {
            name: name.into(),
            basis,
            frame,
        })
    }

    /// Convenience constructor from a structure function `mul(i, j)` and unit,
    /// both returning coordinate vectors over the given table.
    pub fn from_fn(
        name: impl Into<String>,
        field: &F,
        basis: Vec<String>,
        vars: &Arc<VarTable>,
        mul: impl Fn(usize, usize) -> Vec<MPoly<F>>,
        unit: Vec<MPoly<F>>,
    ) -> Result<Self> {
        let n = basis.len();
        let table = (0..n * n).map(|ij| mul(ij / n, ij % n)).collect();
        let frame = Frame::new(field, vars, table, unit)?;
        Self::new(name, basis, frame)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn field(&self) -> &F {
        self.frame.field()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn params(&self) -> Vec<String> {
        self.vars().param_names()
    }

    pub fn coord_names(&self) -> Vec<String> {
        self.vars().coord_names()
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.frame.vars()
    }

    pub fn frame(&self) -> &Frame<F> {
        &self.frame
    }

    pub fn unit(&self) -> Element<F> {
        self.frame.unit()
    }

    /// `t_1 e_1 + ... + t_n e_n` with this algebra's coordinate names.
    pub fn universal_element(&self) -> Element<F> {
        let f = self.field();
        let v = self.vars();
        Element {
            coords: (0..self.dim()).map(|i| MPoly::var(f, v, i)).collect(),
        }
    }

    /// Several independent universal elements; element `p` has coordinates
    /// `<prefixes[p]>1 .. <prefixes[p]>n`. All share the returned frame.
    pub fn universal_elements(&self, prefixes: &[&str]) -> Result<(Frame<F>, Vec<Element<F>>)> {
        let n = self.dim();
        let coords: Vec<String> = prefixes
            .iter()
            .flat_map(|p| (1..=n).map(move |i| format!("{p}{i}")))
            .collect();
        let params = self.params();
        let vars = VarTable::new(&coords, &params, &[])?;
        let frame = self.frame.rename_into(&vars)?;
        let elems = (0..prefixes.len())
            .map(|p| frame.element_of_vars(&coords[p * n..(p + 1) * n]))
            .collect::<Result<Vec<_>>>()?;
        Ok((frame, elems))
    }

    /// Constants over another table containing this algebra's parameters.
    pub fn frame_over(&self, vars: &Arc<VarTable>) -> Result<Frame<F>> {
        self.frame.rename_into(vars)
    }

    pub fn validate(&self) -> ValidationReport<F> {
        let fr = &self.frame;
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let eij = fr.element(fr.structure(i, j).to_vec()).unwrap();
                for k in 0..n {
                    let ejk = fr.element(fr.structure(j, k).to_vec()).unwrap();
                    let lhs = fr.multiply(&eij, &fr.basis(k)).unwrap();
                    let rhs = fr.multiply(&fr.basis(i), &ejk).unwrap();
                    for (coord, (a, b)) in lhs.coords.iter().zip(&rhs.coords).enumerate() {
                        let residual = a - b;
                        if !residual.is_zero() {
                            violations.push(Violation::Associativity {
                                i,
                                j,
                                k,
                                coord,
                                residual,
                            });
                        }
                    }
                }
            }
        }
        let u = fr.unit();
        for i in 0..n {
            let e = fr.basis(i);
            for (side, prod) in [
                (Side::Left, fr.multiply(&u, &e).unwrap()),
                (Side::Right, fr.multiply(&e, &u).unwrap()),
            ] {
                for coord in 0..n {
                    let residual = &prod.coords[coord] - &e.coords[coord];
                    if !residual.is_zero() {
                        violations.push(Violation::Unit {
                            side,
                            i,
                            coord,
                            residual,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Same module with `a * b` replaced by `b * a`.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let table = (0..n * n)
            .map(|ij| self.frame.structure(ij % n, ij / n).to_vec())
            .collect();
        let frame = Frame::new(self.field(), self.vars(), table, self.frame.unit.clone()).unwrap();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        Algebra {
            name,
            basis: self.basis.clone(),
            frame,
        }
    }

    /// Substitutes values for some parameters, removing them from the table.
    pub fn specialize(&self, values: &[(&str, F::Elem)]) -> Result<Self> {
        let vars = self.vars();
        let mut point = Vec::new();
        for (name, v) in values {
            let i = vars
                .index_of(name)
                .filter(|&i| vars.kind(i) == VarKind::Parameter)
                .ok_or_else(|| Error::InvalidArgs(format!("unknown parameter {name}")))?;
            point.push((i, v.clone()));
        }
        let params: Vec<String> = vars
            .param_names()
            .into_iter()
            .filter(|p| !values.iter().any(|(n, _)| n == p))
            .collect();
        let new_vars = VarTable::new(&self.coord_names(), &params, &[])?;
        let mv = |p: &MPoly<F>| p.eval_partial(&point).rename_into(&new_vars);
        let table = self
            .frame
            .table
            .iter()
            .map(|r| r.iter().map(mv).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = self.frame.unit.iter().map(mv).collect::<Result<Vec<_>>>()?;
        let frame = Frame::new(self.field(), &new_vars, table, unit)?;
        Algebra::new(self.name.clone(), self.basis.clone(), frame)
    }

    /// The same algebra with extra (unused) parameters, e.g. to compute
    /// over a rational function field in a fresh variable.
    pub fn adjoin_params(&self, extra: &[&str]) -> Result<Self> {
        let mut params = self.params();
        for e in extra {
            if self.basis.iter().any(|b| b == e) || self.vars().index_of(e).is_some() {
                return Err(Error::NameClash(e.to_string()));
            }
            params.push(e.to_string());
        }
        let vars = VarTable::new(&self.coord_names(), &params, &[])?;
        let frame = self.frame.rename_into(&vars)?;
        Algebra::new(self.name.clone(), self.basis.clone(), frame)
    }

    /// Renames coordinate variables.
    pub fn with_coordinates(&self, coords: &[String]) -> Result<Self> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch("coordinate names".into()));
        }
        let vars = VarTable::new(coords, &self.params(), &[])?;
        let frame = self.frame.rename_into(&vars)?;
        Algebra::new(self.name.clone(), self.basis.clone(), frame)
    }

    /// Element with the given coordinates, each converted into this table.
    pub fn element(&self, coords: Vec<MPoly<F>>) -> Result<Element<F>> {
        self.frame.element(coords)
    }

    pub fn multiply(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>> {
        self.frame.multiply(x, y)
    }

    pub fn left_regular_matrix(&self, x: &Element<F>) -> Result<PolyMatrix<F>> {
        self.frame.left_regular_matrix(x)
    }

    /// Text form of an element as a linear combination of basis names.
    pub fn format_element(&self, x: &Element<F>) -> String {
        format_linear(&self.basis, x.coords())
    }
}

/// `c1*b1 + c2*b2 ...`, multi-term coefficients in parentheses.
pub(crate) fn format_linear<F: Field>(basis: &[String], coords: &[MPoly<F>]) -> String {
    let mut out = String::new();
    for (b, c) in basis.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        let neg = c.field().is_negative(c.leading_coefficient().unwrap());
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(b);
        } else if mag.num_terms() > 1 {
            out.push_str(&format!("({mag})*{b}"));
        } else {
            out.push_str(&format!("{mag}*{b}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> fmt::Display for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, over {})", self.name, self.dim(), self.field().spec())
    }
}

impl<F: Field> Algebra<F> {
    /// Reduction modulo a prime; fails when a denominator vanishes or the
    /// field has a different characteristic.
    pub fn reduce(&self, p: &PrimeField) -> Result<Algebra<PrimeField>> {
        let field = self.field().clone();
        let red = |q: &MPoly<F>| {
            q.map_coefficients(p, |c| field.reduce_mod(c, p)).ok_or_else(|| {
                Error::InvalidArgs(format!("{} does not reduce modulo {}", self.name, p.modulus()))
            })
        };
        let fr = &self.frame;
        let table = fr
            .table
            .iter()
            .map(|r| r.iter().map(red).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = fr.unit.iter().map(red).collect::<Result<Vec<_>>>()?;
        let frame = Frame::new(p, fr.vars(), table, unit)?;
        Algebra::new(self.name.clone(), self.basis.clone(), frame)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn quaternion() -> Algebra<Rationals> {
        catalog_in(&Rationals, "quaternion").unwrap()
    }

    #[test]
    fn quaternion_products() {
        let h = quaternion();
        let fr = h.frame();
        let (i, j, k) = (fr.basis(1), fr.basis(2), fr.basis(3));
        assert_eq!(h.multiply(&i, &j).unwrap(), k);
        assert_eq!(h.multiply(&j, &i).unwrap(), fr.scale(&k, &MPoly::from_i64(&Rationals, h.vars(), -1)));
        let op = h.opposite();
        assert_eq!(op.multiply(&i, &j).unwrap(), h.multiply(&j, &i).unwrap());
        assert_eq!(op.opposite(), h);
    }

    #[test]
    fn unit_acts_trivially() {
        let h = quaternion();
        let a = h.universal_element();
        assert_eq!(h.multiply(&h.unit(), &a).unwrap(), a);
        assert_eq!(h.multiply(&a, &h.unit()).unwrap(), a);
    }

    #[test]
    fn left_regular_is_multiplicative() {
        let h = quaternion();
        let (fr, xs) = h.universal_elements(&["s", "t"]).unwrap();
        let xy = fr.multiply(&xs[0], &xs[1]).unwrap();
        let lx = fr.left_regular_matrix(&xs[0]).unwrap();
        let ly = fr.left_regular_matrix(&xs[1]).unwrap();
        assert_eq!(fr.left_regular_matrix(&xy).unwrap(), lx.mul(&ly).unwrap());
        let id = PolyMatrix::identity(fr.field(), fr.vars(), 4);
        assert_eq!(fr.left_regular_matrix(&fr.unit()).unwrap(), id);
    }

    #[test]
    fn universal_prefixes_are_distinct() {
        let h = quaternion();
        let (fr, xs) = h.universal_elements(&["s", "t"]).unwrap();
        assert_eq!(fr.vars().n_coords(), 8);
        assert_ne!(xs[0], xs[1]);
        let clash = catalog_in(&Rationals, "dim2").unwrap();
        assert!(clash.universal_elements(&["a", "b"]).is_ok());
        let v = clash.adjoin_params(&["a1"]);
        assert!(v.is_ok());
        assert!(matches!(
            v.unwrap().universal_elements(&["a"]),
            Err(Error::NameClash(_))
        ));
    }

    #[test]
    fn broken_table_is_reported() {
        let v = Algebra::<Rationals>::make_vars(&["r", "s"], &[]).unwrap();
        let c = |k| MPoly::from_i64(&Rationals, &v, k);
        // x*x = 1 but the unit is declared as x
        let a = Algebra::from_fn(
            "bad",
            &Rationals,
            vec!["one".into(), "x".into()],
            &v,
            |i, j| match (i, j) {
                (0, 0) => vec![c(1), c(0)],
                (0, 1) | (1, 0) => vec![c(0), c(1)],
                _ => vec![c(1), c(0)],
            },
            vec![c(0), c(1)],
        )
        .unwrap();
        let rep = a.validate();
        assert!(!rep.is_ok());
        assert!(rep.violations.iter().all(|v| matches!(v, Violation::Unit { .. })));
        assert!(rep.render(a.basis()).contains("unit*one"));
    }

    #[test]
    fn specialization_and_reduction() {
        let h = quaternion();
        let q = Rationals;
        let h11 = h.specialize(&[("al", q.from_i64(-1)), ("be", q.from_i64(-1))]).unwrap();
        assert!(h11.params().is_empty());
        assert!(h11.validate().is_ok());
        let f5 = PrimeField::new(5).unwrap();
        assert!(h.reduce(&f5).unwrap().validate().is_ok());
        assert!(h.specialize(&[("gamma", q.from_i64(1))]).is_err());
    }

    #[test]
    fn default_coordinate_names() {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(default_coordinates(&s(&["x", "y"]), &s(&["a"])), s(&["x", "y"]));
        assert_eq!(default_coordinates(&s(&["x", "a"]), &s(&["a"])), s(&["t1", "t2"]));
        assert_eq!(numbered_names(2, &s(&["t2"])), s(&["x1", "x2"]));
    }
}
