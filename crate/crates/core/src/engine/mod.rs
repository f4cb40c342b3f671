//! Degree of algebraicity, minimal polynomial of the universal element and
//! everything derived from it.
//!
//! The minimal polynomial comes from the first linear dependence among
//! `1, x, x^2, ...` found by fraction-free elimination, or is the
//! characteristic polynomial of left multiplication when no dependence
//! occurs below the dimension. A random evaluation skips the powers that
//! are visibly independent. Its coefficients are
//! polynomials because the base (a polynomial ring over a field) is normal;
//! a non-polynomial coefficient is reported as an internal error.

mod checks;
mod numeric;
mod strata;

use std::sync::Arc;

pub use checks::{check_suite, trace_symmetry, CheckMode, Property, Verdict};
pub use numeric::{Base, NumericFrame, Ring};
pub use strata::{alg3_strata_check, parameter_names, FamilyCheck, StrataReport};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{catalog_in, Algebra, AlgebraHom, Element, Frame};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::identity::{eval_sz, SzField, MIN_SAMPLE_SIZE};
use crate::matrix::PolyMatrix;
use crate::mpoly::MPoly;
use crate::upoly::UPoly;
use crate::vars::{VarKind, VarTable};

/// Minimal polynomial data of the universal element.
#[derive(Clone, Debug, PartialEq)]
pub struct CharData<F: Field> {
    pub degree: usize,
    /// `T^d - c_1 T^{d-1} + ... + (-1)^d c_d`
    pub minpoly: UPoly<MPoly<F>>,
    /// `c_1 .. c_d`
    pub coeffs: Vec<MPoly<F>>,
    pub det: MPoly<F>,
    pub trace: MPoly<F>,
}

impl<F: Field> CharData<F> {
    /// `c_i`, 1-based.
    pub fn coeff(&self, i: usize) -> &MPoly<F> {
        &self.coeffs[i - 1]
    }
}

/// `Q_0` with `x Q_0(x) = det(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CofactorData<F: Field> {
    pub q0: UPoly<MPoly<F>>,
}

/// `CH = psi * P` for the characteristic polynomial `CH` of left
/// multiplication by the universal element.
#[derive(Clone, Debug, PartialEq)]
pub struct CHData<F: Field> {
    pub ch: UPoly<MPoly<F>>,
    pub psi: UPoly<MPoly<F>>,
}

fn columns<F: Field>(powers: &[Element<F>]) -> Result<PolyMatrix<F>> {
    let cols: Vec<Vec<MPoly<F>>> = powers.iter().map(|p| p.coords().to_vec()).collect();
    PolyMatrix::from_columns(&cols)
}

/// Rank by elimination with cross-multiplication, valid over any domain.
fn ring_rank<R: Ring>(r: &R, mut rows: Vec<Vec<R::E>>) -> usize {
    let zero = r.zero();
    let ncols = rows.first().map_or(0, |v| v.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != zero) else {
            continue;
        };
        rows.swap(rank, p);
        let piv = rows[rank][c].clone();
        for i in rank + 1..rows.len() {
            let f = rows[i][c].clone();
            if f == zero {
                continue;
            }
            for l in c..ncols {
                let t = r.mul(&f, &rows[rank][l]);
                rows[i][l] = r.sub(&r.mul(&piv, &rows[i][l]), &t);
            }
        }
        rank += 1;
    }
    rank
}

const LADDER_SEED: u64 = 0x616c_6764_6574;

/// Lower bound for the degree of `x`: the first `m` such that
/// `1, x, ..., x^m` are dependent at a random point of the sample field.
/// Independence at a point implies independence over the fraction field,
/// so every smaller power count is certified independent. `None` when the
/// point cannot be used (a denominator vanishes there).
fn degree_lower_bound<F: Field>(frame: &Frame<F>, x: &Element<F>) -> Option<usize> {
    let sz = frame.field().sz_field(MIN_SAMPLE_SIZE);
    let mut rng = ChaCha8Rng::seed_from_u64(LADDER_SEED);
    let point: Vec<_> = (0..frame.vars().len()).map(|_| sz.random(&mut rng)).collect();
    let eval = |p: &MPoly<F>| eval_sz(p, &sz, &point);
    let nf = NumericFrame::new(frame, sz.clone(), eval)?;
    let xv = x.coords().iter().map(eval).collect::<Option<Vec<_>>>()?;
    let mut powers = vec![nf.unit().to_vec()];
    for m in 1..=frame.dim() {
        let next = nf.multiply(powers.last().unwrap(), &xv);
        powers.push(next);
        let rows: Vec<Vec<_>> = (0..frame.dim()).map(|i| powers.iter().map(|v| v[i].clone()).collect()).collect();
        if ring_rank(&sz, rows) <= m {
            return Some(m);
        }
    }
    Some(frame.dim())
}

/// Monic minimal polynomial of `x` over the fraction field of the base
/// (all variables other than `x`'s own are treated as scalars).
///
/// When `1, x, ..., x^{n-1}` are independent the minimal polynomial is the
/// characteristic polynomial of left multiplication, which is much cheaper
/// than the `n x n` minors the elimination would produce.
pub fn minimal_polynomial<F: Field>(frame: &Frame<F>, x: &Element<F>) -> Result<UPoly<MPoly<F>>> {
    frame.check(x)?;
    let n = frame.dim();
    let start = degree_lower_bound(frame, x).unwrap_or(1);
    if start == n {
        return frame.left_regular_matrix(x)?.charpoly();
    }
    let mut powers = vec![frame.unit()];
    for m in 1..=n {
        let next = frame.multiply(powers.last().unwrap(), x)?;
        powers.push(next);
        if m < start {
            continue;
        }
        if m == n {
            // 1, ..., x^{n-1} independent: see above
            return frame.left_regular_matrix(x)?.charpoly();
        }
        let Some(dep) = columns(&powers)?.column_dependence()? else {
            continue;
        };
        let lead = dep[m].clone();
        if lead.is_zero() {
            return Err(Error::Internal("lower powers are dependent".into()));
        }
        let coeffs = dep
            .iter()
            .map(|c| {
                c.exact_divide(&lead).map_err(|_| {
                    Error::Internal(format!("minimal polynomial coefficient {c} / {lead} is not a polynomial"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(UPoly::new(coeffs));
    }
    Err(Error::Internal(format!("no dependence among {} powers in dimension {n}", n + 1)))
}

/// Dimension of the subalgebra generated by an element with scalar or
/// parameter coordinates, over the fraction field of the parameters.
pub fn element_degree<F: Field>(a: &Algebra<F>, x: &Element<F>) -> Result<usize> {
    if x.involves_coordinates() {
        return Err(Error::InvalidArgs("element must not involve coordinate variables".into()));
    }
    Ok(minimal_polynomial(a.frame(), x)?.degree().unwrap())
}

/// Least `d` with `rank[1, a, ..., a^d] <= d` for the universal element `a`.
pub fn degree_of_algebraicity<F: Field>(a: &Algebra<F>) -> Result<usize> {
    let fr = a.frame();
    let alpha = a.universal_element();
    let start = degree_lower_bound(fr, &alpha).unwrap_or(1);
    if start == a.dim() {
        return Ok(start);
    }
    let mut powers = vec![fr.unit()];
    for d in 1..=a.dim() {
        let next = fr.multiply(powers.last().unwrap(), &alpha)?;
        powers.push(next);
        if d >= start && columns(&powers)?.rank() <= d {
            return Ok(d);
        }
    }
    Err(Error::Internal("degree exceeds the dimension".into()))
}

pub fn char_data<F: Field>(a: &Algebra<F>) -> Result<CharData<F>> {
    let alpha = a.universal_element();
    let minpoly = minimal_polynomial(a.frame(), &alpha)?;
    let d = minpoly.degree().unwrap();
    let coeffs: Vec<MPoly<F>> = (1..=d)
        .map(|i| {
            let c = minpoly.coeff(d - i).unwrap().clone();
            if i % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.coordinate_degree()? != Some(i as i64 + 1) {
            return Err(Error::Internal(format!(
                "c_{} = {c} is not homogeneous of degree {}",
                i + 1,
                i + 1
            )));
        }
    }
    Ok(CharData {
        degree: d,
        det: coeffs[d - 1].clone(),
        trace: coeffs[0].clone(),
        minpoly,
        coeffs,
    })
}

pub fn determinant<F: Field>(a: &Algebra<F>) -> Result<MPoly<F>> {
    Ok(char_data(a)?.det)
}

pub fn trace<F: Field>(a: &Algebra<F>) -> Result<MPoly<F>> {
    Ok(char_data(a)?.trace)
}

/// `p(x)`: substitutes the coordinates of `p`'s algebra by those of `x`,
/// keeping parameters (matched by name in `x`'s table).
pub fn compose<F: Field>(p: &MPoly<F>, x: &[MPoly<F>], target: &Arc<VarTable>) -> Result<MPoly<F>> {
    let src = p.vars();
    let mut images = Vec::with_capacity(src.len());
    let mut next = 0;
    for i in 0..src.len() {
        images.push(match src.kind(i) {
            VarKind::Coordinate => {
                let v = x
                    .get(next)
                    .ok_or_else(|| Error::DimensionMismatch("too few coordinates".into()))?
                    .clone();
                next += 1;
                v
            }
            _ => {
                let j = target.index_of(src.name(i)).ok_or_else(|| {
                    Error::InvalidArgs(format!("variable {} missing from target table", src.name(i)))
                })?;
                MPoly::var(p.field(), target, j)
            }
        });
    }
    if next != x.len() {
        return Err(Error::DimensionMismatch("too many coordinates".into()));
    }
    p.substitute(target, &images)
}

/// Determinant of the trace form `[tr(e_i e_j)]`.
pub fn discriminant<F: Field>(a: &Algebra<F>, cd: &CharData<F>) -> Result<MPoly<F>> {
    let n = a.dim();
    let fr = a.frame();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(compose(&cd.trace, fr.structure(i, j), a.vars())?);
        }
    }
    PolyMatrix::new(n, n, entries)?.determinant()
}

/// `Q_0 = (-1)^{d+1} R` where `P(T) = T R(T) + P(0)`.
pub fn cofactor<F: Field>(cd: &CharData<F>) -> CofactorData<F> {
    let r: Vec<MPoly<F>> = cd.minpoly.coeffs()[1..].to_vec();
    let q0 = if cd.degree % 2 == 1 {
        UPoly::new(r)
    } else {
        UPoly::new(r.iter().map(|c| -c).collect())
    };
    CofactorData { q0 }
}

/// `x^{-1} = numerator / denominator` with `denominator = det(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Inverse<F: Field> {
    pub numerator: Element<F>,
    pub denominator: MPoly<F>,
}

impl<F: Field> Inverse<F> {
    /// The inverse as an element, when `det(x)` divides every coordinate.
    pub fn to_element(&self, frame: &Frame<F>) -> Result<Element<F>> {
        let coords = self
            .numerator
            .coords()
            .iter()
            .map(|c| {
                c.exact_divide(&self.denominator)
                    .map_err(|_| Error::InverseNotPolynomial(self.denominator.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        frame.element(coords)
    }
}

/// `Q_0(x) / det(x)`, checked by multiplying back.
pub fn invert_element<F: Field>(a: &Algebra<F>, cd: &CharData<F>, x: &Element<F>) -> Result<Inverse<F>> {
    let fr = a.frame();
    fr.check(x)?;
    if x.involves_coordinates() {
        return Err(Error::InvalidArgs("element must not involve coordinate variables".into()));
    }
    let det = compose(&cd.det, x.coords(), a.vars())?;
    if det.is_zero() {
        return Err(Error::NotInvertible);
    }
    let q0 = cofactor(cd).q0;
    let q0x = UPoly::new(
        q0.coeffs()
            .iter()
            .map(|c| compose(c, x.coords(), a.vars()))
            .collect::<Result<Vec<_>>>()?,
    );
    let numerator = fr.eval_upoly(&q0x, x)?;
    if fr.multiply(x, &numerator)? != fr.scalar(&det) {
        return Err(Error::Internal("x * Q0(x) differs from det(x)".into()));
    }
    Ok(Inverse {
        numerator,
        denominator: det,
    })
}

pub fn cayley_hamilton<F: Field>(a: &Algebra<F>, cd: &CharData<F>) -> Result<CHData<F>> {
    let l = a.left_regular_matrix(&a.universal_element())?;
    let ch = l.charpoly()?;
    let (psi, rem) = ch.divmod(&cd.minpoly)?;
    if !rem.is_zero() {
        return Err(Error::Internal("minimal polynomial does not divide CH".into()));
    }
    if psi.degree() != Some(a.dim() - cd.degree) {
        return Err(Error::Internal("cofactor of CH has the wrong degree".into()));
    }
    Ok(CHData { ch, psi })
}

/// `det_A / f^* det_B` for a surjective homomorphism `f: A -> B`.
pub fn relative_determinant<F: Field>(f: &AlgebraHom<F>) -> Result<MPoly<F>> {
    let (a, b) = (f.source(), f.target());
    if f.kind() != crate::algebra::HomKind::Homomorphism || !f.is_surjective() {
        return Err(Error::NotHomomorphism("a surjective homomorphism is required".into()));
    }
    let (ca, cb) = (char_data(a)?, char_data(b)?);
    let image = f.apply(a.universal_element().coords())?;
    let pulled = compose(&cb.det, &image, a.vars())?;
    let rel = ca.det.exact_divide(&pulled).map_err(|e| {
        Error::NotHomomorphism(format!("det_B does not divide det_A after pullback: {e}"))
    })?;
    let expect = (ca.degree - cb.degree) as i64;
    if rel.coordinate_degree()? != Some(expect) {
        return Err(Error::Internal(format!("relative determinant is not homogeneous of degree {expect}")));
    }
    Ok(rel)
}

/// `det - 1`.
pub fn unimodular_equation<F: Field>(cd: &CharData<F>) -> MPoly<F> {
    &cd.det - &MPoly::one(cd.det.field(), cd.det.vars())
}

/// Computed determinant of `F_p(t)[u]/(u^p - t)` next to the closed form
/// `-sum_i t_i^p t^i` quoted in the literature.
#[derive(Clone, Debug, PartialEq)]
pub struct InseparableSign {
    pub p: u64,
    pub computed: MPoly<PrimeField>,
    pub quoted: MPoly<PrimeField>,
    pub agrees: bool,
}

pub fn inseparable_sign(p: u64) -> Result<InseparableSign> {
    let field = PrimeField::new(p)?;
    let a = catalog_in(&field, &format!("inseparable:{p}"))?;
    let computed = determinant(&a)?;
    let v = a.vars();
    let t = MPoly::named(&field, v, "t");
    let mut sum = MPoly::zero(&field, v);
    for i in 0..p as usize {
        sum = &sum + &(&MPoly::var(&field, v, i).pow(p as u32) * &t.pow(i as u32));
    }
    let quoted = -sum;
    Ok(InseparableSign {
        p,
        agrees: computed == quoted,
        computed,
        quoted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn cat(name: &str) -> Algebra<Rationals> {
        catalog_in(&Rationals, name).unwrap()
    }

    #[test]
    fn quaternion_norm() {
        let cd = char_data(&cat("quaternion")).unwrap();
        assert_eq!(cd.det.to_string(), "a^2 - al*b^2 - be*c^2 + al*be*d^2");
        assert_eq!(cd.trace.to_string(), "2*a");
    }

    #[test]
    fn dim2_minpoly() {
        let cd = char_data(&cat("dim2")).unwrap();
        assert_eq!(cd.minpoly.to_string(), "T^2 - (2*r + a*s)*T + (r^2 + a*r*s - b*s^2)");
    }

    #[test]
    fn small_discriminants() {
        let d = cat("dim2");
        assert_eq!(discriminant(&d, &char_data(&d).unwrap()).unwrap().to_string(), "a^2 + 4*b");
        let s = cat("split:2");
        assert_eq!(discriminant(&s, &char_data(&s).unwrap()).unwrap().to_string(), "1");
        let h = cat("quaternion");
        assert_eq!(discriminant(&h, &char_data(&h).unwrap()).unwrap().to_string(), "-16*al^2*be^2");
    }

    #[test]
    fn one_dimensional() {
        let s = cat("split:1");
        let cd = char_data(&s).unwrap();
        assert_eq!(cd.degree, 1);
        assert_eq!(cd.minpoly.to_string(), "T - t1");
        assert_eq!(cd.det.to_string(), "t1");
    }

    #[test]
    fn inverse_in_dim2() {
        let d = cat("dim2:0,0");
        let cd = char_data(&d).unwrap();
        let one = MPoly::one(&Rationals, d.vars());
        let x = d.element(vec![one.clone(), one.clone()]).unwrap();
        let inv = invert_element(&d, &cd, &x).unwrap().to_element(d.frame()).unwrap();
        assert_eq!(inv, d.element(vec![one.clone(), -&one]).unwrap());
        let y = d.element(vec![MPoly::zero(&Rationals, d.vars()), one]).unwrap();
        assert_eq!(invert_element(&d, &cd, &y).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn cayley_hamilton_split_and_matrix() {
        let s = cat("split:2");
        let cd = char_data(&s).unwrap();
        let ch = cayley_hamilton(&s, &cd).unwrap();
        assert_eq!(ch.ch, cd.minpoly);
        assert_eq!(ch.psi.degree(), Some(0));
        let m = cat("matrix:2");
        let cd = char_data(&m).unwrap();
        let ch = cayley_hamilton(&m, &cd).unwrap();
        assert_eq!(ch.psi, cd.minpoly);
    }

    #[test]
    fn inseparable_three_sign_differs() {
        let s = inseparable_sign(3).unwrap();
        assert!(!s.agrees);
        assert_eq!(s.computed, -&s.quoted);
        assert!(inseparable_sign(2).unwrap().agrees);
    }
}
