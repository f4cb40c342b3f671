//! Products, tensor products and changes of basis.

use std::sync::Arc;

use super::{numbered_names, Algebra, Frame};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::mpoly::MPoly;
use crate::vars::{VarKind, VarTable};

/// `A x B` with the maps needed to pull polynomials back from either factor.
#[derive(Clone, Debug)]
pub struct Product<F: Field> {
    pub algebra: Algebra<F>,
    /// `(factor, old name, new name)` for every renamed basis vector or parameter.
    pub renamed: Vec<(char, String, String)>,
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
}

impl<F: Field> Product<F> {
    /// `pr_1^* p` for a polynomial over the first factor's table.
    pub fn pull_left(&self, p: &MPoly<F>) -> Result<MPoly<F>> {
        p.remap(self.algebra.vars(), &self.left)
    }

    /// `pr_2^* p` for a polynomial over the second factor's table.
    pub fn pull_right(&self, p: &MPoly<F>) -> Result<MPoly<F>> {
        p.remap(self.algebra.vars(), &self.right)
    }
}

#[derive(Clone, Debug)]
pub struct Tensor<F: Field> {
    pub algebra: Algebra<F>,
    pub renamed: Vec<(char, String, String)>,
}

/// Suffixes `_L`/`_R` on names occurring on both sides.
fn disambiguate(a: &[String], b: &[String], renamed: &mut Vec<(char, String, String)>) -> (Vec<String>, Vec<String>) {
    let fix = |v: &[String], other: &[String], suffix: &str, side: char, renamed: &mut Vec<_>| {
        v.iter()
            .map(|n| {
                if other.contains(n) {
                    let m = format!("{n}{suffix}");
                    renamed.push((side, n.clone(), m.clone()));
                    m
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
    };
    let l = fix(a, b, "_L", 'L', renamed);
    let r = fix(b, a, "_R", 'R', renamed);
    (l, r)
}

fn check_fields<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(
            a.field().spec().to_string(),
            b.field().spec().to_string(),
        ));
    }
    Ok(())
}

/// Index map from `from` into `to`, translating names through `rename`.
fn name_map(from: &VarTable, to: &VarTable, rename: impl Fn(usize) -> String) -> Vec<Option<usize>> {
    (0..from.len()).map(|i| to.index_of(&rename(i))).collect()
}

pub fn direct_product<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> Result<Product<F>> {
    check_fields(a, b)?;
    let mut renamed = Vec::new();
    let (pa, pb) = disambiguate(&a.params(), &b.params(), &mut renamed);
    let (ba, bb) = disambiguate(a.basis(), b.basis(), &mut renamed);
    let params: Vec<String> = pa.iter().chain(&pb).cloned().collect();
    let (ca, cb) = (a.coord_names(), b.coord_names());
    let mut coords: Vec<String> = ca.iter().chain(&cb).cloned().collect();
    let clash = ca.iter().any(|c| cb.contains(c)) || coords.iter().any(|c| params.contains(c));
    if clash {
        coords = numbered_names(coords.len(), &params);
    }
    let vars = VarTable::new(&coords, &params, &[])?;
    let (na, nb) = (a.dim(), b.dim());
    let var_name = |side: usize, i: usize| -> String {
        let (src, ps, off) = if side == 0 { (a.vars(), &pa, 0) } else { (b.vars(), &pb, na) };
        match src.kind(i) {
            VarKind::Coordinate => coords[off + i].clone(),
            _ => ps[src.params().position(|j| j == i).unwrap()].clone(),
        }
    };
    let left = name_map(a.vars(), &vars, |i| var_name(0, i));
    let right = name_map(b.vars(), &vars, |i| var_name(1, i));
    let field = a.field();
    let zero = MPoly::zero(field, &vars);
    let n = na + nb;
    let mut table = vec![vec![zero.clone(); n]; n * n];
    let mut unit = vec![zero; n];
    for (alg, map, off, m) in [(a, &left, 0, na), (b, &right, na, nb)] {
        for i in 0..m {
            for j in 0..m {
                for (k, c) in alg.frame().structure(i, j).iter().enumerate() {
                    table[(off + i) * n + off + j][off + k] = c.remap(&vars, map)?;
                }
            }
            unit[off + i] = alg.frame().unit[i].remap(&vars, map)?;
        }
    }
    let basis: Vec<String> = ba.into_iter().chain(bb).collect();
    let frame = Frame::new(field, &vars, table, unit)?;
    let algebra = Algebra::new(format!("({})x({})", a.name(), b.name()), basis, frame)?;
    Ok(Product {
        algebra,
        renamed,
        left,
        right,
    })
}

/// `A (x) B` on the basis `a_i (x) b_j`, ordered lexicographically in `(i, j)`
/// and named `<a_i>_<b_j>`; coordinates are `t1..t_{nm}`.
pub fn tensor_product<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> Result<Tensor<F>> {
    check_fields(a, b)?;
    let mut renamed = Vec::new();
    let (pa, pb) = disambiguate(&a.params(), &b.params(), &mut renamed);
    let params: Vec<String> = pa.iter().chain(&pb).cloned().collect();
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let mut basis: Vec<String> = (0..n)
        .map(|k| format!("{}_{}", a.basis()[k / nb], b.basis()[k % nb]))
        .collect();
    let unique = (0..n).all(|k| !basis[..k].contains(&basis[k]) && !params.contains(&basis[k]));
    if !unique {
        basis = (1..=n).map(|k| format!("f{k}")).collect();
    }
    let coords = numbered_names(n, &params);
    let vars = VarTable::new(&coords, &params, &[])?;
    let param_map = |alg: &Algebra<F>, ps: &[String]| -> Vec<Option<usize>> {
        let v = alg.vars();
        (0..v.len())
            .map(|i| match v.kind(i) {
                VarKind::Parameter => vars.index_of(&ps[v.params().position(|j| j == i).unwrap()]),
                _ => None,
            })
            .collect()
    };
    let (ma, mb) = (param_map(a, &pa), param_map(b, &pb));
    let field = a.field();
    let zero = MPoly::zero(field, &vars);
    let ta: Vec<Vec<MPoly<F>>> = a
        .frame()
        .table()
        .iter()
        .map(|r| r.iter().map(|c| c.remap(&vars, &ma)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let tb: Vec<Vec<MPoly<F>>> = b
        .frame()
        .table()
        .iter()
        .map(|r| r.iter().map(|c| c.remap(&vars, &mb)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut table = vec![vec![zero.clone(); n]; n * n];
    for i in 0..na {
        for j in 0..nb {
            for k in 0..na {
                for l in 0..nb {
                    let ca = &ta[i * na + k];
                    let cb = &tb[j * nb + l];
                    let entry = &mut table[(i * nb + j) * n + k * nb + l];
                    for (p, x) in ca.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        for (q, y) in cb.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                            entry[p * nb + q] = &entry[p * nb + q] + &(x * y);
                        }
                    }
                }
            }
        }
    }
    let ua: Vec<MPoly<F>> = a.frame().unit.iter().map(|c| c.remap(&vars, &ma)).collect::<Result<_>>()?;
    let ub: Vec<MPoly<F>> = b.frame().unit.iter().map(|c| c.remap(&vars, &mb)).collect::<Result<_>>()?;
    let unit = (0..n).map(|k| &ua[k / nb] * &ub[k % nb]).collect();
    let frame = Frame::new(field, &vars, table, unit)?;
    let algebra = Algebra::new(format!("({})(x)({})", a.name(), b.name()), basis, frame)?;
    Ok(Tensor { algebra, renamed })
}

/// The algebra in the basis `f_j = sum_i M_ij e_i`.
#[derive(Clone, Debug)]
pub struct BaseChange<F: Field> {
    pub algebra: Algebra<F>,
    pub matrix: PolyMatrix<F>,
    pub inverse: PolyMatrix<F>,
}

/// Changes basis by `m`, whose entries are polynomials in the parameters
/// over `a`'s table. The determinant of `m` must be a nonzero constant so
/// that the new structure constants stay polynomial.
pub fn base_change<F: Field>(a: &Algebra<F>, m: &PolyMatrix<F>) -> Result<BaseChange<F>> {
    let n = a.dim();
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix for dimension {n}",
            m.rows(),
            m.cols()
        )));
    }
    let vars = a.vars();
    if m.entries().iter().any(|e| !Arc::ptr_eq(e.vars(), vars) && **e.vars() != **vars) {
        return Err(Error::VarTableMismatch);
    }
    if m.entries().iter().any(|e| e.involves(|i| vars.kind(i) != VarKind::Parameter)) {
        return Err(Error::UnsupportedBaseChange("entries involve coordinate variables".into()));
    }
    let det = m.determinant()?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if det.constant_value().is_none() {
        return Err(Error::UnsupportedBaseChange(format!(
            "determinant {det} is not a constant"
        )));
    }
    let field = a.field();
    let fr = a.frame();
    let zero = MPoly::zero(field, vars);
    // inverse columns: M^{-1} e_k, obtained from the adjugate
    let mut inv_cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut rhs = vec![zero.clone(); n];
        rhs[k] = MPoly::one(field, vars);
        let s = m.solve(&rhs)?;
        let scale = s
            .denominator
            .constant_value()
            .and_then(|d| field.inv(&d))
            .ok_or_else(|| Error::Internal("constant pivot expected".into()))?;
        inv_cols.push(s.numerators.iter().map(|x| x.scale(&scale)).collect::<Vec<_>>());
    }
    let inverse = PolyMatrix::from_columns(&inv_cols)?;
    let columns: Vec<Vec<MPoly<F>>> = (0..n).map(|j| m.column(j)).collect();
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        let fi = fr.element(columns[i].clone())?;
        for j in 0..n {
            let fj = fr.element(columns[j].clone())?;
            let prod = fr.multiply(&fi, &fj)?;
            table.push(inverse.apply(prod.coords())?);
        }
    }
    let unit = inverse.apply(&fr.unit)?;
    let frame = Frame::new(field, vars, table, unit)?;
    let algebra = Algebra::new(a.name().to_string(), a.basis().to_vec(), frame)?;
    Ok(BaseChange {
        algebra,
        matrix: m.clone(),
        inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog_in;
    use crate::field::Rationals;

    fn cat(name: &str) -> Algebra<Rationals> {
        catalog_in(&Rationals, name).unwrap()
    }

    fn int_matrix(a: &Algebra<Rationals>, rows: &[&[i64]]) -> PolyMatrix<Rationals> {
        let n = rows.len();
        PolyMatrix::from_fn(n, n, |i, j| MPoly::from_i64(&Rationals, a.vars(), rows[i][j]))
    }

    #[test]
    fn product_of_split_ones_is_split_two() {
        let s1 = cat("split:1");
        let p = direct_product(&s1, &s1).unwrap();
        assert_eq!(p.algebra.dim(), 2);
        let s2 = cat("split:2");
        assert_eq!(p.algebra.frame().table(), s2.frame().table());
        assert_eq!(p.algebra.coord_names(), vec!["t1", "t2"]);
        assert_eq!(p.algebra.basis(), &["e1_L", "e1_R"]);
    }

    #[test]
    fn product_renames_clashing_params() {
        let h = cat("quaternion");
        let p = direct_product(&h, &h).unwrap();
        assert_eq!(p.algebra.params(), vec!["al_L", "be_L", "al_R", "be_R"]);
        assert!(p.algebra.validate().is_ok());
        assert!(p.renamed.iter().any(|(s, o, n)| *s == 'R' && o == "al" && n == "al_R"));
        let m2 = cat("matrix:2");
        let q = direct_product(&m2, &h).unwrap();
        assert_eq!(q.algebra.dim(), 8);
        assert!(q.algebra.validate().is_ok());
        // disjoint coordinate names are kept
        assert_eq!(q.algebra.coord_names()[4..], ["a", "b", "c", "d"]);
    }

    #[test]
    fn tensor_with_line_is_identity() {
        let h = cat("quaternion");
        let t = tensor_product(&h, &cat("split:1")).unwrap();
        assert_eq!(t.algebra.dim(), 4);
        // same constants after renaming coordinates t1..t4 -> a..d
        let renamed = t.algebra.with_coordinates(&h.coord_names()).unwrap();
        assert_eq!(renamed.frame().table(), h.frame().table());
    }

    #[test]
    fn tensor_dimensions_multiply() {
        let m2 = cat("matrix:2");
        let t = tensor_product(&m2, &m2).unwrap();
        assert_eq!(t.algebra.dim(), 16);
        assert!(t.algebra.validate().is_ok());
    }

    #[test]
    fn base_change_round_trip() {
        let h = cat("quaternion");
        let m = int_matrix(&h, &[&[1, 2, 0, 0], &[0, 1, 0, 3], &[0, 0, 1, 0], &[1, 0, 0, 2]]);
        let bc = base_change(&h, &m).unwrap();
        assert!(bc.algebra.validate().is_ok());
        let back = base_change(&bc.algebra, &bc.inverse).unwrap();
        assert_eq!(back.algebra.frame().table(), h.frame().table());
        assert_eq!(back.algebra.unit(), h.unit());
    }

    #[test]
    fn swap_on_split_two() {
        let s = cat("split:2");
        let m = int_matrix(&s, &[&[0, 1], &[1, 0]]);
        let bc = base_change(&s, &m).unwrap();
        assert_eq!(bc.algebra.frame().table(), s.frame().table());
        let id = int_matrix(&s, &[&[1, 0], &[0, 1]]);
        assert_eq!(base_change(&s, &id).unwrap().algebra, s);
    }

    #[test]
    fn singular_and_symbolic_determinants_rejected() {
        let d = cat("dim2");
        let sing = int_matrix(&d, &[&[1, 2], &[2, 4]]);
        assert_eq!(base_change(&d, &sing).unwrap_err(), Error::SingularMatrix);
        let a = MPoly::named(&Rationals, d.vars(), "a");
        let one = MPoly::one(&Rationals, d.vars());
        let zero = MPoly::zero(&Rationals, d.vars());
        let sym = PolyMatrix::new(2, 2, vec![one.clone(), zero, a.clone(), a.clone()]).unwrap();
        assert!(matches!(base_change(&d, &sym), Err(Error::UnsupportedBaseChange(_))));
        // unipotent with a parameter entry: determinant 1
        let uni = PolyMatrix::new(2, 2, vec![one.clone(), a, MPoly::zero(&Rationals, d.vars()), one]).unwrap();
        assert!(base_change(&d, &uni).unwrap().algebra.validate().is_ok());
    }
}
