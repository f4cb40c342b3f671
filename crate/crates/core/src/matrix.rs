//! Matrices of polynomials and fraction-free (Bareiss) elimination.
//!
//! Every entry produced by the elimination is a minor of the input, so all
//! divisions are exact polynomial divisions and no rational functions appear.
//! The Gauss-Jordan variant also clears above the pivots; after `r` pivot
//! steps each pivot entry equals the last pivot `D`, and the non-pivot columns
//! hold `D` times the reduced solution.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mpoly::MPoly;
use crate::upoly::UPoly;
use crate::vars::VarTable;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<MPoly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<MPoly<F>>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> MPoly<F>) -> Self {
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        PolyMatrix { rows, cols, entries }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<MPoly<F>>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, |c| c.len());
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("ragged columns".into()));
        }
        Self::new(
            rows,
            cols,
            (0..rows)
                .flat_map(|i| columns.iter().map(move |c| c[i].clone()))
                .collect(),
        )
    }

    pub fn identity(field: &F, vars: &Arc<VarTable>, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                MPoly::one(field, vars)
            } else {
                MPoly::zero(field, vars)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[MPoly<F>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[MPoly<F>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<MPoly<F>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let zero = self.entries[0].zero_like_poly();
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(zero.clone(), |acc, k| &acc + &(self.get(i, k) * o.get(k, j)))
        }))
    }

    pub fn apply(&self, v: &[MPoly<F>]) -> Result<Vec<MPoly<F>>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let zero = self.entries[0].zero_like_poly();
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(zero.clone(), |acc, k| &acc + &(self.get(i, k) * &v[k])))
            .collect())
    }

    pub fn map(&self, f: impl Fn(&MPoly<F>) -> MPoly<F>) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Elimination::new(self);
        for j in 0..self.cols {
            e.step(j, false).expect("exact Bareiss division");
        }
        e.pivots.len()
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<MPoly<F>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut e = Elimination::new(self);
        for j in 0..self.cols {
            if !e.step(j, false)? {
                return Ok(self.entries[0].zero_like_poly());
            }
        }
        let order: Vec<usize> = e.pivots.iter().map(|p| p.row).collect();
        let d = e.prev.clone();
        Ok(if permutation_is_odd(&order) { -d } else { d })
    }

    /// First linear dependence among the columns, scanning left to right.
    ///
    /// Returns `x` with `M x = 0`, nonzero only on the pivot columns before
    /// the first dependent column `j` and on `j` itself, whose entry is the
    /// last pivot (a minor). The vector is scaled by its scalar content.
    pub fn column_dependence(&self) -> Result<Option<Vec<MPoly<F>>>> {
        let mut e = Elimination::new(self);
        for j in 0..self.cols {
            if e.step(j, true)? {
                continue;
            }
            return Ok(Some(e.dependence(j)));
        }
        Ok(None)
    }

    /// Solves `M x = b` for square nonsingular `M` as `x = numerators / denominator`.
    pub fn solve(&self, b: &[MPoly<F>]) -> Result<Solution<F>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let mut columns: Vec<Vec<MPoly<F>>> = (0..self.cols).map(|j| self.column(j)).collect();
        columns.push(b.to_vec());
        let aug = PolyMatrix::from_columns(&columns)?;
        let mut e = Elimination::new(&aug);
        for j in 0..self.cols {
            if !e.step(j, true)? {
                return Err(Error::SingularMatrix);
            }
        }
        let mut numerators = vec![self.entries[0].zero_like_poly(); self.cols];
        for p in &e.pivots {
            numerators[p.col] = e.a[p.row][self.cols].clone();
        }
        Ok(Solution {
            denominator: e.prev.clone(),
            numerators,
        })
    }

    /// Pivot values of forward elimination with their (row, column)
    /// positions; pivot `k` is the minor on the first `k+1` pivot rows and
    /// columns.
    pub fn pivot_sequence(&self) -> Vec<(usize, usize, MPoly<F>)> {
        let mut e = Elimination::new(self);
        let mut out = Vec::new();
        for j in 0..self.cols {
            if e.step(j, false).expect("exact Bareiss division") {
                let p = e.pivots.last().unwrap();
                out.push((p.row, p.col, e.prev.clone()));
            }
        }
        out
    }

    /// `det(T*I - M)` by Berkowitz's algorithm, which uses no division and
    /// is therefore valid in every characteristic.
    pub fn charpoly(&self) -> Result<UPoly<MPoly<F>>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let zero = self.entries[0].zero_like_poly();
        let one = MPoly::one(self.entries[0].field(), self.entries[0].vars());
        // coefficients of the leading r x r block, highest power first
        let mut vect = vec![one.clone()];
        for r in 0..n {
            let a = self.get(r, r);
            // c = [1, -a, -R S, -R A S, ..., -R A^{r-1} S]
            let mut c = Vec::with_capacity(r + 2);
            c.push(one.clone());
            c.push(-a);
            let mut v: Vec<MPoly<F>> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for k in 0..r {
                let mut dot = zero.clone();
                for (j, vj) in v.iter().enumerate() {
                    if !vj.is_zero() && !self.get(r, j).is_zero() {
                        dot = &dot + &(self.get(r, j) * vj);
                    }
                }
                c.push(-dot);
                if k + 1 < r {
                    v = (0..r)
                        .map(|i| {
                            let mut acc = zero.clone();
                            for (j, vj) in v.iter().enumerate() {
                                if !vj.is_zero() && !self.get(i, j).is_zero() {
                                    acc = &acc + &(self.get(i, j) * vj);
                                }
                            }
                            acc
                        })
                        .collect();
                }
            }
            // lower triangular Toeplitz matrix with first column c, times vect
            vect = (0..r + 2)
                .map(|i| {
                    let mut acc = zero.clone();
                    for (j, vj) in vect.iter().enumerate().take(i + 1) {
                        if !vj.is_zero() && !c[i - j].is_zero() {
                            acc = &acc + &(&c[i - j] * vj);
                        }
                    }
                    acc
                })
                .collect();
        }
        vect.reverse();
        Ok(UPoly::new(vect))
    }
}

/// `x = numerators / denominator`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<F: Field> {
    pub denominator: MPoly<F>,
    pub numerators: Vec<MPoly<F>>,
}

/// Mode selector for [`bareiss_solve`].
#[derive(Clone, Debug)]
pub enum SolveMode<F: Field> {
    Rank,
    KernelOfColumns,
    LinearSolve(Vec<MPoly<F>>),
}

#[derive(Clone, Debug)]
pub struct BareissOutcome<F: Field> {
    pub rank: usize,
    pub kernel: Option<Vec<MPoly<F>>>,
    pub solution: Option<Solution<F>>,
}

/// Rank over the fraction field plus the certificate requested by `mode`.
pub fn bareiss_solve<F: Field>(m: &PolyMatrix<F>, mode: SolveMode<F>) -> Result<BareissOutcome<F>> {
    let rank = m.rank();
    let mut out = BareissOutcome {
        rank,
        kernel: None,
        solution: None,
    };
    match mode {
        SolveMode::Rank => {}
        SolveMode::KernelOfColumns => out.kernel = m.column_dependence()?,
        SolveMode::LinearSolve(b) => out.solution = Some(m.solve(&b)?),
    }
    Ok(out)
}

fn permutation_is_odd(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    let mut odd = false;
    // rows are a permutation of 0..n when the matrix is square and nonsingular
    let mut rank: Vec<usize> = order.to_vec();
    let mut sorted = rank.clone();
    sorted.sort_unstable();
    for r in rank.iter_mut() {
        *r = sorted.binary_search(r).unwrap();
    }
    for start in 0..rank.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = rank[k];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

struct Pivot {
    row: usize,
    col: usize,
}

struct Elimination<F: Field> {
    a: Vec<Vec<MPoly<F>>>,
    is_pivot_row: Vec<bool>,
    pivots: Vec<Pivot>,
    prev: MPoly<F>,
}

impl<F: Field> Elimination<F> {
    fn new(m: &PolyMatrix<F>) -> Self {
        let a = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
        let one = MPoly::one(m.entries[0].field(), m.entries[0].vars());
        Elimination {
            a,
            is_pivot_row: vec![false; m.rows],
            pivots: Vec::new(),
            prev: one,
        }
    }

    /// One pivot step at column `j`. Returns false when the column has no
    /// pivot (it depends on the earlier pivot columns).
    fn step(&mut self, j: usize, jordan: bool) -> Result<bool> {
        let candidate = (0..self.a.len())
            .filter(|&i| !self.is_pivot_row[i] && !self.a[i][j].is_zero())
            .min_by_key(|&i| (self.a[i][j].num_terms(), self.a[i][j].total_degree()));
        let Some(p) = candidate else {
            return Ok(false);
        };
        let piv = self.a[p][j].clone();
        let cols = self.a[p].len();
        let pivot_row = self.a[p].clone();
        for i in 0..self.a.len() {
            if i == p || (!jordan && self.is_pivot_row[i]) {
                continue;
            }
            let factor = self.a[i][j].clone();
            let start = if jordan { 0 } else { j + 1 };
            for l in start..cols {
                if l == j {
                    continue;
                }
                let mut v = &piv * &self.a[i][l];
                if !factor.is_zero() && !pivot_row[l].is_zero() {
                    v = &v - &(&factor * &pivot_row[l]);
                }
                self.a[i][l] = if self.prev.is_one() {
                    v
                } else {
                    v.exact_divide(&self.prev)
                        .map_err(|e| Error::Internal(format!("Bareiss step: {e}")))?
                };
            }
            self.a[i][j] = piv.zero_like_poly();
        }
        self.is_pivot_row[p] = true;
        self.pivots.push(Pivot { row: p, col: j });
        self.prev = piv;
        Ok(true)
    }

    fn dependence(&self, j: usize) -> Vec<MPoly<F>> {
        let cols = self.a[0].len();
        let mut x = vec![self.prev.zero_like_poly(); cols];
        x[j] = self.prev.clone();
        for p in &self.pivots {
            x[p.col] = -&self.a[p.row][j];
        }
        let refs: Vec<&MPoly<F>> = x.iter().rev().filter(|e| !e.is_zero()).collect();
        if let Some(s) = MPoly::content_scale_of(&refs) {
            x = x.iter().map(|e| e.scale(&s)).collect();
        }
        x
    }
}

impl<F: Field> MPoly<F> {
    pub(crate) fn zero_like_poly(&self) -> MPoly<F> {
        MPoly::zero(self.field(), self.vars())
    }
}

/// Rank of a matrix over the field itself (numeric Gaussian elimination).
pub fn field_rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut a: Vec<Vec<F::Elem>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !field.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(rank, p);
        let inv = field.inv(&a[rank][c]).unwrap();
        for i in 0..a.len() {
            if i == rank || field.is_zero(&a[i][c]) {
                continue;
            }
            let f = field.mul(&a[i][c], &inv);
            for l in c..ncols {
                let t = field.mul(&f, &a[rank][l]);
                a[i][l] = field.sub(&a[i][l], &t);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn identity_rank() {
        let v = VarTable::new::<&str>(&[], &[], &[]).unwrap();
        assert_eq!(PolyMatrix::identity(&q(), &v, 2).rank(), 2);
    }

    #[test]
    fn charpoly_two_by_two() {
        let v = VarTable::new(&["t1", "t2", "t3", "t4"], &[], &[]).unwrap();
        let m = PolyMatrix::from_fn(2, 2, |i, j| MPoly::var(&q(), &v, 2 * i + j));
        let cp = m.charpoly().unwrap();
        assert_eq!(cp.to_string(), "T^2 - (t1 + t4)*T + (t1*t4 - t2*t3)");
    }

    #[test]
    fn charpoly_diagonal() {
        let v = VarTable::new(&["t1", "t2"], &[], &[]).unwrap();
        let m = PolyMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                MPoly::var(&q(), &v, i)
            } else {
                MPoly::zero(&q(), &v)
            }
        });
        assert_eq!(m.charpoly().unwrap().to_string(), "T^2 - (t1 + t2)*T + t1*t2");
    }

    #[test]
    fn non_square_rejected() {
        let v = VarTable::new(&["t1"], &[], &[]).unwrap();
        let m = PolyMatrix::from_fn(1, 2, |_, _| MPoly::var(&q(), &v, 0));
        assert!(matches!(m.charpoly(), Err(Error::NonSquare { .. })));
        assert!(matches!(m.determinant(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn solve_symbolic_system() {
        let v = VarTable::new(&["x"], &[], &[]).unwrap();
        let x = MPoly::var(&q(), &v, 0);
        let c = |k| MPoly::from_i64(&q(), &v, k);
        // [[x, 1], [1, x]] y = [1, 0]  =>  y = (x, -1) / (x^2 - 1)
        let m = PolyMatrix::from_fn(2, 2, |i, j| if i == j { x.clone() } else { c(1) });
        let s = m.solve(&[c(1), c(0)]).unwrap();
        let d = &x.pow(2) - &c(1);
        assert!(s.denominator == d || s.denominator == -&d);
        let sign = if s.denominator == d { c(1) } else { c(-1) };
        assert_eq!(s.numerators, vec![&x * &sign, -&sign]);
    }

    #[test]
    fn parity() {
        assert!(!permutation_is_odd(&[0, 1, 2]));
        assert!(permutation_is_odd(&[1, 0, 2]));
        assert!(!permutation_is_odd(&[1, 2, 0]));
    }
}
