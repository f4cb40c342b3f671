//! Named example algebras.
//!
//! Names take optional arguments after a colon (`matrix:3`, `quaternion:-1,-1`)
//! and an optional field suffix (`matrix:2@GF(5)`). Families with parameters
//! accept numeric values for all of them, in declaration order.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Algebra, Frame};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::mpoly::MPoly;
use crate::vars::VarTable;

/// An algebra over either supported field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyAlgebra {
    Rational(Algebra<Rationals>),
    Prime(Algebra<PrimeField>),
}

impl AnyAlgebra {
    pub fn name(&self) -> &str {
        match self {
            AnyAlgebra::Rational(a) => a.name(),
            AnyAlgebra::Prime(a) => a.name(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyAlgebra::Rational(a) => a.dim(),
            AnyAlgebra::Prime(a) => a.dim(),
        }
    }

    pub fn field_spec(&self) -> FieldSpec {
        match self {
            AnyAlgebra::Rational(a) => a.field().spec(),
            AnyAlgebra::Prime(a) => a.field().spec(),
        }
    }
}

impl From<Algebra<Rationals>> for AnyAlgebra {
    fn from(a: Algebra<Rationals>) -> Self {
        AnyAlgebra::Rational(a)
    }
}

impl From<Algebra<PrimeField>> for AnyAlgebra {
    fn from(a: Algebra<PrimeField>) -> Self {
        AnyAlgebra::Prime(a)
    }
}

/// Catalog entries with the arguments used by the test suite.
pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "matrix:2",
        "matrix:3",
        "quaternion",
        "exterior:2",
        "exterior:3",
        "split:1",
        "split:2",
        "split:3",
        "split:4",
        "dim2",
        "galois-quadratic",
        "dim3nc",
        "dim3comm",
        "group:C2",
        "group:C3",
        "boolean2",
        "inseparable:2",
        "inseparable:3",
    ]
}

/// Looks up a catalog entry. The field defaults to the rationals, except for
/// `boolean2` (GF(2)) and `inseparable:p` (GF(p)).
pub fn catalog(spec: &str) -> Result<AnyAlgebra> {
    let (name, field) = match spec.split_once('@') {
        Some((n, f)) => (n, Some(parse_field(f)?)),
        None => (spec, None),
    };
    let field = match field {
        Some(f) => f,
        None => natural_field(name)?,
    };
    match field {
        FieldSpec::Rationals => Ok(AnyAlgebra::Rational(catalog_in(&Rationals, name)?)),
        FieldSpec::Prime(p) => Ok(AnyAlgebra::Prime(catalog_in(&PrimeField::new(p)?, name)?)),
    }
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    if s == "QQ" {
        return Ok(FieldSpec::Rationals);
    }
    let p = s
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|r| r.trim().parse::<u64>().ok())
        .ok_or_else(|| Error::InvalidArgs(format!("unknown field {s}")))?;
    PrimeField::new(p)?;
    Ok(FieldSpec::Prime(p))
}

fn natural_field(name: &str) -> Result<FieldSpec> {
    let (base, args) = split(name);
    Ok(match base {
        "boolean2" => FieldSpec::Prime(2),
        "inseparable" => FieldSpec::Prime(parse_usize(args, "inseparable")? as u64),
        _ => FieldSpec::Rationals,
    })
}

fn split(name: &str) -> (&str, &str) {
    name.split_once(':').unwrap_or((name, ""))
}

fn parse_usize(args: &str, what: &str) -> Result<usize> {
    args.trim()
        .parse()
        .map_err(|_| Error::InvalidArgs(format!("{what} needs a positive integer argument, got `{args}`")))
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Parses `p` or `p/q` into the field.
fn parse_scalar<F: Field>(field: &F, s: &str) -> Result<F::Elem> {
    let bad = || Error::InvalidArgs(format!("not a number: `{s}`"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    field.from_ratio(&n, &d)
}

/// Resolves family parameters: either all symbolic or all given numerically.
fn family_params<F: Field>(field: &F, params: &[&str], args: &str) -> Result<Vec<(String, Option<F::Elem>)>> {
    if args.trim().is_empty() {
        return Ok(params.iter().map(|p| (p.to_string(), None)).collect());
    }
    let vals: Vec<&str> = args.split(',').collect();
    if vals.len() != params.len() {
        return Err(Error::InvalidArgs(format!(
            "expected {} values ({}), got {}",
            params.len(),
            params.join(", "),
            vals.len()
        )));
    }
    params
        .iter()
        .zip(vals)
        .map(|(p, v)| Ok((p.to_string(), Some(parse_scalar(field, v)?))))
        .collect()
}

/// Builds an algebra from products written as sparse integer-coefficient
/// expressions in the parameters; then substitutes numeric parameter values.
struct Builder<F: Field> {
    field: F,
    vars: Arc<VarTable>,
    n: usize,
    table: Vec<Vec<MPoly<F>>>,
    unit: Vec<MPoly<F>>,
}

impl<F: Field> Builder<F> {
    fn new(field: &F, coords: &[String], params: &[String]) -> Result<Self> {
        let vars = VarTable::new(coords, params, &[])?;
        let n = coords.len();
        let zero = MPoly::zero(field, &vars);
        Ok(Builder {
            field: field.clone(),
            vars,
            n,
            table: vec![vec![zero.clone(); n]; n * n],
            unit: vec![zero; n],
        })
    }

    fn c(&self, k: i64) -> MPoly<F> {
        MPoly::from_i64(&self.field, &self.vars, k)
    }

    fn p(&self, name: &str) -> MPoly<F> {
        MPoly::named(&self.field, &self.vars, name)
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: MPoly<F>) {
        self.table[i * self.n + j][k] = v;
    }

    /// Declares the first basis vector as the unit and fills its products.
    fn unit_first(&mut self) {
        self.unit[0] = self.c(1);
        for i in 0..self.n {
            let one = self.c(1);
            self.set(0, i, i, one.clone());
            self.set(i, 0, i, one);
        }
    }

    fn finish(self, name: &str, basis: Vec<String>) -> Result<Algebra<F>> {
        let frame = Frame::new(&self.field, &self.vars, self.table, self.unit)?;
        Algebra::new(name, basis, frame)
    }
}

fn specialize<F: Field>(a: Algebra<F>, params: &[(String, Option<F::Elem>)]) -> Result<Algebra<F>> {
    let vals: Vec<(&str, F::Elem)> = params
        .iter()
        .filter_map(|(n, v)| v.clone().map(|v| (n.as_str(), v)))
        .collect();
    if vals.is_empty() {
        Ok(a)
    } else {
        a.specialize(&vals)
    }
}

/// Catalog entry over a given field.
pub fn catalog_in<F: Field>(field: &F, name: &str) -> Result<Algebra<F>> {
    let (base, args) = split(name);
    let char_p = field.spec().characteristic();
    let a = match base {
        "matrix" => matrix(field, parse_usize(args, "matrix")?)?,
        "split" => split_algebra(field, parse_usize(args, "split")?)?,
        "exterior" => exterior(field, parse_usize(args, "exterior")?)?,
        "group" => {
            let n = args
                .strip_prefix('C')
                .ok_or_else(|| Error::InvalidArgs(format!("group needs Cn, got `{args}`")))?;
            cyclic(field, parse_usize(n, "group:C")?)?
        }
        "quaternion" => {
            let ps = family_params(field, &["al", "be"], args)?;
            specialize(quaternion(field)?, &ps)?
        }
        "dim2" => {
            let ps = family_params(field, &["a", "b"], args)?;
            specialize(dim2(field)?, &ps)?
        }
        "galois-quadratic" => {
            let ps = family_params(field, &["m"], args)?;
            specialize(galois_quadratic(field)?, &ps)?
        }
        "dim3nc" => {
            let ps = family_params(field, &["e", "f", "h", "i"], args)?;
            specialize(dim3nc(field)?, &ps)?
        }
        "dim3comm" => {
            let ps = family_params(field, &["b", "c", "e", "f", "k", "l"], args)?;
            specialize(dim3comm(field)?, &ps)?
        }
        "boolean2" => {
            if char_p != 2 {
                return Err(Error::InvalidArgs("boolean2 is defined over GF(2)".into()));
            }
            boolean2(field)?
        }
        "inseparable" => {
            let p = parse_usize(args, "inseparable")?;
            if p as u64 != char_p {
                return Err(Error::InvalidArgs(format!(
                    "inseparable:{p} needs a field of characteristic {p}, got {}",
                    field.spec()
                )));
            }
            inseparable(field, p)?
        }
        _ => return Err(Error::UnknownCatalog(name.to_string())),
    };
    Ok(a.with_name(name))
}

fn check_size(n: usize, max: usize, what: &str) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::InvalidArgs(format!("{what} must be between 1 and {max}, got {n}")));
    }
    Ok(())
}

/// `M_n` on the basis `E_ij`, coordinates `t1..t_{n^2}` row by row.
fn matrix<F: Field>(field: &F, n: usize) -> Result<Algebra<F>> {
    check_size(n, 9, "matrix size")?;
    let idx = |i: usize, j: usize| i * n + j;
    let basis: Vec<String> = (0..n * n).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
    let coords: Vec<String> = (1..=n * n).map(|k| format!("t{k}")).collect();
    let mut b = Builder::new(field, &coords, &[])?;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let one = b.c(1);
                b.set(idx(i, j), idx(j, l), idx(i, l), one);
            }
        }
        b.unit[idx(i, i)] = b.c(1);
    }
    b.finish("matrix", basis)
}

/// Orthogonal idempotents `e1..en`.
fn split_algebra<F: Field>(field: &F, n: usize) -> Result<Algebra<F>> {
    check_size(n, 64, "split dimension")?;
    let basis: Vec<String> = (1..=n).map(|k| format!("e{k}")).collect();
    let coords: Vec<String> = (1..=n).map(|k| format!("t{k}")).collect();
    let mut b = Builder::new(field, &coords, &[])?;
    for i in 0..n {
        let one = b.c(1);
        b.set(i, i, i, one);
        b.unit[i] = b.c(1);
    }
    b.finish("split", basis)
}

/// Exterior algebra on `r` generators; basis `e_I` by size then
/// lexicographically, `one` for the empty set.
fn exterior<F: Field>(field: &F, r: usize) -> Result<Algebra<F>> {
    check_size(r, 6, "exterior rank")?;
    let mut subsets: Vec<u32> = (0..1u32 << r).collect();
    subsets.sort_by_key(|&m| {
        let bits: Vec<u32> = (0..r as u32).filter(|b| m >> b & 1 == 1).collect();
        (m.count_ones(), bits)
    });
    let label = |m: u32| -> String {
        (0..r as u32)
            .filter(|b| m >> b & 1 == 1)
            .map(|b| (b + 1).to_string())
            .collect()
    };
    let basis: Vec<String> = subsets
        .iter()
        .map(|&m| if m == 0 { "one".into() } else { format!("e{}", label(m)) })
        .collect();
    let coords: Vec<String> = subsets
        .iter()
        .map(|&m| if m == 0 { "t0".into() } else { format!("t{}", label(m)) })
        .collect();
    let pos = |m: u32| subsets.iter().position(|&s| s == m).unwrap();
    let mut b = Builder::new(field, &coords, &[])?;
    for (i, &a) in subsets.iter().enumerate() {
        for (j, &c) in subsets.iter().enumerate() {
            if a & c != 0 {
                continue;
            }
            // sign of the shuffle: pairs (x in a, y in c) with x > y
            let inversions: u32 = (0..r as u32)
                .filter(|x| a >> x & 1 == 1)
                .map(|x| (c & ((1u32 << x) - 1)).count_ones())
                .sum();
            let v = b.c(if inversions % 2 == 0 { 1 } else { -1 });
            b.set(i, j, pos(a | c), v);
        }
    }
    b.unit[0] = b.c(1);
    b.finish("exterior", basis)
}

/// Group algebra of the cyclic group of order `n`; basis `one, g, g2, ...`.
fn cyclic<F: Field>(field: &F, n: usize) -> Result<Algebra<F>> {
    check_size(n, 64, "group order")?;
    let basis: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "one".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        })
        .collect();
    let coords = match n {
        2 => names(&["r", "s"]),
        3 => names(&["r", "s", "t"]),
        _ => (1..=n).map(|k| format!("t{k}")).collect(),
    };
    let mut b = Builder::new(field, &coords, &[])?;
    for i in 0..n {
        for j in 0..n {
            let one = b.c(1);
            b.set(i, j, (i + j) % n, one);
        }
    }
    b.unit[0] = b.c(1);
    b.finish("group", basis)
}

/// `i^2 = al`, `j^2 = be`, `ij = -ji = k`.
fn quaternion<F: Field>(field: &F) -> Result<Algebra<F>> {
    let mut b = Builder::new(field, &names(&["a", "b", "c", "d"]), &names(&["al", "be"]))?;
    b.unit_first();
    let (al, be) = (b.p("al"), b.p("be"));
    let (one, i, j, k) = (0, 1, 2, 3);
    b.set(i, i, one, al.clone());
    b.set(j, j, one, be.clone());
    b.set(k, k, one, -&(&al * &be));
    b.set(i, j, k, b.c(1));
    b.set(j, i, k, b.c(-1));
    b.set(i, k, j, al.clone());
    b.set(k, i, j, -&al);
    b.set(j, k, i, -&be);
    b.set(k, j, i, be);
    b.finish("quaternion", names(&["one", "i", "j", "k"]))
}

/// `x^2 = a x + b`.
fn dim2<F: Field>(field: &F) -> Result<Algebra<F>> {
    let mut b = Builder::new(field, &names(&["r", "s"]), &names(&["a", "b"]))?;
    b.unit_first();
    let (pa, pb) = (b.p("a"), b.p("b"));
    b.set(1, 1, 0, pb);
    b.set(1, 1, 1, pa);
    b.finish("dim2", names(&["one", "x"]))
}

/// `x^2 = m`.
fn galois_quadratic<F: Field>(field: &F) -> Result<Algebra<F>> {
    let mut b = Builder::new(field, &names(&["r", "s"]), &names(&["m"]))?;
    b.unit_first();
    let m = b.p("m");
    b.set(1, 1, 0, m);
    b.finish("galois-quadratic", names(&["one", "x"]))
}

/// The four-parameter family of three-dimensional algebras of degree 2.
fn dim3nc<F: Field>(field: &F) -> Result<Algebra<F>> {
    let mut b = Builder::new(field, &names(&["r", "s", "t"]), &names(&["e", "f", "h", "i"]))?;
    b.unit_first();
    let [e, f, h, i] = ["e", "f", "h", "i"].map(|n| b.p(n));
    let (x, y) = (1, 2);
    // x^2 = -fi + (f+i)x
    b.set(x, x, 0, -&(&f * &i));
    b.set(x, x, x, &f + &i);
    // xy = -ef + ex + fy
    b.set(x, y, 0, -&(&e * &f));
    b.set(x, y, x, e.clone());
    b.set(x, y, y, f.clone());
    // yx = -hi + hx + iy
    b.set(y, x, 0, -&(&h * &i));
    b.set(y, x, x, h.clone());
    b.set(y, x, y, i.clone());
    // y^2 = -eh + (e+h)y
    b.set(y, y, 0, -&(&e * &h));
    b.set(y, y, y, &e + &h);
    b.finish("dim3nc", names(&["one", "x", "y"]))
}

/// The six-parameter family of commutative three-dimensional algebras.
fn dim3comm<F: Field>(field: &F) -> Result<Algebra<F>> {
    let ps = names(&["b", "c", "e", "f", "k", "l"]);
    let mut bl = Builder::new(field, &names(&["r", "s", "t"]), &ps)?;
    bl.unit_first();
    let [b, c, e, f, k, l] = ["b", "c", "e", "f", "k", "l"].map(|n| bl.p(n));
    let (x, y) = (1, 2);
    // x^2 = f(f-b) + c(e-l) + bx + cy
    bl.set(x, x, 0, &(&f * &(&f - &b)) + &(&c * &(&e - &l)));
    bl.set(x, x, x, b.clone());
    bl.set(x, x, y, c.clone());
    // xy = yx = ck - ef + ex + fy
    let xy0 = &(&c * &k) - &(&e * &f);
    for (p, q) in [(x, y), (y, x)] {
        bl.set(p, q, 0, xy0.clone());
        bl.set(p, q, x, e.clone());
        bl.set(p, q, y, f.clone());
    }
    // y^2 = k(f-b) + e(e-l) + kx + ly
    bl.set(y, y, 0, &(&k * &(&f - &b)) + &(&e * &(&e - &l)));
    bl.set(y, y, x, k);
    bl.set(y, y, y, l);
    bl.finish("dim3comm", names(&["one", "x", "y"]))
}

/// The generic three-dimensional table with unit `one` and twelve free
/// parameters `a..l`:
/// `x^2 = a+bx+cy`, `xy = d+ex+fy`, `yx = g+hx+iy`, `y^2 = j+kx+ly`.
/// It is not associative; its validation residuals are the associativity
/// equations of the family.
pub fn dim3_generic<F: Field>(field: &F) -> Result<Algebra<F>> {
    let ps = names(&["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"]);
    let mut bl = Builder::new(field, &names(&["r", "s", "t"]), &ps)?;
    bl.unit_first();
    let (x, y) = (1, 2);
    let rows = [(x, x, ["a", "b", "c"]), (x, y, ["d", "e", "f"]), (y, x, ["g", "h", "i"]), (y, y, ["j", "k", "l"])];
    for (p, q, cs) in rows {
        for (k, c) in cs.iter().enumerate() {
            let v = bl.p(c);
            bl.set(p, q, k, v);
        }
    }
    bl.finish("dim3generic", names(&["one", "x", "y"]))
}

/// `F_2[x,y]/(x^2-x, xy, y^2-y)`.
fn boolean2<F: Field>(field: &F) -> Result<Algebra<F>> {
    let mut b = Builder::new(field, &names(&["t1", "t2", "t3"]), &[])?;
    b.unit_first();
    let one = b.c(1);
    b.set(1, 1, 1, one.clone());
    b.set(2, 2, 2, one);
    b.finish("boolean2", names(&["one", "x", "y"]))
}

/// `F_p(t)[u]/(u^p - t)` on the basis `1, u, ..., u^{p-1}`.
fn inseparable<F: Field>(field: &F, p: usize) -> Result<Algebra<F>> {
    check_size(p, 13, "inseparable degree")?;
    let basis: Vec<String> = (0..p)
        .map(|k| match k {
            0 => "one".to_string(),
            1 => "u".to_string(),
            _ => format!("u{k}"),
        })
        .collect();
    let coords: Vec<String> = (0..p).map(|k| format!("t{k}")).collect();
    let mut b = Builder::new(field, &coords, &names(&["t"]))?;
    let t = b.p("t");
    for i in 0..p {
        for j in 0..p {
            if i + j < p {
                let one = b.c(1);
                b.set(i, j, i + j, one);
            } else {
                b.set(i, j, i + j - p, t.clone());
            }
        }
    }
    b.unit[0] = b.c(1);
    b.finish("inseparable", basis)
}
