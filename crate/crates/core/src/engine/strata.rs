//! The variety of unital associative structures on a three-dimensional
//! space with basis `1, x, y`.
//!
//! Writing `x^2 = a+bx+cy`, `xy = d+ex+fy`, `yx = g+hx+iy`, `y^2 = j+kx+ly`,
//! associativity is equivalent to
//!
//! ```text
//! a = f(f-b) + c(e-l)    d = ck - ef    g = ck - hi    j = k(f-b) + e(e-l)
//! ```
//!
//! together with the vanishing of `p1 = (e-h, f-i)` or of
//! `p2 = (c, k, f+i-b, e+h-l)`. The first component is the commutative
//! family, the second the family of degree-2 algebras.

use std::sync::Arc;

use crate::algebra::{catalog_in, dim3_generic, Algebra, Violation};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::mpoly::MPoly;
use crate::vars::{VarKind, VarTable};

const NAMES: [&str; 12] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"];

/// Equations over the generic table: the four elimination equations, then
/// the generators of `p1` and of `p2`.
struct Equations<F: Field> {
    elimination: Vec<MPoly<F>>,
    p1: Vec<MPoly<F>>,
    p2: Vec<MPoly<F>>,
}

fn equations<F: Field>(field: &F, vars: &Arc<VarTable>) -> Equations<F> {
    let v = |n: &str| MPoly::named(field, vars, n);
    let [a, b, c, d, e, f, g, h, i, j, k, l] = NAMES.map(v);
    Equations {
        elimination: vec![
            &a - &(&(&f * &(&f - &b)) + &(&c * &(&e - &l))),
            &d - &(&(&c * &k) - &(&e * &f)),
            &g - &(&(&c * &k) - &(&h * &i)),
            &j - &(&(&k * &(&f - &b)) + &(&e * &(&e - &l))),
        ],
        p1: vec![&e - &h, &f - &i],
        p2: vec![c, k, &(&f + &i) - &b, &(&e + &h) - &l],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCheck {
    pub name: String,
    /// Every associativity residual vanishes identically.
    pub associative: bool,
    /// The elimination equations hold identically on the family.
    pub eliminated: bool,
    /// Which of `p1`, `p2` vanishes identically on the family.
    pub component: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataReport {
    pub prime: u64,
    pub families: Vec<FamilyCheck>,
    pub points: u64,
    pub associative: u64,
    /// Associative points on the `p1` and `p2` components.
    pub components: [u64; 2],
    pub intersection: u64,
    /// Points where the two descriptions disagree (first few only).
    pub counterexamples: Vec<[u64; 12]>,
    pub counterexample_count: u64,
}

impl StrataReport {
    pub fn pass(&self) -> bool {
        self.counterexample_count == 0
            && self
                .families
                .iter()
                .all(|f| f.associative && f.eliminated && f.component.is_some())
    }

    /// `p^6 + p^4 - p^2`: affine spaces of dimension 6 and 4 meeting in a plane.
    pub fn expected_associative(&self) -> u64 {
        let p = self.prime;
        p.pow(6) + p.pow(4) - p.pow(2)
    }

    pub fn nonempty_components(&self) -> usize {
        self.components.iter().filter(|&&c| c > 0).count()
    }
}

/// Generic parameters `a..l` of a three-dimensional family, read off its table.
fn generic_values(fam: &Algebra<Rationals>) -> Vec<MPoly<Rationals>> {
    let fr = fam.frame();
    let (x, y) = (1, 2);
    [(x, x), (x, y), (y, x), (y, y)]
        .iter()
        .flat_map(|&(p, q)| fr.structure(p, q).to_vec())
        .collect()
}

fn check_family(name: &str) -> Result<FamilyCheck> {
    let fam = catalog_in(&Rationals, name)?;
    let generic = dim3_generic(&Rationals)?;
    let gv = generic.vars();
    let values = generic_values(&fam);
    let zero = MPoly::zero(&Rationals, fam.vars());
    let mut images = Vec::with_capacity(gv.len());
    let mut next = 0;
    for i in 0..gv.len() {
        images.push(if gv.kind(i) == VarKind::Parameter {
            next += 1;
            values[next - 1].clone()
        } else {
            zero.clone()
        });
    }
    let eqs = equations(&Rationals, gv);
    let vanish = |ps: &[MPoly<Rationals>]| -> Result<bool> {
        for p in ps {
            if !p.substitute(fam.vars(), &images)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let component = if vanish(&eqs.p1)? {
        Some(1)
    } else if vanish(&eqs.p2)? {
        Some(2)
    } else {
        None
    };
    Ok(FamilyCheck {
        name: name.to_string(),
        associative: fam.validate().is_ok(),
        eliminated: vanish(&eqs.elimination)?,
        component,
    })
}

/// A polynomial in the twelve parameters, ready for fast evaluation.
struct Compiled {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl Compiled {
    fn new(p: &MPoly<PrimeField>) -> Self {
        let vars = p.vars();
        let params: Vec<usize> = (0..vars.len()).filter(|&i| vars.kind(i) == VarKind::Parameter).collect();
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let exps = params
                    .iter()
                    .enumerate()
                    .filter_map(|(k, &i)| {
                        let e = m.exponent(vars, i);
                        (e > 0).then_some((k, e))
                    })
                    .collect();
                (*c, exps)
            })
            .collect();
        Compiled { terms }
    }

    fn vanishes(&self, point: &[u64; 12], p: u64) -> bool {
        let mut acc = 0u64;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for &(k, e) in exps {
                for _ in 0..e {
                    t = t * point[k] % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc == 0
    }
}

fn all_vanish(ps: &[Compiled], point: &[u64; 12], p: u64) -> bool {
    ps.iter().all(|c| c.vanishes(point, p))
}

struct Tally {
    associative: u64,
    components: [u64; 2],
    intersection: u64,
    counterexamples: Vec<[u64; 12]>,
    count: u64,
}

const MAX_REPORTED: usize = 10;

/// Symbolic check of both families, then exhaustive comparison over
/// `GF(p)^12` on up to `jobs` threads.
pub fn alg3_strata_check(p: u64, jobs: usize) -> Result<StrataReport> {
    if !(p == 2 || p == 3) {
        return Err(Error::InvalidArgs(format!("strata enumeration supports p = 2 or 3, not {p}")));
    }
    let families = vec![check_family("dim3comm")?, check_family("dim3nc")?];
    let field = PrimeField::new(p)?;
    let generic = dim3_generic(&field)?;
    let residuals: Vec<Compiled> = generic
        .validate()
        .violations
        .iter()
        .map(|v| match v {
            Violation::Associativity { residual, .. } => Ok(Compiled::new(residual)),
            Violation::Unit { .. } => Err(Error::Internal("generic table breaks the unit axioms".into())),
        })
        .collect::<Result<_>>()?;
    let eqs = equations(&field, generic.vars());
    let compile = |ps: &[MPoly<PrimeField>]| ps.iter().map(Compiled::new).collect::<Vec<_>>();
    let (elim, p1, p2) = (compile(&eqs.elimination), compile(&eqs.p1), compile(&eqs.p2));
    let points = p.pow(12);
    let jobs = jobs.clamp(1, 64) as u64;
    let chunk = points.div_ceil(jobs);
    let scan = |lo: u64, hi: u64| {
        let mut t = Tally {
            associative: 0,
            components: [0, 0],
            intersection: 0,
            counterexamples: Vec::new(),
            count: 0,
        };
        for idx in lo..hi {
            let mut point = [0u64; 12];
            let mut r = idx;
            for v in point.iter_mut() {
                *v = r % p;
                r /= p;
            }
            let assoc = all_vanish(&residuals, &point, p);
            let el = all_vanish(&elim, &point, p);
            let (c1, c2) = (el && all_vanish(&p1, &point, p), el && all_vanish(&p2, &point, p));
            if assoc != (c1 || c2) {
                t.count += 1;
                if t.counterexamples.len() < MAX_REPORTED {
                    t.counterexamples.push(point);
                }
            }
            if assoc {
                t.associative += 1;
                t.components[0] += u64::from(c1);
                t.components[1] += u64::from(c2);
                t.intersection += u64::from(c1 && c2);
            }
        }
        t
    };
    let tallies: Vec<Tally> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let scan = &scan;
                s.spawn(move || scan(j * chunk, ((j + 1) * chunk).min(points)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("enumeration thread panicked")).collect()
    });
    let mut report = StrataReport {
        prime: p,
        families,
        points,
        associative: 0,
        components: [0, 0],
        intersection: 0,
        counterexamples: Vec::new(),
        counterexample_count: 0,
    };
    for t in tallies {
        report.associative += t.associative;
        report.components[0] += t.components[0];
        report.components[1] += t.components[1];
        report.intersection += t.intersection;
        report.counterexample_count += t.count;
        for c in t.counterexamples {
            if report.counterexamples.len() < MAX_REPORTED {
                report.counterexamples.push(c);
            }
        }
    }
    Ok(report)
}

/// Names of the twelve generic parameters.
pub fn parameter_names() -> [&'static str; 12] {
    NAMES
}
