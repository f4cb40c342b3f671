//! Verification of the identities satisfied by the determinant.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::numeric::{Base, NumericFrame, Ring};
use super::{char_data, cofactor, compose, CharData};
use crate::algebra::{base_change, direct_product, Algebra, AlgebraHom};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::identity::{eval_sz, log10_failure_bound, random_eval_equal, Identity, SzField};
use crate::matrix::{field_rank, PolyMatrix};
use crate::mpoly::MPoly;
use crate::vars::{VarKind, VarTable};

/// Largest dimension for which `mult` defaults to exact expansion.
pub const EXACT_MULT_MAX_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exact,
    Random { trials: usize, seed: u64 },
}

impl CheckMode {
    /// Exact for small algebras, random otherwise.
    pub fn default_for(dim: usize, trials: usize, seed: u64) -> Self {
        if dim <= EXACT_MULT_MAX_DIM {
            CheckMode::Exact
        } else {
            CheckMode::Random { trials, seed }
        }
    }
}

/// A checkable identity, with whatever extra input it needs.
#[derive(Clone, Debug)]
pub enum Property<F: Field> {
    /// `det(xy) = det(x) det(y)` and `det(1) = 1`.
    Mult,
    /// `det(1) = 1` alone.
    UnitDet,
    /// `P(alpha) = 0`.
    Annihilation,
    /// `c_i` homogeneous of degree `i` in the coordinates.
    Homogeneity,
    /// Over each prime, `det(x) != 0` iff `L_x` is invertible, on random
    /// samples; invertible samples are inverted and multiplied back.
    Units { primes: Vec<u64>, samples: usize, seed: u64 },
    Opposite,
    /// `det(A x B) = pr_1^* det_A * pr_2^* det_B`; the partner defaults to `A`.
    Product(Option<Algebra<F>>),
    /// `det(f(x)) = det(x)` for an (anti)automorphism `f`.
    Invariance(AlgebraHom<F>),
    /// `det_{A'}(s) = det_A(M s)`; the matrix defaults to a fixed
    /// unipotent integer matrix.
    BaseChange(Option<PolyMatrix<F>>),
    /// Reports whether `d` divides `n`; never fails.
    DegreeDivides,
    /// `tr(xy) = tr(yx)`.
    TraceSymmetry,
}

impl<F: Field> Property<F> {
    pub fn name(&self) -> &'static str {
        match self {
            Property::Mult => "mult",
            Property::UnitDet => "unit",
            Property::Annihilation => "annihilation",
            Property::Homogeneity => "homogeneity",
            Property::Units { .. } => "units",
            Property::Opposite => "opposite",
            Property::Product(_) => "product",
            Property::Invariance(_) => "invariance",
            Property::BaseChange(_) => "base-change",
            Property::DegreeDivides => "degree-divides",
            Property::TraceSymmetry => "trace-symmetry",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub pass: bool,
    /// Diagnostics never fail.
    pub diagnostic: bool,
    pub detail: String,
    /// `log10` of the probability bound for a false PASS in random mode.
    pub log10_failure_bound: Option<f64>,
}

impl Verdict {
    fn exact(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            diagnostic: false,
            detail: detail.into(),
            log10_failure_bound: None,
        }
    }

    fn from_identity(id: Identity, what: &str) -> Self {
        match id {
            Identity::EqualWhp { trials, log10_bound, .. } => Verdict {
                pass: true,
                diagnostic: false,
                detail: format!("{what}: {trials} random points"),
                log10_failure_bound: Some(log10_bound),
            },
            Identity::Unequal { witness } => {
                let w: Vec<String> = witness.iter().map(|(n, v)| format!("{n}={v}")).collect();
                Verdict::exact(false, format!("{what}: differs at {}", w.join(", ")))
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.diagnostic {
            "INFO"
        } else if self.pass {
            "PASS"
        } else {
            "FAIL"
        };
        write!(f, "{tag} {}", self.detail)?;
        match self.log10_failure_bound {
            Some(b) if b == f64::NEG_INFINITY => write!(f, " (failure bound 0)")?,
            Some(b) => write!(f, " (failure bound 10^{b:.1})")?,
            None => {}
        }
        Ok(())
    }
}

fn equal<F: Field>(lhs: &MPoly<F>, rhs: &MPoly<F>, mode: CheckMode, what: &str) -> Verdict {
    match mode {
        CheckMode::Exact => {
            if lhs == rhs {
                Verdict::exact(true, format!("{what}: exact"))
            } else {
                Verdict::exact(false, format!("{what}: {lhs} != {rhs}"))
            }
        }
        CheckMode::Random { trials, seed } => Verdict::from_identity(random_eval_equal(lhs, rhs, trials, seed), what),
    }
}

/// Runs one property. `jobs` bounds the threads used for random trials and
/// samples; results do not depend on it.
pub fn check_suite<F: Field>(a: &Algebra<F>, property: &Property<F>, mode: CheckMode, jobs: usize) -> Result<Verdict> {
    let cd = char_data(a)?;
    match property {
        Property::Mult => mult(a, &cd, mode, jobs),
        Property::UnitDet => unit_det(a, &cd),
        Property::Annihilation => annihilation(a, &cd, mode),
        Property::Homogeneity => homogeneity(&cd),
        Property::Units { primes, samples, seed } => units(a, primes, *samples, *seed, jobs),
        Property::Opposite => {
            let op = char_data(&a.opposite())?;
            Ok(equal(&op.det, &cd.det, mode, "det(A^op) = det(A)"))
        }
        Property::Product(partner) => product(a, &cd, partner.as_ref().unwrap_or(a), mode),
        Property::Invariance(f) => invariance(a, &cd, f, mode),
        Property::BaseChange(m) => {
            let m = match m {
                Some(m) => m.clone(),
                None => default_transition(a),
            };
            equivariance(a, &cd, &m, mode)
        }
        Property::DegreeDivides => {
            let (d, n) = (cd.degree, a.dim());
            Ok(Verdict {
                pass: true,
                diagnostic: true,
                detail: format!("d = {d}, n = {n}, d divides n: {}", n % d == 0),
                log10_failure_bound: None,
            })
        }
        Property::TraceSymmetry => trace_symmetry(a, &cd, mode),
    }
}

fn unit_det<F: Field>(a: &Algebra<F>, cd: &CharData<F>) -> Result<Verdict> {
    let v = compose(&cd.det, a.unit().coords(), a.vars())?;
    Ok(Verdict::exact(v.is_one(), format!("det(1) = {v}")))
}

fn mult<F: Field>(a: &Algebra<F>, cd: &CharData<F>, mode: CheckMode, jobs: usize) -> Result<Verdict> {
    let unit = unit_det(a, cd)?;
    if !unit.pass {
        return Ok(unit);
    }
    match mode {
        CheckMode::Exact => {
            let (fr, xs) = a.universal_elements(&["s", "t"])?;
            let (s, t) = (&xs[0], &xs[1]);
            let st = fr.multiply(s, t)?;
            let lhs = compose(&cd.det, st.coords(), fr.vars())?;
            let rhs = &compose(&cd.det, s.coords(), fr.vars())? * &compose(&cd.det, t.coords(), fr.vars())?;
            Ok(equal(&lhs, &rhs, mode, "det(st) = det(s) det(t)"))
        }
        CheckMode::Random { trials, seed } => mult_random(a, cd, trials, seed, jobs),
    }
}

/// Point over `vars` from coordinate values and parameter values, in order.
fn assemble<E: Clone>(vars: &VarTable, coords: &[E], params: &[E], aux: &E) -> Vec<E> {
    let (mut c, mut p) = (coords.iter(), params.iter());
    (0..vars.len())
        .map(|i| match vars.kind(i) {
            VarKind::Coordinate => c.next().unwrap().clone(),
            VarKind::Parameter => p.next().unwrap().clone(),
            _ => aux.clone(),
        })
        .collect()
}

/// Runs `trial(k, rng)` for `k < trials` on up to `jobs` threads; trial `k`
/// draws from stream `k` of the seeded generator.
fn run_trials<T: Send>(trials: usize, seed: u64, jobs: usize, trial: impl Fn(usize, &mut ChaCha8Rng) -> T + Sync) -> Vec<T> {
    let jobs = jobs.clamp(1, trials.max(1));
    let run = |k: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        trial(k, &mut rng)
    };
    if jobs == 1 {
        return (0..trials).map(run).collect();
    }
    let chunk = trials.div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let run = &run;
                scope.spawn(move || (j * chunk..((j + 1) * chunk).min(trials)).map(run).collect::<Vec<T>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("trial thread panicked")).collect()
    })
}

fn mult_random<F: Field>(a: &Algebra<F>, cd: &CharData<F>, trials: usize, seed: u64, jobs: usize) -> Result<Verdict> {
    let vars = a.vars().clone();
    let n = a.dim();
    let np = a.params().len();
    // det(st) - det(s)det(t) has degree at most D (2 + k) in all variables
    let big_d = cd.det.total_degree().unwrap_or(0);
    let k = a
        .frame()
        .table()
        .iter()
        .flatten()
        .filter_map(|p| p.total_degree())
        .max()
        .unwrap_or(0);
    let degree = big_d * (2 + k).max(2);
    let sz = a.field().sz_field(degree as u128 + 1);
    let results = run_trials(trials, seed, jobs, |_, rng| -> Result<Option<String>> {
        for _ in 0..64 {
            let params: Vec<_> = (0..np).map(|_| sz.random(rng)).collect();
            let x: Vec<_> = (0..n).map(|_| sz.random(rng)).collect();
            let y: Vec<_> = (0..n).map(|_| sz.random(rng)).collect();
            let zero = SzField::zero(&sz);
            let base = assemble(&vars, &vec![zero.clone(); n], &params, &zero);
            let Some(nf) = NumericFrame::new(a.frame(), sz.clone(), |p| eval_sz(p, &sz, &base)) else {
                continue;
            };
            let xy = nf.multiply(&x, &y);
            let det = |c: &[_]| eval_sz(&cd.det, &sz, &assemble(&vars, c, &params, &zero));
            let (Some(dx), Some(dy), Some(dxy)) = (det(&x), det(&y), det(&xy)) else {
                continue;
            };
            if dxy != Ring::mul(&sz, &dx, &dy) {
                let r: Vec<String> = x.iter().chain(&y).map(|v| sz.render(v)).collect();
                return Ok(Some(format!("det(xy) != det(x)det(y) at x,y = ({})", r.join(", "))));
            }
            return Ok(None);
        }
        Err(Error::Internal("no admissible sample point".into()))
    });
    for r in results {
        if let Some(msg) = r? {
            return Ok(Verdict::exact(false, msg));
        }
    }
    Ok(Verdict {
        pass: true,
        diagnostic: false,
        detail: format!("det(st) = det(s) det(t): {trials} random points, det(1) = 1"),
        log10_failure_bound: Some(log10_failure_bound(degree, sz.size(), trials)),
    })
}

fn annihilation<F: Field>(a: &Algebra<F>, cd: &CharData<F>, mode: CheckMode) -> Result<Verdict> {
    match mode {
        CheckMode::Exact => {
            let v = a.frame().eval_upoly(&cd.minpoly, &a.universal_element())?;
            Ok(Verdict::exact(v.is_zero(), format!("P(alpha) = {}", a.format_element(&v))))
        }
        CheckMode::Random { trials, seed } => {
            let vars = a.vars().clone();
            let n = a.dim();
            let np = a.params().len();
            let big_d = cd
                .minpoly
                .coeffs()
                .iter()
                .filter_map(|c| c.total_degree())
                .max()
                .unwrap_or(0)
                + cd.degree as u32 * (1 + max_table_degree(a));
            let sz = a.field().sz_field(big_d as u128 + 1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let params: Vec<_> = (0..np).map(|_| sz.random(&mut rng)).collect();
                let x: Vec<_> = (0..n).map(|_| sz.random(&mut rng)).collect();
                let zero = SzField::zero(&sz);
                let point = assemble(&vars, &x, &params, &zero);
                let ev = |p: &MPoly<F>| eval_sz(p, &sz, &point);
                let (Some(nf), Some(coeffs)) = (
                    NumericFrame::new(a.frame(), sz.clone(), ev),
                    cd.minpoly.coeffs().iter().map(ev).collect::<Option<Vec<_>>>(),
                ) else {
                    continue;
                };
                if nf.eval_poly(&coeffs, &x).iter().any(|v| *v != zero) {
                    return Ok(Verdict::exact(false, "P(x) != 0 at a random point"));
                }
            }
            Ok(Verdict {
                pass: true,
                diagnostic: false,
                detail: format!("P(alpha) = 0: {trials} random points"),
                log10_failure_bound: Some(log10_failure_bound(big_d, sz.size(), trials)),
            })
        }
    }
}

fn max_table_degree<F: Field>(a: &Algebra<F>) -> u32 {
    a.frame()
        .table()
        .iter()
        .flatten()
        .filter_map(|p| p.total_degree())
        .max()
        .unwrap_or(0)
}

fn homogeneity<F: Field>(cd: &CharData<F>) -> Result<Verdict> {
    for (i, c) in cd.coeffs.iter().enumerate() {
        let want = i as i64 + 1;
        if c.is_zero() {
            continue;
        }
        let got = c.coordinate_degree()?;
        if got != Some(want) {
            return Ok(Verdict::exact(false, format!("c_{want} = {c} has degree {got:?}")));
        }
    }
    Ok(Verdict::exact(true, format!("c_1..c_{} homogeneous", cd.degree)))
}

fn product<F: Field>(a: &Algebra<F>, cd: &CharData<F>, b: &Algebra<F>, mode: CheckMode) -> Result<Verdict> {
    let cb = if std::ptr::eq(a, b) { cd.clone() } else { char_data(b)? };
    let p = direct_product(a, b)?;
    let cp = char_data(&p.algebra)?;
    let rhs = &p.pull_left(&cd.det)? * &p.pull_right(&cb.det)?;
    Ok(equal(&cp.det, &rhs, mode, "det(A x B) = det_A det_B"))
}

fn invariance<F: Field>(a: &Algebra<F>, cd: &CharData<F>, f: &AlgebraHom<F>, mode: CheckMode) -> Result<Verdict> {
    if f.source() != a || f.target() != a {
        return Err(Error::InvalidArgs("invariance needs a map from the algebra to itself".into()));
    }
    let image = f.apply(a.universal_element().coords())?;
    let lhs = compose(&cd.det, &image, a.vars())?;
    Ok(equal(&lhs, &cd.det, mode, "det(f(x)) = det(x)"))
}

/// Upper unitriangular with ones above the diagonal.
fn default_transition<F: Field>(a: &Algebra<F>) -> PolyMatrix<F> {
    let (field, vars) = (a.field(), a.vars());
    PolyMatrix::from_fn(a.dim(), a.dim(), |i, j| {
        MPoly::from_i64(field, vars, i64::from(i <= j))
    })
}

fn equivariance<F: Field>(a: &Algebra<F>, cd: &CharData<F>, m: &PolyMatrix<F>, mode: CheckMode) -> Result<Verdict> {
    let bc = base_change(a, m)?;
    let cb = char_data(&bc.algebra)?;
    let moved = m.apply(a.universal_element().coords())?;
    let rhs = compose(&cd.det, &moved, a.vars())?;
    Ok(equal(&cb.det, &rhs, mode, "det_{A'}(s) = det_A(M s)"))
}

/// `tr(st) = tr(ts)` for two universal elements.
pub fn trace_symmetry<F: Field>(a: &Algebra<F>, cd: &CharData<F>, mode: CheckMode) -> Result<Verdict> {
    let (fr, xs) = a.universal_elements(&["s", "t"])?;
    let st = fr.multiply(&xs[0], &xs[1])?;
    let ts = fr.multiply(&xs[1], &xs[0])?;
    let l = compose(&cd.trace, st.coords(), fr.vars())?;
    let r = compose(&cd.trace, ts.coords(), fr.vars())?;
    Ok(equal(&l, &r, mode, "tr(st) = tr(ts)"))
}

struct UnitsTally {
    samples: usize,
    invertible: usize,
    discrepancies: usize,
    bad_inverses: usize,
}

fn units<F: Field>(a: &Algebra<F>, primes: &[u64], samples: usize, seed: u64, jobs: usize) -> Result<Verdict> {
    let own = a.field().spec().characteristic();
    let mut targets: Vec<u64> = Vec::new();
    for &p in primes {
        let q = if own == 0 { p } else { own };
        if !targets.contains(&q) {
            targets.push(q);
        }
    }
    let mut parts = Vec::new();
    let mut pass = true;
    for p in targets {
        let fp = PrimeField::new(p)?;
        let b = a.reduce(&fp)?;
        let t = units_over(&b, samples, seed ^ p, jobs)?;
        pass &= t.discrepancies == 0 && t.bad_inverses == 0;
        parts.push(format!(
            "GF({p}): {} samples, {} invertible, {} discrepancies, {} failed inverses",
            t.samples, t.invertible, t.discrepancies, t.bad_inverses
        ));
    }
    Ok(Verdict::exact(pass, parts.join("; ")))
}

fn units_over(b: &Algebra<PrimeField>, samples: usize, seed: u64, jobs: usize) -> Result<UnitsTally> {
    let fp = *b.field();
    let cd = char_data(b)?;
    let q0 = cofactor(&cd).q0;
    let vars: Arc<VarTable> = b.vars().clone();
    let (n, np) = (b.dim(), b.params().len());
    let p = fp.modulus();
    let out = run_trials(samples, seed, jobs, |_, rng| {
        let x: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let params: Vec<u64> = (0..np).map(|_| rng.gen_range(0..p)).collect();
        let point = assemble(&vars, &x, &params, &0);
        let nf = NumericFrame::new(b.frame(), Base(&fp), |q| Some(q.eval(&point))).unwrap();
        let det = cd.det.eval(&point);
        let invertible = field_rank(&fp, &nf.left_matrix(&x)) == n;
        let discrepancy = (det != 0) != invertible;
        let mut bad_inverse = false;
        if det != 0 {
            let coeffs: Vec<u64> = q0.coeffs().iter().map(|c| c.eval(&point)).collect();
            let y = nf.scale(&nf.eval_poly(&coeffs, &x), &fp.inv(&det).unwrap());
            bad_inverse = nf.multiply(&x, &y) != nf.unit() || nf.multiply(&y, &x) != nf.unit();
        }
        (det != 0, discrepancy, bad_inverse)
    });
    Ok(UnitsTally {
        samples,
        invertible: out.iter().filter(|r| r.0).count(),
        discrepancies: out.iter().filter(|r| r.1).count(),
        bad_inverses: out.iter().filter(|r| r.2).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog_in, HomKind};
    use crate::field::Rationals;

    fn cat(name: &str) -> Algebra<Rationals> {
        catalog_in(&Rationals, name).unwrap()
    }

    #[test]
    fn quaternion_exact_suite() {
        let h = cat("quaternion");
        for p in [
            Property::Mult,
            Property::Annihilation,
            Property::Homogeneity,
            Property::Opposite,
            Property::Product(None),
            Property::BaseChange(None),
            Property::TraceSymmetry,
        ] {
            let v = check_suite(&h, &p, CheckMode::Exact, 1).unwrap();
            assert!(v.pass, "{}: {v}", p.name());
        }
    }

    #[test]
    fn random_mode_is_deterministic_across_jobs() {
        let m = cat("matrix:2");
        let mode = CheckMode::Random { trials: 12, seed: 7 };
        let a = check_suite(&m, &Property::Mult, mode, 1).unwrap();
        let b = check_suite(&m, &Property::Mult, mode, 4).unwrap();
        assert!(a.pass);
        assert_eq!(a, b);
        assert!(a.log10_failure_bound.unwrap() < -100.0);
    }

    #[test]
    fn random_annihilation() {
        let d = cat("dim3nc");
        let v = check_suite(&d, &Property::Annihilation, CheckMode::Random { trials: 5, seed: 1 }, 1).unwrap();
        assert!(v.pass, "{v}");
    }

    #[test]
    fn units_over_small_primes() {
        let m = cat("matrix:2");
        let prop = Property::Units { primes: vec![5, 7], samples: 60, seed: 3 };
        let v = check_suite(&m, &prop, CheckMode::Exact, 2).unwrap();
        assert!(v.pass, "{v}");
        assert!(v.detail.contains("GF(5)") && v.detail.contains("GF(7)"));
    }

    #[test]
    fn broken_hom_is_rejected_and_transpose_passes() {
        let m = cat("matrix:2");
        let c = |k| MPoly::from_i64(&Rationals, m.vars(), k);
        // transpose swaps E12 and E21
        let images = vec![
            vec![c(1), c(0), c(0), c(0)],
            vec![c(0), c(0), c(1), c(0)],
            vec![c(0), c(1), c(0), c(0)],
            vec![c(0), c(0), c(0), c(1)],
        ];
        let f = AlgebraHom::new(&m, &m, images, HomKind::Antihomomorphism).unwrap();
        let v = check_suite(&m, &Property::Invariance(f), CheckMode::Exact, 1).unwrap();
        assert!(v.pass, "{v}");
    }

    #[test]
    fn degree_divides_is_diagnostic() {
        let v = check_suite(&cat("dim3nc"), &Property::DegreeDivides, CheckMode::Exact, 1).unwrap();
        assert!(v.diagnostic && v.pass);
        assert!(v.detail.contains("d divides n: false"));
    }

    #[test]
    fn failing_identity_reports_fail() {
        let h = cat("quaternion");
        let cd = char_data(&h).unwrap();
        let v = equal(&cd.det, &cd.trace, CheckMode::Random { trials: 3, seed: 0 }, "x");
        assert!(!v.pass);
        assert!(v.to_string().starts_with("FAIL"));
    }

    #[test]
    fn vanishing_trace_counts_as_homogeneous() {
        let f2 = PrimeField::new(2).unwrap();
        let a = crate::algebra::catalog_in(&f2, "inseparable:2").unwrap();
        let cd = char_data(&a).unwrap();
        assert!(cd.trace.is_zero());
        let v = check_suite(&a, &Property::Homogeneity, CheckMode::Exact, 1).unwrap();
        assert!(v.pass, "{v}");
    }
}
