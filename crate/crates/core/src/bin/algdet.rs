use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use algdet::algebra::{catalog, direct_product, tensor_product, Algebra, AnyAlgebra};
use algdet::engine::{
    alg3_strata_check, cayley_hamilton, char_data, check_suite, discriminant, element_degree, inseparable_sign,
    invert_element, relative_determinant, unimodular_equation, CheckMode, Property,
};
use algdet::format::{parse_algebra, parse_element, parse_hom, serialize, serialize_any};
use algdet::{Error, Field};

const AFTER_HELP: &str = "\
Coordinates: polynomials are written in one coordinate per basis vector. \
The coordinate names are the basis names when those are identifiers distinct \
from the parameters, t1..tn otherwise, unless the file declares \
`coords = [...]`.

Exit codes: 0 success or PASS, 1 FAIL or validation violations, \
2 parse or usage error, 3 internal assertion.";

#[derive(Parser)]
#[command(name = "algdet", version, about = "Determinants and related invariants of finite-dimensional algebras", after_help = AFTER_HELP)]
struct Cli {
    /// Worker threads for random trials and enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyName {
    Mult,
    Unit,
    Annihilation,
    Homogeneity,
    Units,
    Opposite,
    Product,
    Invariance,
    BaseChange,
    DegreeDivides,
    TraceSymmetry,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    Product,
    Tensor,
    Opposite,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the associativity and unit axioms.
    Validate { file: PathBuf },
    /// Degree of algebraicity.
    Degree { file: PathBuf },
    /// Determinant of the universal element.
    Det { file: PathBuf },
    /// Minimal polynomial of the universal element.
    Charpoly {
        file: PathBuf,
        /// Also print the characteristic polynomial of left multiplication
        /// and its cofactor.
        #[arg(long)]
        ch: bool,
    },
    /// Trace of the universal element, `c_1`
    Trace { file: PathBuf },
    /// Determinant of the trace form.
    Disc { file: PathBuf },
    /// `det - 1`.
    Unimodular { file: PathBuf },
    /// Inverse of an element, as `Q0(x) / det(x)`.
    Invert {
        file: PathBuf,
        #[arg(short = 'e', long = "element")]
        element: String,
    },
    /// Dimension of the subalgebra generated by an element.
    Eldeg {
        file: PathBuf,
        #[arg(short = 'e', long = "element")]
        element: String,
        /// Extra parameters to compute over, e.g. `u` for a field extension.
        #[arg(long, value_delimiter = ',')]
        adjoin: Vec<String>,
    },
    /// Verify one identity of the determinant.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: PropertyName,
        #[arg(long, conflicts_with = "random")]
        exact: bool,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, env = "ALGDET_SEED", default_value_t = 0)]
        seed: u64,
        /// Homomorphism file for `invariance`.
        #[arg(long)]
        hom: Option<PathBuf>,
        /// Second factor for `product`.
        #[arg(long = "with")]
        with: Option<PathBuf>,
        /// Primes for `units`.
        #[arg(long, value_delimiter = ',', default_values_t = [5u64, 7])]
        primes: Vec<u64>,
        /// Samples per prime for `units`.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Build a new algebra file.
    Op {
        #[arg(value_enum)]
        op: OpName,
        a: PathBuf,
        b: Option<PathBuf>,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Write a built-in algebra, e.g. `matrix:3`, `dim2:0,0` or `exterior:3@GF(2)`.
    Catalog {
        name: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Relative determinant along a surjective homomorphism A -> B.
    Reldet {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        hom: PathBuf,
    },
    /// Compare the associativity equations of three-dimensional algebras
    /// with their two-component description over GF(p).
    Strata3 {
        #[arg(long)]
        prime: u64,
    },
    /// Determinant of F_p(t)[u]/(u^p - t) next to the closed form
    /// `-sum t_I^p t^I`.
    Inseparable {
        #[arg(long)]
        prime: u64,
    },
}

/// A command failure and its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotAssociative(_) | Error::NotInvertible | Error::InverseNotPolynomial(_) => 1,
            Error::Internal(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

type Out = std::result::Result<(String, u8), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        msg: format!("{}: {e}", path.display()),
    })
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: 2,
        msg: format!("{}: {e}", path.display()),
    })
}

fn load(path: &Path) -> std::result::Result<AnyAlgebra, Failure> {
    parse_algebra(&read(path)?).map_err(|e| match e {
        Error::Parse { line, col, msg } => Failure {
            code: 2,
            msg: format!("{}:{line}:{col}: {msg}", path.display()),
        },
        e => e.into(),
    })
}

fn mismatch(a: &AnyAlgebra, b: &AnyAlgebra) -> Failure {
    Error::FieldMismatch(a.field_spec().to_string(), b.field_spec().to_string()).into()
}

/// Runs `$body` with `$a` bound to the algebra over its concrete field.
macro_rules! over_field {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            AnyAlgebra::Rational($a) => $body,
            AnyAlgebra::Prime($a) => $body,
        }
    };
}

/// Same for two algebras over one field.
macro_rules! over_field2 {
    ($x:expr, $y:expr, $a:ident, $b:ident => $body:expr) => {
        match (&$x, &$y) {
            (AnyAlgebra::Rational($a), AnyAlgebra::Rational($b)) => $body,
            (AnyAlgebra::Prime($a), AnyAlgebra::Prime($b)) if $a.field() == $b.field() => $body,
            _ => return Err(mismatch(&$x, &$y)),
        }
    };
}

fn ok(s: impl Into<String>) -> Out {
    Ok((s.into(), 0))
}

fn charpoly<F: Field>(a: &Algebra<F>, ch: bool) -> Out {
    let cd = char_data(a)?;
    let mut out = cd.minpoly.to_string();
    if ch {
        let c = cayley_hamilton(a, &cd)?;
        out.push_str(&format!("\n{}\n{}", c.ch, c.psi));
    }
    ok(out)
}

fn invert<F: Field>(a: &Algebra<F>, text: &str) -> Out {
    let x = parse_element(text, a)?;
    let cd = char_data(a)?;
    let inv = invert_element(a, &cd, &x)?;
    match inv.to_element(a.frame()) {
        Ok(y) => ok(a.format_element(&y)),
        Err(_) => ok(format!("({}) / ({})", a.format_element(&inv.numerator), inv.denominator)),
    }
}

fn eldeg<F: Field>(a: &Algebra<F>, text: &str, adjoin: &[String]) -> Out {
    let extra: Vec<&str> = adjoin.iter().map(String::as_str).collect();
    let a = a.adjoin_params(&extra)?;
    let x = parse_element(text, &a)?;
    ok(element_degree(&a, &x)?.to_string())
}

struct CheckArgs<'a> {
    property: PropertyName,
    exact: bool,
    random: bool,
    trials: usize,
    seed: u64,
    hom: Option<&'a Path>,
    with: Option<&'a AnyAlgebra>,
    primes: &'a [u64],
    samples: usize,
    jobs: usize,
}

fn check<F: Field>(a: &Algebra<F>, partner: Option<&Algebra<F>>, c: &CheckArgs) -> Out {
    let property = match c.property {
        PropertyName::Mult => Property::Mult,
        PropertyName::Unit => Property::UnitDet,
        PropertyName::Annihilation => Property::Annihilation,
        PropertyName::Homogeneity => Property::Homogeneity,
        PropertyName::Units => Property::Units {
            primes: c.primes.to_vec(),
            samples: c.samples,
            seed: c.seed,
        },
        PropertyName::Opposite => Property::Opposite,
        PropertyName::Product => Property::Product(partner.cloned()),
        PropertyName::Invariance => {
            let path = c.hom.ok_or_else(|| Failure {
                code: 2,
                msg: "invariance needs --hom".into(),
            })?;
            Property::Invariance(parse_hom(&read(path)?, a, a)?)
        }
        PropertyName::BaseChange => Property::BaseChange(None),
        PropertyName::DegreeDivides => Property::DegreeDivides,
        PropertyName::TraceSymmetry => Property::TraceSymmetry,
    };
    let mode = if c.exact {
        CheckMode::Exact
    } else if c.random {
        CheckMode::Random {
            trials: c.trials,
            seed: c.seed,
        }
    } else if matches!(c.property, PropertyName::Mult) {
        CheckMode::default_for(a.dim(), c.trials, c.seed)
    } else {
        CheckMode::Exact
    };
    let v = check_suite(a, &property, mode, c.jobs)?;
    Ok((v.to_string(), if v.pass { 0 } else { 1 }))
}

fn run(cli: Cli) -> Out {
    let jobs = cli.jobs.max(1);
    match cli.cmd {
        Cmd::Validate { file } => match load(&file) {
            Ok(a) => ok(format!("OK {} (dim {}, over {})", a.name(), a.dim(), a.field_spec())),
            Err(Failure { code: 1, msg }) => Ok((msg.trim_end().to_string(), 1)),
            Err(f) => Err(f),
        },
        Cmd::Degree { file } => over_field!(load(&file)?, a => ok(char_data(&a)?.degree.to_string())),
        Cmd::Det { file } => over_field!(load(&file)?, a => ok(char_data(&a)?.det.to_string())),
        Cmd::Trace { file } => over_field!(load(&file)?, a => ok(char_data(&a)?.trace.to_string())),
        Cmd::Charpoly { file, ch } => over_field!(load(&file)?, a => charpoly(&a, ch)),
        Cmd::Disc { file } => over_field!(load(&file)?, a => {
            let cd = char_data(&a)?;
            ok(discriminant(&a, &cd)?.to_string())
        }),
        Cmd::Unimodular { file } => {
            over_field!(load(&file)?, a => ok(unimodular_equation(&char_data(&a)?).to_string()))
        }
        Cmd::Invert { file, element } => over_field!(load(&file)?, a => invert(&a, &element)),
        Cmd::Eldeg { file, element, adjoin } => over_field!(load(&file)?, a => eldeg(&a, &element, &adjoin)),
        Cmd::Check {
            file,
            property,
            exact,
            random,
            trials,
            seed,
            hom,
            with,
            primes,
            samples,
        } => {
            let a = load(&file)?;
            let partner = with.as_deref().map(load).transpose()?;
            let args = CheckArgs {
                property,
                exact,
                random,
                trials,
                seed,
                hom: hom.as_deref(),
                with: partner.as_ref(),
                primes: &primes,
                samples,
                jobs,
            };
            match args.with {
                Some(b) => over_field2!(a, *b, x, y => check(x, Some(y), &args)),
                None => over_field!(&a, x => check(x, None, &args)),
            }
        }
        Cmd::Op { op, a, b, output } => {
            let a = load(&a)?;
            let b = match (op, b) {
                (OpName::Opposite, None) => None,
                (OpName::Opposite, Some(_)) => return Err(usage("opposite takes one algebra")),
                (_, Some(b)) => Some(load(&b)?),
                (_, None) => return Err(usage("product and tensor take two algebras")),
            };
            let (text, notes) = match (op, b) {
                (OpName::Opposite, _) => (over_field!(&a, x => serialize(&x.opposite())), Vec::new()),
                (OpName::Product, Some(b)) => over_field2!(a, b, x, y => {
                    let p = direct_product(x, y)?;
                    (serialize(&p.algebra), p.renamed)
                }),
                (OpName::Tensor, Some(b)) => over_field2!(a, b, x, y => {
                    let t = tensor_product(x, y)?;
                    (serialize(&t.algebra), t.renamed)
                }),
                _ => unreachable!("arity checked above"),
            };
            write(&output, &text)?;
            let lines: Vec<String> = notes
                .iter()
                .map(|(side, from, to)| format!("renamed {side} {from} -> {to}"))
                .collect();
            ok(lines.join("\n"))
        }
        Cmd::Catalog { name, output } => {
            let text = serialize_any(&catalog(&name)?);
            match output {
                Some(path) => {
                    write(&path, &text)?;
                    ok("")
                }
                None => ok(text.trim_end()),
            }
        }
        Cmd::Reldet { a, b, hom } => {
            let (a, b) = (load(&a)?, load(&b)?);
            over_field2!(a, b, x, y => {
                let f = parse_hom(&read(&hom)?, x, y)?;
                ok(relative_determinant(&f)?.to_string())
            })
        }
        Cmd::Strata3 { prime } => {
            let r = alg3_strata_check(prime, jobs)?;
            let mut out = format!(
                "{} {} points, components {}",
                if r.pass() { "PASS" } else { "FAIL" },
                r.points,
                r.nonempty_components()
            );
            for f in &r.families {
                out.push_str(&format!(
                    "\nfamily {}: associative {}, eliminated {}, component {}",
                    f.name,
                    f.associative,
                    f.eliminated,
                    f.component.map_or("none".to_string(), |c| format!("p{c}"))
                ));
            }
            out.push_str(&format!(
                "\nassociative {} (expected {})\ncomponent p1 {}\ncomponent p2 {}\nintersection {}\ncounterexamples {}",
                r.associative,
                r.expected_associative(),
                r.components[0],
                r.components[1],
                r.intersection,
                r.counterexample_count
            ));
            let names = algdet::engine::parameter_names();
            for c in &r.counterexamples {
                let kv: Vec<String> = names.iter().zip(c).map(|(n, v)| format!("{n}={v}")).collect();
                out.push_str(&format!("\n  {}", kv.join(" ")));
            }
            Ok((out, if r.pass() { 0 } else { 1 }))
        }
        Cmd::Inseparable { prime } => {
            let s = inseparable_sign(prime)?;
            ok(format!(
                "{}\nquoted {}\n{}",
                s.computed,
                s.quoted,
                if s.agrees {
                    "AGREES with the quoted closed form".to_string()
                } else {
                    "SIGN DIFFERS from the quoted closed form; reporting det = (-1)^d P(0)".to_string()
                }
            ))
        }
    }
}

fn usage(msg: &str) -> Failure {
    Failure {
        code: 2,
        msg: msg.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            if !text.is_empty() {
                // a closed pipe is not an error worth reporting
                let _ = writeln!(std::io::stdout().lock(), "{text}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
