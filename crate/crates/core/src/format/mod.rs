//! The `.alg` text format.
//!
//! ```text
//! algebra "quaternion" {
//!   field = QQ
//!   params = [al, be]
//!   basis = [one, i, j, k]
//!   coords = [a, b, c, d]   # optional, defaults to the basis names
//!   unit = one
//!   i*i = al*one
//!   i*j = k
//!   ...
//! }
//! ```
//!
//! Products with a unit basis symbol are implied and may be omitted; any
//! other ordered pair of basis symbols needs exactly one clause. Right-hand
//! sides are linear in the basis, with polynomial coefficients in the
//! parameters; a bare scalar `c` stands for `c` times the unit.

mod lexer;
mod parse;

pub use parse::{parse_algebra, parse_element, parse_hom};

use crate::algebra::{default_coordinates, format_linear, Algebra, AnyAlgebra};
use crate::field::Field;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Canonical text of an algebra; [`parse_algebra`] reads it back unchanged.
pub fn serialize<F: Field>(a: &Algebra<F>) -> String {
    let mut out = format!("algebra {} {{\n", quote(a.name()));
    out.push_str(&format!("  field = {}\n", a.field().spec()));
    let params = a.params();
    if !params.is_empty() {
        out.push_str(&format!("  params = [{}]\n", params.join(", ")));
    }
    let basis = a.basis();
    out.push_str(&format!("  basis = [{}]\n", basis.join(", ")));
    let coords = a.coord_names();
    if coords != default_coordinates(basis, &params) {
        out.push_str(&format!("  coords = [{}]\n", coords.join(", ")));
    }
    let unit = a.unit();
    out.push_str(&format!("  unit = {}\n", format_linear(basis, unit.coords())));
    let fr = a.frame();
    let unit_symbol = (0..a.dim()).find(|&k| unit == fr.basis(k));
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if unit_symbol.is_some_and(|u| u == i || u == j) {
                continue;
            }
            out.push_str(&format!(
                "  {}*{} = {}\n",
                basis[i],
                basis[j],
                format_linear(basis, fr.structure(i, j))
            ));
        }
    }
    out.push_str("}\n");
    out
}

pub fn serialize_any(a: &AnyAlgebra) -> String {
    match a {
        AnyAlgebra::Rational(a) => serialize(a),
        AnyAlgebra::Prime(a) => serialize(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, catalog_names};
    use crate::error::Error;
    use crate::field::Rationals;
    use crate::mpoly::MPoly;

    const QUATERNION: &str = r#"
# Hamilton-type quaternions
algebra "quaternion" {
  field = QQ
  params = [al, be]
  basis = [one, i, j, k]
  coords = [a, b, c, d]
  unit = one
  i*i = al*one
  j*j = be*one
  i*j = k
  j*i = -k
  i*k = al*j
  k*i = -al*j
  j*k = -be*i
  k*j = be*i
  k*k = -al*be*one
}
"#;

    fn rational(a: AnyAlgebra) -> Algebra<Rationals> {
        match a {
            AnyAlgebra::Rational(a) => a,
            AnyAlgebra::Prime(_) => panic!("expected QQ"),
        }
    }

    #[test]
    fn quaternion_file_matches_catalog() {
        let a = rational(parse_algebra(QUATERNION).unwrap());
        let c = rational(catalog("quaternion").unwrap());
        assert_eq!(a, c);
        let text = serialize(&a);
        assert_eq!(serialize(&rational(parse_algebra(&text).unwrap())), text);
    }

    #[test]
    fn every_catalog_entry_round_trips() {
        for name in catalog_names() {
            let a = catalog(name).unwrap();
            let text = serialize_any(&a);
            let b = parse_algebra(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
            assert_eq!(a, b, "{name}");
        }
    }

    #[test]
    fn missing_clause_names_the_pair() {
        let text = QUATERNION.replace("  j*i = -k\n", "");
        let err = parse_algebra(&text).unwrap_err();
        assert!(matches!(&err, Error::Parse { msg, .. } if msg == "missing product clause j*i"), "{err}");
    }

    #[test]
    fn quadratic_right_side_is_rejected() {
        let text = QUATERNION.replace("i*j = k", "i*j = i*j");
        match parse_algebra(&text).unwrap_err() {
            Error::Parse { line, msg, .. } => {
                assert_eq!(line, 11);
                assert_eq!(msg, "expression is not linear in the basis");
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn unit_clauses_are_checked() {
        let ok = QUATERNION.replace("  k*k", "  one*i = i\n  k*k");
        assert!(parse_algebra(&ok).is_ok());
        let bad = QUATERNION.replace("  k*k", "  one*i = j\n  k*k");
        assert!(matches!(parse_algebra(&bad), Err(Error::Parse { line: 17, .. })));
    }

    #[test]
    fn associativity_violations_carry_lines() {
        let text = QUATERNION.replace("k*j = be*i", "k*j = -be*i");
        match parse_algebra(&text).unwrap_err() {
            Error::NotAssociative(msg) => assert!(msg.contains("lines"), "{msg}"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn field_clause() {
        let bad = QUATERNION.replace("field = QQ", "field = GF(9)");
        assert_eq!(parse_algebra(&bad).unwrap_err(), Error::parse(4, 14, "GF argument number 9 is not a prime"));
        let frac = "algebra \"f\" { field = GF(5) basis = [one, x] unit = one x*x = 1/2 }";
        assert!(matches!(parse_algebra(frac), Err(Error::Parse { msg, .. }) if msg.contains("only allowed over QQ")));
        let q = "algebra \"f\" { field = QQ basis = [one, x] unit = one x*x = 1/2 }";
        let a = rational(parse_algebra(q).unwrap());
        assert_eq!(a.frame().structure(1, 1)[0].to_string(), "1/2");
    }

    #[test]
    fn elements() {
        let h = rational(parse_algebra(QUATERNION).unwrap());
        let v = |k| MPoly::from_i64(&Rationals, h.vars(), k);
        let x = parse_element("1 + 2*i", &h).unwrap();
        assert_eq!(x.coords(), &[v(1), v(2), v(0), v(0)]);
        let y = parse_element("al*one + i", &h).unwrap();
        assert_eq!(y.coords()[0], MPoly::named(&Rationals, h.vars(), "al"));
        assert!(matches!(parse_element("i*j", &h), Err(Error::Parse { col: 2, .. })));
        assert!(matches!(parse_element("q", &h), Err(Error::Parse { msg, .. }) if msg.contains("unknown identifier")));
        assert!(parse_element("(i + j", &h).is_err());
    }

    #[test]
    fn non_basis_unit() {
        let m = catalog("matrix:2").unwrap();
        let text = serialize_any(&m);
        assert!(text.contains("unit = E11 + E22"));
        assert!(text.contains("E11*E11 = E11"));
    }

    #[test]
    fn hom_file() {
        let h = rational(parse_algebra(QUATERNION).unwrap());
        let conj = "hom \"bar\" {\n kind = anti\n i -> -i\n j -> -j\n k -> -k\n}";
        let f = parse_hom(conj, &h, &h).unwrap();
        assert!(f.is_surjective());
        let wrong = conj.replace("anti", "hom");
        assert!(matches!(parse_hom(&wrong, &h, &h), Err(Error::NotHomomorphism(_))));
        let missing = conj.replace(" k -> -k\n", "");
        assert!(matches!(parse_hom(&missing, &h, &h), Err(Error::Parse { line: 5, .. })));
    }
}
