use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::lexer::{tokenize, Tok, Token};
use crate::algebra::{default_coordinates, Algebra, AlgebraHom, AnyAlgebra, Element, Frame, HomKind, Violation};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::mpoly::MPoly;
use crate::vars::VarTable;

#[derive(Clone, Debug)]
enum Expr {
    Int(BigInt),
    Ident(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
}

#[derive(Clone, Debug)]
struct Node {
    expr: Expr,
    line: usize,
    col: usize,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, msg: impl Into<String>) -> Error {
        let t = self.peek();
        Error::parse(t.line, t.col, msg)
    }

    fn expect(&mut self, tok: Tok) -> Result<Token> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            Err(self.error_here(format!("expected `{}`, found {}", tok.symbol(), self.peek().tok.describe())))
        }
    }

    fn ident(&mut self) -> Result<(String, Token)> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => Ok((s, self.next())),
            other => Err(self.error_here(format!("expected an identifier, found {}", other.describe()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Token> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => Ok(self.next()),
            other => Err(self.error_here(format!("expected `{kw}`, found {}", other.describe()))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
            && self.toks.get(self.pos + 1).is_some_and(|t| t.tok == Tok::Eq)
    }

    fn string(&mut self) -> Result<String> {
        match self.peek().tok.clone() {
            Tok::Str(s) => {
                self.next();
                Ok(s)
            }
            other => Err(self.error_here(format!("expected a quoted name, found {}", other.describe()))),
        }
    }

    fn id_list(&mut self) -> Result<Vec<(String, Token)>> {
        self.expect(Tok::LBracket)?;
        let mut out: Vec<(String, Token)> = Vec::new();
        if self.peek().tok == Tok::RBracket {
            self.next();
            return Ok(out);
        }
        loop {
            let (name, tok) = self.ident()?;
            if out.iter().any(|(n, _)| *n == name) {
                return Err(Error::parse(tok.line, tok.col, format!("duplicate name `{name}`")));
            }
            out.push((name, tok));
            match self.next() {
                Token { tok: Tok::Comma, .. } => continue,
                Token { tok: Tok::RBracket, .. } => return Ok(out),
                t => return Err(Error::parse(t.line, t.col, format!("expected `,` or `]`, found {}", t.tok.describe()))),
            }
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let t = self.peek().clone();
            let op = match t.tok {
                Tok::Plus => Expr::Add as fn(_, _) -> _,
                Tok::Minus => Expr::Sub,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.term()?;
            lhs = Node {
                expr: op(Box::new(lhs), Box::new(rhs)),
                line: t.line,
                col: t.col,
            };
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let t = self.peek().clone();
            let op = match t.tok {
                Tok::Star => Expr::Mul as fn(_, _) -> _,
                Tok::Slash => Expr::Div,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.unary()?;
            lhs = Node {
                expr: op(Box::new(lhs), Box::new(rhs)),
                line: t.line,
                col: t.col,
            };
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.peek().tok == Tok::Minus {
            let t = self.next();
            let inner = self.unary()?;
            return Ok(Node {
                expr: Expr::Neg(Box::new(inner)),
                line: t.line,
                col: t.col,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let t = self.next();
        let e = match self.peek().tok.clone() {
            Tok::Int(n) => n.to_u32().ok_or_else(|| self.error_here("exponent too large"))?,
            other => return Err(self.error_here(format!("expected a nonnegative integer exponent, found {}", other.describe()))),
        };
        self.next();
        Ok(Node {
            expr: Expr::Pow(Box::new(base), e),
            line: t.line,
            col: t.col,
        })
    }

    fn atom(&mut self) -> Result<Node> {
        let t = self.next();
        let expr = match t.tok {
            Tok::Int(n) => Expr::Int(n),
            Tok::Ident(s) => Expr::Ident(s),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(inner);
            }
            other => {
                return Err(Error::parse(t.line, t.col, format!("expected an expression, found {}", other.describe())))
            }
        };
        Ok(Node {
            expr,
            line: t.line,
            col: t.col,
        })
    }

    fn end(&mut self) -> Result<()> {
        match &self.peek().tok {
            Tok::Eof => Ok(()),
            other => Err(self.error_here(format!("unexpected {} after the end", other.describe()))),
        }
    }
}

/// A value that is at most linear in the basis: `scalar + sum lin_k e_k`.
#[derive(Clone)]
struct Value<F: Field> {
    scalar: MPoly<F>,
    lin: Option<Vec<MPoly<F>>>,
}

struct Scope<'a, F: Field> {
    field: &'a F,
    vars: &'a Arc<VarTable>,
    basis: &'a [String],
    params: HashMap<String, usize>,
}

impl<'a, F: Field> Scope<'a, F> {
    fn new(field: &'a F, vars: &'a Arc<VarTable>, basis: &'a [String], params: &[String]) -> Self {
        let params = params
            .iter()
            .map(|p| (p.clone(), vars.index_of(p).expect("parameter in table")))
            .collect();
        Scope {
            field,
            vars,
            basis,
            params,
        }
    }

    fn zero(&self) -> MPoly<F> {
        MPoly::zero(self.field, self.vars)
    }

    fn scalar(&self, p: MPoly<F>) -> Value<F> {
        Value { scalar: p, lin: None }
    }

    fn eval(&self, n: &Node) -> Result<Value<F>> {
        let err = |msg: String| Error::parse(n.line, n.col, msg);
        Ok(match &n.expr {
            Expr::Int(k) => self.scalar(MPoly::constant(self.field, self.vars, self.field.from_bigint(k))),
            Expr::Ident(s) => {
                if let Some(k) = self.basis.iter().position(|b| b == s) {
                    let mut lin = vec![self.zero(); self.basis.len()];
                    lin[k] = MPoly::one(self.field, self.vars);
                    Value {
                        scalar: self.zero(),
                        lin: Some(lin),
                    }
                } else if let Some(&i) = self.params.get(s) {
                    self.scalar(MPoly::var(self.field, self.vars, i))
                } else {
                    return Err(err(format!("unknown identifier `{s}`")));
                }
            }
            Expr::Neg(a) => {
                let v = self.eval(a)?;
                Value {
                    scalar: -&v.scalar,
                    lin: v.lin.map(|l| l.iter().map(|c| -c).collect()),
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let sub = matches!(n.expr, Expr::Sub(..));
                let op = |p: &MPoly<F>, q: &MPoly<F>| if sub { p - q } else { p + q };
                let lin = match (x.lin, y.lin) {
                    (None, None) => None,
                    (Some(l), None) => Some(l),
                    (None, Some(l)) => Some(l.iter().map(|c| op(&self.zero(), c)).collect()),
                    (Some(l), Some(m)) => Some(l.iter().zip(&m).map(|(p, q)| op(p, q)).collect()),
                };
                Value {
                    scalar: op(&x.scalar, &y.scalar),
                    lin,
                }
            }
            Expr::Mul(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let scale = |l: Vec<MPoly<F>>, c: &MPoly<F>| l.iter().map(|p| p * c).collect();
                match (x.lin, y.lin) {
                    (Some(_), Some(_)) => return Err(err("expression is not linear in the basis".into())),
                    (Some(l), None) => Value {
                        scalar: &x.scalar * &y.scalar,
                        lin: Some(scale(l, &y.scalar)),
                    },
                    (None, Some(l)) => Value {
                        scalar: &x.scalar * &y.scalar,
                        lin: Some(scale(l, &x.scalar)),
                    },
                    (None, None) => self.scalar(&x.scalar * &y.scalar),
                }
            }
            Expr::Div(a, b) => {
                if self.field.elements().is_some() {
                    return Err(err("fractions are only allowed over QQ".into()));
                }
                let x = self.eval(a)?;
                let y = self.eval(b)?;
                let d = match (&y.lin, y.scalar.constant_value()) {
                    (None, Some(d)) if !y.scalar.is_zero() => d,
                    (None, _) if y.scalar.is_zero() => return Err(err("division by zero".into())),
                    _ => return Err(err("can only divide by a nonzero number".into())),
                };
                let inv = self.field.inv(&d).expect("nonzero");
                Value {
                    scalar: x.scalar.scale(&inv),
                    lin: x.lin.map(|l| l.iter().map(|c| c.scale(&inv)).collect()),
                }
            }
            Expr::Pow(a, e) => {
                let x = self.eval(a)?;
                match (*e, &x.lin) {
                    (0, _) => self.scalar(MPoly::one(self.field, self.vars)),
                    (1, _) => x,
                    (_, Some(_)) => return Err(err("expression is not linear in the basis".into())),
                    (e, None) => self.scalar(x.scalar.pow(e)),
                }
            }
        })
    }

    /// Coordinates of a value, reading a bare scalar `c` as `c * unit`.
    fn coords(&self, v: Value<F>, unit: &[MPoly<F>]) -> Vec<MPoly<F>> {
        let mut out = v.lin.unwrap_or_else(|| vec![self.zero(); self.basis.len()]);
        if !v.scalar.is_zero() {
            for (o, u) in out.iter_mut().zip(unit) {
                *o = &*o + &(&v.scalar * u);
            }
        }
        out
    }
}

/// Parses an `.alg` file into a validated algebra over its declared field.
pub fn parse_algebra(text: &str) -> Result<AnyAlgebra> {
    let mut p = Parser::new(text)?;
    p.keyword("algebra")?;
    let name = p.string()?;
    p.expect(Tok::LBrace)?;
    p.keyword("field")?;
    p.expect(Tok::Eq)?;
    let (kind, t) = p.ident()?;
    match kind.as_str() {
        "QQ" => Ok(AnyAlgebra::Rational(parse_body(&mut p, &Rationals, name)?)),
        "GF" => {
            p.expect(Tok::LParen)?;
            let at = p.peek().clone();
            let modulus = match &at.tok {
                Tok::Int(n) => n.to_u64(),
                other => return Err(p.error_here(format!("expected a prime, found {}", other.describe()))),
            };
            p.next();
            let field = modulus
                .and_then(|m| PrimeField::new(m).ok())
                .ok_or_else(|| Error::parse(at.line, at.col, format!("GF argument {} is not a prime", at.tok.describe())))?;
            p.expect(Tok::RParen)?;
            Ok(AnyAlgebra::Prime(parse_body(&mut p, &field, name)?))
        }
        other => Err(Error::parse(t.line, t.col, format!("unknown field `{other}`; expected QQ or GF(p)"))),
    }
}

fn names(list: &[(String, Token)]) -> Vec<String> {
    list.iter().map(|(n, _)| n.clone()).collect()
}

fn parse_body<F: Field>(p: &mut Parser, field: &F, name: String) -> Result<Algebra<F>> {
    let params = if p.at_keyword("params") {
        p.next();
        p.next();
        p.id_list()?
    } else {
        Vec::new()
    };
    let basis_tok = p.keyword("basis")?;
    p.expect(Tok::Eq)?;
    let basis = p.id_list()?;
    if basis.is_empty() {
        return Err(Error::parse(basis_tok.line, basis_tok.col, "basis must not be empty"));
    }
    for (b, t) in &basis {
        if params.iter().any(|(q, _)| q == b) {
            return Err(Error::parse(t.line, t.col, format!("`{b}` is both a parameter and a basis symbol")));
        }
    }
    let (params, basis_list) = (names(&params), names(&basis));
    let n = basis_list.len();
    let coords = if p.at_keyword("coords") {
        let t = p.next();
        p.next();
        let c = p.id_list()?;
        if c.len() != n {
            return Err(Error::parse(t.line, t.col, format!("{} coordinate names for {n} basis symbols", c.len())));
        }
        if let Some((c, t)) = c.iter().find(|(c, _)| params.contains(c)) {
            return Err(Error::parse(t.line, t.col, format!("coordinate `{c}` clashes with a parameter")));
        }
        names(&c)
    } else {
        default_coordinates(&basis_list, &params)
    };
    let vars = Algebra::<F>::make_vars(&coords, &params)?;
    let scope = Scope::new(field, &vars, &basis_list, &params);

    let unit_tok = p.keyword("unit")?;
    p.expect(Tok::Eq)?;
    let unit_value = scope.eval(&p.expr()?)?;
    if !unit_value.scalar.is_zero() || unit_value.lin.is_none() {
        return Err(Error::parse(unit_tok.line, unit_tok.col, "unit must be a combination of basis symbols"));
    }
    let unit = unit_value.lin.unwrap();
    let one = MPoly::one(field, &vars);
    let unit_symbol = (0..n).find(|&k| (0..n).all(|l| unit[l] == if l == k { one.clone() } else { scope.zero() }));
    let basis_vec = |k: usize| {
        let mut v = vec![scope.zero(); n];
        v[k] = one.clone();
        v
    };

    let mut table: Vec<Option<Vec<MPoly<F>>>> = vec![None; n * n];
    let mut lines: HashMap<(usize, usize), usize> = HashMap::new();
    loop {
        if p.peek().tok == Tok::RBrace {
            break;
        }
        let (a, ta) = p.ident()?;
        let i = basis_list
            .iter()
            .position(|b| *b == a)
            .ok_or_else(|| Error::parse(ta.line, ta.col, format!("`{a}` is not a basis symbol")))?;
        p.expect(Tok::Star)?;
        let (b, tb) = p.ident()?;
        let j = basis_list
            .iter()
            .position(|x| *x == b)
            .ok_or_else(|| Error::parse(tb.line, tb.col, format!("`{b}` is not a basis symbol")))?;
        p.expect(Tok::Eq)?;
        let rhs = scope.coords(scope.eval(&p.expr()?)?, &unit);
        if table[i * n + j].is_some() {
            return Err(Error::parse(ta.line, ta.col, format!("duplicate product clause {a}*{b}")));
        }
        if let Some(u) = unit_symbol {
            if i == u || j == u {
                let other = if i == u { j } else { i };
                if rhs != basis_vec(other) {
                    return Err(Error::parse(
                        ta.line,
                        ta.col,
                        format!("{a}*{b} must equal {} because {} is the unit", basis_list[other], basis_list[u]),
                    ));
                }
            }
        }
        lines.insert((i, j), ta.line);
        table[i * n + j] = Some(rhs);
    }
    let close = p.expect(Tok::RBrace)?;
    p.end()?;

    let mut full = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let entry = match (table[i * n + j].take(), unit_symbol) {
                (Some(v), _) => v,
                (None, Some(u)) if i == u => basis_vec(j),
                (None, Some(u)) if j == u => basis_vec(i),
                (None, _) => {
                    return Err(Error::parse(
                        close.line,
                        close.col,
                        format!("missing product clause {}*{}", basis_list[i], basis_list[j]),
                    ))
                }
            };
            full.push(entry);
        }
    }
    let frame = Frame::new(field, &vars, full, unit)?;
    let algebra = Algebra::new(name, basis_list.clone(), frame)?;
    let report = algebra.validate();
    if !report.is_ok() {
        let mut msg = String::new();
        for (v, text) in report.violations.iter().zip(report.render(&basis_list).lines()) {
            let at = match v {
                Violation::Associativity { i, j, k, .. } => {
                    let mut ls: Vec<usize> = [(*i, *j), (*j, *k)].iter().filter_map(|q| lines.get(q).copied()).collect();
                    ls.sort_unstable();
                    ls.dedup();
                    if ls.is_empty() {
                        String::new()
                    } else {
                        let ls: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
                        format!("lines {}: ", ls.join(", "))
                    }
                }
                Violation::Unit { .. } => format!("line {}: ", unit_tok.line),
            };
            msg.push_str(&format!("{at}{text}\n"));
        }
        return Err(Error::NotAssociative(msg));
    }
    Ok(algebra)
}

/// Parses an element of `a` written in its basis symbols and parameters;
/// a bare scalar `c` means `c` times the unit.
pub fn parse_element<F: Field>(text: &str, a: &Algebra<F>) -> Result<Element<F>> {
    let mut p = Parser::new(text)?;
    let params = a.params();
    let scope = Scope::new(a.field(), a.vars(), a.basis(), &params);
    let v = scope.eval(&p.expr()?)?;
    p.end()?;
    a.element(scope.coords(v, a.unit().coords()))
}

/// Parses a `.hom` file describing a map `source -> target`:
///
/// ```text
/// hom "conjugation" {
///   kind = anti        # or hom
///   i -> -i
///   ...
/// }
/// ```
///
/// Images are written in the target basis and may use the source
/// parameters. The image of a source basis symbol that is the unit may be
/// omitted.
pub fn parse_hom<F: Field>(text: &str, source: &Algebra<F>, target: &Algebra<F>) -> Result<AlgebraHom<F>> {
    let mut p = Parser::new(text)?;
    p.keyword("hom")?;
    p.string()?;
    p.expect(Tok::LBrace)?;
    p.keyword("kind")?;
    p.expect(Tok::Eq)?;
    let (k, kt) = p.ident()?;
    let kind = match k.as_str() {
        "hom" => HomKind::Homomorphism,
        "anti" => HomKind::Antihomomorphism,
        _ => return Err(Error::parse(kt.line, kt.col, format!("kind must be `hom` or `anti`, not `{k}`"))),
    };
    let tf = target
        .frame_over(source.vars())
        .map_err(|_| Error::InvalidArgs("target parameters must be source parameters".into()))?;
    let params = source.params();
    let scope = Scope::new(source.field(), source.vars(), target.basis(), &params);
    let n = source.dim();
    let mut images: Vec<Option<Vec<MPoly<F>>>> = vec![None; n];
    while p.peek().tok != Tok::RBrace {
        let (b, t) = p.ident()?;
        let i = source
            .basis_index(&b)
            .ok_or_else(|| Error::parse(t.line, t.col, format!("`{b}` is not a source basis symbol")))?;
        if images[i].is_some() {
            return Err(Error::parse(t.line, t.col, format!("duplicate image of `{b}`")));
        }
        p.expect(Tok::Arrow)?;
        let v = scope.eval(&p.expr()?)?;
        images[i] = Some(scope.coords(v, tf.unit().coords()));
    }
    let close = p.expect(Tok::RBrace)?;
    p.end()?;
    let su = source.unit();
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| match img {
            Some(v) => Ok(v),
            None if su == source.frame().basis(i) => Ok(tf.unit().into_coords()),
            None => Err(Error::parse(
                close.line,
                close.col,
                format!("missing image of `{}`", source.basis()[i]),
            )),
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraHom::new(source, target, images, kind)
}
