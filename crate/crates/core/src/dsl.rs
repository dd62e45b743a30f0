//! The `.gfl` problem language.
//!
//! ```text
//! params t;
//! algebra x, y / (x^2 - t*y, y^2 - x);   # B = A[x, y] / (...)
//! module v1, v2 / (x*v1 - y*v2);        # M = B^2 / (...)
//! ```
//!
//! Terms are `coeff? ("*"? ident ("^" nat)?)*` with rational coefficients
//! `p` or `p/q`. Parameters, algebra variables and module generators live in
//! disjoint namespaces; module relations must be linear in the generators.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::engine::{ProblemSpec, VariableNames};
use crate::poly::{ExponentVector, ModVector, ModuleIndex, ParamMonomial, ParamPoly, Poly};
use crate::{AlgRelation, ModRelation, Rational};

/// 1-based position in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceLocation {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DslErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
    RepeatedDeclaration(String),
    /// A generator used where it does not belong, or a module term that is
    /// not linear in the generators.
    GeneratorMisuse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{location}: {}", self.message())]
pub struct DslError {
    pub location: SourceLocation,
    pub kind: DslErrorKind,
}

impl DslError {
    fn new(location: SourceLocation, kind: DslErrorKind) -> Self {
        DslError { location, kind }
    }

    fn syntax(location: SourceLocation, msg: impl Into<String>) -> Self {
        DslError::new(location, DslErrorKind::Syntax(msg.into()))
    }

    pub fn message(&self) -> String {
        match &self.kind {
            DslErrorKind::Syntax(m) => m.clone(),
            DslErrorKind::UnknownIdentifier(n) => format!("unknown identifier `{n}`"),
            DslErrorKind::RepeatedDeclaration(n) => format!("`{n}` is declared twice"),
            DslErrorKind::GeneratorMisuse(m) => m.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Slash,
    Star,
    Caret,
    Plus,
    Minus,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Slash => "`/`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, SourceLocation)>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let loc = SourceLocation { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else {
            i += 1;
            match c {
                '/' => Tok::Slash,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                other => return Err(DslError::syntax(loc, format!("unexpected character `{other}`"))),
            }
        };
        col += i - start;
        out.push((tok, loc));
    }
    out.push((Tok::Eof, SourceLocation { line, column: col }));
    Ok(out)
}

/// One factor `name^exp` as written.
#[derive(Debug, Clone)]
struct RawFactor {
    name: String,
    exp: u32,
    at: SourceLocation,
}

#[derive(Debug, Clone)]
struct RawTerm {
    coeff: Rational,
    factors: Vec<RawFactor>,
    at: SourceLocation,
}

struct Parser {
    toks: Vec<(Tok, SourceLocation)>,
    pos: usize,
}

const KEYWORDS: [&str; 3] = ["params", "algebra", "module"];

impl Parser {
    fn new(text: &str) -> Result<Self, DslError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn loc(&self) -> SourceLocation {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceLocation) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), DslError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> DslError {
        DslError::syntax(
            self.loc(),
            format!("expected {what}, found {}", self.peek().describe()),
        )
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            Tok::Eof if self.pos == 0 => Err(DslError::syntax(
                SourceLocation { line: 1, column: 1 },
                format!("expected `{kw}`"),
            )),
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn ident_list(&mut self) -> Result<Vec<(String, SourceLocation)>, DslError> {
        let mut out = Vec::new();
        if let Tok::Ident(name) = self.peek().clone() {
            if KEYWORDS.contains(&name.as_str()) {
                return Err(self.unexpected("an identifier"));
            }
            out.push((name, self.loc()));
            self.bump();
            while self.eat(&Tok::Comma) {
                match self.peek().clone() {
                    Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                        out.push((name, self.loc()));
                        self.bump();
                    }
                    _ => return Err(self.unexpected("an identifier")),
                }
            }
        }
        Ok(out)
    }

    fn nat(&mut self) -> Result<BigInt, DslError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    fn term(&mut self, negate: bool) -> Result<RawTerm, DslError> {
        let at = self.loc();
        let mut seen = false;
        let mut coeff = Rational::one();
        if let Tok::Int(_) = self.peek() {
            let num = self.nat()?;
            let den = if self.peek() == &Tok::Slash
                && matches!(self.toks.get(self.pos + 1), Some((Tok::Int(_), _)))
            {
                self.bump();
                let den_at = self.loc();
                let den = self.nat()?;
                if den.is_zero() {
                    return Err(DslError::syntax(den_at, "denominator must be positive"));
                }
                den
            } else {
                BigInt::one()
            };
            coeff = Rational::new(num, den);
            seen = true;
        }
        let mut factors = Vec::new();
        loop {
            let starred = self.peek() == &Tok::Star;
            if starred {
                if !seen {
                    return Err(self.unexpected("a term"));
                }
                self.bump();
            }
            match self.peek().clone() {
                Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                    let f_at = self.loc();
                    self.bump();
                    let exp = if self.eat(&Tok::Caret) {
                        let e_at = self.loc();
                        let e = self.nat()?;
                        u32::try_from(e).map_err(|_| DslError::syntax(e_at, "exponent too large"))?
                    } else {
                        1
                    };
                    factors.push(RawFactor { name, exp, at: f_at });
                    seen = true;
                }
                _ if starred => return Err(self.unexpected("an identifier")),
                _ => break,
            }
        }
        if !seen {
            return Err(self.unexpected("a term"));
        }
        if negate {
            coeff = -coeff;
        }
        Ok(RawTerm { coeff, factors, at })
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>, DslError> {
        let mut terms = Vec::new();
        let mut negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        loop {
            terms.push(self.term(negate)?);
            negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        Ok(terms)
    }

    /// `("/" "(" poly_list? ")")?`
    fn relations(&mut self) -> Result<Vec<Vec<RawTerm>>, DslError> {
        let mut out = Vec::new();
        if !self.eat(&Tok::Slash) {
            return Ok(out);
        }
        self.expect(&Tok::LParen, "`(`")?;
        if self.eat(&Tok::RParen) {
            return Ok(out);
        }
        loop {
            out.push(self.poly()?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            if self.eat(&Tok::RParen) {
                break;
            }
            return Err(self.unexpected("`,` or `)`"));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Param(usize),
    Var(usize),
    Gen(usize),
}

fn lookup(names: &VariableNames, f: &RawFactor) -> Result<Role, DslError> {
    let find = |list: &[String]| list.iter().position(|s| s == &f.name);
    if let Some(i) = find(&names.params) {
        Ok(Role::Param(i))
    } else if let Some(i) = find(&names.vars) {
        Ok(Role::Var(i))
    } else if let Some(i) = find(&names.gens) {
        Ok(Role::Gen(i))
    } else {
        Err(DslError::new(f.at, DslErrorKind::UnknownIdentifier(f.name.clone())))
    }
}

/// Generator occurrences in a term: index, exponent, position.
type GenUses = Vec<(usize, u32, SourceLocation)>;

/// A term split into parameter part, variable exponents and generators.
type ResolvedTerm = (ParamPoly, ExponentVector, GenUses);

/// Splits a term into parameter and variable exponents plus any generators.
fn resolve_term(
    names: &VariableNames,
    term: &RawTerm,
) -> Result<ResolvedTerm, DslError> {
    let mut pexps = vec![0u32; names.k()];
    let mut xexps = vec![0u32; names.n()];
    let mut gens = Vec::new();
    for f in &term.factors {
        match lookup(names, f)? {
            Role::Param(i) => pexps[i] += f.exp,
            Role::Var(i) => xexps[i] += f.exp,
            Role::Gen(i) => gens.push((i, f.exp, f.at)),
        }
    }
    let c = ParamPoly::term(ParamMonomial::new(pexps), term.coeff.clone());
    Ok((c, ExponentVector::new(xexps), gens))
}

fn algebra_relation(names: &VariableNames, terms: &[RawTerm]) -> Result<AlgRelation, DslError> {
    let mut p = Poly::zero(names.n());
    for t in terms {
        let (c, e, gens) = resolve_term(names, t)?;
        if let Some((i, _, at)) = gens.first() {
            return Err(DslError::new(
                *at,
                DslErrorKind::GeneratorMisuse(format!(
                    "module generator `{}` in an algebra relation",
                    names.gens[*i]
                )),
            ));
        }
        p = &p + &Poly::monomial(e, c);
    }
    Ok(p)
}

fn module_relation(names: &VariableNames, terms: &[RawTerm]) -> Result<ModRelation, DslError> {
    let mut v = ModVector::zero(names.n());
    for t in terms {
        let (c, e, gens) = resolve_term(names, t)?;
        if c.is_zero() {
            continue;
        }
        let slot = match gens.as_slice() {
            [(i, 1, _)] => *i as u32 + 1,
            [] => {
                return Err(DslError::new(
                    t.at,
                    DslErrorKind::GeneratorMisuse("module term without a generator".into()),
                ))
            }
            [_, (_, _, at), ..] | [(_, _, at)] => {
                return Err(DslError::new(
                    *at,
                    DslErrorKind::GeneratorMisuse(
                        "module relations must be linear in the generators".into(),
                    ),
                ))
            }
        };
        v = &v + &ModVector::term(ModuleIndex::new(slot, e), c);
    }
    Ok(v)
}

fn declare(
    names: &mut Vec<String>,
    seen: &mut Vec<String>,
    list: Vec<(String, SourceLocation)>,
) -> Result<(), DslError> {
    for (name, at) in list {
        if seen.contains(&name) {
            return Err(DslError::new(at, DslErrorKind::RepeatedDeclaration(name)));
        }
        seen.push(name.clone());
        names.push(name);
    }
    Ok(())
}

/// Parses a problem description.
pub fn parse(text: &str) -> Result<ProblemSpec, DslError> {
    let mut p = Parser::new(text)?;
    let mut names = VariableNames::default();
    let mut seen = Vec::new();

    p.keyword("params")?;
    let list = p.ident_list()?;
    declare(&mut names.params, &mut seen, list)?;
    p.expect(&Tok::Semi, "`;`")?;

    p.keyword("algebra")?;
    let list = p.ident_list()?;
    declare(&mut names.vars, &mut seen, list)?;
    let raw_alg = p.relations()?;
    p.expect(&Tok::Semi, "`;`")?;

    p.keyword("module")?;
    let list = p.ident_list()?;
    declare(&mut names.gens, &mut seen, list)?;
    let raw_mod = p.relations()?;
    p.expect(&Tok::Semi, "`;`")?;
    if p.peek() != &Tok::Eof {
        return Err(p.unexpected("end of input"));
    }

    let algebra_relations = raw_alg
        .iter()
        .map(|r| algebra_relation(&names, r))
        .collect::<Result<_, _>>()?;
    let module_relations = raw_mod
        .iter()
        .map(|r| module_relation(&names, r))
        .collect::<Result<_, _>>()?;
    Ok(ProblemSpec {
        names,
        algebra_relations,
        module_relations,
    })
}

/// Canonical text of a problem; terms in descending lex order.
pub fn format(problem: &ProblemSpec) -> String {
    let names = &problem.names;
    let decl = |kw: &str, list: &[String]| {
        if list.is_empty() {
            kw.to_string()
        } else {
            format!("{kw} {}", list.join(", "))
        }
    };
    let alg: Vec<String> = problem
        .algebra_relations
        .iter()
        .map(|r| r.render(&names.params, &names.vars))
        .collect();
    let module: Vec<String> = problem
        .module_relations
        .iter()
        .map(|r| r.render(&names.params, &names.vars, &names.gens))
        .collect();
    format!(
        "{}; {} / ({}); {} / ({});",
        decl("params", &names.params),
        decl("algebra", &names.vars),
        alg.join(", "),
        decl("module", &names.gens),
        module.join(", ")
    )
}

fn standalone(text: &str, names: &VariableNames) -> Result<Vec<ResolvedTerm>, DslError> {
    let mut p = Parser::new(text)?;
    let terms = p.poly()?;
    if p.peek() != &Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    terms.iter().map(|t| resolve_term(names, t)).collect()
}

/// Parses a parameter polynomial such as `t^2 + t`.
pub fn parse_param_poly(text: &str, params: &[String]) -> Result<ParamPoly, DslError> {
    let names = VariableNames {
        params: params.to_vec(),
        ..Default::default()
    };
    Ok(standalone(text, &names)?
        .into_iter()
        .fold(ParamPoly::zero(), |acc, (c, _, _)| &acc + &c))
}

/// Parses a monomial such as `x^2*y` (or `1`) in the given variables.
pub fn parse_monomial(text: &str, vars: &[String]) -> Result<ExponentVector, DslError> {
    let names = VariableNames {
        vars: vars.to_vec(),
        ..Default::default()
    };
    let mut terms = standalone(text, &names)?;
    match terms.as_slice() {
        [(c, _, _)] if c.is_one() => Ok(terms.remove(0).1),
        _ => Err(DslError::syntax(
            SourceLocation { line: 1, column: 1 },
            "expected a monomial",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(src: &str) -> DslError {
        parse(src).unwrap_err()
    }

    fn at(line: usize, column: usize) -> SourceLocation {
        SourceLocation { line, column }
    }

    #[test]
    fn parses_the_basic_example() {
        let p = parse("params t; algebra x / (t*x - 1); module v / ();").unwrap();
        assert_eq!((p.names.k(), p.names.n(), p.names.m()), (1, 1, 1));
        assert_eq!(p.algebra_relations.len(), 1);
        assert!(p.module_relations.is_empty());
        let r = &p.algebra_relations[0];
        assert_eq!(r.coeff(&ExponentVector::new(vec![1])), Some(&ParamPoly::var(0)));
        assert_eq!(r.coeff(&ExponentVector::new(vec![0])), Some(&ParamPoly::from_int(-1)));
    }

    #[test]
    fn undeclared_parameter() {
        let e = err("params; algebra; module v1, v2 / (v1 - t*v2);");
        assert_eq!(e.kind, DslErrorKind::UnknownIdentifier("t".into()));
        assert_eq!(e.location, at(1, 40));
    }

    #[test]
    fn empty_input() {
        let e = err("");
        assert_eq!(e.location, at(1, 1));
        assert_eq!(e.to_string(), "line 1, column 1: expected `params`");
    }

    #[test]
    fn repeated_declarations_across_namespaces() {
        let e = err("params t; algebra t; module v;");
        assert_eq!(e.kind, DslErrorKind::RepeatedDeclaration("t".into()));
        assert_eq!(e.location, at(1, 19));
        assert!(matches!(
            err("params; algebra x, x; module;").kind,
            DslErrorKind::RepeatedDeclaration(_)
        ));
    }

    #[test]
    fn generator_rules() {
        let e = err("params; algebra x / (x*v); module v;");
        assert!(matches!(e.kind, DslErrorKind::GeneratorMisuse(_)));
        assert_eq!(e.location, at(1, 24));
        let e = err("params; algebra x; module v, w / (v*w);");
        assert!(matches!(e.kind, DslErrorKind::GeneratorMisuse(_)));
        assert_eq!(e.location, at(1, 37));
        let e = err("params; algebra x; module v / (x);");
        assert!(matches!(e.kind, DslErrorKind::GeneratorMisuse(_)));
        let e = err("params; algebra x; module v / (v^2);");
        assert!(matches!(e.kind, DslErrorKind::GeneratorMisuse(_)));
    }

    #[test]
    fn syntax_errors_are_located() {
        let e = err("params t;\nalgebra x / (t*x - );\nmodule v;");
        assert_eq!(e.location, at(2, 20));
        let e = err("params t;\nalgebra x / (t*x - 1)\nmodule v;");
        assert_eq!(e.location, at(3, 1));
        let e = err("params t; algebra x / (x^); module v;");
        assert_eq!(e.location, at(1, 26));
        let e = err("params t; algebra x / (1/0*x); module v;");
        assert_eq!(e.location, at(1, 26));
        let e = err("params t; algebra x / (x $ 1); module v;");
        assert_eq!(e.location, at(1, 26));
        let e = err("params t; algebra x; module v; extra");
        assert_eq!(e.location, at(1, 32));
    }

    #[test]
    fn comments_whitespace_and_coefficients() {
        let p = parse("# header\nparams   t ;# c\n algebra x/(\n -1/2 x^2 + 3t x ) ;module v/( ) ;").unwrap();
        assert_eq!(format(&p), "params t; algebra x / (-1/2*x^2 + 3*t*x); module v / ();");
    }

    #[test]
    fn canonical_form() {
        let p = parse("params t; algebra x; module v;").unwrap();
        assert_eq!(format(&p), "params t; algebra x / (); module v / ();");
        let p = parse("params; algebra; module;").unwrap();
        assert_eq!(format(&p), "params; algebra / (); module / ();");
        let p = parse("params t; algebra x, y / (1 + y + x + t*x + x*y); module v1, v2 / (t*v2 + x*v1, 0);")
            .unwrap();
        assert_eq!(
            format(&p),
            "params t; algebra x, y / (x*y + t*x + x + y + 1); module v1, v2 / (t*v2 + x*v1, 0);"
        );
        assert_eq!(parse(&format(&p)).unwrap(), p);
    }

    #[test]
    fn standalone_pieces() {
        let t = vec!["t".to_string()];
        assert_eq!(
            parse_param_poly("t^2 + t", &t).unwrap(),
            &ParamPoly::var(0).pow(2) + &ParamPoly::var(0)
        );
        assert!(parse_param_poly("s", &t).is_err());
        let xy = vec!["x".to_string(), "y".to_string()];
        assert_eq!(parse_monomial("x^2*y", &xy).unwrap(), ExponentVector::new(vec![2, 1]));
        assert_eq!(parse_monomial("1", &xy).unwrap(), ExponentVector::new(vec![0, 0]));
        assert!(parse_monomial("2*x", &xy).is_err());
    }
}
