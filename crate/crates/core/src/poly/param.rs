use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::text::{render_terms, Factor};
use super::PolyError;
use crate::Rational;

/// Exponents of a parameter monomial `t1^e1 .. tk^ek`.
///
/// Trailing zero exponents are never stored, so the value does not depend on
/// the ambient parameter count and lexicographic comparison of the stored
/// vectors agrees with lexicographic comparison of the zero-padded ones.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct ParamMonomial(Vec<u32>);

impl ParamMonomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        ParamMonomial(exps)
    }

    pub fn one() -> Self {
        ParamMonomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        ParamMonomial(v)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of leading variable slots this monomial touches.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &ParamMonomial) -> ParamMonomial {
        let n = self.0.len().max(other.0.len());
        ParamMonomial((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    fn div(&self, other: &ParamMonomial) -> Option<ParamMonomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut out = Vec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            out.push(self.exp(i).checked_sub(other.exp(i))?);
        }
        Some(ParamMonomial::new(out))
    }

    fn with_exp(&self, i: usize, e: u32) -> ParamMonomial {
        let mut v = self.0.clone();
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] = e;
        ParamMonomial::new(v)
    }
}

/// An element of `A = Q[t1..tk]`, stored sparsely.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<ParamMonomial, Rational>,
}

impl ParamPoly {
    pub fn constant(c: Rational) -> Self {
        let mut p = ParamPoly::default();
        if !c.is_zero() {
            p.terms.insert(ParamMonomial::one(), c);
        }
        p
    }

    pub fn from_int(c: i64) -> Self {
        ParamPoly::constant(Rational::from_integer(c.into()))
    }

    /// The parameter `t_{i+1}`.
    pub fn var(i: usize) -> Self {
        ParamPoly::term(ParamMonomial::var(i), Rational::one())
    }

    pub fn term(m: ParamMonomial, c: Rational) -> Self {
        let mut p = ParamPoly::default();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ParamMonomial, Rational)>) -> Self {
        let mut p = ParamPoly::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: ParamMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ParamMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value, if the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .get(&ParamMonomial::one())
                .cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&ParamMonomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    /// Number of leading parameter slots that appear.
    pub fn width(&self) -> usize {
        self.terms.keys().map(|m| m.width()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    fn mul_term(&self, m: &ParamMonomial, c: &Rational) -> ParamPoly {
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> ParamPoly {
        ParamPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(i);
            (e > 0).then(|| (m.with_exp(i, e - 1), c * Rational::from_integer(e.into())))
        }))
    }

    /// Value at a rational point; missing coordinates are an error.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if self.width() > point.len() {
            return Err(PolyError::ShapeMismatch(self.width(), point.len()));
        }
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    v *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            sum += v;
        }
        Ok(sum)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (dm, dc) = d.leading_term()?;
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            rem = &rem - &d.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scaled so the lex-leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> ParamPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => ParamPoly::zero(),
        }
    }

    /// Scaled to coprime integer coefficients with a positive lex-leading
    /// coefficient.
    pub fn primitive(&self) -> ParamPoly {
        if self.is_zero() {
            return ParamPoly::zero();
        }
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        for c in self.terms.values() {
            gcd = gcd.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        let mut factor = Rational::new(lcm, gcd);
        if self.leading_coeff().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &ParamPoly) -> ParamPoly {
        gcd_rec(self, other)
    }

    /// The product of the distinct irreducible factors of `self`, as a
    /// primitive integer polynomial with positive leading coefficient.
    pub fn squarefree_primitive(&self) -> Result<ParamPoly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        if self.is_constant() {
            return Ok(ParamPoly::one());
        }
        let mut g = self.clone();
        for i in 0..self.width() {
            if self.degree_in(i) > 0 {
                g = g.gcd(&self.derivative(i));
            }
        }
        let radical = self
            .div_exact(&g)
            .expect("gcd of a polynomial and its derivatives divides it");
        Ok(radical.primitive())
    }

    /// Render with the given parameter names, terms in descending lex order.
    pub fn render(&self, names: &[String]) -> String {
        render_terms(self.terms.iter().rev().map(|(m, c)| {
            let factors = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| Factor::new(param_name(names, i), e))
                .collect::<Vec<_>>();
            (c.clone(), factors)
        }))
    }

    /// Whether this polynomial, written with `names`, needs parentheses to
    /// be used as a factor.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

fn param_name(names: &[String], i: usize) -> String {
    names
        .get(i)
        .cloned()
        .unwrap_or_else(|| format!("t{}", i + 1))
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

// --- gcd over Q[t1..tk] -----------------------------------------------------
//
// Recursive: pick a variable, view both inputs as univariate polynomials whose
// coefficients do not involve it, split off contents recursively, and run a
// primitive pseudo-remainder sequence on the primitive parts.

type Univariate = Vec<ParamPoly>;

fn gcd_rec(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return ParamPoly::one();
    }
    let width = a.width().max(b.width());
    let var = (0..width)
        .find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
        .expect("nonconstant polynomial uses some variable");

    let ua = to_univariate(a, var);
    let ub = to_univariate(b, var);
    let ca = content(&ua);
    let cb = content(&ub);
    let c = gcd_rec(&ca, &cb);
    let mut pa = primitive_part(&ua, &ca);
    let mut pb = primitive_part(&ub, &cb);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g = loop {
        if pb.len() == 1 {
            break vec![ParamPoly::one()];
        }
        let r = pseudo_rem(&pa, &pb);
        if r.is_empty() {
            break pb;
        }
        let cr = content(&r);
        pa = pb;
        pb = primitive_part(&r, &cr);
    };
    (&c * &from_univariate(&g, var)).monic()
}

fn to_univariate(p: &ParamPoly, var: usize) -> Univariate {
    let deg = p.degree_in(var) as usize;
    let mut out = vec![ParamPoly::zero(); deg + 1];
    for (m, c) in p.terms() {
        let e = m.exp(var) as usize;
        out[e].add_term(m.with_exp(var, 0), c.clone());
    }
    out
}

fn from_univariate(u: &Univariate, var: usize) -> ParamPoly {
    let mut out = ParamPoly::zero();
    for (e, c) in u.iter().enumerate() {
        for (m, a) in c.terms() {
            out.add_term(m.with_exp(var, e as u32), a.clone());
        }
    }
    out
}

fn content(u: &Univariate) -> ParamPoly {
    let mut g = ParamPoly::zero();
    for c in u {
        g = gcd_rec(&g, c);
        if g.is_constant() && !g.is_zero() {
            return ParamPoly::one();
        }
    }
    g
}

/// Divides out the content and fixes the rational unit so the leading
/// coefficient is monic; keeps the remainder sequence from growing.
fn primitive_part(u: &Univariate, content: &ParamPoly) -> Univariate {
    let mut out: Univariate = u
        .iter()
        .map(|c| c.div_exact(content).expect("content divides coefficients"))
        .collect();
    let unit = out.last().map(|c| c.leading_coeff()).unwrap_or_else(Rational::one);
    if !unit.is_zero() && !unit.is_one() {
        let inv = unit.recip();
        for c in &mut out {
            *c = c.scale(&inv);
        }
    }
    out
}

fn trim(u: &mut Univariate) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn pseudo_rem(a: &Univariate, b: &Univariate) -> Univariate {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * bc);
        }
        trim(&mut r);
    }
    r
}

// --- ring operations ---------------------------------------------------------

impl Zero for ParamPoly {
    fn zero() -> Self {
        ParamPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamPoly {
    fn one() -> Self {
        ParamPoly::from_int(1)
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;

    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;

    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;

    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;

    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for ParamPoly {
            type Output = ParamPoly;
            fn $f(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;

    fn neg(self) -> ParamPoly {
        -&self
    }
}
