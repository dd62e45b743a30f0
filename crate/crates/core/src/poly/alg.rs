use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::text::{factors_of, render_terms, Factor};
use super::{ExponentVector, ModVector, ModuleIndex, ParamPoly, PolyError, TermOrder};
use crate::scalar::Coeff;
use crate::Rational;

/// A sparse polynomial in `nvars` algebra variables with coefficients in `C`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<ExponentVector, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Poly::monomial(ExponentVector::zero(nvars), c)
    }

    pub fn monomial(exps: ExponentVector, c: C) -> Self {
        let mut p = Poly::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(ExponentVector::unit(nvars, i), C::one())
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (ExponentVector, C)>,
    ) -> Result<Self, PolyError> {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::ShapeMismatch(nvars, e.len()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Option<&C> {
        self.terms.get(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn leading_term(&self, order: TermOrder) -> Option<(&ExponentVector, &C)> {
        match order {
            TermOrder::Lex => self.terms.iter().next_back(),
            _ => self.terms.iter().max_by(|a, b| order.cmp_exps(a.0, b.0)),
        }
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            Err(PolyError::ShapeMismatch(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn mul_monomial(&self, m: &ExponentVector) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs<D: Coeff, E>(
        &self,
        mut f: impl FnMut(&C) -> Result<D, E>,
    ) -> Result<Poly<D>, E> {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// The vector `self · v_slot`.
    pub fn to_vector(&self, slot: u32) -> ModVector<C> {
        ModVector::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (ModuleIndex::new(slot, e.clone()), c.clone())),
        )
        .expect("exponent shapes already agree")
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;

    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_add(rhs).expect("polynomial shape mismatch")
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;

    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_sub(rhs).expect("polynomial shape mismatch")
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_mul(rhs).expect("polynomial shape mismatch")
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;

    fn neg(self) -> Poly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

/// Coefficients that can be expanded into rational terms for rendering.
pub trait ExpandCoeff {
    /// Flat terms `(rational, parameter factors)` in descending order.
    fn expand(&self, param_names: &[String]) -> Vec<(Rational, Vec<Factor>)>;
}

impl ExpandCoeff for Rational {
    fn expand(&self, _: &[String]) -> Vec<(Rational, Vec<Factor>)> {
        vec![(self.clone(), Vec::new())]
    }
}

impl ExpandCoeff for ParamPoly {
    fn expand(&self, param_names: &[String]) -> Vec<(Rational, Vec<Factor>)> {
        self.terms()
            .rev()
            .map(|(m, c)| {
                let factors = m
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let name = param_names
                            .get(i)
                            .cloned()
                            .unwrap_or_else(|| format!("t{}", i + 1));
                        Factor::new(name, e)
                    })
                    .collect();
                (c.clone(), factors)
            })
            .collect()
    }
}

impl<C: Coeff + ExpandCoeff> Poly<C> {
    /// Renders terms in descending lex order of the algebra monomial, each
    /// coefficient expanded in place: `3*t^2*x*y - 1/2`.
    pub fn render(&self, param_names: &[String], var_names: &[String]) -> String {
        render_terms(self.terms.iter().rev().flat_map(|(e, c)| {
            let vars = factors_of(e.as_slice(), var_names);
            c.expand(param_names).into_iter().map(move |(r, mut f)| {
                f.extend(vars.iter().cloned());
                (r, f)
            })
        }))
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}
