use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::alg::ExpandCoeff;
use super::text::{factors_of, render_terms, Factor};
use super::{ExponentVector, ModuleIndex, Poly, PolyError, TermOrder};
use crate::scalar::Coeff;

/// A sparse element of the free module `B<V1..Vm>`, written in the family
/// `x^i v_ℓ`. Algebra polynomials are the one-slot case.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModVector<C> {
    nvars: usize,
    terms: BTreeMap<ModuleIndex, C>,
}

impl<C: Coeff> ModVector<C> {
    pub fn zero(nvars: usize) -> Self {
        ModVector {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(index: ModuleIndex, c: C) -> Self {
        let mut v = ModVector::zero(index.exps.len());
        v.add_term(index, c);
        v
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (ModuleIndex, C)>,
    ) -> Result<Self, PolyError> {
        let mut v = ModVector::zero(nvars);
        for (j, c) in terms {
            if j.exps.len() != nvars {
                return Err(PolyError::ShapeMismatch(nvars, j.exps.len()));
            }
            v.add_term(j, c);
        }
        Ok(v)
    }

    pub(crate) fn add_term(&mut self, j: ModuleIndex, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(j) {
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

    /// Terms in ascending lex order of their indices.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ModuleIndex, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, j: &ModuleIndex) -> Option<&C> {
        self.terms.get(j)
    }

    /// Largest total degree of the monomial part of any index.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|j| j.degree()).max().unwrap_or(0)
    }

    /// The largest index under `order` and its coefficient.
    pub fn leading_term(&self, order: TermOrder) -> Result<(&ModuleIndex, &C), PolyError> {
        let lt = match order {
            TermOrder::Lex => self.terms.iter().next_back(),
            _ => self.terms.iter().max_by(|a, b| order.cmp_index(a.0, b.0)),
        };
        lt.ok_or(PolyError::EmptyVector)
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
        for (j, c) in &other.terms {
            out.add_term(j.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (j, c) in &other.terms {
            out.add_term(j.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = ModVector::zero(self.nvars);
        for (j, a) in &self.terms {
            out.add_term(j.clone(), a.clone() * c.clone());
        }
        out
    }

    /// `c · x^m · self`.
    pub fn mul_term(&self, m: &ExponentVector, c: &C) -> Self {
        let mut out = ModVector::zero(self.nvars);
        for (j, a) in &self.terms {
            out.add_term(j.shifted(m), a.clone() * c.clone());
        }
        out
    }

    /// The action of the algebra: `p · self`.
    pub fn mul_poly(&self, p: &Poly<C>) -> Result<Self, PolyError> {
        if p.nvars() != self.nvars {
            return Err(PolyError::ShapeMismatch(self.nvars, p.nvars()));
        }
        let mut out = ModVector::zero(self.nvars);
        for (e, c) in p.terms() {
            for (j, a) in &self.terms {
                out.add_term(j.shifted(e), a.clone() * c.clone());
            }
        }
        Ok(out)
    }

    /// The same vector with every index moved to `slot`; used to embed
    /// algebra polynomials (slot one) into other generator slots.
    pub fn with_slot(&self, slot: u32) -> Self {
        ModVector {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(j, c)| (ModuleIndex::new(slot, j.exps.clone()), c.clone()))
                .collect(),
        }
    }

    /// Reads a one-slot vector back as a polynomial.
    pub fn to_poly(&self) -> Poly<C> {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().map(|(j, c)| (j.exps.clone(), c.clone())),
        )
        .expect("exponent shapes already agree")
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> ModVector<D> {
        let mut out = ModVector::zero(self.nvars);
        for (j, c) in &self.terms {
            out.add_term(j.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs<D: Coeff, E>(
        &self,
        mut f: impl FnMut(&C) -> Result<D, E>,
    ) -> Result<ModVector<D>, E> {
        let mut out = ModVector::zero(self.nvars);
        for (j, c) in &self.terms {
            out.add_term(j.clone(), f(c)?);
        }
        Ok(out)
    }
}

impl<C: Coeff> Add for &ModVector<C> {
    type Output = ModVector<C>;

    fn add(self, rhs: &ModVector<C>) -> ModVector<C> {
        self.checked_add(rhs).expect("vector shape mismatch")
    }
}

impl<C: Coeff> Sub for &ModVector<C> {
    type Output = ModVector<C>;

    fn sub(self, rhs: &ModVector<C>) -> ModVector<C> {
        self.checked_sub(rhs).expect("vector shape mismatch")
    }
}

impl<C: Coeff> Neg for &ModVector<C> {
    type Output = ModVector<C>;

    fn neg(self) -> ModVector<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Coeff + ExpandCoeff> ModVector<C> {
    /// Renders terms in descending lex order of the index, e.g. `x*v1 - t*v2`.
    pub fn render(
        &self,
        param_names: &[String],
        var_names: &[String],
        gen_names: &[String],
    ) -> String {
        render_terms(self.terms.iter().rev().flat_map(|(j, c)| {
            let mut tail = factors_of(j.exps.as_slice(), var_names);
            let gen = gen_names
                .get(j.slot as usize - 1)
                .cloned()
                .unwrap_or_else(|| format!("v{}", j.slot));
            tail.push(Factor::new(gen, 1));
            c.expand(param_names).into_iter().map(move |(r, mut f)| {
                f.extend(tail.iter().cloned());
                (r, f)
            })
        }))
    }
}

impl<C: fmt::Debug> fmt::Debug for ModVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ParamPoly, Rational};
    use proptest::prelude::*;

    fn mi(slot: u32, e: &[u32]) -> ModuleIndex {
        ModuleIndex::new(slot, e.to_vec())
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn leading_term_is_lex_maximum() {
        let v = ModVector::from_terms(2, [(mi(1, &[0, 0]), q(3)), (mi(1, &[2, 1]), q(5))]).unwrap();
        assert_eq!(v.leading_term(TermOrder::Lex).unwrap(), (&mi(1, &[2, 1]), &q(5)));
    }

    #[test]
    fn leading_term_of_singleton() {
        let t = ParamPoly::var(0);
        let v = ModVector::term(mi(2, &[0, 0]), t.clone());
        assert_eq!(v.leading_term(TermOrder::Lex).unwrap(), (&mi(2, &[0, 0]), &t));
    }

    #[test]
    fn leading_term_of_zero_vector() {
        let v = ModVector::<Rational>::zero(2);
        assert_eq!(v.leading_term(TermOrder::Lex), Err(PolyError::EmptyVector));
    }

    #[test]
    fn scalar_action_is_associative() {
        // t·(t v1) − t² v1 = 0
        let t = ParamPoly::var(0);
        let tv = ModVector::term(mi(1, &[]), t.clone());
        let t2v = ModVector::term(mi(1, &[]), &t * &t);
        assert!((&tv.scale(&t) - &t2v).is_zero());
    }

    #[test]
    fn algebra_action() {
        let x = Poly::<Rational>::var(1, 0);
        let v = ModVector::term(mi(2, &[0]), q(1));
        let xv = v.mul_poly(&(&x + &Poly::constant(1, q(1)))).unwrap();
        assert_eq!(xv.num_terms(), 2);
        assert_eq!(xv.coeff(&mi(2, &[1])), Some(&q(1)));
        assert!(v.mul_poly(&Poly::var(2, 0)).is_err());
    }

    #[test]
    fn rendering() {
        let t = ParamPoly::var(0);
        let v = ModVector::from_terms(
            1,
            [(mi(1, &[1]), ParamPoly::from_int(1)), (mi(2, &[0]), -t)],
        )
        .unwrap();
        let s = v.render(&["t".into()], &["x".into()], &["v1".into(), "v2".into()]);
        assert_eq!(s, "-t*v2 + x*v1");
    }

    fn brute_max(v: &ModVector<Rational>) -> ModuleIndex {
        let mut all: Vec<_> = v.terms().map(|(j, _)| j.clone()).collect();
        all.sort();
        all.pop().unwrap()
    }

    fn vector() -> impl Strategy<Value = ModVector<Rational>> {
        prop::collection::vec((1u32..3, 0u32..3, 0u32..3, -3i64..3), 1..6).prop_map(|ts| {
            ModVector::from_terms(2, ts.into_iter().map(|(s, a, b, c)| (mi(s, &[a, b]), q(c)))).unwrap()
        })
    }

    #[test]
    fn leading_term_with_cancellation() {
        // w(1,(1,0)) − w(1,(0,3))
        let v = ModVector::from_terms(2, [(mi(1, &[1, 0]), q(1)), (mi(1, &[0, 3]), q(-1))]).unwrap();
        assert_eq!(v.leading_term(TermOrder::Lex).unwrap().0, &brute_max(&v));
        assert_eq!(v.leading_term(TermOrder::Lex).unwrap(), (&mi(1, &[1, 0]), &q(1)));
    }

    proptest! {
        #[test]
        fn leading_index_dominates(v in vector()) {
            prop_assume!(!v.is_zero());
            for ord in [TermOrder::Lex, TermOrder::GradedLex] {
                let (lead, _) = v.leading_term(ord).unwrap();
                for (j, _) in v.terms() {
                    prop_assert!(ord.cmp_index(lead, j) != std::cmp::Ordering::Less);
                }
            }
            prop_assert_eq!(v.leading_term(TermOrder::Lex).unwrap().0, &brute_max(&v));
        }

        #[test]
        fn module_axioms(a in vector(), b in vector(), c in -4i64..4) {
            prop_assert_eq!(&a + &b, &b + &a);
            let c = q(c);
            prop_assert_eq!((&a + &b).scale(&c), &a.scale(&c) + &b.scale(&c));
            prop_assert!((&(&a - &b) + &b) == a);
        }
    }
}
