//! Exact polynomial arithmetic: exponent vectors and module indices with their
//! term orders, sparse polynomials and module vectors generic over the
//! coefficient ring, and parameter polynomials over `Q`.

mod alg;
mod param;
pub mod text;
mod vector;

use std::cmp::Ordering;
use std::fmt;

pub use alg::{ExpandCoeff, Poly};
pub use param::{ParamMonomial, ParamPoly};
pub use vector::ModVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("shape mismatch: {0} vs {1} variables")]
    ShapeMismatch(usize, usize),
    #[error("module slot mismatch: {0} vs {1} generators")]
    SlotMismatch(u32, u32),
    #[error("leading term of the zero vector")]
    EmptyVector,
    #[error("operation requires a nonzero input")]
    ZeroInput,
}

/// Exponents `(i1, .., in)` of a monomial `x1^i1 .. xn^in`.
///
/// The derived ordering is lexicographic, which is the term order used unless
/// a graded order is requested. It is only meaningful between vectors of the
/// same length; use [`ExponentVector::try_cmp`] where shapes are not known to
/// agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The exponent vector of the single variable `x_{i+1}`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if !self.divides(other) {
            return None;
        }
        Some(ExponentVector(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Lexicographic comparison, refusing vectors of different lengths.
    pub fn try_cmp(&self, other: &ExponentVector) -> Result<Ordering, PolyError> {
        if self.len() != other.len() {
            return Err(PolyError::ShapeMismatch(self.len(), other.len()));
        }
        Ok(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl<const N: usize> From<[u32; N]> for ExponentVector {
    fn from(v: [u32; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

/// An index `(ℓ, i1..in)` of the family `x^i v_ℓ`, with `ℓ` one-based.
///
/// Ordered lexicographically with the slot first, so every term in slot `ℓ`
/// lies below every term in slot `ℓ + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleIndex {
    pub slot: u32,
    pub exps: ExponentVector,
}

impl ModuleIndex {
    pub fn new(slot: u32, exps: impl Into<ExponentVector>) -> Self {
        ModuleIndex {
            slot,
            exps: exps.into(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.exps.degree()
    }

    /// Same slot and componentwise `self ≤ other`.
    pub fn divides(&self, other: &ModuleIndex) -> bool {
        self.slot == other.slot && self.exps.divides(&other.exps)
    }

    pub fn shifted(&self, mono: &ExponentVector) -> ModuleIndex {
        ModuleIndex {
            slot: self.slot,
            exps: self.exps.mul(mono),
        }
    }

    pub fn try_cmp(&self, other: &ModuleIndex) -> Result<Ordering, PolyError> {
        if self.exps.len() != other.exps.len() {
            return Err(PolyError::ShapeMismatch(self.exps.len(), other.exps.len()));
        }
        Ok(self.cmp(other))
    }
}

impl fmt::Debug for ModuleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{:?})", self.slot, self.exps)
    }
}

/// Monomial order used by completion and normal forms.
///
/// Module indices are always compared position-first; the order only affects
/// how exponent vectors within a slot compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    #[default]
    Lex,
    GradedLex,
}

impl TermOrder {
    pub fn cmp_exps(self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::GradedLex => a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)),
        }
    }

    pub fn cmp_index(self, a: &ModuleIndex, b: &ModuleIndex) -> Ordering {
        a.slot
            .cmp(&b.slot)
            .then_with(|| self.cmp_exps(&a.exps, &b.exps))
    }

    pub fn name(self) -> &'static str {
        match self {
            TermOrder::Lex => "lex",
            TermOrder::GradedLex => "grlex",
        }
    }

    pub fn from_name(s: &str) -> Option<TermOrder> {
        match s {
            "lex" => Some(TermOrder::Lex),
            "grlex" => Some(TermOrder::GradedLex),
            _ => None,
        }
    }
}

/// All exponent vectors in `n` variables of total degree at most `d`.
pub fn monomials_up_to_degree(n: usize, d: u32) -> Vec<ExponentVector> {
    fn rec(n: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if cur.len() == n {
            out.push(ExponentVector(cur.clone()));
            return;
        }
        for e in 0..=budget {
            cur.push(e);
            rec(n, budget - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mi(slot: u32, e: &[u32]) -> ModuleIndex {
        ModuleIndex::new(slot, e.to_vec())
    }

    #[test]
    fn slot_compares_first() {
        assert_eq!(mi(1, &[0, 7]).cmp(&mi(2, &[0, 0])), Ordering::Less);
    }

    #[test]
    fn equal_indices() {
        let a = ExponentVector::from([2, 5]);
        assert_eq!(a.try_cmp(&a.clone()).unwrap(), Ordering::Equal);
    }

    #[test]
    fn corners_compare_by_first_coordinate() {
        let a = ExponentVector::from([5, 3]);
        let b = ExponentVector::from([2, 5]);
        assert_eq!(a.try_cmp(&b).unwrap(), Ordering::Greater);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let a = ExponentVector::from([1, 2]);
        let b = ExponentVector::from([1, 2, 3]);
        assert_eq!(a.try_cmp(&b), Err(PolyError::ShapeMismatch(2, 3)));
        assert!(mi(1, &[1]).try_cmp(&mi(1, &[1, 0])).is_err());
    }

    #[test]
    fn graded_order_compares_degree_first() {
        let a = ExponentVector::from([1, 0]);
        let b = ExponentVector::from([0, 2]);
        assert_eq!(TermOrder::Lex.cmp_exps(&a, &b), Ordering::Greater);
        assert_eq!(TermOrder::GradedLex.cmp_exps(&a, &b), Ordering::Less);
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_up_to_degree(2, 2).len(), 6);
        assert_eq!(monomials_up_to_degree(3, 3).len(), 20);
        assert_eq!(monomials_up_to_degree(0, 5).len(), 1);
    }

    fn index() -> impl Strategy<Value = ModuleIndex> {
        (1u32..4, prop::collection::vec(0u32..5, 3)).prop_map(|(s, e)| ModuleIndex::new(s, e))
    }

    proptest! {
        #[test]
        fn index_order_is_total(a in index(), b in index(), c in index()) {
            for ord in [TermOrder::Lex, TermOrder::GradedLex] {
                let ab = ord.cmp_index(&a, &b);
                prop_assert_eq!(ab, ord.cmp_index(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                if ab != Ordering::Greater && ord.cmp_index(&b, &c) != Ordering::Greater {
                    prop_assert!(ord.cmp_index(&a, &c) != Ordering::Greater);
                }
            }
        }

        #[test]
        fn orders_are_multiplicative(a in index(), b in index(), m in prop::collection::vec(0u32..4, 3)) {
            let m = ExponentVector::new(m);
            for ord in [TermOrder::Lex, TermOrder::GradedLex] {
                prop_assert_eq!(ord.cmp_index(&a, &b), ord.cmp_index(&a.shifted(&m), &b.shifted(&m)));
            }
        }
    }
}
