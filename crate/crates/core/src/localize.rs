//! Tracked localization of `A = Q[t1..tk]`.
//!
//! Computations run in the fraction field of `A`, but every element that gets
//! inverted is recorded in a [`WitnessAccumulator`]. The squarefree part of
//! the recorded product is the witness `f`: all denominators that can appear
//! divide a power of `f`, so everything computed lives in `A[1/f]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::ParamPoly;
use crate::scalar::Inverter;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalizeError {
    #[error("attempted to invert zero")]
    ZeroInversion,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
}

/// A fraction `numerator / denominator` with coprime parts and a monic
/// (lex-leading coefficient one) denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TrackedScalar {
    num: ParamPoly,
    den: ParamPoly,
}

impl TrackedScalar {
    pub fn from_param(p: ParamPoly) -> Self {
        TrackedScalar {
            num: p,
            den: ParamPoly::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        TrackedScalar::from_param(ParamPoly::constant(r))
    }

    /// `num / den`, normalized. `None` when `den` is zero.
    ///
    /// No inversion is recorded; callers use this only to rebuild values whose
    /// denominators are checked separately.
    pub fn ratio(num: ParamPoly, den: ParamPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(TrackedScalar::normalized(num, den))
    }

    fn normalized(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return TrackedScalar::zero();
        }
        if den.is_one() {
            return TrackedScalar { num, den };
        }
        let (mut num, mut den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        TrackedScalar { num, den }
    }

    pub fn numerator(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ParamPoly {
        &self.den
    }

    /// The constant value, when there is no parameter dependence.
    pub fn as_rational(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// Value at a point of `Q^k`.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, LocalizeError> {
        let d = self.den.eval(point).map_err(|_| LocalizeError::PoleAtPoint)?;
        if d.is_zero() {
            return Err(LocalizeError::PoleAtPoint);
        }
        let n = self.num.eval(point).map_err(|_| LocalizeError::PoleAtPoint)?;
        Ok(n / d)
    }

    /// Inverse without recording anything. Only for code paths that already
    /// know the inverted numerator divides a power of the witness.
    pub(crate) fn inverse_unrecorded(&self) -> Option<TrackedScalar> {
        if self.num.is_zero() {
            None
        } else {
            Some(TrackedScalar::normalized(self.den.clone(), self.num.clone()))
        }
    }

    /// Renders as `num` when the denominator is one, else `(num)/(den)`.
    pub fn render(&self, param_names: &[String]) -> String {
        if self.den.is_one() {
            self.num.render(param_names)
        } else {
            format!(
                "({})/({})",
                self.num.render(param_names),
                self.den.render(param_names)
            )
        }
    }
}

impl Default for TrackedScalar {
    fn default() -> Self {
        TrackedScalar::zero()
    }
}

impl fmt::Debug for TrackedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl Zero for TrackedScalar {
    fn zero() -> Self {
        TrackedScalar {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for TrackedScalar {
    fn one() -> Self {
        TrackedScalar::from_param(ParamPoly::one())
    }
}

impl Add for TrackedScalar {
    type Output = TrackedScalar;

    fn add(self, rhs: TrackedScalar) -> TrackedScalar {
        if self.den == rhs.den {
            return TrackedScalar::normalized(&self.num + &rhs.num, self.den);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        TrackedScalar::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for TrackedScalar {
    type Output = TrackedScalar;

    fn sub(self, rhs: TrackedScalar) -> TrackedScalar {
        self + (-rhs)
    }
}

impl Neg for TrackedScalar {
    type Output = TrackedScalar;

    fn neg(self) -> TrackedScalar {
        TrackedScalar {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for TrackedScalar {
    type Output = TrackedScalar;

    fn mul(self, rhs: TrackedScalar) -> TrackedScalar {
        if self.num.is_zero() || rhs.num.is_zero() {
            return TrackedScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return TrackedScalar::from_param(&self.num * &rhs.num);
        }
        TrackedScalar::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Exact zero test for elements of `A`.
pub fn is_zero_param(p: &ParamPoly) -> bool {
    p.is_zero()
}

/// Exact zero test for tracked fractions.
pub fn is_zero(s: &TrackedScalar) -> bool {
    s.is_zero()
}

/// The elements of `A` inverted so far during one solver run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WitnessAccumulator {
    factors: Vec<ParamPoly>,
}

impl WitnessAccumulator {
    pub fn new() -> Self {
        WitnessAccumulator::default()
    }

    /// Records `a` and returns `1/a`. Rational units are not recorded.
    pub fn invert(&mut self, a: &ParamPoly) -> Result<TrackedScalar, LocalizeError> {
        if a.is_zero() {
            return Err(LocalizeError::ZeroInversion);
        }
        self.record(a);
        Ok(TrackedScalar::normalized(ParamPoly::one(), a.clone()))
    }

    fn record(&mut self, a: &ParamPoly) {
        if a.is_constant() {
            return;
        }
        let r = a
            .squarefree_primitive()
            .expect("nonzero by the caller's check");
        if !self.factors.contains(&r) {
            self.factors.push(r);
        }
    }

    /// Distinct nonunit factors recorded so far, each squarefree and primitive.
    pub fn factors(&self) -> &[ParamPoly] {
        &self.factors
    }

    /// The normalized witness `f`; `1` when nothing has been inverted.
    pub fn witness(&self) -> ParamPoly {
        let product = self
            .factors
            .iter()
            .fold(ParamPoly::one(), |acc, f| &acc * f);
        product
            .squarefree_primitive()
            .expect("product of nonzero factors in a domain is nonzero")
    }
}

impl Inverter<TrackedScalar> for WitnessAccumulator {
    type Error = LocalizeError;

    fn invert(&mut self, c: &TrackedScalar) -> Result<TrackedScalar, LocalizeError> {
        if c.is_zero() {
            return Err(LocalizeError::ZeroInversion);
        }
        self.record(c.numerator());
        Ok(c.inverse_unrecorded().expect("nonzero"))
    }
}

/// Whether `d` divides some power of `f`, i.e. `d` is a unit in `A[1/f]`.
pub fn divides_power_of(d: &ParamPoly, f: &ParamPoly) -> bool {
    if d.is_zero() {
        return false;
    }
    let mut rest = d.clone();
    loop {
        if rest.is_constant() {
            return true;
        }
        let g = rest.gcd(f);
        if g.is_constant() {
            return false;
        }
        rest = rest.div_exact(&g).expect("gcd divides");
    }
}
