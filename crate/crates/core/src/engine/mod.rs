//! The solver.
//!
//! [`solve`] completes the algebra relations and then the module relations
//! over the fraction field of `A`, inverting leading coefficients through a
//! [`WitnessAccumulator`]. The leading indices of the completed, reduced
//! systems are the corners of the good families for `B` and `M`; the
//! completed rules solved for their corners are the corner relations; the
//! accumulated product of inverted elements is the witness.
//!
//! [`module_case_echelon`] handles the case without algebra variables by
//! plain elimination on the relation matrix and serves as a cross-check.

mod completion;
mod echelon;
mod problem;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

pub use completion::CapDiagnostics;
pub use echelon::module_case_echelon;
pub use problem::{ProblemSpec, VariableNames};

use crate::certificate::Certificate;
use crate::localize::{LocalizeError, TrackedScalar, WitnessAccumulator};
use crate::poly::{ModuleIndex, TermOrder};
use crate::ModVector;
use crate::staircase::Staircase;
use completion::{Completion, CompletionError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("degree cap {} exceeded on the {} side (degree {} at {:?}; {} basis elements, {} pairs pending)",
        .0.cap, .0.side, .0.offending_degree, .0.offending_lead, .0.basis_len, .0.pending_pairs)]
    CapExceeded(Box<CapDiagnostics>),
    #[error("malformed problem: {0}")]
    Malformed(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("elimination path needs a problem without algebra variables (got {0})")]
    NotModuleCase(usize),
    #[error("corner relations must have distinct corners forming an antichain")]
    RulesNotAntichain,
    #[error(transparent)]
    Localize(#[from] LocalizeError),
}

/// Knobs for one solver run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SolveConfig {
    pub order: TermOrder,
    /// Upper bound on the degree of any completed element; `None` means the
    /// default `4 · (1 + max relation degree)`.
    pub degree_cap: Option<u32>,
    pub deterministic_seed: u64,
}

/// `w_J = Σ_K a_JK w_K` with every `K` strictly below `J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CornerRelation {
    pub corner: ModuleIndex,
    pub tail: BTreeMap<ModuleIndex, TrackedScalar>,
}

impl CornerRelation {
    /// The relation as the vector `w_J − Σ a_JK w_K`.
    pub fn to_vector(&self, nvars: usize) -> ModVector {
        let mut v = ModVector::term(self.corner.clone(), TrackedScalar::one());
        for (k, a) in &self.tail {
            v = &v - &ModVector::term(k.clone(), a.clone());
        }
        debug_assert_eq!(v.nvars(), nvars);
        v
    }

    /// Reads a monic completed element as a relation solved for its lead.
    pub(crate) fn from_monic(v: &ModVector, order: TermOrder) -> CornerRelation {
        let (lead, _) = v.leading_term(order).expect("completed elements are nonzero");
        let tail = v
            .terms()
            .filter(|(j, _)| *j != lead)
            .map(|(j, c)| (j.clone(), -c.clone()))
            .collect();
        CornerRelation {
            corner: lead.clone(),
            tail,
        }
    }

    pub fn degree(&self) -> u32 {
        self.corner.degree()
    }
}

/// `4 · (1 + max input relation degree)`.
pub fn default_degree_cap(problem: &ProblemSpec) -> u32 {
    4 * (1 + problem.max_relation_degree())
}

fn completion_error(e: CompletionError<LocalizeError>) -> EngineError {
    match e {
        CompletionError::Cap(d) => EngineError::CapExceeded(d),
        CompletionError::Invert(e) => EngineError::Localize(e),
    }
}

/// Computes a witness and staircase certificate for `problem`.
pub fn solve(problem: &ProblemSpec, cfg: &SolveConfig) -> Result<Certificate, EngineError> {
    problem.validate()?;
    let max_deg = problem.max_relation_degree();
    let cap = match cfg.degree_cap {
        Some(c) if c < max_deg => {
            return Err(EngineError::InvalidConfig(format!(
                "degree cap {c} is below the largest relation degree {max_deg}"
            )))
        }
        Some(c) => c,
        None => default_degree_cap(problem),
    };
    let order = cfg.order;
    let n = problem.names.n();
    let m = problem.names.m() as u32;
    let mut acc = WitnessAccumulator::new();

    let algebra_basis = {
        let mut run = Completion::new(order, cap, "algebra", &mut acc);
        for rel in &problem.algebra_relations {
            let v = rel.map_coeffs(|p| TrackedScalar::from_param(p.clone())).to_vector(1);
            if !v.is_zero() {
                run.add(&v).map_err(completion_error)?;
            }
        }
        run.run().map_err(completion_error)?;
        run.finish().map_err(completion_error)?
    };

    let module_basis = {
        let mut run = Completion::new(order, cap, "module", &mut acc);
        run.seed((1..=m).flat_map(|slot| algebra_basis.iter().map(move |g| g.with_slot(slot))));
        for rel in &problem.module_relations {
            let v = rel.map_coeffs(|p| TrackedScalar::from_param(p.clone()));
            if !v.is_zero() {
                run.add(&v).map_err(completion_error)?;
            }
        }
        run.run().map_err(completion_error)?;
        run.finish().map_err(completion_error)?
    };

    let algebra_corners: Vec<CornerRelation> = algebra_basis
        .iter()
        .map(|v| CornerRelation::from_monic(v, order))
        .collect();
    let module_corners: Vec<CornerRelation> = module_basis
        .iter()
        .map(|v| CornerRelation::from_monic(v, order))
        .collect();

    Ok(Certificate::assemble(
        problem,
        acc.witness(),
        Staircase::from_removed(1, n, algebra_corners.iter().map(|r| &r.corner))
            .map_err(|e| EngineError::Malformed(e.to_string()))?,
        algebra_corners,
        Staircase::from_removed(m, n, module_corners.iter().map(|r| &r.corner))
            .map_err(|e| EngineError::Malformed(e.to_string()))?,
        module_corners,
        *cfg,
    ))
}

/// Rewrites `v` with the corner relations until only staircase indices
/// remain.
///
/// Corner relations are monic in their corner, so rewriting never inverts
/// anything.
pub fn reduce_normal_form(
    v: &ModVector,
    rules: &[CornerRelation],
    order: TermOrder,
) -> Result<ModVector, EngineError> {
    let corners: Vec<ModuleIndex> = rules.iter().map(|r| r.corner.clone()).collect();
    for (i, a) in corners.iter().enumerate() {
        for (j, b) in corners.iter().enumerate() {
            if i != j && a.divides(b) {
                return Err(EngineError::RulesNotAntichain);
            }
        }
        if a.exps.len() != v.nvars() {
            return Err(EngineError::Malformed(format!(
                "rule {a:?} does not match a vector in {} variables",
                v.nvars()
            )));
        }
    }
    let vectors: Vec<ModVector> = rules.iter().map(|r| r.to_vector(v.nvars())).collect();
    Ok(completion::reduce_full(v, &vectors, &corners, order))
}

/// Whether the completion and elimination paths agree on a problem without
/// algebra variables: same staircases, witnesses equal up to a unit.
pub fn agree_with_general(problem: &ProblemSpec) -> Result<bool, EngineError> {
    let general = solve(problem, &SolveConfig::default())?;
    let echelon = module_case_echelon(problem)?;
    let unit_equal = general.witness.primitive() == echelon.witness.primitive();
    Ok(unit_equal
        && general.algebra_staircase == echelon.algebra_staircase
        && general.module_staircase == echelon.module_staircase)
}

/// Whether a tracked scalar is zero; re-exported for callers that only see
/// the engine.
pub fn is_zero(s: &TrackedScalar) -> bool {
    s.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::ParamPoly;

    fn cert(src: &str) -> Certificate {
        solve(&parse(src).unwrap(), &SolveConfig::default()).unwrap()
    }

    fn scalar(p: ParamPoly) -> TrackedScalar {
        TrackedScalar::from_param(p)
    }

    fn t() -> ParamPoly {
        ParamPoly::var(0)
    }

    fn mi(slot: u32, e: &[u32]) -> ModuleIndex {
        ModuleIndex::new(slot, e.to_vec())
    }

    #[test]
    fn square_root_of_two() {
        let c = cert("params; algebra x / (x^2 - 2); module v / ();");
        assert_eq!(c.witness, ParamPoly::from_int(1));
        assert_eq!(c.algebra_corners.len(), 1);
        let r = &c.algebra_corners[0];
        assert_eq!(r.corner, mi(1, &[2]));
        assert_eq!(r.tail, [(mi(1, &[0]), scalar(ParamPoly::from_int(2)))].into_iter().collect());
        assert_eq!(c.algebra_staircase.count_up_to_degree(10), 2);
        // M = B: one slot, corner x^2 v1
        assert_eq!(c.module_corners.len(), 1);
        assert_eq!(c.module_corners[0].corner, mi(1, &[2]));
    }

    #[test]
    fn inverting_a_parameter() {
        let c = cert("params t; algebra x / (t*x - 1); module v / ();");
        assert_eq!(c.witness, t());
        let r = &c.algebra_corners[0];
        assert_eq!(r.corner, mi(1, &[1]));
        assert_eq!(
            r.tail,
            [(mi(1, &[0]), TrackedScalar::ratio(ParamPoly::from_int(1), t()).unwrap())]
                .into_iter()
                .collect()
        );
        assert_eq!(c.algebra_staircase.count_up_to_degree(5), 1);
    }

    #[test]
    fn torsion_module_dies() {
        let c = cert("params t; algebra; module v1 / (t*v1);");
        assert_eq!(c.witness, t());
        assert!(c.module_staircase.is_empty_family());
        assert_eq!(c.module_corners.len(), 1);
        assert!(c.module_corners[0].tail.is_empty());
    }

    #[test]
    fn empty_problem() {
        let c = cert("params; algebra; module;");
        assert_eq!(c.witness, ParamPoly::from_int(1));
        assert!(c.algebra_corners.is_empty());
        assert!(c.module_staircase.is_empty_family());
    }

    #[test]
    fn zero_relations_are_skipped() {
        let c = cert("params t; algebra x / (x - x, 0); module v / (0);");
        assert_eq!(c.witness, ParamPoly::from_int(1));
        assert!(c.algebra_corners.is_empty());
        assert!(c.module_corners.is_empty());
    }

    #[test]
    fn normal_forms_with_a_corner_rule() {
        let c = cert("params; algebra x / (x^2 - 2); module v / ();");
        let rules = &c.algebra_corners;
        let x = |e: u32| ModVector::term(mi(1, &[e]), TrackedScalar::one());
        let two = |e: u32| ModVector::term(mi(1, &[e]), TrackedScalar::from_param(ParamPoly::from_int(2)));
        assert_eq!(reduce_normal_form(&x(2), rules, TermOrder::Lex).unwrap(), two(0));
        assert_eq!(reduce_normal_form(&x(3), rules, TermOrder::Lex).unwrap(), two(1));
        assert_eq!(reduce_normal_form(&x(1), rules, TermOrder::Lex).unwrap(), x(1));
    }

    #[test]
    fn normal_form_rejects_non_antichain_rules() {
        let r = |e: u32| CornerRelation {
            corner: mi(1, &[e]),
            tail: BTreeMap::new(),
        };
        let v = ModVector::zero(1);
        assert_eq!(
            reduce_normal_form(&v, &[r(1), r(2)], TermOrder::Lex),
            Err(EngineError::RulesNotAntichain)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let p = parse("params; algebra a, b, c, d / (c - d^3, b - c^3, a - b^3); module;").unwrap();
        let err = solve(&p, &SolveConfig::default()).unwrap_err();
        match err {
            EngineError::CapExceeded(d) => {
                assert_eq!(d.cap, 16);
                assert!(d.offending_degree > 16);
            }
            other => panic!("unexpected {other:?}"),
        }
        let cfg = SolveConfig {
            degree_cap: Some(1),
            ..SolveConfig::default()
        };
        assert!(matches!(solve(&p, &cfg), Err(EngineError::InvalidConfig(_))));
        let roomy = SolveConfig {
            degree_cap: Some(27),
            ..SolveConfig::default()
        };
        let c = solve(&p, &roomy).unwrap();
        assert_eq!(c.algebra_corners.len(), 3);
    }

    #[test]
    fn graded_order_changes_the_staircase() {
        let src = "params; algebra x, y / (x - y^2); module;";
        let lex = cert(src);
        assert_eq!(lex.algebra_corners[0].corner, mi(1, &[1, 0]));
        let gr = solve(
            &parse(src).unwrap(),
            &SolveConfig {
                order: TermOrder::GradedLex,
                ..SolveConfig::default()
            },
        )
        .unwrap();
        assert_eq!(gr.algebra_corners[0].corner, mi(1, &[0, 2]));
    }

    #[test]
    fn relations_reduce_to_zero() {
        let p = parse(
            "params t; algebra x, y / (t*x^2 - y, x*y - t); module v1, v2 / (x*v1 - t*v2, y*v2 - v1);",
        )
        .unwrap();
        let c = solve(&p, &SolveConfig::default()).unwrap();
        for rel in &p.algebra_relations {
            let v = rel.map_coeffs(|p| scalar(p.clone())).to_vector(1);
            assert!(reduce_normal_form(&v, &c.algebra_corners, TermOrder::Lex).unwrap().is_zero());
        }
        for rel in &p.module_relations {
            let v = rel.map_coeffs(|p| scalar(p.clone()));
            let nf = reduce_normal_form(&v, &c.module_corners, TermOrder::Lex).unwrap();
            assert!(nf.is_zero());
            // idempotence
            let once = reduce_normal_form(&(&v + &ModVector::term(mi(1, &[0, 3]), scalar(t()))), &c.module_corners, TermOrder::Lex).unwrap();
            assert_eq!(reduce_normal_form(&once, &c.module_corners, TermOrder::Lex).unwrap(), once);
        }
        for r in c.algebra_corners.iter().chain(&c.module_corners) {
            for k in r.tail.keys() {
                assert_eq!(TermOrder::Lex.cmp_index(k, &r.corner), std::cmp::Ordering::Less);
                assert!(crate::localize::divides_power_of(r.tail[k].denominator(), &c.witness));
            }
        }
    }
}
