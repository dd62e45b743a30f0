//! Certificates: the witness `f`, the staircases of `B` and `M` with their
//! corner relations, and the finite presentations they induce.

mod format;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

pub use format::{deserialize, serialize, CertificateError};

use crate::engine::{CornerRelation, ProblemSpec, SolveConfig, VariableNames};
use crate::localize::{divides_power_of, TrackedScalar};
use crate::poly::text::{factors_of, render_monomial};
use crate::poly::{ExponentVector, ModuleIndex, ParamPoly, Poly, TermOrder};
use crate::staircase::Staircase;
use crate::{AlgPoly, ModVector};

/// Which half of a certificate an invariant failure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Algebra,
    Module,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Algebra => "algebra",
            Side::Module => "module",
        }
    }
}

/// The certificate invariant that failed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MalformedCertificate {
    #[error("ZeroWitness: the witness is zero")]
    ZeroWitness,
    #[error("ShapeMismatch: {0} index {1:?} does not fit the declared variables")]
    ShapeMismatch(&'static str, ModuleIndex),
    #[error("CornerMismatch: {0} corner list does not match the relation corners")]
    CornerMismatch(&'static str),
    #[error("NotAntichain: {0} corners are not an antichain")]
    NotAntichain(&'static str),
    #[error("TailNotDescending: {0} relation at {1:?} has a tail index not below its corner")]
    TailNotDescending(&'static str, ModuleIndex),
    #[error("TailOutsideStaircase: {0} relation at {1:?} uses {2:?}, which is not in the staircase")]
    TailOutsideStaircase(&'static str, ModuleIndex, ModuleIndex),
    #[error("ZeroTailCoefficient: {0} relation at {1:?} stores a zero coefficient")]
    ZeroTailCoefficient(&'static str, ModuleIndex),
    #[error("DenominatorNotInvertible: {0} relation at {1:?} has a denominator that does not divide a power of the witness")]
    DenominatorNotInvertible(&'static str, ModuleIndex),
}

/// Output of a solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub witness: ParamPoly,
    pub algebra_staircase: Staircase,
    pub algebra_corners: Vec<CornerRelation>,
    pub module_staircase: Staircase,
    pub module_corners: Vec<CornerRelation>,
    pub problem_digest: String,
    pub config: SolveConfig,
    pub names: VariableNames,
}

/// Corner lists are kept sorted descending by corner index.
fn sort_descending(rels: &mut [CornerRelation]) {
    rels.sort_by(|a, b| b.corner.cmp(&a.corner));
}

impl Certificate {
    pub(crate) fn assemble(
        problem: &ProblemSpec,
        witness: ParamPoly,
        algebra_staircase: Staircase,
        mut algebra_corners: Vec<CornerRelation>,
        module_staircase: Staircase,
        mut module_corners: Vec<CornerRelation>,
        config: SolveConfig,
    ) -> Certificate {
        sort_descending(&mut algebra_corners);
        sort_descending(&mut module_corners);
        Certificate {
            witness,
            algebra_staircase,
            algebra_corners,
            module_staircase,
            module_corners,
            problem_digest: problem.digest(),
            config,
            names: problem.names.clone(),
        }
    }

    pub fn side(&self, side: Side) -> (&Staircase, &[CornerRelation]) {
        match side {
            Side::Algebra => (&self.algebra_staircase, &self.algebra_corners),
            Side::Module => (&self.module_staircase, &self.module_corners),
        }
    }

    /// Checks every invariant; the first failure is returned.
    pub fn validate(&self) -> Result<(), MalformedCertificate> {
        if self.witness.is_zero() {
            return Err(MalformedCertificate::ZeroWitness);
        }
        let n = self.names.n();
        for side in [Side::Algebra, Side::Module] {
            let (st, rels) = self.side(side);
            let name = side.name();
            let slots = match side {
                Side::Algebra => 1,
                Side::Module => self.names.m() as u32,
            };
            if st.slots() != slots || st.nvars() != n {
                return Err(MalformedCertificate::CornerMismatch(name));
            }
            let fits = |j: &ModuleIndex| j.slot >= 1 && j.slot <= slots && j.exps.len() == n;
            for r in rels {
                if !fits(&r.corner) {
                    return Err(MalformedCertificate::ShapeMismatch(name, r.corner.clone()));
                }
                if let Some(k) = r.tail.keys().find(|k| !fits(k)) {
                    return Err(MalformedCertificate::ShapeMismatch(name, k.clone()));
                }
            }
            let listed: BTreeSet<ModuleIndex> = rels.iter().map(|r| r.corner.clone()).collect();
            if listed.len() != rels.len() || &listed != st.corners() {
                return Err(MalformedCertificate::CornerMismatch(name));
            }
            if !st.is_antichain() {
                return Err(MalformedCertificate::NotAntichain(name));
            }
            for r in rels {
                for (k, a) in &r.tail {
                    if self.config.order.cmp_index(k, &r.corner) != Ordering::Less {
                        return Err(MalformedCertificate::TailNotDescending(name, r.corner.clone()));
                    }
                    if !st.contains_unchecked(k) {
                        return Err(MalformedCertificate::TailOutsideStaircase(
                            name,
                            r.corner.clone(),
                            k.clone(),
                        ));
                    }
                    if a.is_zero() {
                        return Err(MalformedCertificate::ZeroTailCoefficient(name, r.corner.clone()));
                    }
                    if !divides_power_of(a.denominator(), &self.witness) {
                        return Err(MalformedCertificate::DenominatorNotInvertible(
                            name,
                            r.corner.clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Renders an index of either side: `x^2*y` for the algebra, `v2*x` for
    /// the module; the empty monomial is `1`.
    pub fn render_index(&self, side: Side, j: &ModuleIndex) -> String {
        render_index(&self.names, side, j)
    }
}

/// [`Certificate::render_index`] for callers holding only the names.
pub fn render_index(names: &VariableNames, side: Side, j: &ModuleIndex) -> String {
    let factors = factors_of(j.exps.as_slice(), &names.vars);
    match side {
        Side::Algebra => render_monomial(&factors),
        Side::Module if factors.is_empty() => format!("v{}", j.slot),
        Side::Module => format!("v{}*{}", j.slot, render_monomial(&factors)),
    }
}

/// Finite presentations induced by a certificate: one relation per corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    /// `X1..Xn`, the indeterminates of `A[f^-1][X1..Xn]`.
    pub indeterminates: Vec<String>,
    /// One polynomial `X^J − Σ a_JK X^K` per algebra corner.
    pub algebra_relations: Vec<AlgPoly>,
    /// `V1..Vm`, the free generators of `B<V1..Vm>`.
    pub generators: Vec<String>,
    /// One vector `ŵ_J − Σ a_JK ŵ_K` per module corner.
    pub module_relations: Vec<ModVector>,
    param_names: Vec<String>,
}

impl Presentation {
    pub fn algebra_text(&self) -> String {
        format!(
            "A[{}]/({})",
            self.indeterminates.join(", "),
            self.algebra_relations
                .iter()
                .map(|p| render_tracked(
                    p.terms().rev().map(|(e, c)| (c, factors_of(e.as_slice(), &self.indeterminates))),
                    &self.param_names
                ))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }

    pub fn module_text(&self) -> String {
        format!(
            "B<{}>/({})",
            self.generators.join(", "),
            self.module_relations
                .iter()
                .map(|v| render_tracked(
                    v.terms().rev().map(|(j, c)| {
                        let mut f = factors_of(j.exps.as_slice(), &self.indeterminates);
                        f.push(crate::poly::text::Factor::new(
                            self.generators[j.slot as usize - 1].clone(),
                            1,
                        ));
                        (c, f)
                    }),
                    &self.param_names
                ))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

fn render_tracked<'a>(
    terms: impl Iterator<Item = (&'a TrackedScalar, Vec<crate::poly::text::Factor>)>,
    params: &[String],
) -> String {
    let mut out = String::new();
    for (c, factors) in terms {
        let neg = c.numerator().leading_coeff() < num_rational::BigRational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = render_monomial(&factors);
        let coeff = mag.render(params);
        let coeff = if mag.denominator().is_one() && mag.numerator().is_compound() {
            format!("({coeff})")
        } else {
            coeff
        };
        if factors.is_empty() {
            out.push_str(&coeff);
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{coeff}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The presentations `A[f^-1][X]/(corner relations)` and
/// `B<V>/(corner relations)` of a valid certificate.
pub fn build_presentation(cert: &Certificate) -> Result<Presentation, MalformedCertificate> {
    cert.validate()?;
    let n = cert.names.n();
    let algebra_relations = cert
        .algebra_corners
        .iter()
        .map(|r| r.to_vector(n).to_poly())
        .collect::<Vec<Poly<TrackedScalar>>>();
    let module_relations = cert.module_corners.iter().map(|r| r.to_vector(n)).collect();
    Ok(Presentation {
        indeterminates: (1..=n).map(|i| format!("X{i}")).collect(),
        algebra_relations,
        generators: (1..=cert.names.m()).map(|i| format!("V{i}")).collect(),
        module_relations,
        param_names: cert.names.params.clone(),
    })
}

/// Indices with the same slot and exponents padded for rendering.
pub fn index_of_exps(slot: u32, exps: &[u32]) -> ModuleIndex {
    ModuleIndex::new(slot, ExponentVector::new(exps.to_vec()))
}

/// Whether `order` puts `k` strictly below `j`.
pub fn strictly_below(order: TermOrder, k: &ModuleIndex, j: &ModuleIndex) -> bool {
    order.cmp_index(k, j) == Ordering::Less
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::engine::{module_case_echelon, solve};

    fn cert(src: &str) -> Certificate {
        solve(&parse(src).unwrap(), &SolveConfig::default()).unwrap()
    }

    #[test]
    fn algebra_presentation_of_square_root() {
        let c = cert("params; algebra x / (x^2 - 2); module v / ();");
        let p = build_presentation(&c).unwrap();
        assert_eq!(p.algebra_relations.len(), 1);
        assert_eq!(p.algebra_text(), "A[X1]/(X1^2 - 2)");
    }

    #[test]
    fn free_presentation() {
        let c = cert("params t; algebra x, y; module v1, v2;");
        let p = build_presentation(&c).unwrap();
        assert!(p.algebra_relations.is_empty());
        assert!(p.module_relations.is_empty());
        assert_eq!(p.module_text(), "B<V1, V2>/()");
    }

    #[test]
    fn module_presentation_from_elimination() {
        let c = module_case_echelon(&parse("params t; algebra; module v1, v2 / (t*v1 - v2);").unwrap())
            .unwrap();
        let p = build_presentation(&c).unwrap();
        assert_eq!(p.module_text(), "B<V1, V2>/(V2 - t*V1)");
        let c = cert("params t; algebra x / (t*x - 1); module v;");
        let p = build_presentation(&c).unwrap();
        assert_eq!(p.algebra_text(), "A[X1]/(X1 - (1)/(t))");
    }

    #[test]
    fn presentation_count_law() {
        let c = cert("params t; algebra x, y / (x^2 - t*y, y^2 - x); module v1, v2 / (x*v1 - y*v2);");
        let p = build_presentation(&c).unwrap();
        assert_eq!(p.algebra_relations.len(), c.algebra_staircase.corners().len());
        assert_eq!(p.module_relations.len(), c.module_staircase.corners().len());
    }

    #[test]
    fn validation_catches_a_zero_witness() {
        let mut c = cert("params t; algebra x / (t*x - 1); module v;");
        c.witness = ParamPoly::zero();
        assert_eq!(c.validate(), Err(MalformedCertificate::ZeroWitness));
        assert!(build_presentation(&c).is_err());
    }

    #[test]
    fn validation_catches_bad_tails() {
        let base = cert("params t; algebra x / (t*x^2 - 1); module v;");
        base.validate().unwrap();

        let mut c = base.clone();
        let corner = c.algebra_corners[0].corner.clone();
        c.algebra_corners[0]
            .tail
            .insert(corner.clone(), TrackedScalar::one());
        assert!(matches!(c.validate(), Err(MalformedCertificate::TailNotDescending(..))));

        let mut c = base.clone();
        c.algebra_corners[0]
            .tail
            .insert(index_of_exps(1, &[0]), TrackedScalar::zero());
        assert!(matches!(c.validate(), Err(MalformedCertificate::ZeroTailCoefficient(..))));

        let mut c = base.clone();
        let bad = TrackedScalar::ratio(ParamPoly::one(), &ParamPoly::var(0) + &ParamPoly::one()).unwrap();
        c.algebra_corners[0].tail.insert(index_of_exps(1, &[1]), bad);
        assert!(matches!(c.validate(), Err(MalformedCertificate::DenominatorNotInvertible(..))));

        let mut c = base.clone();
        c.algebra_corners[0].corner = index_of_exps(1, &[3]);
        assert!(matches!(c.validate(), Err(MalformedCertificate::CornerMismatch(..))));
    }
}
