//! Independent certificate checking.
//!
//! Nothing here touches solver state. The symbolic checks use their own
//! rewriting loop over the certificate's corner relations, and the numeric
//! checks run their own completion over `Q` after substituting a point where
//! the witness does not vanish.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::{Certificate, Side};
use crate::engine::{ProblemSpec, VariableNames};
use crate::localize::{divides_power_of, TrackedScalar};
use crate::poly::{ExponentVector, ModVector, ModuleIndex, ParamPoly, TermOrder};
use crate::staircase::{is_antichain, Staircase};
use crate::{Rational, RationalVector};

/// Points tried per trial before giving up.
pub const SAMPLING_ATTEMPTS: u32 = 1000;
/// Rewriting steps allowed per symbolic normal form.
const STEP_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub trials: u32,
    pub seed: u64,
    /// Overrides `max relation degree + max corner degree + 2`.
    pub degree_bound: Option<u32>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 5,
            seed: 0,
            degree_bound: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub specialization_points: Vec<Vec<Rational>>,
}

impl VerifyReport {
    /// One line per check: the name, PASS or FAIL, then the detail.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{}: {verdict} — {}", c.name, c.detail);
        }
        out
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, outcome: Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.passed &= passed;
        self.checks.push(CheckResult {
            name,
            passed,
            detail,
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("WrongProblem: certificate digest {found} does not match problem digest {expected}")]
    WrongProblem { expected: String, found: String },
    #[error("SamplingExhausted: no point with f != 0 after {0} attempts")]
    SamplingExhausted(u32),
    #[error("PointOutsideWitnessLocus: the witness vanishes at the point")]
    PointOutsideWitnessLocus,
    #[error("invalid options: {0}")]
    InvalidOptions(String),
}

/// A problem with the parameters replaced by a rational point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializedProblem {
    pub point: Vec<Rational>,
    /// The substituted problem; it declares no parameters.
    pub problem: ProblemSpec,
}

impl SpecializedProblem {
    fn algebra_vectors(&self) -> Vec<RationalVector> {
        self.problem
            .algebra_relations
            .iter()
            .map(|r| r.map_coeffs(constant_of).to_vector(1))
            .collect()
    }

    /// Module relations together with every algebra relation in every slot.
    fn module_vectors(&self) -> Vec<RationalVector> {
        let m = self.problem.names.m() as u32;
        let mut out: Vec<RationalVector> = self
            .problem
            .module_relations
            .iter()
            .map(|r| r.map_coeffs(constant_of))
            .collect();
        for a in self.algebra_vectors() {
            out.extend((1..=m).map(|slot| a.with_slot(slot)));
        }
        out
    }
}

fn constant_of(p: &ParamPoly) -> Rational {
    p.as_constant().expect("specialized coefficients are constants")
}

/// Substitutes `point` for the parameters.
pub fn specialize(
    problem: &ProblemSpec,
    point: &[Rational],
    f: &ParamPoly,
) -> Result<SpecializedProblem, VerifyError> {
    if point.len() != problem.names.k() {
        return Err(VerifyError::InvalidOptions(format!(
            "point has {} coordinates, expected {}",
            point.len(),
            problem.names.k()
        )));
    }
    match f.eval(point) {
        Ok(v) if !v.is_zero() => {}
        _ => return Err(VerifyError::PointOutsideWitnessLocus),
    }
    let at = |p: &ParamPoly| ParamPoly::constant(p.eval(point).expect("point has k coordinates"));
    Ok(SpecializedProblem {
        point: point.to_vec(),
        problem: ProblemSpec {
            names: VariableNames {
                params: Vec::new(),
                ..problem.names.clone()
            },
            algebra_relations: problem.algebra_relations.iter().map(|r| r.map_coeffs(at)).collect(),
            module_relations: problem.module_relations.iter().map(|r| r.map_coeffs(at)).collect(),
        },
    })
}

/// Whether `D(f)` is a dense open of `Spec A`; for the domain `A` this is
/// `f != 0`.
pub fn density_witness(cert: &Certificate) -> bool {
    !cert.witness.is_zero()
}

// ---------------------------------------------------------------------------
// symbolic rewriting

type Sparse = BTreeMap<ModuleIndex, TrackedScalar>;

fn accumulate(v: &mut Sparse, j: ModuleIndex, c: TrackedScalar) {
    if c.is_zero() {
        return;
    }
    let sum = match v.remove(&j) {
        Some(old) => old + c,
        None => c,
    };
    if !sum.is_zero() {
        v.insert(j, sum);
    }
}

/// `corner − tail` as a sparse map.
fn rule_vector(corner: &ModuleIndex, tail: &Sparse) -> Sparse {
    let mut v = Sparse::new();
    accumulate(&mut v, corner.clone(), TrackedScalar::one());
    for (k, a) in tail {
        accumulate(&mut v, k.clone(), -a.clone());
    }
    v
}

/// Rewrites the largest reducible index first until nothing is reducible.
fn rewrite(mut v: Sparse, rules: &[(ModuleIndex, Sparse)], order: TermOrder) -> Result<Sparse, String> {
    for _ in 0..STEP_LIMIT {
        let pick = v
            .keys()
            .filter(|j| rules.iter().any(|(c, _)| c.divides(j)))
            .max_by(|a, b| order.cmp_index(a, b))
            .cloned();
        let Some(j) = pick else {
            return Ok(v);
        };
        let c = v.remove(&j).expect("picked from the map");
        let (corner, tail) = rules.iter().find(|(c, _)| c.divides(&j)).expect("reducible");
        let shift = corner.exps.quotient_of(&j.exps).expect("corner divides");
        for (k, a) in tail {
            accumulate(&mut v, k.shifted(&shift), c.clone() * a.clone());
        }
    }
    Err(format!("rewriting did not finish within {STEP_LIMIT} steps"))
}

fn shift_sparse(v: &Sparse, m: &ExponentVector) -> Sparse {
    v.iter().map(|(j, c)| (j.shifted(m), c.clone())).collect()
}

fn to_sparse(v: &ModVector<ParamPoly>) -> Sparse {
    v.terms()
        .map(|(j, c)| (j.clone(), TrackedScalar::from_param(c.clone())))
        .collect()
}

fn rules_of(cert: &Certificate, side: Side) -> Vec<(ModuleIndex, Sparse)> {
    cert.side(side)
        .1
        .iter()
        .map(|r| (r.corner.clone(), r.tail.clone()))
        .collect()
}

fn tails_descend(cert: &Certificate) -> bool {
    [Side::Algebra, Side::Module].iter().all(|&s| {
        cert.side(s).1.iter().all(|r| {
            r.tail
                .keys()
                .all(|k| cert.config.order.cmp_index(k, &r.corner).is_lt())
        })
    })
}

fn check_denominators(cert: &Certificate) -> Result<String, String> {
    let mut count = 0;
    for side in [Side::Algebra, Side::Module] {
        for r in cert.side(side).1 {
            for a in r.tail.values() {
                count += 1;
                if !divides_power_of(a.denominator(), &cert.witness) {
                    return Err(format!(
                        "{} relation at {} has denominator {} not dividing a power of f",
                        side.name(),
                        cert.render_index(side, &r.corner),
                        a.denominator().render(&cert.names.params)
                    ));
                }
            }
        }
    }
    Ok(format!("{count} tail coefficients have denominators dividing a power of f"))
}

fn check_spanning(problem: &ProblemSpec, cert: &Certificate) -> Result<String, String> {
    if !tails_descend(cert) {
        return Err("corner relations are not strictly descending, rewriting is undefined".into());
    }
    let order = cert.config.order;
    let alg_rules = rules_of(cert, Side::Algebra);
    let mod_rules = rules_of(cert, Side::Module);
    for (i, r) in problem.algebra_relations.iter().enumerate() {
        let nf = rewrite(to_sparse(&r.to_vector(1)), &alg_rules, order)?;
        if !nf.is_empty() {
            return Err(format!("algebra relation {} does not reduce to 0", i + 1));
        }
        for slot in 1..=problem.names.m() as u32 {
            let nf = rewrite(to_sparse(&r.to_vector(slot)), &mod_rules, order)?;
            if !nf.is_empty() {
                return Err(format!(
                    "algebra relation {} times v{slot} does not reduce to 0 in the module",
                    i + 1
                ));
            }
        }
    }
    for (i, r) in problem.module_relations.iter().enumerate() {
        let nf = rewrite(to_sparse(r), &mod_rules, order)?;
        if !nf.is_empty() {
            return Err(format!("module relation {} does not reduce to 0", i + 1));
        }
    }
    Ok(format!(
        "{} algebra and {} module relations reduce to 0",
        problem.algebra_relations.len(),
        problem.module_relations.len()
    ))
}

/// Critical pairs of the corner relations rewrite to zero, so rewriting is
/// confluent and the normal form is well defined.
fn check_closure(cert: &Certificate) -> Result<String, String> {
    if !tails_descend(cert) {
        return Err("corner relations are not strictly descending".into());
    }
    let order = cert.config.order;
    let mut pairs = 0;
    for side in [Side::Algebra, Side::Module] {
        let rules = rules_of(cert, side);
        for (i, (ci, ti)) in rules.iter().enumerate() {
            for (cj, tj) in rules.iter().skip(i + 1) {
                if ci.slot != cj.slot {
                    continue;
                }
                pairs += 1;
                let l = ci.exps.lcm(&cj.exps);
                let mi = ci.exps.quotient_of(&l).expect("lcm");
                let mj = cj.exps.quotient_of(&l).expect("lcm");
                let mut s = shift_sparse(&rule_vector(ci, ti), &mi);
                for (k, a) in shift_sparse(&rule_vector(cj, tj), &mj) {
                    accumulate(&mut s, k, -a);
                }
                if !rewrite(s, &rules, order)?.is_empty() {
                    return Err(format!(
                        "{} corners {} and {} have a critical pair that does not rewrite to 0",
                        side.name(),
                        cert.render_index(side, ci),
                        cert.render_index(side, cj)
                    ));
                }
            }
        }
    }
    Ok(format!("{pairs} critical pairs rewrite to 0"))
}

fn check_descent(cert: &Certificate) -> Result<String, String> {
    let order = cert.config.order;
    for side in [Side::Algebra, Side::Module] {
        let (st, rels) = cert.side(side);
        for r in rels {
            for k in r.tail.keys() {
                if k.slot != r.corner.slot && side == Side::Algebra {
                    return Err(format!("algebra tail index {k:?} has the wrong slot"));
                }
                if !order.cmp_index(k, &r.corner).is_lt() {
                    return Err(format!(
                        "{} relation at {} uses {}, which is not below the corner",
                        side.name(),
                        cert.render_index(side, &r.corner),
                        cert.render_index(side, k)
                    ));
                }
                if !st.contains_unchecked(k) {
                    return Err(format!(
                        "{} relation at {} uses {}, which is outside the staircase",
                        side.name(),
                        cert.render_index(side, &r.corner),
                        cert.render_index(side, k)
                    ));
                }
            }
        }
    }
    Ok(format!("every tail index lies strictly below its corner ({})", order.name()))
}

fn check_antichain(cert: &Certificate) -> Result<String, String> {
    for side in [Side::Algebra, Side::Module] {
        let (st, rels) = cert.side(side);
        if !is_antichain(st.corners()) {
            return Err(format!("{} corners are not an antichain", side.name()));
        }
        let listed: std::collections::BTreeSet<ModuleIndex> =
            rels.iter().map(|r| r.corner.clone()).collect();
        if listed.len() != rels.len() || &listed != st.corners() {
            return Err(format!(
                "{} relation corners differ from the staircase corners",
                side.name()
            ));
        }
    }
    Ok(format!(
        "{} algebra and {} module corners, antichains matching their relations",
        cert.algebra_corners.len(),
        cert.module_corners.len()
    ))
}

// ---------------------------------------------------------------------------
// completion over Q

/// Reduced Gröbner basis of the span of `gens` over `Q`, monic, sorted by
/// leading index ascending. Fails once an element exceeds `max_degree`.
fn field_basis(gens: &[RationalVector], order: TermOrder, max_degree: u32) -> Result<Vec<RationalVector>, String> {
    let mut basis: Vec<RationalVector> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut pending: Vec<RationalVector> = gens.to_vec();
    loop {
        while let Some(g) = pending.pop() {
            let r = field_reduce(&g, &basis, order);
            if r.is_zero() {
                continue;
            }
            let r = make_monic(&r, order);
            if r.degree() > max_degree {
                return Err(format!("specialized completion passed degree {max_degree}"));
            }
            let lead = lead_of(&r, order);
            let idx = basis.len();
            for (i, b) in basis.iter().enumerate() {
                if lead_of(b, order).slot == lead.slot {
                    pairs.push((i, idx));
                }
            }
            basis.push(r);
        }
        if pairs.is_empty() {
            break;
        }
        // smallest lcm degree first
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| lead_of(&basis[i], order).exps.lcm(&lead_of(&basis[j], order).exps).degree())
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(pos);
        let (li, lj) = (lead_of(&basis[i], order), lead_of(&basis[j], order));
        let l = li.exps.lcm(&lj.exps);
        let one = Rational::one();
        let s = &basis[i].mul_term(&li.exps.quotient_of(&l).expect("lcm"), &one)
            - &basis[j].mul_term(&lj.exps.quotient_of(&l).expect("lcm"), &one);
        pending.push(s);
    }
    // minimize, then interreduce
    let leads: Vec<ModuleIndex> = basis.iter().map(|b| lead_of(b, order)).collect();
    let mut minimal: Vec<RationalVector> = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let redundant = leads
            .iter()
            .enumerate()
            .any(|(j, l)| j != i && l.divides(&leads[i]) && (l != &leads[i] || j < i));
        if !redundant {
            minimal.push(b.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, b) in minimal.iter().enumerate() {
        let others: Vec<RationalVector> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let lead = lead_of(b, order);
        let tail = b - &RationalVector::term(lead.clone(), Rational::one());
        let tail = field_reduce(&tail, &others, order);
        reduced.push(&tail + &RationalVector::term(lead, Rational::one()));
    }
    reduced.sort_by(|a, b| order.cmp_index(&lead_of(a, order), &lead_of(b, order)));
    Ok(reduced)
}

fn lead_of(v: &RationalVector, order: TermOrder) -> ModuleIndex {
    v.leading_term(order).expect("nonzero vector").0.clone()
}

fn make_monic(v: &RationalVector, order: TermOrder) -> RationalVector {
    let lc = v.leading_term(order).expect("nonzero vector").1.clone();
    v.scale(&lc.recip())
}

/// Full reduction: every term divisible by a basis lead is eliminated.
fn field_reduce(v: &RationalVector, basis: &[RationalVector], order: TermOrder) -> RationalVector {
    let leads: Vec<(ModuleIndex, Rational)> = basis
        .iter()
        .map(|b| {
            let (l, c) = b.leading_term(order).expect("nonzero vector");
            (l.clone(), c.clone())
        })
        .collect();
    let mut v = v.clone();
    loop {
        let target = v
            .terms()
            .filter(|(j, _)| leads.iter().any(|(l, _)| l.divides(j)))
            .max_by(|a, b| order.cmp_index(a.0, b.0))
            .map(|(j, c)| (j.clone(), c.clone()));
        let Some((j, c)) = target else {
            return v;
        };
        let k = leads.iter().position(|(l, _)| l.divides(&j)).expect("found above");
        let m = leads[k].0.exps.quotient_of(&j.exps).expect("divides");
        let factor = c / leads[k].1.clone();
        v = &v - &basis[k].mul_term(&m, &factor);
    }
}

fn specialize_rule(
    corner: &ModuleIndex,
    tail: &Sparse,
    point: &[Rational],
    nvars: usize,
) -> Result<RationalVector, String> {
    let mut v = RationalVector::term(corner.clone(), Rational::one());
    debug_assert_eq!(v.nvars(), nvars);
    for (k, a) in tail {
        let x = a.eval(point).map_err(|e| format!("tail coefficient at {k:?}: {e}"))?;
        v = &v - &RationalVector::term(k.clone(), x);
    }
    Ok(v)
}

fn point_text(point: &[Rational]) -> String {
    let parts: Vec<String> = point.iter().map(crate::scalar::format_rational).collect();
    format!("({})", parts.join(", "))
}

struct Side2<'a> {
    side: Side,
    gens: Vec<RationalVector>,
    staircase: &'a Staircase,
    rules: Vec<(ModuleIndex, Sparse)>,
}

fn sides<'a>(sp: &SpecializedProblem, cert: &'a Certificate) -> [Side2<'a>; 2] {
    [
        Side2 {
            side: Side::Algebra,
            gens: sp.algebra_vectors(),
            staircase: &cert.algebra_staircase,
            rules: rules_of(cert, Side::Algebra),
        },
        Side2 {
            side: Side::Module,
            gens: sp.module_vectors(),
            staircase: &cert.module_staircase,
            rules: rules_of(cert, Side::Module),
        },
    ]
}

/// The certificate's staircases and corner relations, evaluated at the
/// point, must be the reduced basis of the specialized problem.
fn specialization_at(
    sp: &SpecializedProblem,
    cert: &Certificate,
    max_degree: u32,
) -> Result<(), String> {
    let order = cert.config.order;
    let n = sp.problem.names.n();
    let at = point_text(&sp.point);
    for s in sides(sp, cert) {
        let basis = field_basis(&s.gens, order, max_degree).map_err(|e| format!("at {at}: {e}"))?;
        let corners: std::collections::BTreeSet<ModuleIndex> =
            basis.iter().map(|b| lead_of(b, order)).collect();
        if &corners != s.staircase.corners() {
            return Err(format!(
                "at {at}: {} staircase differs ({} corners over Q, {} in the certificate)",
                s.side.name(),
                corners.len(),
                s.staircase.corners().len()
            ));
        }
        for b in &basis {
            let lead = lead_of(b, order);
            let Some((corner, tail)) = s.rules.iter().find(|(c, _)| c == &lead) else {
                return Err(format!("at {at}: no {} relation for {}", s.side.name(), cert.render_index(s.side, &lead)));
            };
            let mine = specialize_rule(corner, tail, &sp.point, n).map_err(|e| format!("at {at}: {e}"))?;
            if &mine != b {
                return Err(format!(
                    "at {at}: {} relation at {} differs from the specialized basis",
                    s.side.name(),
                    cert.render_index(s.side, &lead)
                ));
            }
        }
    }
    Ok(())
}

/// Staircase members are independent in the specialized quotient and the
/// corner relations hold there, checked against a basis in the other order.
fn dimension_at(
    sp: &SpecializedProblem,
    cert: &Certificate,
    bounds: [u32; 2],
    max_degree: u32,
) -> Result<(), String> {
    let other = match cert.config.order {
        TermOrder::Lex => TermOrder::GradedLex,
        TermOrder::GradedLex => TermOrder::Lex,
    };
    let n = sp.problem.names.n();
    let at = point_text(&sp.point);
    for (s, bound) in sides(sp, cert).into_iter().zip(bounds) {
        let basis = field_basis(&s.gens, other, max_degree).map_err(|e| format!("at {at}: {e}"))?;
        for (corner, tail) in &s.rules {
            let v = specialize_rule(corner, tail, &sp.point, n).map_err(|e| format!("at {at}: {e}"))?;
            if !field_reduce(&v, &basis, other).is_zero() {
                return Err(format!(
                    "at {at}: {} relation at {} does not hold in the specialized quotient",
                    s.side.name(),
                    cert.render_index(s.side, corner)
                ));
            }
        }
        let mut members = s.staircase.members_up_to_degree(bound);
        members.sort_by_key(|j| j.degree());
        let mut echelon: BTreeMap<ModuleIndex, RationalVector> = BTreeMap::new();
        let mut independent_by_degree = vec![0u64; bound as usize + 1];
        for j in &members {
            let nf = field_reduce(&RationalVector::term(j.clone(), Rational::one()), &basis, other);
            if insert_row(&mut echelon, nf) {
                independent_by_degree[j.degree() as usize] += 1;
            }
        }
        let mut rank = 0;
        for d in 0..=bound {
            rank += independent_by_degree[d as usize];
            let count = s.staircase.count_up_to_degree(d);
            if rank != count {
                return Err(format!(
                    "at {at}: {} degree {d}: specialized dimension {rank}, staircase count {count}",
                    s.side.name()
                ));
            }
        }
    }
    Ok(())
}

/// Gaussian elimination step; true when `v` is independent of the rows.
fn insert_row(rows: &mut BTreeMap<ModuleIndex, RationalVector>, mut v: RationalVector) -> bool {
    loop {
        let Some((pivot, c)) = v.terms().next_back().map(|(j, c)| (j.clone(), c.clone())) else {
            return false;
        };
        match rows.get(&pivot) {
            Some(row) => v = &v - &row.scale(&c),
            None => {
                rows.insert(pivot, v.scale(&c.recip()));
                return true;
            }
        }
    }
}

fn sample_points(
    f: &ParamPoly,
    k: usize,
    opts: &VerifyOptions,
) -> Result<Vec<Vec<Rational>>, VerifyError> {
    let bound = 10 + 10 * i64::from(f.total_degree());
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut points = Vec::new();
    for _ in 0..opts.trials {
        let mut found = None;
        for _ in 0..SAMPLING_ATTEMPTS {
            let p: Vec<Rational> = (0..k)
                .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
                .collect();
            if matches!(f.eval(&p), Ok(v) if !v.is_zero()) {
                found = Some(p);
                break;
            }
        }
        points.push(found.ok_or(VerifyError::SamplingExhausted(SAMPLING_ATTEMPTS))?);
    }
    Ok(points)
}

fn max_corner_degree(rels: &[crate::engine::CornerRelation]) -> u32 {
    rels.iter().map(|r| r.corner.degree()).max().unwrap_or(0)
}

/// Checks a certificate against its problem.
pub fn verify(
    problem: &ProblemSpec,
    cert: &Certificate,
    opts: &VerifyOptions,
) -> Result<VerifyReport, VerifyError> {
    if opts.trials == 0 {
        return Err(VerifyError::InvalidOptions("trials must be at least 1".into()));
    }
    let expected = problem.digest();
    if cert.problem_digest != expected {
        return Err(VerifyError::WrongProblem {
            expected,
            found: cert.problem_digest.clone(),
        });
    }
    let mut report = VerifyReport {
        passed: true,
        checks: Vec::new(),
        specialization_points: Vec::new(),
    };
    let f_nonzero = density_witness(cert);
    report.push(
        "zero_witness",
        if f_nonzero {
            Ok(format!("f = {}", cert.witness.render(&cert.names.params)))
        } else {
            Err("f = 0, so A[1/f] is the zero ring".into())
        },
    );
    report.push(
        "denominators",
        if f_nonzero {
            check_denominators(cert)
        } else {
            Err("no denominator divides a power of 0".into())
        },
    );
    report.push("spanning", check_spanning(problem, cert));
    report.push("closure", check_closure(cert));
    report.push("strict_descent", check_descent(cert));
    report.push("antichain", check_antichain(cert));

    let algebra_bound = opts.degree_bound.unwrap_or_else(|| {
        problem.algebra_relations.iter().map(|r| r.total_degree()).max().unwrap_or(0)
            + max_corner_degree(&cert.algebra_corners)
            + 2
    });
    let module_bound = opts
        .degree_bound
        .unwrap_or_else(|| problem.max_relation_degree() + max_corner_degree(&cert.module_corners) + 2);
    let max_degree = 8 * (1 + problem.max_relation_degree()).max(cert.config.degree_cap.unwrap_or(0));

    if !f_nonzero {
        report.push("specialization", Err("skipped: no point avoids f = 0".into()));
        report.push("dimension", Err("skipped: no point avoids f = 0".into()));
        return Ok(report);
    }
    let points = sample_points(&cert.witness, problem.names.k(), opts)?;
    let specialized: Vec<SpecializedProblem> = points
        .iter()
        .map(|p| specialize(problem, p, &cert.witness))
        .collect::<Result<_, _>>()?;
    report.specialization_points = points;

    let spec_outcome = specialized
        .iter()
        .try_for_each(|sp| specialization_at(sp, cert, max_degree))
        .map(|_| {
            format!(
                "{} points, staircases and corner relations match the completion over Q",
                specialized.len()
            )
        });
    report.push("specialization", spec_outcome);
    let dim_outcome = specialized
        .iter()
        .try_for_each(|sp| dimension_at(sp, cert, [algebra_bound, module_bound], max_degree))
        .map(|_| {
            format!(
                "{} points, ranks equal staircase counts up to degree {algebra_bound} (algebra) and {module_bound} (module)",
                specialized.len()
            )
        });
    report.push("dimension", dim_outcome);
    Ok(report)
}
