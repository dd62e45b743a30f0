//! The case without algebra variables, by elimination on the relation matrix.
//!
//! With `n = 0` the module is an `A`-module presented by a matrix. Each
//! relation, after clearing the columns of earlier pivots, is solved for its
//! largest generator: that coefficient is inverted (and recorded), the
//! generator leaves the family, and the remaining pivot rows are cleared
//! against it. Independent of the completion code on purpose.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{CornerRelation, EngineError, ProblemSpec, SolveConfig};
use crate::certificate::Certificate;
use crate::localize::{TrackedScalar, WitnessAccumulator};
use crate::poly::{ExponentVector, ModuleIndex};
use crate::scalar::Inverter;
use crate::staircase::Staircase;

struct PivotRow {
    column: usize,
    /// Dense coefficients by slot, monic at `column`.
    entries: Vec<TrackedScalar>,
}

/// Certificate for a problem with `n = 0`, computed by elimination.
pub fn module_case_echelon(problem: &ProblemSpec) -> Result<Certificate, EngineError> {
    problem.validate()?;
    if problem.names.n() != 0 {
        return Err(EngineError::NotModuleCase(problem.names.n()));
    }
    let m = problem.names.m();
    let origin = || ModuleIndex::new(1, ExponentVector::zero(0));
    let slot_index = |col: usize| ModuleIndex::new(col as u32 + 1, ExponentVector::zero(0));
    let mut acc = WitnessAccumulator::new();

    // Algebra relations are constants; the first nonzero one kills B.
    let mut algebra_dead = false;
    for rel in &problem.algebra_relations {
        let c = rel
            .coeff(&ExponentVector::zero(0))
            .cloned()
            .unwrap_or_else(Zero::zero);
        if !c.is_zero() {
            acc.invert(&c)?;
            algebra_dead = true;
            break;
        }
    }

    let (algebra_corners, module_corners) = if algebra_dead {
        let alg = vec![CornerRelation {
            corner: origin(),
            tail: BTreeMap::new(),
        }];
        let module: Vec<CornerRelation> = (0..m)
            .map(|col| CornerRelation {
                corner: slot_index(col),
                tail: BTreeMap::new(),
            })
            .collect();
        (alg, module)
    } else {
        let mut pivots: Vec<PivotRow> = Vec::new();
        for rel in &problem.module_relations {
            let mut row = vec![TrackedScalar::zero(); m];
            for (j, c) in rel.terms() {
                row[j.slot as usize - 1] = TrackedScalar::from_param(c.clone());
            }
            for p in &pivots {
                let factor = row[p.column].clone();
                if !factor.is_zero() {
                    for (r, e) in row.iter_mut().zip(&p.entries) {
                        *r = r.clone() - factor.clone() * e.clone();
                    }
                }
            }
            let Some(column) = (0..m).rev().find(|&c| !row[c].is_zero()) else {
                continue;
            };
            let inv = Inverter::invert(&mut acc, &row[column])?;
            for r in row.iter_mut() {
                *r = r.clone() * inv.clone();
            }
            for p in pivots.iter_mut() {
                let factor = p.entries[column].clone();
                if !factor.is_zero() {
                    for (e, r) in p.entries.iter_mut().zip(&row) {
                        *e = e.clone() - factor.clone() * r.clone();
                    }
                }
            }
            pivots.push(PivotRow {
                column,
                entries: row,
            });
        }
        pivots.sort_by_key(|p| p.column);
        let module = pivots
            .iter()
            .map(|p| {
                debug_assert!(p.entries[p.column].is_one());
                let tail = p
                    .entries
                    .iter()
                    .enumerate()
                    .filter(|(c, e)| *c != p.column && !e.is_zero())
                    .map(|(c, e)| (slot_index(c), -e.clone()))
                    .collect();
                CornerRelation {
                    corner: slot_index(p.column),
                    tail,
                }
            })
            .collect();
        (Vec::new(), module)
    };

    let algebra_staircase = Staircase::from_removed(1, 0, algebra_corners.iter().map(|r| &r.corner))
        .map_err(|e| EngineError::Malformed(e.to_string()))?;
    let module_staircase =
        Staircase::from_removed(m as u32, 0, module_corners.iter().map(|r: &CornerRelation| &r.corner))
            .map_err(|e| EngineError::Malformed(e.to_string()))?;
    Ok(Certificate::assemble(
        problem,
        acc.witness(),
        algebra_staircase,
        algebra_corners,
        module_staircase,
        module_corners,
        SolveConfig::default(),
    ))
}
