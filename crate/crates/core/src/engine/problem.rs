use sha2::{Digest, Sha256};

use super::EngineError;
use crate::{AlgRelation, ModRelation};

/// Names of the parameters `t`, algebra variables `x` and module generators
/// `v`; their counts are `k`, `n` and `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VariableNames {
    pub params: Vec<String>,
    pub vars: Vec<String>,
    pub gens: Vec<String>,
}

impl VariableNames {
    pub fn k(&self) -> usize {
        self.params.len()
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn m(&self) -> usize {
        self.gens.len()
    }
}

/// `B = A[x1..xn] / (algebra relations)` and `M = B^m / (module relations)`
/// over `A = Q[t1..tk]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ProblemSpec {
    pub names: VariableNames,
    pub algebra_relations: Vec<AlgRelation>,
    pub module_relations: Vec<ModRelation>,
}

impl ProblemSpec {
    pub fn validate(&self) -> Result<(), EngineError> {
        let (k, n, m) = (self.names.k(), self.names.n(), self.names.m());
        for (i, r) in self.algebra_relations.iter().enumerate() {
            if r.nvars() != n {
                return Err(EngineError::Malformed(format!(
                    "algebra relation {} has {} variables, expected {n}",
                    i + 1,
                    r.nvars()
                )));
            }
            if r.terms().any(|(_, c)| c.width() > k) {
                return Err(EngineError::Malformed(format!(
                    "algebra relation {} uses undeclared parameters",
                    i + 1
                )));
            }
        }
        for (i, r) in self.module_relations.iter().enumerate() {
            if r.nvars() != n {
                return Err(EngineError::Malformed(format!(
                    "module relation {} has {} variables, expected {n}",
                    i + 1,
                    r.nvars()
                )));
            }
            if r.terms().any(|(j, _)| j.slot == 0 || j.slot as usize > m) {
                return Err(EngineError::Malformed(format!(
                    "module relation {} names a generator outside 1..={m}",
                    i + 1
                )));
            }
            if r.terms().any(|(_, c)| c.width() > k) {
                return Err(EngineError::Malformed(format!(
                    "module relation {} uses undeclared parameters",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Largest total degree in the algebra variables over all relations.
    pub fn max_relation_degree(&self) -> u32 {
        let a = self.algebra_relations.iter().map(|r| r.total_degree());
        let b = self.module_relations.iter().map(|r| r.degree());
        a.chain(b).max().unwrap_or(0)
    }

    /// SHA-256 of the canonical text form, hex encoded.
    pub fn digest(&self) -> String {
        let text = crate::dsl::format(self);
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}
