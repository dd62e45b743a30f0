//! The certificate file format: pretty-printed JSON with a fixed field order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{render_index, Certificate, MalformedCertificate, Side};
use crate::dsl::{parse_monomial, parse_param_poly, DslError};
use crate::engine::{CornerRelation, SolveConfig, VariableNames};
use crate::localize::TrackedScalar;
use crate::poly::{ModuleIndex, TermOrder};
use crate::staircase::Staircase;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("malformed certificate: {0}")]
    Malformed(#[from] MalformedCertificate),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTerm {
    monomial: String,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRelation {
    corner: String,
    tail: Vec<FileTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSide {
    corners: Vec<String>,
    relations: Vec<FileRelation>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    order: String,
    degree_cap: Option<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileVariables {
    params: Vec<String>,
    algebra: Vec<String>,
    module: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct File {
    format_version: u32,
    problem_digest: String,
    witness_f: String,
    algebra: FileSide,
    module: FileSide,
    config: FileConfig,
    variables: FileVariables,
}

fn file_side(cert: &Certificate, side: Side) -> FileSide {
    let (st, rels) = cert.side(side);
    let params = &cert.names.params;
    FileSide {
        corners: st
            .corners()
            .iter()
            .rev()
            .map(|j| render_index(&cert.names, side, j))
            .collect(),
        relations: rels
            .iter()
            .map(|r| FileRelation {
                corner: render_index(&cert.names, side, &r.corner),
                tail: r
                    .tail
                    .iter()
                    .rev()
                    .map(|(k, a)| FileTerm {
                        monomial: render_index(&cert.names, side, k),
                        coeff: a.render(params),
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Canonical bytes; equal certificates give identical output.
pub fn serialize(cert: &Certificate) -> Vec<u8> {
    let file = File {
        format_version: FORMAT_VERSION,
        problem_digest: cert.problem_digest.clone(),
        witness_f: cert.witness.render(&cert.names.params),
        algebra: file_side(cert, Side::Algebra),
        module: file_side(cert, Side::Module),
        config: FileConfig {
            order: cert.config.order.name().to_string(),
            degree_cap: cert.config.degree_cap,
        },
        variables: FileVariables {
            params: cert.names.params.clone(),
            algebra: cert.names.vars.clone(),
            module: cert.names.gens.clone(),
        },
    };
    let mut out = serde_json::to_vec_pretty(&file).expect("plain data serializes");
    out.push(b'\n');
    out
}

fn field_error(path: &str, e: DslError) -> CertificateError {
    CertificateError::Parse {
        location: format!("{path}, column {}", e.location.column),
        message: e.message(),
    }
}

fn parse_index(
    text: &str,
    side: Side,
    names: &VariableNames,
    path: &str,
) -> Result<ModuleIndex, CertificateError> {
    let (slot, mono) = match side {
        Side::Algebra => (1, text),
        Side::Module => {
            let bad = || CertificateError::Parse {
                location: path.to_string(),
                message: format!("expected `v<slot>` or `v<slot>*<monomial>`, found `{text}`"),
            };
            let rest = text.strip_prefix('v').ok_or_else(bad)?;
            let (digits, mono) = match rest.split_once('*') {
                Some((d, m)) => (d, m),
                None => (rest, "1"),
            };
            let slot: u32 = digits.parse().map_err(|_| bad())?;
            (slot, mono)
        }
    };
    let exps = parse_monomial(mono, &names.vars).map_err(|e| field_error(path, e))?;
    Ok(ModuleIndex::new(slot, exps))
}

fn parse_scalar(text: &str, params: &[String], path: &str) -> Result<TrackedScalar, CertificateError> {
    let split = text
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.split_once(")/("));
    let (num, den) = match split {
        Some((n, d)) => (
            parse_param_poly(n, params).map_err(|e| field_error(path, e))?,
            parse_param_poly(d, params).map_err(|e| field_error(path, e))?,
        ),
        None => (
            parse_param_poly(text, params).map_err(|e| field_error(path, e))?,
            num_traits::One::one(),
        ),
    };
    TrackedScalar::ratio(num, den).ok_or_else(|| CertificateError::Parse {
        location: path.to_string(),
        message: "zero denominator".into(),
    })
}

fn read_side(
    file: &FileSide,
    side: Side,
    names: &VariableNames,
) -> Result<(Staircase, Vec<CornerRelation>), CertificateError> {
    let name = side.name();
    let mut corners = BTreeSet::new();
    for (i, c) in file.corners.iter().enumerate() {
        let j = parse_index(c, side, names, &format!("{name}.corners[{i}]"))?;
        if !corners.insert(j) {
            return Err(MalformedCertificate::CornerMismatch(name).into());
        }
    }
    let mut rels = Vec::new();
    for (i, r) in file.relations.iter().enumerate() {
        let path = format!("{name}.relations[{i}]");
        let corner = parse_index(&r.corner, side, names, &format!("{path}.corner"))?;
        let mut tail = BTreeMap::new();
        for (t, term) in r.tail.iter().enumerate() {
            let k = parse_index(&term.monomial, side, names, &format!("{path}.tail[{t}].monomial"))?;
            let a = parse_scalar(&term.coeff, &names.params, &format!("{path}.tail[{t}].coeff"))?;
            if tail.insert(k.clone(), a).is_some() {
                return Err(MalformedCertificate::TailNotDescending(name, corner).into());
            }
        }
        rels.push(CornerRelation { corner, tail });
    }
    let slots = match side {
        Side::Algebra => 1,
        Side::Module => names.m() as u32,
    };
    Ok((Staircase::from_corners_raw(slots, names.n(), corners), rels))
}

/// Parses certificate bytes and checks every invariant.
pub fn deserialize(bytes: &[u8]) -> Result<Certificate, CertificateError> {
    let file: File = serde_json::from_slice(bytes).map_err(|e| CertificateError::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if file.format_version != FORMAT_VERSION {
        return Err(CertificateError::Parse {
            location: "format_version".into(),
            message: format!("unsupported version {}", file.format_version),
        });
    }
    let order = TermOrder::from_name(&file.config.order).ok_or_else(|| CertificateError::Parse {
        location: "config.order".into(),
        message: format!("unknown order `{}`", file.config.order),
    })?;
    let names = VariableNames {
        params: file.variables.params,
        vars: file.variables.algebra,
        gens: file.variables.module,
    };
    let witness = parse_param_poly(&file.witness_f, &names.params)
        .map_err(|e| field_error("witness_f", e))?;
    let (algebra_staircase, algebra_corners) = read_side(&file.algebra, Side::Algebra, &names)?;
    let (module_staircase, module_corners) = read_side(&file.module, Side::Module, &names)?;
    let cert = Certificate {
        witness,
        algebra_staircase,
        algebra_corners,
        module_staircase,
        module_corners,
        problem_digest: file.problem_digest,
        config: SolveConfig {
            order,
            degree_cap: file.config.degree_cap,
            deterministic_seed: 0,
        },
        names,
    };
    cert.validate()?;
    Ok(cert)
}
