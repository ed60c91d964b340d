//! Certification of a constructed (or loaded) lattice.

use std::collections::BTreeMap;
use std::time::Instant;

use princon_core::congruence::{all_principal, Principality};
use princon_core::verify::{
    check_color_soundness, check_con_isomorphic, check_embedding_planarity, check_witnesses, is_planar_dimension2,
    semimodularity_witness, ConIsoFailure, PlanarityFailure, Witness, WitnessFailure, DIMENSION_LIMIT,
};
use princon_core::{ColoredLattice, FiniteLattice};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Semimodular,
    Planar,
    PlanarDim2,
    ConIso,
    Principal,
    Witnesses,
    Colors,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Semimodular => "semimodular",
            Check::Planar => "planar",
            Check::PlanarDim2 => "planar-dim2",
            Check::ConIso => "con-iso",
            Check::Principal => "principal",
            Check::Witnesses => "witnesses",
            Check::Colors => "colors",
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Verdict of one check. Failures carry a concrete witness in `detail`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub check: Check,
    pub passed: bool,
    pub detail: String,
    /// `D` element to the label of its congruence in `Con L` (as written by
    /// `conlat`), for a passing `con-iso`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mapping: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub outcomes: Vec<Outcome>,
    /// SHA-256 of the files involved, by role.
    pub digests: BTreeMap<String, String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn outcome(&self, check: Check) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.check == check)
    }

    /// Drops timings so the certificate is reproducible byte for byte.
    pub fn without_timings(mut self) -> Self {
        for o in &mut self.outcomes {
            o.millis = None;
        }
        self
    }

    pub fn add_digest(&mut self, role: &str, bytes: &[u8]) {
        self.digests.insert(role.to_string(), sha256_hex(bytes));
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("check `{check}` cannot run: {reason}")]
    CannotRun { check: Check, reason: String },
}

/// What is being certified.
#[derive(Debug, Clone, Copy)]
pub struct Subject<'a> {
    pub lattice: &'a FiniteLattice,
    pub colored: Option<&'a ColoredLattice>,
    pub d: Option<&'a FiniteLattice>,
    pub witnesses: Option<&'a [Witness]>,
}

impl<'a> Subject<'a> {
    pub fn colored(colored: &'a ColoredLattice) -> Self {
        Self {
            lattice: colored.lattice(),
            colored: Some(colored),
            d: None,
            witnesses: None,
        }
    }
}

fn precondition(subject: &Subject<'_>, check: Check) -> Result<(), String> {
    match check {
        Check::Planar if subject.lattice.embedding().is_none() => Err("the lattice has no drawing".into()),
        Check::PlanarDim2 if subject.lattice.len() > DIMENSION_LIMIT => {
            Err(format!("{} elements, limit {DIMENSION_LIMIT}", subject.lattice.len()))
        }
        Check::ConIso if subject.d.is_none() => Err("no D given".into()),
        Check::Witnesses if subject.d.is_none() || subject.witnesses.is_none() => {
            Err("needs D and witness pairs".into())
        }
        Check::Colors if subject.colored.is_none() => Err("the lattice has no colors".into()),
        _ => Ok(()),
    }
}

/// Runs the requested checks (each once, in a fixed order). Fails without a
/// certificate if any of them cannot run.
pub fn certify(subject: &Subject<'_>, checks: &[Check]) -> Result<Certificate, CertifyError> {
    let mut checks = checks.to_vec();
    checks.sort_unstable();
    checks.dedup();
    for &check in &checks {
        precondition(subject, check).map_err(|reason| CertifyError::CannotRun { check, reason })?;
    }
    let l = subject.lattice;
    let name = |v: usize| l.label(v).to_string();
    let mut outcomes = Vec::with_capacity(checks.len());
    for check in checks {
        let start = Instant::now();
        let mut mapping = None;
        let verdict: Result<String, String> = match check {
            Check::Semimodular => match semimodularity_witness(l) {
                None => Ok(String::new()),
                Some((a, b)) => Err(format!(
                    "{} ≺ {} but {} ⊀ {}",
                    name(l.meet(a, b)),
                    name(a),
                    name(b),
                    name(l.join(a, b))
                )),
            },
            Check::Planar => check_embedding_planarity(l)
                .map(|_| String::new())
                .map_err(|f| match f {
                    PlanarityFailure::NoEmbedding => "no drawing".to_string(),
                    PlanarityFailure::SharedPosition(a, b) => format!("{} and {} share a position", name(a), name(b)),
                    PlanarityFailure::VertexOnEdge { vertex, edge } => {
                        format!("{} lies on edge {} < {}", name(vertex), name(edge.0), name(edge.1))
                    }
                    PlanarityFailure::Crossing(e, f) => {
                        format!(
                            "edges {} < {} and {} < {} cross",
                            name(e.0),
                            name(e.1),
                            name(f.0),
                            name(f.1)
                        )
                    }
                    PlanarityFailure::SlopeTie { vertex, covers } => {
                        format!(
                            "{} < {} and {} < {} leave at the same slope",
                            name(vertex),
                            name(covers.0),
                            name(vertex),
                            name(covers.1)
                        )
                    }
                }),
            Check::PlanarDim2 => match is_planar_dimension2(l) {
                Ok(true) => Ok(String::new()),
                Ok(false) => Err("order dimension exceeds 2".into()),
                Err(e) => Err(e.to_string()),
            },
            Check::ConIso => {
                let d = subject.d.expect("checked");
                match check_con_isomorphic(l, subject.colored, d) {
                    Ok(iso) => {
                        mapping = Some(
                            (0..d.len())
                                .map(|x| (d.label(x).to_string(), format!("c{}", iso.image[x])))
                                .collect(),
                        );
                        Ok(format!("|Con L| = {}", iso.con.len()))
                    }
                    Err(f) => Err(con_iso_detail(&f)),
                }
            }
            Check::Principal => match all_principal(l) {
                Principality::AllPrincipal => Ok(String::new()),
                Principality::Counterexample(theta) => Err(format!("not principal: {}", theta.describe(l))),
            },
            Check::Witnesses => {
                let d = subject.d.expect("checked");
                match check_con_isomorphic(l, subject.colored, d) {
                    Err(f) => Err(con_iso_detail(&f)),
                    Ok(iso) => check_witnesses(l, d, subject.witnesses.expect("checked"), &iso)
                        .map(|_| String::new())
                        .map_err(|f| match f {
                            WitnessFailure::MissingWitness(x) => format!("no witness for {x}"),
                            WitnessFailure::UnknownElement(v) => format!("witness names unknown element {v}"),
                            WitnessFailure::Mismatch(x) => format!("con(0_{x}, 1_{x}) is not the image of {x}"),
                        }),
                }
            }
            Check::Colors => {
                let colored = subject.colored.expect("checked");
                check_color_soundness(colored).map(|_| String::new()).map_err(|c| {
                    format!(
                        "color {} on {} < {} and {} < {} generates two congruences",
                        c.color,
                        name(c.first.0),
                        name(c.first.1),
                        name(c.second.0),
                        name(c.second.1)
                    )
                })
            }
        };
        let passed = verdict.is_ok();
        outcomes.push(Outcome {
            check,
            passed,
            detail: verdict.unwrap_or_else(|e| e),
            mapping,
            millis: Some(start.elapsed().as_millis()),
        });
    }
    Ok(Certificate {
        outcomes,
        digests: BTreeMap::new(),
    })
}

fn con_iso_detail(f: &ConIsoFailure) -> String {
    match f {
        ConIsoFailure::NotDistributive => "D is not distributive".into(),
        ConIsoFailure::SizeMismatch { con, d } => format!("|Con L| = {con} but |D| = {d}"),
        ConIsoFailure::JiMismatch { con, d } => format!(
            "Ji(Con L) has {} elements and {} covers, Ji(D) has {} and {}",
            con.len(),
            con.covers().len(),
            d.len(),
            d.covers().len()
        ),
    }
}
