//! Runs the construction and its certificate over every small poset.

use std::time::{Duration, Instant};

use princon_core::enumerate::enumerate_posets_up_to;
use princon_core::lattice::downset_lattice;
use princon_core::pipeline::assemble;
use princon_core::{GadgetS8, Mode, Poset};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::certificate::{certify, Check, Subject};

/// Largest poset size the corpus runner accepts.
pub const MAX_CORPUS_POSET_SIZE: usize = 5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("posets with up to {0} elements requested, limit {MAX_CORPUS_POSET_SIZE}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub id: usize,
    /// Covers of `P` as `a<b` joined by spaces, or `-` for an antichain.
    pub poset: String,
    pub poset_size: usize,
    pub d_size: usize,
    pub l_size: usize,
    pub passed: bool,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub mode: String,
    pub max: usize,
    pub cases: Vec<CaseResult>,
}

impl CorpusSummary {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    /// One line per case, then a total line.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:>4}  {:>3}  {:>4}  {:>6}  {:<6}  poset\n",
            "case", "|P|", "|D|", "|L|", "result"
        );
        for c in &self.cases {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{:>4}  {:>3}  {:>4}  {:>6}  {:<6}  {}\n",
                c.id, c.poset_size, c.d_size, c.l_size, verdict, c.poset
            ));
            for f in &c.failures {
                out.push_str(&format!("      {f}\n"));
            }
        }
        out.push_str(&format!(
            "{} of {} cases passed ({} mode)\n",
            self.passed(),
            self.cases.len(),
            self.mode
        ));
        out
    }
}

/// The checks a case must pass in the given mode.
pub fn corpus_checks(mode: Mode) -> &'static [Check] {
    match mode {
        Mode::Planar => &[Check::Semimodular, Check::Planar, Check::ConIso, Check::Colors],
        Mode::Principal => &[
            Check::Semimodular,
            Check::Planar,
            Check::ConIso,
            Check::Principal,
            Check::Witnesses,
            Check::Colors,
        ],
    }
}

fn describe(p: &Poset) -> String {
    if p.covers().is_empty() {
        return "-".into();
    }
    p.covers()
        .iter()
        .map(|&(a, b)| format!("{}<{}", p.label(a), p.label(b)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_case(id: usize, p: &Poset, mode: Mode, gadget: &GadgetS8) -> CaseResult {
    let start = Instant::now();
    let d = downset_lattice(p);
    let mut result = CaseResult {
        id,
        poset: describe(p),
        poset_size: p.len(),
        d_size: d.len(),
        l_size: 0,
        passed: false,
        failures: Vec::new(),
        elapsed: Duration::ZERO,
    };
    match assemble(&d, mode, gadget) {
        Err(e) => result.failures.push(format!("construction: {e}")),
        Ok(report) => {
            result.l_size = report.lattice.len();
            let subject = Subject {
                lattice: report.lattice.lattice(),
                colored: Some(&report.lattice),
                d: Some(&d),
                witnesses: Some(&report.witnesses),
            };
            match certify(&subject, corpus_checks(mode)) {
                Err(e) => result.failures.push(e.to_string()),
                Ok(cert) => {
                    for o in cert.outcomes.iter().filter(|o| !o.passed) {
                        result.failures.push(format!("{}: {}", o.check, o.detail));
                    }
                }
            }
        }
    }
    result.passed = result.failures.is_empty();
    result.elapsed = start.elapsed();
    result
}

/// Certifies the construction for every poset with at most `max` elements,
/// in parallel; cases are reported in enumeration order.
pub fn run_corpus(max: usize, mode: Mode, gadget: &GadgetS8) -> Result<CorpusSummary, CorpusError> {
    if max > MAX_CORPUS_POSET_SIZE {
        return Err(CorpusError::TooLarge(max));
    }
    let posets = enumerate_posets_up_to(max).expect("within the enumeration limit");
    let cases = posets
        .par_iter()
        .enumerate()
        .map(|(id, p)| run_case(id, p, mode, gadget))
        .collect();
    Ok(CorpusSummary {
        mode: mode.name().to_string(),
        max,
        cases,
    })
}
