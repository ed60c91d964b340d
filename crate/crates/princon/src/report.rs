//! The JSON construction report.

use princon_core::verify::Witness;
use princon_core::{ConstructionReport, FiniteLattice, Poset};
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;

/// An order as element labels and cover pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl OrderJson {
    pub fn of_poset(p: &Poset) -> Self {
        Self {
            elements: p.labels().to_vec(),
            covers: p
                .covers()
                .iter()
                .map(|&(a, b)| (p.label(a).into(), p.label(b).into()))
                .collect(),
        }
    }

    pub fn of_lattice(l: &FiniteLattice) -> Self {
        Self {
            elements: l.labels().to_vec(),
            covers: l
                .covers()
                .iter()
                .map(|&(a, b)| (l.label(a).into(), l.label(b).into()))
                .collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<FiniteLattice, princon_core::OrderError> {
        FiniteLattice::new(self.elements.clone(), &self.covers)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub element: String,
    pub lower: String,
    pub upper: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizesJson {
    pub n: usize,
    pub s: usize,
    pub r: usize,
    pub l1: usize,
    pub l2: usize,
    pub l: usize,
    pub c: usize,
    pub c_edges: usize,
    pub c1_edges: usize,
    pub gadgets: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub mode: String,
    pub poset: OrderJson,
    pub d: OrderJson,
    pub sizes: SizesJson,
    pub witnesses: Vec<WitnessJson>,
    pub steps: Vec<String>,
    pub certificate: Certificate,
}

impl ReportJson {
    /// Builds the report; the certificate is stored without timings.
    pub fn new(report: &ConstructionReport, certificate: Certificate) -> Self {
        let s = report.sizes;
        Self {
            mode: report.mode.name().to_string(),
            poset: OrderJson::of_poset(&report.poset),
            d: OrderJson::of_lattice(&report.d),
            sizes: SizesJson {
                n: s.n,
                s: s.s,
                r: s.r,
                l1: s.l1,
                l2: s.l2,
                l: s.l,
                c: s.c,
                c_edges: s.c_edges,
                c1_edges: s.c1_edges,
                gadgets: s.gadgets,
            },
            witnesses: report
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    element: w.element.clone(),
                    lower: w.lower.clone(),
                    upper: w.upper.clone(),
                })
                .collect(),
            steps: report.steps.iter().map(ToString::to_string).collect(),
            certificate: certificate.without_timings(),
        }
    }

    pub fn witnesses(&self) -> Vec<Witness> {
        self.witnesses
            .iter()
            .map(|w| Witness {
                element: w.element.clone(),
                lower: w.lower.clone(),
                upper: w.upper.clone(),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
