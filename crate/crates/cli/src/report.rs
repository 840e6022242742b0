//! The JSON report document and merging of per-family reports.

use std::collections::BTreeMap;

use lagmono_core::spectrum::InvariantPair;
use lagmono_core::symgeo::VerificationReport;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub tool_version: String,
    /// Keyed by family name.
    pub config: BTreeMap<String, Config>,
    pub checks: Vec<VerificationReport>,
    pub invariants: BTreeMap<String, InvariantPair>,
    pub overall_pass: bool,
    pub verdict: String,
}

impl ReportDoc {
    pub fn new(
        config: BTreeMap<String, Config>,
        checks: Vec<VerificationReport>,
        invariants: BTreeMap<String, InvariantPair>,
    ) -> Self {
        let overall_pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        let verdict = verdict(overall_pass, &checks, &invariants);
        Self { tool_version: TOOL_VERSION.to_string(), config, checks, invariants, overall_pass, verdict }
    }

    /// Pretty JSON with every float rounded to 12 significant digits.
    pub fn to_json(&self) -> String {
        let mut doc = self.clone();
        for cfg in doc.config.values_mut() {
            for v in [&mut cfg.b, &mut cfg.epsilon, &mut cfg.fd_step, &mut cfg.tol_sym, &mut cfg.tol_flow] {
                *v = round_sig(*v);
            }
        }
        for check in &mut doc.checks {
            check.max_residual = round_sig(check.max_residual);
            check.tolerance = round_sig(check.tolerance);
            for v in check.metadata.values_mut() {
                *v = round_sig(*v);
            }
        }
        let mut text = serde_json::to_string_pretty(&doc).expect("report serialises");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn verdict(pass: bool, checks: &[VerificationReport], inv: &BTreeMap<String, InvariantPair>) -> String {
    if !pass {
        let failed = checks.iter().filter(|c| !c.pass).count();
        return format!("inconclusive: {failed} check(s) failed");
    }
    match (inv.get("clifford"), inv.get("chekanov")) {
        (Some(cl), Some(ch)) if cl.s != ch.s => format!(
            "distinguished: s={} vs s={}; the clifford and chekanov tori are not Hamiltonian isotopic",
            cl.s, ch.s
        ),
        (Some(cl), Some(ch)) => format!("not distinguished: s={} and s={}", cl.s, ch.s),
        _ => {
            let parts: Vec<String> = inv.iter().map(|(family, p)| format!("{family}: {p}")).collect();
            parts.join("; ")
        }
    }
}

/// Merges per-family reports. Versions must match this tool and each family
/// may appear only once.
pub fn merge(docs: &[ReportDoc]) -> Result<ReportDoc, CliError> {
    if docs.is_empty() {
        return Err(CliError::Schema("nothing to merge".into()));
    }
    let mut config = BTreeMap::new();
    let mut checks = Vec::new();
    let mut invariants = BTreeMap::new();
    for doc in docs {
        if doc.tool_version != TOOL_VERSION {
            return Err(CliError::Schema(format!(
                "tool_version {} does not match {TOOL_VERSION}",
                doc.tool_version
            )));
        }
        for (family, cfg) in &doc.config {
            if config.insert(family.clone(), cfg.clone()).is_some() {
                return Err(CliError::Schema(format!("family '{family}' appears in more than one report")));
            }
        }
        checks.extend(doc.checks.iter().cloned());
        invariants.extend(doc.invariants.iter().map(|(k, v)| (k.clone(), *v)));
    }
    Ok(ReportDoc::new(config, checks, invariants))
}
