//! Serializable verification reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::unitgroup::ExhaustiveBound;

pub const SCHEMA_VERSION: u32 = 1;

/// Knobs shared by both verification pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub bound: ExhaustiveBound,
    /// Compare against the enumerated unitary subgroup when `|G|` is within the bound.
    pub oracle: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { bound: ExhaustiveBound::default(), oracle: true }
    }
}

impl VerifyOptions {
    pub fn oracle_enabled(&self, order: usize) -> bool {
        self.oracle && self.bound.allows(order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: String,
    pub name: String,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spec: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub element: String,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representatives {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "snake_case")]
pub enum InstanceDescriptor {
    Theorem1 {
        abelian_subgroup: Vec<String>,
        b: String,
        b_squared: String,
        transversal: Vec<String>,
        complement_basis: Vec<BasisElement>,
    },
    Theorem2 {
        center: Vec<String>,
        representatives: Representatives,
        alternative_representatives: Representatives,
        e: String,
        complement_basis: Vec<BasisElement>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: &str, pass: bool, witness: Option<String>) -> Self {
        Self { name: name.to_string(), pass, witness: if pass { None } else { witness } }
    }
}

/// Informational comparisons that do not affect the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub schema: u32,
    pub group: GroupDescriptor,
    pub involution: String,
    pub instance: InstanceDescriptor,
    pub orders: BTreeMap<String, u64>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub diagnostics: Vec<Diagnostic>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group      {} ({}, order {})", self.group.name, self.group.family, self.group.order);
        let _ = writeln!(out, "involution {}", self.involution);
        match &self.instance {
            InstanceDescriptor::Theorem1 { abelian_subgroup, b, transversal, complement_basis, .. } => {
                let _ = writeln!(out, "A          {{{}}}", abelian_subgroup.join(", "));
                let _ = writeln!(out, "b          {b}");
                let _ = writeln!(out, "transversal {}", transversal.join(", "));
                let _ = writeln!(out, "L basis    {}", render_basis(complement_basis));
            }
            InstanceDescriptor::Theorem2 { center, representatives, e, complement_basis, .. } => {
                let _ = writeln!(out, "C          {{{}}}", center.join(", "));
                let _ = writeln!(out, "a, b, e    {}, {}, {e}", representatives.a, representatives.b);
                let _ = writeln!(out, "T basis    {}", render_basis(complement_basis));
            }
        }
        let _ = writeln!(out, "orders");
        for (k, v) in &self.orders {
            let _ = writeln!(out, "  {k:<22} {v}");
        }
        let _ = writeln!(out, "checks");
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            match &c.witness {
                Some(w) => {
                    let _ = writeln!(out, "  {verdict} {}  [{w}]", c.name);
                }
                None => {
                    let _ = writeln!(out, "  {verdict} {}", c.name);
                }
            }
        }
        if !self.diagnostics.is_empty() {
            let _ = writeln!(out, "diagnostics");
            for d in &self.diagnostics {
                let _ = writeln!(out, "  {} {}: {}", if d.holds { "yes" } else { "no " }, d.name, d.detail);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "time {t} ms");
        }
        let _ = writeln!(out, "result {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

fn render_basis(basis: &[BasisElement]) -> String {
    if basis.is_empty() {
        return "(trivial)".to_string();
    }
    basis
        .iter()
        .map(|b| format!("{} (order {})", b.element, b.order))
        .collect::<Vec<_>>()
        .join("; ")
}
