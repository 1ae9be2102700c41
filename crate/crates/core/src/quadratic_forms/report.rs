use std::fmt::Write as _;

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::util::format_csv;

/// Result of a bounded search for one target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Witness(Vec<i64>),
    NotFoundWithinRadius(u32),
    ModularObstruction { modulus: u64, class: u64 },
}

impl Outcome {
    pub fn status(&self) -> &'static str {
        match self {
            Self::Witness(_) => "witness",
            Self::NotFoundWithinRadius(_) => "not_found",
            Self::ModularObstruction { .. } => "obstructed",
        }
    }

    pub fn is_witness(&self) -> bool {
        matches!(self, Self::Witness(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    pub target: Ratio<i64>,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalityReport {
    pub form: String,
    pub domain: String,
    pub n: usize,
    pub max_target: i64,
    pub radius: u32,
    pub checklist: Option<String>,
    pub entries: Vec<ReportEntry>,
}

fn ratio_json(r: &Ratio<i64>) -> Value {
    if r.is_integer() {
        json!(r.to_integer())
    } else {
        json!(*r.numer() as f64 / *r.denom() as f64)
    }
}

impl UniversalityReport {
    pub fn all_witnessed(&self) -> bool {
        self.entries.iter().all(|e| e.outcome.is_witness())
    }

    pub fn witness_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.outcome.is_witness())
            .count()
    }

    /// Targets without a witness.
    pub fn missing(&self) -> Vec<Ratio<i64>> {
        self.entries
            .iter()
            .filter(|e| !e.outcome.is_witness())
            .map(|e| e.target)
            .collect()
    }

    pub fn entry(&self, target: Ratio<i64>) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.target == target)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut o = json!({ "k": ratio_json(&e.target), "status": e.outcome.status() });
                match &e.outcome {
                    Outcome::Witness(w) => o["witness"] = json!(w),
                    Outcome::NotFoundWithinRadius(r) => o["radius"] = json!(r),
                    Outcome::ModularObstruction { modulus, class } => {
                        o["modulus"] = json!(modulus);
                        o["class"] = json!(class);
                    }
                }
                o
            })
            .collect();
        let mut doc = json!({
            "form": self.form,
            "domain": self.domain,
            "n": self.n,
            "N": self.max_target,
            "radius": self.radius,
            "entries": entries,
        });
        if let Some(c) = &self.checklist {
            doc["checklist"] = json!(c);
        }
        doc
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "form {} on {} (n={}, N={}, R={})",
            self.form, self.domain, self.n, self.max_target, self.radius
        );
        if let Some(c) = &self.checklist {
            let _ = writeln!(s, "checklist {c}");
        }
        for e in &self.entries {
            let detail = match &e.outcome {
                Outcome::Witness(w) => format_csv(w),
                Outcome::NotFoundWithinRadius(r) => format!("none with |x_i| <= {r}"),
                Outcome::ModularObstruction { modulus, class } => {
                    format!("class {class} mod {modulus} not attained")
                }
            };
            let _ = writeln!(s, "{}\t{}\t{}", e.target, e.outcome.status(), detail);
        }
        let _ = writeln!(
            s,
            "{}/{} targets witnessed",
            self.witness_count(),
            self.entries.len()
        );
        s
    }
}
