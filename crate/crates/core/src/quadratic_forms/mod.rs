//! The forms `P`, `Q` and `q`, their domains, bounded representation search
//! and universality scans.
//!
//! For a window `y ∈ D_n`, `P(y) = ½Σy_i² − Σ i·y_i + n(n+1)(2n+1)/12`.
//! The shift `C(y) = y − (1,…,n)` sends `D_n` onto `Δ_n` and `P` onto
//! `Q(x) = ½Σx_i²`; dropping the last coordinate sends `Δ_n` onto `X_n` and
//! `Q` onto `q(x) = Σx_i² + Σ_{i<j} x_i x_j`.

mod domain;
mod report;
mod search;

use std::collections::HashMap;

use num_rational::Ratio;
use rayon::prelude::*;

pub use domain::{ConstrainedDomain, LatticeKind};
pub use report::{Outcome, ReportEntry, UniversalityReport};
pub use search::{
    attained_classes_lower_q, attained_classes_separable, lower_q, search_first,
    search_first_lower_q, SeparableForm,
};

use crate::{Error, Result};

/// Targets of the fifteen theorem.
pub const S15: [i64; 9] = [1, 2, 3, 5, 6, 7, 10, 14, 15];

/// Targets of the 290 theorem.
pub const S290: [i64; 29] = [
    1, 2, 3, 5, 6, 7, 10, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30, 31, 34, 35, 37, 42, 58, 93,
    110, 145, 203, 290,
];

/// Moduli tried, in order, when looking for an obstruction.
pub const DEFAULT_MODULI: [u64; 9] = [2, 3, 4, 5, 7, 8, 9, 16, 32];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormKind {
    Separable(SeparableForm),
    LowerQ { dim: usize },
}

/// A named form with a search strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    pub id: String,
    pub kind: FormKind,
}

impl Form {
    pub fn separable(id: impl Into<String>, f: SeparableForm) -> Self {
        Self {
            id: id.into(),
            kind: FormKind::Separable(f),
        }
    }

    /// `P` on windows of rank `n`.
    pub fn p(n: usize) -> Self {
        let lin = (1..=n as i64).map(|i| -2 * i).collect();
        let n = n as i64;
        Self::separable(
            "P",
            SeparableForm::new(2, 1, lin, n * (n + 1) * (2 * n + 1) / 6),
        )
    }

    /// `Q = ½ Σ x_i²` in `n` variables.
    pub fn half_norm(n: usize) -> Self {
        Self::separable("Q", SeparableForm::new(2, 1, vec![0; n], 0))
    }

    /// `q` in `dim` variables.
    pub fn lower_q(dim: usize) -> Self {
        Self {
            id: "q".into(),
            kind: FormKind::LowerQ { dim },
        }
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            FormKind::Separable(f) => f.dim(),
            FormKind::LowerQ { dim } => *dim,
        }
    }

    pub fn eval(&self, v: &[i64]) -> Ratio<i128> {
        match &self.kind {
            FormKind::Separable(f) => f.eval(v),
            FormKind::LowerQ { .. } => Ratio::from_integer(lower_q(v)),
        }
    }
}

pub fn eval_p(y: &[i64]) -> i64 {
    let v = Form::p(y.len()).eval(y);
    assert!(v.is_integer());
    v.to_integer() as i64
}

pub fn eval_q_upper(x: &[i64]) -> Ratio<i64> {
    let s: i64 = x.iter().map(|v| v * v).sum();
    Ratio::new(s, 2)
}

pub fn eval_q_lower(x: &[i64]) -> i64 {
    lower_q(x) as i64
}

/// `C(y) = (y_1 − 1, …, y_n − n)`.
pub fn map_c(y: &[i64]) -> Result<Vec<i64>> {
    let n = y.len();
    if !(ConstrainedDomain::Windows { n }).member(y) {
        return Err(Error::DomainViolation(y.to_vec(), format!("D_{n}")));
    }
    Ok(y.iter()
        .enumerate()
        .map(|(i, v)| v - i as i64 - 1)
        .collect())
}

pub fn map_c_inverse(x: &[i64]) -> Result<Vec<i64>> {
    let n = x.len();
    if !(ConstrainedDomain::Delta { n }).member(x) {
        return Err(Error::DomainViolation(x.to_vec(), format!("Delta_{n}")));
    }
    Ok(x.iter()
        .enumerate()
        .map(|(i, v)| v + i as i64 + 1)
        .collect())
}

/// Drop the last coordinate.
pub fn map_pr(x: &[i64]) -> Result<Vec<i64>> {
    let n = x.len();
    if n == 0 || !(ConstrainedDomain::Delta { n }).member(x) {
        return Err(Error::DomainViolation(x.to_vec(), format!("Delta_{n}")));
    }
    Ok(x[..n - 1].to_vec())
}

/// Append `−Σx`, returning an element of `Δ_{len+1}`.
pub fn map_pr_inverse(x: &[i64]) -> Result<Vec<i64>> {
    let n = x.len() + 1;
    if !(ConstrainedDomain::X { n }).member(x) {
        return Err(Error::DomainViolation(x.to_vec(), format!("X_{n}")));
    }
    let mut v = x.to_vec();
    v.push(-x.iter().sum::<i64>());
    Ok(v)
}

/// Lexicographically smallest vector of the domain in the box of radius `radius`
/// taking the value `target`.
pub fn represent(
    form: &Form,
    domain: &ConstrainedDomain,
    target: Ratio<i64>,
    radius: u32,
) -> Option<Vec<i64>> {
    let w = match &form.kind {
        FormKind::Separable(f) => search_first(f, domain, target, radius),
        FormKind::LowerQ { .. } => {
            if !target.is_integer() {
                return None;
            }
            search_first_lower_q(domain, target.to_integer(), radius)
        }
    }?;
    let t = Ratio::new(*target.numer() as i128, *target.denom() as i128);
    assert_eq!(form.eval(&w), t, "witness does not evaluate to its target");
    Some(w)
}

/// Residues mod `m` of the form's integral values on the integer vectors
/// meeting the domain's sum constraint. This set contains the residues
/// attained on the domain itself, so a missing class is a certificate of
/// non-representability.
pub fn attained_classes(form: &Form, domain: &ConstrainedDomain, m: u64) -> Vec<u64> {
    match &form.kind {
        FormKind::Separable(f) => attained_classes_separable(f, domain.sum_constraint(), m),
        FormKind::LowerQ { dim } => attained_classes_lower_q(*dim, m),
    }
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Targets are `k / grid` for `0 <= k <= N·grid`.
    pub grid: i64,
    pub moduli: Vec<u64>,
    pub checklist: Option<String>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            grid: 1,
            moduli: DEFAULT_MODULI.to_vec(),
            checklist: None,
        }
    }
}

/// Search every target of `⟦0, N⟧` (or the half-integer grid).
pub fn universality_scan(
    form: &Form,
    domain: &ConstrainedDomain,
    max_target: i64,
    radius: u32,
    opts: &ScanOptions,
) -> UniversalityReport {
    let targets: Vec<Ratio<i64>> = (0..=max_target * opts.grid)
        .map(|k| Ratio::new(k, opts.grid))
        .collect();
    scan_targets(form, domain, &targets, max_target, radius, opts)
}

/// Search an explicit list of targets.
pub fn scan_targets(
    form: &Form,
    domain: &ConstrainedDomain,
    targets: &[Ratio<i64>],
    max_target: i64,
    radius: u32,
    opts: &ScanOptions,
) -> UniversalityReport {
    let classes: HashMap<u64, Vec<u64>> = opts
        .moduli
        .par_iter()
        .map(|&m| (m, attained_classes(form, domain, m)))
        .collect();
    let entries = targets
        .par_iter()
        .map(|&t| {
            let obstruction = t.is_integer().then(|| t.to_integer()).and_then(|k| {
                opts.moduli.iter().find_map(|&m| {
                    let class = k.rem_euclid(m as i64) as u64;
                    classes[&m]
                        .binary_search(&class)
                        .is_err()
                        .then_some(Outcome::ModularObstruction { modulus: m, class })
                })
            });
            let outcome = obstruction.unwrap_or_else(|| match represent(form, domain, t, radius) {
                Some(w) => Outcome::Witness(w),
                None => Outcome::NotFoundWithinRadius(radius),
            });
            ReportEntry { target: t, outcome }
        })
        .collect();
    UniversalityReport {
        form: form.id.clone(),
        domain: domain.name(),
        n: domain.rank(),
        max_target,
        radius,
        checklist: opts.checklist.clone(),
        entries,
    }
}
