use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u64>);

impl Partition {
    /// Sorts nothing: the parts must already be weakly decreasing. Zero parts
    /// are dropped.
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self(parts.into_iter().filter(|&p| p > 0).collect()))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.0.first().copied().unwrap_or(0);
        Self(
            (0..width)
                .map(|j| self.0.iter().filter(|&&p| p > j).count() as u64)
                .collect(),
        )
    }

    /// `hooks[i][j]` is the hook length of the cell in row `i`, column `j`.
    pub fn hook_lengths(&self) -> Vec<Vec<u64>> {
        let conj = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row as usize)
                    .map(|j| (row - j as u64 - 1) + (conj.0[j] - i as u64 - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// No hook of length `n`.
    pub fn is_n_core_hooks(&self, n: u64) -> bool {
        self.hook_lengths().iter().flatten().all(|&h| h != n)
    }

    /// No hook of length divisible by `n`.
    pub fn is_n_core_hooks_divisible(&self, n: u64) -> bool {
        self.hook_lengths().iter().flatten().all(|&h| h % n != 0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if s.is_empty() || s == "-" || s == "∅" {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("{p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// An `ℓ`-tuple of partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPartition(Vec<Partition>);

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Self {
        assert!(!components.is_empty(), "level must be at least 1");
        Self(components)
    }

    pub fn empty(level: usize) -> Self {
        Self::new(vec![Partition::empty(); level])
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(Partition::size).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(Partition::is_empty)
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .0
            .iter()
            .map(|p| {
                if p.is_empty() {
                    "∅".to_string()
                } else {
                    p.to_string()
                }
            })
            .collect();
        write!(f, "({})", s.join(","))
    }
}

/// Semicolon-separated components, each a comma-separated list of parts.
impl FromStr for MultiPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let comps = s
            .split(';')
            .map(Partition::from_str)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(comps))
    }
}
