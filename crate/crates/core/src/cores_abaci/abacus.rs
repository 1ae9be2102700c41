use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::partition::{MultiPartition, Partition};

/// A charged β-set: every position below `threshold` is occupied,
/// `threshold` itself is empty and `beads` lists the occupied positions
/// above it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BetaAbacus {
    threshold: i64,
    beads: BTreeSet<i64>,
}

impl BetaAbacus {
    /// Positions `≥ threshold` listed in `beads` are occupied, along with
    /// everything below `threshold`.
    pub fn from_positions(threshold: i64, beads: impl IntoIterator<Item = i64>) -> Self {
        let mut beads: BTreeSet<i64> = beads.into_iter().filter(|&b| b >= threshold).collect();
        let mut t = threshold;
        while beads.remove(&t) {
            t += 1;
        }
        Self {
            threshold: t,
            beads,
        }
    }

    /// `β_i = λ_i − i + s` for `i ≥ 1`.
    pub fn from_partition(lambda: &Partition, s: i64) -> Self {
        let len = lambda.len() as i64;
        let beads = lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i64 - (i as i64 + 1) + s);
        Self::from_positions(s - len, beads)
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn beads_above_threshold(&self) -> &BTreeSet<i64> {
        &self.beads
    }

    pub fn is_occupied(&self, k: i64) -> bool {
        k < self.threshold || self.beads.contains(&k)
    }

    pub fn charge(&self) -> i64 {
        self.threshold + self.beads.len() as i64
    }

    /// Charge obtained by sliding beads left into empty spots until no black
    /// bead has a white bead to its left; the charge is then the first empty
    /// position.
    pub fn charge_by_push_left(&self) -> i64 {
        let mut occ: BTreeSet<i64> = self.beads.clone();
        let mut first_white = self.threshold;
        while let Some(&b) = occ.iter().next() {
            occ.remove(&b);
            debug_assert!(b > first_white);
            first_white += 1;
            while occ.remove(&first_white) {
                first_white += 1;
            }
        }
        first_white
    }

    /// Count the white beads to the left of each black bead.
    pub fn partition(&self) -> Partition {
        let parts: Vec<u64> = self
            .beads
            .iter()
            .rev()
            .map(|&b| {
                let blacks_between = self.beads.range(self.threshold..b).count() as i64;
                (b - self.threshold - blacks_between) as u64
            })
            .collect();
        Partition::new(parts).expect("bead order yields a partition")
    }

    /// `true` when every bead at `k` has a bead at `k − n`.
    pub fn is_n_core(&self, n: i64) -> bool {
        self.beads.iter().all(|&b| self.is_occupied(b - n))
    }

    /// Slide every bead as far down its runner modulo `n` as possible.
    pub fn n_core(&self, n: i64) -> Self {
        let lo = self.threshold.div_euclid(n) * n;
        let mut out = Vec::new();
        for r in 0..n {
            let count = self
                .beads
                .iter()
                .filter(|&&b| (b - r).rem_euclid(n) == 0)
                .count() as i64
                + (lo..self.threshold)
                    .filter(|&p| (p - r).rem_euclid(n) == 0)
                    .count() as i64;
            let base = lo + r;
            out.extend((0..count).map(|k| base + k * n));
        }
        Self::from_positions(lo, out)
    }

    pub(crate) fn max_position(&self) -> i64 {
        self.beads
            .iter()
            .next_back()
            .copied()
            .unwrap_or(self.threshold - 1)
    }
}

/// `ℓ` runners, listed bottom to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LAbacus {
    runners: Vec<BetaAbacus>,
}

impl LAbacus {
    pub fn new(runners: Vec<BetaAbacus>) -> Self {
        assert!(!runners.is_empty());
        Self { runners }
    }

    pub fn from_multipartition(lambda: &MultiPartition, charges: &[i64]) -> Self {
        assert_eq!(lambda.level(), charges.len());
        Self::new(
            lambda
                .components()
                .iter()
                .zip(charges)
                .map(|(p, &s)| BetaAbacus::from_partition(p, s))
                .collect(),
        )
    }

    pub fn runners(&self) -> &[BetaAbacus] {
        &self.runners
    }

    pub fn level(&self) -> usize {
        self.runners.len()
    }

    pub fn multicharge(&self) -> Vec<i64> {
        self.runners.iter().map(BetaAbacus::charge).collect()
    }

    pub fn multipartition(&self) -> MultiPartition {
        MultiPartition::new(self.runners.iter().map(BetaAbacus::partition).collect())
    }

    /// Top runner first, `#` for black beads and `.` for white ones, then a
    /// ruler of positions.
    pub fn render(&self) -> String {
        let lo = self.runners.iter().map(|r| r.threshold()).min().unwrap() - 2;
        let hi = self
            .runners
            .iter()
            .map(|r| r.max_position())
            .max()
            .unwrap()
            .max(lo + 4)
            + 2;
        let width = [lo, hi].iter().map(|v| v.to_string().len()).max().unwrap() + 1;
        let mut out = String::new();
        for (idx, r) in self.runners.iter().enumerate().rev() {
            let _ = write!(out, "{:>3} |", idx + 1);
            for k in lo..=hi {
                let g = if r.is_occupied(k) { '#' } else { '.' };
                let _ = write!(out, "{g:>width$}");
            }
            let _ = writeln!(out, "   s={}", r.charge());
        }
        let _ = write!(out, "    |");
        for k in lo..=hi {
            let _ = write!(out, "{k:>width$}");
        }
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_symbol() {
        // (…,−3,−2,−1,2,3,5,7)
        let b = BetaAbacus::from_positions(0, [2, 3, 5, 7]);
        assert_eq!(b.charge(), 4);
        assert_eq!(b.charge_by_push_left(), 4);
        assert_eq!(b.partition(), Partition::new(vec![4, 3, 2, 2]).unwrap());
        assert_eq!(BetaAbacus::from_partition(&b.partition(), 4), b);
    }

    #[test]
    fn empty_symbol() {
        let b = BetaAbacus::from_partition(&Partition::empty(), 3);
        assert_eq!(b.threshold(), 3);
        assert!(b.beads_above_threshold().is_empty());
        assert_eq!(b.charge(), 3);
    }

    #[test]
    fn runner_of_level_three_example() {
        let b = BetaAbacus::from_partition(&Partition::new(vec![3, 2, 1]).unwrap(), 4);
        let occupied: Vec<i64> = (-3..8).filter(|&k| b.is_occupied(k)).collect();
        assert_eq!(occupied, vec![-3, -2, -1, 0, 2, 4, 6]);
    }

    #[test]
    fn n_core_by_sliding() {
        let l = Partition::new(vec![10, 6, 3, 3]).unwrap();
        let b = BetaAbacus::from_partition(&l, 0);
        assert!(b.is_n_core(5));
        assert_eq!(b.n_core(5), b);
        let b = BetaAbacus::from_partition(&Partition::new(vec![2, 1, 1]).unwrap(), 0);
        assert!(!b.is_n_core(4));
        assert_eq!(b.n_core(4).partition(), Partition::empty());
        assert_eq!(b.n_core(4).charge(), 0);
    }

    #[test]
    fn render_shape() {
        let ab = LAbacus::from_multipartition(&"3,1;2,1".parse().unwrap(), &[0, 0]);
        let r = ab.render();
        let lines: Vec<&str> = r.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("  2 |"));
        assert!(lines[1].starts_with("  1 |"));
    }
}
