use super::abacus::{BetaAbacus, LAbacus};
use super::partition::MultiPartition;

/// Move every bead of `src` to the runner and position given by
/// `map(runner, block, offset)`, where a source position is
/// `block · block_len + offset`. Each block of `src.len() × block_len`
/// positions is sent onto a block of `block_len × src.len()` positions.
fn rotate(
    src: &[BetaAbacus],
    block_len: usize,
    dst_runners: usize,
    map: impl Fn(usize, i64, usize) -> (usize, i64),
) -> Vec<BetaAbacus> {
    let b = block_len as i64;
    let j0 = src
        .iter()
        .map(|r| r.threshold().div_euclid(b))
        .min()
        .expect("at least one runner");
    let top = src.iter().map(|r| r.max_position()).max().unwrap();
    let mut beads = vec![Vec::new(); dst_runners];
    for (r, runner) in src.iter().enumerate() {
        for p in j0 * b..=top {
            if runner.is_occupied(p) {
                let (dr, dp) = map(r, p.div_euclid(b), p.rem_euclid(b) as usize);
                beads[dr].push(dp);
            }
        }
    }
    let dst_threshold = j0 * src.len() as i64;
    beads
        .into_iter()
        .map(|v| BetaAbacus::from_positions(dst_threshold, v))
        .collect()
}

/// The rectangle-rotation bijection from charged `ℓ`-partitions to charged
/// `n`-partitions. Returns the `n`-quotient and the `n`-core multicharge.
pub fn phi(lambda: &MultiPartition, charges: &[i64], n: usize) -> (MultiPartition, Vec<i64>) {
    assert!(n >= 1);
    let ell = lambda.level();
    let ab = LAbacus::from_multipartition(lambda, charges);
    let mut mu = rotate(ab.runners(), n, n, |r, j, c| {
        (c, j * ell as i64 + (ell - 1 - r) as i64)
    });
    mu.reverse();
    let out = LAbacus::new(mu);
    (out.multipartition(), out.multicharge())
}

/// Inverse of [`phi`]; `ell` is the level of the result.
pub fn phi_inverse(
    lambda_n: &MultiPartition,
    charges_n: &[i64],
    ell: usize,
) -> (MultiPartition, Vec<i64>) {
    assert!(ell >= 1);
    let n = lambda_n.level();
    let ab = LAbacus::from_multipartition(lambda_n, charges_n);
    let mut mu: Vec<BetaAbacus> = ab.runners().to_vec();
    mu.reverse();
    let runners = rotate(&mu, ell, ell, |c, j, q| {
        (ell - 1 - q, j * n as i64 + c as i64)
    });
    let out = LAbacus::new(runners);
    (out.multipartition(), out.multicharge())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsCore {
    pub core: MultiPartition,
    pub charges: Vec<i64>,
    pub core_multicharge: Vec<i64>,
}

/// `φ⁻¹(∅, s_n)` where `s_n` is the multicharge part of `φ(λ, s)`. The
/// core multicharge is `s_n` read backwards, i.e. the charges `t` of the
/// rotated abacus before reversal.
pub fn ns_core_of(lambda: &MultiPartition, charges: &[i64], n: usize) -> NsCore {
    let (_, sn) = phi(lambda, charges, n);
    let (core, core_charges) = phi_inverse(&MultiPartition::empty(n), &sn, lambda.level());
    NsCore {
        core,
        charges: core_charges,
        core_multicharge: sn.into_iter().rev().collect(),
    }
}

/// Bead conditions on the `ℓ`-abacus: a bead on runner `i < ℓ` has a bead
/// right above it; a bead at `k` on the top runner has a bead at `k − n` on
/// the bottom runner.
pub fn is_ns_core(lambda: &MultiPartition, charges: &[i64], n: usize) -> bool {
    let ab = LAbacus::from_multipartition(lambda, charges);
    let rs = ab.runners();
    let ell = rs.len();
    let n = n as i64;
    let lo = rs.iter().map(|r| r.threshold()).min().unwrap() - n;
    let hi = rs.iter().map(|r| r.max_position()).max().unwrap();
    (lo..=hi).all(|k| {
        (0..ell).all(|i| {
            !rs[i].is_occupied(k)
                || if i + 1 < ell {
                    rs[i + 1].is_occupied(k)
                } else {
                    rs[0].is_occupied(k - n)
                }
        })
    })
}
