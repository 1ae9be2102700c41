//! Partitions, β-abaci, the bijection `φ` between charged `ℓ`-partitions and
//! charged `n`-partitions, `(n, s)`-cores and the polynomials computing
//! their sizes.

mod abacus;
mod partition;
mod phi;
mod weights;

pub use abacus::{BetaAbacus, LAbacus};
pub use partition::{MultiPartition, Partition};
pub use phi::{is_ns_core, ns_core_of, phi, phi_inverse, NsCore};
pub use weights::{
    affine_action_on_charges, core_size, dilate, eval_dilated, eval_ps, granville_ono_form,
    granville_ono_scan, refined_go_form, refined_go_polynomial, scan_refined_go,
    scan_truncated_weight, WeightSpec,
};

/// `β_i = λ_i − i + s`.
pub fn beta_set(lambda: &Partition, s: i64) -> BetaAbacus {
    BetaAbacus::from_partition(lambda, s)
}

pub fn partition_of(b: &BetaAbacus) -> Partition {
    b.partition()
}
