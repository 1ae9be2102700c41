//! Entropy and atomic length of (affine) Weyl group elements.
//!
//! The crate collects the combinatorial machinery needed to study the image
//! of atomic-length statistics:
//!
//! * [`affine_permutations`]: type `A_{n-1}^{(1)}` affine permutations in
//!   window notation, their entropy and the ρ-atomic length.
//! * [`quadratic_forms`]: the forms `P`, `Q`, `q` on their constrained
//!   domains, a pruned representation search, universality scans and
//!   modular obstructions.
//! * [`sumsets`]: Hall decompositions and orbit difference sets in
//!   `(Z/mZ)^n`.
//! * [`cores_abaci`]: partitions, β-abaci, the rectangle-rotation bijection
//!   between charged `ℓ`-partitions and charged `n`-partitions, `(n,s)`-cores
//!   and the polynomial expressions of their sizes.
//! * [`finite_weyl`]: finite classical Weyl groups as signed permutations
//!   and the truncated-ρ atomic length.
//! * [`affine_classical`]: affine type `C` entropy through the `A_{2n}^{(1)}`
//!   embedding, norm universality on the classical affine lattices and the
//!   large-rank thresholds.
//! * [`cli`]: the `atomlen` command line front end.

pub mod affine_classical;
pub mod affine_permutations;
pub mod cli;
pub mod cores_abaci;
mod error;
pub mod finite_weyl;
pub mod quadratic_forms;
pub mod sumsets;
mod util;

pub use error::{Error, Result};
