//! Affine type `C_n^{(1)}` through its embedding in `A_{2n}^{(1)}`, and the
//! translation lattices of the classical affine types.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::affine_permutations::AffinePermutation;
use crate::finite_weyl::{atomic_length_finite, FiniteType, Series, SignedPermutation};
use crate::quadratic_forms::{
    universality_scan, ConstrainedDomain, Form, LatticeKind, ScanOptions, SeparableForm,
    UniversalityReport,
};
use crate::{Error, Result};

/// Upper end of the range on which thresholds are checked.
pub const THRESHOLD_RANGE_END: usize = 40;

/// An element of the affine Weyl group of type `C_n^{(1)}`, given by
/// `(w(1), …, w(n))`; the rest of the `A_{2n}^{(1)}` window is
/// `w(2n+1) = 2n+1` and `w(2n+1−i) = 2n+1 − w(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCAffineElement {
    n: usize,
    window: Vec<i64>,
}

fn full_window(window: &[i64]) -> Vec<i64> {
    let n = window.len();
    let m = 2 * n as i64 + 1;
    let mut full = window.to_vec();
    full.extend(window.iter().rev().map(|&w| m - w));
    full.push(m);
    full
}

impl TypeCAffineElement {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::BadLength {
                expected: 1,
                found: 0,
            });
        }
        let m = 2 * n as i64 + 1;
        if window.iter().any(|w| w.rem_euclid(m) == 0)
            || AffinePermutation::new(2 * n + 1, full_window(&window)).is_err()
        {
            return Err(Error::MirrorViolation(window));
        }
        Ok(Self { n, window })
    }

    /// Element with `w(i) = x_i + i`.
    pub fn from_displacement(x: &[i64]) -> Result<Self> {
        Self::new(
            x.iter()
                .enumerate()
                .map(|(i, v)| v + i as i64 + 1)
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn displacement(&self) -> Vec<i64> {
        self.window
            .iter()
            .enumerate()
            .map(|(i, w)| w - i as i64 - 1)
            .collect()
    }
}

pub fn lift_to_a(e: &TypeCAffineElement) -> AffinePermutation {
    AffinePermutation::new(2 * e.n + 1, full_window(&e.window)).expect("validated at construction")
}

/// `x_i + i ≢ 0` and `x_i + i ≢ ±(x_j + j)` modulo `2n+1`.
pub fn member_delta_c(x: &[i64]) -> bool {
    ConstrainedDomain::DeltaC { n: x.len() }.member(x)
}

/// `Σ x_i²`, the entropy of the corresponding type `C` element.
pub fn entropy_c(x: &[i64]) -> Result<u64> {
    if !member_delta_c(x) {
        return Err(Error::DomainViolation(
            x.to_vec(),
            format!("DeltaC_{}", x.len()),
        ));
    }
    Ok(x.iter().map(|v| (v * v) as u64).sum())
}

pub fn scan_delta_c(n: usize, max_target: i64, radius: u32) -> UniversalityReport {
    universality_scan(
        &Form::separable("E_C", SeparableForm::new(1, 1, vec![0; n], 0)),
        &ConstrainedDomain::DeltaC { n },
        max_target,
        radius,
        &ScanOptions::default(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AffineType {
    B1,
    C1,
    D1,
    A2Odd,
    A2Even,
    D2,
}

impl AffineType {
    pub const ALL: [AffineType; 6] = [
        Self::B1,
        Self::C1,
        Self::D1,
        Self::A2Odd,
        Self::A2Even,
        Self::D2,
    ];

    pub fn finite_series(self) -> Series {
        match self {
            Self::B1 | Self::D2 => Series::B,
            Self::C1 | Self::A2Odd | Self::A2Even => Series::C,
            Self::D1 => Series::D,
        }
    }

    pub fn coxeter_number(self, n: usize) -> i64 {
        let n = n as i64;
        match self {
            Self::B1 | Self::C1 => 2 * n,
            Self::D1 => 2 * n - 2,
            Self::A2Odd => 2 * n - 1,
            Self::A2Even => 2 * n + 1,
            Self::D2 => n + 1,
        }
    }

    pub fn lattice(self) -> LatticeKind {
        match self {
            Self::B1 | Self::D1 | Self::A2Odd => LatticeKind::EvenSum,
            Self::C1 => LatticeKind::AllEven,
            Self::A2Even | Self::D2 => LatticeKind::Full,
        }
    }

    /// `½‖x‖²` in terms of the Euclidean norm: `‖x‖₂² / d`.
    fn half_norm_denominator(self) -> i64 {
        match self {
            Self::C1 => 4,
            Self::D2 => 1,
            _ => 2,
        }
    }

    /// Values of `½‖x‖²` on `M` lie in `(1/grid) N`.
    pub fn grid(self) -> i64 {
        if self == Self::A2Even {
            2
        } else {
            1
        }
    }

    /// `b_{n−4} = max L_{ρ̄∨}` on the finite Weyl group of rank `n − 4`.
    pub fn b_minus_four(self, n: usize) -> Ratio<i64> {
        let m = n as i64 - 4;
        if m < 0 {
            return Ratio::from_integer(0);
        }
        let bc = Ratio::from_integer(m * (m + 1) * (4 * m - 1) / 6);
        match self {
            Self::D1 => Ratio::from_integer(m * (m - 1) * (2 * m - 1) / 3),
            Self::A2Even => bc / 2,
            _ => bc,
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::B1 => "B1",
            Self::C1 => "C1",
            Self::D1 => "D1",
            Self::A2Odd => "A2odd",
            Self::A2Even => "A2even",
            Self::D2 => "D2",
        })
    }
}

impl FromStr for AffineType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "b1" | "b^(1)" => Self::B1,
            "c1" | "c^(1)" => Self::C1,
            "d1" | "d^(1)" => Self::D1,
            "a2odd" | "a2n-1" | "a_{2n-1}^(2)" => Self::A2Odd,
            "a2even" | "a2n" | "a_{2n}^(2)" => Self::A2Even,
            "d2" | "dn+1" | "d_{n+1}^(2)" => Self::D2,
            _ => return Err(Error::Parse(format!("unknown affine type {s}"))),
        })
    }
}

/// An affine type at a given rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineLatticeSpec {
    pub ty: AffineType,
    pub n: usize,
}

impl AffineLatticeSpec {
    pub fn new(ty: AffineType, n: usize) -> Self {
        Self { ty, n }
    }

    pub fn domain(&self) -> ConstrainedDomain {
        ConstrainedDomain::Lattice {
            kind: self.ty.lattice(),
            n: self.n,
        }
    }

    pub fn form(&self) -> SeparableForm {
        SeparableForm::new(self.ty.half_norm_denominator(), 1, vec![0; self.n], 0)
    }

    pub fn h(&self) -> i64 {
        self.ty.coxeter_number(self.n)
    }
}

pub fn lattice_member(spec: &AffineLatticeSpec, x: &[i64]) -> bool {
    spec.domain().member(x)
}

/// `½‖x‖²` under the table's normalisation.
pub fn half_norm(spec: &AffineLatticeSpec, x: &[i64]) -> Ratio<i64> {
    let v = spec.form().eval(x);
    Ratio::new(*v.numer() as i64, *v.denom() as i64)
}

pub fn norm_universality_scan(
    spec: &AffineLatticeSpec,
    max_target: i64,
    radius: u32,
) -> UniversalityReport {
    universality_scan(
        &Form::separable(format!("half_norm[{}]", spec.ty), spec.form()),
        &spec.domain(),
        max_target,
        radius,
        &ScanOptions {
            grid: spec.ty.grid(),
            ..ScanOptions::default()
        },
    )
}

/// `h²k + b_{n−4} ≥ h²(k + step)`, with `step = 1/grid`.
pub fn threshold_holds(ty: AffineType, n: usize) -> bool {
    let h = ty.coxeter_number(n);
    ty.b_minus_four(n) >= Ratio::new(h * h, ty.grid())
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    #[serde(rename = "type")]
    pub ty: AffineType,
    pub n0: usize,
    pub check_range: (usize, usize),
    pub fails_below: bool,
}

/// Smallest `n ≥ 4` from which the interval-overlap inequality holds up to
/// [`THRESHOLD_RANGE_END`].
pub fn large_rank_threshold(ty: AffineType) -> ThresholdReport {
    let end = THRESHOLD_RANGE_END;
    let mut n0 = end + 1;
    while n0 > 4 && threshold_holds(ty, n0 - 1) {
        n0 -= 1;
    }
    ThresholdReport {
        ty,
        n0,
        check_range: (n0, end),
        fails_below: n0 == 4 || !threshold_holds(ty, n0 - 1),
    }
}

/// Grid points of `⟦0, upto⟧` not covered by `⋃_k ⟦h²k, h²k + b_{n−4}⟧`,
/// `k` running over `(1/grid) N`.
pub fn interval_union_gaps(ty: AffineType, n: usize, upto: i64) -> Vec<Ratio<i64>> {
    let g = ty.grid();
    let h2 = Ratio::from_integer(ty.coxeter_number(n).pow(2));
    let b = ty.b_minus_four(n);
    (0..=upto * g)
        .map(|k| Ratio::new(k, g))
        .filter(|&v| {
            let k = (v / h2 * g).floor() / g;
            v - h2 * k > b
        })
        .collect()
}

/// `L(t_x w̄) = L_{ρ̄∨}(w̄) + h² · ½‖x‖²` for `w̄` fixing `x`.
pub fn slice_atomic_length(
    spec: &AffineLatticeSpec,
    wbar: &SignedPermutation,
    x: &[i64],
) -> Result<Ratio<i64>> {
    if !lattice_member(spec, x) {
        return Err(Error::DomainViolation(x.to_vec(), spec.domain().name()));
    }
    if wbar.act(x) != x {
        return Err(Error::Invalid("w does not fix x".into()));
    }
    let dual = match spec.ty.finite_series() {
        Series::B => Series::C,
        Series::C => Series::B,
        s => s,
    };
    let ft = FiniteType::new(dual, spec.n)?;
    let signed = SignedPermutation::new(ft, wbar.perm().to_vec(), wbar.signs().to_vec())?;
    let mut finite = atomic_length_finite(ft, spec.n, &signed)?;
    if spec.ty == AffineType::A2Even {
        finite /= 2;
    }
    let h = spec.h();
    Ok(finite + half_norm(spec, x) * (h * h))
}
