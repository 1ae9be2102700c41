use num_rational::Ratio;

use super::partition::{MultiPartition, Partition};
use super::phi::phi_inverse;
use crate::quadratic_forms::{
    universality_scan, ConstrainedDomain, Form, ScanOptions, SeparableForm, UniversalityReport,
};
use crate::{Error, Result};

/// A dominant weight `Λ_{s_1} + … + Λ_{s_ℓ}` of type `A_{n−1}^{(1)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSpec {
    n: usize,
    s: Vec<i64>,
    sprime: Vec<i64>,
}

impl WeightSpec {
    /// `s` must be weakly increasing with entries in `⟦0, n−1⟧` and
    /// `1 ≤ ℓ ≤ n`.
    pub fn new(n: usize, s: Vec<i64>) -> Result<Self> {
        let ell = s.len();
        if ell == 0 || ell > n {
            return Err(Error::BadEll {
                ell,
                context: format!("weight of rank {n}"),
            });
        }
        if s.windows(2).any(|w| w[0] > w[1]) || s.iter().any(|&x| x < 0 || x >= n as i64) {
            return Err(Error::Invalid(format!(
                "{s:?} must be weakly increasing in [0, {n})"
            )));
        }
        let kappa = Partition::new(s.iter().rev().map(|&x| x as u64).collect())?;
        let mut sprime: Vec<i64> = kappa
            .conjugate()
            .parts()
            .iter()
            .map(|&p| p as i64)
            .collect();
        sprime.resize(n, 0);
        sprime.sort_unstable();
        Ok(Self { n, s, sprime })
    }

    /// `Λ_0 + … + Λ_{ℓ−1}`.
    pub fn truncated(n: usize, ell: usize) -> Result<Self> {
        Self::new(n, (0..ell as i64).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[i64] {
        &self.s
    }

    pub fn sprime(&self) -> &[i64] {
        &self.sprime
    }

    pub fn domain(&self) -> ConstrainedDomain {
        ConstrainedDomain::Ds {
            ell: self.ell(),
            sprime: self.sprime.clone(),
        }
    }

    /// `2ℓ · c_s`.
    fn scaled_constant(&self) -> i64 {
        let n = self.n as i64;
        let l2 = 2 * self.ell() as i64;
        let sq: i64 = self.sprime.iter().map(|x| x * x).sum();
        let lin: i64 = self
            .sprime
            .iter()
            .enumerate()
            .map(|(i, x)| i as i64 * x)
            .sum();
        n * sq - l2 * lin
    }

    /// The normalising constant `c_s`.
    pub fn c_s(&self) -> Ratio<i64> {
        Ratio::new(self.scaled_constant(), 2 * self.ell() as i64)
    }

    /// `P_s` as a separable form over `2ℓ`.
    pub fn polynomial(&self) -> SeparableForm {
        let l2 = 2 * self.ell() as i64;
        SeparableForm::new(
            l2,
            self.n as i64,
            (0..self.n as i64).map(|i| -l2 * i).collect(),
            -self.scaled_constant(),
        )
    }
}

/// `P_s(t) = (n/2ℓ) Σ t_i² − Σ (i−1) t_i − c_s` on `D_s`.
pub fn eval_ps(spec: &WeightSpec, t: &[i64]) -> Result<i64> {
    if !spec.domain().member(t) {
        return Err(Error::NotInDs(t.to_vec()));
    }
    let v = spec.polynomial().eval(t);
    assert!(v.is_integer(), "P_s is not integral at {t:?}");
    Ok(v.to_integer() as i64)
}

/// Size of the `(n, s)`-core `φ⁻¹(∅, t)`.
pub fn core_size(spec: &WeightSpec, t: &[i64]) -> u64 {
    let (core, _) = phi_inverse(&MultiPartition::empty(spec.n()), t, spec.ell());
    core.size()
}

/// Apply the generators of `word` left to right: `s_i` swaps `t_i` and
/// `t_{i+1}`, and `s_0` sends `(t_1, …, t_n)` to `(t_n − ℓ, …, t_1 + ℓ)`.
pub fn affine_action_on_charges(word: &[usize], t: &[i64], ell: usize) -> Result<Vec<i64>> {
    let n = t.len();
    let mut t = t.to_vec();
    for &g in word {
        if g >= n {
            return Err(Error::BadIndex(g));
        }
        if g == 0 {
            let (first, last) = (t[0], t[n - 1]);
            t[0] = last - ell as i64;
            t[n - 1] = first + ell as i64;
        } else {
            t.swap(g - 1, g);
        }
    }
    Ok(t)
}

/// `F̂_s(z) = ½‖z‖² − ½‖(n/ℓ)s′ − δ‖²` on `(n/ℓ) D_s − δ`, `δ = (0, …, n−1)`.
pub fn eval_dilated(spec: &WeightSpec, z: &[Ratio<i64>]) -> Result<Ratio<i64>> {
    let n = spec.n() as i64;
    let ell = spec.ell() as i64;
    let scale = Ratio::new(n, ell);
    let t: Option<Vec<i64>> = z
        .iter()
        .enumerate()
        .map(|(i, &zi)| {
            let ti = (zi + i as i64) / scale;
            ti.is_integer().then(|| ti.to_integer())
        })
        .collect();
    let as_ints = || z.iter().map(|r| r.to_integer()).collect::<Vec<_>>();
    match t {
        Some(t) if z.len() == spec.n() && spec.domain().member(&t) => {}
        _ => {
            return Err(Error::DomainViolation(
                as_ints(),
                "(n/l) D_s - delta".into(),
            ))
        }
    }
    let half_sq = |v: &mut dyn Iterator<Item = Ratio<i64>>| {
        v.map(|x| x * x).fold(Ratio::from_integer(0), |a, b| a + b) / 2
    };
    let d_hat = half_sq(
        &mut spec
            .sprime()
            .iter()
            .enumerate()
            .map(|(i, &s)| scale * s - i as i64),
    );
    Ok(half_sq(&mut z.iter().copied()) - d_hat)
}

/// `(n/ℓ) t − δ`.
pub fn dilate(spec: &WeightSpec, t: &[i64]) -> Vec<Ratio<i64>> {
    let scale = Ratio::new(spec.n() as i64, spec.ell() as i64);
    t.iter()
        .enumerate()
        .map(|(i, &x)| scale * x - i as i64)
        .collect()
}

/// Universality scan of `P_{(0,…,ℓ−1)}` on `D_{(0^{n−ℓ+1},1,…,ℓ−1)}`.
pub fn scan_truncated_weight(
    n: usize,
    ell: usize,
    max_target: i64,
    radius: u32,
) -> Result<UniversalityReport> {
    let spec = WeightSpec::truncated(n, ell)?;
    let form = Form::separable(format!("P_trunc(ell={ell})"), spec.polynomial());
    Ok(universality_scan(
        &form,
        &spec.domain(),
        max_target,
        radius,
        &ScanOptions::default(),
    ))
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `P_s(t) = (n/2) Σ t_i² + Σ (i−1) t_i − s(n−1)/2 − s²/2` with
/// `s = n(n−1)/2`, as a form over 2.
pub fn refined_go_polynomial(n: usize) -> SeparableForm {
    let ni = n as i64;
    let s = ni * (ni - 1) / 2;
    SeparableForm::new(
        2,
        ni,
        (0..ni).map(|i| 2 * i).collect(),
        -(s * (ni - 1) + s * s),
    )
}

/// `Q_s = P_s − P_s(0, …, n−1)`, with `P_s(0, …, n−1) = C(n+2, 4)`.
pub fn refined_go_form(n: usize) -> SeparableForm {
    let mut f = refined_go_polynomial(n);
    f.constant -= 2 * binomial(n as i64 + 2, 4);
    f
}

/// Scan of `Q_s` on `O_s`.
pub fn scan_refined_go(n: usize, max_target: i64, radius: u32) -> UniversalityReport {
    universality_scan(
        &Form::separable("Q_s", refined_go_form(n)),
        &ConstrainedDomain::Os { n },
        max_target,
        radius,
        &ScanOptions::default(),
    )
}

/// `(n/2) Σ x_i² + Σ (i−1) x_i` on `Q_n`.
pub fn granville_ono_form(n: usize) -> SeparableForm {
    SeparableForm::new(2, n as i64, (0..n as i64).map(|i| 2 * i).collect(), 0)
}

pub fn granville_ono_scan(n: usize, max_target: i64, radius: u32) -> UniversalityReport {
    universality_scan(
        &Form::separable("GKS", granville_ono_form(n)),
        &ConstrainedDomain::RootLattice { n },
        max_target,
        radius,
        &ScanOptions::default(),
    )
}
