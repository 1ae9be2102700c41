//! Finite classical Weyl groups as signed permutations of `ε`-coordinates,
//! and the atomic length attached to `ρ̄_ℓ = ω_n + … + ω_{n−ℓ+1}`.
//!
//! Conventions follow Bourbaki: `α_i = ε_i − ε_{i+1}` for `i < n`, then
//! `α_n = ε_n − ε_{n+1}` (A), `ε_n` (B), `2ε_n` (C) or `ε_{n−1} + ε_n` (D).
//! Type `A_n` lives in the hyperplane `Σ ε_i = 0` of `R^{n+1}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::util::{factorial, next_permutation};
use crate::{Error, Result};

type Q = Ratio<i64>;

/// Default cap on `|W|` for exhaustive enumeration.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            "C" | "c" => Ok(Self::C),
            "D" | "d" => Ok(Self::D),
            _ => Err(Error::Parse(format!("unknown finite type {s}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteType {
    pub series: Series,
    pub n: usize,
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.n)
    }
}

impl FiniteType {
    pub fn new(series: Series, n: usize) -> Result<Self> {
        let min = match series {
            Series::A => 1,
            Series::B | Series::C => 2,
            Series::D => 4,
        };
        if n < min {
            return Err(Error::Invalid(format!(
                "{series:?}{n} needs rank at least {min}"
            )));
        }
        Ok(Self { series, n })
    }

    /// Number of `ε`-coordinates.
    pub fn dim(&self) -> usize {
        match self.series {
            Series::A => self.n + 1,
            _ => self.n,
        }
    }

    pub fn order(&self) -> u128 {
        match self.series {
            Series::A => factorial(self.n + 1),
            Series::B | Series::C => factorial(self.n) << self.n,
            Series::D => factorial(self.n) << (self.n - 1),
        }
    }

    pub fn check_ell(&self, ell: usize) -> Result<()> {
        let lo = if self.series == Series::D { 2 } else { 1 };
        if ell < lo || ell > self.n {
            return Err(Error::BadEll {
                ell,
                context: self.to_string(),
            });
        }
        Ok(())
    }

    pub fn simple_roots(&self) -> Vec<Vec<Q>> {
        let d = self.dim();
        let n = self.n;
        let unit = |i: usize| {
            let mut v = vec![Q::zero(); d];
            v[i] = Q::one();
            v
        };
        let sub = |a: Vec<Q>, b: Vec<Q>| a.into_iter().zip(b).map(|(x, y)| x - y).collect();
        let mut roots: Vec<Vec<Q>> = (0..n - 1).map(|i| sub(unit(i), unit(i + 1))).collect();
        roots.push(match self.series {
            Series::A => sub(unit(n - 1), unit(n)),
            Series::B => unit(n - 1),
            Series::C => unit(n - 1).into_iter().map(|x| x * 2).collect(),
            Series::D => {
                let mut v = unit(n - 1);
                v[n - 2] = Q::one();
                v
            }
        });
        roots
    }

    /// Fundamental weight `ω_i` in `ε`-coordinates, `1 ≤ i ≤ n`.
    pub fn omega_eps(&self, i: usize) -> Result<Vec<Q>> {
        let n = self.n;
        if i == 0 || i > n {
            return Err(Error::BadIndex(i));
        }
        let d = self.dim();
        let half = Q::new(1, 2);
        let mut v: Vec<Q> = (0..d)
            .map(|k| if k < i { Q::one() } else { Q::zero() })
            .collect();
        match self.series {
            Series::A => {
                let shift = Q::new(i as i64, d as i64);
                v.iter_mut().for_each(|x| *x -= shift);
            }
            Series::B if i == n => v.iter_mut().for_each(|x| *x = half),
            Series::D if i == n => v.iter_mut().for_each(|x| *x = half),
            Series::D if i == n - 1 => {
                v.iter_mut().for_each(|x| *x = half);
                v[n - 1] = -half;
            }
            _ => {}
        }
        Ok(v)
    }

    /// `ρ̄_ℓ = ω_n + … + ω_{n−ℓ+1}` in `ε`-coordinates.
    pub fn rho_bar(&self, ell: usize) -> Result<Vec<Q>> {
        self.check_ell(ell)?;
        let mut acc = vec![Q::zero(); self.dim()];
        for i in self.n + 1 - ell..=self.n {
            for (a, b) in acc.iter_mut().zip(self.omega_eps(i)?) {
                *a += b;
            }
        }
        Ok(acc)
    }
}

/// Exact coefficients on the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightInRoots(pub Vec<Q>);

impl WeightInRoots {
    pub fn height(&self) -> Q {
        self.0.iter().copied().sum()
    }
}

/// Change of basis from `ε`-coordinates to root coordinates.
#[derive(Debug, Clone)]
pub struct RootBasis {
    ty: FiniteType,
    inverse: Vec<Vec<Q>>,
    height_row: Vec<Q>,
}

fn invert(mut m: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("singular matrix");
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..n {
                    let (a, b) = (m[col][j], inv[col][j]);
                    m[r][j] -= f * a;
                    inv[r][j] -= f * b;
                }
            }
        }
    }
    inv
}

impl RootBasis {
    pub fn new(ty: FiniteType) -> Self {
        let n = ty.n;
        let roots = ty.simple_roots();
        // Rows are ε-coordinates 1..n, columns the simple roots.
        let m: Vec<Vec<Q>> = (0..n)
            .map(|k| roots.iter().map(|r| r[k]).collect())
            .collect();
        let inverse = invert(m);
        let height_row = (0..n)
            .map(|k| inverse.iter().map(|row| row[k]).sum())
            .collect();
        Self {
            ty,
            inverse,
            height_row,
        }
    }

    /// Root coordinates of `v`, which must lie in the span of the roots.
    pub fn to_roots(&self, v: &[Q]) -> WeightInRoots {
        assert_eq!(v.len(), self.ty.dim());
        if self.ty.series == Series::A {
            assert!(
                v.iter().copied().sum::<Q>().is_zero(),
                "not in the root hyperplane"
            );
        }
        WeightInRoots(
            self.inverse
                .iter()
                .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn height(&self, v: &[Q]) -> Q {
        self.height_row.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

pub fn omega_in_roots(ty: FiniteType, i: usize) -> Result<WeightInRoots> {
    let w = ty.omega_eps(i)?;
    Ok(RootBasis::new(ty).to_roots(&w))
}

/// `v ↦ (v_i ↦ sign_i · v_i at position perm[i])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    ty: FiniteType,
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(ty: FiniteType, perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let d = ty.dim();
        if perm.len() != d || signs.len() != d {
            return Err(Error::BadLength {
                expected: d,
                found: perm.len().min(signs.len()),
            });
        }
        let mut seen = vec![false; d];
        for &p in &perm {
            if p >= d || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
        }
        let negatives = signs.iter().filter(|&&s| s == -1).count();
        let ok_signs = signs.iter().all(|&s| s == 1 || s == -1)
            && match ty.series {
                Series::A => negatives == 0,
                Series::D => negatives % 2 == 0,
                _ => true,
            };
        if !ok_signs {
            return Err(Error::Invalid(format!(
                "signs {signs:?} not allowed in type {ty}"
            )));
        }
        Ok(Self { ty, perm, signs })
    }

    pub fn identity(ty: FiniteType) -> Self {
        let d = ty.dim();
        Self {
            ty,
            perm: (0..d).collect(),
            signs: vec![1; d],
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn act<T: Copy + Zero + std::ops::Neg<Output = T>>(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[self.perm[i]] = if self.signs[i] < 0 { -x } else { x };
        }
        out
    }
}

/// The longest element.
pub fn w0_action(ty: FiniteType) -> SignedPermutation {
    let d = ty.dim();
    let n = ty.n;
    let (perm, signs) = match ty.series {
        Series::A => ((0..d).rev().collect(), vec![1; d]),
        Series::B | Series::C => ((0..d).collect(), vec![-1; d]),
        Series::D => {
            let mut s = vec![-1; d];
            if n % 2 == 1 {
                s[n - 1] = 1;
            }
            ((0..d).collect(), s)
        }
    };
    SignedPermutation::new(ty, perm, signs).expect("w0 is a group element")
}

/// Every element of the group, permutations in lexicographic order and,
/// for each, sign patterns in binary order.
pub fn elements(ty: FiniteType) -> Vec<SignedPermutation> {
    let d = ty.dim();
    let mut perm: Vec<usize> = (0..d).collect();
    let sign_patterns: Vec<Vec<i8>> = match ty.series {
        Series::A => vec![vec![1; d]],
        _ => (0u32..1 << d)
            .map(|mask| {
                (0..d)
                    .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                    .collect()
            })
            .filter(|s: &Vec<i8>| {
                ty.series != Series::D || s.iter().filter(|&&x| x < 0).count() % 2 == 0
            })
            .collect(),
    };
    let mut out = Vec::new();
    loop {
        for s in &sign_patterns {
            out.push(SignedPermutation {
                ty,
                perm: perm.clone(),
                signs: s.clone(),
            });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// `ht(ρ̄_ℓ − w ρ̄_ℓ)`.
pub fn atomic_length_finite(ty: FiniteType, ell: usize, w: &SignedPermutation) -> Result<Q> {
    let rho = ty.rho_bar(ell)?;
    let basis = RootBasis::new(ty);
    let wr = w.act(&rho);
    let diff: Vec<Q> = rho.iter().zip(&wr).map(|(a, b)| a - b).collect();
    Ok(basis.height(&diff))
}

/// Closed form for `max_W L_{ρ̄_ℓ} = L_{ρ̄_ℓ}(w_0)`.
pub fn b_bound(ty: FiniteType, ell: usize) -> Result<i64> {
    ty.check_ell(ell)?;
    let n = ty.n as i64;
    let l = ell as i64;
    Ok(match ty.series {
        Series::A => l * (l + 1) * (3 * n - 2 * l + 2) / 6,
        Series::B => (3 * n * (n + 1) * (2 * l - 1) - 2 * l * (l * l - 1)) / 6,
        Series::C => ((6 * n * n - 1) * l - l * l * (2 * l - 3)) / 6,
        Series::D => (l - 1) * (3 * n * n - 3 * n - l * (l - 2)) / 3,
    })
}

/// The image is predicted to be `⟦0, b_{n,ℓ}⟧` exactly when `n ≠ 2`, or
/// `n = 2` and `ℓ ∈ {1, 3}`.
pub fn predicted_saturation(n: usize, ell: usize) -> bool {
    if n == 2 {
        ell == 1 || ell == 3
    } else {
        ell <= n
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SaturationReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub n: usize,
    pub ell: usize,
    pub b: i64,
    pub image_min: i64,
    pub image_max: i64,
    pub is_interval: bool,
    pub predicted: bool,
    pub missing: Vec<i64>,
}

/// Enumerate `W` and compare the image of `L_{ρ̄_ℓ}` with `⟦0, b_{n,ℓ}⟧`.
pub fn saturation_check(ty: FiniteType, ell: usize, budget: u128) -> Result<SaturationReport> {
    let b = b_bound(ty, ell)?;
    let order = ty.order();
    if order > budget {
        return Err(Error::BudgetExceeded {
            needed: order,
            budget,
        });
    }
    let rho = ty.rho_bar(ell)?;
    let basis = RootBasis::new(ty);
    let base = basis.height(&rho);
    let mut image = BTreeSet::new();
    for w in elements(ty) {
        let v = base - basis.height(&w.act(&rho));
        assert!(
            v.is_integer() && v >= Q::zero(),
            "non-integral atomic length {v}"
        );
        image.insert(v.to_integer());
    }
    let image_min = *image.first().expect("nonempty group");
    let image_max = *image.last().unwrap();
    let missing: Vec<i64> = (0..=b).filter(|k| !image.contains(k)).collect();
    Ok(SaturationReport {
        ty: ty.to_string(),
        n: ty.n,
        ell,
        b,
        image_min,
        image_max,
        is_interval: missing.is_empty() && image_min == 0 && image_max == b,
        predicted: predicted_saturation(ty.n, ell),
        missing,
    })
}
