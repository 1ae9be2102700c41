//! Affine permutations of type `A_{n-1}^{(1)}` in window notation.
//!
//! An affine permutation is a bijection `w: Z -> Z` with
//! `w(i + kn) = w(i) + kn`; it is determined by its window
//! `(w(1), ..., w(n))`, whose entries have pairwise distinct residues modulo
//! `n` and sum to `n(n+1)/2`.
//!
//! Translations act by `t_x(i) = i + n x_i` for `x` in the root lattice
//! `{x in Z^n : sum x = 0}`, and every element factors uniquely as
//! `w = t_x · w̄` with `w̄` a finite permutation.

use std::fmt;
use std::str::FromStr;

use crate::util::{format_csv, next_permutation, parse_csv};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

/// Element of the root lattice `Q_n`: an integer vector with zero sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranslationVector(Vec<i64>);

/// A permutation of `{1, ..., n}` stored by its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePermutation(Vec<usize>);

impl TranslationVector {
    pub fn new(x: Vec<i64>) -> Result<Self> {
        let s: i64 = x.iter().sum();
        if s != 0 {
            return Err(Error::BadSum {
                expected: 0,
                found: s,
            });
        }
        Ok(Self(x))
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn norm_sq(&self) -> i64 {
        self.0.iter().map(|v| v * v).sum()
    }
}

impl FinitePermutation {
    /// Builds a permutation from its 1-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &img) in images.iter().enumerate() {
            if img == 0 || img > n {
                return Err(Error::BadIndex(img));
            }
            if seen[img - 1] {
                let j = images.iter().position(|&v| v == img).unwrap();
                return Err(Error::ResidueClash(j + 1, i + 1));
            }
            seen[img - 1] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// Coordinate permutation action: `(σ·y)_{σ(i)} = y_i`.
    pub fn act(&self, y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; y.len()];
        for (i, &v) in y.iter().enumerate() {
            out[self.0[i] - 1] = v;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// All permutations of `{1, ..., n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<FinitePermutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![FinitePermutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(FinitePermutation(cur.clone()));
        }
        out
    }
}

impl AffinePermutation {
    /// Validates a window of length `n`.
    pub fn new(n: usize, window: Vec<i64>) -> Result<Self> {
        if n == 0 || window.len() != n {
            return Err(Error::BadLength {
                expected: n,
                found: window.len(),
            });
        }
        let modulus = n as i64;
        let mut owner = vec![usize::MAX; n];
        for (i, &v) in window.iter().enumerate() {
            let r = v.rem_euclid(modulus) as usize;
            if owner[r] != usize::MAX {
                return Err(Error::ResidueClash(owner[r] + 1, i + 1));
            }
            owner[r] = i;
        }
        let expected = modulus * (modulus + 1) / 2;
        let found: i64 = window.iter().sum();
        if found != expected {
            return Err(Error::BadSum { expected, found });
        }
        Ok(Self { window })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            window: (1..=n as i64).collect(),
        }
    }

    /// The pure translation `t_x`.
    pub fn translation(x: &TranslationVector) -> Self {
        let n = x.0.len() as i64;
        Self {
            window: x
                .0
                .iter()
                .enumerate()
                .map(|(i, &xi)| i as i64 + 1 + n * xi)
                .collect(),
        }
    }

    /// Recomposes `t_x · w̄`.
    pub fn from_parts(x: &TranslationVector, wbar: &FinitePermutation) -> Result<Self> {
        if x.0.len() != wbar.rank() {
            return Err(Error::RankMismatch(x.0.len(), wbar.rank()));
        }
        let n = x.0.len() as i64;
        let window = wbar
            .0
            .iter()
            .map(|&img| img as i64 + n * x.0[img - 1])
            .collect();
        Ok(Self { window })
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as i64 + 1)
    }

    /// `w(i)` for any integer `i`, through periodic extension.
    pub fn apply(&self, i: i64) -> i64 {
        let n = self.rank() as i64;
        let k = (i - 1).div_euclid(n);
        let r = (i - 1).rem_euclid(n) as usize;
        self.window[r] + k * n
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(Self {
            window: other.window.iter().map(|&v| self.apply(v)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let n = self.rank() as i64;
        let mut window = vec![0; self.rank()];
        for (i, &v) in self.window.iter().enumerate() {
            let k = (v - 1).div_euclid(n);
            let r = (v - 1).rem_euclid(n) as usize;
            window[r] = i as i64 + 1 - k * n;
        }
        Self { window }
    }

    /// Dual decomposition `w = w̄ · t_y`, read off as `w(i) = w̄(i) + n y_i`.
    pub fn dual_decompose(&self) -> (FinitePermutation, TranslationVector) {
        let n = self.rank() as i64;
        let mut images = Vec::with_capacity(self.rank());
        let mut y = Vec::with_capacity(self.rank());
        for &v in &self.window {
            let img = (v - 1).rem_euclid(n) + 1;
            images.push(img as usize);
            y.push((v - img) / n);
        }
        (FinitePermutation(images), TranslationVector(y))
    }

    /// Decomposition `w = t_x · w̄`, with `x = w̄(y)` from the dual form.
    pub fn decompose(&self) -> (TranslationVector, FinitePermutation) {
        let (wbar, y) = self.dual_decompose();
        let x = wbar.act(&y.0);
        (TranslationVector(x), wbar)
    }

    /// `E(w) = ½ Σ (w(i) - i)²`.
    pub fn entropy(&self) -> u64 {
        let twice: i128 = self
            .window
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let d = (v - i as i64 - 1) as i128;
                d * d
            })
            .sum();
        assert!(
            twice % 2 == 0,
            "odd squared displacement sum {twice} for {self}"
        );
        (twice / 2) as u64
    }

    /// `½ Σ w(i)² − Σ i·w(i) + n(n+1)(2n+1)/12`, evaluated from the window.
    pub fn atomic_length_rho(&self) -> u64 {
        let n = self.rank() as i128;
        let mut twice: i128 = n * (n + 1) * (2 * n + 1) / 6;
        for (i, &v) in self.window.iter().enumerate() {
            let v = v as i128;
            twice += v * v - 2 * (i as i128 + 1) * v;
        }
        assert!(
            twice % 2 == 0 && twice >= 0,
            "atomic length numerator {twice} is not a nonnegative even integer for {self}"
        );
        (twice / 2) as u64
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_csv(&self.window))
    }
}

impl FromStr for AffinePermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let window = parse_csv(s)?;
        Self::new(window.len(), window)
    }
}

/// All `x` in `Q_n` with `‖x‖² <= max_norm`, sorted by norm then
/// lexicographically.
pub fn root_lattice_ball(n: usize, max_norm: u64) -> Vec<TranslationVector> {
    fn rec(
        n: usize,
        max_norm: i64,
        bound: i64,
        prefix: &mut Vec<i64>,
        used: i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        if prefix.len() + 1 == n {
            let last = -prefix.iter().sum::<i64>();
            if used + last * last <= max_norm {
                let mut v = prefix.clone();
                v.push(last);
                out.push(v);
            }
            return;
        }
        for c in -bound..=bound {
            let u = used + c * c;
            if u > max_norm {
                continue;
            }
            prefix.push(c);
            rec(n, max_norm, bound, prefix, u, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let max_norm = max_norm as i64;
    let bound = (max_norm as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    rec(n, max_norm, bound, &mut Vec::new(), 0, &mut out);
    let mut xs: Vec<TranslationVector> = out.into_iter().map(TranslationVector).collect();
    xs.sort_by_key(|x| (x.norm_sq(), x.clone()));
    xs
}

/// Every `t_x · w̄` with `‖x‖² <= max_norm`: translations in ascending norm
/// then lexicographic order, each followed by all `n!` finite permutations
/// in lexicographic order.
pub fn enumerate_bounded(n: usize, max_norm: u64) -> impl Iterator<Item = AffinePermutation> {
    let xs = root_lattice_ball(n, max_norm);
    let perms = FinitePermutation::all(n);
    xs.into_iter().flat_map(move |x| {
        perms
            .clone()
            .into_iter()
            .map(move |p| AffinePermutation::from_parts(&x, &p).expect("equal ranks"))
    })
}
