//! Hall decompositions and orbit difference sets in `(Z/mZ)^n`.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::util::is_prime;
use crate::{Error, Result};

/// Cap on `|A|²` for explicit difference sets.
pub const DEFAULT_PAIR_BUDGET: u128 = 100_000_000;

/// A vector over `Z/mZ` with entries in `⟦0, m−1⟧`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModVector {
    m: u64,
    entries: Vec<u64>,
}

impl ModVector {
    pub fn new(m: u64, raw: &[i64]) -> Self {
        assert!(m >= 1);
        Self {
            m,
            entries: raw.iter().map(|&x| x.rem_euclid(m as i64) as u64).collect(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.m, other.m);
        assert_eq!(self.len(), other.len());
        Self {
            m: self.m,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b) % self.m)
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.m;
        self.zip(other, move |a, b| a + m - b)
    }
}

/// Find an enumeration `a` of `Z/mZ` and a permutation `b` with
/// `b_i − a_i = d_i`. Values of `a` are tried in increasing order, so the
/// result is the lexicographically smallest such `a`.
pub fn hall_decompose(m: u64, d: &[i64]) -> Result<(Vec<u64>, Vec<u64>)> {
    if d.len() as u64 != m {
        return Err(Error::BadLength {
            expected: m as usize,
            found: d.len(),
        });
    }
    let total: i64 = d.iter().sum();
    if total.rem_euclid(m as i64) != 0 {
        return Err(Error::BadSum {
            expected: 0,
            found: total.rem_euclid(m as i64),
        });
    }
    let d: Vec<u64> = d.iter().map(|&x| x.rem_euclid(m as i64) as u64).collect();
    let m = m as usize;
    let mut a = Vec::with_capacity(m);
    let mut used_a = vec![false; m];
    let mut used_b = vec![false; m];

    fn rec(d: &[u64], a: &mut Vec<u64>, used_a: &mut [bool], used_b: &mut [bool]) -> bool {
        let m = d.len();
        let i = a.len();
        if i == m {
            return true;
        }
        for v in 0..m {
            let b = (v + d[i] as usize) % m;
            if used_a[v] || used_b[b] {
                continue;
            }
            used_a[v] = true;
            used_b[b] = true;
            a.push(v as u64);
            if rec(d, a, used_a, used_b) {
                return true;
            }
            a.pop();
            used_a[v] = false;
            used_b[b] = false;
        }
        false
    }

    if !rec(&d, &mut a, &mut used_a, &mut used_b) {
        return Err(Error::SearchFailed(format!(
            "no Hall decomposition for {d:?}"
        )));
    }
    let b: Vec<u64> = a
        .iter()
        .zip(&d)
        .map(|(&x, &y)| (x + y) % m as u64)
        .collect();
    Ok((a, b))
}

pub fn difference_set(a: &[ModVector]) -> BTreeSet<ModVector> {
    a.iter()
        .flat_map(|x| a.iter().map(move |y| x.sub(y)))
        .collect()
}

pub fn sumset(a: &[ModVector]) -> BTreeSet<ModVector> {
    a.iter()
        .flat_map(|x| a.iter().map(move |y| x.add(y)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    A,
    C,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Self::A),
            "C" | "c" => Ok(Self::C),
            _ => Err(Error::Parse(format!("unknown family {s}"))),
        }
    }
}

impl Family {
    pub fn default_modulus(self, n: usize) -> u64 {
        match self {
            Self::A => n as u64,
            Self::C => 2 * n as u64 + 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OrbitSet {
    pub family: Family,
    pub n: usize,
    pub modulus: u64,
    pub elements: BTreeSet<ModVector>,
}

impl OrbitSet {
    pub fn to_vec(&self) -> Vec<ModVector> {
        self.elements.iter().cloned().collect()
    }
}

/// Orbit of `(1, …, n)` under adjacent transpositions, plus the sign change
/// of the last coordinate for family `C`.
pub fn build_orbit(family: Family, n: usize, modulus: Option<u64>) -> OrbitSet {
    assert!(n >= 1);
    let m = modulus.unwrap_or_else(|| family.default_modulus(n));
    let start = ModVector::new(m, &(1..=n as i64).collect::<Vec<_>>());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let mut next = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut w = v.clone();
            w.entries.swap(i, i + 1);
            next.push(w);
        }
        if family == Family::C {
            let mut w = v.clone();
            w.entries[n - 1] = (m - w.entries[n - 1]) % m;
            next.push(w);
        }
        for w in next {
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    OrbitSet {
        family,
        n,
        modulus: m,
        elements: seen,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SumsetCertificate {
    pub family: Family,
    pub n: usize,
    pub modulus: u64,
    pub equal: bool,
    pub missing: Vec<Vec<u64>>,
}

fn encode(v: &[u64], m: u64) -> usize {
    v.iter()
        .rev()
        .fold(0usize, |acc, &x| acc * m as usize + x as usize)
}

fn decode(mut code: usize, m: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let x = (code % m as usize) as u64;
            code /= m as usize;
            x
        })
        .collect()
}

/// Compare the orbit's difference set with its predicted value: the
/// zero-sum subgroup for family `A`, the whole group for family `C`.
pub fn verify_sumset_equality(
    family: Family,
    n: usize,
    modulus: Option<u64>,
    budget: u128,
) -> Result<SumsetCertificate> {
    let m = modulus.unwrap_or_else(|| family.default_modulus(n));
    let group = (m as u128).pow(n as u32);
    let predicted_orbit = match family {
        Family::A => crate::util::factorial(n),
        Family::C => crate::util::factorial(n) << n,
    };
    let needed = (predicted_orbit * predicted_orbit).max(group);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let orbit = build_orbit(family, n, Some(m));
    let elems: Vec<&[u64]> = orbit.elements.iter().map(|v| v.entries()).collect();
    let size = group as usize;
    let hit = elems
        .par_iter()
        .fold(
            || vec![false; size],
            |mut acc, x| {
                for y in &elems {
                    let d: Vec<u64> = x
                        .iter()
                        .zip(y.iter())
                        .map(|(&a, &b)| (a + m - b) % m)
                        .collect();
                    acc[encode(&d, m)] = true;
                }
                acc
            },
        )
        .reduce(
            || vec![false; size],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                a
            },
        );
    let mut missing = Vec::new();
    for (code, &h) in hit.iter().enumerate() {
        let v = decode(code, m, n);
        let predicted = match family {
            Family::A => v.iter().sum::<u64>() % m == 0,
            Family::C => true,
        };
        if predicted && !h {
            missing.push(v);
        }
    }
    missing.sort();
    Ok(SumsetCertificate {
        family,
        n,
        modulus: m,
        equal: missing.is_empty(),
        missing,
    })
}

/// Two elements `w1`, `w2` of the type `C` orbit mod `2n+1` with
/// `w1 − w2 = a`. Requires `2n+1` prime.
pub fn c_difference_witness(n: usize, a: &[i64]) -> Result<(ModVector, ModVector)> {
    let p = 2 * n as u64 + 1;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if a.len() != n {
        return Err(Error::BadLength {
            expected: n,
            found: a.len(),
        });
    }
    let a = ModVector::new(p, a);
    let pi = p as usize;
    let mut x: Vec<u64> = Vec::with_capacity(n);
    // Classes {±v} already used by x and by x − a.
    let mut used_x = vec![false; pi];
    let mut used_y = vec![false; pi];

    fn rec(a: &[u64], p: usize, x: &mut Vec<u64>, ux: &mut [bool], uy: &mut [bool]) -> bool {
        let i = x.len();
        if i == a.len() {
            return true;
        }
        for v in 1..p {
            let y = (v + p - a[i] as usize) % p;
            if y == 0 || ux[v] || uy[y] {
                continue;
            }
            ux[v] = true;
            ux[p - v] = true;
            uy[y] = true;
            uy[p - y] = true;
            x.push(v as u64);
            if rec(a, p, x, ux, uy) {
                return true;
            }
            x.pop();
            ux[v] = false;
            ux[p - v] = false;
            uy[y] = false;
            uy[p - y] = false;
        }
        false
    }

    if !rec(a.entries(), pi, &mut x, &mut used_x, &mut used_y) {
        return Err(Error::SearchFailed(format!(
            "no difference representation of {:?} mod {p}",
            a.entries()
        )));
    }
    let w1 = ModVector { m: p, entries: x };
    let w2 = w1.sub(&a);
    Ok((w1, w2))
}

/// `v` lies in the type `C` orbit mod `m`: the classes `±v_i` are exactly
/// the classes `±1, …, ±n`.
pub fn in_c_orbit(v: &ModVector) -> bool {
    let m = v.modulus();
    let n = v.len() as u64;
    let mut want: Vec<u64> = (1..=n).map(|i| i.min(m - i % m)).collect();
    let mut have: Vec<u64> = v.entries().iter().map(|&x| x.min((m - x) % m)).collect();
    want.sort_unstable();
    have.sort_unstable();
    want == have
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hall_example() {
        let (a, b) = hall_decompose(4, &[3, 0, 2, 3]).unwrap();
        assert_eq!(a, vec![0, 1, 2, 3]);
        assert_eq!(b, vec![3, 1, 0, 2]);
    }

    #[test]
    fn hall_zero_and_errors() {
        let (a, b) = hall_decompose(5, &[0; 5]).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            hall_decompose(4, &[1, 0, 0, 0]),
            Err(Error::BadSum { .. })
        ));
        assert!(matches!(
            hall_decompose(4, &[0, 0]),
            Err(Error::BadLength { .. })
        ));
    }

    #[test]
    fn orbit_sizes() {
        let a2 = build_orbit(Family::A, 2, None);
        let v: Vec<Vec<u64>> = a2.elements.iter().map(|x| x.entries().to_vec()).collect();
        assert_eq!(v, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(build_orbit(Family::C, 2, None).elements.len(), 8);
        assert_eq!(build_orbit(Family::C, 3, None).elements.len(), 48);
        let c4 = build_orbit(Family::C, 2, Some(4));
        let v: BTreeSet<Vec<u64>> = c4.elements.iter().map(|x| x.entries().to_vec()).collect();
        let expected: BTreeSet<Vec<u64>> = [vec![1, 2], vec![2, 1], vec![3, 2], vec![2, 3]]
            .into_iter()
            .collect();
        assert_eq!(v, expected);
    }

    #[test]
    fn difference_and_sum_of_zero() {
        let z = vec![ModVector::new(3, &[0, 0])];
        assert_eq!(difference_set(&z).len(), 1);
        assert_eq!(sumset(&z).len(), 1);
    }

    #[test]
    fn a_orbit_sign_invariance() {
        for n in 2..=4 {
            let o = build_orbit(Family::A, n, None).to_vec();
            assert_eq!(sumset(&o), difference_set(&o));
        }
    }

    #[test]
    fn mod_four_counterexample() {
        let cert = verify_sumset_equality(Family::C, 2, Some(4), DEFAULT_PAIR_BUDGET).unwrap();
        assert!(!cert.equal);
        assert!(cert.missing.contains(&vec![1, 0]));
    }

    #[test]
    fn small_equalities() {
        assert!(
            verify_sumset_equality(Family::A, 4, None, DEFAULT_PAIR_BUDGET)
                .unwrap()
                .equal
        );
        assert!(
            verify_sumset_equality(Family::C, 3, None, DEFAULT_PAIR_BUDGET)
                .unwrap()
                .equal
        );
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            verify_sumset_equality(Family::A, 6, None, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn c_witness() {
        let (w1, w2) = c_difference_witness(3, &[0, 0, 0]).unwrap();
        assert_eq!(w1, w2);
        assert!(in_c_orbit(&w1));
        let (w1, w2) = c_difference_witness(3, &[1, 1, 1]).unwrap();
        assert_eq!(w1.sub(&w2), ModVector::new(7, &[1, 1, 1]));
        assert!(in_c_orbit(&w1) && in_c_orbit(&w2));
        assert!(matches!(
            c_difference_witness(4, &[0; 4]),
            Err(Error::NotPrime(9))
        ));
    }
}
