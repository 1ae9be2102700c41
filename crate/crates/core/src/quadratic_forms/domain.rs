use std::fmt;

use serde::{Deserialize, Serialize};

/// Sublattice of `Z^n` underlying a classical affine type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeKind {
    /// `Z_0^n`: coordinate sum even.
    EvenSum,
    /// `(2Z)^n`.
    AllEven,
    /// `Z^n`.
    Full,
}

/// Integer vector sets on which forms are evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstrainedDomain {
    /// `D_n`: windows of affine permutations.
    Windows { n: usize },
    /// `Δ_n`: zero-sum `x` with `x_i + i` pairwise distinct mod `n`.
    Delta { n: usize },
    /// `X_n ⊂ Z^{n-1}`: the projection of `Δ_n`.
    X { n: usize },
    /// `Q_n`: the zero-sum hyperplane.
    RootLattice { n: usize },
    /// `Z^dim`.
    Free { dim: usize },
    /// `Δ_n^C`: `x_i + i ≢ 0` and `x_i + i ≢ ±(x_j + j)` mod `2n+1`.
    DeltaC { n: usize },
    /// `D_s`: residues mod `ell` distributed as those of `sprime`, same sum.
    Ds { ell: usize, sprime: Vec<i64> },
    /// `O_s`: residues mod `n` pairwise distinct, sum `n(n-1)/2`.
    Os { n: usize },
    /// Classical affine lattice `M`.
    Lattice { kind: LatticeKind, n: usize },
}

fn residues_distinct(v: &[i64], offset: impl Fn(usize) -> i64, m: i64) -> bool {
    let mut seen = vec![false; m as usize];
    for (i, &x) in v.iter().enumerate() {
        let r = (x + offset(i)).rem_euclid(m) as usize;
        if seen[r] {
            return false;
        }
        seen[r] = true;
    }
    true
}

impl ConstrainedDomain {
    pub fn dim(&self) -> usize {
        match self {
            Self::Windows { n }
            | Self::Delta { n }
            | Self::RootLattice { n }
            | Self::DeltaC { n }
            | Self::Os { n }
            | Self::Lattice { n, .. } => *n,
            Self::X { n } => n - 1,
            Self::Free { dim } => *dim,
            Self::Ds { sprime, .. } => sprime.len(),
        }
    }

    /// Rank parameter used in reports.
    pub fn rank(&self) -> usize {
        match self {
            Self::X { n } => *n,
            _ => self.dim(),
        }
    }

    /// Required coordinate sum, if any.
    pub fn sum_constraint(&self) -> Option<i64> {
        match self {
            Self::Windows { n } => Some((n * (n + 1) / 2) as i64),
            Self::Delta { .. } | Self::RootLattice { .. } => Some(0),
            Self::Ds { sprime, .. } => Some(sprime.iter().sum()),
            Self::Os { n } => Some((n * (n - 1) / 2) as i64),
            _ => None,
        }
    }

    /// Conditions that only involve the given prefix. Used to cut the search
    /// early; `member` is the authoritative test on complete vectors.
    pub fn prefix_ok(&self, p: &[i64]) -> bool {
        match self {
            Self::Windows { n } | Self::Os { n } => residues_distinct(p, |_| 0, *n as i64),
            Self::Delta { n } | Self::X { n } => residues_distinct(p, |i| i as i64 + 1, *n as i64),
            Self::DeltaC { n } => delta_c_ok(p, *n),
            Self::Ds { ell, sprime } => {
                let want = residue_counts(sprime, *ell);
                let have = residue_counts(p, *ell);
                have.iter().zip(&want).all(|(h, w)| h <= w)
            }
            Self::Lattice {
                kind: LatticeKind::AllEven,
                ..
            } => p.iter().all(|x| x % 2 == 0),
            _ => true,
        }
    }

    pub fn member(&self, v: &[i64]) -> bool {
        if v.len() != self.dim() {
            return false;
        }
        if let Some(s) = self.sum_constraint() {
            if v.iter().sum::<i64>() != s {
                return false;
            }
        }
        match self {
            Self::X { n } => {
                let n = *n as i64;
                let total: i64 = v.iter().sum();
                residues_distinct(v, |i| i as i64 + 1, n)
                    && v.iter().enumerate().all(|(i, &x)| {
                        let t = total + x;
                        (t - (n - i as i64 - 1)).rem_euclid(n) != 0
                    })
            }
            Self::Ds { ell, sprime } => residue_counts(v, *ell) == residue_counts(sprime, *ell),
            Self::Lattice {
                kind: LatticeKind::EvenSum,
                ..
            } => v.iter().sum::<i64>() % 2 == 0,
            _ => self.prefix_ok(v),
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

fn delta_c_ok(p: &[i64], n: usize) -> bool {
    let m = 2 * n as i64 + 1;
    let mut seen = vec![false; m as usize];
    for (i, &x) in p.iter().enumerate() {
        let r = (x + i as i64 + 1).rem_euclid(m);
        if r == 0 || seen[r as usize] {
            return false;
        }
        seen[r as usize] = true;
        seen[(m - r) as usize] = true;
    }
    true
}

fn residue_counts(v: &[i64], ell: usize) -> Vec<usize> {
    let mut c = vec![0; ell];
    for &x in v {
        c[x.rem_euclid(ell as i64) as usize] += 1;
    }
    c
}

impl fmt::Display for ConstrainedDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Windows { n } => write!(f, "D_{n}"),
            Self::Delta { n } => write!(f, "Delta_{n}"),
            Self::X { n } => write!(f, "X_{n}"),
            Self::RootLattice { n } => write!(f, "Q_{n}"),
            Self::Free { dim } => write!(f, "Z^{dim}"),
            Self::DeltaC { n } => write!(f, "DeltaC_{n}"),
            Self::Ds { ell, sprime } => {
                let s: Vec<String> = sprime.iter().map(|x| x.to_string()).collect();
                write!(f, "D_s(ell={ell};s'={})", s.join(","))
            }
            Self::Os { n } => write!(f, "O_s({n})"),
            Self::Lattice { kind, n } => {
                let k = match kind {
                    LatticeKind::EvenSum => "Z0",
                    LatticeKind::AllEven => "2Z",
                    LatticeKind::Full => "Z",
                };
                write!(f, "{k}^{n}")
            }
        }
    }
}
