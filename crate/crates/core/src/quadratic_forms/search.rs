//! Bounded representation search and residue-class computations.
//!
//! Every form handled here except `q` has the shape
//! `f(v) = (a Σ v_i² + Σ b_i v_i + c) / d` with `a > 0`. The search walks
//! coordinates in order, trying values `-R..=R` ascending, so the first
//! vector found is the lexicographically smallest one in the box. A branch is
//! cut when the continuous minimum of the remaining coordinates (under the
//! sum constraint, when there is one) already exceeds the target.

use num_rational::Ratio;

use super::domain::ConstrainedDomain;

/// `f(v) = (quad · Σ v_i² + Σ lin_i v_i + constant) / denom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparableForm {
    pub denom: i64,
    pub quad: i64,
    pub lin: Vec<i64>,
    pub constant: i64,
}

impl SeparableForm {
    pub fn new(denom: i64, quad: i64, lin: Vec<i64>, constant: i64) -> Self {
        assert!(denom > 0 && quad > 0, "form must be positive definite");
        Self {
            denom,
            quad,
            lin,
            constant,
        }
    }

    pub fn dim(&self) -> usize {
        self.lin.len()
    }

    /// Numerator `a Σ v² + Σ b v + c`.
    pub fn numerator(&self, v: &[i64]) -> i128 {
        debug_assert_eq!(v.len(), self.dim());
        let a = self.quad as i128;
        let mut acc = self.constant as i128;
        for (&x, &b) in v.iter().zip(&self.lin) {
            let x = x as i128;
            acc += a * x * x + b as i128 * x;
        }
        acc
    }

    pub fn eval(&self, v: &[i64]) -> Ratio<i128> {
        Ratio::new(self.numerator(v), self.denom as i128)
    }

    fn coord_term(&self, i: usize, x: i64) -> i128 {
        let x = x as i128;
        self.quad as i128 * x * x + self.lin[i] as i128 * x
    }
}

struct Searcher<'a> {
    form: &'a SeparableForm,
    domain: &'a ConstrainedDomain,
    radius: i64,
    target: i128,
    sum: Option<i64>,
    // Suffix sums of lin and lin² from index i.
    lin_suffix: Vec<i128>,
    lin_sq_suffix: Vec<i128>,
    prefix: Vec<i64>,
}

impl Searcher<'_> {
    fn pruned(&self, i: usize, partial: i128, prefix_sum: i64) -> bool {
        let n = self.form.dim();
        let m = (n - i) as i128;
        let a = self.form.quad as i128;
        let slack = partial + self.form.constant as i128 - self.target;
        let big_b = self.lin_suffix[i];
        let b2 = self.lin_sq_suffix[i];
        match self.sum {
            Some(sigma) => {
                let s = (sigma - prefix_sum) as i128;
                if s.abs() > m * self.radius as i128 {
                    return true;
                }
                let t = 2 * a * s + big_b;
                4 * a * m * slack + t * t - m * b2 > 0
            }
            None => 4 * a * slack - b2 > 0,
        }
    }

    fn run(&mut self, i: usize, partial: i128, prefix_sum: i64) -> bool {
        let n = self.form.dim();
        if self.pruned(i, partial, prefix_sum) {
            return false;
        }
        if i + 1 == n {
            return self.last(i, partial, prefix_sum);
        }
        for x in -self.radius..=self.radius {
            let p = partial + self.form.coord_term(i, x);
            self.prefix.push(x);
            if self.domain.prefix_ok(&self.prefix) && self.run(i + 1, p, prefix_sum + x) {
                return true;
            }
            self.prefix.pop();
        }
        false
    }

    fn last(&mut self, i: usize, partial: i128, prefix_sum: i64) -> bool {
        let need = self.target - partial - self.form.constant as i128;
        let candidates: Vec<i64> = match self.sum {
            Some(sigma) => vec![sigma - prefix_sum],
            None => {
                // a x² + b x = need
                let a = self.form.quad as i128;
                let b = self.form.lin[i] as i128;
                let disc = b * b + 4 * a * need;
                if disc < 0 {
                    return false;
                }
                let r = isqrt(disc);
                if r * r != disc {
                    return false;
                }
                let mut c = Vec::with_capacity(2);
                for num in [-b - r, -b + r] {
                    if num % (2 * a) == 0 {
                        c.push((num / (2 * a)) as i64);
                    }
                }
                c.sort_unstable();
                c.dedup();
                c
            }
        };
        for x in candidates {
            if x.abs() > self.radius || self.form.coord_term(i, x) != need {
                continue;
            }
            self.prefix.push(x);
            if self.domain.prefix_ok(&self.prefix) && self.domain.member(&self.prefix) {
                return true;
            }
            self.prefix.pop();
        }
        false
    }
}

pub(crate) fn isqrt(v: i128) -> i128 {
    if v < 2 {
        return v.max(0);
    }
    let mut x = (v as f64).sqrt() as i128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

/// Lexicographically smallest `v` in the domain with `|v_i| <= radius` and
/// `form(v) = target`, if any.
pub fn search_first(
    form: &SeparableForm,
    domain: &ConstrainedDomain,
    target: Ratio<i64>,
    radius: u32,
) -> Option<Vec<i64>> {
    let n = form.dim();
    assert_eq!(n, domain.dim(), "form and domain dimensions differ");
    let scaled = Ratio::new(*target.numer() as i128, *target.denom() as i128) * form.denom as i128;
    if !scaled.is_integer() {
        return None;
    }
    if n == 0 {
        return (form.constant as i128 == scaled.to_integer() && domain.member(&[])).then(Vec::new);
    }
    let mut lin_suffix = vec![0i128; n + 1];
    let mut lin_sq_suffix = vec![0i128; n + 1];
    for i in (0..n).rev() {
        let b = form.lin[i] as i128;
        lin_suffix[i] = lin_suffix[i + 1] + b;
        lin_sq_suffix[i] = lin_sq_suffix[i + 1] + b * b;
    }
    let mut s = Searcher {
        form,
        domain,
        radius: radius as i64,
        target: scaled.to_integer(),
        sum: domain.sum_constraint(),
        lin_suffix,
        lin_sq_suffix,
        prefix: Vec::with_capacity(n),
    };
    s.run(0, 0, 0).then(|| s.prefix.clone())
}

/// `q(x) = Σ x_i² + Σ_{i<j} x_i x_j`.
pub fn lower_q(x: &[i64]) -> i128 {
    let sq: i128 = x.iter().map(|&v| (v as i128) * (v as i128)).sum();
    let s: i128 = x.iter().map(|&v| v as i128).sum();
    (sq + s * s) / 2
}

/// Lexicographically smallest `x` in the box with `q(x) = target`, using
/// `q(x) >= ½ Σ x_i²` to prune.
pub fn search_first_lower_q(
    domain: &ConstrainedDomain,
    target: i64,
    radius: u32,
) -> Option<Vec<i64>> {
    fn rec(
        dim: usize,
        domain: &ConstrainedDomain,
        target: i128,
        radius: i64,
        prefix: &mut Vec<i64>,
        half_sq: i128,
    ) -> bool {
        if prefix.len() == dim {
            return lower_q(prefix) == target && domain.member(prefix);
        }
        for x in -radius..=radius {
            let h = half_sq + (x as i128) * (x as i128);
            if h > 2 * target {
                continue;
            }
            prefix.push(x);
            if domain.prefix_ok(prefix) && rec(dim, domain, target, radius, prefix, h) {
                return true;
            }
            prefix.pop();
        }
        false
    }
    if target < 0 {
        return None;
    }
    let mut prefix = Vec::new();
    rec(
        domain.dim(),
        domain,
        target as i128,
        radius as i64,
        &mut prefix,
        0,
    )
    .then_some(prefix)
}

/// Residues `r` in `[0, m)` with `f(v) ≡ r (mod m)` for some integer vector
/// `v` satisfying the domain's sum constraint (and no other condition) at
/// which `f` is integral. Since `d·f(v) mod d·m` only depends on `v mod d·m`,
/// a dynamic program over coordinates with state
/// `(partial sum mod d·m, partial numerator mod d·m)` is exhaustive.
pub fn attained_classes_separable(form: &SeparableForm, sum: Option<i64>, m: u64) -> Vec<u64> {
    assert!(m >= 1);
    let big_m = (form.denom as u64 * m) as usize;
    let track_sum = sum.is_some();
    let sum_states = if track_sum { big_m } else { 1 };
    let mut cur = vec![false; sum_states * big_m];
    cur[0] = true;
    for i in 0..form.dim() {
        let terms: Vec<usize> = (0..big_m as i64)
            .map(|x| form.coord_term(i, x).rem_euclid(big_m as i128) as usize)
            .collect();
        let mut next = vec![false; sum_states * big_m];
        for s in 0..sum_states {
            for v in 0..big_m {
                if !cur[s * big_m + v] {
                    continue;
                }
                for (x, &t) in terms.iter().enumerate() {
                    let ns = if track_sum { (s + x) % big_m } else { 0 };
                    next[ns * big_m + (v + t) % big_m] = true;
                }
            }
        }
        cur = next;
    }
    let want_sum = sum.map_or(0, |s| s.rem_euclid(big_m as i64) as usize);
    let d = form.denom as i128;
    let mut out: Vec<u64> = (0..big_m)
        .filter(|&v| cur[want_sum * big_m + v])
        .filter_map(|v| {
            let total = (v as i128 + form.constant as i128).rem_euclid(big_m as i128);
            (total % d == 0).then(|| (total / d) as u64)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Residues of `q` on `Z^dim` modulo `m`, by exhaustive enumeration of
/// `[0, m)^dim` (`q` has integer coefficients).
pub fn attained_classes_lower_q(dim: usize, m: u64) -> Vec<u64> {
    let mut hit = vec![false; m as usize];
    let mut x = vec![0i64; dim];
    loop {
        hit[lower_q(&x).rem_euclid(m as i128) as usize] = true;
        let mut k = 0;
        loop {
            if k == dim {
                return (0..m).filter(|&r| hit[r as usize]).collect();
            }
            x[k] += 1;
            if x[k] < m as i64 {
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}
