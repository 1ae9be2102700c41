use crate::{Error, Result};

/// Parses a comma-separated list of integers such as `"3,0,-2"`.
pub fn parse_csv(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

pub fn format_csv(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Advances `v` to the next permutation in lexicographic order.
/// Returns `false` (leaving `v` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip() {
        assert_eq!(parse_csv("3,0").unwrap(), vec![3, 0]);
        assert_eq!(parse_csv(" -1, 2 ,3").unwrap(), vec![-1, 2, 3]);
        assert_eq!(parse_csv("").unwrap(), Vec::<i64>::new());
        assert!(parse_csv("1,x").is_err());
        assert_eq!(format_csv(&[3, 0, -2]), "3,0,-2");
    }

    #[test]
    fn permutations_in_lex_order() {
        let mut v = vec![1, 2, 3];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![1, 3, 2]);
        assert_eq!(seen[5], vec![3, 2, 1]);
        assert_eq!(v, vec![1, 2, 3]);
    }

    #[test]
    fn primes() {
        let p: Vec<u64> = (0..20).filter(|&k| is_prime(k)).collect();
        assert_eq!(p, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
