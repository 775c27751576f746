//! Dimension counts for divided powers and the weighted index sets used to
//! build the symmetric-power representations.

use num_bigint::BigUint;
use num_integer::binomial;

use crate::error::{Error, Result};

/// `dim D^u(W)` for `dim W = r`, i.e. `binom(r + u − 1, u)`.
pub fn divided_power_dim(r: usize, u: usize) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::OutOfRange {
            what: "r",
            value: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    Ok(binomial(BigUint::from(r + u - 1), BigUint::from(u)))
}

/// `dim 𝔻^{u,v}(W)`: sum over compositions `(u_1, …, u_v)` of `u` of
/// `Π dim D^{u_i}(W)`.
pub fn dd_module_dim(r: usize, u: usize, v: usize) -> Result<BigUint> {
    if v == 0 {
        return Err(Error::OutOfRange {
            what: "v",
            value: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    let d: Vec<BigUint> = (0..=u)
        .map(|k| divided_power_dim(r, k))
        .collect::<Result<_>>()?;
    // ways[k]: total over compositions of k into the parts seen so far
    let mut ways: Vec<BigUint> = (0..=u).map(|k| d[k].clone()).collect();
    for _ in 1..v {
        let next = (0..=u)
            .map(|k| (0..=k).map(|j| &ways[j] * &d[k - j]).sum())
            .collect();
        ways = next;
    }
    Ok(ways[u].clone())
}

/// All `(d_1, …, d_s)` with `d_i ≥ 0` and `Σ i·d_i = s!`, for `1 ≤ s ≤ 4`.
///
/// Sorted lexicographically when read from the last entry to the first, so
/// `s = 2` gives `(2,0), (0,1)`.
pub fn weighted_compositions(s: usize) -> Result<Vec<Vec<usize>>> {
    if s == 0 {
        return Err(Error::OutOfRange {
            what: "s",
            value: 0,
            lo: 1,
            hi: 4,
        });
    }
    if s > 4 {
        return Err(Error::TooLarge(format!("s = {s} exceeds 4")));
    }
    let total: usize = (1..=s).product();
    let mut out = Vec::new();
    let mut cur = vec![0usize; s];
    fill(s, total, &mut cur, &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    Ok(out)
}

fn fill(part: usize, remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if part == 1 {
        cur[0] = remaining;
        out.push(cur.clone());
        return;
    }
    for d in 0..=remaining / part {
        cur[part - 1] = d;
        fill(part - 1, remaining - d * part, cur, out);
    }
    cur[part - 1] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn divided_power_examples() {
        assert_eq!(divided_power_dim(2, 2).unwrap(), n(3));
        assert_eq!(divided_power_dim(5, 0).unwrap(), n(1));
        assert_eq!(divided_power_dim(1, 9).unwrap(), n(1));
        assert!(divided_power_dim(0, 1).is_err());
    }

    #[test]
    fn dd_examples() {
        assert_eq!(dd_module_dim(2, 2, 2).unwrap(), n(10));
        assert_eq!(dd_module_dim(4, 0, 3).unwrap(), n(1));
        // (1, u, v): count compositions of u into v parts
        for u in 0..6 {
            for v in 1..5 {
                let expect = binomial(n((u + v - 1) as u64), n(u as u64));
                assert_eq!(dd_module_dim(1, u, v).unwrap(), expect);
            }
        }
        assert!(dd_module_dim(2, 1, 0).is_err());
    }

    #[test]
    fn monomial_count_oracle() {
        fn count(r: usize, u: usize) -> u64 {
            if r == 1 {
                return 1;
            }
            (0..=u).map(|k| count(r - 1, u - k)).sum()
        }
        for r in 1..=5 {
            for u in 0..=5 {
                assert_eq!(divided_power_dim(r, u).unwrap(), n(count(r, u)));
            }
        }
    }

    #[test]
    fn composition_examples() {
        assert_eq!(weighted_compositions(1).unwrap(), vec![vec![1]]);
        assert_eq!(
            weighted_compositions(2).unwrap(),
            vec![vec![2, 0], vec![0, 1]]
        );
        let three = weighted_compositions(3).unwrap();
        let expect: Vec<Vec<usize>> = vec![
            vec![6, 0, 0],
            vec![4, 1, 0],
            vec![2, 2, 0],
            vec![0, 3, 0],
            vec![3, 0, 1],
            vec![1, 1, 1],
            vec![0, 0, 2],
        ];
        assert_eq!(three, expect);
        assert!(matches!(weighted_compositions(5), Err(Error::TooLarge(_))));
    }

    #[test]
    fn compositions_are_complete_and_distinct() {
        for s in 1..=4 {
            let total: usize = (1..=s).product();
            let list = weighted_compositions(s).unwrap();
            for c in &list {
                assert_eq!(
                    c.iter()
                        .enumerate()
                        .map(|(i, d)| (i + 1) * d)
                        .sum::<usize>(),
                    total
                );
            }
            let mut dedup = list.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), list.len());
            // brute force count over the box
            let mut brute = 0;
            let mut idx = vec![0usize; s];
            loop {
                if idx
                    .iter()
                    .enumerate()
                    .map(|(i, d)| (i + 1) * d)
                    .sum::<usize>()
                    == total
                {
                    brute += 1;
                }
                let mut k = 0;
                while k < s {
                    idx[k] += 1;
                    if idx[k] <= total / (k + 1) {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == s {
                    break;
                }
            }
            assert_eq!(brute, list.len());
        }
    }
}
