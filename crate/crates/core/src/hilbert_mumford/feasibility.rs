//! Exact linear feasibility: Fourier–Motzkin elimination for strict
//! homogeneous systems and a phase-one simplex for `A c = b, c ≥ 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// `coeffs · x ≤ rhs`
#[derive(Clone, Debug)]
struct Inequality {
    coeffs: Vec<Q>,
    rhs: Q,
}

impl Inequality {
    /// Rescale by a positive factor so the coefficients are coprime integers.
    fn normalized(self) -> Self {
        let mut lcm = BigInt::one();
        for c in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return self;
        }
        let scale = Q::new(lcm, g);
        Inequality {
            coeffs: self.coeffs.iter().map(|c| c * &scale).collect(),
            rhs: &self.rhs * &scale,
        }
    }
}

/// Keep, for every coefficient row, only the tightest right-hand side.
fn tighten(system: Vec<Inequality>) -> Vec<Inequality> {
    let mut best: BTreeMap<Vec<Q>, Q> = BTreeMap::new();
    for ineq in system.into_iter().map(Inequality::normalized) {
        best.entry(ineq.coeffs)
            .and_modify(|r| {
                if ineq.rhs < *r {
                    *r = ineq.rhs.clone();
                }
            })
            .or_insert(ineq.rhs);
    }
    best.into_iter()
        .map(|(coeffs, rhs)| Inequality { coeffs, rhs })
        .collect()
}

/// Find `x` with `row · x < 0` for every row, or prove none exists.
///
/// By homogeneity the strict system is equivalent to `row · x ≤ -1`, which
/// is solved by eliminating the variables from last to first and then
/// back-substituting.
pub fn strictly_negative_point(rows: &[Vec<Q>], dim: usize) -> Option<Vec<Q>> {
    let mut stages: Vec<Vec<Inequality>> = Vec::with_capacity(dim + 1);
    let mut system = tighten(
        rows.iter()
            .map(|r| Inequality {
                coeffs: r.clone(),
                rhs: -Q::one(),
            })
            .collect(),
    );
    for var in (0..dim).rev() {
        stages.push(system.clone());
        let (mut upper, mut lower, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in system {
            let c = &ineq.coeffs[var];
            if c.is_positive() {
                upper.push(ineq);
            } else if c.is_negative() {
                lower.push(ineq);
            } else {
                rest.push(ineq);
            }
        }
        for u in &upper {
            for l in &lower {
                let (cu, cl) = (u.coeffs[var].clone(), -l.coeffs[var].clone());
                let coeffs = u
                    .coeffs
                    .iter()
                    .zip(&l.coeffs)
                    .map(|(a, b)| a * &cl + b * &cu)
                    .collect();
                rest.push(Inequality {
                    coeffs,
                    rhs: &u.rhs * &cl + &l.rhs * &cu,
                });
            }
        }
        system = tighten(rest);
    }
    // only constant constraints remain
    if system.iter().any(|i| i.rhs.is_negative()) {
        return None;
    }
    let mut x = vec![Q::zero(); dim];
    for var in 0..dim {
        let stage = &stages[dim - 1 - var];
        let (mut lo, mut hi): (Option<Q>, Option<Q>) = (None, None);
        for ineq in stage {
            let c = &ineq.coeffs[var];
            if c.is_zero() {
                continue;
            }
            let fixed: Q = ineq.coeffs[..var]
                .iter()
                .zip(&x[..var])
                .map(|(a, b)| a * b)
                .sum();
            let bound = (&ineq.rhs - fixed) / c;
            if c.is_positive() {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            }
        }
        x[var] = pick_in_interval(lo, hi);
    }
    Some(x)
}

/// Prefer zero, then the integer of least magnitude, then the midpoint.
fn pick_in_interval(lo: Option<Q>, hi: Option<Q>) -> Q {
    let zero = Q::zero();
    let contains = |v: &Q| lo.as_ref().is_none_or(|l| l <= v) && hi.as_ref().is_none_or(|h| v <= h);
    if contains(&zero) {
        return zero;
    }
    match (&lo, &hi) {
        (Some(l), _) if l.is_positive() => {
            let c = l.ceil();
            if contains(&c) {
                c
            } else {
                (l + hi.clone().unwrap()) / Q::from_integer(2.into())
            }
        }
        (_, Some(h)) => {
            let f = h.floor();
            if contains(&f) {
                f
            } else {
                (lo.clone().unwrap() + h) / Q::from_integer(2.into())
            }
        }
        _ => unreachable!("interval excluding zero has a finite endpoint on that side"),
    }
}

/// Phase-one simplex with Bland's rule: some `c ≥ 0` with `A c = b`.
pub fn nonnegative_solution(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // tableau columns: n originals, m artificials, rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let sign = |v: &Q| if flip { -v.clone() } else { v.clone() };
        let mut r: Vec<Q> = row.iter().map(sign).collect();
        r.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        r.push(sign(&b[i]));
        t.push(r);
    }
    // objective row: minimize the sum of artificials, stored as reduced costs
    let mut obj = vec![Q::zero(); width];
    for r in &t {
        for j in 0..n {
            obj[j] -= &r[j];
        }
        obj[width - 1] -= &r[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    while let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (row, _) = leave.expect("phase-one objective is bounded below");
        let piv = t[row][enter].clone();
        for v in t[row].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row && !r[enter].is_zero() {
                let f = r[enter].clone();
                for (v, p) in r.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (v, p) in obj.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
        basis[row] = enter;
    }
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn rows(v: &[&[i64]]) -> Vec<Vec<Q>> {
        v.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    fn check_strict(rows: &[Vec<Q>], x: &[Q]) -> bool {
        rows.iter()
            .all(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<Q>().is_negative())
    }

    #[test]
    fn strict_feasible_and_infeasible() {
        let sys = rows(&[&[1, 0], &[0, 1], &[1, 1]]);
        let x = strictly_negative_point(&sys, 2).unwrap();
        assert!(check_strict(&sys, &x));

        let opposite = rows(&[&[1, 2], &[-1, -2]]);
        assert!(strictly_negative_point(&opposite, 2).is_none());

        let zero_row = rows(&[&[0, 0]]);
        assert!(strictly_negative_point(&zero_row, 2).is_none());

        let triangle = rows(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert!(strictly_negative_point(&triangle, 2).is_none());
    }

    #[test]
    fn thin_cone_is_found() {
        // x < 0 cone squeezed between two nearly parallel halfplanes
        let sys = rows(&[&[7, -1], &[-6, 1], &[1, 0]]);
        let x = strictly_negative_point(&sys, 2).unwrap();
        assert!(check_strict(&sys, &x));
    }

    #[test]
    fn simplex_finds_convex_combination() {
        // columns (1,0), (-1,1), (0,-1) with weights summing to one
        let a = rows(&[&[1, -1, 0], &[0, 1, -1], &[1, 1, 1]]);
        let b = vec![int(0), int(0), int(1)];
        let c = nonnegative_solution(&a, &b).unwrap();
        assert_eq!(c, vec![crate::exactmath::rat(1, 3); 3]);

        let a = rows(&[&[1, 2], &[1, 1]]);
        let b = vec![int(0), int(1)];
        assert!(nonnegative_solution(&a, &b).is_none());
    }
}
