//! Hilbert–Mumford weights on representations given by their torus weight
//! decomposition, and torus-level instability search.
//!
//! A point is unstable for the maximal torus iff some sum-zero `λ` pairs
//! negatively with every weight in its support, i.e. iff `0` is not in the
//! convex hull of the support weights modulo the all-ones direction. The
//! search is exact: Fourier–Motzkin elimination decides and produces `λ`,
//! and a phase-one simplex produces the hull certificate on the other side.
//!
//! Only the fixed diagonal torus is searched. Conjugating a point into a
//! torus-adapted basis is left to the caller.

mod combinatorics;
mod feasibility;

pub use combinatorics::{dd_module_dim, divided_power_dim, weighted_compositions};
pub use feasibility::{nonnegative_solution, strictly_negative_point};

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::flags::{weighted_flag_of, OneParamSubgroup};

type Q = BigRational;

/// Largest torus rank accepted by [`torus_destabilize`].
pub const MAX_TORUS_RANK: usize = 8;

/// Weight box searched when choosing a normalized destabilizer.
const GRID_BOUND: i64 = 3;
/// Ranks up to which the destabilizer is chosen from the grid.
const GRID_MAX_RANK: usize = 4;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedBasisVector {
    pub label: String,
    pub weight: Vec<i64>,
}

/// Representation of the diagonal torus of `GL_r`, presented by a weight
/// basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusWeightRep {
    torus_rank: usize,
    basis: Vec<WeightedBasisVector>,
    index: BTreeMap<String, usize>,
}

impl TorusWeightRep {
    pub fn new(torus_rank: usize, basis: Vec<WeightedBasisVector>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Parse("representation has an empty basis".into()));
        }
        let mut index = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            if b.weight.len() != torus_rank {
                return Err(Error::DimensionMismatch {
                    expected: torus_rank,
                    found: b.weight.len(),
                });
            }
            if index.insert(b.label.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate basis label {:?}", b.label)));
            }
        }
        Ok(TorusWeightRep {
            torus_rank,
            basis,
            index,
        })
    }

    /// `k^r` with basis `e1, …, er` of weights the unit vectors.
    pub fn standard(r: usize) -> Self {
        let basis = (0..r)
            .map(|i| WeightedBasisVector {
                label: format!("e{}", i + 1),
                weight: (0..r).map(|j| i64::from(i == j)).collect(),
            })
            .collect();
        Self::new(r, basis).expect("standard representation is well formed")
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn basis(&self) -> &[WeightedBasisVector] {
        &self.basis
    }

    pub fn weight(&self, label: &str) -> Result<&[i64]> {
        self.index
            .get(label)
            .map(|&i| self.basis[i].weight.as_slice())
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

/// A vector of the representation, stored by its nonzero coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepPoint {
    coords: BTreeMap<String, Q>,
}

impl RepPoint {
    /// Zero coordinates are dropped; an all-zero point is rejected.
    pub fn new(coords: impl IntoIterator<Item = (String, Q)>) -> Result<Self> {
        let coords: BTreeMap<_, _> = coords.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if coords.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(RepPoint { coords })
    }

    /// Point with coordinate `1` on each listed label.
    pub fn supported_on<'a>(labels: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        Self::new(labels.into_iter().map(|l| (l.to_string(), Q::one())))
    }

    pub fn coords(&self) -> &BTreeMap<String, Q> {
        &self.coords
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.coords.keys().map(String::as_str)
    }
}

fn pairing(lambda: &[i64], weight: &[i64]) -> i64 {
    lambda.iter().zip(weight).map(|(a, b)| a * b).sum()
}

fn support_weights<'a>(rep: &'a TorusWeightRep, point: &RepPoint) -> Result<Vec<&'a [i64]>> {
    point.support().map(|l| rep.weight(l)).collect()
}

/// `μ(λ, w)`: the largest pairing `⟨λ, weight(b)⟩` over the support of `w`.
pub fn mu(rep: &TorusWeightRep, lambda: &OneParamSubgroup, point: &RepPoint) -> Result<i64> {
    if lambda.rank() != rep.torus_rank {
        return Err(Error::DimensionMismatch {
            expected: rep.torus_rank,
            found: lambda.rank(),
        });
    }
    if lambda.is_trivial() {
        return Err(Error::TrivialSubgroup);
    }
    let weights = support_weights(rep, point)?;
    Ok(weights
        .iter()
        .map(|w| pairing(lambda.weights(), w))
        .max()
        .expect("support is nonempty"))
}

/// Whenever the two subgroups have the same weighted flag, their `μ` values
/// at `point` agree. Returns whether that holds on this instance.
pub fn mu_flag_invariance_check(
    rep: &TorusWeightRep,
    first: &OneParamSubgroup,
    second: &OneParamSubgroup,
    point: &RepPoint,
) -> Result<bool> {
    let f1 = weighted_flag_of::<Q>(first)?;
    let f2 = weighted_flag_of::<Q>(second)?;
    if !f1.same_flag(&f2) {
        return Ok(true);
    }
    Ok(mu(rep, first, point)? == mu(rep, second, point)?)
}

/// Outcome of the torus-level instability search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Destabilization {
    /// Convex coefficients on the support whose weighted sum of weights is a
    /// multiple of `(1, …, 1)`.
    Semistable {
        certificate: BTreeMap<String, Q>,
    },
    Unstable {
        lambda: OneParamSubgroup,
    },
}

impl Destabilization {
    pub fn is_unstable(&self) -> bool {
        matches!(self, Destabilization::Unstable { .. })
    }
}

/// Weights reduced modulo the all-ones direction: coordinates `a < r−1`
/// become `w_a − w_{r−1}`, so `⟨λ, w⟩ = Σ_a x_a (w_a − w_{r−1})` for
/// `λ = (x, −Σx)`.
fn reduced(weight: &[i64]) -> Vec<Q> {
    let last = *weight.last().unwrap();
    weight[..weight.len() - 1]
        .iter()
        .map(|w| Q::from_integer(BigInt::from(w - last)))
        .collect()
}

/// Decide torus semistability of `point` and return either a primitive
/// integral destabilizing `λ` or an exact hull certificate.
pub fn torus_destabilize(rep: &TorusWeightRep, point: &RepPoint) -> Result<Destabilization> {
    let r = rep.torus_rank;
    if r > MAX_TORUS_RANK {
        return Err(Error::TooLarge(format!(
            "torus rank {r} exceeds {MAX_TORUS_RANK}"
        )));
    }
    let labels: Vec<&str> = point.support().collect();
    let weights = support_weights(rep, point)?;
    let rows: Vec<Vec<Q>> = weights.iter().map(|w| reduced(w)).collect();
    match strictly_negative_point(&rows, r.saturating_sub(1)) {
        Some(x) => {
            let lambda = if r <= GRID_MAX_RANK {
                grid_destabilizer(&weights, r)
            } else {
                None
            };
            let lambda = match lambda {
                Some(l) => l,
                None => primitive_from_rational(&x)?,
            };
            debug_assert!(weights.iter().all(|w| pairing(lambda.weights(), w) < 0));
            Ok(Destabilization::Unstable { lambda })
        }
        None => {
            let certificate = hull_certificate(&rows)
                .expect("no strictly negative direction implies zero lies in the hull");
            Ok(Destabilization::Semistable {
                certificate: labels
                    .into_iter()
                    .map(String::from)
                    .zip(certificate)
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            })
        }
    }
}

/// Convex coefficients `c` with `Σ c_b · rows_b = 0`.
fn hull_certificate(rows: &[Vec<Q>]) -> Option<Vec<Q>> {
    let dim = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Q>> = (0..dim)
        .map(|k| rows.iter().map(|row| row[k].clone()).collect())
        .collect();
    a.push(vec![Q::one(); rows.len()]);
    let mut b = vec![Q::zero(); dim];
    b.push(Q::one());
    nonnegative_solution(&a, &b)
}

/// Check a hull certificate against the representation.
pub fn verify_certificate(
    rep: &TorusWeightRep,
    point: &RepPoint,
    certificate: &BTreeMap<String, Q>,
) -> Result<bool> {
    if certificate.values().any(Signed::is_negative) {
        return Ok(false);
    }
    if certificate.values().sum::<Q>() != Q::one() {
        return Ok(false);
    }
    if certificate.keys().any(|k| !point.coords.contains_key(k)) {
        return Ok(false);
    }
    let r = rep.torus_rank;
    let mut combo = vec![Q::zero(); r];
    for (label, c) in certificate {
        for (acc, w) in combo.iter_mut().zip(rep.weight(label)?) {
            *acc += c * Q::from_integer(BigInt::from(*w));
        }
    }
    Ok(combo.windows(2).all(|p| p[0] == p[1]))
}

/// Among grid points minimizing `μ`, the lexicographically least primitive
/// reduction. `None` if no grid point destabilizes.
fn grid_destabilizer(weights: &[&[i64]], r: usize) -> Option<OneParamSubgroup> {
    let mut best: Option<(i64, BTreeSet<Vec<i64>>)> = None;
    for lambda in sum_zero_grid(r, GRID_BOUND) {
        let m = weights.iter().map(|w| pairing(&lambda, w)).max().unwrap();
        if m >= 0 {
            continue;
        }
        let prim = primitive(&lambda);
        match &mut best {
            Some((bm, set)) if *bm == m => {
                set.insert(prim);
            }
            Some((bm, _)) if *bm < m => {}
            _ => best = Some((m, BTreeSet::from([prim]))),
        }
    }
    best.and_then(|(_, set)| set.into_iter().next())
        .map(|w| OneParamSubgroup::new(w).expect("grid points sum to zero"))
}

/// All `λ ∈ {−b..b}^r` with `Σλ = 0`, in lexicographic order.
pub fn sum_zero_grid(r: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    let mut cur = vec![-bound; r - 1];
    loop {
        let s: i64 = cur.iter().sum();
        if (-bound..=bound).contains(&-s) {
            let mut v = cur.clone();
            v.push(-s);
            out.push(v);
        }
        let mut k = cur.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < bound {
                cur[k] += 1;
                for c in &mut cur[k + 1..] {
                    *c = -bound;
                }
                break;
            }
        }
    }
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, x| g.gcd(x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Scale `(x, −Σx)` to a primitive integer vector.
fn primitive_from_rational(x: &[Q]) -> Result<OneParamSubgroup> {
    let mut full: Vec<Q> = x.to_vec();
    full.push(-x.iter().sum::<Q>());
    let lcm = full.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<BigInt> = full
        .iter()
        .map(|q| (q * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let weights = ints
        .iter()
        .map(|c| {
            (c / &g)
                .to_i64()
                .ok_or_else(|| Error::TooLarge("destabilizer weight exceeds 64 bits".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    OneParamSubgroup::new(weights)
}

/// `Hom(k^r, V^∨)` for a trivial torus action on `V` of dimension `n`: the
/// basis vector `f_a ⊗ v_j` has weight `−e_a`.
pub fn hom_rep(r: usize, n: usize) -> TorusWeightRep {
    let mut basis = Vec::new();
    for a in 0..r {
        for j in 0..n {
            basis.push(WeightedBasisVector {
                label: format!("h{}_{}", a + 1, j + 1),
                weight: (0..r).map(|b| if a == b { -1 } else { 0 }).collect(),
            });
        }
    }
    TorusWeightRep::new(r, basis).expect("hom representation is well formed")
}
