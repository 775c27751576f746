//! One-parameter subgroups of `SL_r` in a fixed diagonal basis, their
//! weighted flags, weight vectors, and the parabolic subgroups they define.
//!
//! Conventions: basis indices are 0-based in Rust and 1-based in JSON. The
//! parabolic `Q(λ)` is the set of `g` for which `λ(z) g λ(z)^{-1}` has a limit
//! as `z → ∞`; the opposite convention is obtained with
//! [`OneParamSubgroup::negate`].

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar};

/// Diagonal one-parameter subgroup `z ↦ diag(z^γ(1), …, z^γ(r))` of `SL_r`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OneParamSubgroup {
    weights: Vec<i64>,
}

impl OneParamSubgroup {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let sum: i64 = weights.iter().sum();
        if sum != 0 {
            return Err(Error::NotSpecialLinear(sum));
        }
        Ok(OneParamSubgroup { weights })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }

    pub fn negate(&self) -> Self {
        OneParamSubgroup {
            weights: self.weights.iter().map(|w| -w).collect(),
        }
    }

    /// Multiply all weights by `k`.
    pub fn scaled(&self, k: i64) -> Self {
        OneParamSubgroup {
            weights: self.weights.iter().map(|w| w * k).collect(),
        }
    }

    /// Rebuild the subgroup from its weighted flag. Fails unless the weights
    /// come out integral.
    pub fn from_weighted_flag(flag: &WeightedFlag<BigRational>) -> Result<Self> {
        let r = flag.basis_order.len();
        let sorted = weight_vector_of_filtration(&flag.dims, &flag.alphas, r)?;
        let mut weights = vec![0i64; r];
        for (pos, &b) in flag.basis_order.iter().enumerate() {
            let v = &sorted.entries[pos];
            if !v.is_integer() {
                return Err(Error::MalformedFiltration(
                    "weighted flag does not come from an integral subgroup".into(),
                ));
            }
            weights[b] = i64::try_from(v.to_integer())
                .map_err(|_| Error::TooLarge("weight exceeds 64 bits".into()))?;
        }
        Self::new(weights)
    }
}

/// Weighted flag `0 ⊊ W_1 ⊊ … ⊊ W_t ⊊ k^r` with positive weights `α_i`.
///
/// `basis_order` lists basis vectors by ascending weight; `W_i` is spanned by
/// the first `dims[i]` of them.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightedFlag<S> {
    pub dims: Vec<usize>,
    pub alphas: Vec<S>,
    pub basis_order: Vec<usize>,
}

impl<S: Scalar> WeightedFlag<S> {
    /// The basis-vector sets spanning `W_1, …, W_t`.
    pub fn steps(&self) -> Vec<BTreeSet<usize>> {
        self.dims
            .iter()
            .map(|&d| self.basis_order[..d].iter().copied().collect())
            .collect()
    }

    /// Same subspaces and same weights; the order of basis vectors inside an
    /// eigenspace is irrelevant.
    pub fn same_flag(&self, other: &Self) -> bool {
        self.dims == other.dims && self.alphas == other.alphas && self.steps() == other.steps()
    }
}

/// Nondecreasing rational weights summing to zero.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightVector<S> {
    entries: Vec<S>,
}

impl<S: Scalar> WeightVector<S> {
    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The distinct values `γ_1 < … < γ_{t+1}` in ascending order.
    pub fn block_values(&self) -> Vec<S> {
        let mut out: Vec<S> = Vec::new();
        for e in &self.entries {
            if out.last() != Some(e) {
                out.push(e.clone());
            }
        }
        out
    }

    /// Positions `i` (1-based count of entries before the jump) where
    /// `entries[i-1] < entries[i]`.
    pub fn jump_positions(&self) -> Vec<usize> {
        (1..self.entries.len())
            .filter(|&i| self.entries[i - 1] != self.entries[i])
            .collect()
    }
}

impl<S: Scalar + FromPrimitive> WeightVector<S> {
    /// Read the weights back as `α_j = (γ_{j+1} − γ_j) / r` at every jump.
    pub fn recover_alphas(&self) -> (Vec<usize>, Vec<S>) {
        let r = S::from_usize(self.entries.len()).expect("rank fits the scalar type");
        let pos = self.jump_positions();
        let alphas = pos
            .iter()
            .map(|&i| (self.entries[i].clone() - self.entries[i - 1].clone()) / r.clone())
            .collect();
        (pos, alphas)
    }
}

/// `γ_r^(i) = (i−r, …, i−r, i, …, i)` with `i` leading entries.
pub fn standard_weight_vector<S: Scalar + FromPrimitive>(
    r: usize,
    i: usize,
) -> Result<WeightVector<S>> {
    if r < 2 || i < 1 || i >= r {
        return Err(Error::OutOfRange {
            what: "standard weight index",
            value: i as i64,
            lo: 1,
            hi: r as i64 - 1,
        });
    }
    let low = S::from_i64(i as i64 - r as i64).unwrap();
    let high = S::from_usize(i).unwrap();
    let mut entries = vec![low; i];
    entries.extend(std::iter::repeat_n(high, r - i));
    Ok(WeightVector { entries })
}

/// Associated weight vector `Σ_j α_j γ_r^(rk_j)` of a weighted filtration.
pub fn weight_vector_of_filtration<S: Scalar + FromPrimitive>(
    ranks: &[usize],
    alphas: &[S],
    r: usize,
) -> Result<WeightVector<S>> {
    if ranks.len() != alphas.len() {
        return Err(Error::MalformedFiltration(format!(
            "{} ranks but {} weights",
            ranks.len(),
            alphas.len()
        )));
    }
    if ranks.windows(2).any(|w| w[0] >= w[1])
        || ranks.first().is_some_and(|&d| d == 0)
        || ranks.last().is_some_and(|&d| d >= r)
    {
        return Err(Error::MalformedFiltration(format!(
            "ranks {ranks:?} are not strictly between 0 and {r}"
        )));
    }
    if alphas.iter().any(|a| !a.is_positive()) {
        return Err(Error::MalformedFiltration(
            "weights must be positive".into(),
        ));
    }
    let mut entries = vec![S::zero(); r];
    for (&rk, a) in ranks.iter().zip(alphas) {
        let std = standard_weight_vector::<S>(r, rk)?;
        for (e, s) in entries.iter_mut().zip(std.entries) {
            *e = e.clone() + a.clone() * s;
        }
    }
    Ok(WeightVector { entries })
}

/// Weighted flag of a nontrivial subgroup: cumulative eigenspace dimensions in
/// ascending weight order with gaps normalized by `r`. Ties keep index order.
pub fn weighted_flag_of<S: Scalar + FromPrimitive>(
    lambda: &OneParamSubgroup,
) -> Result<WeightedFlag<S>> {
    if lambda.is_trivial() {
        return Err(Error::TrivialSubgroup);
    }
    let w = &lambda.weights;
    let r = w.len();
    let mut basis_order: Vec<usize> = (0..r).collect();
    basis_order.sort_by_key(|&b| w[b]);
    let rs = S::from_usize(r).unwrap();
    let mut dims = Vec::new();
    let mut alphas = Vec::new();
    for pos in 1..r {
        let (lo, hi) = (w[basis_order[pos - 1]], w[basis_order[pos]]);
        if lo != hi {
            dims.push(pos);
            alphas.push(S::from_i64(hi - lo).unwrap() / rs.clone());
        }
    }
    Ok(WeightedFlag {
        dims,
        alphas,
        basis_order,
    })
}

fn check_group_element(lambda: &OneParamSubgroup, g: &Matrix<BigRational>) -> Result<()> {
    let r = lambda.rank();
    if g.rows() != r || g.cols() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: g.rows().max(g.cols()),
        });
    }
    if g.determinant().is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(())
}

/// Membership in `Q(λ)`: entry `(a, b)` scales as `z^{γ(a) − γ(b)}`, so it
/// must vanish whenever `γ(a) > γ(b)`.
pub fn parabolic_member(lambda: &OneParamSubgroup, g: &Matrix<BigRational>) -> Result<bool> {
    check_group_element(lambda, g)?;
    let w = &lambda.weights;
    let r = w.len();
    Ok((0..r).all(|a| (0..r).all(|b| w[a] <= w[b] || g[(a, b)].is_zero())))
}

/// Membership in the unipotent radical of `Q(λ)`: the limit must be `e`.
pub fn unipotent_radical_member(
    lambda: &OneParamSubgroup,
    g: &Matrix<BigRational>,
) -> Result<bool> {
    if !parabolic_member(lambda, g)? {
        return Ok(false);
    }
    let w = &lambda.weights;
    let r = w.len();
    let one = BigRational::from_integer(1.into());
    Ok((0..r).all(|a| {
        (0..r).all(|b| {
            w[a] != w[b]
                || if a == b {
                    g[(a, b)] == one
                } else {
                    g[(a, b)].is_zero()
                }
        })
    }))
}
