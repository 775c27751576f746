//! Bilinear-form bundles on the projective line: the concrete singular
//! principal bundles for symplectic and orthogonal groups.
//!
//! The sheaf is split, `A = ⊕ O(d_k)` with `Σ d_k = 0`, and everything is
//! computed on the affine chart with coordinate `x`. A form entry `φ_kl` is a
//! polynomial of degree at most `−(d_k + d_l)`. Subsheaves are given by
//! polynomial generator columns and replaced by their saturation; the
//! saturation degree is read off the primitive Plücker vector.

mod dual;
mod stability;

pub use dual::dualize_filtration;
pub use stability::{
    coordinate_flags, filtration_data_of, form_profile, kernel_destabilizer, ramanathan_semistable,
    semistable_form, FlagSource, FormVerdict, Witness,
};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, RatFunc};
use crate::{Poly, Rational};

/// `⊕_k O(d_k)` on the projective line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitSheafModel {
    degrees: Vec<i64>,
}

impl SplitSheafModel {
    /// Degrees must sum to zero (trivial determinant).
    pub fn new(degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::MalformedFlag("sheaf of rank zero".into()));
        }
        let total: i64 = degrees.iter().sum();
        if total != 0 {
            return Err(Error::Parse(format!(
                "summand degrees must sum to zero, got {total}"
            )));
        }
        Ok(SplitSheafModel { degrees })
    }

    /// Trivial bundle of rank `r`.
    pub fn trivial(r: usize) -> Self {
        SplitSheafModel {
            degrees: vec![0; r],
        }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn total_degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// `P(n) = Σ (d_k + n + 1)`.
    pub fn hilbert_polynomial(&self) -> Poly {
        genus_zero_hilbert(self.total_degree(), self.rank())
    }

    /// The dual sheaf `⊕ O(−d_k)`.
    pub fn dual(&self) -> Self {
        SplitSheafModel {
            degrees: self.degrees.iter().map(|d| -d).collect(),
        }
    }
}

/// Hilbert polynomial `d + m(n + 1)` of a rank-`m`, degree-`d` bundle.
pub(crate) fn genus_zero_hilbert(degree: i64, rank: usize) -> Poly {
    let m = rational(rank as i64);
    Poly::new(vec![rational(degree) + &m, m])
}

fn rational(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

impl Symmetry {
    fn sign(self) -> Rational {
        match self {
            Symmetry::Symmetric => Rational::one(),
            Symmetry::Antisymmetric => -Rational::one(),
        }
    }
}

/// A nonzero (anti)symmetric form `φ: A ⊗ A → O`.
#[derive(Clone, PartialEq, Debug)]
pub struct FormBundle {
    model: SplitSheafModel,
    symmetry: Symmetry,
    entries: Vec<Vec<Poly>>,
}

impl FormBundle {
    pub fn new(
        model: SplitSheafModel,
        symmetry: Symmetry,
        entries: Vec<Vec<Poly>>,
    ) -> Result<Self> {
        let r = model.rank();
        if entries.len() != r || entries.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: entries.len(),
            });
        }
        let d = &model.degrees;
        let sign = symmetry.sign();
        for k in 0..r {
            for l in 0..r {
                let e = &entries[k][l];
                if entries[l][k] != e.scale(&sign) {
                    return Err(Error::Parse(format!(
                        "entries ({k},{l}) and ({l},{k}) violate the {symmetry:?} symmetry"
                    )));
                }
                if let Some(deg) = e.degree() {
                    if deg as i64 > -(d[k] + d[l]) {
                        return Err(Error::Parse(format!(
                            "entry ({k},{l}) has degree {deg} above the bound {}",
                            -(d[k] + d[l])
                        )));
                    }
                }
            }
        }
        if entries.iter().flatten().all(Poly::is_zero) {
            return Err(Error::Parse("the form must be nonzero".into()));
        }
        Ok(FormBundle {
            model,
            symmetry,
            entries,
        })
    }

    /// Constant form on the trivial bundle from an integer matrix.
    pub fn constant(symmetry: Symmetry, matrix: &[Vec<i64>]) -> Result<Self> {
        let entries = matrix
            .iter()
            .map(|row| row.iter().map(|&v| Poly::constant(rational(v))).collect())
            .collect();
        Self::new(SplitSheafModel::trivial(matrix.len()), symmetry, entries)
    }

    pub fn model(&self) -> &SplitSheafModel {
        &self.model
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub(crate) fn function_matrix(&self) -> Matrix<RatFunc> {
        Matrix::from_rows(
            self.entries
                .iter()
                .map(|row| row.iter().cloned().map(RatFunc::from).collect())
                .collect(),
        )
    }

    /// Generic nondegeneracy: `det φ ≢ 0`.
    pub fn is_generically_nondegenerate(&self) -> bool {
        !crate::exactmath::Field::is_zero(&self.function_matrix().determinant())
    }
}

/// One step `A_j` of a filtration, with its derived invariants.
#[derive(Clone, PartialEq, Debug)]
pub struct FlagStep {
    generators: Vec<Vec<Poly>>,
    rank: usize,
    degree: i64,
    alpha: Rational,
    coordinates: Option<BTreeSet<usize>>,
}

impl FlagStep {
    /// Generator columns as given.
    pub fn generators(&self) -> &[Vec<Poly>] {
        &self.generators
    }

    /// Generic rank of the generated subsheaf.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Degree of the saturation.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    /// The summands spanning this step, when every generator is a coordinate
    /// vector.
    pub fn coordinates(&self) -> Option<&BTreeSet<usize>> {
        self.coordinates.as_ref()
    }
}

/// Weighted filtration by saturated subsheaves, `0 ⊊ A_1 ⊊ … ⊊ A_t ⊊ A`.
#[derive(Clone, PartialEq, Debug)]
pub struct SubsheafFlag {
    rank: usize,
    steps: Vec<FlagStep>,
}

impl SubsheafFlag {
    /// Each step is `(generator columns, α)`. Ranks and saturation degrees
    /// are derived from the generators against `model`.
    pub fn new(model: &SplitSheafModel, steps: Vec<(Vec<Vec<Poly>>, Rational)>) -> Result<Self> {
        let r = model.rank();
        let mut out: Vec<FlagStep> = Vec::with_capacity(steps.len());
        for (j, (generators, alpha)) in steps.into_iter().enumerate() {
            if !alpha.is_positive() {
                return Err(Error::MalformedFlag(format!("step {} has α ≤ 0", j + 1)));
            }
            if generators.is_empty() {
                return Err(Error::MalformedFlag(format!(
                    "step {} has no generators",
                    j + 1
                )));
            }
            if let Some(bad) = generators.iter().find(|c| c.len() != r) {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: bad.len(),
                });
            }
            let gm = column_matrix(&generators, r);
            let (_, pivots) = gm.rref();
            let rank = pivots.len();
            if rank == 0 || rank >= r {
                return Err(Error::MalformedFlag(format!(
                    "step {} has generic rank {rank}, not strictly between 0 and {r}",
                    j + 1
                )));
            }
            if let Some(prev) = out.last() {
                if rank <= prev.rank {
                    return Err(Error::MalformedFlag(format!(
                        "generic ranks must increase strictly (step {})",
                        j + 1
                    )));
                }
                let mut both = prev.generators.clone();
                both.extend(generators.iter().cloned());
                if column_matrix(&both, r).rank() != rank {
                    return Err(Error::MalformedFlag(format!(
                        "step {} does not contain step {}",
                        j + 1,
                        j
                    )));
                }
            }
            let coordinates = coordinate_set(&generators);
            let degree = match &coordinates {
                Some(set) => set.iter().map(|&k| model.degrees[k]).sum(),
                None => {
                    let basis: Vec<Vec<Poly>> =
                        pivots.iter().map(|&c| generators[c].clone()).collect();
                    saturation_degree(model, &basis)
                }
            };
            out.push(FlagStep {
                generators,
                rank,
                degree,
                alpha,
                coordinates,
            });
        }
        Ok(SubsheafFlag {
            rank: r,
            steps: out,
        })
    }

    /// Flag of coordinate subsheaves `⊕_{k∈S_j} O(d_k)`.
    pub fn coordinate(
        model: &SplitSheafModel,
        sets: &[BTreeSet<usize>],
        alphas: &[Rational],
    ) -> Result<Self> {
        let r = model.rank();
        let steps = sets
            .iter()
            .zip(alphas)
            .map(|(set, a)| {
                let cols = set.iter().map(|&k| unit_column(r, k)).collect();
                (cols, a.clone())
            })
            .collect();
        Self::new(model, steps)
    }

    /// Ambient rank `r`.
    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn steps(&self) -> &[FlagStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_coordinate(&self) -> bool {
        self.steps.iter().all(|s| s.coordinates.is_some())
    }
}

pub(crate) fn unit_column(r: usize, k: usize) -> Vec<Poly> {
    (0..r)
        .map(|i| {
            if i == k {
                Poly::constant(Rational::one())
            } else {
                Poly::zero()
            }
        })
        .collect()
}

pub(crate) fn column_matrix(cols: &[Vec<Poly>], r: usize) -> Matrix<RatFunc> {
    let cols: Vec<Vec<RatFunc>> = cols
        .iter()
        .map(|c| c.iter().cloned().map(RatFunc::from).collect())
        .collect();
    Matrix::from_columns(&cols, r)
}

/// Indices of the generators when each is a nonzero constant multiple of a
/// unit vector.
fn coordinate_set(generators: &[Vec<Poly>]) -> Option<BTreeSet<usize>> {
    let mut set = BTreeSet::new();
    for col in generators {
        let nonzero: Vec<usize> = (0..col.len()).filter(|&i| !col[i].is_zero()).collect();
        match nonzero.as_slice() {
            [k] if col[*k].degree() == Some(0) => {
                set.insert(*k);
            }
            _ => return None,
        }
    }
    Some(set)
}

/// Degree of the saturation of the subsheaf spanned by `basis` (linearly
/// independent columns).
///
/// The maximal minors `p_I` divided by their gcd form the primitive Plücker
/// vector; a saturated `B` with `det B = O(b)` has `p_I ∈ H^0(O(d_I − b))`
/// without common zeros, including at infinity, so `b = min_I (d_I − deg p_I)`.
pub fn saturation_degree(model: &SplitSheafModel, basis: &[Vec<Poly>]) -> i64 {
    let r = model.rank();
    let m = basis.len();
    let mut minors: Vec<(i64, Poly)> = Vec::new();
    for rows in subsets(r, m) {
        let sub = Matrix::from_rows(
            rows.iter()
                .map(|&i| basis.iter().map(|c| RatFunc::from(c[i].clone())).collect())
                .collect(),
        );
        let det = sub.determinant();
        debug_assert!(det.is_polynomial());
        let d_i: i64 = rows.iter().map(|&i| model.degrees[i]).sum();
        minors.push((d_i, det.numer().clone()));
    }
    let g = minors.iter().fold(Poly::zero(), |g, (_, p)| g.gcd(p));
    debug_assert!(!g.is_zero(), "basis columns are independent");
    let gdeg = g.degree().unwrap_or(0) as i64;
    minors
        .iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(d_i, p)| d_i - (p.degree().unwrap() as i64 - gdeg))
        .min()
        .expect("some maximal minor is nonzero")
}

/// All `m`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// Scale a vector of rational functions to coprime polynomials.
pub(crate) fn clear_denominators(v: &[RatFunc]) -> Vec<Poly> {
    let lcm = v.iter().fold(Poly::constant(Rational::one()), |l, f| {
        let g = l.gcd(f.denom());
        (&l * f.denom()).div_rem(&g).0
    });
    let polys: Vec<Poly> = v
        .iter()
        .map(|f| (f.numer() * &lcm).div_rem(f.denom()).0)
        .collect();
    let g = polys.iter().fold(Poly::zero(), |g, p| g.gcd(p));
    let polys: Vec<Poly> = if g.is_zero() {
        polys
    } else {
        polys.iter().map(|p| p.div_rem(&g).0).collect()
    };
    integral_content(polys)
}

/// Rescale by a rational constant so all coefficients are coprime integers
/// and the first nonzero coefficient is positive.
fn integral_content(polys: Vec<Poly>) -> Vec<Poly> {
    let coeffs = polys.iter().flat_map(|p| p.coeffs().iter());
    let lcm = coeffs.clone().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let gcd = coeffs.clone().fold(BigInt::zero(), |g, c| {
        g.gcd(&(c * Rational::from_integer(lcm.clone())).to_integer())
    });
    if gcd.is_zero() {
        return polys;
    }
    let mut scale = Rational::new(lcm, gcd);
    if coeffs
        .clone()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative())
    {
        scale = -scale;
    }
    polys.iter().map(|p| p.scale(&scale)).collect()
}
