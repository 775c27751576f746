//! Semistability of dispo sheaves, computed from discrete invariants.
//!
//! A weighted filtration enters only through its ranks, degrees, Hilbert
//! polynomials and weights ([`FiltrationData`]); the decoration enters only
//! through which star products it does not vanish on
//! ([`NonvanishingProfile`]). Semistability is always checked against a
//! finite, caller-supplied list of filtrations.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use num_traits::FromPrimitive;

use crate::error::{Error, Result};
use crate::exactmath::{poly_order, Scalar, UniPoly};
use crate::flags::weight_vector_of_filtration;

#[derive(Clone, PartialEq, Debug)]
pub struct FiltrationMember<S> {
    pub rank: usize,
    pub degree: S,
    pub hilb: UniPoly<S>,
    pub alpha: S,
}

/// Ranks, degrees, Hilbert polynomials and weights of a weighted filtration
/// `0 ⊊ A_1 ⊊ … ⊊ A_t ⊊ A`.
#[derive(Clone, PartialEq, Debug)]
pub struct FiltrationData<S> {
    total_rank: usize,
    total_degree: S,
    total_hilb: UniPoly<S>,
    members: Vec<FiltrationMember<S>>,
}

impl<S: Scalar> FiltrationData<S> {
    pub fn new(
        total_rank: usize,
        total_degree: S,
        total_hilb: UniPoly<S>,
        members: Vec<FiltrationMember<S>>,
    ) -> Result<Self> {
        let mut prev = 0;
        for m in &members {
            if m.rank <= prev || m.rank >= total_rank {
                return Err(Error::MalformedFiltration(format!(
                    "member ranks must increase strictly inside (0, {total_rank})"
                )));
            }
            if !m.alpha.is_positive() {
                return Err(Error::MalformedFiltration(
                    "weights must be positive".into(),
                ));
            }
            if poly_order(&m.hilb, &total_hilb) != Ordering::Less {
                return Err(Error::MalformedFiltration(
                    "member Hilbert polynomial is not below the total".into(),
                ));
            }
            prev = m.rank;
        }
        Ok(FiltrationData {
            total_rank,
            total_degree,
            total_hilb,
            members,
        })
    }

    pub fn total_rank(&self) -> usize {
        self.total_rank
    }

    pub fn total_degree(&self) -> &S {
        &self.total_degree
    }

    pub fn total_hilb(&self) -> &UniPoly<S> {
        &self.total_hilb
    }

    pub fn members(&self) -> &[FiltrationMember<S>] {
        &self.members
    }

    pub fn steps(&self) -> usize {
        self.members.len()
    }

    /// Same filtration with every weight multiplied by `c`.
    pub fn scale_alphas(&self, c: &S) -> Self {
        let mut out = self.clone();
        for m in &mut out.members {
            m.alpha = m.alpha.clone() * c.clone();
        }
        out
    }
}

/// Index tuples `(i_1 ≤ … ≤ i_len)` over `1..=t+1` on which the decoration
/// restricted to `A_{i_1} ⋆ … ⋆ A_{i_len}` is not identically zero.
///
/// Tuples are stored sorted; unsorted input is sorted on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NonvanishingProfile {
    steps: usize,
    tuple_len: usize,
    tuples: BTreeSet<Vec<usize>>,
}

impl NonvanishingProfile {
    /// Validates ranges, the presence of the top tuple and upward closure.
    pub fn new(
        steps: usize,
        tuple_len: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let prof = Self::unchecked(steps, tuple_len, tuples)?;
        if !prof.tuples.contains(&vec![steps + 1; tuple_len]) {
            return Err(Error::ProfileMismatch(
                "profile must contain the all-top tuple".into(),
            ));
        }
        if let Some(t) = prof.tuples.iter().find(|t| {
            covers(t, steps)
                .into_iter()
                .any(|c| !prof.tuples.contains(&c))
        }) {
            return Err(Error::ProfileMismatch(format!(
                "profile is not upward closed above {t:?}"
            )));
        }
        Ok(prof)
    }

    /// Upward closure of the given tuples together with the top tuple.
    pub fn closure_of(
        steps: usize,
        tuple_len: usize,
        generators: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let mut prof = Self::unchecked(steps, tuple_len, generators)?;
        prof.tuples.insert(vec![steps + 1; tuple_len]);
        prof.tuples = upward_closure(prof.tuples, steps);
        Ok(prof)
    }

    fn unchecked(
        steps: usize,
        tuple_len: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        if tuple_len == 0 {
            return Err(Error::ProfileMismatch(
                "tuple length must be positive".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for mut t in tuples {
            if t.len() != tuple_len {
                return Err(Error::ProfileMismatch(format!(
                    "tuple {t:?} does not have length {tuple_len}"
                )));
            }
            if t.iter().any(|&i| i == 0 || i > steps + 1) {
                return Err(Error::ProfileMismatch(format!(
                    "tuple {t:?} has entries outside 1..={}",
                    steps + 1
                )));
            }
            t.sort_unstable();
            set.insert(t);
        }
        Ok(NonvanishingProfile {
            steps,
            tuple_len,
            tuples: set,
        })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn tuple_len(&self) -> usize {
        self.tuple_len
    }

    pub fn tuples(&self) -> &BTreeSet<Vec<usize>> {
        &self.tuples
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        let mut t = tuple.to_vec();
        t.sort_unstable();
        self.tuples.contains(&t)
    }
}

/// Sorted tuples obtained by raising one entry by one.
fn covers(t: &[usize], steps: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..t.len() {
        // raising the last entry of a run of equal values keeps the order
        if t[k] <= steps && (k + 1 == t.len() || t[k + 1] > t[k]) {
            let mut c = t.to_vec();
            c[k] += 1;
            out.push(c);
        }
    }
    out
}

fn upward_closure(seed: BTreeSet<Vec<usize>>, steps: usize) -> BTreeSet<Vec<usize>> {
    let mut out = seed.clone();
    let mut queue: VecDeque<Vec<usize>> = seed.into_iter().collect();
    while let Some(t) = queue.pop_front() {
        for c in covers(&t, steps) {
            if out.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    out
}

fn check_match<S>(f: &FiltrationData<S>, prof: &NonvanishingProfile) -> Result<()> {
    if prof.steps != f.members.len() {
        return Err(Error::ProfileMismatch(format!(
            "profile has {} steps, filtration has {}",
            prof.steps,
            f.members.len()
        )));
    }
    Ok(())
}

/// `M = Σ_j α_j (rk(A_j)·P(A) − rk(A)·P(A_j))`.
pub fn functional_m<S: Scalar + FromPrimitive>(f: &FiltrationData<S>) -> UniPoly<S> {
    let r = S::from_usize(f.total_rank).unwrap();
    f.members.iter().fold(UniPoly::zero(), |acc, m| {
        let rk = S::from_usize(m.rank).unwrap();
        let term = &f.total_hilb.scale(&rk) - &m.hilb.scale(&r);
        &acc + &term.scale(&m.alpha)
    })
}

/// `L = Σ_j α_j (rk(A_j)·deg(A) − rk(A)·deg(A_j))`.
pub fn functional_l<S: Scalar + FromPrimitive>(f: &FiltrationData<S>) -> S {
    let r = S::from_usize(f.total_rank).unwrap();
    f.members.iter().fold(S::zero(), |acc, m| {
        let rk = S::from_usize(m.rank).unwrap();
        acc + m.alpha.clone() * (rk * f.total_degree.clone() - r.clone() * m.degree.clone())
    })
}

/// Block values `γ_1 < … < γ_{t+1}` of the associated weight vector.
fn block_weights<S: Scalar + FromPrimitive>(f: &FiltrationData<S>) -> Result<Vec<S>> {
    let ranks: Vec<usize> = f.members.iter().map(|m| m.rank).collect();
    let alphas: Vec<S> = f.members.iter().map(|m| m.alpha.clone()).collect();
    Ok(weight_vector_of_filtration(&ranks, &alphas, f.total_rank)?.block_values())
}

fn tuple_weight<S: Scalar>(gamma: &[S], tuple: &[usize]) -> S {
    tuple
        .iter()
        .fold(S::zero(), |acc, &i| acc + gamma[i - 1].clone())
}

/// `μ = −min{γ_{i_1} + … + γ_{i_len}}` over the tuples of the profile.
/// A filtration without members has `μ = 0`.
pub fn mu_profile<S: Scalar + FromPrimitive>(
    f: &FiltrationData<S>,
    prof: &NonvanishingProfile,
) -> Result<S> {
    check_match(f, prof)?;
    if f.members.is_empty() {
        return Ok(S::zero());
    }
    let gamma = block_weights(f)?;
    let min = prof
        .tuples
        .iter()
        .map(|t| tuple_weight(&gamma, t))
        .reduce(|a, b| if b < a { b } else { a })
        .ok_or_else(|| Error::ProfileMismatch("profile is empty".into()))?;
    Ok(-min)
}

/// Result of checking an inequality over a list of filtrations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Satisfied,
    /// Index of the first filtration violating the inequality.
    Violated {
        witness: usize,
    },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Satisfied)
    }

    pub fn witness(&self) -> Option<usize> {
        match self {
            Verdict::Satisfied => None,
            Verdict::Violated { witness } => Some(*witness),
        }
    }
}

fn accepts(sign: Ordering, strict: bool) -> bool {
    match sign {
        Ordering::Greater => true,
        Ordering::Equal => !strict,
        Ordering::Less => false,
    }
}

fn first_violation<T>(model: &[T], mut ok: impl FnMut(&T) -> Result<bool>) -> Result<Verdict> {
    for (i, item) in model.iter().enumerate() {
        if !ok(item)? {
            return Ok(Verdict::Violated { witness: i });
        }
    }
    Ok(Verdict::Satisfied)
}

/// A filtration with the profile of the decoration along it.
pub type TestCase<S> = (FiltrationData<S>, NonvanishingProfile);

/// `M + δ·μ ⪰ 0` (`≻ 0` when `strict`) for every supplied filtration.
pub fn delta_semistable<S: Scalar + FromPrimitive>(
    model: &[TestCase<S>],
    delta: &UniPoly<S>,
    strict: bool,
) -> Result<Verdict> {
    if !delta.is_positive() {
        return Err(Error::InvalidDelta);
    }
    first_violation(model, |(f, prof)| {
        let mu = mu_profile(f, prof)?;
        let lhs = &functional_m(f) + &delta.scale(&mu);
        Ok(accepts(lhs.eventual_sign(), strict))
    })
}

/// `L + δ̄·μ ≥ 0` (`> 0` when `strict`) for every supplied filtration.
pub fn slope_semistable<S: Scalar + FromPrimitive>(
    model: &[TestCase<S>],
    delta_bar: &S,
    strict: bool,
) -> Result<Verdict> {
    if delta_bar.is_negative() {
        return Err(Error::InvalidDelta);
    }
    first_violation(model, |(f, prof)| {
        let mu = mu_profile(f, prof)?;
        let lhs = functional_l(f) + delta_bar.clone() * mu;
        Ok(accepts(lhs.partial_cmp(&S::zero()).unwrap(), strict))
    })
}

/// `δ̄ = (n−1)!·[x^{n−1}]δ` where `n` is the degree of the Hilbert polynomial.
pub fn slope_parameter<S: Scalar + FromPrimitive>(delta: &UniPoly<S>, dim: usize) -> Result<S> {
    if dim == 0 {
        return Err(Error::MalformedFiltration(
            "Hilbert polynomial must have positive degree".into(),
        ));
    }
    let fact: u64 = (1..dim as u64).product();
    Ok(delta.coeff(dim - 1) * S::from_u64(fact).unwrap())
}

/// δ-semistability implies δ̄-slope semistability. Returns whether the
/// implication holds on this model; an empty model holds vacuously.
pub fn slopy_implication_check<S: Scalar + FromPrimitive>(
    model: &[TestCase<S>],
    delta: &UniPoly<S>,
) -> Result<bool> {
    let Some((first, _)) = model.first() else {
        return Ok(true);
    };
    let dim = first.total_hilb.degree().unwrap_or(0);
    let delta_bar = slope_parameter(delta, dim)?;
    if !delta_semistable(model, delta, false)?.holds() {
        return Ok(true);
    }
    Ok(slope_semistable(model, &delta_bar, false)?.holds())
}

/// `μ ≥ 0` for every filtration, and `M ⪰ 0` (`≻ 0` when `strict`) for those
/// with `μ = 0`.
pub fn asymptotic_semistable<S: Scalar + FromPrimitive>(
    model: &[TestCase<S>],
    strict: bool,
) -> Result<Verdict> {
    first_violation(model, |(f, prof)| {
        let mu = mu_profile(f, prof)?;
        if mu.is_negative() {
            return Ok(false);
        }
        if mu.is_zero() {
            return Ok(accepts(functional_m(f).eventual_sign(), strict));
        }
        Ok(true)
    })
}

/// Profile of the admissible deformation along `f`: the tuples realizing
/// the minimal weight, closed upward.
pub fn admissible_deformation<S: Scalar + FromPrimitive>(
    f: &FiltrationData<S>,
    prof: &NonvanishingProfile,
) -> Result<NonvanishingProfile> {
    check_match(f, prof)?;
    if f.members.is_empty() {
        return Ok(prof.clone());
    }
    let gamma = block_weights(f)?;
    let weighted: Vec<(S, &Vec<usize>)> = prof
        .tuples
        .iter()
        .map(|t| (tuple_weight(&gamma, t), t))
        .collect();
    let min = weighted
        .iter()
        .map(|(w, _)| w.clone())
        .reduce(|a, b| if b < a { b } else { a })
        .ok_or_else(|| Error::ProfileMismatch("profile is empty".into()))?;
    let extremal = weighted
        .into_iter()
        .filter(|(w, _)| *w == min)
        .map(|(_, t)| t.clone());
    NonvanishingProfile::closure_of(prof.steps, prof.tuple_len, extremal)
}

/// Repeat [`admissible_deformation`] until the profile no longer changes.
pub fn deform_to_fixed_point<S: Scalar + FromPrimitive>(
    f: &FiltrationData<S>,
    prof: &NonvanishingProfile,
) -> Result<(NonvanishingProfile, usize)> {
    let mut cur = prof.clone();
    let mut rounds = 0;
    loop {
        let next = admissible_deformation(f, &cur)?;
        if next == cur {
            return Ok((cur, rounds));
        }
        cur = next;
        rounds += 1;
    }
}
