use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{clear_denominators, genus_zero_hilbert, FormBundle, SplitSheafModel, SubsheafFlag};
use crate::dispo::{
    asymptotic_semistable, functional_l, functional_m, mu_profile, slope_semistable,
    FiltrationData, FiltrationMember, NonvanishingProfile, TestCase,
};
use crate::error::{Error, Result};
use crate::{Poly, Rational};

/// Largest rank for which all coordinate flags are enumerated.
pub const MAX_EXHAUSTIVE_RANK: usize = 6;

/// Which filtrations a semistability check runs over. Kernel-derived flags
/// are always added in front.
#[derive(Clone, Debug)]
pub enum FlagSource {
    ExhaustiveCoordinate,
    Supplied(Vec<SubsheafFlag>),
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub flag: SubsheafFlag,
    pub from_kernel: bool,
    pub mu: Rational,
    pub m: Poly,
    pub l: Rational,
}

#[derive(Clone, Debug)]
pub struct FormVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub flags_checked: usize,
}

/// Ranks, saturation degrees and genus-zero Hilbert polynomials of `flag`.
pub fn filtration_data_of(
    fb: &FormBundle,
    flag: &SubsheafFlag,
) -> Result<FiltrationData<Rational>> {
    model_filtration_data(fb.model(), flag)
}

pub(crate) fn model_filtration_data(
    model: &SplitSheafModel,
    flag: &SubsheafFlag,
) -> Result<FiltrationData<Rational>> {
    if flag.ambient_rank() != model.rank() {
        return Err(Error::MalformedFlag(format!(
            "flag lives in rank {}, sheaf has rank {}",
            flag.ambient_rank(),
            model.rank()
        )));
    }
    let members = flag
        .steps()
        .iter()
        .map(|s| FiltrationMember {
            rank: s.rank(),
            degree: Rational::from_integer(s.degree().into()),
            hilb: genus_zero_hilbert(s.degree(), s.rank()),
            alpha: s.alpha().clone(),
        })
        .collect();
    FiltrationData::new(
        model.rank(),
        Rational::from_integer(model.total_degree().into()),
        model.hilbert_polynomial(),
        members,
    )
}

/// Does `φ(span(left), span(right))` vanish identically?
fn pairing_vanishes(phi: &[Vec<Poly>], left: &[Vec<Poly>], right: &[Vec<Poly>]) -> bool {
    let r = phi.len();
    // φ applied to each right column
    let images: Vec<Vec<Poly>> = right
        .iter()
        .map(|col| {
            (0..r)
                .map(|k| {
                    (0..r).fold(Poly::zero(), |acc, l| {
                        if phi[k][l].is_zero() || col[l].is_zero() {
                            acc
                        } else {
                            &acc + &(&phi[k][l] * &col[l])
                        }
                    })
                })
                .collect()
        })
        .collect();
    left.iter().all(|u| {
        images.iter().all(|v| {
            (0..r)
                .fold(Poly::zero(), |acc, k| &acc + &(&u[k] * &v[k]))
                .is_zero()
        })
    })
}

/// Pairs `(i ≤ j)` over `1..=t+1` with `φ(A_i, A_j) ≢ 0`, `A_{t+1} = A`.
pub fn form_profile(fb: &FormBundle, flag: &SubsheafFlag) -> Result<NonvanishingProfile> {
    let r = fb.model().rank();
    if flag.ambient_rank() != r {
        return Err(Error::MalformedFlag(format!(
            "flag lives in rank {}, sheaf has rank {r}",
            flag.ambient_rank()
        )));
    }
    if flag.steps().windows(2).any(|w| w[0].rank() >= w[1].rank()) {
        return Err(Error::DegenerateFlag(
            "generic ranks do not increase".into(),
        ));
    }
    let t = flag.len();
    let whole: Vec<Vec<Poly>> = (0..r).map(|k| super::unit_column(r, k)).collect();
    let spans: Vec<&[Vec<Poly>]> = flag
        .steps()
        .iter()
        .map(|s| s.generators())
        .chain(std::iter::once(whole.as_slice()))
        .collect();
    let mut tuples = Vec::new();
    for i in 0..=t {
        for j in i..=t {
            if !pairing_vanishes(fb.entries(), spans[i], spans[j]) {
                tuples.push(vec![i + 1, j + 1]);
            }
        }
    }
    NonvanishingProfile::new(t, 2, tuples)
}

/// The flag `0 ⊊ ker φ ⊊ A` with weight 1, or `None` when `φ` is
/// generically nondegenerate.
pub fn kernel_destabilizer(fb: &FormBundle) -> Option<SubsheafFlag> {
    let kernel = fb.function_matrix().nullspace();
    if kernel.is_empty() {
        return None;
    }
    let generators: Vec<Vec<Poly>> = kernel.iter().map(|v| clear_denominators(v)).collect();
    let flag = SubsheafFlag::new(fb.model(), vec![(generators, Rational::one())])
        .expect("kernel of a nonzero form is a proper nonzero subsheaf");
    Some(flag)
}

/// Every chain `∅ ⊊ S_1 ⊊ … ⊊ S_t ⊊ {1..r}` of coordinate subsets, weights 1,
/// in depth-first order over ascending bitmasks.
pub fn coordinate_flags(model: &SplitSheafModel) -> Result<Vec<SubsheafFlag>> {
    let r = model.rank();
    if r > MAX_EXHAUSTIVE_RANK {
        return Err(Error::TooLarge(format!(
            "coordinate flag enumeration limited to rank {MAX_EXHAUSTIVE_RANK}, got {r}"
        )));
    }
    let full: u32 = (1u32 << r) - 1;
    let mut chains: Vec<Vec<u32>> = Vec::new();
    fn extend(cur: &mut Vec<u32>, full: u32, out: &mut Vec<Vec<u32>>) {
        let last = cur.last().copied().unwrap_or(0);
        for next in 1..full {
            if next & last == last && next != last {
                cur.push(next);
                out.push(cur.clone());
                extend(cur, full, out);
                cur.pop();
            }
        }
    }
    extend(&mut Vec::new(), full, &mut chains);
    chains
        .into_iter()
        .map(|chain| {
            let sets: Vec<BTreeSet<usize>> = chain
                .iter()
                .map(|&m| (0..r).filter(|k| m & (1 << k) != 0).collect())
                .collect();
            let alphas = vec![Rational::one(); sets.len()];
            SubsheafFlag::coordinate(model, &sets, &alphas)
        })
        .collect()
}

struct Prepared {
    flags: Vec<SubsheafFlag>,
    kernel_count: usize,
    cases: Vec<TestCase<Rational>>,
}

fn prepare(fb: &FormBundle, source: &FlagSource) -> Result<Prepared> {
    let mut flags: Vec<SubsheafFlag> = kernel_destabilizer(fb).into_iter().collect();
    let kernel_count = flags.len();
    match source {
        FlagSource::ExhaustiveCoordinate => flags.extend(coordinate_flags(fb.model())?),
        FlagSource::Supplied(list) => flags.extend(list.iter().cloned()),
    }
    let cases = flags
        .iter()
        .map(|f| Ok((filtration_data_of(fb, f)?, form_profile(fb, f)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Prepared {
        flags,
        kernel_count,
        cases,
    })
}

fn witness(p: &Prepared, index: usize) -> Result<Witness> {
    let (data, prof) = &p.cases[index];
    Ok(Witness {
        flag: p.flags[index].clone(),
        from_kernel: index < p.kernel_count,
        mu: mu_profile(data, prof)?,
        m: functional_m(data),
        l: functional_l(data),
    })
}

/// Semistability of the form bundle: `μ ≥ 0` on every checked flag and
/// `M ⪰ 0` (`≻ 0` when `strict`) on those with `μ = 0`.
pub fn semistable_form(fb: &FormBundle, source: &FlagSource, strict: bool) -> Result<FormVerdict> {
    let p = prepare(fb, source)?;
    let verdict = asymptotic_semistable(&p.cases, strict)?;
    Ok(FormVerdict {
        holds: verdict.holds(),
        witness: verdict.witness().map(|i| witness(&p, i)).transpose()?,
        flags_checked: p.flags.len(),
    })
}

/// `L ≥ 0` (`> 0` when `strict`) on every checked flag with `μ = 0`; these
/// are exactly the filtrations coming from reductions of structure group.
pub fn ramanathan_semistable(
    fb: &FormBundle,
    source: &FlagSource,
    strict: bool,
) -> Result<FormVerdict> {
    let p = prepare(fb, source)?;
    let mut reductions = Vec::new();
    let mut positions = Vec::new();
    for (i, (data, prof)) in p.cases.iter().enumerate() {
        if mu_profile(data, prof)?.is_zero() {
            reductions.push((data.clone(), prof.clone()));
            positions.push(i);
        }
    }
    let verdict = slope_semistable(&reductions, &Rational::zero(), strict)?;
    Ok(FormVerdict {
        holds: verdict.holds(),
        witness: verdict
            .witness()
            .map(|k| witness(&p, positions[k]))
            .transpose()?,
        flags_checked: p.flags.len(),
    })
}
