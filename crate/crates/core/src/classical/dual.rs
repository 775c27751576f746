use std::collections::BTreeSet;

use super::{SplitSheafModel, SubsheafFlag};
use crate::error::{Error, Result};

/// Annihilator flag in the dual sheaf: step `i` is `(A_{t+1−i})^⊥` carrying
/// weight `α_{t+1−i}`. Only coordinate flags are supported.
pub fn dualize_filtration(model: &SplitSheafModel, flag: &SubsheafFlag) -> Result<SubsheafFlag> {
    let r = model.rank();
    if flag.ambient_rank() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: flag.ambient_rank(),
        });
    }
    let mut sets = Vec::with_capacity(flag.len());
    let mut alphas = Vec::with_capacity(flag.len());
    for step in flag.steps().iter().rev() {
        let s = step.coordinates().ok_or(Error::NotCoordinateFlag)?;
        sets.push((0..r).filter(|k| !s.contains(k)).collect::<BTreeSet<_>>());
        alphas.push(step.alpha().clone());
    }
    let dual = SubsheafFlag::coordinate(&model.dual(), &sets, &alphas)?;
    debug_assert!(dual
        .steps()
        .iter()
        .zip(flag.steps().iter().rev())
        .all(|(a, b)| a.degree() == b.degree() - model.total_degree()));
    Ok(dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::stability::model_filtration_data;
    use crate::dispo::functional_l;
    use crate::exactmath::{int, rat};
    use crate::Poly;

    #[test]
    fn involution_and_l_invariance() {
        let model = SplitSheafModel::new(vec![2, -1, 0, -1]).unwrap();
        let sets: Vec<BTreeSet<usize>> = vec![[1].into(), [0, 1, 3].into()];
        let flag = SubsheafFlag::coordinate(&model, &sets, &[int(1), rat(1, 2)]).unwrap();
        let d = dualize_filtration(&model, &flag).unwrap();
        assert_eq!(d.steps()[0].coordinates().unwrap(), &BTreeSet::from([2]));
        assert_eq!(d.steps()[0].alpha(), &rat(1, 2));
        assert_eq!(d.steps()[0].degree(), 0);
        assert_eq!(d.steps()[1].degree(), -1);
        let back = dualize_filtration(&model.dual(), &d).unwrap();
        assert_eq!(back, flag);
        let l = functional_l(&model_filtration_data(&model, &flag).unwrap());
        let l_dual = functional_l(&model_filtration_data(&model.dual(), &d).unwrap());
        assert_eq!(l, l_dual);
    }

    #[test]
    fn rejects_non_coordinate() {
        let model = SplitSheafModel::trivial(2);
        let p = |c: i64| Poly::constant(int(c));
        let flag = SubsheafFlag::new(&model, vec![(vec![vec![p(1), p(1)]], int(1))]).unwrap();
        assert_eq!(
            dualize_filtration(&model, &flag),
            Err(Error::NotCoordinateFlag)
        );
    }
}
