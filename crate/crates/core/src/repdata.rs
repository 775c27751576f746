//! Characteristic bounds and small constants indexed by Dynkin type.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_exceptional(self) -> bool {
        matches!(self, Family::E | Family::F | Family::G)
    }
}

/// A simple Dynkin type such as `A5`, `D4` or `E8`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DynkinType {
    family: Family,
    rank: u32,
}

impl DynkinType {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            });
        }
        Ok(DynkinType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    /// Accepts `A5`, `A_5`, `e8` and the like.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::UnknownLabel(s.to_string())),
        };
        let rest = chars.as_str();
        let digits = rest.strip_prefix('_').unwrap_or(rest);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::UnknownLabel(s.to_string()));
        }
        let rank = digits
            .parse::<u32>()
            .map_err(|_| Error::UnknownLabel(s.to_string()))?;
        DynkinType::new(family, rank)
    }
}

/// `N` such that the adjoint representation has low height once `char k > N`.
pub fn adjoint_low_height_bound(t: DynkinType) -> u64 {
    let n = u64::from(t.rank);
    match t.family {
        Family::A => 2 * n,
        Family::B | Family::C => 4 * n - 2,
        Family::D => 4 * n - 6,
        Family::G => 10,
        Family::F => 22,
        Family::E => match t.rank {
            6 => 22,
            7 => 34,
            _ => 58,
        },
    }
}

/// Characteristic requirement under which the moduli space over a curve is
/// known to be projective. Variants are ordered from weakest to strongest.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CharCondition {
    AnyChar,
    CharNot(u64),
    CharGreater(u64),
}

impl fmt::Display for CharCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharCondition::AnyChar => write!(f, "any"),
            CharCondition::CharNot(p) => write!(f, "char != {p}"),
            CharCondition::CharGreater(n) => write!(f, "char > {n}"),
        }
    }
}

fn clause_of(t: DynkinType) -> CharCondition {
    match (t.family, t.rank) {
        (Family::A, _) => CharCondition::AnyChar,
        (Family::B | Family::C | Family::D, _) => CharCondition::CharNot(2),
        (Family::G, _) => CharCondition::CharGreater(10),
        (Family::F, _) | (Family::E, 6) => CharCondition::CharGreater(22),
        (Family::E, 7) => CharCondition::CharGreater(34),
        _ => CharCondition::CharGreater(58),
    }
}

/// Weakest clause covering every simple factor; the empty set is `AnyChar`.
pub fn heinloth_curve_condition<'a>(
    types: impl IntoIterator<Item = &'a DynkinType>,
) -> CharCondition {
    types
        .into_iter()
        .map(|&t| clause_of(t))
        .max()
        .unwrap_or(CharCondition::AnyChar)
}

/// `rank! · height^rank`.
pub fn separable_index_upper_bound(group_rank: u32, height: u64) -> BigUint {
    let fact: BigUint = (1..=u64::from(group_rank)).map(BigUint::from).product();
    fact * BigUint::from(height).pow(group_rank)
}

/// Primes that fail to be good for an exceptional root system.
pub fn good_prime_excluded(t: DynkinType) -> Result<BTreeSet<u64>> {
    match (t.family, t.rank) {
        (Family::E, 8) => Ok([2, 3, 5].into()),
        (f, _) if f.is_exceptional() => Ok([2, 3].into()),
        _ => Err(Error::NotExceptional(t.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(t("A_5"), t("a5"));
        assert_eq!(t("E8").to_string(), "E8");
        assert!(matches!(
            "E9".parse::<DynkinType>(),
            Err(Error::InvalidRank {
                family: 'E',
                rank: 9
            })
        ));
        assert!(matches!(
            "D2".parse::<DynkinType>(),
            Err(Error::InvalidRank { .. })
        ));
        assert!(matches!(
            "B1".parse::<DynkinType>(),
            Err(Error::InvalidRank { .. })
        ));
        assert!(matches!(
            "X3".parse::<DynkinType>(),
            Err(Error::UnknownLabel(_))
        ));
        assert!(matches!(
            "A".parse::<DynkinType>(),
            Err(Error::UnknownLabel(_))
        ));
        assert!(matches!(
            "A-1".parse::<DynkinType>(),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn low_height_table() {
        let table = [
            ("A3", 6),
            ("B3", 10),
            ("C2", 6),
            ("D4", 10),
            ("G2", 10),
            ("F4", 22),
            ("E6", 22),
            ("E7", 34),
            ("E8", 58),
        ];
        for (s, n) in table {
            assert_eq!(adjoint_low_height_bound(t(s)), n, "{s}");
        }
    }

    #[test]
    fn low_height_monotone_in_rank() {
        for (f, lo) in [
            (Family::A, 1),
            (Family::B, 2),
            (Family::C, 2),
            (Family::D, 3),
        ] {
            for n in lo..40 {
                let a = DynkinType::new(f, n).unwrap();
                let b = DynkinType::new(f, n + 1).unwrap();
                assert!(adjoint_low_height_bound(a) <= adjoint_low_height_bound(b));
            }
        }
        assert!(adjoint_low_height_bound(t("E6")) <= adjoint_low_height_bound(t("E7")));
        assert!(adjoint_low_height_bound(t("E7")) <= adjoint_low_height_bound(t("E8")));
    }

    #[test]
    fn curve_condition_examples() {
        assert_eq!(heinloth_curve_condition(&[t("A5")]), CharCondition::AnyChar);
        assert_eq!(
            heinloth_curve_condition(&[t("A2"), t("D4")]),
            CharCondition::CharNot(2)
        );
        assert_eq!(
            heinloth_curve_condition(&[t("B2"), t("E7")]),
            CharCondition::CharGreater(34)
        );
        assert_eq!(
            heinloth_curve_condition(&[t("G2"), t("C3")]),
            CharCondition::CharGreater(10)
        );
        assert_eq!(
            heinloth_curve_condition(&[t("F4")]),
            CharCondition::CharGreater(22)
        );
        assert_eq!(
            heinloth_curve_condition(&[t("E8"), t("A1")]),
            CharCondition::CharGreater(58)
        );
        for n in 1..30 {
            assert_eq!(
                heinloth_curve_condition(&[DynkinType::new(Family::A, n).unwrap()]),
                CharCondition::AnyChar
            );
        }
    }

    #[test]
    fn curve_condition_monotone_under_inclusion() {
        let all: Vec<DynkinType> = ["A1", "A4", "B2", "C5", "D4", "G2", "F4", "E6", "E7", "E8"]
            .iter()
            .map(|s| t(s))
            .collect();
        for mask in 1u32..(1 << all.len()) {
            let set: Vec<DynkinType> = (0..all.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| all[i])
                .collect();
            let base = heinloth_curve_condition(&set);
            for extra in &all {
                let mut bigger = set.clone();
                bigger.push(*extra);
                assert!(heinloth_curve_condition(&bigger) >= base);
            }
        }
    }

    #[test]
    fn separable_index() {
        assert_eq!(separable_index_upper_bound(1, 2), BigUint::from(2u32));
        assert_eq!(separable_index_upper_bound(2, 3), BigUint::from(18u32));
        assert_eq!(separable_index_upper_bound(1, 1), BigUint::from(1u32));
        assert_eq!(
            separable_index_upper_bound(8, 29),
            BigUint::from(40320u64) * BigUint::from(29u32).pow(8)
        );
    }

    #[test]
    fn good_primes() {
        assert_eq!(
            good_prime_excluded(t("E8")).unwrap(),
            BTreeSet::from([2, 3, 5])
        );
        for s in ["E6", "E7", "F4", "G2"] {
            assert_eq!(good_prime_excluded(t(s)).unwrap(), BTreeSet::from([2, 3]));
        }
        assert!(matches!(
            good_prime_excluded(t("D4")),
            Err(Error::NotExceptional(_))
        ));
    }
}
