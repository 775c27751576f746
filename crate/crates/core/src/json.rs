//! Wire format for instance files and command output.
//!
//! Rationals travel as `"p/q"` strings (bare JSON integers are accepted on
//! input), polynomials as coefficient arrays with the constant term first,
//! profile tuples and coordinate indices are 1-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classical::{FormBundle, SplitSheafModel, SubsheafFlag, Symmetry};
use crate::dispo::{FiltrationData, FiltrationMember, NonvanishingProfile, TestCase};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, parse_rational};
use crate::hilbert_mumford::{RepPoint, TorusWeightRep, WeightedBasisVector};
use crate::{Poly, Rational};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    TorusRep,
    Dispo,
    FormBundle,
    Flags,
    BoundsQuery,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: Kind,
    pub payload: Value,
    pub schema_version: u32,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {}, expected {SCHEMA_VERSION}",
                file.schema_version
            )));
        }
        Ok(file)
    }

    pub fn expect(&self, kinds: &[Kind]) -> Result<()> {
        if kinds.contains(&self.kind) {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "instance kind {:?} not accepted here",
                self.kind
            )))
        }
    }

    pub fn payload<T: for<'de> Deserialize<'de>>(&self) -> Result<T> {
        serde_json::from_value(self.payload.clone()).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A rational as it appears on the wire.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatWire {
    Int(i64),
    Str(String),
}

impl RatWire {
    pub fn value(&self) -> Result<Rational> {
        match self {
            RatWire::Int(v) => Ok(Rational::from_integer((*v).into())),
            RatWire::Str(s) => parse_rational(s),
        }
    }
}

pub fn rational_out(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn poly_in(coeffs: &[RatWire]) -> Result<Poly> {
    Ok(Poly::new(
        coeffs.iter().map(RatWire::value).collect::<Result<_>>()?,
    ))
}

pub fn poly_out(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_out).collect())
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisWire {
    pub label: String,
    pub weight: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepWire {
    pub torus_rank: usize,
    pub basis: Vec<BasisWire>,
}

impl RepWire {
    pub fn build(&self) -> Result<TorusWeightRep> {
        TorusWeightRep::new(
            self.torus_rank,
            self.basis
                .iter()
                .map(|b| WeightedBasisVector {
                    label: b.label.clone(),
                    weight: b.weight.clone(),
                })
                .collect(),
        )
    }
}

/// Payload of a `torus_rep` instance.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusPayload {
    pub rep: RepWire,
    pub point: BTreeMap<String, RatWire>,
    #[serde(default)]
    pub lambda: Option<Vec<i64>>,
}

impl TorusPayload {
    pub fn point(&self) -> Result<RepPoint> {
        RepPoint::new(
            self.point
                .iter()
                .map(|(k, v)| Ok((k.clone(), v.value()?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberWire {
    pub rank: usize,
    pub degree: RatWire,
    pub hilb: Vec<RatWire>,
    pub alpha: RatWire,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationWire {
    pub r: usize,
    pub d: RatWire,
    #[serde(rename = "P")]
    pub p: Vec<RatWire>,
    pub members: Vec<MemberWire>,
}

impl FiltrationWire {
    pub fn build(&self) -> Result<FiltrationData<Rational>> {
        let members = self
            .members
            .iter()
            .map(|m| {
                Ok(FiltrationMember {
                    rank: m.rank,
                    degree: m.degree.value()?,
                    hilb: poly_in(&m.hilb)?,
                    alpha: m.alpha.value()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FiltrationData::new(self.r, self.d.value()?, poly_in(&self.p)?, members)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileWire {
    pub t: usize,
    pub tuple_len: usize,
    pub tuples: Vec<Vec<usize>>,
}

impl ProfileWire {
    pub fn build(&self) -> Result<NonvanishingProfile> {
        NonvanishingProfile::new(self.t, self.tuple_len, self.tuples.iter().cloned())
    }
}

pub fn profile_out(p: &NonvanishingProfile) -> Value {
    json!({
        "t": p.steps(),
        "tuple_len": p.tuple_len(),
        "tuples": p.tuples().iter().collect::<Vec<_>>(),
    })
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseWire {
    pub filtration: FiltrationWire,
    pub profile: ProfileWire,
}

impl CaseWire {
    pub fn build(&self) -> Result<TestCase<Rational>> {
        Ok((self.filtration.build()?, self.profile.build()?))
    }
}

/// Payload of a `dispo` instance: one filtration or a list of them.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum DispoPayload {
    Many {
        cases: Vec<CaseWire>,
        #[serde(default)]
        delta: Option<Vec<RatWire>>,
    },
    One {
        filtration: FiltrationWire,
        profile: ProfileWire,
        #[serde(default)]
        delta: Option<Vec<RatWire>>,
    },
}

impl DispoPayload {
    pub fn is_single(&self) -> bool {
        matches!(self, DispoPayload::One { .. })
    }

    pub fn cases(&self) -> Result<Vec<TestCase<Rational>>> {
        match self {
            DispoPayload::Many { cases, .. } => cases.iter().map(CaseWire::build).collect(),
            DispoPayload::One {
                filtration,
                profile,
                ..
            } => Ok(vec![(filtration.build()?, profile.build()?)]),
        }
    }

    pub fn delta(&self) -> Result<Option<Poly>> {
        let d = match self {
            DispoPayload::Many { delta, .. } | DispoPayload::One { delta, .. } => delta,
        };
        d.as_deref().map(poly_in).transpose()
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryWire {
    Symmetric,
    Antisymmetric,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormWire {
    pub degrees: Vec<i64>,
    pub symmetry: SymmetryWire,
    pub entries: Vec<Vec<Vec<RatWire>>>,
}

impl FormWire {
    pub fn build(&self) -> Result<FormBundle> {
        let symmetry = match self.symmetry {
            SymmetryWire::Symmetric => Symmetry::Symmetric,
            SymmetryWire::Antisymmetric => Symmetry::Antisymmetric,
        };
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| poly_in(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FormBundle::new(
            SplitSheafModel::new(self.degrees.clone())?,
            symmetry,
            entries,
        )
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepWire {
    pub generators: Vec<Vec<Vec<RatWire>>>,
    pub alpha: RatWire,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagWire {
    pub steps: Vec<StepWire>,
}

impl FlagWire {
    /// Degrees are always recomputed from the generators.
    pub fn build(&self, model: &SplitSheafModel) -> Result<SubsheafFlag> {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let cols = s
                    .generators
                    .iter()
                    .map(|col| col.iter().map(|p| poly_in(p)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok((cols, s.alpha.value()?))
            })
            .collect::<Result<Vec<_>>>()?;
        SubsheafFlag::new(model, steps)
    }
}

pub fn flag_out(flag: &SubsheafFlag) -> Value {
    let steps: Vec<Value> = flag
        .steps()
        .iter()
        .map(|s| {
            let mut step = json!({
                "alpha": rational_out(s.alpha()),
                "degree": s.degree(),
                "generators": s.generators().iter()
                    .map(|col| col.iter().map(poly_out).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "rank": s.rank(),
            });
            if let Some(c) = s.coordinates() {
                step["coordinates"] = json!(c.iter().map(|k| k + 1).collect::<Vec<_>>());
            }
            step
        })
        .collect();
    json!({ "steps": steps })
}

/// Payload of a `form_bundle` instance; without `flags` every coordinate
/// flag is tested.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormPayload {
    pub form: FormWire,
    #[serde(default)]
    pub flags: Option<Vec<FlagWire>>,
}

/// Payload of a `flags` instance.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsPayload {
    pub degrees: Vec<i64>,
    pub flag: FlagWire,
}

/// Payload of a `bounds_query` instance.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsPayload {
    pub types: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn rationals_and_polys() {
        let w: Vec<RatWire> = serde_json::from_str(r#"["1/2", 3, "-4/6"]"#).unwrap();
        let p = poly_in(&w).unwrap();
        assert_eq!(p.coeff(2), rat(-2, 3));
        assert_eq!(
            serde_json::to_string(&poly_out(&p)).unwrap(),
            r#"["1/2","3","-2/3"]"#
        );
        assert!(poly_in(&[RatWire::Str("1/0".into())]).is_err());
        assert_eq!(poly_out(&Poly::new(vec![])), json!([]));
    }

    #[test]
    fn instance_envelope() {
        let ok = r#"{"kind":"bounds_query","payload":{"types":["E8"]},"schema_version":1}"#;
        let f = InstanceFile::parse(ok).unwrap();
        assert_eq!(f.kind, Kind::BoundsQuery);
        let b: BoundsPayload = f.payload().unwrap();
        assert_eq!(b.types, vec!["E8"]);
        assert!(f.expect(&[Kind::Dispo]).is_err());
        assert!(InstanceFile::parse(&ok.replace(":1}", ":2}")).is_err());
        assert!(InstanceFile::parse("{").is_err());
        assert!(InstanceFile::parse(r#"{"kind":"nope","payload":{},"schema_version":1}"#).is_err());
    }

    #[test]
    fn dispo_shapes() {
        let one = json!({
            "filtration": {"r": 2, "d": "0", "P": ["2", "2"],
                "members": [{"rank": 1, "degree": "0", "hilb": ["1", "1"], "alpha": "1"}]},
            "profile": {"t": 1, "tuple_len": 2, "tuples": [[1, 2], [2, 2]]}
        });
        let p: DispoPayload = serde_json::from_value(one.clone()).unwrap();
        assert!(p.is_single());
        assert_eq!(p.cases().unwrap().len(), 1);
        let many: DispoPayload =
            serde_json::from_value(json!({"cases": [one.clone(), one], "delta": ["1"]})).unwrap();
        assert!(!many.is_single());
        assert_eq!(many.cases().unwrap().len(), 2);
        assert_eq!(many.delta().unwrap(), Some(Poly::constant(rat(1, 1))));
    }
}
