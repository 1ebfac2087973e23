//! JSON documents for families and toric presentations.
//!
//! Element coordinates on input are taken in the generators of the group
//! literal as written; output always uses the canonical literal, whose
//! generator coordinates are the canonical coordinates (torsion first, then
//! free).

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::abgroup::{Elem, FgAb, IntMatrix};
use crate::error::{Error, Result};
use crate::families::{Domain, GFamily};
use crate::toricdiv::{DivisorialPresentation, ToricPresentation, WeilDivisor};
use crate::units::{Unit, UnitGroup};

/// Current version of every document emitted by the command line tool.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleEntry {
    pub g: Vec<i64>,
    pub h: Vec<i64>,
    pub value: Vec<i64>,
}

/// `{ "grading", "units", "window"?, "cocycle": [{g, h, value}] }`; pairs
/// not listed are 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub grading: String,
    pub units: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<u64>,
    #[serde(default)]
    pub cocycle: Vec<CocycleEntry>,
}

impl FamilyDoc {
    /// Entries different from 1, in domain order.
    pub fn from_family(f: &GFamily) -> Result<Self> {
        let cocycle = f
            .nontrivial_entries()
            .into_iter()
            .map(|(g, h, v)| {
                Ok(CocycleEntry {
                    g: elem_to_json(&g)?,
                    h: elem_to_json(&h)?,
                    value: elem_to_json(v.elem())?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(FamilyDoc {
            grading: f.grading().literal(),
            units: f.units().literal(),
            window: f.domain().window_radius(),
            cocycle,
        })
    }

    pub fn grading(&self) -> Result<FgAb> {
        self.grading.parse()
    }

    pub fn unit_group(&self) -> Result<UnitGroup> {
        self.units.parse()
    }

    pub fn to_family(&self) -> Result<GFamily> {
        let grading = self.grading()?;
        let units = self.unit_group()?;
        let domain = match self.window {
            Some(r) => Domain::window(&grading, r)?,
            None => Domain::full(&grading)?,
        };
        let entries = self
            .cocycle
            .iter()
            .map(|e| {
                Ok((
                    elem_from_json(&grading, &e.g)?,
                    elem_from_json(&grading, &e.h)?,
                    unit_from_json(&units, &e.value)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        GFamily::from_entries(domain, &units, &entries)
    }
}

/// `{ "rays": [[...]], "complete": bool, "lift"?: [[...]] }`.
///
/// `lift` lists one Weil divisor per generator of `K₀`; without it `K₀` is
/// the free group on the rays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricDoc {
    pub rays: Vec<Vec<i64>>,
    #[serde(default = "default_true")]
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<Vec<Vec<i64>>>,
}

fn default_true() -> bool {
    true
}

impl ToricDoc {
    pub fn presentation(&self) -> Result<ToricPresentation> {
        let n = self.rays.first().map_or(0, Vec::len);
        ToricPresentation::new(matrix_from_rows(&self.rays, n)?, self.complete)
    }

    pub fn divisorial(&self) -> Result<DivisorialPresentation> {
        let t = self.presentation()?;
        match &self.lift {
            None => DivisorialPresentation::standard(t),
            Some(rows) => DivisorialPresentation::new(
                t,
                rows.iter().map(|r| WeilDivisor(to_big(r))).collect(),
            ),
        }
    }
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn big_to_json(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::TooLarge(format!("{x} does not fit in a JSON integer")))
        })
        .collect()
}

pub fn elem_to_json(e: &Elem) -> Result<Vec<i64>> {
    big_to_json(e.coords())
}

/// An element from coordinates in the group's generators.
pub fn elem_from_json(g: &FgAb, v: &[i64]) -> Result<Elem> {
    g.from_generators(&to_big(v))
}

pub fn unit_from_json(u: &UnitGroup, v: &[i64]) -> Result<Unit> {
    elem_from_json(u.lattice(), v).map(Unit::from_elem)
}

/// A matrix from rows, all of length `cols`.
pub fn matrix_from_rows(rows: &[Vec<i64>], cols: usize) -> Result<IntMatrix> {
    if let Some(r) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::Dimension(format!(
            "matrix row {r:?} does not have {cols} entries"
        )));
    }
    IntMatrix::from_rows(rows.iter().map(|r| to_big(r)).collect(), cols)
}

pub fn matrix_to_json(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    m.to_rows().iter().map(|r| big_to_json(r)).collect()
}
