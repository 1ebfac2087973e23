use std::sync::Arc;

use super::{Domain, GFamily};
use crate::abgroup::Elem;
use crate::error::{Error, Result};
use crate::units::{Unit, UnitGroup};

/// Multiplication table of the rank-one graded algebra `⊕ k·x_g` with
/// `x_g · x_h = ξ(g,h) · x_{g+h}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoxRingTable {
    domain: Arc<Domain>,
    units: UnitGroup,
    products: Vec<Option<(Unit, usize)>>,
}

pub fn cox_ring_table(f: &GFamily) -> CoxRingTable {
    let d = f.domain().clone();
    let n = d.len();
    let products = (0..n * n)
        .map(|p| {
            let (i, j) = (p / n, p % n);
            d.sum_index(i, j).map(|s| (f.value_at(i, j).clone(), s))
        })
        .collect();
    CoxRingTable {
        domain: d,
        units: f.units().clone(),
        products,
    }
}

impl CoxRingTable {
    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }

    /// `x_g · x_h` as `(coefficient, degree)`, or `None` when `g + h` leaves
    /// the domain.
    pub fn product(&self, g: &Elem, h: &Elem) -> Option<(Unit, Elem)> {
        let i = self.domain.index_of(g)?;
        let j = self.domain.index_of(h)?;
        self.product_at(i, j)
            .map(|(c, s)| (c.clone(), self.domain.elements()[s].clone()))
    }

    fn product_at(&self, i: usize, j: usize) -> Option<(&Unit, usize)> {
        self.products[i * self.domain.len() + j]
            .as_ref()
            .map(|(c, s)| (c, *s))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.domain.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.product_at(i, j) == self.product_at(j, i)))
    }

    /// `x_0` is a two-sided identity.
    pub fn is_unital(&self) -> bool {
        let z = self.domain.zero_index();
        (0..self.domain.len()).all(|i| {
            [self.product_at(z, i), self.product_at(i, z)]
                .iter()
                .all(|p| matches!(p, Some((c, s)) if self.units.is_one(c) && *s == i))
        })
    }

    /// `(x_a x_b) x_c = x_a (x_b x_c)` wherever both sides stay in the domain.
    pub fn is_associative(&self) -> bool {
        let n = self.domain.len();
        let u = &self.units;
        for a in 0..n {
            for b in 0..n {
                let Some((c1, ab)) = self.product_at(a, b) else { continue };
                for c in 0..n {
                    let Some((c2, abc)) = self.product_at(ab, c) else { continue };
                    let Some((c3, bc)) = self.product_at(b, c) else { continue };
                    let Some((c4, abc2)) = self.product_at(a, bc) else { continue };
                    if abc != abc2 || u.mul(c1, c2) != u.mul(c3, c4) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Structure constants that may be missing, standing in for maps
/// `R_g ⊗ R_h → R_{g+h}` that are not isomorphisms.
#[derive(Clone, Debug)]
pub struct RawStructureTable {
    domain: Arc<Domain>,
    units: UnitGroup,
    entries: Vec<Option<Unit>>,
}

impl RawStructureTable {
    pub fn from_family(f: &GFamily) -> Self {
        RawStructureTable {
            domain: f.domain().clone(),
            units: f.units().clone(),
            entries: f.table().iter().cloned().map(Some).collect(),
        }
    }

    pub fn set(&mut self, g: &Elem, h: &Elem, value: Option<Unit>) -> Result<()> {
        let n = self.domain.len();
        match (self.domain.index_of(g), self.domain.index_of(h)) {
            (Some(i), Some(j)) => {
                self.entries[i * n + j] = value;
                Ok(())
            }
            _ => Err(Error::Precondition(format!(
                "pair ({g}, {h}) is outside the table's domain"
            ))),
        }
    }
}

/// The torsor criterion on structure constants: every product map is
/// invertible and `ξ(g, 0) = 1`.
pub fn is_torsor_algebra(table: &RawStructureTable) -> bool {
    let units = &table.units;
    let n = table.domain.len();
    let z = table.domain.zero_index();
    table.entries.iter().all(Option::is_some)
        && (0..n).all(|i| {
            table.entries[i * n + z]
                .as_ref()
                .is_some_and(|v| units.is_one(v))
        })
}
