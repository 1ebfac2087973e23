use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Domain, GFamily};
use crate::abgroup::{Elem, IntMatrix, LinearSystem};
use crate::error::{Error, Result};
use crate::units::{Unit, UnitGroup};

/// A change of trivializations `μ` between two families.
///
/// The second family equals the first twisted by `μ`:
/// `ξ'(g,h) = ξ(g,h)·μ(g)·μ(h)·μ(g+h)⁻¹`. Unlisted elements other than
/// zero have no value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyIso {
    mu: BTreeMap<Elem, Unit>,
}

impl FamilyIso {
    pub fn new(mu: BTreeMap<Elem, Unit>) -> Self {
        FamilyIso { mu }
    }

    pub fn mu(&self) -> &BTreeMap<Elem, Unit> {
        &self.mu
    }

    /// `μ(g)`; the zero element maps to 1 unless listed.
    pub fn value(&self, units: &UnitGroup, g: &Elem) -> Result<Unit> {
        match self.mu.get(g) {
            Some(v) => Ok(v.clone()),
            None if g.coords().iter().all(|c| c.is_zero()) => Ok(units.one()),
            None => Err(Error::Precondition(format!(
                "no trivialization change given at {g}"
            ))),
        }
    }

    /// Whether twisting `from` by this map gives `to`.
    pub fn verify(&self, from: &GFamily, to: &GFamily) -> bool {
        match from.twist(self) {
            Ok(t) => &t == to,
            Err(_) => false,
        }
    }
}

/// The coboundary map on a domain: unknowns `μ(g)` for nonzero `g` in the
/// domain or in a sum of two domain elements, one equation per unordered
/// pair of nonzero domain elements.
pub(crate) struct CoboundarySystem {
    unknowns: Vec<Elem>,
    pairs: Vec<(usize, usize)>,
    system: LinearSystem,
}

impl CoboundarySystem {
    fn new(domain: &Domain) -> Self {
        let g = domain.grading();
        let z = domain.zero_index();
        let n = domain.len();
        let mut unknowns: Vec<Elem> = Vec::new();
        let mut position: HashMap<Elem, usize> = HashMap::new();
        let mut intern = |e: Elem, unknowns: &mut Vec<Elem>| -> Option<usize> {
            if g.is_zero(&e) {
                return None;
            }
            Some(*position.entry(e.clone()).or_insert_with(|| {
                unknowns.push(e);
                unknowns.len() - 1
            }))
        };
        let mut pairs = Vec::new();
        let mut rows: Vec<[Option<usize>; 3]> = Vec::new();
        for i in (0..n).filter(|&i| i != z) {
            for j in (i..n).filter(|&j| j != z) {
                let a = intern(domain.elements()[i].clone(), &mut unknowns);
                let b = intern(domain.elements()[j].clone(), &mut unknowns);
                let s = intern(
                    g.add(&domain.elements()[i], &domain.elements()[j]),
                    &mut unknowns,
                );
                pairs.push((i, j));
                rows.push([a, b, s]);
            }
        }
        let mut m = IntMatrix::zeros(rows.len(), unknowns.len());
        for (r, [a, b, s]) in rows.into_iter().enumerate() {
            for (idx, sign) in [(a, 1), (b, 1), (s, -1)] {
                if let Some(c) = idx {
                    m[(r, c)] += sign;
                }
            }
        }
        CoboundarySystem {
            unknowns,
            pairs,
            system: LinearSystem::new(&m),
        }
    }
}

fn coboundary_system(domain: &Domain) -> &CoboundarySystem {
    domain.coboundary.get_or_init(|| CoboundarySystem::new(domain))
}

/// Finds `μ` with `g = f·δμ` when one exists.
///
/// Each unit coordinate gives an independent linear system: over `Z` for free
/// coordinates and modulo `n` for a `Z/n` coordinate. The divisible summand
/// never obstructs and is left at 1.
pub fn find_isomorphism(f: &GFamily, g: &GFamily) -> Result<Option<FamilyIso>> {
    f.check_compatible(g)?;
    let domain = f.domain();
    let units = f.units();
    let lattice = units.lattice();
    let n = domain.len();
    let z = domain.zero_index();

    let diff = |i: usize, j: usize| units.div(g.value_at(i, j), f.value_at(i, j));
    for i in 0..n {
        if !units.is_one(&diff(i, z)) || !units.is_one(&diff(z, i)) {
            return Ok(None);
        }
        for j in i + 1..n {
            if diff(i, j) != diff(j, i) {
                return Ok(None);
            }
        }
    }

    let cs = coboundary_system(domain);
    let torsion = lattice.invariant_factors();
    let coord_count = lattice.rank_of_coords();
    let mut solution: Vec<Vec<BigInt>> = vec![Vec::new(); coord_count];
    for (c, slot) in solution.iter_mut().enumerate() {
        let rhs: Vec<BigInt> = cs
            .pairs
            .iter()
            .map(|&(i, j)| diff(i, j).coords()[c].clone())
            .collect();
        let sol = if c < torsion.len() {
            cs.system.solve_mod(&rhs, &torsion[c])
        } else {
            cs.system.solve(&rhs)
        };
        match sol {
            Some(s) => *slot = s,
            None => return Ok(None),
        }
    }

    let mut mu = BTreeMap::new();
    mu.insert(domain.grading().zero(), units.one());
    for (k, e) in cs.unknowns.iter().enumerate() {
        let coords = solution.iter().map(|s| s[k].clone()).collect();
        mu.insert(e.clone(), units.unit(coords)?);
    }
    let iso = FamilyIso { mu };
    if !iso.verify(f, g) {
        return Err(Error::Invariant(
            "coboundary solution does not reproduce the target family".into(),
        ));
    }
    Ok(Some(iso))
}
