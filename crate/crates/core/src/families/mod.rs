//! Families of trivialized line bundles graded by an abelian group `G`,
//! encoded by their structure constants: a normalized symmetric 2-cocycle
//! `ξ: G × G → U`.
//!
//! Tables live on a [`Domain`], which is either all of a finite grading group
//! or a finite window of an infinite one. Unit values are written
//! multiplicatively in the API and stored additively in the unit lattice.

mod classify;
mod cox;
mod extend;
mod iso;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::abgroup::{AbHom, Elem, FgAb};
use crate::error::{Error, Result};
use crate::units::{Unit, UnitGroup};

pub use classify::{classify, ClassificationReport, RelationLattice, MAX_CLASSIFY_ENTRIES};
pub use cox::{cox_ring_table, is_torsor_algebra, CoxRingTable, RawStructureTable};
pub use extend::{
    extend_family, induce_quotient_family, induce_quotient_family_with_section,
    trivialization_on, SectionChoice,
};
pub use iso::{find_isomorphism, FamilyIso};

/// Largest domain a cocycle table is stored on.
pub const MAX_DOMAIN: usize = 1024;

/// The finite set of grading elements a table is defined on.
pub struct Domain {
    grading: FgAb,
    window: Option<u64>,
    elements: Vec<Elem>,
    index: HashMap<Elem, usize>,
    zero: usize,
    sums: Vec<Option<usize>>,
    coboundary: OnceLock<iso::CoboundarySystem>,
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Domain")
            .field("grading", &self.grading.literal())
            .field("window", &self.window)
            .field("len", &self.elements.len())
            .finish()
    }
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        self.grading == other.grading && self.window == other.window
    }
}

impl Domain {
    /// All elements of a finite grading group.
    pub fn full(grading: &FgAb) -> Result<Arc<Domain>> {
        if !grading.is_finite() {
            return Err(Error::Precondition(format!(
                "grading {} is infinite; supply a window",
                grading.literal()
            )));
        }
        let elements = grading.elements()?;
        Domain::build(grading, None, elements)
    }

    /// Elements with free coordinates in `[-radius, radius]`.
    pub fn window(grading: &FgAb, radius: u64) -> Result<Arc<Domain>> {
        if grading.is_finite() {
            return Domain::full(grading);
        }
        let elements = grading.window(radius)?;
        Domain::build(grading, Some(radius), elements)
    }

    /// The full group when finite, otherwise a window of the given radius.
    pub fn for_grading(grading: &FgAb, radius: u64) -> Result<Arc<Domain>> {
        if grading.is_finite() {
            Domain::full(grading)
        } else {
            Domain::window(grading, radius)
        }
    }

    fn build(grading: &FgAb, window: Option<u64>, elements: Vec<Elem>) -> Result<Arc<Domain>> {
        let n = elements.len();
        if n > MAX_DOMAIN {
            return Err(Error::TooLarge(format!(
                "domain of {n} elements exceeds the table limit {MAX_DOMAIN}"
            )));
        }
        let index: HashMap<Elem, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let zero = index[&grading.zero()];
        let mut sums = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                sums.push(index.get(&grading.add(a, b)).copied());
            }
        }
        Ok(Arc::new(Domain {
            grading: grading.clone(),
            window,
            elements,
            index,
            zero,
            sums,
            coboundary: OnceLock::new(),
        }))
    }

    pub fn grading(&self) -> &FgAb {
        &self.grading
    }

    pub fn window_radius(&self) -> Option<u64> {
        self.window
    }

    pub fn is_full(&self) -> bool {
        self.window.is_none()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    /// Index of `elements[i] + elements[j]` when it lies in the domain.
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        self.sums[i * self.elements.len() + j]
    }
}

/// A `G`-family of trivialized line bundles, as a table of structure
/// constants `ξ(g, h)`.
///
/// Tables are stored as given; [`validate_family`] reports where the unit,
/// commutativity and associativity constraints fail.
#[derive(Clone, Debug)]
pub struct GFamily {
    domain: Arc<Domain>,
    units: UnitGroup,
    table: Vec<Unit>,
}

impl PartialEq for GFamily {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.units == other.units && self.table == other.table
    }
}

impl GFamily {
    pub fn trivial(grading: &FgAb, units: &UnitGroup) -> Result<Self> {
        Ok(GFamily::trivial_on(Domain::full(grading)?, units))
    }

    pub fn trivial_on(domain: Arc<Domain>, units: &UnitGroup) -> Self {
        let n = domain.len();
        GFamily {
            domain,
            units: units.clone(),
            table: vec![units.one(); n * n],
        }
    }

    /// Fills the table from a function of the two grading elements.
    pub fn from_fn(
        domain: Arc<Domain>,
        units: &UnitGroup,
        mut f: impl FnMut(&Elem, &Elem) -> Result<Unit>,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(domain.len() * domain.len());
        for a in domain.elements() {
            for b in domain.elements() {
                table.push(f(a, b)?);
            }
        }
        Ok(GFamily {
            domain,
            units: units.clone(),
            table,
        })
    }

    /// Builds a table from explicit entries; unspecified pairs are 1, and an
    /// entry for `(g, h)` also sets `(h, g)` unless that pair is given too.
    pub fn from_entries(
        domain: Arc<Domain>,
        units: &UnitGroup,
        entries: &[(Elem, Elem, Unit)],
    ) -> Result<Self> {
        let mut fam = GFamily::trivial_on(domain, units);
        let mut explicit = std::collections::HashSet::new();
        let n = fam.domain.len();
        let locate = |fam: &GFamily, e: &Elem| {
            fam.domain.index_of(e).ok_or_else(|| {
                Error::Precondition(format!("element {e} is outside the family's domain"))
            })
        };
        for (g, h, v) in entries {
            let i = locate(&fam, g)?;
            let j = locate(&fam, h)?;
            if !fam.units.lattice().contains(v.elem()) {
                return Err(Error::Dimension(format!("value {v} is not a reduced unit")));
            }
            fam.table[i * n + j] = v.clone();
            explicit.insert((i, j));
        }
        for (g, h, v) in entries {
            let i = locate(&fam, g)?;
            let j = locate(&fam, h)?;
            if !explicit.contains(&(j, i)) {
                fam.table[j * n + i] = v.clone();
            }
        }
        Ok(fam)
    }

    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }

    pub fn grading(&self) -> &FgAb {
        self.domain.grading()
    }

    pub fn units(&self) -> &UnitGroup {
        &self.units
    }

    pub fn value_at(&self, i: usize, j: usize) -> &Unit {
        &self.table[i * self.domain.len() + j]
    }

    /// `ξ(g, h)`, or an error when either element is outside the domain.
    pub fn value(&self, g: &Elem, h: &Elem) -> Result<&Unit> {
        let i = self.domain.index_of(g);
        let j = self.domain.index_of(h);
        match (i, j) {
            (Some(i), Some(j)) => Ok(self.value_at(i, j)),
            _ => Err(Error::Precondition(format!(
                "pair ({g}, {h}) is outside the family's domain"
            ))),
        }
    }

    pub fn table(&self) -> &[Unit] {
        &self.table
    }

    /// Entries different from 1, in domain order.
    pub fn nontrivial_entries(&self) -> Vec<(Elem, Elem, Unit)> {
        let n = self.domain.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = self.value_at(i, j);
                if !self.units.is_one(v) {
                    out.push((
                        self.domain.elements[i].clone(),
                        self.domain.elements[j].clone(),
                        v.clone(),
                    ));
                }
            }
        }
        out
    }

    pub fn is_trivial_table(&self) -> bool {
        self.table.iter().all(|v| self.units.is_one(v))
    }

    pub fn is_valid(&self) -> bool {
        validate_family(self).is_empty()
    }

    fn check_compatible(&self, other: &GFamily) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::Precondition(format!(
                "families are graded differently ({} vs {})",
                self.grading(),
                other.grading()
            )));
        }
        if self.units != other.units {
            return Err(Error::Precondition(format!(
                "families take values in different unit groups ({} vs {})",
                self.units, other.units
            )));
        }
        Ok(())
    }

    /// Applies the change of trivializations `μ`:
    /// `ξ'(g,h) = ξ(g,h)·μ(g)·μ(h)·μ(g+h)⁻¹`.
    pub fn twist(&self, mu: &FamilyIso) -> Result<GFamily> {
        let grading = self.grading().clone();
        let units = self.units.clone();
        GFamily::from_fn(self.domain.clone(), &self.units, |g, h| {
            let s = grading.add(g, h);
            let factor = units.div(
                &units.mul(&mu.value(&units, g)?, &mu.value(&units, h)?),
                &mu.value(&units, &s)?,
            );
            Ok(units.mul(self.value(g, h)?, &factor))
        })
    }
}

/// A failed structure-constant identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `ξ(g, 0) ≠ 1`
    Normalization { g: Elem },
    /// `ξ(g, h) ≠ ξ(h, g)`
    Symmetry { g: Elem, h: Elem },
    /// `ξ(g,h)·ξ(g+h,t) ≠ ξ(h,t)·ξ(g,h+t)`
    Cocycle { g: Elem, h: Elem, t: Elem },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Normalization { g } => write!(f, "normalization fails at ({g}, 0)"),
            Violation::Symmetry { g, h } => write!(f, "symmetry fails at ({g}, {h})"),
            Violation::Cocycle { g, h, t } => write!(f, "cocycle identity fails at ({g}, {h}, {t})"),
        }
    }
}

/// Lists every violated identity on the family's domain.
///
/// The associativity identity is only checked on triples of nonzero elements;
/// with a zero entry it is a consequence of normalization.
pub fn validate_family(f: &GFamily) -> Vec<Violation> {
    let d = &f.domain;
    let n = d.len();
    let z = d.zero;
    let u = &f.units;
    let mut out = Vec::new();
    for i in 0..n {
        if !u.is_one(f.value_at(i, z)) {
            out.push(Violation::Normalization {
                g: d.elements[i].clone(),
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if f.value_at(i, j) != f.value_at(j, i) {
                out.push(Violation::Symmetry {
                    g: d.elements[i].clone(),
                    h: d.elements[j].clone(),
                });
            }
        }
    }
    for i in (0..n).filter(|&i| i != z) {
        for j in (0..n).filter(|&j| j != z) {
            let Some(ij) = d.sum_index(i, j) else { continue };
            for k in (0..n).filter(|&k| k != z) {
                let (Some(jk), Some(_)) = (d.sum_index(j, k), d.sum_index(ij, k)) else {
                    continue;
                };
                let lhs = u.mul(f.value_at(i, j), f.value_at(ij, k));
                let rhs = u.mul(f.value_at(j, k), f.value_at(i, jk));
                if lhs != rhs {
                    out.push(Violation::Cocycle {
                        g: d.elements[i].clone(),
                        h: d.elements[j].clone(),
                        t: d.elements[k].clone(),
                    });
                }
            }
        }
    }
    out
}

/// Pointwise product of structure constants.
pub fn tensor(f: &GFamily, g: &GFamily) -> Result<GFamily> {
    f.check_compatible(g)?;
    let table = f
        .table
        .iter()
        .zip(&g.table)
        .map(|(a, b)| f.units.mul(a, b))
        .collect();
    Ok(GFamily {
        domain: f.domain.clone(),
        units: f.units.clone(),
        table,
    })
}

/// Pointwise inverse of structure constants.
pub fn inverse(f: &GFamily) -> GFamily {
    GFamily {
        domain: f.domain.clone(),
        units: f.units.clone(),
        table: f.table.iter().map(|a| f.units.inv(a)).collect(),
    }
}

/// Pulls a family back along `alpha: H → G`: `ξ_H(h,h') = ξ(α(h), α(h'))`.
///
/// `H` must be finite; see [`restrict_family_on_window`] otherwise.
pub fn restrict_family(f: &GFamily, alpha: &AbHom) -> Result<GFamily> {
    restrict_onto(f, alpha, Domain::full(alpha.source())?)
}

/// As [`restrict_family`], on a window of an infinite source group.
pub fn restrict_family_on_window(f: &GFamily, alpha: &AbHom, radius: u64) -> Result<GFamily> {
    restrict_onto(f, alpha, Domain::window(alpha.source(), radius)?)
}

fn restrict_onto(f: &GFamily, alpha: &AbHom, domain: Arc<Domain>) -> Result<GFamily> {
    if alpha.target() != f.grading() {
        return Err(Error::Precondition(
            "map does not land in the family's grading group".into(),
        ));
    }
    let images: BTreeMap<&Elem, Elem> = domain
        .elements()
        .iter()
        .map(|h| (h, alpha.apply(h)))
        .collect();
    GFamily::from_fn(domain.clone(), f.units(), |a, b| {
        f.value(&images[a], &images[b]).cloned()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::IntMatrix;

    fn z2_family(units: &UnitGroup, value: &[i64]) -> GFamily {
        let g = FgAb::cyclic(2);
        let d = Domain::full(&g).unwrap();
        let one = g.elem(&[1]).unwrap();
        GFamily::from_entries(d, units, &[(one.clone(), one, units.unit_i64(value).unwrap())])
            .unwrap()
    }

    #[test]
    fn trivial_family_is_valid() {
        let f = GFamily::trivial(&FgAb::finite(&[2, 2]), &"0;3".parse().unwrap()).unwrap();
        assert!(validate_family(&f).is_empty());
    }

    #[test]
    fn z2_square_may_be_any_unit() {
        let u: UnitGroup = "0;5".parse().unwrap();
        assert!(validate_family(&z2_family(&u, &[3])).is_empty());
    }

    #[test]
    fn normalization_violation_reported() {
        let u: UnitGroup = "0;5".parse().unwrap();
        let g = FgAb::cyclic(2);
        let d = Domain::full(&g).unwrap();
        let f = GFamily::from_entries(
            d,
            &u,
            &[(g.elem(&[1]).unwrap(), g.zero(), u.unit_i64(&[2]).unwrap())],
        )
        .unwrap();
        assert_eq!(
            validate_family(&f),
            vec![Violation::Normalization {
                g: g.elem(&[1]).unwrap()
            }]
        );
    }

    #[test]
    fn asymmetric_table_reported() {
        let u: UnitGroup = "0;5".parse().unwrap();
        let g = FgAb::cyclic(3);
        let d = Domain::full(&g).unwrap();
        let (a, b) = (g.elem(&[1]).unwrap(), g.elem(&[2]).unwrap());
        let f = GFamily::from_entries(
            d,
            &u,
            &[
                (a.clone(), b.clone(), u.unit_i64(&[1]).unwrap()),
                (b.clone(), a.clone(), u.unit_i64(&[2]).unwrap()),
            ],
        )
        .unwrap();
        assert!(validate_family(&f).contains(&Violation::Symmetry { g: a, h: b }));
    }

    #[test]
    fn tensor_and_inverse() {
        let u: UnitGroup = "0;7".parse().unwrap();
        let f = z2_family(&u, &[2]);
        let g = z2_family(&u, &[4]);
        let fg = tensor(&f, &g).unwrap();
        let one = FgAb::cyclic(2).elem(&[1]).unwrap();
        assert_eq!(fg.value(&one, &one).unwrap(), &u.unit_i64(&[6]).unwrap());
        assert!(tensor(&f, &inverse(&f)).unwrap().is_trivial_table());
        let triv = GFamily::trivial(&FgAb::cyclic(2), &u).unwrap();
        assert_eq!(tensor(&triv, &g).unwrap(), g);
        let other_units = z2_family(&"0;5".parse().unwrap(), &[1]);
        assert!(tensor(&f, &other_units).is_err());
    }

    #[test]
    fn restriction_examples() {
        let u: UnitGroup = "0;8".parse().unwrap();
        let g = FgAb::cyclic(4);
        let d = Domain::full(&g).unwrap();
        let two = g.elem(&[2]).unwrap();
        let f = GFamily::from_fn(d, &u, |a, b| {
            let k = a.coords()[0].clone() * b.coords()[0].clone();
            u.unit(vec![k])
        })
        .unwrap();
        let alpha = AbHom::new(FgAb::cyclic(2), g.clone(), IntMatrix::from_i64(&[&[2]])).unwrap();
        let r = restrict_family(&f, &alpha).unwrap();
        let one = FgAb::cyclic(2).elem(&[1]).unwrap();
        assert_eq!(r.value(&one, &one).unwrap(), f.value(&two, &two).unwrap());

        assert_eq!(restrict_family(&f, &AbHom::identity(&g)).unwrap(), f);
        let zero = AbHom::zero(&FgAb::cyclic(3), &g);
        assert!(restrict_family(&f, &zero).unwrap().is_trivial_table());
    }
}
