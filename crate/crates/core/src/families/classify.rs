use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Domain, GFamily};
use crate::abgroup::{smith_normal_form, AbHom, Elem, FgAb, IntMatrix, SmithForm};
use crate::error::{Error, Result};
use crate::units::{ext1_units, Unit, UnitGroup};

/// Upper bound on `|Ext¹|·|G|²`, the number of table entries produced.
pub const MAX_CLASSIFY_ENTRIES: usize = 4_000_000;

/// Largest torsion subgroup `classify` accepts.
pub const MAX_CLASSIFY_ORDER: usize = 256;

/// Radius of the window used for representatives on infinite gradings.
pub const CLASSIFY_WINDOW: u64 = 1;

/// The kernel `K` of `Z^(G∖0) → G`, spanned by `e(g,h) = e_g + e_h − e_{g+h}`.
///
/// A symmetric normalized cocycle is the same thing as a homomorphism
/// `K → U` evaluated on these generators.
#[derive(Clone, Debug)]
pub struct RelationLattice {
    domain: Arc<Domain>,
    kernel: IntMatrix,
    snf: SmithForm,
    divisors: Vec<BigInt>,
}

impl RelationLattice {
    pub fn new(grading: &FgAb) -> Result<Self> {
        let domain = Domain::full(grading)?;
        let nonzero = Self::nonzero(&domain);
        let cols: Vec<Vec<BigInt>> = nonzero
            .iter()
            .map(|&i| grading.to_generators(&domain.elements()[i]))
            .collect();
        let m = IntMatrix::from_columns(&cols, grading.num_generators())?;
        let proj = AbHom::new(FgAb::free(nonzero.len()), grading.clone(), m)?;
        let kernel = proj.kernel_generators();
        let snf = smith_normal_form(&kernel);
        let divisors = snf.diagonal();
        Ok(RelationLattice {
            domain,
            kernel,
            snf,
            divisors,
        })
    }

    fn nonzero(domain: &Domain) -> Vec<usize> {
        (0..domain.len()).filter(|&i| i != domain.zero_index()).collect()
    }

    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }

    /// Rank of the ambient free group, `|G| − 1`.
    pub fn ambient_rank(&self) -> usize {
        self.domain.len() - 1
    }

    /// Basis of `K` as columns.
    pub fn kernel_basis(&self) -> &IntMatrix {
        &self.kernel
    }

    /// Coordinate of a domain index in `Z^(G∖0)`, or `None` for zero.
    fn slot(&self, i: usize) -> Option<usize> {
        let z = self.domain.zero_index();
        (i != z).then(|| if i < z { i } else { i - 1 })
    }

    /// `e(g,h)` for domain indices `i`, `j`.
    pub fn relation_vector(&self, i: usize, j: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.ambient_rank()];
        let s = self.domain.sum_index(i, j).expect("full domain is closed");
        for (idx, sign) in [(i, 1), (j, 1), (s, -1)] {
            if let Some(k) = self.slot(idx) {
                v[k] += sign;
            }
        }
        v
    }

    /// Whether the `e(g,h)` span exactly the kernel basis lattice.
    pub fn relations_span_kernel(&self) -> bool {
        let n = self.domain.len();
        let cols: Vec<Vec<BigInt>> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.relation_vector(i, j))
            .collect();
        let Ok(m) = IntMatrix::from_columns(&cols, self.ambient_rank()) else {
            return false;
        };
        crate::abgroup::snf::same_lattice(&m, &self.kernel)
    }

    /// Elementary divisors `d_i` of `K ⊂ Z^(G∖0)`; `Hom(K, U)` modulo
    /// restrictions is `⊕ U/d_i U`.
    pub fn elementary_divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// Coordinates `c` with `e(g,h) = Σ c_i d_i f_i`, where `f_i` are the
    /// columns of `u⁻¹` from the Smith form.
    fn adapted_coordinates(&self, i: usize, j: usize) -> Vec<BigInt> {
        let v = self.snf.u.mul_vec(&self.relation_vector(i, j));
        v.iter()
            .zip(&self.divisors)
            .map(|(x, d)| {
                let (q, r) = x.div_rem(d);
                debug_assert!(r.is_zero());
                q
            })
            .collect()
    }
}

/// Result of [`classify`].
#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub grading: FgAb,
    pub units: UnitGroup,
    pub ext1: FgAb,
    /// One family per isomorphism class, sorted by table.
    pub representatives: Vec<GFamily>,
}

impl ClassificationReport {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// Lists pairwise non-isomorphic families, one per element of `Ext¹(G, U)`.
///
/// Finite gradings are tabulated fully. For `G = T ⊕ Z^r` with `r > 0` the
/// classes are those of the torsion part `T`, pulled back along the
/// projection and tabulated on a window of radius [`CLASSIFY_WINDOW`].
pub fn classify(grading: &FgAb, units: &UnitGroup) -> Result<ClassificationReport> {
    let ext = ext1_units(grading, units);
    if grading.is_finite() {
        let representatives = classify_finite(grading, units, &ext)?;
        return Ok(ClassificationReport {
            grading: grading.clone(),
            units: units.clone(),
            ext1: ext,
            representatives,
        });
    }

    let torsion = FgAb::from_invariants(0, grading.invariant_factors())?;
    let finite_reps = classify_finite(&torsion, units, &ext)?;
    let domain = Domain::window(grading, CLASSIFY_WINDOW)?;
    let t = grading.torsion_len();
    let project = |e: &Elem| torsion.from_generators(&e.coords()[..t]);
    let mut representatives = finite_reps
        .iter()
        .map(|rep| {
            GFamily::from_fn(domain.clone(), units, |a, b| {
                rep.value(&project(a)?, &project(b)?).cloned()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    representatives.sort_by(|a, b| a.table.cmp(&b.table));
    Ok(ClassificationReport {
        grading: grading.clone(),
        units: units.clone(),
        ext1: ext,
        representatives,
    })
}

fn classify_finite(grading: &FgAb, units: &UnitGroup, ext: &FgAb) -> Result<Vec<GFamily>> {
    let order = grading
        .small_order()
        .filter(|&o| o <= MAX_CLASSIFY_ORDER)
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "grading {} exceeds the classification limit of {MAX_CLASSIFY_ORDER} elements",
                grading.literal()
            ))
        })?;
    let count = ext.small_order().ok_or_else(|| {
        Error::Invariant(format!("Ext1 of finite {} is infinite", grading.literal()))
    })?;
    if count.saturating_mul(order * order) > MAX_CLASSIFY_ENTRIES {
        return Err(Error::TooLarge(format!(
            "{count} classes on {order} elements exceed {MAX_CLASSIFY_ENTRIES} table entries"
        )));
    }

    let rl = RelationLattice::new(grading)?;
    let lattice = units.lattice();
    let divisors = rl.elementary_divisors();
    if divisors.len() != rl.ambient_rank() {
        return Err(Error::Invariant("relation lattice is not of full rank".into()));
    }
    let active: Vec<usize> = (0..divisors.len()).filter(|&i| !divisors[i].is_one()).collect();

    // Coset representatives of U/d·U for each nontrivial divisor.
    let mut cosets: Vec<Vec<Elem>> = Vec::with_capacity(active.len());
    for &i in &active {
        let (q, _) = lattice.mod_multiples(&divisors[i])?;
        let reps = q
            .elements()?
            .iter()
            .map(|e| lattice.from_generators(&q.to_generators(e)))
            .collect::<Result<Vec<_>>>()?;
        cosets.push(reps);
    }
    let total: usize = cosets.iter().map(Vec::len).product();
    if total != count {
        return Err(Error::Invariant(format!(
            "relation lattice gives {total} classes but Ext1 has order {count}"
        )));
    }

    let n = rl.domain.len();
    let coefficients: Vec<Vec<BigInt>> = (0..n * n)
        .map(|p| {
            let c = rl.adapted_coordinates(p / n, p % n);
            active.iter().map(|&i| c[i].clone()).collect()
        })
        .collect();

    let mut reps = Vec::with_capacity(total);
    let mut choice = vec![0usize; active.len()];
    for _ in 0..total {
        let values: Vec<&Elem> = choice.iter().zip(&cosets).map(|(&k, c)| &c[k]).collect();
        let table = coefficients
            .iter()
            .map(|c| {
                let e = lattice.sum(
                    c.iter()
                        .zip(&values)
                        .map(|(k, v)| lattice.scale(k, v))
                        .collect::<Vec<_>>()
                        .iter(),
                );
                Unit::from_elem(e)
            })
            .collect();
        reps.push(GFamily {
            domain: rl.domain.clone(),
            units: units.clone(),
            table,
        });
        for k in (0..choice.len()).rev() {
            choice[k] += 1;
            if choice[k] < cosets[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
    reps.sort_by(|a, b| a.table.cmp(&b.table));
    Ok(reps)
}
