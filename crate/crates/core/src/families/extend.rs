use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{find_isomorphism, restrict_family, restrict_family_on_window, Domain, FamilyIso, GFamily};
use crate::abgroup::{free_resolution, horseshoe, AbHom, Elem, IntMatrix, LinearSystem};
use crate::error::{Error, Result};
use crate::units::Unit;

/// `σ(x)` for `x ∈ Z^n` mapping to `G` through `proj`, where `σ` is the
/// unique function with `σ(e_i) = 0` and `σ(x + e_i) = σ(x) + ξ(p(x), p(e_i))`
/// (unit group written additively).
///
/// On the kernel of `proj` this is the homomorphism `K₁ → U` attached to
/// the family.
fn walk(f: &GFamily, proj: &AbHom, x: &[BigInt]) -> Result<Unit> {
    let g = f.grading();
    let u = f.units();
    let mut cur = g.zero();
    let mut val = u.one();
    for (i, c) in x.iter().enumerate() {
        let step = proj.apply_generators(&unit_vector(x.len(), i))?;
        let mut k = c.abs();
        while !k.is_zero() {
            if c.is_positive() {
                val = u.mul(&val, f.value(&cur, &step)?);
                cur = g.add(&cur, &step);
            } else {
                cur = g.sub(&cur, &step);
                val = u.div(&val, f.value(&cur, &step)?);
            }
            k -= 1;
        }
    }
    Ok(val)
}

fn unit_vector(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::from(1);
    v
}

/// Preimages under an injective map, reusing one factorization.
struct Preimages<'a> {
    alpha: &'a AbHom,
    system: LinearSystem,
}

impl<'a> Preimages<'a> {
    fn new(alpha: &'a AbHom) -> Result<Self> {
        if !alpha.is_injective() {
            return Err(Error::Precondition("subgroup map is not injective".into()));
        }
        let m = alpha.matrix().hstack(alpha.target().relations())?;
        Ok(Preimages {
            alpha,
            system: LinearSystem::new(&m),
        })
    }

    fn of(&self, e: &Elem) -> Option<Elem> {
        let sol = self.system.solve(&self.alpha.target().to_generators(e))?;
        let n = self.alpha.source().num_generators();
        self.alpha.source().from_generators(&sol[..n]).ok()
    }
}

/// Extends a family on `H` along an injective `alpha: H → G` to a family on
/// the finite group `G` whose restriction along `alpha` is exactly `f`.
///
/// The class is built on the horseshoe resolution of `G`: the homomorphism
/// `K₁ → U` of `f` on the `H` block, 1 on the remaining basis vectors.
pub fn extend_family(f: &GFamily, alpha: &AbHom) -> Result<GFamily> {
    let h = alpha.source();
    let g = alpha.target();
    if f.grading() != h {
        return Err(Error::Precondition(
            "family is not graded by the source of the map".into(),
        ));
    }
    if !f.domain().is_full() {
        return Err(Error::Precondition(
            "extension needs the family on all of H".into(),
        ));
    }
    if !alpha.is_injective() {
        return Err(Error::Precondition("subgroup map is not injective".into()));
    }
    let domain = Domain::full(g)?;
    let units = f.units();

    let (q, beta) = alpha.cokernel()?;
    let res_h = free_resolution(h);
    let res_q = free_resolution(&q);
    let lifts = IntMatrix::identity(g.num_generators());
    let res = horseshoe(&res_h, &res_q, alpha, &beta, &lifts)?;
    let basis = res.k1_basis();
    let n_h = res_h.k0_rank();

    let mut phi = Vec::with_capacity(basis.cols());
    for j in 0..basis.cols() {
        if j < res_h.k1_rank() {
            let col = basis.column(j);
            phi.push(walk(f, res_h.projection(), &col[..n_h])?);
        } else {
            phi.push(units.one());
        }
    }

    let solver = LinearSystem::new(basis);
    let lifted: BTreeMap<&Elem, Vec<BigInt>> = domain
        .elements()
        .iter()
        .map(|e| (e, g.to_generators(e)))
        .collect();
    let lattice = units.lattice();
    let raw = GFamily::from_fn(domain.clone(), units, |a, b| {
        let s = g.add(a, b);
        let mut k = vec![BigInt::zero(); n_h];
        k.extend(
            lifted[a]
                .iter()
                .zip(&lifted[b])
                .zip(&lifted[&s])
                .map(|((x, y), z)| x + y - z),
        );
        let z = solver.solve(&k).ok_or_else(|| {
            Error::Invariant("section defect does not lie in K1".into())
        })?;
        let terms: Vec<Elem> = z
            .iter()
            .zip(&phi)
            .map(|(c, p)| lattice.scale(c, p.elem()))
            .collect();
        Ok(Unit::from_elem(lattice.sum(terms.iter())))
    })?;

    // Twist on the image of H so the restriction is f itself.
    let restricted = restrict_family(&raw, alpha)?;
    let iso = find_isomorphism(&restricted, f)?.ok_or_else(|| {
        Error::Invariant("extension does not restrict to the original class".into())
    })?;
    let mut mu: BTreeMap<Elem, Unit> =
        domain.elements().iter().map(|e| (e.clone(), units.one())).collect();
    for x in h.elements()? {
        mu.insert(alpha.apply(&x), iso.value(units, &x)?);
    }
    let out = raw.twist(&FamilyIso::new(mu))?;
    if restrict_family(&out, alpha)? != *f {
        return Err(Error::Invariant("twisted extension does not restrict to f".into()));
    }
    Ok(out)
}

/// How representatives of `G/H` are lifted to `G`.
#[derive(Clone, Debug, Default)]
pub enum SectionChoice {
    /// The smallest lift in the family's domain, ordering each coordinate
    /// as `0, 1, 2, …, −1, −2, …` and comparing lexicographically.
    #[default]
    Canonical,
    /// An explicit lift for every element of `G/H`; zero must lift to zero.
    Explicit(BTreeMap<Elem, Elem>),
}

fn section_key(e: &Elem) -> Vec<(bool, BigInt)> {
    e.coords().iter().map(|c| (c.is_negative(), c.abs())).collect()
}

/// A trivialization of `f` along `alpha`, i.e. `t: H → U` with
/// `ξ(α(h), α(h')) = t(h)·t(h')·t(h+h')⁻¹`, if one exists.
///
/// For infinite `H` the values are found on a window of the given radius.
pub fn trivialization_on(
    f: &GFamily,
    alpha: &AbHom,
    radius: u64,
) -> Result<Option<BTreeMap<Elem, Unit>>> {
    let restricted = if alpha.source().is_finite() {
        restrict_family(f, alpha)?
    } else {
        restrict_family_on_window(f, alpha, radius)?
    };
    let trivial = GFamily::trivial_on(restricted.domain().clone(), f.units());
    Ok(find_isomorphism(&trivial, &restricted)?.map(|iso| iso.mu().clone()))
}

/// The `G/H`-family obtained from `f` and a trivialization over `H`, using
/// the canonical section.
pub fn induce_quotient_family(
    f: &GFamily,
    alpha: &AbHom,
    triv: &BTreeMap<Elem, Unit>,
) -> Result<GFamily> {
    induce_quotient_family_with_section(f, alpha, triv, &SectionChoice::Canonical)
}

/// As [`induce_quotient_family`] with a chosen section `s`:
/// `ξ̄(u,v) = ξ(s(u),s(v))·t(h)·ξ(s(u+v), α(h))⁻¹` with
/// `α(h) = s(u) + s(v) − s(u+v)`.
pub fn induce_quotient_family_with_section(
    f: &GFamily,
    alpha: &AbHom,
    triv: &BTreeMap<Elem, Unit>,
    section: &SectionChoice,
) -> Result<GFamily> {
    let g = f.grading();
    let h = alpha.source();
    if alpha.target() != g {
        return Err(Error::Precondition(
            "subgroup map does not land in the family's grading".into(),
        ));
    }
    let units = f.units();
    let pre = Preimages::new(alpha)?;
    check_trivialization(f, alpha, triv)?;

    let (q, beta) = alpha.cokernel()?;
    if !q.is_finite() {
        return Err(Error::Precondition(format!(
            "quotient {} is infinite",
            q.literal()
        )));
    }
    let q_domain = Domain::full(&q)?;

    let lift: BTreeMap<Elem, Elem> = match section {
        SectionChoice::Canonical => {
            let mut best: BTreeMap<Elem, Elem> = BTreeMap::new();
            for e in f.domain().elements() {
                let image = beta.apply(e);
                let better = best
                    .get(&image)
                    .is_none_or(|cur| section_key(e) < section_key(cur));
                if better {
                    best.insert(image, e.clone());
                }
            }
            best
        }
        SectionChoice::Explicit(map) => {
            for (u, s) in map {
                if beta.apply(s) != *u {
                    return Err(Error::Precondition(format!(
                        "section sends {u} to {s}, which lies over another class"
                    )));
                }
            }
            map.clone()
        }
    };
    for u in q_domain.elements() {
        if !lift.contains_key(u) {
            return Err(Error::Precondition(format!(
                "no lift of quotient element {u} in the family's domain"
            )));
        }
    }
    if !g.is_zero(&lift[&q.zero()]) {
        return Err(Error::Precondition("section must send zero to zero".into()));
    }

    GFamily::from_fn(q_domain.clone(), units, |u, v| {
        let (a, b) = (&lift[u], &lift[v]);
        let c = &lift[&q.add(u, v)];
        let h_g = g.sub(&g.add(a, b), c);
        let hh = pre
            .of(&h_g)
            .ok_or_else(|| Error::Invariant("section defect is not in the subgroup".into()))?;
        let t = triv.get(&hh).ok_or_else(|| {
            Error::Precondition(format!("trivialization has no value at {hh} of {h}"))
        })?;
        Ok(units.div(
            &units.mul(f.value(a, b)?, t),
            f.value(c, &h_g)?,
        ))
    })
}

/// `t(0) = 1` and `t(h)·t(h') = ξ(α(h), α(h'))·t(h+h')` wherever all terms
/// are available; on a finite `H` every element must be assigned.
fn check_trivialization(f: &GFamily, alpha: &AbHom, triv: &BTreeMap<Elem, Unit>) -> Result<()> {
    let h = alpha.source();
    let units = f.units();
    for (x, v) in triv {
        if !h.contains(x) {
            return Err(Error::Dimension(format!("{x} is not an element of {h}")));
        }
        if !units.lattice().contains(v.elem()) {
            return Err(Error::Dimension(format!("{v} is not a reduced unit")));
        }
    }
    if h.is_finite() {
        for x in h.elements()? {
            if !triv.contains_key(&x) {
                return Err(Error::Precondition(format!("trivialization has no value at {x}")));
            }
        }
    }
    if triv.get(&h.zero()).is_some_and(|v| !units.is_one(v)) {
        return Err(Error::Precondition("trivialization is not 1 at zero".into()));
    }
    for (x, tx) in triv {
        for (y, ty) in triv {
            let Some(txy) = triv.get(&h.add(x, y)) else { continue };
            let Ok(xi) = f.value(&alpha.apply(x), &alpha.apply(y)) else {
                continue;
            };
            if units.mul(tx, ty) != units.mul(xi, txy) {
                return Err(Error::Precondition(format!(
                    "trivialization is not multiplicative at ({x}, {y})"
                )));
            }
        }
    }
    Ok(())
}
