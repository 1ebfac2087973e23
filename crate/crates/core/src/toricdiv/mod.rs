//! Complete toric models: class groups, section polytopes and graded pieces
//! of the Cox ring, computed from the ray matrix alone.

mod divisorial;
mod polytope;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::abgroup::{AbHom, Elem, FgAb, IntMatrix};
use crate::error::{Error, Result};

pub use divisorial::{
    cox_piece_dimension, divisorial_algebra_report, nonnegative_window, piece_dimension_at,
    trivialization_check, DivisorialPresentation, PieceRow,
};
pub use polytope::MAX_BOX_POINTS;

/// Largest number of exponent vectors visited by [`monomial_piece_dimension`].
pub const MAX_MONOMIAL_SCAN: u64 = 1 << 26;

/// Rays of a complete fan, one primitive vector per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricPresentation {
    rays: IntMatrix,
    complete: bool,
    positive_relation: Option<Vec<BigInt>>,
}

impl ToricPresentation {
    /// Checks that rays are nonzero, primitive and span `Q^n`.
    pub fn new(rays: IntMatrix, complete: bool) -> Result<Self> {
        if rays.rows() == 0 || rays.cols() == 0 {
            return Err(Error::Dimension("ray matrix is empty".into()));
        }
        for i in 0..rays.rows() {
            let row = rays.row(i);
            let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if g.is_zero() {
                return Err(Error::Precondition(format!("ray {i} is zero")));
            }
            if g != BigInt::from(1) {
                return Err(Error::Precondition(format!(
                    "ray {i} is not primitive (gcd {g})"
                )));
            }
        }
        if crate::abgroup::smith_normal_form(&rays).rank() != rays.cols() {
            return Err(Error::Precondition("rays do not span the lattice rationally".into()));
        }
        let positive_relation = polytope::positive_relation(&rays);
        Ok(ToricPresentation {
            rays,
            complete,
            positive_relation,
        })
    }

    pub fn from_i64(rays: &[&[i64]]) -> Result<Self> {
        ToricPresentation::new(IntMatrix::from_i64(rays), true)
    }

    pub fn projective_plane() -> Self {
        Self::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).expect("valid fan")
    }

    pub fn product_of_lines() -> Self {
        Self::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).expect("valid fan")
    }

    pub fn weighted_plane_112() -> Self {
        Self::from_i64(&[&[1, 0], &[0, 1], &[-1, -2]]).expect("valid fan")
    }

    pub fn rays(&self) -> &IntMatrix {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.rows()
    }

    pub fn dim(&self) -> usize {
        self.rays.cols()
    }

    pub fn completeness_asserted(&self) -> bool {
        self.complete
    }

    /// Positive weights `w` with `Σ w_ρ u_ρ = 0`, when the rays positively span.
    pub fn positive_relation(&self) -> Option<&[BigInt]> {
        self.positive_relation.as_deref()
    }

    /// The weights needed for finite section spaces, or why they are missing.
    fn bounded_weights(&self) -> Result<&[BigInt]> {
        if !self.complete {
            return Err(Error::Precondition(
                "completeness was not asserted for this presentation".into(),
            ));
        }
        self.positive_relation().ok_or_else(|| {
            Error::Unbounded("rays do not positively span; sections are infinite".into())
        })
    }
}

/// `Σ a_ρ D_ρ`, coefficients in input ray order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeilDivisor(pub Vec<BigInt>);

impl WeilDivisor {
    pub fn from_i64(a: &[i64]) -> Self {
        WeilDivisor(a.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for WeilDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Elem::from_coords(self.0.clone()).fmt(f)
    }
}

/// The character `χ^m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharacterFunction(pub Vec<BigInt>);

impl CharacterFunction {
    pub fn from_i64(m: &[i64]) -> Self {
        CharacterFunction(m.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn exponent(&self) -> &[BigInt] {
        &self.0
    }
}

/// `Cl = Z^rays / M` with its projection from the divisors.
pub fn class_group(t: &ToricPresentation) -> Result<(FgAb, AbHom)> {
    let r = t.num_rays();
    let cl = FgAb::new(r, t.rays.clone())?;
    let proj = AbHom::new(FgAb::free(r), cl.clone(), IntMatrix::identity(r))?;
    Ok((cl, proj))
}

/// `div(χ^m) = Σ ⟨m, u_ρ⟩ D_ρ`.
pub fn principal_divisor(t: &ToricPresentation, m: &CharacterFunction) -> Result<WeilDivisor> {
    if m.0.len() != t.dim() {
        return Err(Error::Dimension(format!(
            "character has {} entries, lattice rank is {}",
            m.0.len(),
            t.dim()
        )));
    }
    Ok(WeilDivisor(t.rays.mul_vec(&m.0)))
}

/// Characters `χ^m` spanning `H⁰(O(D))`: the lattice points of
/// `{ m : ⟨m, u_ρ⟩ ≥ −a_ρ }`, sorted.
pub fn section_basis(t: &ToricPresentation, d: &WeilDivisor) -> Result<Vec<CharacterFunction>> {
    check_divisor(t, d)?;
    t.bounded_weights()?;
    let rhs: Vec<BigInt> = d.0.iter().map(|a| -a).collect();
    Ok(polytope::lattice_points(&t.rays, &rhs)?
        .into_iter()
        .map(CharacterFunction)
        .collect())
}

fn check_divisor(t: &ToricPresentation, d: &WeilDivisor) -> Result<()> {
    if d.0.len() != t.num_rays() {
        return Err(Error::Dimension(format!(
            "divisor has {} coefficients for {} rays",
            d.0.len(),
            t.num_rays()
        )));
    }
    Ok(())
}

/// Number of monomials `Π x_ρ^{a_ρ}` with `a ≥ 0` and class `c`.
///
/// The positive relation `w` gives a degree `w·a` that is constant on
/// classes, so the search runs over `a ≥ 0` of a fixed degree.
pub fn monomial_piece_dimension(t: &ToricPresentation, c: &Elem) -> Result<u64> {
    let w = t.bounded_weights()?;
    let (cl, _) = class_group(t)?;
    if !cl.contains(c) {
        return Err(Error::Dimension(format!("{c} is not an element of {cl}")));
    }
    let x = cl.to_generators(c);
    let degree: BigInt = w.iter().zip(&x).map(|(a, b)| a * b).sum();
    if degree.is_negative() {
        return Ok(0);
    }
    let degree = degree
        .to_i64()
        .ok_or_else(|| Error::TooLarge(format!("degree {degree} is out of range")))?;
    let weights: Vec<i64> = w
        .iter()
        .map(|x| x.to_i64().expect("weights of a desk-scale fan are small"))
        .collect();

    let mut count = 0u64;
    let mut visited = 0u64;
    let mut a = vec![0i64; weights.len()];
    let mut overflow = false;
    scan(&weights, 0, degree, &mut a, &mut |a| {
        visited += 1;
        if visited > MAX_MONOMIAL_SCAN {
            overflow = true;
            return false;
        }
        let v: Vec<BigInt> = a.iter().map(|&k| BigInt::from(k)).collect();
        if cl.from_generators(&v).is_ok_and(|e| &e == c) {
            count += 1;
        }
        true
    });
    if overflow {
        return Err(Error::TooLarge(format!(
            "more than {MAX_MONOMIAL_SCAN} exponent vectors of degree {degree}"
        )));
    }
    Ok(count)
}

/// Visits every `a ≥ 0` with `Σ_{i ≥ k} w_i a_i = rest`; stops early when
/// `visit` returns false.
fn scan(w: &[i64], k: usize, rest: i64, a: &mut [i64], visit: &mut impl FnMut(&[i64]) -> bool) -> bool {
    if k == w.len() {
        return rest != 0 || visit(a);
    }
    if k + 1 == w.len() {
        if rest % w[k] != 0 {
            return true;
        }
        a[k] = rest / w[k];
        let go = visit(a);
        a[k] = 0;
        return go;
    }
    let mut e = 0;
    while e * w[k] <= rest {
        a[k] = e;
        if !scan(w, k + 1, rest - e * w[k], a, visit) {
            a[k] = 0;
            return false;
        }
        e += 1;
    }
    a[k] = 0;
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn class_groups() {
        let (cl, proj) = class_group(&ToricPresentation::projective_plane()).unwrap();
        assert_eq!(cl.literal(), "1;");
        for i in 0..3 {
            assert_eq!(proj.apply(&FgAb::free(3).generator(i)).coords(), bi(&[1]));
        }
        let (cl, _) = class_group(&ToricPresentation::product_of_lines()).unwrap();
        assert_eq!(cl.literal(), "2;");
        let (cl, proj) = class_group(&ToricPresentation::weighted_plane_112()).unwrap();
        assert_eq!(cl.literal(), "1;");
        let weights: Vec<BigInt> = (0..3)
            .map(|i| proj.apply(&FgAb::free(3).generator(i)).coords()[0].clone())
            .collect();
        assert_eq!(weights, bi(&[1, 2, 1]));
    }

    #[test]
    fn rejects_bad_rays() {
        assert!(ToricPresentation::from_i64(&[&[2, 0], &[0, 1], &[-1, -1]]).is_err());
        assert!(ToricPresentation::from_i64(&[&[0, 0], &[0, 1], &[-1, -1]]).is_err());
        assert!(ToricPresentation::from_i64(&[&[1, 0], &[-1, 0]]).is_err());
    }

    #[test]
    fn principal_divisors() {
        let t = ToricPresentation::projective_plane();
        let div = |m: &[i64]| principal_divisor(&t, &CharacterFunction::from_i64(m)).unwrap();
        assert_eq!(div(&[0, 0]), WeilDivisor::from_i64(&[0, 0, 0]));
        assert_eq!(div(&[1, 0]), WeilDivisor::from_i64(&[1, 0, -1]));
        assert_eq!(div(&[1, 1]), WeilDivisor::from_i64(&[1, 1, -2]));
        let (cl, proj) = class_group(&t).unwrap();
        let d = div(&[3, -7]);
        assert!(cl.is_zero(&proj.apply_generators(d.coefficients()).unwrap()));
    }

    #[test]
    fn section_counts() {
        let t = ToricPresentation::projective_plane();
        let s = section_basis(&t, &WeilDivisor::from_i64(&[0, 0, 0])).unwrap();
        assert_eq!(s, vec![CharacterFunction::from_i64(&[0, 0])]);
        assert_eq!(section_basis(&t, &WeilDivisor::from_i64(&[0, 0, 2])).unwrap().len(), 6);
        let t = ToricPresentation::product_of_lines();
        for (a, b) in [(0, 0), (2, 3), (4, 1)] {
            let d = WeilDivisor::from_i64(&[a, 0, b, 0]);
            assert_eq!(section_basis(&t, &d).unwrap().len() as i64, (a + 1) * (b + 1));
        }
    }

    #[test]
    fn unbounded_sections_rejected() {
        let t = ToricPresentation::from_i64(&[&[1, 0], &[0, 1], &[-1, 0]]).unwrap();
        assert!(matches!(
            section_basis(&t, &WeilDivisor::from_i64(&[0, 0, 0])),
            Err(Error::Unbounded(_))
        ));
        assert!(class_group(&t).is_ok());
    }

    #[test]
    fn monomial_counts() {
        let t = ToricPresentation::projective_plane();
        let (cl, _) = class_group(&t).unwrap();
        for d in 0..6i64 {
            let c = cl.elem(&[d]).unwrap();
            assert_eq!(monomial_piece_dimension(&t, &c).unwrap() as i64, (d + 1) * (d + 2) / 2);
        }
        let t = ToricPresentation::weighted_plane_112();
        let (cl, _) = class_group(&t).unwrap();
        assert_eq!(monomial_piece_dimension(&t, &cl.elem(&[2]).unwrap()).unwrap(), 4);
        assert_eq!(monomial_piece_dimension(&t, &cl.elem(&[-1]).unwrap()).unwrap(), 0);
    }
}
