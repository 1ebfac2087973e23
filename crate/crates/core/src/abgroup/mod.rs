//! Finitely generated abelian groups, their elements and homomorphisms.
//!
//! A group is given by a presentation `Z^n / R Z^k`, where the columns of `R`
//! are the relators. The Smith normal form of `R` is computed once at
//! construction and fixes the canonical coordinates of elements: one residue
//! per nontrivial invariant factor followed by the free coordinates.

mod functors;
mod literal;
pub mod matrix;
mod resolution;
pub mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use functors::{ext1, hom_group};
pub use matrix::IntMatrix;
pub use resolution::{free_resolution, horseshoe, FreeResolution};
pub use snf::{smith_normal_form, LinearSystem, SmithForm};

use crate::error::{Error, Result};

/// Upper bound on the number of elements [`FgAb::elements`] will list.
pub const MAX_ENUMERATION: usize = 1 << 20;

/// A group element in canonical coordinates of its parent [`FgAb`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(Vec<BigInt>);

impl Elem {
    /// Wraps coordinates without reducing them; prefer [`FgAb::reduce`].
    pub fn from_coords(coords: Vec<BigInt>) -> Self {
        Elem(coords)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finitely generated abelian group presented as a cokernel.
#[derive(Clone, Debug)]
pub struct FgAb {
    num_generators: usize,
    relations: IntMatrix,
    snf: SmithForm,
    u_inv: IntMatrix,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    /// Rows of `snf.u` that produce the canonical coordinates.
    coord_rows: Vec<usize>,
}

impl PartialEq for FgAb {
    fn eq(&self, other: &Self) -> bool {
        self.num_generators == other.num_generators && self.relations == other.relations
    }
}

impl Eq for FgAb {}

impl FgAb {
    /// The group `Z^num_generators / (column span of relations)`.
    pub fn new(num_generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != num_generators {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows but there are {num_generators} generators",
                relations.rows()
            )));
        }
        let mut snf = smith_normal_form(&relations);
        let diag = snf.diagonal();
        let rank = diag.len();

        // The free part of the basis is only defined up to GL(f, Z); fix it by
        // putting the corresponding rows of `u` in Hermite form.
        if rank < num_generators {
            let free_rows = snf.u.select_rows(rank..num_generators);
            let normalized = snf::row_hermite_form(&free_rows);
            debug_assert_eq!(normalized.rows(), num_generators - rank);
            for (k, i) in (rank..num_generators).enumerate() {
                for j in 0..num_generators {
                    snf.u[(i, j)] = normalized[(k, j)].clone();
                }
            }
        }
        let u_inv = snf.u.inverse_unimodular().map_err(|e| {
            Error::Invariant(format!("smith transform is not invertible: {e}"))
        })?;

        let mut coord_rows = Vec::new();
        let mut invariant_factors = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if !d.is_one() {
                coord_rows.push(i);
                invariant_factors.push(d.clone());
            }
        }
        coord_rows.extend(rank..num_generators);
        Ok(FgAb {
            num_generators,
            relations,
            snf,
            u_inv,
            invariant_factors,
            free_rank: num_generators - rank,
            coord_rows,
        })
    }

    /// `Z^free_rank ⊕ Z/d_1 ⊕ ...`, presented with the torsion generators first.
    pub fn from_invariants(free_rank: usize, factors: &[BigInt]) -> Result<Self> {
        if let Some(d) = factors.iter().find(|d| d.is_negative()) {
            return Err(Error::Parse(format!("negative cyclic order {d}")));
        }
        let n = factors.len() + free_rank;
        let mut rel = IntMatrix::zeros(n, factors.len());
        for (i, d) in factors.iter().enumerate() {
            rel[(i, i)] = d.clone();
        }
        FgAb::new(n, rel)
    }

    pub fn free(rank: usize) -> Self {
        FgAb::new(rank, IntMatrix::zeros(rank, 0)).expect("free presentation is valid")
    }

    pub fn cyclic(order: u64) -> Self {
        FgAb::from_invariants(0, &[BigInt::from(order)]).expect("cyclic presentation is valid")
    }

    pub fn trivial() -> Self {
        FgAb::free(0)
    }

    /// Finite group `Z/d_1 ⊕ Z/d_2 ⊕ ...` from small orders.
    pub fn finite(orders: &[u64]) -> Self {
        let f: Vec<BigInt> = orders.iter().map(|&d| BigInt::from(d)).collect();
        FgAb::from_invariants(0, &f).expect("finite presentation is valid")
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// The cached Smith form `(u, d, v)` with `d = u * relations * v`.
    pub fn smith_form(&self) -> &SmithForm {
        &self.snf
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Canonical decomposition `Z^r ⊕ ⊕ Z/d_i` as `(r, [d_i])`.
    pub fn structure(&self) -> (usize, Vec<BigInt>) {
        (self.free_rank, self.invariant_factors.clone())
    }

    pub fn is_isomorphic(&self, other: &FgAb) -> bool {
        self.structure() == other.structure()
    }

    /// Number of canonical coordinates.
    pub fn rank_of_coords(&self) -> usize {
        self.coord_rows.len()
    }

    pub fn torsion_len(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.coord_rows.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// Order as a machine integer when the group is finite and small enough.
    pub fn small_order(&self) -> Option<usize> {
        self.order().and_then(|o| o.to_usize())
    }

    /// Number of elements killed by `k`, i.e. `|G[k]|`; `None` when infinite.
    pub fn torsion_count(&self, k: &BigInt) -> Option<BigInt> {
        if k.is_zero() && self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .map(|d| if k.is_zero() { d.clone() } else { d.gcd(k) })
                .product(),
        )
    }

    /// The canonical literal `r;d1,d2,...`.
    pub fn literal(&self) -> String {
        let factors: Vec<String> = self.invariant_factors.iter().map(|d| d.to_string()).collect();
        format!("{};{}", self.free_rank, factors.join(","))
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![BigInt::zero(); self.coord_rows.len()])
    }

    /// Brings raw canonical coordinates into reduced form.
    pub fn reduce(&self, mut coords: Vec<BigInt>) -> Result<Elem> {
        if coords.len() != self.coord_rows.len() {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, group {} needs {}",
                coords.len(),
                self.literal(),
                self.coord_rows.len()
            )));
        }
        for (c, d) in coords.iter_mut().zip(&self.invariant_factors) {
            *c = c.mod_floor(d);
        }
        Ok(Elem(coords))
    }

    /// Convenience for literal coordinates.
    pub fn elem(&self, coords: &[i64]) -> Result<Elem> {
        self.reduce(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// The class of a vector in generator coordinates.
    pub fn from_generators(&self, x: &[BigInt]) -> Result<Elem> {
        if x.len() != self.num_generators {
            return Err(Error::Dimension(format!(
                "vector has {} entries, group has {} generators",
                x.len(),
                self.num_generators
            )));
        }
        let coords = self
            .coord_rows
            .iter()
            .map(|&i| {
                (0..self.num_generators)
                    .filter(|&j| !self.snf.u[(i, j)].is_zero() && !x[j].is_zero())
                    .map(|j| &self.snf.u[(i, j)] * &x[j])
                    .sum()
            })
            .collect();
        self.reduce(coords)
    }

    /// A vector in generator coordinates representing `e`.
    pub fn to_generators(&self, e: &Elem) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.num_generators];
        for (&i, c) in self.coord_rows.iter().zip(&e.0) {
            y[i] = c.clone();
        }
        self.u_inv.mul_vec(&y)
    }

    /// The image of the `j`-th generator.
    pub fn generator(&self, j: usize) -> Elem {
        let mut x = vec![BigInt::zero(); self.num_generators];
        x[j] = BigInt::one();
        self.from_generators(&x).expect("generator index in range")
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let coords = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(coords).expect("operands belong to this group")
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.reduce(a.0.iter().map(|x| -x).collect())
            .expect("operand belongs to this group")
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let coords = a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect();
        self.reduce(coords).expect("operands belong to this group")
    }

    pub fn scale(&self, k: &BigInt, a: &Elem) -> Elem {
        self.reduce(a.0.iter().map(|x| x * k).collect())
            .expect("operand belongs to this group")
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Elem>) -> Elem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.0.iter().all(Zero::is_zero)
    }

    /// Whether `a` is a well-formed reduced element of this group.
    pub fn contains(&self, a: &Elem) -> bool {
        a.0.len() == self.coord_rows.len()
            && a.0
                .iter()
                .zip(&self.invariant_factors)
                .all(|(c, d)| !c.is_negative() && c < d)
    }

    /// Order of `a`, or `None` if it has infinite order.
    pub fn element_order(&self, a: &Elem) -> Option<BigInt> {
        let t = self.invariant_factors.len();
        if a.0[t..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(
            a.0[..t]
                .iter()
                .zip(&self.invariant_factors)
                .map(|(c, d)| d / c.gcd(d))
                .fold(BigInt::one(), |acc, o| acc.lcm(&o)),
        )
    }

    /// All elements in lexicographic order of canonical coordinates.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let order = self.small_order().ok_or_else(|| {
            Error::TooLarge(format!("group {} is infinite", self.literal()))
        })?;
        if order > MAX_ENUMERATION {
            return Err(Error::TooLarge(format!(
                "group {} has {order} elements (limit {MAX_ENUMERATION})",
                self.literal()
            )));
        }
        let radix: Vec<usize> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_usize().expect("factor fits since the order does"))
            .collect();
        let mut out = Vec::with_capacity(order);
        let mut digits = vec![0usize; radix.len()];
        for _ in 0..order {
            out.push(Elem(digits.iter().map(|&x| BigInt::from(x)).collect()));
            for k in (0..digits.len()).rev() {
                digits[k] += 1;
                if digits[k] < radix[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
        Ok(out)
    }

    /// Elements whose free coordinates lie in `[-radius, radius]` (torsion
    /// coordinates range fully), in lexicographic order.
    pub fn window(&self, radius: u64) -> Result<Vec<Elem>> {
        let t = self.invariant_factors.len();
        let mut ranges: Vec<(BigInt, BigInt)> = self
            .invariant_factors
            .iter()
            .map(|d| (BigInt::zero(), d - 1))
            .collect();
        let r = BigInt::from(radius);
        ranges.extend((0..self.free_rank).map(|_| (-r.clone(), r.clone())));
        let mut count = BigInt::one();
        for (lo, hi) in &ranges {
            count *= hi - lo + 1;
        }
        if count > BigInt::from(MAX_ENUMERATION) {
            return Err(Error::TooLarge(format!(
                "window of radius {radius} in {} has {count} elements",
                self.literal()
            )));
        }
        let mut out = Vec::new();
        let mut cur: Vec<BigInt> = ranges.iter().map(|(lo, _)| lo.clone()).collect();
        if ranges.is_empty() {
            return Ok(vec![self.zero()]);
        }
        'outer: loop {
            out.push(Elem(cur.clone()));
            for k in (0..cur.len()).rev() {
                cur[k] += 1;
                if cur[k] <= ranges[k].1 {
                    continue 'outer;
                }
                cur[k] = ranges[k].0.clone();
            }
            break;
        }
        debug_assert!(t <= cur.len());
        Ok(out)
    }

    /// The subgroup generated by `gens`, with its inclusion map.
    pub fn subgroup(&self, gens: &[Elem]) -> Result<(FgAb, AbHom)> {
        let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| self.to_generators(g)).collect();
        let m = IntMatrix::from_columns(&cols, self.num_generators)?;
        let from_free = AbHom::new(FgAb::free(gens.len()), self.clone(), m.clone())?;
        let rel = from_free.kernel_generators();
        let h = FgAb::new(gens.len(), rel)?;
        let incl = AbHom::new(h.clone(), self.clone(), m)?;
        Ok((h, incl))
    }

    /// `self / d·self`.
    pub fn mod_multiples(&self, d: &BigInt) -> Result<(FgAb, AbHom)> {
        let mult = IntMatrix::identity(self.num_generators).scale(d);
        let q = FgAb::new(self.num_generators, self.relations.hstack(&mult)?)?;
        let proj = AbHom::new(self.clone(), q.clone(), IntMatrix::identity(self.num_generators))?;
        Ok((q, proj))
    }

    /// Direct sum with the block presentation.
    pub fn direct_sum(&self, other: &FgAb) -> FgAb {
        let n = self.num_generators + other.num_generators;
        let k = self.relations.cols() + other.relations.cols();
        let mut rel = IntMatrix::zeros(n, k);
        for i in 0..self.num_generators {
            for j in 0..self.relations.cols() {
                rel[(i, j)] = self.relations[(i, j)].clone();
            }
        }
        for i in 0..other.num_generators {
            for j in 0..other.relations.cols() {
                rel[(self.num_generators + i, self.relations.cols() + j)] =
                    other.relations[(i, j)].clone();
            }
        }
        FgAb::new(n, rel).expect("block presentation is valid")
    }
}

impl fmt::Display for FgAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl FromStr for FgAb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (r, factors) = literal::parse_group_literal(s)?;
        FgAb::from_invariants(r, &factors)
    }
}

/// A homomorphism between presented groups, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    source: FgAb,
    target: FgAb,
    /// `target.num_generators() x source.num_generators()`
    matrix: IntMatrix,
}

impl AbHom {
    /// Checks that every relator of `source` maps into the relator lattice of
    /// `target`.
    pub fn new(source: FgAb, target: FgAb, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.num_generators || matrix.cols() != source.num_generators {
            return Err(Error::Dimension(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.num_generators,
                source.num_generators
            )));
        }
        for (j, rel) in source.relations.columns().iter().enumerate() {
            let img = target.from_generators(&matrix.mul_vec(rel))?;
            if !target.is_zero(&img) {
                return Err(Error::Precondition(format!(
                    "relator {j} of the source does not map to zero"
                )));
            }
        }
        Ok(AbHom {
            source,
            target,
            matrix,
        })
    }

    /// The homomorphism sending the `j`-th source generator to `images[j]`.
    pub fn from_images(source: FgAb, target: FgAb, images: &[Elem]) -> Result<Self> {
        let cols: Vec<Vec<BigInt>> = images.iter().map(|e| target.to_generators(e)).collect();
        let m = IntMatrix::from_columns(&cols, target.num_generators)?;
        AbHom::new(source, target, m)
    }

    pub fn identity(g: &FgAb) -> Self {
        AbHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.num_generators),
        }
    }

    pub fn zero(source: &FgAb, target: &FgAb) -> Self {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.num_generators, source.num_generators),
        }
    }

    pub fn source(&self) -> &FgAb {
        &self.source
    }

    pub fn target(&self) -> &FgAb {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        let x = self.source.to_generators(e);
        self.target
            .from_generators(&self.matrix.mul_vec(&x))
            .expect("dimensions fixed at construction")
    }

    /// Applies the map to a vector in source generator coordinates.
    pub fn apply_generators(&self, x: &[BigInt]) -> Result<Elem> {
        if x.len() != self.source.num_generators {
            return Err(Error::Dimension("vector length differs from source rank".into()));
        }
        self.target.from_generators(&self.matrix.mul_vec(x))
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &AbHom) -> Result<AbHom> {
        if inner.target != self.source {
            return Err(Error::Dimension("composition of incompatible maps".into()));
        }
        AbHom::new(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.checked_mul(&inner.matrix)?,
        )
    }

    fn with_target_relations(&self) -> IntMatrix {
        self.matrix
            .hstack(&self.target.relations)
            .expect("row counts agree")
    }

    /// A preimage in source generator coordinates, if one exists.
    pub fn preimage_generators(&self, e: &Elem) -> Option<Vec<BigInt>> {
        let sys = LinearSystem::new(&self.with_target_relations());
        let sol = sys.solve(&self.target.to_generators(e))?;
        Some(sol[..self.source.num_generators].to_vec())
    }

    pub fn preimage(&self, e: &Elem) -> Option<Elem> {
        self.preimage_generators(e)
            .map(|x| self.source.from_generators(&x).expect("length matches"))
    }

    /// Hermite basis of `{x ∈ Z^n : matrix·x ∈ target relators}`, in source
    /// generator coordinates.
    pub fn kernel_generators(&self) -> IntMatrix {
        let n = self.source.num_generators;
        let k = snf::kernel_basis(&self.with_target_relations());
        snf::lattice_basis(&k.select_rows(0..n))
    }

    /// The kernel as a subgroup of the source.
    pub fn kernel(&self) -> Result<(FgAb, AbHom)> {
        let gens: Vec<Elem> = self
            .kernel_generators()
            .columns()
            .iter()
            .map(|c| self.source.from_generators(c))
            .collect::<Result<_>>()?;
        self.source.subgroup(&gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_generators()
            .columns()
            .iter()
            .all(|c| self.source.from_generators(c).is_ok_and(|e| self.source.is_zero(&e)))
    }

    pub fn is_surjective(&self) -> bool {
        let s = smith_normal_form(&self.with_target_relations());
        let diag = s.diagonal();
        diag.len() == self.target.num_generators && diag.iter().all(One::is_one)
    }

    pub fn is_zero_map(&self) -> bool {
        (0..self.source.num_generators).all(|j| {
            let img = self
                .target
                .from_generators(&self.matrix.column(j))
                .expect("length matches");
            self.target.is_zero(&img)
        })
    }

    /// The cokernel with its projection; the cokernel is presented on the
    /// target's generators.
    pub fn cokernel(&self) -> Result<(FgAb, AbHom)> {
        let n = self.target.num_generators;
        let q = FgAb::new(n, self.target.relations.hstack(&self.matrix)?)?;
        let proj = AbHom::new(self.target.clone(), q.clone(), IntMatrix::identity(n))?;
        Ok((q, proj))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn structure_of_simple_presentations() {
        let g = FgAb::new(1, IntMatrix::from_i64(&[&[4]])).unwrap();
        assert_eq!(g.structure(), (0, bi(&[4])));
        let g = FgAb::new(2, IntMatrix::zeros(2, 0)).unwrap();
        assert_eq!(g.structure(), (2, vec![]));
        let g = FgAb::new(2, IntMatrix::from_i64(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(g.structure(), (0, bi(&[6])));
    }

    #[test]
    fn coordinates_round_trip() {
        let g = FgAb::new(3, IntMatrix::from_i64(&[&[2, 0], &[0, 3], &[0, 0]])).unwrap();
        assert_eq!(g.structure(), (1, bi(&[6])));
        for x in [[1, 2, -3], [5, 0, 7], [0, 0, 0]] {
            let e = g.from_generators(&bi(&x)).unwrap();
            let back = g.to_generators(&e);
            assert_eq!(g.from_generators(&back).unwrap(), e);
        }
    }

    #[test]
    fn free_part_is_normalized() {
        // P^2 class map: every ray maps to the same positive generator.
        let rays = IntMatrix::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let cl = FgAb::new(3, rays).unwrap();
        assert_eq!(cl.structure(), (1, vec![]));
        for j in 0..3 {
            assert_eq!(cl.generator(j), cl.elem(&[1]).unwrap());
        }
    }

    #[test]
    fn literal_round_trip_and_elements() {
        let g: FgAb = "1;2,4".parse().unwrap();
        assert_eq!(g.literal(), "1;2,4");
        let t: FgAb = "0;2,3".parse().unwrap();
        assert_eq!(t.literal(), "0;6");
        assert_eq!(t.elements().unwrap().len(), 6);
        assert!(g.elements().is_err());
        assert_eq!(g.window(1).unwrap().len(), 24);
    }

    #[test]
    fn element_orders() {
        let g = FgAb::finite(&[2, 4]);
        assert_eq!(g.element_order(&g.elem(&[1, 2]).unwrap()), Some(BigInt::from(2)));
        assert_eq!(g.element_order(&g.elem(&[1, 1]).unwrap()), Some(BigInt::from(4)));
        assert_eq!(g.torsion_count(&BigInt::from(2)), Some(BigInt::from(4)));
    }

    #[test]
    fn hom_checks_well_definedness() {
        let z4 = FgAb::cyclic(4);
        let z2 = FgAb::cyclic(2);
        assert!(AbHom::new(z2.clone(), z4.clone(), IntMatrix::from_i64(&[&[2]])).is_ok());
        assert!(AbHom::new(z2.clone(), z4.clone(), IntMatrix::from_i64(&[&[1]])).is_err());
        let incl = AbHom::new(z2.clone(), z4.clone(), IntMatrix::from_i64(&[&[2]])).unwrap();
        assert!(incl.is_injective());
        assert!(!incl.is_surjective());
        let (q, proj) = incl.cokernel().unwrap();
        assert_eq!(q.structure(), (0, bi(&[2])));
        assert!(proj.is_surjective());
        assert!(proj.compose(&incl).unwrap().is_zero_map());
    }

    #[test]
    fn subgroups_and_preimages() {
        let g = FgAb::finite(&[2, 4]);
        let (h, incl) = g.subgroup(&[g.elem(&[1, 2]).unwrap(), g.elem(&[0, 2]).unwrap()]).unwrap();
        assert_eq!(h.order(), Some(BigInt::from(4)));
        assert!(incl.is_injective());
        let target = g.elem(&[1, 0]).unwrap();
        let pre = incl.preimage(&target).unwrap();
        assert_eq!(incl.apply(&pre), target);
        assert!(incl.preimage(&g.elem(&[0, 1]).unwrap()).is_none());
    }
}
