use num_bigint::BigInt;

use super::{class_group, monomial_piece_dimension, principal_divisor, section_basis};
use super::{CharacterFunction, ToricPresentation, WeilDivisor};
use crate::abgroup::snf::{reduce_mod_lattice, same_lattice};
use crate::abgroup::{AbHom, Elem, FgAb, IntMatrix, LinearSystem};
use crate::error::{Error, Result};

/// A surjection `K₀ = Z^k → Cl` lifted to divisors `E: K₀ → WDiv`.
#[derive(Clone, Debug)]
pub struct DivisorialPresentation {
    toric: ToricPresentation,
    lift: IntMatrix,
    class_group: FgAb,
    class_map: AbHom,
    k1_basis: IntMatrix,
    solver: LinearSystem,
}

impl DivisorialPresentation {
    /// `lift[j]` is the divisor `E_{e_j}`; the induced map to `Cl` must be onto.
    pub fn new(toric: ToricPresentation, lift: Vec<WeilDivisor>) -> Result<Self> {
        let r = toric.num_rays();
        if let Some(d) = lift.iter().find(|d| d.0.len() != r) {
            return Err(Error::Dimension(format!(
                "lifted divisor {d} does not have {r} coefficients"
            )));
        }
        let cols: Vec<Vec<BigInt>> = lift.iter().map(|d| d.0.clone()).collect();
        let lift = IntMatrix::from_columns(&cols, r)?;
        let (cl, _) = class_group(&toric)?;
        let class_map = AbHom::new(FgAb::free(lift.cols()), cl.clone(), lift.clone())?;
        if !class_map.is_surjective() {
            return Err(Error::Precondition(
                "lifted divisors do not generate the class group".into(),
            ));
        }
        let k1_basis = class_map.kernel_generators();
        let solver = LinearSystem::new(&lift.hstack(toric.rays())?);
        Ok(DivisorialPresentation {
            toric,
            lift,
            class_group: cl,
            class_map,
            k1_basis,
            solver,
        })
    }

    /// `K₀ = Z^rays` with `E_{e_ρ} = D_ρ`.
    pub fn standard(toric: ToricPresentation) -> Result<Self> {
        let r = toric.num_rays();
        let lift = (0..r)
            .map(|i| {
                let mut a = vec![BigInt::from(0); r];
                a[i] = BigInt::from(1);
                WeilDivisor(a)
            })
            .collect();
        DivisorialPresentation::new(toric, lift)
    }

    pub fn toric(&self) -> &ToricPresentation {
        &self.toric
    }

    pub fn k0_rank(&self) -> usize {
        self.lift.cols()
    }

    pub fn class_group(&self) -> &FgAb {
        &self.class_group
    }

    pub fn class_map(&self) -> &AbHom {
        &self.class_map
    }

    /// Hermite basis of `K₁ = ker(K₀ → Cl)`.
    pub fn k1_basis(&self) -> &IntMatrix {
        &self.k1_basis
    }

    /// `E_k`.
    pub fn divisor_of(&self, k: &[BigInt]) -> Result<WeilDivisor> {
        self.check_k(k)?;
        Ok(WeilDivisor(self.lift.mul_vec(k)))
    }

    pub fn class_of(&self, k: &[BigInt]) -> Result<Elem> {
        self.check_k(k)?;
        self.class_map.apply_generators(k)
    }

    fn check_k(&self, k: &[BigInt]) -> Result<()> {
        if k.len() != self.k0_rank() {
            return Err(Error::Dimension(format!(
                "K0 vector has {} entries, expected {}",
                k.len(),
                self.k0_rank()
            )));
        }
        Ok(())
    }

    /// The canonical preimage of `c`: a particular solution reduced modulo
    /// the Hermite basis of `K₁`.
    pub fn preimage(&self, c: &Elem) -> Result<Vec<BigInt>> {
        if !self.class_group.contains(c) {
            return Err(Error::Dimension(format!(
                "{c} is not an element of {}",
                self.class_group
            )));
        }
        let sol = self
            .solver
            .solve(&self.class_group.to_generators(c))
            .ok_or_else(|| Error::Invariant("surjective class map has no preimage".into()))?;
        Ok(reduce_mod_lattice(&sol[..self.k0_rank()], &self.k1_basis))
    }
}

/// `dim 𝒮_k = h⁰(O(E_k))`.
pub fn piece_dimension_at(p: &DivisorialPresentation, k: &[BigInt]) -> Result<u64> {
    Ok(section_basis(&p.toric, &p.divisor_of(k)?)?.len() as u64)
}

/// Dimension of the Cox ring in degree `c`, through the canonical preimage.
pub fn cox_piece_dimension(p: &DivisorialPresentation, c: &Elem) -> Result<u64> {
    piece_dimension_at(p, &p.preimage(c)?)
}

/// Whether `div(ζ_j) = E_{k_j}` for each column `k_j` of `k1_basis`, which
/// must be a basis of `K₁`.
pub fn trivialization_check(
    p: &DivisorialPresentation,
    k1_basis: &IntMatrix,
    zeta: &[CharacterFunction],
) -> Result<bool> {
    if k1_basis.rows() != p.k0_rank() || k1_basis.cols() != zeta.len() {
        return Err(Error::Dimension(format!(
            "expected a {}x{} basis matrix, got {}x{}",
            p.k0_rank(),
            zeta.len(),
            k1_basis.rows(),
            k1_basis.cols()
        )));
    }
    if k1_basis.cols() != p.k1_basis.cols() || !same_lattice(k1_basis, &p.k1_basis) {
        return Err(Error::Precondition("matrix is not a basis of K1".into()));
    }
    for (j, z) in zeta.iter().enumerate() {
        if principal_divisor(&p.toric, z)? != p.divisor_of(&k1_basis.column(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One line of [`divisorial_algebra_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceRow {
    pub k: Vec<BigInt>,
    pub class: Elem,
    /// `h⁰(O(E_k))`
    pub dimension: u64,
    /// Through the canonical preimage of the class.
    pub cox_dimension: u64,
    /// Monomials of the class.
    pub monomial_dimension: u64,
}

pub fn divisorial_algebra_report(
    p: &DivisorialPresentation,
    window: &[Vec<BigInt>],
) -> Result<Vec<PieceRow>> {
    window
        .iter()
        .map(|k| {
            let class = p.class_of(k)?;
            Ok(PieceRow {
                k: k.clone(),
                dimension: piece_dimension_at(p, k)?,
                cox_dimension: cox_piece_dimension(p, &class)?,
                monomial_dimension: monomial_piece_dimension(&p.toric, &class)?,
                class,
            })
        })
        .collect()
}

/// All `k ≥ 0` in `Z^rank` with entry sum at most `max_sum`, in
/// lexicographic order.
pub fn nonnegative_window(rank: usize, max_sum: u32) -> Vec<Vec<BigInt>> {
    fn go(rank: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<BigInt>>) {
        if cur.len() == rank {
            out.push(cur.iter().map(|&x| BigInt::from(x)).collect());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            go(rank, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, max_sum, &mut Vec::new(), &mut out);
    out
}
