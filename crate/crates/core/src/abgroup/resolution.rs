//! Two-term free resolutions `0 → K₁ → K₀ → G → 0` and the horseshoe
//! construction for extensions.

use num_bigint::BigInt;
use num_traits::Zero;

use super::snf::{lattice_basis, smith_normal_form};
use super::{AbHom, FgAb, IntMatrix};
use crate::error::{Error, Result};

/// A free resolution `0 → K₁ → K₀ = Z^n → G → 0`.
///
/// `k1_basis` holds a basis of `K₁` as columns in `Z^n`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    k1_basis: IntMatrix,
    projection: AbHom,
}

impl FreeResolution {
    /// Assembles a resolution and checks that it is exact.
    pub fn new(k1_basis: IntMatrix, projection: AbHom) -> Result<Self> {
        if !projection.source().is_free() || projection.source().free_rank() != k1_basis.rows() {
            return Err(Error::Dimension(
                "projection must start at the free group containing K1".into(),
            ));
        }
        let res = FreeResolution {
            k1_basis,
            projection,
        };
        res.check_exact()?;
        Ok(res)
    }

    pub fn k0_rank(&self) -> usize {
        self.k1_basis.rows()
    }

    pub fn k1_rank(&self) -> usize {
        self.k1_basis.cols()
    }

    pub fn k1_basis(&self) -> &IntMatrix {
        &self.k1_basis
    }

    pub fn projection(&self) -> &AbHom {
        &self.projection
    }

    pub fn resolved(&self) -> &FgAb {
        self.projection.target()
    }

    /// The group `coker(K₁ → K₀)`.
    pub fn cokernel(&self) -> Result<FgAb> {
        FgAb::new(self.k0_rank(), self.k1_basis.clone())
    }

    /// Exactness: the projection is onto, kills `K₁`, the inclusion is
    /// injective, and `K₀/K₁ ≅ G`. A surjection between isomorphic finitely
    /// generated abelian groups is an isomorphism, so this pins `K₁ = ker`.
    pub fn check_exact(&self) -> Result<()> {
        if !self.projection.is_surjective() {
            return Err(Error::Invariant("resolution projection is not onto".into()));
        }
        for (j, col) in self.k1_basis.columns().iter().enumerate() {
            let img = self.projection.apply_generators(col)?;
            if !self.resolved().is_zero(&img) {
                return Err(Error::Invariant(format!(
                    "K1 basis vector {j} does not map to zero"
                )));
            }
        }
        if smith_normal_form(&self.k1_basis).rank() != self.k1_rank() {
            return Err(Error::Invariant("K1 basis is linearly dependent".into()));
        }
        if !self.cokernel()?.is_isomorphic(self.resolved()) {
            return Err(Error::Invariant(
                "cokernel of K1 -> K0 differs from the resolved group".into(),
            ));
        }
        Ok(())
    }
}

/// Resolution of `g` on its own generators: `K₀ = Z^n`, `K₁` the relator lattice.
pub fn free_resolution(g: &FgAb) -> FreeResolution {
    let n = g.num_generators();
    let projection = AbHom::new(FgAb::free(n), g.clone(), IntMatrix::identity(n))
        .expect("identity on generators is well defined");
    FreeResolution::new(lattice_basis(g.relations()), projection)
        .expect("presentation resolution is exact")
}

/// Glues resolutions of `H` and `G/H` into one of `G` along
/// `0 → H --alpha--> G --beta--> G/H → 0`.
///
/// Column `j` of `lifts` (in generator coordinates of `G`) must map under
/// `beta` to the image of the `j`-th generator of `K₀'`. The result has
/// `K₀ ⊕ K₀'` with basis of the kernel `(k, 0)` for `k ∈ K₁` followed by
/// `(-t, k')` for `k' ∈ K₁'`, where `t ∈ K₀` lifts the correction in `H`.
pub fn horseshoe(
    res_h: &FreeResolution,
    res_q: &FreeResolution,
    alpha: &AbHom,
    beta: &AbHom,
    lifts: &IntMatrix,
) -> Result<FreeResolution> {
    let g = alpha.target();
    if res_h.resolved() != alpha.source() || beta.source() != g || res_q.resolved() != beta.target()
    {
        return Err(Error::Dimension(
            "resolutions and maps do not form a short exact sequence".into(),
        ));
    }
    check_short_exact(alpha, beta)?;
    let n_h = res_h.k0_rank();
    let n_q = res_q.k0_rank();
    if lifts.rows() != g.num_generators() || lifts.cols() != n_q {
        return Err(Error::Dimension(format!(
            "lifts must be {}x{n_q}",
            g.num_generators()
        )));
    }
    for j in 0..n_q {
        let lifted = beta.apply_generators(&lifts.column(j))?;
        let expected = res_q.projection().apply(&FgAb::free(n_q).generator(j));
        if lifted != expected {
            return Err(Error::Precondition(format!(
                "lift {j} is not a preimage of the {j}-th generator image"
            )));
        }
    }

    let top = alpha.matrix().checked_mul(res_h.projection().matrix())?;
    let proj_matrix = top.hstack(lifts)?;
    let total = n_h + n_q;

    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for k in res_h.k1_basis().columns() {
        let mut col = k;
        col.resize(total, BigInt::zero());
        columns.push(col);
    }
    for kq in res_q.k1_basis().columns() {
        let in_g = g.from_generators(&lifts.mul_vec(&kq))?;
        let h = alpha
            .preimage(&in_g)
            .ok_or_else(|| Error::Invariant("lift of a K1' vector is not in H".into()))?;
        let t = res_h
            .projection()
            .preimage_generators(&h)
            .ok_or_else(|| Error::Invariant("K0 does not surject onto H".into()))?;
        let mut col: Vec<BigInt> = t.into_iter().map(|x| -x).collect();
        col.extend(kq);
        columns.push(col);
    }
    let k1 = IntMatrix::from_columns(&columns, total)?;
    let projection = AbHom::new(FgAb::free(total), g.clone(), proj_matrix)?;
    FreeResolution::new(k1, projection)
}

/// Checks exactness of `0 → H → G → Q → 0`.
pub fn check_short_exact(alpha: &AbHom, beta: &AbHom) -> Result<()> {
    if alpha.target() != beta.source() {
        return Err(Error::Dimension("maps are not composable".into()));
    }
    if !alpha.is_injective() {
        return Err(Error::Precondition("H -> G is not injective".into()));
    }
    if !beta.is_surjective() {
        return Err(Error::Precondition("G -> G/H is not surjective".into()));
    }
    if !beta.compose(alpha)?.is_zero_map() {
        return Err(Error::Precondition("composite H -> G/H is not zero".into()));
    }
    let g = alpha.target();
    for col in beta.kernel_generators().columns() {
        let e = g.from_generators(&col)?;
        if alpha.preimage(&e).is_none() {
            return Err(Error::Precondition(
                "kernel of G -> G/H is larger than H".into(),
            ));
        }
    }
    Ok(())
}
