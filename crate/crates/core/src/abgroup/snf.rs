//! Smith and Hermite normal forms, integer kernels and integer linear solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// The result of [`smith_normal_form`]: `d = u * a * v` with `u`, `v` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Computes the Smith normal form of `a` by elementary row and column
/// operations, always pivoting on an entry of minimal absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&d, t) else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Divisibility: fold any row holding a non-multiple of the pivot
            // into the pivot row and reduce again.
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                _ => {
                    if x.abs().is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

/// Row-style Hermite normal form with zero rows removed: rows are in echelon
/// form, pivots positive, entries above each pivot reduced into `[0, pivot)`.
/// The result spans the same row lattice as `a`.
pub fn row_hermite_form(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let rows = h.rows();
    let mut r = 0;
    for c in 0..h.cols() {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !h[(i, c)].is_zero()
                    && best.is_none_or(|b| h[(i, c)].abs() < h[(b, c)].abs())
                {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                done &= h[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    h.select_rows(0..r)
}

/// A canonical basis (column Hermite form) of the lattice spanned by the
/// columns of `generators`.
pub fn lattice_basis(generators: &IntMatrix) -> IntMatrix {
    row_hermite_form(&generators.transpose()).transpose()
}

/// Reduces `v` modulo the lattice whose basis is in column Hermite form,
/// giving a canonical representative of the coset `v + L`.
pub fn reduce_mod_lattice(v: &[BigInt], hermite_basis: &IntMatrix) -> Vec<BigInt> {
    let mut out = v.to_vec();
    for j in 0..hermite_basis.cols() {
        let Some(p) = (0..hermite_basis.rows()).find(|&i| !hermite_basis[(i, j)].is_zero()) else {
            continue;
        };
        let q = out[p].div_floor(&hermite_basis[(p, j)]);
        if q.is_zero() {
            continue;
        }
        for (i, x) in out.iter_mut().enumerate() {
            *x -= &q * &hermite_basis[(i, j)];
        }
    }
    out
}

/// Whether `v` lies in the lattice spanned by the columns of `basis`.
pub fn in_lattice(v: &[BigInt], basis: &IntMatrix) -> bool {
    LinearSystem::new(basis).solve(v).is_some()
}

/// Whether two generator sets span the same lattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    lattice_basis(a) == lattice_basis(b)
}

/// Basis (as columns, in Hermite form) of the integer kernel `{x : a x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    lattice_basis(&snf.v.select_columns(rank..a.cols()))
}

/// An integer matrix prepared for repeated solving of `a x = b`.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    snf: SmithForm,
    rank: usize,
    rows: usize,
    cols: usize,
}

impl LinearSystem {
    pub fn new(a: &IntMatrix) -> Self {
        let snf = smith_normal_form(a);
        let rank = snf.rank();
        LinearSystem {
            snf,
            rank,
            rows: a.rows(),
            cols: a.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn smith_form(&self) -> &SmithForm {
        &self.snf
    }

    /// An integer solution of `a x = b`, or `None` if there is none.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "right-hand side has the wrong length");
        let c = self.snf.u.mul_vec(b);
        if c[self.rank..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..self.rank {
            let (q, r) = c[i].div_rem(&self.snf.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
        Some(self.snf.v.mul_vec(&y))
    }

    /// A solution of `a x ≡ b (mod modulus)` with entries in `[0, modulus)`.
    pub fn solve_mod(&self, b: &[BigInt], modulus: &BigInt) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "right-hand side has the wrong length");
        assert!(modulus.is_positive());
        let c: Vec<BigInt> = self
            .snf
            .u
            .mul_vec(b)
            .into_iter()
            .map(|x| x.mod_floor(modulus))
            .collect();
        if c[self.rank..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..self.rank {
            let d = self.snf.d[(i, i)].mod_floor(modulus);
            let g = d.gcd(modulus);
            if !c[i].is_multiple_of(&g) {
                return None;
            }
            let m = modulus / &g;
            let inv = mod_inverse(&(&d / &g), &m).expect("coprime after dividing by the gcd");
            y[i] = ((&c[i] / &g) * inv).mod_floor(&m);
        }
        Some(
            self.snf
                .v
                .mul_vec(&y)
                .into_iter()
                .map(|x| x.mod_floor(modulus))
                .collect(),
        )
    }
}

/// Inverse of `a` modulo `m` (with `m = 1` every residue is its own inverse).
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::matrix::to_bigints;

    fn check_snf(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn zero_matrix_is_fixed() {
        let s = check_snf(&IntMatrix::from_i64(&[&[0]]));
        assert_eq!(s.u, IntMatrix::identity(1));
        assert_eq!(s.d, IntMatrix::from_i64(&[&[0]]));
        assert_eq!(s.v, IntMatrix::identity(1));
    }

    #[test]
    fn identity_is_its_own_form() {
        let s = check_snf(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2, |det| is 8.
        let s = check_snf(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.diagonal(), to_bigints(&[2, 4]));
    }

    #[test]
    fn empty_matrices() {
        let s = check_snf(&IntMatrix::zeros(0, 3));
        assert_eq!(s.v, IntMatrix::identity(3));
        let s = check_snf(&IntMatrix::zeros(2, 0));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn divisibility_needs_fixup() {
        let s = check_snf(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), to_bigints(&[1, 6]));
    }

    #[test]
    fn hermite_and_kernel() {
        let a = IntMatrix::from_i64(&[&[2, 1]]);
        // kernel of (a,b) -> 2a+b
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!((&a * &k).is_zero());
        let gens = IntMatrix::from_i64(&[&[1, 0], &[-2, 4]]);
        let alt = IntMatrix::from_i64(&[&[2, -1], &[0, 2]]);
        assert!(same_lattice(&gens, &alt));
        assert!(in_lattice(&to_bigints(&[2, 0]), &gens));
        assert!(!in_lattice(&to_bigints(&[1, 0]), &gens));
    }

    #[test]
    fn reduction_mod_lattice_is_canonical() {
        let basis = lattice_basis(&IntMatrix::from_i64(&[&[4, 0], &[0, 6]]));
        let a = reduce_mod_lattice(&to_bigints(&[9, -7]), &basis);
        let b = reduce_mod_lattice(&to_bigints(&[1, 5]), &basis);
        assert_eq!(a, b);
        assert_eq!(a, to_bigints(&[1, 5]));
    }

    #[test]
    fn modular_solving() {
        let sys = LinearSystem::new(&IntMatrix::from_i64(&[&[2]]));
        assert_eq!(sys.solve_mod(&to_bigints(&[4]), &BigInt::from(6)), Some(to_bigints(&[2])));
        assert_eq!(sys.solve_mod(&to_bigints(&[1]), &BigInt::from(6)), None);
        assert_eq!(sys.solve(&to_bigints(&[3])), None);
        assert_eq!(sys.solve(&to_bigints(&[-4])), Some(to_bigints(&[-2])));
    }
}
