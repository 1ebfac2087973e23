//! Exact rational helpers for polytopes `{ m : A·m ≥ b }`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::abgroup::IntMatrix;
use crate::error::{Error, Result};

/// Largest integer box scanned when listing lattice points.
pub const MAX_BOX_POINTS: u64 = 1 << 24;

/// Solves a square rational system; `None` when singular.
pub(crate) fn solve_square(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = b.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..=n {
                let delta = &f * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

fn rational_row(a: &IntMatrix, i: usize) -> Vec<BigRational> {
    a.row(i).into_iter().map(BigRational::from_integer).collect()
}

/// A relation `Σ w_i a_i = 0` among the rows of `a` with every `w_i > 0`,
/// scaled to be primitive. Exists iff the rows positively span.
pub(crate) fn positive_relation(a: &IntMatrix) -> Option<Vec<BigInt>> {
    let (r, n) = (a.rows(), a.cols());
    let mut total = vec![BigRational::zero(); r];
    for rho in 0..r {
        // Write -a_rho as a nonnegative combination of n independent rows.
        let target: Vec<BigRational> = rational_row(a, rho).into_iter().map(|x| -x).collect();
        let found = (0..r).combinations(n).find_map(|subset| {
            let cols: Vec<Vec<BigRational>> = (0..n)
                .map(|k| subset.iter().map(|&s| BigRational::from_integer(a[(s, k)].clone())).collect())
                .collect();
            let lambda = solve_square(&cols, &target)?;
            lambda
                .iter()
                .all(|x| !x.is_negative())
                .then_some((subset, lambda))
        })?;
        total[rho] += BigRational::one();
        for (s, l) in found.0.into_iter().zip(found.1) {
            total[s] += l;
        }
    }
    let denom = total
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = total
        .iter()
        .map(|x| (x * BigRational::from_integer(denom.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &g).collect())
}

/// Vertices of `{ m : a·m ≥ b }`, assumed bounded. Empty when infeasible.
pub(crate) fn vertices(a: &IntMatrix, b: &[BigInt]) -> Vec<Vec<BigRational>> {
    let (r, n) = (a.rows(), a.cols());
    let rows: Vec<Vec<BigRational>> = (0..r).map(|i| rational_row(a, i)).collect();
    let rhs: Vec<BigRational> = b.iter().cloned().map(BigRational::from_integer).collect();
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    for subset in (0..r).combinations(n) {
        let sys: Vec<Vec<BigRational>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let sb: Vec<BigRational> = subset.iter().map(|&i| rhs[i].clone()).collect();
        let Some(m) = solve_square(&sys, &sb) else { continue };
        let feasible = rows.iter().zip(&rhs).all(|(row, bi)| {
            let lhs: BigRational = row.iter().zip(&m).map(|(x, y)| x * y).sum();
            &lhs >= bi
        });
        if feasible && !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

/// All integer points of the bounded polytope `{ m : a·m ≥ b }`, sorted
/// lexicographically.
pub(crate) fn lattice_points(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let n = a.cols();
    let verts = vertices(a, b);
    if verts.is_empty() {
        return Ok(Vec::new());
    }
    let mut bounds: Vec<(BigInt, BigInt)> = Vec::with_capacity(n);
    for k in 0..n {
        let lo = verts.iter().map(|v| v[k].ceil()).min().expect("nonempty");
        let hi = verts.iter().map(|v| v[k].floor()).max().expect("nonempty");
        if lo > hi {
            return Ok(Vec::new());
        }
        bounds.push((lo.to_integer(), hi.to_integer()));
    }
    let volume = bounds
        .iter()
        .fold(BigInt::one(), |acc, (lo, hi)| acc * (hi - lo + 1));
    if volume > BigInt::from(MAX_BOX_POINTS) {
        return Err(Error::TooLarge(format!(
            "bounding box holds {volume} points (limit {MAX_BOX_POINTS})"
        )));
    }
    let mut out = Vec::new();
    let mut cur: Vec<BigInt> = bounds.iter().map(|(lo, _)| lo.clone()).collect();
    'scan: loop {
        let ok = (0..a.rows()).all(|i| {
            let lhs: BigInt = (0..n).map(|k| &a[(i, k)] * &cur[k]).sum();
            lhs >= b[i]
        });
        if ok {
            out.push(cur.clone());
        }
        for k in (0..n).rev() {
            cur[k] += 1;
            if cur[k] <= bounds[k].1 {
                continue 'scan;
            }
            cur[k] = bounds[k].0.clone();
        }
        break;
    }
    Ok(out)
}
