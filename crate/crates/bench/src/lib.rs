//! Fixtures shared by the benchmarks.

use coxring::IntMatrix;
use num_bigint::BigInt;

/// A deterministic `n × n` matrix with entries in `[-20, 20]`.
pub fn dense_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let data = (0..n * n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            BigInt::from(((state >> 33) % 41) as i64 - 20)
        })
        .collect();
    IntMatrix::new(n, n, data).expect("n*n entries")
}
