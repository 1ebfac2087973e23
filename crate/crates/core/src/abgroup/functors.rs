//! `Hom` and `Ext¹` between finitely generated abelian groups.

use num_bigint::BigInt;
use num_integer::Integer;

use super::FgAb;

/// `Hom(Z^r ⊕ ⊕ Z/d_i, A) = A^r ⊕ ⊕ A[d_i]`.
pub fn hom_group(g: &FgAb, a: &FgAb) -> FgAb {
    let mut free = g.free_rank() * a.free_rank();
    let mut factors: Vec<BigInt> = Vec::new();
    for _ in 0..g.free_rank() {
        factors.extend(a.invariant_factors().iter().cloned());
    }
    for d in g.invariant_factors() {
        // A[d]: each Z/e contributes Z/gcd(d, e); free summands contribute nothing.
        factors.extend(a.invariant_factors().iter().map(|e| d.gcd(e)));
    }
    factors.retain(|f| *f != BigInt::from(1));
    normalize(&mut free, factors)
}

/// `Ext¹(Z^r ⊕ ⊕ Z/d_i, A) = ⊕ A/d_i A`.
pub fn ext1(g: &FgAb, a: &FgAb) -> FgAb {
    let mut factors: Vec<BigInt> = Vec::new();
    for d in g.invariant_factors() {
        factors.extend(a.invariant_factors().iter().map(|e| d.gcd(e)));
        factors.extend(std::iter::repeat_n(d.clone(), a.free_rank()));
    }
    factors.retain(|f| *f != BigInt::from(1));
    let mut free = 0;
    normalize(&mut free, factors)
}

fn normalize(free: &mut usize, factors: Vec<BigInt>) -> FgAb {
    FgAb::from_invariants(*free, &factors).expect("factors are positive")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> FgAb {
        s.parse().unwrap()
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_group(&lit("1;"), &lit("0;6")).literal(), "0;6");
        assert_eq!(hom_group(&lit("0;4"), &lit("1;")).literal(), "0;");
        assert_eq!(hom_group(&lit("0;4"), &lit("0;6")).literal(), "0;2");
        assert_eq!(hom_group(&lit("2;"), &lit("1;3")).literal(), "2;3,3");
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext1(&lit("3;"), &lit("1;5")).literal(), "0;");
        assert_eq!(ext1(&lit("0;4"), &lit("0;6")).literal(), "0;2");
        assert_eq!(ext1(&lit("0;7"), &lit("1;")).literal(), "0;7");
        assert_eq!(ext1(&lit("1;2"), &lit("1;")).literal(), "0;2");
    }
}
