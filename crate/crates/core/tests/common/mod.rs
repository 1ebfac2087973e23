//! Small brute-force models of finite abelian groups used as test oracles.
//! Nothing here calls into the library's algorithms.

#![allow(dead_code)]

use coxring::{Elem, FgAb, UnitGroup};
use num_bigint::BigInt;

/// `Z/m_1 ⊕ … ⊕ Z/m_k` with elements numbered in mixed radix (last
/// coordinate fastest).
#[derive(Clone, Debug)]
pub struct Fin {
    pub mods: Vec<u32>,
    pub n: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
}

impl Fin {
    pub fn new(mods: &[u32]) -> Self {
        let n = mods.iter().map(|&m| m as usize).product();
        let mut g = Fin {
            mods: mods.to_vec(),
            n,
            add: vec![0; n * n],
            neg: vec![0; n],
        };
        for a in 0..n {
            let ca = g.coords(a);
            for b in 0..n {
                let cb = g.coords(b);
                let s: Vec<u32> = (0..mods.len()).map(|i| (ca[i] + cb[i]) % mods[i]).collect();
                g.add[a * n + b] = g.index(&s) as u16;
            }
            let m: Vec<u32> = (0..mods.len()).map(|i| (mods[i] - ca[i]) % mods[i]).collect();
            g.neg[a] = g.index(&m) as u16;
        }
        g
    }

    pub fn coords(&self, mut i: usize) -> Vec<u32> {
        let mut c = vec![0; self.mods.len()];
        for k in (0..self.mods.len()).rev() {
            let m = self.mods[k] as usize;
            c[k] = (i % m) as u32;
            i /= m;
        }
        c
    }

    pub fn index(&self, c: &[u32]) -> usize {
        c.iter()
            .zip(&self.mods)
            .fold(0, |acc, (&x, &m)| acc * m as usize + (x % m) as usize)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn scale(&self, k: i64, a: usize) -> usize {
        let base = if k < 0 { self.neg(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.add(acc, base))
    }

    /// The standard generators `e_i`.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.mods.len())
            .map(|i| {
                let mut c = vec![0; self.mods.len()];
                c[i] = 1;
                self.index(&c)
            })
            .collect()
    }

    pub fn exponent(&self) -> u32 {
        self.mods.iter().fold(1, |a, &b| lcm(a, b))
    }

    /// `|{x : kx = 0}|`.
    pub fn torsion_count(&self, k: u32) -> u64 {
        (0..self.n).filter(|&x| self.scale(k as i64, x) == 0).count() as u64
    }

    /// The same group in the library, with matching generator coordinates.
    pub fn to_lib(&self) -> FgAb {
        FgAb::finite(&self.mods.iter().map(|&m| m as u64).collect::<Vec<_>>())
    }

    pub fn to_lib_elem(&self, g: &FgAb, i: usize) -> Elem {
        let c: Vec<BigInt> = self.coords(i).into_iter().map(BigInt::from).collect();
        g.from_generators(&c).unwrap()
    }
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// Invariant-factor lists `d_1 | d_2 | …` (each `> 1`) of every abelian
/// group of order at most `max`.
pub fn groups_up_to(max: u32) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, order: u32, max: u32, out: &mut Vec<Vec<u32>>) {
        out.push(prefix.clone());
        let last = prefix.last().copied().unwrap_or(1);
        let mut d = if last == 1 { 2 } else { last };
        while order * d <= max {
            if d % last == 0 {
                prefix.push(d);
                go(prefix, order * d, max, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max, &mut out);
    out
}

pub fn unit_lattice(mods: &[u32]) -> UnitGroup {
    UnitGroup::new(false, Fin::new(mods).to_lib())
}

/// `|Hom(g, a)|` by trying every image of the generators.
pub fn count_homs(g: &Fin, a: &Fin) -> u64 {
    g.mods
        .iter()
        .map(|&d| a.torsion_count(d))
        .product()
}

/// Hom(g, a) as an explicit set of generator-image tuples.
pub fn all_homs(g: &Fin, a: &Fin) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in &g.mods {
        let killed: Vec<usize> = (0..a.n).filter(|&x| a.scale(d as i64, x) == 0).collect();
        out = out
            .into_iter()
            .flat_map(|p| {
                killed.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Equations of the symmetric normalized 2-cocycle condition in terms of
/// unknowns `ξ{a,b}` for nonzero `a ≤ b`.
pub struct CocycleSystem {
    pub num_unknowns: usize,
    pub pair: Vec<Option<usize>>,
    /// Per unknown: the equations whose largest unknown it is.
    attached: Vec<Vec<Equation>>,
}

/// `top·ξ_level + Σ rest = 0`; at most four entries, so at most three besides the top.
#[derive(Clone, Copy)]
struct Equation {
    top: i64,
    rest: [(usize, i64); 3],
    len: usize,
}

/// `c·x` in `u` for `|c| ≤ MAX_COEFF`, tabulated.
struct Multiples {
    n: usize,
    table: Vec<usize>,
}

const MAX_COEFF: i64 = 4;

impl Multiples {
    fn new(u: &Fin) -> Self {
        let mut table = Vec::with_capacity((2 * MAX_COEFF as usize + 1) * u.n);
        for c in -MAX_COEFF..=MAX_COEFF {
            table.extend((0..u.n).map(|x| u.scale(c, x)));
        }
        Multiples { n: u.n, table }
    }

    #[inline]
    fn get(&self, c: i64, x: usize) -> usize {
        self.table[(c + MAX_COEFF) as usize * self.n + x]
    }
}

impl CocycleSystem {
    pub fn new(g: &Fin) -> Self {
        let n = g.n;
        let mut pair = vec![None; n * n];
        let mut k = 0;
        for a in 1..n {
            for b in a..n {
                pair[a * n + b] = Some(k);
                pair[b * n + a] = Some(k);
                k += 1;
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut attached = vec![Vec::new(); k];
        for a in 1..n {
            for b in 1..n {
                for c in 1..n {
                    let mut terms: Vec<(usize, i64)> = Vec::new();
                    let mut push = |x: usize, y: usize, s: i64| {
                        if let Some(u) = pair[x * n + y] {
                            terms.push((u, s));
                        }
                    };
                    push(a, b, 1);
                    push(g.add(a, b), c, 1);
                    push(b, c, -1);
                    push(a, g.add(b, c), -1);
                    terms.sort();
                    let mut merged: Vec<(usize, i64)> = Vec::new();
                    for (u, s) in terms {
                        match merged.last_mut() {
                            Some(last) if last.0 == u => last.1 += s,
                            _ => merged.push((u, s)),
                        }
                    }
                    merged.retain(|t| t.1 != 0);
                    if merged.is_empty() {
                        continue;
                    }
                    let sign = merged[0].1.signum();
                    let key: Vec<(usize, i64)> =
                        merged.iter().map(|&(u, s)| (u, s * sign)).collect();
                    if seen.insert(key.clone()) {
                        let top = key.iter().map(|t| t.0).max().unwrap();
                        // the top unknown first, so its coefficient is at hand
                        let mut eq = key;
                        eq.sort_by_key(|t| std::cmp::Reverse(t.0));
                        let mut rest = [(0, 0); 3];
                        rest[..eq.len() - 1].copy_from_slice(&eq[1..]);
                        attached[top].push(Equation {
                            top: eq[0].1,
                            rest,
                            len: eq.len() - 1,
                        });
                    }
                }
            }
        }
        // equations with a unit coefficient on their top unknown go first
        for eqs in &mut attached {
            eqs.sort_by_key(|eq| eq.top.abs() != 1);
        }
        CocycleSystem {
            num_unknowns: k,
            pair,
            attached,
        }
    }

    /// Calls `visit` on every solution with values in `u`.
    pub fn for_each_solution(&self, u: &Fin, mut visit: impl FnMut(&[usize])) {
        let mut vals = vec![0usize; self.num_unknowns];
        let mult = Multiples::new(u);
        self.descend(u, &mult, 0, &mut vals, &mut visit);
    }

    pub fn count_solutions(&self, u: &Fin) -> u64 {
        let mut count = 0u64;
        self.for_each_solution(u, |_| count += 1);
        count
    }

    fn descend(
        &self,
        u: &Fin,
        mult: &Multiples,
        level: usize,
        vals: &mut [usize],
        visit: &mut impl FnMut(&[usize]),
    ) {
        if level == self.num_unknowns {
            visit(vals);
            return;
        }
        let eqs = &self.attached[level];
        let rest = |eq: &Equation, vals: &[usize]| {
            eq.rest[..eq.len]
                .iter()
                .fold(0, |acc, &(v, s)| u.add(acc, mult.get(s, vals[v])))
        };
        let holds = |vals: &[usize], skip: usize| {
            eqs[skip..]
                .iter()
                .all(|eq| u.add(mult.get(eq.top, vals[level]), rest(eq, vals)) == 0)
        };
        match eqs.first() {
            Some(eq) if eq.top.abs() == 1 => {
                // c·x + r = 0 with c = ±1 forces x = −c·r
                vals[level] = mult.get(-eq.top, rest(eq, vals));
                if holds(vals, 1) {
                    self.descend(u, mult, level + 1, vals, visit);
                }
            }
            _ => {
                for x in 0..u.n {
                    vals[level] = x;
                    if holds(vals, 0) {
                        self.descend(u, mult, level + 1, vals, visit);
                    }
                }
            }
        }
    }
}

/// Number of symmetric normalized cocycles modulo coboundaries, as
/// `|Z²| · |Hom| / |C¹|`.
pub fn brute_force_class_count(g: &Fin, u: &Fin) -> u64 {
    let z = CocycleSystem::new(g).count_solutions(u) as u128;
    let hom = count_homs(g, u) as u128;
    let cochains = (u.n as u128).pow(g.n as u32 - 1);
    assert_eq!((z * hom) % cochains, 0, "orbit count is not integral");
    (z * hom / cochains) as u64
}

/// Whether every `Z/e`-valued symmetric cocycle on `g`, pushed into `Z/e²`
/// by `x ↦ e·x`, is a coboundary there (`e` the exponent of `g`). This
/// witnesses `Ext¹(g, Q/Z) = 0` on the finite stage that contains all
/// classes.
pub fn cocycles_split_in_divisible_hull(g: &Fin) -> bool {
    let e = g.exponent();
    let small = Fin::new(&[e]);
    let big = Fin::new(&[e * e]);
    let sys = CocycleSystem::new(g);
    let gens = g.generators();
    // μ is built outward from the generators: x = y + e_i with y < x
    let steps: Vec<(usize, usize, usize)> = (1..g.n)
        .map(|x| {
            let c = g.coords(x);
            let i = (0..c.len()).rev().find(|&i| c[i] > 0).unwrap();
            let y = g.add(x, g.neg(gens[i]));
            (x, y, i)
        })
        .collect();
    let mut all = true;
    sys.for_each_solution(&small, |xi| {
        if !all {
            return;
        }
        let lifted_table: Vec<usize> = sys
            .pair
            .iter()
            .map(|p| p.map_or(0, |k| (xi[k] as u32 * e) as usize))
            .collect();
        let lifted = |a: usize, b: usize| lifted_table[a * g.n + b];
        let mut mu = vec![0usize; g.n];
        let mut found = false;
        let choices = (big.n as u64).pow(gens.len() as u32);
        'search: for code in 0..choices {
            let mut c = code;
            let mut on_gens = vec![0usize; gens.len()];
            for v in on_gens.iter_mut() {
                *v = (c % big.n as u64) as usize;
                c /= big.n as u64;
            }
            mu[0] = 0;
            for &(x, y, i) in &steps {
                // δμ(y, e_i) = μ(y) + μ(e_i) − μ(x)
                mu[x] = big.add(big.add(mu[y], on_gens[i]), big.neg(lifted(y, gens[i])));
            }
            // pairs that wrap around fail first, so they are checked first
            for a in (1..g.n).rev() {
                for b in (a..g.n).rev() {
                    let d = big.add(big.add(mu[a], mu[b]), big.neg(mu[g.add(a, b)]));
                    if d != lifted(a, b) {
                        continue 'search;
                    }
                }
            }
            found = true;
            break;
        }
        all &= found;
    });
    all
}

/// `|{c ∈ A^k / ⊕ d_i A : m·c = 0}|` for `g = ⊕ Z/d_i`, the torsion profile
/// of `⊕ A/d_i A`.
pub fn ext_torsion_count(g: &Fin, a: &Fin, m: u32) -> u64 {
    g.mods
        .iter()
        .map(|&d| {
            let sub: std::collections::BTreeSet<usize> =
                (0..a.n).map(|x| a.scale(d as i64, x)).collect();
            // cosets y + dA with m·y ∈ dA, counted through representatives
            let good = (0..a.n).filter(|&y| sub.contains(&a.scale(m as i64, y))).count();
            (good / sub.len()) as u64
        })
        .product()
}

/// `|{φ ∈ Hom(g, a) : m·φ = 0}|`.
pub fn hom_torsion_count(g: &Fin, a: &Fin, m: u32) -> u64 {
    all_homs(g, a)
        .iter()
        .filter(|imgs| imgs.iter().all(|&x| a.scale(m as i64, x) == 0))
        .count() as u64
}

/// All divisors of `n`.
pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Determinant of a small integer matrix by fraction-free elimination.
pub fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i128(b, a % b)
    }
}

/// Invariant factors from determinantal divisors: `d_k = D_k / D_{k−1}`
/// with `D_k` the gcd of all `k × k` minors.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    use itertools::Itertools;
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut dk = 0i128;
        for rs in (0..rows).combinations(k) {
            for cs in (0..cols).combinations(k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                    .collect();
                dk = gcd_i128(dk, det_i128(&sub));
            }
        }
        if dk == 0 {
            break;
        }
        out.push(dk / prev);
        prev = dk;
    }
    out
}
