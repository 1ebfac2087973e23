//! Unit groups modelled as a symbolic divisible part times a finitely
//! generated lattice.
//!
//! Elements of the divisible summand are never materialized: every power
//! equation is solvable there, so a [`Unit`] only records its lattice
//! coordinates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::abgroup::{ext1, Elem, FgAb, IntMatrix, LinearSystem};
use crate::error::{Error, Result};

/// A unit, stored multiplicatively as a lattice element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit(Elem);

impl Unit {
    pub fn from_elem(e: Elem) -> Self {
        Unit(e)
    }

    pub fn elem(&self) -> &Elem {
        &self.0
    }

    pub fn coords(&self) -> &[BigInt] {
        self.0.coords()
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroup {
    divisible: bool,
    lattice: FgAb,
}

impl UnitGroup {
    pub fn new(divisible: bool, lattice: FgAb) -> Self {
        UnitGroup { divisible, lattice }
    }

    /// `k*` for an algebraically closed field.
    pub fn divisible_only() -> Self {
        UnitGroup::new(true, FgAb::trivial())
    }

    /// `k* × t^Z`, the units of a Laurent polynomial ring over an
    /// algebraically closed field.
    pub fn laurent() -> Self {
        UnitGroup::new(true, FgAb::free(1))
    }

    /// `F_q*`, cyclic of order `q - 1`.
    pub fn finite_field(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Precondition(format!("no field with {q} elements")));
        }
        Ok(UnitGroup::new(false, FgAb::cyclic(q - 1)))
    }

    pub fn has_divisible_part(&self) -> bool {
        self.divisible
    }

    pub fn lattice(&self) -> &FgAb {
        &self.lattice
    }

    /// `div`, `div*<group>` or `<group>`.
    pub fn literal(&self) -> String {
        match (self.divisible, self.lattice.is_trivial()) {
            (true, true) => "div".to_string(),
            (true, false) => format!("div*{}", self.lattice.literal()),
            (false, _) => self.lattice.literal(),
        }
    }

    pub fn one(&self) -> Unit {
        Unit(self.lattice.zero())
    }

    pub fn is_one(&self, x: &Unit) -> bool {
        self.lattice.is_zero(&x.0)
    }

    pub fn mul(&self, a: &Unit, b: &Unit) -> Unit {
        Unit(self.lattice.add(&a.0, &b.0))
    }

    pub fn inv(&self, a: &Unit) -> Unit {
        Unit(self.lattice.neg(&a.0))
    }

    /// `a / b`
    pub fn div(&self, a: &Unit, b: &Unit) -> Unit {
        Unit(self.lattice.sub(&a.0, &b.0))
    }

    pub fn pow(&self, a: &Unit, k: &BigInt) -> Unit {
        Unit(self.lattice.scale(k, &a.0))
    }

    /// A unit from lattice coordinates, reduced.
    pub fn unit(&self, coords: Vec<BigInt>) -> Result<Unit> {
        self.lattice.reduce(coords).map(Unit)
    }

    pub fn unit_i64(&self, coords: &[i64]) -> Result<Unit> {
        self.lattice.elem(coords).map(Unit)
    }

    /// `U / U^d`, which is `lattice / d·lattice`; the divisible part
    /// contributes nothing.
    pub fn power_cosets(&self, d: &BigInt) -> Result<FgAb> {
        check_exponent(d)?;
        Ok(self.lattice.mod_multiples(d)?.0)
    }

    /// A `d`-th root of `x` when one exists.
    pub fn is_dth_power(&self, x: &Unit, d: &BigInt) -> Result<Option<Unit>> {
        check_exponent(d)?;
        let n = self.lattice.num_generators();
        let system = IntMatrix::identity(n)
            .scale(d)
            .hstack(self.lattice.relations())?;
        let rhs = self.lattice.to_generators(&x.0);
        Ok(LinearSystem::new(&system).solve(&rhs).map(|sol| {
            Unit(
                self.lattice
                    .from_generators(&sol[..n])
                    .expect("solution has one entry per generator"),
            )
        }))
    }
}

fn check_exponent(d: &BigInt) -> Result<()> {
    if d.is_zero() || d.is_negative() {
        return Err(Error::Precondition(format!(
            "exponent must be a positive integer, got {d}"
        )));
    }
    Ok(())
}

/// `Ext¹(g, U) = Ext¹(g, lattice)`: the divisible summand is injective.
pub fn ext1_units(g: &FgAb, u: &UnitGroup) -> FgAb {
    ext1(g, &u.lattice)
}

impl fmt::Display for UnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl FromStr for UnitGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "div" {
            return Ok(UnitGroup::divisible_only());
        }
        if let Some(rest) = s.strip_prefix("div*") {
            return Ok(UnitGroup::new(true, rest.parse()?));
        }
        Ok(UnitGroup::new(false, s.parse()?))
    }
}
