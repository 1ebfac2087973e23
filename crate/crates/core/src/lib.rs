//! Exact computations for Cox rings of families of line bundles graded by a
//! finitely generated abelian group.
//!
//! ```
//! use coxring::families::{classify, find_isomorphism};
//! use coxring::{FgAb, UnitGroup};
//!
//! let g: FgAb = "0;4".parse()?;
//! let u: UnitGroup = "div*1;".parse()?;
//! let report = classify(&g, &u)?;
//! assert_eq!(report.count(), 4);
//! assert!(find_isomorphism(&report.representatives[0], &report.representatives[1])?.is_none());
//! # Ok::<(), coxring::Error>(())
//! ```

pub mod abgroup;
pub mod error;
pub mod families;
pub mod formats;
pub mod toricdiv;
pub mod units;

pub use abgroup::{AbHom, Elem, FgAb, FreeResolution, IntMatrix};
pub use error::{Error, Result};
pub use families::{FamilyIso, GFamily};
pub use units::{ext1_units, Unit, UnitGroup};
pub use toricdiv::{CharacterFunction, DivisorialPresentation, ToricPresentation, WeilDivisor};
