//! Boolean functions over GF(2^n): field arithmetic, truth tables, Walsh
//! spectra, and bent, semi-bent and five-valued constructions built from
//! cubic perturbations of quadratic and Maiorana-McFarland bent functions.

pub mod boolfun;
pub mod constructions;
pub mod error;
pub mod gf2n;
pub mod reproduce;
pub mod sweep;
pub mod walsh;

pub use boolfun::{Anf, BooleanFunction, Domain};
pub use constructions::{Construction, ConstructionKind, ConstructionReport, Inputs};
pub use error::{Error, Result};
pub use gf2n::{Elem, Field, FieldConfig};
pub use walsh::{fwht, ClassTag, Distribution, WalshSpectrum};
