//! Exact evaluation of Selberg character sums over F_q[x].
//!
//! All sum values live in the cyclotomic integer ring Z[ζ_N] with
//! N = p(q - 1) and are compared by exact equality. Brute-force enumeration
//! over monic polynomials is the reference every closed form is checked
//! against.

pub mod aevw;
pub mod chars;
pub mod context;
pub mod cyclo;
pub mod error;
pub mod ff;
pub mod poly;
pub mod selberg;
pub mod series;
pub mod verify;
pub mod sums;

pub use aevw::{AevwParams, Branch, SeriesReading};
pub use chars::{char_decompose, char_subgroup_log, CharTriple, MulCharacter};
pub use context::GaussContext;
pub use cyclo::{CycFrac, CycInt, CycRing};
pub use error::{Error, Result};
pub use ff::{Field, FieldElement};
pub use poly::{FactoredPoly, Poly, RationalFunc};
pub use selberg::{PoleRule, SelbergParams, SelbergResult, SumCase, SymbolProfile, Weighting};
pub use series::{PowerSeriesWindow, RationalFn};
