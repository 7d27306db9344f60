//! Set-valued integration on finite rings.
//!
//! For a derivation `d` of a ring `R`, the `d`-integral of `x` is the set
//! `i_d(x) = {y ∈ R : d(y) = x}`, either empty or a coset of `Ker(d)`. This
//! crate builds finite rings from declarative specs, enumerates their
//! (Jordan) derivations, computes integrals and exhaustively checks the
//! algebraic identities integrals satisfy.

pub mod error;
pub mod integral;
pub mod maps;
pub mod ring;
pub mod set;
pub mod theorems;

pub use error::{Error, Result};
pub use integral::{Integral, Integrator};
pub use maps::{AdditiveMap, MapDescriptor};
pub use ring::{Elem, FiniteRing, RingSpec};
pub use set::{set_add, set_mul, ElementSet};
pub use theorems::{run_suite, Checker, SuiteConfig, SuiteReport, TheoremReport};
