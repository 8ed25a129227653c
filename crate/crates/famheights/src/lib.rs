//! Exact canonical heights for families of polarized endomorphisms of
//! projective space, over ℚ and over the rational function field ℚ(t).
//!
//! The crate has three layers:
//! - exact algebra: rationals, ℚ[t], sparse multivariate polynomials
//!   ([`ring`], [`upoly`], [`mpoly`], [`parse`]);
//! - elimination: Sylvester/Macaulay resultants, divisor pushforward and
//!   Nullstellensatz certificates ([`resultant`], [`pushforward`],
//!   [`certificate`], with the geometric types in [`morphism`] and
//!   [`cycle`]);
//! - heights and experiments: canonical heights of points and hypersurface
//!   cycles over ℚ ([`heights`]) and over ℚ(t) ([`family`]), and the
//!   parameter-sampling experiment lab ([`lab`]).

pub mod error;
pub mod ring;
pub mod upoly;
pub mod mpoly;
pub mod parse;
pub mod resultant;
pub mod morphism;
pub mod cycle;
pub mod pushforward;
pub mod certificate;
pub mod heights;
pub mod family;

pub use error::Error;
pub use ring::{BigRat, Ring};
pub use upoly::{TPoly, UPoly};
pub use mpoly::{
    compose_forms, evaluate_forms, normalize_primitive, Mono, MultiPoly, PrimitiveForm,
};
