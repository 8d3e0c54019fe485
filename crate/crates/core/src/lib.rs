//! MST3-style public-key encryption over generalized Suzuki 2-groups.
//!
//! The crate builds up from binary-field arithmetic ([`field`]) through the
//! twisted group law ([`group`]) and logarithmic signatures/covers
//! ([`logsig`]) to two complete encryption schemes: the hardened
//! three-component scheme ([`mst3`]) and the older center-restricted
//! two-component scheme ([`legacy`]), plus desk-scale key-recovery
//! experiments against both ([`attack`]). Text serialization for keys,
//! ciphertexts, and messages lives in [`keyfile`] and [`message`], and
//! [`worked_example`] carries a fixed reference configuration with bit-exact
//! check vectors.
//!
//! Everything here runs at deliberately small parameter sizes so that the
//! attacks are observable; none of it is hardened against side channels or
//! sized for real-world security.

pub mod attack;
pub mod error;
pub mod field;
pub mod group;
pub mod keyfile;
pub mod legacy;
pub mod logsig;
pub mod message;
pub mod mst3;
pub mod worked_example;

pub use error::{Error, Result};
