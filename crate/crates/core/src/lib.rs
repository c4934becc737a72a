//! Exact computation of the twists of a non-hyperelliptic curve from its
//! canonical model and automorphism group.
//!
//! The pipeline is: verify the automorphism group against the canonical
//! ideal ([`grouplab`], [`polyring`]), enumerate the pairs (G, H) of the
//! twisting group and count their solutions, solve the embedding problems
//! ([`embedkit`]), then descend the differentials along each cocycle and
//! substitute into the canonical ideal ([`twistcore`]).

pub mod embedkit;
pub mod error;
pub mod exactfield;
pub mod grouplab;
pub mod linalg;
pub mod polyring;
pub mod twistcore;

pub use error::{Error, Result};
pub use exactfield::{CycNum, ExtGaloisElement, GaloisUnit, RadFieldSpec, RadNum, RadicalSlot, RatFunc, Rational};
