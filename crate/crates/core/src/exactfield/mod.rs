//! Exact arithmetic: rationals, cyclotomic fields Q(ζ_N), rational
//! functions in the Kummer parameters, and radical towers over Q(ζ_N).

pub mod cyclotomic;
pub mod radical;
pub mod ratfunc;
pub mod rational;

pub use cyclotomic::{euler_phi, CycNum, GaloisUnit};
pub use radical::{ExtGaloisElement, RadFieldSpec, RadNum, RadicalSlot};
pub use ratfunc::{RatFunc, SymPoly};
pub use rational::Rational;
