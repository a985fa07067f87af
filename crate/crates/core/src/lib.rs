//! Exact and arbitrary-precision calculus of Fibonacci divisors.
//!
//! The crate is organized around the Golden ratio field Q(√5) and the integer
//! sequences F_n^(k) = F_nk/F_k (Fibonacci divisors). On top of those it builds
//! the k-th Golden derivative and its polynomial calculus, exponential identity
//! batteries, the deformed quantum-oscillator hierarchy, exact qubit states with
//! Golden-ratio amplitudes, and self-similar vortex image flows.

pub mod error;
pub mod goldenfield;
pub mod hydroimages;
pub mod numeric;
pub mod oscillator;
pub mod qcalculus;
pub mod quantumapps;
pub mod sequences;
pub mod series;

pub use error::{Error, Result};
