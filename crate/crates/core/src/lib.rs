//! Entanglement entropy and coherence of dissipative quantum systems: the
//! damped free particle, the damped harmonic oscillator and the unbiased
//! spin-boson model, each checked against a brute-force reference.

pub mod bath;
pub mod error;
pub mod gaussian;
pub mod numerics;
pub mod oracle;
pub mod spin_boson;
pub mod sweep;

pub use bath::BathSpec;
pub use error::{Error, Result};
