//! Exact entanglement and entropy dynamics of two qubits coupled to a
//! common zero-temperature reservoir with a Lorentzian spectral density.
//!
//! The pair + reservoir problem admits closed-form Laplace-domain solutions
//! for every density-matrix element of the reduced two-qubit state when the
//! initial state has the X form. This crate encodes those solutions as
//! rational functions of the Laplace variable, inverts them exactly via
//! pole/residue expansion (with an independent contour-integration
//! cross-check), and layers entanglement/entropy measures and event
//! detection on top:
//!
//! * [`laplace`] — rational-function algebra, root finding, partial
//!   fractions, value theorems, numerical contour inversion.
//! * [`model`] — parameter and state types, initial-state families,
//!   collective (symmetric/antisymmetric) coordinates.
//! * [`solutions`] — the encoded Laplace-domain solutions, propagation of
//!   arbitrary X states through a superposition basis, trajectories,
//!   stationary states.
//! * [`measures`] — concurrence (X-form closed form and general-state
//!   reference), von Neumann entropy, literal closed-form entropy variants.
//! * [`analysis`] — separable-interval detection (sudden death / revival),
//!   extremum alignment between entropy and collective population,
//!   separability-point state classification, parameter sweeps.
//! * [`oracle`] — independent reference implementations (dense Hermitian
//!   eigensolver, concurrence from the spin-flip spectrum, seeded random
//!   state generation) used to audit the fast paths.
//!
//! Throughout, times are expressed in units of the spontaneous-decay scale
//! unless stated otherwise, and all tolerances live in [`tol`] with written
//! rationales.

pub mod analysis;
pub mod error;
pub mod laplace;
pub mod measures;
pub mod model;
pub mod oracle;
pub mod solutions;
pub mod tol;

pub use analysis::{EntanglementEvents, ExtremaReport, SweepAxis, SweepGrid};
pub use error::{Error, Result};
pub use model::{
    DensityMatrix4, InitialStateSpec, RadiantCoords, ReservoirParams, XState,
};
pub use solutions::{PropagatorColumns, PseudomodeSolution, Trajectory};
