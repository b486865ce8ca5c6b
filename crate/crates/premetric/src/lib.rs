//! Constant-coefficient pre-metric electrodynamics.
//!
//! Electrodynamics here is the pair of equations `dF = 0`, `dH = J` closed by a
//! local linear constitutive law `H = #F` with density components `χ^{abcd}`; no
//! spacetime metric is assumed. This crate implements the full pipeline on top of
//! such a background:
//!
//! * [`constitutive`] — constitutive densities χ (6×6 bivector storage), the κ↔χ
//!   conversion, Maxwell/uniaxial/dielectric presets and observer frames.
//! * [`symbol`] — pointwise symbol algebra: principal symbol 𝓜, adjugates, the
//!   Fresnel tensor 𝓖, the tensor 𝓠, gauge duals κ(k) and the quasi-inverse Ê.
//! * [`causal`] — hyperbolicity certification of 𝓖, hyperbolicity cones and their
//!   duals, causal membership, real-principal-type checks, bicharacteristic rays.
//! * [`lattice`] — periodic spatial torus × time window, complex lattice fields,
//!   spectral/finite-difference exterior calculus and the field operator `P = d#d`.
//! * [`propagator`] — per-mode retarded/advanced kernels of `𝓖(∂)`, gauge-fixing
//!   operators, the Green operators `E^Γ`, `D^Γ` and the Pauli–Jordan propagator.
//! * [`quantum`] — symplectic pairings σ and ς, energy blocks and the energy inner
//!   product, the quasi-free ground-state two-point kernel with CCR, positivity
//!   and positive-frequency (microlocal proxy) checks.
//! * [`io`], [`report`], [`cli`] — file formats, structured reports and the
//!   command-line front end.
//!
//! Run `cargo run -p premetric -- verify` for the end-to-end identity suite, or
//! see `examples/` for one runnable program per capability.

pub mod causal;
pub mod cli;
pub mod constitutive;
mod error;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod propagator;
pub mod quantum;
pub mod report;
pub mod symbol;

pub use error::{Error, Result};
