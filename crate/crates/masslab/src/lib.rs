//! masslab: a numerical laboratory for mass-constrained variational
//! problems.
//!
//! The crate computes the positive radial ground state Q of the critical
//! scalar field equation -Delta Q + Q = |Q|^(4/N) Q, the sharp mass
//! threshold c* = |Q|_2^2, and uses them to certify the behaviour of four
//! constrained energy functionals on the L2 sphere S(c) = { |u|_2^2 = c }:
//!
//! * the Schrodinger-Poisson energy (kinetic + Coulomb repulsion -
//!   critical focusing),
//! * the same energy with a confining external potential,
//! * the free critical Schrodinger energy, and
//! * the critical Schrodinger energy with an attractive decaying potential.
//!
//! Capabilities: radial quadrature and calculus ([`grid`]), the Coulomb
//! potential and Hartree energy ([`hartree`]), energies, gradients and
//! sharp-constant diagnostics ([`functionals`]), ground-state solvers and
//! identity certification ([`groundstate`]), the explicit witness families
//! behind the threshold classification ([`families`]), a weighted Dirichlet
//! eigenvalue solver ([`eigen`]), normalized gradient flow on the mass
//! sphere ([`minimize`]), curve-level certifications ([`analysis`]), and a
//! command-line front end ([`cli`]).

pub mod analysis;
pub mod certify;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod families;
pub mod functionals;
pub mod grid;
pub mod groundstate;
pub mod hartree;
pub mod io;
pub mod minimize;
pub mod rng;

pub use error::{MasslabError, Result};
pub use grid::{Field, RadialGrid};
