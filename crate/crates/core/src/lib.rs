//! Continuous-time quantum walk simulation of 1D lattice Dirac dynamics.
//!
//! A two-component spinor on a periodic `N`-site lattice is advanced by a
//! split step: a momentum-space phase on each component, with a fractional
//! power `δt` of the lattice shift, and a mass-dependent coin rotation. At
//! `δt = 1` the walk is the Dirac cellular automaton; fractional `δt`
//! widens the hopping range.
//!
//! Modules:
//! - [`state`]: spinor field layout and initial conditions
//! - [`momentum`]: unitary DFT, phase diagonals, exact per-mode propagator
//! - [`evolution`]: step operator, cellular-automaton step, trajectories, splitting error
//! - [`amplitudes`]: closed-form hopping amplitudes and their limits
//! - [`observables`]: reduced density matrices, entropy, velocity, oscillation metrics
//! - [`circuit`]: gate-level step circuit, statevector simulator, QASM export
//! - [`verify`]: self-check suite over the invariants above

pub mod amplitudes;
pub mod circuit;
pub mod error;
pub mod evolution;
pub mod momentum;
pub mod observables;
pub mod state;
pub mod verify;

pub use error::{Result, WalkError};
pub use evolution::{dca_step, evolve, step, StepOperator, WalkParams, Walker};
pub use momentum::PhaseSign;
pub use state::{init_state, InitialCondition, PositionProfile, Spin, SpinorField};
