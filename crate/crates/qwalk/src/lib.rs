//! Simulator and analysis toolkit for a space-inhomogeneous two-state
//! discrete-time quantum walk on the integer line.
//!
//! The walk is the Hadamard walk everywhere except the origin, where a
//! one-parameter coin with phase ω acts. Its hallmark is localization: the
//! return probability at the origin converges to a positive constant c(ω)
//! whenever ω ≠ 0. The crate computes that story through several engines
//! that check each other:
//!
//! - [`evolution`]: exact state-vector iteration of the walk.
//! - [`path_oracle`]: exponential-time path-sum enumeration, the ground
//!   truth the fast engines are verified against.
//! - [`series`]: truncated formal power series with exact rational
//!   coefficients; generating functions for first-passage sums and the
//!   origin amplitudes.
//! - [`theory`]: closed-form constants — the localization limit c(ω), its
//!   distributional mean, and the large-time amplitude asymptotics.
//! - [`classical`]: the inhomogeneous classical random walk comparator,
//!   which never localizes.
//! - [`verify`]: the registered cross-engine invariant suite behind
//!   `qwalk verify`.

pub mod classical;
pub mod coin;
pub mod evolution;
pub mod mat2;
pub mod path_oracle;
pub mod series;
pub mod theory;
pub mod verify;

pub use coin::{CoinError, CoinField};
pub use evolution::{initial_state, run, step, WalkState};
