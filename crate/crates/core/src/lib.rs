//! Runge–Kutta integration of singularly perturbed initial-value problems
//! on layer-adaptive meshes.
//!
//! The crate is organised bottom-up:
//!
//! - [`meshgen`] builds uniform and Shishkin meshes on `[0, 1]`.
//! - [`ivp`] defines problems `y' = f(x, y)`, optionally linear
//!   (`f = p(x) y + q(x)`) and optionally with a closed-form solution.
//! - [`tableaux`] holds Butcher tableaux and order-condition checks.
//! - [`steppers`] advances a solution across one mesh interval, and
//!   integrates over a whole mesh.
//! - [`convergence`] measures max-norm errors, Shishkin-adjusted orders,
//!   (ε × N) sweep tables and trajectory oscillation.
//!
//! ```
//! use shishkin_rk::prelude::*;
//!
//! let problem = Problem::builtin(BuiltinName::Layer1, 0.0625).unwrap();
//! let mesh = Mesh::shishkin(&ShishkinParams::new(1024, 0.0625)).unwrap();
//! let traj = integrate(SchemeName::Heun, &problem, &mesh).unwrap();
//! let err = max_error(&traj, &problem).unwrap();
//! assert!(err < 1e-4);
//! ```

// `!(a > b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convergence;
pub mod error;
pub mod ivp;
pub mod meshgen;
pub mod steppers;
pub mod tableaux;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::convergence::{
        max_error, oscillation_count, run_sweep, shishkin_order, ConvergenceTable, SweepCell,
    };
    pub use crate::error::{Error, Result};
    pub use crate::ivp::{BuiltinName, Problem};
    pub use crate::meshgen::{Mesh, MeshKind, MeshSettings, ShishkinParams};
    pub use crate::steppers::{explicit_rk_step, gauss2_linear_step, integrate, Trajectory};
    pub use crate::tableaux::{verify_order_conditions, ButcherTableau, SchemeName};
}
