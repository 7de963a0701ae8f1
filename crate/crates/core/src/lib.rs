//! Conformal maps of circular-arc polygon domains onto the unit disk by the
//! boundary integral equation with the generalized Neumann kernel, and the
//! moduli of quadrilaterals computed from them.
//!
//! ```
//! use arcmap::{domains, modulus::interior_modulus};
//!
//! let square = domains::builtin("square").unwrap();
//! let m = interior_modulus(&square.spec(128).unwrap()).unwrap();
//! assert!((m - 1.0).abs() < 1e-10);
//! ```

pub mod diskmap;
pub mod domains;
pub mod error;
pub mod geometry;
pub mod grading;
pub mod kernel;
pub mod modulus;
pub mod numerics;
pub mod specfun;

pub use diskmap::{map_to_disk, DiskMap};
pub use error::{Error, Result};
pub use geometry::{side_point, ArcPolygon, BoundaryDiscretization, Orientation, PolygonJson};
pub use grading::GradingParams;
pub use kernel::{solve_bie, BieSolution, DomainKind, KernelSystem, MatvecStrategy, SolverOptions};
pub use modulus::{exterior_modulus, interior_modulus, reciprocal_error, MarkedPoint, QuadrilateralSpec};
