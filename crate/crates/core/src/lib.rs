//! # infogeo
//!
//! Shannon-entropy geometry over discrete joint distributions.
//!
//! - [`dist`]: validated joint probability tensors, marginals, conditionals.
//! - [`entropy`]: joint/conditional entropy, mutual and co-information (bits).
//! - [`geometry`]: information distance, entropic area/volume/n-volume,
//!   simplex surface and reactivity.
//! - [`quantum`]: Born-rule outcome distributions of pure qubit states under
//!   local projective measurements, averaged over measurement settings.
//! - [`io`] and [`report`]: file schemas and JSON reports.
//!
//! ```
//! use infogeo::dist::{JointDistribution, VariableSubset};
//! use infogeo::geometry::n_volume;
//!
//! // Three independent fair bits: every leave-one-out entropy is 1 bit.
//! let d = JointDistribution::build([("A", 2), ("B", 2), ("C", 2)], vec![0.125; 8]).unwrap();
//! let area = n_volume(&d, &VariableSubset::full(3)).unwrap();
//! assert!((area - 3.0).abs() < 1e-12);
//! ```

#![forbid(unsafe_code)]

pub mod dist;
pub mod entropy;
pub mod error;
pub mod geometry;
pub mod io;
pub mod quantum;
pub mod report;
pub mod summation;

pub use dist::{JointDistribution, Variable, VariableSubset};
pub use error::{Error, ErrorKind, Result};
pub use geometry::{Reactivity, SurfaceMode};
pub use quantum::{MeasurementSetting, PureState};
pub use report::GeometryReport;
