//! Vertex and edge orbits of Fibonacci cubes and Lucas cubes.
//!
//! Every count is available two ways: as a closed form evaluated over exact
//! integers ([`formulas`]) and as a brute-force orbit enumeration on the
//! explicit graph ([`oracle`]). The [`verify`] suites cross-check the two.
//!
//! ```
//! use cube_orbits::formulas;
//!
//! let orbits = formulas::gamma_vertex_orbits(5).unwrap();
//! assert_eq!(orbits.total, 9.into());
//! ```

pub mod bijections;
pub mod cli;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod strings;
pub mod verify;

pub use error::{Error, Result};
pub use formulas::{ExactInt, SizeHistogram};
pub use strings::{CubeKind, CubeString, DihedralElement, PeriodDecomposition, Symmetry};
