//! Conjugate, polar and principal nets on the lattice Z^N.
//!
//! The crate is organised bottom-up: [`projective`] is the numerical kernel,
//! [`lattice`] the combinatorics of Z^N, [`conjugate`] the three conjugate net
//! types with their propagation systems, [`polar`] and [`principal`] the
//! reductions by a quadric, [`docs`] discrete orthogonal coordinate systems
//! and [`smooth`] the smooth reference computations. [`generate`], [`io`] and
//! [`cli`] drive everything from the command line.

pub mod cli;
pub mod conjugate;
pub mod docs;
pub mod error;
pub mod generate;
pub mod io;
pub mod lattice;
pub mod polar;
pub mod principal;
pub mod projective;
pub mod report;
pub mod smooth;

pub use error::{DocError, GeomError, SmoothError};
pub use lattice::{Block, Cell, CubeId, EdgeId, FaceId, VertexId};
pub use projective::{ProjPoint, ProjSubspace, Quadric, ToleranceConfig};
