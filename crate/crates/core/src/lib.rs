//! Exact-arithmetic models of almost toric base diagrams.
//!
//! A disk base is stored as a cyclic defining set: primitive inward edge
//! normals together with corner decorations (smooth vertices, or nodes with
//! an eigenvector, a multiplicity and a slide parameter). The crate provides
//!
//! - the monodromy arithmetic behind the decorations ([`lattice`]),
//! - validation and canonical forms for bases ([`base`]),
//! - the base surgeries: branch moves, nodal trades and slides, almost toric
//!   and toric blow-ups and blow-downs, Hurwitz moves ([`moves`]),
//! - normalization of any disk base to a Delzant fan and its toric minimal
//!   model ([`normalize`]),
//! - classification of the total space up to diffeomorphism ([`classify`]),
//! - turning-angle accounting for factorization words ([`turning`]),
//! - a line-oriented text format and SVG rendering ([`io`]).
//!
//! All combinatorial arithmetic is arbitrary-precision and exact; floating
//! point appears only in [`turning`], fed from exact integer cross and dot
//! products.

pub mod base;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod io;
pub mod lattice;
pub mod moves;
pub mod normalize;
pub mod turning;

pub use base::{Base, Corner, DiskBase, Edge, FactorizationWord, NonDiskBase, Topology};
pub use classify::{classify, ClassificationResult, SurgerySpec};
pub use error::{
    BaseError, ClassifyError, LatticeError, MoveError, NormalizeError, ParseError, RenderError,
    TurningError, ValidationReport,
};
pub use lattice::{cross, dot, LatticeVector, ParabolicMonodromy, UnimodularMatrix};
pub use moves::{MoveDirection, MoveKind, MoveRecord, TradeDirection};
