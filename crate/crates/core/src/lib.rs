//! Finite orthogonality spaces: closure lattices, linearity conditions and
//! an isomorph-free census of small spaces.

pub mod cliques;
pub mod enumerate;
pub mod fixtures;
pub mod lattice;
pub mod metric;
pub mod properties;
pub mod space;
pub mod vertex_set;

pub use lattice::{ClosureLattice, LatticeError};
pub use metric::Distance;
pub use properties::{full_report, PropertyReport, Witness};
pub use space::{OrthoSpace, SpaceDescription, SpaceError};
pub use vertex_set::{VertexId, VertexSet, MAX_VERTICES};
