//! Tanner graphs, the quasi-cyclic Tanner array construction, alist I/O and
//! the index symmetries of Tanner array codes.

mod alist;
mod gf2;
mod graph;
mod qc;

pub use alist::{parse_alist, serialize_alist, AlistError};
pub use graph::{GraphError, TannerGraph};
pub use qc::{
    build_tanner_155, multiplicative_order, smallest_of_order, QcDescriptor, QcError, SymmetryGroup, TransformKind,
    VarTransform,
};

