//! Proof labeling schemes on labeled graphs.

pub mod bits;
pub mod certify;
pub mod cli;
pub mod error;
pub mod gadget;
pub mod graph;
pub mod lowerbound;
pub mod paths;
pub mod reduction;
pub mod report;
pub mod schemes;

pub use bits::BitString;
pub use certify::{Certificates, Scheme, SchemeRef};
pub use error::{Error, Result};
pub use graph::{Graph, LocalView, VertexId};
