//! Direct products of graphs: construction, exact edge connectivity, the
//! closed-form connectivity for dense second factors, and the structure of
//! minimum edge cuts.

pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod iso;
pub mod mincut;
pub mod product;
pub mod theorems;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeCut, Graph, GraphFamily};
pub use graph6::{emit_graph6, parse_graph6};
pub use product::{direct_product, ProductLayout, ProductVertex};
