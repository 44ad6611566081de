//! Graphs and polygonal cell complexes under the tensor product.

pub mod document;
pub mod error;
pub mod factorization;
pub mod fixtures;
pub mod graph_products;
pub mod blocks;
pub mod complex_products;
pub mod conjecture;
pub mod hom;
pub mod homsearch;
pub mod multigraph;
pub mod perm;
pub mod polycomplex;
pub mod random;
pub mod smith;
pub mod symmetry;
pub mod verify;
pub mod walk;

pub use error::{Error, Result};
pub use graph_products::{tensor_product, Factor, GraphProduct, ProductEdgeLabel};
pub use hom::GraphHom;
pub use multigraph::{Dart, EdgeId, MultiGraph, VertexId};
pub use polycomplex::{Complex, Corner, Face, FaceId, Flag};
pub use walk::{ClosedWalk, Direction, Traversal, Walk};
