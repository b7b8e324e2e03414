pub mod critical;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod mclass;
pub mod reproduce;
pub mod structure;
pub mod transforms;
pub mod wheel;

pub use error::{Error, Result};
pub use graph::{make_graph, Family, GeneralizedGraph, Graph};
pub use linalg::IntMatrix;
pub use structure::{ArithStructure, StructureSet};
