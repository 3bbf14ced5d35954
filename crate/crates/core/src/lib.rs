//! k-matchings in graph products.
//!
//! Builds the Cartesian, strong, direct and lexicographic products, the
//! three constructions that lift factor k-matchings to a product, and exact
//! search oracles for the k-matching number used to check when those
//! constructions are optimal.

pub mod construct;
pub mod corpus;
pub mod descriptor;
pub mod error;
pub mod graph;
pub mod io;
pub mod iso;
pub mod matching;
pub mod product;
pub mod scenario;
pub mod search;
pub mod suite;
pub mod weak_hom;
pub mod well_behaved;

pub use construct::{ConditionTag, ConstructionKind, ConstructionResult, Orientation};
pub use error::{Error, Result};
pub use graph::{EdgeSet, Family, Graph, Label};
pub use matching::OracleReport;
pub use product::{product, ProductGraph, ProductKind, Side};
pub use well_behaved::{Verdict, WellBehavedReport};
