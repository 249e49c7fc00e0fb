//! Saturation numbers of clique-path joins `K_s ∨ P_k`.

pub mod cache;
pub mod canon;
pub mod constructors;
pub mod enumerate;
pub mod formulas;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod pattern;
pub mod saturation;
pub mod verify;

pub use canon::{canonical_key, is_isomorphic, CanonicalKey};
pub use error::{Error, Result};
pub use graph::{Diameter, Graph, VertexSet, MAX_ORDER};
pub use enumerate::{
    enumerate_graphs, enumerate_minimal_saturated, find_saturation_number, split_work, SearchResult, WorkChunk,
};
pub use formulas::FormulaValue;
pub use pattern::{contains_pattern, contains_pattern_oracle, has_path_of_order, PatternSpec, PatternWitness};
pub use saturation::{is_saturated, strip_conical, structural_check, SaturationVerdict, StructuralReport};
