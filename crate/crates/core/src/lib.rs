//! Exact-integer augmented directed complexes.
//!
//! Based complexes with their tensor, join, suspension and duality operations,
//! colimits by exact elimination, Steiner basis analysis, cell tables, and the
//! chain-level retractions of cubes and Θ-objects onto orientals.

pub mod cells;
pub mod chain;
pub mod colimit;
pub mod complex;
pub mod decomposition;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod map;
pub mod name;
pub mod ops;
pub mod random;
pub mod report;
pub mod retraction;
pub mod shapes;
pub mod steiner;
pub mod suite;

pub use chain::Chain;
pub use colimit::{coequalizer, pushout, PushoutResult};
pub use complex::{
    direct_sum, equal_presentation, graded_counts, tagged_sum, truncate_top, validate_complex, BasedComplex,
    ComplexBuilder,
};
pub use error::{AdcError, Result};
pub use map::{compose, identity_map, validate_map, verify_mutually_inverse, ComplexMap, Iso};
pub use name::GeneratorName;
pub use report::{Check, CheckReport, Status};
pub use cells::{compose_tables, identity_table, source, target, validate_table, CellTable};
pub use steiner::{atom_table, is_steiner, is_strongly_loopfree, pos_neg_parts, preorder, unitality_check, PreorderRelation};
pub use decomposition::{boundary_decomposition_check, top_cell_decomposition_check, Family};
