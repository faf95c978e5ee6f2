//! Variational geometry of disjunctive sets.

pub mod calculus;
pub mod set;

pub use calculus::{
    arrangement_cells, cone_product, cone_union, directional_limiting_normal_cone, enumerate_face_patterns,
    limiting_normal_cone, pattern_normal_cone, regular_normal_cone, tangent_cone, tangent_set,
    Cell, ConeUnion, FacePattern,
};
pub use set::{product_set, Block, DisjunctiveSet, HPoly, Interval, Row};
