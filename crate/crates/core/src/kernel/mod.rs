//! Exact rational arithmetic, linear programming, polyhedral cones and sign
//! decisions for polynomial forms.

pub mod cone;
pub mod forms;
pub mod lp;
pub mod poly;
pub mod quadratic;
pub mod rational;

pub use cone::{
    canonical_vrep, cone_is_trivial, convex_in_union, dd_convert, irredundant, polar_h, polar_v,
    unions_equal, vrep_to_hrep, HCone, PolyCone, VCone, DD_DIMENSION_CAP,
};
pub use forms::{homogeneous_sign_decide, HomogeneousForm, SignDecision};
pub use lp::{strict_lp_feasible, LinearProgram, LpOutcome, Relation, StrictFeasibility};
pub use quadratic::{nsd_on_subspace, quad_form, Definiteness};
pub use rational::{QMat, QVec, Rational};
