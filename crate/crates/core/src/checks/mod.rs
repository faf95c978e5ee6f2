//! Constraint qualification checks and their implication closure.

pub mod closure;
pub mod conditions;
pub mod ladder;
pub mod normality;
pub mod verdict;

pub use closure::{check_all, implications, CheckSummary};
pub use ladder::{first_certifying, LadderOutcome};
pub use normality::{
    check_foscms, check_gmfcq, check_hinted_simplified_pn, check_hinted_soscpn, check_pq_normality,
    check_pseudo_normality, check_soscms, check_soscpn, check_soscpqn, quasi_witness_at_regular_normals, require_admissible,
    CheckConfig,
};
pub use verdict::{Certificate, Condition, Status, Verdict, Witness};
