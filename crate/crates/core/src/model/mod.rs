//! Problem instances: smooth maps, multi-indices, prototype sets.

pub mod expr;
pub mod instance;
pub mod map;
pub mod multi_index;
pub mod poly;
pub mod prototypes;
pub mod taylor;

pub use expr::Expr;
pub use instance::{AnalyticSet, FeasibleOverride, Gamma, GmpInstance};
pub use map::{MapBody, SmoothMap};
pub use multi_index::{admissible_multi_indices, finest_admissible, is_admissible, refine, MultiIndex};
pub use poly::Poly;
pub use prototypes::{prototype_set, PrototypeKind};
pub use taylor::{Scalar, Taylor};
