//! Exact frieze patterns over real cyclotomic fields ℚ(2cos(π/L)), built from
//! polygon dissections and checked against their Farey-graph paths.

pub mod dissection;
pub mod error;
pub mod farey;
pub mod frieze;
pub mod io;
pub mod polygon;
pub mod ring;

pub use dissection::{glue, phi, phi_minimal, quiddity_from_dissection, recover_dissection, recovery_report, GlueSpec, RecoveryReport};
pub use error::{Error, Result};
pub use farey::{closed_path_check, turn_count_check, walk_vertices, xi_matrix, Moebius, ProjectivePoint};
pub use frieze::{frieze_from_quiddity, validate_frieze, Frieze, QuiddityRow};
pub use polygon::{Cell, Diagonal, Dissection, Polygon};
pub use ring::{lambda_embed, ContextRegistry, FieldContext, RingElement, Sign};
