//! Hypersurfaces `Im w = phi(z, zb, Re w)`: class validation, jets, the
//! `N_ab(u)` presentation, transformation by formal maps and tangency
//! defects of maps and vector fields.

mod field;
mod graph;
mod jet;
mod nab;
mod transform;

pub use field::{infinitesimal_defect, VectorField};
pub(crate) use graph::require_class_unit;
pub use graph::{validate_class, ClassReport, GraphSurface, Violation};
pub use jet::{jet7, Jet7, JET_ORDER};
pub use nab::{check_normal_form, to_nab, NabForm, NormalFormOptions, NormalFormReport};
pub use transform::{map_defect, transform, transform_by_reversion};
