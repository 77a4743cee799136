//! The quaternion division algebra over `Q_p` at finite precision and its
//! congruence quotients.

mod quaternion;
mod quotient;
mod ring;
mod subgroups;

pub use quaternion::QuaternionIntegral;
pub use quotient::{
    build_quotient, check_graded_structure, check_sl_pgl_iso, GradedReport, IsoReport,
    QuaternionQuotient, QuotientGroupSpec, Variant,
};
pub use ring::{least_nonresidue, UnramifiedQuadraticInt};
pub use subgroups::{index_p_subgroups, line_subgroups, LineSubgroup};
