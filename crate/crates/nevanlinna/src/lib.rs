//! Numerical Nevanlinna functions for curves with components
//! `exp(p(z))·q(z)`: characteristic, counting and proximity functions, gcd
//! counting and finite-radius defect estimates.

pub mod curve;
pub mod entire;
pub mod error;
pub mod functionals;
pub mod quad;
pub mod report;
pub mod zeros;

pub use curve::CurveSpec;
pub use error::{Error, Result};
pub use report::{defect_report, CountingTable, ReportOptions};
pub use zeros::{locate_zeros, Zero, ZeroOptions};
