//! Exact arithmetic in Q_p and its unramified extensions at tracked
//! precision.
//!
//! Scalars follow a capped relative precision model: a nonzero element is
//! `p^v * u` with `u` known modulo `p^r`, `r <= N_work`, and a zero is known
//! only modulo some `p^A` (or exactly). Precision only ever goes down.

mod analytic;
mod field;
pub mod fp_poly;
mod scalar;

pub use analytic::{iwasawa_log, p_exp, recognize_integer, teichmuller};
pub use field::{arith, ArithOp, Field, FieldElement};
pub use scalar::{PadicScalar, Qp, DEFAULT_PRECISION, EXACT};
