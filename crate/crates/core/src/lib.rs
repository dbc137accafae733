//! Exact Grothendieck-Witt valued Euler classes and A1-local degrees.

pub mod arith;
pub mod degree;
pub mod enumerative;
pub mod error;
pub mod field;
pub mod form;
pub mod fp_verifier;
pub mod groebner;
pub mod gw;
pub mod poly;
pub mod rng;
pub mod scheja_storch;
pub mod upoly;

pub use error::{Error, Result};
pub use field::{make_extension, EtaleAlgebra, FieldCtx, FieldElem, FieldSpec, Irreducibility};
pub use gw::{gw_simplify, GWClass, GWInvariants, SquareClass};
pub use poly::{parse_system, MonomialOrder, MultiPoly};
pub use form::{scharlau_transfer, trace_form, GramForm};
pub use groebner::{groebner, GroebnerBasis, QuotientAlgebra};
pub use scheja_storch::{divided_differences, ss_class, ss_class_in, SsResult};
pub use degree::{consistency_report, fiber_points, global_degree, local_index_simple, ClosedPoint, TransferMode};
