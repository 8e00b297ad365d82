//! Exact evaluation of diagrams through a rigid datum, plus the Kauffman
//! bracket state sum used to cross-check it.

pub mod bracket;
pub mod datum;
pub mod evaluate;
pub mod matrix;
pub mod ring;

use thiserror::Error;

use crate::diagram::AmbientDim;

pub use bracket::{bracket_state_sum, jones_normalized};
pub use datum::{kauffman_datum, parse_datum, validate_datum, AnyDatum, DatumReport, RigidDatum};
pub use evaluate::{evaluate, evaluate_scalar};
pub use matrix::Matrix;
pub use ring::{loop_value, Laurent, Ring, RingKind};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("datum has no braiding but the diagram has crossings")]
    MissingBraiding,
    #[error("a dimension-{diagram} diagram cannot be evaluated with a dimension-{datum} datum")]
    DimensionMismatch { diagram: AmbientDim, datum: AmbientDim },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("diagram has open components")]
    OpenComponents,
    #[error("diagram has no components")]
    EmptyDiagram,
    #[error("{0} crossings exceed the state-sum limit")]
    TooLarge(usize),
}
