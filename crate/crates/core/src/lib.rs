pub mod diagram;
pub mod eval;
pub mod rewrite;
pub mod segal;
pub mod simplex;
pub mod words;

pub use diagram::{
    validate, AmbientDim, Diagram, DiagramError, Event, EventKind, Label, ObjectWord, ValidationReport,
};
pub use eval::{evaluate, evaluate_scalar, kauffman_datum, Laurent, Matrix, Ring, RigidDatum};
pub use rewrite::{canonical_layout, equal, normalize_planar, Equality, Move, PlanarNormalForm};
