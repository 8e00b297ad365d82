use super::datum::RigidDatum;
use super::matrix::Matrix;
use super::ring::Ring;
use super::EvalError;
use crate::diagram::{validate, AmbientDim, Diagram, EventKind};

/// The linear map of `d` under `datum`: a `rank^|target| x rank^|source|`
/// matrix, built slice by slice from the bottom.
pub fn evaluate<R: Ring>(d: &Diagram, datum: &RigidDatum<R>) -> Result<Matrix<R>, EvalError> {
    let report = validate(d, d.dim());
    if !report.is_valid() {
        return Err(EvalError::InvalidDiagram(report.to_string().trim().to_string()));
    }
    if d.dim() == AmbientDim::Symmetric && !datum.is_symmetric() {
        return Err(EvalError::DimensionMismatch {
            diagram: d.dim(),
            datum: datum.max_dim(),
        });
    }
    let table = if d.num_crossings() > 0 {
        Some(datum.crossing_table()?)
    } else {
        None
    };
    let rank = datum.rank();
    let mut width = d.source().len();
    let mut state = Matrix::identity(rank.pow(width as u32));
    for ev in d.sequential_events() {
        let block = match ev.kind {
            EventKind::Id(_) => continue,
            EventKind::Cup(k) => datum.cup(k),
            EventKind::Cap(k) => datum.cap(k),
            EventKind::CrossPos(a, b) => table.as_ref().expect("crossings present").get(a, b, true),
            EventKind::CrossNeg(a, b) => table.as_ref().expect("crossings present").get(a, b, false),
        };
        let (i, o) = (ev.kind.in_arity(), ev.kind.out_arity());
        state = state.apply_local(rank, width, ev.position, i, o, block)?;
        width = width - i + o;
    }
    Ok(state)
}

/// The value of a closed diagram.
pub fn evaluate_scalar<R: Ring>(d: &Diagram, datum: &RigidDatum<R>) -> Result<R, EvalError> {
    if !d.is_closed() {
        return Err(EvalError::OpenComponents);
    }
    let m = evaluate(d, datum)?;
    Ok(m.as_scalar().expect("closed diagrams give 1x1 matrices").clone())
}
