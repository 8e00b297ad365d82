use super::{AmbientDim, Diagram, Event, EventKind, Label, ObjectWord, Slice};

/// Single loop: `cup(0)` capped by `cap(1)`, typed modulo two.
pub fn unknot() -> Diagram {
    Diagram::new(
        AmbientDim::Braided,
        ObjectWord::empty(),
        vec![
            vec![Event::new(EventKind::Cup(0), 0)],
            vec![Event::new(EventKind::Cap(1), 0)],
        ],
    )
    .expect("unknot types")
}

/// `n` disjoint unknots.
pub fn unlink(n: usize) -> Diagram {
    (0..n).fold(Diagram::empty(AmbientDim::Braided), |acc, _| acc.tensor(&unknot()))
}

/// Right closure of a braid on `strands` upward strands labelled 0. Each
/// generator is `(i, positive)`, a crossing of strands `i` and `i + 1`.
pub fn braid_closure(strands: usize, word: &[(usize, bool)]) -> Diagram {
    let mut slices = Vec::new();
    for i in 0..strands {
        slices.push(vec![Event::new(EventKind::Cup(-1), i)]);
    }
    for &(i, positive) in word {
        assert!(i + 1 < strands, "generator outside the braid");
        let kind = if positive {
            EventKind::CrossPos(0, 0)
        } else {
            EventKind::CrossNeg(0, 0)
        };
        slices.push(vec![Event::new(kind, i)]);
    }
    for i in (0..strands).rev() {
        slices.push(vec![Event::new(EventKind::Cap(0), i)]);
    }
    Diagram::new(AmbientDim::Braided, ObjectWord::empty(), slices).expect("closure types")
}

/// Closure of `σ1^2`.
pub fn hopf_link() -> Diagram {
    braid_closure(2, &[(0, true), (0, true)])
}

/// Closure of `σ1^3` with positive crossings.
pub fn trefoil() -> Diagram {
    braid_closure(2, &[(0, true), (0, true), (0, true)])
}

/// `id(j) ⊗ Cup(j) ; Cap(j) ⊗ id(j)`.
pub fn zigzag_right(j: Label) -> Diagram {
    Diagram::new(
        AmbientDim::Planar,
        ObjectWord(vec![j]),
        vec![
            vec![Event::new(EventKind::Cup(j), 1)],
            vec![Event::new(EventKind::Cap(j), 0)],
        ],
    )
    .expect("zig-zag types")
}

/// `Cup(j-1) ⊗ id(j) ; id(j) ⊗ Cap(j-1)`.
pub fn zigzag_left(j: Label) -> Diagram {
    Diagram::new(
        AmbientDim::Planar,
        ObjectWord(vec![j]),
        vec![
            vec![Event::new(EventKind::Cup(j - 1), 0)],
            vec![Event::new(EventKind::Cap(j - 1), 1)],
        ],
    )
    .expect("zig-zag types")
}

/// Every crossing switched.
pub fn mirror(d: &Diagram) -> Diagram {
    let slices = d
        .slices()
        .iter()
        .map(|s| Slice {
            input: s.input.clone(),
            events: s
                .events
                .iter()
                .map(|e| Event::new(e.kind.mirrored(), e.position))
                .collect(),
        })
        .collect();
    Diagram::from_raw_parts(d.dim(), d.source().clone(), d.target().clone(), slices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::validate;

    #[test]
    fn builtins_validate() {
        for d in [unknot(), unlink(3), hopf_link(), trefoil(), mirror(&trefoil())] {
            assert!(validate(&d, AmbientDim::Braided).is_valid(), "{d}");
            assert!(d.is_closed());
        }
        for j in -2..3 {
            assert!(validate(&zigzag_left(j), AmbientDim::Planar).is_valid());
            assert!(validate(&zigzag_right(j), AmbientDim::Planar).is_valid());
        }
    }

    #[test]
    fn closure_shape() {
        let t = trefoil();
        assert_eq!(t.num_crossings(), 3);
        assert_eq!(t.num_events(), 7);
        assert_eq!(unlink(2).num_events(), 4);
    }
}
