//! Local moves on diagrams, planar normal forms and bounded equality.
//!
//! Moves act on the sequential layout of a diagram (one event per slice,
//! see [`Diagram::sequential_events`]); a site is an index into that
//! layout together with a strand position.

mod layout;
mod planar;
mod search;

use std::fmt;

use thiserror::Error;

use crate::diagram::{validate, AmbientDim, Diagram, DiagramError, Event, EventKind, Label, ObjectWord};

pub use layout::{canonical_layout, measure};
pub use planar::{normalize_planar, Arc, PlanarNormalForm};
pub use search::{equal, reduction_successors, simplify, Equality, SearchBudget};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("move {0} does not apply")]
    Inapplicable(Move),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("composition closes a component")]
    ClosedComponent,
    #[error("diagram error: {0}")]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    /// `cup@p(k)` followed by `cap@(p+1)(k)`.
    ZigZagL(Label),
    /// `cup@(p+1)(k)` followed by `cap@p(k)`.
    ZigZagR(Label),
    Interchange,
    /// Opposite crossings on the same pair of strands. The flag chooses
    /// which crossing comes first when inserting.
    R2 { positive_first: bool },
    /// Forward: crossings at `p, p+1, p`; backward: at `p+1, p, p+1`.
    R3,
    /// Forward turns `x-` into `x+`.
    SymCollapse,
    /// A right curl followed by a left curl on one strand.
    Kink2,
}

impl MoveKind {
    pub fn allowed_in(self, dim: AmbientDim) -> bool {
        match self {
            MoveKind::ZigZagL(_) | MoveKind::ZigZagR(_) | MoveKind::Interchange => true,
            MoveKind::R2 { .. } | MoveKind::R3 => dim.allows_crossings(),
            MoveKind::SymCollapse | MoveKind::Kink2 => dim == AmbientDim::Symmetric,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    /// Index into the sequential layout.
    pub index: usize,
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub kind: MoveKind,
    pub site: Site,
    pub direction: Direction,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            MoveKind::ZigZagL(k) => format!("zigzag-l({k})"),
            MoveKind::ZigZagR(k) => format!("zigzag-r({k})"),
            MoveKind::Interchange => "interchange".into(),
            MoveKind::R2 { positive_first: true } => "r2+".into(),
            MoveKind::R2 { positive_first: false } => "r2-".into(),
            MoveKind::R3 => "r3".into(),
            MoveKind::SymCollapse => "sym-collapse".into(),
            MoveKind::Kink2 => "kink2".into(),
        };
        let dir = match self.direction {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        };
        write!(f, "{kind} {dir} @{}:{}", self.site.index, self.site.position)
    }
}

fn mv(kind: MoveKind, index: usize, position: usize, direction: Direction) -> Move {
    Move {
        kind,
        site: Site { index, position },
        direction,
    }
}

fn crossing_parts(k: EventKind) -> Option<(Label, Label, bool)> {
    match k {
        EventKind::CrossPos(a, b) => Some((a, b, true)),
        EventKind::CrossNeg(a, b) => Some((a, b, false)),
        _ => None,
    }
}

fn crossing(a: Label, b: Label, positive: bool) -> EventKind {
    if positive {
        EventKind::CrossPos(a, b)
    } else {
        EventKind::CrossNeg(a, b)
    }
}

/// Whether three pairwise over/under relations admit a height order.
fn transitive(a_over_b: bool, a_over_c: bool, b_over_c: bool) -> bool {
    !((a_over_b && b_over_c && !a_over_c) || (!a_over_b && !b_over_c && a_over_c))
}

/// The forward moves and the rewrites of existing events at `index`.
pub(crate) fn moves_at(events: &[Event], index: usize, dim: AmbientDim) -> Vec<Move> {
    use Direction::*;
    let mut out = Vec::new();
    let e = events[index];
    let next = events.get(index + 1).copied();
    if let Some(n) = next {
        match (e.kind, n.kind) {
            (EventKind::Cup(k), EventKind::Cap(_)) if n.position + 1 == e.position => {
                out.push(mv(MoveKind::ZigZagR(k), index, n.position, Forward));
            }
            (EventKind::Cup(k), EventKind::Cap(_)) if n.position == e.position + 1 => {
                out.push(mv(MoveKind::ZigZagL(k), index, e.position, Forward));
            }
            _ => {}
        }
        if layout::interchange(e, n).is_some() {
            out.push(mv(MoveKind::Interchange, index, e.position, Forward));
        }
        if let (Some((_, _, s1)), Some((_, _, s2))) = (crossing_parts(e.kind), crossing_parts(n.kind)) {
            if e.position == n.position && s1 != s2 {
                out.push(mv(MoveKind::R2 { positive_first: s1 }, index, e.position, Forward));
            }
        }
    }
    if let (Some(n), Some(m)) = (next, events.get(index + 2)) {
        if let (Some((_, _, s1)), Some((_, _, s2)), Some((_, _, s3))) =
            (crossing_parts(e.kind), crossing_parts(n.kind), crossing_parts(m.kind))
        {
            let p = e.position;
            if n.position == p + 1 && m.position == p && transitive(s1, s2, s3) {
                out.push(mv(MoveKind::R3, index, p, Forward));
            }
            if p > 0 && n.position == p - 1 && m.position == p && transitive(s3, s2, s1) {
                out.push(mv(MoveKind::R3, index, p - 1, Backward));
            }
        }
    }
    if let Some((_, _, positive)) = crossing_parts(e.kind) {
        let dir = if positive { Backward } else { Forward };
        out.push(mv(MoveKind::SymCollapse, index, e.position, dir));
    }
    if index + 6 <= events.len() {
        let w = &events[index..index + 6];
        let p = w[1].position;
        let shape = matches!(w[0].kind, EventKind::Cup(_))
            && w[0].position == p + 1
            && w[1].kind.is_crossing()
            && matches!(w[2].kind, EventKind::Cap(_))
            && w[2].position == p + 1
            && matches!(w[3].kind, EventKind::Cup(_))
            && w[3].position == p
            && w[4].kind.is_crossing()
            && w[4].position == p + 1
            && matches!(w[5].kind, EventKind::Cap(_))
            && w[5].position == p;
        if shape {
            out.push(mv(MoveKind::Kink2, index, p, Forward));
        }
    }
    out.retain(|m| m.kind.allowed_in(dim));
    out
}

/// Every forward move, and every backward move that rewrites existing
/// events (R3, SymCollapse), legal in `dim`. Insertions are listed by
/// [`insertion_moves`].
pub fn applicable_moves(d: &Diagram, dim: AmbientDim) -> Vec<Move> {
    let events = d.sequential_events();
    (0..events.len()).flat_map(|i| moves_at(&events, i, dim)).collect()
}

/// Backward moves that insert events: zig-zags everywhere, R2 pairs on
/// adjacent strands and Kink2, as legal in `dim`.
pub fn insertion_moves(d: &Diagram, dim: AmbientDim) -> Vec<Move> {
    use Direction::Backward;
    let events = d.sequential_events();
    let mut word = d.source().clone();
    let mut out = Vec::new();
    for index in 0..=events.len() {
        for p in 0..word.len() {
            let x = word.0[p];
            out.push(mv(MoveKind::ZigZagR(x), index, p, Backward));
            out.push(mv(MoveKind::ZigZagL(x - 1), index, p, Backward));
            out.push(mv(MoveKind::Kink2, index, p, Backward));
            if p + 1 < word.len() {
                for positive_first in [true, false] {
                    out.push(mv(MoveKind::R2 { positive_first }, index, p, Backward));
                }
            }
        }
        if let Some(e) = events.get(index) {
            word = step(&word, *e, d.dim());
        }
    }
    out.retain(|m| m.kind.allowed_in(dim));
    out
}

fn step(word: &ObjectWord, e: Event, dim: AmbientDim) -> ObjectWord {
    crate::diagram::Slice {
        input: word.clone(),
        events: vec![e],
    }
    .output(dim)
    .expect("sequential layout of a typed diagram")
}

fn word_at(d: &Diagram, events: &[Event], index: usize) -> ObjectWord {
    let mut w = d.source().clone();
    for e in &events[..index] {
        w = step(&w, *e, d.dim());
    }
    w
}

/// Apply a move; the result keeps the boundary words (up to the label
/// comparison of the ambient dimension) and is valid.
pub fn apply_move(d: &Diagram, m: Move) -> Result<Diagram, RewriteError> {
    let dim = d.dim();
    let fail = || RewriteError::Inapplicable(m);
    if !m.kind.allowed_in(dim) {
        return Err(fail());
    }
    let mut events = d.sequential_events();
    let i = m.site.index;
    let p = m.site.position;
    let rewrites_existing =
        m.direction == Direction::Forward || matches!(m.kind, MoveKind::R3 | MoveKind::SymCollapse);
    match rewrites_existing {
        true => {
            if i >= events.len() || !moves_at(&events, i, dim).contains(&m) {
                return Err(fail());
            }
            match m.kind {
                MoveKind::ZigZagL(_) | MoveKind::ZigZagR(_) | MoveKind::R2 { .. } => {
                    events.drain(i..i + 2);
                }
                MoveKind::Kink2 => {
                    events.drain(i..i + 6);
                }
                MoveKind::Interchange => {
                    let (a, b) = layout::interchange(events[i], events[i + 1]).ok_or_else(fail)?;
                    events[i] = a;
                    events[i + 1] = b;
                }
                MoveKind::SymCollapse => {
                    events[i].kind = events[i].kind.mirrored();
                }
                MoveKind::R3 => {
                    let (c1, c2, c3) = (events[i], events[i + 1], events[i + 2]);
                    let (a, b, s1) = crossing_parts(c1.kind).ok_or_else(fail)?;
                    let (_, c, s2) = crossing_parts(c2.kind).ok_or_else(fail)?;
                    let (_, _, s3) = crossing_parts(c3.kind).ok_or_else(fail)?;
                    let (lo, hi) = (p, p + 1);
                    let replaced = if m.direction == Direction::Forward {
                        [
                            Event::new(crossing(b, c, s3), hi),
                            Event::new(crossing(a, c, s2), lo),
                            Event::new(crossing(a, b, s1), hi),
                        ]
                    } else {
                        // c1 = (b, c) at hi, c2 = (a, c) at lo, c3 = (a, b) at hi
                        let (b, c) = (a, b);
                        let (a, _, _) = crossing_parts(c2.kind).ok_or_else(fail)?;
                        [
                            Event::new(crossing(a, b, s3), lo),
                            Event::new(crossing(a, c, s2), hi),
                            Event::new(crossing(b, c, s1), lo),
                        ]
                    };
                    events.splice(i..i + 3, replaced);
                }
            }
        }
        false => {
            if i > events.len() {
                return Err(fail());
            }
            let word = word_at(d, &events, i);
            let x = *word.0.get(p).ok_or_else(fail)?;
            let inserted: Vec<Event> = match m.kind {
                MoveKind::ZigZagR(k) if dim.labels_match(x, k) => {
                    vec![Event::new(EventKind::Cup(k), p + 1), Event::new(EventKind::Cap(k), p)]
                }
                MoveKind::ZigZagL(k) if dim.labels_match(x, k + 1) => {
                    vec![Event::new(EventKind::Cup(k), p), Event::new(EventKind::Cap(k), p + 1)]
                }
                MoveKind::R2 { positive_first } => {
                    let y = *word.0.get(p + 1).ok_or_else(fail)?;
                    vec![
                        Event::new(crossing(x, y, positive_first), p),
                        Event::new(crossing(y, x, !positive_first), p),
                    ]
                }
                MoveKind::Kink2 => vec![
                    Event::new(EventKind::Cup(x + 1), p + 1),
                    Event::new(EventKind::CrossPos(x, x + 2), p),
                    Event::new(EventKind::Cap(x), p + 1),
                    Event::new(EventKind::Cup(x), p),
                    Event::new(EventKind::CrossPos(x, x + 2), p + 1),
                    Event::new(EventKind::Cap(x + 1), p),
                ],
                _ => return Err(fail()),
            };
            events.splice(i..i, inserted);
        }
    }
    let out = Diagram::from_sequence(dim, d.source().clone(), events).map_err(|_| fail())?;
    if !dim.words_match(out.target(), d.target()) || !validate(&out, dim).is_valid() {
        return Err(fail());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{zigzag_left, zigzag_right, Event};

    fn braided(source: &[Label], events: &[(EventKind, usize)]) -> Diagram {
        Diagram::from_sequence(
            AmbientDim::Braided,
            ObjectWord(source.to_vec()),
            events.iter().map(|&(k, p)| Event::new(k, p)),
        )
        .unwrap()
    }

    #[test]
    fn zigzags_straighten() {
        for d in [zigzag_right(0), zigzag_left(0), zigzag_right(3)] {
            let moves = applicable_moves(&d, AmbientDim::Planar);
            let zz = moves
                .iter()
                .find(|m| matches!(m.kind, MoveKind::ZigZagL(_) | MoveKind::ZigZagR(_)))
                .unwrap();
            let r = apply_move(&d, *zz).unwrap();
            assert_eq!(r, Diagram::identity(AmbientDim::Planar, d.source().clone()));
        }
    }

    #[test]
    fn identity_has_no_moves() {
        let id = Diagram::identity(AmbientDim::Symmetric, ObjectWord::from([0, 1, 2]));
        assert!(applicable_moves(&id, AmbientDim::Symmetric).is_empty());
    }

    #[test]
    fn interchange_swaps_disjoint_events() {
        let d = Diagram::from_sequence(
            AmbientDim::Planar,
            ObjectWord::from([0, 1, 4]),
            [Event::new(EventKind::Cap(0), 0), Event::new(EventKind::Cup(2), 1)],
        )
        .unwrap();
        let m = applicable_moves(&d, AmbientDim::Planar);
        assert_eq!(m.len(), 1);
        let r = apply_move(&d, m[0]).unwrap();
        assert_eq!(
            r.sequential_events(),
            vec![Event::new(EventKind::Cup(2), 3), Event::new(EventKind::Cap(0), 0)]
        );
        assert_eq!(r.target(), d.target());
        let back = apply_move(&r, applicable_moves(&r, AmbientDim::Planar)[0]).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn r2_cancels() {
        let d = braided(&[0, 1], &[(EventKind::CrossPos(0, 1), 0), (EventKind::CrossNeg(1, 0), 0)]);
        let m = applicable_moves(&d, AmbientDim::Braided);
        let r2 = m.iter().find(|m| matches!(m.kind, MoveKind::R2 { .. })).unwrap();
        let r = apply_move(&d, *r2).unwrap();
        assert_eq!(r.num_events(), 0);
        assert!(applicable_moves(&d, AmbientDim::Planar).iter().all(|m| m.kind == MoveKind::Interchange));
    }

    #[test]
    fn r3_round_trip() {
        let d = braided(
            &[0, 0, 0],
            &[
                (EventKind::CrossPos(0, 0), 0),
                (EventKind::CrossPos(0, 0), 1),
                (EventKind::CrossPos(0, 0), 0),
            ],
        );
        let m = applicable_moves(&d, AmbientDim::Braided);
        let r3 = *m.iter().find(|m| m.kind == MoveKind::R3).unwrap();
        assert_eq!(r3.direction, Direction::Forward);
        let r = apply_move(&d, r3).unwrap();
        let positions: Vec<usize> = r.sequential_events().iter().map(|e| e.position).collect();
        assert_eq!(positions, vec![1, 0, 1]);
        let back = applicable_moves(&r, AmbientDim::Braided)
            .into_iter()
            .find(|m| m.kind == MoveKind::R3)
            .unwrap();
        assert_eq!(back.direction, Direction::Backward);
        assert_eq!(apply_move(&r, back).unwrap(), d);
    }

    #[test]
    fn cyclic_r3_is_not_a_move() {
        // A over B, B over C, C over A
        let d = braided(
            &[0, 0, 0],
            &[
                (EventKind::CrossPos(0, 0), 0),
                (EventKind::CrossNeg(0, 0), 1),
                (EventKind::CrossPos(0, 0), 0),
            ],
        );
        assert!(!applicable_moves(&d, AmbientDim::Braided).iter().any(|m| m.kind == MoveKind::R3));
    }

    #[test]
    fn insertions_round_trip() {
        let d = Diagram::identity(AmbientDim::Symmetric, ObjectWord::from([0, 1]));
        let ins = insertion_moves(&d, AmbientDim::Symmetric);
        assert!(!ins.is_empty());
        for m in ins {
            let r = apply_move(&d, m).unwrap();
            assert!(AmbientDim::Symmetric.words_match(r.target(), d.target()));
            assert!(!applicable_moves(&r, AmbientDim::Symmetric).is_empty());
        }
        let planar = Diagram::identity(AmbientDim::Planar, ObjectWord::from([2]));
        for m in insertion_moves(&planar, AmbientDim::Planar) {
            let r = apply_move(&planar, m).unwrap();
            assert_eq!(r.target(), planar.target());
        }
    }

    #[test]
    fn inapplicable_moves_fail() {
        let d = zigzag_right(0);
        let bogus = Move {
            kind: MoveKind::R3,
            site: Site { index: 0, position: 0 },
            direction: Direction::Forward,
        };
        assert_eq!(apply_move(&d, bogus), Err(RewriteError::Inapplicable(bogus)));
    }
}
