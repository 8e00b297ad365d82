//! Slice-encoded framed tangle diagrams.
//!
//! A diagram is read bottom to top as a stack of slices. Each slice has an
//! input word of integer labels and a list of elementary events placed at
//! disjoint, left-to-right positions of that word; strands not touched by an
//! event pass straight through.
//!
//! Labels are dual levels. Writing `x(j)` for the strand labelled `j`, the
//! right dual of `x(j)` is `x(j+1)` and its left dual is `x(j-1)`. The four
//! unit/counit morphisms of a duality collapse into one family:
//!
//! | event     | boundary            | duality maps it realizes            |
//! |-----------|---------------------|-------------------------------------|
//! | `Cup(k)`  | `∅ -> (k+1, k)`     | unit for `x(k) ⊣ x(k+1)`           |
//! | `Cap(k)`  | `(k, k+1) -> ∅`     | counit for `x(k) ⊣ x(k+1)`         |
//!
//! so that `Cup(k)` is the right unit of `x(k)` and the left unit of
//! `x(k+1)` at the same time, and likewise for caps. The zig-zag
//! `id(j) ⊗ Cup(j) ; Cap(j) ⊗ id(j)` straightens to `id(j)`, as does
//! `Cup(j-1) ⊗ id(j) ; id(j) ⊗ Cap(j-1)`.
//!
//! In the planar case (`AmbientDim::Planar`) labels are compared exactly and
//! a label records the number of clockwise half-turns of the strand, so a
//! kink shifts a label by two. With room to rotate (`Braided`, `Symmetric`)
//! only the parity of a label is meaningful and all typing checks compare
//! labels modulo two. Even labels are strands oriented upward, odd labels
//! strands oriented downward.
//!
//! Crossings `CrossPos(a, b)` and `CrossNeg(a, b)` consume `(a, b)` and emit
//! `(b, a)`. In `CrossPos` the strand entering on the left passes over; in
//! `CrossNeg` it passes under.

mod builtins;
pub mod random;
mod text;
mod trace;

use std::cmp::max;
use std::fmt;

use thiserror::Error;

pub use builtins::{braid_closure, hopf_link, mirror, trefoil, unknot, unlink, zigzag_left, zigzag_right};
pub use text::parse_diagram;
pub use trace::{crossing_sign, trace_components, writhe, Component, CrossingVisit, Endpoint, Writhe};

pub type Label = i64;

/// Ambient dimension `n` of the tangles: strands live in `R^(n-1) x [0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AmbientDim {
    /// n = 2: planar tangles, no crossings.
    Planar,
    /// n = 3: braided.
    Braided,
    /// n >= 4: symmetric.
    Symmetric,
}

impl AmbientDim {
    pub fn from_n(n: u32) -> Option<Self> {
        match n {
            2 => Some(AmbientDim::Planar),
            3 => Some(AmbientDim::Braided),
            n if n >= 4 => Some(AmbientDim::Symmetric),
            _ => None,
        }
    }

    pub fn n(self) -> u32 {
        match self {
            AmbientDim::Planar => 2,
            AmbientDim::Braided => 3,
            AmbientDim::Symmetric => 4,
        }
    }

    pub fn allows_crossings(self) -> bool {
        self != AmbientDim::Planar
    }

    /// Whether two labels name the same strand type in this dimension.
    pub fn labels_match(self, a: Label, b: Label) -> bool {
        match self {
            AmbientDim::Planar => a == b,
            _ => (a - b).rem_euclid(2) == 0,
        }
    }

    pub fn words_match(self, a: &ObjectWord, b: &ObjectWord) -> bool {
        a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| self.labels_match(*x, *y))
    }
}

impl fmt::Display for AmbientDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n())
    }
}

/// A boundary word: the labels of the strand endpoints, left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectWord(pub Vec<Label>);

impl ObjectWord {
    pub fn empty() -> Self {
        ObjectWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Label> {
        self.0.iter()
    }

    pub fn concat(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ObjectWord(v)
    }

    /// Labels reduced to `{0, 1}`.
    pub fn parities(&self) -> ObjectWord {
        ObjectWord(self.0.iter().map(|l| l.rem_euclid(2)).collect())
    }
}

impl From<Vec<Label>> for ObjectWord {
    fn from(v: Vec<Label>) -> Self {
        ObjectWord(v)
    }
}

impl<const N: usize> From<[Label; N]> for ObjectWord {
    fn from(v: [Label; N]) -> Self {
        ObjectWord(v.to_vec())
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Signed count `Σ (-1)^label`, conserved by every generator.
pub fn degree(word: &ObjectWord) -> i64 {
    word.iter().map(|l| if l.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    Id(Label),
    Cup(Label),
    Cap(Label),
    CrossPos(Label, Label),
    CrossNeg(Label, Label),
}

impl EventKind {
    pub fn in_arity(self) -> usize {
        match self {
            EventKind::Id(_) => 1,
            EventKind::Cup(_) => 0,
            EventKind::Cap(_) | EventKind::CrossPos(..) | EventKind::CrossNeg(..) => 2,
        }
    }

    pub fn out_arity(self) -> usize {
        match self {
            EventKind::Id(_) => 1,
            EventKind::Cap(_) => 0,
            EventKind::Cup(_) | EventKind::CrossPos(..) | EventKind::CrossNeg(..) => 2,
        }
    }

    pub fn inputs(self) -> Vec<Label> {
        match self {
            EventKind::Id(j) => vec![j],
            EventKind::Cup(_) => vec![],
            EventKind::Cap(k) => vec![k, k + 1],
            EventKind::CrossPos(a, b) | EventKind::CrossNeg(a, b) => vec![a, b],
        }
    }

    pub fn outputs(self) -> Vec<Label> {
        match self {
            EventKind::Id(j) => vec![j],
            EventKind::Cup(k) => vec![k + 1, k],
            EventKind::Cap(_) => vec![],
            EventKind::CrossPos(a, b) | EventKind::CrossNeg(a, b) => vec![b, a],
        }
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, EventKind::CrossPos(..) | EventKind::CrossNeg(..))
    }

    pub fn is_identity(self) -> bool {
        matches!(self, EventKind::Id(_))
    }

    /// Same event with every label shifted by `by`.
    pub fn shifted(self, by: Label) -> Self {
        match self {
            EventKind::Id(j) => EventKind::Id(j + by),
            EventKind::Cup(k) => EventKind::Cup(k + by),
            EventKind::Cap(k) => EventKind::Cap(k + by),
            EventKind::CrossPos(a, b) => EventKind::CrossPos(a + by, b + by),
            EventKind::CrossNeg(a, b) => EventKind::CrossNeg(a + by, b + by),
        }
    }

    pub fn map_labels(self, f: impl Fn(Label) -> Label) -> Self {
        match self {
            EventKind::Id(j) => EventKind::Id(f(j)),
            EventKind::Cup(k) => EventKind::Cup(f(k)),
            EventKind::Cap(k) => EventKind::Cap(f(k)),
            EventKind::CrossPos(a, b) => EventKind::CrossPos(f(a), f(b)),
            EventKind::CrossNeg(a, b) => EventKind::CrossNeg(f(a), f(b)),
        }
    }

    /// Crossing with the opposite over/under choice.
    pub fn mirrored(self) -> Self {
        match self {
            EventKind::CrossPos(a, b) => EventKind::CrossNeg(a, b),
            EventKind::CrossNeg(a, b) => EventKind::CrossPos(a, b),
            other => other,
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventKind::Id(j) => write!(f, "id({j})"),
            EventKind::Cup(k) => write!(f, "cup({k})"),
            EventKind::Cap(k) => write!(f, "cap({k})"),
            EventKind::CrossPos(a, b) => write!(f, "x+({a},{b})"),
            EventKind::CrossNeg(a, b) => write!(f, "x-({a},{b})"),
        }
    }
}

/// An event placed at an index of its slice's input word. For a cup the
/// position is the insertion gap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    pub kind: EventKind,
    pub position: usize,
}

impl Event {
    pub fn new(kind: EventKind, position: usize) -> Self {
        Event { kind, position }
    }
}

impl fmt::Display for Event {
    /// `cup@p(k)`, `cap@p(k)`, `x+@p(a,b)`, `x-@p(a,b)`, `id@p(j)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.position;
        match self.kind {
            EventKind::Id(j) => write!(f, "id@{p}({j})"),
            EventKind::Cup(k) => write!(f, "cup@{p}({k})"),
            EventKind::Cap(k) => write!(f, "cap@{p}({k})"),
            EventKind::CrossPos(a, b) => write!(f, "x+@{p}({a},{b})"),
            EventKind::CrossNeg(a, b) => write!(f, "x-@{p}({a},{b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slice {
    pub input: ObjectWord,
    pub events: Vec<Event>,
}

impl Slice {
    pub fn identity(input: ObjectWord) -> Self {
        Slice {
            input,
            events: Vec::new(),
        }
    }

    /// Output word, checking event order and typing under `dim`.
    pub fn output(&self, dim: AmbientDim) -> Result<ObjectWord, SliceError> {
        let w = &self.input.0;
        let mut out = Vec::with_capacity(w.len() + 2 * self.events.len());
        let mut cursor = 0usize;
        for (idx, ev) in self.events.iter().enumerate() {
            let p = ev.position;
            if p < cursor {
                return Err(SliceError::Overlap { event: idx });
            }
            let arity = ev.kind.in_arity();
            if p + arity > w.len() {
                return Err(SliceError::OutOfRange { event: idx });
            }
            if ev.kind.is_crossing() && !dim.allows_crossings() {
                return Err(SliceError::CrossingInPlanar { event: idx });
            }
            for (offset, expected) in ev.kind.inputs().into_iter().enumerate() {
                let found = w[p + offset];
                if !dim.labels_match(found, expected) {
                    return Err(SliceError::LabelMismatch {
                        event: idx,
                        offset,
                        expected,
                        found,
                    });
                }
            }
            out.extend_from_slice(&w[cursor..p]);
            out.extend(ev.kind.outputs());
            cursor = p + arity;
        }
        out.extend_from_slice(&w[cursor..]);
        Ok(ObjectWord(out))
    }

    /// Output position of each event's first emitted strand.
    pub fn output_positions(&self) -> Vec<usize> {
        let mut shift: isize = 0;
        self.events
            .iter()
            .map(|ev| {
                let at = (ev.position as isize + shift) as usize;
                shift += ev.kind.out_arity() as isize - ev.kind.in_arity() as isize;
                at
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("event {event} overlaps or precedes the previous event")]
    Overlap { event: usize },
    #[error("event {event} reaches past the end of the input word")]
    OutOfRange { event: usize },
    #[error("event {event} is a crossing in a planar diagram")]
    CrossingInPlanar { event: usize },
    #[error("event {event} expects label {expected} at offset {offset}, found {found}")]
    LabelMismatch {
        event: usize,
        offset: usize,
        expected: Label,
        found: Label,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("boundary mismatch: {left} does not match {right}")]
    BoundaryMismatch { left: ObjectWord, right: ObjectWord },
    #[error("slice {slice}: {source}")]
    Slice { slice: usize, source: SliceError },
    #[error("crossings are not available in the planar case")]
    CrossingInPlanar,
    #[error("diagram has open components")]
    OpenComponents,
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A framed tangle diagram `source -> target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    dim: AmbientDim,
    source: ObjectWord,
    target: ObjectWord,
    slices: Vec<Slice>,
}

impl Diagram {
    /// Build from per-slice event lists, typing every slice under `dim`.
    pub fn new(
        dim: AmbientDim,
        source: ObjectWord,
        slices: Vec<Vec<Event>>,
    ) -> Result<Self, DiagramError> {
        let mut word = source.clone();
        let mut built = Vec::with_capacity(slices.len());
        for (i, events) in slices.into_iter().enumerate() {
            let slice = Slice {
                input: word,
                events,
            };
            word = slice
                .output(dim)
                .map_err(|source| DiagramError::Slice { slice: i, source })?;
            built.push(slice);
        }
        Ok(Diagram {
            dim,
            source,
            target: word,
            slices: built,
        })
    }

    /// Assemble without any checks; use [`validate`] to inspect the result.
    pub fn from_raw_parts(
        dim: AmbientDim,
        source: ObjectWord,
        target: ObjectWord,
        slices: Vec<Slice>,
    ) -> Self {
        Diagram {
            dim,
            source,
            target,
            slices,
        }
    }

    /// One event per slice, bottom to top.
    pub fn from_sequence(
        dim: AmbientDim,
        source: ObjectWord,
        events: impl IntoIterator<Item = Event>,
    ) -> Result<Self, DiagramError> {
        Diagram::new(dim, source, events.into_iter().map(|e| vec![e]).collect())
    }

    pub fn identity(dim: AmbientDim, word: ObjectWord) -> Self {
        Diagram {
            dim,
            source: word.clone(),
            target: word,
            slices: Vec::new(),
        }
    }

    pub fn empty(dim: AmbientDim) -> Self {
        Diagram::identity(dim, ObjectWord::empty())
    }

    /// One-slice diagram holding a single generator.
    pub fn elementary(kind: EventKind, dim: AmbientDim) -> Result<Self, DiagramError> {
        if kind.is_crossing() && !dim.allows_crossings() {
            return Err(DiagramError::CrossingInPlanar);
        }
        let source = ObjectWord(kind.inputs());
        Diagram::new(dim, source, vec![vec![Event::new(kind, 0)]])
    }

    pub fn dim(&self) -> AmbientDim {
        self.dim
    }

    pub fn source(&self) -> &ObjectWord {
        &self.source
    }

    pub fn target(&self) -> &ObjectWord {
        &self.target
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn num_events(&self) -> usize {
        self.events().filter(|(_, e)| !e.kind.is_identity()).count()
    }

    pub fn num_crossings(&self) -> usize {
        self.events().filter(|(_, e)| e.kind.is_crossing()).count()
    }

    /// `(slice index, event)` pairs bottom to top, left to right.
    pub fn events(&self) -> impl Iterator<Item = (usize, &Event)> {
        self.slices
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.events.iter().map(move |e| (i, e)))
    }

    pub fn is_closed(&self) -> bool {
        self.source.is_empty() && self.target.is_empty()
    }

    /// The same diagram regarded in a higher ambient dimension.
    pub fn promote(&self, dim: AmbientDim) -> Diagram {
        let mut d = self.clone();
        d.dim = max(self.dim, dim);
        d
    }

    /// `self` then `other` (bottom to top).
    pub fn compose(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        let dim = max(self.dim, other.dim);
        if !dim.words_match(&self.target, &other.source) {
            return Err(DiagramError::BoundaryMismatch {
                left: self.target.clone(),
                right: other.source.clone(),
            });
        }
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().cloned());
        Ok(Diagram {
            dim,
            source: self.source.clone(),
            target: other.target.clone(),
            slices,
        })
    }

    /// Horizontal juxtaposition, `self` on the left.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let dim = max(self.dim, other.dim);
        let n = max(self.slices.len(), other.slices.len());
        let level = |d: &Diagram, i: usize| -> Slice {
            d.slices
                .get(i)
                .cloned()
                .unwrap_or_else(|| Slice::identity(d.target.clone()))
        };
        let slices = (0..n)
            .map(|i| {
                let left = level(self, i);
                let right = level(other, i);
                let shift = left.input.len();
                let mut events = left.events;
                events.extend(right.events.iter().map(|e| Event {
                    kind: e.kind,
                    position: e.position + shift,
                }));
                Slice {
                    input: left.input.concat(&right.input),
                    events,
                }
            })
            .collect();
        Diagram {
            dim,
            source: self.source.concat(&other.source),
            target: self.target.concat(&other.target),
            slices,
        }
    }

    /// Drop identity events and empty slices.
    pub fn without_identities(&self) -> Diagram {
        let slices = self
            .slices
            .iter()
            .filter_map(|s| {
                let events: Vec<Event> = s
                    .events
                    .iter()
                    .filter(|e| !e.kind.is_identity())
                    .copied()
                    .collect();
                (!events.is_empty()).then(|| Slice {
                    input: s.input.clone(),
                    events,
                })
            })
            .collect();
        Diagram {
            slices,
            ..self.clone()
        }
    }

    /// Every non-identity event in its own slice. Events of one slice are
    /// emitted right to left so that their recorded positions stay valid.
    pub fn sequential_events(&self) -> Vec<Event> {
        let mut out = Vec::new();
        for s in &self.slices {
            for e in s.events.iter().rev() {
                if !e.kind.is_identity() {
                    out.push(*e);
                }
            }
        }
        out
    }

    /// Relabel every strand to its parity. Only meaningful when labels are
    /// compared modulo two.
    pub fn reduce_labels(&self) -> Diagram {
        let r = |l: Label| l.rem_euclid(2);
        Diagram {
            dim: self.dim,
            source: self.source.parities(),
            target: self.target.parities(),
            slices: self
                .slices
                .iter()
                .map(|s| Slice {
                    input: s.input.parities(),
                    events: s
                        .events
                        .iter()
                        .map(|e| Event::new(e.kind.map_labels(r), e.position))
                        .collect(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_diagram(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Chaining,
    Typing,
    Crossing,
    ClosedComponent,
    LabelWindow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub slice: Option<usize>,
    pub position: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.slice, self.position) {
            (Some(s), Some(p)) => write!(f, "slice {s}, position {p}: {}", self.message),
            (Some(s), None) => write!(f, "slice {s}: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "invalid: {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ValidateOptions {
    /// Reject labels outside `[-i, j]`.
    pub window: Option<(Label, Label)>,
}

pub fn validate(d: &Diagram, dim: AmbientDim) -> ValidationReport {
    validate_with(d, dim, ValidateOptions::default())
}

pub fn validate_with(d: &Diagram, dim: AmbientDim, opts: ValidateOptions) -> ValidationReport {
    let mut report = ValidationReport::default();
    let push = |report: &mut ValidationReport, kind, slice, position, message: String| {
        report.violations.push(Violation {
            kind,
            slice,
            position,
            message,
        })
    };
    let mut word = d.source.clone();
    let mut typed = true;
    for (i, slice) in d.slices.iter().enumerate() {
        if !dim.words_match(&slice.input, &word) {
            push(
                &mut report,
                ViolationKind::Chaining,
                Some(i),
                None,
                format!("input {} does not continue {}", slice.input, word),
            );
        }
        match slice.output(dim) {
            Ok(out) => word = out,
            Err(err) => {
                let (kind, event) = match err {
                    SliceError::CrossingInPlanar { event } => (ViolationKind::Crossing, event),
                    SliceError::Overlap { event }
                    | SliceError::OutOfRange { event }
                    | SliceError::LabelMismatch { event, .. } => (ViolationKind::Typing, event),
                };
                let position = slice.events.get(event).map(|e| e.position);
                push(&mut report, kind, Some(i), position, err.to_string());
                typed = false;
                break;
            }
        }
    }
    if typed && !dim.words_match(&word, &d.target) {
        push(
            &mut report,
            ViolationKind::Chaining,
            None,
            None,
            format!("computed target {} differs from declared {}", word, d.target),
        );
    }
    if let Some((i, j)) = opts.window {
        let all_words = std::iter::once(&d.source)
            .chain(std::iter::once(&d.target))
            .chain(d.slices.iter().map(|s| &s.input));
        let bad = all_words.flat_map(|w| w.iter()).any(|&l| l < -i || l > j);
        let bad_event = d.events().find(|(_, e)| {
            e.kind
                .inputs()
                .into_iter()
                .chain(e.kind.outputs())
                .any(|l| l < -i || l > j)
        });
        if bad || bad_event.is_some() {
            push(
                &mut report,
                ViolationKind::LabelWindow,
                bad_event.map(|(s, _)| s),
                bad_event.map(|(_, e)| e.position),
                format!("labels leave the window [-{i}, {j}]"),
            );
        }
    }
    if typed && dim == AmbientDim::Planar {
        for c in trace_components(d) {
            if c.closed {
                push(
                    &mut report,
                    ViolationKind::ClosedComponent,
                    None,
                    None,
                    "closed component in a planar diagram".into(),
                );
            }
        }
    }
    report
}
