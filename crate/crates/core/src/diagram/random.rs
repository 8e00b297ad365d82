//! Random well-typed diagrams for tests and benchmarks.

use std::ops::RangeInclusive;

use rand::Rng;

use super::{braid_closure, AmbientDim, Diagram, Event, EventKind, Label, ObjectWord};

/// Events applicable to `word` under `dim`, with cup labels drawn from
/// `labels`.
pub fn applicable_events(
    dim: AmbientDim,
    word: &ObjectWord,
    labels: &RangeInclusive<Label>,
) -> Vec<Event> {
    let w = &word.0;
    let mut out = Vec::new();
    for p in 0..=w.len() {
        for k in labels.clone() {
            if labels.contains(&(k + 1)) {
                out.push(Event::new(EventKind::Cup(k), p));
            }
        }
    }
    for p in 0..w.len().saturating_sub(1) {
        if dim.labels_match(w[p + 1], w[p] + 1) {
            out.push(Event::new(EventKind::Cap(w[p]), p));
        }
        if dim.allows_crossings() {
            out.push(Event::new(EventKind::CrossPos(w[p], w[p + 1]), p));
            out.push(Event::new(EventKind::CrossNeg(w[p], w[p + 1]), p));
        }
    }
    out
}

/// A uniformly chosen applicable event at every step, one event per slice.
pub fn random_diagram<R: Rng>(
    rng: &mut R,
    dim: AmbientDim,
    source: ObjectWord,
    events: usize,
    labels: RangeInclusive<Label>,
) -> Diagram {
    let mut word = source.clone();
    let mut chosen = Vec::with_capacity(events);
    for _ in 0..events {
        let options = applicable_events(dim, &word, &labels);
        let e = options[rng.gen_range(0..options.len())];
        chosen.push(e);
        word = super::Slice {
            input: word,
            events: vec![e],
        }
        .output(dim)
        .expect("applicable event types");
    }
    Diagram::from_sequence(dim, source, chosen).expect("random diagram types")
}

/// Closure of a random braid word.
pub fn random_braid_closure<R: Rng>(rng: &mut R, strands: usize, length: usize) -> Diagram {
    assert!(strands >= 2);
    let word: Vec<(usize, bool)> = (0..length)
        .map(|_| (rng.gen_range(0..strands - 1), rng.gen_bool(0.5)))
        .collect();
    braid_closure(strands, &word)
}
