use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::layout::{bring_together, canonical_layout, dependencies, layout_key};
use super::{apply_move, applicable_moves, insertion_moves, moves_at, normalize_planar, Direction, MoveKind, RewriteError};
use crate::diagram::{AmbientDim, Diagram, Event, EventKind, ObjectWord};
use crate::eval::datum::{gauge_transform, random_gauge, random_kauffman_specialization, swap_datum};
use crate::eval::{evaluate, kauffman_datum, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Equality {
    Equal,
    Distinct,
    Unknown,
}

/// Limits for the bidirectional search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Total number of moves on the two sides together.
    pub max_depth: usize,
    /// Distinct layouts visited before giving up.
    pub max_states: usize,
    /// Whether backward moves that insert events are explored.
    pub insertions: bool,
    /// Seed of the random datum used to separate diagrams.
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_depth: 6,
            max_states: 20_000,
            insertions: true,
            seed: 0x5eed,
        }
    }
}

fn is_reduction(kind: MoveKind) -> bool {
    matches!(
        kind,
        MoveKind::ZigZagL(_) | MoveKind::ZigZagR(_) | MoveKind::R2 { .. } | MoveKind::Kink2
    )
}

/// Layouts of `d` in which groups of events related by direct
/// dependencies are adjacent, each with the index of the group's first
/// event. Pairs serve zig-zags and R2, triples of crossings serve R3.
fn gathered_layouts(d: &Diagram, triples: bool) -> Vec<(Vec<Event>, usize)> {
    let events = d.sequential_events();
    let n = d.source().len();
    let deps = dependencies(n, &events);
    let mut succ = vec![Vec::new(); events.len()];
    for (j, ds) in deps.iter().enumerate() {
        for &i in ds {
            succ[i].push(j);
        }
    }
    let mut out = Vec::new();
    for i in 0..events.len() {
        for &j in &succ[i] {
            if let Some(l) = bring_together(n, &events, &[i, j]) {
                out.push(l);
            }
            if !triples || !events[i].kind.is_crossing() || !events[j].kind.is_crossing() {
                continue;
            }
            for &k in &succ[j] {
                if events[k].kind.is_crossing() && deps[k].contains(&i) {
                    if let Some(l) = bring_together(n, &events, &[i, j, k]) {
                        out.push(l);
                    }
                }
            }
        }
    }
    out
}

fn rebuild(d: &Diagram, events: Vec<Event>) -> Diagram {
    Diagram::from_sequence(d.dim(), d.source().clone(), events).expect("interchanges keep typing")
}

/// Every diagram reached from `d` by one reducing move (zig-zag, R2,
/// Kink2) applied modulo interchange, deduplicated up to interchange and
/// returned in canonical layout.
pub fn reduction_successors(d: &Diagram, dim: AmbientDim) -> Vec<Diagram> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |r: Diagram| {
        let c = canonical_layout(&r);
        if seen.insert(layout_key(&c)) {
            out.push(c);
        }
    };
    let mut layouts: Vec<(Vec<Event>, Option<usize>)> = gathered_layouts(d, false)
        .into_iter()
        .map(|(e, s)| (e, Some(s)))
        .collect();
    layouts.push((canonical_layout(d).sequential_events(), None));
    for (events, start) in layouts {
        let base = rebuild(d, events);
        let ev = base.sequential_events();
        let indices: Vec<usize> = match start {
            Some(s) => vec![s],
            None => (0..ev.len()).collect(),
        };
        for i in indices {
            for m in moves_at(&ev, i, dim) {
                if is_reduction(m.kind) && m.direction == Direction::Forward {
                    if let Ok(r) = apply_move(&base, m) {
                        push(r);
                    }
                }
            }
        }
    }
    out
}

/// Apply reductions until none is left. In `Symmetric` every negative
/// crossing is first turned positive.
pub fn simplify(d: &Diagram, dim: AmbientDim) -> Diagram {
    let mut cur = d.promote(dim);
    if dim == AmbientDim::Symmetric {
        let events: Vec<Event> = cur
            .sequential_events()
            .into_iter()
            .map(|e| match e.kind {
                EventKind::CrossNeg(a, b) => {
                    Event::new(EventKind::CrossPos(a, b), e.position)
                }
                _ => e,
            })
            .collect();
        cur = rebuild(&cur, events);
    }
    loop {
        match reduction_successors(&cur, dim).into_iter().next() {
            Some(next) => cur = next,
            None => return canonical_layout(&cur),
        }
    }
}

type Key = (ObjectWord, Vec<Event>);

fn neighbours(d: &Diagram, dim: AmbientDim, insertions: bool) -> Vec<Diagram> {
    let mut bases = vec![canonical_layout(d)];
    bases.extend(gathered_layouts(d, true).into_iter().map(|(e, _)| rebuild(d, e)));
    let mut out = Vec::new();
    for base in &bases {
        for m in applicable_moves(base, dim) {
            if m.kind == MoveKind::Interchange {
                continue;
            }
            if let Ok(r) = apply_move(base, m) {
                out.push(r);
            }
        }
    }
    if insertions {
        let base = &bases[0];
        for m in insertion_moves(base, dim) {
            if let Ok(r) = apply_move(base, m) {
                out.push(r);
            }
        }
    }
    out
}

/// Decide `d1 = d2` as morphisms in ambient dimension `dim`.
///
/// `Planar` compares normal forms. Otherwise both sides are simplified,
/// then a bidirectional search over layouts runs within `budget`; failing
/// that, differing values under a validated datum give `Distinct`.
pub fn equal(d1: &Diagram, d2: &Diagram, dim: AmbientDim, budget: SearchBudget) -> Result<Equality, RewriteError> {
    let dim = dim.max(d1.dim()).max(d2.dim());
    if !dim.words_match(d1.source(), d2.source()) || !dim.words_match(d1.target(), d2.target()) {
        return Err(RewriteError::BoundaryMismatch(format!(
            "{} -> {} vs {} -> {}",
            d1.source(),
            d1.target(),
            d2.source(),
            d2.target()
        )));
    }
    if dim == AmbientDim::Planar {
        let same = normalize_planar(d1)? == normalize_planar(d2)?;
        return Ok(if same { Equality::Equal } else { Equality::Distinct });
    }
    for d in [d1, d2] {
        let report = crate::diagram::validate(&d.promote(dim), dim);
        if !report.is_valid() {
            return Err(RewriteError::InvalidDiagram(report.to_string().trim_end().to_string()));
        }
    }
    let a = simplify(&d1.promote(dim).reduce_labels(), dim);
    let b = simplify(&d2.promote(dim).reduce_labels(), dim);
    if search(&a, &b, dim, budget) {
        return Ok(Equality::Equal);
    }
    Ok(if separated(&a, &b, dim, budget.seed) {
        Equality::Distinct
    } else {
        Equality::Unknown
    })
}

fn search(a: &Diagram, b: &Diagram, dim: AmbientDim, budget: SearchBudget) -> bool {
    let (ka, kb) = (layout_key(a), layout_key(b));
    if ka == kb {
        return true;
    }
    let mut seen: [HashMap<Key, usize>; 2] = [HashMap::from([(ka, 0)]), HashMap::from([(kb, 0)])];
    let mut frontier = [vec![canonical_layout(a)], vec![canonical_layout(b)]];
    let mut depth = [0usize; 2];
    while depth[0] + depth[1] < budget.max_depth {
        let side = usize::from(frontier[1].len() < frontier[0].len());
        if frontier[side].is_empty() {
            return false;
        }
        let mut next = Vec::new();
        for d in &frontier[side] {
            for r in neighbours(d, dim, budget.insertions) {
                let c = canonical_layout(&r);
                let k = layout_key(&c);
                if seen[1 - side].contains_key(&k) {
                    return true;
                }
                if seen[side].contains_key(&k) {
                    continue;
                }
                seen[side].insert(k, depth[side] + 1);
                next.push(c);
                if seen[0].len() + seen[1].len() >= budget.max_states {
                    return false;
                }
            }
        }
        frontier[side] = next;
        depth[side] += 1;
    }
    false
}

fn differ<R: Ring>(a: &Diagram, b: &Diagram, datum: &crate::eval::RigidDatum<R>) -> bool {
    match (evaluate(a, datum), evaluate(b, datum)) {
        (Ok(x), Ok(y)) => x != y,
        _ => false,
    }
}

fn separated(a: &Diagram, b: &Diagram, dim: AmbientDim, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match dim {
        AmbientDim::Symmetric => {
            let base = swap_datum(2);
            let g = random_gauge(&mut rng, 2);
            let gauged: crate::eval::RigidDatum<BigRational> =
                gauge_transform(&base, &g).expect("gauge is invertible");
            differ(a, b, &base) || differ(a, b, &gauged)
        }
        _ => differ(a, b, &kauffman_datum()) || differ(a, b, &random_kauffman_specialization(&mut rng)),
    }
}
