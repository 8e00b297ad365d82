use crate::diagram::{Diagram, Event, EventKind, ObjectWord};

#[derive(Clone, Debug, Default)]
struct Gap {
    /// The event between two of whose outputs the gap lies.
    origin: Option<usize>,
    /// Caps that closed at this gap.
    marks: Vec<usize>,
}

/// Direct dependencies between the events of a sequential layout: `j`
/// depends on `i < j` when the two cannot be interchanged once adjacent,
/// even after moving `j` down past the events in between. That happens
/// when `j` consumes an output of `i`, when `j` consumes strands on both
/// sides of the gap left by the cap `i`, or when the cup `j` is emitted in
/// a gap between two outputs of `i`.
pub(crate) fn dependencies(source_len: usize, events: &[Event]) -> Vec<Vec<usize>> {
    // gaps[q] lies left of strand q; producers[q] made strand q
    let mut producers: Vec<Option<usize>> = vec![None; source_len];
    let mut gaps: Vec<Gap> = vec![Gap::default(); source_len + 1];
    let mut deps = Vec::with_capacity(events.len());
    for (j, e) in events.iter().enumerate() {
        let (p, inn, out) = (e.position, e.kind.in_arity(), e.kind.out_arity());
        let mut d = Vec::new();
        if inn == 0 {
            d.extend(gaps[p].origin);
            let left = Gap {
                origin: gaps[p].origin,
                marks: Vec::new(),
            };
            let right = std::mem::take(&mut gaps[p]);
            let inner = (1..out).map(|_| Gap {
                origin: Some(j),
                marks: Vec::new(),
            });
            gaps.splice(p..=p, std::iter::once(left).chain(inner).chain(std::iter::once(right)));
            producers.splice(p..p, vec![Some(j); out]);
        } else {
            d.extend(producers[p..p + inn].iter().flatten());
            for g in &gaps[p + 1..p + inn] {
                d.extend(&g.marks);
            }
            producers.splice(p..p + inn, vec![Some(j); out]);
            if out == 0 {
                let mut merged = Gap {
                    origin: gaps[p].origin,
                    marks: Vec::new(),
                };
                for g in &gaps[p..=p + inn] {
                    merged.marks.extend(&g.marks);
                }
                merged.marks.push(j);
                gaps.splice(p..=p + inn, std::iter::once(merged));
            } else {
                let inner = (1..out).map(|_| Gap {
                    origin: Some(j),
                    marks: Vec::new(),
                });
                let left = std::mem::take(&mut gaps[p]);
                let right = std::mem::take(&mut gaps[p + inn]);
                gaps.splice(p..=p + inn, std::iter::once(left).chain(inner).chain(std::iter::once(right)));
            }
        }
        d.sort_unstable();
        d.dedup();
        deps.push(d);
    }
    deps
}

/// `reach[i][j]`: `j` depends on `i` through a chain of direct dependencies.
pub(crate) fn reachability(deps: &[Vec<usize>]) -> Vec<Vec<bool>> {
    let n = deps.len();
    let mut reach = vec![vec![false; n]; n];
    for j in 0..n {
        for &i in &deps[j] {
            reach[i][j] = true;
            for k in 0..i {
                if reach[k][i] {
                    reach[k][j] = true;
                }
            }
        }
    }
    reach
}

/// Swap two adjacent events with disjoint support, or `None`.
pub(crate) fn interchange(e1: Event, e2: Event) -> Option<(Event, Event)> {
    let (p1, p2) = (e1.position, e2.position);
    let (in1, out1) = (e1.kind.in_arity(), e1.kind.out_arity());
    let (in2, out2) = (e2.kind.in_arity(), e2.kind.out_arity());
    if p2 + in2 <= p1 {
        Some((e2, Event::new(e1.kind, p1 + out2 - in2)))
    } else if p2 >= p1 + out1 {
        Some((Event::new(e2.kind, p2 + in1 - out1), e1))
    } else {
        None
    }
}

/// Reorder so that the events at `indices` (increasing) become
/// consecutive, moving only events that are independent of them. Returns
/// the new sequence and the index of the first chosen event.
pub(crate) fn bring_together(source_len: usize, events: &[Event], indices: &[usize]) -> Option<(Vec<Event>, usize)> {
    let (&first, &last) = (indices.first()?, indices.last()?);
    let deps = dependencies(source_len, events);
    let reach = reachability(&deps);
    let chosen = |k: usize| indices.binary_search(&k).is_ok();
    let mut before = Vec::new();
    let mut after = Vec::new();
    for k in first + 1..last {
        if chosen(k) {
            continue;
        }
        let below = indices.iter().any(|&c| reach[c][k]);
        let above = indices.iter().any(|&c| reach[k][c]);
        match (below, above) {
            (true, true) => return None,
            (true, false) => after.push(k),
            _ => before.push(k),
        }
    }
    let mut order: Vec<usize> = (0..first).collect();
    order.extend(&before);
    let start = order.len();
    order.extend(indices);
    order.extend(&after);
    order.extend(last + 1..events.len());
    Some((permute(events, &order)?, start))
}

/// Realize a dependency-respecting permutation by adjacent interchanges.
pub(crate) fn permute(events: &[Event], order: &[usize]) -> Option<Vec<Event>> {
    let mut rank = vec![0usize; events.len()];
    for (r, &k) in order.iter().enumerate() {
        rank[k] = r;
    }
    let mut cur: Vec<(usize, Event)> = events.iter().enumerate().map(|(k, e)| (rank[k], *e)).collect();
    let n = cur.len();
    for pass in 0..n {
        let mut swapped = false;
        for i in 0..n.saturating_sub(1 + pass) {
            if cur[i].0 > cur[i + 1].0 {
                let (a, b) = interchange(cur[i].1, cur[i + 1].1)?;
                let (ra, rb) = (cur[i].0, cur[i + 1].0);
                cur[i] = (rb, a);
                cur[i + 1] = (ra, b);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Some(cur.into_iter().map(|(_, e)| e).collect())
}

#[derive(Clone, Debug)]
enum Item {
    Pass(usize),
    Ev(EventKind),
}

impl Item {
    fn in_arity(&self) -> usize {
        match self {
            Item::Pass(_) => 1,
            Item::Ev(kind) => kind.in_arity(),
        }
    }

    fn out_arity(&self) -> usize {
        match self {
            Item::Pass(_) => 1,
            Item::Ev(kind) => kind.out_arity(),
        }
    }
}

/// Slices as item lists over strand identifiers; every event sits in the
/// lowest slice it can be slid down to.
struct Stack {
    slices: Vec<Vec<Item>>,
    /// Strands of the top boundary.
    top: Vec<usize>,
    labels: Vec<crate::diagram::Label>,
}

impl Stack {
    fn passes_through(items: &[Item], inputs: &[usize]) -> Option<usize> {
        let t = items.iter().position(|it| matches!(it, Item::Pass(s) if *s == inputs[0]))?;
        let run = items.get(t..t + inputs.len())?;
        let ok = run.iter().zip(inputs).all(|(it, s)| matches!(it, Item::Pass(x) if x == s));
        ok.then_some(t)
    }

    fn fresh(&mut self, labels: Vec<crate::diagram::Label>) -> Vec<usize> {
        let first = self.labels.len();
        self.labels.extend(labels);
        (first..self.labels.len()).collect()
    }

    fn new_slice(&mut self) {
        self.slices.push(self.top.iter().map(|&s| Item::Pass(s)).collect());
    }

    fn consume(&mut self, e: Event) {
        let inputs: Vec<usize> = self.top[e.position..e.position + e.kind.in_arity()].to_vec();
        let mut m = self.slices.len();
        while m > 0 && Self::passes_through(&self.slices[m - 1], &inputs).is_some() {
            m -= 1;
        }
        if m == self.slices.len() {
            self.new_slice();
        }
        let outputs = self.fresh(e.kind.outputs());
        for (h, slice) in self.slices.iter_mut().enumerate().skip(m) {
            let t = Self::passes_through(slice, &inputs).expect("inputs pass through");
            let replacement: Vec<Item> = if h == m {
vec![Item::Ev(e.kind)]
            } else {
                outputs.iter().map(|&s| Item::Pass(s)).collect()
            };
            slice.splice(t..t + inputs.len(), replacement);
        }
        self.top.splice(e.position..e.position + inputs.len(), outputs);
        cups_before_caps(&mut self.slices[m]);
    }

    /// Lowest placement `(slice, slot)` of a zero-input event sitting at
    /// `slot` of slice `m`, with the slots used in the slices above it.
    fn sink(&self, m: usize, slot: usize) -> (usize, usize, Vec<usize>) {
        if m == 0 {
            return (0, slot, vec![slot]);
        }
        let items: &[Item] = if m == self.slices.len() { &[] } else { &self.slices[m] };
        let gap = if m == self.slices.len() {
            slot
        } else {
            items[..slot].iter().map(Item::in_arity).sum()
        };
        let below = &self.slices[m - 1];
        let mut best: Option<(usize, usize, Vec<usize>)> = None;
        let mut acc = 0;
        for t in 0..=below.len() {
            if acc == gap {
                let cand = self.sink(m - 1, t);
                if best.as_ref().map_or(true, |b| (cand.0, cand.1) < (b.0, b.1)) {
                    best = Some(cand);
                }
            }
            if let Some(it) = below.get(t) {
                acc += it.out_arity();
            }
        }
        match best {
            Some((level, s, mut path)) => {
                path.push(slot);
                (level, s, path)
            }
            None => (m, slot, vec![slot]),
        }
    }

    fn emit(&mut self, e: Event) {
        let (m, slot, path) = self.sink(self.slices.len(), e.position);
        if m == self.slices.len() {
            self.new_slice();
        }
        let outputs = self.fresh(e.kind.outputs());
        self.slices[m].insert(slot, Item::Ev(e.kind));
        // path runs bottom to top: path[0] is the slot in slice m
        for (h, &t) in path.iter().enumerate().skip(1) {
            if m + h < self.slices.len() {
                self.slices[m + h].splice(t..t, outputs.iter().map(|&s| Item::Pass(s)));
            }
        }
        self.top.splice(e.position..e.position, outputs);
        cups_before_caps(&mut self.slices[m]);
    }
}

/// Within a run of adjacent cups and caps every cup can slide to the left
/// of every cap; put the cups first.
fn cups_before_caps(items: &mut [Item]) {
    let turn = |it: &Item| matches!(it, Item::Ev(EventKind::Cup(_) | EventKind::Cap(_)));
    let mut i = 0;
    while i < items.len() {
        if !turn(&items[i]) {
            i += 1;
            continue;
        }
        let mut j = i;
        while j < items.len() && turn(&items[j]) {
            j += 1;
        }
        items[i..j].sort_by_key(|it| matches!(it, Item::Ev(EventKind::Cap(_))));
        i = j;
    }
}

/// The interchange-invariant layout: events are inserted bottom to top and
/// each slides down as far as interchange allows, a zero-input event
/// choosing the lowest, then leftmost, of the places it can reach. Cups
/// moved left of caps may open room below, so this repeats until stable.
pub fn canonical_layout(d: &Diagram) -> Diagram {
    let mut cur = sink_all(d);
    loop {
        let next = sink_all(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Order in which every zero-input event comes as late as its dependents
/// allow.
fn cups_last(source_len: usize, events: &[Event]) -> Vec<usize> {
    fn visit(k: usize, deps: &[Vec<usize>], done: &mut [bool], order: &mut Vec<usize>) {
        if done[k] {
            return;
        }
        done[k] = true;
        for &i in &deps[k] {
            visit(i, deps, done, order);
        }
        order.push(k);
    }
    let deps = dependencies(source_len, events);
    let mut done = vec![false; events.len()];
    let mut order = Vec::with_capacity(events.len());
    for (k, e) in events.iter().enumerate() {
        if e.kind.in_arity() > 0 {
            visit(k, &deps, &mut done, &mut order);
        }
    }
    for k in 0..events.len() {
        visit(k, &deps, &mut done, &mut order);
    }
    order
}

fn sink_all(d: &Diagram) -> Diagram {
    let n = d.source().len();
    let events = d.sequential_events();
    let events = permute(&events, &cups_last(n, &events)).unwrap_or(events);
    let mut stack = Stack {
        slices: Vec::new(),
        top: Vec::new(),
        labels: Vec::new(),
    };
    stack.top = stack.fresh(d.source().0.clone());
    for e in events {
        if e.kind.in_arity() == 0 {
            stack.emit(e);
        } else {
            stack.consume(e);
        }
    }
    let slices = stack
        .slices
        .iter()
        .map(|items| {
            let mut pos = 0;
            let mut events = Vec::new();
            for it in items {
                if let Item::Ev(kind) = it {
                    events.push(Event::new(*kind, pos));
                }
                pos += it.in_arity();
            }
            events
        })
        .collect();
    Diagram::new(d.dim(), d.source().clone(), slices).expect("canonical layout retypes")
}

/// `(number of events, sum of slice heights)` in the canonical layout.
pub fn measure(d: &Diagram) -> (usize, usize) {
    let c = canonical_layout(d);
    let heights = c
        .slices()
        .iter()
        .enumerate()
        .map(|(h, s)| h * s.events.len())
        .sum();
    (c.num_events(), heights)
}

/// Key identifying a diagram up to interchange.
pub(crate) fn layout_key(d: &Diagram) -> (ObjectWord, Vec<Event>) {
    (d.source().clone(), canonical_layout(d).sequential_events())
}
