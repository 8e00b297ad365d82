use super::{Diagram, EventKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Source(usize),
    Target(usize),
}

/// A passage of a component through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrossingVisit {
    pub slice: usize,
    pub event: usize,
    pub over: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub closed: bool,
    /// First and last endpoint of an open component, in traversal order.
    pub endpoints: Option<(Endpoint, Endpoint)>,
    pub crossings: Vec<CrossingVisit>,
    /// Number of strand segments traversed.
    pub length: usize,
}

/// `+1` or `-1` for a crossing, `0` for any other event.
///
/// With both strands oriented the same way, `CrossPos` is positive; an odd
/// label reverses a strand and therefore the sign.
pub fn crossing_sign(kind: EventKind) -> i64 {
    let parity = |a: i64, b: i64| {
        if (a - b).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    };
    match kind {
        EventKind::CrossPos(a, b) => parity(a, b),
        EventKind::CrossNeg(a, b) => -parity(a, b),
        _ => 0,
    }
}

#[derive(Clone, Copy, Debug)]
struct Edge {
    a: usize,
    b: usize,
    crossing: Option<CrossingVisit>,
}

struct StrandGraph {
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
    source_nodes: Vec<usize>,
    target_nodes: Vec<usize>,
}

impl StrandGraph {
    fn build(d: &Diagram) -> Self {
        let n = d.slices.len();
        let mut offsets = Vec::with_capacity(n + 2);
        let mut total = 0usize;
        for l in 0..=n {
            offsets.push(total);
            total += if l < n {
                d.slices[l].input.len()
            } else {
                d.target.len()
            };
        }
        let mut edges = Vec::new();
        for (s, slice) in d.slices.iter().enumerate() {
            let lo = offsets[s];
            let hi = offsets[s + 1];
            let width = slice.input.len();
            let mut i = 0usize;
            let mut o = 0usize;
            let straight = |edges: &mut Vec<Edge>, i: usize, o: usize| {
                edges.push(Edge {
                    a: lo + i,
                    b: hi + o,
                    crossing: None,
                })
            };
            for (idx, ev) in slice.events.iter().enumerate() {
                while i < ev.position {
                    straight(&mut edges, i, o);
                    i += 1;
                    o += 1;
                }
                match ev.kind {
                    EventKind::Id(_) => {
                        straight(&mut edges, i, o);
                    }
                    EventKind::Cup(_) => edges.push(Edge {
                        a: hi + o,
                        b: hi + o + 1,
                        crossing: None,
                    }),
                    EventKind::Cap(_) => edges.push(Edge {
                        a: lo + i,
                        b: lo + i + 1,
                        crossing: None,
                    }),
                    EventKind::CrossPos(..) | EventKind::CrossNeg(..) => {
                        let left_over = matches!(ev.kind, EventKind::CrossPos(..));
                        let visit = |over| {
                            Some(CrossingVisit {
                                slice: s,
                                event: idx,
                                over,
                            })
                        };
                        edges.push(Edge {
                            a: lo + i,
                            b: hi + o + 1,
                            crossing: visit(left_over),
                        });
                        edges.push(Edge {
                            a: lo + i + 1,
                            b: hi + o,
                            crossing: visit(!left_over),
                        });
                    }
                }
                i += ev.kind.in_arity();
                o += ev.kind.out_arity();
            }
            while i < width {
                straight(&mut edges, i, o);
                i += 1;
                o += 1;
            }
        }
        let mut incident = vec![Vec::new(); total];
        for (k, e) in edges.iter().enumerate() {
            incident[e.a].push(k);
            incident[e.b].push(k);
        }
        StrandGraph {
            edges,
            incident,
            source_nodes: (0..d.source.len()).collect(),
            target_nodes: (0..d.target.len()).map(|j| offsets[n] + j).collect(),
        }
    }

    fn endpoint(&self, node: usize) -> Option<Endpoint> {
        if let Some(i) = self.source_nodes.iter().position(|&x| x == node) {
            return Some(Endpoint::Source(i));
        }
        self.target_nodes
            .iter()
            .position(|&x| x == node)
            .map(Endpoint::Target)
    }
}

/// Components of the underlying 1-manifold, with edge-to-component map.
fn components_with_edges(d: &Diagram) -> (Vec<Component>, Vec<usize>) {
    if d.slices.is_empty() {
        let comps = (0..d.source.len())
            .map(|i| Component {
                closed: false,
                endpoints: Some((Endpoint::Source(i), Endpoint::Target(i))),
                crossings: Vec::new(),
                length: 0,
            })
            .collect();
        return (comps, Vec::new());
    }
    let g = StrandGraph::build(d);
    let mut edge_comp = vec![usize::MAX; g.edges.len()];
    let mut comps = Vec::new();
    let starts: Vec<usize> = g
        .source_nodes
        .iter()
        .chain(g.target_nodes.iter())
        .copied()
        .chain(0..g.incident.len())
        .collect();
    for start in starts {
        let Some(&first) = g.incident[start].iter().find(|&&e| edge_comp[e] == usize::MAX) else {
            continue;
        };
        let id = comps.len();
        let mut crossings = Vec::new();
        let mut length = 0;
        let mut node = start;
        let mut edge = first;
        let closed;
        loop {
            edge_comp[edge] = id;
            length += 1;
            let e = g.edges[edge];
            if let Some(v) = e.crossing {
                crossings.push(v);
            }
            node = if e.a == node { e.b } else { e.a };
            if node == start {
                closed = true;
                break;
            }
            match g.incident[node].iter().find(|&&k| k != edge) {
                Some(&next) => edge = next,
                None => {
                    closed = false;
                    break;
                }
            }
        }
        let endpoints = if closed {
            None
        } else {
            Some((
                g.endpoint(start).expect("open strand starts on the boundary"),
                g.endpoint(node).expect("open strand ends on the boundary"),
            ))
        };
        comps.push(Component {
            closed,
            endpoints,
            crossings,
            length,
        });
    }
    (comps, edge_comp)
}

/// Components in a fixed order: open components by their first boundary
/// endpoint (sources before targets), then closed components bottom-up.
pub fn trace_components(d: &Diagram) -> Vec<Component> {
    components_with_edges(d).0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Writhe {
    /// Sum over all crossings.
    pub total: i64,
    /// Sum over self-crossings of each component, in the order of
    /// [`trace_components`].
    pub per_component: Vec<i64>,
}

pub fn writhe(d: &Diagram) -> Writhe {
    let (comps, edge_comp) = components_with_edges(d);
    let mut per_component = vec![0i64; comps.len()];
    let mut total = 0;
    if d.slices.is_empty() {
        return Writhe {
            total,
            per_component,
        };
    }
    let g = StrandGraph::build(d);
    let mut seen = std::collections::HashMap::new();
    for (k, e) in g.edges.iter().enumerate() {
        if let Some(v) = e.crossing {
            seen.entry((v.slice, v.event)).or_insert_with(Vec::new).push(edge_comp[k]);
        }
    }
    for ((s, ev), owners) in seen {
        let sign = crossing_sign(d.slices[s].events[ev].kind);
        total += sign;
        if owners[0] == owners[1] {
            per_component[owners[0]] += sign;
        }
    }
    Writhe {
        total,
        per_component,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{hopf_link, trefoil, unknot, AmbientDim, Event, ObjectWord};

    #[test]
    fn signs() {
        assert_eq!(crossing_sign(EventKind::CrossPos(0, 0)), 1);
        assert_eq!(crossing_sign(EventKind::CrossNeg(0, 2)), -1);
        assert_eq!(crossing_sign(EventKind::CrossPos(0, 1)), -1);
        assert_eq!(crossing_sign(EventKind::CrossNeg(1, 0)), 1);
        assert_eq!(crossing_sign(EventKind::Cup(0)), 0);
    }

    #[test]
    fn closed_examples() {
        let u = trace_components(&unknot());
        assert_eq!(u.len(), 1);
        assert!(u[0].closed);
        let h = hopf_link();
        let comps = trace_components(&h);
        assert_eq!(comps.len(), 2);
        let w = writhe(&h);
        assert_eq!(w.total, 2);
        assert_eq!(w.per_component, vec![0, 0]);
        let t = trefoil();
        assert_eq!(trace_components(&t).len(), 1);
        let w = writhe(&t);
        assert_eq!(w.total, 3);
        assert_eq!(w.per_component, vec![3]);
    }

    #[test]
    fn crossing_strand_swaps_positions() {
        let d = Diagram::elementary(EventKind::CrossPos(0, 1), AmbientDim::Braided).unwrap();
        let comps = trace_components(&d);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].endpoints, Some((Endpoint::Source(0), Endpoint::Target(1))));
        assert!(comps[0].crossings[0].over);
        assert_eq!(comps[1].endpoints, Some((Endpoint::Source(1), Endpoint::Target(0))));
        assert!(!comps[1].crossings[0].over);
    }

    #[test]
    fn turnback_and_identity() {
        let id = Diagram::identity(AmbientDim::Planar, ObjectWord::from([3, 4]));
        assert_eq!(trace_components(&id).len(), 2);
        let cap = Diagram::new(
            AmbientDim::Planar,
            ObjectWord::from([0, 1, 2]),
            vec![vec![Event::new(EventKind::Cap(0), 0)]],
        )
        .unwrap();
        let comps = trace_components(&cap);
        assert_eq!(comps[0].endpoints, Some((Endpoint::Source(0), Endpoint::Source(1))));
        assert_eq!(comps[1].endpoints, Some((Endpoint::Source(2), Endpoint::Target(0))));
    }
}
