//! Kauffman bracket by direct state sum, independent of the matrix
//! evaluation.
//!
//! Each crossing is smoothed either vertically (the two strands pass
//! straight up) or horizontally (a cap on the inputs and a cup on the
//! outputs). For `CrossPos` the vertical smoothing carries `A` and the
//! horizontal one `A^-1`; `CrossNeg` is the reverse. The normalization makes
//! a single loop evaluate to 1.

use rayon::prelude::*;

use super::ring::{loop_value, Laurent};
use super::EvalError;
use crate::diagram::{trace_components, writhe, Diagram, EventKind};

/// Largest crossing count accepted by the state sum.
pub const MAX_STATE_SUM_CROSSINGS: usize = 24;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Nodes are strand positions on the levels between sequential events.
struct Layout {
    offsets: Vec<usize>,
    nodes: usize,
    events: Vec<(usize, EventKind, usize)>,
}

fn layout(d: &Diagram) -> Layout {
    let events = d.sequential_events();
    let mut offsets = Vec::with_capacity(events.len() + 1);
    let mut width = d.source().len();
    let mut total = 0;
    let mut evs = Vec::with_capacity(events.len());
    for (level, e) in events.iter().enumerate() {
        offsets.push(total);
        total += width;
        evs.push((level, e.kind, e.position));
        width = width - e.kind.in_arity() + e.kind.out_arity();
    }
    offsets.push(total);
    total += width;
    Layout {
        offsets,
        nodes: total,
        events: evs,
    }
}

fn count_loops(lay: &Layout, widths: &[usize], state: u64) -> usize {
    let mut uf = UnionFind::new(lay.nodes);
    let mut crossing = 0;
    for &(level, kind, p) in &lay.events {
        let lo = lay.offsets[level];
        let hi = lay.offsets[level + 1];
        let w = widths[level];
        let (i, o) = (kind.in_arity(), kind.out_arity());
        for x in 0..p {
            uf.union(lo + x, hi + x);
        }
        for x in p + i..w {
            uf.union(lo + x, hi + x - i + o);
        }
        match kind {
            EventKind::Id(_) => uf.union(lo + p, hi + p),
            EventKind::Cup(_) => uf.union(hi + p, hi + p + 1),
            EventKind::Cap(_) => uf.union(lo + p, lo + p + 1),
            EventKind::CrossPos(..) | EventKind::CrossNeg(..) => {
                if state >> crossing & 1 == 0 {
                    uf.union(lo + p, hi + p);
                    uf.union(lo + p + 1, hi + p + 1);
                } else {
                    uf.union(lo + p, lo + p + 1);
                    uf.union(hi + p, hi + p + 1);
                }
                crossing += 1;
            }
        }
    }
    (0..lay.nodes).filter(|&x| uf.find(x) == x).count()
}

/// Normalized bracket of a closed, nonempty diagram.
pub fn bracket_state_sum(d: &Diagram) -> Result<Laurent, EvalError> {
    let comps = trace_components(d);
    if comps.iter().any(|c| !c.closed) || !d.is_closed() {
        return Err(EvalError::OpenComponents);
    }
    if comps.is_empty() {
        return Err(EvalError::EmptyDiagram);
    }
    let lay = layout(d);
    let mut widths = Vec::new();
    let mut width = d.source().len();
    for &(_, kind, _) in &lay.events {
        widths.push(width);
        width = width - kind.in_arity() + kind.out_arity();
    }
    let signs: Vec<i64> = lay
        .events
        .iter()
        .filter_map(|&(_, kind, _)| match kind {
            EventKind::CrossPos(..) => Some(1),
            EventKind::CrossNeg(..) => Some(-1),
            _ => None,
        })
        .collect();
    let n = signs.len();
    if n > MAX_STATE_SUM_CROSSINGS {
        return Err(EvalError::TooLarge(n));
    }
    let delta = loop_value();
    let max_loops = lay.nodes / 2 + 1;
    let powers: Vec<Laurent> = (0..=max_loops)
        .map(|k| delta.pow(k as i64).expect("nonnegative power"))
        .collect();
    let total = (0u64..1 << n)
        .into_par_iter()
        .map(|state| {
            let exp: i64 = signs
                .iter()
                .enumerate()
                .map(|(i, s)| if state >> i & 1 == 0 { *s } else { -*s })
                .sum();
            let loops = count_loops(&lay, &widths, state);
            &Laurent::monomial(1, exp) * &powers[loops - 1]
        })
        .reduce(Laurent::zero, |a, b| &a + &b);
    Ok(total)
}

/// `(-A^3)^(-writhe) · bracket`, invariant under removal of kinks.
pub fn jones_normalized(d: &Diagram) -> Result<Laurent, EvalError> {
    let b = bracket_state_sum(d)?;
    let w = writhe(d).total;
    let factor = Laurent::monomial(-1, 3).pow(-w).expect("unit");
    Ok(&factor * &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{hopf_link, mirror, trefoil, unknot, unlink};

    fn l(s: &str) -> Laurent {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(bracket_state_sum(&unknot()).unwrap(), l("1"));
        assert_eq!(bracket_state_sum(&unlink(2)).unwrap(), loop_value());
        assert_eq!(jones_normalized(&unlink(2)).unwrap(), loop_value());
        assert_eq!(bracket_state_sum(&hopf_link()).unwrap(), l("-A^4-A^-4"));
        assert_eq!(bracket_state_sum(&trefoil()).unwrap(), l("-A^5-A^-3+A^-7"));
        assert_eq!(jones_normalized(&trefoil()).unwrap(), l("-A^-16+A^-12+A^-4"));
    }

    #[test]
    fn mirror_inverts_variable() {
        let t = jones_normalized(&trefoil()).unwrap();
        let m = jones_normalized(&mirror(&trefoil())).unwrap();
        assert_eq!(m, t.invert_variable());
        assert_ne!(m, t);
    }

    #[test]
    fn open_diagrams_rejected() {
        let d = crate::diagram::zigzag_left(0);
        assert_eq!(bracket_state_sum(&d), Err(EvalError::OpenComponents));
    }
}
