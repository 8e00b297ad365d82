use std::fmt;

use super::RewriteError;
use crate::diagram::{trace_components, validate, AmbientDim, Diagram, Endpoint, Event, EventKind, ObjectWord};

/// An arc of a normal form, endpoints in increasing order (sources before
/// targets).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc(pub Endpoint, pub Endpoint);

/// A non-crossing perfect matching on source and target positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarNormalForm {
    source: ObjectWord,
    target: ObjectWord,
    arcs: Vec<Arc>,
}

fn arc(a: Endpoint, b: Endpoint) -> Arc {
    if a <= b {
        Arc(a, b)
    } else {
        Arc(b, a)
    }
}

/// Position on the boundary circle: sources left to right, then targets
/// right to left.
fn circle(e: Endpoint, target_len: usize, source_len: usize) -> usize {
    match e {
        Endpoint::Source(i) => i,
        Endpoint::Target(j) => source_len + target_len - 1 - j,
    }
}

impl PlanarNormalForm {
    /// Check every invariant of a normal form.
    pub fn new(source: ObjectWord, target: ObjectWord, arcs: Vec<Arc>) -> Result<Self, RewriteError> {
        let bad = |m: &str| Err(RewriteError::InvalidDiagram(m.to_string()));
        let mut arcs: Vec<Arc> = arcs.into_iter().map(|a| arc(a.0, a.1)).collect();
        arcs.sort();
        let mut seen_s = vec![false; source.len()];
        let mut seen_t = vec![false; target.len()];
        for a in &arcs {
            for e in [a.0, a.1] {
                let slot = match e {
                    Endpoint::Source(i) => seen_s.get_mut(i),
                    Endpoint::Target(j) => seen_t.get_mut(j),
                };
                match slot {
                    Some(s) if !*s => *s = true,
                    _ => return bad("not a perfect matching"),
                }
            }
        }
        if seen_s.iter().chain(&seen_t).any(|s| !s) {
            return bad("not a perfect matching");
        }
        let nf = PlanarNormalForm { source, target, arcs };
        for a in &nf.arcs {
            let ok = match (a.0, a.1) {
                (Endpoint::Source(i), Endpoint::Target(j)) => nf.source.0[i] == nf.target.0[j],
                (Endpoint::Source(i), Endpoint::Source(j)) => nf.source.0[j] == nf.source.0[i] + 1,
                (Endpoint::Target(i), Endpoint::Target(j)) => nf.target.0[i] == nf.target.0[j] + 1,
                _ => false,
            };
            if !ok {
                return bad("arc labels violate the turnback rules");
            }
        }
        let (m, n) = (nf.source.len(), nf.target.len());
        let spans: Vec<(usize, usize)> = nf
            .arcs
            .iter()
            .map(|a| {
                let (x, y) = (circle(a.0, n, m), circle(a.1, n, m));
                (x.min(y), x.max(y))
            })
            .collect();
        for (i, &(a, b)) in spans.iter().enumerate() {
            for &(c, d) in &spans[i + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return bad("arcs interleave");
                }
            }
        }
        Ok(nf)
    }

    pub fn source(&self) -> &ObjectWord {
        &self.source
    }

    pub fn target(&self) -> &ObjectWord {
        &self.target
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn identity(word: ObjectWord) -> Self {
        let arcs = (0..word.len())
            .map(|i| Arc(Endpoint::Source(i), Endpoint::Target(i)))
            .collect();
        PlanarNormalForm {
            source: word.clone(),
            target: word,
            arcs,
        }
    }

    fn partner(&self, e: Endpoint) -> Endpoint {
        self.arcs
            .iter()
            .find_map(|a| {
                if a.0 == e {
                    Some(a.1)
                } else if a.1 == e {
                    Some(a.0)
                } else {
                    None
                }
            })
            .expect("perfect matching")
    }

    /// `self` then `other`, gluing targets of `self` to sources of `other`.
    pub fn compose(&self, other: &PlanarNormalForm) -> Result<PlanarNormalForm, RewriteError> {
        if self.target != other.source {
            return Err(RewriteError::BoundaryMismatch(format!("{} vs {}", self.target, other.source)));
        }
        #[derive(Clone, Copy, PartialEq)]
        enum Side {
            Lower,
            Upper,
        }
        let mut arcs = Vec::new();
        let mut used_mid = vec![false; self.target.len()];
        // walk from an outer endpoint through the middle until leaving
        let walk = |start: Endpoint, side: Side, used_mid: &mut Vec<bool>| -> Endpoint {
            let (mut side, mut e) = (side, start);
            loop {
                let next = if side == Side::Lower { self.partner(e) } else { other.partner(e) };
                match (side, next) {
                    (Side::Lower, Endpoint::Target(k)) => {
                        used_mid[k] = true;
                        side = Side::Upper;
                        e = Endpoint::Source(k);
                    }
                    (Side::Upper, Endpoint::Source(k)) => {
                        used_mid[k] = true;
                        side = Side::Lower;
                        e = Endpoint::Target(k);
                    }
                    (Side::Lower, s @ Endpoint::Source(_)) => return s,
                    (Side::Upper, Endpoint::Target(j)) => return Endpoint::Target(j),
                }
            }
        };
        for i in 0..self.source.len() {
            let end = walk(Endpoint::Source(i), Side::Lower, &mut used_mid);
            arcs.push(arc(Endpoint::Source(i), end));
        }
        for j in 0..other.target.len() {
            let end = walk(Endpoint::Target(j), Side::Upper, &mut used_mid);
            arcs.push(arc(Endpoint::Target(j), end));
        }
        if used_mid.iter().any(|u| !u) {
            return Err(RewriteError::ClosedComponent);
        }
        arcs.sort();
        arcs.dedup();
        PlanarNormalForm::new(self.source.clone(), other.target.clone(), arcs)
    }

    /// `self` to the left of `other`.
    pub fn tensor(&self, other: &PlanarNormalForm) -> PlanarNormalForm {
        let (m, n) = (self.source.len(), self.target.len());
        let shift = |e: Endpoint| match e {
            Endpoint::Source(i) => Endpoint::Source(i + m),
            Endpoint::Target(j) => Endpoint::Target(j + n),
        };
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().map(|a| Arc(shift(a.0), shift(a.1))));
        arcs.sort();
        PlanarNormalForm {
            source: self.source.concat(&other.source),
            target: self.target.concat(&other.target),
            arcs,
        }
    }

    /// The canonical diagram: caps closing source turnbacks innermost
    /// first, then cups opening target turnbacks outermost first.
    pub fn to_diagram(&self) -> Diagram {
        let mut events = Vec::new();
        let mut alive: Vec<usize> = (0..self.source.len()).collect();
        let mut turnbacks: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .filter_map(|a| match (a.0, a.1) {
                (Endpoint::Source(i), Endpoint::Source(j)) => Some((i, j)),
                _ => None,
            })
            .collect();
        turnbacks.sort_by_key(|&(i, j)| j - i);
        for (i, _) in turnbacks {
            let p = alive.iter().position(|&x| x == i).expect("alive");
            events.push(Event::new(EventKind::Cap(self.source.0[i]), p));
            alive.drain(p..p + 2);
        }
        let mut alive: Vec<usize> = (0..self.target.len()).collect();
        let mut turnbacks: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .filter_map(|a| match (a.0, a.1) {
                (Endpoint::Target(i), Endpoint::Target(j)) => Some((i, j)),
                _ => None,
            })
            .collect();
        turnbacks.sort_by_key(|&(i, j)| j - i);
        let mut cups = Vec::new();
        for (i, j) in turnbacks {
            let p = alive.iter().position(|&x| x == i).expect("alive");
            cups.push(Event::new(EventKind::Cup(self.target.0[j]), p));
            alive.drain(p..p + 2);
        }
        events.extend(cups.into_iter().rev());
        Diagram::from_sequence(AmbientDim::Planar, self.source.clone(), events).expect("normal form diagram")
    }
}

impl fmt::Display for PlanarNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |e: Endpoint| match e {
            Endpoint::Source(i) => format!("s{i}"),
            Endpoint::Target(j) => format!("t{j}"),
        };
        writeln!(f, "normal-form")?;
        writeln!(f, "source {}", self.source)?;
        writeln!(f, "target {}", self.target)?;
        for a in &self.arcs {
            let label = match a.0 {
                Endpoint::Source(i) => self.source.0[i],
                Endpoint::Target(j) => self.target.0[j],
            };
            let label2 = match a.1 {
                Endpoint::Source(i) => self.source.0[i],
                Endpoint::Target(j) => self.target.0[j],
            };
            writeln!(f, "arc {} {} ({},{})", end(a.0), end(a.1), label, label2)?;
        }
        writeln!(f, "end")
    }
}

/// The matching traced out by the strands of a valid planar diagram.
pub fn normalize_planar(d: &Diagram) -> Result<PlanarNormalForm, RewriteError> {
    let report = validate(d, AmbientDim::Planar);
    if !report.is_valid() {
        return Err(RewriteError::InvalidDiagram(report.to_string().trim_end().to_string()));
    }
    let arcs = trace_components(d)
        .into_iter()
        .map(|c| {
            let (a, b) = c.endpoints.expect("planar diagrams have no closed components");
            arc(a, b)
        })
        .collect();
    PlanarNormalForm::new(d.source().clone(), d.target().clone(), arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{zigzag_left, zigzag_right};

    #[test]
    fn identity_and_zigzags() {
        let w = ObjectWord::from([0, 3, -2]);
        let id = Diagram::identity(AmbientDim::Planar, w.clone());
        assert_eq!(normalize_planar(&id).unwrap(), PlanarNormalForm::identity(w));
        for k in [-1, 0, 2] {
            let nf = normalize_planar(&zigzag_right(k)).unwrap();
            assert_eq!(nf, PlanarNormalForm::identity(ObjectWord::from([k])));
            let nf = normalize_planar(&zigzag_left(k)).unwrap();
            assert_eq!(nf, PlanarNormalForm::identity(ObjectWord::from([k])));
        }
    }

    #[test]
    fn mixed_turnbacks() {
        let cup = Diagram::elementary(EventKind::Cup(0), AmbientDim::Planar).unwrap();
        let cap = Diagram::elementary(EventKind::Cap(2), AmbientDim::Planar).unwrap();
        let d = cup.tensor(&cap);
        let nf = normalize_planar(&d).unwrap();
        assert_eq!(nf.source(), &ObjectWord::from([2, 3]));
        assert_eq!(nf.target(), &ObjectWord::from([1, 0]));
        assert_eq!(
            nf.arcs(),
            &[
                Arc(Endpoint::Source(0), Endpoint::Source(1)),
                Arc(Endpoint::Target(0), Endpoint::Target(1)),
            ]
        );
        assert_eq!(normalize_planar(&nf.to_diagram()).unwrap(), nf);
    }

    #[test]
    fn interleaving_is_rejected() {
        let w = ObjectWord::from([0, 1, 2, 3]);
        let arcs = vec![
            Arc(Endpoint::Source(0), Endpoint::Source(2)),
            Arc(Endpoint::Source(1), Endpoint::Source(3)),
        ];
        assert!(PlanarNormalForm::new(w, ObjectWord::empty(), arcs).is_err());
    }

    #[test]
    fn composition_matches_diagrams() {
        let cup = Diagram::elementary(EventKind::Cup(0), AmbientDim::Planar).unwrap();
        let id = Diagram::identity(AmbientDim::Planar, ObjectWord::from([0]));
        let left = id.tensor(&cup);
        let cap = Diagram::elementary(EventKind::Cap(0), AmbientDim::Planar).unwrap();
        let right = cap.tensor(&id);
        let d = left.compose(&right).unwrap();
        let a = normalize_planar(&left).unwrap();
        let b = normalize_planar(&right).unwrap();
        assert_eq!(a.compose(&b).unwrap(), normalize_planar(&d).unwrap());
        assert_eq!(a.compose(&b).unwrap(), PlanarNormalForm::identity(ObjectWord::from([0])));
        let loop_ = normalize_planar(&cup).unwrap().compose(&normalize_planar(&cap).unwrap());
        assert!(matches!(loop_, Err(RewriteError::BoundaryMismatch(_))));
    }
}
