//! The simplex category: monotone maps between finite ordinals `[p]`,
//! convex subsets, hulls, the operator `C ↦ C^φ`, and the ordinal of
//! complement components of a finite open cover of `[0, 1]`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("cannot compose: target [{left}] differs from source [{right}]")]
    Mismatch { left: usize, right: usize },
    #[error("values {0:?} are not nondecreasing")]
    NotMonotone(Vec<usize>),
    #[error("value {value} outside [0, {target}]")]
    OutOfRange { value: usize, target: usize },
    #[error("convex subset [{lo}, {hi}] is not inside [{ambient}]")]
    BadSubset { lo: usize, hi: usize, ambient: usize },
    #[error("subset lives in [{found}], expected [{expected}]")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("square does not commute: φ0 = {phi0}, f∘φ1∘g = {composite}")]
    NonCommuting { phi0: String, composite: String },
    #[error("restriction of f leaves {target}: f({point}) = {image}")]
    BoundViolation {
        point: usize,
        image: usize,
        target: ConvexSubset,
    },
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("cover is not contained in the other cover")]
    NotContained,
}

/// A monotone map `[source] -> [target]`, stored as its list of values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    target: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self, SimplexError> {
        if values.is_empty() {
            return Err(SimplexError::NotMonotone(values));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(SimplexError::NotMonotone(values));
        }
        if let Some(&value) = values.iter().find(|&&v| v > target) {
            return Err(SimplexError::OutOfRange { value, target });
        }
        Ok(MonotoneMap { target, values })
    }

    pub fn identity(p: usize) -> Self {
        MonotoneMap {
            target: p,
            values: (0..=p).collect(),
        }
    }

    pub fn constant(source: usize, target: usize, value: usize) -> Result<Self, SimplexError> {
        MonotoneMap::new(target, vec![value; source + 1])
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Every monotone map `[b] -> [a]`, in lexicographic order.
    pub fn all(b: usize, a: usize) -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(b + 1);
        fn rec(b: usize, a: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
            if cur.len() == b + 1 {
                out.push(MonotoneMap {
                    target: a,
                    values: cur.clone(),
                });
                return;
            }
            for v in lo..=a {
                cur.push(v);
                rec(b, a, v, cur, out);
                cur.pop();
            }
        }
        rec(b, a, 0, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({}):[{}]->[{}]", vals.join(","), self.source(), self.target)
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose_monotone(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap, SimplexError> {
    if f.target != g.source() {
        return Err(SimplexError::Mismatch {
            left: f.target,
            right: g.source(),
        });
    }
    Ok(MonotoneMap {
        target: g.target,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

/// The nonempty interval `[lo, hi]` of `[ambient]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConvexSubset {
    pub lo: usize,
    pub hi: usize,
    pub ambient: usize,
}

impl ConvexSubset {
    pub fn new(lo: usize, hi: usize, ambient: usize) -> Result<Self, SimplexError> {
        if lo > hi || hi > ambient {
            return Err(SimplexError::BadSubset { lo, hi, ambient });
        }
        Ok(ConvexSubset { lo, hi, ambient })
    }

    pub fn point(i: usize, ambient: usize) -> Result<Self, SimplexError> {
        ConvexSubset::new(i, i, ambient)
    }

    pub fn contains(&self, other: &ConvexSubset) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Every convex subset of `[ambient]`.
    pub fn all(ambient: usize) -> Vec<ConvexSubset> {
        (0..=ambient)
            .flat_map(|lo| (lo..=ambient).map(move |hi| ConvexSubset { lo, hi, ambient }))
            .collect()
    }
}

impl fmt::Display for ConvexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

fn check_ambient(expected: usize, c: &ConvexSubset) -> Result<(), SimplexError> {
    if c.ambient != expected {
        return Err(SimplexError::AmbientMismatch {
            expected,
            found: c.ambient,
        });
    }
    Ok(())
}

/// Convex hull of `f(C)`.
pub fn hull_image(f: &MonotoneMap, c: &ConvexSubset) -> Result<ConvexSubset, SimplexError> {
    check_ambient(f.source(), c)?;
    Ok(ConvexSubset {
        lo: f.apply(c.lo),
        hi: f.apply(c.hi),
        ambient: f.target,
    })
}

/// `C^φ = [sup{φ(b) ≤ min C}, inf{φ(b) ≥ max C}]`, with `sup ∅ = 0` and
/// `inf ∅ = max A`.
pub fn phi_hull(phi: &MonotoneMap, c: &ConvexSubset) -> Result<ConvexSubset, SimplexError> {
    check_ambient(phi.target, c)?;
    let lo = phi.values.iter().copied().filter(|&v| v <= c.lo).max().unwrap_or(0);
    let hi = phi
        .values
        .iter()
        .copied()
        .filter(|&v| v >= c.hi)
        .min()
        .unwrap_or(phi.target);
    Ok(ConvexSubset {
        lo,
        hi,
        ambient: phi.target,
    })
}

/// Given a commuting square `φ0 = f ∘ φ1 ∘ g` with `f: A1 -> A0`,
/// `g: B0 -> B1`, `φ1: B1 -> A1`, `φ0: B0 -> A0`, restrict `f` to a map
/// `C1^φ1 -> Hull(f C1)^φ0`, reindexed to start at 0.
///
/// Both ends of `C1^φ1` are checked to land in the target interval. When
/// `{φ1 ≤ min C1}` is empty but `{φ0 ≤ min f(C1)}` is not, the lower end can
/// fail (and dually for the upper end); this is reported as
/// [`SimplexError::BoundViolation`].
pub fn twisted_square_restriction(
    f: &MonotoneMap,
    g: &MonotoneMap,
    phi0: &MonotoneMap,
    phi1: &MonotoneMap,
    c1: &ConvexSubset,
) -> Result<MonotoneMap, SimplexError> {
    let inner = compose_monotone(g, phi1)?;
    let composite = compose_monotone(&inner, f)?;
    if composite != *phi0 {
        return Err(SimplexError::NonCommuting {
            phi0: phi0.to_string(),
            composite: composite.to_string(),
        });
    }
    let source = phi_hull(phi1, c1)?;
    let target = phi_hull(phi0, &hull_image(f, c1)?)?;
    for point in [source.lo, source.hi] {
        let image = f.apply(point);
        if image < target.lo || image > target.hi {
            return Err(SimplexError::BoundViolation {
                point,
                image,
                target,
            });
        }
    }
    MonotoneMap::new(
        target.hi - target.lo,
        (source.lo..=source.hi).map(|x| f.apply(x) - target.lo).collect(),
    )
}

/// A finite cover of `[0, 1]` near its ends by disjoint open intervals:
/// the first component is `[0, r)`, the last `(l, 1]`, the others `(l, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCover {
    components: Vec<(BigRational, BigRational)>,
}

impl IntervalCover {
    pub fn new(components: Vec<(BigRational, BigRational)>) -> Result<Self, SimplexError> {
        let bad = |m: &str| Err(SimplexError::InvalidCover(m.into()));
        if components.len() < 2 {
            return bad("need at least two components");
        }
        if !components[0].0.is_zero() {
            return bad("first component must contain 0");
        }
        if !components[components.len() - 1].1.is_one() {
            return bad("last component must contain 1");
        }
        for (lo, hi) in &components {
            if lo >= hi {
                return bad("empty component");
            }
        }
        for w in components.windows(2) {
            if w[0].1 > w[1].0 {
                return bad("components overlap or are unsorted");
            }
        }
        Ok(IntervalCover { components })
    }

    /// Build from `(num, den)` endpoint pairs.
    pub fn from_ratios(parts: &[((i64, i64), (i64, i64))]) -> Result<Self, SimplexError> {
        let r = |(n, d): (i64, i64)| BigRational::new(n.into(), d.into());
        IntervalCover::new(parts.iter().map(|&(a, b)| (r(a), r(b))).collect())
    }

    pub fn components(&self) -> &[(BigRational, BigRational)] {
        &self.components
    }

    /// Complement components `[r_k, l_{k+1}]`, left to right.
    pub fn gaps(&self) -> Vec<(BigRational, BigRational)> {
        self.components
            .windows(2)
            .map(|w| (w[0].1.clone(), w[1].0.clone()))
            .collect()
    }

    /// Union with extra components; they must fit between existing ones.
    pub fn with_component(&self, lo: BigRational, hi: BigRational) -> Result<Self, SimplexError> {
        let mut comps = self.components.clone();
        comps.push((lo, hi));
        comps.sort();
        IntervalCover::new(comps)
    }
}

/// The ordinal `[m]` with `m + 1` complement components.
pub fn localize_cover(u: &IntervalCover) -> usize {
    u.components.len() - 2
}

/// For `U ⊆ V`, the map `π(V) -> π(U)` sending each gap of `V` to the gap
/// of `U` containing it.
pub fn cover_inclusion_map(u: &IntervalCover, v: &IntervalCover) -> Result<MonotoneMap, SimplexError> {
    let contained = u.components.iter().all(|(ul, uh)| {
        v.components
            .iter()
            .any(|(vl, vh)| vl <= ul && uh <= vh)
    });
    if !contained {
        return Err(SimplexError::NotContained);
    }
    let ugaps = u.gaps();
    let values = v
        .gaps()
        .iter()
        .map(|(lo, hi)| {
            ugaps
                .iter()
                .position(|(ulo, uhi)| ulo <= lo && hi <= uhi)
                .ok_or(SimplexError::NotContained)
        })
        .collect::<Result<Vec<_>, _>>()?;
    MonotoneMap::new(localize_cover(u), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(target: usize, v: &[usize]) -> MonotoneMap {
        MonotoneMap::new(target, v.to_vec()).unwrap()
    }

    fn c(lo: usize, hi: usize, a: usize) -> ConvexSubset {
        ConvexSubset::new(lo, hi, a).unwrap()
    }

    #[test]
    fn composition_examples() {
        let id = MonotoneMap::identity(2);
        assert_eq!(compose_monotone(&id, &id).unwrap(), id);
        let f = m(3, &[0, 1, 3]);
        let g = m(2, &[0, 0, 1, 2]);
        assert_eq!(compose_monotone(&f, &g).unwrap(), m(2, &[0, 0, 2]));
        let k = MonotoneMap::constant(2, 3, 0).unwrap();
        assert_eq!(compose_monotone(&k, &g).unwrap(), m(2, &[0, 0, 0]));
        assert!(compose_monotone(&g, &g).is_err());
        assert!(MonotoneMap::new(3, vec![2, 1]).is_err());
        assert!(MonotoneMap::new(1, vec![0, 2]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // binomial(a + b + 1, b + 1)
        assert_eq!(MonotoneMap::all(1, 3).len(), 10);
        assert_eq!(MonotoneMap::all(2, 2).len(), 10);
        assert_eq!(MonotoneMap::all(0, 5).len(), 6);
    }

    #[test]
    fn hull_examples() {
        assert_eq!(hull_image(&MonotoneMap::identity(2), &c(1, 2, 2)).unwrap(), c(1, 2, 2));
        assert_eq!(hull_image(&m(3, &[0, 1, 3]), &c(0, 2, 2)).unwrap(), c(0, 3, 3));
        assert_eq!(hull_image(&m(3, &[2, 2, 2]), &c(0, 1, 2)).unwrap(), c(2, 2, 3));
        assert!(hull_image(&m(3, &[2, 2, 2]), &c(0, 1, 3)).is_err());
    }

    #[test]
    fn phi_hull_examples() {
        let phi = m(3, &[1, 2]);
        assert_eq!(phi_hull(&phi, &c(0, 1, 3)).unwrap(), c(0, 1, 3));
        assert_eq!(phi_hull(&phi, &c(2, 3, 3)).unwrap(), c(2, 3, 3));
        assert_eq!(phi_hull(&phi, &c(1, 2, 3)).unwrap(), c(1, 2, 3));
        assert_eq!(phi_hull(&phi, &c(2, 2, 3)).unwrap(), c(2, 2, 3));
    }

    #[test]
    fn phi_hull_contains_and_is_idempotent() {
        for a in 0..=4 {
            for b in 0..=3 {
                for phi in MonotoneMap::all(b, a) {
                    for cc in ConvexSubset::all(a) {
                        let h = phi_hull(&phi, &cc).unwrap();
                        assert!(h.contains(&cc));
                        assert_eq!(phi_hull(&phi, &h).unwrap(), h);
                    }
                }
            }
        }
    }

    #[test]
    fn identity_square_restricts_to_identity() {
        let phi = m(3, &[1, 2]);
        let id_a = MonotoneMap::identity(3);
        let id_b = MonotoneMap::identity(1);
        for cc in ConvexSubset::all(3) {
            let r = twisted_square_restriction(&id_a, &id_b, &phi, &phi, &cc).unwrap();
            assert!(r.is_identity());
        }
    }

    #[test]
    fn empty_default_corner_violates_bound() {
        let f = m(1, &[0, 1, 1]);
        let g = MonotoneMap::identity(0);
        let phi1 = m(2, &[2]);
        let phi0 = m(1, &[1]);
        let c1 = c(1, 1, 2);
        let err = twisted_square_restriction(&f, &g, &phi0, &phi1, &c1).unwrap_err();
        assert_eq!(
            err,
            SimplexError::BoundViolation {
                point: 0,
                image: 0,
                target: c(1, 1, 1)
            }
        );
    }

    #[test]
    fn non_commuting_square_rejected() {
        let f = MonotoneMap::identity(1);
        let g = MonotoneMap::identity(0);
        assert!(matches!(
            twisted_square_restriction(&f, &g, &m(1, &[0]), &m(1, &[1]), &c(0, 0, 1)),
            Err(SimplexError::NonCommuting { .. })
        ));
    }

    fn cover(parts: &[((i64, i64), (i64, i64))]) -> IntervalCover {
        IntervalCover::from_ratios(parts).unwrap()
    }

    #[test]
    fn cover_examples() {
        let u = cover(&[((0, 1), (1, 10)), ((9, 10), (1, 1))]);
        assert_eq!(localize_cover(&u), 0);
        let u = cover(&[((0, 1), (1, 10)), ((4, 10), (6, 10)), ((9, 10), (1, 1))]);
        assert_eq!(localize_cover(&u), 1);
        let two_points = cover(&[((0, 1), (1, 3)), ((1, 3), (2, 3)), ((2, 3), (1, 1))]);
        assert_eq!(localize_cover(&two_points), 1);
        assert!(cover_inclusion_map(&u, &u).unwrap().is_identity());
        let v = u
            .with_component(BigRational::new(2.into(), 10.into()), BigRational::new(3.into(), 10.into()))
            .unwrap();
        assert_eq!(cover_inclusion_map(&u, &v).unwrap(), m(1, &[0, 0, 1]));
        let w = u
            .with_component(BigRational::new(7.into(), 10.into()), BigRational::new(8.into(), 10.into()))
            .unwrap();
        assert_eq!(cover_inclusion_map(&u, &w).unwrap(), m(1, &[0, 1, 1]));
        assert_eq!(cover_inclusion_map(&v, &u), Err(SimplexError::NotContained));
    }

    #[test]
    fn invalid_covers() {
        assert!(IntervalCover::from_ratios(&[((0, 1), (1, 1))]).is_err());
        assert!(IntervalCover::from_ratios(&[((1, 10), (2, 10)), ((9, 10), (1, 1))]).is_err());
        assert!(IntervalCover::from_ratios(&[((0, 1), (5, 10)), ((4, 10), (1, 1))]).is_err());
    }
}
