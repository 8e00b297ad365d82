use std::collections::HashMap;

use super::{SegalError, SimplicialData};
use crate::simplex::{phi_hull, ConvexSubset, MonotoneMap};

/// The intervals of `[a]` cut out by `φ`: the distinct `{i-1 < i}^φ`, or
/// `[0, 0]` when `a = 0`.
pub fn pieces(phi: &MonotoneMap) -> Vec<(usize, usize)> {
    let a = phi.target();
    if a == 0 {
        return vec![(0, 0)];
    }
    let mut out: Vec<(usize, usize)> = Vec::new();
    for i in 1..=a {
        let edge = ConvexSubset::new(i - 1, i, a).expect("edge of [a]");
        let h = phi_hull(phi, &edge).expect("same ambient");
        if out.last() != Some(&(h.lo, h.hi)) {
            out.push((h.lo, h.hi));
        }
    }
    out
}

/// The iterated fiber product over the pieces of `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaValue {
    pub pieces: Vec<(usize, usize)>,
    /// One simplex per piece, matching at shared vertices. Sorted.
    pub elements: Vec<Vec<usize>>,
}

impl FormulaValue {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn fiber_product(c: &SimplicialData, pieces: &[(usize, usize)]) -> Result<Vec<Vec<usize>>, SegalError> {
    for &(lo, hi) in pieces {
        if hi - lo > c.top() {
            return Err(SegalError::LevelOutOfRange(hi - lo));
        }
    }
    let ends = |n: usize, x: usize| {
        let v = c.vertices(n, x);
        (v[0], v[n])
    };
    let mut partial: Vec<(Vec<usize>, usize)> = Vec::new();
    let (lo, hi) = pieces[0];
    for x in 0..c.size(hi - lo) {
        partial.push((vec![x], ends(hi - lo, x).1));
    }
    for &(lo, hi) in &pieces[1..] {
        let n = hi - lo;
        let mut by_start: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for x in 0..c.size(n) {
            let (s, t) = ends(n, x);
            by_start.entry(s).or_default().push((x, t));
        }
        partial = partial
            .into_iter()
            .flat_map(|(v, end)| {
                by_start
                    .get(&end)
                    .into_iter()
                    .flatten()
                    .map(move |&(x, t)| {
                        let mut w = v.clone();
                        w.push(x);
                        (w, t)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out: Vec<Vec<usize>> = partial.into_iter().map(|(v, _)| v).collect();
    out.sort();
    Ok(out)
}

/// `C([0,φ(0)]) ×_{C{φ(0)}} C([φ(0),φ(1)]) × ... × C([φ(b),a])`.
pub fn seg_formula_value(c: &SimplicialData, phi: &MonotoneMap) -> Result<FormulaValue, SegalError> {
    let pieces = pieces(phi);
    let elements = fiber_product(c, &pieces)?;
    Ok(FormulaValue { pieces, elements })
}

/// The unique simplex of `C_a` restricting to the given piece simplices,
/// or `None` if there is none or more than one.
pub fn glue(c: &SimplicialData, a: usize, pieces: &[(usize, usize)], simplices: &[usize]) -> Option<usize> {
    let restrictions: Vec<MonotoneMap> = pieces
        .iter()
        .map(|&(lo, hi)| MonotoneMap::new(a, (lo..=hi).collect()).expect("piece of [a]"))
        .collect();
    let mut found = None;
    for s in 0..c.size(a) {
        if restrictions
            .iter()
            .zip(simplices)
            .all(|(r, &x)| c.apply(r, s).expect("stored level") == x)
        {
            if found.is_some() {
                return None;
            }
            found = Some(s);
        }
    }
    found
}

/// A representative of a colimit class: an object `(φ: [b] -> [a],
/// u: [p] -> [a])` and an element of the formula value at `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaElement {
    pub phi: MonotoneMap,
    pub u: MonotoneMap,
    pub pieces: Vec<(usize, usize)>,
    pub simplices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ColimitResult {
    /// One representative per class, in order of first appearance.
    pub representatives: Vec<FormulaElement>,
    /// The classes at `n - 1` map bijectively onto the classes at `n`.
    pub stabilized: bool,
    /// The classes at `n - 1` map injectively into the classes at `n`:
    /// growth in `n` only adds classes.
    pub previous_injective: bool,
}

impl ColimitResult {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.0[hi] = lo;
        }
    }
}

/// Elementary maps `[a] -> [a1]` with `a1 <= n`.
fn elementary_maps(a: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    if a < n {
        for i in 0..=a + 1 {
            let vals = (0..=a).map(|x| if x < i { x } else { x + 1 }).collect();
            out.push(MonotoneMap::new(a + 1, vals).expect("coface"));
        }
    }
    if a > 0 {
        for i in 0..a {
            let vals = (0..=a).map(|x| if x <= i { x } else { x - 1 }).collect();
            out.push(MonotoneMap::new(a - 1, vals).expect("codegeneracy"));
        }
    }
    out
}

struct Universe {
    objects: Vec<(MonotoneMap, MonotoneMap)>,
    object_index: HashMap<(MonotoneMap, MonotoneMap), usize>,
    values: HashMap<Vec<(usize, usize)>, (Vec<Vec<usize>>, HashMap<Vec<usize>, usize>)>,
    offsets: Vec<usize>,
    total: usize,
}

fn compose(first: &MonotoneMap, then: &MonotoneMap) -> MonotoneMap {
    crate::simplex::compose_monotone(first, then).expect("composable")
}

fn build_universe(c: &SimplicialData, p: usize, n: usize) -> Result<Universe, SegalError> {
    let mut objects = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            for phi in MonotoneMap::all(b, a) {
                for u in MonotoneMap::all(p, a) {
                    objects.push((phi.clone(), u));
                }
            }
        }
    }
    let object_index = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    let mut values = HashMap::new();
    let mut offsets = Vec::with_capacity(objects.len());
    let mut total = 0;
    for (phi, _) in &objects {
        let ps = pieces(phi);
        if !values.contains_key(&ps) {
            let elems = fiber_product(c, &ps)?;
            let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
            values.insert(ps.clone(), (elems, index));
        }
        offsets.push(total);
        total += values[&ps].0.len();
    }
    Ok(Universe {
        objects,
        object_index,
        values,
        offsets,
        total,
    })
}

/// For each piece of `φ1`, the piece of `φ0` containing its image under
/// `f` and the reindexed restriction of `f`.
fn piece_restrictions(f: &MonotoneMap, p0: &[(usize, usize)], p1: &[(usize, usize)]) -> Vec<(usize, MonotoneMap)> {
    p1.iter()
        .map(|&(q0, q1)| {
            let (lo, hi) = (f.apply(q0), f.apply(q1));
            let k = p0
                .iter()
                .position(|&(s, t)| s <= lo && hi <= t)
                .expect("pieces of φ1 land in pieces of f φ1 g");
            let s = p0[k].0;
            let theta = MonotoneMap::new(p0[k].1 - s, (q0..=q1).map(|x| f.apply(x) - s).collect())
                .expect("restriction");
            (k, theta)
        })
        .collect()
}

fn glue_universe(c: &SimplicialData, uni: &Universe, n: usize) -> Result<UnionFind, SegalError> {
    let mut uf = UnionFind((0..uni.total).collect());
    let mut tables: HashMap<MonotoneMap, Vec<usize>> = HashMap::new();
    let mut link = |uf: &mut UnionFind, o0: usize, o1: usize, f: &MonotoneMap| -> Result<(), SegalError> {
        let p0 = pieces(&uni.objects[o0].0);
        let p1 = pieces(&uni.objects[o1].0);
        let rs = piece_restrictions(f, &p0, &p1);
        for (_, theta) in &rs {
            if !tables.contains_key(theta) {
                let t = (0..c.size(theta.target()))
                    .map(|x| c.apply(theta, x))
                    .collect::<Result<Vec<_>, _>>()?;
                tables.insert(theta.clone(), t);
            }
        }
        let (elems0, _) = &uni.values[&p0];
        let (_, index1) = &uni.values[&p1];
        for (i, x0) in elems0.iter().enumerate() {
            let x1: Vec<usize> = rs.iter().map(|(k, theta)| tables[theta][x0[*k]]).collect();
            let j = index1[&x1];
            uf.union(uni.offsets[o0] + i, uni.offsets[o1] + j);
        }
        Ok(())
    };
    for o1 in 0..uni.objects.len() {
        let (phi1, u1) = uni.objects[o1].clone();
        let a1 = phi1.target();
        let b1 = phi1.source();
        for f in elementary_maps(a1, n) {
            let key = (compose(&phi1, &f), compose(&u1, &f));
            let o0 = uni.object_index[&key];
            link(&mut uf, o0, o1, &f)?;
        }
        for g in into_maps(b1, n) {
            let key = (compose(&g, &phi1), u1.clone());
            let o0 = uni.object_index[&key];
            link(&mut uf, o0, o1, &MonotoneMap::identity(a1))?;
        }
    }
    Ok(uf)
}

/// Elementary maps `[b0] -> [b]` with `b0 <= n`.
fn into_maps(b: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    if b > 0 {
        for i in 0..=b {
            let vals = (0..b).map(|x| if x < i { x } else { x + 1 }).collect();
            out.push(MonotoneMap::new(b, vals).expect("coface"));
        }
    }
    if b < n {
        for i in 0..=b {
            let vals = (0..=b + 1).map(|x| if x <= i { x } else { x - 1 }).collect();
            out.push(MonotoneMap::new(b, vals).expect("codegeneracy"));
        }
    }
    out
}

/// The colimit of [`seg_formula_value`] over objects `(φ: [b] -> [a],
/// u: [p] -> [a])` with `a, b <= n`. A morphism `(f, g)` with
/// `φ0 = f φ1 g` and `u0 = f u1` sends an element at `φ0` to the element
/// at `φ1` obtained by restricting along `f` piece by piece.
///
pub fn seg_colimit_truncated(c: &SimplicialData, p: usize, n: usize) -> Result<ColimitResult, SegalError> {
    if n > c.top() {
        return Err(SegalError::LevelOutOfRange(n));
    }
    let uni = build_universe(c, p, n)?;
    let mut uf = glue_universe(c, &uni, n)?;
    let mut representatives = Vec::new();
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    for (o, (phi, u)) in uni.objects.iter().enumerate() {
        let ps = pieces(phi);
        for (i, x) in uni.values[&ps].0.iter().enumerate() {
            let r = uf.find(uni.offsets[o] + i);
            class_of_root.entry(r).or_insert_with(|| {
                representatives.push(FormulaElement {
                    phi: phi.clone(),
                    u: u.clone(),
                    pieces: ps.clone(),
                    simplices: x.clone(),
                });
                representatives.len() - 1
            });
        }
    }
    let (stabilized, previous_injective) = if n == 0 {
        (false, false)
    } else {
        let small = build_universe(c, p, n - 1)?;
        let mut suf = glue_universe(c, &small, n - 1)?;
        let mut image: HashMap<usize, usize> = HashMap::new();
        let mut hit = std::collections::HashSet::new();
        let mut injective = true;
        for (o, key) in small.objects.iter().enumerate() {
            let big = uni.offsets[uni.object_index[key]];
            for i in 0..small.values[&pieces(&key.0)].0.len() {
                let rs = suf.find(small.offsets[o] + i);
                let rb = uf.find(big + i);
                if let std::collections::hash_map::Entry::Vacant(v) = image.entry(rs) {
                    injective &= hit.insert(rb);
                    v.insert(rb);
                }
            }
        }
        (injective && hit.len() == class_of_root.len(), injective)
    };
    Ok(ColimitResult {
        representatives,
        stabilized,
        previous_injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segal::FiniteCategory;
    use crate::words::FiniteMonoid;

    fn map(target: usize, v: &[usize]) -> MonotoneMap {
        MonotoneMap::new(target, v.to_vec()).unwrap()
    }

    #[test]
    fn pieces_of_maps() {
        assert_eq!(pieces(&map(2, &[0, 2])), vec![(0, 2)]);
        assert_eq!(pieces(&map(3, &[1])), vec![(0, 1), (1, 3)]);
        assert_eq!(pieces(&map(2, &[0, 1, 2])), vec![(0, 1), (1, 2)]);
        assert_eq!(pieces(&map(0, &[0, 0])), vec![(0, 0)]);
    }

    #[test]
    fn poset_formula_value() {
        let c = FiniteCategory::poset(2).nerve(2);
        let v = seg_formula_value(&c, &map(2, &[0, 2])).unwrap();
        assert_eq!(v.len(), 10);
        assert_eq!(v.len(), c.size(2));
        let id = seg_formula_value(&c, &map(2, &[0, 1, 2])).unwrap();
        assert_eq!(id.len(), c.size(2));
    }

    #[test]
    fn empty_edges_give_empty_value() {
        let c = crate::segal::graph_simplicial(2, &[], 2);
        let v = seg_formula_value(&c, &map(1, &[0])).unwrap();
        assert_eq!(v.len(), 2);
        let path = crate::segal::graph_simplicial(3, &[(0, 1)], 2);
        // composable pairs of edges: only through degenerate ones
        let v = seg_formula_value(&path, &map(2, &[1])).unwrap();
        assert_eq!(v.len(), 3 + 2);
    }

    #[test]
    fn colimit_of_nerve_is_nerve() {
        let c = FiniteCategory::from_monoid(&FiniteMonoid::cyclic(2)).nerve(3);
        for p in 0..=1 {
            let r = seg_colimit_truncated(&c, p, p + 1).unwrap();
            assert!(r.stabilized);
            assert_eq!(r.len(), c.size(p));
        }
    }
}
