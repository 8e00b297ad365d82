//! Finite simplicial sets stored up to a top level, the Segal condition,
//! Segal completion by generators and relations, and the explicit
//! colimit formula for `Seg` with a truncated colimit oracle.

mod colimit;
mod completion;

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use crate::simplex::MonotoneMap;
use crate::words::FiniteMonoid;

pub use colimit::{
    glue, pieces, seg_colimit_truncated, seg_formula_value, ColimitResult, FormulaElement, FormulaValue,
};
pub use completion::{seg_complete, Generator, Path, SegCompletion};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SegalError {
    #[error("level {0} is outside the stored range")]
    LevelOutOfRange(usize),
    #[error("simplicial identity fails: {0}")]
    Identity(String),
    #[error("malformed data: {0}")]
    Malformed(String),
}

/// A simplicial set stored through level `K`: finite sets `X_0..X_K`,
/// faces `d_i: X_n -> X_(n-1)` and degeneracies `s_i: X_n -> X_(n+1)`.
/// Elements of `X_n` are `0..size(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialData {
    sizes: Vec<usize>,
    /// `faces[n][i][x]` for `1 <= n <= K`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][i][x]` for `n < K`.
    degens: Vec<Vec<Vec<usize>>>,
}

impl SimplicialData {
    pub fn new(
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, SegalError> {
        let k = sizes.len().checked_sub(1).ok_or_else(|| SegalError::Malformed("no levels".into()))?;
        if faces.len() != k + 1 || degens.len() != k {
            return Err(SegalError::Malformed("wrong number of face or degeneracy levels".into()));
        }
        for n in 1..=k {
            if faces[n].len() != n + 1
                || faces[n].iter().any(|m| m.len() != sizes[n] || m.iter().any(|&y| y >= sizes[n - 1]))
            {
                return Err(SegalError::Malformed(format!("faces at level {n}")));
            }
        }
        for n in 0..k {
            if degens[n].len() != n + 1
                || degens[n].iter().any(|m| m.len() != sizes[n] || m.iter().any(|&y| y >= sizes[n + 1]))
            {
                return Err(SegalError::Malformed(format!("degeneracies at level {n}")));
            }
        }
        let x = SimplicialData { sizes, faces, degens };
        x.check_identities()?;
        Ok(x)
    }

    /// Build by enumerating elements of each level and giving faces and
    /// degeneracies on them. Faces and degeneracies must land in the listed
    /// elements.
    pub fn from_elements<T: Clone + Eq + Hash>(
        levels: Vec<Vec<T>>,
        face: impl Fn(usize, usize, &T) -> T,
        degen: impl Fn(usize, usize, &T) -> T,
    ) -> Result<Self, SegalError> {
        let index: Vec<HashMap<T, usize>> = levels
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect())
            .collect();
        let k = levels.len() - 1;
        let lookup = |n: usize, t: &T| {
            index[n]
                .get(t)
                .copied()
                .ok_or_else(|| SegalError::Malformed(format!("operator leaves level {n}")))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=k {
            let mut fs = Vec::new();
            for i in 0..=n {
                fs.push(
                    levels[n]
                        .iter()
                        .map(|t| lookup(n - 1, &face(n, i, t)))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            faces.push(fs);
        }
        let mut degens = Vec::new();
        for n in 0..k {
            let mut ds = Vec::new();
            for i in 0..=n {
                ds.push(
                    levels[n]
                        .iter()
                        .map(|t| lookup(n + 1, &degen(n, i, t)))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            degens.push(ds);
        }
        SimplicialData::new(levels.iter().map(Vec::len).collect(), faces, degens)
    }

    fn check_identities(&self) -> Result<(), SegalError> {
        let k = self.top();
        let fail = |s: String| Err(SegalError::Identity(s));
        for n in 2..=k {
            for j in 1..=n {
                for i in 0..j {
                    for x in 0..self.sizes[n] {
                        let l = self.face(n - 1, i, self.face(n, j, x));
                        let r = self.face(n - 1, j - 1, self.face(n, i, x));
                        if l != r {
                            return fail(format!("d{i} d{j} = d{} d{i} at level {n}", j - 1));
                        }
                    }
                }
            }
        }
        for n in 0..k {
            for j in 0..=n {
                for x in 0..self.sizes[n] {
                    let y = self.degen(n, j, x);
                    for i in 0..=n + 1 {
                        let l = self.face(n + 1, i, y);
                        let ok = if i == j || i == j + 1 {
                            l == x
                        } else if i < j {
                            l == self.degen(n - 1, j - 1, self.face(n, i, x))
                        } else {
                            l == self.degen(n - 1, j, self.face(n, i - 1, x))
                        };
                        if !ok {
                            return fail(format!("d{i} s{j} at level {n}"));
                        }
                    }
                    if n + 1 < k {
                        for i in 0..=j {
                            let l = self.degen(n + 1, i, self.degen(n, j, x));
                            let r = self.degen(n + 1, j + 1, self.degen(n, i, x));
                            if l != r {
                                return fail(format!("s{i} s{j} at level {n}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Top stored level `K`.
    pub fn top(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn degen(&self, n: usize, i: usize, x: usize) -> usize {
        self.degens[n][i][x]
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        n > 0 && (0..n).any(|i| self.degen(n - 1, i, self.face(n, i, x)) == x)
    }

    /// `θ^*(x)` for `θ: [m] -> [n]` and `x ∈ X_n`.
    pub fn apply(&self, theta: &MonotoneMap, x: usize) -> Result<usize, SegalError> {
        let n = theta.target();
        let m = theta.source();
        if n > self.top() || m > self.top() {
            return Err(SegalError::LevelOutOfRange(n.max(m)));
        }
        let vals = theta.values();
        let mut image: Vec<usize> = vals.to_vec();
        image.dedup();
        let mut cur = x;
        let mut level = n;
        for i in (0..=n).rev() {
            if image.binary_search(&i).is_err() {
                cur = self.face(level, i, cur);
                level -= 1;
            }
        }
        for j in 0..m {
            if vals[j] == vals[j + 1] {
                cur = self.degen(level, j, cur);
                level += 1;
            }
        }
        Ok(cur)
    }

    /// Vertices of an `n`-simplex.
    pub fn vertices(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n)
            .map(|i| {
                let v = MonotoneMap::new(n, vec![i]).expect("vertex");
                self.apply(&v, x).expect("stored level")
            })
            .collect()
    }

    /// Edges `{i-1 < i}` of an `n`-simplex.
    pub fn spine(&self, n: usize, x: usize) -> Vec<usize> {
        (1..=n)
            .map(|i| {
                let e = MonotoneMap::new(n, vec![i - 1, i]).expect("edge");
                self.apply(&e, x).expect("stored level")
            })
            .collect()
    }

    /// The degenerate simplex on a vertex at level `n`.
    pub fn constant(&self, n: usize, v: usize) -> usize {
        let mut cur = v;
        for l in 0..n {
            cur = self.degen(l, 0, cur);
        }
        cur
    }

    /// Restrict to levels `0..=k`.
    pub fn truncate(&self, k: usize) -> SimplicialData {
        let k = k.min(self.top());
        SimplicialData {
            sizes: self.sizes[..=k].to_vec(),
            faces: self.faces[..=k].to_vec(),
            degens: self.degens[..k].to_vec(),
        }
    }
}

/// Whether `X_p -> X_1 ×_{X_0} ... ×_{X_0} X_1` is a bijection.
pub fn is_segal(x: &SimplicialData, p: usize) -> Result<bool, SegalError> {
    if p > x.top() {
        return Err(SegalError::LevelOutOfRange(p));
    }
    if p <= 1 {
        return Ok(true);
    }
    let src = |e: usize| x.face(1, 1, e);
    let tgt = |e: usize| x.face(1, 0, e);
    // count chains of p composable edges
    let mut counts = vec![1usize; x.size(0)];
    for _ in 0..p {
        let mut next = vec![0usize; x.size(0)];
        for e in 0..x.size(1) {
            next[tgt(e)] += counts[src(e)];
        }
        counts = next;
    }
    let chains: usize = counts.iter().sum();
    if chains != x.size(p) {
        return Ok(false);
    }
    let mut seen = std::collections::HashSet::new();
    Ok((0..x.size(p)).all(|s| seen.insert(x.spine(p, s))))
}

/// A finite category given by its composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: usize,
    arrows: Vec<(usize, usize)>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
}

impl FiniteCategory {
    /// `compose[(f, g)]` is `g ∘ f` (first `f`) for composable pairs.
    pub fn new(
        objects: usize,
        arrows: Vec<(usize, usize)>,
        identities: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self, SegalError> {
        let bad = |m: &str| Err(SegalError::Malformed(m.into()));
        if identities.len() != objects {
            return bad("one identity per object");
        }
        for (o, &i) in identities.iter().enumerate() {
            if arrows.get(i) != Some(&(o, o)) {
                return bad("identity has wrong endpoints");
            }
        }
        for (f, &(_, t)) in arrows.iter().enumerate() {
            for (g, &(s, _)) in arrows.iter().enumerate() {
                if t == s {
                    match compose.get(&(f, g)) {
                        Some(&h) if arrows[h] == (arrows[f].0, arrows[g].1) => {}
                        _ => return bad("composite missing or misplaced"),
                    }
                }
            }
        }
        Ok(FiniteCategory {
            objects,
            arrows,
            identities,
            compose,
        })
    }

    pub fn from_monoid(m: &FiniteMonoid) -> Self {
        let n = m.order();
        let arrows = vec![(0, 0); n];
        let mut compose = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                compose.insert((a, b), m.table()[a][b]);
            }
        }
        FiniteCategory {
            objects: 1,
            arrows,
            identities: vec![m.unit_index()],
            compose,
        }
    }

    /// The poset `[n]` as a category.
    pub fn poset(n: usize) -> Self {
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                index.insert((i, j), arrows.len());
                arrows.push((i, j));
            }
        }
        let mut compose = HashMap::new();
        for (&(i, j), &f) in &index {
            for k in j..=n {
                compose.insert((f, index[&(j, k)]), index[&(i, k)]);
            }
        }
        let identities = (0..=n).map(|i| index[&(i, i)]).collect();
        FiniteCategory {
            objects: n + 1,
            arrows,
            identities,
            compose,
        }
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// `g ∘ f`.
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    /// The nerve through level `k` (`k >= 1`). Level-`n` simplices are
    /// composable chains of `n` arrows, listed in lexicographic order.
    pub fn nerve(&self, k: usize) -> SimplicialData {
        #[derive(Clone, PartialEq, Eq, Hash)]
        enum S {
            Obj(usize),
            Chain(Vec<usize>),
        }
        let mut levels = vec![(0..self.objects).map(S::Obj).collect::<Vec<_>>()];
        let mut chains: Vec<Vec<usize>> = vec![Vec::new()];
        for n in 1..=k {
            chains = if n == 1 {
                (0..self.arrows.len()).map(|f| vec![f]).collect()
            } else {
                chains
                    .iter()
                    .flat_map(|c| {
                        let t = self.arrows[*c.last().expect("nonempty")].1;
                        self.arrows
                            .iter()
                            .enumerate()
                            .filter(move |(_, a)| a.0 == t)
                            .map(move |(f, _)| {
                                let mut v = c.clone();
                                v.push(f);
                                v
                            })
                    })
                    .collect()
            };
            levels.push(chains.iter().cloned().map(S::Chain).collect());
        }
        let face = |n: usize, i: usize, s: &S| -> S {
            let S::Chain(c) = s else { unreachable!("faces start at level 1") };
            if n == 1 {
                let (src, tgt) = self.arrows[c[0]];
                return S::Obj(if i == 0 { tgt } else { src });
            }
            let mut v = c.clone();
            if i == 0 {
                v.remove(0);
            } else if i == n {
                v.pop();
            } else {
                let h = self.then(v[i - 1], v[i]).expect("composable");
                v.splice(i - 1..=i, [h]);
            }
            S::Chain(v)
        };
        let degen = |_n: usize, i: usize, s: &S| -> S {
            match s {
                S::Obj(o) => S::Chain(vec![self.identities[*o]]),
                S::Chain(c) => {
                    let vertex = if i < c.len() {
                        self.arrows[c[i]].0
                    } else {
                        self.arrows[c[c.len() - 1]].1
                    };
                    let mut v = c.clone();
                    v.insert(i, self.identities[vertex]);
                    S::Chain(v)
                }
            }
        };
        SimplicialData::from_elements(levels, face, degen).expect("nerves are simplicial")
    }
}

/// The simplicial set generated by a directed graph with no 2-cells: an
/// `n`-simplex is a vertex or an edge together with the number `1..=n` of
/// vertices sitting at its source.
pub fn graph_simplicial(vertices: usize, edges: &[(usize, usize)], k: usize) -> SimplicialData {
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum S {
        Vertex(usize),
        Edge(usize, usize),
    }
    let levels: Vec<Vec<S>> = (0..=k)
        .map(|n| {
            let mut l: Vec<S> = (0..vertices).map(S::Vertex).collect();
            for e in 0..edges.len() {
                for j in 1..=n {
                    l.push(S::Edge(e, j));
                }
            }
            l
        })
        .collect();
    let face = |n: usize, i: usize, s: &S| match *s {
        S::Vertex(v) => S::Vertex(v),
        S::Edge(e, j) => {
            let j2 = if i < j { j - 1 } else { j };
            if j2 == 0 {
                S::Vertex(edges[e].1)
            } else if j2 == n {
                S::Vertex(edges[e].0)
            } else {
                S::Edge(e, j2)
            }
        }
    };
    let degen = |_n: usize, i: usize, s: &S| match *s {
        S::Vertex(v) => S::Vertex(v),
        S::Edge(e, j) => S::Edge(e, if i < j { j + 1 } else { j }),
    };
    SimplicialData::from_elements(levels, face, degen).expect("graph simplicial set")
}

/// Nerve of the free monoid on `generators` letters, keeping simplices of
/// total word length at most `max_len`. Letters of generator `g` are `g`.
pub fn free_monoid_nerve(generators: usize, max_len: usize, k: usize) -> SimplicialData {
    let words: Vec<Vec<usize>> = {
        let mut all = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<usize>| {
                    (0..generators).map(move |g| {
                        let mut v = w.clone();
                        v.push(g);
                        v
                    })
                })
                .collect();
            all.extend(layer.iter().cloned());
        }
        all
    };
    let mut levels: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new()]];
    for _ in 1..=k {
        let prev = levels.last().expect("level");
        let next: Vec<Vec<Vec<usize>>> = prev
            .iter()
            .flat_map(|t| {
                let used: usize = t.iter().map(Vec::len).sum();
                words
                    .iter()
                    .filter(move |w| used + w.len() <= max_len)
                    .map(move |w| {
                        let mut v = t.clone();
                        v.push(w.clone());
                        v
                    })
            })
            .collect();
        levels.push(next);
    }
    let face = |n: usize, i: usize, t: &Vec<Vec<usize>>| {
        let mut v = t.clone();
        if i == 0 {
            v.remove(0);
        } else if i == n {
            v.pop();
        } else {
            let mut w = v[i - 1].clone();
            w.extend_from_slice(&v[i]);
            v.splice(i - 1..=i, [w]);
        }
        v
    };
    let degen = |_n: usize, i: usize, t: &Vec<Vec<usize>>| {
        let mut v = t.clone();
        v.insert(i, Vec::new());
        v
    };
    SimplicialData::from_elements(levels, face, degen).expect("free monoid nerve")
}

/// Wedge of two simplicial sets with one vertex each, glued at the vertex.
/// Simplices of `x` keep their indices; non-basepoint simplices of `y`
/// follow.
pub fn wedge(x: &SimplicialData, y: &SimplicialData) -> Result<SimplicialData, SegalError> {
    if x.size(0) != 1 || y.size(0) != 1 {
        return Err(SegalError::Malformed("wedge needs one vertex on each side".into()));
    }
    let k = x.top().min(y.top());
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum S {
        L(usize),
        R(usize),
    }
    let norm = |n: usize, s: S| match s {
        S::R(b) if b == y.constant(n, 0) => S::L(x.constant(n, 0)),
        other => other,
    };
    let levels: Vec<Vec<S>> = (0..=k)
        .map(|n| {
            let mut l: Vec<S> = (0..x.size(n)).map(S::L).collect();
            l.extend((0..y.size(n)).filter(|&b| b != y.constant(n, 0)).map(S::R));
            l
        })
        .collect();
    let face = |n: usize, i: usize, s: &S| match *s {
        S::L(a) => S::L(x.face(n, i, a)),
        S::R(b) => norm(n - 1, S::R(y.face(n, i, b))),
    };
    let degen = |n: usize, i: usize, s: &S| match *s {
        S::L(a) => S::L(x.degen(n, i, a)),
        S::R(b) => norm(n + 1, S::R(y.degen(n, i, b))),
    };
    SimplicialData::from_elements(levels, face, degen)
}
