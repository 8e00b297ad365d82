use std::collections::{HashMap, HashSet};

use super::{FiniteCategory, FormulaElement, SegalError, SimplicialData};
use crate::simplex::MonotoneMap;

/// A nondegenerate 1-simplex used as a generating arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub src: usize,
    pub tgt: usize,
    pub simplex: usize,
}

/// A composable word of generators, first letter first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub gens: Vec<usize>,
}

impl Path {
    pub fn identity(object: usize) -> Self {
        Path {
            src: object,
            tgt: object,
            gens: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

/// A category presentation with hom-sets enumerated up to a word-length
/// budget.
#[derive(Clone, Debug)]
pub struct SegCompletion {
    objects: usize,
    generators: Vec<Generator>,
    relations: Vec<(Path, Path)>,
    budget: usize,
    paths: Vec<Path>,
    path_index: HashMap<Path, usize>,
    class_of_path: Vec<usize>,
    classes: Vec<Vec<usize>>,
    edge_word: Vec<Option<usize>>,
    stabilized: bool,
}

struct Closure {
    paths: Vec<Path>,
    path_index: HashMap<Path, usize>,
    parent: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(parent, a), find(parent, b));
    if a != b {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        parent[hi] = lo;
    }
}

/// Paths of length at most `budget`, shortest first, then lexicographic
/// by source and letters.
fn enumerate_paths(objects: usize, generators: &[Generator], budget: usize) -> Vec<Path> {
    let mut layer: Vec<Path> = (0..objects).map(Path::identity).collect();
    let mut all = layer.clone();
    for _ in 0..budget {
        let mut next: Vec<Path> = Vec::new();
        for p in &layer {
            for (g, gen) in generators.iter().enumerate() {
                if gen.src == p.tgt {
                    let mut gens = p.gens.clone();
                    gens.push(g);
                    next.push(Path {
                        src: p.src,
                        tgt: gen.tgt,
                        gens,
                    });
                }
            }
        }
        next.sort();
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn close(objects: usize, generators: &[Generator], relations: &[(Path, Path)], budget: usize) -> Closure {
    let paths = enumerate_paths(objects, generators, budget);
    let path_index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..paths.len()).collect();
    let vertex = |p: &Path, i: usize| {
        if i < p.gens.len() {
            generators[p.gens[i]].src
        } else {
            p.tgt
        }
    };
    for (pi, p) in paths.iter().enumerate() {
        for (l, r) in relations.iter().flat_map(|(l, r)| [(l, r), (r, l)]) {
            if p.len() < l.len() || p.len() - l.len() + r.len() > budget {
                continue;
            }
            for i in 0..=p.len() - l.len() {
                if vertex(p, i) != l.src || p.gens[i..i + l.len()] != l.gens[..] {
                    continue;
                }
                let mut gens = p.gens[..i].to_vec();
                gens.extend_from_slice(&r.gens);
                gens.extend_from_slice(&p.gens[i + l.len()..]);
                let q = Path {
                    src: p.src,
                    tgt: p.tgt,
                    gens,
                };
                union(&mut parent, pi, path_index[&q]);
            }
        }
    }
    Closure {
        paths,
        path_index,
        parent,
    }
}

/// Segal completion of `x` by generators and relations.
///
/// Objects are `X_0`, generators the nondegenerate 1-simplices, and each
/// 2-simplex `σ` gives `d_2 σ · d_0 σ = d_1 σ`, with degenerate edges read
/// as identities. Hom-sets are the classes of the congruence on words of
/// length at most `budget`. The result is stabilized when every class has
/// a word shorter than the budget and the classes of shorter words agree
/// with those computed at `budget - 1`.
pub fn seg_complete(x: &SimplicialData, budget: usize) -> Result<SegCompletion, SegalError> {
    if x.top() < 2 {
        return Err(SegalError::LevelOutOfRange(2));
    }
    let objects = x.size(0);
    let mut generators = Vec::new();
    let mut edge_word = vec![None; x.size(1)];
    for e in 0..x.size(1) {
        if !x.is_degenerate(1, e) {
            edge_word[e] = Some(generators.len());
            generators.push(Generator {
                src: x.face(1, 1, e),
                tgt: x.face(1, 0, e),
                simplex: e,
            });
        }
    }
    let word = |e: usize| {
        let v = x.vertices(1, e);
        Path {
            src: v[0],
            tgt: v[1],
            gens: edge_word[e].into_iter().collect(),
        }
    };
    let mut relations = Vec::new();
    let mut seen = HashSet::new();
    for s in 0..x.size(2) {
        let (first, second, long) = (word(x.face(2, 2, s)), word(x.face(2, 0, s)), word(x.face(2, 1, s)));
        let mut gens = first.gens;
        gens.extend(second.gens);
        let lhs = Path {
            src: first.src,
            tgt: second.tgt,
            gens,
        };
        if lhs != long && seen.insert((lhs.clone(), long.clone())) {
            relations.push((lhs, long));
        }
    }
    let full = close(objects, &generators, &relations, budget);
    let Closure {
        paths,
        path_index,
        mut parent,
    } = full;
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of_path = Vec::with_capacity(paths.len());
    for i in 0..paths.len() {
        let r = find(&mut parent, i);
        let c = *class_of_root.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
        class_of_path.push(c);
    }
    let stabilized = budget > 0 && {
        let short = paths.iter().take_while(|p| p.len() < budget).count();
        let reach = classes.iter().all(|c| paths[c[0]].len() < budget);
        let mut small = close(objects, &generators, &relations, budget - 1);
        let mut pairing: HashMap<usize, usize> = HashMap::new();
        let mut used = HashSet::new();
        let mut agree = true;
        for i in 0..short {
            let rs = find(&mut small.parent, i);
            match pairing.get(&rs) {
                Some(&c) => agree &= c == class_of_path[i],
                None => {
                    agree &= used.insert(class_of_path[i]);
                    pairing.insert(rs, class_of_path[i]);
                }
            }
        }
        reach && agree
    };
    Ok(SegCompletion {
        objects,
        generators,
        relations,
        budget,
        paths,
        path_index,
        class_of_path,
        classes,
        edge_word,
        stabilized,
    })
}

impl SegCompletion {
    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[(Path, Path)] {
        &self.relations
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn stabilized(&self) -> bool {
        self.stabilized
    }

    /// Number of arrow classes found, identities included.
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Words of a class, shortest first.
    pub fn class_paths(&self, class: usize) -> impl Iterator<Item = &Path> {
        self.classes[class].iter().map(|&i| &self.paths[i])
    }

    pub fn representative(&self, class: usize) -> &Path {
        &self.paths[self.classes[class][0]]
    }

    pub fn class_of(&self, path: &Path) -> Option<usize> {
        self.path_index.get(path).map(|&i| self.class_of_path[i])
    }

    pub fn identity(&self, object: usize) -> usize {
        self.class_of_path[object]
    }

    /// The class of a 1-simplex of the input.
    pub fn class_of_edge(&self, x: &SimplicialData, e: usize) -> usize {
        let v = x.vertices(1, e);
        match self.edge_word[e] {
            Some(g) => self
                .class_of(&Path {
                    src: v[0],
                    tgt: v[1],
                    gens: vec![g],
                })
                .expect("generators fit any positive budget"),
            None => self.identity(v[0]),
        }
    }

    /// Classes from `src` to `tgt`, in order of first appearance.
    pub fn hom(&self, src: usize, tgt: usize) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| {
                let p = self.representative(c);
                p.src == src && p.tgt == tgt
            })
            .collect()
    }

    /// `first` then `second`, reducing one letter at a time. `None` when a
    /// step leaves the budget or the classes are not composable.
    pub fn compose(&self, first: usize, second: usize) -> Option<usize> {
        let a = self.representative(first);
        let b = self.representative(second);
        if a.tgt != b.src {
            return None;
        }
        let mut cur = first;
        for &g in &b.gens {
            let r = self.representative(cur);
            let mut gens = r.gens.clone();
            gens.push(g);
            cur = self.class_of(&Path {
                src: r.src,
                tgt: self.generators[g].tgt,
                gens,
            })?;
        }
        Some(cur)
    }

    /// The image of a colimit representative in the nerve of the
    /// completion: for each step of `u`, the composite of the spine edges
    /// it covers. `None` if a composite leaves the budget.
    pub fn image_of(&self, x: &SimplicialData, elem: &FormulaElement) -> Option<Vec<usize>> {
        let a = elem.phi.target();
        let mut edges = Vec::with_capacity(a);
        for i in 1..=a {
            let k = elem
                .pieces
                .iter()
                .position(|&(lo, hi)| lo <= i - 1 && i <= hi)
                .expect("pieces cover [a]");
            let (lo, hi) = elem.pieces[k];
            let edge = MonotoneMap::new(hi - lo, vec![i - 1 - lo, i - lo]).expect("edge of piece");
            edges.push(self.class_of_edge(x, x.apply(&edge, elem.simplices[k]).ok()?));
        }
        let vertex = |i: usize| -> usize {
            if a == 0 {
                elem.simplices[0]
            } else {
                let k = elem.pieces.iter().position(|&(lo, hi)| lo <= i && i <= hi).expect("cover");
                let (lo, hi) = elem.pieces[k];
                x.vertices(hi - lo, elem.simplices[k])[i - lo]
            }
        };
        let u = elem.u.values();
        if u.len() == 1 {
            return Some(vec![self.identity(vertex(u[0]))]);
        }
        u.windows(2)
            .map(|w| {
                let mut cur = self.identity(vertex(w[0]));
                for e in &edges[w[0]..w[1]] {
                    cur = self.compose(cur, *e)?;
                }
                Some(cur)
            })
            .collect()
    }

    /// The enumerated category, when the enumeration stabilized.
    pub fn to_category(&self) -> Option<FiniteCategory> {
        if !self.stabilized {
            return None;
        }
        let n = self.classes.len();
        let arrows: Vec<(usize, usize)> = (0..n)
            .map(|c| {
                let p = self.representative(c);
                (p.src, p.tgt)
            })
            .collect();
        let mut table = HashMap::new();
        for f in 0..n {
            for g in 0..n {
                if arrows[f].1 == arrows[g].0 {
                    table.insert((f, g), self.compose(f, g)?);
                }
            }
        }
        let identities = (0..self.objects).map(|o| self.identity(o)).collect();
        FiniteCategory::new(self.objects, arrows, identities, table).ok()
    }

    /// Whether `X_n -> N(Seg X)_n` is a bijection for every stored level.
    pub fn unit_is_isomorphism(&self, x: &SimplicialData) -> bool {
        let Some(cat) = self.to_category() else {
            return false;
        };
        let nerve = cat.nerve(x.top());
        (0..=x.top()).all(|n| {
            if x.size(n) != nerve.size(n) {
                return false;
            }
            let mut seen = HashSet::new();
            (0..x.size(n)).all(|s| {
                let key: Vec<usize> = if n == 0 {
                    vec![s]
                } else {
                    x.spine(n, s).into_iter().map(|e| self.class_of_edge(x, e)).collect()
                };
                seen.insert(key)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segal::{free_monoid_nerve, graph_simplicial, wedge};
    use crate::words::FiniteMonoid;

    #[test]
    fn graph_completion_is_free() {
        let x = graph_simplicial(3, &[(0, 1), (1, 2)], 2);
        let s = seg_complete(&x, 3).unwrap();
        assert!(s.stabilized());
        assert_eq!(s.num_classes(), 6);
        assert_eq!(s.hom(0, 2).len(), 1);
        assert_eq!(s.representative(s.hom(0, 2)[0]).gens, vec![0, 1]);
        assert!(s.hom(2, 0).is_empty());
    }

    #[test]
    fn monoid_completion_is_monoid() {
        let m = FiniteMonoid::cyclic(3);
        let x = FiniteCategory::from_monoid(&m).nerve(3);
        let s = seg_complete(&x, 3).unwrap();
        assert!(s.stabilized());
        assert_eq!(s.num_classes(), 3);
        assert!(s.unit_is_isomorphism(&x));
    }

    #[test]
    fn free_product_does_not_stabilize() {
        let f = free_monoid_nerve(1, 3, 2);
        let x = wedge(&f, &f).unwrap();
        let s = seg_complete(&x, 3).unwrap();
        assert!(!s.stabilized());
        // words in x, y of length <= 3
        let short = (0..s.num_classes())
            .filter(|&c| s.class_paths(c).any(|p| p.len() <= 3))
            .count();
        assert!(short >= 15);
    }

    #[test]
    fn needs_level_two() {
        let x = graph_simplicial(1, &[], 1);
        assert!(seg_complete(&x, 2).is_err());
    }
}
