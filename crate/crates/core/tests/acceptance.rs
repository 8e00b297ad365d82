use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tangle_core::diagram::random::{random_braid_closure, random_diagram};
use tangle_core::diagram::{
    braid_closure, degree, hopf_link, mirror, trefoil, unknot, unlink, validate, zigzag_left, zigzag_right,
    AmbientDim, Diagram, Event, EventKind, ObjectWord,
};
use tangle_core::eval::datum::{gauge_transform, random_gauge, random_kauffman_specialization, swap_datum};
use tangle_core::eval::{
    bracket_state_sum, evaluate, evaluate_scalar, jones_normalized, kauffman_datum, loop_value, validate_datum, Laurent,
    RigidDatum, Ring,
};
use tangle_core::rewrite::{
    applicable_moves, apply_move, canonical_layout, equal, insertion_moves, normalize_planar, reduction_successors,
    simplify, Equality, SearchBudget,
};
use tangle_core::segal::{free_monoid_nerve, seg_colimit_truncated, seg_complete, wedge, FiniteCategory};
use tangle_core::simplex::{phi_hull, ConvexSubset, MonotoneMap};
use tangle_core::words::{
    alternating_factorization, concat, is_alternating, star_enumerate, star_multiply, FiniteMonoid, FreeMonoid,
    Letter, PointedMonoid, StarElement, Stratum,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// ---------------------------------------------------------------- 1

fn expected_edge(phi: &MonotoneMap, i: usize) -> (usize, usize) {
    let v = phi.values();
    let (first, last) = (v[0], v[v.len() - 1]);
    if i <= first {
        return (0, first);
    }
    if last <= i - 1 {
        return (last, phi.target());
    }
    let j = (1..v.len())
        .find(|&j| v[j - 1] <= i - 1 && i <= v[j])
        .expect("some step straddles the edge");
    (v[j - 1], v[j])
}

fn expected_point(phi: &MonotoneMap, i: usize) -> (usize, usize) {
    let v = phi.values();
    let (first, last) = (v[0], v[v.len() - 1]);
    if i < first {
        return (0, first);
    }
    if last < i {
        return (last, phi.target());
    }
    if v.contains(&i) {
        return (i, i);
    }
    let j = (1..v.len())
        .find(|&j| v[j - 1] < i && i < v[j])
        .expect("some step straddles the point");
    (v[j - 1], v[j])
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for a in 0..=5 {
        for b in 0..=5 {
            for phi in MonotoneMap::all(b, a) {
                for i in 0..=a {
                    let got = phi_hull(&phi, &ConvexSubset::point(i, a).unwrap()).unwrap();
                    checked += 1;
                    if (got.lo, got.hi) != expected_point(&phi, i) {
                        bad.push(format!("{:?} {{{i}}}", phi.values()));
                    }
                    if i == 0 {
                        continue;
                    }
                    let got = phi_hull(&phi, &ConvexSubset::new(i - 1, i, a).unwrap()).unwrap();
                    checked += 1;
                    if (got.lo, got.hi) != expected_edge(&phi, i) {
                        bad.push(format!("{:?} {{{}<{i}}}", phi.values(), i - 1));
                    }
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} cases, {} mismatches {:?}", bad.len(), bad.first()))
}

// ---------------------------------------------------------------- 2

fn fewest_alternating_parts(w: &[u8]) -> usize {
    if w.is_empty() {
        return 0;
    }
    let cuts = w.len() - 1;
    (0u32..1 << cuts)
        .filter(|mask| {
            let mut start = 0;
            for i in 0..=cuts {
                if i == cuts || mask >> i & 1 == 1 {
                    if !is_alternating(&w[start..=i]) {
                        return false;
                    }
                    start = i + 1;
                }
            }
            true
        })
        .map(|mask| mask.count_ones() as usize + 1)
        .min()
        .expect("single letters always work")
}

fn criterion_2() -> Outcome {
    let mut words = 0;
    let mut bad = None;
    for n in 0..=12usize {
        for bits in 0u32..1 << n {
            let w: Vec<u8> = (0..n).map(|i| (bits >> i & 1) as u8).collect();
            let f = alternating_factorization(&w);
            let ok = concat(&f).0 == w
                && f.iter().all(|p| !p.is_empty() && is_alternating(p.letters()))
                && f.len() == fewest_alternating_parts(&w);
            words += 1;
            if !ok && bad.is_none() {
                bad = Some(w);
            }
        }
    }
    outcome(bad.is_none(), format!("{words} words, first failure {bad:?}"))
}

// ---------------------------------------------------------------- 3

fn stratum_counts<MA: PointedMonoid, MB: PointedMonoid>(a: &MA, b: &MB, max_len: usize) -> Result<(), String> {
    let alpha = a.nonunits_up_to(1).len() as u64;
    let beta = b.nonunits_up_to(1).len() as u64;
    let all = star_enumerate(a, b, max_len, 1);
    let mut counts: HashMap<(usize, Stratum), u64> = HashMap::new();
    for e in &all {
        if !e.is_alternating() {
            return Err(format!("non-alternating element {e:?}"));
        }
        *counts.entry((e.alternation_length(), e.stratum())).or_default() += 1;
    }
    for len in 0..=max_len {
        let expected: Vec<(Stratum, u64)> = if len == 0 {
            vec![(Stratum::Unit, 1)]
        } else if len % 2 == 1 {
            let k = (len / 2) as u32;
            vec![
                (Stratum::LeftLeft, alpha.pow(k + 1) * beta.pow(k)),
                (Stratum::RightRight, beta.pow(k + 1) * alpha.pow(k)),
            ]
        } else {
            let k = (len / 2) as u32;
            vec![
                (Stratum::LeftRight, (alpha * beta).pow(k)),
                (Stratum::RightLeft, (alpha * beta).pow(k)),
            ]
        };
        for (s, n) in expected {
            let got = counts.get(&(len, s)).copied().unwrap_or(0);
            if got != n {
                return Err(format!("length {len} {s:?}: {got} != {n}"));
            }
        }
    }
    Ok(())
}

fn flatten(e: &StarElement<Vec<usize>, Vec<usize>>) -> Vec<usize> {
    e.letters()
        .iter()
        .flat_map(|l| match l {
            Letter::Left(w) => vec![0; w.len()],
            Letter::Right(w) => vec![1; w.len()],
        })
        .collect()
}

fn free_product_is_free(max_len: usize) -> Result<usize, String> {
    let f = FreeMonoid::new(1);
    let elems: Vec<_> = star_enumerate(&f, &f, max_len, max_len)
        .into_iter()
        .filter(|e| flatten(e).len() <= max_len)
        .collect();
    let mut words: HashSet<Vec<usize>> = FreeMonoid::new(2).nonunits_up_to(max_len).into_iter().collect();
    words.insert(Vec::new());
    let images: HashSet<Vec<usize>> = elems.iter().map(flatten).collect();
    if images.len() != elems.len() || images != words {
        return Err(format!("{} elements, {} images, {} words", elems.len(), images.len(), words.len()));
    }
    for u in &elems {
        for v in &elems {
            let (fu, fv) = (flatten(u), flatten(v));
            if fu.len() + fv.len() > max_len {
                continue;
            }
            let uv = star_multiply(&f, &f, u, v);
            if flatten(&uv) != [fu, fv].concat() || !uv.is_alternating() {
                return Err(format!("product of {u:?} and {v:?}"));
            }
        }
    }
    Ok(elems.len())
}

fn criterion_3() -> Outcome {
    let pairs = [
        ("Z/2*Z/2", stratum_counts(&FiniteMonoid::cyclic(2), &FiniteMonoid::cyclic(2), 6)),
        ("Z/3*T3", stratum_counts(&FiniteMonoid::cyclic(3), &FiniteMonoid::truncated(3), 6)),
        ("1*Z/4", stratum_counts(&FiniteMonoid::trivial(), &FiniteMonoid::cyclic(4), 6)),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, r) in pairs {
        match r {
            Ok(()) => notes.push(format!("{name} ok")),
            Err(e) => {
                pass = false;
                notes.push(format!("{name} {e}"));
            }
        }
    }
    match free_product_is_free(6) {
        Ok(n) => notes.push(format!("F(x)*F(y) = F(x,y) on {n} elements")),
        Err(e) => {
            pass = false;
            notes.push(format!("F(x)*F(y): {e}"));
        }
    }
    outcome(pass, notes.join("; "))
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    for order in 1..=4 {
        for m in FiniteMonoid::all_of_order(order) {
            total += 1;
            let x = FiniteCategory::from_monoid(&m).nerve(3);
            let ok = match seg_complete(&x, 3) {
                Ok(s) => s.stabilized() && s.num_classes() == order && s.unit_is_isomorphism(&x),
                Err(_) => false,
            };
            if !ok {
                bad.push(format!("{:?}", m.table()));
            }
        }
    }
    outcome(bad.is_empty(), format!("{total} monoids of order <= 4, {} failures", bad.len()))
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Outcome {
    let n = 4;
    let f = free_monoid_nerve(1, 1, n);
    let x = match wedge(&f, &f) {
        Ok(x) => x,
        Err(e) => return outcome(false, format!("wedge: {e}")),
    };
    let seg = match seg_complete(&x, n) {
        Ok(s) => s,
        Err(e) => return outcome(false, format!("seg_complete: {e}")),
    };
    let left_edges = f.size(1);
    let word_of = |c: usize| -> Vec<usize> {
        seg.representative(c)
            .gens
            .iter()
            .map(|&g| usize::from(seg.generators()[g].simplex >= left_edges))
            .collect()
    };
    let short: Vec<usize> = (0..seg.num_classes())
        .filter(|&c| seg.representative(c).len() <= n)
        .collect();
    let seg_words: HashSet<Vec<usize>> = short.iter().map(|&c| word_of(c)).collect();
    let fm = FreeMonoid::new(1);
    let oracle: HashSet<Vec<usize>> = star_enumerate(&fm, &fm, n, n)
        .iter()
        .map(flatten)
        .filter(|w| w.len() <= n)
        .collect();
    let agrees_with_words = seg_words.len() == short.len() && seg_words == oracle;

    let colim = match seg_colimit_truncated(&x, 1, n) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("colimit: {e}")),
    };
    let images: Vec<Option<Vec<usize>>> = colim.representatives.iter().map(|r| seg.image_of(&x, r)).collect();
    let image_set: HashSet<usize> = images.iter().flatten().filter(|v| v.len() == 1).map(|v| v[0]).collect();
    let bijective = images.iter().all(|i| matches!(i, Some(v) if v.len() == 1))
        && image_set.len() == colim.len()
        && image_set == short.iter().copied().collect();
    let pass = agrees_with_words && bijective && colim.previous_injective;
    outcome(
        pass,
        format!(
            "Seg {} classes vs words oracle {} (agree={agrees_with_words}); colimit {} classes, bijection={bijective}, \
             previous_injective={}, stabilized={}",
            short.len(),
            oracle.len(),
            colim.len(),
            colim.previous_injective,
            colim.stabilized
        ),
    )
}

// ---------------------------------------------------------------- 6

#[derive(Clone, Copy)]
enum Step {
    Cup(usize),
    Cap(usize),
}

fn find(uf: &mut [(usize, i64)], x: usize) -> (usize, i64) {
    let (parent, offset) = uf[x];
    if parent == x {
        return (x, 0);
    }
    let (root, o) = find(uf, parent);
    uf[x] = (root, offset + o);
    (root, offset + o)
}

enum Realized {
    Diagram(Diagram),
    /// A cap joins the two ends of one component: a closed loop.
    Loop,
    /// Some component spans more than seven labels.
    OutOfRange,
}

/// A labeling of an unlabeled planar shape within `[-3, 3]`: every strand
/// carries `value(component) + offset`, caps tie two components together.
fn realize(width: usize, steps: &[Step]) -> Realized {
    let mut uf: Vec<(usize, i64)> = (0..width).map(|i| (i, 0)).collect();
    let mut word: Vec<(usize, i64)> = (0..width).map(|i| (i, 0)).collect();
    let mut strands = word.clone();
    for s in steps {
        match *s {
            Step::Cup(p) => {
                let v = uf.len();
                uf.push((v, 0));
                word.splice(p..p, [(v, 1), (v, 0)]);
                strands.extend([(v, 1), (v, 0)]);
            }
            Step::Cap(p) => {
                let (a, b) = (word[p], word[p + 1]);
                let (ra, oa) = find(&mut uf, a.0);
                let (rb, ob) = find(&mut uf, b.0);
                if ra == rb {
                    return Realized::Loop;
                }
                uf[rb] = (ra, oa + a.1 + 1 - ob - b.1);
                word.drain(p..p + 2);
            }
        }
    }
    let mut range: HashMap<usize, (i64, i64)> = HashMap::new();
    for &(v, o) in &strands {
        let (r, pv) = find(&mut uf, v);
        let e = range.entry(r).or_insert((pv + o, pv + o));
        e.0 = e.0.min(pv + o);
        e.1 = e.1.max(pv + o);
    }
    if range.values().any(|(lo, hi)| hi - lo > 6) {
        return Realized::OutOfRange;
    }
    let mut label = |v: usize, o: i64| {
        let (r, pv) = find(&mut uf, v);
        pv + o - 3 - range[&r].0
    };
    let source = ObjectWord((0..width).map(|i| label(i, 0)).collect());
    let mut word: Vec<(usize, i64)> = (0..width).map(|i| (i, 0)).collect();
    let mut next = width;
    let mut events = Vec::new();
    for s in steps {
        match *s {
            Step::Cup(p) => {
                events.push(Event::new(EventKind::Cup(label(next, 0)), p));
                word.splice(p..p, [(next, 1), (next, 0)]);
                next += 1;
            }
            Step::Cap(p) => {
                let (v, o) = word[p];
                events.push(Event::new(EventKind::Cap(label(v, o)), p));
                word.drain(p..p + 2);
            }
        }
    }
    Realized::Diagram(Diagram::from_sequence(AmbientDim::Planar, source, events).expect("solved labels type"))
}

type Key = (ObjectWord, Vec<Event>);

fn key(d: &Diagram) -> Key {
    (d.source().clone(), canonical_layout(d).sequential_events())
}

fn shape_key(d: &Diagram) -> Vec<(bool, usize)> {
    canonical_layout(d)
        .sequential_events()
        .iter()
        .map(|e| (matches!(e.kind, EventKind::Cup(_)), e.position))
        .collect()
}

/// Classes reached by maximal reduction sequences from `d`; records any
/// step that fails to shorten the diagram.
fn terminals(d: &Diagram, memo: &mut HashMap<Key, HashSet<Key>>, non_decreasing: &mut usize) -> HashSet<Key> {
    let k = key(d);
    if let Some(t) = memo.get(&k) {
        return t.clone();
    }
    let next = reduction_successors(d, AmbientDim::Planar);
    let mut out = HashSet::new();
    if next.is_empty() {
        out.insert(k.clone());
    }
    for r in next {
        if r.num_events() + 2 != d.num_events() {
            *non_decreasing += 1;
        }
        out.extend(terminals(&r, memo, non_decreasing));
    }
    memo.insert(k, out.clone());
    out
}

fn zigzag_composites() -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut n = 0;
    for k in -3..=3 {
        let id = Diagram::identity(AmbientDim::Planar, ObjectWord(vec![k]));
        for d in [zigzag_left(k), zigzag_right(k)] {
            n += 1;
            if equal(&d, &id, AmbientDim::Planar, SearchBudget::default()) != Ok(Equality::Equal)
                || simplify(&d, AmbientDim::Planar) != id
            {
                return Err(format!("zig-zag at {k}"));
            }
        }
    }
    for _ in 0..200 {
        let k = rng.gen_range(-3..=3);
        let mut d = Diagram::identity(AmbientDim::Planar, ObjectWord(vec![k]));
        for _ in 0..rng.gen_range(1..=3) {
            let z = if rng.gen_bool(0.5) { zigzag_left(k) } else { zigzag_right(k) };
            d = d.compose(&z).expect("same boundary");
        }
        let pad = ObjectWord(vec![rng.gen_range(-3..=3)]);
        let side = Diagram::identity(AmbientDim::Planar, pad);
        let (d, id) = if rng.gen_bool(0.5) {
            (d.tensor(&side), Diagram::identity(AmbientDim::Planar, ObjectWord(vec![k])).tensor(&side))
        } else {
            (side.tensor(&d), side.tensor(&Diagram::identity(AmbientDim::Planar, ObjectWord(vec![k]))))
        };
        n += 1;
        if normalize_planar(&d).ok() != normalize_planar(&id).ok() || simplify(&d, AmbientDim::Planar).num_events() != 0 {
            return Err(format!("composite {:?}", d.sequential_events()));
        }
    }
    Ok(n)
}

fn criterion_6() -> Outcome {
    let mut memo = HashMap::new();
    let (mut classes, mut unconfluent, mut non_decreasing, mut unrealized) = (0usize, 0usize, 0usize, 0usize);
    for width in 0..=4usize {
        let mut layer: Vec<Vec<Step>> = vec![Vec::new()];
        for _ in 1..=6 {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for steps in &layer {
                let w = steps.iter().fold(width as i64, |w, s| match s {
                    Step::Cup(_) => w + 2,
                    Step::Cap(_) => w - 2,
                }) as usize;
                let options = (0..=w).map(Step::Cup).chain((0..w.saturating_sub(1)).map(Step::Cap));
                for s in options {
                    let mut ext = steps.clone();
                    ext.push(s);
                    let d = match realize(width, &ext) {
                        Realized::Diagram(d) => d,
                        Realized::Loop => continue,
                        Realized::OutOfRange => {
                            unrealized += 1;
                            continue;
                        }
                    };
                    if !seen.insert(shape_key(&d)) {
                        continue;
                    }
                    classes += 1;
                    let ts = terminals(&d, &mut memo, &mut non_decreasing);
                    let nf = normalize_planar(&d).expect("valid planar").to_diagram();
                    if ts.len() != 1 || !ts.contains(&key(&nf)) {
                        unconfluent += 1;
                    }
                    next.push(ext);
                }
            }
            layer = next;
        }
    }
    let zz = zigzag_composites();
    let pass = unconfluent == 0 && non_decreasing == 0 && unrealized == 0 && zz.is_ok();
    outcome(
        pass,
        format!(
            "{classes} shape classes (sources of length <= 4, <= 6 events, every labeling in [-3,3]), \
             {unconfluent} with distinct normal forms, {non_decreasing} non-shortening steps, \
             {unrealized} shapes without labeling; zig-zag composites: {}",
            match zz {
                Ok(n) => format!("{n} equal identities"),
                Err(e) => e,
            }
        ),
    )
}

// ---------------------------------------------------------------- 7

fn max_width(d: &Diagram) -> usize {
    d.slices()
        .iter()
        .map(|s| s.input.len())
        .chain([d.target().len()])
        .max()
        .unwrap_or(0)
}

fn small_diagram(rng: &mut ChaCha8Rng, dim: AmbientDim, source: ObjectWord, events: usize) -> Diagram {
    loop {
        let d = random_diagram(rng, dim, source.clone(), events, -2..=2);
        if max_width(&d) <= 6 {
            return d;
        }
    }
}

fn random_source(rng: &mut ChaCha8Rng) -> ObjectWord {
    ObjectWord((0..rng.gen_range(0..=2)).map(|_| rng.gen_range(-2..=2)).collect())
}

fn functoriality<R: Ring>(datum: &RigidDatum<R>, dim: AmbientDim, seed: u64, trials: usize) -> Result<(), String> {
    let report = validate_datum(datum, dim);
    if !report.is_valid() {
        return Err(format!("datum fails {:?}", report.failures()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let source = random_source(&mut rng);
        let n1 = rng.gen_range(0..=4);
        let d1 = small_diagram(&mut rng, dim, source, n1);
        let n2 = rng.gen_range(0..=4);
        let d2 = small_diagram(&mut rng, dim, d1.target().clone(), n2);
        let whole = d1.compose(&d2).map_err(|e| e.to_string())?;
        let (e1, e2, e) = (evaluate(&d1, datum), evaluate(&d2, datum), evaluate(&whole, datum));
        match (e1, e2, e) {
            (Ok(a), Ok(b), Ok(c)) if b.mul(&a).ok().as_ref() == Some(&c) => {}
            _ => return Err(format!("composition {t}")),
        }
    }
    for t in 0..trials {
        let source = random_source(&mut rng);
        let n = rng.gen_range(1..=5);
        let d = small_diagram(&mut rng, dim, source, n);
        let mut moves = applicable_moves(&d, dim);
        moves.extend(insertion_moves(&d, dim));
        let m = loop {
            if moves.is_empty() {
                break None;
            }
            let m = moves.swap_remove(rng.gen_range(0..moves.len()));
            if let Ok(r) = apply_move(&d, m) {
                if max_width(&r) <= 7 {
                    break Some((m, r));
                }
            }
        };
        let Some((m, r)) = m else { continue };
        if d.source() != r.source() || !dim.words_match(d.target(), r.target()) || degree(d.target()) != degree(r.target())
        {
            return Err(format!("move {t} {m:?} changed the boundary"));
        }
        if evaluate(&d, datum).ok() != evaluate(&r, datum).ok() || evaluate(&d, datum).is_err() {
            return Err(format!("move {t} {m:?} changed the value"));
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(70);
    let special = random_kauffman_specialization(&mut rng);
    let g = random_gauge(&mut rng, 2);
    let swap: RigidDatum<BigRational> = gauge_transform(&swap_datum(2), &g).expect("invertible gauge");
    let results = [
        ("kauffman", functoriality(&kauffman_datum(), AmbientDim::Braided, 71, 200)),
        ("kauffman at rational A", functoriality(&special, AmbientDim::Braided, 72, 200)),
        ("gauged swap", functoriality(&swap, AmbientDim::Symmetric, 73, 200)),
    ];
    let pass = results.iter().all(|(_, r)| r.is_ok());
    let notes: Vec<String> = results
        .iter()
        .map(|(n, r)| match r {
            Ok(()) => format!("{n} ok"),
            Err(e) => format!("{n}: {e}"),
        })
        .collect();
    outcome(pass, format!("200 pairs + 200 moves per datum; {}", notes.join("; ")))
}

// ---------------------------------------------------------------- 8

fn braid_words(strands: usize, len: usize) -> Vec<Vec<(usize, bool)>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<(usize, bool)>| {
                (0..strands - 1).flat_map(move |i| {
                    [true, false].map(|s| {
                        let mut v = w.clone();
                        v.push((i, s));
                        v
                    })
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn criterion_8() -> Outcome {
    let kd = kauffman_datum();
    let delta = loop_value();
    let mut diagrams: Vec<Diagram> = Vec::new();
    for w in braid_words(2, 5) {
        diagrams.push(braid_closure(2, &w));
    }
    for w in braid_words(3, 4) {
        diagrams.push(braid_closure(3, &w));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(80);
    for _ in 0..100 {
        let strands = rng.gen_range(3..=4);
        diagrams.push(random_braid_closure(&mut rng, strands, 5));
    }
    for _ in 0..50 {
        let (la, lb) = (rng.gen_range(0..=3), rng.gen_range(0..=2));
        let a = random_braid_closure(&mut rng, 2, la);
        let b = random_braid_closure(&mut rng, 2, lb);
        diagrams.push(a.tensor(&b));
    }
    let mut mismatches = 0;
    for d in &diagrams {
        let lhs = evaluate_scalar(d, &kd);
        let rhs = bracket_state_sum(d).map(|b| &delta * &b);
        if lhs.is_err() || lhs != rhs {
            mismatches += 1;
        }
    }
    let unknot_ok = evaluate_scalar(&unknot(), &kd).ok() == Some(delta.clone());

    let mut kink_failures = 0;
    for w in braid_words(2, 3).into_iter().chain(braid_words(3, 2)) {
        let n = w.iter().map(|&(i, _)| i + 2).max().unwrap_or(2);
        for sign in [true, false] {
            let mut stabilized = w.clone();
            stabilized.push((n - 1, sign));
            let j0 = jones_normalized(&braid_closure(n, &w));
            let j1 = jones_normalized(&braid_closure(n + 1, &stabilized));
            if j0.is_err() || j0 != j1 {
                kink_failures += 1;
            }
        }
    }
    let j = |d: &Diagram| jones_normalized(d).expect("closed diagram");
    let t = j(&trefoil());
    let m = j(&mirror(&trefoil()));
    let separations = [
        ("trefoil vs unknot", t != j(&unknot())),
        ("hopf vs unlink", j(&hopf_link()) != j(&unlink(2))),
        ("trefoil vs mirror", t != m),
        ("mirror inverts A", m == t.invert_variable()),
    ];
    let failed: Vec<&str> = separations.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let pass = mismatches == 0 && unknot_ok && kink_failures == 0 && failed.is_empty();
    outcome(
        pass,
        format!(
            "{} closed diagrams, {mismatches} mismatches; unknot -> {}: {unknot_ok}; {kink_failures} kink failures; \
             failed separations {failed:?}; trefoil {}",
            diagrams.len(),
            Laurent::format_braced(&delta),
            t
        ),
    )
}

// ---------------------------------------------------------------- 9

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let dims = [AmbientDim::Planar, AmbientDim::Braided, AmbientDim::Symmetric];
    let mut bad = 0;
    let total = 10_000;
    for t in 0..total {
        let dim = dims[t % 3];
        let source = ObjectWord((0..rng.gen_range(0..=4)).map(|_| rng.gen_range(-3..=3)).collect());
        let n = rng.gen_range(0..=10);
        let d = random_diagram(&mut rng, dim, source, n, -3..=3);
        if !validate(&d, dim).is_valid() || degree(d.source()) != degree(d.target()) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{total} random diagrams across three dims, {bad} violations"))
}

// ---------------------------------------------------------------- 10

fn criterion_10() -> Outcome {
    let k = validate_datum(&kauffman_datum(), AmbientDim::Braided);
    let dims = [AmbientDim::Planar, AmbientDim::Braided, AmbientDim::Symmetric];
    let trivial_laurent: Vec<bool> = dims
        .iter()
        .map(|&d| validate_datum(&RigidDatum::<Laurent>::trivial(), d).is_valid())
        .collect();
    let trivial_rational: Vec<bool> = dims
        .iter()
        .map(|&d| validate_datum(&RigidDatum::<BigRational>::trivial(), d).is_valid())
        .collect();
    let pass = k.is_valid() && trivial_laurent.iter().all(|&b| b) && trivial_rational.iter().all(|&b| b);
    outcome(
        pass,
        format!(
            "kauffman: {} checks, failures {:?}; trivial over Z[A,A^-1] {trivial_laurent:?}, over Q {trivial_rational:?}",
            k.checks.len(),
            k.failures()
        ),
    )
}

fn main() {
    type Criterion = (usize, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Some(Duration::from_secs(1))),
        (2, criterion_2, Some(Duration::from_secs(10))),
        (3, criterion_3, None),
        (4, criterion_4, None),
        (5, criterion_5, None),
        (6, criterion_6, Some(Duration::from_secs(60))),
        (7, criterion_7, None),
        (8, criterion_8, Some(Duration::from_secs(60))),
        (9, criterion_9, None),
        (10, criterion_10, None),
    ];
    let mut all = true;
    for (n, run, limit) in criteria {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let in_time = limit.map_or(true, |l| took < l);
        let pass = o.pass && in_time;
        all &= pass;
        let limit_note = match limit {
            Some(l) if !in_time => format!(" (over the {}s limit)", l.as_secs()),
            _ => String::new(),
        };
        println!(
            "criterion {n}: {} [{:.2}s{limit_note}] {}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
