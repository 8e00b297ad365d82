//! Words, alternating factorizations, and the coproduct of pointed monoids
//! in its alternating normal form.

use std::collections::BTreeSet;
use std::fmt::{self, Debug};
use std::hash::Hash;

use thiserror::Error;

/// A finite word over letters of type `T`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word<T>(pub Vec<T>);

impl<T> Word<T> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[T] {
        &self.0
    }
}

impl<T> From<Vec<T>> for Word<T> {
    fn from(v: Vec<T>) -> Self {
        Word(v)
    }
}

impl Word<u8> {
    /// A word of digits, e.g. `"0110"`.
    pub fn digits(s: &str) -> Self {
        Word(s.bytes().map(|b| b - b'0').collect())
    }
}

impl<T: fmt::Display> fmt::Display for Word<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub fn concat<T: Clone>(ws: &[Word<T>]) -> Word<T> {
    Word(ws.iter().flat_map(|w| w.0.iter().cloned()).collect())
}

/// No two consecutive letters are equal.
pub fn is_alternating<T: PartialEq>(w: &[T]) -> bool {
    w.windows(2).all(|p| p[0] != p[1])
}

/// Split between every pair of equal consecutive letters. This yields the
/// fewest alternating factors: any factorization must cut at each such pair.
pub fn alternating_factorization<T: PartialEq + Clone>(w: &[T]) -> Vec<Word<T>> {
    let mut out: Vec<Word<T>> = Vec::new();
    for (i, l) in w.iter().enumerate() {
        if i == 0 || w[i - 1] == *l {
            out.push(Word(vec![l.clone()]));
        } else {
            out.last_mut().expect("started").0.push(l.clone());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("multiplication table is not square")]
    NotSquare,
    #[error("table entry {0} is out of range")]
    OutOfRange(usize),
    #[error("element {0} is not a two-sided unit")]
    NotUnit(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

/// A monoid with a distinguished unit whose elements can be listed up to a
/// size bound.
pub trait PointedMonoid {
    type Elem: Clone + Eq + Hash + Ord + Debug;

    fn unit(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// Non-unit elements of size at most `bound`, sorted.
    fn nonunits_up_to(&self, bound: usize) -> Vec<Self::Elem>;
    /// Size used for length filtrations; 0 exactly on the unit.
    fn size(&self, a: &Self::Elem) -> usize;
}

/// A finite monoid on `{0, …, n-1}` given by its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl FiniteMonoid {
    pub fn new(table: Vec<Vec<usize>>, unit: usize) -> Result<Self, MonoidError> {
        let n = table.len();
        if table.iter().any(|r| r.len() != n) || unit >= n.max(1) || n == 0 {
            return Err(MonoidError::NotSquare);
        }
        if let Some(&v) = table.iter().flatten().find(|&&v| v >= n) {
            return Err(MonoidError::OutOfRange(v));
        }
        if (0..n).any(|a| table[unit][a] != a || table[a][unit] != a) {
            return Err(MonoidError::NotUnit(unit));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(MonoidError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteMonoid { table, unit })
    }

    pub fn trivial() -> Self {
        FiniteMonoid {
            table: vec![vec![0]],
            unit: 0,
        }
    }

    /// `Z/n` with unit 0.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteMonoid::new(table, 0).expect("cyclic group")
    }

    /// `{1, x, …, x^(n-1)}` with `x^n = x^(n-1)`.
    pub fn truncated(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b).min(n - 1)).collect())
            .collect();
        FiniteMonoid::new(table, 0).expect("truncated monoid")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    /// Every monoid structure on `{0, …, n-1}` with unit 0, one per
    /// isomorphism class.
    pub fn all_of_order(n: usize) -> Vec<FiniteMonoid> {
        if n == 0 {
            return Vec::new();
        }
        let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
        let mut table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| if a == 0 { b } else if b == 0 { a } else { 0 }).collect())
            .collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let perms = permutations_fixing_zero(n);
        let total = n.pow(free.len() as u32);
        for code in 0..total {
            let mut c = code;
            for &(a, b) in &free {
                table[a][b] = c % n;
                c /= n;
            }
            let Ok(m) = FiniteMonoid::new(table.clone(), 0) else {
                continue;
            };
            let canon = perms
                .iter()
                .map(|p| {
                    let mut t = vec![vec![0; n]; n];
                    for a in 0..n {
                        for b in 0..n {
                            t[p[a]][p[b]] = p[m.table[a][b]];
                        }
                    }
                    t
                })
                .min()
                .expect("identity permutation");
            if seen.insert(canon) {
                out.push(m);
            }
        }
        out
    }
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..n).collect(), &mut vec![0], &mut out);
    out
}

impl PointedMonoid for FiniteMonoid {
    type Elem = usize;

    fn unit(&self) -> usize {
        self.unit
    }
    fn multiply(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }
    fn is_unit(&self, a: &usize) -> bool {
        *a == self.unit
    }
    fn nonunits_up_to(&self, _bound: usize) -> Vec<usize> {
        (0..self.order()).filter(|&a| a != self.unit).collect()
    }
    fn size(&self, a: &usize) -> usize {
        usize::from(*a != self.unit)
    }
}

/// The free monoid on `generators` letters; elements are words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeMonoid {
    pub generators: usize,
}

impl FreeMonoid {
    pub fn new(generators: usize) -> Self {
        FreeMonoid { generators }
    }
}

impl PointedMonoid for FreeMonoid {
    type Elem = Vec<usize>;

    fn unit(&self) -> Vec<usize> {
        Vec::new()
    }
    fn multiply(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        let mut v = a.clone();
        v.extend_from_slice(b);
        v
    }
    fn is_unit(&self, a: &Vec<usize>) -> bool {
        a.is_empty()
    }
    fn nonunits_up_to(&self, bound: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..bound {
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..self.generators).map(move |g| {
                        let mut v = w.clone();
                        v.push(g);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out.sort();
        out
    }
    fn size(&self, a: &Vec<usize>) -> usize {
        a.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter<A, B> {
    Left(A),
    Right(B),
}

/// An element of `A ⋆ B`: non-unit letters alternating between the factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarElement<A, B> {
    letters: Vec<Letter<A, B>>,
}

/// The four families of non-unit elements, by first and last factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stratum {
    Unit,
    /// `Ā × (B̄ × Ā)^k`
    LeftLeft,
    /// `B̄ × (Ā × B̄)^k`
    RightRight,
    /// `(Ā × B̄)^(k+1)`
    LeftRight,
    /// `(B̄ × Ā)^(k+1)`
    RightLeft,
}

impl<A: Clone + Eq, B: Clone + Eq> StarElement<A, B> {
    pub fn unit() -> Self {
        StarElement { letters: Vec::new() }
    }

    pub fn left(a: A) -> Self {
        StarElement {
            letters: vec![Letter::Left(a)],
        }
    }

    pub fn right(b: B) -> Self {
        StarElement {
            letters: vec![Letter::Right(b)],
        }
    }

    pub fn letters(&self) -> &[Letter<A, B>] {
        &self.letters
    }

    /// Number of alternating letters.
    pub fn alternation_length(&self) -> usize {
        self.letters.len()
    }

    pub fn is_alternating(&self) -> bool {
        self.letters.windows(2).all(|w| {
            matches!(
                (&w[0], &w[1]),
                (Letter::Left(_), Letter::Right(_)) | (Letter::Right(_), Letter::Left(_))
            )
        })
    }

    pub fn stratum(&self) -> Stratum {
        match (self.letters.first(), self.letters.last()) {
            (None, _) | (_, None) => Stratum::Unit,
            (Some(Letter::Left(_)), Some(Letter::Left(_))) => Stratum::LeftLeft,
            (Some(Letter::Right(_)), Some(Letter::Right(_))) => Stratum::RightRight,
            (Some(Letter::Left(_)), Some(Letter::Right(_))) => Stratum::LeftRight,
            (Some(Letter::Right(_)), Some(Letter::Left(_))) => Stratum::RightLeft,
        }
    }
}

/// `u · v` in `A ⋆ B`: concatenate, merging equal-side neighbours and
/// dropping units.
pub fn star_multiply<MA: PointedMonoid, MB: PointedMonoid>(
    a: &MA,
    b: &MB,
    u: &StarElement<MA::Elem, MB::Elem>,
    v: &StarElement<MA::Elem, MB::Elem>,
) -> StarElement<MA::Elem, MB::Elem> {
    let mut stack = u.letters.clone();
    for letter in &v.letters {
        match (stack.pop(), letter) {
            (Some(Letter::Left(x)), Letter::Left(y)) => {
                let z = a.multiply(&x, y);
                if !a.is_unit(&z) {
                    stack.push(Letter::Left(z));
                }
            }
            (Some(Letter::Right(x)), Letter::Right(y)) => {
                let z = b.multiply(&x, y);
                if !b.is_unit(&z) {
                    stack.push(Letter::Right(z));
                }
            }
            (top, l) => {
                stack.extend(top);
                stack.push(l.clone());
            }
        }
    }
    StarElement { letters: stack }
}

/// All elements of `A ⋆ B` with at most `alternations` letters, each letter
/// a non-unit of size at most `element_bound`. Sorted.
pub fn star_enumerate<MA: PointedMonoid, MB: PointedMonoid>(
    a: &MA,
    b: &MB,
    alternations: usize,
    element_bound: usize,
) -> Vec<StarElement<MA::Elem, MB::Elem>> {
    let abar = a.nonunits_up_to(element_bound);
    let bbar = b.nonunits_up_to(element_bound);
    let mut out = vec![StarElement::unit()];
    let mut frontier = vec![StarElement::unit()];
    for _ in 0..alternations {
        let mut next = Vec::new();
        for e in &frontier {
            let last = e.letters.last();
            if !matches!(last, Some(Letter::Left(_))) {
                for x in &abar {
                    let mut l = e.letters.clone();
                    l.push(Letter::Left(x.clone()));
                    next.push(StarElement { letters: l });
                }
            }
            if !matches!(last, Some(Letter::Right(_))) {
                for y in &bbar {
                    let mut l = e.letters.clone();
                    l.push(Letter::Right(y.clone()));
                    next.push(StarElement { letters: l });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out
}
