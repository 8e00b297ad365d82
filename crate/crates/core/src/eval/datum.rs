//! Rigid (and braided) data: a free module `V` of finite rank, duality maps
//! between `V` and `V*`, and optionally an invertible braiding on `V ⊗ V`.
//!
//! Labels are read 2-periodically: even labels are `V`, odd labels `V*`.
//! Word factor 0 is the most significant tensor index.
//!
//! | event         | map                 |
//! |---------------|---------------------|
//! | `Cup(k)`, k even | `b' : 1 -> V* ⊗ V` |
//! | `Cup(k)`, k odd  | `b  : 1 -> V ⊗ V*` |
//! | `Cap(k)`, k even | `d' : V ⊗ V* -> 1` |
//! | `Cap(k)`, k odd  | `d  : V* ⊗ V -> 1` |
//!
//! Crossings between `V` strands are `c` (`CrossPos`) and `c⁻¹` (`CrossNeg`).
//! Crossings involving a `V*` strand are derived by rotating a crossing with
//! the duality maps:
//!
//! ```text
//! Lbend(Y) = (id ⊗ id ⊗ d')(id ⊗ Y ⊗ id)(b' ⊗ id ⊗ id)
//! Rbend(Y) = (d ⊗ id ⊗ id)(id ⊗ Y ⊗ id)(id ⊗ id ⊗ b)
//! X^s(p, odd)  = Lbend(X^-s(even, p))
//! X^s(odd, q)  = Rbend(X^-s(q, even))
//! ```
//!
//! For `X(odd, odd)` both formulas apply; a valid datum makes them agree.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::matrix::Matrix;
use super::ring::{Laurent, Ring, RingKind};
use super::EvalError;
use crate::diagram::AmbientDim;

/// Duality maps and optional braiding for a rank-`rank` module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidDatum<R: Ring> {
    rank: usize,
    b: Matrix<R>,
    b_prime: Matrix<R>,
    d: Matrix<R>,
    d_prime: Matrix<R>,
    braiding: Option<(Matrix<R>, Matrix<R>)>,
    symmetric: bool,
}

/// The eight crossings, indexed by `(parity(a), parity(b), positive)`.
#[derive(Clone, Debug)]
pub struct CrossingTable<R: Ring> {
    table: [[[Matrix<R>; 2]; 2]; 2],
}

impl<R: Ring> CrossingTable<R> {
    pub fn get(&self, a: i64, b: i64, positive: bool) -> &Matrix<R> {
        &self.table[a.rem_euclid(2) as usize][b.rem_euclid(2) as usize][positive as usize]
    }
}

fn check_shape<R: Ring>(m: &Matrix<R>, rows: usize, cols: usize, name: &str) -> Result<(), EvalError> {
    if m.rows() != rows || m.cols() != cols {
        return Err(EvalError::Dimension(format!(
            "{name} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Apply `(pos, in_arity, out_arity, block)` steps in order to the identity
/// on `width` factors.
pub(crate) fn chain<R: Ring>(
    rank: usize,
    width: usize,
    steps: &[(usize, usize, usize, &Matrix<R>)],
) -> Result<Matrix<R>, EvalError> {
    let mut m = Matrix::identity(rank.pow(width as u32));
    let mut w = width;
    for &(pos, i, o, block) in steps {
        m = m.apply_local(rank, w, pos, i, o, block)?;
        w = w - i + o;
    }
    Ok(m)
}

impl<R: Ring> RigidDatum<R> {
    pub fn new(
        rank: usize,
        b: Matrix<R>,
        b_prime: Matrix<R>,
        d: Matrix<R>,
        d_prime: Matrix<R>,
        braiding: Option<(Matrix<R>, Matrix<R>)>,
        symmetric: bool,
    ) -> Result<Self, EvalError> {
        if rank == 0 {
            return Err(EvalError::Dimension("rank must be positive".into()));
        }
        let r2 = rank * rank;
        check_shape(&b, r2, 1, "b")?;
        check_shape(&b_prime, r2, 1, "b'")?;
        check_shape(&d, 1, r2, "d")?;
        check_shape(&d_prime, 1, r2, "d'")?;
        if let Some((c, ci)) = &braiding {
            check_shape(c, r2, r2, "c")?;
            check_shape(ci, r2, r2, "c^-1")?;
        } else if symmetric {
            return Err(EvalError::Dimension("symmetric datum without braiding".into()));
        }
        Ok(RigidDatum {
            rank,
            b,
            b_prime,
            d,
            d_prime,
            braiding,
            symmetric,
        })
    }

    /// Rank 1, every map the scalar 1.
    pub fn trivial() -> Self {
        let one = Matrix::scalar(R::one());
        RigidDatum::new(
            1,
            one.clone(),
            one.clone(),
            one.clone(),
            one.clone(),
            Some((one.clone(), one)),
            true,
        )
        .expect("scalars have consistent shapes")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn b(&self) -> &Matrix<R> {
        &self.b
    }
    pub fn b_prime(&self) -> &Matrix<R> {
        &self.b_prime
    }
    pub fn d(&self) -> &Matrix<R> {
        &self.d
    }
    pub fn d_prime(&self) -> &Matrix<R> {
        &self.d_prime
    }
    pub fn braiding(&self) -> Option<&(Matrix<R>, Matrix<R>)> {
        self.braiding.as_ref()
    }
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn with_symmetric(mut self, symmetric: bool) -> Self {
        self.symmetric = symmetric;
        self
    }

    pub fn without_braiding(mut self) -> Self {
        self.braiding = None;
        self.symmetric = false;
        self
    }

    /// Largest ambient dimension this datum can evaluate.
    pub fn max_dim(&self) -> AmbientDim {
        match (&self.braiding, self.symmetric) {
            (None, _) => AmbientDim::Planar,
            (Some(_), false) => AmbientDim::Braided,
            (Some(_), true) => AmbientDim::Symmetric,
        }
    }

    pub fn cup(&self, k: i64) -> &Matrix<R> {
        if k.rem_euclid(2) == 0 {
            &self.b_prime
        } else {
            &self.b
        }
    }

    pub fn cap(&self, k: i64) -> &Matrix<R> {
        if k.rem_euclid(2) == 0 {
            &self.d_prime
        } else {
            &self.d
        }
    }

    fn lbend(&self, y: &Matrix<R>) -> Result<Matrix<R>, EvalError> {
        chain(
            self.rank,
            2,
            &[(0, 0, 2, &self.b_prime), (1, 2, 2, y), (2, 2, 0, &self.d_prime)],
        )
    }

    fn rbend(&self, y: &Matrix<R>) -> Result<Matrix<R>, EvalError> {
        chain(self.rank, 2, &[(2, 0, 2, &self.b), (1, 2, 2, y), (0, 2, 0, &self.d)])
    }

    /// Crossings derived through `Lbend`; `X(odd, odd)` uses `Lbend`.
    pub fn crossing_table(&self) -> Result<CrossingTable<R>, EvalError> {
        let (c, ci) = self
            .braiding
            .as_ref()
            .ok_or_else(|| EvalError::MissingBraiding)?;
        let ee = [ci.clone(), c.clone()];
        let eo = [self.lbend(&ee[1])?, self.lbend(&ee[0])?];
        let oe = [self.rbend(&ee[1])?, self.rbend(&ee[0])?];
        let oo = [self.lbend(&eo[1])?, self.lbend(&eo[0])?];
        Ok(CrossingTable {
            table: [[ee, eo], [oe, oo]],
        })
    }

    /// `[X+(odd, odd), X-(odd, odd)]` computed with `Rbend` instead.
    fn odd_odd_via_rbend(&self, t: &CrossingTable<R>) -> Result<[Matrix<R>; 2], EvalError> {
        Ok([self.rbend(t.get(1, 0, false))?, self.rbend(t.get(1, 0, true))?])
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> RigidDatum<S> {
        RigidDatum {
            rank: self.rank,
            b: self.b.map(f),
            b_prime: self.b_prime.map(f),
            d: self.d.map(f),
            d_prime: self.d_prime.map(f),
            braiding: self.braiding.as_ref().map(|(c, ci)| (c.map(f), ci.map(f))),
            symmetric: self.symmetric,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DatumReport {
    pub checks: Vec<DatumCheck>,
}

impl DatumReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    fn record(&mut self, name: impl Into<String>, result: Result<bool, EvalError>) {
        self.checks.push(DatumCheck {
            name: name.into(),
            passed: matches!(result, Ok(true)),
        });
    }
}

impl fmt::Display for DatumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name)?;
        }
        Ok(())
    }
}

/// Check every identity the datum must satisfy for diagrams in `dim`.
pub fn validate_datum<R: Ring>(datum: &RigidDatum<R>, dim: AmbientDim) -> DatumReport {
    let mut report = DatumReport::default();
    let r = datum.rank;
    let id = |w: u32| Matrix::<R>::identity(r.pow(w));
    let is_id = |m: Result<Matrix<R>, EvalError>, w: u32| m.map(|m| m == id(w));

    // zig-zags, V and V*
    report.record(
        "zigzag (d' ⊗ id)(id ⊗ b') = id_V",
        is_id(chain(r, 1, &[(1, 0, 2, &datum.b_prime), (0, 2, 0, &datum.d_prime)]), 1),
    );
    report.record(
        "zigzag (id ⊗ d)(b ⊗ id) = id_V",
        is_id(chain(r, 1, &[(0, 0, 2, &datum.b), (1, 2, 0, &datum.d)]), 1),
    );
    report.record(
        "zigzag (d ⊗ id)(id ⊗ b) = id_V*",
        is_id(chain(r, 1, &[(1, 0, 2, &datum.b), (0, 2, 0, &datum.d)]), 1),
    );
    report.record(
        "zigzag (id ⊗ d')(b' ⊗ id) = id_V*",
        is_id(chain(r, 1, &[(0, 0, 2, &datum.b_prime), (1, 2, 0, &datum.d_prime)]), 1),
    );
    if dim == AmbientDim::Planar {
        return report;
    }

    let Some((c, ci)) = datum.braiding.as_ref() else {
        report.record("braiding present", Ok(false));
        return report;
    };
    report.record("c · c^-1 = id", is_id(c.mul(ci), 2));
    report.record("c^-1 · c = id", is_id(ci.mul(c), 2));
    let table = match datum.crossing_table() {
        Ok(t) => t,
        Err(e) => {
            report.record("derived crossings", Err(e));
            return report;
        }
    };
    report.record(
        "derived X(odd, odd) agrees under Lbend and Rbend",
        datum.odd_odd_via_rbend(&table).map(|[pos, neg]| {
            &pos == table.get(1, 1, true) && &neg == table.get(1, 1, false)
        }),
    );
    for p in 0..2 {
        for q in 0..2 {
            let r2 = table
                .get(q, p, false)
                .mul(table.get(p, q, true))
                .map(|m| m == id(2))
                .and_then(|ok| {
                    Ok(ok && table.get(q, p, true).mul(table.get(p, q, false))? == id(2))
                });
            report.record(format!("R2 on parities ({p},{q})"), r2);
        }
    }
    let i1 = id(1);
    for a in 0..2 {
        for b in 0..2 {
            for cc in 0..2 {
                for positive in [true, false] {
                    let x = |u, v| table.get(u, v, positive);
                    let lhs = x(b, cc)
                        .kron(&i1)
                        .mul(&i1.kron(x(a, cc)))
                        .and_then(|m| m.mul(&x(a, b).kron(&i1)));
                    let rhs = i1
                        .kron(x(a, b))
                        .mul(&x(a, cc).kron(&i1))
                        .and_then(|m| m.mul(&i1.kron(x(b, cc))));
                    let ok = match (lhs, rhs) {
                        (Ok(l), Ok(r)) => Ok(l == r),
                        (Err(e), _) | (_, Err(e)) => Err(e),
                    };
                    let sign = if positive { '+' } else { '-' };
                    report.record(format!("R3{sign} on parities ({a},{b},{cc})"), ok);
                }
            }
        }
    }
    if dim == AmbientDim::Symmetric {
        if !datum.symmetric {
            report.record("symmetric flag set", Ok(false));
        }
        report.record("c · c = id", is_id(c.mul(c), 2));
        for j in 0..2i64 {
            let x = table.get(j, j, true);
            let curls = chain(
                r,
                1,
                &[
                    (1, 0, 2, datum.cup(j + 1)),
                    (0, 2, 2, x),
                    (1, 2, 0, datum.cap(j)),
                    (0, 0, 2, datum.cup(j)),
                    (1, 2, 2, x),
                    (0, 2, 0, datum.cap(j + 1)),
                ],
            );
            report.record(format!("opposite curls cancel on parity {j}"), is_id(curls, 1));
        }
    }
    report
}

fn laurent(terms: &[(i64, i64)]) -> Laurent {
    Laurent::from_terms(terms.iter().copied())
}

/// Rank-2 Kauffman-bracket datum over `Z[A, A^-1]`.
///
/// With `u = A e0⊗e1 - A^-1 e1⊗e0` and `w = -A e0*⊗e1* + A^-1 e1*⊗e0*`,
/// `b = b' = u`, `d = d' = w`, the loop value is `w·u = -A^2 - A^-2` and
/// `c = A·id + A^-1·u w`, `c^-1 = A^-1·id + A·u w`. A positive kink
/// contributes the factor `-A^3`.
pub fn kauffman_datum() -> RigidDatum<Laurent> {
    let z = Laurent::zero();
    let u = Matrix::from_vec(4, 1, vec![z.clone(), laurent(&[(1, 1)]), laurent(&[(-1, -1)]), z.clone()])
        .expect("4x1");
    let w = Matrix::from_vec(1, 4, vec![z.clone(), laurent(&[(1, -1)]), laurent(&[(-1, 1)]), z])
        .expect("1x4");
    let uw = u.mul(&w).expect("outer product");
    let c = Matrix::identity(4)
        .scale(&laurent(&[(1, 1)]))
        .add(&uw.scale(&laurent(&[(-1, 1)])))
        .expect("4x4");
    let ci = Matrix::identity(4)
        .scale(&laurent(&[(-1, 1)]))
        .add(&uw.scale(&laurent(&[(1, 1)])))
        .expect("4x4");
    RigidDatum::new(2, u.clone(), u, w.clone(), w, Some((c, ci)), false).expect("consistent shapes")
}

/// Rank-1 datum with `b = A`, `d = A^-1`, `b' = -A^2`, `d' = -A^-2`,
/// `c = A^3`.
pub fn scalar_laurent_datum() -> RigidDatum<Laurent> {
    let s = |e: i64, c: i64| Matrix::scalar(Laurent::monomial(c, e));
    RigidDatum::new(1, s(1, 1), s(2, -1), s(-1, 1), s(-2, -1), Some((s(3, 1), s(-3, 1))), false)
        .expect("scalars")
}

/// Rank-`n` symmetric datum over the rationals: `b`, `d` are the standard
/// pairings and `c` is the swap.
pub fn swap_datum(n: usize) -> RigidDatum<BigRational> {
    let one = <BigRational as One>::one();
    let mut b = Matrix::zeros(n * n, 1);
    let mut d = Matrix::zeros(1, n * n);
    let mut c = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        b.set(i * n + i, 0, one.clone());
        d.set(0, i * n + i, one.clone());
        for j in 0..n {
            c.set(j * n + i, i * n + j, one.clone());
        }
    }
    RigidDatum::new(n, b.clone(), b, d.clone(), d, Some((c.clone(), c)), true).expect("shapes")
}

/// Substitute `A = a` in every entry.
pub fn specialize(datum: &RigidDatum<Laurent>, a: &BigRational) -> RigidDatum<BigRational> {
    let a = a.clone();
    let f = move |x: &Laurent| x.evaluate_at(&a);
    RigidDatum {
        rank: datum.rank,
        b: datum.b.map(&f),
        b_prime: datum.b_prime.map(&f),
        d: datum.d.map(&f),
        d_prime: datum.d_prime.map(&f),
        braiding: datum.braiding.as_ref().map(|(c, ci)| (c.map(&f), ci.map(&f))),
        symmetric: datum.symmetric,
    }
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert_rational(m: &Matrix<BigRational>) -> Option<Matrix<BigRational>> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { <BigRational as One>::one() } else { <BigRational as Zero>::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !Zero::is_zero(&a[r][col]))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !Zero::is_zero(&a[r][col]) {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - &t;
                    let t = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - &t;
                }
            }
        }
    }
    Matrix::from_rows(inv).ok()
}

fn transpose<R: Ring>(m: &Matrix<R>) -> Matrix<R> {
    let mut t = Matrix::zeros(m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            t.set(j, i, m.get(i, j).clone());
        }
    }
    t
}

/// Change of basis `g` on `V` (and the contragredient on `V*`). Produces an
/// isomorphic datum, so every closed diagram keeps its value.
pub fn gauge_transform(
    datum: &RigidDatum<BigRational>,
    g: &Matrix<BigRational>,
) -> Option<RigidDatum<BigRational>> {
    let gi = invert_rational(g)?;
    let git = transpose(&gi);
    let gt = transpose(g);
    let b = g.kron(&git).mul(&datum.b).ok()?;
    let b_prime = git.kron(g).mul(&datum.b_prime).ok()?;
    let d = datum.d.mul(&gt.kron(&gi)).ok()?;
    let d_prime = datum.d_prime.mul(&gi.kron(&gt)).ok()?;
    let braiding = match &datum.braiding {
        Some((c, ci)) => {
            let gg = g.kron(g);
            let gg_inv = gi.kron(&gi);
            Some((
                gg.mul(c).ok()?.mul(&gg_inv).ok()?,
                gg.mul(ci).ok()?.mul(&gg_inv).ok()?,
            ))
        }
        None => None,
    };
    RigidDatum::new(datum.rank, b, b_prime, d, d_prime, braiding, datum.symmetric).ok()
}

/// A random invertible integer matrix with small entries.
pub fn random_gauge<G: Rng>(rng: &mut G, n: usize) -> Matrix<BigRational> {
    loop {
        let data: Vec<BigRational> = (0..n * n)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
            .collect();
        let m = Matrix::from_vec(n, n, data).expect("square");
        if invert_rational(&m).is_some() {
            return m;
        }
    }
}

/// The Kauffman datum specialized at a random nonzero rational `A` and
/// conjugated by a random gauge. It passes validation for `Braided`.
pub fn random_kauffman_specialization<G: Rng>(rng: &mut G) -> RigidDatum<BigRational> {
    let num = loop {
        let v = rng.gen_range(-5i64..=5);
        if v != 0 && v.abs() != 1 {
            break v;
        }
    };
    let den = rng.gen_range(1i64..=4);
    let a = BigRational::new(BigInt::from(num), BigInt::from(den));
    let base = specialize(&kauffman_datum(), &a);
    let g = random_gauge(rng, 2);
    gauge_transform(&base, &g).expect("gauge is invertible")
}

/// A datum over any of the supported rings, as read from text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyDatum {
    Integer(RigidDatum<BigInt>),
    Rational(RigidDatum<BigRational>),
    Laurent(RigidDatum<Laurent>),
}

impl AnyDatum {
    pub fn ring(&self) -> RingKind {
        match self {
            AnyDatum::Integer(_) => RingKind::Integer,
            AnyDatum::Rational(_) => RingKind::Rational,
            AnyDatum::Laurent(_) => RingKind::Laurent,
        }
    }

    pub fn validate(&self, dim: AmbientDim) -> DatumReport {
        match self {
            AnyDatum::Integer(d) => validate_datum(d, dim),
            AnyDatum::Rational(d) => validate_datum(d, dim),
            AnyDatum::Laurent(d) => validate_datum(d, dim),
        }
    }
}

const MATRIX_NAMES: [&str; 6] = ["b", "b'", "d", "d'", "c", "c^-1"];

/// Text form:
///
/// ```text
/// datum
/// ring laurent
/// rank 2
/// symmetric false
/// matrix b 4 1
/// {}
/// {1:1}
/// ...
/// end
/// ```
///
/// Matrices are row-major, one row per line, entries separated by spaces.
/// `c` and `c^-1` are omitted for a planar-only datum.
pub fn write_datum<R: Ring>(datum: &RigidDatum<R>) -> String {
    let mut out = String::new();
    out.push_str("datum\n");
    out.push_str(&format!("ring {}\n", R::KIND.name()));
    out.push_str(&format!("rank {}\n", datum.rank));
    out.push_str(&format!("symmetric {}\n", datum.symmetric));
    let mut mats = vec![&datum.b, &datum.b_prime, &datum.d, &datum.d_prime];
    if let Some((c, ci)) = &datum.braiding {
        mats.push(c);
        mats.push(ci);
    }
    for (name, m) in MATRIX_NAMES.iter().zip(mats) {
        out.push_str(&format!("matrix {name} {} {}\n", m.rows(), m.cols()));
        for r in 0..m.rows() {
            let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).format_entry()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out.push_str("end\n");
    out
}

impl fmt::Display for AnyDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AnyDatum::Integer(d) => write_datum(d),
            AnyDatum::Rational(d) => write_datum(d),
            AnyDatum::Laurent(d) => write_datum(d),
        };
        f.write_str(&s)
    }
}

fn parse_typed<R: Ring>(
    lines: &mut dyn Iterator<Item = (usize, &str)>,
    rank: usize,
    symmetric: bool,
) -> Result<RigidDatum<R>, EvalError> {
    let bad = |n: usize, m: &str| EvalError::Parse(format!("line {n}: {m}"));
    let mut mats: Vec<Matrix<R>> = Vec::new();
    loop {
        let (n, line) = lines.next().ok_or_else(|| bad(0, "missing `end`"))?;
        if line == "end" {
            break;
        }
        let mut parts = line.split_whitespace();
        if parts.next() != Some("matrix") {
            return Err(bad(n, "expected `matrix` or `end`"));
        }
        let name = parts.next().ok_or_else(|| bad(n, "missing matrix name"))?;
        let expected = MATRIX_NAMES.get(mats.len()).ok_or_else(|| bad(n, "too many matrices"))?;
        if name != *expected {
            return Err(bad(n, &format!("expected matrix `{expected}`, found `{name}`")));
        }
        let rows: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(n, "bad row count"))?;
        let cols: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(n, "bad column count"))?;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (n, row) = lines.next().ok_or_else(|| bad(n, "truncated matrix"))?;
            let entries: Vec<&str> = row.split_whitespace().collect();
            if entries.len() != cols {
                return Err(bad(n, &format!("expected {cols} entries")));
            }
            for e in entries {
                data.push(R::parse_entry(e).map_err(|e| bad(n, &e.to_string()))?);
            }
        }
        mats.push(Matrix::from_vec(rows, cols, data)?);
    }
    if mats.len() != 4 && mats.len() != 6 {
        return Err(EvalError::Parse(format!("expected 4 or 6 matrices, found {}", mats.len())));
    }
    let braiding = if mats.len() == 6 {
        let ci = mats.pop().expect("counted");
        let c = mats.pop().expect("counted");
        Some((c, ci))
    } else {
        None
    };
    let [b, bp, d, dp]: [Matrix<R>; 4] = mats.try_into().expect("counted");
    RigidDatum::new(rank, b, bp, d, dp, braiding, symmetric)
}

pub fn parse_datum(text: &str) -> Result<AnyDatum, EvalError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut field = |key: &str| -> Result<String, EvalError> {
        let (n, l) = lines
            .next()
            .ok_or_else(|| EvalError::Parse(format!("missing `{key}`")))?;
        l.strip_prefix(key)
            .map(|r| r.trim().to_string())
            .ok_or_else(|| EvalError::Parse(format!("line {n}: expected `{key}`")))
    };
    if !field("datum")?.is_empty() {
        return Err(EvalError::Parse("unexpected text after `datum`".into()));
    }
    let ring = RingKind::from_str(&field("ring")?)?;
    let rank: usize = field("rank")?
        .parse()
        .map_err(|_| EvalError::Parse("bad rank".into()))?;
    let symmetric: bool = field("symmetric")?
        .parse()
        .map_err(|_| EvalError::Parse("bad symmetric flag".into()))?;
    Ok(match ring {
        RingKind::Integer => AnyDatum::Integer(parse_typed(&mut lines, rank, symmetric)?),
        RingKind::Rational => AnyDatum::Rational(parse_typed(&mut lines, rank, symmetric)?),
        RingKind::Laurent => AnyDatum::Laurent(parse_typed(&mut lines, rank, symmetric)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kauffman_entries() {
        let k = kauffman_datum();
        let (c, _) = k.braiding().unwrap();
        let e = |s: &str| s.parse::<Laurent>().unwrap();
        assert_eq!(c.get(0, 0), &e("A"));
        assert_eq!(c.get(1, 1), &Laurent::zero());
        assert_eq!(c.get(1, 2), &e("A^-1"));
        assert_eq!(c.get(2, 1), &e("A^-1"));
        assert_eq!(c.get(2, 2), &e("A-A^-3"));
        assert_eq!(c.get(3, 3), &e("A"));
        let delta = k.d().mul(k.b()).unwrap();
        assert_eq!(delta.as_scalar().unwrap(), &super::super::ring::loop_value());
    }

    #[test]
    fn kauffman_validates_braided_not_symmetric() {
        let k = kauffman_datum();
        let r = validate_datum(&k, AmbientDim::Braided);
        assert!(r.is_valid(), "{r}");
        let sym = k.with_symmetric(true);
        let r = validate_datum(&sym, AmbientDim::Symmetric);
        assert!(r.failures().contains(&"c · c = id"));
    }

    #[test]
    fn kauffman_mixed_crossings_are_rotations() {
        let k = kauffman_datum();
        let t = k.crossing_table().unwrap();
        for p in 0..2 {
            for q in 0..2 {
                assert_eq!(t.get(p, q, true), t.get(0, 0, true));
                assert_eq!(t.get(p, q, false), t.get(0, 0, false));
            }
        }
    }

    #[test]
    fn trivial_and_small_data_validate() {
        for dim in [AmbientDim::Planar, AmbientDim::Braided, AmbientDim::Symmetric] {
            assert!(validate_datum(&RigidDatum::<BigInt>::trivial(), dim).is_valid());
            assert!(validate_datum(&RigidDatum::<Laurent>::trivial(), dim).is_valid());
            assert!(validate_datum(&swap_datum(2), dim).is_valid());
            assert!(validate_datum(&swap_datum(3), dim).is_valid());
        }
        assert!(validate_datum(&scalar_laurent_datum(), AmbientDim::Braided).is_valid());
        assert!(!validate_datum(&scalar_laurent_datum(), AmbientDim::Symmetric).is_valid());
    }

    #[test]
    fn gauge_preserves_validity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let d = random_kauffman_specialization(&mut rng);
            let r = validate_datum(&d, AmbientDim::Braided);
            assert!(r.is_valid(), "{r}");
        }
    }

    #[test]
    fn broken_zigzag_is_reported() {
        let k = kauffman_datum();
        let bad = RigidDatum::new(
            2,
            k.b().scale(&Laurent::constant(2)),
            k.b_prime().clone(),
            k.d().clone(),
            k.d_prime().clone(),
            k.braiding().cloned(),
            false,
        )
        .unwrap();
        let r = validate_datum(&bad, AmbientDim::Planar);
        assert_eq!(r.failures().len(), 2);
    }

    #[test]
    fn missing_braiding_fails_braided_validation() {
        let planar = kauffman_datum().without_braiding();
        assert!(validate_datum(&planar, AmbientDim::Planar).is_valid());
        assert!(!validate_datum(&planar, AmbientDim::Braided).is_valid());
    }

    #[test]
    fn text_round_trip() {
        let k = AnyDatum::Laurent(kauffman_datum());
        assert_eq!(parse_datum(&k.to_string()).unwrap(), k);
        let s = AnyDatum::Rational(swap_datum(2));
        assert_eq!(parse_datum(&s.to_string()).unwrap(), s);
        let t = AnyDatum::Integer(RigidDatum::trivial().without_braiding());
        assert_eq!(parse_datum(&t.to_string()).unwrap(), t);
        assert!(parse_datum("datum\nring laurent\nrank 2\nsymmetric false\nmatrix c 1 1\n1\nend\n").is_err());
    }
}
