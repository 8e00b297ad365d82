//! Exact coefficient rings: integers, rationals and integer Laurent
//! polynomials in one variable `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::EvalError;

/// Arithmetic needed by matrices and evaluation.
///
/// Methods take references so that big-integer coefficients are not cloned
/// on every operation.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync {
    const KIND: RingKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn from_i64(n: i64) -> Self;

    /// True when the element has a multiplicative inverse in the ring.
    fn is_unit(&self) -> bool;

    /// Entry syntax used by the datum text format.
    fn parse_entry(text: &str) -> Result<Self, EvalError>;
    fn format_entry(&self) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integer,
    Rational,
    Laurent,
}

impl RingKind {
    pub fn name(self) -> &'static str {
        match self {
            RingKind::Integer => "integer",
            RingKind::Rational => "rational",
            RingKind::Laurent => "laurent",
        }
    }
}

impl FromStr for RingKind {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "integer" => Ok(RingKind::Integer),
            "rational" => Ok(RingKind::Rational),
            "laurent" => Ok(RingKind::Laurent),
            other => Err(EvalError::Parse(format!("unknown ring `{other}`"))),
        }
    }
}

impl Ring for BigInt {
    const KIND: RingKind = RingKind::Integer;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn parse_entry(text: &str) -> Result<Self, EvalError> {
        text.trim()
            .parse()
            .map_err(|_| EvalError::Parse(format!("bad integer entry `{text}`")))
    }
    fn format_entry(&self) -> String {
        self.to_string()
    }
}

impl Ring for BigRational {
    const KIND: RingKind = RingKind::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
    fn parse_entry(text: &str) -> Result<Self, EvalError> {
        let text = text.trim();
        let bad = || EvalError::Parse(format!("bad rational entry `{text}`"));
        match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if Zero::is_zero(&d) {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
        }
    }
    fn format_entry(&self) -> String {
        self.to_string()
    }
}

/// A Laurent polynomial in `A` with integer coefficients.
///
/// Terms are kept sparse: no stored coefficient is zero, and the map keeps
/// exponents sorted.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Laurent::monomial(c, 0)
    }

    /// `c * A^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(exp, c);
        }
        Laurent { terms }
    }

    /// The variable `A`.
    pub fn var() -> Self {
        Laurent::monomial(1, 1)
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Laurent::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if Zero::is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(<BigInt as Zero>::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The substitution `A -> A^-1`.
    pub fn invert_variable(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// `self^n` for `n >= 0`; negative powers are only defined for monomials
    /// with unit coefficient.
    pub fn pow(&self, n: i64) -> Option<Self> {
        if n < 0 {
            let inv = self.unit_inverse()?;
            return inv.pow(-n);
        }
        let mut acc = Laurent::constant(1);
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Some(acc)
    }

    /// Inverse of a unit `±A^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if !c.abs().is_one() {
            return None;
        }
        Some(Laurent::monomial(c.clone(), -e))
    }

    /// Multiply every exponent by `k` (the substitution `A -> A^k`).
    pub fn scale_exponents(&self, k: i64) -> Self {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Evaluate at a rational point `A = a` (`a` nonzero).
    pub fn evaluate_at(&self, a: &BigRational) -> BigRational {
        let mut acc = <BigRational as Zero>::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(a.clone(), *e as usize)
            } else {
                num_traits::pow(a.recip(), (-e) as usize)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Parse `{exp:coeff,...}`.
    pub fn parse_braced(text: &str) -> Result<Self, EvalError> {
        let bad = || EvalError::Parse(format!("bad Laurent entry `{text}`"));
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut out = Laurent::zero();
        if inner.trim().is_empty() {
            return Ok(out);
        }
        for part in inner.split(',') {
            let (e, c) = part.split_once(':').ok_or_else(bad)?;
            let e: i64 = e.trim().parse().map_err(|_| bad())?;
            let c: BigInt = c.trim().parse().map_err(|_| bad())?;
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// `{exp:coeff,...}` in descending exponent order; `{}` for zero.
    pub fn format_braced(&self) -> String {
        let body: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| format!("{e}:{c}"))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

impl fmt::Display for Laurent {
    /// Descending exponents with explicit signs, e.g. `-A^2-A^-2`,
    /// `3*A^5+1`, `A`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if negative {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let mag = c.abs();
            match *e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if *e == 1 {
                        write!(f, "A")?;
                    } else {
                        write!(f, "A^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl FromStr for Laurent {
    type Err = EvalError;

    /// Accepts the display syntax (`-A^2-A^-2`, `3*A^5+1`) and the braced
    /// syntax (`{2:-1,-2:-1}`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with('{') {
            return Laurent::parse_braced(s);
        }
        let bad = || EvalError::Parse(format!("bad Laurent polynomial `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // split into signed terms; a sign directly after `^` belongs to the exponent
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut out = Laurent::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff, exp) = match body.find('A') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some(idx) => {
                    let coeff_part = body[..idx].trim_end_matches('*');
                    let coeff = if coeff_part.is_empty() {
                        <BigInt as One>::one()
                    } else {
                        coeff_part.parse::<BigInt>().map_err(|_| bad())?
                    };
                    let rest = &body[idx + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i64>()
                            .map_err(|_| bad())?
                    };
                    (coeff, exp)
                }
            };
            out.add_term(exp, coeff * sign);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, rhs: &'a Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &'a Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &'a Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                $tr::$m(&self, &rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Ring for Laurent {
    const KIND: RingKind = RingKind::Laurent;

    fn zero() -> Self {
        Laurent::zero()
    }
    fn one() -> Self {
        Laurent::constant(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        Laurent::constant(n)
    }
    fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }
    fn parse_entry(text: &str) -> Result<Self, EvalError> {
        Laurent::parse_braced(text)
    }
    fn format_entry(&self) -> String {
        self.format_braced()
    }
}

/// The Kauffman loop value `-A^2 - A^-2`.
pub fn loop_value() -> Laurent {
    Laurent::from_terms([(2, -1), (-2, -1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> Laurent {
        s.parse().unwrap()
    }

    #[test]
    fn display_matches_loop_value_syntax() {
        assert_eq!(loop_value().to_string(), "-A^2-A^-2");
        assert_eq!(lp("3*A^5+1").to_string(), "3*A^5+1");
        assert_eq!(lp("A").to_string(), "A");
        assert_eq!(Laurent::zero().to_string(), "0");
        assert_eq!(lp("-A^-1+2").to_string(), "2-A^-1");
    }

    #[test]
    fn braced_round_trip() {
        let p = lp("-A^2-A^-2+7");
        assert_eq!(p.format_braced(), "{2:-1,0:7,-2:-1}");
        assert_eq!(Laurent::parse_braced(&p.format_braced()).unwrap(), p);
        assert_eq!(Laurent::parse_braced("{}").unwrap(), Laurent::zero());
        assert!(Laurent::parse_braced("{1:}").is_err());
    }

    #[test]
    fn cancellation_keeps_representation_sparse() {
        let p = &lp("A+1") - &lp("A");
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p, Laurent::constant(1));
        let z = &lp("A^3-A") + &lp("A-A^3");
        assert!(z.is_zero());
    }

    #[test]
    fn unit_inverse_and_negative_powers() {
        let a = Laurent::var();
        let minus_a3 = Laurent::monomial(-1, 3);
        assert_eq!(minus_a3.pow(-1).unwrap(), Laurent::monomial(-1, -3));
        assert_eq!(a.pow(-2).unwrap(), Laurent::monomial(1, -2));
        assert!(lp("A+1").pow(-1).is_none());
        assert!(Ring::is_unit(&Laurent::monomial(-1, 4)));
        assert!(!Ring::is_unit(&Laurent::monomial(2, 4)));
    }

    #[test]
    fn rational_entries_parse() {
        let r = <BigRational as Ring>::parse_entry("-2/6").unwrap();
        assert_eq!(r, BigRational::new((-1).into(), 3.into()));
        assert!(<BigRational as Ring>::parse_entry("1/0").is_err());
    }

    fn arb_laurent() -> impl Strategy<Value = Laurent> {
        prop::collection::vec((-6i64..=6, -5i64..=5), 0..5)
            .prop_map(|ts| Laurent::from_terms(ts))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bar_involution_is_ring_map(a in arb_laurent(), b in arb_laurent()) {
            prop_assert_eq!((&a * &b).invert_variable(), &a.invert_variable() * &b.invert_variable());
            prop_assert_eq!((&a + &b).invert_variable(), &a.invert_variable() + &b.invert_variable());
            prop_assert_eq!(a.invert_variable().invert_variable(), a);
        }

        #[test]
        fn display_parses_back(a in arb_laurent()) {
            prop_assert_eq!(a.to_string().parse::<Laurent>().unwrap(), a);
        }
    }
}
