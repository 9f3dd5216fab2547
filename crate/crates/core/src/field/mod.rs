//! Exact arithmetic in Q(ω), ω² + ω + 1 = 0.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

mod cubic;
mod integers;

pub use cubic::{
    cubic_discriminant, cubic_galois_group, is_cube, roots_in_field, same_splitting_field,
    BinaryCubic, CubicPoly, GaloisClass,
};
pub use integers::{factor, EisensteinInt, Factorization};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial has leading coefficient zero")]
    ZeroLeadingCoefficient,
    #[error("cubic has a repeated root (discriminant 0)")]
    InseparableInput,
    #[error("binary cubic is identically zero")]
    ZeroForm,
    #[error("cannot parse {0:?} as an element of Q(ω)")]
    Parse(String),
    #[error("norm {0} too large to factor")]
    TooLarge(BigInt),
    #[error("cubic does not have Galois group C3")]
    NotCyclic,
}

/// `a + bω` with rational `a, b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    a: BigRational,
    b: BigRational,
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    let r = BigRational::new(n, d);
    (&r * &r == *x).then_some(r)
}

impl FieldElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        FieldElement { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        FieldElement {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        FieldElement {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn omega() -> Self {
        Self::from_ints(0, 1)
    }

    /// The six units `±1, ±ω, ±ω²`.
    pub fn units() -> [FieldElement; 6] {
        [
            Self::from_ints(1, 0),
            Self::from_ints(-1, 0),
            Self::from_ints(0, 1),
            Self::from_ints(0, -1),
            Self::from_ints(-1, -1),
            Self::from_ints(1, 1),
        ]
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugate: ω ↦ ω² = −1 − ω.
    pub fn conj(&self) -> Self {
        FieldElement {
            a: &self.a - &self.b,
            b: -&self.b,
        }
    }

    /// `a² − ab + b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(FieldElement {
            a: c.a / &n,
            b: c.b / &n,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        FieldElement {
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(self.a.denom(), self.b.denom())
    }

    /// Some `s` with `s² = self`, if one exists.
    ///
    /// Writing `s = p + qω` gives `a = p² − q²`, `b = q(2p − q)`; for
    /// `q ≠ 0` this forces `3q⁴ + (4a − 2b)q² − b² = 0` and `p = (b/q + q)/2`.
    pub fn sqrt(&self) -> Option<Self> {
        let (a, b) = (&self.a, &self.b);
        if b.is_zero() {
            if let Some(p) = rational_sqrt(a) {
                return Some(Self::from_rational(p));
            }
            // q = 2p: a = -3p²
            let q = rational_sqrt(&(a * rational(-4, 3)))?;
            let p = &q / BigRational::from_integer(2.into());
            return Some(FieldElement { a: p, b: q });
        }
        let three = BigRational::from_integer(3.into());
        let lin = a * BigRational::from_integer(4.into()) - b * BigRational::from_integer(2.into());
        let disc = &lin * &lin + &three * b * b * BigRational::from_integer(4.into());
        let root = rational_sqrt(&disc)?;
        // t = q² = (-lin ± root) / 6; the product of the roots is -b²/3 < 0,
        // so only the + sign can be non-negative
        let t = (-&lin + root) / (three * BigRational::from_integer(2.into()));
        let q = rational_sqrt(&t)?;
        let p = (b / &q + &q) / BigRational::from_integer(2.into());
        let s = FieldElement { a: p, b: q };
        debug_assert_eq!(&(&s * &s), self);
        Some(s)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.a)),
            (true, false) => write!(f, "{}ω", coeff(&self.b)),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}ω",
                    fmt_rational(&self.a),
                    sign,
                    coeff(&self.b.abs())
                )
            }
        }
    }
}

fn coeff(r: &BigRational) -> String {
    if r.is_one() {
        String::new()
    } else if *r == -BigRational::one() {
        "-".to_string()
    } else if r.is_integer() {
        fmt_rational(r)
    } else {
        format!("({})", fmt_rational(r))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

impl FromStr for FieldElement {
    type Err = FieldError;

    /// Accepts `"a"`, `"a,b"` or `"a + bω"`/`"a + b*w"`, with rational `a, b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some((a, b)) = t.split_once(',') {
            return Ok(FieldElement::new(
                parse_rational(a).ok_or_else(err)?,
                parse_rational(b).ok_or_else(err)?,
            ));
        }
        let t = t.replace('*', "");
        let Some(body) = t.strip_suffix('ω').or_else(|| t.strip_suffix('w')) else {
            return Ok(FieldElement::from_rational(
                parse_rational(&t).ok_or_else(err)?,
            ));
        };
        // split at the last sign that starts a term
        let bytes = body.as_bytes();
        let split = body
            .char_indices()
            .filter(|&(i, c)| {
                i > 0 && (c == '+' || c == '-') && !matches!(bytes[i - 1], b'(' | b'/')
            })
            .map(|(i, _)| i)
            .next_back();
        let (a_text, b_text) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let b_text = b_text.trim_start_matches('+');
        let b_text = b_text.trim_start_matches('(').trim_end_matches(')');
        let b = match b_text {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(&other.replace(['(', ')'], "")).ok_or_else(err)?,
        };
        Ok(FieldElement::new(
            parse_rational(a_text).ok_or_else(err)?,
            b,
        ))
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [fmt_rational(&self.a), fmt_rational(&self.b)].serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Text(String),
}

impl RawRational {
    fn value(&self) -> Option<BigRational> {
        match self {
            RawRational::Int(n) => Some(BigRational::from_integer((*n).into())),
            RawRational::Text(t) => parse_rational(t),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawElement {
    Pair([RawRational; 2]),
    Single(RawRational),
}

impl<'de> Deserialize<'de> for FieldElement {
    /// A pair `[a, b]` of integers or rational strings, or a single rational.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let bad = || D::Error::custom("expected [a, b] with a, b integers or \"p/q\" strings");
        match RawElement::deserialize(d)? {
            RawElement::Pair([a, b]) => Ok(FieldElement::new(
                a.value().ok_or_else(bad)?,
                b.value().ok_or_else(bad)?,
            )),
            RawElement::Single(a) => Ok(FieldElement::from_rational(a.value().ok_or_else(bad)?)),
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// `(a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω`.
    fn mul(self, o: &FieldElement) -> FieldElement {
        let bd = &self.b * &o.b;
        FieldElement {
            a: &self.a * &o.a - &bd,
            b: &self.a * &o.b + &self.b * &o.a - bd,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &'a FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, o: &FieldElement) {
        *self = &*self + o;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, o: &FieldElement) {
        *self = &*self - o;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, o: &FieldElement) {
        *self = &*self * o;
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_ints(n, 0)
    }
}

impl From<BigRational> for FieldElement {
    fn from(r: BigRational) -> Self {
        FieldElement::from_rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(a: i64, b: i64) -> FieldElement {
        FieldElement::from_ints(a, b)
    }

    #[test]
    fn omega_cubed() {
        let w = FieldElement::omega();
        assert_eq!(&(&w * &w) * &w, FieldElement::one());
        assert_eq!(&w * &w, fe(-1, -1));
    }

    #[test]
    fn norms_and_inverses() {
        assert_eq!(fe(1, 2).norm(), rational(3, 1));
        assert_eq!(FieldElement::omega().inv().unwrap(), fe(-1, -1));
        assert_eq!(FieldElement::zero().inv(), Err(FieldError::DivisionByZero));
        let x = FieldElement::new(rational(2, 3), rational(-5, 7));
        assert_eq!(&x * &x.inv().unwrap(), FieldElement::one());
        assert_eq!(FieldElement::from_rational(x.norm()), &x * &x.conj());
    }

    #[test]
    fn square_roots() {
        let r = fe(-3, 0).sqrt().unwrap();
        assert_eq!(&r * &r, fe(-3, 0));
        assert!(r == fe(1, 2) || r == fe(-1, -2));
        assert_eq!(fe(1, 0).sqrt().map(|s| &s * &s), Some(fe(1, 0)));
        assert!(fe(2, 0).sqrt().is_none());
        assert!(fe(-1, 0).sqrt().is_none());
        let x = FieldElement::new(rational(3, 2), rational(-7, 5));
        let sq = &x * &x;
        let s = sq.sqrt().unwrap();
        assert_eq!(&s * &s, sq);
        assert_eq!(
            FieldElement::omega().sqrt().map(|s| &s * &s),
            Some(FieldElement::omega())
        );
    }

    #[test]
    fn parse_and_display() {
        for (text, v) in [
            ("3", fe(3, 0)),
            ("1+2ω", fe(1, 2)),
            ("-1-ω", fe(-1, -1)),
            ("ω", fe(0, 1)),
            ("-ω", fe(0, -1)),
            ("2-3w", fe(2, -3)),
            (
                "1/2, -3",
                FieldElement::new(rational(1, 2), rational(-3, 1)),
            ),
        ] {
            assert_eq!(text.parse::<FieldElement>().unwrap(), v, "{text}");
        }
        for v in [
            fe(0, 0),
            fe(1, 2),
            fe(-1, -1),
            fe(0, -1),
            FieldElement::new(rational(1, 2), rational(-3, 4)),
            FieldElement::new(rational(0, 1), rational(-3, 4)),
            FieldElement::new(rational(-1, 3), rational(5, 4)),
        ] {
            assert_eq!(v.to_string().parse::<FieldElement>().unwrap(), v, "{v}");
        }
        assert!("x".parse::<FieldElement>().is_err());
    }

    #[test]
    fn serde_pairs() {
        let v = FieldElement::new(rational(1, 2), rational(-3, 1));
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"["1/2","-3"]"#);
        assert_eq!(serde_json::from_str::<FieldElement>(&text).unwrap(), v);
        assert_eq!(
            serde_json::from_str::<FieldElement>("[2, 0]").unwrap(),
            fe(2, 0)
        );
        assert_eq!(serde_json::from_str::<FieldElement>("5").unwrap(), fe(5, 0));
        assert!(serde_json::from_str::<FieldElement>(r#"["1/0", 0]"#).is_err());
    }
}
