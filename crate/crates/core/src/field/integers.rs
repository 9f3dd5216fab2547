//! The Eisenstein integers Z[ω] and factorization into primes.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use super::{FieldElement, FieldError};

/// Largest norm accepted by [`factor`].
pub const MAX_FACTOR_NORM: u64 = 1 << 50;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn conj(&self) -> Self {
        EisensteinInt {
            a: &self.a - &self.b,
            b: -&self.b,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        EisensteinInt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    /// The six units `±1, ±ω, ±ω²`.
    pub fn units() -> [EisensteinInt; 6] {
        [(1, 0), (-1, 0), (0, 1), (0, -1), (-1, -1), (1, 1)].map(|(a, b)| Self::new(a, b))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let bd = &self.b * &o.b;
        EisensteinInt {
            a: &self.a * &o.a - &bd,
            b: &self.a * &o.b + &self.b * &o.a - bd,
        }
    }

    /// `self / d` when `d` divides `self` in Z[ω].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let t = self.mul(&d.conj());
        let (qa, ra) = t.a.div_rem(&n);
        let (qb, rb) = t.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(EisensteinInt { a: qa, b: qb })
    }

    pub fn to_field(&self) -> FieldElement {
        FieldElement::new(
            BigRational::from_integer(self.a.clone()),
            BigRational::from_integer(self.b.clone()),
        )
    }

    /// The element as an Eisenstein integer, if both parts are integers.
    pub fn from_field(x: &FieldElement) -> Option<Self> {
        (x.a().is_integer() && x.b().is_integer()).then(|| EisensteinInt {
            a: x.a().to_integer(),
            b: x.b().to_integer(),
        })
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Some `y` with `y³ = self`.
    pub fn cube_root(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let seed = self.to_complex()?.cbrt();
        let zero = || EisensteinInt::new(0, 0);
        refine_root(&[EisensteinInt::one(), zero(), zero(), self.neg()], seed)
    }

    pub fn neg(&self) -> Self {
        EisensteinInt {
            a: -&self.a,
            b: -&self.b,
        }
    }

    /// The element as a complex number, if both parts fit in `f64`.
    pub fn to_complex(&self) -> Option<Complex64> {
        let (a, b) = (self.a.to_f64()?, self.b.to_f64()?);
        (a.is_finite() && b.is_finite()).then(|| Complex64::new(a - b / 2.0, b * 3f64.sqrt() / 2.0))
    }

    /// The element of Z[ω] closest to `z` in coordinates.
    pub fn nearest(z: Complex64) -> Option<Self> {
        let b = z.im * 2.0 / 3f64.sqrt();
        Some(Self::new(
            BigInt::from_f64((z.re + b / 2.0).round())?,
            BigInt::from_f64(b.round())?,
        ))
    }

    fn round(x: &FieldElement) -> Self {
        EisensteinInt {
            a: x.a().round().to_integer(),
            b: x.b().round().to_integer(),
        }
    }
}

/// A root in Z[ω] of the monic cubic `z³ + c1 z² + c2 z + c3`, reached by
/// Newton steps rounded to Z[ω] from `seed` and checked exactly.
pub fn refine_root(c: &[EisensteinInt; 4], seed: Complex64) -> Option<EisensteinInt> {
    let value = |z: &EisensteinInt| c[1..].iter().fold(c[0].clone(), |acc, k| acc.mul(z).add(k));
    let slope = |z: &EisensteinInt| {
        let three = EisensteinInt::new(3, 0);
        let two = EisensteinInt::new(2, 0);
        three.mul(z).add(&two.mul(&c[1])).mul(z).add(&c[2])
    };
    let mut z = EisensteinInt::nearest(seed)?;
    for _ in 0..64 {
        let f = value(&z);
        if f.is_zero() {
            return Some(z);
        }
        let d = slope(&z);
        if d.is_zero() {
            return None;
        }
        let step = f.to_field().div(&d.to_field()).ok()?;
        let next = EisensteinInt::round(&(&z.to_field() - &step));
        if next == z {
            return None;
        }
        z = next;
    }
    None
}

impl fmt::Debug for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_field())
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_field())
    }
}

/// `z = unit · Π primeᵉ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: EisensteinInt,
    pub primes: Vec<(EisensteinInt, u32)>,
}

impl Factorization {
    /// All divisors up to units.
    pub fn divisors(&self) -> Vec<EisensteinInt> {
        let mut out = vec![EisensteinInt::one()];
        for (p, e) in &self.primes {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            for d in &out {
                let mut x = d.clone();
                next.push(x.clone());
                for _ in 0..*e {
                    x = x.mul(p);
                    next.push(x.clone());
                }
            }
            out = next;
        }
        out
    }

    pub fn product(&self) -> EisensteinInt {
        self.primes.iter().fold(self.unit.clone(), |acc, (p, e)| {
            (0..*e).fold(acc, |acc, _| acc.mul(p))
        })
    }
}

fn rational_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime of Z[ω] with norm `p`, for a rational prime `p ≡ 1 (mod 3)`.
fn split_prime(p: u64) -> EisensteinInt {
    // a² − ab + b² = p  ⇔  (2a − b)² = 4p − 3b²
    let mut b = 1u64;
    while 3 * b * b <= 4 * p {
        let d = 4 * p - 3 * b * b;
        let s = d.isqrt();
        if s * s == d && (s + b).is_multiple_of(2) {
            return EisensteinInt::new((s + b) / 2, b);
        }
        b += 1;
    }
    unreachable!("primes congruent to 1 mod 3 are norms")
}

fn strip(z: &mut EisensteinInt, p: &EisensteinInt) -> u32 {
    let mut e = 0;
    while let Some(q) = z.div_exact(p) {
        *z = q;
        e += 1;
    }
    e
}

/// Prime factorization of a nonzero Eisenstein integer.
pub fn factor(z: &EisensteinInt) -> Result<Factorization, FieldError> {
    if z.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    let n = z.norm();
    let n64 = n
        .to_u64()
        .filter(|&v| v <= MAX_FACTOR_NORM)
        .ok_or_else(|| FieldError::TooLarge(n.clone()))?;
    let mut rest = z.clone();
    let mut primes = Vec::new();
    for p in rational_prime_factors(n64) {
        let candidates = match p % 3 {
            0 => vec![EisensteinInt::new(1, -1)],
            1 => {
                let pi = split_prime(p);
                let bar = pi.conj();
                vec![pi, bar]
            }
            _ => vec![EisensteinInt::new(p, 0)],
        };
        for pi in candidates {
            let e = strip(&mut rest, &pi);
            if e > 0 {
                primes.push((pi, e));
            }
        }
    }
    debug_assert!(rest.is_unit());
    Ok(Factorization { unit: rest, primes })
}
