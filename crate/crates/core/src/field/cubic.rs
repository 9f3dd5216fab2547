//! Cubic polynomials over Q(ω): roots, discriminants and Galois groups.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::integers::{factor, refine_root, EisensteinInt};
use super::{rational, FieldElement, FieldError};

/// Galois group of a separable cubic over Q(ω).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GaloisClass {
    Trivial,
    C2,
    C3,
    S3,
}

impl GaloisClass {
    pub fn has_order_three(self) -> bool {
        matches!(self, GaloisClass::C3 | GaloisClass::S3)
    }
}

impl fmt::Display for GaloisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GaloisClass::Trivial => "trivial",
            GaloisClass::C2 => "C2",
            GaloisClass::C3 => "C3",
            GaloisClass::S3 => "S3",
        })
    }
}

/// `c3 x³ + c2 x² + c1 x + c0` with `c3 ≠ 0`; serialized degree-descending.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(into = "[FieldElement; 4]")]
pub struct CubicPoly {
    coeffs: [FieldElement; 4],
}

impl From<CubicPoly> for [FieldElement; 4] {
    fn from(p: CubicPoly) -> Self {
        p.coeffs
    }
}

impl<'de> Deserialize<'de> for CubicPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c = <[FieldElement; 4]>::deserialize(d)?;
        CubicPoly::from_coeffs(c).map_err(serde::de::Error::custom)
    }
}

impl CubicPoly {
    pub fn new(
        c3: FieldElement,
        c2: FieldElement,
        c1: FieldElement,
        c0: FieldElement,
    ) -> Result<Self, FieldError> {
        Self::from_coeffs([c3, c2, c1, c0])
    }

    /// Coefficients degree-descending.
    pub fn from_coeffs(coeffs: [FieldElement; 4]) -> Result<Self, FieldError> {
        if coeffs[0].is_zero() {
            return Err(FieldError::ZeroLeadingCoefficient);
        }
        Ok(CubicPoly { coeffs })
    }

    pub fn from_ints(c: [i64; 4]) -> Result<Self, FieldError> {
        Self::from_coeffs(c.map(FieldElement::from))
    }

    /// `c · (x − r1)(x − r2)(x − r3)`.
    pub fn from_roots(c: &FieldElement, roots: [&FieldElement; 3]) -> Result<Self, FieldError> {
        let [r1, r2, r3] = roots;
        let e1 = &(r1 + r2) + r3;
        let e2 = &(&(r1 * r2) + &(r1 * r3)) + &(r2 * r3);
        let e3 = &(r1 * r2) * r3;
        Self::new(c.clone(), -(c * &e1), c * &e2, -(c * &e3))
    }

    pub fn coeffs(&self) -> &[FieldElement; 4] {
        &self.coeffs
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .fold(FieldElement::zero(), |acc, c| &(&acc * x) + c)
    }

    /// `18c3c2c1c0 − 4c2³c0 + c2²c1² − 4c3c1³ − 27c3²c0²`.
    pub fn discriminant(&self) -> FieldElement {
        let [c3, c2, c1, c0] = &self.coeffs;
        let k = |n: i64| FieldElement::from(n);
        let t1 = &(&(&k(18) * c3) * c2) * &(c1 * c0);
        let t2 = &(&k(4) * &c2.pow(3)) * c0;
        let t3 = &c2.pow(2) * &c1.pow(2);
        let t4 = &(&k(4) * c3) * &c1.pow(3);
        let t5 = &(&k(27) * &c3.pow(2)) * &c0.pow(2);
        &(&(&(&t1 - &t2) + &t3) - &t4) - &t5
    }

    /// The monic depressed form `y³ + p y + q` under `x = y − c2/(3c3)`.
    pub fn depressed(&self) -> (FieldElement, FieldElement) {
        let inv = self.coeffs[0]
            .inv()
            .expect("leading coefficient is nonzero");
        let a2 = &self.coeffs[1] * &inv;
        let a1 = &self.coeffs[2] * &inv;
        let a0 = &self.coeffs[3] * &inv;
        let third = FieldElement::from_rational(rational(1, 3));
        let p = &a1 - &(&(&a2 * &a2) * &third);
        let q = &(&(&a2.pow(3) * &FieldElement::from_rational(rational(2, 27)))
            - &(&(&a2 * &a1) * &third))
            + &a0;
        (p, q)
    }
}

impl fmt::Display for CubicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, |i| match 3 - i {
            0 => String::new(),
            1 => "x".into(),
            d => format!("x^{d}"),
        })
    }
}

impl fmt::Debug for CubicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[FieldElement],
    monomial: impl Fn(usize) -> String,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let m = monomial(i);
        let negative_rational = c.is_rational() && c.a() < &BigRational::from_integer(0.into());
        let (sign, body) = if negative_rational {
            ("-", -c)
        } else {
            ("+", c.clone())
        };
        let text = if !body.is_rational() {
            format!("({body})")
        } else if body == FieldElement::one() && !m.is_empty() {
            String::new()
        } else {
            body.to_string()
        };
        if first {
            write!(f, "{}{}{}", if sign == "-" { "-" } else { "" }, text, m)?;
        } else {
            write!(f, " {sign} {text}{m}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Binary cubic form `c0 x³ + c1 x²y + c2 xy² + c3 y³`, not identically zero.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(into = "[FieldElement; 4]")]
pub struct BinaryCubic {
    coeffs: [FieldElement; 4],
}

impl From<BinaryCubic> for [FieldElement; 4] {
    fn from(p: BinaryCubic) -> Self {
        p.coeffs
    }
}

impl<'de> Deserialize<'de> for BinaryCubic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c = <[FieldElement; 4]>::deserialize(d)?;
        BinaryCubic::from_coeffs(c).map_err(serde::de::Error::custom)
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl BinaryCubic {
    /// Coefficients of `x³, x²y, xy², y³`.
    pub fn from_coeffs(coeffs: [FieldElement; 4]) -> Result<Self, FieldError> {
        if coeffs.iter().all(FieldElement::is_zero) {
            return Err(FieldError::ZeroForm);
        }
        Ok(BinaryCubic { coeffs })
    }

    pub fn from_ints(c: [i64; 4]) -> Result<Self, FieldError> {
        Self::from_coeffs(c.map(FieldElement::from))
    }

    pub fn coeffs(&self) -> &[FieldElement; 4] {
        &self.coeffs
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += &(&(c * &x.pow(3 - i as u32)) * &y.pow(i as u32));
        }
        acc
    }

    pub fn discriminant(&self) -> FieldElement {
        CubicPoly {
            coeffs: self.coeffs.clone(),
        }
        .discriminant()
    }

    /// `(l1 x + l2 y)³`.
    pub fn cube_of_linear(l1: &FieldElement, l2: &FieldElement) -> Self {
        let coeffs = std::array::from_fn(|i| {
            let c = FieldElement::from(binomial(3, i));
            &(&c * &l1.pow(3 - i as u32)) * &l2.pow(i as u32)
        });
        BinaryCubic { coeffs }
    }

    /// Coefficientwise sum; errors if the result vanishes.
    pub fn add(&self, o: &BinaryCubic) -> Result<Self, FieldError> {
        Self::from_coeffs(std::array::from_fn(|i| &self.coeffs[i] + &o.coeffs[i]))
    }

    pub fn scale(&self, k: &FieldElement) -> Result<Self, FieldError> {
        Self::from_coeffs(std::array::from_fn(|i| &self.coeffs[i] * k))
    }

    /// The form after `y ↦ y + kx`.
    fn shear(&self, k: &FieldElement) -> BinaryCubic {
        let mut out: [FieldElement; 4] = std::array::from_fn(|_| FieldElement::zero());
        // c_i x^{3-i} (y + kx)^i = Σ_j C(i,j) k^{i-j} x^{3-j} y^j
        for (i, c) in self.coeffs.iter().enumerate() {
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                let t = &(c * &FieldElement::from(binomial(i, j))) * &k.pow((i - j) as u32);
                *slot += &t;
            }
        }
        BinaryCubic { coeffs: out }
    }

    /// A cubic in one variable with the same Galois group: the form itself at
    /// `y = 1` when the `x³` coefficient is nonzero, otherwise after a shear
    /// `y ↦ y + kx` with `P(1, k) ≠ 0`.
    pub fn dehomogenize(&self) -> CubicPoly {
        if !self.coeffs[0].is_zero() {
            return CubicPoly {
                coeffs: self.coeffs.clone(),
            };
        }
        // P(1, k) vanishes for at most three k
        let k = (1..=4)
            .map(FieldElement::from)
            .find(|k| !self.eval(&FieldElement::one(), k).is_zero())
            .expect("a nonzero binary cubic has at most three zeros");
        CubicPoly {
            coeffs: self.shear(&k).coeffs,
        }
    }

    pub fn galois_class(&self) -> Result<GaloisClass, FieldError> {
        cubic_galois_group(&self.dehomogenize())
    }
}

impl fmt::Display for BinaryCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, |i| {
            ["x^3", "x^2y", "xy^2", "y^3"][i].to_string()
        })
    }
}

impl fmt::Debug for BinaryCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Multiply through by the common denominator.
fn integral_coefficients(coeffs: &[FieldElement]) -> Vec<EisensteinInt> {
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| {
        num_integer::Integer::lcm(&acc, &c.denominator_lcm())
    });
    let scale = BigRational::from_integer(l);
    coeffs
        .iter()
        .map(|c| EisensteinInt::from_field(&c.scale(&scale)).expect("denominators cleared"))
        .collect()
}

/// Roots of `a x² + b x + c` (with `a ≠ 0`) in Q(ω), with multiplicity.
fn quadratic_roots(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Vec<FieldElement> {
    let disc = &(b * b) - &(&(&FieldElement::from(4) * a) * c);
    let Some(s) = disc.sqrt() else {
        return Vec::new();
    };
    let two_a_inv = (&FieldElement::from(2) * a).inv().expect("a ≠ 0");
    vec![&(&-b + &s) * &two_a_inv, &(&-b - &s) * &two_a_inv]
}

/// One root in Q(ω). Candidates are `unit · d1/d2` with `d1 | c0` and
/// `d2 | c3`; when the coefficients are too large to factor, roots of the
/// associated monic cubic are located numerically and verified exactly.
fn find_root(p: &CubicPoly) -> Result<Option<FieldElement>, FieldError> {
    let ints = integral_coefficients(&p.coeffs);
    if ints[3].is_zero() {
        return Ok(Some(FieldElement::zero()));
    }
    match divisor_search(&ints) {
        Err(FieldError::TooLarge(n)) => {
            let (monic, seeds) = monic_seeds(&ints).ok_or(FieldError::TooLarge(n))?;
            let z = seeds.iter().find_map(|&s| refine_root(&monic, s));
            Ok(z.map(|z| z.to_field().div(&ints[0].to_field()).expect("c3 ≠ 0")))
        }
        other => other,
    }
}

fn divisor_search(ints: &[EisensteinInt]) -> Result<Option<FieldElement>, FieldError> {
    let powers = |d: &EisensteinInt| {
        let d2 = d.mul(d);
        let d3 = d2.mul(d);
        [EisensteinInt::one(), d.clone(), d2, d3]
    };
    let denominators: Vec<[EisensteinInt; 4]> =
        factor(&ints[0])?.divisors().iter().map(powers).collect();
    let numerators = factor(&ints[3])?.divisors();
    for top in &numerators {
        for u in EisensteinInt::units() {
            let d1 = powers(&top.mul(&u));
            // c3 d1³ + c2 d1² d2 + c1 d1 d2² + c0 d2³
            let a: Vec<EisensteinInt> = (0..4).map(|i| ints[i].mul(&d1[3 - i])).collect();
            for d2 in &denominators {
                let value = (1..4).fold(a[0].clone(), |acc, i| acc.add(&a[i].mul(&d2[i])));
                if value.is_zero() {
                    return Ok(Some(d1[1].to_field().div(&d2[1].to_field())?));
                }
            }
        }
    }
    Ok(None)
}

/// `z³ + c2 z² + c1c3 z + c0c3²`, whose roots are `c3·x`, with floating-point
/// approximations of its roots.
fn monic_seeds(ints: &[EisensteinInt]) -> Option<([EisensteinInt; 4], [Complex64; 3])> {
    let c3 = &ints[0];
    let monic = [
        EisensteinInt::one(),
        ints[1].clone(),
        ints[2].mul(c3),
        ints[3].mul(&c3.mul(c3)),
    ];
    let c: Vec<Complex64> = monic
        .iter()
        .map(EisensteinInt::to_complex)
        .collect::<Option<_>>()?;
    let seeds = complex_roots([c[1], c[2], c[3]]);
    seeds
        .iter()
        .all(|z| z.is_finite())
        .then_some((monic, seeds))
}

/// Durand–Kerner iteration for `z³ + c[0] z² + c[1] z + c[2]`.
fn complex_roots(c: [Complex64; 3]) -> [Complex64; 3] {
    // Fujiwara bound on the root moduli
    let radius = 2.0
        * c[0]
            .norm()
            .max(c[1].norm().sqrt())
            .max((c[2].norm() / 2.0).cbrt())
            .max(1.0);
    let mut r: [Complex64; 3] = std::array::from_fn(|k| {
        Complex64::from_polar(radius, 0.4 + k as f64 * 2.0 * std::f64::consts::PI / 3.0)
    });
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..3 {
            let f = ((r[i] + c[0]) * r[i] + c[1]) * r[i] + c[2];
            let denom = (0..3)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (r[i] - r[j]));
            if denom.norm() > 0.0 {
                let step = f / denom;
                r[i] -= step;
                moved = moved.max(step.norm() / r[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    r
}

fn sort_key(x: &FieldElement) -> (BigRational, BigRational) {
    (x.a().clone(), x.b().clone())
}

/// All roots in Q(ω), each repeated by multiplicity, in increasing `(a, b)`.
pub fn roots_in_field(p: &CubicPoly) -> Result<Vec<FieldElement>, FieldError> {
    let Some(r) = find_root(p)? else {
        return Ok(Vec::new());
    };
    // synthetic division by (x − r)
    let [c3, c2, c1, _] = &p.coeffs;
    let q2 = c3.clone();
    let q1 = c2 + &(&q2 * &r);
    let q0 = c1 + &(&q1 * &r);
    let mut roots = vec![r];
    roots.extend(quadratic_roots(&q2, &q1, &q0));
    roots.sort_by_key(sort_key);
    Ok(roots)
}

pub fn cubic_discriminant(p: &CubicPoly) -> FieldElement {
    p.discriminant()
}

/// Trivial with three roots in Q(ω), C2 with one, otherwise C3 or S3
/// according to whether the discriminant is a square.
pub fn cubic_galois_group(p: &CubicPoly) -> Result<GaloisClass, FieldError> {
    let disc = p.discriminant();
    if disc.is_zero() {
        return Err(FieldError::InseparableInput);
    }
    Ok(match roots_in_field(p)?.len() {
        3 => GaloisClass::Trivial,
        1 => GaloisClass::C2,
        0 if disc.sqrt().is_some() => GaloisClass::C3,
        0 => GaloisClass::S3,
        n => unreachable!("a separable cubic has 0, 1 or 3 roots, found {n}"),
    })
}

/// Some `c` with `c³ = x`, if one exists.
pub fn is_cube(x: &FieldElement) -> Result<Option<FieldElement>, FieldError> {
    if x.is_zero() {
        return Ok(Some(FieldElement::zero()));
    }
    // y³ = x·d³ has an integral solution whenever x is a cube
    let d = x.denominator_lcm();
    let integral = x.scale(&BigRational::from_integer(d.pow(3)));
    let z = EisensteinInt::from_field(&integral).expect("denominators cleared");
    match z.cube_root() {
        Some(y) => Ok(Some(
            y.to_field().scale(&BigRational::new(BigInt::one(), d)),
        )),
        None if z.to_complex().is_some() => Ok(None),
        None => {
            let t = CubicPoly::new(
                FieldElement::one(),
                FieldElement::zero(),
                FieldElement::zero(),
                -x,
            )?;
            Ok(roots_in_field(&t)?.into_iter().next())
        }
    }
}

/// A nonzero `A` with splitting field `Q(ω)(∛A)`, for a cubic with square
/// discriminant: `A = −q/2 ± √(−Δ/108)` for the depressed form `y³ + py + q`.
fn kummer_generator(p: &CubicPoly) -> Result<FieldElement, FieldError> {
    let (pp, q) = p.depressed();
    let delta = -(&(&FieldElement::from(4) * &pp.pow(3)) + &(&FieldElement::from(27) * &q.pow(2)));
    if delta.is_zero() {
        return Err(FieldError::InseparableInput);
    }
    let s = (&-&delta * &FieldElement::from_rational(rational(1, 108)))
        .sqrt()
        .ok_or(FieldError::NotCyclic)?;
    let half_q = &q * &FieldElement::from_rational(rational(1, 2));
    let plus = &-&half_q + &s;
    Ok(if plus.is_zero() { &-&half_q - &s } else { plus })
}

/// Whether two cubics with Galois group C3 have the same splitting field.
///
/// Both fields are Kummer extensions `Q(ω)(∛A)`, `Q(ω)(∛B)`; they agree iff
/// `A/B` or `AB` is a cube.
pub fn same_splitting_field(p: &CubicPoly, q: &CubicPoly) -> Result<bool, FieldError> {
    for poly in [p, q] {
        if cubic_galois_group(poly)? != GaloisClass::C3 {
            return Err(FieldError::NotCyclic);
        }
    }
    let a = kummer_generator(p)?;
    let b = kummer_generator(q)?;
    Ok(is_cube(&a.div(&b)?)?.is_some() || is_cube(&(&a * &b))?.is_some())
}
