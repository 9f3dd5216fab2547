//! Cubic surfaces `P(x, y) + zt(ux + vy) + z³ + αt³ = 0` with the order-3
//! action `(x : y : z : t) ↦ (x : y : ωz : ω²t)`.
//!
//! The four auxiliary cubics control the Galois action on the 27 lines:
//! the Eckardt cubic `z³ + α`, the tangent cubic `P + (ux + vy)³/(27α)`, the
//! fixed-point cubic `P` and, in the normal form `P = wx(x² − λy²)`, the
//! family cubic `4αμ³ − (u² − v²/λ)μ² − 2uwμ − w²`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::field::{
    cubic_galois_group, same_splitting_field, BinaryCubic, CubicPoly, FieldElement, FieldError,
    GaloisClass,
};
use crate::minimality::{
    analyze, default_geometric_group, rules, GaloisScenario, MinimalityError, Rationality, Verdict,
    VerdictField,
};
use crate::weyl::{named_element, Subgroup, WeylError};

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("field `{field}`: {message}")]
    InvalidField {
        field: &'static str,
        message: String,
    },
    #[error("`w` and `lambda` must be given together")]
    IncompleteNormalForm,
    #[error("`P` is {found}, but the normal form requires {expected}")]
    NormalFormMismatch { expected: String, found: String },
    #[error("the family cubic needs the normal form data `w` and `lambda`")]
    MissingNormalForm,
    #[error("Galois profile {0} is outside the known dictionary")]
    UnknownProfile(GaloisProfile),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Minimality(#[from] MinimalityError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// `(w, λ)` with `P = wx(x² − λy²)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub w: FieldElement,
    pub lambda: FieldElement,
}

impl NormalForm {
    pub fn binary_cubic(&self) -> Result<BinaryCubic, FieldError> {
        let z = FieldElement::zero();
        BinaryCubic::from_coeffs([self.w.clone(), z.clone(), -(&self.w * &self.lambda), z])
    }
}

/// Smoothness of the surface is not checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub name: Option<String>,
    pub description: Option<String>,
    p: BinaryCubic,
    u: FieldElement,
    v: FieldElement,
    alpha: FieldElement,
    normal_form: Option<NormalForm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    #[serde(rename = "P")]
    p: Option<Value>,
    u: Option<Value>,
    v: Option<Value>,
    alpha: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<Value>,
}

fn field_value<T: for<'de> Deserialize<'de>>(
    field: &'static str,
    v: Option<Value>,
) -> Result<T, SurfaceError> {
    let v = v.ok_or(SurfaceError::MissingField(field))?;
    serde_json::from_value(v).map_err(|e| SurfaceError::InvalidField {
        field,
        message: e.to_string(),
    })
}

fn to_value<T: Serialize>(x: &T) -> Option<Value> {
    Some(serde_json::to_value(x).expect("field elements serialize"))
}

impl SurfaceSpec {
    pub fn new(
        p: BinaryCubic,
        u: FieldElement,
        v: FieldElement,
        alpha: FieldElement,
        normal_form: Option<NormalForm>,
    ) -> Result<Self, SurfaceError> {
        if alpha.is_zero() {
            return Err(SurfaceError::InvalidField {
                field: "alpha",
                message: "must be nonzero".into(),
            });
        }
        if let Some(nf) = &normal_form {
            if nf.w.is_zero() {
                return Err(SurfaceError::InvalidField {
                    field: "w",
                    message: "must be nonzero".into(),
                });
            }
            if nf.lambda.is_zero() {
                return Err(SurfaceError::InvalidField {
                    field: "lambda",
                    message: "must be nonzero".into(),
                });
            }
            let expected = nf.binary_cubic()?;
            if expected != p {
                return Err(SurfaceError::NormalFormMismatch {
                    expected: expected.to_string(),
                    found: p.to_string(),
                });
            }
        }
        Ok(SurfaceSpec {
            name: None,
            description: None,
            p,
            u,
            v,
            alpha,
            normal_form,
        })
    }

    /// The surface `wx(x² − λy²) + zt(ux + vy) + z³ + αt³`.
    pub fn normal(
        w: FieldElement,
        lambda: FieldElement,
        u: FieldElement,
        v: FieldElement,
        alpha: FieldElement,
    ) -> Result<Self, SurfaceError> {
        let nf = NormalForm { w, lambda };
        Self::new(nf.binary_cubic()?, u, v, alpha, Some(nf))
    }

    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        let raw: RawSurface = serde_json::from_str(text)?;
        let p: BinaryCubic = field_value("P", raw.p)?;
        let u = field_value("u", raw.u)?;
        let v = field_value("v", raw.v)?;
        let alpha = field_value("alpha", raw.alpha)?;
        let normal_form = match (raw.w, raw.lambda) {
            (None, None) => None,
            (Some(w), Some(l)) => Some(NormalForm {
                w: field_value("w", Some(w))?,
                lambda: field_value("lambda", Some(l))?,
            }),
            _ => return Err(SurfaceError::IncompleteNormalForm),
        };
        let mut spec = Self::new(p, u, v, alpha, normal_form)?;
        spec.name = raw.name;
        spec.description = raw.description;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, SurfaceError> {
        let text = std::fs::read_to_string(path).map_err(|source| SurfaceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let raw = RawSurface {
            name: self.name.clone(),
            description: self.description.clone(),
            p: to_value(&self.p),
            u: to_value(&self.u),
            v: to_value(&self.v),
            alpha: to_value(&self.alpha),
            w: self.normal_form.as_ref().and_then(|nf| to_value(&nf.w)),
            lambda: self
                .normal_form
                .as_ref()
                .and_then(|nf| to_value(&nf.lambda)),
        };
        serde_json::to_string_pretty(&raw).expect("surface serializes")
    }

    pub fn p(&self) -> &BinaryCubic {
        &self.p
    }

    pub fn u(&self) -> &FieldElement {
        &self.u
    }

    pub fn v(&self) -> &FieldElement {
        &self.v
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn normal_form(&self) -> Option<&NormalForm> {
        self.normal_form.as_ref()
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeff = |x: &FieldElement, var: &str| {
            if *x == FieldElement::one() {
                var.to_string()
            } else if x.is_rational() {
                format!("{x}{var}")
            } else {
                format!("({x}){var}")
            }
        };
        write!(f, "{}", self.p)?;
        let linear: Vec<String> = [(&self.u, "x"), (&self.v, "y")]
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| coeff(c, v))
            .collect();
        if !linear.is_empty() {
            write!(f, " + zt({})", linear.join(" + "))?;
        }
        write!(f, " + z^3 + {}", coeff(&self.alpha, "t^3"))
    }
}

/// `z³ + α`, whose roots give the Eckardt points `(0 : 0 : −∛α : 1)`.
pub fn eckardt_cubic(s: &SurfaceSpec) -> CubicPoly {
    CubicPoly::new(
        FieldElement::one(),
        FieldElement::zero(),
        FieldElement::zero(),
        s.alpha.clone(),
    )
    .expect("leading coefficient 1")
}

/// `P + (ux + vy)³/(27α)`.
pub fn tangent_cubic(s: &SurfaceSpec) -> Result<BinaryCubic, FieldError> {
    let k = (&FieldElement::from(27) * &s.alpha).inv()?;
    let correction = BinaryCubic::cube_of_linear(&s.u, &s.v);
    let coeffs = std::array::from_fn(|i| &s.p.coeffs()[i] + &(&correction.coeffs()[i] * &k));
    BinaryCubic::from_coeffs(coeffs)
}

/// `P`, whose roots give the three fixed points on `z = t = 0`.
pub fn fixed_points_cubic(s: &SurfaceSpec) -> BinaryCubic {
    s.p.clone()
}

/// `4αμ³ − (u² − v²/λ)μ² − 2uwμ − w²`.
pub fn family_cubic(s: &SurfaceSpec) -> Result<CubicPoly, SurfaceError> {
    let nf = s
        .normal_form
        .as_ref()
        .ok_or(SurfaceError::MissingNormalForm)?;
    let (u, v, w) = (&s.u, &s.v, &nf.w);
    let quad = &(u * u) - &(v * v).div(&nf.lambda)?;
    Ok(CubicPoly::new(
        &FieldElement::from(4) * &s.alpha,
        -quad,
        -(&(&FieldElement::from(2) * u) * w),
        -(w * w),
    )?)
}

/// Element `r0 + r1 c + r2 c²` of `Q(ω)[c]/(c³ − α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct CubeRoot([FieldElement; 3]);

impl CubeRoot {
    fn scalar(x: FieldElement) -> Self {
        CubeRoot([x, FieldElement::zero(), FieldElement::zero()])
    }

    fn c_power(k: usize) -> Self {
        let mut r: [FieldElement; 3] = std::array::from_fn(|_| FieldElement::zero());
        r[k] = FieldElement::one();
        CubeRoot(r)
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElement::is_zero)
    }

    fn add(&self, o: &Self) -> Self {
        CubeRoot(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    fn mul(&self, o: &Self, alpha: &FieldElement) -> Self {
        let mut out: [FieldElement; 3] = std::array::from_fn(|_| FieldElement::zero());
        for i in 0..3 {
            for j in 0..3 {
                let t = &self.0[i] * &o.0[j];
                if i + j < 3 {
                    out[i + j] += &t;
                } else {
                    out[i + j - 3] += &(&t * alpha);
                }
            }
        }
        CubeRoot(out)
    }
}

/// Polynomials in `x, y, z, t` over `Q(ω)[c]/(c³ − α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly<'a> {
    alpha: &'a FieldElement,
    terms: BTreeMap<[u32; 4], CubeRoot>,
}

impl<'a> Poly<'a> {
    fn zero(alpha: &'a FieldElement) -> Self {
        Poly {
            alpha,
            terms: BTreeMap::new(),
        }
    }

    fn term(alpha: &'a FieldElement, coeff: CubeRoot, exps: [u32; 4]) -> Self {
        let mut p = Self::zero(alpha);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    fn var(alpha: &'a FieldElement, i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::term(alpha, CubeRoot::c_power(0), e)
    }

    fn constant(alpha: &'a FieldElement, c: CubeRoot) -> Self {
        Self::term(alpha, c, [0; 4])
    }

    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let sum = terms.get(e).map_or_else(|| c.clone(), |x| x.add(c));
            if sum.is_zero() {
                terms.remove(e);
            } else {
                terms.insert(*e, sum);
            }
        }
        Poly {
            alpha: self.alpha,
            terms,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.alpha);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = std::array::from_fn(|i| e1[i] + e2[i]);
                out = out.add(&Self::term(self.alpha, c1.mul(c2, self.alpha), e));
            }
        }
        out
    }

    fn scale(&self, c: &CubeRoot) -> Self {
        self.mul(&Self::constant(self.alpha, c.clone()))
    }

    fn cube(&self) -> Self {
        self.mul(self).mul(self)
    }
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;
const T: usize = 3;

/// Checks, with `c` a formal cube root of α, that
/// `3zt(cz + c²t) + z³ + αt³ = (z + ct)³` and that substituting the tangent
/// plane `c(ux + vy) = 3(c²z + αt)` into the surface equation leaves the
/// tangent cubic.
pub fn verify_eckardt_identity(s: &SurfaceSpec) -> bool {
    verify_eckardt_identity_with_coefficient(s, 3)
}

/// [`verify_eckardt_identity`] with `k` in place of 3.
pub fn verify_eckardt_identity_with_coefficient(s: &SurfaceSpec, k: i64) -> bool {
    let alpha = &s.alpha;
    let scalar = |x: FieldElement| CubeRoot::scalar(x);
    let c = Poly::constant(alpha, CubeRoot::c_power(1));
    let c2 = Poly::constant(alpha, CubeRoot::c_power(2));
    let (x, y, z, t) = (
        Poly::var(alpha, X),
        Poly::var(alpha, Y),
        Poly::var(alpha, Z),
        Poly::var(alpha, T),
    );
    let alpha_t3 = t.cube().scale(&scalar(alpha.clone()));

    let lhs = z
        .mul(&t)
        .mul(&c.mul(&z).add(&c2.mul(&t)))
        .scale(&scalar(FieldElement::from(k)))
        .add(&z.cube())
        .add(&alpha_t3);
    let rhs = z.add(&c.mul(&t)).cube();
    if lhs != rhs {
        return false;
    }

    let Ok(k_alpha_inv) = (&FieldElement::from(k) * alpha).inv() else {
        return false;
    };
    let linear = x
        .scale(&scalar(s.u.clone()))
        .add(&y.scale(&scalar(s.v.clone())));
    // z = c²(ux + vy)/(kα) − ct on the plane
    let z_plane = linear
        .mul(&c2)
        .scale(&scalar(k_alpha_inv))
        .add(&c.mul(&t).scale(&scalar(FieldElement::from(-1))));
    let p_poly = (0..4).fold(Poly::zero(alpha), |acc, i| {
        let coeff = scalar(s.p.coeffs()[i].clone());
        acc.add(&Poly::term(alpha, coeff, [3 - i as u32, i as u32, 0, 0]))
    });
    let restricted = p_poly
        .add(&z_plane.mul(&t).mul(&linear))
        .add(&z_plane.cube())
        .add(&alpha_t3);
    let Ok(tangent) = tangent_cubic(s) else {
        return false;
    };
    let expected = (0..4).fold(Poly::zero(alpha), |acc, i| {
        let coeff = scalar(tangent.coeffs()[i].clone());
        acc.add(&Poly::term(alpha, coeff, [3 - i as u32, i as u32, 0, 0]))
    });
    restricted == expected
}

/// Galois groups over Q(ω) of the Eckardt (`g1`), tangent (`g2`) and
/// fixed-point (`g3`) cubics, and whether the family cubic has an element of
/// order 3 (`None` without normal form data).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisProfile {
    pub g1: GaloisClass,
    pub g2: GaloisClass,
    pub g3: GaloisClass,
    pub g4_has_order3: Option<bool>,
    /// Only set when `g1` and `g2` are both C3.
    pub same_splitting_field_g1_g2: Option<bool>,
}

impl fmt::Display for GaloisProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g4 = match self.g4_has_order3 {
            Some(true) => "order 3",
            Some(false) => "no order 3",
            None => "n/a",
        };
        write!(f, "({}, {}, {}, {})", self.g1, self.g2, self.g3, g4)
    }
}

pub fn galois_profile(s: &SurfaceSpec) -> Result<GaloisProfile, SurfaceError> {
    let eckardt = eckardt_cubic(s);
    let tangent = tangent_cubic(s)?;
    let g1 = cubic_galois_group(&eckardt)?;
    let g2 = tangent.galois_class()?;
    let g3 = fixed_points_cubic(s).galois_class()?;
    let g4_has_order3 = match family_cubic(s) {
        Ok(fam) => Some(cubic_galois_group(&fam)?.has_order_three()),
        Err(SurfaceError::MissingNormalForm) => None,
        Err(e) => return Err(e),
    };
    let same_splitting_field_g1_g2 = if g1 == GaloisClass::C3 && g2 == GaloisClass::C3 {
        Some(same_splitting_field(&eckardt, &tangent.dehomogenize())?)
    } else {
        None
    };
    Ok(GaloisProfile {
        g1,
        g2,
        g3,
        g4_has_order3,
        same_splitting_field_g1_g2,
    })
}

/// A Galois image read off a profile; `exact` is false when only a subgroup
/// of Γ is known.
#[derive(Debug, Clone)]
pub struct InferredImage {
    pub words: &'static [&'static str],
    pub subgroup: Subgroup,
    pub exact: bool,
}

impl InferredImage {
    pub fn name(&self) -> String {
        format!("⟨{}⟩", self.words.join(","))
    }
}

/// Γ up to conjugacy for the four profiles with a rational Eckardt cubic.
pub fn infer_galois_image(p: &GaloisProfile) -> Result<Option<InferredImage>, WeylError> {
    use GaloisClass::{Trivial, C2};
    let (words, exact): (&'static [&'static str], bool) = match (p.g1, p.g2, p.g3, p.g4_has_order3)
    {
        (Trivial, Trivial, Trivial, Some(true)) => (&["r"], true),
        (Trivial, Trivial, C2, Some(true)) => (&["r", "s"], true),
        (Trivial, C2, Trivial, Some(true)) => (&["c", "r"], true),
        (Trivial, C2, C2, _) => (&["cs"], false),
        _ => return Ok(None),
    };
    let gens = words
        .iter()
        .map(|w| named_element(w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(InferredImage {
        words,
        subgroup: Subgroup::generate(&gens)?,
        exact,
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceVerdict {
    pub profile: GaloisProfile,
    pub image: String,
    pub image_exact: bool,
    pub verdict: Verdict,
}

impl fmt::Display for SurfaceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Galois profile (g1, g2, g3, g4): {}", self.profile)?;
        let bound = if self.image_exact {
            ""
        } else {
            " (lower bound)"
        };
        writeln!(f, "Galois image: {}{bound}", self.image)?;
        write!(f, "{}", self.verdict)
    }
}

/// Profile, Galois image and verdict for `X` and `X/G` with `G = ⟨ab⟩`.
pub fn classify(s: &SurfaceSpec) -> Result<SurfaceVerdict, SurfaceError> {
    let profile = galois_profile(s)?;
    let image = infer_galois_image(&profile)?
        .ok_or_else(|| SurfaceError::UnknownProfile(profile.clone()))?;
    let point = profile.g1 == GaloisClass::Trivial;
    let scenario = GaloisScenario::new(default_geometric_group(), image.subgroup.clone(), point)?;
    let mut v = analyze(&scenario)?;

    if profile.g3 == GaloisClass::C2 && v.g_minimal {
        v.quotient_rational = Rationality::NotRational;
        v.cite(
            VerdictField::QuotientRational,
            rules::FIXED_POINTS_C2,
            "two fixed points swapped by Galois; quotient is birational to a minimal conic bundle of degree 4",
        );
    } else if profile.g3 == GaloisClass::Trivial && point {
        v.quotient_rational = Rationality::Rational;
        v.cite(
            VerdictField::QuotientRational,
            rules::RANK_PLUS_DEGREE,
            "fixed points are rational; the resolved quotient has invariant rank 7",
        );
    }

    if !image.exact {
        for field in [VerdictField::XRational, VerdictField::QuotientRational] {
            let slot = match field {
                VerdictField::XRational => &mut v.x_rational,
                _ => &mut v.quotient_rational,
            };
            if *slot == Rationality::Rational {
                *slot = Rationality::Unknown;
                v.cite(
                    field,
                    rules::LOWER_BOUND,
                    format!("Γ contains {}", image.name()),
                );
            }
        }
    }
    Ok(SurfaceVerdict {
        profile,
        image: image.name(),
        image_exact: image.exact,
        verdict: v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(a: i64) -> FieldElement {
        FieldElement::from(a)
    }

    fn surface(w: i64, lambda: i64, u: i64) -> SurfaceSpec {
        SurfaceSpec::normal(fe(w), fe(lambda), fe(u), fe(0), fe(1)).unwrap()
    }

    #[test]
    fn auxiliary_cubics() {
        let s = surface(1, 2, 3);
        assert_eq!(
            tangent_cubic(&s).unwrap(),
            BinaryCubic::from_ints([2, 0, -2, 0]).unwrap()
        );
        assert_eq!(
            family_cubic(&s).unwrap(),
            CubicPoly::from_ints([4, -9, -6, -1]).unwrap()
        );
        let t = surface(1, 1, 3);
        assert_eq!(
            tangent_cubic(&t).unwrap().galois_class().unwrap(),
            GaloisClass::C2
        );
        let r = surface(4, 1, 0);
        assert_eq!(
            family_cubic(&r).unwrap(),
            CubicPoly::from_ints([4, 0, 0, -16]).unwrap()
        );
        assert_eq!(tangent_cubic(&r).unwrap(), fixed_points_cubic(&r));
        assert_eq!(
            cubic_galois_group(&eckardt_cubic(&r)).unwrap(),
            GaloisClass::Trivial
        );
    }

    #[test]
    fn eckardt_identity_and_control() {
        let s = surface(1, 2, 3);
        assert!(verify_eckardt_identity(&s));
        assert!(!verify_eckardt_identity_with_coefficient(&s, 4));
        let q = SurfaceSpec::normal(fe(1), fe(2), fe(3), fe(5), fe(2)).unwrap();
        assert!(verify_eckardt_identity(&q));
    }

    #[test]
    fn profiles_of_the_four_examples() {
        use GaloisClass::{Trivial, C2};
        let cases = [
            (surface(4, 1, 0), (Trivial, Trivial, Trivial)),
            (surface(1, 2, 3), (Trivial, Trivial, C2)),
            (surface(1, 1, 3), (Trivial, C2, Trivial)),
            (surface(1, 2, 0), (Trivial, C2, C2)),
        ];
        for (s, (g1, g2, g3)) in cases {
            let p = galois_profile(&s).unwrap();
            assert_eq!((p.g1, p.g2, p.g3), (g1, g2, g3), "{s}");
            assert_eq!(p.g4_has_order3, Some(true));
            assert_eq!(p.same_splitting_field_g1_g2, None);
        }
    }

    #[test]
    fn classification_matrix() {
        use Rationality::{NotRational, Rational};
        let cases = [
            (surface(4, 1, 0), Rational, Rational),
            (surface(1, 2, 3), Rational, NotRational),
            (surface(1, 1, 3), NotRational, Rational),
            (surface(1, 2, 0), NotRational, NotRational),
        ];
        for (s, x, q) in cases {
            let v = classify(&s).unwrap();
            assert!(v.verdict.g_minimal, "{s}");
            assert_eq!(
                (v.verdict.x_rational, v.verdict.quotient_rational),
                (x, q),
                "{s}"
            );
            assert!(v.verdict.is_justified());
        }
    }

    #[test]
    fn json_validation_names_fields() {
        let ok =
            r#"{"P": [[1,0],[0,0],[-2,0],[0,0]], "u": 3, "v": 0, "alpha": 1, "w": 1, "lambda": 2}"#;
        let s = SurfaceSpec::from_json(ok).unwrap();
        assert_eq!(SurfaceSpec::from_json(&s.to_json()).unwrap(), s);

        let missing = r#"{"P": [1,0,-2,0], "u": 3, "v": 0}"#;
        assert!(matches!(
            SurfaceSpec::from_json(missing),
            Err(SurfaceError::MissingField("alpha"))
        ));
        let bad = r#"{"P": [1,0,-2,0], "u": "x", "v": 0, "alpha": 1}"#;
        assert!(matches!(
            SurfaceSpec::from_json(bad),
            Err(SurfaceError::InvalidField { field: "u", .. })
        ));
        let zero = r#"{"P": [1,0,-2,0], "u": 3, "v": 0, "alpha": 0}"#;
        assert!(matches!(
            SurfaceSpec::from_json(zero),
            Err(SurfaceError::InvalidField { field: "alpha", .. })
        ));
        let mismatch = r#"{"P": [1,0,-2,0], "u": 3, "v": 0, "alpha": 1, "w": 1, "lambda": 3}"#;
        assert!(matches!(
            SurfaceSpec::from_json(mismatch),
            Err(SurfaceError::NormalFormMismatch { .. })
        ));
        let half = r#"{"P": [1,0,-2,0], "u": 3, "v": 0, "alpha": 1, "w": 1}"#;
        assert!(matches!(
            SurfaceSpec::from_json(half),
            Err(SurfaceError::IncompleteNormalForm)
        ));
    }

    #[test]
    fn without_normal_form_g4_is_unavailable() {
        let s = SurfaceSpec::new(
            BinaryCubic::from_ints([1, 0, -2, 0]).unwrap(),
            fe(3),
            fe(0),
            fe(1),
            None,
        )
        .unwrap();
        assert!(matches!(
            family_cubic(&s),
            Err(SurfaceError::MissingNormalForm)
        ));
        let p = galois_profile(&s).unwrap();
        assert_eq!(p.g4_has_order3, None);
        assert!(matches!(classify(&s), Err(SurfaceError::UnknownProfile(_))));
    }
}
