//! K² bookkeeping for quotients by finite groups and for the minimal
//! resolution of their cyclic quotient singularities.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuotientError {
    #[error(
        "1/{m}(1,{q}) is not a cyclic quotient singularity type (need 0 < q < m, gcd(m, q) = 1)"
    )]
    InvalidType { m: u32, q: u32 },
    #[error("no resolution data for 1/{m}(1, {q})")]
    UnsupportedSingularity { m: u32, q: u32 },
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("cannot read scenario file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid scenario JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Rationals serialized as `"p/q"` strings.
pub mod rational_string {
    use num_rational::Rational64;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let text = String::deserialize(d)?;
        text.trim()
            .parse()
            .map_err(|_| D::Error::custom(format!("not a rational: {text:?}")))
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational64], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&r.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational64>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| D::Error::custom(format!("not a rational: {t:?}")))
                })
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&r.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<Rational64>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| D::Error::custom(format!("not a rational: {t:?}")))
                })
                .transpose()
        }
    }
}

/// The cyclic quotient singularity `1/m(1, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawType")]
pub struct SingularityType {
    m: u32,
    q: u32,
}

#[derive(Deserialize)]
struct RawType {
    m: u32,
    q: u32,
}

impl TryFrom<RawType> for SingularityType {
    type Error = QuotientError;
    fn try_from(r: RawType) -> Result<Self, Self::Error> {
        SingularityType::new(r.m, r.q)
    }
}

impl SingularityType {
    pub fn new(m: u32, q: u32) -> Result<Self, QuotientError> {
        if q == 0 || q >= m || m.gcd(&q) != 1 {
            return Err(QuotientError::InvalidType { m, q });
        }
        Ok(SingularityType { m, q })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.m, self.q)
    }
}

/// Changes under the minimal resolution: of `K²`, of the self-intersection
/// of a curve through the point meeting the first chain end (`C`) or the
/// last one (`D`), and the chain of exceptional self-intersections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDelta {
    #[serde(with = "rational_string")]
    pub d_k2: Rational64,
    #[serde(with = "rational_string")]
    pub d_c2: Rational64,
    #[serde(with = "rational_string")]
    pub d_d2: Rational64,
    pub chain: Vec<i64>,
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Resolution data for the four supported singularity types.
pub fn table1_delta(t: SingularityType) -> Result<ResolutionDelta, QuotientError> {
    let (d_k2, d_c2, d_d2, chain) = match (t.m, t.q) {
        (2, 1) => (r(0, 1), r(-1, 2), r(-1, 2), vec![-2]),
        (3, 1) => (r(-1, 3), r(-1, 3), r(-1, 3), vec![-3]),
        (3, 2) => (r(0, 1), r(-2, 3), r(-2, 3), vec![-2, -2]),
        (5, 2) => (r(-2, 5), r(-2, 5), r(-3, 5), vec![-3, -2]),
        (m, q) => return Err(QuotientError::UnsupportedSingularity { m, q }),
    };
    Ok(ResolutionDelta {
        d_k2,
        d_c2,
        d_d2,
        chain,
    })
}

/// The supported singularity types, in table order.
pub fn supported_types() -> [SingularityType; 4] {
    [(2, 1), (3, 1), (3, 2), (5, 2)].map(|(m, q)| SingularityType { m, q })
}

/// `K²` of a degree-`n` quotient whose canonical class pulls back to
/// `c·K_X`.
pub fn hurwitz_k2(n: i64, c: i64, base_k2: Rational64) -> Rational64 {
    Rational64::from_integer(c * c) * base_k2 / Rational64::from_integer(n)
}

/// `K²` after contracting `contracted_count` disjoint (−1)-curves.
pub fn post_contraction_degree(resolved_k2: Rational64, contracted_count: i64) -> Rational64 {
    resolved_k2 + Rational64::from_integer(contracted_count)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    C,
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityEntry {
    #[serde(flatten)]
    pub kind: SingularityType,
    #[serde(default = "one")]
    pub multiplicity: u32,
}

fn one() -> u32 {
    1
}

/// A curve passing through `count` of the points listed at `singularity`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub singularity: usize,
    pub role: Role,
    #[serde(default = "one")]
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackedCurve {
    pub name: String,
    /// Self-intersection on the singular quotient.
    #[serde(with = "rational_string")]
    pub self_intersection: Rational64,
    #[serde(default)]
    pub incidences: Vec<Incidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(with = "rational_string")]
    pub resolved_k2: Rational64,
    #[serde(default, with = "rational_string::vec")]
    pub curve_self_intersections: Vec<Rational64>,
    #[serde(
        default,
        with = "rational_string::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub endpoint: Option<Rational64>,
}

/// Data needed to follow `K²` through quotient, resolution and contraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientScenario {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub group_order: i64,
    pub pullback_factor: i64,
    #[serde(with = "rational_string")]
    pub base_k2: Rational64,
    #[serde(default)]
    pub singularities: Vec<SingularityEntry>,
    #[serde(default)]
    pub tracked_curves: Vec<TrackedCurve>,
    /// Number of (−1)-curves contracted after resolving.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contracted_count: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioOutcome {
    #[serde(with = "rational_string")]
    pub quotient_k2: Rational64,
    #[serde(with = "rational_string")]
    pub resolved_k2: Rational64,
    #[serde(with = "rational_string::vec")]
    pub curve_self_intersections: Vec<Rational64>,
    #[serde(
        with = "rational_string::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub endpoint: Option<Rational64>,
}

impl QuotientScenario {
    pub fn validate(&self) -> Result<(), QuotientError> {
        let bad = |m: String| {
            Err(QuotientError::InvalidScenario(format!(
                "{}: {m}",
                self.name
            )))
        };
        if self.group_order < 2 {
            return bad(format!(
                "group_order must be at least 2, got {}",
                self.group_order
            ));
        }
        if self.pullback_factor < 1 {
            return bad(format!(
                "pullback_factor must be positive, got {}",
                self.pullback_factor
            ));
        }
        for curve in &self.tracked_curves {
            let mut used: BTreeMap<usize, u32> = BTreeMap::new();
            for inc in &curve.incidences {
                let Some(entry) = self.singularities.get(inc.singularity) else {
                    return bad(format!(
                        "curve {} refers to missing singularity {}",
                        curve.name, inc.singularity
                    ));
                };
                let total = used.entry(inc.singularity).or_default();
                *total += inc.count;
                if *total > entry.multiplicity {
                    return bad(format!(
                        "curve {} passes through more points of type {} than exist",
                        curve.name, entry.kind
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Resolved `K²` and the self-intersections of the tracked curves after
/// resolution.
pub fn evaluate_scenario(s: &QuotientScenario) -> Result<ScenarioOutcome, QuotientError> {
    s.validate()?;
    let quotient_k2 = hurwitz_k2(s.group_order, s.pullback_factor, s.base_k2);
    let mut resolved_k2 = quotient_k2;
    let mut deltas = Vec::with_capacity(s.singularities.len());
    for e in &s.singularities {
        let d = table1_delta(e.kind)?;
        resolved_k2 += d.d_k2 * Rational64::from_integer(e.multiplicity as i64);
        deltas.push(d);
    }
    let curve_self_intersections = s
        .tracked_curves
        .iter()
        .map(|c| {
            c.incidences.iter().fold(c.self_intersection, |acc, inc| {
                let d = &deltas[inc.singularity];
                let step = match inc.role {
                    Role::C => d.d_c2,
                    Role::D => d.d_d2,
                };
                acc + step * Rational64::from_integer(inc.count as i64)
            })
        })
        .collect();
    let endpoint = s
        .contracted_count
        .map(|k| post_contraction_degree(resolved_k2, k));
    Ok(ScenarioOutcome {
        quotient_k2,
        resolved_k2,
        curve_self_intersections,
        endpoint,
    })
}

/// Differences between an outcome and the scenario's recorded expectations.
pub fn check_expected(s: &QuotientScenario, out: &ScenarioOutcome) -> Vec<String> {
    let mut problems = Vec::new();
    let Some(exp) = &s.expected else {
        return problems;
    };
    if exp.resolved_k2 != out.resolved_k2 {
        problems.push(format!(
            "{}: resolved K^2 {} != expected {}",
            s.name, out.resolved_k2, exp.resolved_k2
        ));
    }
    if !exp.curve_self_intersections.is_empty()
        && exp.curve_self_intersections != out.curve_self_intersections
    {
        problems.push(format!(
            "{}: curve self-intersections {:?} != expected {:?}",
            s.name,
            out.curve_self_intersections
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>(),
            exp.curve_self_intersections
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
        ));
    }
    if exp.endpoint.is_some() && exp.endpoint != out.endpoint {
        problems.push(format!(
            "{}: endpoint {:?} != expected {:?}",
            s.name, out.endpoint, exp.endpoint
        ));
    }
    problems
}

/// A scenario file: one or more scenarios.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub scenarios: Vec<QuotientScenario>,
}

pub fn parse_scenarios(text: &str) -> Result<Vec<QuotientScenario>, QuotientError> {
    let file: ScenarioFile = serde_json::from_str(text)?;
    for s in &file.scenarios {
        s.validate()?;
    }
    Ok(file.scenarios)
}

pub fn load_scenarios(path: &Path) -> Result<Vec<QuotientScenario>, QuotientError> {
    let text = std::fs::read_to_string(path).map_err(|source| QuotientError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenarios(&text)
}

/// Whether the chain of exceptional curves has a negative definite
/// intersection matrix (leading principal minors alternate in sign).
pub fn chain_is_negative_definite(chain: &[i64]) -> bool {
    // tridiagonal recurrence for the minors of -M
    let (mut prev, mut cur) = (0i64, 1i64);
    for &b in chain {
        (prev, cur) = (cur, -b * cur - prev);
        if cur <= 0 {
            return false;
        }
    }
    !chain.is_empty()
}
