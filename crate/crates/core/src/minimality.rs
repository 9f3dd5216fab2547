//! Invariant Picard ranks, line orbits and the equivariant contraction
//! search behind the rationality verdicts.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    line_classes, ContractionState, DivisorClass, LineLabel, LineSet, LINE_COUNT, RANK,
};
use crate::weyl::{
    centralizer, named_element, normalizer, subgroups_up_to_conjugacy, weyl_group, Isometry,
    Subgroup, SubgroupRecord, WeylError,
};

/// Rule names cited by verdicts.
pub mod rules {
    pub const RANK_ONE_MINIMAL: &str =
        "a del Pezzo surface with invariant Picard rank 1 is minimal";
    pub const ISKOVSKIKH: &str =
        "Iskovskikh criterion: a minimal rational surface is rational iff it has a point and K^2 >= 5";
    pub const CONIC_BUNDLE_CAVEAT: &str =
        "terminal model has invariant rank 2; read as a minimal conic bundle of degree <= 4";
    pub const NO_POINT: &str = "rationality needs a rational point; none was assumed";
    pub const RANK_PLUS_DEGREE: &str =
        "invariant rank plus K^2 at least 7 gives a minimal model with K^2 >= 6";
    pub const GALOIS_LIST: &str =
        "a rational cubic with non-rational quotient by the order-3 group has Galois image in one of five classes";
    pub const FIXED_POINTS_C2: &str =
        "fixed-point cubic with Galois group C2 on a minimal surface gives a minimal degree-4 model of the quotient";
    pub const LOWER_BOUND: &str =
        "Galois image only known up to a subgroup; rational verdicts need the full image";
}

#[derive(Debug, Error)]
pub enum MinimalityError {
    #[error("Galois element {galois} does not commute with group element {geometric}")]
    CommutationViolation { galois: String, geometric: String },
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// Exact rank of an integer matrix.
pub(crate) fn rank(rows: &[[i64; RANK]]) -> usize {
    let mut m: Vec<[i128; RANK]> = rows.iter().map(|r| r.map(i128::from)).collect();
    let mut rank = 0;
    for col in 0..RANK {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank];
        for i in 0..m.len() {
            if i == rank || m[i][col] == 0 {
                continue;
            }
            let f = m[i][col];
            let mut g = 0i128;
            for k in 0..RANK {
                m[i][k] = m[i][k] * pivot[col] - f * pivot[k];
                g = gcd(g, m[i][k]);
            }
            if g > 1 {
                for k in 0..RANK {
                    m[i][k] /= g;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn fixed_space_rows(group: &Subgroup) -> Vec<[i64; RANK]> {
    let mut rows = Vec::new();
    for g in group.checking_set() {
        for (i, row) in g.matrix().iter().enumerate() {
            let mut r = *row;
            r[i] -= 1;
            rows.push(r);
        }
    }
    rows
}

/// Dimension of the subspace of `Pic ⊗ Q` fixed by every element of `group`.
pub fn invariant_rank(group: &Subgroup) -> usize {
    RANK - rank(&fixed_space_rows(group))
}

/// Invariant rank of the Picard lattice of a blow-down: fixed vectors
/// orthogonal to every contracted line.
pub fn invariant_rank_after(group: &Subgroup, state: &ContractionState) -> usize {
    let mut rows = fixed_space_rows(group);
    for c in state.contracted_classes() {
        let mut r = *c.coeffs();
        // pairing with c is the row diag(1,-1,...,-1) c
        for x in r.iter_mut().skip(1) {
            *x = -*x;
        }
        rows.push(r);
    }
    RANK - rank(&rows)
}

/// One orbit of lines, sorted, with whether its members are pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineOrbit {
    pub lines: Vec<LineLabel>,
    pub disjoint: bool,
}

impl LineOrbit {
    pub fn set(&self) -> LineSet {
        self.lines.iter().copied().collect()
    }
}

/// Orbits of `group` on the 27 lines, ordered by their smallest label.
pub fn line_orbits(group: &Subgroup) -> Vec<LineOrbit> {
    let mut parent: Vec<usize> = (0..LINE_COUNT).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for g in group.checking_set() {
        for i in 0..LINE_COUNT {
            let j = g.perm().0[i] as usize;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut buckets: HashMap<usize, Vec<LineLabel>> = HashMap::new();
    for i in 0..LINE_COUNT {
        let root = find(&mut parent, i);
        buckets
            .entry(root)
            .or_default()
            .push(LineLabel::from_index(i));
    }
    let classes = line_classes();
    let mut orbits: Vec<LineOrbit> = buckets
        .into_values()
        .map(|mut lines| {
            lines.sort();
            let disjoint = lines.iter().enumerate().all(|(k, a)| {
                lines[k + 1..]
                    .iter()
                    .all(|b| classes[a.index()].pairing(&classes[b.index()]) == 0)
            });
            LineOrbit { lines, disjoint }
        })
        .collect();
    orbits.sort_by(|a, b| a.lines.cmp(&b.lines));
    orbits
}

/// Orbits of surviving lines that can be contracted together. Larger
/// invariant sets are unions of these contracted one after another.
pub fn contractible_sets(group: &Subgroup, state: &ContractionState) -> Vec<Vec<LineLabel>> {
    contractible_from(&line_orbits(group), state)
}

fn contractible_from(orbits: &[LineOrbit], state: &ContractionState) -> Vec<Vec<LineLabel>> {
    orbits
        .iter()
        .filter(|o| o.disjoint && o.set().is_subset(state.survivors()))
        .map(|o| o.lines.clone())
        .collect()
}

/// Outcome of the exhaustive contraction search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reach {
    pub degree: i64,
    /// Orbits contracted in order.
    pub steps: Vec<Vec<LineLabel>>,
    pub terminal: ContractionState,
}

/// Largest `K^2` reachable by contracting invariant sets of disjoint lines,
/// with the lexicographically least witness among the best sequences.
pub fn max_reachable_degree(group: &Subgroup) -> Reach {
    let orbits = line_orbits(group);
    let mut memo: HashMap<LineSet, (i64, Vec<Vec<LineLabel>>)> = HashMap::new();
    let (degree, steps) = search(&orbits, &ContractionState::initial(), &mut memo);
    let mut terminal = ContractionState::initial();
    for s in &steps {
        let classes: Vec<DivisorClass> = s.iter().map(|l| l.class()).collect();
        terminal = terminal
            .contract(&classes)
            .expect("witness steps are contractible");
    }
    Reach {
        degree,
        steps,
        terminal,
    }
}

fn search(
    orbits: &[LineOrbit],
    state: &ContractionState,
    memo: &mut HashMap<LineSet, (i64, Vec<Vec<LineLabel>>)>,
) -> (i64, Vec<Vec<LineLabel>>) {
    if let Some(hit) = memo.get(&state.contracted()) {
        return hit.clone();
    }
    let mut best: Option<(i64, Vec<Vec<LineLabel>>)> = None;
    for orbit in contractible_from(orbits, state) {
        let classes: Vec<DivisorClass> = orbit.iter().map(|l| l.class()).collect();
        let next = state.contract(&classes).expect("disjoint surviving orbit");
        let (d, rest) = search(orbits, &next, memo);
        let mut seq = vec![orbit];
        seq.extend(rest);
        let better = match &best {
            None => true,
            Some((bd, bseq)) => d > *bd || (d == *bd && seq < *bseq),
        };
        if better {
            best = Some((d, seq));
        }
    }
    let best = best.unwrap_or((state.degree(), Vec::new()));
    memo.insert(state.contracted(), best.clone());
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rationality {
    Rational,
    NotRational,
    Unknown,
}

impl fmt::Display for Rationality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rationality::Rational => "rational",
            Rationality::NotRational => "not rational",
            Rationality::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictField {
    GMinimal,
    XRational,
    QuotientRational,
}

impl fmt::Display for VerdictField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictField::GMinimal => "G-minimal",
            VerdictField::XRational => "X",
            VerdictField::QuotientRational => "X/G",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub field: VerdictField,
    pub rule: String,
    pub detail: String,
}

/// Galois image together with the geometric group it must commute with.
#[derive(Debug, Clone)]
pub struct GaloisScenario {
    geometric_group: Subgroup,
    galois_image: Subgroup,
    point_assumption: bool,
}

/// `⟨ab⟩`, the order-3 group acting without fixed lines.
pub fn default_geometric_group() -> Subgroup {
    let ab = named("a").compose(&named("b"));
    Subgroup::generate(&[ab]).expect("cyclic of order 3")
}

fn named(n: &str) -> Isometry {
    named_element(n).expect("built-in name")
}

impl GaloisScenario {
    pub fn new(
        geometric_group: Subgroup,
        galois_image: Subgroup,
        point_assumption: bool,
    ) -> Result<Self, MinimalityError> {
        for g in galois_image.elements() {
            for h in geometric_group.elements() {
                if !g.commutes_with(h) {
                    return Err(MinimalityError::CommutationViolation {
                        galois: g.perm().to_string(),
                        geometric: h.perm().to_string(),
                    });
                }
            }
        }
        Ok(GaloisScenario {
            geometric_group,
            galois_image,
            point_assumption,
        })
    }

    /// `G = ⟨ab⟩` with a rational point assumed.
    pub fn standard(galois_image: Subgroup) -> Result<Self, MinimalityError> {
        Self::new(default_geometric_group(), galois_image, true)
    }

    pub fn geometric_group(&self) -> &Subgroup {
        &self.geometric_group
    }

    pub fn galois_image(&self) -> &Subgroup {
        &self.galois_image
    }

    pub fn point_assumption(&self) -> bool {
        self.point_assumption
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub g_minimal: bool,
    pub x_rational: Rationality,
    pub quotient_rational: Rationality,
    /// Γ is conjugate to one of the five classes allowed for a
    /// non-rational quotient.
    pub galcrit_candidate: bool,
    pub galois_image: SubgroupRecord,
    pub invariant_rank: usize,
    pub invariant_rank_with_group: usize,
    pub max_degree: i64,
    pub witness: Vec<Vec<LineLabel>>,
    pub justification: Vec<Citation>,
}

impl Verdict {
    pub fn cite(&mut self, field: VerdictField, rule: &str, detail: impl Into<String>) {
        self.justification.push(Citation {
            field,
            rule: rule.to_string(),
            detail: detail.into(),
        });
    }

    fn cited(&self, field: VerdictField) -> bool {
        self.justification.iter().any(|c| c.field == field)
    }

    /// Every decided field carries a citation.
    pub fn is_justified(&self) -> bool {
        self.cited(VerdictField::GMinimal)
            && (self.x_rational == Rationality::Unknown || self.cited(VerdictField::XRational))
            && (self.quotient_rational == Rationality::Unknown
                || self.cited(VerdictField::QuotientRational))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Galois image order: {}", self.galois_image.order)?;
        writeln!(
            f,
            "invariant rank: {} (with G: {})",
            self.invariant_rank, self.invariant_rank_with_group
        )?;
        writeln!(
            f,
            "G-minimal: {}",
            if self.g_minimal { "yes" } else { "no" }
        )?;
        let steps: Vec<String> = self
            .witness
            .iter()
            .map(|s| {
                format!(
                    "{{{}}}",
                    s.iter()
                        .map(|l| l.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        writeln!(
            f,
            "max reachable degree: {} via [{}]",
            self.max_degree,
            steps.join(", ")
        )?;
        writeln!(f, "X: {}", self.x_rational)?;
        writeln!(f, "X/G: {}", self.quotient_rational)?;
        if self.galcrit_candidate {
            writeln!(f, "Galois image lies in the five-class list")?;
        }
        for c in &self.justification {
            if c.detail.is_empty() {
                writeln!(f, "  [{}] {}", c.field, c.rule)?;
            } else {
                writeln!(f, "  [{}] {}: {}", c.field, c.rule, c.detail)?;
            }
        }
        Ok(())
    }
}

/// Normalizer of `⟨ab⟩` in W(E6).
pub fn standard_normalizer() -> &'static Subgroup {
    static N: std::sync::OnceLock<Subgroup> = std::sync::OnceLock::new();
    N.get_or_init(|| normalizer(weyl_group(), &default_geometric_group()))
}

/// Centralizer of `⟨ab⟩` in W(E6).
pub fn standard_centralizer() -> &'static Subgroup {
    static H: std::sync::OnceLock<Subgroup> = std::sync::OnceLock::new();
    H.get_or_init(|| centralizer(weyl_group(), &default_geometric_group()))
}

/// Some `w` with `w G w⁻¹ = ⟨ab⟩`.
fn standardizing_element(group: &Subgroup) -> Option<Isometry> {
    let target = default_geometric_group();
    if group.order() != target.order() {
        return None;
    }
    let key = target.key();
    weyl_group()
        .elements()
        .iter()
        .find(|w| group.conjugate_by(w).key() == key)
        .copied()
}

fn words(gens: &[&str]) -> Subgroup {
    let elems: Vec<Isometry> = gens
        .iter()
        .map(|w| crate::weyl::spec::parse_word(w, 0).expect("built-in word"))
        .collect();
    Subgroup::generate(&elems).expect("subgroup of the centralizer")
}

/// Generator words of the ten Galois-image classes for `⟨ab⟩`.
pub const GALCLASS_WORDS: [&[&str]; 10] = [
    &["cs"],
    &["c", "s"],
    &["r"],
    &["ar"],
    &["a", "r"],
    &["cs", "r"],
    &["r", "s"],
    &["a", "r", "s"],
    &["r", "c"],
    &["r", "c", "s"],
];

/// Generator words of the five classes left when X is rational.
pub const GALCRIT_WORDS: [&[&str]; 5] =
    [&["r"], &["ar"], &["a", "r"], &["r", "s"], &["a", "r", "s"]];

/// The ten reference groups built from [`GALCLASS_WORDS`].
pub fn galclass_reference() -> Vec<Subgroup> {
    GALCLASS_WORDS.iter().map(|g| words(g)).collect()
}

/// The five reference groups built from [`GALCRIT_WORDS`].
pub fn galcrit_reference() -> Vec<Subgroup> {
    GALCRIT_WORDS.iter().map(|g| words(g)).collect()
}

/// Conjugacy under the normalizer of `⟨ab⟩`.
pub fn conjugate_under_normalizer(x: &Subgroup, y: &Subgroup) -> bool {
    x.order() == y.order() && {
        let n = standard_normalizer();
        x.conjugacy_key(n) == y.conjugacy_key(n)
    }
}

/// Human-readable name of Γ's class, such as `⟨a,r,s⟩`, if it is one of the ten.
pub fn galclass_name(gamma: &Subgroup) -> Option<String> {
    galclass_reference()
        .iter()
        .position(|c| conjugate_under_normalizer(c, gamma))
        .map(|i| format!("⟨{}⟩", GALCLASS_WORDS[i].join(",")))
}

/// Verdicts about `X` and `X/G` from the Galois image alone.
pub fn analyze(scenario: &GaloisScenario) -> Result<Verdict, MinimalityError> {
    let gamma = &scenario.galois_image;
    let joint = scenario.geometric_group.join(gamma)?;
    let rank_gamma = invariant_rank(gamma);
    let rank_joint = invariant_rank(&joint);
    let reach = max_reachable_degree(gamma);
    let mut v = Verdict {
        g_minimal: rank_joint == 1,
        x_rational: Rationality::Unknown,
        quotient_rational: Rationality::Unknown,
        galcrit_candidate: false,
        galois_image: SubgroupRecord::from(gamma),
        invariant_rank: rank_gamma,
        invariant_rank_with_group: rank_joint,
        max_degree: reach.degree,
        witness: reach.steps.clone(),
        justification: Vec::new(),
    };
    if v.g_minimal {
        v.cite(
            VerdictField::GMinimal,
            rules::RANK_ONE_MINIMAL,
            "invariant rank of ⟨G, Γ⟩ is 1",
        );
    } else {
        v.cite(
            VerdictField::GMinimal,
            rules::RANK_ONE_MINIMAL,
            format!("invariant rank of ⟨G, Γ⟩ is {rank_joint}; not shown minimal"),
        );
    }

    if !scenario.point_assumption {
        v.cite(
            VerdictField::XRational,
            rules::NO_POINT,
            "X(k) not assumed non-empty",
        );
    } else if reach.degree >= 5 {
        v.x_rational = Rationality::Rational;
        v.cite(
            VerdictField::XRational,
            rules::ISKOVSKIKH,
            format!("contraction reaches K^2 = {}", reach.degree),
        );
    } else {
        let terminal_rank = invariant_rank_after(gamma, &reach.terminal);
        if terminal_rank <= 2 {
            v.x_rational = Rationality::NotRational;
            v.cite(
                VerdictField::XRational,
                rules::ISKOVSKIKH,
                format!("every terminal model has K^2 <= {}", reach.degree),
            );
            if terminal_rank == 2 {
                v.cite(VerdictField::XRational, rules::CONIC_BUNDLE_CAVEAT, "");
            }
        }
    }

    if let Some(w) = standardizing_element(&scenario.geometric_group) {
        let std_gamma = gamma.conjugate_by(&w);
        v.galcrit_candidate = galcrit_reference()
            .iter()
            .any(|c| conjugate_under_normalizer(c, &std_gamma));
        if v.x_rational == Rationality::Rational && !v.galcrit_candidate {
            v.quotient_rational = Rationality::Rational;
            v.cite(
                VerdictField::QuotientRational,
                rules::GALOIS_LIST,
                "X is rational and Γ is outside the five classes",
            );
        }
    }
    Ok(v)
}

/// Subgroups Γ of the centralizer of `⟨ab⟩`, up to conjugacy by its
/// normalizer, with `ρ^Γ > 1` and `ρ^⟨Γ, ab⟩ = 1`.
pub fn galclass_enumeration() -> Result<Vec<Subgroup>, MinimalityError> {
    let g = default_geometric_group();
    let reps = subgroups_up_to_conjugacy(standard_centralizer(), standard_normalizer())?;
    let mut out = Vec::new();
    for gamma in reps {
        if invariant_rank(&gamma) > 1 && invariant_rank(&gamma.join(&g)?) == 1 {
            out.push(gamma);
        }
    }
    Ok(out)
}

/// Classes for which X is rational.
pub fn galcrit_filter(classes: &[Subgroup]) -> Vec<Subgroup> {
    classes
        .iter()
        .filter(|c| max_reachable_degree(c).degree >= 5)
        .cloned()
        .collect()
}
