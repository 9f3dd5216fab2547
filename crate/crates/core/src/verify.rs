//! The verification suite: a fixed manifest of checks over every module,
//! producing a deterministic report.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::field::{
    cubic_galois_group, is_cube, BinaryCubic, CubicPoly, FieldElement, GaloisClass,
};
use crate::lattice::{intersection_table, ContractionState, LineLabel, LINE_COUNT};
use crate::minimality::{
    default_geometric_group, galclass_enumeration, galcrit_filter, invariant_rank,
    max_reachable_degree, Rationality,
};
use crate::quotient::{evaluate_scenario, load_scenarios, ScenarioOutcome};
use crate::surface::{
    classify, family_cubic, verify_eckardt_identity, verify_eckardt_identity_with_coefficient,
    SurfaceSpec,
};
use crate::weyl::{
    all_subgroups, centralizer, conjugacy_classes, named_element, normal_subgroup_witness,
    pointwise_line_fixator, s6_embed, s6_from_cycles, s6_image, subgroup_from_spec, weyl_group,
    Isometry, Subgroup,
};

/// Check groups selectable with `--only`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Module {
    Lattice,
    Weyl,
    Minimality,
    Quotient,
    Field,
    Surface,
}

impl Module {
    pub const ALL: [Module; 6] = [
        Module::Lattice,
        Module::Weyl,
        Module::Minimality,
        Module::Quotient,
        Module::Field,
        Module::Surface,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Module::Lattice => "lattice",
            Module::Weyl => "weyl",
            Module::Minimality => "minimality",
            Module::Quotient => "quotient",
            Module::Field => "field",
            Module::Surface => "surface",
        }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Module {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Module::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown module {s:?}; expected one of lattice, weyl, minimality, quotient, field, surface"))
    }
}

/// Where checks find the shipped data files.
#[derive(Debug, Clone)]
pub struct Context {
    pub data_dir: PathBuf,
}

impl Context {
    pub fn new(data_dir: impl Into<PathBuf>) -> Self {
        Context {
            data_dir: data_dir.into(),
        }
    }

    fn path(&self, rel: &str) -> PathBuf {
        self.data_dir.join(rel)
    }
}

/// The `data/` directory of the source tree.
pub fn default_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

struct Outcome {
    expected: String,
    computed: String,
    pass: bool,
}

fn same<T: fmt::Debug + PartialEq>(expected: T, computed: T) -> Outcome {
    Outcome {
        expected: format!("{expected:?}"),
        computed: format!("{computed:?}"),
        pass: expected == computed,
    }
}

type CheckFn = fn(&Context) -> Result<Outcome, String>;

struct Check {
    module: Module,
    name: &'static str,
    topic: &'static str,
    run: CheckFn,
}

const MANIFEST: &[Check] = &[
    Check {
        module: Module::Lattice,
        name: "lattice.pairing_table",
        topic: "intersection numbers of the 27 lines",
        run: pairing_table,
    },
    Check {
        module: Module::Lattice,
        name: "lattice.contract_e1",
        topic: "lines surviving one contraction",
        run: contract_e1,
    },
    Check {
        module: Module::Lattice,
        name: "lattice.contract_six",
        topic: "blow-down to the plane",
        run: contract_six,
    },
    Check {
        module: Module::Weyl,
        name: "weyl.order",
        topic: "order of W(E6)",
        run: weyl_order,
    },
    Check {
        module: Module::Weyl,
        name: "weyl.centralizer",
        topic: "centralizer of the order-3 group",
        run: weyl_centralizer,
    },
    Check {
        module: Module::Weyl,
        name: "weyl.s6_centralizer",
        topic: "centralizer in the S6 image",
        run: s6_centralizer,
    },
    Check {
        module: Module::Weyl,
        name: "weyl.fixator",
        topic: "fixator of the nine mixed lines",
        run: fixator,
    },
    Check {
        module: Module::Weyl,
        name: "weyl.order3_classes",
        topic: "order-3 conjugacy classes",
        run: order3_classes,
    },
    Check {
        module: Module::Weyl,
        name: "weyl.s5_subgroups",
        topic: "normal subgroups of subgroups of S5",
        run: s5_subgroups,
    },
    Check {
        module: Module::Minimality,
        name: "minimality.invariant_ranks",
        topic: "invariant Picard ranks",
        run: invariant_ranks,
    },
    Check {
        module: Module::Minimality,
        name: "minimality.galois_classes",
        topic: "Galois image classification",
        run: galois_classes,
    },
    Check {
        module: Module::Minimality,
        name: "minimality.max_degree",
        topic: "equivariant contraction search",
        run: max_degree,
    },
    Check {
        module: Module::Quotient,
        name: "quotient.c3_no_fixed_lines",
        topic: "order-3 quotient",
        run: scenario_c35,
    },
    Check {
        module: Module::Quotient,
        name: "quotient.klein_four",
        topic: "Klein four quotient",
        run: scenario_v4,
    },
    Check {
        module: Module::Quotient,
        name: "quotient.a5",
        topic: "A5 quotient",
        run: scenario_a5,
    },
    Check {
        module: Module::Quotient,
        name: "quotient.cyclic",
        topic: "cyclic order-3 quotients",
        run: scenario_cyclic,
    },
    Check {
        module: Module::Field,
        name: "field.galois_examples",
        topic: "Galois groups of cubics",
        run: galois_examples,
    },
    Check {
        module: Module::Field,
        name: "field.cubes",
        topic: "cube roots in Q(ω)",
        run: cubes,
    },
    Check {
        module: Module::Surface,
        name: "surface.family_cubic",
        topic: "family cubic of the normal form",
        run: surface_family,
    },
    Check {
        module: Module::Surface,
        name: "surface.eckardt_identity",
        topic: "tangent plane at an Eckardt point",
        run: surface_eckardt,
    },
    Check {
        module: Module::Surface,
        name: "surface.verdicts",
        topic: "rationality of X and X/G",
        run: surface_verdicts,
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub module: Module,
    pub topic: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "{status}  {:width$}  {}", c.name, c.topic)?;
            if !c.pass {
                writeln!(f, "      expected: {}", c.expected)?;
                writeln!(f, "      computed: {}", c.computed)?;
            }
        }
        write!(
            f,
            "{} checks, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        )
    }
}

/// Names of the checks in manifest order.
pub fn check_names(only: &[Module]) -> Vec<&'static str> {
    selected(only).map(|c| c.name).collect()
}

fn selected(only: &[Module]) -> impl Iterator<Item = &'static Check> + '_ {
    MANIFEST
        .iter()
        .filter(move |c| only.is_empty() || only.contains(&c.module))
}

/// Runs the selected checks (all when `only` is empty) concurrently and
/// reports them in manifest order.
pub fn run(ctx: &Context, only: &[Module]) -> Report {
    let checks: Vec<&Check> = selected(only).collect();
    let outcomes: Vec<Result<Outcome, String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = checks
            .iter()
            .map(|c| scope.spawn(move || (c.run)(ctx)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err("check panicked".to_string()))
            })
            .collect()
    });
    let results: Vec<CheckResult> = checks
        .iter()
        .zip(outcomes)
        .map(|(c, o)| {
            let o = o.unwrap_or_else(|e| Outcome {
                expected: "no error".into(),
                computed: e,
                pass: false,
            });
            CheckResult {
                name: c.name.to_string(),
                module: c.module,
                topic: c.topic.to_string(),
                expected: o.expected,
                computed: o.computed,
                pass: o.pass,
            }
        })
        .collect();
    let passed = results.iter().filter(|r| r.pass).count();
    let summary = Summary {
        total: results.len(),
        passed,
        failed: results.len() - passed,
    };
    Report {
        checks: results,
        summary,
    }
}

fn named(n: &str) -> Isometry {
    named_element(n).expect("built-in name")
}

fn group(words: &str) -> Result<Subgroup, String> {
    subgroup_from_spec(words).map_err(|e| e.to_string())
}

fn s6(cycles: &str) -> Isometry {
    s6_embed(&s6_from_cycles(cycles).expect("valid cycles")).expect("permutation of six points")
}

/// Intersection numbers from the index rules for `E_i`, `L_ij`, `Q_i`.
pub fn pairing_by_rule(a: LineLabel, b: LineLabel) -> i64 {
    use LineLabel::{E, L, Q};
    let meets = |x: bool| i64::from(x);
    match (a, b) {
        (E(i), E(j)) | (Q(i), Q(j)) => -meets(i == j),
        (E(i), L(j, k)) | (L(j, k), E(i)) | (Q(i), L(j, k)) | (L(j, k), Q(i)) => {
            meets(i == j || i == k)
        }
        (E(i), Q(j)) | (Q(j), E(i)) => meets(i != j),
        (L(i, j), L(k, l)) => {
            let shared = [i == k, i == l, j == k, j == l]
                .iter()
                .filter(|&&x| x)
                .count();
            match shared {
                2 => -1,
                1 => 0,
                _ => 1,
            }
        }
    }
}

fn pairing_table(_: &Context) -> Result<Outcome, String> {
    let table = intersection_table();
    let labels = LineLabel::all();
    let mismatches = (0..LINE_COUNT)
        .flat_map(|i| (0..LINE_COUNT).map(move |j| (i, j)))
        .filter(|&(i, j)| table[i][j] != pairing_by_rule(labels[i], labels[j]))
        .count();
    Ok(same(0, mismatches))
}

fn contract_e1(_: &Context) -> Result<Outcome, String> {
    let state = ContractionState::initial()
        .contract(&[LineLabel::E(1).class()])
        .map_err(|e| e.to_string())?;
    Ok(same(16, state.survivors().len()))
}

fn contract_six(_: &Context) -> Result<Outcome, String> {
    let es: Vec<_> = (1..=6).map(|i| LineLabel::E(i).class()).collect();
    let state = ContractionState::initial()
        .contract(&es)
        .map_err(|e| e.to_string())?;
    Ok(same((9, 0), (state.degree(), state.survivors().len())))
}

fn weyl_order(_: &Context) -> Result<Outcome, String> {
    Ok(same(51840, weyl_group().order()))
}

fn weyl_centralizer(_: &Context) -> Result<Outcome, String> {
    let h = centralizer(weyl_group(), &default_geometric_group());
    let left = group("a b cs")?;
    let right = group("r s")?;
    let product = left.join(&right).map_err(|e| e.to_string())?;
    Ok(same(
        (108, true, true, true),
        (
            h.order(),
            h == product,
            left.commutes_with(&right),
            left.intersection(&right).is_trivial(),
        ),
    ))
}

fn s6_centralizer(_: &Context) -> Result<Outcome, String> {
    let g = default_geometric_group();
    let h = centralizer(s6_image(), &g);
    let ab = named("a").compose(&named("b"));
    let class = conjugacy_classes(s6_image())
        .into_iter()
        .find(|c| c.contains(&ab))
        .map_or(0, |c| c.len());
    // 6!/(3!·3!·2)·4
    let counted = 720 / (6 * 6 * 2) * 4;
    Ok(same(
        (18, true, counted),
        (h.order(), h == group("a b c")?, class),
    ))
}

fn fixator(_: &Context) -> Result<Outcome, String> {
    use LineLabel::{E, L, Q};
    let mixed: Vec<LineLabel> = (1..=3u8)
        .flat_map(|i| (4..=6u8).map(move |j| L(i, j)))
        .collect();
    let fix = pointwise_line_fixator(weyl_group(), &mixed);
    let (r, s) = (named("r"), named("s"));
    let r2 = r.compose(&r);
    let other = |i: u8, lo: u8| -> LineLabel {
        let rest: Vec<u8> = (lo..lo + 3).filter(|&k| k != i).collect();
        LineLabel::l(rest[0], rest[1])
    };
    let mut images_ok = true;
    for i in 1..=6u8 {
        images_ok &= s.image(E(i)) == Q(i) && s.image(Q(i)) == E(i);
        if i <= 3 {
            images_ok &= r.image(E(i)) == Q(i) && r2.image(E(i)) == other(i, 1);
        } else {
            images_ok &= r2.image(E(i)) == Q(i) && r.image(E(i)) == other(i, 4);
        }
    }
    for l in LineLabel::all().into_iter().filter(|l| matches!(l, L(..))) {
        images_ok &= s.image(l) == l;
    }
    Ok(same(
        (6, true, true),
        (fix.order(), fix == group("r s")?, images_ok),
    ))
}

fn order3_classes(_: &Context) -> Result<Outcome, String> {
    let ab = named("a").compose(&named("b"));
    let classes: Vec<Vec<Isometry>> = conjugacy_classes(weyl_group())
        .into_iter()
        .filter(|c| c[0].order() == 3)
        .collect();
    let rank = |g: &Isometry| {
        Subgroup::generate(&[*g])
            .map(|s| invariant_rank(&s))
            .map_err(|e| e.to_string())
    };
    let mut other_ranks = Vec::new();
    for c in classes.iter().filter(|c| !c.contains(&ab)) {
        other_ranks.push(rank(&c[0])?);
    }
    let has_rank_one = other_ranks.contains(&1);
    Ok(same(
        (3, 0, 3, true),
        (
            classes.len(),
            ab.fixed_lines().len(),
            rank(&ab)?,
            has_rank_one,
        ),
    ))
}

/// Subgroups of S5 (as permutations of the first five indices) without a
/// normal subgroup conjugate to one of the six listed classes.
pub fn s5_subgroups_without_witness() -> Result<(usize, usize), String> {
    let s5 = Subgroup::generate(&[s6("(12)"), s6("(12345)")]).map_err(|e| e.to_string())?;
    let gen = |cs: &[&str]| Subgroup::generate(&cs.iter().map(|c| s6(c)).collect::<Vec<_>>());
    let candidates = [
        gen(&["(12)"]),
        gen(&["(12)(34)"]),
        gen(&["(123)"]),
        gen(&["(12)(34)", "(13)(24)"]),
        gen(&["(12345)"]),
        gen(&["(123)", "(12345)"]),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .map_err(|e| e.to_string())?;
    let subgroups = all_subgroups(&s5).map_err(|e| e.to_string())?;
    let mut missing = 0;
    for h in subgroups.iter().filter(|h| !h.is_trivial()) {
        if normal_subgroup_witness(h, &s5, &candidates)
            .map_err(|e| e.to_string())?
            .is_none()
        {
            missing += 1;
        }
    }
    Ok((subgroups.len(), missing))
}

fn s5_subgroups(_: &Context) -> Result<Outcome, String> {
    Ok(same((156, 0), s5_subgroups_without_witness()?))
}

fn invariant_ranks(_: &Context) -> Result<Outcome, String> {
    let specs = ["e", "ab", "abcs", "a2b cs", "abr", "a2br"];
    let ranks = specs
        .iter()
        .map(|s| group(s).map(|g| invariant_rank(&g)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(same(vec![7, 3, 1, 1, 1, 1], ranks))
}

fn galois_classes(_: &Context) -> Result<Outcome, String> {
    let classes = galclass_enumeration().map_err(|e| e.to_string())?;
    let crit = galcrit_filter(&classes);
    Ok(same((10, 5), (classes.len(), crit.len())))
}

fn max_degree(_: &Context) -> Result<Outcome, String> {
    let deg = |w: &str| group(w).map(|g| max_reachable_degree(&g));
    let ars = deg("a r s")?;
    let flat: Vec<LineLabel> = ars.steps.concat();
    let witness = [LineLabel::E(4), LineLabel::l(5, 6), LineLabel::Q(4)]
        .iter()
        .all(|l| flat.contains(l));
    Ok(same(
        (9, true, true, 4, 4),
        (
            deg("e")?.degree,
            ars.degree >= 6,
            witness,
            deg("cs")?.degree,
            deg("c r")?.degree,
        ),
    ))
}

fn scenario_outcomes(
    ctx: &Context,
    file: &str,
) -> Result<Vec<(String, ScenarioOutcome, Vec<String>)>, String> {
    let scenarios = load_scenarios(&ctx.path(file)).map_err(|e| e.to_string())?;
    scenarios
        .iter()
        .map(|s| {
            let out = evaluate_scenario(s).map_err(|e| e.to_string())?;
            let problems = crate::quotient::check_expected(s, &out);
            Ok((s.name.clone(), out, problems))
        })
        .collect()
}

fn q(n: i64, d: i64) -> String {
    Rational64::new(n, d).to_string()
}

fn summarize(outcomes: &[(String, ScenarioOutcome, Vec<String>)]) -> (Vec<String>, Vec<String>) {
    let mut lines = Vec::new();
    let mut problems = Vec::new();
    for (name, out, p) in outcomes {
        let curves: Vec<String> = out
            .curve_self_intersections
            .iter()
            .map(|x| x.to_string())
            .collect();
        let endpoint = out.endpoint.map_or("-".to_string(), |e| e.to_string());
        lines.push(format!(
            "{name}: K^2 {} -> {}, curves [{}], endpoint {endpoint}",
            out.quotient_k2,
            out.resolved_k2,
            curves.join(", ")
        ));
        problems.extend(p.iter().cloned());
    }
    (lines, problems)
}

fn scenario_check(ctx: &Context, file: &str, expected: Vec<String>) -> Result<Outcome, String> {
    let outcomes = scenario_outcomes(ctx, file)?;
    let (lines, problems) = summarize(&outcomes);
    let mut o = same(expected, lines);
    if !problems.is_empty() {
        o.pass = false;
        o.computed = format!("{}; {}", o.computed, problems.join("; "));
    }
    Ok(o)
}

fn scenario_c35(ctx: &Context) -> Result<Outcome, String> {
    scenario_check(
        ctx,
        "scenarios/dp3c35.json",
        vec!["dp3c35: K^2 1 -> 1, curves [-1, -1], endpoint 3".to_string()],
    )
}

fn scenario_v4(ctx: &Context) -> Result<Outcome, String> {
    scenario_check(
        ctx,
        "scenarios/dp3v4.json",
        vec!["dp3v4: K^2 3 -> 3, curves [], endpoint 6".to_string()],
    )
}

fn scenario_a5(ctx: &Context) -> Result<Outcome, String> {
    scenario_check(
        ctx,
        "scenarios/dp3a5.json",
        vec![format!(
            "dp3a5: K^2 {} -> 1, curves [-1, -1], endpoint 3",
            q(9, 5)
        )],
    )
}

fn scenario_cyclic(ctx: &Context) -> Result<Outcome, String> {
    scenario_check(
        ctx,
        "scenarios/dp3cyclic.json",
        vec![
            "dp3cyclic-type1: K^2 6 -> 6, curves [], endpoint 6".to_string(),
            "dp3cyclic-type3: K^2 9 -> 9, curves [], endpoint 9".to_string(),
            "dp3cyclic-type4: K^2 1 -> -1, curves [-1, -1, -1, -1, -1, -1, -1, -1, -1], endpoint 8"
                .to_string(),
            format!(
                "dp3cyclic-c3xc3: K^2 {} -> 8, curves [], endpoint 8",
                q(25, 3)
            ),
        ],
    )
}

fn galois_examples(_: &Context) -> Result<Outcome, String> {
    let class = |c: [i64; 4]| {
        CubicPoly::from_ints(c)
            .and_then(|p| cubic_galois_group(&p))
            .map_err(|e| e.to_string())
    };
    let binary = BinaryCubic::from_ints([1, 0, -2, 0])
        .and_then(|p| p.galois_class())
        .map_err(|e| e.to_string())?;
    Ok(same(
        vec![
            GaloisClass::Trivial,
            GaloisClass::C2,
            GaloisClass::C3,
            GaloisClass::C2,
        ],
        vec![
            class([1, 0, 0, 1])?,
            class([1, 0, -2, 0])?,
            class([1, 0, 0, -2])?,
            binary,
        ],
    ))
}

fn cubes(_: &Context) -> Result<Outcome, String> {
    let cube = |x: FieldElement| is_cube(&x).map(|c| c.is_some()).map_err(|e| e.to_string());
    Ok(same(
        vec![true, false, false, true],
        vec![
            cube(FieldElement::from(-27))?,
            cube(FieldElement::from(2))?,
            cube(FieldElement::omega())?,
            cube(FieldElement::from_ints(2, 5).pow(3))?,
        ],
    ))
}

const SURFACES: [(&str, Rationality, Rationality); 4] = [
    ("exratrat", Rationality::Rational, Rationality::Rational),
    ("exratnrat", Rationality::Rational, Rationality::NotRational),
    ("exnratrat", Rationality::NotRational, Rationality::Rational),
    (
        "exnratnrat",
        Rationality::NotRational,
        Rationality::NotRational,
    ),
];

fn load_surface(ctx: &Context, name: &str) -> Result<SurfaceSpec, String> {
    SurfaceSpec::load(&ctx.path(&format!("surfaces/{name}.json"))).map_err(|e| e.to_string())
}

fn surface_family(ctx: &Context) -> Result<Outcome, String> {
    let s = load_surface(ctx, "exratnrat")?;
    let fam = family_cubic(&s).map_err(|e| e.to_string())?;
    Ok(same("4x^3 - 9x^2 - 6x - 1".to_string(), fam.to_string()))
}

fn surface_eckardt(ctx: &Context) -> Result<Outcome, String> {
    let mut identity = Vec::new();
    let mut control = Vec::new();
    for (name, ..) in SURFACES {
        let s = load_surface(ctx, name)?;
        identity.push(verify_eckardt_identity(&s));
        control.push(verify_eckardt_identity_with_coefficient(&s, 4));
    }
    Ok(same((vec![true; 4], vec![false; 4]), (identity, control)))
}

fn surface_verdicts(ctx: &Context) -> Result<Outcome, String> {
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for (name, x, q) in SURFACES {
        let s = load_surface(ctx, name)?;
        let v = classify(&s).map_err(|e| e.to_string())?;
        expected.push(format!("{name}: minimal, X {x}, X/G {q}"));
        let minimal = if v.verdict.g_minimal {
            "minimal"
        } else {
            "not minimal"
        };
        computed.push(format!(
            "{name}: {minimal}, X {}, X/G {}",
            v.verdict.x_rational, v.verdict.quotient_rational
        ));
    }
    Ok(same(expected, computed))
}
