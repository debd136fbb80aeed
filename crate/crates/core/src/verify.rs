//! Brute-force oracles and the named verification suites.
//!
//! Every suite is deterministic in `(config, seed)`: each case draws from its own
//! `ChaCha8Rng` stream, cases run in parallel, and the report is sorted before printing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::Config;
use crate::cyclo::CycloRational;
use crate::error::{Error, Result};
use crate::group::{Bicharacter, GroupElement};
use crate::lambda::EpsAlgebra;
use crate::linalg::rank;
use crate::operator::{color_bracket, random_gl_epsilon_with, GradedOperator};
use crate::perm::Permutation;
use crate::picture::{balanced_multiplicities, Bounds, PictureShape};
use crate::restitution::{
    injectivity_probe, restitute, restitute_tensor, transposition_sign_check, ProbeOutcome, W0Point,
};
use crate::sym::{
    enumerate_sym_basis, normalize_unchecked, sym_normalize, MixedShape, SymMonomial,
    SymPolynomial, SymTensor, SymVariable,
};
use crate::tensor::{
    act_perm, eta_action, gamma, psi_derivation, GradedSpace, GradedTensor, Variance,
};
use crate::trace::{supertrace, trace_match, U11Element};

pub const RNG_NAME: &str = "ChaCha8Rng";

pub const SUITES: [&str; 10] = [
    "bicharacter",
    "cocycle",
    "jacobi",
    "centralizer-commute",
    "symalgebra",
    "path-equality",
    "invariance",
    "trace-match",
    "restitution",
    "span",
];

/// Random points per (shape, σ) in the path-equality suite, and `(T, u)` pairs in the invariance suite.
pub const POINTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CaseResult {
    pub suite: String,
    pub case: String,
    pub passed: bool,
    pub detail: String,
}

impl CaseResult {
    fn new(suite: &str, case: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CaseResult {
            suite: suite.into(),
            case: case.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub config: String,
    pub seed: u64,
    pub notices: Vec<String>,
    pub cases: Vec<CaseResult>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# config {}", self.config)?;
        writeln!(f, "# seed {} rng {RNG_NAME}", self.seed)?;
        for n in &self.notices {
            writeln!(f, "# notice: {n}")?;
        }
        for c in &self.cases {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{status} {}: {}", c.suite, c.case)?;
            } else {
                writeln!(f, "{status} {}: {} ({})", c.suite, c.case, c.detail)?;
            }
        }
        writeln!(f, "# {} passed, {} failed", self.passed(), self.failed())
    }
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(name: &str, config: &Config, seed: u64) -> Result<Report> {
    let names: Vec<&str> = match name {
        "all" => SUITES.to_vec(),
        n if SUITES.contains(&n) => vec![n],
        n => return Err(Error::UnknownSuite(n.to_string())),
    };
    let mut report = Report {
        config: config.name.clone(),
        seed,
        notices: Vec::new(),
        cases: Vec::new(),
    };
    for n in names {
        let (cases, notices) = match n {
            "bicharacter" => (suite_bicharacter(config), vec![]),
            "cocycle" => (suite_cocycle(config)?, vec![]),
            "jacobi" => (suite_jacobi(config)?, vec![]),
            "centralizer-commute" => (suite_centralizer(config)?, vec![]),
            "symalgebra" => (suite_symalgebra(config, seed)?, vec![]),
            "path-equality" => (suite_path_equality(config, seed)?, vec![]),
            "invariance" => (suite_invariance(config, seed)?, vec![]),
            "trace-match" => (suite_trace_match(config, seed)?, vec![]),
            "restitution" => (suite_restitution(config, seed)?, vec![]),
            "span" => suite_span(config, seed)?,
            _ => unreachable!(),
        };
        report.cases.extend(cases);
        report.notices.extend(notices);
    }
    report.cases.sort();
    report.cases.dedup();
    report.notices.sort();
    report.notices.dedup();
    Ok(report)
}

fn case_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn summands_text(s: &[(usize, usize)]) -> String {
    s.iter()
        .map(|(b, t)| format!("({b},{t})"))
        .collect::<Vec<_>>()
        .join("+")
}

fn mult_text(m: &[usize]) -> String {
    m.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn distinct_degrees(space: &GradedSpace) -> Vec<GroupElement> {
    let set: BTreeSet<GroupElement> = space.degrees().iter().copied().collect();
    set.into_iter().collect()
}

fn matrix_units(space: &GradedSpace, alg: &EpsAlgebra) -> Result<Vec<GradedOperator>> {
    let d = space.dim();
    (0..d * d)
        .map(|k| GradedOperator::matrix_unit(space, alg, k / d, k % d))
        .collect()
}

fn scalar_algebra(chi: &Bicharacter) -> Result<EpsAlgebra> {
    EpsAlgebra::new(chi.clone(), vec![], 0)
}

fn suite_bicharacter(config: &Config) -> Vec<CaseResult> {
    let report = config.chi.validate();
    let detail = if report.is_valid() {
        format!(
            "|G| = {}, {}",
            config.chi.group().order(),
            if report.exhaustive {
                "exhaustive"
            } else {
                "sampled"
            }
        )
    } else {
        report
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    };
    vec![CaseResult::new(
        "bicharacter",
        "axioms",
        report.is_valid(),
        detail,
    )]
}

/// `γ(I, τσ) = γ(σ.I, τ) γ(I, σ)` over every degree tuple, plus the action law on basis words.
fn suite_cocycle(config: &Config) -> Result<Vec<CaseResult>> {
    let chi = &config.chi;
    let degs = distinct_degrees(&config.space);
    let mut out = Vec::new();
    for k in 1..=4usize {
        let perms = Permutation::all(k);
        let tuples = crate::sym::tuples(degs.len(), k);
        let failure = tuples.par_iter().find_map_first(|idx| {
            let tuple: Vec<GroupElement> = idx.iter().map(|&i| degs[i]).collect();
            for s in &perms {
                let moved = s.permute(&tuple);
                let gs = gamma(chi, &tuple, s).expect("sizes agree");
                for t in &perms {
                    let lhs = gamma(chi, &tuple, &t.compose(s).expect("sizes agree"))
                        .expect("sizes agree");
                    let rhs = gamma(chi, &moved, t).expect("sizes agree") * gs;
                    if lhs != rhs {
                        let g = chi.group();
                        let text: Vec<String> =
                            tuple.iter().map(|&x| g.format_element(x)).collect();
                        return Some(format!("I = ({}), sigma = {s}, tau = {t}", text.join(" ")));
                    }
                }
            }
            None
        });
        let count = tuples.len() * perms.len() * perms.len();
        out.push(CaseResult::new(
            "cocycle",
            format!("gamma k={k}"),
            failure.is_none(),
            failure.unwrap_or_else(|| format!("{count} triples")),
        ));
    }
    let alg = scalar_algebra(chi)?;
    let d = config.space.dim();
    for k in 1..=3usize {
        let perms = Permutation::all(k);
        let mut bad = None;
        'words: for idx in crate::sym::tuples(d, k) {
            let t = GradedTensor::basis_word(
                &config.space,
                &alg,
                vec![Variance::Primal; k],
                idx,
                alg.one(),
            )?;
            for s in &perms {
                let after_s = act_perm(s, &t)?;
                for r in &perms {
                    if act_perm(r, &after_s)? != act_perm(&r.compose(s)?, &t)? {
                        bad = Some(format!("sigma = {r}, tau = {s}"));
                        break 'words;
                    }
                }
            }
        }
        out.push(CaseResult::new(
            "cocycle",
            format!("action law k={k}"),
            bad.is_none(),
            bad.unwrap_or_default(),
        ));
    }
    Ok(out)
}

/// ε-antisymmetry and color Jacobi for `gl_ε(V)` on matrix units.
fn suite_jacobi(config: &Config) -> Result<Vec<CaseResult>> {
    let chi = &config.chi;
    let alg = scalar_algebra(chi)?;
    let units = matrix_units(&config.space, &alg)?;
    let deg = |x: &GradedOperator| x.degree().map(|d| d.unwrap_or(chi.group().identity()));
    let mut anti = None;
    for (a, x) in units.iter().enumerate() {
        for (b, y) in units.iter().enumerate() {
            let lhs = color_bracket(x, y)?;
            let rhs = color_bracket(y, x)?.scale(&-chi.value(deg(x)?, deg(y)?));
            if lhs != rhs && anti.is_none() {
                anti = Some(format!("units #{a}, #{b}"));
            }
        }
    }
    let n = units.len();
    let failure = (0..n * n * n).into_par_iter().find_map_first(|k| {
        let (x, y, z) = (&units[k / (n * n)], &units[(k / n) % n], &units[k % n]);
        let (dx, dy, dz) = (deg(x).ok()?, deg(y).ok()?, deg(z).ok()?);
        let term =
            |a: &GradedOperator, b: &GradedOperator, c: &GradedOperator, w: CycloRational| {
                color_bracket(a, &color_bracket(b, c).ok()?)
                    .ok()
                    .map(|r| r.scale(&w))
            };
        let sum = term(x, y, z, chi.value(dz, dx))?
            .checked_add(&term(y, z, x, chi.value(dx, dy))?)
            .ok()?
            .checked_add(&term(z, x, y, chi.value(dy, dz))?)
            .ok()?;
        (!sum.is_zero()).then(|| format!("triple #{k}"))
    });
    Ok(vec![
        CaseResult::new(
            "jacobi",
            "antisymmetry",
            anti.is_none(),
            anti.unwrap_or_else(|| format!("{} pairs", n * n)),
        ),
        CaseResult::new(
            "jacobi",
            "color jacobi",
            failure.is_none(),
            failure.unwrap_or_else(|| format!("{} triples", n * n * n)),
        ),
    ])
}

/// `Φ(σ)` commutes with `Ψ(x)` for matrix units and with `η(g)` for all `g`, on `V^{⊗k}`.
fn suite_centralizer(config: &Config) -> Result<Vec<CaseResult>> {
    let chi = &config.chi;
    let alg = scalar_algebra(chi)?;
    let units = matrix_units(&config.space, &alg)?;
    let d = config.space.dim();
    let mut out = Vec::new();
    for k in 1..=3usize {
        let perms = Permutation::all(k);
        let words: Vec<GradedTensor> = crate::sym::tuples(d, k)
            .into_iter()
            .map(|idx| {
                GradedTensor::basis_word(
                    &config.space,
                    &alg,
                    vec![Variance::Primal; k],
                    idx,
                    alg.one(),
                )
            })
            .collect::<Result<_>>()?;
        let psi_fail = words.par_iter().find_map_first(|t| {
            for s in &perms {
                for (u, x) in units.iter().enumerate() {
                    let a = act_perm(s, &psi_derivation(x, t).ok()?).ok()?;
                    let b = psi_derivation(x, &act_perm(s, t).ok()?).ok()?;
                    if a != b {
                        return Some(format!(
                            "sigma = {s}, unit #{u}, word {}",
                            t.to_string().trim()
                        ));
                    }
                }
            }
            None
        });
        out.push(CaseResult::new(
            "centralizer-commute",
            format!("psi k={k}"),
            psi_fail.is_none(),
            psi_fail.unwrap_or_default(),
        ));
        let mut eta_fail = None;
        for t in &words {
            for s in &perms {
                for g in chi.group().elements() {
                    if act_perm(s, &eta_action(g, t))? != eta_action(g, &act_perm(s, t)?)
                        && eta_fail.is_none()
                    {
                        eta_fail = Some(format!(
                            "sigma = {s}, g = {}",
                            chi.group().format_element(g)
                        ));
                    }
                }
            }
        }
        out.push(CaseResult::new(
            "centralizer-commute",
            format!("eta k={k}"),
            eta_fail.is_none(),
            eta_fail.unwrap_or_default(),
        ));
    }
    Ok(out)
}

/// Number of `S^r` basis monomials predicted by `∏ (1-t)^{-even} (1+t)^{odd}`.
pub fn sym_dimension_oracle(shape: &MixedShape, r: usize) -> usize {
    let vars = shape.variables();
    let odd = vars.iter().filter(|v| v.is_odd()).count();
    let even = vars.len() - odd;
    let binom = |n: usize, k: usize| -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
    };
    (0..=r)
        .map(|j| {
            binom(odd, j)
                * if even == 0 {
                    usize::from(r == j)
                } else {
                    binom(even + r - j - 1, r - j)
                }
        })
        .sum()
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn random_word<R: Rng>(shape: &MixedShape, len: usize, rng: &mut R) -> Vec<SymVariable> {
    let vars = shape.variables();
    (0..len)
        .map(|_| vars.choose(rng).expect("variables exist").clone())
        .collect()
}

fn suite_symalgebra(config: &Config, seed: u64) -> Result<Vec<CaseResult>> {
    let shapes = [
        config.shape.clone(),
        MixedShape::new(config.space.clone(), vec![(1, 1)])?,
    ];
    let mut out = Vec::new();
    for (si, shape) in shapes.iter().enumerate() {
        let label = summands_text(shape.summands());
        for r in 0..=3usize {
            let basis = enumerate_sym_basis(shape, r, None);
            let oracle = sym_dimension_oracle(shape, r);
            out.push(CaseResult::new(
                "symalgebra",
                format!("dimension {label} r={r}"),
                basis.len() == oracle,
                format!("basis {}, generating function {oracle}", basis.len()),
            ));
            let mut seen = BTreeSet::new();
            let mut disjoint = true;
            for md in compositions(r, shape.s()) {
                for m in enumerate_sym_basis(shape, r, Some(&md)) {
                    disjoint &= m.multidegree(shape.s()) == md && seen.insert(m);
                }
            }
            let all: BTreeSet<SymMonomial> = basis.into_iter().collect();
            out.push(CaseResult::new(
                "symalgebra",
                format!("multidegree partition {label} r={r}"),
                disjoint && seen == all,
                "",
            ));
        }
        let mut rng = case_rng(seed, 100 + si as u64);
        let mut bad = None;
        for _ in 0..30 {
            let len = rng.random_range(0..=3);
            let w = random_word(shape, len, &mut rng);
            if let Some((_, m)) = sym_normalize(shape, &w)? {
                let again = sym_normalize(shape, &m.expanded())?;
                if again.as_ref().map(|(s, x)| s.is_one() && x == &m) != Some(true) {
                    bad = Some(format!("normalize not idempotent on {m}"));
                }
            }
            let t = SymTensor::word(shape, w, CycloRational::one())?;
            let once = t.symmetrizer()?;
            if once.symmetrizer()? != once || once.project() != t.project() {
                bad = Some("symmetrizer not idempotent".into());
            }
        }
        out.push(CaseResult::new(
            "symalgebra",
            format!("normal form {label}"),
            bad.is_none(),
            bad.unwrap_or_default(),
        ));
    }
    Ok(out)
}

/// Summands together with multiplicities.
type ShapeSpec = (Vec<(usize, usize)>, Vec<usize>);

/// Shapes exercised by the path-equality and invariance suites, each with `N ≤ 3`.
fn picture_shapes(config: &Config) -> Vec<ShapeSpec> {
    let mut out: Vec<ShapeSpec> = vec![
        (vec![(1, 1)], vec![1]),
        (vec![(1, 1)], vec![2]),
        (vec![(1, 1)], vec![3]),
        (vec![(2, 1), (0, 1)], vec![1, 1]),
        (vec![(1, 2), (1, 0)], vec![1, 1]),
        (vec![(2, 1), (1, 2)], vec![1, 1]),
    ];
    for m in balanced_multiplicities(&config.shape, 3, 3) {
        out.push((config.shape.summands().to_vec(), m));
    }
    out.sort();
    out.dedup();
    out
}

fn case_label(p: &PictureShape, sigma: &Permutation) -> String {
    format!(
        "{} m={} sigma={}",
        summands_text(p.shape().summands()),
        mult_text(p.multiplicities()),
        sigma.cycle_string()
    )
}

fn phis(p: &PictureShape, sigmas: &[Permutation], bounds: &Bounds) -> Result<Vec<SymPolynomial>> {
    sigmas
        .iter()
        .map(|s| Ok(p.build_phi(s, bounds)?.polynomial))
        .collect()
}

/// Closed form against composed maps at `POINTS` random points, one case per `σ`.
fn path_equality_cases<R: Rng>(
    p: &PictureShape,
    sigmas: &[Permutation],
    bounds: &Bounds,
    rng: &mut R,
) -> Result<Vec<CaseResult>> {
    let alg = EpsAlgebra::with_pools(p.shape().chi().clone(), 2, bounds.truncation)?;
    let phis = phis(p, sigmas, bounds)?;
    let mut fails: Vec<Option<String>> = vec![None; sigmas.len()];
    let mut nonzero = vec![0usize; sigmas.len()];
    for pt in 0..POINTS {
        let u = W0Point::random(p.shape(), &alg, rng)?;
        let word = u.picture_word(p)?;
        for (i, s) in sigmas.iter().enumerate() {
            let closed = restitute(&phis[i], &u)?;
            let composed = p.t_sigma_eval(s, &word)?;
            nonzero[i] += usize::from(!closed.is_zero());
            if closed != composed && fails[i].is_none() {
                fails[i] = Some(format!(
                    "point {pt}: closed {closed} vs composed {composed}"
                ));
            }
        }
    }
    Ok(sigmas
        .iter()
        .enumerate()
        .map(|(i, s)| match fails[i].take() {
            None => CaseResult::new(
                "path-equality",
                case_label(p, s),
                true,
                format!("{POINTS} points, {} nonzero", nonzero[i]),
            ),
            Some(msg) => CaseResult::new("path-equality", case_label(p, s), false, msg),
        })
        .collect())
}

/// `F(φ_σ)(T⁻¹u) = F(φ_σ)(u)` for `POINTS` random pairs at truncation 3, one case per `σ`.
fn invariance_cases<R: Rng>(
    p: &PictureShape,
    sigmas: &[Permutation],
    bounds: &Bounds,
    rng: &mut R,
) -> Result<Vec<CaseResult>> {
    let space = p.shape().space();
    let alg = EpsAlgebra::with_pools(space.chi().clone(), 2, 3)?;
    let phis = phis(p, sigmas, bounds)?;
    let mut fails: Vec<Option<String>> = vec![None; sigmas.len()];
    for pair in 0..POINTS {
        let u = W0Point::random(p.shape(), &alg, rng)?;
        let t = random_gl_epsilon_with(space, &alg, rng)?;
        let moved = u.act_gl(&t.invert()?, &t)?;
        for (i, phi) in phis.iter().enumerate() {
            let (a, b) = (restitute(phi, &u)?, restitute(phi, &moved)?);
            if a != b && fails[i].is_none() {
                fails[i] = Some(format!("pair {pair}: {a} vs {b}"));
            }
        }
    }
    Ok(sigmas
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let detail = fails[i].take();
            CaseResult::new(
                "invariance",
                case_label(p, s),
                detail.is_none(),
                detail.unwrap_or_else(|| format!("{POINTS} pairs, D=3")),
            )
        })
        .collect())
}

type ShapeCases =
    fn(&PictureShape, &[Permutation], &Bounds, &mut ChaCha8Rng) -> Result<Vec<CaseResult>>;

fn over_picture_shapes(
    config: &Config,
    seed: u64,
    stream: u64,
    run: ShapeCases,
) -> Result<Vec<CaseResult>> {
    let per_shape: Vec<Vec<CaseResult>> = picture_shapes(config)
        .par_iter()
        .enumerate()
        .map(|(k, (summands, mult))| {
            let shape = MixedShape::new(config.space.clone(), summands.clone())?;
            let p = PictureShape::new(shape, mult.clone())?;
            let mut rng = case_rng(seed, stream + k as u64);
            run(&p, &Permutation::all(p.n()), &config.bounds, &mut rng)
        })
        .collect::<Result<_>>()?;
    Ok(per_shape.into_iter().flatten().collect())
}

fn suite_path_equality(config: &Config, seed: u64) -> Result<Vec<CaseResult>> {
    over_picture_shapes(config, seed, 200, path_equality_cases)
}

fn suite_invariance(config: &Config, seed: u64) -> Result<Vec<CaseResult>> {
    over_picture_shapes(config, seed, 300, invariance_cases)
}

/// `path-equality` or `invariance` for a single `φ_σ`.
pub fn check_picture(
    check: &str,
    config: &Config,
    p: &PictureShape,
    sigma: &Permutation,
    seed: u64,
) -> Result<Report> {
    let run: ShapeCases = match check {
        "path-equality" => path_equality_cases,
        "invariance" => invariance_cases,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let cases = run(
        p,
        std::slice::from_ref(sigma),
        &config.bounds,
        &mut case_rng(seed, 0),
    )?;
    Ok(Report {
        config: config.name.clone(),
        seed,
        notices: Vec::new(),
        cases,
    })
}

fn suite_trace_match(config: &Config, seed: u64) -> Result<Vec<CaseResult>> {
    let alg = EpsAlgebra::with_pools(config.chi.clone(), 2, config.bounds.truncation)?;
    let shapes: Vec<(usize, Vec<usize>)> = vec![
        (1, vec![1]),
        (1, vec![2]),
        (1, vec![3]),
        (2, vec![1, 1]),
        (2, vec![2, 1]),
        (2, vec![1, 2]),
    ];
    let mut out = Vec::new();
    for (k, (s, mult)) in shapes.iter().enumerate() {
        let shape = MixedShape::new(config.space.clone(), vec![(1, 1); *s])?;
        let p = PictureShape::new(shape.clone(), mult.clone())?;
        let mut rng = case_rng(seed, 400 + k as u64);
        let points: Vec<W0Point> = (0..10)
            .map(|_| W0Point::random(&shape, &alg, &mut rng))
            .collect::<Result<_>>()?;
        for sigma in Permutation::all(p.n()) {
            let mut bad = None;
            for (i, u) in points.iter().enumerate() {
                if !trace_match(&p, &sigma, u, &config.bounds)? {
                    bad = Some(format!("point {i}"));
                    break;
                }
            }
            let case = format!("s={s} m={} sigma={}", mult_text(mult), sigma.cycle_string());
            out.push(CaseResult::new(
                "trace-match",
                case,
                bad.is_none(),
                bad.unwrap_or_else(|| "10 points".into()),
            ));
        }
    }
    let mut rng = case_rng(seed, 499);
    let pair_shape = MixedShape::new(config.space.clone(), vec![(1, 1), (1, 1)])?;
    let mut cyclic = true;
    for _ in 0..50 {
        let u = W0Point::random(&pair_shape, &alg, &mut rng)?;
        let (a, b) = (
            U11Element::from_point(&u, 0)?,
            U11Element::from_point(&u, 1)?,
        );
        cyclic &= a.compose(&b)?.trace()? == b.compose(&a)?.trace()?;
        cyclic &= a.trace()? == supertrace(&config.space, &a.to_matrix())?;
    }
    out.push(CaseResult::new(
        "trace-match",
        "tr(AB) = tr(BA)",
        cyclic,
        "50 degree-0 pairs",
    ));
    let id = U11Element::identity(&config.space, &alg)?.trace()?;
    let expected = config.space.m() as i64 - config.space.n() as i64;
    out.push(CaseResult::new(
        "trace-match",
        "tr(id) = m - n",
        id == alg.constant(CycloRational::from_integer(expected)),
        format!("{id}"),
    ));
    Ok(out)
}

/// A tensor in the two-sided ideal generated by `a ⊗ b - ε(|a|, |b|) b ⊗ a`.
fn ideal_element<R: Rng>(shape: &MixedShape, r: usize, rng: &mut R) -> Result<SymTensor> {
    let chi = shape.chi();
    let mut w = random_word(shape, r, rng);
    let i = rng.random_range(0..r - 1);
    let c = CycloRational::from_integer(rng.random_range(1..=3));
    let mut t = SymTensor::word(shape, w.clone(), c.clone())?;
    let sign = chi.epsilon(w[i].degree(), w[i + 1].degree());
    w.swap(i, i + 1);
    t.add_term(w, (-c).mul_root(sign));
    Ok(t)
}

fn random_polynomial<R: Rng>(shape: &MixedShape, r: usize, rng: &mut R) -> Result<SymPolynomial> {
    loop {
        let mut f = SymPolynomial::zero(shape);
        for _ in 0..rng.random_range(1..=3) {
            let c = CycloRational::from_integer(
                rng.random_range(1..=4) * if rng.random_bool(0.5) { 1 } else { -1 },
            );
            f.add_sequence(&random_word(shape, r, rng), &c)?;
        }
        if !f.is_zero() {
            return Ok(f);
        }
    }
}

fn suite_restitution(config: &Config, seed: u64) -> Result<Vec<CaseResult>> {
    let alg = EpsAlgebra::with_pools(config.chi.clone(), 2, config.bounds.truncation)?;
    let shapes = [
        config.shape.clone(),
        MixedShape::new(config.space.clone(), vec![(1, 1)])?,
    ];
    let mut rng = case_rng(seed, 500);
    let mut independence = None;
    let mut transpositions = None;
    for case in 0..50 {
        let shape = &shapes[case % 2];
        let r = rng.random_range(2..=3);
        let rep = SymTensor::word(
            shape,
            random_word(shape, r, &mut rng),
            CycloRational::from_integer(rng.random_range(1..=3)),
        )?;
        let shifted = rep.checked_add(&ideal_element(shape, r, &mut rng)?)?;
        let u = W0Point::random(shape, &alg, &mut rng)?;
        let direct = restitute(&rep.project(), &u)?;
        if restitute_tensor(&shifted, &u)? != direct || restitute_tensor(&rep, &u)? != direct {
            independence.get_or_insert(format!("case {case}"));
        }
        let word = random_word(shape, r, &mut rng);
        for i in 0..r - 1 {
            if !transposition_sign_check(&word, i, &u)? {
                transpositions.get_or_insert(format!("case {case}, place {}", i + 1));
            }
        }
    }
    let mut injective = None;
    for case in 0..20 {
        let shape = &shapes[case % 2];
        let f = random_polynomial(shape, 1 + case % 2, &mut rng)?;
        if injectivity_probe(&f, config.bounds.truncation.max(2))? == ProbeOutcome::Refuted {
            injective.get_or_insert(format!("case {case}: {}", f.to_string().trim()));
        }
    }
    Ok(vec![
        CaseResult::new(
            "restitution",
            "representative independence",
            independence.is_none(),
            independence.unwrap_or_else(|| "50 cases".into()),
        ),
        CaseResult::new(
            "restitution",
            "transposition rule",
            transpositions.is_none(),
            transpositions.unwrap_or_default(),
        ),
        CaseResult::new(
            "restitution",
            "staircase injectivity",
            injective.is_none(),
            injective.unwrap_or_else(|| "20 certificates".into()),
        ),
    ])
}

/// Image of `T_w` under `E_pq` in the classical contragredient action.
fn classical_image(
    shape: &MixedShape,
    v: &SymVariable,
    p: usize,
    q: usize,
) -> Vec<(i64, SymVariable)> {
    let (lower, upper) = (v.lower(), v.upper());
    let mut out = Vec::new();
    for j in 0..lower.len() {
        if lower[j] == p {
            let mut l = lower.clone();
            l[j] = q;
            out.push((
                -1,
                shape.variable(v.summand(), &l, &upper).expect("in range"),
            ));
        }
    }
    for j in 0..upper.len() {
        if upper[j] == q {
            let mut u = upper.clone();
            u[j] = p;
            out.push((
                1,
                shape.variable(v.summand(), &lower, &u).expect("in range"),
            ));
        }
    }
    out
}

fn torus_weight(n: usize, m: &SymMonomial) -> Vec<i64> {
    let mut w = vec![0i64; n];
    for v in m.expanded() {
        v.lower().iter().for_each(|&l| w[l] += 1);
        v.upper().iter().for_each(|&u| w[u] -= 1);
    }
    w
}

/// `dim S^r(W*)^{GL_n}` over ℚ, as the common kernel of the `E_pq` (`p ≠ q`) on torus-weight-zero monomials.
pub fn classical_invariant_dim(shape: &MixedShape, r: usize) -> Result<usize> {
    let chi = shape.chi();
    if chi.group().order() != 1 {
        return Err(Error::Contract(
            "the classical oracle needs the trivial grading group".into(),
        ));
    }
    let n = shape.space().dim();
    let mut total = 0;
    for md in compositions(r, shape.s()) {
        let basis: Vec<SymMonomial> = enumerate_sym_basis(shape, r, Some(&md))
            .into_iter()
            .filter(|m| torus_weight(n, m).iter().all(|&x| x == 0))
            .collect();
        if basis.is_empty() {
            continue;
        }
        let mut index: BTreeMap<(usize, usize, SymMonomial), usize> = BTreeMap::new();
        let images: Vec<Vec<(usize, i64)>> = basis
            .iter()
            .map(|m| {
                let seq = m.expanded();
                let mut img = Vec::new();
                for p in 0..n {
                    for q in (0..n).filter(|&q| q != p) {
                        for pos in 0..seq.len() {
                            for (c, v) in classical_image(shape, &seq[pos], p, q) {
                                let mut next = seq.clone();
                                next[pos] = v;
                                let (_, mono) =
                                    normalize_unchecked(chi, next).expect("no odd variables");
                                let len = index.len();
                                let col = *index.entry((p, q, mono)).or_insert(len);
                                img.push((col, c));
                            }
                        }
                    }
                }
                img
            })
            .collect();
        let rows: Vec<Vec<CycloRational>> = images
            .into_iter()
            .map(|img| {
                let mut row = vec![0i64; index.len()];
                img.into_iter().for_each(|(col, c)| row[col] += c);
                row.into_iter().map(CycloRational::from_integer).collect()
            })
            .collect();
        total += basis.len() - rank(&rows);
    }
    Ok(total)
}

/// Ranks of `{φ_σ}` and of the classical invariants in degree `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanReport {
    pub r: usize,
    pub rank: usize,
    pub classical: usize,
}

impl SpanReport {
    pub fn passed(&self) -> bool {
        self.rank == self.classical
    }
}

/// Compares the span of all `φ_σ` of degree `r` with the classical invariant dimension.
pub fn span_check(shape: &MixedShape, r: usize, bounds: &Bounds) -> Result<SpanReport> {
    let classical = classical_invariant_dim(shape, r)?;
    let mut polys = Vec::new();
    for mult in balanced_multiplicities(shape, r, bounds.max_n)
        .into_iter()
        .filter(|m| m.iter().sum::<usize>() == r)
    {
        let p = PictureShape::new(shape.clone(), mult)?;
        for sigma in Permutation::all(p.n()) {
            polys.push(p.build_phi(&sigma, bounds)?.polynomial);
        }
    }
    if r == 0 {
        polys.push(SymPolynomial::one(shape));
    }
    let mut index: BTreeMap<SymMonomial, usize> = BTreeMap::new();
    for f in &polys {
        for (m, _) in f.terms() {
            let len = index.len();
            index.entry(m.clone()).or_insert(len);
        }
    }
    let rows: Vec<Vec<CycloRational>> = polys
        .iter()
        .map(|f| {
            let mut row = vec![CycloRational::zero(); index.len()];
            for (m, c) in f.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    Ok(SpanReport {
        r,
        rank: rank(&rows),
        classical,
    })
}

fn suite_span(config: &Config, seed: u64) -> Result<(Vec<CaseResult>, Vec<String>)> {
    if config.chi.group().order() != 1 {
        let notice = "span: non-trivial grading group, restricted to invariance checks".to_string();
        return Ok((suite_invariance(config, seed)?, vec![notice]));
    }
    let mut shapes = vec![
        vec![(1, 1)],
        vec![(1, 1), (1, 1)],
        vec![(2, 1), (0, 1)],
        vec![(2, 1), (1, 2)],
        config.shape.summands().to_vec(),
    ];
    shapes.sort();
    shapes.dedup();
    let mut spaces = vec![config.space.clone()];
    if config.space.dim() > 1 {
        spaces.push(GradedSpace::new(
            config.chi.clone(),
            vec![config.chi.group().identity()],
        )?);
    }
    let mut out = Vec::new();
    for space in &spaces {
        for summands in &shapes {
            let shape = MixedShape::new(space.clone(), summands.clone())?;
            for r in 1..=3 {
                if balanced_multiplicities(&shape, r, 3)
                    .iter()
                    .all(|m| m.iter().sum::<usize>() != r)
                {
                    continue;
                }
                let s = span_check(&shape, r, &config.bounds)?;
                out.push(CaseResult::new(
                    "span",
                    format!("n={} {} r={r}", space.dim(), summands_text(summands)),
                    s.passed(),
                    format!("rank {}, classical {}", s.rank, s.classical),
                ));
            }
        }
    }
    Ok((out, vec![]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial_shape(n: usize, summands: Vec<(usize, usize)>) -> MixedShape {
        let chi = Bicharacter::trivial();
        let space = GradedSpace::new(chi.clone(), vec![chi.group().identity(); n]).unwrap();
        MixedShape::new(space, summands).unwrap()
    }

    #[test]
    fn classical_dimensions() {
        let one = trivial_shape(2, vec![(1, 1)]);
        assert_eq!(classical_invariant_dim(&one, 1).unwrap(), 1);
        assert_eq!(classical_invariant_dim(&one, 2).unwrap(), 2);
        assert_eq!(classical_invariant_dim(&one, 3).unwrap(), 2);
        let unbalanced = trivial_shape(2, vec![(2, 1)]);
        assert_eq!(classical_invariant_dim(&unbalanced, 2).unwrap(), 0);
        let graded = MixedShape::new(
            GradedSpace::from_residues(Bicharacter::super_sign(), &["0", "1"]).unwrap(),
            vec![(1, 1)],
        )
        .unwrap();
        assert!(matches!(
            classical_invariant_dim(&graded, 1),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn span_examples() {
        let b = Bounds::default();
        let s = span_check(&trivial_shape(2, vec![(1, 1)]), 2, &b).unwrap();
        assert_eq!((s.rank, s.classical), (2, 2));
        assert!(span_check(&trivial_shape(1, vec![(1, 1)]), 2, &b)
            .unwrap()
            .passed());
        assert!(span_check(&trivial_shape(2, vec![(1, 1), (1, 1)]), 2, &b)
            .unwrap()
            .passed());
    }

    #[test]
    fn sym_dimension_counts() {
        let one = trivial_shape(2, vec![(1, 1)]);
        assert_eq!(sym_dimension_oracle(&one, 2), 10);
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }
}
