//! Command implementations behind the `gktorus` binary. Each command reads
//! a JSON config, runs the library and returns a [`RunReport`] plus an exit
//! status.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cohomology::{
    b1_parity_report, borel_e2, collapse, hodge_kunneth, mapping_torus_of, numbered_names, tensor_fixed_spaces,
    verify_dolbeault_frame, CohomologyTable, Degeneration, HodgeTable, PullbackAction,
};
use crate::error::{Error, Result};
use crate::formality::{
    bfm_formality_test, check_quasi_iso, minimal_model_low_degree, parse_poly, CdgaSpec, FormalityVerdict,
    Morphism, TargetMode,
};
use crate::gk::{
    assemble_gk, assemble_gk_unchecked, check_frame_conditions, classify_split, verify_gk, FiberMap, FiberMode,
    CheckItem, FlatFiber, FrameFamily, SplitClass, GRID_TOLERANCE,
};
use crate::inoue::{self, rho_at, InoueData, CONJUGATION_TOLERANCE};
use crate::linalg::real::Mat3;
use crate::linalg::{IntMatrix, QMatrix};
use crate::report::{CheckRecord, RunReport, Status};
use crate::symforms::ScalarExpr;

pub const DEFAULT_GRID: usize = 33;
pub const LATTICE_TOLERANCE: f64 = 1e-6;
pub const LATTICE_PROBES: usize = 100;

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Overrides the config's grid size when set.
    pub grid: Option<usize>,
    pub tol: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { grid: None, tol: GRID_TOLERANCE }
    }
}

impl RunOptions {
    fn grid_or(&self, config: Option<usize>) -> usize {
        self.grid.or(config).unwrap_or(DEFAULT_GRID)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Pass,
    CheckFailure,
    NotAdmissible,
    Usage,
}

impl Exit {
    pub fn code(self) -> i32 {
        match self {
            Exit::Pass => 0,
            Exit::CheckFailure => 1,
            Exit::NotAdmissible => 2,
            Exit::Usage => 64,
        }
    }
}

/// Input problems are usage errors; rejected matrices are non-admissible.
pub fn exit_for_error(e: &Error) -> Exit {
    match e {
        Error::Parse(_) | Error::Invalid(_) | Error::Dimension(_) | Error::Cutoff { .. } => Exit::Usage,
        Error::NotAdmissible(_) | Error::IllConditioned(_) => Exit::NotAdmissible,
        _ => Exit::CheckFailure,
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub exit: Exit,
}

/// Grid-tolerance items take the run tolerance; lower-bound items keep their verdict.
fn item_record(prefix: &str, item: &CheckItem, tol: f64) -> CheckRecord {
    let name = format!("{prefix}/{}", item.item);
    let mut rec = if item.lower_bound {
        let mut r = CheckRecord::residual(&name, item.max_residual, item.tolerance);
        r.status = Status::from_bool(item.pass);
        r
    } else {
        let tol = if item.tolerance == GRID_TOLERANCE { tol } else { item.tolerance };
        CheckRecord::residual(&name, item.max_residual, tol)
    };
    rec.detail = Some(item.description.clone());
    rec
}

fn finish(mut report: RunReport, start: Instant) -> Outcome {
    report.wall_clock = start.elapsed();
    let exit = if report.passed() { Exit::Pass } else { Exit::CheckFailure };
    Outcome { report, exit }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Deterministic lattice vectors with entries in `[-50, 50]`.
pub fn lattice_probe_vectors(count: usize, seed: u64) -> Vec<[i64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| [rng.gen_range(-50..=50), rng.gen_range(-50..=50), rng.gen_range(-50..=50)]).collect()
}

fn inoue_checks(report: &mut RunReport, data: &InoueData, prefix: &str) -> Result<()> {
    let lattice = lattice_probe_vectors(LATTICE_PROBES, 7)
        .into_iter()
        .map(|z| data.lattice_rounding_residual(z))
        .fold(0.0, f64::max);
    report.push(CheckRecord::residual(&format!("{prefix}conjugation"), data.conjugation_residual, CONJUGATION_TOLERANCE))?;
    report.push(CheckRecord::residual(&format!("{prefix}lattice_rounding"), lattice, LATTICE_TOLERANCE))?;
    let sym = (data.second_symmetric_function() - data.n as f64).abs();
    report.push(CheckRecord::residual(&format!("{prefix}second_symmetric_function"), sym, CONJUGATION_TOLERANCE))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Wrapped { matrix: IntMatrix },
    Bare(IntMatrix),
}

/// `solve-inoue FILE`: `(t0, p, P)` for a single integer matrix.
pub fn solve_inoue(text: &str) -> Result<Outcome> {
    let start = Instant::now();
    let a = match parse_json::<MatrixInput>(text)? {
        MatrixInput::Wrapped { matrix } | MatrixInput::Bare(matrix) => matrix,
    };
    let mut report = RunReport::new("solve-inoue", &[text.as_bytes()]);
    report.put("matrix", &a)?;
    match inoue::solve(&a) {
        Ok(data) => {
            report.push(CheckRecord::flag("admissible", true, "one real eigenvalue > 1 and a complex pair"))?;
            inoue_checks(&mut report, &data, "")?;
            report.put("inoue", &data)?;
            Ok(finish(report, start))
        }
        Err(e @ (Error::NotAdmissible(_) | Error::IllConditioned(_))) => {
            let reason = match &e {
                Error::NotAdmissible(r) => r.clone(),
                other => other.to_string(),
            };
            report.push(CheckRecord::flag("admissible", false, &reason))?;
            report.put("reason", &reason)?;
            let mut out = finish(report, start);
            out.exit = Exit::NotAdmissible;
            Ok(out)
        }
        Err(e) => Err(e),
    }
}

#[derive(Serialize)]
struct EnumeratedEntry {
    m: i64,
    n: i64,
    alpha: f64,
    t0: f64,
    p: f64,
    conjugation_residual: f64,
}

/// `solve-inoue --enumerate m_lo m_hi n_lo n_hi`.
pub fn enumerate_inoue(m_lo: i64, m_hi: i64, n_lo: i64, n_hi: i64) -> Result<Outcome> {
    let start = Instant::now();
    if m_lo > m_hi || n_lo > n_hi {
        return Err(Error::Invalid("empty enumeration range".into()));
    }
    let key = format!("{m_lo} {m_hi} {n_lo} {n_hi}");
    let mut report = RunReport::new("solve-inoue --enumerate", &[key.as_bytes()]);
    let mut entries = Vec::new();
    for adm in inoue::enumerate_admissible((m_lo, m_hi), (n_lo, n_hi)) {
        let data = inoue::parameters_from_matrix(&adm)?;
        inoue_checks(&mut report, &data, &format!("({},{})/", adm.m, adm.n))?;
        entries.push(EnumeratedEntry {
            m: adm.m,
            n: adm.n,
            alpha: adm.alpha,
            t0: data.t0,
            p: data.p,
            conjugation_residual: data.conjugation_residual,
        });
    }
    report.push(CheckRecord::flag("nonempty", !entries.is_empty(), &format!("{} admissible pairs", entries.len())))?;
    report.put("admissible", &entries)?;
    Ok(finish(report, start))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum PeriodSpec {
    Value(f64),
    Param(String),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FrameSpec {
    /// The Inoue frame for the `(t0, p)` of an integer matrix.
    InoueMatrix { matrix: IntMatrix },
    Inoue { p: f64, t0: f64 },
    /// Coefficients as s-expressions in `t` and the named parameters.
    Custom {
        a1: String,
        b2: String,
        b3: String,
        period: PeriodSpec,
        #[serde(default)]
        params: BTreeMap<String, f64>,
        /// Gluing map; defaults to `ρ(period)` when a parameter `p` is given.
        #[serde(default)]
        rho: Option<Mat3>,
        /// Skip gluing and preservation checks (flat Kähler frames).
        #[serde(default)]
        unchecked: bool,
    },
}

struct ResolvedFrame {
    frame: FrameFamily,
    rho: Mat3,
    data: Option<InoueData>,
    unchecked: bool,
}

impl FrameSpec {
    fn resolve(&self) -> Result<ResolvedFrame> {
        match self {
            FrameSpec::InoueMatrix { matrix } => {
                let data = inoue::solve(matrix)?;
                Ok(ResolvedFrame { frame: FrameFamily::from_data(&data), rho: data.rho(), data: Some(data), unchecked: false })
            }
            FrameSpec::Inoue { p, t0 } => {
                Ok(ResolvedFrame { frame: FrameFamily::inoue(*p, *t0), rho: rho_at(*p, *t0), data: None, unchecked: false })
            }
            FrameSpec::Custom { a1, b2, b3, period, params, rho, unchecked } => {
                let period = match period {
                    PeriodSpec::Value(v) => *v,
                    PeriodSpec::Param(name) => *params
                        .get(name)
                        .ok_or_else(|| Error::Parse(format!("period refers to unknown parameter {name}")))?,
                };
                let parse = |s: &str| ScalarExpr::parse_sexpr(s, params);
                let mut frame = FrameFamily::new(parse(a1)?, parse(b2)?, parse(b3)?, period);
                frame.params = params.clone();
                let rho = match (rho, params.get("p")) {
                    (Some(r), _) => *r,
                    (None, Some(p)) => rho_at(*p, period),
                    (None, None) if *unchecked => rho_at(0.0, 0.0),
                    (None, None) => return Err(Error::Invalid("custom frame needs rho or a parameter p".into())),
                };
                Ok(ResolvedFrame { frame, rho, data: None, unchecked: *unchecked })
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FiberSpec {
    pub dim: usize,
    pub mode: FiberMode,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum FiberMapSpec {
    Named(String),
    Matrix(IntMatrix),
}

impl FiberMapSpec {
    fn resolve(&self, dim: usize) -> Result<FiberMap> {
        match self {
            FiberMapSpec::Matrix(m) => Ok(FiberMap { matrix: m.clone() }),
            FiberMapSpec::Named(n) => match n.as_str() {
                "identity" => Ok(FiberMap::identity(dim)),
                "quarter_rotation" => Ok(FiberMap::quarter_rotation(dim)),
                other => Err(Error::Parse(format!("unknown fiber map {other}"))),
            },
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GkExpect {
    pub split: Option<bool>,
    pub h_coefficient: Option<f64>,
    pub sigma_is_minus_omega3_inverse: Option<bool>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GkConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub frame: FrameSpec,
    #[serde(default)]
    pub fiber: Option<FiberSpec>,
    #[serde(default)]
    pub psi: Option<FiberMapSpec>,
    #[serde(default)]
    pub grid: Option<usize>,
    #[serde(default)]
    pub expect: Option<GkExpect>,
}

/// `verify-gk CONFIG`: gluing conditions, assembly and the full certificate.
pub fn verify_gk_config(text: &str, opts: &RunOptions) -> Result<Outcome> {
    let config: GkConfig = parse_json(text)?;
    verify_gk_run(&config, text.as_bytes(), opts)
}

pub fn verify_gk_run(config: &GkConfig, raw: &[u8], opts: &RunOptions) -> Result<Outcome> {
    let start = Instant::now();
    let mut report = RunReport::new("verify-gk", &[raw]);
    let resolved = config.frame.resolve()?;
    let fiber = match &config.fiber {
        Some(f) => FlatFiber::new(f.dim, f.mode)?,
        None => FlatFiber::empty(),
    };
    let psi = match &config.psi {
        Some(spec) => spec.resolve(fiber.dim)?,
        None => FiberMap::identity(fiber.dim),
    };
    let grid = opts.grid_or(config.grid);
    if let Some(name) = &config.name {
        report.put("name", name)?;
    }
    report.put("grid", &grid)?;
    report.put("frame_params", &resolved.frame.params)?;
    if let Some(data) = &resolved.data {
        report.put("inoue", data)?;
    }

    let structure = if resolved.unchecked {
        assemble_gk_unchecked(&resolved.frame, &fiber, &psi)?
    } else {
        let frame_report = check_frame_conditions(&resolved.frame, &resolved.rho)?;
        for item in &frame_report.items {
            report.push(item_record("frame", item, opts.tol))?;
        }
        let pres = psi.check_preserves(&fiber)?;
        report.push(CheckRecord::flag("fiber_map/lattice", pres.lattice, "det = +-1"))?;
        for (i, ok) in &pres.forms_preserved {
            report.push(CheckRecord::flag(&format!("fiber_map/preserves_omega{}", i + 1), *ok, "exact"))?;
        }
        for (i, ok) in &pres.commutes {
            report.push(CheckRecord::flag(&format!("fiber_map/commutes_J{}", i + 1), *ok, "exact"))?;
        }
        if !report.passed() {
            return Ok(finish(report, start));
        }
        assemble_gk(&resolved.frame, &resolved.rho, &fiber, &psi)?
    };

    let cert = verify_gk(&structure, grid)?;
    for item in &cert.items {
        report.push(item_record("gk", item, opts.tol))?;
    }
    let split = classify_split(&structure)?;
    if let Some(expect) = &config.expect {
        if let Some(s) = expect.split {
            let detail = if split.is_split() { "split" } else { "non-split" };
            report.push(CheckRecord::flag("expect/split", split.is_split() == s, detail))?;
        }
        if let Some(h) = expect.h_coefficient {
            report.push(CheckRecord::residual("expect/h_coefficient", (cert.h_coefficient - h).abs(), opts.tol))?;
        }
        if let Some(want) = expect.sigma_is_minus_omega3_inverse {
            let got = matches!(split, SplitClass::NonSplit { fiber_block_is_minus_omega3_inverse: true, .. });
            report.push(CheckRecord::flag("expect/sigma", got == want, "sigma = -omega_3^{-1} on the fiber"))?;
        }
    }
    report.put("certificate", &cert)?;
    Ok(finish(report, start))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyConfig {
    #[serde(default)]
    pub name: Option<String>,
    /// Base map `x ↦ ρ x` on `T^3`, lattice coordinates.
    pub rho: IntMatrix,
    /// Fiber map on `T^k`; none for the base alone.
    #[serde(default)]
    pub psi: Option<IntMatrix>,
    #[serde(default)]
    pub expect: Option<Vec<usize>>,
}

impl CohomologyConfig {
    pub fn actions(&self) -> Result<(PullbackAction, PullbackAction)> {
        let rho = PullbackAction::from_linear_map(&self.rho)?;
        let psi = match &self.psi {
            Some(m) => PullbackAction::from_linear_map(m)?,
            None => PullbackAction::identity(0),
        };
        Ok((rho, psi))
    }
}

/// Dimensions from bidegree fixed spaces: `H^r = Σ_{i+j=r} K^{ij} + Σ_{i+j=r−1} C^{ij}`.
pub fn dims_from_tensor_route(rho: &PullbackAction, psi: &PullbackAction) -> Result<Vec<usize>> {
    let n = rho.rank() + psi.rank();
    let k: Vec<usize> = (0..=n)
        .map(|r| tensor_fixed_spaces(rho, psi, r).map(|v| v.iter().map(|b| b.direct).sum()))
        .collect::<Result<_>>()?;
    Ok((0..=n + 1).map(|r| if r <= n { k[r] } else { 0 } + if r >= 1 { k[r - 1] } else { 0 }).collect())
}

/// `cohomology CONFIG`: mapping-torus Betti numbers two ways, with representatives.
pub fn cohomology_config(text: &str) -> Result<Outcome> {
    let config: CohomologyConfig = parse_json(text)?;
    cohomology_run(&config, text.as_bytes())
}

pub fn cohomology_run(config: &CohomologyConfig, raw: &[u8]) -> Result<Outcome> {
    let start = Instant::now();
    let mut report = RunReport::new("cohomology", &[raw]);
    let (rho, psi) = config.actions()?;
    let total = rho.product(&psi);
    let table = mapping_torus_of(&total, &numbered_names(1, total.rank()))?;
    let tensor = dims_from_tensor_route(&rho, &psi)?;
    report.push(CheckRecord::dims("tensor_route_agrees", tensor.clone(), table.dims.clone()))?;
    if let Some(expect) = &config.expect {
        report.push(CheckRecord::dims("betti", table.dims.clone(), expect.clone()))?;
    }
    report.push(CheckRecord::flag("poincare_duality", table.is_poincare_symmetric(), "b_r = b_{n+1-r}"))?;
    let b1 = b1_parity_report(&rho, &psi)?;
    if b1.oddness_asserted {
        report.push(CheckRecord::flag("b1_odd", b1.odd, &format!("b1 = {}", b1.b1)))?;
    }
    if let Some(name) = &config.name {
        report.put("name", name)?;
    }
    report.put("table", &table)?;
    report.put("b1", &b1)?;
    Ok(finish(report, start))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub mode: TargetMode,
    /// Images of generators as polynomials; unlisted generators map to themselves.
    #[serde(default)]
    pub images: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FormalityConfig {
    Cdga {
        #[serde(default)]
        name: Option<String>,
        cdga: CdgaSpec,
        max_degree: usize,
        #[serde(default)]
        expect_dims: Option<Vec<usize>>,
        #[serde(default)]
        morphism: Option<MorphismSpec>,
    },
    MappingTorus {
        #[serde(default)]
        name: Option<String>,
        rho: IntMatrix,
        #[serde(default)]
        psi: Option<IntMatrix>,
        #[serde(default)]
        fragment_degree: Option<usize>,
        #[serde(default)]
        expect_verdict: Option<FormalityVerdict>,
    },
    /// Per-degree actions `f_k^*`, degree 0 first.
    Actions {
        #[serde(default)]
        name: Option<String>,
        actions: Vec<IntMatrix>,
        #[serde(default)]
        fragment_degree: Option<usize>,
        #[serde(default)]
        expect_verdict: Option<FormalityVerdict>,
    },
}

fn verdict_label(v: FormalityVerdict) -> &'static str {
    match v {
        FormalityVerdict::NonFormalCriterion1 => "non-formal (criterion 1)",
        FormalityVerdict::NonFormalRGe2 => "non-formal (r >= 2)",
        FormalityVerdict::Inconclusive => "inconclusive",
    }
}

fn bfm_run(
    report: &mut RunReport,
    actions: &[QMatrix],
    fragment_degree: Option<usize>,
    expect: Option<FormalityVerdict>,
    reference: Option<&CohomologyTable>,
) -> Result<()> {
    let rec = bfm_formality_test(actions)?;
    if let Some(want) = expect {
        report.push(CheckRecord::flag("verdict", rec.verdict == want, verdict_label(rec.verdict)))?;
    }
    if let Some(p) = fragment_degree {
        let frag = minimal_model_low_degree(actions, p)?;
        report.push(CheckRecord::flag("fragment_d_squared", true, "d^2 = 0 on every generator"))?;
        let dims = frag.cdga.cohomology(p)?.dims;
        if let Some(table) = reference {
            report.push(CheckRecord::dims("fragment_matches_mapping_torus", dims.clone(), table.dims[..=p].to_vec()))?;
        }
        report.put("fragment", &CdgaSpec::from_cdga(&frag.cdga))?;
        report.put("fragment_dims", &dims)?;
        report.put("fragment_r", &frag.jordan.r)?;
    }
    report.put("bfm", &rec)?;
    Ok(())
}

/// `formality CONFIG`: CDGA cohomology and quasi-isomorphisms, or the
/// Jordan-block criteria for a mapping torus.
pub fn formality_config(text: &str) -> Result<Outcome> {
    let config: FormalityConfig = parse_json(text)?;
    formality_run(&config, text.as_bytes())
}

pub fn formality_run(config: &FormalityConfig, raw: &[u8]) -> Result<Outcome> {
    let start = Instant::now();
    let mut report = RunReport::new("formality", &[raw]);
    match config {
        FormalityConfig::Cdga { name, cdga, max_degree, expect_dims, morphism } => {
            let a = cdga.build()?;
            let h = a.cohomology(*max_degree)?;
            if let Some(expect) = expect_dims {
                report.push(CheckRecord::dims("cohomology_dims", h.dims.clone(), expect.clone()))?;
            }
            if let Some(spec) = morphism {
                let images = a
                    .generators()
                    .iter()
                    .enumerate()
                    .map(|(i, g)| match spec.images.get(&g.name) {
                        Some(text) => parse_poly(&a, text),
                        None => Ok(a.gen(i)),
                    })
                    .collect::<Result<Vec<_>>>()?;
                if let Some(unknown) = spec.images.keys().find(|k| a.index_of(k).is_none()) {
                    return Err(Error::Parse(format!("image given for unknown generator {unknown}")));
                }
                let phi = Morphism::new(&a, &a, images)?;
                let verdict = check_quasi_iso(&phi, spec.mode, *max_degree)?;
                let detail = match verdict.first_failure {
                    None => format!("iso in every degree <= {max_degree}"),
                    Some(k) => format!("not an isomorphism in degree {k}"),
                };
                report.push(CheckRecord::flag("quasi_iso", verdict.quasi_iso, &detail))?;
                report.put("quasi_iso", &verdict)?;
            }
            if let Some(n) = name {
                report.put("name", n)?;
            }
            report.put("cohomology", &h)?;
        }
        FormalityConfig::MappingTorus { name, rho, psi, fragment_degree, expect_verdict } => {
            let c = CohomologyConfig { name: name.clone(), rho: rho.clone(), psi: psi.clone(), expect: None };
            let (r, p) = c.actions()?;
            let total = r.product(&p);
            let table = mapping_torus_of(&total, &numbered_names(1, total.rank()))?;
            bfm_run(&mut report, &total.all_degrees()?, *fragment_degree, *expect_verdict, Some(&table))?;
            if let Some(n) = name {
                report.put("name", n)?;
            }
        }
        FormalityConfig::Actions { name, actions, fragment_degree, expect_verdict } => {
            let qs = actions.iter().map(IntMatrix::to_q).collect::<Result<Vec<_>>>()?;
            bfm_run(&mut report, &qs, *fragment_degree, *expect_verdict, None)?;
            if let Some(n) = name {
                report.put("name", n)?;
            }
        }
    }
    Ok(finish(report, start))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum HodgeSpec {
    Named(String),
    Torus { torus: usize },
    Table { n: usize, h: Vec<Vec<usize>> },
}

impl HodgeSpec {
    fn resolve(&self) -> Result<HodgeTable> {
        match self {
            HodgeSpec::Named(n) => match n.as_str() {
                "inoue" => Ok(HodgeTable::inoue()),
                "point" => Ok(HodgeTable::point()),
                other => Err(Error::Parse(format!("unknown Hodge table {other}"))),
            },
            HodgeSpec::Torus { torus } => Ok(HodgeTable::torus(*torus)),
            HodgeSpec::Table { n, h } => {
                if h.len() != n + 1 || h.iter().any(|r| r.len() != n + 1) {
                    return Err(Error::Dimension(format!("Hodge table must be {0}x{0}", n + 1)));
                }
                Ok(HodgeTable { n: *n, h: h.clone() })
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DolbeaultSpec {
    /// Integer matrix whose `(t0, p)` define the Inoue frame.
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BorelConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub base: HodgeSpec,
    pub fiber: HodgeSpec,
    /// Expected `h^{p,q}` of the total space, compared with the collapsed page.
    #[serde(default)]
    pub expect: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub dolbeault_frame: Option<DolbeaultSpec>,
    #[serde(default)]
    pub grid: Option<usize>,
}

/// `borel CONFIG [--degenerate --justification TEXT]`.
pub fn borel_config(text: &str, degeneration: Degeneration, opts: &RunOptions) -> Result<Outcome> {
    let config: BorelConfig = parse_json(text)?;
    borel_run(&config, text.as_bytes(), degeneration, opts)
}

pub fn borel_run(config: &BorelConfig, raw: &[u8], degeneration: Degeneration, opts: &RunOptions) -> Result<Outcome> {
    let start = Instant::now();
    let mut report = RunReport::new("borel", &[raw]);
    let base = config.base.resolve()?;
    let fiber = config.fiber.resolve()?;
    let page = borel_e2(&base, &fiber);
    let collapsed = collapse(&page, degeneration);
    let kunneth = hodge_kunneth(&base, &fiber);
    report.push(CheckRecord::flag("collapse_is_kunneth", collapsed.table == kunneth, &collapsed.label))?;
    if let Some(expect) = &config.expect {
        let got: Vec<usize> = collapsed.table.h.iter().flatten().copied().collect();
        let want: Vec<usize> = expect.iter().flatten().copied().collect();
        report.push(CheckRecord::dims("hodge_numbers", got, want).with_detail(collapsed.label.clone()))?;
    }
    if let Some(d) = &config.dolbeault_frame {
        let data = inoue::solve(&d.matrix)?;
        let cert = verify_dolbeault_frame(&FrameFamily::from_data(&data), opts.grid_or(config.grid))?;
        for item in &cert.items {
            report.push(item_record("dolbeault", item, opts.tol))?;
        }
        report.put("dolbeault", &cert)?;
    }
    if let Some(n) = &config.name {
        report.put("name", n)?;
    }
    report.put("e2", &page)?;
    report.put("collapsed", &collapsed)?;
    Ok(finish(report, start))
}

/// Configs shipped with the crate, by file name.
pub const SHIPPED_CONFIGS: &[(&str, &str)] = &[
    ("example31_matrix.json", include_str!("../examples/configs/example31_matrix.json")),
    ("example31.json", include_str!("../examples/configs/example31.json")),
    ("example71.json", include_str!("../examples/configs/example71.json")),
    ("rotation_fiber_gk.json", include_str!("../examples/configs/rotation_fiber_gk.json")),
    ("cohomology_inoue.json", include_str!("../examples/configs/cohomology_inoue.json")),
    ("cohomology_rotation.json", include_str!("../examples/configs/cohomology_rotation.json")),
    ("cohomology_identity_fiber.json", include_str!("../examples/configs/cohomology_identity_fiber.json")),
    ("formality_sm.json", include_str!("../examples/configs/formality_sm.json")),
    ("formality_rotation_model.json", include_str!("../examples/configs/formality_rotation_model.json")),
    ("formality_inoue_bfm.json", include_str!("../examples/configs/formality_inoue_bfm.json")),
    ("formality_rotation_bfm.json", include_str!("../examples/configs/formality_rotation_bfm.json")),
    ("borel_inoue_t4.json", include_str!("../examples/configs/borel_inoue_t4.json")),
];

pub fn shipped_config(name: &str) -> Result<&'static str> {
    SHIPPED_CONFIGS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Invalid(format!("no shipped config {name}")))
}

/// `all-paper-checks`: every shipped config, merged into one report.
pub fn all_paper_checks(opts: &RunOptions) -> Result<Outcome> {
    let start = Instant::now();
    let raws: Vec<&[u8]> = SHIPPED_CONFIGS.iter().map(|(_, t)| t.as_bytes()).collect();
    let mut report = RunReport::new("all-paper-checks", &raws);
    for (name, text) in SHIPPED_CONFIGS {
        let stem = name.trim_end_matches(".json");
        let sub = if name.starts_with("example31_matrix") {
            solve_inoue(text)?
        } else if name.starts_with("cohomology") {
            cohomology_config(text)?
        } else if name.starts_with("formality") {
            formality_config(text)?
        } else if name.starts_with("borel") {
            let justification = "the fiber is a flat torus with trivial monodromy on its Dolbeault cohomology";
            borel_config(text, Degeneration::assumed(justification)?, opts)?
        } else {
            verify_gk_config(text, opts)?
        };
        report.absorb(stem, sub.report)?;
    }
    Ok(finish(report, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_not_admissible() {
        let out = solve_inoue("[[1,0,0],[0,1,0],[0,0,1]]").unwrap();
        assert_eq!(out.exit, Exit::NotAdmissible);
        assert!(out.report.to_json().unwrap().contains("repeated eigenvalue 1"));
    }

    #[test]
    fn malformed_matrix_is_usage_error() {
        let e = solve_inoue("[[1,0],[0").unwrap_err();
        assert_eq!(exit_for_error(&e), Exit::Usage);
    }

    #[test]
    fn enumeration_contains_golden_pair() {
        let out = enumerate_inoue(0, 3, -3, 3).unwrap();
        assert_eq!(out.exit, Exit::Pass);
        assert!(out.report.data["admissible"].as_array().unwrap().iter().any(|e| e["m"] == 1 && e["n"] == 0));
    }

    #[test]
    fn custom_frame_missing_coefficient_is_usage_error() {
        let text = r#"{"frame": {"kind": "custom", "a1": "(exp t)", "b2": "1", "period": 1.0}}"#;
        let e = verify_gk_config(text, &RunOptions::default()).unwrap_err();
        assert_eq!(exit_for_error(&e), Exit::Usage);
    }
}
