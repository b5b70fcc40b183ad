//! Job configuration, the seed → frame → dressing → checks pipeline, reports and OBJ meshes.

use crate::backlund::{classical_transform, dressing_to_backlund, integrate_theta, procrustes_align, two_step_real};
use crate::dressing::{bb_params, permutability_check, reality_factor, Dressing, RealityPair, SimpleFactor};
use crate::error::{Error, Result};
use crate::framing::{self, Case, Forms, IntegrationOptions};
use crate::grid::{Field, Grid, ScalarField, SurfaceField};
use crate::linalg::{c, IsotropicLine, C64};
use crate::pseudosphere::{self, RealSimpleFactor};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseName {
    CgcPositive,
    Pseudospherical,
}

impl CaseName {
    pub fn case(self) -> Case {
        match self {
            CaseName::CgcPositive => Case::Positive,
            CaseName::Pseudospherical => Case::Negative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeedSpec {
    Vacuum,
    Pendulum {
        omega0: f64,
        #[serde(default)]
        omega0_prime: f64,
    },
    Kink {
        rapidity: f64,
    },
}

/// Either `n`/`h` for a square grid or explicit `nx, ny, hx, hy`; the basepoint defaults
/// to the center node.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nx: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ny: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i0: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j0: Option<usize>,
}

impl GridSpec {
    pub fn resolve(&self) -> Result<Grid> {
        let nx = self.nx.or(self.n).ok_or_else(|| Error::config("/grid/nx", "missing node count (n or nx)"))?;
        let ny = self.ny.or(self.n).ok_or_else(|| Error::config("/grid/ny", "missing node count (n or ny)"))?;
        let hx = self.hx.or(self.h).ok_or_else(|| Error::config("/grid/hx", "missing spacing (h or hx)"))?;
        let hy = self.hy.or(self.h).ok_or_else(|| Error::config("/grid/hy", "missing spacing (h or hy)"))?;
        let i0 = self.i0.unwrap_or(nx / 2);
        let j0 = self.j0.unwrap_or(ny / 2);
        Grid::new(nx, ny, hx, hy, i0, j0).map_err(|e| Error::config("/grid", e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSpec {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub alpha: [f64; 2],
    pub line: LineSpec,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mesh: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Numerics {
    #[serde(default = "default_dlambda")]
    pub dlambda: f64,
    #[serde(default = "default_substeps")]
    pub substeps: usize,
}

fn default_dlambda() -> f64 {
    framing::DEFAULT_DLAMBDA
}

fn default_substeps() -> usize {
    IntegrationOptions::default().substeps
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics { dlambda: default_dlambda(), substeps: default_substeps() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub case: CaseName,
    pub seed: SeedSpec,
    pub grid: GridSpec,
    /// Spectral parameter as `[re, im]`.
    pub lambda: [f64; 2],
    #[serde(default)]
    pub factors: Vec<FactorSpec>,
    /// Replace the single factor by its two-factor real completion.
    #[serde(default)]
    pub reality: bool,
    /// Compare against the classical Bäcklund oracle.
    #[serde(default)]
    pub oracle_compare: bool,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    /// Checks to run; `None` selects the defaults for the job shape.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default)]
    pub numerics: Numerics,
}

/// Check names with their default tolerances.
pub const CHECKS: &[(&str, f64)] = &[
    ("flatness", 1e-6),
    ("laurent_fit", 1e-7),
    ("constant_length_spread", 1e-8),
    ("constant_angle_spread", 1e-8),
    ("orthogonality", 1e-8),
    ("curvature_deviation", 1e-3),
    ("coordinate_lines", 1e-5),
    ("permutability", 1e-10),
    ("reality_imag_sup", 1e-8),
    ("reality_condition", 1e-10),
    ("oracle_alignment", 1e-4),
    ("sine_gordon", 1e-4),
];

pub fn default_tolerance(name: &str) -> Option<f64> {
    CHECKS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

fn needs_forms(name: &str) -> bool {
    matches!(name, "curvature_deviation" | "coordinate_lines" | "sine_gordon")
}

/// Spectral samples for the permutability check.
pub fn permutability_samples() -> Vec<C64> {
    (0..12).map(|k| C64::from_polar(0.4 + 0.15 * k as f64, 0.3 + 0.5 * k as f64)).collect()
}

/// Spectral samples for `R(u) = u`.
pub fn reality_samples() -> Vec<C64> {
    vec![c(0.7, 0.0), c(1.0, 0.0), c(1.5, 0.0), C64::from_polar(1.0, std::f64::consts::FRAC_PI_3), c(0.3, 0.7)]
}

fn pointer_from_path(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => {
                let _ = write!(out, "/{index}");
            }
            Segment::Map { key } => {
                let _ = write!(out, "/{}", key.replace('~', "~0").replace('/', "~1"));
            }
            Segment::Enum { variant } => {
                let _ = write!(out, "/{variant}");
            }
            Segment::Unknown => {}
        }
    }
    out
}

/// Parses and validates a job configuration.
pub fn parse_config(text: &str) -> Result<JobConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: JobConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_from_path(e.path());
        Error::config(pointer, e.inner().to_string())
    })?;
    validate(&cfg)?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<JobConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

fn line_of(spec: &LineSpec, k: usize) -> Result<IsotropicLine> {
    IsotropicLine::new(c(spec.a[0], spec.a[1]), c(spec.b[0], spec.b[1]))
        .map_err(|e| Error::config(format!("/factors/{k}/line"), e.to_string()))
}

fn factor_of(spec: &FactorSpec, k: usize) -> Result<SimpleFactor> {
    let line = line_of(&spec.line, k)?;
    let alpha = c(spec.alpha[0], spec.alpha[1]);
    if !alpha.is_finite() || alpha.norm() == 0.0 {
        return Err(Error::config(format!("/factors/{k}/alpha"), "α must be finite and nonzero"));
    }
    SimpleFactor::new(alpha, line).map_err(|e| Error::config(format!("/factors/{k}"), e.to_string()))
}

fn lambda_of(cfg: &JobConfig) -> C64 {
    c(cfg.lambda[0], cfg.lambda[1])
}

/// The checks a job runs, in report order.
pub fn enabled_checks(cfg: &JobConfig) -> Vec<String> {
    let mut names: Vec<String> = match &cfg.checks {
        Some(list) => list.clone(),
        None => {
            let mut v = vec!["flatness", "laurent_fit", "orthogonality", "curvature_deviation", "coordinate_lines"];
            let n = cfg.factors.len();
            if cfg.reality {
                v.extend(["reality_imag_sup", "reality_condition"]);
            } else if n == 1 {
                v.extend(["constant_length_spread", "constant_angle_spread"]);
            } else if n == 2 {
                v.push("permutability");
            }
            if cfg.case == CaseName::Pseudospherical && n > 0 {
                v.push("sine_gordon");
            }
            v.into_iter().map(String::from).collect()
        }
    };
    if cfg.oracle_compare && !names.iter().any(|n| n == "oracle_alignment") {
        names.push("oracle_alignment".into());
    }
    names.sort();
    names.dedup();
    names
}

/// Semantic validation beyond the schema.
pub fn validate(cfg: &JobConfig) -> Result<()> {
    let grid = cfg.grid.resolve()?;
    let lambda = lambda_of(cfg);
    if !lambda.is_finite() || lambda.norm() == 0.0 {
        return Err(Error::config("/lambda", "λ must be finite and nonzero"));
    }
    let positive = cfg.case == CaseName::CgcPositive;
    match cfg.seed {
        SeedSpec::Vacuum => {}
        SeedSpec::Pendulum { omega0, omega0_prime } => {
            if !positive {
                return Err(Error::config("/seed/kind", "pendulum seeds solve sinh-Gordon; use case cgc_positive"));
            }
            if omega0 == 0.0 && omega0_prime == 0.0 {
                return Err(Error::config("/seed", "pendulum seed needs (omega0, omega0_prime) ≠ (0, 0)"));
            }
        }
        SeedSpec::Kink { rapidity } => {
            if positive {
                return Err(Error::config("/seed/kind", "kink seeds solve sine-Gordon; use case pseudospherical"));
            }
            if rapidity == 0.0 || !rapidity.is_finite() {
                return Err(Error::config("/seed/rapidity", "rapidity must be finite and nonzero"));
            }
        }
    }
    if !positive && cfg.lambda[1] != 0.0 {
        return Err(Error::config("/lambda/1", "pseudospherical jobs need real λ"));
    }
    for (k, f) in cfg.factors.iter().enumerate() {
        let sf = factor_of(f, k)?;
        if let Err(e) = sf.check_pole(lambda) {
            return Err(Error::config(format!("/factors/{k}/alpha"), e.to_string()));
        }
        if !positive {
            RealSimpleFactor::new(sf.alpha, sf.line).map_err(|e| Error::config(format!("/factors/{k}"), e.to_string()))?;
        }
    }
    if cfg.reality {
        if !positive {
            return Err(Error::config("/reality", "real factors are already real; reality applies to cgc_positive"));
        }
        if cfg.factors.len() != 1 {
            return Err(Error::config("/reality", "reality completes exactly one factor"));
        }
        if (lambda.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::config("/lambda", "real surfaces need |λ| = 1"));
        }
        let a = c(cfg.factors[0].alpha[0], cfg.factors[0].alpha[1]);
        if (a.norm() - 1.0).abs() < 1e-12 {
            return Err(Error::config("/factors/0/alpha", "reality needs |α| ≠ 1"));
        }
        if (a.conj().inv() - lambda).norm() < 1e-12 || (a.conj().inv() + lambda).norm() < 1e-12 {
            return Err(Error::config("/lambda", "λ is a pole of the completing factor"));
        }
    }
    if cfg.oracle_compare && (!positive || cfg.factors.len() != 1) {
        return Err(Error::config("/oracle_compare", "the classical oracle covers cgc_positive jobs with one factor"));
    }
    if cfg.numerics.substeps == 0 {
        return Err(Error::config("/numerics/substeps", "substeps must be at least 1"));
    }
    if !(cfg.numerics.dlambda > 0.0 && cfg.numerics.dlambda < 0.1) {
        return Err(Error::config("/numerics/dlambda", "dlambda must lie in (0, 0.1)"));
    }
    for (key, tol) in &cfg.tolerances {
        let ptr = format!("/tolerances/{key}");
        if default_tolerance(key).is_none() {
            return Err(Error::config(ptr, "unknown check"));
        }
        if !(*tol > 0.0 && tol.is_finite()) {
            return Err(Error::config(ptr, "tolerance must be positive"));
        }
    }
    if let Some(list) = &cfg.checks {
        for (k, name) in list.iter().enumerate() {
            let ptr = format!("/checks/{k}");
            if default_tolerance(name).is_none() {
                return Err(Error::config(ptr, format!("unknown check {name:?}")));
            }
            check_applicable(cfg, name).map_err(|m| Error::config(ptr, m))?;
        }
    }
    if enabled_checks(cfg).iter().any(|n| needs_forms(n)) && (grid.nx < 5 || grid.ny < 5) {
        return Err(Error::config("/grid", "curvature checks need at least 5×5 nodes"));
    }
    Ok(())
}

fn check_applicable(cfg: &JobConfig, name: &str) -> std::result::Result<(), String> {
    let n = cfg.factors.len();
    let ok = match name {
        "constant_length_spread" | "constant_angle_spread" => n == 1 && !cfg.reality,
        "permutability" => n == 2 && !cfg.reality,
        "reality_imag_sup" | "reality_condition" => cfg.reality,
        "oracle_alignment" => cfg.case == CaseName::CgcPositive && n == 1,
        "sine_gordon" => cfg.case == CaseName::Pseudospherical && n > 0,
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("check {name:?} does not apply to this job"))
    }
}

/// Applies `key=value` tolerance overrides.
pub fn apply_overrides(cfg: &mut JobConfig, overrides: &[(String, f64)]) -> Result<()> {
    for (k, v) in overrides {
        let ptr = format!("/tolerances/{k}");
        if default_tolerance(k).is_none() {
            return Err(Error::config(ptr, "unknown check"));
        }
        if !(*v > 0.0 && v.is_finite()) {
            return Err(Error::config(ptr, "tolerance must be positive"));
        }
        cfg.tolerances.insert(k.clone(), *v);
    }
    Ok(())
}

pub fn parse_override(s: &str) -> Result<(String, f64)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| Error::config("/tolerances", format!("override {s:?} is not key=value")))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("/tolerances/{}", k.trim()), format!("{v:?} is not a number")))?;
    Ok((k.trim().to_string(), v))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    /// `None` when the computed value is not finite.
    pub value: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: BTreeMap<String, CheckResult>,
    pub observables: BTreeMap<String, f64>,
    pub pass: bool,
}

impl VerificationReport {
    fn add(&mut self, name: &str, value: f64, tolerance: f64) {
        let pass = value.is_finite() && value < tolerance;
        let value = value.is_finite().then_some(value);
        self.checks.insert(name.to_string(), CheckResult { value, tolerance, pass });
    }

    fn observe(&mut self, name: &str, value: f64) {
        if value.is_finite() {
            self.observables.insert(name.to_string(), value);
        }
    }

    fn observe_complex(&mut self, name: &str, z: C64) {
        self.observe(&format!("{name}_re"), z.re);
        self.observe(&format!("{name}_im"), z.im);
    }

    fn finish(&mut self) {
        self.pass = self.checks.values().all(|c| c.pass);
    }
}

/// Everything a job produces.
#[derive(Debug, Clone)]
pub struct JobOutput {
    pub report: VerificationReport,
    pub surface: SurfaceField,
    pub normal: SurfaceField,
}

fn build_seed(cfg: &JobConfig, grid: Grid) -> Result<ScalarField> {
    match cfg.seed {
        SeedSpec::Vacuum => Ok(framing::seed_vacuum(grid)),
        SeedSpec::Pendulum { omega0, omega0_prime } => framing::seed_pendulum(grid, omega0, omega0_prime),
        SeedSpec::Kink { rapidity } => pseudosphere::sg_seed_kink(grid, rapidity),
    }
}

fn max_over(f: &SurfaceField, g: &SurfaceField, h: impl Fn(crate::linalg::CVec3, crate::linalg::CVec3) -> f64) -> f64 {
    f.data.iter().zip(&g.data).map(|(a, b)| h(*a, *b)).fold(0.0, f64::max)
}

/// Runs the pipeline. With `evaluate` false only the surface is produced.
pub fn run_job_with(cfg: &JobConfig, evaluate: bool) -> Result<JobOutput> {
    validate(cfg)?;
    let grid = cfg.grid.resolve()?;
    let case = cfg.case.case();
    let lambda = lambda_of(cfg);
    let omega = build_seed(cfg, grid)?;
    let factors = cfg.factors.iter().enumerate().map(|(k, f)| factor_of(f, k)).collect::<Result<Vec<_>>>()?;
    let pair: Option<RealityPair> = if cfg.reality { Some(reality_factor(factors[0].alpha, factors[0].line)?) } else { None };
    let chain: Vec<SimpleFactor> = match &pair {
        Some(rp) => rp.chain().to_vec(),
        None => factors.clone(),
    };
    let opts = IntegrationOptions { substeps: cfg.numerics.substeps };
    let d = Dressing::new(case, &omega, &chain, lambda, cfg.numerics.dlambda, opts)?;
    let surface = d.surface()?;
    let normal = d.normal()?;
    let mut rep = VerificationReport::default();
    rep.observe("max_imag", surface.max_imag());
    if !evaluate {
        rep.finish();
        return Ok(JobOutput { report: rep, surface, normal });
    }

    let names = enabled_checks(cfg);
    let tol = |n: &str| cfg.tolerances.get(n).copied().or_else(|| default_tolerance(n)).expect("known check");
    let forms: Option<Field<Option<Forms>>> =
        if names.iter().any(|n| needs_forms(n)) { Some(framing::fundamental_forms(&surface, &normal)?) } else { None };
    let seed_surface = d.seed_surface()?;
    let seed_normal = d.seed_normal();

    for name in &names {
        let value = match name.as_str() {
            "flatness" => framing::flatness_residual_with(case, &omega, lambda)?,
            "laurent_fit" => d.laurent_residual(lambda.norm())?,
            "constant_length_spread" => {
                let p = bb_params(factors[0].alpha, lambda)?;
                let expected = match case {
                    Case::Positive => p.big_a_val * p.big_a_val * lambda * lambda,
                    Case::Negative => -(p.big_a_val * p.big_a_val * lambda * lambda),
                };
                let (i0, j0) = (grid.i0, grid.j0);
                let d0 = surface.at(i0, j0) - seed_surface.at(i0, j0);
                rep.observe_complex("constant_length", d0.dot(&d0));
                rep.observe_complex("constant_length_expected", expected);
                max_over(&surface, &seed_surface, |a, b| ((a - b).dot(&(a - b)) - expected).norm())
            }
            "constant_angle_spread" => {
                let p = bb_params(factors[0].alpha, lambda)?;
                let (i0, j0) = (grid.i0, grid.j0);
                rep.observe_complex("normal_angle_cos", normal.at(i0, j0).dot(&seed_normal.at(i0, j0)));
                rep.observe_complex("normal_angle_cos_expected", p.cos_sigma);
                max_over(&normal, &seed_normal, |a, b| (a.dot(&b) - p.cos_sigma).norm())
            }
            "orthogonality" => {
                let mut worst = d.frame()?.max_orthogonality_defect();
                worst = worst.max(normal.data.iter().map(|n| (n.dot(n) - 1.0).norm()).fold(0.0, f64::max));
                if chain.len() == 1 {
                    for k in 0..grid.len() {
                        let disp = surface.data[k] - seed_surface.data[k];
                        worst = worst.max(disp.dot(&normal.data[k]).norm()).max(disp.dot(&seed_normal.data[k]).norm());
                    }
                }
                worst
            }
            "curvature_deviation" => {
                let st = framing::curvature_stats(forms.as_ref().expect("forms"), case.curvature(), 1e-6);
                rep.observe("curvature_nodes_used", st.used as f64);
                rep.observe("curvature_nodes_flagged", st.flagged as f64);
                if st.used == 0 {
                    f64::NAN
                } else {
                    st.max_deviation
                }
            }
            "coordinate_lines" => {
                let fm = forms.as_ref().expect("forms");
                fm.data
                    .iter()
                    .flatten()
                    .map(|f| match case {
                        Case::Positive => f.f.norm(),
                        Case::Negative => f.e.norm().max(f.g.norm()),
                    })
                    .fold(0.0, f64::max)
            }
            "permutability" => permutability_check(&factors[0], &factors[1], &permutability_samples())?,
            "reality_imag_sup" => surface.max_imag(),
            "reality_condition" => pair.as_ref().expect("reality pair").reality_residual(&reality_samples())?,
            "oracle_alignment" => {
                let input = dressing_to_backlund(&seed_surface, &omega, &factors[0], lambda)?;
                rep.observe_complex("backlund_beta", input.beta);
                rep.observe_complex("backlund_theta0", input.theta0);
                let classical = if cfg.reality {
                    two_step_real(&omega, &seed_surface, input.beta, input.theta0)?
                } else {
                    let theta = integrate_theta(&omega, input)?;
                    classical_transform(&seed_surface, &omega, &theta, input.beta)?
                };
                procrustes_align(&classical, &surface)?.max_pointwise_error
            }
            "sine_gordon" => {
                let w = pseudosphere::extract_omega(&surface, &normal)?;
                pseudosphere::sine_gordon_residual(&w)?
            }
            other => unreachable!("validated check name {other}"),
        };
        rep.add(name, value, tol(name));
    }
    rep.finish();
    Ok(JobOutput { report: rep, surface, normal })
}

pub fn run_job(cfg: &JobConfig) -> Result<JobOutput> {
    run_job_with(cfg, true)
}

fn canonical(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, canonical(v))).collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        other => other,
    }
}

/// Canonical JSON: sorted keys, two-space indent, shortest round-trip floats, trailing newline.
pub fn report_to_string(report: &VerificationReport) -> String {
    let v = canonical(serde_json::to_value(report).expect("report serializes"));
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

pub fn write_report(report: &VerificationReport, path: &Path) -> Result<()> {
    std::fs::write(path, report_to_string(report)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_report(text: &str) -> Result<VerificationReport> {
    serde_json::from_str(text).map_err(|e| Error::config("", e.to_string()))
}

/// Which part of a complex surface to write.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshPart {
    Real,
    Imag,
}

/// `printf("%.17g")`.
pub fn format_g17(x: f64) -> String {
    const P: i32 = 17;
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let mant = trim_fraction(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{:.*}", (P - 1 - exp) as usize, x);
        trim_fraction(&fixed).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// OBJ text: `v x y z` per node in row-major order, then one quad per cell.
pub fn mesh_to_obj(f: &SurfaceField, part: MeshPart) -> Result<String> {
    let g = f.grid;
    let mut out = String::with_capacity(g.len() * 64);
    for v in &f.data {
        let p = match part {
            MeshPart::Real => v.re(),
            MeshPart::Imag => v.im(),
        };
        if !p.iter().all(|x| x.is_finite()) {
            return Err(Error::Domain("cannot export non-finite vertices".into()));
        }
        let _ = writeln!(out, "v {} {} {}", format_g17(p[0]), format_g17(p[1]), format_g17(p[2]));
    }
    for j in 0..g.ny - 1 {
        for i in 0..g.nx - 1 {
            let a = g.idx(i, j) + 1;
            let b = g.idx(i + 1, j) + 1;
            let cc = g.idx(i + 1, j + 1) + 1;
            let d = g.idx(i, j + 1) + 1;
            let _ = writeln!(out, "f {a} {b} {cc} {d}");
        }
    }
    Ok(out)
}

/// Writes a mesh. Without an explicit part the surface must be real to `real_tol`.
pub fn export_mesh(f: &SurfaceField, path: &Path, part: Option<MeshPart>, real_tol: f64) -> Result<()> {
    let part = match part {
        Some(p) => p,
        None if f.is_real(real_tol) => MeshPart::Real,
        None => {
            return Err(Error::config(
                "/outputs/mesh",
                format!("surface is complex (imaginary sup {:.3e}); choose the real or imaginary part", f.max_imag()),
            ))
        }
    };
    let text = mesh_to_obj(f, part)?;
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Tolerance under which a surface counts as real for export.
pub fn real_tolerance(cfg: &JobConfig) -> f64 {
    cfg.tolerances
        .get("reality_imag_sup")
        .copied()
        .or_else(|| default_tolerance("reality_imag_sup"))
        .expect("known check")
}
