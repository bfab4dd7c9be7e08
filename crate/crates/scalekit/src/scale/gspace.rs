//! Scaled group-space checks: a group `G` with weight `omega` acting on a
//! space `M` with scale `sigma`, probing
//! `sigma(g*m) <= C * (omega(g) * sigma(m))^l` on sampled pairs.
//!
//! Three built-in pairings:
//!
//! * `z-line`: `Z` translating the real line, `sigma = 1+|r|`,
//!   `omega = 1+|n|` (or the trivial weight in the `z-line-trivial`
//!   variant, which is violated);
//! * `axb-line`: the `ax+b` group acting affinely on the line,
//!   `omega(g) = e^{|a|} + |e^{-a}b| + |b| + 1`;
//! * `gl-conj:n`: `GL(n,R)` acting on `M(n,R)` by conjugation,
//!   `sigma(S) = 1 + ||S||`, `omega(A) = max(||A||, ||A^{-1}||)`
//!   (holds with `l = 2`, not `l = 1`).
//!
//! Sampling is dyadic: level `k` draws group elements and points of
//! magnitude about `2^k` (plus deliberately ill-conditioned matrices for
//! the conjugation action, whose worst case random matrices miss).

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{SkError, SkResult};
use crate::group::{Element, GroupSpec};
use crate::report::{EvidenceDomain, Fit, ProbeReport, Verdict};

use super::fit::{power_fit, FitConfig, Levels};

/// A point of the acted-on space.
#[derive(Debug, Clone)]
enum MPoint {
    Real(f64),
    Mat(DMatrix<f64>),
}

impl std::fmt::Display for MPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MPoint::Real(r) => write!(f, "{r}"),
            MPoint::Mat(m) => {
                let rows: Vec<String> = m
                    .row_iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| format!("{x:.3}"))
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                write!(f, "{}", rows.join(";"))
            }
        }
    }
}

/// A built-in scaled group-space pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GSpaceSpec {
    /// `Z` translating the line; `trivial_weight` replaces `1+|n|` by 1.
    ZTranslationLine { trivial_weight: bool },
    /// The `ax+b` group acting by `g*m = e^{g1} m + g2`.
    AxbAffineLine,
    /// `GL(n,R)` conjugating `M(n,R)`.
    GlConjugation { n: u32 },
}

impl GSpaceSpec {
    /// Parses `z-line`, `z-line-trivial`, `axb-line`, `gl-conj:n`.
    pub fn parse(s: &str) -> SkResult<Self> {
        match s {
            "z-line" => Ok(Self::ZTranslationLine {
                trivial_weight: false,
            }),
            "z-line-trivial" => Ok(Self::ZTranslationLine {
                trivial_weight: true,
            }),
            "axb-line" => Ok(Self::AxbAffineLine),
            _ => match s.split_once(':') {
                Some(("gl-conj", n)) => {
                    let n: u32 = n
                        .parse()
                        .map_err(|_| SkError::BadGroupSpec(s.to_string()))?;
                    if n < 2 {
                        return Err(SkError::BadGroupSpec(s.to_string()));
                    }
                    Ok(Self::GlConjugation { n })
                }
                _ => Err(SkError::BadGroupSpec(s.to_string())),
            },
        }
    }

    /// The acting group.
    pub fn group(&self) -> SkResult<GroupSpec> {
        match self {
            Self::ZTranslationLine { .. } => GroupSpec::parse("z"),
            Self::AxbAffineLine => GroupSpec::parse("axb"),
            Self::GlConjugation { n } => GroupSpec::parse(&format!("gl:{n}")),
        }
    }

    pub fn format(&self) -> String {
        match self {
            Self::ZTranslationLine { trivial_weight } => {
                if *trivial_weight {
                    "z-line-trivial".into()
                } else {
                    "z-line".into()
                }
            }
            Self::AxbAffineLine => "axb-line".into(),
            Self::GlConjugation { n } => format!("gl-conj:{n}"),
        }
    }

    /// Dyadic level ceiling suited to the pairing (matrix norms overflow
    /// sooner than line coordinates).
    fn level_max(&self) -> u32 {
        match self {
            Self::GlConjugation { .. } => 8,
            _ => 12,
        }
    }

    fn sample_group(&self, level: u32, rng: &mut ChaCha8Rng) -> Element {
        let mag = 2f64.powi(level as i32);
        let sign = |rng: &mut ChaCha8Rng| if rng.gen::<bool>() { 1.0 } else { -1.0 };
        match self {
            Self::ZTranslationLine { .. } => {
                let lo = if level == 0 { 0 } else { 2i64.pow(level - 1) };
                let hi = 2i64.pow(level);
                let s: i64 = if rng.gen::<bool>() { 1 } else { -1 };
                Element::Vector(vec![s * rng.gen_range(lo..=hi)])
            }
            Self::AxbAffineLine => {
                let a = sign(rng) * rng.gen::<f64>() * level as f64;
                let b = sign(rng) * rng.gen::<f64>() * mag;
                Element::Affine { a, b }
            }
            Self::GlConjugation { n } => {
                let n = *n as usize;
                if rng.gen::<bool>() {
                    // scaled random matrix (resampled until well-posed)
                    loop {
                        let m = DMatrix::from_fn(n, n, |_, _| sign(rng) * rng.gen::<f64>() * mag);
                        if m.determinant().abs() > 1e-6 * mag.powi(n as i32) {
                            return mat_element(&m);
                        }
                    }
                } else {
                    // deliberately ill-conditioned: Q1 * diag(2^k, 2^-k, 1...) * Q2
                    let mut d = DMatrix::identity(n, n);
                    d[(0, 0)] = mag;
                    d[(1, 1)] = 1.0 / mag;
                    let q1 = random_rotation(n, rng);
                    let q2 = random_rotation(n, rng);
                    mat_element(&(q1 * d * q2))
                }
            }
        }
    }

    fn sample_point(&self, level: u32, rng: &mut ChaCha8Rng) -> MPoint {
        let mag = 2f64.powi(level as i32);
        let sign = |rng: &mut ChaCha8Rng| if rng.gen::<bool>() { 1.0 } else { -1.0 };
        match self {
            Self::GlConjugation { n } => {
                let n = *n as usize;
                MPoint::Mat(DMatrix::from_fn(n, n, |_, _| {
                    sign(rng) * rng.gen::<f64>() * mag
                }))
            }
            _ => MPoint::Real(sign(rng) * rng.gen::<f64>() * mag),
        }
    }

    /// The action `g * m`.
    fn act(&self, g: &Element, m: &MPoint) -> SkResult<MPoint> {
        let wrong = || SkError::BadProbeParams("element does not match the action".into());
        Ok(match (self, g, m) {
            (Self::ZTranslationLine { .. }, Element::Vector(v), MPoint::Real(r)) => {
                MPoint::Real(v[0] as f64 + r)
            }
            (Self::AxbAffineLine, &Element::Affine { a, b }, MPoint::Real(r)) => {
                MPoint::Real(a.exp() * r + b)
            }
            (Self::GlConjugation { .. }, Element::Mat { .. }, MPoint::Mat(s)) => {
                let a = element_mat(g)?;
                let a_inv = a.clone().try_inverse().ok_or_else(wrong)?;
                MPoint::Mat(&a * s * a_inv)
            }
            _ => return Err(wrong()),
        })
    }

    /// `log sigma(m)`.
    fn log_sigma(&self, m: &MPoint) -> f64 {
        match m {
            MPoint::Real(r) => (1.0 + r.abs()).ln(),
            MPoint::Mat(s) => (1.0 + op_norm(s)).ln(),
        }
    }

    /// `log omega(g)`.
    fn log_omega(&self, g: &Element) -> SkResult<f64> {
        let wrong = || SkError::BadProbeParams("element does not match the action".into());
        Ok(match (self, g) {
            (Self::ZTranslationLine { trivial_weight }, Element::Vector(v)) => {
                if *trivial_weight {
                    0.0
                } else {
                    (1.0 + v[0].abs() as f64).ln()
                }
            }
            (Self::AxbAffineLine, &Element::Affine { a, b }) => {
                (a.abs().exp() + ((-a).exp() * b).abs() + b.abs() + 1.0).ln()
            }
            (Self::GlConjugation { .. }, Element::Mat { .. }) => {
                let m = element_mat(g)?;
                let m_inv = m.clone().try_inverse().ok_or_else(wrong)?;
                op_norm(&m).max(op_norm(&m_inv)).ln()
            }
            _ => return Err(wrong()),
        })
    }

    fn point_distance(&self, a: &MPoint, b: &MPoint) -> f64 {
        match (a, b) {
            (MPoint::Real(x), MPoint::Real(y)) => (x - y).abs() / (1.0 + x.abs().max(y.abs())),
            (MPoint::Mat(x), MPoint::Mat(y)) => {
                (x - y).norm() / (1.0 + x.norm().max(y.norm()))
            }
            _ => f64::INFINITY,
        }
    }
}

impl std::fmt::Display for GSpaceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format())
    }
}

fn mat_element(m: &DMatrix<f64>) -> Element {
    Element::Mat {
        n: m.nrows() as u32,
        // nalgebra stores column-major; transpose to get row-major data
        rows: m.transpose().as_slice().to_vec(),
    }
}

fn element_mat(g: &Element) -> SkResult<DMatrix<f64>> {
    match g {
        Element::Mat { n, rows } => Ok(DMatrix::from_row_slice(*n as usize, *n as usize, rows)),
        _ => Err(SkError::BadProbeParams("expected a matrix element".into())),
    }
}

fn op_norm(m: &DMatrix<f64>) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

/// A Haar-ish random rotation via the QR decomposition of a random matrix.
fn random_rotation(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let m = DMatrix::from_fn(n, n, |_, _| rng.gen::<f64>() - 0.5);
    m.qr().q()
}

/// Verifies `e*m = m` and `(gh)*m = g*(h*m)` on sampled triples to `1e-9`
/// relative error.
fn check_action_axioms(
    spec: &GSpaceSpec,
    group: &GroupSpec,
    rng: &mut ChaCha8Rng,
) -> SkResult<()> {
    let id = group.identity();
    for level in 0..=2u32 {
        for _ in 0..8 {
            let g = spec.sample_group(level, rng);
            let h = spec.sample_group(level, rng);
            let m = spec.sample_point(level, rng);
            let em = spec.act(&id, &m)?;
            if spec.point_distance(&em, &m) > 1e-9 {
                return Err(SkError::BadProbeParams(format!(
                    "action axiom e*m = m fails at m = {m}"
                )));
            }
            let gh = group.multiply(&g, &h)?;
            let lhs = spec.act(&gh, &m)?;
            let rhs = spec.act(&g, &spec.act(&h, &m)?)?;
            if spec.point_distance(&lhs, &rhs) > 1e-9 {
                return Err(SkError::BadProbeParams(format!(
                    "action axiom (gh)*m = g*(h*m) fails at m = {m}"
                )));
            }
        }
    }
    Ok(())
}

/// Probes `sigma(g*m) <= C * (omega(g) * sigma(m))^l` over dyadic sample
/// levels; group magnitude drives the shell level of the fit.
pub fn gspace_check(
    spec: &GSpaceSpec,
    samples: u32,
    seed: u64,
    cfg: &FitConfig,
) -> SkResult<ProbeReport> {
    if samples == 0 {
        return Err(SkError::BadProbeParams("samples must be positive".into()));
    }
    let group = spec.group()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    check_action_axioms(spec, &group, &mut rng)?;

    let level_max = spec.level_max();
    let mut levels = Levels::default();
    let mut total: u64 = 0;
    for kg in 0..=level_max {
        for km in 0..=level_max {
            for _ in 0..samples {
                let g = spec.sample_group(kg, &mut rng);
                let m = spec.sample_point(km, &mut rng);
                let gm = spec.act(&g, &m)?;
                let lhs = spec.log_sigma(&gm);
                let rhs = spec.log_omega(&g)? + spec.log_sigma(&m);
                // level by the larger magnitude: growth in either coordinate
                // must show up in the shell series
                levels.push(kg.max(km), lhs, rhs, format!("g={g}, m={m}"));
                total += 1;
            }
        }
    }
    let evidence = EvidenceDomain {
        radius: Some(level_max),
        samples: Some(total),
        seed: Some(seed),
        ..Default::default()
    };
    let cfg = FitConfig {
        exp_min: cfg.exp_min,
        exp_max: cfg.exp_max,
        d_max: 0, // the condition has no additive constant
    };
    Ok(power_fit(
        &levels,
        &cfg,
        "sigma(g*m) <= C * (omega(g)*sigma(m))^l",
        evidence,
    ))
}

/// The companion check to [`gspace_check`]: a scaled group-space has a
/// uniformly translationally equivalent scale, i.e. every sampled `g`
/// admits a fit `sigma(g*m) <= C_g * sigma(m)^d + D` with a common
/// exponent.  Reports the worst per-shift fit.
pub fn gspace_translation_check(
    spec: &GSpaceSpec,
    samples: u32,
    seed: u64,
    cfg: &FitConfig,
) -> SkResult<ProbeReport> {
    if samples == 0 {
        return Err(SkError::BadProbeParams("samples must be positive".into()));
    }
    let condition = "sigma(g*m) <= C_g * sigma(m)^d + D";
    let group = spec.group()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    check_action_axioms(spec, &group, &mut rng)?;

    let level_max = spec.level_max();
    // moderate shifts: translational equivalence is per-g, constants may
    // depend on g
    let mut shifts: Vec<Element> = Vec::new();
    for k in 0..=3u32 {
        for _ in 0..2 {
            shifts.push(spec.sample_group(k, &mut rng));
        }
    }
    let mut worst: Option<(Fit, String)> = None;
    let mut total: u64 = 0;
    for g in &shifts {
        let mut levels = Levels::default();
        for km in 0..=level_max {
            for _ in 0..samples {
                let m = spec.sample_point(km, &mut rng);
                let gm = spec.act(g, &m)?;
                levels.push(km, spec.log_sigma(&gm), spec.log_sigma(&m), format!("{m}"));
                total += 1;
            }
        }
        let evidence = EvidenceDomain {
            radius: Some(level_max),
            samples: Some(total),
            seed: Some(seed),
            ..Default::default()
        };
        let mut report = power_fit(&levels, cfg, condition, evidence);
        match report.verdict {
            Verdict::HoldsOnEvidence => {
                let fit = report.fit.take().unwrap();
                let key = (fit.exponent, fit.c, fit.d);
                if worst
                    .as_ref()
                    .map_or(true, |(w, _)| key > (w.exponent, w.c, w.d))
                {
                    worst = Some((fit, g.to_string()));
                }
            }
            _ => {
                report.notes = format!("shift g = {g}: {}", report.notes);
                return Ok(report);
            }
        }
    }
    let (fit, at) = worst.unwrap();
    Ok(ProbeReport::new(Verdict::HoldsOnEvidence, condition)
        .with_fit(fit)
        .with_evidence(EvidenceDomain {
            radius: Some(level_max),
            samples: Some(total),
            seed: Some(seed),
            ..Default::default()
        })
        .with_notes(format!("worst fit at shift {at}")))
}

/// Value of the induced scale on the quotient of the line by the integers
/// (Lie group extended over a compact fibre): the truncated infimum
/// `inf_n (1 + |r - n|)` with the trivial scale on the fibre.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedScaleValue {
    /// `log` of the truncated infimum.
    pub log_value: f64,
    /// The integer attaining the truncated infimum.
    pub minimizer: i64,
    /// Always true: the window is finite, so the value is an upper bound
    /// on the true infimum.
    pub upper_bound: bool,
}

/// Evaluates the induced scale at the class of `(r, t)` for the line
/// extended over the circle: `inf_n omega(r - n) * sigma(n*theta + t)` with
/// `omega = 1 + |.|` and `sigma` constantly 1 (so `t` does not matter).
/// Scans the `window` integers nearest `r`.
pub fn induced_scale_eval(r: f64, _t: f64, window: u32) -> SkResult<InducedScaleValue> {
    if window == 0 {
        return Err(SkError::BadProbeParams("empty search window".into()));
    }
    let centre = r.round() as i64;
    let half = (window as i64 - 1) / 2;
    let (mut best, mut minimizer) = (f64::INFINITY, centre);
    for n in centre - half..=centre + half {
        let v = 1.0 + (r - n as f64).abs();
        if v < best {
            best = v;
            minimizer = n;
        }
    }
    Ok(InducedScaleValue {
        log_value: best.ln(),
        minimizer,
        upper_bound: true,
    })
}
