//! Adjoint representations of the concrete matrix groups, the bounds-Ad
//! and Type R probes, and the explicit weight computations for the affine
//! and special linear groups.
//!
//! Conventions (fixed so that constants are reproducible):
//!
//! * the ambient embedding sends `ax+b` elements `(a, b)` to
//!   `[[e^a, b], [0, 1]]` and Heisenberg triples `(a, b, c)` to the
//!   unitriangular matrix with `a, b` in the first row;
//! * `Ad` acts by conjugation `X -> g X g^{-1}` except on `SL(2,R)`, where
//!   the closed form below realizes `X -> g^{-1} X g` (an
//!   anti-homomorphism: `Ad_{gh} = Ad_h Ad_g`); the numeric oracle and the
//!   homomorphism tests follow the same per-group direction;
//! * matrix norms are operator 2-norms via SVD, except the unitriangular
//!   entry bound which uses the max-entry norm its statement calls for.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{SkError, SkResult};
use crate::group::{Element, GroupKind, GroupSpec, ShellTable};
use crate::report::{EvidenceDomain, Fit, ProbeReport, Verdict, Witness};
use crate::scale::{FitConfig, Scale};

mod axb;

pub use axb::{axb_decompose, AxbDecomposition};

/// Embeds a group element into its ambient real matrix group.
pub(crate) fn embed_matrix(group: &GroupSpec, g: &Element) -> SkResult<DMatrix<f64>> {
    let unsupported = || SkError::Unsupported {
        group: group.format(),
        reason: "no matrix embedding".into(),
    };
    Ok(match (group.kind, g) {
        (GroupKind::AxB, &Element::Affine { a, b }) => {
            DMatrix::from_row_slice(2, 2, &[a.exp(), b, 0.0, 1.0])
        }
        (GroupKind::Heisenberg, &Element::Heis(a, b, c)) => DMatrix::from_row_slice(
            3,
            3,
            &[
                1.0, a as f64, b as f64, //
                0.0, 1.0, c as f64, //
                0.0, 0.0, 1.0,
            ],
        ),
        (GroupKind::Sl2, Element::Mat { n, rows })
        | (GroupKind::GlN(_), Element::Mat { n, rows }) => {
            DMatrix::from_row_slice(*n as usize, *n as usize, rows)
        }
        (GroupKind::UnipotentZ(q), Element::Unip(_, entries)) => {
            let q = q as usize;
            DMatrix::from_fn(q, q, |i, j| entries[i * q + j] as f64)
        }
        _ => return Err(unsupported()),
    })
}

/// Operator 2-norm.
pub(crate) fn op_norm(m: &DMatrix<f64>) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

/// The adjoint representation of a supported matrix group.
#[derive(Debug, Clone)]
pub struct AdjointRep {
    pub group: GroupSpec,
    /// Lie-algebra dimension.
    pub dim: usize,
    /// Basis labels, in the coordinate order of [`AdjointRep::matrix`].
    pub basis: Vec<String>,
    /// Basis elements as ambient matrices, in the same order.
    basis_mats: Vec<DMatrix<f64>>,
    /// True when the closed form composes in reverse order
    /// (`Ad_{gh} = Ad_h Ad_g`); only `SL(2,R)`.
    pub anti: bool,
}

impl AdjointRep {
    pub fn new(group: &GroupSpec) -> SkResult<Self> {
        let unsupported = || SkError::Unsupported {
            group: group.format(),
            reason: "no adjoint representation".into(),
        };
        let e = |n: usize, i: usize, j: usize| {
            let mut m = DMatrix::zeros(n, n);
            m[(i, j)] = 1.0;
            m
        };
        let (basis, basis_mats, anti) = match group.kind {
            GroupKind::AxB => (
                vec!["X1".into(), "X2".into()],
                vec![e(2, 0, 0), e(2, 0, 1)],
                false,
            ),
            GroupKind::Heisenberg => (
                // order (Z, Y, X) so the displayed closed form comes out
                vec!["Z".into(), "Y".into(), "X".into()],
                vec![e(3, 1, 2), e(3, 0, 2), e(3, 0, 1)],
                false,
            ),
            GroupKind::Sl2 => {
                let mut h = DMatrix::zeros(2, 2);
                h[(0, 0)] = 1.0;
                h[(1, 1)] = -1.0;
                (
                    vec!["H".into(), "E".into(), "F".into()],
                    vec![h, e(2, 0, 1), e(2, 1, 0)],
                    true,
                )
            }
            GroupKind::GlN(n) => {
                let n = n as usize;
                let mut basis = Vec::new();
                let mut mats = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        basis.push(format!("E{}{}", i + 1, j + 1));
                        mats.push(e(n, i, j));
                    }
                }
                (basis, mats, false)
            }
            GroupKind::UnipotentZ(q) => {
                let q = q as usize;
                let mut basis = Vec::new();
                let mut mats = Vec::new();
                for i in 0..q {
                    for j in (i + 1)..q {
                        basis.push(format!("E{}{}", i + 1, j + 1));
                        mats.push(e(q, i, j));
                    }
                }
                (basis, mats, false)
            }
            _ => return Err(unsupported()),
        };
        Ok(Self {
            group: *group,
            dim: basis.len(),
            basis,
            basis_mats,
            anti,
        })
    }

    /// Coordinates of an ambient algebra matrix in the fixed basis (every
    /// basis has disjoint entry supports, so coordinates read off).
    fn coords(&self, y: &DMatrix<f64>) -> Vec<f64> {
        match self.group.kind {
            // H-coordinate from the (0,0) entry of the traceless matrix
            GroupKind::Sl2 => vec![y[(0, 0)], y[(0, 1)], y[(1, 0)]],
            _ => self
                .basis_mats
                .iter()
                .map(|b| {
                    // the single nonzero entry of the basis matrix
                    let (i, j) = (0..b.nrows())
                        .flat_map(|i| (0..b.ncols()).map(move |j| (i, j)))
                        .find(|&(i, j)| b[(i, j)] != 0.0)
                        .unwrap();
                    y[(i, j)]
                })
                .collect(),
        }
    }

    /// The conjugation realized by this representation: `g X g^{-1}`, or
    /// `g^{-1} X g` for `SL(2,R)`.
    fn conjugate(&self, g: &DMatrix<f64>, x: &DMatrix<f64>) -> SkResult<DMatrix<f64>> {
        let g_inv = g.clone().try_inverse().ok_or_else(|| {
            SkError::BadProbeParams("element matrix is numerically singular".into())
        })?;
        Ok(if self.anti {
            &g_inv * x * g
        } else {
            g * x * &g_inv
        })
    }

    /// `Ad_g` as a `dim x dim` real matrix: closed form where the group has
    /// one, exact conjugation columns otherwise.
    pub fn matrix(&self, g: &Element) -> SkResult<DMatrix<f64>> {
        Ok(match (self.group.kind, g) {
            (GroupKind::AxB, &Element::Affine { a, b }) => {
                DMatrix::from_row_slice(2, 2, &[1.0, 0.0, -b, a.exp()])
            }
            (GroupKind::Heisenberg, &Element::Heis(a, _, c)) => DMatrix::from_row_slice(
                3,
                3,
                &[
                    1.0, 0.0, 0.0, //
                    a as f64, 1.0, -(c as f64), //
                    0.0, 0.0, 1.0,
                ],
            ),
            (GroupKind::Sl2, Element::Mat { rows, .. }) => {
                let (e, f, g2, h) = (rows[0], rows[1], rows[2], rows[3]);
                DMatrix::from_row_slice(
                    3,
                    3,
                    &[
                        e * h + f * g2,
                        h * g2,
                        -f * e,
                        2.0 * h * f,
                        h * h,
                        -f * f,
                        -2.0 * g2 * e,
                        -g2 * g2,
                        e * e,
                    ],
                )
            }
            _ => {
                // exact conjugation per basis column
                let gm = embed_matrix(&self.group, g)?;
                let cols: Vec<Vec<f64>> = self
                    .basis_mats
                    .iter()
                    .map(|b| self.conjugate(&gm, b).map(|y| self.coords(&y)))
                    .collect::<SkResult<_>>()?;
                DMatrix::from_fn(self.dim, self.dim, |i, j| cols[j][i])
            }
        })
    }

    /// Independent numeric oracle: central difference of
    /// `t -> conj(g, exp(t X_i))` at `t = 0`, matching the closed form to
    /// `O(h^2)`.
    pub fn numeric(&self, g: &Element, h: f64) -> SkResult<DMatrix<f64>> {
        if !(h > 0.0 && h <= 1e-2) {
            return Err(SkError::BadProbeParams(format!(
                "step {h} outside (0, 1e-2]"
            )));
        }
        let gm = embed_matrix(&self.group, g)?;
        let cols: Vec<Vec<f64>> = self
            .basis_mats
            .iter()
            .map(|b| {
                let plus = self.conjugate(&gm, &(b * h).exp())?;
                let minus = self.conjugate(&gm, &(b * (-h)).exp())?;
                Ok(self.coords(&((plus - minus) / (2.0 * h))))
            })
            .collect::<SkResult<_>>()?;
        Ok(DMatrix::from_fn(self.dim, self.dim, |i, j| cols[j][i]))
    }
}

/// `Ad_g` for a supported matrix group.
pub fn ad_matrix(group: &GroupSpec, g: &Element) -> SkResult<DMatrix<f64>> {
    AdjointRep::new(group)?.matrix(g)
}

/// Finite-difference oracle for [`ad_matrix`].
pub fn ad_numeric(group: &GroupSpec, g: &Element, h: f64) -> SkResult<DMatrix<f64>> {
    AdjointRep::new(group)?.numeric(g, h)
}

/// Deterministic sampler over a matrix group: dyadic magnitude levels, a
/// fixed element count per level.
#[derive(Debug, Clone, Copy)]
pub struct SamplerSpec {
    pub group: GroupSpec,
    /// Dyadic levels `0..=levels`.
    pub levels: u32,
    pub per_level: u32,
    pub seed: u64,
}

impl SamplerSpec {
    pub fn new(group: GroupSpec, levels: u32, per_level: u32, seed: u64) -> Self {
        Self {
            group,
            levels,
            per_level,
            seed,
        }
    }

    pub fn sample_count(&self) -> u64 {
        (self.levels as u64 + 1) * self.per_level as u64
    }

    /// Draws one element of magnitude about `2^level` (parameters on the
    /// exponential side, like the affine `a`, scale linearly instead).
    /// Draws one element at the given dyadic magnitude level.
    pub fn sample(&self, level: u32, rng: &mut ChaCha8Rng) -> SkResult<Element> {
        let mag = 2f64.powi(level as i32);
        let sign = |rng: &mut ChaCha8Rng| if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let int = |rng: &mut ChaCha8Rng| {
            let s: i64 = if rng.gen::<bool>() { 1 } else { -1 };
            s * rng.gen_range(0..=2i64.pow(level))
        };
        Ok(match self.group.kind {
            GroupKind::AxB => Element::Affine {
                a: sign(rng) * rng.gen::<f64>() * level as f64,
                b: sign(rng) * rng.gen::<f64>() * mag,
            },
            GroupKind::Heisenberg => Element::Heis(int(rng), int(rng), int(rng)),
            GroupKind::Sl2 => {
                // R1 * diag(e^x, e^-x) * R2 with rotations: det stays 1
                let x = rng.gen::<f64>() * level as f64 * std::f64::consts::LN_2;
                let rot = |t: f64| {
                    DMatrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()])
                };
                let d = DMatrix::from_row_slice(2, 2, &[x.exp(), 0.0, 0.0, (-x).exp()]);
                let m = rot(rng.gen::<f64>() * 7.0) * d * rot(rng.gen::<f64>() * 7.0);
                Element::Mat {
                    n: 2,
                    rows: vec![m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]],
                }
            }
            GroupKind::GlN(n) => {
                let n = n as usize;
                loop {
                    let m =
                        DMatrix::from_fn(n, n, |_, _| sign(rng) * rng.gen::<f64>() * mag);
                    if m.determinant().abs() > 1e-6 * mag.powi(n as i32) {
                        break Element::Mat {
                            n: n as u32,
                            rows: m.transpose().as_slice().to_vec(),
                        };
                    }
                }
            }
            GroupKind::UnipotentZ(q) => {
                let q = q as usize;
                let mut entries = vec![0i64; q * q];
                for i in 0..q {
                    entries[i * q + i] = 1;
                    for j in (i + 1)..q {
                        entries[i * q + j] = int(rng);
                    }
                }
                self.group.canonical_form(&Element::Unip(q as u32, entries))?
            }
            _ => {
                return Err(SkError::Unsupported {
                    group: self.group.format(),
                    reason: "no adjoint sampler".into(),
                })
            }
        })
    }
}

/// Probes `||Ad_g|| <= C * sigma(g)^p + D` on sampled elements, levelled by
/// dyadic magnitude (log-spaced rays expose unbounded growth).
pub fn bounds_ad_probe(
    scale: &Scale,
    sampler: &SamplerSpec,
    cfg: &FitConfig,
) -> SkResult<ProbeReport> {
    let condition = "||Ad_g|| <= C * sigma(g)^p + D";
    let evidence = EvidenceDomain {
        radius: Some(sampler.levels),
        samples: Some(sampler.sample_count()),
        seed: Some(sampler.seed),
        ..Default::default()
    };
    if sampler.sample_count() < 50 {
        return Ok(ProbeReport::new(Verdict::Inconclusive, condition)
            .with_evidence(evidence)
            .with_notes("fewer than 50 samples"));
    }
    let rep = AdjointRep::new(&sampler.group)?;
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
    let mut levels = crate::scale::fit::Levels::default();
    for level in 0..=sampler.levels {
        for _ in 0..sampler.per_level {
            let g = sampler.sample(level, &mut rng)?;
            let ad = rep.matrix(&g)?;
            levels.push(level, op_norm(&ad).ln(), scale.log_value(&g)?, g.to_string());
        }
    }
    Ok(crate::scale::fit::power_fit(&levels, cfg, condition, evidence))
}

/// Recommended tolerance for [`type_r_probe`].  Eigenvalues of defective
/// matrices (the unipotent adjoints all are) carry `O(eps^(1/k))` numeric
/// error for Jordan blocks of size `k`, so tolerances much below `1e-4`
/// produce false violations; genuine failures sit at deviation `e - 1` or
/// worse.
pub const TYPE_R_TOL: f64 = 1e-3;

/// Type R test: all eigenvalues of `Ad_g` on the unit circle, per sample.
pub fn type_r_probe(
    group: &GroupSpec,
    sampler: &SamplerSpec,
    tol: f64,
) -> SkResult<ProbeReport> {
    let condition = "|eigenvalue(Ad_g)| = 1 for all g";
    let rep = AdjointRep::new(group)?;
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
    let mut worst: Option<(f64, Element)> = None;
    for level in 0..=sampler.levels {
        for _ in 0..sampler.per_level {
            let g = sampler.sample(level, &mut rng)?;
            let ad = rep.matrix(&g)?;
            for lambda in ad.complex_eigenvalues().iter() {
                let dev = (lambda.norm() - 1.0).abs();
                if worst.as_ref().map_or(true, |(w, _)| dev > *w) {
                    worst = Some((dev, g.clone()));
                }
            }
        }
    }
    let evidence = EvidenceDomain {
        radius: Some(sampler.levels),
        samples: Some(sampler.sample_count()),
        seed: Some(sampler.seed),
        ..Default::default()
    };
    let (dev, witness_el) = worst.ok_or_else(|| SkError::BadProbeParams("no samples".into()))?;
    if dev <= tol {
        Ok(ProbeReport::new(Verdict::HoldsOnEvidence, condition).with_evidence(evidence))
    } else {
        Ok(ProbeReport::new(Verdict::Violated, condition)
            .with_witness(Witness {
                elements: vec![witness_el.to_string()],
                log_values: vec![(1.0 + dev).ln()],
                detail: "largest deviation of an eigenvalue modulus from 1 (log of 1+dev)"
                    .into(),
            })
            .with_evidence(evidence))
    }
}

/// Binomial coefficient as `f64` (arguments stay small).
fn binomial(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    let mut out = 1.0;
    for i in 0..k {
        out = out * (n - i) as f64 / (i + 1) as f64;
    }
    out
}

/// The entry-growth polynomial for unitriangular words:
/// `P_q(n) = q * sum_{j=1}^{q-1} C(n-1, j)`, clamped below by 1 (a single
/// generator step contributes one path, which the binomial count misses at
/// `n = 1`).
fn unipotent_poly(q: u32, n: u32) -> f64 {
    let q = q as i64;
    let n = n as i64;
    (q as f64
        * (1..q)
            .map(|j| binomial(n - 1, j))
            .sum::<f64>())
    .max(1.0)
}

/// Verifies the max-entry bound `||g||_inf <= C * P_q(tau(g))` over an
/// enumerated unitriangular ball, with `P_q` the degree-`q-1` binomial
/// polynomial above; reports the least integer `C`.
pub fn unipotent_norm_bound(q: u32, table: &ShellTable) -> SkResult<ProbeReport> {
    let condition = "max_entry(g) <= C * P_q(tau(g))";
    if table.group.kind != GroupKind::UnipotentZ(q) {
        return Err(SkError::BadProbeParams(format!(
            "table does not enumerate unip:{q}"
        )));
    }
    let evidence = EvidenceDomain {
        radius: Some(table.radius),
        ..Default::default()
    };
    if table.truncated {
        return Ok(ProbeReport::new(Verdict::Inconclusive, condition)
            .with_evidence(evidence)
            .with_notes("ball enumeration was truncated"));
    }
    let mut c_needed = 0.0f64;
    let mut worst = String::new();
    for (g, n) in table.iter() {
        let norm = match g {
            Element::Unip(_, entries) => entries
                .iter()
                .enumerate()
                .filter(|(k, _)| {
                    let (i, j) = (k / q as usize, k % q as usize);
                    i != j
                })
                .map(|(_, &v)| v.abs())
                .max()
                .unwrap_or(0) as f64,
            _ => return Err(SkError::BadProbeParams("non-unitriangular element".into())),
        };
        if norm == 0.0 {
            continue;
        }
        let p = unipotent_poly(q, n);
        let ratio = norm / p;
        if ratio > c_needed {
            c_needed = ratio;
            worst = g.to_string();
        }
    }
    let c = c_needed.ceil().max(1.0);
    Ok(ProbeReport::new(Verdict::HoldsOnEvidence, condition)
        .with_fit(Fit::new(c, q, 0.0))
        .with_evidence(evidence)
        .with_notes(format!("tightest element {worst}")))
}

/// The two canonical scales on `SL(2,R)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2Scales {
    /// `sigma(g) = max_i |log s_i(g)|` over singular values.
    pub sigma: f64,
    /// `theta(g) = max(||g||, ||g^{-1}||)`.
    pub theta: f64,
}

/// Computes both scales; `e^sigma = theta` exactly when `det g = 1`.
pub fn sl2_scales(g: &Element) -> SkResult<Sl2Scales> {
    let group = GroupSpec::parse("sl2")?;
    let m = embed_matrix(&group, g)?;
    let sv = m.svd(false, false).singular_values;
    let (s_max, s_min) = (sv.max(), sv.min());
    if s_min <= 0.0 {
        return Err(SkError::BadProbeParams("singular matrix".into()));
    }
    Ok(Sl2Scales {
        sigma: s_max.ln().abs().max(s_min.ln().abs()),
        theta: s_max.max(1.0 / s_min),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> GroupSpec {
        GroupSpec::parse(s).unwrap()
    }

    fn approx(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
    }

    #[test]
    fn axb_ad_closed_form() {
        let g = group("axb");
        let ad = ad_matrix(&g, &Element::Affine { a: 1.0, b: 0.0 }).unwrap();
        let expect = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1f64.exp()]);
        assert!(approx(&ad, &expect, 1e-14));
    }

    #[test]
    fn heisenberg_ad_closed_form() {
        let g = group("heis");
        let ad = ad_matrix(&g, &Element::Heis(2, 7, 3)).unwrap();
        let expect =
            DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 2.0, 1.0, -3.0, 0.0, 0.0, 1.0]);
        assert!(approx(&ad, &expect, 1e-14));
    }

    #[test]
    fn sl2_ad_at_diagonal() {
        let g = group("sl2");
        let el = Element::Mat {
            n: 2,
            rows: vec![2.0, 0.0, 0.0, 0.5],
        };
        let ad = ad_matrix(&g, &el).unwrap();
        let expect = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 0.25, 0.0, 0.0, 0.0, 4.0]);
        assert!(approx(&ad, &expect, 1e-14));
    }

    #[test]
    fn numeric_oracle_matches_closed_forms() {
        let h = 1e-4;
        let cases: Vec<(GroupSpec, Element)> = vec![
            (group("axb"), Element::Affine { a: 1.0, b: 0.0 }),
            (group("axb"), Element::Affine { a: -0.7, b: 2.5 }),
            (group("heis"), Element::Heis(2, 7, 3)),
            (
                group("sl2"),
                Element::Mat {
                    n: 2,
                    rows: vec![2.0, 0.0, 0.0, 0.5],
                },
            ),
            (
                group("sl2"),
                Element::Mat {
                    n: 2,
                    rows: vec![1.0, 1.5, 0.5, 1.75],
                },
            ),
        ];
        for (g, el) in cases {
            let closed = ad_matrix(&g, &el).unwrap();
            let numeric = ad_numeric(&g, &el, h).unwrap();
            assert!(
                approx(&closed, &numeric, 1e-6),
                "{}: {closed} vs {numeric}",
                g.format()
            );
        }
    }

    #[test]
    fn ad_is_a_homomorphism_on_samples() {
        for spec in ["axb", "heis", "sl2", "gl:2", "unip:3"] {
            let g = group(spec);
            let rep = AdjointRep::new(&g).unwrap();
            let sampler = SamplerSpec::new(g, 3, 25, 11);
            let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
            for level in 0..=sampler.levels {
                for _ in 0..sampler.per_level {
                    let x = sampler.sample(level, &mut rng).unwrap();
                    let y = sampler.sample(level, &mut rng).unwrap();
                    let xy = g.multiply(&x, &y).unwrap();
                    let lhs = rep.matrix(&xy).unwrap();
                    let (a, b) = (rep.matrix(&x).unwrap(), rep.matrix(&y).unwrap());
                    let rhs = if rep.anti { b * a } else { a * b };
                    assert!(approx(&lhs, &rhs, 1e-8), "{spec}: {x} * {y}");
                }
            }
        }
    }

    #[test]
    fn axb_det_is_modular_function() {
        let g = group("axb");
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = 4.0 * rng.gen::<f64>() - 2.0;
            let b = 10.0 * rng.gen::<f64>() - 5.0;
            let ad = ad_matrix(&g, &Element::Affine { a, b }).unwrap();
            assert!((ad.determinant() - a.exp()).abs() <= 1e-9 * a.exp());
        }
    }

    #[test]
    fn identity_ad_is_identity() {
        for spec in ["axb", "heis", "sl2", "gl:2", "unip:4"] {
            let g = group(spec);
            let rep = AdjointRep::new(&g).unwrap();
            let ad = rep.matrix(&g.identity()).unwrap();
            assert!(approx(&ad, &DMatrix::identity(rep.dim, rep.dim), 1e-12), "{spec}");
        }
    }

    #[test]
    fn type_r_verdicts() {
        let tol = TYPE_R_TOL;
        for spec in ["heis", "unip:3", "unip:4"] {
            let g = group(spec);
            let s = SamplerSpec::new(g, 4, 20, 3);
            let r = type_r_probe(&g, &s, tol).unwrap();
            assert!(r.holds(), "{spec}: {r:?}");
        }
        for spec in ["axb", "sl2"] {
            let g = group(spec);
            let s = SamplerSpec::new(g, 4, 20, 3);
            let r = type_r_probe(&g, &s, tol).unwrap();
            assert_eq!(r.verdict, Verdict::Violated, "{spec}");
            assert!(r.witness.is_some());
        }
    }

    #[test]
    fn sl2_scale_identities() {
        let d = Element::Mat {
            n: 2,
            rows: vec![2.0, 0.0, 0.0, 0.5],
        };
        let s = sl2_scales(&d).unwrap();
        assert!((s.sigma - 2f64.ln()).abs() < 1e-12);
        assert!((s.theta - 2.0).abs() < 1e-12);
        let id = sl2_scales(&group("sl2").identity()).unwrap();
        assert!(id.sigma.abs() < 1e-12 && (id.theta - 1.0).abs() < 1e-12);
        // e^sigma = theta on random samples (det = 1)
        let sampler = SamplerSpec::new(group("sl2"), 5, 20, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
        for level in 0..=sampler.levels {
            for _ in 0..sampler.per_level {
                let g = sampler.sample(level, &mut rng).unwrap();
                let s = sl2_scales(&g).unwrap();
                assert!((s.sigma.exp() - s.theta).abs() <= 1e-9 * s.theta, "{g}");
            }
        }
    }

    #[test]
    fn bounds_ad_constant_scale_is_violated() {
        let g = group("axb");
        let s = Scale::parse("const:1", &g, None).unwrap();
        let sampler = SamplerSpec::new(g, 10, 30, 7);
        let cfg = FitConfig {
            exp_min: 0,
            exp_max: 4,
            d_max: 4,
        };
        let r = bounds_ad_probe(&s, &sampler, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Violated, "{r:?}");
    }

    #[test]
    fn bounds_ad_heisenberg_scale_holds() {
        let g = group("heis");
        let s = Scale::parse("heis_s", &g, None).unwrap();
        let sampler = SamplerSpec::new(g, 10, 30, 7);
        let r = bounds_ad_probe(&s, &sampler, &FitConfig::default()).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn bounds_ad_sl2_theta_is_quadratic() {
        let g = group("sl2");
        let s = Scale::parse("theta", &g, None).unwrap();
        let sampler = SamplerSpec::new(g, 10, 30, 7);
        let r = bounds_ad_probe(&s, &sampler, &FitConfig::default()).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.fit.as_ref().unwrap().exponent, 2);
    }

    #[test]
    fn bounds_ad_needs_samples() {
        let g = group("axb");
        let s = Scale::parse("const:1", &g, None).unwrap();
        let sampler = SamplerSpec::new(g, 3, 10, 7);
        let r = bounds_ad_probe(&s, &sampler, &FitConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn unipotent_entry_bound_holds() {
        let g = group("unip:3");
        let gens = g.standard_generators().unwrap();
        let t = crate::group::ball_enumerate(&g, &gens, 10, crate::group::DEFAULT_CAP).unwrap();
        let r = unipotent_norm_bound(3, &t).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.fit.as_ref().unwrap().c, 1.0);
        // commutator element: entry 1 at tau = 4, P_3(4) = 18
        assert!(unipotent_poly(3, 4) == 18.0);
    }
}
