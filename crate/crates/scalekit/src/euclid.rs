//! Grid quadrature on `R^N`: a fixed smooth bump, discrete convolution,
//! and the weighted convolution-power lower bound experiment.
//!
//! Everything is generic over the float type; the crate uses `f64` in
//! practice.  Norms `|x|` are max-norms throughout, and the weighted
//! integrals run in the log domain (the weight `e^{|x|^k}` dwarfs `f64`
//! range long before the grids do).

use crate::error::{SkError, SkResult};
use crate::logsum::LogAccumulator;
use crate::report::{ProbeReport, Verdict};
use crate::scalar::Scalar;

/// A sampled function on a uniform grid over `R^N`.  Sample `i` (a
/// multi-index) sits at the point `(lo + i) * h`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T: Scalar> {
    pub dim: usize,
    /// Grid spacing.
    pub h: T,
    /// Index of the first sample along each axis.
    pub lo: Vec<i64>,
    /// Samples per axis.
    pub shape: Vec<usize>,
    /// Row-major sample values.
    pub values: Vec<T>,
}

/// The fixed mollifier profile: with `t = |x|` (max-norm),
/// `psi(x) = s(2 - t) / (s(2 - t) + s(t - 1))` where `s(t) = e^{-1/t}` for
/// `t > 0` and `0` otherwise.  Smooth, radial in the max-norm, identically
/// 1 on `|x| <= 1` and 0 on `|x| >= 2`, monotone in between.
pub fn bump_eval<T: Scalar>(x: &[T]) -> T {
    let t = x
        .iter()
        .map(|v| v.abs())
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    let s = |t: T| {
        if t > T::zero() {
            (-t.recip()).exp()
        } else {
            T::zero()
        }
    };
    let two = T::from_f64(2.0).unwrap();
    let up = s(two - t);
    let down = s(t - T::one());
    if up == T::zero() {
        T::zero()
    } else {
        up / (up + down)
    }
}

impl<T: Scalar> GridFunction<T> {
    /// Samples `f` on the box `[lo, lo + shape)` (in index space).
    pub fn from_fn(
        dim: usize,
        h: T,
        lo: Vec<i64>,
        shape: Vec<usize>,
        f: impl Fn(&[T]) -> T,
    ) -> SkResult<Self> {
        if dim == 0 || lo.len() != dim || shape.len() != dim {
            return Err(SkError::BadProbeParams("inconsistent grid dimensions".into()));
        }
        let total: usize = shape.iter().product();
        let mut values = Vec::with_capacity(total);
        let mut idx = vec![0usize; dim];
        let mut x = vec![T::zero(); dim];
        for _ in 0..total {
            for a in 0..dim {
                x[a] = T::from_i64(lo[a] + idx[a] as i64).unwrap() * h;
            }
            values.push(f(&x));
            // advance the row-major counter
            for a in (0..dim).rev() {
                idx[a] += 1;
                if idx[a] < shape[a] {
                    break;
                }
                idx[a] = 0;
            }
        }
        Ok(Self {
            dim,
            h,
            lo,
            shape,
            values,
        })
    }

    /// The bump `psi(x - shift)` sampled over its support box (one sample
    /// of padding on each side, where it is exactly zero).
    pub fn bump(dim: usize, h: T, shift: &[T]) -> SkResult<Self> {
        if shift.len() != dim {
            return Err(SkError::BadProbeParams("shift dimension mismatch".into()));
        }
        let per = (T::from_f64(2.0).unwrap() / h).ceil().to_f64_lossy() as i64 + 1;
        let lo: Vec<i64> = shift
            .iter()
            .map(|s| ((*s / h).round().to_f64_lossy() as i64) - per)
            .collect();
        let shape = vec![2 * per as usize + 1; dim];
        let shift = shift.to_vec();
        Self::from_fn(dim, h, lo, shape, move |x| {
            let rel: Vec<T> = x.iter().zip(&shift).map(|(a, b)| *a - *b).collect();
            bump_eval(&rel)
        })
    }

    fn flat_index(&self, idx: &[usize]) -> usize {
        let mut out = 0;
        for a in 0..self.dim {
            out = out * self.shape[a] + idx[a];
        }
        out
    }

    /// Quadrature of the samples, `h^N * sum`.  (For functions vanishing
    /// on the box boundary the trapezoid weights reduce to this plain
    /// scaled sum.)
    pub fn integral(&self) -> T {
        let sum = self.values.iter().fold(T::zero(), |a, &b| a + b);
        sum * self.h.powi(self.dim as i32)
    }

    /// `log` of the weighted quadrature `h^N * sum e^{|x|^k} |f(x)|` with
    /// max-norm `|x|`.
    pub fn log_weighted_norm(&self, k: u32) -> T {
        let mut acc = LogAccumulator::new();
        let log_h = self.h.ln() * T::from_usize(self.dim).unwrap();
        let mut idx = vec![0usize; self.dim];
        for &v in &self.values {
            if v != T::zero() {
                let mut norm = T::zero();
                for a in 0..self.dim {
                    let x = (T::from_i64(self.lo[a] + idx[a] as i64).unwrap() * self.h).abs();
                    if x > norm {
                        norm = x;
                    }
                }
                acc.add_log(norm.powi(k as i32) + v.abs().ln() + log_h);
            }
            for a in (0..self.dim).rev() {
                idx[a] += 1;
                if idx[a] < self.shape[a] {
                    break;
                }
                idx[a] = 0;
            }
        }
        acc.log_total()
    }

    /// Discrete convolution `h^N * sum_j f(j) g(i - j)`; the support box is
    /// the Minkowski sum of the inputs'.
    pub fn convolve(&self, other: &Self) -> SkResult<Self> {
        if self.dim != other.dim || self.h != other.h {
            return Err(SkError::BadProbeParams(
                "convolution needs a shared grid".into(),
            ));
        }
        let dim = self.dim;
        let lo: Vec<i64> = (0..dim).map(|a| self.lo[a] + other.lo[a]).collect();
        let shape: Vec<usize> = (0..dim)
            .map(|a| self.shape[a] + other.shape[a] - 1)
            .collect();
        let total: usize = shape.iter().product();
        let mut values = vec![T::zero(); total];
        let scale = self.h.powi(dim as i32);

        let mut ia = vec![0usize; dim];
        for &va in &self.values {
            if va != T::zero() {
                let mut ib = vec![0usize; dim];
                for &vb in &other.values {
                    if vb != T::zero() {
                        let out_idx: Vec<usize> = (0..dim).map(|a| ia[a] + ib[a]).collect();
                        let mut flat = 0usize;
                        for a in 0..dim {
                            flat = flat * shape[a] + out_idx[a];
                        }
                        values[flat] = values[flat] + va * vb * scale;
                    }
                    for a in (0..dim).rev() {
                        ib[a] += 1;
                        if ib[a] < other.shape[a] {
                            break;
                        }
                        ib[a] = 0;
                    }
                }
            }
            for a in (0..dim).rev() {
                ia[a] += 1;
                if ia[a] < self.shape[a] {
                    break;
                }
                ia[a] = 0;
            }
        }
        Ok(Self {
            dim,
            h: self.h,
            lo,
            shape,
            values,
        })
    }

    /// Value at a multi-index (absolute, i.e. including `lo`).
    pub fn at(&self, idx: &[i64]) -> T {
        let mut rel = Vec::with_capacity(self.dim);
        for a in 0..self.dim {
            let r = idx[a] - self.lo[a];
            if r < 0 || r as usize >= self.shape[a] {
                return T::zero();
            }
            rel.push(r as usize);
        }
        self.values[self.flat_index(&rel)]
    }
}

/// Result of the convolution-power experiment at one `n`.
#[derive(Debug, Clone)]
pub struct ConvPowerCheck {
    pub report: ProbeReport,
    /// `log` of the computed weighted norm of `psi_1^{*n}`.
    pub log_norm: f64,
    /// `log` of the target lower bound `e^{(n-1)^k} / n^{nN}`.
    pub log_bound: f64,
    /// `log` of the root `(weighted norm)^{1/n}`.
    pub log_root: f64,
    /// `log` of the root bound `e^{(n-1)^{k-1}} / n^N`.
    pub log_root_bound: f64,
    /// Relative quadrature error estimated by halving the grid.
    pub error_budget: f64,
}

/// Convolves the shifted bump `psi_1 = psi(. - u)` (`u` the all-ones
/// vector) with itself `n` times and checks the weighted lower bound
/// `||psi_1^{*n}||_{delta_k} >= e^{(n-1)^k} / n^{nN}`, subtracting a
/// grid-refinement error budget first.
pub fn conv_power_bound_check(
    n: u32,
    k: u32,
    dim: usize,
    h: f64,
) -> SkResult<ConvPowerCheck> {
    let condition = "integral(delta_k * psi_1^{*n}) >= e^{(n-1)^k} / n^{n*N}";
    if n < 1 || k < 2 || dim < 1 {
        return Err(SkError::BadProbeParams(
            "need n >= 1, k >= 2, N >= 1".into(),
        ));
    }
    let norm_at = |h: f64| -> SkResult<f64> {
        let shift = vec![1.0f64; dim];
        let psi1 = GridFunction::bump(dim, h, &shift)?;
        let mut power = psi1.clone();
        for _ in 1..n {
            power = power.convolve(&psi1)?;
        }
        Ok(power.log_weighted_norm(k))
    };
    let log_norm = norm_at(h)?;
    let coarse = norm_at(2.0 * h)?;
    let error_budget = ((log_norm - coarse).exp() - 1.0).abs();

    let nf = n as f64;
    let log_bound = (nf - 1.0).powi(k as i32) - nf * dim as f64 * nf.ln();
    let log_root = log_norm / nf;
    let log_root_bound = (nf - 1.0).powi(k as i32 - 1) - dim as f64 * nf.ln();

    let report = if error_budget >= 1.0 {
        ProbeReport::new(Verdict::Inconclusive, condition)
            .with_notes("quadrature error budget exceeds the computed value; refine the grid")
    } else if log_norm + (1.0 - error_budget).ln() >= log_bound {
        ProbeReport::new(Verdict::HoldsOnEvidence, condition).with_notes(format!(
            "log norm = {log_norm:.6}, log bound = {log_bound:.6}, budget = {error_budget:.3e}"
        ))
    } else {
        ProbeReport::new(Verdict::Violated, condition).with_notes(format!(
            "log norm = {log_norm:.6}, log bound = {log_bound:.6}, budget = {error_budget:.3e}"
        ))
    };
    Ok(ConvPowerCheck {
        report,
        log_norm,
        log_bound,
        log_root,
        log_root_bound,
        error_budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_profile() {
        assert_eq!(bump_eval(&[0.0f64]), 1.0);
        assert_eq!(bump_eval(&[0.7, -0.9]), 1.0); // max-norm inside 1
        assert_eq!(bump_eval(&[3.0f64]), 0.0);
        assert_eq!(bump_eval(&[-2.0f64]), 0.0);
        let mid = bump_eval(&[1.5f64]);
        assert!(mid > 0.0 && mid < 1.0);
        // monotone through the transition
        let mut prev = bump_eval(&[1.0f64]);
        for i in 1..=20 {
            let t = 1.0 + i as f64 * 0.05;
            let v = bump_eval(&[t]);
            assert!(v <= prev + 1e-15, "t={t}");
            prev = v;
        }
    }

    #[test]
    fn convolution_mass_and_symmetry() {
        let h = 1.0f64 / 64.0;
        let f = GridFunction::bump(1, h, &[0.0]).unwrap();
        let g = GridFunction::bump(1, h, &[1.0]).unwrap();
        let fg = f.convolve(&g).unwrap();
        let mass = fg.integral();
        let expect = f.integral() * g.integral();
        assert!(
            ((mass - expect) / expect).abs() < 1e-10,
            "mass {mass} vs {expect}"
        );
        let gf = g.convolve(&f).unwrap();
        assert_eq!(fg.lo, gf.lo);
        for (a, b) in fg.values.iter().zip(&gf.values) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn convolution_in_two_dimensions() {
        let h = 1.0f64 / 8.0;
        let f = GridFunction::bump(2, h, &[0.0, 0.0]).unwrap();
        let fg = f.convolve(&f).unwrap();
        let expect = f.integral() * f.integral();
        assert!(((fg.integral() - expect) / expect).abs() < 1e-10);
    }

    #[test]
    fn narrow_peak_is_approximate_identity() {
        // f * (normalized narrow peak at 0) stays close to f
        let h = 1.0f64 / 128.0;
        let f = GridFunction::bump(1, h, &[0.0]).unwrap();
        let mut peak = GridFunction::from_fn(1, h, vec![-16], vec![33], |x| {
            bump_eval(&[x[0] * 16.0])
        })
        .unwrap();
        let mass = peak.integral();
        for v in &mut peak.values {
            *v = *v / mass;
        }
        let conv = f.convolve(&peak).unwrap();
        // compare away from the support edge
        for i in -100i64..=100 {
            let a = conv.at(&[i]);
            let b = f.at(&[i]);
            assert!((a - b).abs() < 0.05, "index {i}: {a} vs {b}");
        }
    }

    #[test]
    fn conv_power_bounds_hold() {
        let h = 1.0 / 256.0;
        // n = 1: trivial boundary case, bound e^0 / 1 = 1
        let c1 = conv_power_bound_check(1, 2, 1, h).unwrap();
        assert!(c1.report.holds(), "{:?}", c1.report);
        assert!(c1.log_bound.abs() < 1e-12);

        let mut prev_root_bound = f64::NEG_INFINITY;
        for n in 2..=5 {
            let c = conv_power_bound_check(n, 2, 1, h).unwrap();
            assert!(c.report.holds(), "n={n}: {:?}", c.report);
            assert!(c.log_root >= c.log_root_bound, "n={n}");
            // the root-bound sequence of the statement is strictly increasing
            assert!(c.log_root_bound > prev_root_bound, "n={n}");
            prev_root_bound = c.log_root_bound;
        }

        // n = 2 numeric anchor: bound is e/4
        let c2 = conv_power_bound_check(2, 2, 1, h).unwrap();
        assert!((c2.log_bound - (1.0 - 4f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn refinement_budget_is_small() {
        let c = conv_power_bound_check(3, 2, 1, 1.0 / 256.0).unwrap();
        assert!(c.error_budget < 0.05, "budget {}", c.error_budget);
    }
}
