//! Weighted `l1` group algebras on discrete groups: exact convolution,
//! scale-weighted seminorms, involution, and the convolution-bound and
//! m-convexity probes built on them.
//!
//! Coefficients are generic: exact rationals are the default for discrete
//! groups (equalities in the tests are exact, not tolerances), floats exist
//! for scales with irrational values, in which case seminorms run in
//! log-sum-exp.  Discrete groups carry counting measure and are unimodular,
//! so the involution needs no modular factor.

mod demos;
mod mconvex;

pub use demos::{
    divergence_partial_sums, tempered_action_demo, DivergenceCase, DivergenceTable,
    TemperedDemo,
};
pub use mconvex::mconvexity_probe;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{SkError, SkResult};
use crate::group::{Element, GroupSpec};
use crate::logsum::LogAccumulator;
use crate::report::{Fit, ProbeReport, Verdict};
use crate::scale::Scale;

/// Coefficient ring for [`WeightedFunction`]: exact rationals or floats.
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Complex conjugate; identity for the real coefficient types.
    fn conj(&self) -> Self;
    /// `log |c|`.
    fn log_abs(&self) -> f64;
    /// `|c|` as an exact rational when the type carries one.
    fn abs_exact(&self) -> Option<BigRational>;
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn log_abs(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.abs().to_f64().map_or(f64::NAN, f64::ln)
    }
    fn abs_exact(&self) -> Option<BigRational> {
        Some(self.abs())
    }
}

impl Coefficient for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        *self
    }
    fn log_abs(&self) -> f64 {
        self.abs().ln()
    }
    fn abs_exact(&self) -> Option<BigRational> {
        None
    }
}

/// A seminorm evaluation `||phi||_m = sum_g sigma^m(g) |phi(g)|`, carried
/// in the log domain (scale powers overflow `f64` on the super-exponential
/// built-ins).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeminormValue {
    pub m: u32,
    pub log_value: f64,
}

/// A finitely supported function on a discrete group, the dense elements of
/// the weighted `l1` algebra.  Keys are canonical; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedFunction<C: Coefficient> {
    pub group: GroupSpec,
    /// canonical literal -> (canonical element, coefficient)
    terms: BTreeMap<String, (Element, C)>,
}

/// Exact-rational functions, the default for discrete groups.
pub type ExactFunction = WeightedFunction<BigRational>;

/// Float-coefficient functions for scales with irrational values.
pub type FloatFunction = WeightedFunction<f64>;

impl<C: Coefficient> WeightedFunction<C> {
    pub fn new(group: GroupSpec) -> Self {
        Self {
            group,
            terms: BTreeMap::new(),
        }
    }

    /// The delta function `c * e_g`.
    pub fn delta(group: GroupSpec, g: &Element, c: C) -> SkResult<Self> {
        let mut out = Self::new(group);
        out.add_term(g, c)?;
        Ok(out)
    }

    /// Adds `c * e_g`, canonicalizing the element and dropping the term if
    /// the total coefficient cancels to zero.
    pub fn add_term(&mut self, g: &Element, c: C) -> SkResult<()> {
        if c.is_zero() {
            return Ok(());
        }
        let g = self.group.canonical_form(g)?;
        let key = g.to_string();
        let total = match self.terms.get(&key) {
            Some((_, old)) => old.add(&c),
            None => c,
        };
        if total.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, (g, total));
        }
        Ok(())
    }

    /// Coefficient at `g` (zero off the support).
    pub fn coefficient(&self, g: &Element) -> SkResult<C> {
        let g = self.group.canonical_form(g)?;
        Ok(self
            .terms
            .get(&g.to_string())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero))
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Element, &C)> {
        self.terms.values().map(|(g, c)| (g, c))
    }

    fn check_group(&self, other: &Self) -> SkResult<()> {
        if self.group != other.group {
            return Err(SkError::BadProbeParams(
                "functions live on different groups".into(),
            ));
        }
        Ok(())
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> SkResult<Self> {
        self.check_group(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c.clone())?;
        }
        Ok(out)
    }

    /// Convolution `(phi * psi)(g) = sum_h phi(h) psi(h^{-1} g)`, computed
    /// exactly over the finite supports.
    pub fn convolve(&self, other: &Self) -> SkResult<Self> {
        self.check_group(other)?;
        let mut out = Self::new(self.group);
        for (g, a) in self.terms() {
            for (h, b) in other.terms() {
                let gh = self.group.multiply(g, h)?;
                out.add_term(&gh, a.mul(b))?;
            }
        }
        Ok(out)
    }

    /// The involution `phi^*(g) = conj(phi(g^{-1}))` (no modular factor:
    /// discrete groups are unimodular).
    pub fn involution(&self) -> SkResult<Self> {
        let mut out = Self::new(self.group);
        for (g, c) in self.terms() {
            let g_inv = self.group.inverse(g)?;
            out.add_term(&g_inv, c.conj())?;
        }
        Ok(out)
    }

    /// `||phi||_m = sum_g sigma^m(g) |phi(g)|` in log-sum-exp.
    pub fn seminorm(&self, scale: &Scale, m: u32) -> SkResult<SeminormValue> {
        let mut acc = LogAccumulator::new();
        for (g, c) in self.terms() {
            let log_c = c.log_abs();
            // m = 0 must not touch log sigma: 0 * (-inf) is NaN
            let term = if m == 0 {
                log_c
            } else {
                m as f64 * scale.log_value(g)? + log_c
            };
            acc.add_log(term);
        }
        Ok(SeminormValue {
            m,
            log_value: acc.log_total(),
        })
    }

    /// Exact seminorm when both the coefficients and the scale values are
    /// exact rationals on the whole support; `None` otherwise.
    pub fn seminorm_exact(&self, scale: &Scale, m: u32) -> SkResult<Option<BigRational>> {
        let mut total = <BigRational as Zero>::zero();
        for (g, c) in self.terms() {
            let c = match c.abs_exact() {
                Some(c) => c,
                None => return Ok(None),
            };
            let s = match scale.exact_value(g)? {
                Some(s) => s,
                None => return Ok(None),
            };
            let mut pow = BigRational::one();
            for _ in 0..m {
                pow *= &s;
            }
            total += pow * c;
        }
        Ok(Some(total))
    }
}

/// Verifies `||phi * psi||_m <= C ||phi||_{d m} ||psi||_{d m}` for a
/// certified sub-polynomiality pair `(C, d)`.
pub fn conv_bound_check<C: Coefficient>(
    phi: &WeightedFunction<C>,
    psi: &WeightedFunction<C>,
    scale: &Scale,
    m: u32,
    c: f64,
    d: u32,
) -> SkResult<ProbeReport> {
    let condition = "||phi * psi||_m <= C * ||phi||_{d*m} * ||psi||_{d*m}";
    let lhs = phi.convolve(psi)?.seminorm(scale, m)?.log_value;
    let rhs =
        c.ln() + phi.seminorm(scale, d * m)?.log_value + psi.seminorm(scale, d * m)?.log_value;
    let verdict = if lhs <= rhs + 1e-9 * (1.0 + rhs.abs()) {
        Verdict::HoldsOnEvidence
    } else {
        Verdict::Violated
    };
    Ok(ProbeReport::new(verdict, condition)
        .with_fit(Fit::new(c, d, 0.0))
        .with_notes(format!("log lhs = {lhs:.6}, log rhs = {rhs:.6}")))
}

/// The log-domain ratio `sigma^m(g_1 ... g_n) / (sigma^k(g_1) ...
/// sigma^k(g_n))`, with the numerator computed through the algebra as
/// `||e_{g_1} * ... * e_{g_n}||_m` (delta convolutions reproduce the
/// product element exactly).
pub fn delta_power_ratio(
    scale: &Scale,
    chain: &[Element],
    m: u32,
    k: u32,
) -> SkResult<f64> {
    if chain.is_empty() {
        return Err(SkError::BadProbeParams("empty chain".into()));
    }
    let group = scale.group;
    let mut prod: ExactFunction = WeightedFunction::delta(group, &chain[0], One::one())?;
    for g in &chain[1..] {
        let delta = WeightedFunction::delta(group, g, One::one())?;
        prod = prod.convolve(&delta)?;
    }
    let numerator = prod.seminorm(scale, m)?.log_value;
    let mut denominator = 0.0;
    if k > 0 {
        for g in chain {
            denominator += k as f64 * scale.log_value(g)?;
        }
    }
    Ok(numerator - denominator)
}
