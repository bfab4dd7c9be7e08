//! Scales, weights and gauges as log-domain evaluation oracles.
//!
//! A [`Scale`] maps canonical group elements to `log sigma(g)`.  Everything
//! is carried in the log domain: the built-in `word_pow:k` reaches values
//! like `e^{2500}` on small balls, far past `f64` range.  The declared kind
//! (scale / gauge / weight) is a claim checked by [`check_axioms`], never
//! assumed.

mod axioms;
pub(crate) mod fit;
mod gspace;
mod probes;

pub use axioms::check_axioms;
pub use fit::{FitConfig, GROWTH_THRESHOLD, STABLE_THRESHOLD};
pub use gspace::{
    gspace_check, gspace_translation_check, induced_scale_eval, GSpaceSpec, InducedScaleValue,
};
pub(crate) use probes::chain_probe;
pub use probes::{
    dominates_probe, m_sub_polynomial_probe, strong_dominates_probe, sub_polynomial_probe,
    translation_equiv_probe, ChainProbeParams,
};

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed};

use crate::error::{SkError, SkResult};
use crate::group::{Element, GroupSpec, ShellTable};

/// Declared kind of a scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleKind {
    Scale,
    Gauge,
    Weight,
}

impl ScaleKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScaleKind::Scale => "scale",
            ScaleKind::Gauge => "gauge",
            ScaleKind::Weight => "weight",
        }
    }
}

#[derive(Debug, Clone)]
enum Eval {
    /// Word gauge `tau` from a shell table; `log sigma = log tau`.
    Word(Arc<ShellTable>),
    /// Word weight `e^tau`; `log sigma = tau`.
    WordWeight(Arc<ShellTable>),
    /// `sigma_k = e^{tau^k}`; `log sigma = tau^k`.
    WordPow(Arc<ShellTable>, u32),
    /// `|n|` (l1 norm on lattice vectors).
    Abs,
    /// `1 + |n|`.
    OnePlusAbs,
    /// Constantly one.
    Const1,
    /// `|n|^{1/2}`.
    SqrtAbs,
    /// Heisenberg `s(g) = |a| + |c| + |b|^{1/2} + |b - ca|^{1/2}`.
    HeisS,
    /// `gamma(q) = prod_i max(q_i, 1/q_i)` on positive-rational tuples.
    QinfGamma,
    /// `omega(r) = prod_i (1 + |r_i|)` over the stored tuple entries.
    QinfOmega,
    /// `e^{|n|^{|n|}}` on the integers.
    Superexp,
    /// `theta(g) = max(||g||, ||g^{-1}||)` (operator norms) on matrix
    /// groups.
    MatTheta,
    /// Custom table: canonical element literal -> log value.
    Table(Arc<HashMap<String, f64>>),
    /// Exponential bijection gauge -> weight: `log omega = tau`.
    Exp(Box<Scale>),
    /// Exponential bijection weight -> gauge: `tau = log omega`.
    Log(Box<Scale>),
    /// Integer normalization of a gauge (ceiling, forced to 1 on
    /// non-identity zeros).
    Normalized(Box<Scale>),
    /// Left translate: `sigma_g(h) = sigma(g^{-1} h)`; stores `g^{-1}`.
    Shifted(Box<Scale>, Element),
}

/// A scale on a fixed group, evaluated in the log domain.
#[derive(Debug, Clone)]
pub struct Scale {
    pub name: String,
    pub kind: ScaleKind,
    pub group: GroupSpec,
    eval: Eval,
}

impl Scale {
    /// Parses a scale spec string.  Word-based specs (`word`, `word_weight`,
    /// `word_pow:k`) need an enumerated shell table.
    pub fn parse(
        spec: &str,
        group: &GroupSpec,
        table: Option<Arc<ShellTable>>,
    ) -> SkResult<Scale> {
        let bad = || SkError::BadScaleSpec(spec.to_string());
        let need_table = || -> SkResult<Arc<ShellTable>> {
            table.clone().ok_or_else(|| {
                SkError::BadScaleSpec(format!("`{spec}` needs an enumerated ball"))
            })
        };
        let (kind, eval) = match spec {
            "word" => (ScaleKind::Gauge, Eval::Word(need_table()?)),
            "word_weight" => (ScaleKind::Weight, Eval::WordWeight(need_table()?)),
            "abs" => (ScaleKind::Gauge, Eval::Abs),
            "one_plus_abs" => (ScaleKind::Weight, Eval::OnePlusAbs),
            "const:1" => (ScaleKind::Weight, Eval::Const1),
            "sqrt_abs" => (ScaleKind::Gauge, Eval::SqrtAbs),
            "heis_s" => (ScaleKind::Scale, Eval::HeisS),
            "qinf_gamma" => (ScaleKind::Weight, Eval::QinfGamma),
            "qinf_omega" => (ScaleKind::Scale, Eval::QinfOmega),
            "superexp" => (ScaleKind::Scale, Eval::Superexp),
            "theta" => (ScaleKind::Weight, Eval::MatTheta),
            _ => match spec.split_once(':') {
                Some(("word_pow", k)) => {
                    let k: u32 = k.parse().map_err(|_| bad())?;
                    // submultiplicative only for k = 1
                    let kind = if k <= 1 { ScaleKind::Weight } else { ScaleKind::Scale };
                    (kind, Eval::WordPow(need_table()?, k))
                }
                _ => return Err(bad()),
            },
        };
        Ok(Scale {
            name: spec.to_string(),
            kind,
            group: *group,
            eval,
        })
    }

    /// A custom scale backed by a `canonical element literal -> log value`
    /// table (the two-column file format of the CLI).
    pub fn from_table(
        name: impl Into<String>,
        kind: ScaleKind,
        group: &GroupSpec,
        entries: HashMap<String, f64>,
    ) -> Scale {
        Scale {
            name: name.into(),
            kind,
            group: *group,
            eval: Eval::Table(Arc::new(entries)),
        }
    }

    /// `log sigma(g)`; `-inf` encodes `sigma(g) = 0` (gauges at the
    /// identity).
    pub fn log_value(&self, g: &Element) -> SkResult<f64> {
        let out_of_domain = || SkError::OutOfDomain {
            scale: self.name.clone(),
            element: g.to_string(),
        };
        let wrong = || SkError::WrongKind(self.group.format());
        Ok(match &self.eval {
            Eval::Word(t) => {
                let tau = t.gauge(g).ok_or_else(out_of_domain)? as f64;
                tau.ln()
            }
            Eval::WordWeight(t) => t.gauge(g).ok_or_else(out_of_domain)? as f64,
            Eval::WordPow(t, k) => {
                let tau = t.gauge(g).ok_or_else(out_of_domain)? as f64;
                tau.powi(*k as i32)
            }
            Eval::Abs => (l1_norm(g).ok_or_else(wrong)?).ln(),
            Eval::OnePlusAbs => (1.0 + l1_norm(g).ok_or_else(wrong)?).ln(),
            Eval::Const1 => 0.0,
            Eval::SqrtAbs => 0.5 * (l1_norm(g).ok_or_else(wrong)?).ln(),
            Eval::HeisS => match g {
                &Element::Heis(a, b, c) => {
                    let s = (a.abs() + c.abs()) as f64
                        + (b.abs() as f64).sqrt()
                        + ((b - c * a).abs() as f64).sqrt();
                    s.ln()
                }
                _ => return Err(wrong()),
            },
            Eval::QinfGamma => match g {
                Element::Rationals(m) => m
                    .values()
                    .map(|q| {
                        let v = rational_to_f64(q);
                        v.ln().abs()
                    })
                    .sum(),
                _ => return Err(wrong()),
            },
            Eval::QinfOmega => match g {
                Element::Rationals(m) => m
                    .values()
                    .map(|q| (1.0 + rational_to_f64(q).abs()).ln())
                    .sum(),
                _ => return Err(wrong()),
            },
            Eval::Superexp => {
                let n = l1_norm(g).ok_or_else(wrong)?;
                // |n|^{|n|}, with 0^0 = 1
                n.powf(n)
            }
            Eval::MatTheta => {
                let m = crate::adjoint::embed_matrix(&self.group, g)?;
                let sv = m.svd(false, false).singular_values;
                let (s_max, s_min) = (sv.max(), sv.min());
                if s_min <= 0.0 {
                    return Err(out_of_domain());
                }
                s_max.max(1.0 / s_min).ln()
            }
            Eval::Table(t) => *t.get(&g.to_string()).ok_or_else(out_of_domain)?,
            Eval::Exp(inner) => inner.log_value(g)?.exp(),
            Eval::Log(inner) => {
                let log_omega = inner.log_value(g)?;
                if log_omega < -1e-12 {
                    return Err(SkError::BadProbeParams(format!(
                        "weight `{}` is below 1 at {g}; no gauge preimage",
                        inner.name
                    )));
                }
                log_omega.max(0.0).ln()
            }
            Eval::Normalized(inner) => {
                if *g == self.group.identity() {
                    f64::NEG_INFINITY
                } else {
                    let tau = inner.log_value(g)?.exp();
                    tau.ceil().max(1.0).ln()
                }
            }
            Eval::Shifted(inner, g_inv) => {
                let h = self.group.multiply(g_inv, g)?;
                inner.log_value(&h)?
            }
        })
    }

    /// `sigma(g)` in the linear domain (may overflow to `inf` for the
    /// super-exponential built-ins; use [`Scale::log_value`] there).
    pub fn value(&self, g: &Element) -> SkResult<f64> {
        Ok(self.log_value(g)?.exp())
    }

    /// Exact rational value when the scale is rational-valued
    /// (`one_plus_abs`, `abs`, `const:1`, `word`, the tuple weights and
    /// their shifts/normalizations); `None` otherwise.
    pub fn exact_value(&self, g: &Element) -> SkResult<Option<BigRational>> {
        let out_of_domain = || SkError::OutOfDomain {
            scale: self.name.clone(),
            element: g.to_string(),
        };
        Ok(match &self.eval {
            Eval::Word(t) => Some(BigRational::from_integer(BigInt::from(
                t.gauge(g).ok_or_else(out_of_domain)?,
            ))),
            Eval::Abs => l1_norm_exact(g).map(BigRational::from_integer),
            Eval::OnePlusAbs => {
                l1_norm_exact(g).map(|n| BigRational::from_integer(n + 1))
            }
            Eval::Const1 => Some(BigRational::one()),
            Eval::QinfGamma => match g {
                Element::Rationals(m) => Some(
                    m.values()
                        .map(|q| if q >= &BigRational::one() { q.clone() } else { q.recip() })
                        .product(),
                ),
                _ => None,
            },
            Eval::QinfOmega => match g {
                Element::Rationals(m) => Some(
                    m.values().map(|q| BigRational::one() + q.abs()).product(),
                ),
                _ => None,
            },
            Eval::Normalized(inner) => {
                if *g == self.group.identity() {
                    Some(BigRational::from_integer(BigInt::from(0)))
                } else {
                    let tau = inner.log_value(g)?.exp();
                    BigRational::from_f64(tau.ceil().max(1.0))
                }
            }
            Eval::Shifted(inner, g_inv) => {
                let h = self.group.multiply(g_inv, g)?;
                inner.exact_value(&h)?
            }
            _ => None,
        })
    }

    /// True when evaluation is backed by an enumerated ball (and therefore
    /// partial: products can leave the domain).
    pub fn word_based(&self) -> bool {
        match &self.eval {
            Eval::Word(_) | Eval::WordWeight(_) | Eval::WordPow(..) | Eval::Table(_) => true,
            Eval::Exp(s) | Eval::Log(s) | Eval::Normalized(s) | Eval::Shifted(s, _) => {
                s.word_based()
            }
            _ => false,
        }
    }

    /// The exponential bijection between gauges and weights:
    /// `tau -> omega = e^tau` and `omega -> tau = log omega`.
    /// Order-preserving; round trips are the identity on evaluations.
    pub fn exp_bijection(&self) -> SkResult<Scale> {
        match self.kind {
            ScaleKind::Gauge => Ok(Scale {
                name: format!("exp({})", self.name),
                kind: ScaleKind::Weight,
                group: self.group,
                eval: Eval::Exp(Box::new(self.clone())),
            }),
            ScaleKind::Weight => Ok(Scale {
                name: format!("log({})", self.name),
                kind: ScaleKind::Gauge,
                group: self.group,
                eval: Eval::Log(Box::new(self.clone())),
            }),
            ScaleKind::Scale => Err(SkError::BadProbeParams(
                "exp_bijection needs a declared gauge or weight".into(),
            )),
        }
    }

    /// Integer-valued normalization of a gauge: ceiling of `tau`, forced to
    /// 1 on non-identity zeros, 0 at the identity.  Satisfies
    /// `tau <= tau' <= tau + 1` pointwise.
    pub fn normalize_gauge(&self) -> SkResult<Scale> {
        if self.kind != ScaleKind::Gauge {
            return Err(SkError::BadProbeParams(
                "normalize_gauge needs a declared gauge".into(),
            ));
        }
        Ok(Scale {
            name: format!("int({})", self.name),
            kind: ScaleKind::Gauge,
            group: self.group,
            eval: Eval::Normalized(Box::new(self.clone())),
        })
    }

    /// The left translate `sigma_g(h) = sigma(g^{-1} h)`.
    pub fn shifted(&self, g: &Element) -> SkResult<Scale> {
        let g_inv = self.group.inverse(g)?;
        Ok(Scale {
            name: format!("{}<<{g}", self.name),
            kind: ScaleKind::Scale,
            group: self.group,
            eval: Eval::Shifted(Box::new(self.clone()), g_inv),
        })
    }
}

/// l1 norm of a lattice vector payload (also accepts the scalar reading of
/// 1-dimensional vectors); `None` for other payloads.
fn l1_norm(g: &Element) -> Option<f64> {
    l1_norm_exact(g).map(|n| {
        let n: BigInt = n;
        // ball radii fit f64 exactly
        n.to_string().parse::<f64>().unwrap()
    })
}

fn l1_norm_exact(g: &Element) -> Option<BigInt> {
    match g {
        Element::Vector(v) => Some(v.iter().map(|x| BigInt::from(x.unsigned_abs())).sum()),
        _ => None,
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
