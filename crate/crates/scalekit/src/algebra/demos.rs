//! Quantitative counterexample demos: the two divergent series showing
//! that weighted function spaces need not be convolution algebras, and the
//! tempered-action separation on rational tuple groups.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{SkError, SkResult};
use crate::logsum::LogAccumulator;

/// Which divergent series to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceCase {
    /// `sum_{|m| <= M} 1/(1+|m|) = 2 H_{M+1} - 1`, the seminorm of the
    /// inverse-square-root function under `sigma = 1 + |n|`.
    InverseSqrt,
    /// `sum_{0 < m <= M} e^{(2m)^m - 2}`, the diagonal minorant of
    /// `||phi * phi||_1` for `phi(n) = e^{-|2n|^{|n|}}` under
    /// `sigma(n) = e^{|n|^{|n|}}`; log domain.
    SuperexpSquare,
}

impl DivergenceCase {
    pub fn parse(s: &str) -> SkResult<Self> {
        match s {
            "inverse-sqrt" => Ok(Self::InverseSqrt),
            "superexp-square" => Ok(Self::SuperexpSquare),
            _ => Err(SkError::BadProbeParams(format!("unknown divergence case `{s}`"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::InverseSqrt => "inverse-sqrt",
            Self::SuperexpSquare => "superexp-square",
        }
    }
}

/// Partial sums of a divergent series at dyadic checkpoints.
#[derive(Debug, Clone)]
pub struct DivergenceTable {
    pub case: DivergenceCase,
    /// Truncation bound `M` of the final entry.
    pub truncation: u64,
    /// `(M', partial sum up to M')`; log-domain for the super-exponential
    /// case.
    pub entries: Vec<(u64, f64)>,
    /// True when the reported values are logarithms of the sums.
    pub log_domain: bool,
    /// Strict monotonicity over the reported checkpoints.
    pub strictly_increasing: bool,
}

/// Tabulates the chosen series up to `M` at dyadic checkpoints
/// (`1, 2, 4, ...` and `M` itself; the inverse-sqrt case starts at `0`,
/// whose single `m = 0` term already sums to 1).
pub fn divergence_partial_sums(case: DivergenceCase, m_max: u64) -> SkResult<DivergenceTable> {
    if case == DivergenceCase::SuperexpSquare && m_max < 1 {
        return Err(SkError::BadProbeParams(
            "superexp-square needs at least one term".into(),
        ));
    }
    let mut checkpoints: Vec<u64> = Vec::new();
    let mut c = if case == DivergenceCase::InverseSqrt { 0 } else { 1 };
    while c < m_max {
        checkpoints.push(c);
        c = (c * 2).max(1);
    }
    checkpoints.push(m_max);

    let mut entries: Vec<(u64, f64)> = Vec::new();
    match case {
        DivergenceCase::InverseSqrt => {
            // sum_{|m| <= M} 1/(1+|m|): the m = 0 term is 1, each |m| = j
            // pair adds 2/(1+j)
            let mut sum = 1.0f64;
            let mut next = checkpoints.iter().copied().peekable();
            if next.peek() == Some(&0) {
                entries.push((0, sum));
                next.next();
            }
            for m in 1..=m_max {
                sum += 2.0 / (1.0 + m as f64);
                if next.peek() == Some(&m) {
                    entries.push((m, sum));
                    next.next();
                }
            }
        }
        DivergenceCase::SuperexpSquare => {
            let mut acc = LogAccumulator::new();
            let mut next = checkpoints.iter().copied().peekable();
            for m in 1..=m_max {
                let m_f = m as f64;
                acc.add_log((2.0 * m_f).powf(m_f) - 2.0);
                if next.peek() == Some(&m) {
                    entries.push((m, acc.log_total()));
                    next.next();
                }
            }
        }
    }
    let strictly_increasing = entries.windows(2).all(|w| w[1].1 > w[0].1);
    Ok(DivergenceTable {
        case,
        truncation: m_max,
        entries,
        log_domain: case == DivergenceCase::SuperexpSquare,
        strictly_increasing,
    })
}

/// A finitely supported rational tuple `(r_1, r_2, ...)`, the ambient
/// additive group of the tempered-action demo (absent indices are zero).
type Tuple = BTreeMap<u32, BigRational>;

/// `omega(r) = prod_i (1 + |r_i|)`, exactly.
fn omega(r: &Tuple) -> BigRational {
    r.values()
        .map(|x| BigRational::one() + x.abs())
        .product()
}

/// `gamma` of the acting tuple with a single multiplicative entry `q` —
/// `max(q, 1/q)`, exactly.
fn gamma_single(q: &BigRational) -> BigRational {
    if *q >= BigRational::one() {
        q.clone()
    } else {
        q.recip()
    }
}

/// Result of [`tempered_action_demo`].
#[derive(Debug, Clone)]
pub struct TemperedDemo {
    pub q: BigRational,
    pub n: u32,
    /// Exact `l1(omega)` norm of the convolved chain; equals `(1+q)^n`.
    pub norm: BigRational,
    /// The norm above, recomputed from the closed formula, matched exactly.
    pub norm_matches_formula: bool,
    /// Per-step action bound `omega(q e_i) <= gamma(q_i) omega(e_i)`,
    /// checked exactly for each `i`.
    pub action_bound_ok: bool,
    /// `q^3 * 2^n * 2^n`, the strong-temperedness budget at `(d, C) = (3, 2)`.
    pub strong_bound: BigRational,
    /// Whether the norm already exceeds the budget at the given `q`.
    pub exceeds_strong_bound: bool,
    /// Smallest `q * 2^j` whose norm exceeds the budget, with the two
    /// exact values at that point.  `None` for `n <= 3`, where
    /// `(1+q)^n / q^3` stays bounded and no dilation separates.
    pub separation: Option<(BigRational, BigRational, BigRational)>,
}

/// Reproduces the tempered-but-not-strongly-tempered separation on the
/// rational tuple group: acts on delta functions at the coordinate vectors
/// `e_i` by coordinatewise dilation with `q` in slot `i`, convolves the
/// results (additively, in the ambient tuple group), and compares the
/// exact norm `(1+q)^n` against the strong-temperedness budget
/// `q^3 * 2^n * C^n` with `C = 2`.
///
/// The budget beats the norm for moderate `q`; unboundedness only shows as
/// `q` grows, so for `n >= 4` (where `(1+q)^n / q^3` is unbounded) the
/// demo also reports the smallest `q * 2^j` at which the norm exceeds the
/// budget.
pub fn tempered_action_demo(q: &BigRational, n: u32) -> SkResult<TemperedDemo> {
    if *q <= BigRational::one() {
        return Err(SkError::BadProbeParams("q must exceed 1".into()));
    }
    if n < 1 {
        return Err(SkError::BadProbeParams("n must be at least 1".into()));
    }

    // delta at q * e_i is the image of delta at e_i under the action of
    // the group tuple with q in slot i
    let mut action_bound_ok = true;
    let mut chain: Vec<Tuple> = Vec::new();
    for i in 0..n {
        let mut e_i: Tuple = BTreeMap::new();
        e_i.insert(i, BigRational::one());
        let mut acted = e_i.clone();
        acted.insert(i, q.clone());
        // Eq-level check: omega(q e_i) <= gamma * omega(e_i), exactly
        if omega(&acted) > gamma_single(q) * omega(&e_i) {
            action_bound_ok = false;
        }
        chain.push(acted);
    }

    // convolve the deltas in the additive tuple group: supports are
    // singletons, so the product is the delta at the coordinatewise sum
    let mut support: Tuple = BTreeMap::new();
    for t in &chain {
        for (i, v) in t {
            let entry = support.entry(*i).or_insert_with(BigRational::zero);
            *entry += v;
            if entry.is_zero() {
                support.remove(i);
            }
        }
    }
    let norm = omega(&support);

    let closed = |q: &BigRational| -> BigRational {
        let mut out = BigRational::one();
        for _ in 0..n {
            out *= BigRational::one() + q;
        }
        out
    };
    let norm_matches_formula = norm == closed(q);

    let budget = |q: &BigRational| -> BigRational {
        let mut out = q * q * q;
        for _ in 0..n {
            out *= BigRational::from_integer(4.into()); // 2^n * C^n with C = 2
        }
        out
    };
    let strong_bound = budget(q);
    let exceeds_strong_bound = norm > strong_bound;

    // escalate q until the budget loses; hopeless when the norm grows no
    // faster than the q^3 factor
    let separation = if n <= 3 {
        None
    } else {
        let mut sep_q = q.clone();
        while closed(&sep_q) <= budget(&sep_q) {
            sep_q *= BigRational::from_integer(2.into());
        }
        let norm = closed(&sep_q);
        let bound = budget(&sep_q);
        Some((sep_q, norm, bound))
    };

    Ok(TemperedDemo {
        q: q.clone(),
        n,
        norm,
        norm_matches_formula,
        action_bound_ok,
        strong_bound,
        exceeds_strong_bound,
        separation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logsum::logsumexp2;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn inverse_sqrt_partial_sums() {
        let t = divergence_partial_sums(DivergenceCase::InverseSqrt, 10).unwrap();
        let last = t.entries.last().unwrap();
        // 2 H_11 - 1
        let h11: f64 = (1..=11).map(|k| 1.0 / k as f64).sum();
        assert_eq!(last.0, 10);
        assert!((last.1 - (2.0 * h11 - 1.0)).abs() < 1e-12);
        assert!(t.strictly_increasing);
        assert!(!t.log_domain);

        let t0 = divergence_partial_sums(DivergenceCase::InverseSqrt, 0).unwrap();
        assert_eq!(t0.entries, vec![(0, 1.0)]);
    }

    #[test]
    fn superexp_square_partial_sums() {
        let t = divergence_partial_sums(DivergenceCase::SuperexpSquare, 2).unwrap();
        // terms e^{2^1 - 2} = e^0 and e^{4^2 - 2} = e^14
        let expect = logsumexp2(0.0, 14.0);
        assert_eq!(t.entries.len(), 2);
        assert!((t.entries[1].1 - expect).abs() < 1e-12);
        assert!(t.log_domain);
        assert!(t.strictly_increasing);
        assert!(divergence_partial_sums(DivergenceCase::SuperexpSquare, 0).is_err());
    }

    #[test]
    fn tempered_norm_is_closed_formula() {
        let d = tempered_action_demo(&rat(2), 3).unwrap();
        assert_eq!(d.norm, rat(27));
        assert!(d.norm_matches_formula);
        assert!(d.action_bound_ok);

        let d1 = tempered_action_demo(&rat(2), 1).unwrap();
        assert_eq!(d1.norm, rat(3));

        for q in [2i64, 3] {
            for n in 1..=6 {
                let d = tempered_action_demo(&rat(q), n).unwrap();
                let mut expect = BigRational::one();
                for _ in 0..n {
                    expect *= rat(1 + q);
                }
                assert_eq!(d.norm, expect, "q={q}, n={n}");
            }
        }
    }

    #[test]
    fn strong_bound_separation_at_ten_five() {
        let d = tempered_action_demo(&rat(10), 5).unwrap();
        assert_eq!(d.norm, rat(161051));
        // budget q^3 * 2^5 * 2^5 = 1_024_000 still wins at q = 10 ...
        assert_eq!(d.strong_bound, rat(1_024_000));
        assert!(!d.exceeds_strong_bound);
        // ... and loses at q = 40
        let (sep_q, sep_norm, sep_bound) = d.separation.unwrap();
        assert_eq!(sep_q, rat(40));
        assert!(sep_norm > sep_bound);
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(tempered_action_demo(&rat(1), 3).is_err());
        assert!(tempered_action_demo(&BigRational::new(1.into(), 2.into()), 3).is_err());
        // n <= 3: (1+q)^n / q^3 is bounded, no separating q exists
        assert!(tempered_action_demo(&rat(2), 3).unwrap().separation.is_none());
    }
}
