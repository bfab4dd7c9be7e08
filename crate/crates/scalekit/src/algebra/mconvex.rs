//! The m-convexity probe: decides submultiplicative-seminorm feasibility
//! for a weighted `l1` algebra through the chain criterion, with the
//! left-hand side computed through actual algebra norms (delta
//! convolutions and seminorms) rather than the scale shortcut.

use num_traits::One;

use crate::error::{SkError, SkResult};
use crate::group::GroupSpec;
use crate::report::{ProbeReport, Verdict};
use crate::scale::{chain_probe, ChainProbeParams, Scale};

use super::{ExactFunction, WeightedFunction};

/// Probes whether the weighted algebra of `scale` admits submultiplicative
/// seminorms, by searching for `(C, k)` with
/// `||e_{g_1} * ... * e_{g_n}||_1 <= C^n sigma^k(g_1) ... sigma^k(g_n)`
/// over generator chains up to length `n_max`.
pub fn mconvexity_probe(
    scale: &Scale,
    group: &GroupSpec,
    n_max: u32,
    k_max: u32,
) -> SkResult<ProbeReport> {
    let condition = "||e_g1 * ... * e_gn||_1 <= C^n * sigma(g1)^k * ... * sigma(gn)^k";
    if scale.group != *group {
        return Err(SkError::BadProbeParams(
            "scale lives on a different group".into(),
        ));
    }
    if n_max < 4 {
        return Ok(ProbeReport::new(Verdict::Inconclusive, condition)
            .with_notes("chains shorter than 4 cannot separate growth from constants"));
    }
    let gens = group.standard_generators()?.effective(group)?;
    let params = ChainProbeParams {
        chain_len_max: n_max,
        l_max: k_max,
        ..Default::default()
    };
    chain_probe(
        group,
        &gens,
        &params,
        condition,
        &|g| scale.log_value(g),
        &|chain, _prod| {
            // the algebra-norm route: convolve the deltas, then take ||.||_1
            let mut f: ExactFunction =
                WeightedFunction::delta(*group, chain[0], One::one())?;
            for g in &chain[1..] {
                let d = WeightedFunction::delta(*group, g, One::one())?;
                f = f.convolve(&d)?;
            }
            match f.seminorm(scale, 1) {
                Ok(v) => Ok(Some(v.log_value)),
                Err(SkError::OutOfDomain { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ball_enumerate, DEFAULT_CAP};
    use crate::report::Verdict;
    use std::sync::Arc;

    fn scale_on(group_spec: &str, scale_spec: &str, radius: u32) -> (GroupSpec, Scale) {
        let g = GroupSpec::parse(group_spec).unwrap();
        let gens = g.standard_generators().unwrap();
        let table = Arc::new(ball_enumerate(&g, &gens, radius, DEFAULT_CAP).unwrap());
        (g, Scale::parse(scale_spec, &g, Some(table)).unwrap())
    }

    #[test]
    fn one_plus_abs_is_m_convex() {
        let (g, s) = scale_on("z", "one_plus_abs", 30);
        let r = mconvexity_probe(&s, &g, 20, 4).unwrap();
        assert!(r.holds(), "{r:?}");
        let fit = r.fit.unwrap();
        assert_eq!((fit.c, fit.exponent), (1.0, 1));
    }

    #[test]
    fn word_weight_on_free_group_is_m_convex() {
        let (g, s) = scale_on("free:2", "word_weight", 12);
        let r = mconvexity_probe(&s, &g, 12, 4).unwrap();
        assert!(r.holds(), "{r:?}");
        let fit = r.fit.unwrap();
        assert_eq!((fit.c, fit.exponent), (1.0, 1));
    }

    #[test]
    fn sigma_two_is_not_m_convex() {
        let (g, s) = scale_on("z", "word_pow:2", 30);
        let r = mconvexity_probe(&s, &g, 12, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Violated, "{r:?}");
        let w = r.witness.unwrap();
        // required total log C along the all-ones chain reaches n^2 - n
        let last = *w.log_values.last().unwrap();
        assert!(last >= 12.0 * 5.0, "required log C^n = {last}");
    }

    #[test]
    fn short_chains_are_inconclusive() {
        let (g, s) = scale_on("z", "one_plus_abs", 30);
        let r = mconvexity_probe(&s, &g, 3, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }
}
