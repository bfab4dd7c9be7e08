//! Axiom checking for declared gauges and weights on an enumerated ball.
//!
//! A declared kind is a claim, not a fact; this module verifies it
//! exhaustively on the evidence domain:
//!
//! * gauge `tau`: `tau(e) = 0`, `tau(g^{-1}) = tau(g)`,
//!   `tau(gh) <= tau(g) + tau(h)`;
//! * weight `omega`: `omega(e) = 1`, `omega >= 1`,
//!   `omega(g^{-1}) = omega(g)`, `omega(gh) <= omega(g) omega(h)`.
//!
//! Pair checks run over `B_{R/2} x B_{R/2}` so that products stay inside the
//! ball for partially defined (word-based) scales.  Equalities are checked
//! to `1e-9` (relative in the linear domain for gauges, absolute in the log
//! domain for weights, whose values overflow `f64` linearly).

use crate::error::{SkError, SkResult};
use crate::group::{Element, ShellTable};
use crate::report::{EvidenceDomain, ProbeReport, Verdict, Witness};

use super::{Scale, ScaleKind};

const TOL: f64 = 1e-9;

fn violation(
    condition: &str,
    elements: Vec<String>,
    log_values: Vec<f64>,
    detail: String,
    evidence: EvidenceDomain,
) -> ProbeReport {
    ProbeReport::new(Verdict::Violated, condition)
        .with_witness(Witness {
            elements,
            log_values,
            detail,
        })
        .with_evidence(evidence)
}

/// Checks the axioms of the scale's declared kind on the ball behind
/// `table`.  Returns `HoldsOnEvidence` or `Violated` with a witness;
/// declared plain scales (no order axioms) always hold.
pub fn check_axioms(scale: &Scale, table: &ShellTable) -> SkResult<ProbeReport> {
    let group = scale.group;
    let radius = table.radius;
    let evidence = EvidenceDomain {
        radius: Some(radius),
        ..Default::default()
    };
    let condition: String = match scale.kind {
        ScaleKind::Gauge => {
            "tau(e)=0, tau(g^-1)=tau(g), tau(gh) <= tau(g)+tau(h)".into()
        }
        ScaleKind::Weight => {
            "omega(e)=1, omega>=1, omega(g^-1)=omega(g), omega(gh) <= omega(g)*omega(h)".into()
        }
        ScaleKind::Scale => {
            return Ok(ProbeReport::new(
                Verdict::HoldsOnEvidence,
                "scale: no order axioms declared",
            )
            .with_evidence(evidence)
            .with_notes("declared kind `scale` carries no axioms to check"))
        }
    };
    if table.group != group {
        return Err(SkError::BadProbeParams(
            "shell table group differs from the scale's group".into(),
        ));
    }

    // identity value
    let id = group.identity();
    let log_at_id = scale.log_value(&id)?;
    match scale.kind {
        ScaleKind::Gauge => {
            if log_at_id != f64::NEG_INFINITY {
                return Ok(violation(
                    &condition,
                    vec![id.to_string()],
                    vec![log_at_id],
                    "tau(e) != 0".into(),
                    evidence,
                ));
            }
        }
        ScaleKind::Weight => {
            if log_at_id.abs() > TOL {
                return Ok(violation(
                    &condition,
                    vec![id.to_string()],
                    vec![log_at_id],
                    "omega(e) != 1".into(),
                    evidence,
                ));
            }
        }
        ScaleKind::Scale => unreachable!(),
    }

    // pointwise checks: positivity (weights) and symmetry
    for (g, _) in table.iter() {
        let lv = scale.log_value(g)?;
        if scale.kind == ScaleKind::Weight && lv < -TOL {
            return Ok(violation(
                &condition,
                vec![g.to_string()],
                vec![lv],
                "omega < 1".into(),
                evidence,
            ));
        }
        let inv = group.inverse(g)?;
        let lv_inv = scale.log_value(&inv)?;
        let sym_ok = match scale.kind {
            // compare in the linear domain (gauge values stay in range)
            ScaleKind::Gauge => {
                let (a, b) = (lv.exp(), lv_inv.exp());
                (a - b).abs() <= TOL * (1.0 + a.abs() + b.abs())
            }
            _ => (lv - lv_inv).abs() <= TOL * (1.0 + lv.abs()),
        };
        if !sym_ok {
            return Ok(violation(
                &condition,
                vec![g.to_string(), inv.to_string()],
                vec![lv, lv_inv],
                "sigma(g^-1) != sigma(g)".into(),
                evidence,
            ));
        }
    }

    // pair checks over the half ball
    let half: Vec<&Element> = table
        .iter()
        .filter(|(_, n)| 2 * n <= radius)
        .map(|(g, _)| g)
        .collect();
    let mut pairs: u64 = 0;
    for g in &half {
        let lg = scale.log_value(g)?;
        for h in &half {
            let lh = scale.log_value(h)?;
            let gh = group.multiply(g, h)?;
            let lgh = scale.log_value(&gh)?;
            pairs += 1;
            let ok = match scale.kind {
                ScaleKind::Gauge => {
                    // subadditivity, linear domain
                    let (a, b, c) = (lgh.exp(), lg.exp(), lh.exp());
                    a <= b + c + TOL * (1.0 + b + c)
                }
                _ => {
                    // submultiplicativity, log domain
                    lgh <= lg + lh + TOL * (1.0 + lg.abs() + lh.abs())
                }
            };
            if !ok {
                let detail = match scale.kind {
                    ScaleKind::Gauge => "tau(gh) > tau(g) + tau(h)",
                    _ => "omega(gh) > omega(g) * omega(h)",
                };
                return Ok(violation(
                    &condition,
                    vec![g.to_string(), h.to_string(), gh.to_string()],
                    vec![lg, lh, lgh],
                    detail.into(),
                    evidence,
                ));
            }
        }
    }

    let evidence = EvidenceDomain {
        radius: Some(radius),
        samples: Some(pairs),
        ..Default::default()
    };
    Ok(ProbeReport::new(Verdict::HoldsOnEvidence, condition).with_evidence(evidence))
}
