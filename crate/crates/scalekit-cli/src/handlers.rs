//! One handler per subcommand, each mapping onto a single library
//! operation and packaging the result for the three output formats.

use std::path::Path;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::json;

use scalekit::adjoint::{
    axb_decompose, bounds_ad_probe, sl2_scales, type_r_probe, unipotent_norm_bound, SamplerSpec,
};
use scalekit::algebra::{
    conv_bound_check, delta_power_ratio, divergence_partial_sums, mconvexity_probe,
    tempered_action_demo, DivergenceCase, WeightedFunction,
};
use scalekit::error::{SkError, SkResult};
use scalekit::euclid::conv_power_bound_check;
use scalekit::group::{ball_enumerate, word_gauge, DEFAULT_CAP};
use scalekit::growth::{growth_classify, growth_table, integrability_sum, IntegrabilityVerdict};
use scalekit::scale::{
    check_axioms, dominates_probe, gspace_check, gspace_translation_check, induced_scale_eval,
    m_sub_polynomial_probe, strong_dominates_probe, sub_polynomial_probe,
    translation_equiv_probe, ChainProbeParams, FitConfig, GSpaceSpec, ScaleKind,
};
use scalekit::{Element, ExactFunction, GroupSpec, Scale, ShellTable, Verdict};

use crate::out::{fmt_float, svec, CmdOutput};
use crate::Cmd;

fn usage(msg: impl Into<String>) -> SkError {
    SkError::BadProbeParams(msg.into())
}

fn make_table(group: &GroupSpec, radius: u32) -> SkResult<Arc<ShellTable>> {
    let gens = group.standard_generators()?;
    Ok(Arc::new(ball_enumerate(group, &gens, radius, DEFAULT_CAP)?))
}

/// Builds a scale from a spec string.  `table:FILE` loads a custom scale
/// from a two-column file (`<canonical element literal> <log value>`),
/// with the declared `kind`; built-in word-based specs get the enumerated
/// ball passed in.
fn make_scale(
    spec: &str,
    group: &GroupSpec,
    table: Option<Arc<ShellTable>>,
    kind: &str,
) -> SkResult<Scale> {
    if let Some(path) = spec.strip_prefix("table:") {
        let kind = match kind {
            "gauge" => ScaleKind::Gauge,
            "weight" => ScaleKind::Weight,
            "scale" => ScaleKind::Scale,
            other => return Err(usage(format!("unknown scale kind `{other}`"))),
        };
        let text = std::fs::read_to_string(path)?;
        let mut entries = std::collections::HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (lit, val) = (parts.next(), parts.next());
            match (lit, val, parts.next()) {
                (Some(lit), Some(val), None) => {
                    let v: f64 = val
                        .parse()
                        .map_err(|_| usage(format!("{path}:{}: bad log value", i + 1)))?;
                    // canonicalize the literal so lookups match
                    let g = group.parse_element(lit)?;
                    entries.insert(g.to_string(), v);
                }
                _ => return Err(usage(format!("{path}:{}: expected two columns", i + 1))),
            }
        }
        Ok(Scale::from_table(spec, kind, group, entries))
    } else {
        Scale::parse(spec, group, table)
    }
}

/// Needs-a-ball scales get one at `radius`; others skip the enumeration.
fn make_scale_auto(spec: &str, group: &GroupSpec, radius: u32, kind: &str) -> SkResult<Scale> {
    let word_based = matches!(spec, "word" | "word_weight") || spec.starts_with("word_pow:");
    let table = if word_based {
        Some(make_table(group, radius)?)
    } else {
        None
    };
    make_scale(spec, group, table, kind)
}

fn parse_elements(group: &GroupSpec, list: &str) -> SkResult<Vec<Element>> {
    list.split(';')
        .map(|s| group.parse_element(s.trim()))
        .collect()
}

/// Loads a finitely supported function from a file of
/// `<element literal> <rational coefficient>` lines.
fn load_function(group: &GroupSpec, path: &Path) -> SkResult<ExactFunction> {
    let text = std::fs::read_to_string(path)?;
    let mut f = WeightedFunction::new(*group);
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(lit), Some(coeff), None) => {
                let g = group.parse_element(lit)?;
                let c: BigRational = coeff.parse().map_err(|_| {
                    usage(format!("{}:{}: bad rational `{coeff}`", path.display(), i + 1))
                })?;
                f.add_term(&g, c)?;
            }
            _ => {
                return Err(usage(format!(
                    "{}:{}: expected `<element> <rational>`",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(f)
}

fn function_output(f: &ExactFunction) -> CmdOutput {
    let terms: Vec<(String, String)> = f
        .terms()
        .map(|(g, c)| (g.to_string(), c.to_string()))
        .collect();
    CmdOutput::computed(
        json!({
            "support_len": f.support_len(),
            "terms": terms.iter().map(|(g, c)| json!({"element": g, "coefficient": c})).collect::<Vec<_>>(),
        }),
        svec(&["element", "coefficient"]),
        terms.iter().map(|(g, c)| vec![g.clone(), c.clone()]).collect(),
        terms.iter().map(|(g, c)| format!("{g}  {c}")).collect(),
    )
}

fn fit_config(exp_max: u32, d_max: u32) -> FitConfig {
    FitConfig {
        exp_max,
        d_max,
        ..Default::default()
    }
}

pub fn run(cmd: &Cmd) -> SkResult<CmdOutput> {
    match cmd {
        Cmd::Growth {
            group,
            radius,
            classify,
        } => {
            let group = GroupSpec::parse(group)?;
            let gens = group.standard_generators()?;
            let report = growth_table(&group, &gens, *radius)?;
            let model = if *classify {
                Some(growth_classify(&report)?)
            } else {
                None
            };
            let model_json = model.map(|m| match m {
                scalekit::growth::GrowthModel::Polynomial { degree, residual } => {
                    json!({"model": "polynomial", "degree": degree, "residual": residual})
                }
                scalekit::growth::GrowthModel::Exponential { rate, residual } => {
                    json!({"model": "exponential", "rate": rate, "residual": residual})
                }
                scalekit::growth::GrowthModel::Undetermined {
                    poly_residual,
                    exp_residual,
                } => {
                    json!({"model": "undetermined", "poly_residual": poly_residual, "exp_residual": exp_residual})
                }
            });
            let rows: Vec<Vec<String>> = report
                .shell_sizes
                .iter()
                .zip(&report.ball_sizes)
                .enumerate()
                .map(|(n, (s, b))| vec![n.to_string(), s.to_string(), b.to_string()])
                .collect();
            let mut text: Vec<String> = vec![format!(
                "|B_n| on {} up to radius {}{}",
                group.format(),
                report.radius,
                if report.truncated { " (truncated)" } else { "" }
            )];
            text.extend(
                rows.iter()
                    .map(|r| format!("n = {:>3}  shell = {:>10}  ball = {:>10}", r[0], r[1], r[2])),
            );
            if let Some(m) = &model_json {
                text.push(format!("growth model: {m}"));
            }
            Ok(CmdOutput::computed(
                json!({
                    "group": group.format(),
                    "radius": report.radius,
                    "truncated": report.truncated,
                    "shell_sizes": report.shell_sizes,
                    "ball_sizes": report.ball_sizes,
                    "model": model_json,
                }),
                svec(&["n", "shell_size", "ball_size"]),
                rows,
                text,
            ))
        }

        Cmd::Gauge {
            group,
            radius,
            element,
        } => {
            let group = GroupSpec::parse(group)?;
            let table = make_table(&group, *radius)?;
            let g = group.parse_element(element)?;
            let value = word_gauge(&table, &g);
            let shown = value.map_or("outside-ball".to_string(), |v| v.to_string());
            Ok(CmdOutput::computed(
                json!({"element": g.to_string(), "radius": radius, "gauge": value}),
                svec(&["element", "gauge"]),
                vec![vec![g.to_string(), shown.clone()]],
                vec![format!("tau({g}) = {shown} (ball radius {radius})")],
            ))
        }

        Cmd::CheckAxioms {
            group,
            scale,
            radius,
            scale_kind,
        } => {
            let group = GroupSpec::parse(group)?;
            let table = make_table(&group, *radius)?;
            let scale = make_scale(scale, &group, Some(table.clone()), scale_kind)?;
            Ok(CmdOutput::from_report(check_axioms(&scale, &table)?))
        }

        Cmd::Dominates {
            group,
            scale1,
            scale2,
            radius,
            exp_max,
            d_max,
        } => {
            let group = GroupSpec::parse(group)?;
            let table = make_table(&group, *radius)?;
            let s1 = make_scale(scale1, &group, Some(table.clone()), "scale")?;
            let s2 = make_scale(scale2, &group, Some(table.clone()), "scale")?;
            let cfg = fit_config(*exp_max, *d_max);
            Ok(CmdOutput::from_report(dominates_probe(
                &s1, &s2, &table, &cfg,
            )?))
        }

        Cmd::StrongDominates {
            group,
            scale1,
            scale2,
            radius,
            d_max,
        } => {
            let group = GroupSpec::parse(group)?;
            let table = make_table(&group, *radius)?;
            let s1 = make_scale(scale1, &group, Some(table.clone()), "scale")?;
            let s2 = make_scale(scale2, &group, Some(table.clone()), "scale")?;
            let cfg = fit_config(1, *d_max);
            Ok(CmdOutput::from_report(strong_dominates_probe(
                &s1, &s2, &table, &cfg,
            )?))
        }

        Cmd::TranslationEquiv {
            group,
            scale,
            radius,
            shifts,
            exp_max,
            d_max,
        } => {
            let group = GroupSpec::parse(group)?;
            let table = make_table(&group, *radius)?;
            let scale = make_scale(scale, &group, Some(table.clone()), "scale")?;
            let shift_elems = match shifts {
                Some(list) => parse_elements(&group, list)?,
                None => group.standard_generators()?.effective(&group)?,
            };
            let cfg = fit_config(*exp_max, *d_max);
            Ok(CmdOutput::from_report(translation_equiv_probe(
                &scale,
                &shift_elems,
                &table,
                &cfg,
            )?))
        }

        Cmd::Subpoly {
            group,
            scale,
            radius,
            exp_max,
        } => {
            let group = GroupSpec::parse(group)?;
            let table = make_table(&group, *radius)?;
            let scale = make_scale(scale, &group, Some(table.clone()), "scale")?;
            let cfg = fit_config(*exp_max, 0);
            Ok(CmdOutput::from_report(sub_polynomial_probe(
                &scale, &table, &cfg,
            )?))
        }

        Cmd::Msubpoly {
            group,
            scale,
            radius,
            nmax,
            lmax,
            seed,
            samples,
        } => {
            let group = GroupSpec::parse(group)?;
            let scale = make_scale_auto(scale, &group, *radius, "scale")?;
            let gens = group.standard_generators()?;
            let params = ChainProbeParams {
                chain_len_max: *nmax,
                l_max: *lmax,
                seed: *seed,
                samples_per_len: *samples,
            };
            Ok(CmdOutput::from_report(m_sub_polynomial_probe(
                &scale, &gens, &params,
            )?))
        }

        Cmd::MconvexProbe {
            group,
            scale,
            radius,
            nmax,
            kmax,
        } => {
            let group = GroupSpec::parse(group)?;
            let scale = make_scale_auto(scale, &group, *radius, "scale")?;
            Ok(CmdOutput::from_report(mconvexity_probe(
                &scale, &group, *nmax, *kmax,
            )?))
        }

        Cmd::BoundsAd {
            group,
            scale,
            levels,
            samples,
            seed,
            exp_max,
            d_max,
        } => {
            let group = GroupSpec::parse(group)?;
            let scale = make_scale(scale, &group, None, "scale")?;
            let per_level = samples.div_ceil(levels + 1);
            let sampler = SamplerSpec::new(group, *levels, per_level, *seed);
            let cfg = fit_config(*exp_max, *d_max);
            Ok(CmdOutput::from_report(bounds_ad_probe(
                &scale, &sampler, &cfg,
            )?))
        }

        Cmd::TypeR {
            group,
            levels,
            samples,
            seed,
            tol,
        } => {
            let group = GroupSpec::parse(group)?;
            let per_level = samples.div_ceil(levels + 1);
            let sampler = SamplerSpec::new(group, *levels, per_level, *seed);
            Ok(CmdOutput::from_report(type_r_probe(&group, &sampler, *tol)?))
        }

        Cmd::UnipotentBound { q, radius } => {
            let group = GroupSpec::parse(&format!("unip:{q}"))?;
            let table = make_table(&group, *radius)?;
            Ok(CmdOutput::from_report(unipotent_norm_bound(*q, &table)?))
        }

        Cmd::AxbDecompose { a, b } => {
            let d = axb_decompose(*a, *b)?;
            let word: Vec<[f64; 2]> = d.word.iter().map(|&(s, t)| [s, t]).collect();
            let rows = vec![
                vec!["n".into(), d.n.to_string()],
                vec!["gamma".into(), fmt_float(d.gamma)],
                vec!["length_bound".into(), d.length_bound.to_string()],
                vec!["inverted".into(), d.inverted.to_string()],
                vec!["omega".into(), fmt_float(d.omega)],
                vec![
                    "reconstruction_error".into(),
                    fmt_float(d.reconstruction_error),
                ],
                vec!["weight_bound_ok".into(), d.weight_bound_ok.to_string()],
            ];
            let text = rows.iter().map(|r| format!("{} = {}", r[0], r[1])).collect();
            Ok(CmdOutput::computed(
                json!({
                    "n": d.n,
                    "gamma": d.gamma,
                    "length_bound": d.length_bound,
                    "inverted": d.inverted,
                    "omega": d.omega,
                    "word": word,
                    "reconstruction_error": d.reconstruction_error,
                    "weight_bound_ok": d.weight_bound_ok,
                }),
                svec(&["field", "value"]),
                rows,
                text,
            ))
        }

        Cmd::Sl2Scales { element } => {
            let group = GroupSpec::parse("sl2")?;
            let g = group.parse_element(element)?;
            let s = sl2_scales(&g)?;
            Ok(CmdOutput::computed(
                json!({"element": g.to_string(), "sigma": s.sigma, "theta": s.theta}),
                svec(&["sigma", "theta"]),
                vec![vec![fmt_float(s.sigma), fmt_float(s.theta)]],
                vec![
                    format!("sigma(g) = {}", fmt_float(s.sigma)),
                    format!("theta(g) = {}", fmt_float(s.theta)),
                ],
            ))
        }

        Cmd::Convolve {
            group,
            phi,
            psi,
            scale,
            m,
            c,
            d,
            radius,
        } => {
            let group = GroupSpec::parse(group)?;
            let f = load_function(&group, phi)?;
            let g = load_function(&group, psi)?;
            let conv = f.convolve(&g)?;
            let mut out = function_output(&conv);
            if let Some(scale_spec) = scale {
                let scale = make_scale_auto(scale_spec, &group, *radius, "scale")?;
                let report = conv_bound_check(&f, &g, &scale, *m, *c, *d)?;
                let bound = CmdOutput::from_report(report);
                out.payload = json!({
                    "convolution": out.payload,
                    "bound_check": bound.payload,
                });
                out.text.extend(bound.text);
                out.exit = bound.exit;
            }
            Ok(out)
        }

        Cmd::Seminorm {
            group,
            scale,
            function,
            m,
            radius,
        } => {
            let group = GroupSpec::parse(group)?;
            let f = load_function(&group, function)?;
            let scale = make_scale_auto(scale, &group, *radius, "scale")?;
            let v = f.seminorm(&scale, *m)?;
            let exact = f.seminorm_exact(&scale, *m)?;
            let exact_str = exact.as_ref().map(|r| r.to_string());
            Ok(CmdOutput::computed(
                json!({
                    "m": m,
                    "log_value": v.log_value,
                    "value": v.log_value.exp(),
                    "exact": exact_str,
                }),
                svec(&["m", "log_value", "value", "exact"]),
                vec![vec![
                    m.to_string(),
                    fmt_float(v.log_value),
                    fmt_float(v.log_value.exp()),
                    exact_str.clone().unwrap_or_default(),
                ]],
                vec![match &exact_str {
                    Some(e) => format!("||f||_{m} = {e} (log_value = {})", fmt_float(v.log_value)),
                    None => format!("||f||_{m}: log_value = {}", fmt_float(v.log_value)),
                }],
            ))
        }

        Cmd::Involution { group, function } => {
            let group = GroupSpec::parse(group)?;
            let f = load_function(&group, function)?;
            Ok(function_output(&f.involution()?))
        }

        Cmd::DeltaRatio {
            group,
            scale,
            chain,
            m,
            k,
            radius,
        } => {
            let group = GroupSpec::parse(group)?;
            let scale = make_scale_auto(scale, &group, *radius, "scale")?;
            let elems = parse_elements(&group, chain)?;
            let log_ratio = delta_power_ratio(&scale, &elems, *m, *k)?;
            Ok(CmdOutput::computed(
                json!({"m": m, "k": k, "chain_len": elems.len(), "log_ratio": log_ratio}),
                svec(&["m", "k", "log_ratio"]),
                vec![vec![m.to_string(), k.to_string(), fmt_float(log_ratio)]],
                vec![format!(
                    "log( sigma^{m}(g1...gn) / prod sigma^{k}(gi) ) = {}",
                    fmt_float(log_ratio)
                )],
            ))
        }

        Cmd::DivergeDemo { case, mmax } => {
            let case = DivergenceCase::parse(case)?;
            let table = divergence_partial_sums(case, *mmax)?;
            let rows: Vec<Vec<String>> = table
                .entries
                .iter()
                .map(|(m, v)| vec![m.to_string(), fmt_float(*v)])
                .collect();
            let label = if table.log_domain { "log partial sum" } else { "partial sum" };
            let mut text = vec![format!(
                "{} up to M = {} ({label})",
                case.as_str(),
                table.truncation
            )];
            text.extend(rows.iter().map(|r| format!("M = {:>9}  {}", r[0], r[1])));
            text.push(format!("strictly increasing: {}", table.strictly_increasing));
            Ok(CmdOutput::computed(
                json!({
                    "case": case.as_str(),
                    "truncation": table.truncation,
                    "log_domain": table.log_domain,
                    "strictly_increasing": table.strictly_increasing,
                    "entries": table.entries,
                }),
                svec(&["m", if table.log_domain { "log_partial_sum" } else { "partial_sum" }]),
                rows,
                text,
            ))
        }

        Cmd::TemperedDemo { q, n } => {
            let q: BigRational = q
                .parse()
                .map_err(|_| usage(format!("bad rational `{q}`")))?;
            let demo = tempered_action_demo(&q, *n)?;
            let sep = demo
                .separation
                .as_ref()
                .map(|(q, norm, bound)| (q.to_string(), norm.to_string(), bound.to_string()));
            let rows = vec![
                vec!["q".into(), demo.q.to_string()],
                vec!["n".into(), demo.n.to_string()],
                vec!["norm".into(), demo.norm.to_string()],
                vec!["strong_bound".into(), demo.strong_bound.to_string()],
                vec!["exceeds_strong_bound".into(), demo.exceeds_strong_bound.to_string()],
                vec![
                    "separating_q".into(),
                    sep.as_ref().map(|s| s.0.clone()).unwrap_or_default(),
                ],
            ];
            let mut text: Vec<String> = rows
                .iter()
                .map(|r| format!("{} = {}", r[0], r[1]))
                .collect();
            if !demo.norm_matches_formula || !demo.action_bound_ok {
                text.push("internal consistency check failed".into());
            }
            Ok(CmdOutput::computed(
                json!({
                    "q": demo.q.to_string(),
                    "n": demo.n,
                    "norm": demo.norm.to_string(),
                    "norm_matches_formula": demo.norm_matches_formula,
                    "action_bound_ok": demo.action_bound_ok,
                    "strong_bound": demo.strong_bound.to_string(),
                    "exceeds_strong_bound": demo.exceeds_strong_bound,
                    "separation": sep,
                }),
                svec(&["field", "value"]),
                rows,
                text,
            ))
        }

        Cmd::Integrability {
            group,
            scale,
            radius,
            p,
        } => {
            let group = GroupSpec::parse(group)?;
            let table = make_table(&group, *radius)?;
            let scale = make_scale(scale, &group, Some(table.clone()), "scale")?;
            let sum = integrability_sum(&scale, &table, *p)?;
            let (verdict, exit, detail) = match &sum.verdict {
                IntegrabilityVerdict::ConvergesCertified {
                    tail_bound,
                    certificate,
                } => (
                    "converges-certified",
                    0,
                    format!("tail <= {} ({certificate})", fmt_float(*tail_bound)),
                ),
                IntegrabilityVerdict::DivergesEvidence => {
                    ("diverges-evidence", 1, String::new())
                }
                IntegrabilityVerdict::Inconclusive => ("inconclusive", 2, String::new()),
            };
            let rows: Vec<Vec<String>> = sum
                .shells
                .iter()
                .map(|(n, t, s)| vec![n.to_string(), fmt_float(*t), fmt_float(*s)])
                .collect();
            let mut text = vec![
                format!("sum of sigma^-{p} over the ball of radius {}", sum.radius),
                format!("log partial sum = {}", fmt_float(sum.log_sum)),
                format!("verdict: {verdict}"),
            ];
            if !detail.is_empty() {
                text.push(detail.clone());
            }
            Ok(CmdOutput {
                payload: json!({
                    "p": sum.p,
                    "radius": sum.radius,
                    "log_sum": sum.log_sum,
                    "sum": sum.sum(),
                    "verdict": verdict,
                    "detail": detail,
                    "shells": sum.shells,
                }),
                csv_header: svec(&["n", "log_term", "log_partial_sum"]),
                csv_rows: rows,
                text,
                exit,
            })
        }

        Cmd::HolderCheck {
            group,
            scale,
            function,
            m,
            r,
            p,
            c,
            radius,
        } => {
            let group = GroupSpec::parse(group)?;
            let f = load_function(&group, function)?;
            let scale = make_scale_auto(scale, &group, *radius, "scale")?;
            Ok(CmdOutput::from_report(
                scalekit::growth::holder_embedding_check(&f, &scale, *m, *r, *p, *c)?,
            ))
        }

        Cmd::ConvPower { n, k, dim, spacing } => {
            let check = conv_power_bound_check(*n, *k, *dim, *spacing)?;
            let mut out = CmdOutput::from_report(check.report.clone());
            out.payload = json!({
                "report": out.payload,
                "log_norm": check.log_norm,
                "log_bound": check.log_bound,
                "log_root": check.log_root,
                "log_root_bound": check.log_root_bound,
                "error_budget": check.error_budget,
            });
            out.csv_header = svec(&[
                "n",
                "log_norm",
                "log_bound",
                "log_root",
                "log_root_bound",
                "error_budget",
                "verdict",
            ]);
            let verdict = match check.report.verdict {
                Verdict::HoldsOnEvidence => "holds-on-evidence",
                Verdict::Violated => "violated",
                Verdict::Inconclusive => "inconclusive",
            };
            out.csv_rows = vec![vec![
                n.to_string(),
                fmt_float(check.log_norm),
                fmt_float(check.log_bound),
                fmt_float(check.log_root),
                fmt_float(check.log_root_bound),
                fmt_float(check.error_budget),
                verdict.into(),
            ]];
            out.text.push(format!(
                "log root = {} vs bound {}",
                fmt_float(check.log_root),
                fmt_float(check.log_root_bound)
            ));
            Ok(out)
        }

        Cmd::GspaceCheck {
            space,
            samples,
            seed,
            translation,
            exp_max,
        } => {
            let spec = GSpaceSpec::parse(space)?;
            let cfg = fit_config(*exp_max, 8);
            let report = if *translation {
                gspace_translation_check(&spec, *samples, *seed, &cfg)?
            } else {
                gspace_check(&spec, *samples, *seed, &cfg)?
            };
            Ok(CmdOutput::from_report(report))
        }

        Cmd::InducedScale { r, t, window } => {
            let v = induced_scale_eval(*r, *t, *window)?;
            Ok(CmdOutput::computed(
                json!({
                    "r": r,
                    "t": t,
                    "window": window,
                    "log_value": v.log_value,
                    "value": v.log_value.exp(),
                    "minimizer": v.minimizer,
                    "upper_bound": v.upper_bound,
                }),
                svec(&["r", "window", "log_value", "value", "minimizer"]),
                vec![vec![
                    fmt_float(*r),
                    window.to_string(),
                    fmt_float(v.log_value),
                    fmt_float(v.log_value.exp()),
                    v.minimizer.to_string(),
                ]],
                vec![format!(
                    "induced sigma([{}, {}]) = {} (minimizer n = {})",
                    fmt_float(*r),
                    fmt_float(*t),
                    fmt_float(v.log_value.exp()),
                    v.minimizer
                )],
            ))
        }
    }
}
