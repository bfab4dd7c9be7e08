//! Output plumbing: the report envelope and the three serializers.
//!
//! Exit-code contract: 0 for holds/computed, 1 for a violated condition,
//! 2 for an inconclusive probe, 3 for usage errors.  Identical requests
//! (including seeds) produce byte-identical output except for the wall
//! time, which only the JSON envelope carries.

use scalekit::{ProbeReport, Verdict};
use serde::Serialize;

/// Output format selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// The result of one subcommand, ready for serialization.
pub struct CmdOutput {
    /// Machine payload for JSON mode.
    pub payload: serde_json::Value,
    /// Fixed CSV header for this subcommand.
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
    /// Human-readable lines for text mode.
    pub text: Vec<String>,
    pub exit: i32,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    version: &'a str,
    payload: &'a serde_json::Value,
    wall_time_ms: f64,
}

/// Floats rendered at 17 significant digits (round-trip exact for `f64`).
pub fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

impl CmdOutput {
    /// Standard wrapping of a probe report: verdict decides the exit code,
    /// the CSV row carries the fit, text mode spells out the checked
    /// condition template.
    pub fn from_report(report: ProbeReport) -> Self {
        let exit = match report.verdict {
            Verdict::HoldsOnEvidence => 0,
            Verdict::Violated => 1,
            Verdict::Inconclusive => 2,
        };
        let verdict = match report.verdict {
            Verdict::HoldsOnEvidence => "holds-on-evidence",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        };
        let (c, m, d) = report
            .fit
            .as_ref()
            .map(|f| (fmt_float(f.c), f.exponent.to_string(), fmt_float(f.d)))
            .unwrap_or_default();
        let mut text = vec![
            format!("condition: {}", report.condition),
            format!("verdict:   {verdict}"),
        ];
        if let Some(f) = &report.fit {
            text.push(format!(
                "fit:       C = {}, exponent = {}, D = {}",
                fmt_float(f.c),
                f.exponent,
                fmt_float(f.d)
            ));
        }
        if let Some(w) = &report.witness {
            text.push(format!("witness:   {}", w.detail));
            for (e, v) in w.elements.iter().zip(&w.log_values) {
                text.push(format!("           {e}  log_value = {}", fmt_float(*v)));
            }
        }
        if !report.notes.is_empty() {
            text.push(format!("notes:     {}", report.notes));
        }
        Self {
            payload: serde_json::to_value(&report).expect("report serializes"),
            csv_header: svec(&["condition", "verdict", "c", "exponent", "d", "notes"]),
            csv_rows: vec![vec![
                report.condition.clone(),
                verdict.into(),
                c,
                m,
                d,
                report.notes.clone(),
            ]],
            text,
            exit,
        }
    }

    /// A computed table or value: always exit 0.
    pub fn computed(
        payload: serde_json::Value,
        csv_header: Vec<String>,
        csv_rows: Vec<Vec<String>>,
        text: Vec<String>,
    ) -> Self {
        Self {
            payload,
            csv_header,
            csv_rows,
            text,
            exit: 0,
        }
    }

    pub fn emit(&self, command: &str, format: Format, wall_time_ms: f64) {
        match format {
            Format::Json => {
                let env = Envelope {
                    command,
                    version: env!("CARGO_PKG_VERSION"),
                    payload: &self.payload,
                    wall_time_ms,
                };
                println!("{}", serde_json::to_string_pretty(&env).expect("envelope"));
            }
            Format::Csv => {
                println!("{}", csv_line(&self.csv_header));
                for row in &self.csv_rows {
                    println!("{}", csv_line(row));
                }
            }
            Format::Text => {
                for line in &self.text {
                    println!("{line}");
                }
            }
        }
    }
}

pub fn svec(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| {
            if f.contains(',') || f.contains('"') || f.contains('\n') {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}
