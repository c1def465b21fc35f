use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DerivedBounds, FeasibilityReport, SatelliteDesign};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            _ => Err(Error::invalid("format", "must be json or text")),
        }
    }
}

/// What `check` and `design` emit: the report and the sleeve it describes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub report: FeasibilityReport,
    pub design: Option<SatelliteDesign>,
}

/// Pretty JSON with object keys sorted at every level, or a fixed-width text
/// table. Both end with a newline.
pub fn emit_report(report: &FeasibilityReport, design: Option<&SatelliteDesign>, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => to_sorted_json(&ReportDocument {
            report: report.clone(),
            design: design.cloned(),
        }),
        OutputFormat::Text => render_text(report, design).into_bytes(),
    }
}

pub fn to_sorted_json<T: Serialize>(value: &T) -> Vec<u8> {
    // serde_json's default map is a BTreeMap, so going through Value sorts keys.
    let value = serde_json::to_value(value).expect("report types serialize to JSON");
    let mut out = serde_json::to_vec_pretty(&value).expect("a JSON value always prints");
    out.push(b'\n');
    out
}

pub fn parse_report_json(text: &str) -> Result<ReportDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: Path::new("<report>").to_path_buf(),
        message: e.to_string(),
    })
}

fn num(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.6}"))
}

fn render_text(report: &FeasibilityReport, design: Option<&SatelliteDesign>) -> String {
    let mut s = String::new();
    let theme = if report.theme.is_empty() { "-" } else { &report.theme };
    let _ = writeln!(s, "theme          {theme}");
    let _ = writeln!(s, "admissible     {}", if report.admissible { "yes" } else { "no" });
    let _ = writeln!(s, "binding layer  {}", report.binding_layer);
    s.push('\n');

    let _ = writeln!(
        s,
        "  {:<11} {:<13} {:>14} {:>11}  bounds",
        "layer", "status", "margin", "normalized"
    );
    for (layer, v) in report.layer_verdicts.iter() {
        let mark = if layer == report.binding_layer { '*' } else { ' ' };
        let _ = writeln!(
            s,
            "{mark} {:<11} {:<13} {:>14} {:>11}  {}",
            layer.as_str(),
            v.status.as_str(),
            num(v.margin),
            num(v.normalized_margin),
            layer.bounds_label(),
        );
    }
    s.push('\n');
    write_bounds(&mut s, &report.derived_bounds);

    if let Some(d) = design {
        s.push('\n');
        let _ = writeln!(s, "design (alpha {:.6}, {} names)", d.alpha, d.breadth());
        for h in &d.constituents {
            let _ = writeln!(s, "  {:<16} {:>10.6}", h.id, h.weight);
        }
    }
    let diag = &report.diagnostics;
    if diag.entropy_increment_approx.is_some() || diag.entropy_increment_exact.is_some() {
        s.push('\n');
        let _ = writeln!(s, "entropy increment");
        let _ = writeln!(s, "  {:<16} {:>10}", "approx", num(diag.entropy_increment_approx));
        let _ = writeln!(s, "  {:<16} {:>10}", "exact", num(diag.entropy_increment_exact));
    }
    if !report.rejected.is_empty() {
        s.push('\n');
        let _ = writeln!(s, "rejected");
        for r in &report.rejected {
            let _ = writeln!(s, "  {:<16} {}", r.id, r.reason);
        }
    }
    if !report.advice.is_empty() {
        s.push('\n');
        let _ = writeln!(s, "advice");
        for a in &report.advice {
            let _ = writeln!(s, "  - {a}");
        }
    }
    s
}

fn write_bounds(s: &mut String, b: &DerivedBounds) {
    let _ = writeln!(s, "bounds");
    let _ = writeln!(s, "  {:<24} {:.6}", "alpha_max_structural", b.alpha_max_structural);
    let _ = writeln!(s, "  {:<24} {:.6}", "alpha_effective", b.alpha_effective);
    let _ = writeln!(s, "  {:<24} {}", "alpha_below_policy_min", b.alpha_below_policy_min);
    let _ = writeln!(s, "  {:<24} {:.6}", "delta_w_min", b.delta_w_min);
    let _ = writeln!(s, "  {:<24} {}", "k_max_econ", b.k_max_econ);
    let _ = writeln!(s, "  {:<24} {}", "k_max_entropy", b.k_max_entropy);
    if !b.weight_caps.is_empty() {
        let _ = writeln!(
            s,
            "  {:<16} {:>10} {:>13} {:>11}",
            "cap", "impact", "participation", "delta_w_min"
        );
        for c in &b.weight_caps {
            let _ = writeln!(
                s,
                "  {:<16} {:>10.6} {:>13} {:>11.6}",
                c.id,
                c.impact,
                num(c.participation),
                c.delta_w_min
            );
        }
    }
}

/// Closed-form bounds alone, for the `bounds` subcommand.
pub fn render_bounds(bounds: &DerivedBounds, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => to_sorted_json(bounds),
        OutputFormat::Text => {
            let mut s = String::new();
            write_bounds(&mut s, bounds);
            s.into_bytes()
        }
    }
}
