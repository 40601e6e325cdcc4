//! Command implementations behind the CLI: analysis reports, independence
//! verdicts, and figure CSV emission. Everything is deterministic given a
//! RunConfig, and every artifact echoes the config verbatim.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, CatalogEntry};
use crate::error::{MahlerError, Result};
use crate::exact::{rational_to_string, sharpen_root, ExactOrInterval};
use crate::hp::FloatCtx;
use crate::independence::{
    independence, rescale_common_base, verdict_report, Element, SearchConfig, VerdictReport,
};
use crate::mahler::{
    characteristic_polynomial, select_eigenvalue, Evaluator, MahlerEquation, RadialParams,
};
use crate::regular::{growth_constants, weighted_sum_trace, LinearRepresentation};

/// Per-run parameters, all echoed into every artifact.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub precision: u32,
    pub depth: usize,
    pub z0: BigRational,
    pub r_max: usize,
    pub h: i64,
    pub out: PathBuf,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: 60,
            depth: 40,
            z0: BigRational::new(1.into(), 2.into()),
            r_max: 16,
            h: 50,
            out: PathBuf::from("."),
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            precision: self.precision,
            depth: self.depth,
            z0: rational_to_string(&self.z0),
            r_max: self.r_max,
            h: self.h,
            seed: self.seed,
        }
    }

    /// `# key = value` comment lines prepended to CSV artifacts.
    pub fn header_lines(&self, command: &str) -> String {
        format!(
            "# mahler-lab {command}\n# precision = {}\n# depth = {}\n# z0 = {}\n# r_max = {}\n# H = {}\n# seed = {}\n",
            self.precision,
            self.depth,
            rational_to_string(&self.z0),
            self.r_max,
            self.h,
            self.seed,
        )
    }
}

/// The reproducibility block embedded in JSON reports.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConfigEcho {
    pub precision: u32,
    pub depth: usize,
    pub z0: String,
    pub r_max: usize,
    #[serde(rename = "H")]
    pub h: i64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialSummary {
    pub gamma: f64,
    pub lambda_estimate: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthSummary {
    pub alpha: f64,
    pub alpha_exact: Option<String>,
    pub m: usize,
    pub exponent: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub name: String,
    pub k: u64,
    pub characteristic_polynomial: Option<String>,
    pub eigenvalue_status: Option<String>,
    pub lambda: Option<f64>,
    pub lambda_exact: Option<String>,
    pub radial: Option<RadialSummary>,
    pub growth: Option<GrowthSummary>,
    pub consistency: Option<String>,
    pub flags: Vec<String>,
    pub notes: String,
    pub config: ConfigEcho,
}

/// Resolve a CLI input: catalog name first, then a JSON file holding either
/// an equation ("coeffs") or a representation ("matrices").
pub fn resolve_input(input: &str) -> Result<CatalogEntry> {
    match catalog::get(input) {
        Ok(e) => Ok(e),
        Err(MahlerError::UnknownEntry(_)) if Path::new(input).is_file() => {
            let text = fs::read_to_string(input)
                .map_err(|e| MahlerError::InvalidInput(format!("{input}: {e}")))?;
            entry_from_json(input, &text)
        }
        Err(e) => Err(e),
    }
}

fn entry_from_json(name: &str, text: &str) -> Result<CatalogEntry> {
    let (eq, rep) = if text.contains("\"matrices\"") {
        (None, Some(LinearRepresentation::from_json(text)?))
    } else {
        (Some(MahlerEquation::from_json(text)?), None)
    };
    // User files carry their own truth; the solver/representation is the oracle.
    let oracle: Box<dyn Fn(usize) -> Vec<BigRational> + Send + Sync> = match (&eq, &rep) {
        (Some(e), _) => {
            let e = e.clone();
            Box::new(move |n| crate::mahler::solve_coefficients(&e, n).unwrap_or_default())
        }
        (_, Some(r)) => {
            let r = r.clone();
            Box::new(move |n| (0..=n as u64).map(|i| r.eval_term(i)).collect())
        }
        _ => unreachable!(),
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        mahler_equation: eq,
        representation: rep,
        oracle,
        expected: catalog::ExpectedConstants {
            lambda: None,
            alpha: None,
            m: None,
            provenance: "user-supplied input".into(),
        },
        notes: "user-supplied input".into(),
    })
}

/// Full analysis pipeline: characteristic polynomial, radial fit, eigenvalue
/// selection, growth constants, and cross-consistency.
pub fn cmd_analyze(input: &str, config: &RunConfig) -> Result<AnalyzeReport> {
    let entry = resolve_input(input)?;
    let k = entry
        .mahler_equation
        .as_ref()
        .map(|e| e.k)
        .or(entry.representation.as_ref().map(|r| r.k))
        .expect("entry has at least one form");

    let mut report = AnalyzeReport {
        name: entry.name.clone(),
        k,
        characteristic_polynomial: None,
        eigenvalue_status: None,
        lambda: None,
        lambda_exact: None,
        radial: None,
        growth: None,
        consistency: None,
        flags: Vec::new(),
        notes: entry.notes.clone(),
        config: config.echo(),
    };

    let mut lambda: Option<ExactOrInterval> = None;
    if let Some(eq) = &entry.mahler_equation {
        let cp = characteristic_polynomial(eq);
        report.characteristic_polynomial = Some(cp.p.to_string());
        report.eigenvalue_status = Some(format!("{:?}", cp.status));
        if cp.status == crate::mahler::EigenvalueStatus::Unselected {
            let ctx = FloatCtx::with_digits(config.precision);
            let ev = Evaluator::new(eq, 2048)?;
            let fit = crate::mahler::radial_fit(
                &ev,
                &ctx,
                &RadialParams {
                    depth: config.depth,
                    z0: config.z0.clone(),
                    xi: None,
                    residual_tol: 5e-2,
                },
            )?;
            report.radial = Some(RadialSummary {
                gamma: fit.gamma,
                lambda_estimate: fit.lambda_estimate,
                residual: fit.residual,
            });
            let selected = select_eigenvalue(&cp, &fit)?;
            if let Some(ev) = selected.eigenvalue {
                report.lambda = Some(ev.to_f64());
                report.lambda_exact = ev.exact().map(|q| q.to_string());
                lambda = Some(ev);
            }
        }
    }

    if let Some(rep) = &entry.representation {
        match growth_constants(rep, config.r_max) {
            Ok(g) => {
                report.growth = Some(GrowthSummary {
                    alpha: g.alpha.to_f64(),
                    alpha_exact: g.alpha.exact().map(|q| q.to_string()),
                    m: g.m,
                    exponent: g.exponent,
                });
                if let Some(l) = &lambda {
                    report.consistency = Some(consistency_line(l, &g.alpha));
                }
            }
            Err(MahlerError::SequenceHypothesis(msg)) => {
                report
                    .flags
                    .push(format!("growth hypothesis not met: {msg}"));
            }
            Err(e) => return Err(e),
        }
    }

    // Flag eigenvalues multiplicatively dependent with the base.
    if let Some(l) = &lambda {
        if let Some(q) = l.exact() {
            if q.is_positive() {
                let set = crate::independence::MultiplicativeSet::new(
                    k,
                    vec![Element {
                        value: ExactOrInterval::Exact(q.clone()),
                        provenance: entry.name.clone(),
                        weight: 1,
                    }],
                )?;
                let v = independence(
                    &set,
                    &SearchConfig {
                        h: config.h,
                        digits: config.precision,
                    },
                )?;
                if v.status == crate::independence::Status::Dependent {
                    report
                        .flags
                        .push("eigenvalue multiplicatively dependent with k".into());
                }
            }
        }
    }

    Ok(report)
}

fn consistency_line(lambda: &ExactOrInterval, alpha: &ExactOrInterval) -> String {
    match (lambda.exact(), alpha.exact()) {
        (Some(l), Some(a)) if l == a => "lambda_F = alpha_f exactly".to_string(),
        _ => {
            let diff = (lambda.to_f64() - alpha.to_f64()).abs();
            format!("|lambda_F - alpha_f| = {diff:.3e}")
        }
    }
}

/// Human-readable rendering of an analysis report.
pub fn render_analyze(r: &AnalyzeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} (k = {})", r.name, r.k);
    if let Some(p) = &r.characteristic_polynomial {
        let _ = writeln!(s, "  characteristic polynomial: {p}");
    }
    if let Some(st) = &r.eigenvalue_status {
        let _ = writeln!(s, "  eigenvalue status: {st}");
    }
    if let Some(l) = r.lambda {
        match &r.lambda_exact {
            Some(e) => {
                let _ = writeln!(s, "  lambda_F = {e} ({l:.12})");
            }
            None => {
                let _ = writeln!(s, "  lambda_F = {l:.12}");
            }
        }
    }
    if let Some(rad) = &r.radial {
        let _ = writeln!(
            s,
            "  radial fit: gamma = {:.12}, k^gamma = {:.12}, residual = {:.3e}",
            rad.gamma, rad.lambda_estimate, rad.residual
        );
    }
    if let Some(g) = &r.growth {
        let alpha = g
            .alpha_exact
            .clone()
            .unwrap_or_else(|| format!("{:.12}", g.alpha));
        let _ = writeln!(
            s,
            "  growth: alpha_f = {alpha}, m_f = {}, exponent = {:.12}",
            g.m, g.exponent
        );
    }
    if let Some(c) = &r.consistency {
        let _ = writeln!(s, "  consistency: {c}");
    }
    for f in &r.flags {
        let _ = writeln!(s, "  flag: {f}");
    }
    if !r.notes.is_empty() {
        let _ = writeln!(s, "  notes: {}", r.notes);
    }
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndependenceRun {
    pub inputs: Vec<String>,
    pub base_k: u64,
    pub elements: Vec<String>,
    pub verdict: VerdictReport,
    pub config: ConfigEcho,
}

/// Gather one multiplicative-set element per input and run the tiered
/// independence search over the common base.
pub fn cmd_independence(inputs: &[String], config: &RunConfig) -> Result<IndependenceRun> {
    if inputs.is_empty() {
        return Err(MahlerError::InvalidInput(
            "independence needs at least one input".into(),
        ));
    }
    let mut grouped: Vec<(u64, Vec<Element>)> = Vec::new();
    for input in inputs {
        let entry = resolve_input(input)?;
        let (k, element) = entry_element(&entry, config)?;
        grouped.push((k, vec![element]));
    }
    let set = rescale_common_base(&grouped)?;
    let v = independence(
        &set,
        &SearchConfig {
            h: config.h,
            digits: config.precision,
        },
    )?;
    let report = verdict_report(&set, &v);
    Ok(IndependenceRun {
        inputs: inputs.to_vec(),
        base_k: set.base_k,
        elements: set
            .elements
            .iter()
            .map(|e| format!("{} (weight {}, {})", e.value.to_f64(), e.weight, e.provenance))
            .collect(),
        verdict: report,
        config: config.echo(),
    })
}

/// The element an input contributes: alpha_f from its representation when it
/// has one (growth route), otherwise the dominant characteristic root of its
/// equation (eigenvalue route).
fn entry_element(entry: &CatalogEntry, config: &RunConfig) -> Result<(u64, Element)> {
    if let Some(rep) = &entry.representation {
        let g = growth_constants(rep, config.r_max)?;
        return Ok((
            rep.k,
            Element {
                value: g.alpha,
                provenance: format!("{} (regular growth)", entry.name),
                weight: 1,
            },
        ));
    }
    if let Some(eq) = &entry.mahler_equation {
        let cp = characteristic_polynomial(eq);
        if cp.status == crate::mahler::EigenvalueStatus::DegenerateZero {
            return Err(MahlerError::InvalidInput(format!(
                "{}: degenerate-zero characteristic polynomial has no eigenvalue",
                entry.name
            )));
        }
        let best = cp
            .roots
            .real_roots
            .iter()
            .filter(|r| r.to_f64() > 0.0)
            .max_by(|a, b| a.to_f64().total_cmp(&b.to_f64()))
            .ok_or_else(|| {
                MahlerError::NoDominantRealRoot(format!(
                    "{}: no positive real characteristic root",
                    entry.name
                ))
            })?;
        let value = sharpen_root(&cp.p, best);
        return Ok((
            eq.k,
            Element {
                value,
                provenance: format!("{} (eigenvalue)", entry.name),
                weight: 1,
            },
        ));
    }
    Err(MahlerError::InvalidInput(format!(
        "{}: no analyzable form",
        entry.name
    )))
}

pub fn render_independence(r: &IndependenceRun) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "independence over base k = {}: {}",
        r.base_k, r.verdict.status
    );
    for e in &r.elements {
        let _ = writeln!(s, "  element: {e}");
    }
    if let Some(rel) = &r.verdict.relation {
        let _ = writeln!(s, "  relation (k first): {rel:?}");
    }
    let _ = writeln!(
        s,
        "  tier = {}, H = {}, theorem = {}",
        r.verdict.hypothesis_tier, r.verdict.h, r.verdict.theorem
    );
    let _ = writeln!(s, "  note: {}", r.verdict.note);
    s
}

/// Format a float with 17 significant digits, the CSV contract.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Emit a figure CSV plus a generic plot script; returns the CSV path.
pub fn cmd_figure(name: &str, config: &RunConfig) -> Result<PathBuf> {
    fs::create_dir_all(&config.out)
        .map_err(|e| MahlerError::InvalidInput(format!("output dir: {e}")))?;
    let stern = catalog::get("stern")?;
    let rep = stern.representation.as_ref().expect("stern ships a rep");
    let (file, body) = match name {
        "stern-values" => {
            let mut body = String::from("n,s_n\n");
            let lo = 1u64 << 15;
            let hi = 1u64 << 16;
            for n in lo..=hi {
                let _ = writeln!(body, "{n},{}", rep.term(n));
            }
            ("stern-values.csv", body)
        }
        "stern-weighted" => {
            let mut body = String::from("N,weighted_sum\n");
            let exponent = 3f64.log2();
            for (n, w) in weighted_sum_trace(rep, 1 << 15, 1 << 16, exponent, 0) {
                let _ = writeln!(body, "{n},{}", csv_float(w));
            }
            ("stern-weighted.csv", body)
        }
        _ => return Err(MahlerError::UnknownEntry(name.to_string())),
    };
    let csv_path = config.out.join(file);
    let content = format!("{}{}", config.header_lines(&format!("figure {name}")), body);
    fs::write(&csv_path, content)
        .map_err(|e| MahlerError::InvalidInput(format!("write {file}: {e}")))?;

    let script_path = config.out.join("plot.py");
    fs::write(&script_path, PLOT_SCRIPT)
        .map_err(|e| MahlerError::InvalidInput(format!("write plot.py: {e}")))?;
    Ok(csv_path)
}

const PLOT_SCRIPT: &str = r##"#!/usr/bin/env python3
"""Plot any CSV emitted by mahler-lab figure: first column x, second y."""
import csv
import sys

import matplotlib.pyplot as plt


def main(path):
    xs, ys = [], []
    with open(path) as fh:
        rows = (r for r in fh if not r.startswith("#"))
        reader = csv.reader(rows)
        header = next(reader)
        for row in reader:
            xs.append(float(row[0]))
            ys.append(float(row[1]))
    plt.figure(figsize=(9, 4))
    plt.plot(xs, ys, lw=0.6)
    plt.xlabel(header[0])
    plt.ylabel(header[1])
    plt.tight_layout()
    out = path.rsplit(".", 1)[0] + ".png"
    plt.savefig(out, dpi=150)
    print(out)


if __name__ == "__main__":
    main(sys.argv[1])
"##;
