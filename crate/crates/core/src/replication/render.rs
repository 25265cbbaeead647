use std::fmt::Write;
use std::str::FromStr;

use super::{published, Battery, ReplicationReport};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    /// Schema-versioned JSON.
    Json,
    /// Markdown tables.
    Markdown,
    /// Tab-separated predicted/observed rate differences, one row per pair.
    Scatter,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" | "structured" => Ok(ReportFormat::Json),
            "markdown" | "md" | "human" => Ok(ReportFormat::Markdown),
            "scatter" | "tsv" => Ok(ReportFormat::Scatter),
            other => Err(Error::Argument(format!("unknown report format {other:?}"))),
        }
    }
}

pub fn render_report(report: &ReplicationReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        ReportFormat::Markdown => Ok(markdown(report)),
        ReportFormat::Scatter => scatter(report),
    }
}

fn scatter(report: &ReplicationReport) -> Result<String> {
    let mode = report.config.primary_mode;
    let block = report
        .block(mode)
        .filter(|b| b.error.is_none())
        .ok_or_else(|| Error::Argument(format!("no {mode} regression to plot")))?;
    let mut out = String::from("pair_id\tpredicted\tobserved\n");
    for p in &block.scatter {
        writeln!(out, "{}\t{}\t{}", p.pair_id, p.predicted, p.observed).unwrap();
    }
    Ok(out)
}

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "–".into(), |v| format!("{v:.digits$}"))
}

fn markdown(report: &ReplicationReport) -> String {
    let mut out = String::new();
    let s = &report.summary;
    writeln!(out, "# Replication report: {}\n", report.source).unwrap();
    writeln!(out, "| words | pairs | responses/word | mean rate | SD rate |").unwrap();
    writeln!(out, "|---|---|---|---|---|").unwrap();
    writeln!(
        out,
        "| {} | {} | {} | {:.4} | {:.4} |\n",
        s.word_count,
        s.pair_count,
        s.responses_per_word.map_or("–".into(), |n| n.to_string()),
        s.mean_rate,
        s.sd_rate
    )
    .unwrap();

    writeln!(out, "## Pair significance\n").unwrap();
    match &report.significance.table {
        Some(t) => {
            writeln!(
                out,
                "{} of {} pairs with |t| ≥ 1.961; {} with p < 0.05.\n",
                t.count_t,
                t.rows.len(),
                t.count_p
            )
            .unwrap();
            writeln!(out, "| n | k | p0 | p (X ≥ k) | matches published |").unwrap();
            writeln!(out, "|---|---|---|---|---|").unwrap();
            for b in &report.significance.binomial {
                writeln!(
                    out,
                    "| {} | {} | {} | {:.3e} | {} |",
                    b.n,
                    b.k,
                    b.p0,
                    b.p_value,
                    if b.matches_published { "yes" } else { "no" }
                )
                .unwrap();
            }
            out.push('\n');
        }
        None => {
            writeln!(out, "{}\n", report.significance.note.as_deref().unwrap_or("not run")).unwrap();
        }
    }

    for battery in &report.batteries {
        battery_markdown(&mut out, battery);
    }

    if let Some(rows) = &report.feature_agreement {
        writeln!(out, "## Feature agreement (dataset vs local)\n").unwrap();
        writeln!(out, "| feature | n | exact | max abs diff | r |").unwrap();
        writeln!(out, "|---|---|---|---|---|").unwrap();
        for r in rows {
            writeln!(
                out,
                "| {} | {} | {} | {:.4} | {} |",
                r.feature,
                r.n,
                r.exact,
                r.max_abs_diff,
                opt(r.r, 3)
            )
            .unwrap();
        }
        out.push('\n');
    }

    writeln!(out, "## Discrepancy notes\n").unwrap();
    for d in &report.discrepancies {
        writeln!(
            out,
            "- **{}**: published {}; recomputed {}. {}",
            d.topic, d.published, d.recomputed, d.note
        )
        .unwrap();
    }
    out
}

fn battery_markdown(out: &mut String, b: &Battery) {
    let source = match b.feature_source {
        super::FeatureSource::Dataset => "dataset features",
        super::FeatureSource::Local => "locally computed features",
    };
    writeln!(out, "## Battery: {source}\n").unwrap();

    writeln!(out, "### Correlations with selection rate\n").unwrap();
    writeln!(out, "| feature | r | t | p | published r |").unwrap();
    writeln!(out, "|---|---|---|---|---|").unwrap();
    for r in &b.correlations {
        writeln!(
            out,
            "| {} | {} | {} | {} | {:.3} |",
            r.feature,
            if r.degenerate { "degenerate".into() } else { opt(r.r, 3) },
            opt(r.t_stat, 3),
            opt(r.p_value, 4),
            r.published_r
        )
        .unwrap();
    }
    out.push('\n');

    let hl = &b.high_low;
    writeln!(out, "### Higher- vs lower-rate words ({} pairs)\n", hl.pairs).unwrap();
    if let Some(note) = &hl.note {
        writeln!(out, "{note}\n").unwrap();
    }
    writeln!(out, "| feature | mean high | mean low | t | df | p | d | published t |").unwrap();
    writeln!(out, "|---|---|---|---|---|---|---|---|").unwrap();
    for r in &hl.rows {
        writeln!(
            out,
            "| {} | {:.3} | {:.3} | {} | {} | {} | {} | {} |",
            r.feature,
            r.mean_high,
            r.mean_low,
            opt(r.t_stat, 3),
            opt(r.df, 1),
            opt(r.p_value, 4),
            opt(r.cohens_d, 3),
            opt(r.published_t, 3)
        )
        .unwrap();
    }
    out.push('\n');

    writeln!(out, "### Regression\n").unwrap();
    writeln!(
        out,
        "Published: R² = {}, F[{}, {}] = {}, {}/{} pairs.\n",
        published::R_SQUARED,
        published::F_DF.0,
        published::F_DF.1,
        published::F_STAT,
        published::HITS,
        published::PAIRS
    )
    .unwrap();
    writeln!(out, "| mode | R² | F | df | p | accuracy | ties |").unwrap();
    writeln!(out, "|---|---|---|---|---|---|---|").unwrap();
    for block in &b.regressions {
        match (&block.fit, &block.accuracy) {
            (Some(f), Some(a)) => writeln!(
                out,
                "| {} | {:.4} | {:.3} | ({}, {}) | {:.3e} | {}/{} ({:.3}) | {} |",
                block.mode,
                f.r_squared,
                f.f_stat,
                f.f_df.0,
                f.f_df.1,
                f.f_p_value,
                a.hits,
                a.total,
                a.fraction,
                a.zero_margin + a.zero_observed
            ),
            _ => writeln!(
                out,
                "| {} | failed: {} | | | | | |",
                block.mode,
                block.error.as_deref().unwrap_or("unknown error")
            ),
        }
        .unwrap();
    }
    out.push('\n');
    for block in &b.regressions {
        let Some(f) = &block.fit else { continue };
        writeln!(out, "{} coefficients (intercept {:.6}):\n", block.mode, f.intercept).unwrap();
        writeln!(out, "| column | raw | standardized | SE | p |").unwrap();
        writeln!(out, "|---|---|---|---|---|").unwrap();
        for (i, name) in block.columns.iter().enumerate() {
            writeln!(
                out,
                "| {} | {:.6} | {:.4} | {:.6} | {:.4} |",
                name, f.coefficients[i], f.standardized[i], f.std_errors[i], f.p_values[i]
            )
            .unwrap();
        }
        if let Some(cv) = &block.cross_validation {
            writeln!(
                out,
                "\n{}-fold cross-validated accuracy (out of sample): {}/{} ({:.3})",
                cv.folds, cv.accuracy.hits, cv.accuracy.total, cv.accuracy.fraction
            )
            .unwrap();
        }
        out.push('\n');
    }

    writeln!(out, "### Verdicts\n").unwrap();
    for v in &b.verdicts {
        writeln!(out, "- {}: {} ({})", v.hypothesis, v.verdict.label(), v.evidence).unwrap();
    }
    out.push('\n');
}
