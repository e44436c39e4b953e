//! Text and JSON renderings of classifications and facet reports.

use std::str::FromStr;

use dea_facets_core::facets::equation;
use dea_facets_core::models::{AxisFeasibility, AxisOutcome};
use dea_facets_core::{
    BigInt, Classification, Dataset, DmuStatus, Extremity, FacetKind, FacetReport, NegativeIdeal,
};
use serde::Serialize;
use serde_json::Number;

pub fn status_name(status: DmuStatus) -> &'static str {
    match status {
        DmuStatus::StrongEfficient => "strong efficient",
        DmuStatus::WeakEfficient => "weak efficient",
        DmuStatus::Interior => "interior",
    }
}

pub fn kind_name(kind: FacetKind) -> &'static str {
    match kind {
        FacetKind::Weak => "weak",
        FacetKind::Strong => "strong",
    }
}

fn cell(outcome: &AxisOutcome) -> &'static str {
    if outcome.is_feasible() {
        "FES"
    } else {
        "INFES"
    }
}

/// Left-aligned columns separated by two spaces, no trailing whitespace.
fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, text) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(text);
            line.push_str(&" ".repeat(widths[c] - text.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn point(w: &NegativeIdeal) -> String {
    let parts: Vec<String> = w.point.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn analyze_text(d: &Dataset, c: &Classification, w: &NegativeIdeal) -> String {
    let mut out = format!("n = {}, m = {}, s = {}\n", d.n(), d.m(), d.s());
    out.push_str(&format!("negative ideal: {}\n\n", point(w)));

    let mut rows = vec![vec![
        "dmu".to_string(),
        "status".into(),
        "theta".into(),
        "slack".into(),
        "extremity".into(),
    ]];
    for (dmu, entry) in d.dmus().iter().zip(&c.entries) {
        let extremity = match entry.extremity {
            Some(Extremity::Extreme) => "extreme",
            Some(Extremity::NonExtreme) => "non-extreme",
            None => "-",
        };
        rows.push(vec![
            dmu.id.clone(),
            status_name(entry.status).into(),
            entry.score.value.to_string(),
            entry.score.total_slack.to_string(),
            extremity.into(),
        ]);
    }
    out.push_str(&grid(&rows));

    out.push_str("\nsuper-efficiency feasibility\n");
    let mut header = vec!["dmu".to_string()];
    header.extend((1..=d.m()).map(|l| format!("l={l}")));
    header.extend((1..=d.s()).map(|q| format!("q={q}")));
    let mut rows = vec![header];
    for (dmu, entry) in d.dmus().iter().zip(&c.entries) {
        if let Some(axis) = &entry.axis {
            let mut row = vec![dmu.id.clone()];
            row.extend(
                axis.inputs
                    .iter()
                    .chain(&axis.outputs)
                    .map(|o| cell(o).to_string()),
            );
            rows.push(row);
        }
    }
    out.push_str(&grid(&rows));
    out
}

pub fn facets_text(d: &Dataset, report: &FacetReport, witnesses: bool) -> String {
    let ids = |set: &[usize]| -> String {
        set.iter()
            .map(|&j| report.pool.members[j].id.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut out = String::new();
    for f in &report.facets {
        out.push_str(&format!(
            "{} [{}] on {}\n",
            equation(&f.coefficients, d),
            kind_name(f.kind),
            ids(&f.incidence)
        ));
        if witnesses {
            for set in &f.witnesses {
                out.push_str(&format!("  witness {{{}}}\n", ids(set)));
            }
        }
    }
    out.push_str(&format!(
        "{} weak, {} strong\n",
        report.weak_count(),
        report.strong_count()
    ));
    out
}

pub fn vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[derive(Serialize)]
struct JsonReport {
    schema: u32,
    classification: Vec<JsonClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<JsonFacet>>,
}

#[derive(Serialize)]
struct JsonClass {
    id: String,
    status: &'static str,
    extreme: Option<bool>,
    axis: Option<JsonAxis>,
}

#[derive(Serialize)]
struct JsonAxis {
    inputs: Vec<&'static str>,
    outputs: Vec<&'static str>,
}

#[derive(Serialize)]
struct JsonFacet {
    coeff_in: Vec<Number>,
    coeff_out: Vec<Number>,
    kind: &'static str,
    incident: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<Vec<String>>>,
}

fn numbers(v: &[BigInt]) -> Vec<Number> {
    v.iter()
        .map(|x| Number::from_str(&x.to_string()).expect("integer literal"))
        .collect()
}

fn json_class(d: &Dataset, c: &Classification) -> Vec<JsonClass> {
    d.dmus()
        .iter()
        .zip(&c.entries)
        .map(|(dmu, e)| JsonClass {
            id: dmu.id.clone(),
            status: match e.status {
                DmuStatus::StrongEfficient => "strong_efficient",
                DmuStatus::WeakEfficient => "weak_efficient",
                DmuStatus::Interior => "interior",
            },
            extreme: e.extremity.map(|x| x == Extremity::Extreme),
            axis: e.axis.as_ref().map(|a: &AxisFeasibility| JsonAxis {
                inputs: a.inputs.iter().map(cell).collect(),
                outputs: a.outputs.iter().map(cell).collect(),
            }),
        })
        .collect()
}

fn render(report: &JsonReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("serializable");
    text.push('\n');
    text
}

pub fn analyze_json(d: &Dataset, c: &Classification) -> String {
    render(&JsonReport {
        schema: 1,
        classification: json_class(d, c),
        facets: None,
    })
}

pub fn facets_json(d: &Dataset, report: &FacetReport, witnesses: bool) -> String {
    let ids = |set: &[usize]| -> Vec<String> {
        set.iter()
            .map(|&j| report.pool.members[j].id.clone())
            .collect()
    };
    let facets = report
        .facets
        .iter()
        .map(|f| JsonFacet {
            coeff_in: numbers(f.inputs()),
            coeff_out: numbers(f.outputs()),
            kind: kind_name(f.kind),
            incident: ids(&f.incidence),
            witnesses: witnesses.then(|| f.witnesses.iter().map(|w| ids(w)).collect()),
        })
        .collect();
    render(&JsonReport {
        schema: 1,
        classification: json_class(d, &report.classification),
        facets: Some(facets),
    })
}
