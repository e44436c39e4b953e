//! CSV ingestion and serialization of datasets.
//!
//! Header: `dmu` followed by `in_<name>` / `out_<name>` columns in any
//! interleaving. Cells are unsigned decimal literals, converted exactly.

use dea_facets_core::{BigInt, Dataset, Dmu, Rational};
use num_traits::{One, Pow, Zero};

use crate::error::InputError;

/// Parses an unsigned decimal literal such as `12`, `0.70` or `.5` into an
/// exact rational.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (int, frac) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int.len() + frac.len() == 0 || !all_digits(int) || !all_digits(frac) {
        return None;
    }
    let numer: BigInt = format!("{int}{frac}").parse().ok()?;
    let denom = Pow::pow(BigInt::from(10u8), frac.len());
    Some(Rational::new(numer, denom))
}

/// Parses a command-line rational: a decimal literal or `p/q`, optionally
/// signed. Positivity is checked by the caller.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let value = match body.split_once('/') {
        Some((p, q)) => {
            let p = parse_decimal(p)?;
            let q = parse_decimal(q)?;
            if q.is_zero() {
                return None;
            }
            p / q
        }
        None => parse_decimal(body)?,
    };
    Some(if negative { -value } else { value })
}

/// Renders a rational as a finite decimal, or `None` if its denominator has
/// a prime factor other than 2 and 5.
pub fn format_decimal(value: &Rational) -> Option<String> {
    let mut denom = value.denom().clone();
    let ten = BigInt::from(10u8);
    let (two, five) = (BigInt::from(2u8), BigInt::from(5u8));
    let mut digits = 0usize;
    while !denom.is_one() {
        if (&denom % &two).is_zero() {
            denom /= &two;
        } else if (&denom % &five).is_zero() {
            denom /= &five;
        } else {
            return None;
        }
        digits += 1;
    }
    // `digits` is an upper bound on the number of fractional places needed.
    let scaled = value * Rational::from_integer(Pow::pow(ten.clone(), digits));
    let mut text = scaled.to_integer().to_string();
    if digits > 0 {
        let negative = text.starts_with('-');
        let mut body = text.trim_start_matches('-').to_string();
        if body.len() <= digits {
            body = format!("{}{body}", "0".repeat(digits + 1 - body.len()));
        }
        let (i, f) = body.split_at(body.len() - digits);
        let f = f.trim_end_matches('0');
        text = match (negative, f.is_empty()) {
            (true, true) => format!("-{i}"),
            (true, false) => format!("-{i}.{f}"),
            (false, true) => i.to_string(),
            (false, false) => format!("{i}.{f}"),
        };
    }
    Some(text)
}

enum Column {
    Input,
    Output,
}

pub fn parse_dataset(text: &str) -> Result<Dataset, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| InputError::Csv(e.to_string()))?
        .clone();

    let mut fields = header.iter();
    if fields.next() != Some("dmu") {
        return Err(InputError::Header("first column must be `dmu`".into()));
    }
    let mut columns = Vec::new();
    let (mut input_names, mut output_names) = (Vec::new(), Vec::new());
    for name in fields {
        if let Some(rest) = name.strip_prefix("in_").filter(|r| !r.is_empty()) {
            columns.push(Column::Input);
            input_names.push(rest.to_string());
        } else if let Some(rest) = name.strip_prefix("out_").filter(|r| !r.is_empty()) {
            columns.push(Column::Output);
            output_names.push(rest.to_string());
        } else {
            return Err(InputError::Header(format!(
                "column `{name}` must start with `in_` or `out_`"
            )));
        }
    }
    if input_names.is_empty() {
        return Err(InputError::NoInputColumn);
    }
    if output_names.is_empty() {
        return Err(InputError::NoOutputColumn);
    }

    let mut dmus = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| InputError::Csv(e.to_string()))?;
        let id = record[0].to_string();
        let (mut inputs, mut outputs) = (Vec::new(), Vec::new());
        for (c, (cell, kind)) in record.iter().skip(1).zip(&columns).enumerate() {
            let value = parse_decimal(cell).ok_or_else(|| InputError::NonNumeric {
                id: id.clone(),
                column: header[c + 1].to_string(),
                value: cell.to_string(),
            })?;
            match kind {
                Column::Input => inputs.push(value),
                Column::Output => outputs.push(value),
            }
        }
        dmus.push(Dmu::observed(id, inputs, outputs));
    }
    Ok(Dataset::new(input_names, output_names, dmus)?)
}

/// Serializes a dataset with inputs before outputs. Fails if a value has no
/// finite decimal expansion or is negative.
pub fn write_dataset(d: &Dataset) -> Result<String, InputError> {
    let mut out = String::from("dmu");
    for name in d.input_names() {
        out.push_str(&format!(",in_{name}"));
    }
    for name in d.output_names() {
        out.push_str(&format!(",out_{name}"));
    }
    out.push('\n');
    for dmu in d.dmus() {
        out.push_str(&dmu.id);
        for v in dmu.inputs.iter().chain(&dmu.outputs) {
            let text = format_decimal(v)
                .filter(|t| !t.starts_with('-'))
                .ok_or_else(|| InputError::NotDecimal {
                    id: dmu.id.clone(),
                    value: v.to_string(),
                })?;
            out.push(',');
            out.push_str(&text);
        }
        out.push('\n');
    }
    Ok(out)
}
