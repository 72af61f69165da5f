//! Series files: `{"terms": [{"two_l", "entries": [{"two_m", "two_n", "re", "im"}]}]}`.
//!
//! Output is normalized: keys sorted, terms by `two_l`, entries by
//! `(two_m, two_n)`, zero coefficients dropped and floats printed like C's
//! `%.17g`, so load followed by save is byte-stable.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use su2ca::fourier::FourierSeries;
use su2ca::{Complex, RepLevel};

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesDoc {
    terms: Vec<TermDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    two_l: u32,
    entries: Vec<EntryDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    two_m: i32,
    two_n: i32,
    re: f64,
    im: f64,
}

fn in_level(two_l: u32, two_k: i32) -> bool {
    two_k.unsigned_abs() <= two_l && (two_k.unsigned_abs() % 2) == two_l % 2
}

pub fn parse_series(text: &str, origin: &str) -> CliResult<FourierSeries> {
    let doc: SeriesDoc = serde_json::from_str(text).map_err(|e| CliError::parse(origin, e))?;
    let mut seen = BTreeSet::new();
    let mut out = FourierSeries::new();
    for term in doc.terms {
        let level = RepLevel::from_doubled(term.two_l);
        for e in term.entries {
            if !in_level(term.two_l, e.two_m) || !in_level(term.two_l, e.two_n) {
                return Err(CliError::parse(
                    origin,
                    format!("weights (two_m={}, two_n={}) do not belong to two_l={}", e.two_m, e.two_n, term.two_l),
                ));
            }
            if !seen.insert((term.two_l, e.two_m, e.two_n)) {
                return Err(CliError::parse(
                    origin,
                    format!("duplicate entry (two_l={}, two_m={}, two_n={})", term.two_l, e.two_m, e.two_n),
                ));
            }
            let m = level.weight(e.two_m)?;
            let n = level.weight(e.two_n)?;
            out.add(m, n, Complex::new(e.re, e.im));
        }
    }
    Ok(out)
}

pub fn read_series(path: &Path) -> CliResult<FourierSeries> {
    let origin = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: origin.clone(), source })?;
    parse_series(&text, &origin)
}

/// `%.17g`.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-4..17).contains(&exp) {
        let prec = (16 - exp) as usize;
        trim_fraction(&format!("{:.*}", prec, x))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    }
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn render_series(f: &FourierSeries) -> String {
    let mut terms: Vec<(u32, Vec<String>)> = Vec::new();
    for (m, n, c) in f.coefficients() {
        let two_l = n.level().two_l();
        if terms.last().map(|t| t.0) != Some(two_l) {
            terms.push((two_l, Vec::new()));
        }
        let line = format!(
            "{{\"im\": {}, \"re\": {}, \"two_m\": {}, \"two_n\": {}}}",
            // adding +0 turns -0 into 0
            fmt_g17(c.im + 0.0),
            fmt_g17(c.re + 0.0),
            m.two_m(),
            n.two_m()
        );
        terms.last_mut().expect("term").1.push(line);
    }
    if terms.is_empty() {
        return "{\n  \"terms\": []\n}\n".into();
    }
    let mut out = String::from("{\n  \"terms\": [\n");
    for (i, (two_l, entries)) in terms.iter().enumerate() {
        out.push_str("    {\n      \"entries\": [\n");
        for (j, e) in entries.iter().enumerate() {
            let sep = if j + 1 < entries.len() { "," } else { "" };
            let _ = writeln!(out, "        {e}{sep}");
        }
        let sep = if i + 1 < terms.len() { "," } else { "" };
        let _ = writeln!(out, "      ],\n      \"two_l\": {two_l}\n    }}{sep}");
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn write_series(path: &Path, f: &FourierSeries) -> CliResult<()> {
    fs::write(path, render_series(f)).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}
