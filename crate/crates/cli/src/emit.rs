//! Report emitters selectable with `--format`.

use std::io::Write;

use serde::Serialize;
use su2ca::cohomology::{ClosedRangeCertificate, CohomologyReport, Reconciliation};
use su2ca::fields::BasicField;
use su2ca::structures::{Classification, ConstantsVariant, Discrepancy};

use crate::error::{CliError, CliResult};
use crate::series_file::fmt_g17;

#[derive(Debug, Serialize)]
pub struct DimsDocument {
    pub source: String,
    pub constants: ConstantsVariant,
    pub classification: Classification,
    pub discrepancies: Vec<Discrepancy>,
    pub report: CohomologyReport,
    pub reconciliation: Option<Reconciliation>,
}

#[derive(Debug, Serialize)]
pub struct GapDocument {
    pub field: String,
    pub passes: bool,
    pub certificate: ClosedRangeCertificate,
}

impl GapDocument {
    pub fn new(field: BasicField, certificate: ClosedRangeCertificate) -> Self {
        GapDocument { field: field.name().to_string(), passes: certificate.passes(), certificate }
    }
}

pub trait ReportEmitter: Send + Sync {
    fn name(&self) -> &'static str;
    fn dims(&self, doc: &DimsDocument, out: &mut dyn Write) -> CliResult<()>;
    fn gap(&self, doc: &GapDocument, out: &mut dyn Write) -> CliResult<()>;
}

fn short(x: f64) -> String {
    let s = format!("{x:.10}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn bidegree_label(p: u8, q: u8) -> String {
    format!("({p},{q})")
}

/// One line per disagreeing printed constant.
pub fn discrepancy_banner(d: &[Discrepancy]) -> Vec<String> {
    d.iter()
        .map(|x| {
            format!("WARNING: printed constant {} = {} disagrees with the bracket value {}", x.key, short(x.printed), short(x.recomputed))
        })
        .collect()
}

pub struct TableEmitter;

impl ReportEmitter for TableEmitter {
    fn name(&self) -> &'static str {
        "table"
    }

    fn dims(&self, doc: &DimsDocument, out: &mut dyn Write) -> CliResult<()> {
        let constants = match doc.constants {
            ConstantsVariant::Printed => "printed",
            ConstantsVariant::Recomputed => "recomputed",
        };
        writeln!(out, "{} (corank {}, {:?}, constants: {constants})", doc.source, doc.report.corank, doc.classification)?;
        for line in discrepancy_banner(&doc.discrepancies) {
            writeln!(out, "{line}")?;
        }
        writeln!(out, "{:>6}  {:>8}  {:>6}  {:>6}  {:>8}  {:>14}", "two_l", "bidegree", "ker", "ran", "quotient", "gap")?;
        for level in &doc.report.levels {
            for st in &level.stages {
                writeln!(
                    out,
                    "{:>6}  {:>8}  {:>6}  {:>6}  {:>8}  {:>14}",
                    level.two_l,
                    bidegree_label(st.bidegree.p, st.bidegree.q),
                    st.ker_dim,
                    st.ran_dim,
                    st.quotient_dim,
                    st.gap.map_or("-".to_string(), short)
                )?;
            }
        }
        writeln!(out, "totals over 0 <= two_l <= {}:", doc.report.two_l_max)?;
        for (b, t) in &doc.report.totals {
            writeln!(out, "  H{} = {t}", bidegree_label(b.p, b.q))?;
        }
        for note in &doc.report.closed_range {
            match (note.min_gap, note.at_two_l) {
                (Some(g), Some(at)) => writeln!(
                    out,
                    "closed range {}: smallest nonzero singular value {} at two_l = {at}",
                    bidegree_label(note.bidegree.p, note.bidegree.q),
                    short(g)
                )?,
                _ => {
                    writeln!(out, "closed range {}: operator vanishes on tested levels", bidegree_label(note.bidegree.p, note.bidegree.q))?
                }
            }
        }
        if let Some(rec) = &doc.reconciliation {
            let parts: Vec<String> = rec
                .variants
                .iter()
                .map(|v| {
                    let name = match v.variant {
                        ConstantsVariant::Printed => "printed",
                        ConstantsVariant::Recomputed => "recomputed",
                    };
                    let at: Vec<String> = v.contributions.iter().map(|(l, d)| format!("two_l={l}: {d}")).collect();
                    format!("{name} {} [{}]", v.total, at.join(", "))
                })
                .collect();
            writeln!(
                out,
                "H{} reconciliation (claimed {}): {}",
                bidegree_label(rec.bidegree.p, rec.bidegree.q),
                rec.claimed,
                parts.join("; ")
            )?;
        }
        Ok(())
    }

    fn gap(&self, doc: &GapDocument, out: &mut dyn Write) -> CliResult<()> {
        let c = &doc.certificate;
        writeln!(out, "field {}  s = {}  two_l in [{}, {}]", doc.field, c.s, c.two_l_range.0, c.two_l_range.1)?;
        writeln!(out, "{:>6}  {:>14}  {:>14}", "two_l", "gap", "ratio")?;
        for r in &c.ratios {
            writeln!(out, "{:>6}  {:>14}  {:>14}", r.two_l, short(r.gap), short(r.ratio))?;
        }
        match c.argmin() {
            Some(at) => writeln!(out, "c_star = {} (at two_l = {at})", fmt_g17(c.c_star))?,
            None => writeln!(out, "c_star = 0 (no level with a nonzero block)")?,
        }
        if let Some(slope) = c.tail_slope {
            let trend =
                if slope < 0.0 { "ratio still decreasing at the end of the range" } else { "ratio not decreasing at the end of the range" };
            writeln!(out, "tail slope = {} ({trend})", short(slope))?;
        }
        writeln!(out, "{}", if doc.passes { "PASS" } else { "FAIL" })?;
        Ok(())
    }
}

pub struct CsvEmitter;

impl ReportEmitter for CsvEmitter {
    fn name(&self) -> &'static str {
        "csv"
    }

    fn dims(&self, doc: &DimsDocument, out: &mut dyn Write) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| CliError::Usage(format!("csv output failed: {e}"));
        w.write_record(["two_l", "bidegree", "ker", "ran", "quotient", "gap"]).map_err(csv_err)?;
        for level in &doc.report.levels {
            for st in &level.stages {
                w.write_record([
                    level.two_l.to_string(),
                    bidegree_label(st.bidegree.p, st.bidegree.q),
                    st.ker_dim.to_string(),
                    st.ran_dim.to_string(),
                    st.quotient_dim.to_string(),
                    st.gap.map_or(String::new(), fmt_g17),
                ])
                .map_err(csv_err)?;
            }
        }
        w.flush()?;
        Ok(())
    }

    fn gap(&self, doc: &GapDocument, out: &mut dyn Write) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| CliError::Usage(format!("csv output failed: {e}"));
        w.write_record(["two_l", "gap", "ratio"]).map_err(csv_err)?;
        for r in &doc.certificate.ratios {
            w.write_record([r.two_l.to_string(), fmt_g17(r.gap), fmt_g17(r.ratio)]).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub struct JsonEmitter;

impl ReportEmitter for JsonEmitter {
    fn name(&self) -> &'static str {
        "json"
    }

    fn dims(&self, doc: &DimsDocument, out: &mut dyn Write) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut *out, doc).map_err(|e| CliError::Usage(e.to_string()))?;
        writeln!(out)?;
        Ok(())
    }

    fn gap(&self, doc: &GapDocument, out: &mut dyn Write) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut *out, doc).map_err(|e| CliError::Usage(e.to_string()))?;
        writeln!(out)?;
        Ok(())
    }
}

pub struct EmitterRegistry {
    emitters: Vec<Box<dyn ReportEmitter>>,
}

impl EmitterRegistry {
    pub fn builtin() -> Self {
        EmitterRegistry { emitters: vec![Box::new(TableEmitter), Box::new(CsvEmitter), Box::new(JsonEmitter)] }
    }

    pub fn register(&mut self, e: Box<dyn ReportEmitter>) {
        self.emitters.retain(|x| x.name() != e.name());
        self.emitters.push(e);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.emitters.iter().map(|e| e.name()).collect()
    }

    pub fn get(&self, name: &str) -> CliResult<&dyn ReportEmitter> {
        self.emitters
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
            .ok_or_else(|| CliError::Usage(format!("unknown format '{name}' (expected one of {})", self.names().join(", "))))
    }
}
