//! CSV exports with fixed headers.

use std::io::Write;

use anyhow::Result;
use bqtool_core::analysis::PsReport;

use crate::scan::ScanResult;

pub const SCAN_HEADER: [&str; 5] = ["re", "im", "status", "nodes", "omega2_count"];
pub const PS_HEADER: [&str; 6] = [
    "fraction", "word_len", "trace_re", "trace_im", "k", "flagged",
];

pub fn write_scan_csv<W: Write>(r: &ScanResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_HEADER)?;
    for c in &r.cells {
        w.write_record([
            c.value.re.to_string(),
            c.value.im.to_string(),
            c.status.as_str().to_string(),
            c.nodes.to_string(),
            c.omega2.map(|n| n.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_ps_csv<W: Write>(r: &PsReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PS_HEADER)?;
    for rec in &r.records {
        w.write_record([
            rec.fraction.to_string(),
            rec.word_len.to_string(),
            rec.trace.re.to_string(),
            rec.trace.im.to_string(),
            rec.k.to_string(),
            rec.flagged.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
