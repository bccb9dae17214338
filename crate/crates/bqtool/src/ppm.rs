//! Binary PPM (P6) rendering of scan results, one pixel per cell.

use std::path::Path;

use anyhow::{ensure, Context, Result};
use num_bigint::BigUint;

use crate::scan::{CellRecord, CellStatus, ScanResult};

/// `⌊min(255, 32·log₂(1 + nodes))⌋`, computed exactly as the bit length of
/// `(1 + nodes)^32` minus one.
pub fn node_shade(nodes: usize) -> u8 {
    let bits = BigUint::from(nodes as u64 + 1).pow(32).bits() - 1;
    bits.min(255) as u8
}

pub fn cell_color(c: &CellRecord) -> [u8; 3] {
    match c.status {
        CellStatus::Fails => [0, 0, 0],
        CellStatus::Reducible => [255, 0, 255],
        CellStatus::Inconclusive => [128, 128, 128],
        CellStatus::Certified => [node_shade(c.nodes), 255, 0],
    }
}

pub fn ppm_header(cols: usize, rows: usize) -> String {
    format!("P6\n{cols} {rows}\n255\n")
}

pub fn render_ppm(r: &ScanResult) -> Result<Vec<u8>> {
    ensure!(
        r.cells.len() == r.cols * r.rows,
        "scan result has {} cells for a {}x{} grid",
        r.cells.len(),
        r.cols,
        r.rows
    );
    let mut out = ppm_header(r.cols, r.rows).into_bytes();
    out.reserve(3 * r.cells.len());
    for c in &r.cells {
        out.extend_from_slice(&cell_color(c));
    }
    Ok(out)
}

pub fn write_ppm(r: &ScanResult, path: &Path) -> Result<()> {
    std::fs::write(path, render_ppm(r)?).with_context(|| format!("writing {}", path.display()))
}
