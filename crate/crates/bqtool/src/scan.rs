//! Parameter-plane slices: one BQ decision per grid cell.

use anyhow::{ensure, Result};
use bqtool_core::bq::{decide_bq, validate_certificate, BqOutcome, BqParams};
use bqtool_core::{MarkoffTriple, C64};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SliceKind {
    /// `x = y = z = s`
    Diagonal,
    /// `x, y` fixed, `z = s`
    FixXy { x: C64, y: C64 },
}

impl SliceKind {
    pub fn triple(&self, s: C64) -> MarkoffTriple {
        match *self {
            SliceKind::Diagonal => MarkoffTriple::new(s, s, s),
            SliceKind::FixXy { x, y } => MarkoffTriple::new(x, y, s),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub kind: SliceKind,
    pub center: C64,
    pub width: f64,
    pub height: f64,
    pub cols: usize,
    pub rows: usize,
    pub params: BqParams,
    /// Re-check every certificate.
    pub validate: bool,
}

impl ScanConfig {
    pub fn check(&self) -> Result<()> {
        ensure!(
            self.cols >= 1 && self.rows >= 1,
            "resolution must be at least 1x1"
        );
        ensure!(
            self.width > 0.0 && self.height > 0.0,
            "window width and height must be positive"
        );
        Ok(())
    }

    /// Parameter at the centre of a cell; row 0 is the top of the window.
    pub fn cell_value(&self, col: usize, row: usize) -> C64 {
        let re =
            self.center.re - self.width / 2.0 + (col as f64 + 0.5) * self.width / self.cols as f64;
        let im = self.center.im + self.height / 2.0
            - (row as f64 + 0.5) * self.height / self.rows as f64;
        C64::new(re, im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Certified,
    Fails,
    Inconclusive,
    Reducible,
}

impl CellStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CellStatus::Certified => "certified",
            CellStatus::Fails => "fails",
            CellStatus::Inconclusive => "inconclusive",
            CellStatus::Reducible => "reducible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellRecord {
    pub col: usize,
    pub row: usize,
    pub value: C64,
    pub status: CellStatus,
    pub nodes: usize,
    /// `|Ω(2)|` for certified cells.
    pub omega2: Option<usize>,
    /// Outcome of certificate validation when requested.
    pub validated: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub cols: usize,
    pub rows: usize,
    /// Row-major from the top-left cell.
    pub cells: Vec<CellRecord>,
}

pub fn evaluate_cell(cfg: &ScanConfig, col: usize, row: usize) -> CellRecord {
    let value = cfg.cell_value(col, row);
    let t = cfg.kind.triple(value);
    let outcome = decide_bq(&t, &cfg.params);
    let (status, omega2, validated) = match &outcome {
        BqOutcome::Certified(c) => {
            let validated = cfg.validate.then(|| validate_certificate(c, &t).is_ok());
            (
                CellStatus::Certified,
                Some(c.omega_below(2.0).len()),
                validated,
            )
        }
        BqOutcome::Fails { .. } => (CellStatus::Fails, None, None),
        BqOutcome::Inconclusive(_) => (CellStatus::Inconclusive, None, None),
        BqOutcome::Reducible { .. } => (CellStatus::Reducible, None, None),
    };
    CellRecord {
        col,
        row,
        value,
        status,
        nodes: outcome.nodes(),
        omega2,
        validated,
    }
}

/// Evaluates every cell on a pool of `threads` workers (rayon's default when
/// `None`). Cells are independent and collected by index, so the result does
/// not depend on the worker count.
pub fn scan_grid(cfg: &ScanConfig, threads: Option<usize>) -> Result<ScanResult> {
    cfg.check()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build()?;
    let n = cfg.cols * cfg.rows;
    let cells = pool.install(|| {
        (0..n)
            .into_par_iter()
            .map(|i| evaluate_cell(cfg, i % cfg.cols, i / cfg.cols))
            .collect::<Vec<_>>()
    });
    Ok(ScanResult {
        cols: cfg.cols,
        rows: cfg.rows,
        cells,
    })
}
