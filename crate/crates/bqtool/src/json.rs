//! Versioned JSON documents. Complex numbers are `[re, im]` pairs and
//! fractions are `"p/q"` strings.

use anyhow::{bail, Context, Result};
use bqtool_core::bq::{BqOutcome, BqParams, Certificate, FailReason, SearchStats};
use bqtool_core::{Fraction, C64};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const CERTIFICATE_SCHEMA: &str = "bqtool.certificate";

#[derive(Serialize, Deserialize)]
struct Document<T> {
    schema: String,
    version: u32,
    #[serde(flatten)]
    body: T,
}

/// Wraps any report under `bqtool.<kind>`.
pub fn report_json<T: Serialize>(kind: &str, report: &T) -> Result<String> {
    let doc = Document {
        schema: format!("bqtool.{kind}"),
        version: SCHEMA_VERSION,
        body: Wrapped { report },
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

#[derive(Serialize)]
struct Wrapped<'a, T> {
    report: &'a T,
}

#[derive(Serialize, Deserialize)]
struct CertificateBody {
    certificate: Certificate,
}

pub fn certificate_json(c: &Certificate) -> Result<String> {
    let doc = Document {
        schema: CERTIFICATE_SCHEMA.to_string(),
        version: SCHEMA_VERSION,
        body: CertificateBody {
            certificate: c.clone(),
        },
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

pub fn certificate_from_json(s: &str) -> Result<Certificate> {
    let doc: Document<CertificateBody> =
        serde_json::from_str(s).context("parsing certificate document")?;
    if doc.schema != CERTIFICATE_SCHEMA || doc.version != SCHEMA_VERSION {
        bail!("unsupported document {} v{}", doc.schema, doc.version);
    }
    Ok(doc.body.certificate)
}

/// Summary of a decision; certified outcomes also carry the certificate.
#[derive(Serialize)]
pub struct OutcomeSummary<'a> {
    pub status: &'static str,
    pub nodes: usize,
    pub params: BqParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<&'a Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<C64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<FailReason>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<SearchStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<C64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<&'a Certificate>,
}

impl<'a> OutcomeSummary<'a> {
    pub fn new(o: &'a BqOutcome, params: BqParams) -> Self {
        let mut s = OutcomeSummary {
            status: o.status(),
            nodes: o.nodes(),
            params,
            witness: None,
            value: None,
            reason: None,
            stats: None,
            mu: None,
            certificate: None,
        };
        match o {
            BqOutcome::Certified(c) => s.certificate = Some(c),
            BqOutcome::Fails {
                witness,
                value,
                reason,
                ..
            } => {
                s.witness = Some(witness);
                s.value = Some(*value);
                s.reason = Some(*reason);
            }
            BqOutcome::Inconclusive(stats) => s.stats = Some(*stats),
            BqOutcome::Reducible { mu } => s.mu = Some(*mu),
        }
        s
    }
}

pub fn outcome_json(o: &BqOutcome, params: BqParams) -> Result<String> {
    if let BqOutcome::Certified(c) = o {
        return certificate_json(c);
    }
    let doc = Document {
        schema: "bqtool.outcome".to_string(),
        version: SCHEMA_VERSION,
        body: OutcomeSummary::new(o, params),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}
