//! Flat CSV view of a [`ChartDocument`]: one row per pole and one per
//! trajectory point, with numbers in the same 17-digit form as the JSON.

use serde::{Deserialize, Serialize};

use crate::document::{ChartDocument, PoleRecord, SampleRecord};
use crate::error::CliError;
use crate::json::format_f64;

/// One CSV row. `record` is `pole`, `sample`, `collision` or
/// `axis_crossing`; trajectory rows carry the trajectory's position in the
/// document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub record: String,
    pub trajectory: Option<usize>,
    pub channel: String,
    pub closure: Option<String>,
    pub gamma_alpha: Option<String>,
    pub alpha: Option<String>,
    pub re_k: String,
    pub im_k: String,
    pub kind: Option<String>,
    pub multiplicity: Option<u32>,
    pub residual: Option<String>,
}

fn pole_row(p: &PoleRecord) -> Row {
    Row {
        record: "pole".to_owned(),
        trajectory: None,
        channel: p.channel.clone(),
        closure: None,
        gamma_alpha: Some(format_f64(p.gamma_alpha)),
        alpha: None,
        re_k: format_f64(p.re_k),
        im_k: format_f64(p.im_k),
        kind: Some(p.kind.clone()),
        multiplicity: Some(p.multiplicity),
        residual: Some(format_f64(p.residual)),
    }
}

fn sample_row(record: &str, index: usize, channel: &str, closure: &str, s: &SampleRecord) -> Row {
    Row {
        record: record.to_owned(),
        trajectory: Some(index),
        channel: channel.to_owned(),
        closure: Some(closure.to_owned()),
        gamma_alpha: None,
        alpha: Some(format_f64(s.alpha)),
        re_k: format_f64(s.re_k),
        im_k: format_f64(s.im_k),
        kind: None,
        multiplicity: None,
        residual: None,
    }
}

pub fn rows(doc: &ChartDocument) -> Vec<Row> {
    let mut out: Vec<Row> = doc.poles.iter().map(pole_row).collect();
    for (i, t) in doc.trajectories.iter().enumerate() {
        for (record, samples) in [
            ("sample", &t.samples),
            ("collision", &t.collisions),
            ("axis_crossing", &t.axis_crossings),
        ] {
            out.extend(samples.iter().map(|s| sample_row(record, i, &t.channel, &t.closure, s)));
        }
    }
    out
}

pub fn to_csv(doc: &ChartDocument) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows(doc) {
        w.serialize(row).map_err(|e| CliError::usage(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv writes UTF-8"))
}

pub fn from_csv(text: &str) -> Result<Vec<Row>, CliError> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::usage(format!("csv: {e}")))
}
