use rectpole_core::chart::{bound_threshold, build_chart, critical_depth, depth_sweep, CriticalSelector, Side};
use rectpole_core::rootfinder::scan_axis;
use rectpole_core::PotentialSpec;

use crate::config::{Format, Gamma, RunConfig};
use crate::document::{
    ChartDocument, CriticalDocument, CriticalRecord, Provenance, SweepDocument, ThresholdDocument, ThresholdRecord,
    VerifyDocument, SCHEMA_VERSION,
};
use crate::error::{exit, CliError};
use crate::{export, json, svg, verify};

/// What a command produced, before anything is written.
#[derive(Debug, Clone, PartialEq)]
pub struct Product {
    pub document: String,
    pub svg: Option<String>,
    pub exit_code: i32,
}

impl Product {
    fn ok(document: String) -> Self {
        Self {
            document,
            svg: None,
            exit_code: exit::OK,
        }
    }
}

fn json_only(config: &RunConfig, command: &str) -> Result<(), CliError> {
    if config.format() == Format::Csv {
        return Err(CliError::usage(format!("{command} writes JSON only")));
    }
    Ok(())
}

fn chart_output(config: &RunConfig, doc: &ChartDocument) -> Result<String, CliError> {
    match config.format() {
        Format::Json => Ok(json::to_string(doc)),
        Format::Csv => export::to_csv(doc),
    }
}

pub fn axis(config: &RunConfig) -> Result<Product, CliError> {
    let spec = config.spec()?;
    let settings = config.settings();
    let mut poles = Vec::new();
    for &channel in spec.channel().parity_channels() {
        poles.extend(scan_axis(&spec, config.gamma.coupling(), channel, &settings)?);
    }
    poles.sort_by(|a, b| b.k.im.total_cmp(&a.k.im));
    let doc = ChartDocument::from_poles(config, &poles);
    Ok(Product::ok(chart_output(config, &doc)?))
}

pub fn chart(config: &RunConfig) -> Result<Product, CliError> {
    let chart = build_chart(&config.spec()?, &config.settings())?;
    let doc = ChartDocument::from_chart(config, &chart);
    Ok(Product {
        document: chart_output(config, &doc)?,
        svg: config.output.svg.as_ref().map(|_| svg::render(&chart)),
        exit_code: exit::OK,
    })
}

pub fn critical(config: &RunConfig) -> Result<Product, CliError> {
    json_only(config, "critical")?;
    let side = match config.gamma {
        Gamma::Attractive => Side::Attractive,
        Gamma::Repulsive => Side::Repulsive,
    };
    let selector = CriticalSelector {
        side,
        index: config.index,
    };
    let c = critical_depth(config.channel.channel(), selector, config.m, config.a, &config.settings())?;
    let doc = CriticalDocument {
        schema_version: SCHEMA_VERSION,
        provenance: Provenance::new("critical", config),
        critical: CriticalRecord::from(&c),
    };
    Ok(Product::ok(json::to_string(&doc)))
}

pub fn threshold(config: &RunConfig) -> Result<Product, CliError> {
    json_only(config, "threshold")?;
    let channel = config.channel.channel();
    let depth = bound_threshold(channel, config.n, config.m, config.a)?;
    let doc = ThresholdDocument {
        schema_version: SCHEMA_VERSION,
        provenance: Provenance::new("threshold", config),
        threshold: ThresholdRecord {
            channel: channel.name().to_owned(),
            n: config.n,
            depth,
        },
    };
    Ok(Product::ok(json::to_string(&doc)))
}

pub fn sweep(config: &RunConfig) -> Result<Product, CliError> {
    json_only(config, "sweep")?;
    let first = *config
        .depths
        .first()
        .ok_or_else(|| CliError::usage("sweep needs --depths"))?;
    let base = PotentialSpec::new(config.m, config.a, first, config.channel.channel())?;
    let sweep = depth_sweep(&base, &config.depths, &config.settings())?;
    Ok(Product::ok(json::to_string(&SweepDocument::new(config, &sweep))))
}

pub fn verify(config: &RunConfig) -> Result<Product, CliError> {
    json_only(config, "verify")?;
    let report = verify::run(config)?;
    let exit_code = if report.passed { exit::OK } else { exit::VERIFY_FAILED };
    let doc = VerifyDocument {
        schema_version: SCHEMA_VERSION,
        provenance: Provenance::new("verify", config),
        report,
    };
    Ok(Product {
        document: json::to_string(&doc),
        svg: None,
        exit_code,
    })
}
