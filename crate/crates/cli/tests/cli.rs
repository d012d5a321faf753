use std::fs;

use rectpole::document::{parse, ChartDocument, CriticalDocument, ThresholdDocument, VerifyDocument};
use rectpole::export::from_csv;
use rectpole::{json, run, Outcome};
use serde_json::Value;

fn rp(args: &[&str]) -> Outcome {
    run(std::iter::once("rectpole").chain(args.iter().copied()))
}

fn stdout(o: &Outcome) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

fn error_object(o: &Outcome) -> Value {
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    v["error"].clone()
}

#[test]
fn axis_examples() {
    let o = rp(&["axis", "--m", "1", "--a", "1.5", "--U", "0.09", "--channel", "plus", "--gamma", "-1"]);
    assert_eq!(o.exit_code, 0);
    let doc: ChartDocument = parse(stdout(&o)).unwrap();
    assert_eq!(doc.poles.len(), 2);
    assert!(doc.poles.iter().all(|p| p.kind == "virtual" && p.gamma_alpha > 3.0));
    assert!(doc.topology.is_none() && doc.trajectories.is_empty());

    let o = rp(&["axis", "--U", "0", "--channel", "plus", "--gamma", "+1"]);
    assert_eq!(o.exit_code, 0);
    assert!(parse::<ChartDocument>(stdout(&o)).unwrap().poles.is_empty());

    let o = rp(&["axis", "--a", "-1", "--U", "1"]);
    assert_eq!(o.exit_code, 2);
    assert!(o.stdout.is_empty());
    assert_eq!(error_object(&o)["kind"], "usage");
}

#[test]
fn usage_errors_are_json_on_stderr() {
    for args in [
        &["bogus"][..],
        &["axis", "--gamma", "0", "--U", "1"],
        &["axis", "--U", "abc"],
        &["axis"],
        &["threshold", "--n", "0"],
        &["threshold", "--channel", "full"],
        &["sweep"],
        &["sweep", "--depths", "1,0.5"],
        &["chart", "--U", "1", "--min-step", "1"],
        &["critical", "--config", "/nonexistent/config.json"],
    ] {
        let o = rp(args);
        assert_eq!(o.exit_code, 2, "{args:?}");
        assert_eq!(error_object(&o)["exit_code"], 2, "{args:?}");
    }
    let o = rp(&["--help"]);
    assert_eq!(o.exit_code, 0);
    assert!(stdout(&o).contains("chart"));
}

#[test]
fn numeric_failures_exit_3() {
    // the antisymmetric channel has no barrier collision
    let o = rp(&["critical", "--channel", "minus", "--gamma", "-1"]);
    assert_eq!(o.exit_code, 3);
    assert_eq!(error_object(&o)["kind"], "numeric");
}

#[test]
fn chart_topology_warning_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let o = rp(&["chart", "--m", "1", "--a", "1.5", "--U", "2", "--channel", "plus", "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.exit_code, 0);
    let doc: ChartDocument = parse(stdout(&o)).unwrap();
    let t = doc.topology.unwrap();
    assert_eq!((t.closed_2pi, t.closed_4pi, t.closed_longer, t.open), (0, 1, 0, 1));
    let closures: Vec<&str> = doc.trajectories.iter().map(|t| t.closure.as_str()).collect();
    assert_eq!(closures, ["closed_4pi", "open"]);
    assert_eq!(doc.trajectories[1].open_reason.as_deref(), Some("alpha_cap_exit"));
    let figure = fs::read_to_string(&svg).unwrap();
    assert!(figure.starts_with("<svg") && !figure.contains("script"));

    let o = rp(&["chart", "--U", "0.0976", "--channel", "plus"]);
    let doc: ChartDocument = parse(stdout(&o)).unwrap();
    assert_eq!(doc.provenance.warnings.len(), 1);
    assert_eq!(doc.provenance.warnings[0].kind, "critical_proximity");
    assert_eq!(doc.provenance.warnings[0].side, "repulsive");
}

#[test]
fn critical_and_threshold_values() {
    let o = rp(&["threshold", "--channel", "minus", "--n", "1", "--m", "1", "--a", "1.5"]);
    let doc: ThresholdDocument = parse(stdout(&o)).unwrap();
    assert!((doc.threshold.depth - 0.5483).abs() < 1e-4);
    assert!((doc.threshold.depth - std::f64::consts::PI.powi(2) / 18.0).abs() < 1e-15);

    let o = rp(&["critical", "--channel", "plus", "--gamma", "+1"]);
    let doc: CriticalDocument = parse(stdout(&o)).unwrap();
    assert!((doc.critical.depth - 1.962436546941773).abs() < 1e-6);
    assert_eq!(doc.critical.direction, "resonance_pair_to_virtual_pair");
    assert_eq!(doc.critical.multiplicity, 2);
    assert!((doc.critical.im_k_c + 1.0 / 1.5).abs() < 1e-12);
}

#[test]
fn verify_exit_codes() {
    let o = rp(&["verify", "--samples", "200", "--seed", "7"]);
    assert_eq!(o.exit_code, 0);
    let doc: VerifyDocument = parse(stdout(&o)).unwrap();
    assert!(doc.report.max_residual < 1e-10 && doc.report.passed);

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("strict.json");
    fs::write(&cfg, r#"{"tolerances": {"verify": 1e-300}}"#).unwrap();
    let o = rp(&["verify", "--samples", "5", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.exit_code, 1);
    let doc: VerifyDocument = parse(stdout(&o)).unwrap();
    assert!(!doc.report.passed && !doc.report.failing.is_empty());
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"U": 0.09, "channel": "plus", "gamma": "-1"}"#).unwrap();
    let path = cfg.to_str().unwrap();
    let doc: ChartDocument = parse(stdout(&rp(&["axis", "--config", path]))).unwrap();
    assert_eq!(doc.poles.len(), 2);
    assert_eq!(doc.provenance.config.u, Some(0.09));
    // an explicit flag wins over the file
    let doc: ChartDocument = parse(stdout(&rp(&["axis", "--config", path, "--gamma", "+1"]))).unwrap();
    assert_eq!(doc.poles.len(), 1);

    fs::write(&cfg, r#"{"U": 0.09, "depth": 2}"#).unwrap();
    assert_eq!(rp(&["axis", "--config", path]).exit_code, 2);

    // a provenance block is itself a valid configuration
    let o = rp(&["chart", "--U", "0.5", "--channel", "minus"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    fs::write(&cfg, doc["provenance"]["config"].to_string()).unwrap();
    assert_eq!(rp(&["chart", "--config", path]).stdout, o.stdout);
}

#[test]
fn documents_round_trip_and_reject_foreign_schemas() {
    let o = rp(&["chart", "--U", "0.09", "--channel", "plus"]);
    let text = stdout(&o);
    let doc: ChartDocument = parse(text).unwrap();
    assert_eq!(json::to_string(&doc), text);

    let mut v: Value = serde_json::from_str(text).unwrap();
    v["schema_version"] = Value::from(99);
    assert!(parse::<ChartDocument>(&v.to_string()).is_err());
    let mut v: Value = serde_json::from_str(text).unwrap();
    v["poles"][0]["colour"] = Value::from("red");
    assert!(parse::<ChartDocument>(&v.to_string()).is_err());
    let mut v: Value = serde_json::from_str(text).unwrap();
    v["provenance"]["timestamp"] = Value::from(0);
    assert!(parse::<ChartDocument>(&v.to_string()).is_err());
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let doc: ChartDocument = parse(stdout(&rp(&["chart", "--U", "2", "--channel", "plus"]))).unwrap();
    let csv = rp(&["chart", "--U", "2", "--channel", "plus", "--format", "csv"]);
    assert_eq!(csv.exit_code, 0);
    let rows = from_csv(stdout(&csv)).unwrap();
    let num = |s: &str| s.parse::<f64>().unwrap();

    let poles: Vec<_> = rows.iter().filter(|r| r.record == "pole").collect();
    assert_eq!(poles.len(), doc.poles.len());
    for (r, p) in poles.iter().zip(&doc.poles) {
        assert!((num(&r.re_k) - p.re_k).abs() <= 1e-12 && (num(&r.im_k) - p.im_k).abs() <= 1e-12);
        assert!((num(r.residual.as_ref().unwrap()) - p.residual).abs() <= 1e-12);
    }
    for (i, t) in doc.trajectories.iter().enumerate() {
        let samples: Vec<_> = rows
            .iter()
            .filter(|r| r.record == "sample" && r.trajectory == Some(i))
            .collect();
        assert_eq!(samples.len(), t.samples.len());
        for (r, s) in samples.iter().zip(&t.samples) {
            assert!((num(r.alpha.as_ref().unwrap()) - s.alpha).abs() <= 1e-12);
            assert!((num(&r.re_k) - s.re_k).abs() <= 1e-12);
            assert!((num(&r.im_k) - s.im_k).abs() <= 1e-12);
        }
    }
    assert_eq!(rp(&["threshold", "--format", "csv"]).exit_code, 2);
}

#[test]
fn sweep_document() {
    let o = rp(&["sweep", "--channel", "plus", "--depths", "0.09,0.1,1.95,2"]);
    assert_eq!(o.exit_code, 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
    let transitions = v["transitions"].as_array().unwrap();
    assert_eq!(transitions.len(), 2);
    assert_eq!(transitions[0]["causes"][0]["side"], "repulsive");
    assert_eq!(transitions[1]["causes"][0]["direction"], "resonance_pair_to_virtual_pair");
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("poles.json");
    let o = rp(&["axis", "--U", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.exit_code, 0);
    assert!(o.stdout.is_empty());
    assert_eq!(parse::<ChartDocument>(&fs::read_to_string(&out).unwrap()).unwrap().poles.len(), 1);
    let o = rp(&["axis", "--U", "1", "--out", "/nonexistent/dir/poles.json"]);
    assert_eq!(o.exit_code, 2);
}
