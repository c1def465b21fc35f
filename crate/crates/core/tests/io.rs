mod common;

use std::fs;

use common::fixture;
use satellite_feasibility::io::*;
use satellite_feasibility::model::{ExclusionCategory, TierClass};

#[test]
fn shipped_fixtures_load() {
    for dir in ["ai", "defense", "rebalance"] {
        let config = load_config(fixture(&format!("{dir}/config.json")).as_ref()).unwrap();
        let assets = load_candidates(&config.candidates_path().unwrap()).unwrap();
        assert!(!assets.is_empty());
    }
    let ai = load_candidates(fixture("ai/candidates.csv").as_ref()).unwrap();
    assert_eq!(
        ai.iter().find(|a| a.id == "AIETF1").unwrap().exclusion,
        ExclusionCategory::ThematicEtf
    );
    assert_eq!(ai[0].tier, TierClass::TierA);
    let events = load_events(fixture("rebalance/events.csv").as_ref()).unwrap();
    assert_eq!(events.len(), 5);
    assert!(events[1].proposal.trades.is_empty() && events[1].proposal.structural_break);
}

#[test]
fn config_errors_are_distinct_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    };
    let good = fs::read_to_string(fixture("ai/config.json")).unwrap();
    let cases = [
        ("syntax.json", "{ \"aum_usd\": 1e5,".to_string(), "parse"),
        (
            "schema.json",
            good.replacen('{', "{ \"alpha_forecast\": 0.3,", 1),
            "schema",
        ),
        (
            "invalid.json",
            good.replace("\"delta\": 0.5", "\"delta\": 1.2"),
            "invalid_field",
        ),
    ];
    for (name, body, code) in cases {
        let err = load_config(&write(name, &body)).unwrap_err();
        assert_eq!(err.code(), code, "{name}: {err}");
    }
    let err = load_config(&dir.path().join("missing.json")).unwrap_err();
    assert_eq!(err.code(), "io");
}

#[test]
fn config_relative_paths_follow_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("nested");
    fs::create_dir(&sub).unwrap();
    fs::copy(fixture("ai/candidates.csv"), sub.join("u.csv")).unwrap();
    let body = fs::read_to_string(fixture("ai/config.json"))
        .unwrap()
        .replace("\"candidates.csv\"", "\"u.csv\"")
        .replace(",\n  \"core_weights\": \"core.csv\"", "");
    fs::write(sub.join("c.json"), body).unwrap();
    let config = load_config(&sub.join("c.json")).unwrap();
    assert_eq!(config.candidates_path().unwrap(), sub.join("u.csv"));
    assert_eq!(config.core_weights_path(), None);
    assert_eq!(load_candidates(&config.candidates_path().unwrap()).unwrap().len(), 8);
}

#[test]
fn emitted_json_round_trips() {
    let text = fs::read_to_string(fixture("golden/ai_design.json")).unwrap();
    let doc = parse_report_json(&text).unwrap();
    let again = emit_report(&doc.report, doc.design.as_ref(), OutputFormat::Json);
    assert_eq!(String::from_utf8(again).unwrap(), text);
}
