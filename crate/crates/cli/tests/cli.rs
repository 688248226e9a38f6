use std::path::PathBuf;
use std::process::Command;

use kerphi_cli::{cmd_fill, cmd_tables, cmd_triangle, cmd_validate, InstanceConfig, LoopSource, TriangleArgs};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn kerphi(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kerphi")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn explicit(sections: [&str; 3]) -> String {
    let factor = format!(
        r#"{{"phi_images": [[1,0,0],[0,1,0],[0,0,1],[1,0,0],[0,1,0],[0,0,1]],
            "section_table": [["{}"],["{}"],["{}"]]}}"#,
        sections[0], sections[1], sections[2]
    );
    format!(
        r#"{{"version": 1, "n": 3, "m": 3, "block_sizes": [1,1,1],
            "factors": ["DF", "DF", {factor}, "DF", "DF", "DF"]}}"#
    )
}

#[test]
fn fixtures_validate() {
    for n in 3..=5 {
        let cfg = InstanceConfig::load(&fixture(&format!("df{n}.json"))).unwrap();
        let o = cmd_validate(&cfg, None).unwrap();
        assert!(o.pass);
        assert_eq!(o.json["faces"], 25);
    }
}

#[test]
fn explicit_factors_match_the_shorthand() {
    let cfg = InstanceConfig::parse(&explicit(["x1", "x2", "x3"])).unwrap();
    let o = cmd_validate(&cfg, None).unwrap();
    assert!(o.pass);
    let df = InstanceConfig::load(&fixture("df3.json")).unwrap();
    assert_eq!(o.json, cmd_validate(&df, None).unwrap().json);
}

#[test]
fn small_n_is_rejected() {
    let text = r#"{"version": 1, "n": 2, "m": 2, "block_sizes": [1,1], "factors": "DF"}"#;
    let cfg = InstanceConfig::parse(text).unwrap();
    let err = cfg.instance(None).unwrap_err();
    assert!(format!("{err:#}").contains("below 3"), "{err:#}");
}

#[test]
fn broken_section_names_block_and_basis() {
    let cfg = InstanceConfig::parse(&explicit(["x1", "x1", "x3"])).unwrap();
    let err = format!("{:#}", cfg.instance(None).unwrap_err());
    assert!(err.contains("factors[2]"), "{err}");
    assert!(err.contains("basis element 1 of block 2"), "{err}");
}

#[test]
fn malformed_configs_are_rejected() {
    assert!(InstanceConfig::parse(r#"{"version": 2, "n": 3, "m": 3, "block_sizes": [1,1,1], "factors": "DF"}"#).is_err());
    assert!(InstanceConfig::parse(r#"{"version": 1, "n": 3}"#).is_err());
    let wrong_m = InstanceConfig::parse(r#"{"version": 1, "n": 3, "m": 4, "block_sizes": [1,1,1], "factors": "DF"}"#).unwrap();
    assert!(wrong_m.instance(None).is_err());
    let few = InstanceConfig::parse(r#"{"version": 1, "n": 3, "m": 3, "block_sizes": [1,1,1], "factors": ["DF"]}"#).unwrap();
    assert!(few.instance(None).is_err());
}

#[test]
fn tables_pass_on_fixtures() {
    for n in 3..=5 {
        let cfg = InstanceConfig::load(&fixture(&format!("df{n}.json"))).unwrap();
        let o = cmd_tables(&cfg, None).unwrap();
        assert!(o.pass, "{}", o.text);
        assert!(o.text.contains("Face L "), "{}", o.text);
    }
}

#[test]
fn identity_triangle_is_all_zero() {
    let cfg = InstanceConfig::load(&fixture("df3.json")).unwrap();
    let args = TriangleArgs {
        a: Some("e"),
        b: Some("e"),
        c: Some(""),
        max_size: 20,
        seed: 0,
    };
    let o = cmd_triangle(&cfg, None, &args).unwrap();
    assert!(o.pass);
    let act = &o.json["actualization"];
    assert_eq!(act["d"], 0);
    assert_eq!(act["max_segment"], 0);
    assert_eq!(act["max_perimeter"], 0);
}

#[test]
fn non_kernel_triangle_input_is_an_error() {
    let cfg = InstanceConfig::load(&fixture("df3.json")).unwrap();
    let args = TriangleArgs {
        a: Some("Y(1,1) Q"),
        b: None,
        c: None,
        max_size: 20,
        seed: 0,
    };
    assert!(cmd_triangle(&cfg, None, &args).is_err());
}

#[test]
fn random_triangle_passes_and_reports_slack() {
    let cfg = InstanceConfig::load(&fixture("df4.json")).unwrap();
    let args = TriangleArgs {
        a: None,
        b: None,
        c: None,
        max_size: 16,
        seed: 11,
    };
    let o = cmd_triangle(&cfg, None, &args).unwrap();
    assert!(o.pass);
    assert!(o.json["actualization"]["min_slack"].as_i64().unwrap() >= 0);
    assert!(o.text.contains("min slack"));
}

#[test]
fn fill_random_loop_census_matches() {
    let cfg = InstanceConfig::load(&fixture("df3.json")).unwrap();
    let o = cmd_fill(&cfg, None, LoopSource::Random { length: 48 }, 7).unwrap();
    assert!(o.pass, "{}", o.text);
    let c = &o.json["report"]["census"];
    assert_eq!(c["enumerated"], c["closed_form"]);
    assert_eq!(o.json["report"]["branch"], "superadditive");
}

#[test]
fn binary_exit_codes_and_stable_output() {
    let cfg = fixture("df3.json");
    let cfg = cfg.to_str().unwrap();
    let (code, out, _) = kerphi(&["validate", "--config", cfg]);
    assert_eq!(code, 0);
    assert!(out.ends_with("verdict pass\n"));

    let run = || kerphi(&["fill", "--config", cfg, "--random", "24", "--seed", "5", "--out", "json", "--threads", "2"]);
    let (c1, o1, _) = run();
    let (c2, o2, _) = run();
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
    let doc: serde_json::Value = serde_json::from_str(&o1).unwrap();
    assert_eq!(doc["pass"], true);

    let dir = std::env::temp_dir().join(format!("kerphi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let trivial = dir.join("trivial.loop");
    std::fs::write(&trivial, "e\ne\ne\n").unwrap();
    let (code, out, _) = kerphi(&["fill", "--config", cfg, "--loop", trivial.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("exact sum   147"), "{out}");

    let open = dir.join("open.loop");
    std::fs::write(&open, "Z(1,1,4,1,+)\ne\ne\n").unwrap();
    let (code, _, err) = kerphi(&["fill", "--config", cfg, "--loop", open.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("does not close"), "{err}");

    let bad = dir.join("small.json");
    std::fs::write(&bad, r#"{"version": 1, "n": 2, "m": 2, "block_sizes": [1,1], "factors": "DF"}"#).unwrap();
    let (code, _, err) = kerphi(&["validate", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("below 3"));

    let unfair = dir.join("unfair.json");
    let values: Vec<String> = (0..40_000u64).map(|x| (x * x + if x % 2 == 1 { 50 * x } else { 0 }).to_string()).collect();
    let text = format!(
        r#"{{"version": 1, "n": 3, "m": 3, "block_sizes": [1,1,1], "factors": "DF",
            "dehn": {{"kind": "table", "values": [{}], "superadditive": true}}}}"#,
        values.join(",")
    );
    std::fs::write(&unfair, text).unwrap();
    let (code, out, _) = kerphi(&["fill", "--config", unfair.to_str().unwrap(), "--random", "24", "--seed", "1"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("contradicted"));
    std::fs::remove_dir_all(&dir).ok();
}
