//! End-to-end runs of the binary: envelope shape, exit codes, determinism,
//! and one successful route through every subcommand (the coverage audit).

use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str]) -> (i32, String, String) {
    run_with(args, &[], None)
}

fn run_with(args: &[&str], env: &[(&str, &str)], stdin: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_johnsonlab"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    if stdin.is_some() {
        cmd.stdin(Stdio::piped());
    }
    cmd.stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary spawns");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .expect("stdin requested")
            .write_all(text.as_bytes())
            .expect("stdin writes");
    }
    let out = child.wait_with_output().expect("binary finishes");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
    )
}

fn parse_ok(stdout: &str) -> serde_json::Value {
    let v: serde_json::Value = serde_json::from_str(stdout).expect("stdout is one JSON envelope");
    assert_eq!(v["status"], "ok", "envelope: {v}");
    v
}

#[test]
fn member_reports_the_power_signature() {
    let (code, stdout, _) = run(&[
        "member", "--series", "zassenhaus", "--depth", "3", "--p", "3", "--word", "x1 x1 x1",
    ]);
    assert_eq!(code, 0);
    let v = parse_ok(&stdout);
    assert_eq!(v["data"]["report"]["verdict"], "true");

    let (code, stdout, _) = run(&[
        "member", "--series", "zassenhaus", "--depth", "4", "--p", "3", "--word", "x1 x1 x1",
    ]);
    assert_eq!(code, 0);
    let v = parse_ok(&stdout);
    assert_eq!(v["data"]["report"]["verdict"], "false");
    assert!(v["data"]["report"]["witness_monomial"].is_array());
}

#[test]
fn empty_word_is_a_member_at_any_depth() {
    for series in ["lcs", "stallings", "zassenhaus"] {
        let (code, stdout, _) = run(&[
            "member", "--series", series, "--depth", "5", "--p", "3", "--word", "",
        ]);
        assert_eq!(code, 0, "series {series}");
        let v = parse_ok(&stdout);
        assert_eq!(v["data"]["report"]["verdict"], "true", "series {series}");
    }
}

#[test]
fn member_accepts_stdin() {
    let (code, stdout, _) = run_with(
        &["member", "--series", "lcs", "--depth", "2", "--stdin"],
        &[],
        Some("x1 x2 X1 X2\n"),
    );
    assert_eq!(code, 0);
    let v = parse_ok(&stdout);
    assert_eq!(v["data"]["report"]["verdict"], "true");
}

#[test]
fn tau_of_separating_twist_is_zero_and_deeper() {
    let (code, stdout, _) = run(&[
        "tau", "--map", "sep1", "--level", "1", "--variant", "z", "--p", "3",
    ]);
    assert_eq!(code, 0);
    let v = parse_ok(&stdout);
    assert_eq!(v["data"]["zero"], true);
    assert_eq!(v["data"]["wedge3"]["outcome"], "member");

    // The integral level-2 value is the first nonzero one.
    let (code, stdout, _) = run(&["tau", "--map", "sep1", "--level", "2", "--variant", "integral"]);
    assert_eq!(code, 0);
    let v = parse_ok(&stdout);
    assert_eq!(v["data"]["zero"], false);
}

#[test]
fn tau_accepts_raw_json_maps() {
    let sep = johnsonlab::mapclass::catalog_entry(2, "sep1").expect("catalog");
    let map = serde_json::to_string(&sep.to_json()).expect("serializes");
    let (code, stdout, _) = run(&["tau", "--map", &map, "--level", "1", "--variant", "s", "--p", "3"]);
    assert_eq!(code, 0);
    let v = parse_ok(&stdout);
    assert_eq!(v["data"]["zero"], true);
}

#[test]
fn tau_rejects_tampered_json_maps() {
    let sep = johnsonlab::mapclass::catalog_entry(2, "sep1").expect("catalog");
    let mut json = sep.to_json();
    json.images[0] = "x2".to_string();
    let map = serde_json::to_string(&json).expect("serializes");
    let (code, _, _) = run(&["tau", "--map", &map, "--level", "1", "--variant", "z", "--p", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn domain_rejections_exit_3() {
    // Ta1 is not in the Torelli group, so level 1 is refused.
    let (code, stdout, _) = run(&["tau", "--map", "Ta1", "--level", "1", "--variant", "integral"]);
    assert_eq!(code, 3);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("error envelope");
    assert_eq!(v["status"], "error");
    assert_eq!(v["data"]["kind"], "domain");
}

#[test]
fn input_problems_exit_2() {
    // Missing --p for a mod-p series.
    let (code, _, _) = run(&["member", "--series", "zassenhaus", "--depth", "2", "--word", "x1"]);
    assert_eq!(code, 2);
    // Unparseable word.
    let (code, _, _) = run(&[
        "member", "--series", "lcs", "--depth", "2", "--word", "y1",
    ]);
    assert_eq!(code, 2);
    // Unknown flag (clap's own exit code).
    let (code, _, _) = run(&["member", "--nope"]);
    assert_eq!(code, 2);
    // Even prime modulus.
    let (code, _, _) = run(&[
        "member", "--series", "zassenhaus", "--depth", "2", "--p", "4", "--word", "x1",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn fox_and_magnus_agree_on_a_bridge_coefficient() {
    // Coefficient of w1 w2 equals the augmentation after deriving by x2 first.
    let (code, stdout, _) = run(&[
        "magnus", "--word", "x1 x2", "--truncation", "2", "--monomial", "1,2",
    ]);
    assert_eq!(code, 0);
    let coefficient = parse_ok(&stdout)["data"]["coefficient"].as_str().unwrap().to_string();

    let (code, stdout, _) = run(&["fox", "--word", "x1 x2", "--indices", "2,1"]);
    assert_eq!(code, 0);
    let augmentation = parse_ok(&stdout)["data"]["augmentation"].as_str().unwrap().to_string();
    assert_eq!(coefficient, augmentation);
    assert_eq!(coefficient, "1");
}

#[test]
fn heegaard_reads_stdin_and_rejects_singular_blocks() {
    let shear = r#"{"g":1,"ring":"Z","entries":["1","1","0","1"]}"#;
    let (code, stdout, _) = run_with(&["heegaard", "--matrix", "-", "--p", "3"], &[], Some(shear));
    assert_eq!(code, 0);
    let v = parse_ok(&stdout);
    assert_eq!(v["data"]["residual_identity"], true);
    assert_eq!(v["data"]["b_prime"][0][0], 1);

    let omega = r#"{"g":1,"ring":"Z","entries":["0","1","-1","0"]}"#;
    let (code, stdout, _) = run_with(&["heegaard", "--matrix", "-", "--p", "3"], &[], Some(omega));
    assert_eq!(code, 4);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("error envelope");
    assert_eq!(v["data"]["kind"], "not-qhs");
}

#[test]
fn budget_exhaustion_exits_4() {
    let (code, stdout, _) = run_with(
        &["magnus", "--word", "x1 x2 x1 x2 x1 x2", "--truncation", "4"],
        &[("JOHNSONLAB_BUDGET", "10")],
        None,
    );
    assert_eq!(code, 4);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("error envelope");
    assert_eq!(v["data"]["kind"], "budget");
}

#[test]
fn output_is_byte_deterministic() {
    let args = [
        "sample", "--series", "zassenhaus", "--depth", "2", "--p", "3", "--count", "4", "--seed",
        "99",
    ];
    let (c1, first, _) = run(&args);
    let (c2, second, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(first, second);

    // A different seed gives different samples.
    let mut other = args;
    other[9] = "100";
    let (_, third, _) = run(&other);
    assert_ne!(first, third);
}

#[test]
fn selftest_single_criterion_and_bad_suite() {
    let (code, stdout, _) = run(&["selftest", "--suite", "2", "--seed", "7"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("power-signatures"));
    assert!(stdout.contains("pass"));
    assert!(stdout.contains("1/1 criteria passed"));

    let (code, stdout, _) = run(&["selftest", "--suite", "2", "--json"]);
    assert_eq!(code, 0);
    let v = parse_ok(&stdout);
    assert_eq!(v["data"]["reports"][0]["passed"], true);

    let (code, _, _) = run(&["selftest", "--suite", "bogus"]);
    assert_eq!(code, 2);
}

/// Coverage audit: every subcommand has at least one working route. The
/// `selftest` suites drive the sampler, the congruence lifts, the Lie-algebra
/// reductions, and the catalog, so together with the direct calls above every
/// public operation family is reachable from the command line.
#[test]
fn every_subcommand_is_reachable() {
    let routes: &[&[&str]] = &[
        &["member", "--series", "stallings", "--depth", "2", "--p", "5", "--word", "x1 x1 x1 x1 x1"],
        &["tau", "--map", "bp12", "--level", "1", "--variant", "z", "--p", "3"],
        &["fox", "--word", "x1 x2 X1", "--indices", "1", "--ring", "F3", "--bar"],
        &["magnus", "--word", "x1 x2 X1 X2", "--truncation", "3", "--ring", "F3"],
        &["sample", "--series", "lcs", "--depth", "3", "--count", "2", "--rank", "2"],
        &["perron", "--map", "Ta1^3", "--k", "2", "--p", "3", "--blocks"],
        &["selftest", "--suite", "power-signatures"],
    ];
    for route in routes {
        let (code, _, stderr) = run(route);
        assert_eq!(code, 0, "route {route:?} failed: {stderr}");
    }
    let shear = r#"{"g":2,"ring":"Z","entries":["1","0","2","0","0","1","0","0","0","0","1","0","0","0","0","1"]}"#;
    let (code, _, stderr) = run_with(&["heegaard", "--matrix", "-", "--p", "3"], &[], Some(shear));
    assert_eq!(code, 0, "heegaard route failed: {stderr}");

    let (_, help, _) = run(&["--help"]);
    for sub in ["member", "tau", "fox", "magnus", "heegaard", "sample", "perron", "selftest"] {
        assert!(help.contains(sub), "help is missing {sub}");
    }
}
