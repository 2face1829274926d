use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn programs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../programs")
}

fn parmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parmod"))
        .args(args)
        .current_dir(programs())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const FIXTURES: [(&str, &str); 3] = [
    ("property.lp", "property.ctl"),
    ("p1.lp", "p1.ctl"),
    ("gamma1.lp", "gamma1.ctl"),
];

#[test]
fn union_and_modular_solving_agree_on_coherent_fixtures() {
    for (lp, ctl) in FIXTURES {
        let coherent = parmod(&["check-coherence", lp, "--control", ctl]);
        if !coherent.status.success() {
            continue;
        }
        let union = parmod(&["solve", lp, "--control", ctl, "--mode", "union"]);
        let modular = parmod(&["solve", lp, "--control", ctl, "--mode", "modular"]);
        assert_eq!(stdout(&union), stdout(&modular), "{lp}");
        assert!(!stdout(&union).is_empty(), "{lp}");
    }
}

#[test]
fn output_is_identical_across_runs() {
    for (lp, ctl) in FIXTURES {
        for cmd in ["solve", "instantiate", "compare", "check-coherence"] {
            let a = parmod(&[cmd, lp, "--control", ctl, "--mode", "modular"]);
            let b = parmod(&[cmd, lp, "--control", ctl, "--mode", "modular"]);
            assert_eq!(a.stdout, b.stdout, "{cmd} {lp}");
            assert_eq!(a.status.code(), b.status.code());
        }
    }
}

#[test]
fn engines_print_the_same_answer_sets() {
    let args = ["solve", "property.lp", "--control", "property.ctl", "-c", "n=4"];
    let reference = stdout(&parmod(&args));
    assert_eq!(reference, "q(0,0) q(1,1) q(2,2) q(3,3) q(4,4)\n");
    for engine in ["brute", "fixpoint"] {
        let mut a = args.to_vec();
        a.extend(["--engine", engine]);
        assert_eq!(stdout(&parmod(&a)), reference, "{engine}");
    }
    for engine in ["brute", "reduct", "topo"] {
        let mut a = args.to_vec();
        a.extend(["--mode", "modular", "--engine", engine]);
        assert_eq!(stdout(&parmod(&a)), reference, "{engine}");
    }
}

#[test]
fn gamma1_membership_verdicts() {
    let check = |model: &str| parmod(&["check-model", "gamma1.lp", "--control", "gamma1.ctl", "--model", model]);
    let yes = check("q(0,0) q(0,1) q(0,2)");
    assert_eq!(stdout(&yes), "kappa-stable model\n");
    assert_eq!(yes.status.code(), Some(0));
    let no = check("q(0,1)");
    assert_eq!(stdout(&no), "not a kappa-stable model\n");
    assert_eq!(no.status.code(), Some(1));
}

#[test]
fn modular_membership_verdicts() {
    let check = |model: &str| {
        parmod(&["check-model", "p1.lp", "--control", "p1.ctl", "--mode", "modular", "--model", model])
    };
    let yes = check("q(0,0) q(0,1) q(0,2) q(0,3) q(0,4)");
    assert_eq!(stdout(&yes), "answer set of the modular program\n");
    let no = check("q(0,0) q(0,1) q(0,2)");
    assert_eq!(stdout(&no), "not an answer set of the modular program\n");
    assert_eq!(no.status.code(), Some(1));
}

#[test]
fn incoherent_programs_exit_with_one() {
    let out = parmod(&["check-coherence", "cycle.lp", "--control", "cycle.ctl", "--output", "machine"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["coherent"], Value::Bool(false));
    assert_eq!(report["violations"][0]["kind"], "scc-spans-modules");
    let cmp = parmod(&["compare", "cycle.lp", "--control", "cycle.ctl", "--engine", "brute"]);
    assert_eq!(cmp.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&cmp.stderr).contains("not coherent"));
}

#[test]
fn machine_output_is_json() {
    let out = parmod(&["solve", "p1.lp", "--control", "p1.ctl", "--output", "machine"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v["answer_sets"],
        serde_json::json!([["q(0,0)", "q(0,1)", "q(0,2)", "q(0,3)", "q(0,4)"]])
    );
    let out = parmod(&["parse", "property.lp", "--output", "machine"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["subprograms"][1]["name"], "property");
    assert_eq!(v["subprograms"][1]["parameters"], serde_json::json!(["k"]));
    assert_eq!(v["subprograms"][1]["rules"], serde_json::json!(["q(N,k+1) :- q(N-1,k)."]));
}

#[test]
fn parse_lists_subprograms() {
    let out = parmod(&["parse", "property.lp"]);
    assert_eq!(
        stdout(&out),
        "#program base.\n  q(0,0).\n#program property(k).\n  q(N,k+1) :- q(N-1,k).\n"
    );
}

#[test]
fn instantiate_prints_the_unfolded_program() {
    let out = parmod(&["instantiate", "property.lp", "--control", "property.ctl", "-c", "n=2"]);
    assert_eq!(stdout(&out), "q(0,0).\nq(N,0+1) :- q(N-1,0).\nq(N,1+1) :- q(N-1,1).\n");
}

#[test]
fn without_control_only_base_is_used() {
    let out = parmod(&["solve", "property.lp"]);
    assert_eq!(stdout(&out), "q(0,0)\n");
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = std::env::temp_dir().join(format!("parmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("bad.lp"), "q(0,0) :- .\n").unwrap();
    std::fs::write(dir.join("unsat.lp"), "a. :- a.\n").unwrap();
    std::fs::write(dir.join("wide.lp"), "p(X) :- r(X).\n").unwrap();
    std::fs::write(dir.join("wide.ctl"), "use base. domain 0..30. intensional p(X).\n").unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_parmod"))
            .args(args)
            .current_dir(&dir)
            .output()
            .unwrap()
    };
    let parse = run(&["solve", "bad.lp"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("1:"));
    assert_eq!(run(&["solve", "missing.lp"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let unsat = run(&["solve", "unsat.lp"]);
    assert_eq!(unsat.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&unsat.stderr), "UNSATISFIABLE\n");
    let wide = run(&["solve", "wide.lp", "--control", "wide.ctl", "--engine", "brute"]);
    assert_eq!(wide.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&wide.stderr).contains("use another engine"));
    let fix = run(&["solve", "wide.lp", "--control", "wide.ctl", "--engine", "fixpoint"]);
    assert_eq!(fix.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn constant_overrides_shadow_the_control_file() {
    let out = parmod(&["solve", "property.lp", "--control", "property.ctl", "-c", "n=1"]);
    assert_eq!(stdout(&out), "q(0,0) q(1,1)\n");
    let bad = parmod(&["solve", "property.lp", "--control", "property.ctl", "-c", "n=x"]);
    assert_eq!(bad.status.code(), Some(2));
}
