//! Canonical invocations with frozen stdout and exit status.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub env: &'static [(&'static str, &'static str)],
    pub code: i32,
}

pub const CASES: &[Case] = &[
    Case {
        name: "decide_inhom_sobolev",
        args: &["decide", "--family", "inhom_besov", "--params", r#"{"d":1,"s":0}"#, "--p", "2", "--r", "2",
            "--target", "sobolev", "--k", "0", "--q", "2"],
        env: &[],
        code: 0,
    },
    Case {
        name: "decide_hom_first_derivative",
        args: &["decide", "--family", "hom_besov", "--params", r#"{"d":1,"s":1}"#, "--p", "2", "--r", "2",
            "--target", "sobolev", "--k", "1", "--q", "2"],
        env: &[],
        code: 1,
    },
    Case {
        name: "decide_alpha_gap",
        args: &["decide", "--family", "alpha_modulation", "--params", r#"{"d":1,"alpha":0,"gamma":0.1}"#,
            "--p", "3", "--r", "2", "--target", "sobolev", "--k", "0", "--q", "3", "--oracle-check"],
        env: &[],
        code: 2,
    },
    Case {
        name: "decide_alpha_refined",
        args: &["decide", "--family", "alpha_modulation", "--params", r#"{"d":1,"alpha":0,"gamma":0.1}"#,
            "--p", "3", "--r", "2", "--target", "sobolev", "--k", "0", "--q", "3", "--refine"],
        env: &[],
        code: 1,
    },
    Case {
        name: "decide_inhom_refined",
        args: &["decide", "--family", "inhom_besov", "--params", r#"{"d":1,"s":0}"#, "--p", "4", "--r", "2",
            "--target", "sobolev", "--k", "0", "--q", "4", "--refine"],
        env: &[],
        code: 0,
    },
    Case {
        name: "decide_inhom_cb",
        args: &["decide", "--family", "inhom_besov", "--params", r#"{"d":2,"s":3}"#, "--p", "2", "--r", "1",
            "--target", "cb", "--k", "1"],
        env: &[],
        code: 0,
    },
    Case {
        name: "decide_coorbit_bv",
        args: &["decide", "--family", "shearlet_coorbit", "--params", r#"{"c":"1/2","alpha":1,"beta":"5/2"}"#,
            "--p", "1", "--r", "2", "--target", "bv", "--k", "1"],
        env: &[],
        code: 1,
    },
    Case {
        name: "decide_zero_exponent",
        args: &["decide", "--family", "inhom_besov", "--params", r#"{"d":1,"s":0}"#, "--p", "0", "--r", "2",
            "--target", "sobolev", "--q", "2"],
        env: &[],
        code: 64,
    },
    Case {
        name: "decide_unknown_param",
        args: &["decide", "--family", "inhom_besov", "--params", r#"{"d":1,"s":0,"t":1}"#, "--p", "2", "--r", "2",
            "--target", "sobolev", "--q", "2"],
        env: &[],
        code: 65,
    },
    Case {
        name: "inspect_hom_besov",
        args: &["inspect-covering", "--family", "hom_besov", "--params", r#"{"d":1,"s":0}"#, "--radius", "6",
            "--r", "2"],
        env: &[],
        code: 0,
    },
    Case {
        name: "check_sequence_dyadic",
        args: &["check-sequence", "--u", r#"{"sector":"N0","atoms":[{"axes":[]}]}"#,
            "--v", r#"{"sector":"N0","atoms":[{"axes":[{"exp2":1,"poly":0}]}]}"#, "--r", "2", "--s", "2",
            "--oracle"],
        env: &[],
        code: 0,
    },
    Case {
        name: "check_sequence_unsupported",
        args: &["check-sequence", "--u", r#"{"sector":"N0","atoms":[{"axes":[]}]}"#,
            "--v", r#"{"sector":"N0","atoms":[{"axes":[{"exp2":1,"poly":0}]},{"axes":[{"exp2":2,"poly":0}]}]}"#,
            "--r", "2", "--s", "2"],
        env: &[],
        code: 70,
    },
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{}.json", name))
}

pub fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_decomp-embed"));
    cmd.args(args).env_remove("DECOMP_EMBED_MAX_WINDOW");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

/// Runs every case twice; returns one message per divergence. With
/// `UPDATE_GOLDEN` set, the expected files are rewritten instead.
pub fn golden_failures() -> (usize, Vec<String>) {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in CASES {
        let first = run(case.args, case.env);
        let second = run(case.args, case.env);
        let code = first.status.code();
        if code != Some(case.code) {
            failures.push(format!("{}: exit {:?}, expected {}", case.name, code, case.code));
        }
        if first.stdout != second.stdout || first.status.code() != second.status.code() {
            failures.push(format!("{}: output differs between runs", case.name));
        }
        let path = golden_path(case.name);
        if update {
            std::fs::write(&path, &first.stdout).expect("golden file writable");
            continue;
        }
        match std::fs::read(&path) {
            Ok(expected) if expected == first.stdout => {}
            Ok(_) => failures.push(format!("{}: stdout differs from {}", case.name, path.display())),
            Err(e) => failures.push(format!("{}: {}: {}", case.name, path.display(), e)),
        }
    }
    (CASES.len(), failures)
}
