#![allow(dead_code)]

use std::path::{Path, PathBuf};

use smith_cli::run;

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Commands run against each kind of fixture file.
pub fn commands_for(file: &str) -> Vec<Vec<&'static str>> {
    let kind = file.split('_').next().unwrap();
    let rows: &[&[&str]] = match kind {
        "ring" => &[&["check-dga", "R", "--witness"], &["homology", "R"]],
        "ideal" => &[
            &["check-bimodule", "I", "--witness"],
            &["check-ideal", "Ideal", "--full", "--witness"],
            &["check-ideal", "Ideal", "--reduced", "--witness"],
            &["build", "Ideal", "--witness"],
            &["cone", "Ideal", "--witness"],
        ],
        "full" => &[
            &["check-ideal", "Full", "--full", "--witness"],
            &["check-ideal", "Full", "--reduced", "--witness"],
            &["derive", "Full", "--witness"],
        ],
        "morphism" => &[
            &["check-map", "f", "--witness"],
            &["fiber", "f", "--witness"],
            &["roundtrip", "f", "--witness"],
        ],
        "free" => &[
            &["check-bimodule", "FreeSquare", "--witness"],
            &["check-ideal", "MuCandidate", "--reduced", "--witness"],
            &["cone", "MuCandidate", "--witness"],
        ],
        other => panic!("unknown fixture kind {other}"),
    };
    rows.iter().map(|r| r.to_vec()).collect()
}

pub fn fixture_files() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".smith"))
        .collect();
    names.sort();
    names
}

/// Machine-readable output of every command on one fixture file, with the
/// exit status of each.
pub fn report_for(file: &str) -> String {
    let path = fixture_dir().join(file);
    let mut out = String::new();
    for args in commands_for(file) {
        let mut argv = vec![
            "smith".to_string(),
            args[0].to_string(),
            path.display().to_string(),
        ];
        argv.extend(args[1..].iter().map(|s| s.to_string()));
        let r = run(&argv);
        assert!(r.code == 0 || r.code == 1, "{file} {args:?}: {}", r.stderr);
        let failed = r.stdout.lines().any(|l| l.contains(r#""status":"fail""#));
        assert_eq!(
            r.code == 1,
            failed,
            "{file} {args:?}: exit code disagrees with the report"
        );
        out.push_str(&format!(
            "$ smith {} {file} {}\n",
            args[0],
            args[1..].join(" ")
        ));
        out.push_str(&r.stdout);
        out.push_str(&format!("exit {}\n", r.code));
    }
    out
}

pub fn golden_name(file: &str) -> String {
    format!("{}.txt", file.trim_end_matches(".smith"))
}
