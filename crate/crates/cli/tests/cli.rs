use std::process::{Command, Output};

fn hoa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hoa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn house_of_quadratic() {
    let o = hoa(&["house", "--half", "1 3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2.61803398874989");
}

#[test]
fn house_with_full_coefficients_and_tsv() {
    let o = hoa(&["house", "--full", "1 1 3 1 1", "--tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let cols: Vec<&str> = out.trim().split('\t').collect();
    assert_eq!(cols[..3], ["4", "1 1 3", "1.53922233842043"]);
    assert_eq!(cols[4], "2");
}

#[test]
fn repeated_roots_are_rejected() {
    let o = hoa(&["house", "--full", "1 2 1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hoa(&["house"]).status.code(), Some(2));
    assert_eq!(hoa(&["search", "--degree", "5"]).status.code(), Some(2));
    assert_eq!(
        hoa(&["search", "--degree", "4", "--shard", "3/3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hoa(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn search_degree_four() {
    let o = hoa(&["search", "--degree", "4", "--height", "3", "--tsv", "-q"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "best\t4\t3\t1.53922233842043\t2\t1 1 3");
}

#[test]
fn search_output_is_independent_of_jobs() {
    let base = [
        "search",
        "--degree",
        "10",
        "--height",
        "1",
        "--threshold",
        "1.2",
        "--tsv",
        "-q",
    ];
    let one = stdout(&hoa(&base));
    let mut args = base.to_vec();
    args.extend(["--jobs", "3"]);
    assert_eq!(stdout(&hoa(&args)), one);
    assert_eq!(stdout(&hoa(&base)), one);
    assert!(one.lines().filter(|l| l.starts_with("below")).count() >= 6);
}

#[test]
fn verify_first_table_passes() {
    let o = hoa(&["verify", "--table", "T1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("17 rows, 0 failed"));
}

#[test]
fn verify_reports_failing_rows() {
    let o = hoa(&["verify", "--table", "t4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("reducible"));
}

#[test]
fn classify_and_measure() {
    let o = hoa(&["classify", "--half", "1 1 -1 -3", "--tsv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\tReducible\t1 0 -1 -1"));
    let o = hoa(&["measure", "--half", "1 1 0 -1 -1 -1", "--tsv"]);
    assert!(stdout(&o).contains("1.17628081825992\t1"));
}

#[test]
fn bounds_predict_generate() {
    let o = hoa(&["bounds", "--degree", "10", "--reciprocal", "--tsv"]);
    assert_eq!(stdout(&o).split('\t').count(), 8);
    let o = hoa(&["predict", "--degree", "16", "--reciprocal", "--tsv"]);
    assert!(stdout(&o).starts_with("16\t8\t"));
    let o = hoa(&["generate", "five-mod-six", "--degree", "17", "--tsv"]);
    assert!(stdout(&o).contains("1.03930211"));
}
