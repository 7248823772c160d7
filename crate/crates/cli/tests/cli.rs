//! End-to-end tests of the `qreduce` binary: exit codes, determinism of
//! structured output, config-file merging and help completeness.

use std::process::{Command, Output};

fn qreduce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qreduce"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn vq_circle_prints_the_curve_potential() {
    let out = qreduce(&["vq", "curve", "--shape", "circle", "--radius", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("vq_closed  -0.125"), "output:\n{text}");
}

#[test]
fn usage_error_exits_2_and_names_the_flag() {
    let out = qreduce(&["vq", "curve", "--shape", "circle", "--radius", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--radius"), "stderr: {err}");
}

#[test]
fn unknown_flag_exits_2() {
    let out = qreduce(&["vq", "curve", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numeric_failure_exits_3() {
    // Thickness beyond the coordinate validity of the circle layer.
    let out = qreduce(&["layersim", "circle", "--radius", "1", "--eps", "0.6"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error"), "stderr: {err}");
}

#[test]
fn structured_output_is_byte_identical_across_runs() {
    let args = [
        "recipes", "compare", "--geometry", "sphere", "--radius", "1", "--lmax", "3", "--format",
        "csv",
    ];
    let first = qreduce(&args);
    let second = qreduce(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let args = ["vq", "curve", "--shape", "ellipse", "--a", "1.5", "--b", "1", "--format", "json"];
    let first = qreduce(&args);
    let second = qreduce(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn recipe_csv_carries_the_four_recipes() {
    let out = qreduce(&[
        "recipes", "compare", "--geometry", "sphere", "--radius", "1", "--lmax", "2", "--format",
        "csv",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("recipe,level,degeneracy,energy\r\n"));
    assert!(text.contains("dirac,0,1,1.12500000000e0"));
    assert!(text.contains("abelian-conversion,0,1,0.00000000000e0"));
    assert!(text.contains("thin-layer,0,1,0.00000000000e0"));
    assert!(text.contains("dewitt-path-integral,0,1,1.66666666667e-1"));
}

#[test]
fn abelian_brackets_report_involution() {
    let out = qreduce(&["brackets", "--system", "sphere-abelian", "--n", "3", "--radius", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("{sigma1, sigma2} = 0"), "output:\n{text}");
    assert!(text.contains("first class"), "output:\n{text}");
}

#[test]
fn sphere_brackets_are_second_class() {
    let out = qreduce(&["brackets", "--system", "sphere", "--n", "3", "--radius", "1"]);
    let text = stdout(&out);
    assert!(text.contains("second class"), "output:\n{text}");
    assert!(text.contains("2*x1^2"), "output:\n{text}");
}

#[test]
fn layersim_csv_has_documented_columns() {
    let out = qreduce(&[
        "layersim",
        "circle",
        "--radius",
        "1",
        "--eps",
        "0.1,0.05,0.025",
        "--mmax",
        "1",
        "--ntrans",
        "32",
        "--extrapolate",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.starts_with("geometry,m,eps,E_raw,E_perp,E_renormalized,E_extrapolated,fit_residual\r\n"),
        "output:\n{text}"
    );
    // Two modes, three thicknesses.
    assert_eq!(text.lines().count(), 1 + 2 * 3);
}

#[test]
fn output_file_receives_structured_output() {
    let dir = std::env::temp_dir().join(format!("qreduce-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("result.json");
    let out = qreduce(&[
        "vq", "curve", "--shape", "circle", "--radius", "2", "--format", "json", "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("\"vq_closed\""));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("qreduce-conf-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "# defaults\nradius = 2\nformat = csv\n").unwrap();
    let out = qreduce(&[
        "vq", "curve", "--shape", "circle", "--config", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("name,value\r\n"), "output:\n{text}");
    assert!(text.contains("curvature,5.00000000000e-1"), "output:\n{text}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn help_lists_every_flag_of_every_subcommand() {
    fn walk(cmd: &clap::Command, path: Vec<String>, failures: &mut Vec<String>) {
        let mut rendered = cmd.clone();
        let help = rendered.render_long_help().to_string();
        for arg in cmd.get_arguments() {
            if arg.is_hide_set() {
                continue;
            }
            if let Some(long) = arg.get_long() {
                if !help.contains(&format!("--{long}")) {
                    failures.push(format!("{}: --{long}", path.join(" ")));
                }
            }
        }
        for sub in cmd.get_subcommands() {
            let mut next = path.clone();
            next.push(sub.get_name().to_string());
            walk(sub, next, failures);
        }
    }
    let tree = qreduce_cli::command_tree();
    let mut failures = Vec::new();
    walk(&tree, vec!["qreduce".into()], &mut failures);
    assert!(failures.is_empty(), "flags missing from help: {failures:?}");
}

#[test]
fn help_flag_exits_zero() {
    let out = qreduce(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("qreduce"));
}

#[test]
fn spectrum_circle_with_vq_ground_level() {
    let out = qreduce(&[
        "spectrum", "circle", "--radius", "1", "--n-grid", "64", "--modes", "3", "--with-vq",
        "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("level,energy\r\n"));
    let ground: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((ground + 0.125).abs() < 1e-3, "ground {ground}");
}

#[test]
fn json_output_parses_back_to_the_same_record() {
    let config =
        qreduce_cli::parse_args(["vq", "latitude", "--radius", "1", "--theta", "1.0471975512"])
            .unwrap();
    let record = qreduce_cli::run(&config).unwrap();
    let json = qreduce_cli::emit(&record, qreduce_cli::OutputFormat::Json);
    let parsed: qreduce_cli::ResultRecord = serde_json::from_str(&json).unwrap();
    let mut expect = record.clone();
    expect.duration_ms = None;
    assert_eq!(parsed, expect);
}
