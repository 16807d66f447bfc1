use std::path::PathBuf;
use std::process::{Command, Output};

use pfaffamp_cli::RunReport;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.display().to_string()
}

fn pfaffamp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfaffamp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn triangle_first_symanzik() {
    let o = pfaffamp(&["symanzik", &data("triangle.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "S1 = a1 + a2 + a3"), "{out}");
    assert!(out.contains("oracle: match"));
}

#[test]
fn box_second_symanzik_at_zero_momentum() {
    let o = pfaffamp(&["symanzik", &data("box_equal_mass.json")]);
    let out = stdout(&o);
    // unit masses: (Σ a)(Σ a)
    assert!(
        out.contains("S2 = a1^2 + 2*a1*a2 + 2*a1*a3 + 2*a1*a4 + a2^2 + 2*a2*a3 + 2*a2*a4 + a3^2 + 2*a3*a4 + a4^2"),
        "{out}"
    );
}

#[test]
fn malformed_json_fails_with_position() {
    let o = pfaffamp(&["symanzik", &data("malformed.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn missing_file_is_an_io_error() {
    let o = pfaffamp(&["symanzik", "/nonexistent/graph.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exact_mode_rejects_float_literals() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let text = std::fs::read_to_string(data("triangle.json"))
        .unwrap()
        .replace("\"mass\": \"1\"", "\"mass\": 1.5");
    std::fs::write(&path, text).unwrap();
    let p = path.display().to_string();
    assert_eq!(pfaffamp(&["symanzik", &p]).status.code(), Some(0));
    assert_eq!(pfaffamp(&["symanzik", "--exact", &p]).status.code(), Some(2));
}

#[test]
fn twistor_check_passes_on_box_and_bowtie() {
    for name in ["box_generic.json", "bowtie.json"] {
        let o = pfaffamp(&["twistor-check", &data(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let out = stdout(&o);
        assert!(
            out.contains("residual = 0") && out.trim_end().ends_with("PASS"),
            "{out}"
        );
    }
}

#[test]
fn five_edge_two_loop_graph_is_unsupported() {
    let o = pfaffamp(&["twistor-check", &data("two_loop_five_edges.json")]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8(o.stderr).unwrap().contains("unsupported topology"));
}

#[test]
fn zero_samples_is_a_validation_error() {
    let o = pfaffamp(&["integrate", &data("box_equal_mass.json"), "--samples", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let report = RunReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.errors[0].kind, "validation");
    assert!(report.results.is_empty());
}

#[test]
fn integrate_all_reports_constants() {
    let o = pfaffamp(&[
        "integrate",
        &data("box_equal_mass.json"),
        "--method",
        "all",
        "--samples",
        "200000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = RunReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.results.len(), 3);
    let c = report.constants.unwrap().c_hat;
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((c.value - pi2).abs() < 3.0 * c.std_error, "{c:?}");
    let symbolic = report.symbolic.unwrap();
    assert_eq!(symbolic.s1_oracle_match, Some(true));
    assert!(symbolic.pfaffian.unwrap().identity_holds);
    assert!(symbolic
        .ranks
        .iter()
        .all(|r| r.form_rank == 4 && r.hessian_rank == Some(4)));
}

#[test]
fn massless_edge_is_refused_in_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let text =
        std::fs::read_to_string(data("box_equal_mass.json"))
            .unwrap()
            .replacen("\"mass\": \"1\"", "\"mass\": \"0\"", 1);
    std::fs::write(&path, text).unwrap();
    let o = pfaffamp(&["integrate", &path.display().to_string(), "--samples", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    let report = RunReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.errors.len(), 3);
    assert!(report.errors.iter().all(|e| e.kind == "convergence-risk"));
}

#[test]
fn same_seed_gives_identical_reports() {
    let args = ["integrate", &data("bowtie.json"), "--seed", "42", "--samples", "50000"];
    let a = RunReport::from_json(&stdout(&pfaffamp(&args))).unwrap();
    let b = RunReport::from_json(&stdout(&pfaffamp(&args))).unwrap();
    assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
    let mut other = args;
    other[3] = "43";
    let c = RunReport::from_json(&stdout(&pfaffamp(&other))).unwrap();
    assert_ne!(a.without_timing().results, c.without_timing().results);
}

#[test]
fn reports_round_trip_and_bind_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = pfaffamp(&[
        "integrate",
        &data("box_generic.json"),
        "--samples",
        "20000",
        "--output",
        &out.display().to_string(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let report = RunReport::from_json(&text).unwrap();
    assert_eq!(report.to_json(), text);
    let input = std::fs::read(data("box_generic.json")).unwrap();
    use sha2::Digest;
    assert_eq!(report.input.unwrap().sha256, hex::encode(sha2::Sha256::digest(&input)));
}

#[test]
fn feynman_check_commands() {
    let o = pfaffamp(&["feynman-check", "0.5", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("relative gap"));
    assert_eq!(pfaffamp(&["feynman-check", "1", "-2"]).status.code(), Some(2));
    assert_eq!(pfaffamp(&["feynman-check", "1", "2", "3"]).status.code(), Some(2));
}
