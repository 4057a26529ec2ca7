use std::process::{Command, Output};

fn qpt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn plan_lists_configurations() {
    let o = qpt(&["plan", "--scheme", "dcqd", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("config ")).count(), 4);
    let o = qpt(&["plan", "--scheme", "aapt-mub", "--n", "1", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 5);
}

#[test]
fn oversized_plan_exits_2_with_one_line() {
    let o = qpt(&["plan", "--scheme", "dcqd", "--n", "9"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("size limit"));
}

#[test]
fn unknown_scheme_exits_2() {
    assert_eq!(qpt(&["plan", "--scheme", "nope", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn resources_table_anchors() {
    let o = qpt(&["resources", "--n", "3..4", "--format", "csv"]);
    let text = stdout(&o);
    let dcqd: Vec<&str> = text.lines().filter(|l| l.starts_with("dcqd,")).collect();
    assert_eq!(dcqd.len(), 2);
    assert_eq!(dcqd[0].split(',').nth(4), Some("64"));
    assert_eq!(dcqd[1].split(',').nth(4), Some("256"));

    let o = qpt(&["resources", "--n", "1", "--epsilon", "0.1", "--format", "csv"]);
    let sqpt = stdout(&o).lines().find(|l| l.starts_with("sqpt,")).unwrap().to_string();
    assert_eq!(sqpt.split(',').nth(10), Some("200"));
}

#[test]
fn empty_range_is_header_only() {
    let o = qpt(&["resources", "--n", "4..3", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "scheme,n,inputs,settings,configurations,k,outcomes,ancillas,gates_per_config,total_ops,repetitions,grand_total\n"
    );
}

#[test]
fn resource_csv_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o = qpt(&["resources", "--n", "1..3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let rows = qpt_core::resources::read_resource_csv(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(rows, qpt_core::comparison_table(1..=3, qpt_core::GateModel::NonlocalTwoBody, 0.1).unwrap());
}

fn max_error(report: &str) -> f64 {
    report.lines().find_map(|l| l.strip_prefix("max_error: ")).unwrap().parse().unwrap()
}

#[test]
fn identity_exact_reconstruction() {
    let o = qpt(&["simulate", "--scheme", "dcqd", "--n", "1", "--channel", "identity", "--exact"]);
    assert!(o.status.success());
    assert!(max_error(&stdout(&o)) < 1e-10);
}

#[test]
fn sampled_simulation_is_byte_identical() {
    let args = ["simulate", "--scheme", "dcqd", "--n", "1", "--channel", "depolarizing(0.3)", "--shots", "1000000", "--seed", "0"];
    let a = qpt(&args);
    let b = qpt(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sqpt_and_dcqd_agree() {
    let dir = tempfile::tempdir().unwrap();
    let mut chis = Vec::new();
    for scheme in ["sqpt", "dcqd"] {
        let path = dir.path().join(format!("{scheme}.csv"));
        let o = qpt(&[
            "simulate", "--scheme", scheme, "--n", "1", "--channel", "damping-dephasing(0.2,0.3)", "--exact",
            "--format", "csv", "--out", path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        chis.push(qpt_core::io::read_chi_csv(std::fs::File::open(&path).unwrap()).unwrap());
    }
    assert!(chis[0].max_abs_diff(&chis[1]) < 1e-8);
}

#[test]
fn two_qubit_preset_is_tensor_power() {
    let o = qpt(&["simulate", "--scheme", "aapt-mub", "--n", "2", "--channel", "amplitude-damping(0.2)", "--exact"]);
    assert!(o.status.success());
    assert!(max_error(&stdout(&o)) < 1e-8);
}

#[test]
fn outcomes_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("o.csv");
    let o = qpt(&[
        "simulate", "--scheme", "dcqd", "--n", "1", "--channel", "loss(0.2)", "--shots", "500", "--outcomes",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let dists = qpt_core::io::read_outcomes_csv(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(dists.len(), 4);
    assert!(dists.iter().all(|d| d.shots() == Some(500)));
}

#[test]
fn channel_file_input_and_parse_failure() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("ch.json");
    let ch = qpt_core::QuantumChannel::bit_flip(0.1).unwrap();
    qpt_core::io::write_channel_json(&ch, std::fs::File::create(&good).unwrap()).unwrap();
    let o = qpt(&["simulate", "--scheme", "dcqd", "--n", "1", "--channel-file", good.to_str().unwrap(), "--exact"]);
    assert!(o.status.success());
    assert!(max_error(&stdout(&o)) < 1e-10);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let o = qpt(&["simulate", "--scheme", "dcqd", "--n", "1", "--channel-file", bad.to_str().unwrap(), "--exact"]);
    assert_eq!(o.status.code(), Some(4));

    let missing = dir.path().join("missing.json");
    let o = qpt(&["simulate", "--scheme", "dcqd", "--n", "1", "--channel-file", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn invalid_preset_parameter_exits_2() {
    let o = qpt(&["simulate", "--scheme", "dcqd", "--n", "1", "--channel", "depolarizing(2)", "--exact"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_contract() {
    let o = qpt(&["sweep", "--scheme", "dcqd", "--channel", "depolarizing(0.3)", "--exact"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qpt(&["sweep", "--scheme", "dcqd", "--channel", "depolarizing(0.3)", "--shots", "100,1000,5000"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qpt(&["sweep", "--scheme", "dcqd", "--channel", "depolarizing(0.3)", "--shots", "1000,10000,100000,1000000", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(2));

    let args = ["sweep", "--scheme", "dcqd", "--channel", "depolarizing(0.3)", "--trials", "50", "--seed", "0"];
    let a = qpt(&args);
    assert!(a.status.success());
    let text = stdout(&a);
    let slope: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("slope: "))
        .and_then(|s| s.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    assert!((slope + 0.5).abs() < 0.05, "{slope}");
    assert_eq!(a.stdout, qpt(&args).stdout);
}

#[test]
fn relaxation_command() {
    let o = qpt(&["relaxation", "--channel", "damping-dephasing(0.2,0.1)", "--exact", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let fields: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((fields[0] - (-1.0 / 0.8f64.ln())).abs() < 1e-9);
    assert_eq!(qpt(&["relaxation", "--channel", "identity", "--exact"]).status.code(), Some(2));
}

#[test]
fn partition_output() {
    let o = qpt(&["partition", "--m", "2"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = qpt(&["partition", "--m", "3", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 63);
    assert_eq!(qpt(&["partition", "--m", "9"]).status.code(), Some(2));
}
