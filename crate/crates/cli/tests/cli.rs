use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_exit_codes() {
    let ok = cpc(&["verify", &fixture("11-3-3.cpc")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "single-error correcting: yes, distance: 3\n");

    let bad = cpc(&["verify", &fixture("11-3-1.cpc")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("{p4}"));

    let general = cpc(&["verify", &fixture("10-3-3.cpc")]);
    assert_eq!(general.status.code(), Some(0));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(cpc(&[]).status.code(), Some(2));
    assert_eq!(cpc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        cpc(&["verify", "--bogus", &fixture("6-3-1.cpc")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cpc(&["verify", "/no/such/file.cpc"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.cpc");
    std::fs::write(&broken, "CPC split\ndata 1\nbit 1\nphase 0\nB\n2\nP\nC\n").unwrap();
    let o = cpc(&["verify", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6"));
}

#[test]
fn stabilizers_and_tables() {
    let s = stdout(&cpc(&["stabilizers", &fixture("11-3-3.cpc")]));
    assert_eq!(s.lines().count(), 8);
    assert!(s.contains("Z d1 d2 b1 p2 p4"));
    let e = stdout(&cpc(&["error-table", &fixture("11-3-3.cpc")]));
    assert!(e.contains("Xd1\t{b1,b3}\t10100000\tcorrected"));
    let d = cpc(&["decode-table", &fixture("11-3-3.cpc")]);
    assert_eq!(d.status.code(), Some(0));
    assert!(stdout(&d).contains("{b3,b4}\t00110000\tX d1 d2\tcorrected"));
    assert_eq!(
        cpc(&["decode-table", &fixture("11-3-1.cpc")]).status.code(),
        Some(1)
    );
    let l = stdout(&cpc(&["logicals", &fixture("6-3-1.cpc")]));
    assert!(l.contains("X_d1: X d1 b1 b3"));
}

#[test]
fn css_conversions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("steane.cpc");
    let o = cpc(&[
        "css-to-cpc",
        &fixture("steane.css"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = cpc(&["verify", out.to_str().unwrap()]);
    assert_eq!(stdout(&v), "single-error correcting: yes, distance: 3\n");
    let d = cpc(&["distance", &fixture("steane.css"), "--max-weight", "3"]);
    assert_eq!(stdout(&d), "distance: 3\n");
    let back = stdout(&cpc(&["cpc-to-css", &fixture("11-3-3.cpc")]));
    assert!(back.starts_with("CSS\nqubits 11\nZ\n"));
    assert_eq!(
        cpc(&["cpc-to-css", &fixture("10-3-3.cpc")]).status.code(),
        Some(2)
    );
}

#[test]
fn ising_agrees_with_ml() {
    let o = cpc(&[
        "ising",
        &fixture("11-3-3.cpc"),
        "--syndrome",
        "1010",
        "--compare-ml",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("errors: d1\n"));
    assert!(s.contains("maximum likelihood agrees: yes"));
    let bad = cpc(&["ising", &fixture("11-3-3.cpc"), "--syndrome", "10"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn simulate_then_fit() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let run = |threads: &str| {
        let o = cpc(&[
            "--seed",
            "5",
            "--threads",
            threads,
            "--out",
            csv.to_str().unwrap(),
            "simulate",
            &fixture("6-3-1.cpc"),
            "--eps-bit",
            "0.05",
            "--eps-phase",
            "0",
            "--rate",
            "10",
            "--t-max",
            "200",
            "--samples",
            "21",
            "--trials",
            "200",
        ]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read_to_string(&csv).unwrap()
    };
    let a = run("1");
    assert_eq!(a, run("3"));
    assert!(a.starts_with("time_s,F0,F0_err,Fplus,Fplus_err,Frand,Frand_err\n"));
    let f = cpc(&["fit", csv.to_str().unwrap(), "--metric", "F0"]);
    assert_eq!(f.status.code(), Some(0));
    assert!(stdout(&f).contains("lambda_half_s: "));
    let flat = cpc(&["fit", csv.to_str().unwrap(), "--metric", "Fplus"]);
    assert_eq!(flat.status.code(), Some(1));
    assert!(stdout(&flat).contains("fit flagged"));
}

#[test]
fn search_writes_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("found");
    let o = cpc(&[
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
        "search",
        "--data",
        "3",
        "--bit",
        "4",
        "--phase",
        "4",
        "--budget",
        "20000",
        "--mirror-bp",
        "--require",
        "cnot:0,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("trials: 20000, successes: "));
    let files: Vec<_> = std::fs::read_dir(&out).unwrap().collect();
    assert!(!files.is_empty());
    for f in files {
        let path = f.unwrap().path();
        assert_eq!(
            cpc(&["verify", path.to_str().unwrap()]).status.code(),
            Some(0)
        );
    }
    let none = cpc(&[
        "search", "--data", "3", "--bit", "4", "--phase", "4", "--budget", "0",
    ]);
    assert_eq!(none.status.code(), Some(1));
}

#[test]
fn encoded_gate_circuits() {
    let h = cpc(&["logical-h", &fixture("11-3-3.cpc"), "--qubit", "0"]);
    assert_eq!(h.status.code(), Some(0));
    let text = stdout(&h);
    assert!(text.contains("CZ 7 0") && text.ends_with("H 0\n"));
    let c = cpc(&[
        "logical-cnot",
        &fixture("13-3-3.cpc"),
        "--control",
        "0",
        "--target",
        "1",
    ]);
    assert_eq!(c.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&c.stderr).is_empty());
    let w = cpc(&[
        "logical-cnot",
        &fixture("11-3-3.cpc"),
        "--control",
        "0",
        "--target",
        "1",
    ]);
    assert!(String::from_utf8_lossy(&w.stderr).contains("warning"));
    let e = stdout(&cpc(&["emit-circuit", &fixture("6-3-1.cpc")]));
    assert!(e.starts_with("# qubits 6\nCNOT 0 3\n"));
    assert_eq!(
        cpc(&["logical-h", &fixture("6-3-1.cpc"), "--qubit", "9"])
            .status
            .code(),
        Some(2)
    );
}
