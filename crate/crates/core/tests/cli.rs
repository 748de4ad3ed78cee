use std::process::{Command, Output};

fn stochtop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stochtop")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sample_then_betti() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.txt");
    let p = path.to_str().unwrap();
    stdout(&stochtop(&["sample", "--model", "lm", "--n", "30", "--d", "2", "--c", "2", "--k", "1", "--seed", "4", "--out", p]));
    let x = stochtop::codec::read_complex(&path).unwrap();
    let b = stochtop::betti::betti_numbers(&x, Default::default()).unwrap();
    let out = stdout(&stochtop(&["betti", "--input", p]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "k,betti");
    for (k, bk) in b.iter().enumerate() {
        assert_eq!(lines[k + 1], format!("{k},{bk}"));
    }
}

#[test]
fn pt_reference_column_follows_prunings() {
    let out = stdout(&stochtop(&["pt", "--k", "0", "--c", "2", "--depth", "3", "--trials", "10", "--prunes", "1"]));
    let zero: Vec<f64> = out.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    // after one pruning the root degree is Po(c (1 - e^{-c}))
    let lambda = 2.0 * (1.0 - (-2.0f64).exp());
    assert!((zero[2] - (-lambda).exp()).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_one() {
    let o = stochtop(&["sample", "--model", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stochtop(&["--help"]).status.code(), Some(0));
}
