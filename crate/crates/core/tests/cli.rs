use std::process::{Command, Output};

use serde_json::Value;

fn transvect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transvect")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn characters_line() {
    let o = transvect(&["characters", "--r", "3", "--d", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "S18 S14 S12 S10 S8 S6");
}

#[test]
fn lemma_a_json_shape() {
    let o = transvect(&["--format", "json", "lemma-a", "--e-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "lemma-a");
    assert_eq!(v["pass"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let last = &rows[8];
    assert_eq!((last["e"].as_u64(), last["p"].as_u64()), (Some(3), Some(3)));
    assert_eq!(last["n1_closed"], "25920");
    assert!(rows.iter().all(|r| r["agree"] == true));
}

#[test]
fn csv_header_and_rows() {
    let o = transvect(&["--format", "csv", "lemma-b", "--r-max", "2", "--e-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["kind", "r", "e", "p_prime", "p", "n2_direct", "n2_closed", "agree"]);
    for rec in rdr.records() {
        let rec = rec.unwrap();
        assert_eq!(&rec[7], "true");
        if &rec[0] == "cell" {
            assert_eq!(rec[5], rec[6]);
        }
    }
}

#[test]
fn errors_exit_with_two() {
    for args in [
        &["characters", "--r", "3", "--d", "7"][..],
        &["lemma-a", "--e-max", "20"][..],
        &["no-such-command"][..],
    ] {
        let o = transvect(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_is_byte_stable() {
    let args = ["--format", "json", "--jobs", "2", "covariants", "--suite", "ternary", "--trials", "2", "--seed", "5"];
    let a = transvect(&args);
    let b = transvect(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn z_series_text() {
    let o = transvect(&["z-series", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass: true"), "{}", stdout(&o));
}
