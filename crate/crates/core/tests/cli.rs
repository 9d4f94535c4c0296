mod common;

use common::polygen;
use polygen::cli::parse_members;
use polygen::exact::{CPolyJson, PolyJson};
use polygen::identities::CheckReport;
use polygen::series::SeriesJson;
use polygen::{CPoly, MultiPoly, TruncSeries};

#[test]
fn expand_matches_documented_examples() {
    assert_eq!(polygen(&["expand", "--family", "gould-hopper", "--j", "2", "--n", "2"]).1, "x^2 + 2*y\n");
    assert_eq!(polygen(&["expand", "--family", "hermite-gen", "--r", "1", "--n", "5"]).1, "u1^5\n");
    assert_eq!(polygen(&["expand", "--family", "np", "--n", "2"]).1, "(x^2 - y^2) + i*(2*x*y)\n");
}

#[test]
fn table_k1_rows_end_with_listed_value() {
    let (code, out, _) = polygen(&["table", "--family", "k1", "--r", "2", "--n", "0..3"]);
    assert_eq!(code, 0);
    let last = out.lines().last().unwrap();
    let expected = common::parse("(x+u1)^3 + 6*(x+u1)*u2 - 3*y^2*(x+u1)").re;
    assert_eq!(last, format!("3\t2\t{expected}"));
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn series_dickson_and_cos() {
    let (_, out, _) = polygen(&["series", "--family", "dickson-d", "--alpha", "1", "--order", "2", "--format", "csv"]);
    assert_eq!(out, "n,coeff\n0,2\n1,x\n2,x^2 - 2\n");
    let (_, out, _) = polygen(&["series", "--family", "cos-c", "--order", "0", "--format", "json"]);
    let s: SeriesJson<PolyJson> = serde_json::from_str(&out).unwrap();
    assert_eq!(s.coeffs.len(), 1);
    assert_eq!(TruncSeries::<MultiPoly>::try_from(&s).unwrap().coeff(0), &MultiPoly::one());
}

#[test]
fn order_defaults_from_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_polygen"))
        .args(["series", "--family", "sin-s", "--format", "csv"])
        .env("POLYGEN_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_polygen"))
        .args(["series", "--family", "sin-s", "--format", "csv"])
        .env_remove("POLYGEN_ORDER")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 18);
}

#[test]
fn table_and_series_json_round_trip() {
    let (_, out, _) = polygen(&["table", "--family", "m2", "--z", "2", "--r", "2", "--n", "0..4", "--format", "json"]);
    let rows = parse_members(&out).unwrap();
    assert_eq!(rows.len(), 5);
    let fam = polygen::cli::FamilyArgs { family: "m2".into(), z: Some(2), r: Some(2), ..Default::default() }.resolve().unwrap();
    for row in rows {
        assert_eq!(row.family, "m2");
        assert_eq!(row.params["kernel"], "bernoulli");
        assert_eq!(row.value, fam.value(row.n).unwrap());
    }

    let (_, out, _) = polygen(&["series", "--family", "nw", "--order", "3", "--format", "json"]);
    let s: SeriesJson<CPolyJson> = serde_json::from_str(&out).unwrap();
    let back = TruncSeries::<CPoly>::try_from(&s).unwrap();
    assert_eq!(back.egf_coeff(3).unwrap(), CPoly::w().pow(3));
    assert_eq!(serde_json::to_string(&SeriesJson::from(&back)).unwrap() + "\n", out);
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--family", "bform", "--kernel", "euler", "--a", "1/2", "--r", "2", "--n", "0..5", "--format", "csv"];
    assert_eq!(polygen(&args), polygen(&args));
}

#[test]
fn check_reports() {
    let (code, out, _) = polygen(&["check", "--id", "tileu", "--n-max", "0"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS tileu (n<=0"), "{out}");

    let (code, out, _) = polygen(&["check", "--id", "dickson-gf-discrepancy", "--format", "json"]);
    assert_eq!(code, 0);
    let report: CheckReport = serde_json::from_str(out.trim()).unwrap();
    assert!(report.passed);
    assert!(report.counterexample.is_none());
    assert_eq!(report.witness.unwrap().inputs["n"], "1");

    let (code, out, _) = polygen(&["check", "--suite", "discrepancies", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn exit_codes() {
    let (code, _, err) = polygen(&["table", "--family", "no-such-family", "--n", "0..2"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown family"));
    assert_eq!(polygen(&["check", "--id", "not-a-check"]).0, 2);
    assert_eq!(polygen(&["check", "--id", "tileu", "--n-max", "1000"]).0, 2);
    assert_eq!(polygen(&["table", "--family", "chebyshev-t", "--n", "3..1"]).0, 2);
    assert_eq!(polygen(&["expand", "--family", "gould-hopper", "--j", "1", "--n", "2"]).0, 2);
    assert_eq!(polygen(&["expand", "--family", "apostol-bernoulli", "--k", "-1", "--lambda", "2", "--n", "2"]).0, 3);
    assert_eq!(polygen(&["series", "--family", "r1", "--z", "-1", "--kernel", "euler", "--a", "-1"]).0, 3);
    assert_eq!(polygen(&["--help"]).0, 0);
}
