use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-classes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or(serde_json::Value::Null);
    (o.status.code().unwrap(), v)
}

#[test]
fn hirzebruch_class_of_p1() {
    let (code, v) = json(&["classes", &data("p1.json")]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["class"]["{}"], "1+y");
    assert_eq!(r["class"]["{1}"], "1-y");
    assert_eq!(r["degree"], "1-y");
    assert_eq!(r["degree_matches_genus"], true);
}

#[test]
fn chern_and_todd_classes_of_p2() {
    let (code, v) = json(&["classes", &data("p2.json"), "--class", "chern"]);
    assert_eq!(code, 0);
    let c = &v["result"]["class"];
    assert_eq!(
        (&c["{}"], &c["{2}"], &c["{1,2}"]),
        (&"1".into(), &"3".into(), &"3".into())
    );

    let (code, v) = json(&["classes", &data("p2.json"), "--class", "todd", "--y", "0"]);
    assert_eq!(code, 0);
    let c = &v["result"]["class"];
    assert_eq!(
        (&c["{}"], &c["{2}"], &c["{1,2}"]),
        (&"1".into(), &"3/2".into(), &"1".into())
    );
}

#[test]
fn cross_check_on_surfaces() {
    for fan in ["p2.json", "p1xp1.json", "f1.json"] {
        let (code, v) = json(&["classes", &data(fan), "--cross-check"]);
        assert_eq!(code, 0, "{fan}");
        assert_eq!(v["result"]["orbit_sum_equals_cotangent"], true, "{fan}");
    }
}

#[test]
fn numeric_y_specializes_the_normalized_class() {
    let (code, v) = json(&[
        "classes",
        &data("p1.json"),
        "--class",
        "hirzebruch-normalized",
        "--y",
        "-1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["class"]["{1}"], "2");
    assert_eq!(v["result"]["genus"], "2");
}

#[test]
fn count_points() {
    for (file, n) in [("simplex2.json", "6"), ("box23.json", "12")] {
        let (code, v) = json(&["count-points", &data(file)]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["enumerated"], n);
        assert_eq!(v["result"]["riemann_roch"], n);
        assert_eq!(v["result"]["match"], true);
    }
    let o = run(&["count-points", &data("singular_triangle.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not smooth"));
}

#[test]
fn symprod_series() {
    let (code, v) = json(&["symprod", "1+y*x", "--order", "3", "--oracle"]);
    assert_eq!(code, 0);
    let want = ["1", "1+y*x", "1+y*x+y^2*x^2", "1+y*x+y^2*x^2+y^3*x^3"];
    assert_eq!(v["result"]["coefficients"], serde_json::json!(want));
    assert_eq!(
        v["result"]["oracle_matches"],
        serde_json::json!([true, true, true, true])
    );

    let (_, v) = json(&["symprod", "2", "--order", "4"]);
    assert_eq!(
        v["result"]["coefficients"],
        serde_json::json!(["1", "2", "3", "4", "5"])
    );
    let (_, v) = json(&["symprod", "1", "--order", "2"]);
    assert_eq!(
        v["result"]["coefficients"],
        serde_json::json!(["1", "1", "1"])
    );

    let (code, v) = json(&[
        "symprod",
        &data("curve_table.json"),
        "--order",
        "3",
        "--oracle",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["oracle_matches"],
        serde_json::json!([true, true, true, true])
    );
}

#[test]
fn symprod_oracle_guard() {
    let o = run(&["symprod", "1", "--order", "9", "--oracle"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hyperplane_virtual_class() {
    let (code, v) = json(&["hypersurface", &data("p2.json"), "--divisor", "1,0,0"]);
    assert_eq!(code, 0);
    let c = &v["result"]["virtual_class"];
    assert_eq!(c["{2}"], "1+y");
    assert_eq!(c["{1,2}"], "1-y");
}

#[test]
fn nodal_cubic_genus_mode() {
    let args = [
        "hypersurface",
        &data("p2.json"),
        "--divisor",
        "3,0,0",
        "--strata",
    ];
    let mut ok = args.to_vec();
    let good = data("nodal_cubic.json");
    ok.push(&good);
    let (code, v) = json(&ok);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["difference"], "y");
    assert_eq!(v["result"]["correction"], "y");
    assert_eq!(v["result"]["consistent"], true);

    let mut bad = args.to_vec();
    let wrong = data("nodal_cubic_wrong.json");
    bad.push(&wrong);
    let (code, v) = json(&bad);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["consistent"], false);
}

#[test]
fn singular_without_strata() {
    let (code, v) = json(&[
        "hypersurface",
        &data("p2.json"),
        "--divisor",
        "3,0,0",
        "--singular",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["correction"],
        "correction unknown; virtual class only"
    );
}

#[test]
fn validate_reports() {
    let (code, v) = json(&["validate", &data("f1.json")]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["chow_ranks"],
        serde_json::json!(["1", "2", "1"])
    );
    let (code, v) = json(&["validate", &data("plane.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["complete"], false);
    let (code, v) = json(&["validate", &data("bad_overlap.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["valid"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classes", "missing.json"]).status.code(), Some(1));
    assert_eq!(
        run(&["classes", &data("p1.json"), "--class", "x"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["classes", &data("p1.json"), "--y", "1/0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["classes", &data("plane.json")]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["classes", "FAN", "--cross-check"],
        vec!["--json", "classes", "FAN", "--class", "todd"],
    ] {
        let p = data("f1.json");
        let args: Vec<&str> = args
            .iter()
            .map(|a| if *a == "FAN" { &p } else { *a })
            .collect();
        assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
    }
}

#[test]
fn text_report_layout() {
    let o = run(&["classes", &data("p1.json")]);
    let p = data("p1.json");
    let expected = format!(
        "computation                  classes\n\
         input.fan                    {p}\n\
         input.class                  hirzebruch\n\
         input.y                      symbolic\n\
         input.cross_check            false\n\
         result.class.{{}}              1+y\n\
         result.class.{{1}}             1-y\n\
         result.degree                1-y\n\
         result.genus                 1-y\n\
         result.degree_matches_genus  true\n"
    );
    assert_eq!(stdout(&o), expected);
}
