use std::io::Write;
use std::process::Command as Proc;

use clap::Parser;
use proptest::prelude::*;
use serde_json::Value;
use xizero::commands::{parse_angle, parse_grid, parse_list, run, Cli, Failure};
use xizero::config::{Format, Overrides, RunConfig};
use xizero::output::{format_err, format_value, Record};
use xizero::plot::{emit_plot, render_svg};
use xizero::{dispatch, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
use xizero_core::{Error, Real};

fn call(args: &[&str]) -> (i32, String, String) {
    call_env(args, None)
}

fn call_env(args: &[&str], bits: Option<&str>) -> (i32, String, String) {
    let mut argv = vec!["xizero"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dispatch(argv, bits, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_lines(s: &str) -> Vec<serde_json::Map<String, Value>> {
    s.lines()
        .map(|l| match serde_json::from_str::<Value>(l).unwrap() {
            Value::Object(m) => m,
            other => panic!("not an object: {other}"),
        })
        .collect()
}

fn num(m: &serde_json::Map<String, Value>, k: &str) -> f64 {
    m[k].as_str().unwrap().parse().unwrap()
}

/// Every field that reads as a number has a `_err` companion.
fn assert_paired(records: &[serde_json::Map<String, Value>]) {
    for r in records {
        for (k, v) in r {
            let s = v.as_str().expect("values are strings");
            if k.ends_with("_err") || s.parse::<f64>().is_err() {
                continue;
            }
            assert!(r.contains_key(&format!("{k}_err")), "{k} has no error field in {r:?}");
        }
    }
}

#[test]
fn sum_rule_record() {
    let (code, out, _) = call(&["sum-rule", "--n", "10"]);
    assert_eq!(code, EXIT_OK);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 1);
    let r = &recs[0];
    assert_eq!(num(r, "n"), 10.0);
    assert!(num(r, "gap") > num(r, "gap_err"));
    assert!((num(r, "partial") + num(r, "gap") - num(r, "target")).abs() < 1e-15);
    assert!((num(r, "target") - 5.776248278854743e-3).abs() < 1e-15);
    assert_paired(&recs);
}

#[test]
fn moments_csv_with_combination_row() {
    let (code, out, _) = call(&["moments", "--kmax", "3", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["k", "k_err", "b_k", "b_k_err"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(&rows[0][0], "0");
    assert!((rows[0][2].parse::<f64>().unwrap() - 0.0621400972735).abs() < 1e-12);
    assert_eq!(&rows[4][0], "combo");
    let combo: f64 = rows[4][2].parse().unwrap();
    assert!((combo * 1e8 - 3.588449148).abs() < 1e-9, "{combo}");
    let err: f64 = rows[4][3].parse().unwrap();
    assert!(err < 1e-40);
}

#[test]
fn outputs_are_deterministic_and_paired() {
    for args in [
        &["phi", "--grid", "0:1:1/4"][..],
        &["turan", "--n", "4"],
        &["jensen", "--poly", "0,130,35,5,-5,1"],
        &["lp-check", "--poly", "-1,0,1"],
        &["ms-test", "--sequence", "1,1,1,1,1,1"],
        &["phi-alpha", "--alpha", "2", "--grid", "0:2:1"],
        &["hankel", "--r", "1"],
        &["dnr", "--n", "3", "--r", "2"],
    ] {
        let (c1, a, _) = call(args);
        let (c2, b, _) = call(args);
        assert_eq!((c1, c2), (EXIT_OK, EXIT_OK), "{args:?}");
        assert_eq!(a, b, "{args:?}");
        assert_paired(&json_lines(&a));
    }
}

#[test]
fn jensen_specimen_records() {
    let (code, out, _) = call(&["jensen", "--poly", "0,130,35,5,-5,1"]);
    assert_eq!(code, EXIT_OK);
    let recs = json_lines(&out);
    let kinds = |k: &str| recs.iter().filter(|r| r["kind"] == k).count();
    assert_eq!((kinds("root"), kinds("disk"), kinds("critical")), (5, 2, 4));
    assert!(recs.iter().filter(|r| r["kind"] == "critical").all(|r| r["covered"] == "true"));
    for r in recs.iter().filter(|r| r["kind"] == "root") {
        assert!(num(r, "re_err") < 1e-20);
    }
}

#[test]
fn lp_and_multiplier_commands() {
    let (_, out, _) = call(&["lp-check", "--poly", "1,0,1"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["sturm_all_real"], "false");
    assert_eq!(r["agree"], "true");
    assert_eq!(num(r, "nonreal"), 2.0);
    let (_, out, _) = call(&["ms-test", "--sequence", "1,1,3,7,13,21,31,43,57", "--n", "8"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["pass"], "false");
    assert_eq!(r["first_failure"], "n=2");
}

#[test]
fn ft_commands_on_a_step_fixture() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# exceptional step, q = 2\nA=1\n0 1\n1/2 2").unwrap();
    let path = f.path().to_str().unwrap();
    let (code, out, err) = call(&["ft-zeros", "--fixture", path, "--alpha", "pi/2", "--k", "4", "--bits", "96", "--abs-tol", "1e-16"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let recs = json_lines(&out);
    assert_eq!(recs[0]["exceptional"], "true");
    assert_eq!(recs[0]["period"], "2");
    let intervals: Vec<_> = recs.iter().filter(|r| r["kind"] == "interval").collect();
    assert_eq!(intervals.len(), 5);
    assert_eq!(intervals[0]["zero"], "none");
    assert!(intervals[1..].iter().all(|r| r["simple"] == "true"));
    let (code, out, _) = call(&["half-plane", "--fixture", path, "--rect", "-20,20,-3,-0.1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json_lines(&out)[0]["count"], "0");
}

#[test]
fn w_report_plot_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("w.svg");
    let (code, out, err) = call(&[
        "w-report", "--density", "linear", "--alpha", "0", "--window", "10", "--points", "21", "--plot", svg.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 21);
    // S(x) = (sin x − x cos x)/x² for φ(t) = t.
    for r in &recs {
        let x = num(r, "x");
        let exact = if x == 0.0 { 0.0 } else { (x.sin() - x * x.cos()) / (x * x) };
        assert!((num(r, "w") - exact).abs() < 1e-14, "x={x}");
    }
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 1);
}

#[test]
fn xi_plot_samples_cross_zero_at_the_located_zeros() {
    let cli = Cli::try_parse_from(["xizero", "xi-zeros", "--window", "60"]).unwrap();
    let rep = run(&cli.command, &RunConfig::default()).unwrap();
    assert_eq!(rep.records.len(), 3);
    let zeros: Vec<f64> = rep
        .records
        .iter()
        .map(|r| r.columns().iter().find(|(k, _)| k == "x").unwrap().1.parse().unwrap())
        .collect();
    let crossings: Vec<f64> = rep
        .samples
        .windows(2)
        .filter(|w| (w[0].1 < 0.0) != (w[1].1 < 0.0))
        .map(|w| 0.5 * (w[0].0 + w[1].0))
        .collect();
    assert_eq!(crossings.len(), zeros.len());
    let step = 60.0 / 240.0;
    for (c, z) in crossings.iter().zip(&zeros) {
        assert!((c - z).abs() <= step, "{c} vs {z}");
    }
    assert!(render_svg(&rep.samples).is_ok());
}

#[test]
fn plot_examples() {
    let svg = render_svg(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert!(svg.contains(r#"points="40.000,360.000 320.000,200.000 600.000,40.000""#), "{svg}");
    assert_eq!(svg, render_svg(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]).unwrap());
    assert!(render_svg(&[]).is_err());
    assert!(render_svg(&[(0.0, 1.0)]).is_err());
    assert!(render_svg(&[(0.0, 1.0), (1.0, f64::NAN)]).is_err());
    let dir = tempfile::tempdir().unwrap();
    assert!(emit_plot(&[], &dir.path().join("x.svg")).is_err());
    assert!(emit_plot(&[(0.0, 1.0), (1.0, 2.0)], &dir.path().join("missing/x.svg")).is_err());
}

#[test]
fn exit_codes() {
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(call(&["phi", "--grid", "0:1"]).0, EXIT_USAGE);
    assert_eq!(call(&["phi", "--bits", "20"]).0, EXIT_USAGE);
    assert_eq!(call(&["xi-zeros", "--window", "250"]).0, EXIT_USAGE);
    assert_eq!(call(&["jensen", "--poly", "1,x"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
    // A rectangle whose top edge touches the real zero at 2π.
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "A=1\n0 1").unwrap();
    let (code, _, err) = call(&["half-plane", "--fixture", f.path().to_str().unwrap(), "--rect", "5.8,6.8,-0.3,-1e-30"]);
    assert_eq!(code, EXIT_NUMERIC, "{err}");
    let v = Failure::from(Error::InequalityViolated { name: "x", t: 0.0, margin: -1.0 });
    assert_eq!(v.code(), EXIT_VIOLATION);
    assert_eq!(Failure::from(Error::NegativeGap { n: 3, gap: -1.0 }).code(), EXIT_VIOLATION);
    assert_eq!(Failure::from(Error::TailNotDecaying { index: 9 }).code(), EXIT_NUMERIC);
    assert_eq!(Failure::from(Error::StripViolation { im: 2.0 }).code(), EXIT_USAGE);
}

#[test]
fn configuration_precedence() {
    let env = Overrides::from_env(Some("256")).unwrap();
    let file = Overrides::parse_file("# run\nbits = 192\nrel-tol=1e-20\nformat=csv\n").unwrap();
    let flags = Overrides { bits: Some(160), ..Overrides::default() };
    let none = Overrides::default();
    assert_eq!(RunConfig::resolve(&env, &none, &none).unwrap().bits, 256);
    let c = RunConfig::resolve(&env, &file, &none).unwrap();
    assert_eq!((c.bits, c.rel_tol, c.output_format), (192, 1e-20, Format::Csv));
    assert_eq!(RunConfig::resolve(&env, &file, &flags).unwrap().bits, 160);
    assert_eq!(RunConfig::default().output_format, Format::Json);
    assert!(Overrides::parse_file("colour=red").is_err());
    assert!(Overrides::parse_file("bits").is_err());
    assert!(Overrides::from_env(Some("lots")).is_err());
    assert!(RunConfig::resolve(&Overrides::from_env(Some("32")).unwrap(), &none, &none).is_err());

    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    writeln!(cfg, "bits=64").unwrap();
    let p = cfg.path().to_str().unwrap();
    let phi = ["phi", "--grid", "1/2:1/2:1"];
    let at = |bits: &str| call(&[&phi[..], &["--bits", bits]].concat()).1;
    let (b64, b128) = (at("64"), at("128"));
    assert_ne!(b64, b128);
    assert_eq!(call_env(&phi, Some("64")).1, b64);
    assert_eq!(call_env(&[&phi[..], &["--config", p]].concat(), Some("128")).1, b64);
    assert_eq!(call_env(&[&phi[..], &["--config", p, "--bits", "128"]].concat(), Some("64")).1, b128);
}

#[test]
fn binary_reads_the_environment() {
    let exe = env!("CARGO_BIN_EXE_xizero");
    let out = Proc::new(exe).args(["phi", "--grid", "1/2:1/2:1"]).env("XIZERO_BITS", "64").output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), call(&["phi", "--grid", "1/2:1/2:1", "--bits", "64"]).1);
    let bad = Proc::new(exe).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn input_parsers() {
    let g = parse_grid("0:1:1/4", 128).unwrap();
    assert_eq!(g.len(), 5);
    assert_eq!(g[4].to_f64(), 1.0);
    assert_eq!(parse_grid("0:0.3:0.1", 128).unwrap().len(), 4);
    assert!(parse_grid("1:0:1", 128).is_err());
    assert!(parse_grid("0:1:0", 128).is_err());
    let pi = std::f64::consts::PI;
    assert!((parse_angle("pi/2", 128).unwrap().to_f64() - pi / 2.0).abs() < 1e-15);
    assert!((parse_angle("3*pi/4", 128).unwrap().to_f64() - 0.75 * pi).abs() < 1e-15);
    assert!((parse_angle("3pi/4", 128).unwrap().to_f64() - 0.75 * pi).abs() < 1e-15);
    assert_eq!(parse_angle("0.5", 128).unwrap().to_f64(), 0.5);
    assert!(parse_angle("pi/0", 128).is_err());
    assert!(parse_angle("pix", 128).is_err());
    let l = parse_list("1, 2 # note\n-3/4\t0.5\n").unwrap();
    assert_eq!(l.len(), 4);
    assert!(parse_list("1,,2").unwrap().len() == 2);
}

#[test]
fn number_formatting() {
    let v = Real::from_f64(1.0 / 3.0, 128);
    assert_eq!(format_value(&v, &Real::from_f64(1e-6, 128)), "3.3333333e-1");
    assert_eq!(format_err(&Real::from_f64(1e-6, 128)), "1.01e-6");
    assert_eq!(format_err(&Real::zero(128)), "0");
    let r = Record::new().label("kind", "a").exact("n", 3).real("v", &v, &Real::zero(128));
    let cols: Vec<String> = r.columns().into_iter().map(|(k, _)| k).collect();
    assert_eq!(cols, ["kind", "n", "n_err", "v", "v_err"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn error_strings_bound_the_error(m in 1.0f64..10.0, e in -40i32..5) {
        let err = Real::from_f64(m * 10f64.powi(e), 128);
        let printed: f64 = format_err(&err).parse().unwrap();
        prop_assert!(printed >= err.to_f64());
    }

    #[test]
    fn svg_is_a_function_of_the_samples(ys in prop::collection::vec(-1e6f64..1e6, 2..40)) {
        let s: Vec<(f64, f64)> = ys.iter().enumerate().map(|(i, &y)| (i as f64, y)).collect();
        let a = render_svg(&s).unwrap();
        prop_assert_eq!(&a, &render_svg(&s).unwrap());
        prop_assert_eq!(a.matches("<polyline").count(), 1);
    }
}
