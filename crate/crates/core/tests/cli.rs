use std::f64::consts::FRAC_1_SQRT_2 as H;
use std::path::Path;
use std::process::Command;

use qpoly::formats::{parse_poly, write_basis, write_poly, write_state};
use qpoly::geometry::{export_mesh, sample_mesh, GridSpec};
use qpoly::mpoly::{basis_function, MultilinearPoly};
use qpoly::numerics::{c, re, Mat4};
use qpoly::qstate::{bell_state, BellIndex, QubitState};
use qpoly::teleport::make_basis;
use tempfile::TempDir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("qpoly").chain(args.iter().copied());
    let code = qpoly::cli::run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn field(stdout: &str, prefix: &str) -> f64 {
    let line = stdout
        .lines()
        .find(|l| l.starts_with(prefix))
        .unwrap_or_else(|| panic!("no {prefix} in {stdout}"));
    line[prefix.len()..].trim().parse().unwrap()
}

const BELL_PROGRAM: &str = "qubits 2\n# Bell pair\nh 0\nslice\ncx 0 1\n";

#[test]
fn separable_reports_bell_as_entangled() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "b1.json",
        &write_state(&bell_state(BellIndex::new(1).unwrap())),
    );
    let o = run(&["separable", &f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!((field(&o.stdout, "|det A| =") - 0.5).abs() < 1e-12);
    assert!(o.stdout.contains("verdict: entangled"));
}

#[test]
fn separable_factors_product_state() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "s.json",
        &write_state(&QubitState::basis(2, 0b01).unwrap()),
    );
    let o = run(&["separable", &f]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("verdict: separable"));
    assert_eq!(field(&o.stdout, "|det A| ="), 0.0);
    assert!(o.stdout.contains("left factor:  (1+0i)|0> + (0+0i)|1>"));
    assert!(o.stdout.contains("right factor: (0+0i)|0> + (1+0i)|1>"));
}

#[test]
fn separable_rejects_bad_files() {
    let dir = TempDir::new().unwrap();
    let truncated = write(
        &dir,
        "t.json",
        r#"{"n": 2, "amplitudes": [[1, 0], [0, 0], [0, 0]]}"#,
    );
    assert_eq!(run(&["separable", &truncated]).code, 2);
    let garbage = write(&dir, "g.json", "not json");
    assert_eq!(run(&["separable", &garbage]).code, 2);
    let three = write(&dir, "3.json", &write_state(&QubitState::zero(3).unwrap()));
    let o = run(&["separable", &three]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.starts_with("error:"));
    let unnormalized = write(
        &dir,
        "u.json",
        r#"{"n": 1, "amplitudes": [[1, 0], [1, 0]]}"#,
    );
    assert_eq!(run(&["separable", &unnormalized]).code, 1);
    assert_eq!(
        run(&["separable", dir.path().join("missing").to_str().unwrap()]).code,
        2
    );
}

#[test]
fn bell_emits_poly_state_and_mesh() {
    let dir = TempDir::new().unwrap();
    let poly = dir.path().join("p1.json");
    let o = run(&[
        "bell",
        "--index",
        "1",
        "--emit",
        "poly",
        "--out",
        poly.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let p = parse_poly(&std::fs::read_to_string(&poly).unwrap()).unwrap();
    assert_eq!(p.coeffs(), &[re(H), re(0.0), re(0.0), re(H)]);

    let mesh = dir.path().join("p4.csv");
    let o = run(&[
        "bell",
        "--index",
        "4",
        "--emit",
        "mesh",
        "--format",
        "csv",
        "--out",
        mesh.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0);
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/P4.csv");
    assert_eq!(std::fs::read(mesh).unwrap(), std::fs::read(golden).unwrap());

    let out = dir.path().join("x");
    assert_eq!(
        run(&[
            "bell",
            "--index",
            "5",
            "--emit",
            "poly",
            "--out",
            out.to_str().unwrap()
        ])
        .code,
        2
    );
    assert_eq!(
        run(&[
            "bell",
            "--index",
            "1",
            "--emit",
            "nope",
            "--out",
            out.to_str().unwrap()
        ])
        .code,
        2
    );
}

fn teleport_rows(stdout: &str) -> Vec<Vec<&str>> {
    stdout
        .lines()
        .skip(2)
        .take(4)
        .map(|l| l.split('\t').collect())
        .collect()
}

#[test]
fn teleport_bell_branches() {
    let o = run(&["teleport", "--gamma", "1,0 0,0", "--bell"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rows = teleport_rows(&o.stdout);
    assert_eq!(rows.len(), 4);
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row[0], (k + 1).to_string());
        assert!((row[2].parse::<f64>().unwrap() - 0.25).abs() < 1e-12);
        assert!(row[3].starts_with("[["));
    }
    assert!(
        field(
            o.stdout.lines().last().unwrap(),
            "state/polynomial agreement: max deviation"
        ) < 1e-12
    );

    let o = run(&["teleport", "--gamma", "0.6,0 0.8,0", "--bell"]);
    let rows = teleport_rows(&o.stdout);
    // branch 2 residual is (γ1, -γ2)/2
    let want = ["(0.3+0i", "-0.4+0i)"];
    let residual: Vec<&str> = rows[1][1].split(", ").collect();
    for (got, want) in residual.iter().zip(want) {
        let (g, w) = (got.trim_matches(['(', ')']), want.trim_matches(['(', ')']));
        let parse = |s: &str| s.trim_end_matches("+0i").parse::<f64>().unwrap();
        assert!((parse(g) - parse(w)).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn teleport_identity_basis_reports_singular_rows() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "t.json",
        &write_basis(&make_basis(Mat4::identity()).unwrap()),
    );
    let o = run(&[
        "teleport",
        "--gamma",
        "0.6,0 0,0.8",
        "--basis",
        &f,
        "--resource-index",
        "1",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rows = teleport_rows(&o.stdout);
    let singular = rows
        .iter()
        .filter(|r| r[3] == "singular" || r[3] == "not invertible")
        .count();
    assert_eq!(singular, 4);
    assert_eq!(rows.iter().filter(|r| r[3] == "singular").count(), 2);
}

#[test]
fn teleport_rejects_bad_input() {
    assert_eq!(run(&["teleport", "--gamma", "1,0 1,0", "--bell"]).code, 1);
    assert_eq!(run(&["teleport", "--gamma", "1,0", "--bell"]).code, 2);
    assert_eq!(run(&["teleport", "--gamma", "1,0 0,0"]).code, 2);
    assert_eq!(
        run(&[
            "teleport",
            "--gamma",
            "1,0 0,0",
            "--bell",
            "--resource-index",
            "0"
        ])
        .code,
        2
    );
}

#[test]
fn circuit_run_bell_program() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bell.qc", BELL_PROGRAM);
    let o = run(&["circuit", "run", "--file", &f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let amps: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(amps.len(), 4);
    assert!(amps[0].starts_with("|00> 0.707106781186547"));
    assert_eq!(amps[1], "|01> 0+0i");
    assert_eq!(amps[2], "|10> 0+0i");
    assert!(amps[3].starts_with("|11> 0.707106781186547"));

    let o = run(&[
        "circuit", "run", "--file", &f, "--shots", "10000", "--seed", "1",
    ]);
    let counts: Vec<&str> = o
        .stdout
        .lines()
        .skip_while(|l| !l.starts_with("counts"))
        .skip(1)
        .collect();
    assert_eq!(counts.len(), 2);
    let n00: usize = counts[0].strip_prefix("00: ").unwrap().parse().unwrap();
    let n11: usize = counts[1].strip_prefix("11: ").unwrap().parse().unwrap();
    assert_eq!(n00 + n11, 10000);
    assert!((n00 as f64 / 1e4 - 0.5).abs() < 0.02);
}

#[test]
fn circuit_trace_writes_slices() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bell.qc", BELL_PROGRAM);
    let trace = dir.path().join("trace");
    let o = run(&[
        "circuit",
        "run",
        "--file",
        &f,
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let read =
        |name: &str| parse_poly(&std::fs::read_to_string(trace.join(name)).unwrap()).unwrap();
    assert_eq!(
        read("slice_0.poly").coeffs(),
        &[re(1.0), re(0.0), re(0.0), re(0.0)]
    );
    let last = read("slice_2.poly");
    let want = [H, 0.0, 0.0, H];
    for (z, w) in last.coeffs().iter().zip(want) {
        assert!((z - re(w)).norm() < 1e-15);
    }
    for k in 0..3 {
        assert!(trace.join(format!("slice_{k}.obj")).exists());
    }
    assert!(!trace.join("slice_3.poly").exists());
}

#[test]
fn circuit_parse_errors_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.qc", "qubits 2\nfrobnicate 0\n");
    let o = run(&["circuit", "run", "--file", &f]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);
    let f = write(&dir, "range.qc", "qubits 2\ncx 0 2\n");
    assert_eq!(run(&["circuit", "run", "--file", &f]).code, 2);
    let f = write(&dir, "ok.qc", BELL_PROGRAM);
    assert_eq!(
        run(&["circuit", "run", "--file", &f, "--shots", "0"]).code,
        2
    );
}

#[test]
fn mesh_defaults_match_library() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f2.json", &write_poly(&basis_function(2).unwrap()));
    let out = dir.path().join("f2.csv");
    let o = run(&[
        "mesh",
        "--poly",
        &f,
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("625 vertices, 1152 triangles"));
    let mesh = sample_mesh(&basis_function(2).unwrap(), &GridSpec::default()).unwrap();
    assert_eq!(
        std::fs::read(&out).unwrap(),
        export_mesh(&mesh, "csv").unwrap()
    );
    let csv = String::from_utf8(std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(csv.lines().next(), Some("x,y,z"));
}

#[test]
fn mesh_p2_corners_and_custom_grid() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "p2.json",
        &write_poly(&qpoly::mpoly::state_to_poly(&bell_state(
            BellIndex::new(2).unwrap(),
        ))),
    );
    let out = dir.path().join("p2.csv");
    let o = run(&[
        "mesh",
        "--poly",
        &f,
        "--min",
        "-2",
        "--max",
        "2",
        "--n",
        "2",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let csv = std::fs::read_to_string(&out).unwrap();
    let z: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    let (low, high) = (-3.0 * H, 5.0 * H);
    for (got, want) in z.iter().zip([low, high, high, low]) {
        assert!((got - want).abs() < 1e-15, "{got} vs {want}");
    }
}

#[test]
fn mesh_rejects_bad_grid_and_complex_polys() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f2.json", &write_poly(&basis_function(2).unwrap()));
    let out = dir.path().join("o.obj");
    let out = out.to_str().unwrap();
    assert_eq!(
        run(&["mesh", "--poly", &f, "--n", "1", "--out", out]).code,
        2
    );
    assert_eq!(
        run(&["mesh", "--poly", &f, "--min", "1", "--max", "1", "--out", out]).code,
        2
    );
    let complex = MultilinearPoly::new(2, vec![c(0.0, 1.0), re(0.0), re(0.0), re(0.0)]).unwrap();
    let f = write(&dir, "c.json", &write_poly(&complex));
    assert_eq!(run(&["mesh", "--poly", &f, "--out", out]).code, 1);
    let three = write(
        &dir,
        "3.json",
        &write_poly(&MultilinearPoly::constant(3, re(1.0)).unwrap()),
    );
    assert_eq!(run(&["mesh", "--poly", &three, "--out", out]).code, 1);
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bell.qc", BELL_PROGRAM);
    let a = run(&[
        "circuit", "run", "--file", &f, "--shots", "777", "--seed", "42",
    ]);
    let b = run(&[
        "circuit", "run", "--file", &f, "--shots", "777", "--seed", "42",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let (m1, m2) = (dir.path().join("a.obj"), dir.path().join("b.obj"));
    for m in [&m1, &m2] {
        assert_eq!(
            run(&[
                "bell",
                "--index",
                "3",
                "--emit",
                "mesh",
                "--out",
                m.to_str().unwrap()
            ])
            .code,
            0
        );
    }
    assert_eq!(std::fs::read(m1).unwrap(), std::fs::read(m2).unwrap());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qpoly");
    let ok = Command::new(bin)
        .args(["teleport", "--gamma", "1,0 0,0", "--bell"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("resource: V_1 (Bell)"));
    let usage = Command::new(bin).arg("bogus").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let domain = Command::new(bin)
        .args(["teleport", "--gamma", "2,0 0,0", "--bell"])
        .output()
        .unwrap();
    assert_eq!(domain.status.code(), Some(1));
}
