use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bct"))
        .args(args)
        .output()
        .expect("run bct")
}

fn data(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bct-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn det_of_diag_e1_one() {
    let o = bct(&["det", &data("golden/matrix_diag_e1_one.bct")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("det\t(0.5 0 0 0.5)\tnull_cone_2\n"));
}

#[test]
fn spectral_rejects_non_self_adjoint() {
    let o = bct(&["spectral", &data("counterexamples/non_self_adjoint.bct")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotSelfAdjoint"));
}

#[test]
fn spectral_with_general_spec() {
    let h = scratch(
        "h_spec.bct",
        "bct v1\nkind: operator\ndim: 2\n(1 0 0 0) (0 0 0 0)\n(0 0 0 0) (1 0 0 0)\n",
    );
    let o = bct(&[
        "spectral",
        h.to_str().unwrap(),
        "--spec",
        &data("golden/spec_general2.bct"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("verdict\tpass\n"));
}

#[test]
fn evolve_at_initial_time_returns_input() {
    let state = "bct v1\nkind: ket\ndim: 2\nbasis: std\n(0.10000000000000001 -0.5 0.25 3.3333333333333335) (1 0 0 0)\n";
    let psi = scratch("psi.bct", state);
    let o = bct(&[
        "evolve",
        "--hamiltonian",
        &data("golden/operator_hamiltonian2.bct"),
        "--state",
        psi.to_str().unwrap(),
        "--hbar",
        "1",
        "--t0",
        "0.25",
        "--t1",
        "0.25",
        "--samples",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let row = out
        .lines()
        .find(|l| l.starts_with("0.25\t"))
        .expect("table row");
    let atoms: Vec<&str> = row.split('\t').skip(1).take(2).collect();
    assert_eq!(atoms.join(" "), state.lines().last().unwrap());
}

#[test]
fn evolve_table_and_xi() {
    let args = |xi: Option<&str>| {
        let mut v = vec![
            "evolve".to_string(),
            "--hamiltonian".into(),
            data("golden/operator_hamiltonian2.bct"),
            "--state".into(),
            data("golden/ket_std3.bct"),
            "--t1".into(),
            "1".into(),
        ];
        if let Some(x) = xi {
            v.push("--xi".into());
            v.push(x.into());
        }
        v
    };
    // dimension mismatch between a 2x2 Hamiltonian and a 3-ket
    let a = args(None);
    let o = bct(&a.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(o.status.code(), Some(2));

    let psi = scratch(
        "psi2.bct",
        "bct v1\nkind: ket\ndim: 2\nbasis: std\n(1 0 0 0) (0 1 0 0)\n",
    );
    let base = [
        "evolve",
        "--hamiltonian",
        &data("golden/operator_hamiltonian2.bct"),
        "--state",
        psi.to_str().unwrap(),
        "--t0",
        "-1",
        "--t1",
        "2",
        "--samples",
        "5",
    ]
    .map(String::from)
    .to_vec();
    let o = bct(&base.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("t\tpsi0\tpsi1\tnorm-e1\tnorm-e2\n"));
    assert_eq!(
        out.lines()
            .filter(|l| l.starts_with(|c: char| c == '-' || c.is_ascii_digit()))
            .count(),
        5
    );
    assert!(out.contains("residual\tnorm-conservation\t"));

    let mut with_xi = base.clone();
    with_xi.extend(["--xi".to_string(), "(1.5 0 0 0.5)".to_string()]);
    let o = bct(&with_xi.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let mut bad_xi = base.clone();
    bad_xi.extend(["--xi".to_string(), "(0 1 0 0)".to_string()]);
    let o = bct(&bad_xi.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("InvalidXi"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["check".to_string(), data("golden/spec_general3.bct")],
        vec![
            "check".to_string(),
            data("golden/operator_hamiltonian3.bct"),
        ],
        vec![
            "spectral".to_string(),
            data("golden/operator_hamiltonian3.bct"),
        ],
    ] {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = bct(&a);
        let second = bct(&a);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.status.code(), Some(0));
    }
}

#[test]
fn parse_errors_exit_one_with_position() {
    let p = scratch("bad.bct", "bct v1\nkind: scalar\ndim: 1\n(1 0 zz 0)\n");
    let o = bct(&["det", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 4, column 6"));
    let o = bct(&["det", "/nonexistent/file.bct"]);
    assert_eq!(o.status.code(), Some(1));
    let o = bct(&["det", &data("golden/scalar_one.bct")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("KindMismatch"));
    let o = bct(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn inverse_of_singular_names_component() {
    let o = bct(&["inv", &data("golden/matrix_diag_e1_one.bct")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("SingularMatrix: component 2"));
    let o = bct(&["inv", &data("golden/matrix_general3.bct")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("residual\tright-inverse\t"));
    assert!(out.contains("kind: matrix\n"));
}

#[test]
fn gram_schmidt_paths() {
    let o = bct(&["gram-schmidt", &data("counterexamples/null_cone_pivot.bct")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NullConePivot"));
    let o = bct(&[
        "gram-schmidt",
        &data("golden/matrix_general3.bct"),
        "--spec",
        &data("golden/spec_general3.bct"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = bct(&[
        "gram-schmidt",
        &data("golden/matrix_general3.bct"),
        "--spec",
        &data("golden/spec_general2.bct"),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn remaining_subcommands() {
    for (args, marker) in [
        (
            vec!["info", "golden/spec_general2.bct"],
            "closed-under-v\tno",
        ),
        (vec!["info", "golden/scalar_e1.bct"], "class\tnull_cone_2"),
        (
            vec!["idempotent", "golden/scalar_j.bct"],
            "e1\t(1 0)\ne2\t(-1 0)",
        ),
        (
            vec!["idempotent", "golden/matrix_identity3.bct"],
            "residual\treconstruction",
        ),
        (
            vec!["exp", "golden/operator_hamiltonian2.bct"],
            "residual\tspectral-agreement",
        ),
        (
            vec!["exp", "golden/matrix_general3.bct"],
            "residual\tinverse-pair",
        ),
    ] {
        let path = data(args[1]);
        let o = bct(&[args[0], &path]);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).contains(marker), "{args:?}: {}", stdout(&o));
    }
    let o = bct(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let o = bct(&[
        "--eps-null",
        "0.5",
        "det",
        &data("golden/matrix_identity3.bct"),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
