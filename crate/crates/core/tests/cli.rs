use std::io::Write;
use std::process::{Command, Output};

fn akizuki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_akizuki")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = akizuki(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn status(args: &[&str]) -> i32 {
    akizuki(args).status.code().expect("exit code")
}

#[test]
fn nf_examples() {
    assert_eq!(
        stdout(&["nf", "w*w", "--prec", "14", "--output", "machine"]),
        "X = -t^6 - 2t^10\nY = 2t^3 + 2t^7\nlevel = 14\n"
    );
    assert_eq!(
        stdout(&["nf", "t^2 + 3*w", "--prec", "5", "--output", "machine"]),
        "X = t^2\nY = 3\nlevel = 5\n"
    );
    assert_eq!(
        stdout(&["nf", "g0", "--level", "12", "--output", "machine"]),
        "X = -t^4 - 2t^8\nY = 2t + 2t^5\nlevel = 12\n"
    );
}

#[test]
fn residue_examples() {
    assert_eq!(stdout(&["res", "pair(0;1)", "gf(0;1;3)"]), "t^-3\n");
    assert_eq!(stdout(&["res", "pair(1;0)", "gf(t;0;2)"]), "t^-1\n");
    assert_eq!(stdout(&["res", "pair(1;1+t)", "gf(t;1;2)"]), "t^-2 + 2t^-1\n");
    assert_eq!(stdout(&["res", "pair(1;1)", "gf(t^2;0;2)"]), "0\n");
}

#[test]
fn duality_examples() {
    assert_eq!(stdout(&["duality", "inverse", "pair(0;1)", "hom(3;1;t)"]), "gf(t;1;3)\n");
    assert_eq!(stdout(&["duality", "forward", "pair(0;1)", "gf(1;0;1)"]), "hom(1;0;1)\n");
    assert_eq!(status(&["duality", "inverse", "pair(0;t)", "hom(3;1;t)"]), 1);
}

#[test]
fn h1_and_hom_commands() {
    assert_eq!(stdout(&["h1", "eq", "gf(1;0;2)", "gf(t;0;3)"]), "true\n");
    assert_eq!(stdout(&["h1", "zero", "gf(t^3;0;3)"]), "true\n");
    assert_eq!(stdout(&["h1", "zero", "gf(0;1;1)"]), "false\n");
    assert_eq!(stdout(&["h1", "act", "t", "gf(1;0;2)"]), "gf(1;0;1)\n");
    assert_eq!(stdout(&["hom-eval", "hom(2;1;0)", "1 + t"]), "t^-2 + t^-1\n");
}

#[test]
fn completion_commands() {
    assert_eq!(stdout(&["complete", "add", "comp(1;t)", "comp(t;1)"]), "comp(1 + t;1 + t)\n");
    assert_eq!(stdout(&["complete", "mul", "comp(1+t;0)", "comp(3t^2;0)"]), "comp(3t^2 + 3t^3;0)\n");
    let w = "t^3 + t^7 + t^15";
    let eps = format!("comp({w};1)");
    assert_eq!(stdout(&["complete", "mul", &eps, &eps]), "comp(0;0)\n");
    assert_eq!(stdout(&["complete", "embed", "w"]), format!("comp({w};0)\n"));
    let general = stdout(&["complete", "mul", "comp(2;t)", "comp(1+t;1)", "--unit", "comp(1;0)"]);
    assert_eq!(general, stdout(&["complete", "mul", "comp(2;t)", "comp(1+t;1)"]));
}

#[test]
fn extract_recovers_pair() {
    assert_eq!(
        stdout(&["extract", "pair(1 + t^40;2t)", "--level", "5", "--output", "machine"]),
        "sigma = 1\nrho = 2t\nlevel = 5\n"
    );
}

#[test]
fn exit_statuses() {
    assert_eq!(status(&["nf", "1/t", "--prec", "4"]), 1);
    assert_eq!(status(&["nf", "w*("]), 2);
    assert_eq!(status(&["nf", "g9"]), 1);
    assert_eq!(status(&["res", "pair(0)", "gf(0;1;3)"]), 2);
    assert_eq!(status(&["nf", "w", "--field", "fp:91"]), 2);
    assert_eq!(status(&["selftest", "bogus"]), 2);
    let err = String::from_utf8(akizuki(&["selftest", "bogus"]).stderr).unwrap();
    assert!(err.contains("unknown suite"), "{err}");
}

#[test]
fn prime_field_and_config_file() {
    assert_eq!(
        stdout(&["nf", "w*w", "--prec", "14", "--field", "fp:101", "--output", "machine"]),
        "X = 100t^6 + 99t^10\nY = 2t^3 + 2t^7\nlevel = 14\n"
    );
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    writeln!(cfg, "# small instance\nfield = fp:7\nprecision = 10\nexponents = 0, 2, 6\nunits = 1, 3, 1")
        .unwrap();
    let path = cfg.path().to_str().unwrap();
    // w = t(z - a_0) = 3t^3 + t^7
    assert_eq!(stdout(&["complete", "embed", "w", "--config", path]), "comp(3t^3 + t^7;0)\n");
    assert_eq!(status(&["nf", "w", "--config", "/nonexistent/akizuki.cfg"]), 2);
}

#[test]
fn selftest_is_deterministic() {
    let args = ["selftest", "completion", "--seed", "1", "--count", "5", "--output", "machine"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    assert!(first.contains("completion.nilpotent_square = pass 5"), "{first}");
    assert!(stdout(&["selftest", "duality", "--seed", "7", "--count", "20"])
        .lines()
        .all(|l| l.starts_with("PASS")));
}
