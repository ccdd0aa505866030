use std::process::{Command, Output};

use frobskein_core::frobenius::genus_term;
use frobskein_core::gmatrix::g_matrix_recursive;
use frobskein_core::skein2::normalize_element;
use frobskein_core::{AElement, FrobSystem, GMatrix, NormalForm, SkeinElement};
use serde_json::Value;

fn frobskein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobskein"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = frobskein(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.push("--json");
    serde_json::from_str(&stdout(&args)).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(
        stdout(&["dual-basis", "--n", "3"]),
        "{(x^2, 1), (x, x - a1), (1, x^2 - a1*x - a2)}\n"
    );
    assert_eq!(
        stdout(&["surface-eval", "--n", "2", "--genus", "1", "--mark", "1"]),
        "2\n"
    );
    assert_eq!(
        stdout(&["skein-normalize", "--config", "d,p"]),
        "(1/2*a1)·X\n"
    );
}

#[test]
fn text_outputs() {
    assert_eq!(
        stdout(&["dual-basis", "--n", "2"]),
        "{(x, 1), (1, x - a1)}\n"
    );
    assert_eq!(stdout(&["genus-term", "--n", "2"]), "2*x - a1\n");
    assert_eq!(stdout(&["gmatrix", "--n", "2"]), "-a1  2*a2\n2    a1\n");
    assert_eq!(
        stdout(&["gmatrix", "--n", "2", "--symmetric"]),
        "m(1^1)  -2*m(1^2)\n2       -m(1^1)\n"
    );
    assert_eq!(
        stdout(&["gmatrix", "--n", "2", "--power", "2"]),
        "a1^2 + 4*a2  0\n0            a1^2 + 4*a2\n"
    );
    assert_eq!(
        stdout(&["surface-eval", "--n", "2", "--genus", "2", "--mark", "x"]),
        "a1^2 + 4*a2\n"
    );
    assert_eq!(
        stdout(&["skein-normalize", "--config", "d,d"]),
        "1 + (1/4*a1^2)·X\n"
    );
    assert_eq!(
        stdout(&["skein-normalize", "--config", "[p,p,p,p] + [d,d,d]"]),
        "X^2 + e\n"
    );
    assert_eq!(
        stdout(&["roots-check", "--multiplicities", "2,2"]),
        "g^2 = 0: true\ncrt map: true\n"
    );
    assert_eq!(
        stdout(&["roots-check", "--multiplicities", "2,1"]),
        "g^2 = 0: false\ncrt map: true\n"
    );
    assert_eq!(
        stdout(&["symcheck", "--n", "3", "--power", "2", "--b", "1"]),
        "p_2 e_1 = m(3^1) + m(2^1 1^1): true\n"
    );
    assert_eq!(
        stdout(&["lambda-f", "--multiplicities", "2,3", "--root", "2"]),
        "true\n"
    );
    assert_eq!(
        stdout(&[
            "lambda-f",
            "--multiplicities",
            "2,2",
            "--root",
            "2",
            "--power",
            "2"
        ]),
        "alpha2^2\n"
    );
    assert!(stdout(&["witness", "--genus", "1"]).ends_with("rhs = 4 t_dot [p]: true\n"));
    assert!(stdout(&["product-system", "--multiplicities", "2,2"]).ends_with("(g')^2 = 0: true\n"));
}

#[test]
fn json_round_trips() {
    let sys = FrobSystem::universal(3).unwrap();
    let g = AElement::from_json(&json(&["genus-term", "--n", "3"])).unwrap();
    assert_eq!(g, genus_term(&sys).unwrap());

    let m = GMatrix::from_json(&json(&["gmatrix", "--n", "4"])).unwrap();
    assert_eq!(m, g_matrix_recursive(4).unwrap());

    let src = "2 * [d,d,p] - a1 * [d,p,p,p] + [p,p]";
    let nf = NormalForm::from_json(&json(&["skein-normalize", "--config", src])).unwrap();
    assert_eq!(
        nf,
        normalize_element(&SkeinElement::parse(src).unwrap()).unwrap()
    );

    let pairs = json(&["dual-basis", "--n", "2"]);
    assert_eq!(pairs, serde_json::json!([["x", "1"], ["1", "x - a1"]]));
    assert_eq!(
        json(&["surface-eval", "--n", "3", "--genus", "1"])["value"],
        "3"
    );
}

#[test]
fn exit_codes() {
    let domain = frobskein(&["genus-term", "--n", "1"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).starts_with("RankTooSmall"));

    let repeated = frobskein(&["lambda-f", "--multiplicities", "1,2"]);
    assert_eq!(repeated.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&repeated.stderr).starts_with("RootNotRepeated"));

    let parse = frobskein(&["skein-normalize", "--config", "d,q"]);
    assert_eq!(parse.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&parse.stderr).starts_with("ParseError"));

    assert_eq!(frobskein(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(frobskein(&["gmatrix", "--n", "40"]).status.code(), Some(2));
    assert_eq!(
        frobskein(&["roots-check", "--multiplicities", "2,x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(frobskein(&["dual-basis"]).status.code(), Some(2));
}
