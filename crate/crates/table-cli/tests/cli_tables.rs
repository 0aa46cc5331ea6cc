use std::path::PathBuf;
use std::process::Command;

use ga_core::Signature;
use idempotent_factory::Mode;
use table_cli::{build_table, check_fixture, load_fixture, render, Format, GoldenFixture, SpinorTable};

fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q).unwrap()
}

fn fixture(sub: &str, p: usize, q: usize) -> GoldenFixture {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(sub).join(format!("cl_{p}_{q}.toml"));
    load_fixture(&path).unwrap()
}

fn spintab(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_spintab")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn json_round_trips() {
    for (p, q, mode) in
        [(1, 0, Mode::Real), (2, 2, Mode::Real), (0, 3, Mode::Real), (2, 1, Mode::Complex), (3, 0, Mode::Complex)]
    {
        let t = build_table(sig(p, q), mode).unwrap();
        let back: SpinorTable = serde_json::from_str(&render(&t, Format::Json).unwrap()).unwrap();
        assert_eq!(back, t, "Cl({p},{q}) {mode}");
    }
}

#[test]
fn builds_are_deterministic() {
    for mode in [Mode::Real, Mode::Complex] {
        let a = render(&build_table(sig(3, 2), mode).unwrap(), Format::Text).unwrap();
        let b = render(&build_table(sig(3, 2), mode).unwrap(), Format::Text).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn cl22_matches_without_relaxation() {
    let fx = fixture("real", 2, 2);
    assert_eq!(fx.equivalence, Default::default());
    let report = check_fixture(&fx).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.items.len(), 8);
}

#[test]
fn cl40_norm_is_one_half_over_eight_symbols() {
    let t = build_table(sig(4, 0), Mode::Real).unwrap();
    assert_eq!(t.items.norm.rhs_normalization, "2^-1");
    assert!(
        t.items.norm.text.ends_with("= 1/2(s1² + s2² + s3² + s4² + s5² + s6² + s7² + s8²)"),
        "{}",
        t.items.norm.text
    );
    let report = check_fixture(&fixture("real", 4, 0)).unwrap();
    assert!(report.item("item 7").unwrap().pass, "{report}");
}

#[test]
fn text_rows() {
    let t = render(&build_table(sig(1, 0), Mode::Real).unwrap(), Format::Text).unwrap();
    assert!(t.starts_with("Cl(1,0) real: ²R(1)\n"), "{t}");
    assert!(t.contains("1.  P1 = 1/2(1 + e1)"), "{t}");
    let t = build_table(sig(5, 0), Mode::Real).unwrap();
    assert_eq!(t.classification, "²H(2)");
}

#[test]
fn json_generator_entries() {
    let t = build_table(sig(2, 2), Mode::Real).unwrap();
    let v: serde_json::Value = serde_json::from_str(&render(&t, Format::Json).unwrap()).unwrap();
    let maps = v["items"]["4"].as_array().unwrap();
    assert_eq!(maps.len(), 4);
    for m in maps {
        assert_eq!(m["dim"], 4);
        assert_eq!(m["entries"].as_array().unwrap().len(), 4);
    }
    assert_eq!(maps[0]["text"], "E11 - E22 - E33 + E44");
}

#[test]
fn latex_uses_macros() {
    let t = render(&build_table(sig(2, 2), Mode::Real).unwrap(), Format::Latex).unwrap();
    assert!(t.contains("\\begin{tabular}"));
    assert!(t.contains("\\e{1} \\mapsto"));
    assert!(t.contains("\\reverse("));
}

#[test]
fn corrupted_generator_fails_only_item4() {
    let mut fx = fixture("real", 2, 2);
    fx.item4.matrices[0] = "-E11 + E22 - E33 + E44".into();
    let report = check_fixture(&fx).unwrap();
    let failed: Vec<&str> = report.failures().map(|i| i.item.as_str()).collect();
    assert_eq!(failed, ["item 4"], "{report}");
}

#[test]
fn wrong_normalization_fails_item7() {
    let mut fx = fixture("real", 2, 2);
    fx.item7.rhs = "1/8(s1^2+s2^2+s3^2+s4^2)".into();
    let report = check_fixture(&fx).unwrap();
    let failed: Vec<&str> = report.failures().map(|i| i.item.as_str()).collect();
    assert_eq!(failed, ["item 7"], "{report}");
}

#[test]
fn cli_exit_codes() {
    assert_eq!(spintab(&["table", "--signature", "2,2", "--format", ""]).0, 2);
    assert_eq!(spintab(&["table", "--signature", "2;2"]).0, 2);
    assert_eq!(spintab(&["orderings", "--n", "40"]).0, 2);
    let (code, out) = spintab(&["verify", "--all"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("52/52 fixtures pass\n"));
    let (code, out) = spintab(&["verify", "--signature", "1,2", "--mode", "complex"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn cli_reports_a_failing_fixture() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("bad-fixtures/real");
    std::fs::create_dir_all(&dir).unwrap();
    let mut fx = fixture("real", 2, 2);
    fx.classification = "R(2)".into();
    std::fs::write(dir.join("cl_2_2.toml"), toml::to_string(&fx).unwrap()).unwrap();
    let root = dir.parent().unwrap().to_str().unwrap();
    let (code, out) = spintab(&["verify", "--signature", "2,2", "--fixtures", root]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL classification"), "{out}");
}

#[test]
fn cli_orderings() {
    let (code, out) = spintab(&["orderings", "--n", "3", "--kind", "Lex"]);
    assert_eq!(code, 0);
    assert_eq!(out, "Lex: e123 > e12 > e13 > e1 > e23 > e2 > e3 > 1\n");
    let (code, _) = spintab(&["orderings", "--n", "3", "--kind", "Sideways"]);
    assert_eq!(code, 2);
}

#[test]
fn cli_table_text() {
    let (code, out) = spintab(&["table", "--signature", "2,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("e4 -> -E13 + E24 + E31 - E42"), "{out}");
}
