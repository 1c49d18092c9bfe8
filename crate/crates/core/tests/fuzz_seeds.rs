use std::fs;
use std::path::PathBuf;

use qbbw::fuzzing;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with("seed_"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(b: &[u8]) -> &str {
    std::str::from_utf8(b).unwrap()
}

#[test]
fn qscalar_seeds() {
    let mut accepted = 0;
    for (_, s) in seeds("parse_qscalar") {
        fuzzing::parse_qscalar(&s);
        accepted += text(&s).parse::<qbbw::QScalar>().is_ok() as usize;
    }
    assert!(accepted >= 3);
}

#[test]
fn weight_seeds() {
    let rank = qbbw::module::Rank::new(2, 1).unwrap();
    let mut accepted = 0;
    for (_, s) in seeds("parse_weight") {
        fuzzing::parse_weight_text(&s);
        accepted += qbbw::module::parse_weight(rank, text(&s)).is_ok() as usize;
    }
    assert!(accepted >= 3);
}

#[test]
fn monomial_seeds() {
    let gens = qbbw::superalg::GeneratorSet::standard(3, 2);
    let mut accepted = 0;
    for (_, s) in seeds("parse_monomial") {
        fuzzing::parse_monomial(&s);
        accepted += qbbw::superalg::SuperMonomial::parse(text(&s), &gens).is_ok() as usize;
    }
    assert!(accepted >= 2);
}

#[test]
fn normal_form_seeds() {
    let rank = qbbw::module::Rank::new(2, 1).unwrap();
    let mut accepted = 0;
    for (_, s) in seeds("parse_normal_form") {
        fuzzing::parse_normal_form_text(&s);
        accepted += qbbw::uq::parse_normal_form(rank, text(&s)).is_ok() as usize;
    }
    assert!(accepted >= 3);
}

#[test]
fn artifact_seeds() {
    for (name, s) in seeds("parse_artifact") {
        fuzzing::parse_artifact_text(&s);
        assert!(qbbw::export::parse_artifact(text(&s)).is_ok(), "{name}");
    }
}

#[test]
fn fuzz_entry_points_survive_junk() {
    let junk: [&[u8]; 8] = [b"", b"\xff\xfe", b"(((", b")/(", b"|||,,", b"{\"format\":1}", b"E[9,9]^99999", b"q^-"];
    for j in junk {
        fuzzing::parse_qscalar(j);
        fuzzing::parse_weight_text(j);
        fuzzing::parse_monomial(j);
        fuzzing::parse_normal_form_text(j);
        fuzzing::parse_artifact_text(j);
    }
}
