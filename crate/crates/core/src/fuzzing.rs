//! Entry points for the fuzz targets. Each accepts arbitrary bytes, must not
//! panic, and checks that anything it accepts survives a text round trip.

use crate::export::{parse_artifact, to_text};
use crate::module::{format_weight, parse_weight, Rank};
use crate::qfield::QScalar;
use crate::superalg::{GeneratorSet, SuperMonomial};
use crate::uq::{parse_normal_form, Uq};

const MAX_INPUT: usize = 512;

fn text(data: &[u8], max: usize) -> Option<&str> {
    if data.len() > max {
        return None;
    }
    let s = std::str::from_utf8(data).ok()?;
    // long digit runs mean huge exponents, which only exercise bignum speed
    let mut run = 0;
    for c in s.chars() {
        run = if c.is_ascii_digit() { run + 1 } else { 0 };
        if run > 4 {
            return None;
        }
    }
    Some(s)
}

pub fn parse_qscalar(data: &[u8]) {
    let Some(s) = text(data, MAX_INPUT) else { return };
    if let Ok(x) = s.parse::<QScalar>() {
        let back: QScalar = x.to_string().parse().expect("canonical text must parse");
        assert_eq!(back, x);
    }
}

pub fn parse_weight_text(data: &[u8]) {
    let Some(s) = text(data, MAX_INPUT) else { return };
    let rank = Rank { m: 2, n: 1 };
    if let Ok(w) = parse_weight(rank, s) {
        assert_eq!(parse_weight(rank, &format_weight(rank, &w)).expect("formatted weight must parse"), w);
    }
}

pub fn parse_monomial(data: &[u8]) {
    let Some(s) = text(data, MAX_INPUT) else { return };
    let gens = GeneratorSet::standard(3, 2);
    if let Ok(m) = SuperMonomial::parse(s, &gens) {
        assert_eq!(SuperMonomial::parse(&m.display(&gens), &gens).expect("displayed monomial must parse"), m);
    }
}

pub fn parse_normal_form_text(data: &[u8]) {
    let Some(s) = text(data, 256) else { return };
    let rank = Rank { m: 2, n: 1 };
    if parse_normal_form(rank, s).is_err() {
        return;
    }
    let uq = Uq::with_step_cap(rank, 200_000);
    if let Ok(x) = uq.parse(s) {
        if let Ok(shown) = uq.display(&x) {
            assert_eq!(uq.parse(&shown).expect("displayed normal form must parse"), x);
        }
    }
}

pub fn parse_artifact_text(data: &[u8]) {
    let Some(s) = text(data, 1 << 16) else { return };
    if let Ok(a) = parse_artifact(s) {
        let again = parse_artifact(&to_text(&a.to_json())).expect("exported artifact must parse");
        assert_eq!(again, a);
    }
}
