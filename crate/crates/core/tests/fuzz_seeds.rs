//! Replays the checked-in fuzz corpus through the same entry points.

use std::path::PathBuf;

use finepoints_core::defs::parse_definitions;
use finepoints_core::finring::{parse_polynomial, FiniteRing};

fn corpus(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut seeds: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| {
            let bytes = std::fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    seeds.sort();
    assert!(!seeds.is_empty());
    seeds
}

#[test]
fn polynomial_seeds_round_trip() {
    let vars = ["x".to_string(), "y".to_string(), "z".to_string()];
    for (path, data) in corpus("parse_polynomial") {
        let (&sel, rest) = data.split_first().unwrap();
        let k = FiniteRing::zmod(2 + usize::from(sel % 15)).unwrap();
        let text = std::str::from_utf8(rest).unwrap();
        if text.is_empty() {
            assert!(parse_polynomial(text, &vars, &k).is_err());
            continue;
        }
        let p =
            parse_polynomial(text, &vars, &k).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(parse_polynomial(&p.display(&k), &vars, &k).unwrap(), p);
    }
}

#[test]
fn definition_seeds_parse() {
    for (path, data) in corpus("parse_definitions") {
        let text = std::str::from_utf8(&data).unwrap();
        parse_definitions(text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}
