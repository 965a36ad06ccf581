#![no_main]

use finepoints_core::finring::{parse_polynomial, FiniteRing};
use libfuzzer_sys::fuzz_target;

// First byte picks the coefficient ring ℤ/n, the rest is the polynomial text.
fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let k = FiniteRing::zmod(2 + usize::from(sel % 15)).expect("small modulus");
    let vars = ["x".to_string(), "y".to_string(), "z".to_string()];
    if let Ok(p) = parse_polynomial(text, &vars, &k) {
        let again = parse_polynomial(&p.display(&k), &vars, &k).expect("display parses");
        assert_eq!(again, p);
    }
});
