#![no_main]

use libfuzzer_sys::fuzz_target;
use ncwitt::{Algebra, FormalXElement};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = FormalXElement::variable_names(text);
    let alg = Algebra::new(["X", "Y", "Z"]).unwrap();
    if let Ok(e) = FormalXElement::parse(text, &alg) {
        let shown = e.to_string();
        let back = FormalXElement::parse(&shown, &alg).expect("display output must parse");
        assert_eq!(back.to_string(), shown);
    }
});
