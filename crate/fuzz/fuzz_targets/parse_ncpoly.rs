#![no_main]

use libfuzzer_sys::fuzz_target;
use ncwitt::{Algebra, NcPoly};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let alg = Algebra::new(["X", "Y", "Z"]).unwrap();
    if let Ok(f) = NcPoly::parse(text, &alg) {
        let shown = f.to_string();
        let back = NcPoly::parse(&shown, &alg).expect("display output must parse");
        assert_eq!(back, f, "round trip through {shown:?}");
    }
});
