#![no_main]

use libfuzzer_sys::fuzz_target;
use ncwitt::ncpoly::{parse_poly_list, variable_names};
use ncwitt::{Algebra, NcPoly};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(names) = variable_names(text) else {
        return;
    };
    let Ok(alg) = Algebra::new(if names.is_empty() { vec!["X".to_string()] } else { names }) else {
        return;
    };
    if let Ok(polys) = parse_poly_list(text, &alg) {
        assert!(!polys.is_empty());
        let joined: Vec<String> = polys.iter().map(NcPoly::to_string).collect();
        assert_eq!(parse_poly_list(&joined.join(";"), &alg).unwrap(), polys);
    }
});
