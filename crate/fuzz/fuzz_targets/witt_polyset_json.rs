#![no_main]

use libfuzzer_sys::fuzz_target;
use ncwitt::WittPolySet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = WittPolySet::from_json(text) {
        let again = WittPolySet::from_json(&set.to_json()).expect("serialized set must load");
        assert_eq!(again, set);
    }
});
