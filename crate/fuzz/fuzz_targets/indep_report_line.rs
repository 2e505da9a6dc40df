#![no_main]

use libfuzzer_sys::fuzz_target;
use ncwitt::indep::{InstanceRecord, SummaryRecord};

fuzz_target!(|data: &[u8]| {
    if let Ok(rec) = serde_json::from_slice::<InstanceRecord>(data) {
        let text = serde_json::to_string(&rec).unwrap();
        assert_eq!(serde_json::from_str::<InstanceRecord>(&text).unwrap(), rec);
    }
    if let Ok(rec) = serde_json::from_slice::<SummaryRecord>(data) {
        let text = serde_json::to_string(&rec).unwrap();
        assert_eq!(serde_json::from_str::<SummaryRecord>(&text).unwrap(), rec);
    }
});
