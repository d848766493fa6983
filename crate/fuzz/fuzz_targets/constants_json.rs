#![no_main]

use libfuzzer_sys::fuzz_target;
use shortedge::{Constants, MatchConfig, PipelineConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(c) = Constants::from_json_str(text) else { return };
    MatchConfig::from(&c).validate().expect("accepted constants give a valid matching config");
    let p = PipelineConfig::from(&c);
    assert!(p.c4.is_finite() && p.c4 > 0.0);
});
