#![no_main]

use libfuzzer_sys::fuzz_target;
use shortedge::{verify_matching, LowStabMatching, MatchConfig, SetFamily};

fuzz_target!(|data: &[u8]| {
    let Ok(m) = LowStabMatching::from_json_slice(data) else { return };
    let again = LowStabMatching::from_json_str(&m.to_json()).expect("round trip");
    assert_eq!(again.pairs, m.pairs);
    assert_eq!(again.kappa, m.kappa);
    // Arbitrary indices must be reported, never panic the verifier.
    let family = SetFamily::from_sets(16, &[&[0, 3], &[5], &[1, 2, 9]]).unwrap();
    let _ = verify_matching(&family, &m, &MatchConfig::default());
});
