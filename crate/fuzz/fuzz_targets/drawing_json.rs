#![no_main]

use libfuzzer_sys::fuzz_target;
use shortedge::drawing::validate_simple;
use shortedge::Drawing;

fuzz_target!(|data: &[u8]| {
    let Ok(d) = Drawing::from_json_slice(data) else { return };
    // Parsed drawings must survive validation and re-serialize losslessly.
    let violations = validate_simple(&d);
    let again = Drawing::from_json_str(&d.to_json()).expect("round trip");
    assert_eq!(again.to_json(), d.to_json());
    if violations.is_empty() && d.vertex_count() <= 12 {
        let _ = shortedge::oracle::brute_min_crossing_edge(&d);
    }
});
