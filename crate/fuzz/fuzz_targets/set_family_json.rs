#![no_main]

use libfuzzer_sys::fuzz_target;
use shortedge::set_system::{stab_count, venn_cells};
use shortedge::SetFamily;

fuzz_target!(|data: &[u8]| {
    let Ok(f) = SetFamily::from_json_slice(data) else { return };
    assert_eq!(SetFamily::from_json_str(&f.to_json()).expect("round trip"), f);
    if f.n() >= 2 && f.n() <= 256 {
        let _ = stab_count(&f, 0, f.n() - 1);
    }
    let keys: Vec<_> = f.members().iter().take(8).map(|m| m.key).collect();
    if !keys.is_empty() && f.n() <= 4096 {
        let cells = venn_cells(&f, &keys).expect("keys come from the family");
        assert!(cells <= f.n().max(1));
    }
});
