#![no_main]

use kplethory::IntPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = IntPoly::from_json_str(s) {
        let again = IntPoly::from_json(&p.to_json()).expect("serialised polynomial decodes");
        assert_eq!(p, again);
    }
});
