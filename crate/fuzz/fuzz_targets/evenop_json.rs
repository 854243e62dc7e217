#![no_main]

use kplethory::evenops::EvenOp;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = EvenOp::from_json_str(s) {
        let again = EvenOp::from_json(&r.to_json()).expect("serialised operation decodes");
        assert!(r.equiv(&again));
    }
});
