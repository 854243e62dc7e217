#![no_main]

use kplethory::IntPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<IntPoly>() {
        let again: IntPoly = p.to_string().parse().expect("rendered polynomial parses");
        assert_eq!(p, again);
    }
});
