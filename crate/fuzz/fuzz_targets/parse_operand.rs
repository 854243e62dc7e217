#![no_main]

use kplethory::setzz::Window;
use kplethory::syntax::{eval_composite, parse_operand};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let w = Window::new(4).unwrap();
    if let Ok(op) = parse_operand(s, 4, w) {
        // Rendering must not panic.
        let _ = op.to_string();
    }
    let _ = eval_composite(s, 4, w);
});
