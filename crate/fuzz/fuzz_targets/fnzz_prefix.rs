#![no_main]

use kplethory::setzz::FnZZ;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = s.parse::<FnZZ>() {
        let again: FnZZ = f.to_string().parse().expect("rendered function parses");
        for n in -3..=3 {
            assert_eq!(f.eval_i64(n), again.eval_i64(n));
        }
    }
});
