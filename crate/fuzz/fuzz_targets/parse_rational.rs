#![no_main]

use libfuzzer_sys::fuzz_target;
use lipfree::rational::{format_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    if let Ok(input) = std::str::from_utf8(data) {
        if let Ok(r) = parse_rational(input) {
            assert_eq!(parse_rational(&format_rational(&r)), Ok(r));
        }
    }
});
