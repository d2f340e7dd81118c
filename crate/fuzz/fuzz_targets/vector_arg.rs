#![no_main]

use libfuzzer_sys::fuzz_target;
use lipfree::io::parse_vector;
use lipfree::rational::format_rational;

fuzz_target!(|data: &[u8]| {
    if let Ok(input) = std::str::from_utf8(data) {
        if let Ok(v) = parse_vector(input) {
            let text = format!("[{}]", v.iter().map(format_rational).collect::<Vec<_>>().join(","));
            assert_eq!(parse_vector(&text).expect("written vectors parse"), v);
        }
    }
});
