#![no_main]

use libfuzzer_sys::fuzz_target;
use lipfree::io::{metric_to_value, parse_metric};
use lipfree::metric::{canonical_graph, from_weighted_graph};

fuzz_target!(|data: &[u8]| {
    if let Ok(input) = std::str::from_utf8(data) {
        if let Ok(m) = parse_metric(input) {
            let again = parse_metric(&metric_to_value(&m).to_string()).expect("written metrics parse");
            assert_eq!(again, m);
            if m.len() <= 8 {
                let back = from_weighted_graph(&canonical_graph(&m)).expect("canonical graphs are connected");
                assert_eq!(back.distances(), m.distances());
            }
        }
    }
});
