#![no_main]

use libfuzzer_sys::fuzz_target;
use lipfree::io::{graph_to_value, parse_graph};
use lipfree::metric::from_weighted_graph;

fuzz_target!(|data: &[u8]| {
    if let Ok(input) = std::str::from_utf8(data) {
        if let Ok(g) = parse_graph(input) {
            let again = parse_graph(&graph_to_value(&g).to_string()).expect("written graphs parse");
            assert_eq!(again, g);
            if g.vertex_count() <= 8 {
                // connected graphs complete to a metric; disconnected ones are rejected
                assert_eq!(from_weighted_graph(&g).is_ok(), g.is_connected());
            }
        }
    }
});
