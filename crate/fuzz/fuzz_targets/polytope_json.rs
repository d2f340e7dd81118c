#![no_main]

use libfuzzer_sys::fuzz_target;
use lipfree::io::{parse_polytope, PolytopeInput};
use lipfree::polytope::{hull_to_hrep, reduce_to_vertices, vertex_enumeration};

fuzz_target!(|data: &[u8]| {
    if let Ok(input) = std::str::from_utf8(data) {
        match parse_polytope(input) {
            Ok(PolytopeInput::Vertices(p)) if p.dim() <= 4 && p.len() <= 24 => {
                if let Ok(v) = reduce_to_vertices(p.vertices()) {
                    if let Ok(h) = hull_to_hrep(&v) {
                        let mut a = vertex_enumeration(&h).expect("hull is bounded").vertices().to_vec();
                        let mut b = v.vertices().to_vec();
                        a.sort();
                        b.sort();
                        assert_eq!(a, b);
                    }
                }
            }
            Ok(PolytopeInput::Halfspaces(h)) if h.dim() <= 4 && h.len() <= 24 => {
                let _ = vertex_enumeration(&h);
            }
            _ => {}
        }
    }
});
