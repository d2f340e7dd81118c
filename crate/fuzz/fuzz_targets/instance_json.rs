#![no_main]

use libfuzzer_sys::fuzz_target;
use lipfree::io::parse_instance;

fuzz_target!(|data: &[u8]| {
    if let Ok(input) = std::str::from_utf8(data) {
        if let Ok(m) = parse_instance(input) {
            assert!(m.root() < m.len());
            if (1..=4).contains(&m.dim()) {
                let r = lipfree::volume_product(&m);
                assert_eq!(r.product, &r.vol_free * &r.vol_lip);
            }
        }
    }
});
