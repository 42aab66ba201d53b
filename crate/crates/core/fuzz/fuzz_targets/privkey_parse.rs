#![no_main]
use crs_core::protocol::PrivateKey;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(k) = PrivateKey::parse(src) {
        assert_eq!(PrivateKey::parse(&k.to_text()).unwrap(), k);
    }
});
