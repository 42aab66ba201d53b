#![no_main]
use crs_core::protocol::SystemParams;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(p) = SystemParams::parse(src) {
        assert_eq!(SystemParams::parse(&p.to_text()).expect("written file reparses"), p);
    }
});
