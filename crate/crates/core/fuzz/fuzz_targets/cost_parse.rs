#![no_main]
use crs_core::params::CostModel;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(c) = CostModel::parse(src) {
        assert_eq!(CostModel::parse(&c.to_text()).unwrap(), c);
    }
});
