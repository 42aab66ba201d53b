#![no_main]
use crs_core::ff::PrimeField;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let f = PrimeField::from_u64(6007).unwrap();
    if let Ok(x) = f.from_hex(src) {
        assert_eq!(f.from_hex(&x.to_hex()).unwrap(), x);
    }
    let _ = f.from_decimal(src);
});
