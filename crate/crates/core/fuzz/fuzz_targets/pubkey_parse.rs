#![no_main]
use crs_core::ff::PrimeField;
use crs_core::protocol::PublicKey;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    for p in [677u64, 6007, 4294967291] {
        let f = PrimeField::from_u64(p).unwrap();
        if let Ok(k) = PublicKey::parse(&f, src) {
            assert_eq!(PublicKey::parse(&f, &k.to_text()).unwrap(), k);
        }
    }
});
