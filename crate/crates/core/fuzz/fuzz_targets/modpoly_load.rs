#![no_main]
use crs_core::modpolydb::ModularPolynomial;
use libfuzzer_sys::fuzz_target;

// first byte picks the level, the rest is the table
fuzz_target!(|data: &[u8]| {
    let Some((&l, rest)) = data.split_first() else { return };
    let level = [2u64, 3, 5, 7, 11, 13][l as usize % 6];
    let Ok(src) = std::str::from_utf8(rest) else { return };
    if let Ok(phi) = ModularPolynomial::parse(level, src) {
        let again = ModularPolynomial::parse(level, &phi.serialize()).expect("serialized table reparses");
        assert_eq!(again.coeffs(), phi.coeffs());
    }
});
