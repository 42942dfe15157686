#![no_main]

use libfuzzer_sys::fuzz_target;
use num_bigint::BigUint;
use pzero::numbering::{decode, encode, GodelCode};

fuzz_target!(|data: &[u8]| {
    // Decimal text first, then the raw bytes as a big-endian number.
    if let Ok(code) = std::str::from_utf8(data).unwrap_or("").parse::<GodelCode>() {
        let _ = decode(&code);
    }
    let Ok(code) = GodelCode::new(BigUint::from_bytes_be(data)) else {
        return;
    };
    if let Ok(decoded) = decode(&code) {
        if let Some(phi) = decoded.formula() {
            let again = encode(phi).expect("decoded formulas re-encode");
            assert_eq!(decode(&again).unwrap().formula(), Some(phi));
        }
    }
});
