#![no_main]

use libfuzzer_sys::fuzz_target;
use num_bigint::BigUint;
use pzero::numbering::{decode_sequence, encode_sequence, GodelCode};

fuzz_target!(|data: &[u8]| {
    let Ok(code) = GodelCode::new(BigUint::from_bytes_be(data)) else {
        return;
    };
    if let Ok(members) = decode_sequence(&code) {
        if !members.is_empty() {
            assert_eq!(encode_sequence(&members).unwrap(), code);
        }
    }
});
