#![no_main]

use libfuzzer_sys::fuzz_target;
use pzero::proofsys::{check_proof, Proof, Theory};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(proof) = Proof::from_json(text) else {
        return;
    };
    for theory in [Theory::p(), Theory::p0(), Theory::p_prime_toy()] {
        let _ = check_proof(&proof, &theory);
    }
});
