#![no_main]

use libfuzzer_sys::fuzz_target;
use pzero::proofsys::Theory;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = Theory::from_json(text) {
        let again = Theory::from_json(&t.to_json()).expect("serialized theories parse");
        assert_eq!(again.proper_axioms(), t.proper_axioms());
        assert_eq!(again.mode(), t.mode());
    }
});
