#![no_main]

use libfuzzer_sys::fuzz_target;
use pzero::syntax::{parse, parse_symbols, parse_term, print};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_term(text);
    let _ = parse_symbols(text);
    // Anything that parses must print to text that parses back to itself.
    if let Ok(phi) = parse(text) {
        let printed = print(&phi);
        assert_eq!(parse(&printed).as_ref(), Ok(&phi), "{printed}");
    }
});
