#![no_main]

use std::collections::BTreeMap;

use libfuzzer_sys::fuzz_target;
use pzero::semantics::{Bounds, Environment, Interpretation, SigmaHierarchy, ValueRepr};
use pzero::Variable;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // An interpretation, optionally followed by a newline and an environment.
    let (interp, env) = text.split_once('\n').unwrap_or((text, ""));
    let Ok(m) = Interpretation::from_json(interp) else {
        return;
    };
    assert_eq!(Interpretation::from_json(&m.to_json()).as_ref(), Ok(&m));
    if m.domain_size() > 6 {
        return;
    }
    let h = SigmaHierarchy::new(&m, Bounds::new(3, 1 << 16));
    if let Ok(reprs) = serde_json::from_str::<BTreeMap<Variable, ValueRepr>>(env) {
        let _ = Environment::from_reprs(&h, &reprs);
    }
});
