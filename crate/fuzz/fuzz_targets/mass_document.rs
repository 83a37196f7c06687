//! Fuzz the mass-function document parser: arbitrary bytes must never
//! panic, and every accepted document must survive a serialize/reparse
//! round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;

use credal::io::{parse_mass_json, to_json, MassFunctionDoc};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(mass) = parse_mass_json(text) {
        let doc = MassFunctionDoc::from_mass(&mass);
        let json = to_json(&doc).expect("serializing a parsed document");
        let back = parse_mass_json(&json).expect("reparsing a serialized document");
        assert!(
            back.approx_eq(&mass, 0.0),
            "round trip changed the mass function"
        );
        // Exercise the sparse calculus on whatever came through.
        let frame = mass.frame().clone();
        let core = mass.core();
        if mass.mode() == credal::Mode::Normalized {
            let _ = mass.belief(&core);
            let _ = mass.plausibility(&frame.empty());
            let _ = mass.classify();
        }
    }
});
