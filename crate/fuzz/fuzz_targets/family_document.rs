//! Fuzz the partition-family document parser and the lattice operations
//! reachable from the CLI `frames` subcommand.

#![no_main]

use libfuzzer_sys::fuzz_target;

use credal::io::parse_family_json;
use credal::partition::{is_independent, maximal_coarsening, minimal_refinement};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((_base, frames)) = parse_family_json(text) {
        if frames.is_empty() || frames.iter().map(|f| f.size()).product::<usize>() > 1 << 12 {
            return;
        }
        let _ = minimal_refinement(&frames);
        let _ = maximal_coarsening(&frames);
        let _ = is_independent(&frames);
    }
});
