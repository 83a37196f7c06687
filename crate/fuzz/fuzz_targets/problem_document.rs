//! Fuzz the total-belief problem parser, plus the solver on any instance
//! small enough to enumerate.

#![no_main]

use libfuzzer_sys::fuzz_target;

use credal::io::{parse_problem_json, to_json, ProblemDoc};
use credal::total;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(problem) = parse_problem_json(text) {
        let doc = ProblemDoc::from_problem(&problem);
        let json = to_json(&doc).expect("serializing a parsed problem");
        parse_problem_json(&json).expect("reparsing a serialized problem");

        // Only solve instances with tiny column spaces.
        let small = problem.prior().focal_elements().all(|(focal, _)| {
            problem
                .cell_problem(focal)
                .map(|cell| cell.n_max() <= 16)
                .unwrap_or(false)
        });
        if small {
            if let Ok(solution) = total::solve(&problem, 1) {
                let report =
                    total::verify_total(&solution.total, &problem).expect("verification runs");
                assert!(report.all_ok(), "solver output failed its own constraints");
            }
        }
    }
});
