//! Replay of the worked examples, end to end through the JSON documents.
//!
//! Each case parses its inputs from document text, runs the library, and
//! compares against the known closed-form values at 1e-12.

use credal::combine::{dempster_combine, dempster_combine_all};
use credal::error::Error;
use credal::geometry::credal_vertices;
use credal::io::{parse_mass_json, parse_problem_json};
use credal::total;
use credal::transform::pignistic;

const TOL: f64 = 1e-12;

const DEMPSTER_M1: &str = r#"{
  "frame": ["t1","t2","t3","t4","t5"],
  "masses": [
    {"set": ["t2"], "mass": 0.7},
    {"set": ["t2","t4"], "mass": 0.3}
  ],
  "mode": "normalized"
}"#;

const DEMPSTER_M2: &str = r#"{
  "frame": ["t1","t2","t3","t4","t5"],
  "masses": [
    {"set": ["t2","t3"], "mass": 0.6},
    {"set": ["t4","t5"], "mass": 0.4}
  ],
  "mode": "normalized"
}"#;

const ALIBI_INNOCENT: &str = r#"{
  "frame": ["g","i"],
  "masses": [
    {"set": ["i"], "mass": 0.1},
    {"set": ["g","i"], "mass": 0.9}
  ],
  "mode": "normalized"
}"#;

const ALIBI_GUILTY: &str = r#"{
  "frame": ["g","i"],
  "masses": [
    {"set": ["g"], "mass": 0.9},
    {"set": ["g","i"], "mass": 0.1}
  ],
  "mode": "normalized"
}"#;

const CREDAL_ESTIMATE: &str = r#"{
  "frame": ["q1","q2","q3"],
  "masses": [
    {"set": ["q1","q2"], "mass": 0.3333333333333333},
    {"set": ["q3"], "mass": 0.16666666666666666},
    {"set": ["q1","q2","q3"], "mass": 0.5}
  ],
  "mode": "normalized"
}"#;

fn total_belief_doc(x: f64, z: f64) -> String {
    format!(
        r#"{{
  "coarse_frame": ["w1","w2","w3"],
  "fine_frame": ["a1","a2","b1","c1","c2"],
  "cells": [["a1","a2"],["b1"],["c1","c2"]],
  "prior": [{{"set": ["w1","w2","w3"], "mass": 1.0}}],
  "conditionals": [
    {{"element": "w1", "masses": [{{"set": ["a1"], "mass": {x}}}, {{"set": ["a2"], "mass": {}}}]}},
    {{"element": "w2", "masses": [{{"set": ["b1"], "mass": 1.0}}]}},
    {{"element": "w3", "masses": [{{"set": ["c1"], "mass": {z}}}, {{"set": ["c2"], "mass": {}}}]}}
  ]
}}"#,
        1.0 - x,
        1.0 - z
    )
}

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<(), String>) -> Outcome {
    match run() {
        Ok(()) => Outcome {
            name,
            passed: true,
            detail: String::new(),
        },
        Err(detail) => Outcome {
            name,
            passed: false,
            detail,
        },
    }
}

fn dempster_worked_example() -> Result<(), String> {
    let m1 = parse_mass_json(DEMPSTER_M1).map_err(|e| e.to_string())?;
    let m2 = parse_mass_json(DEMPSTER_M2).map_err(|e| e.to_string())?;
    let (m, report) = dempster_combine(&m1, &m2).map_err(|e| e.to_string())?;
    let f = m.frame().clone();
    let got2 = m.mass(&f.subset_of_labels(["t2"]).map_err(|e| e.to_string())?);
    let got4 = m.mass(&f.subset_of_labels(["t4"]).map_err(|e| e.to_string())?);
    if (got2 - 5.0 / 6.0).abs() > TOL {
        return Err(format!("m(t2) = {got2}, want 5/6"));
    }
    if (got4 - 1.0 / 6.0).abs() > TOL {
        return Err(format!("m(t4) = {got4}, want 1/6"));
    }
    if (report.kappa - 0.28).abs() > TOL {
        return Err(format!("kappa = {}, want 0.28", report.kappa));
    }
    Ok(())
}

fn alibi_example() -> Result<(), String> {
    let b_i = parse_mass_json(ALIBI_INNOCENT).map_err(|e| e.to_string())?;
    let b_g = parse_mass_json(ALIBI_GUILTY).map_err(|e| e.to_string())?;
    let m = dempster_combine_all(&[b_i, b_g]).map_err(|e| e.to_string())?;
    let f = m.frame().clone();
    let innocent = f.subset_of_labels(["i"]).map_err(|e| e.to_string())?;
    let guilty = f.subset_of_labels(["g"]).map_err(|e| e.to_string())?;
    let bi = m.belief(&innocent).map_err(|e| e.to_string())?;
    let bg = m.belief(&guilty).map_err(|e| e.to_string())?;
    if (bi - 1.0 / 91.0).abs() > TOL {
        return Err(format!("b(i) = {bi}, want 1/91"));
    }
    if (bg - 81.0 / 91.0).abs() > TOL {
        return Err(format!("b(g) = {bg}, want 81/91"));
    }
    Ok(())
}

fn credal_vertices_example() -> Result<(), String> {
    let m = parse_mass_json(CREDAL_ESTIMATE).map_err(|e| e.to_string())?;
    let vs = credal_vertices(&m).map_err(|e| e.to_string())?;
    let expected: [[f64; 3]; 6] = [
        [5.0 / 6.0, 0.0, 1.0 / 6.0],
        [0.5, 1.0 / 3.0, 1.0 / 6.0],
        [1.0 / 3.0, 0.5, 1.0 / 6.0],
        [0.0, 5.0 / 6.0, 1.0 / 6.0],
        [0.0, 1.0 / 3.0, 2.0 / 3.0],
        [1.0 / 3.0, 0.0, 2.0 / 3.0],
    ];
    if vs.by_selection.len() != 6 {
        return Err(format!(
            "{} selection vertices, want 6",
            vs.by_selection.len()
        ));
    }
    for want in &expected {
        let hit = vs.by_selection.iter().any(|p| {
            p.values()
                .iter()
                .zip(want.iter())
                .all(|(a, b)| (a - b).abs() <= TOL)
        });
        if !hit {
            return Err(format!("vertex {want:?} missing"));
        }
    }
    let bet = pignistic(&m).map_err(|e| e.to_string())?;
    let avg = vs.permutation_average();
    if !avg.approx_eq(&bet, TOL) {
        return Err(format!(
            "permutation average {:?} differs from pignistic {:?}",
            avg.values(),
            bet.values()
        ));
    }
    Ok(())
}

fn total_belief_example() -> Result<(), String> {
    for (x, z) in [(0.3, 0.4), (0.55, 0.8), (0.2, 0.9), (0.9, 0.15)] {
        let doc = total_belief_doc(x, z);
        let problem = parse_problem_json(&doc).map_err(|e| e.to_string())?;
        let focal = problem.prior().core();
        let cell = problem.cell_problem(&focal).map_err(|e| e.to_string())?;
        // The four closed-form minimal systems.
        let expect: [(Vec<usize>, Vec<f64>); 4] = [
            (vec![0, 1, 2], vec![x + z - 1.0, 1.0 - z, 1.0 - x]),
            (vec![0, 1, 3], vec![z, x - z, 1.0 - x]),
            (vec![0, 2, 3], vec![x, z - x, 1.0 - z]),
            (vec![1, 2, 3], vec![x, z, 1.0 - x - z]),
        ];
        for (selection, want) in &expect {
            let sys = cell.build_system(selection).map_err(|e| e.to_string())?;
            for (g, w) in sys.solution.iter().zip(want.iter()) {
                if (g - w).abs() > 1e-10 {
                    return Err(format!(
                        "system {selection:?} at (x,z) = ({x},{z}): got {:?}, want {want:?}",
                        sys.solution
                    ));
                }
            }
        }
        let solution = total::solve(&problem, 1).map_err(|e| e.to_string())?;
        let report = total::verify_total(&solution.total, &problem).map_err(|e| e.to_string())?;
        if !report.all_ok() {
            return Err(format!(
                "verification failed at (x,z) = ({x},{z}): {report:?}"
            ));
        }
    }
    Ok(())
}

pub fn run() -> credal::Result<()> {
    let outcomes = [
        check("dempster-combination", dempster_worked_example),
        check("alibi-conflict", alibi_example),
        check("credal-vertices", credal_vertices_example),
        check("total-belief-case-study", total_belief_example),
    ];
    let mut failed = 0;
    for o in &outcomes {
        if o.passed {
            println!("example {}: PASS", o.name);
        } else {
            println!("example {}: FAIL ({})", o.name, o.detail);
            failed += 1;
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Error::Degenerate(format!("{failed} example(s) failed")))
    }
}
