//! Fuzz the evidential-model document parser and prediction on accepted
//! models.

#![no_main]

use libfuzzer_sys::fuzz_target;

use credal::bmr::{interval_estimate, point_estimate, predict_belief};
use credal::io::{parse_model_json, to_json, ModelDoc};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(model) = parse_model_json(text) {
        let doc = ModelDoc::from_model(&model);
        let json = to_json(&doc).expect("serializing a parsed model");
        parse_model_json(&json).expect("reparsing a serialized model");

        if model.pose_frame().size() <= 32 && model.features().len() <= 4 {
            let features: Vec<f64> = model
                .features()
                .iter()
                .map(|f| f.mixture.components()[0].mean)
                .collect();
            if let Ok(estimate) = predict_belief(&model, &features) {
                if let Ok(point) = point_estimate(&estimate, &model) {
                    assert!(point.iter().all(|v| v.is_finite()));
                    let intervals = interval_estimate(&estimate, &model).expect("intervals");
                    for ((lo, hi), p) in intervals.iter().zip(point.iter()) {
                        assert!(lo <= hi && *lo <= p + 1e-9 && *p <= hi + 1e-9);
                    }
                }
            }
        }
    }
});
