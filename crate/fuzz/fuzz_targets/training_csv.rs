//! Fuzz the training-data CSV parser; accepted data must round-trip and
//! support model fitting at one cluster per feature.

#![no_main]

use libfuzzer_sys::fuzz_target;

use credal::bmr::{learn_model, LearnOptions};
use credal::io::{parse_training_csv, training_to_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(training) = parse_training_csv(text) {
        let back = parse_training_csv(&training_to_csv(&training)).expect("round trip parses");
        assert_eq!(back.poses, training.poses);
        assert_eq!(back.features, training.features);
        if training.len() <= 64 && training.feature_count() <= 4 {
            let ks = vec![1usize; training.feature_count()];
            let _ = learn_model(&training, &ks, &LearnOptions::default());
        }
    }
});
