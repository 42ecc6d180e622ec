use sawtooth_core::{
    decompose, signals, stream_decompose, ExtensionPolicy, ResidueStrategy, StopReason,
    StreamDecomposer, TimeSeries,
};

#[test]
fn every_mode_matches_batch() {
    let s = signals::random_walk(4000, 21);
    for policy in [
        ExtensionPolicy::Even,
        ExtensionPolicy::Odd,
        ExtensionPolicy::Trend,
    ] {
        for strategy in ResidueStrategy::ALL {
            let batch = decompose(&s, policy, strategy, 6).unwrap();
            let (points, _) = stream_decompose(&s, policy, strategy, 6).unwrap();
            assert_eq!(points.len(), s.len());
            for (m, mode) in batch.modes.iter().enumerate() {
                for (i, p) in points.iter().enumerate() {
                    assert_eq!(p.imfs[m].to_bits(), mode.imf[i].to_bits());
                }
            }
            if matches!(batch.stop, StopReason::TooFewExtrema | StopReason::MaxModes) {
                // extra stages see too few extrema and pass their input through
                for (i, p) in points.iter().enumerate() {
                    let tail: f64 = p.imfs[batch.modes.len()..].iter().sum();
                    assert!((p.residue + tail - batch.final_residue[i]).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn monotone_run_emits_nothing() {
    let mut d =
        StreamDecomposer::new(ExtensionPolicy::Even, ResidueStrategy::EnvelopeMean, 1).unwrap();
    for i in 0..3 {
        assert!(d.push(i as f64, i as f64).unwrap().is_empty());
    }
}

#[test]
fn two_samples_pass_through() {
    let s = TimeSeries::from_values(vec![1.0, 3.0]).unwrap();
    let (points, _) =
        stream_decompose(&s, ExtensionPolicy::Even, ResidueStrategy::EnvelopeMean, 1).unwrap();
    assert_eq!(points.len(), 2);
    assert_eq!(points[0].imfs, [0.0]);
    assert_eq!(points[1].residue, 3.0);
}

#[test]
fn triangle_lag_stays_within_four_extrema() {
    // extrema every 10 samples; four of them span 31 samples
    let s = signals::triangle(2001, 5);
    let mut d =
        StreamDecomposer::new(ExtensionPolicy::Odd, ResidueStrategy::EnvelopeMean, 1).unwrap();
    let mut emitted = 0;
    for (i, (t, x)) in s.iter().enumerate() {
        emitted += d.push(t, x).unwrap().len();
        assert!(
            i + 1 - emitted <= 31,
            "lag {} at sample {i}",
            i + 1 - emitted
        );
    }
    emitted += d.finish().unwrap().len();
    assert_eq!(emitted, s.len());
}
