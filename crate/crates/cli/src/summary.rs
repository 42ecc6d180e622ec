//! JSON reports written by `decompose` and `bench`.

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Summary {
    pub method: &'static str,
    pub extension: &'static str,
    pub strategy: &'static str,
    pub input: String,
    pub input_samples: usize,
    pub mode_count: usize,
    /// Why the mode loop ended; absent for the expansion method.
    pub stop: Option<String>,
    pub modes: Vec<ModeSummary>,
    /// 1-based index of the mode with the largest RMS.
    pub dominant_mode: Option<usize>,
    /// `max |input - (sum of IMFs + residue)|`.
    pub reconstruction_error: f64,
    pub timings_ms: Timings,
    pub expansion: Option<ExpansionSummary>,
    pub sift: Option<SiftSummary>,
}

#[derive(Debug, Serialize)]
pub struct ModeSummary {
    pub index: usize,
    /// Interior extrema of the signal this mode was extracted from.
    pub input_extrema: usize,
    pub imf_extrema: usize,
    pub zero_crossings: usize,
    pub envelope_passes: usize,
    pub rms: f64,
    pub sift_capped: bool,
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub read: f64,
    pub decompose: f64,
    pub write: f64,
}

#[derive(Debug, Serialize)]
pub struct ExpansionSummary {
    pub epsilon: f64,
    pub achieved_error: f64,
    pub converged: bool,
    pub components: usize,
}

#[derive(Debug, Serialize)]
pub struct SiftSummary {
    pub stop_rule: String,
    pub max_sifts: usize,
    pub envelope: &'static str,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub signal: &'static str,
    pub extension: &'static str,
    pub strategy: &'static str,
    pub repeats: usize,
    pub sizes: Vec<BenchSize>,
    pub linear_scaling: Vec<ScalingCheck>,
}

#[derive(Debug, Serialize)]
pub struct BenchSize {
    pub n: usize,
    pub sawtooth: MethodTiming,
    /// Absent above `--emd-max-size`.
    pub emd: Option<MethodTiming>,
    pub emd_threshold_sensitivity: Option<f64>,
    pub sawtooth_repeatable: Option<bool>,
    /// EMD time over sawtooth time.
    pub speedup: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct MethodTiming {
    pub seconds: f64,
    pub modes: usize,
    pub envelope_passes: usize,
    pub passes_per_mode: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct ScalingCheck {
    pub from: usize,
    pub to: usize,
    pub time_ratio: f64,
    /// Acceptable time ratio, scaled from [7, 13] for a tenfold size step.
    pub accepted: [f64; 2],
    pub linear: bool,
}
