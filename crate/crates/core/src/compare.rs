//! Side-by-side run of the sawtooth method and the EMD baseline.

use std::time::{Duration, Instant};

use crate::boundary::ExtensionPolicy;
use crate::decompose::{decompose, Decomposition};
use crate::emd::{emd_decompose, envelopes, EnvelopeKind, SiftConfig, StopRule};
use crate::error::Result;
use crate::mode::{Admissibility, ResidueStrategy};
use crate::series::TimeSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct MethodReport {
    pub wall_time: Duration,
    pub envelope_passes: usize,
    pub passes_per_mode: Vec<usize>,
    pub admissibility: Vec<Admissibility>,
    /// Per mode, the largest `|U + L|` of the IMF's own envelopes.
    pub envelope_asymmetry: Vec<f64>,
    pub decomposition: Decomposition,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub sawtooth: MethodReport,
    pub emd: MethodReport,
    /// L2 norm of the change in EMD modes when the stop rule is tightened.
    pub emd_threshold_sensitivity: f64,
    /// Whether a second sawtooth run reproduced the first bit for bit.
    pub sawtooth_repeatable: bool,
}

/// The same configuration with a stricter stop rule.
pub fn tightened(config: &SiftConfig) -> SiftConfig {
    let stop = match config.stop {
        StopRule::MeanAmplitudeThreshold(v) => StopRule::MeanAmplitudeThreshold(v * 0.25),
        StopRule::SdThreshold(v) => StopRule::SdThreshold(v * 0.25),
        StopRule::MaxSifts(k) => StopRule::MaxSifts(k * 2),
    };
    SiftConfig {
        stop,
        ..config.clone()
    }
}

/// L2 distance between two mode sets; missing modes count as zero.
pub fn mode_distance(a: &Decomposition, b: &Decomposition) -> f64 {
    let n = a.input.len();
    let zero = vec![0.0; n];
    let count = a.modes.len().max(b.modes.len());
    let mut total = 0.0;
    for k in 0..count {
        let x = a.modes.get(k).map_or(&zero, |m| &m.imf);
        let y = b.modes.get(k).map_or(&zero, |m| &m.imf);
        total += x.iter().zip(y).map(|(p, q)| (p - q) * (p - q)).sum::<f64>();
    }
    total.sqrt()
}

fn report(decomposition: Decomposition, wall_time: Duration) -> Result<MethodReport> {
    let passes_per_mode: Vec<usize> = decomposition
        .modes
        .iter()
        .map(|m| m.envelope_passes)
        .collect();
    let admissibility = decomposition
        .modes
        .iter()
        .map(|m| m.admissibility())
        .collect();
    let mut envelope_asymmetry = Vec::with_capacity(decomposition.modes.len());
    for m in &decomposition.modes {
        let asym = match m.envelope_asymmetry() {
            Some(a) => a,
            None => {
                let imf = decomposition.input.with_values(m.imf.clone())?;
                match envelopes(
                    &imf,
                    EnvelopeKind::NaturalCubicSpline,
                    ExtensionPolicy::Even,
                )? {
                    Some((u, l)) => u
                        .iter()
                        .zip(&l)
                        .map(|(u, l)| (u + l).abs())
                        .fold(0.0, f64::max),
                    None => 0.0,
                }
            }
        };
        envelope_asymmetry.push(asym);
    }
    Ok(MethodReport {
        wall_time,
        envelope_passes: passes_per_mode.iter().sum(),
        passes_per_mode,
        admissibility,
        envelope_asymmetry,
        decomposition,
    })
}

pub fn compare_methods(
    series: &TimeSeries,
    policy: ExtensionPolicy,
    strategy: ResidueStrategy,
    sift: &SiftConfig,
    max_modes: usize,
) -> Result<ComparisonReport> {
    let start = Instant::now();
    let saw = decompose(series, policy, strategy, max_modes)?;
    let saw_time = start.elapsed();
    let again = decompose(series, policy, strategy, max_modes)?;
    let sawtooth_repeatable = saw.modes.len() == again.modes.len()
        && saw
            .modes
            .iter()
            .zip(&again.modes)
            .all(|(a, b)| bits(&a.imf) == bits(&b.imf))
        && bits(&saw.final_residue) == bits(&again.final_residue);

    let start = Instant::now();
    let emd = emd_decompose(series, sift, max_modes)?;
    let emd_time = start.elapsed();
    let alt = emd_decompose(series, &tightened(sift), max_modes)?;
    let emd_threshold_sensitivity = mode_distance(&emd, &alt);

    Ok(ComparisonReport {
        sawtooth: report(saw, saw_time)?,
        emd: report(emd, emd_time)?,
        emd_threshold_sensitivity,
        sawtooth_repeatable,
    })
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}
