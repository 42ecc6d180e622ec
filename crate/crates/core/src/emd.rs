//! Classical sifting EMD, used as the comparison baseline.

use crate::boundary::{prepare_extrema, prepare_extrema_inherited, ExtensionPolicy};
use crate::decompose::{validate_run, Decomposition, Method, StopReason};
use crate::error::{Error, Result};
use crate::instrument::record_envelope_pass;
use crate::metrics::max_abs;
use crate::mode::ModeResult;
use crate::pwl::PiecewiseLinear;
use crate::series::{find_extrema, Extremum, ExtremumKind, TimeSeries};
use crate::spline::NaturalSpline;

/// When to stop sifting one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopRule {
    /// Stop once `max |mean envelope| <= v * max |candidate|`.
    MeanAmplitudeThreshold(f64),
    /// Always sift exactly this many times.
    MaxSifts(usize),
    /// Stop once the normalised squared change between consecutive
    /// candidates drops below the value.
    SdThreshold(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnvelopeKind {
    #[default]
    NaturalCubicSpline,
    Linear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SiftConfig {
    pub stop: StopRule,
    pub envelope: EnvelopeKind,
    pub policy: ExtensionPolicy,
    /// Hard cap on sifts per mode.
    pub max_sifts: usize,
}

impl Default for SiftConfig {
    fn default() -> Self {
        Self {
            stop: StopRule::MeanAmplitudeThreshold(0.05),
            envelope: EnvelopeKind::NaturalCubicSpline,
            policy: ExtensionPolicy::Even,
            max_sifts: 64,
        }
    }
}

impl SiftConfig {
    fn validate(&self) -> Result<()> {
        if self.max_sifts == 0 {
            return Err(Error::Config("max_sifts must be at least 1".into()));
        }
        match self.stop {
            StopRule::MeanAmplitudeThreshold(v) | StopRule::SdThreshold(v)
                if !(v.is_finite() && v > 0.0) =>
            {
                Err(Error::Config(format!(
                    "stop threshold must be positive, got {v}"
                )))
            }
            StopRule::MaxSifts(0) => Err(Error::Config("MaxSifts must be at least 1".into())),
            _ => Ok(()),
        }
    }
}

fn rail_knots(extrema: &[Extremum], kind: ExtremumKind) -> (Vec<f64>, Vec<f64>) {
    let mut x = Vec::new();
    let mut y = Vec::new();
    for e in extrema.iter().filter(|e| e.kind == kind) {
        x.push(e.t_start);
        y.push(e.value);
        if e.is_plateau() {
            x.push(e.t_end);
            y.push(e.value);
        }
    }
    (x, y)
}

fn envelope(knots: (Vec<f64>, Vec<f64>), kind: EnvelopeKind, times: &[f64]) -> Result<Vec<f64>> {
    match kind {
        EnvelopeKind::NaturalCubicSpline => {
            Ok(NaturalSpline::new(knots.0, knots.1)?.eval_sorted(times))
        }
        EnvelopeKind::Linear => PiecewiseLinear::from_parts(knots.0, knots.1)?.eval_sorted(times),
    }
}

/// Upper and lower envelope of `series` at its own sample times, or `None`
/// when it has fewer than two interior extrema. Counts as one envelope pass.
pub fn envelopes(
    series: &TimeSeries,
    kind: EnvelopeKind,
    policy: ExtensionPolicy,
) -> Result<Option<(Vec<f64>, Vec<f64>)>> {
    envelopes_with(series, kind, policy, true)
}

fn envelopes_with(
    series: &TimeSeries,
    kind: EnvelopeKind,
    policy: ExtensionPolicy,
    checked: bool,
) -> Result<Option<(Vec<f64>, Vec<f64>)>> {
    let interior = find_extrema(series);
    if interior.len() < 2 {
        return Ok(None);
    }
    let extended = if checked {
        prepare_extrema(series, &interior, policy)?
    } else {
        prepare_extrema_inherited(series, &interior, policy)?
    };
    let upper = envelope(
        rail_knots(&extended, ExtremumKind::Maximum),
        kind,
        series.times(),
    )?;
    let lower = envelope(
        rail_knots(&extended, ExtremumKind::Minimum),
        kind,
        series.times(),
    )?;
    record_envelope_pass();
    Ok(Some((upper, lower)))
}

/// Sift one mode out of `series`, or `None` when it has too few extrema.
pub fn sift_mode(series: &TimeSeries, config: &SiftConfig) -> Result<Option<ModeResult>> {
    sift(series, config, true)
}

/// Only the very first envelope of a decomposition checks the cyclic
/// endpoint condition; sift candidates and residues inherit it.
fn sift(series: &TimeSeries, config: &SiftConfig, checked: bool) -> Result<Option<ModeResult>> {
    config.validate()?;
    let extrema_count = find_extrema(series).len();
    if extrema_count < 2 {
        return Ok(None);
    }
    let mut h = series.values().to_vec();
    let mut passes = 0;
    let mut capped = true;
    let mut last_env = (Vec::new(), Vec::new());
    while passes < config.max_sifts {
        let candidate = series.with_values(h.clone())?;
        let Some((upper, lower)) = envelopes_with(
            &candidate,
            config.envelope,
            config.policy,
            checked && passes == 0,
        )?
        else {
            // the candidate ran out of extrema; keep it as is
            capped = false;
            break;
        };
        passes += 1;
        let mean: Vec<f64> = upper
            .iter()
            .zip(&lower)
            .map(|(u, l)| (u + l) / 2.0)
            .collect();
        let next: Vec<f64> = h.iter().zip(&mean).map(|(x, m)| x - m).collect();
        let done = match config.stop {
            StopRule::MeanAmplitudeThreshold(v) => max_abs(&mean) <= v * max_abs(&next),
            StopRule::MaxSifts(k) => passes >= k,
            StopRule::SdThreshold(v) => {
                let num: f64 = h.iter().zip(&next).map(|(a, b)| (a - b) * (a - b)).sum();
                let den: f64 = h.iter().map(|a| a * a).sum();
                den == 0.0 || num / den < v
            }
        };
        h = next;
        last_env = (upper, lower);
        if done {
            capped = false;
            break;
        }
    }
    let residue = series.values().iter().zip(&h).map(|(x, c)| x - c).collect();
    Ok(Some(ModeResult {
        imf: h,
        residue,
        upper_env: last_env.0,
        lower_env: last_env.1,
        extrema_count,
        envelope_passes: passes,
        sift_capped: capped,
        sawtooth: None,
    }))
}

/// Full EMD decomposition with the same stopping logic as the sawtooth
/// driver.
pub fn emd_decompose(
    series: &TimeSeries,
    config: &SiftConfig,
    max_modes: usize,
) -> Result<Decomposition> {
    config.validate()?;
    validate_run(series, max_modes, 4)?;
    let mut modes: Vec<ModeResult> = Vec::new();
    let mut current = series.clone();
    let mut stop = StopReason::MaxModes;
    while modes.len() < max_modes {
        let Some(mode) = sift(&current, config, modes.is_empty())? else {
            stop = StopReason::TooFewExtrema;
            break;
        };
        if let Some(prev) = modes.last() {
            if mode.extrema_count >= prev.extrema_count {
                stop = StopReason::NoExtremaReduction {
                    previous: prev.extrema_count,
                    current: mode.extrema_count,
                };
                break;
            }
        }
        current = current.with_values(mode.residue.clone())?;
        modes.push(mode);
    }
    Ok(Decomposition {
        input: series.clone(),
        modes,
        final_residue: current.values().to_vec(),
        method: Method::Emd(config.clone()),
        max_modes,
        stop,
    })
}
