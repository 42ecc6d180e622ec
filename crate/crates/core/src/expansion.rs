//! Expansion of a series into a sum of sawtooth functions.
//!
//! Each component is the piecewise-linear function through the end samples
//! and every extremum of what is left; it is subtracted and the process
//! repeats until the remainder is below the requested accuracy.

use crate::boundary::ExtensionPolicy;
use crate::error::{Error, Result};
use crate::metrics::max_abs_diff;
use crate::mode::{extract_mode, ModeResult, ResidueStrategy};
use crate::pwl::PiecewiseLinear;
use crate::series::{find_extrema, TimeSeries};

pub const DEFAULT_MAX_COMPONENTS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct SawtoothExpansion {
    pub components: Vec<PiecewiseLinear>,
    /// `max |x - sum of components|` over the samples.
    pub achieved_error: f64,
    pub epsilon: f64,
    pub converged: bool,
}

impl SawtoothExpansion {
    /// Sum of the components at each sample time.
    pub fn sum_at(&self, times: &[f64]) -> Result<Vec<f64>> {
        let mut sum = vec![0.0; times.len()];
        for c in &self.components {
            for (s, v) in sum.iter_mut().zip(c.eval_sorted(times)?) {
                *s += v;
            }
        }
        Ok(sum)
    }
}

/// Piecewise-linear function through the first sample, every interior
/// extremum (plateaus by both ends) and the last sample.
pub fn sawtooth_of(series: &TimeSeries) -> Result<PiecewiseLinear> {
    let mut points = vec![series.first()];
    for e in find_extrema(series) {
        points.push((e.t_start, e.value));
        if e.is_plateau() {
            points.push((e.t_end, e.value));
        }
    }
    points.push(series.last());
    PiecewiseLinear::new(points)
}

pub fn expand(
    series: &TimeSeries,
    epsilon: f64,
    max_components: usize,
) -> Result<SawtoothExpansion> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Config(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if max_components == 0 {
        return Err(Error::Config("max_components must be at least 1".into()));
    }
    if series.len() < 2 {
        return Err(Error::InsufficientData {
            what: "samples",
            needed: 2,
            got: series.len(),
        });
    }
    let x = series.values();
    let mut sum = vec![0.0; x.len()];
    let mut components = Vec::new();
    let mut error = max_abs_diff(x, &sum);
    while error >= epsilon && components.len() < max_components {
        let remainder: Vec<f64> = x.iter().zip(&sum).map(|(a, b)| a - b).collect();
        let component = sawtooth_of(&series.with_values(remainder)?)?;
        for (s, v) in sum.iter_mut().zip(component.eval_sorted(series.times())?) {
            *s += v;
        }
        components.push(component);
        error = max_abs_diff(x, &sum);
    }
    Ok(SawtoothExpansion {
        components,
        achieved_error: error,
        epsilon,
        converged: error < epsilon,
    })
}

/// Extract one mode from every expansion component and add them up.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionModes {
    pub imf: Vec<f64>,
    pub residue: Vec<f64>,
    pub envelope_passes: usize,
    /// Per component; `None` when the component had too few extrema and
    /// went entirely into the residue.
    pub components: Vec<Option<ModeResult>>,
}

pub fn expansion_decompose(
    series: &TimeSeries,
    expansion: &SawtoothExpansion,
    strategy: ResidueStrategy,
) -> Result<ExpansionModes> {
    let n = series.len();
    let mut imf = vec![0.0; n];
    let mut residue = vec![0.0; n];
    let mut passes = 0;
    let mut components = Vec::with_capacity(expansion.components.len());
    for c in &expansion.components {
        let sampled = series.with_values(c.eval_sorted(series.times())?)?;
        let mode = extract_mode(&sampled, ExtensionPolicy::Even, strategy)?;
        match &mode {
            Some(mode) => {
                passes += mode.envelope_passes;
                for i in 0..n {
                    imf[i] += mode.imf[i];
                    residue[i] += mode.residue[i];
                }
            }
            None => {
                for (r, v) in residue.iter_mut().zip(sampled.values()) {
                    *r += v;
                }
            }
        }
        components.push(mode);
    }
    Ok(ExpansionModes {
        imf,
        residue,
        envelope_passes: passes,
        components,
    })
}
