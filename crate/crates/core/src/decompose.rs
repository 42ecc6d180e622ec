//! Multi-mode decomposition: extract a mode, feed its residue back in.

use crate::boundary::ExtensionPolicy;
use crate::emd::SiftConfig;
use crate::error::{Error, Result};
use crate::metrics::max_abs_diff;
use crate::mode::{extract_mode, ModeResult, ResidueStrategy};
use crate::series::TimeSeries;

pub const DEFAULT_MAX_MODES: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Sawtooth {
        policy: ExtensionPolicy,
        strategy: ResidueStrategy,
    },
    Emd(SiftConfig),
}

/// Why the mode loop ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The running residue has fewer than two interior extrema.
    TooFewExtrema,
    MaxModes,
    /// A mode did not have fewer extrema than the one before it; it was
    /// discarded and its input kept as the final residue.
    NoExtremaReduction {
        previous: usize,
        current: usize,
    },
    /// Under the cyclic policy, the residue no longer has equal end values
    /// and cannot be wrapped; it is kept as the final residue.
    ResidueNotPeriodic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub input: TimeSeries,
    pub modes: Vec<ModeResult>,
    pub final_residue: Vec<f64>,
    pub method: Method,
    pub max_modes: usize,
    pub stop: StopReason,
}

impl Decomposition {
    /// Sum of all IMFs plus the final residue.
    pub fn reconstruct(&self) -> Vec<f64> {
        let mut sum = self.final_residue.clone();
        for mode in &self.modes {
            for (s, c) in sum.iter_mut().zip(&mode.imf) {
                *s += c;
            }
        }
        sum
    }

    pub fn reconstruction_error(&self) -> f64 {
        max_abs_diff(&self.reconstruct(), self.input.values())
    }

    pub fn extrema_counts(&self) -> Vec<usize> {
        self.modes.iter().map(|m| m.extrema_count).collect()
    }

    pub fn envelope_passes(&self) -> usize {
        self.modes.iter().map(|m| m.envelope_passes).sum()
    }
}

pub(crate) fn validate_run(series: &TimeSeries, max_modes: usize, min_len: usize) -> Result<()> {
    if max_modes == 0 {
        return Err(Error::Config("max_modes must be at least 1".into()));
    }
    if series.len() < min_len {
        return Err(Error::InsufficientData {
            what: "samples",
            needed: min_len,
            got: series.len(),
        });
    }
    Ok(())
}

/// Decompose `series` with the sawtooth method.
pub fn decompose(
    series: &TimeSeries,
    policy: ExtensionPolicy,
    strategy: ResidueStrategy,
    max_modes: usize,
) -> Result<Decomposition> {
    validate_run(series, max_modes, 3)?;
    let mut modes: Vec<ModeResult> = Vec::new();
    let mut current = series.clone();
    let mut stop = StopReason::MaxModes;
    while modes.len() < max_modes {
        let mode = match extract_mode(&current, policy, strategy) {
            Ok(Some(mode)) => mode,
            Ok(None) => {
                stop = StopReason::TooFewExtrema;
                break;
            }
            Err(Error::PolicyViolation(_))
                if policy == ExtensionPolicy::Cyclic && !modes.is_empty() =>
            {
                stop = StopReason::ResidueNotPeriodic;
                break;
            }
            Err(e) => return Err(e),
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
        method: Method::Sawtooth { policy, strategy },
        max_modes,
        stop,
    })
}
