//! Time series container and extrema detection.
//!
//! Extrema are found by collapsing runs of equal consecutive values and
//! comparing each run with its neighbouring runs. A run that is higher than
//! both neighbours is a maximum, lower than both a minimum. Runs longer than
//! one sample become plateau extrema spanning the whole run. Runs touching
//! either end of the series are never reported; boundary handling lives in
//! [`crate::boundary`].

use crate::error::{Error, Result};

/// Strictly time-ordered samples `(t, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::LengthMismatch {
                times: times.len(),
                values: values.len(),
            });
        }
        if times.is_empty() {
            return Err(Error::Empty);
        }
        for (index, (&t, &x)) in times.iter().zip(&values).enumerate() {
            if !t.is_finite() || !x.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        for (index, w) in times.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::Ordering {
                    index: index + 1,
                    previous: w[0],
                    current: w[1],
                });
            }
        }
        Ok(Self { times, values })
    }

    /// Uniformly sampled series with `t = 0, 1, 2, ...`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let times = (0..values.len()).map(|i| i as f64).collect();
        Self::new(times, values)
    }

    /// Same time axis, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.times.len() {
            return Err(Error::LengthMismatch {
                times: self.times.len(),
                values: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            times: self.times.clone(),
            values,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn first(&self) -> (f64, f64) {
        (self.times[0], self.values[0])
    }

    pub fn last(&self) -> (f64, f64) {
        let n = self.len() - 1;
        (self.times[n], self.values[n])
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

impl ExtremumKind {
    pub fn opposite(self) -> Self {
        match self {
            Self::Maximum => Self::Minimum,
            Self::Minimum => Self::Maximum,
        }
    }
}

/// A maximum or minimum. Plateaus have `t_start < t_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub kind: ExtremumKind,
    pub t_start: f64,
    pub t_end: f64,
    pub value: f64,
}

impl Extremum {
    pub fn point(kind: ExtremumKind, t: f64, value: f64) -> Self {
        Self {
            kind,
            t_start: t,
            t_end: t,
            value,
        }
    }

    pub fn is_plateau(&self) -> bool {
        self.t_end > self.t_start
    }

    /// Representative time: the point itself, or the middle of a plateau.
    pub fn time(&self) -> f64 {
        if self.is_plateau() {
            0.5 * (self.t_start + self.t_end)
        } else {
            self.t_start
        }
    }

    pub fn is_max(&self) -> bool {
        self.kind == ExtremumKind::Maximum
    }
}

#[derive(Debug, Clone, Copy)]
struct Run {
    value: f64,
    t_start: f64,
    t_end: f64,
}

/// Incremental extrema detector.
///
/// Feed samples in time order; an extremum is reported as soon as the sample
/// that ends its run arrives. [`find_extrema`] and the streaming decomposer
/// share this scanner, so both see identical extrema.
#[derive(Debug, Clone, Default)]
pub struct ExtremaScanner {
    previous_value: Option<f64>,
    run: Option<Run>,
}

impl ExtremaScanner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, t: f64, x: f64) -> Option<Extremum> {
        let Some(run) = self.run.as_mut() else {
            self.run = Some(Run {
                value: x,
                t_start: t,
                t_end: t,
            });
            return None;
        };
        if x == run.value {
            run.t_end = t;
            return None;
        }
        let closed = *run;
        self.run = Some(Run {
            value: x,
            t_start: t,
            t_end: t,
        });
        let before = self.previous_value.replace(closed.value)?;
        let kind = if closed.value > before && closed.value > x {
            ExtremumKind::Maximum
        } else if closed.value < before && closed.value < x {
            ExtremumKind::Minimum
        } else {
            return None;
        };
        Some(Extremum {
            kind,
            t_start: closed.t_start,
            t_end: closed.t_end,
            value: closed.value,
        })
    }
}

/// All interior extrema of `series` in time order. Kinds alternate.
pub fn find_extrema(series: &TimeSeries) -> Vec<Extremum> {
    let mut scanner = ExtremaScanner::new();
    series
        .iter()
        .filter_map(|(t, x)| scanner.push(t, x))
        .collect()
}

/// Number of interior extrema of a raw value sequence (unit time steps).
pub fn count_extrema(values: &[f64]) -> usize {
    let mut scanner = ExtremaScanner::new();
    values
        .iter()
        .enumerate()
        .filter(|(i, &x)| scanner.push(*i as f64, x).is_some())
        .count()
}
