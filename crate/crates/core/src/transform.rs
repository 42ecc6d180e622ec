//! Forward and inverse sawtooth transform.
//!
//! Between two consecutive extrema the data is monotone, so each sample can
//! be moved horizontally onto the straight line joining those extrema while
//! keeping its value. The horizontal coordinate it lands on is its `u`.
//! Extrema (and plateau spans) keep `u = t`.

use crate::error::{Error, Result};
use crate::pwl::PiecewiseLinear;
use crate::series::{Extremum, TimeSeries};

/// Slack allowed when a sample value lies marginally outside the value range
/// of its segment, relative to the segment's value span.
const SEGMENT_TOLERANCE: f64 = 1e-9;

/// One monotone piece of the sawtooth, from the end of one extremum to the
/// start of the next.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub t_start: f64,
    pub t_end: f64,
    pub value_start: f64,
    pub value_end: f64,
}

impl Segment {
    fn between(a: &Extremum, b: &Extremum) -> Self {
        Self {
            t_start: a.t_end,
            t_end: b.t_start,
            value_start: a.value,
            value_end: b.value,
        }
    }

    /// Position on the segment's line where the sawtooth takes value `x`.
    fn u_of(&self, x: f64) -> Option<f64> {
        let frac = (x - self.value_start) / (self.value_end - self.value_start);
        if !(-SEGMENT_TOLERANCE..=1.0 + SEGMENT_TOLERANCE).contains(&frac) {
            return None;
        }
        let frac = frac.clamp(0.0, 1.0);
        let u = self.t_start + frac * (self.t_end - self.t_start);
        Some(u.clamp(self.t_start, self.t_end))
    }
}

/// Per-segment parameters plus the `u` coordinate of every sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SawtoothMap {
    pub segments: Vec<Segment>,
    pub sample_u: Vec<f64>,
}

/// The data expressed in sawtooth space.
#[derive(Debug, Clone, PartialEq)]
pub struct SawtoothView {
    /// Straight lines joining the extrema; plateaus contribute both ends.
    pub sawtooth: PiecewiseLinear,
    pub map: SawtoothMap,
    /// Sample values, unchanged by the transform.
    pub samples_s: Vec<f64>,
}

/// Sawtooth through a list of extrema.
pub fn sawtooth_function(extrema: &[Extremum]) -> Result<PiecewiseLinear> {
    let mut points = Vec::with_capacity(extrema.len() + 4);
    for e in extrema {
        points.push((e.t_start, e.value));
        if e.is_plateau() {
            points.push((e.t_end, e.value));
        }
    }
    PiecewiseLinear::new(points)
}

/// Map every sample of `series` into sawtooth space.
///
/// `extended` must be an alternating extrema list whose span covers all
/// samples, typically the output of [`crate::boundary::prepare_extrema`].
pub fn forward_transform(series: &TimeSeries, extended: &[Extremum]) -> Result<SawtoothView> {
    if extended.len() < 2 {
        return Err(Error::InsufficientData {
            what: "extrema",
            needed: 2,
            got: extended.len(),
        });
    }
    let sawtooth = sawtooth_function(extended)?;
    let segments: Vec<Segment> = extended
        .windows(2)
        .map(|w| Segment::between(&w[0], &w[1]))
        .collect();

    let first = extended[0].t_start;
    let last = extended[extended.len() - 1].t_end;
    let mut sample_u = Vec::with_capacity(series.len());
    let mut p = 0;
    for (t, x) in series.iter() {
        if t < first || t > last {
            return Err(Error::Coverage { t });
        }
        while p + 1 < extended.len() && extended[p + 1].t_start <= t {
            p += 1;
        }
        let e = &extended[p];
        if t <= e.t_end {
            if x != e.value {
                return Err(Error::Inconsistent(format!(
                    "sample at t={t} lies on an extremum span but has value {x} instead of {}",
                    e.value
                )));
            }
            sample_u.push(t);
            continue;
        }
        let segment = segments.get(p).ok_or(Error::Coverage { t })?;
        let u = segment.u_of(x).ok_or_else(|| {
            Error::Inconsistent(format!(
                "sample ({t}, {x}) outside the value range of its segment [{}, {}]",
                segment.value_start, segment.value_end
            ))
        })?;
        sample_u.push(u);
    }

    Ok(SawtoothView {
        sawtooth,
        map: SawtoothMap { segments, sample_u },
        samples_s: series.values().to_vec(),
    })
}

/// Evaluate a sawtooth-space function at every sample's `u`.
pub fn map_back(results_in_u: &PiecewiseLinear, map: &SawtoothMap) -> Result<Vec<f64>> {
    results_in_u.eval_sorted(&map.sample_u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{prepare_extrema, ExtensionPolicy};
    use crate::series::{find_extrema, ExtremumKind};
    use std::f64::consts::PI;

    fn view(series: &TimeSeries) -> SawtoothView {
        let interior = find_extrema(series);
        let ext = prepare_extrema(series, &interior, ExtensionPolicy::Even).unwrap();
        forward_transform(series, &ext).unwrap()
    }

    #[test]
    fn triangle_wave_is_a_fixed_point() {
        let x: Vec<f64> = (0..41)
            .map(|i| {
                let p = (i % 8) as f64;
                if p <= 4.0 {
                    p / 4.0
                } else {
                    (8.0 - p) / 4.0
                }
            })
            .collect();
        let s = TimeSeries::from_values(x).unwrap();
        let v = view(&s);
        assert_eq!(v.map.sample_u, s.times());
    }

    #[test]
    fn sine_sample_on_rising_segment() {
        let ext = [
            Extremum::point(ExtremumKind::Minimum, -PI / 2.0, -1.0),
            Extremum::point(ExtremumKind::Maximum, PI / 2.0, 1.0),
        ];
        let s = TimeSeries::new(vec![PI / 6.0], vec![0.5]).unwrap();
        let v = forward_transform(&s, &ext).unwrap();
        assert!((v.map.sample_u[0] - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn values_are_untouched() {
        let x: Vec<f64> = (0..200)
            .map(|i| (i as f64 * 0.37).sin() * 3.0 + 0.01 * i as f64)
            .collect();
        let s = TimeSeries::from_values(x.clone()).unwrap();
        let v = view(&s);
        assert!(v
            .samples_s
            .iter()
            .zip(&x)
            .all(|(a, b)| a.to_bits() == b.to_bits()));
        let back = map_back(&v.sawtooth, &v.map).unwrap();
        for (a, b) in back.iter().zip(&x) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_results_map_to_constant() {
        let s = TimeSeries::from_values(vec![0.0, 1.0, 0.0, 2.0, 1.0, 3.0]).unwrap();
        let v = view(&s);
        let (lo, hi) = v.sawtooth.support();
        let zero = PiecewiseLinear::new([(lo, 0.0), (hi, 0.0)]).unwrap();
        assert!(map_back(&zero, &v.map).unwrap().iter().all(|&z| z == 0.0));
    }

    #[test]
    fn plateau_maps_identically() {
        let s = TimeSeries::from_values(vec![0.0, 1.0, 3.0, 3.0, 3.0, 1.0, 2.0, 0.5, 0.0]).unwrap();
        let v = view(&s);
        assert_eq!(&v.map.sample_u[2..5], &[2.0, 3.0, 4.0]);
        assert!(v.sawtooth.coords().contains(&2.0) && v.sawtooth.coords().contains(&4.0));
    }

    #[test]
    fn interior_flat_run_shares_one_u() {
        let s = TimeSeries::from_values(vec![0.0, 4.0, 2.0, 2.0, 2.0, 0.0, 1.0, 0.5]).unwrap();
        let v = view(&s);
        let u = &v.map.sample_u;
        assert_eq!(u[2], u[3]);
        assert_eq!(u[3], u[4]);
        assert!(u[1] < u[2] && u[4] < u[5]);
    }

    #[test]
    fn uncovered_sample() {
        let ext = [
            Extremum::point(ExtremumKind::Minimum, 0.0, -1.0),
            Extremum::point(ExtremumKind::Maximum, 1.0, 1.0),
        ];
        let s = TimeSeries::new(vec![0.5, 2.0], vec![0.0, 0.5]).unwrap();
        assert!(matches!(forward_transform(&s, &ext), Err(Error::Coverage { t }) if t == 2.0));
    }

    #[test]
    fn non_monotone_segment_is_reported() {
        let ext = [
            Extremum::point(ExtremumKind::Minimum, 0.0, -1.0),
            Extremum::point(ExtremumKind::Maximum, 1.0, 1.0),
        ];
        let s = TimeSeries::new(vec![0.5], vec![3.0]).unwrap();
        assert!(matches!(
            forward_transform(&s, &ext),
            Err(Error::Inconsistent(_))
        ));
    }
}
