//! Envelopes, residue and IMF of a single mode.
//!
//! Everything is built in sawtooth space where the data is piecewise linear,
//! so the envelopes, their mean and the IMF are exact piecewise-linear
//! functions with breakpoints only at extrema. The per-sample results are
//! obtained by evaluating those functions at each sample's `u`.

use crate::boundary::{prepare_extrema, ExtensionPolicy};
use crate::error::{Error, Result};
use crate::instrument::record_envelope_pass;
use crate::metrics::zero_crossings;
use crate::pwl::PiecewiseLinear;
use crate::series::{count_extrema, find_extrema, Extremum, ExtremumKind, TimeSeries};
use crate::transform::{forward_transform, map_back, SawtoothView};

/// How the slow component is derived from the sawtooth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ResidueStrategy {
    /// Mean of the upper and lower envelope.
    #[default]
    EnvelopeMean,
    /// Line through the midpoints of consecutive sawtooth segments.
    ///
    /// Interpretation: one vertex per rising or falling segment, at the
    /// average of its two end points. Plateau spans are not segments.
    SegmentMidpoints,
    /// Line through the centroids of triangles formed by each three
    /// consecutive extrema.
    ///
    /// Interpretation: plateaus enter as their midpoint. The outermost
    /// pieces are extended linearly to the ends of the sawtooth.
    TriangleCentroids,
}

impl ResidueStrategy {
    pub const ALL: [ResidueStrategy; 3] = [
        Self::EnvelopeMean,
        Self::SegmentMidpoints,
        Self::TriangleCentroids,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::EnvelopeMean => "mean",
            Self::SegmentMidpoints => "midpoint",
            Self::TriangleCentroids => "centroid",
        }
    }
}

impl std::str::FromStr for ResidueStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown residue strategy `{s}`")))
    }
}

/// Sawtooth-space intermediates of one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SawtoothArtifacts {
    pub extended_extrema: Vec<Extremum>,
    pub view: SawtoothView,
    pub upper: PiecewiseLinear,
    pub lower: PiecewiseLinear,
    pub residue: PiecewiseLinear,
    pub imf: PiecewiseLinear,
}

/// One extracted mode, per sample in data space.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeResult {
    pub imf: Vec<f64>,
    pub residue: Vec<f64>,
    pub upper_env: Vec<f64>,
    pub lower_env: Vec<f64>,
    /// Interior extrema of this mode's input.
    pub extrema_count: usize,
    /// Envelope constructions spent on this mode.
    pub envelope_passes: usize,
    /// Set when a sifting loop stopped at its cap rather than its criterion.
    pub sift_capped: bool,
    /// Present for the sawtooth method.
    pub sawtooth: Option<SawtoothArtifacts>,
}

/// IMF admissibility counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Admissibility {
    pub zero_crossings: usize,
    pub extrema: usize,
}

impl Admissibility {
    pub fn of(imf: &[f64]) -> Self {
        Self {
            zero_crossings: zero_crossings(imf),
            extrema: count_extrema(imf),
        }
    }

    /// Zero crossings and extrema differ by at most one.
    pub fn holds(&self) -> bool {
        self.zero_crossings.abs_diff(self.extrema) <= 1
    }
}

impl ModeResult {
    pub fn admissibility(&self) -> Admissibility {
        Admissibility::of(&self.imf)
    }

    /// Largest `|(U - r) + (L - r)|` over the sawtooth-space breakpoints,
    /// zero for a perfectly symmetric IMF envelope.
    pub fn envelope_asymmetry(&self) -> Option<f64> {
        let art = self.sawtooth.as_ref()?;
        let coords = art.residue.coords();
        let u = art.upper.eval_sorted(coords).ok()?;
        let l = art.lower.eval_sorted(coords).ok()?;
        Some(
            u.iter()
                .zip(&l)
                .zip(art.residue.values())
                .map(|((u, l), r)| ((u - r) + (l - r)).abs())
                .fold(0.0, f64::max),
        )
    }
}

/// Envelope through same-kind extrema. Plateaus contribute both ends.
pub fn build_envelope(rail: &[Extremum]) -> Result<PiecewiseLinear> {
    if let Some(first) = rail.first() {
        if rail.iter().any(|e| e.kind != first.kind) {
            return Err(Error::Inconsistent(
                "envelope rail mixes maxima and minima".into(),
            ));
        }
    }
    let mut points = Vec::with_capacity(rail.len() + 2);
    for e in rail {
        points.push((e.t_start, e.value));
        if e.is_plateau() {
            points.push((e.t_end, e.value));
        }
    }
    if points.len() < 2 {
        return Err(Error::InsufficientData {
            what: "rail points",
            needed: 2,
            got: points.len(),
        });
    }
    PiecewiseLinear::new(points)
}

/// Upper and lower envelope of an alternating extrema list. Counts as one
/// envelope pass.
pub fn build_envelopes(extrema: &[Extremum]) -> Result<(PiecewiseLinear, PiecewiseLinear)> {
    let rail =
        |kind| -> Vec<Extremum> { extrema.iter().filter(|e| e.kind == kind).copied().collect() };
    let upper = build_envelope(&rail(ExtremumKind::Maximum))?;
    let lower = build_envelope(&rail(ExtremumKind::Minimum))?;
    record_envelope_pass();
    Ok((upper, lower))
}

/// Residue in sawtooth space.
pub fn residue_u(
    upper: &PiecewiseLinear,
    lower: &PiecewiseLinear,
    sawtooth: &PiecewiseLinear,
    strategy: ResidueStrategy,
) -> Result<PiecewiseLinear> {
    match strategy {
        ResidueStrategy::EnvelopeMean => upper.combine(lower, |u, l| (u + l) / 2.0),
        ResidueStrategy::SegmentMidpoints => {
            let points: Vec<(f64, f64)> = sawtooth
                .coords()
                .windows(2)
                .zip(sawtooth.values().windows(2))
                .filter(|(_, v)| v[0] != v[1])
                .map(|(c, v)| ((c[0] + c[1]) / 2.0, (v[0] + v[1]) / 2.0))
                .collect();
            PiecewiseLinear::new(points)
        }
        ResidueStrategy::TriangleCentroids => {
            let vertices = extremum_vertices(sawtooth);
            let mut points: Vec<(f64, f64)> = vertices
                .windows(3)
                .map(|w| {
                    (
                        (w[0].0 + w[1].0 + w[2].0) / 3.0,
                        (w[0].1 + w[1].1 + w[2].1) / 3.0,
                    )
                })
                .collect();
            if points.len() < 2 {
                return Err(Error::InsufficientData {
                    what: "triangle centroids",
                    needed: 2,
                    got: points.len(),
                });
            }
            let (lo, hi) = sawtooth.support();
            if lo < points[0].0 {
                let v = extrapolate(points[0], points[1], lo);
                points.insert(0, (lo, v));
            }
            let m = points.len();
            if hi > points[m - 1].0 {
                let v = extrapolate(points[m - 2], points[m - 1], hi);
                points.push((hi, v));
            }
            PiecewiseLinear::new(points)
        }
    }
}

/// IMF in sawtooth space: sawtooth minus residue.
pub fn imf_u(sawtooth: &PiecewiseLinear, residue: &PiecewiseLinear) -> Result<PiecewiseLinear> {
    sawtooth.combine(residue, |s, r| s - r)
}

/// Extrema of a sawtooth as single vertices; a plateau's two equal-valued
/// breakpoints collapse to their midpoint.
fn extremum_vertices(sawtooth: &PiecewiseLinear) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(sawtooth.len());
    let mut merged_last = false;
    for (c, v) in sawtooth.breakpoints() {
        match out.last_mut() {
            Some(last) if last.1 == v && !merged_last => {
                last.0 = (last.0 + c) / 2.0;
                merged_last = true;
            }
            _ => {
                out.push((c, v));
                merged_last = false;
            }
        }
    }
    out
}

fn extrapolate(a: (f64, f64), b: (f64, f64), at: f64) -> f64 {
    a.1 + (b.1 - a.1) * ((at - a.0) / (b.0 - a.0))
}

/// Compute one mode from an already extended extrema list. Shared by batch
/// extraction and the streaming decomposer.
pub(crate) fn evaluate(
    series: &TimeSeries,
    extended: Vec<Extremum>,
    strategy: ResidueStrategy,
    extrema_count: usize,
) -> Result<ModeResult> {
    let view = forward_transform(series, &extended)?;
    let (upper, lower) = build_envelopes(&extended)?;
    let residue = residue_u(&upper, &lower, &view.sawtooth, strategy)?;
    let imf = imf_u(&view.sawtooth, &residue)?;

    let imf_data = map_back(&imf, &view.map)?;
    let residue_data = map_back(&residue, &view.map)?;
    let upper_env = map_back(&upper, &view.map)?;
    let lower_env = map_back(&lower, &view.map)?;

    Ok(ModeResult {
        imf: imf_data,
        residue: residue_data,
        upper_env,
        lower_env,
        extrema_count,
        envelope_passes: 1,
        sift_capped: false,
        sawtooth: Some(SawtoothArtifacts {
            extended_extrema: extended,
            view,
            upper,
            lower,
            residue,
            imf,
        }),
    })
}

/// Extract one mode, or `None` when fewer than two interior extrema remain.
pub fn extract_mode(
    series: &TimeSeries,
    policy: ExtensionPolicy,
    strategy: ResidueStrategy,
) -> Result<Option<ModeResult>> {
    let interior = find_extrema(series);
    if interior.len() < 2 {
        return Ok(None);
    }
    let extended = prepare_extrema(series, &interior, policy)?;
    evaluate(series, extended, strategy, interior.len()).map(Some)
}
