//! Synthetic extrema beyond both ends of the data.
//!
//! Envelopes through the maxima and minima only reach the first and last
//! samples if the extrema list continues past the data. Every policy adds
//! exactly two synthetic extrema on each side. Plateau extrema take part
//! through their midpoint time.
//!
//! Even and Cyclic treat the series endpoints as extrema. Those anchor
//! points are added by [`prepare_extrema`], which is what the decomposition
//! pipeline calls; [`extend_extrema`] itself works on whatever list it is
//! given.

use crate::error::{Error, Result};
use crate::series::{Extremum, ExtremumKind, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ExtensionPolicy {
    /// Mirror times and values about the first and last extremum.
    #[default]
    Even,
    /// Point-reflect about the first and last sample.
    Odd,
    /// Wrap around by one period; first and last sample must be equal.
    Cyclic,
    /// Extrapolate the outermost upper and lower envelope segments.
    Trend,
}

impl ExtensionPolicy {
    pub const ALL: [ExtensionPolicy; 4] = [Self::Even, Self::Odd, Self::Cyclic, Self::Trend];

    pub fn name(self) -> &'static str {
        match self {
            Self::Even => "even",
            Self::Odd => "odd",
            Self::Cyclic => "cyclic",
            Self::Trend => "trend",
        }
    }
}

impl std::str::FromStr for ExtensionPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown extension policy `{s}`")))
    }
}

/// Time offset used for the outermost appended cyclic extremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CyclicOffset {
    /// `t[m-1] + (t[2] - t[0])`, one full period after `t[2]`.
    #[default]
    Periodic,
    /// `t[m-1] + (t[m-1] - t[m-3])`, kept for compatibility with the
    /// literal published formula. Breaks periodicity in general.
    Literal,
}

/// Relative tolerance for the cyclic equal-endpoint requirement.
pub const CYCLIC_TOLERANCE: f64 = 1e-9;

/// Prepend two and append two synthetic extrema to `extrema`.
///
/// `first` and `last` are the first and last samples of the series.
pub fn extend_extrema(
    extrema: &[Extremum],
    policy: ExtensionPolicy,
    first: (f64, f64),
    last: (f64, f64),
) -> Result<Vec<Extremum>> {
    extend_extrema_with(extrema, policy, first, last, CyclicOffset::default())
}

pub fn extend_extrema_with(
    extrema: &[Extremum],
    policy: ExtensionPolicy,
    first: (f64, f64),
    last: (f64, f64),
    offset: CyclicOffset,
) -> Result<Vec<Extremum>> {
    if policy == ExtensionPolicy::Cyclic {
        check_cyclic(extrema, first, last)?;
    }
    extend_unchecked(extrema, policy, first, last, offset)
}

fn extend_unchecked(
    extrema: &[Extremum],
    policy: ExtensionPolicy,
    first: (f64, f64),
    last: (f64, f64),
    offset: CyclicOffset,
) -> Result<Vec<Extremum>> {
    let [l2, l1] = left_extension(extrema, policy, first, last)?;
    let [r1, r2] = right_extension_with(extrema, policy, first, last, offset)?;
    let mut out = Vec::with_capacity(extrema.len() + 4);
    out.extend([l2, l1]);
    out.extend_from_slice(extrema);
    out.extend([r1, r2]);
    check_alternation(&out)?;
    Ok(out)
}

/// Anchor the endpoints where the policy calls for it, then extend.
pub fn prepare_extrema(
    series: &TimeSeries,
    interior: &[Extremum],
    policy: ExtensionPolicy,
) -> Result<Vec<Extremum>> {
    let (head, tail) = anchors(policy, interior, series.first(), series.last())?;
    let mut list = Vec::with_capacity(interior.len() + 6);
    list.extend(head);
    list.extend_from_slice(interior);
    list.extend(tail);
    extend_extrema(&list, policy, series.first(), series.last())
}

/// [`prepare_extrema`] without the cyclic equal-endpoint check. Used for the
/// residues of a decomposition whose input already passed it: a residue
/// inherits the periodicity assumption even when its end values drift.
pub(crate) fn prepare_extrema_inherited(
    series: &TimeSeries,
    interior: &[Extremum],
    policy: ExtensionPolicy,
) -> Result<Vec<Extremum>> {
    let (head, tail) = anchors(policy, interior, series.first(), series.last())?;
    let mut list = Vec::with_capacity(interior.len() + 6);
    list.extend(head);
    list.extend_from_slice(interior);
    list.extend(tail);
    extend_unchecked(
        &list,
        policy,
        series.first(),
        series.last(),
        CyclicOffset::default(),
    )
}

/// Endpoint extrema for policies that treat the series ends as extrema.
///
/// The first sample always lies strictly on the far side of the first
/// interior extremum (otherwise it would belong to that extremum's run), so
/// it is a valid extremum of the opposite kind. Same for the last sample.
pub fn anchors(
    policy: ExtensionPolicy,
    interior: &[Extremum],
    first: (f64, f64),
    last: (f64, f64),
) -> Result<(Option<Extremum>, Option<Extremum>)> {
    let (Some(head), Some(tail)) = (interior.first(), interior.last()) else {
        return Err(insufficient(1, 0));
    };
    let start = Extremum::point(head.kind.opposite(), first.0, first.1);
    let end = Extremum::point(tail.kind.opposite(), last.0, last.1);
    Ok(match policy {
        ExtensionPolicy::Even => (Some(start), Some(end)),
        ExtensionPolicy::Cyclic if head.kind == tail.kind => (Some(start), Some(end)),
        ExtensionPolicy::Cyclic | ExtensionPolicy::Odd | ExtensionPolicy::Trend => (None, None),
    })
}

/// Anchored start extremum, if the policy uses one.
pub(crate) fn start_anchor(
    policy: ExtensionPolicy,
    first_interior: &Extremum,
    first: (f64, f64),
) -> Option<Extremum> {
    (policy == ExtensionPolicy::Even)
        .then(|| Extremum::point(first_interior.kind.opposite(), first.0, first.1))
}

pub(crate) fn end_anchor(
    policy: ExtensionPolicy,
    last_interior: &Extremum,
    last: (f64, f64),
) -> Option<Extremum> {
    (policy == ExtensionPolicy::Even)
        .then(|| Extremum::point(last_interior.kind.opposite(), last.0, last.1))
}

/// Number of leading interior extrema the left extension depends on, for
/// policies that can be computed without seeing the end of the data.
pub(crate) fn head_requirement(policy: ExtensionPolicy) -> Option<usize> {
    match policy {
        ExtensionPolicy::Even | ExtensionPolicy::Odd => Some(2),
        ExtensionPolicy::Trend => Some(4),
        ExtensionPolicy::Cyclic => None,
    }
}

fn insufficient(needed: usize, got: usize) -> Error {
    Error::InsufficientData {
        what: "extrema",
        needed,
        got,
    }
}

fn require(extrema: &[Extremum], needed: usize) -> Result<()> {
    if extrema.len() < needed {
        Err(insufficient(needed, extrema.len()))
    } else {
        Ok(())
    }
}

fn synthetic(kind: ExtremumKind, t: f64, value: f64) -> Extremum {
    Extremum::point(kind, t, value)
}

fn check_alternation(list: &[Extremum]) -> Result<()> {
    for (i, w) in list.windows(2).enumerate() {
        if w[0].kind == w[1].kind {
            return Err(Error::Inconsistent(format!(
                "extrema {i} and {} have the same kind",
                i + 1
            )));
        }
        if w[1].t_start <= w[0].t_end {
            return Err(Error::Inconsistent(format!(
                "extrema {i} and {} overlap in time",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Whether a cyclic list carries the series endpoints as its first and last
/// entries.
fn has_endpoints(extrema: &[Extremum], first: (f64, f64), last: (f64, f64)) -> bool {
    match (extrema.first(), extrema.last()) {
        (Some(a), Some(b)) => a.t_start == first.0 && b.t_end == last.0,
        _ => false,
    }
}

fn check_cyclic(extrema: &[Extremum], first: (f64, f64), last: (f64, f64)) -> Result<()> {
    let amplitude = extrema
        .iter()
        .map(|e| e.value.abs())
        .chain([first.1.abs(), last.1.abs()])
        .fold(0.0, f64::max);
    let gap = (first.1 - last.1).abs();
    if gap > CYCLIC_TOLERANCE * amplitude {
        return Err(Error::PolicyViolation(format!(
            "cyclic extension needs equal endpoint values, got {} and {}",
            first.1, last.1
        )));
    }
    Ok(())
}

/// The two synthetic extrema before the first entry, outermost first.
pub(crate) fn left_extension(
    extrema: &[Extremum],
    policy: ExtensionPolicy,
    first: (f64, f64),
    last: (f64, f64),
) -> Result<[Extremum; 2]> {
    let e = extrema;
    match policy {
        ExtensionPolicy::Even => {
            require(e, 3)?;
            let t0 = e[0].time();
            Ok([
                synthetic(e[2].kind, t0 - (e[2].time() - t0), e[2].value),
                synthetic(e[1].kind, t0 - (e[1].time() - t0), e[1].value),
            ])
        }
        ExtensionPolicy::Odd => {
            require(e, 2)?;
            let (ts, fs) = first;
            Ok([
                synthetic(e[0].kind, ts - (e[1].time() - ts), fs - (e[1].value - fs)),
                synthetic(e[1].kind, ts - (e[0].time() - ts), fs - (e[0].value - fs)),
            ])
        }
        ExtensionPolicy::Cyclic => {
            let m = e.len();
            if has_endpoints(e, first, last) {
                require(e, 3)?;
                let t0 = e[0].time();
                let tl = e[m - 1].time();
                Ok([
                    synthetic(e[m - 3].kind, t0 - (tl - e[m - 3].time()), e[m - 3].value),
                    synthetic(e[m - 2].kind, t0 - (tl - e[m - 2].time()), e[m - 2].value),
                ])
            } else {
                require(e, 2)?;
                if e[0].kind == e[m - 1].kind {
                    return Err(Error::PolicyViolation(
                        "cyclic wrap joins two extrema of the same kind; \
                         the endpoints must be included as extrema"
                            .into(),
                    ));
                }
                let period = last.0 - first.0;
                Ok([
                    synthetic(e[m - 2].kind, e[m - 2].time() - period, e[m - 2].value),
                    synthetic(e[m - 1].kind, e[m - 1].time() - period, e[m - 1].value),
                ])
            }
        }
        ExtensionPolicy::Trend => {
            require(e, 2)?;
            let (ts, xs) = first;
            let t0 = e[0].time();
            let d1 = e[1].time() - t0;
            let d2 = if e.len() >= 3 {
                e[2].time() - t0
            } else {
                2.0 * d1
            };
            let t1 = (t0 - d1).min(2.0 * ts - t0);
            let t2 = t1 - (d2 - d1);
            let near = trend_value(e.get(1), e.get(3), t1);
            let near = clamp_outward(e[1].kind, near, xs);
            let far = trend_value(e.first(), e.get(2), t2);
            let far = if beyond(e[0].kind, far, near) {
                far
            } else {
                e[0].value
            };
            Ok([
                synthetic(e[0].kind, t2, far),
                synthetic(e[1].kind, t1, near),
            ])
        }
    }
}

/// The two synthetic extrema after the last entry, innermost first.
pub(crate) fn right_extension_with(
    extrema: &[Extremum],
    policy: ExtensionPolicy,
    first: (f64, f64),
    last: (f64, f64),
    offset: CyclicOffset,
) -> Result<[Extremum; 2]> {
    let e = extrema;
    let m = e.len();
    match policy {
        ExtensionPolicy::Even => {
            require(e, 3)?;
            let tl = e[m - 1].time();
            Ok([
                synthetic(e[m - 2].kind, tl + (tl - e[m - 2].time()), e[m - 2].value),
                synthetic(e[m - 3].kind, tl + (tl - e[m - 3].time()), e[m - 3].value),
            ])
        }
        ExtensionPolicy::Odd => {
            require(e, 2)?;
            let (te, fe) = last;
            Ok([
                synthetic(
                    e[m - 2].kind,
                    te + (te - e[m - 1].time()),
                    fe - (e[m - 1].value - fe),
                ),
                synthetic(
                    e[m - 1].kind,
                    te + (te - e[m - 2].time()),
                    fe - (e[m - 2].value - fe),
                ),
            ])
        }
        ExtensionPolicy::Cyclic => {
            if has_endpoints(e, first, last) {
                require(e, 3)?;
                let t0 = e[0].time();
                let tl = e[m - 1].time();
                let outer = match offset {
                    CyclicOffset::Periodic => tl + (e[2].time() - t0),
                    CyclicOffset::Literal => tl + (tl - e[m - 3].time()),
                };
                let inner = tl + (e[1].time() - t0);
                if outer <= inner {
                    return Err(Error::PolicyViolation(
                        "literal cyclic offset places the outer extremum before the inner one"
                            .into(),
                    ));
                }
                Ok([
                    synthetic(e[1].kind, inner, e[1].value),
                    synthetic(e[2].kind, outer, e[2].value),
                ])
            } else {
                require(e, 2)?;
                if e[0].kind == e[m - 1].kind {
                    return Err(Error::PolicyViolation(
                        "cyclic wrap joins two extrema of the same kind; \
                         the endpoints must be included as extrema"
                            .into(),
                    ));
                }
                let period = last.0 - first.0;
                Ok([
                    synthetic(e[0].kind, e[0].time() + period, e[0].value),
                    synthetic(e[1].kind, e[1].time() + period, e[1].value),
                ])
            }
        }
        ExtensionPolicy::Trend => {
            require(e, 2)?;
            let (te, xe) = last;
            let tl = e[m - 1].time();
            let d1 = tl - e[m - 2].time();
            let d2 = if m >= 3 {
                tl - e[m - 3].time()
            } else {
                2.0 * d1
            };
            let t1 = (tl + d1).max(2.0 * te - tl);
            let t2 = t1 + (d2 - d1);
            let near = trend_value(Some(&e[m - 2]), m.checked_sub(4).map(|i| &e[i]), t1);
            let near = clamp_outward(e[m - 2].kind, near, xe);
            let far = trend_value(Some(&e[m - 1]), m.checked_sub(3).map(|i| &e[i]), t2);
            let far = if beyond(e[m - 1].kind, far, near) {
                far
            } else {
                e[m - 1].value
            };
            Ok([
                synthetic(e[m - 2].kind, t1, near),
                synthetic(e[m - 1].kind, t2, far),
            ])
        }
    }
}

pub(crate) fn right_extension(
    extrema: &[Extremum],
    policy: ExtensionPolicy,
    first: (f64, f64),
    last: (f64, f64),
) -> Result<[Extremum; 2]> {
    right_extension_with(extrema, policy, first, last, CyclicOffset::default())
}

/// Value at `t` on the line through two same-kind extrema, or flat through
/// `a` when there is no second point.
fn trend_value(a: Option<&Extremum>, b: Option<&Extremum>, t: f64) -> f64 {
    let a = a.expect("trend rail needs at least one point");
    match b {
        Some(b) => {
            let (ta, tb) = (a.time(), b.time());
            a.value + (b.value - a.value) * ((t - ta) / (tb - ta))
        }
        None => a.value,
    }
}

/// Keep the boundary sample inside the synthetic segment: a synthetic
/// minimum may not sit above it, a synthetic maximum not below it.
fn clamp_outward(kind: ExtremumKind, value: f64, sample: f64) -> f64 {
    match kind {
        ExtremumKind::Minimum => value.min(sample),
        ExtremumKind::Maximum => value.max(sample),
    }
}

fn beyond(kind: ExtremumKind, value: f64, reference: f64) -> bool {
    match kind {
        ExtremumKind::Maximum => value > reference,
        ExtremumKind::Minimum => value < reference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtremumKind::{Maximum as Max, Minimum as Min};

    fn pts(items: &[(ExtremumKind, f64, f64)]) -> Vec<Extremum> {
        items
            .iter()
            .map(|&(k, t, v)| Extremum::point(k, t, v))
            .collect()
    }

    #[test]
    fn even_mirrors_about_first_extremum() {
        let e = pts(&[(Max, 1.0, 5.0), (Min, 2.0, -1.0), (Max, 4.0, 3.0)]);
        let out = extend_extrema(&e, ExtensionPolicy::Even, (0.0, 0.0), (5.0, 0.0)).unwrap();
        assert_eq!(out.len(), 7);
        assert_eq!(
            (out[1].t_start, out[1].value, out[1].kind),
            (0.0, -1.0, Min)
        );
        assert_eq!(
            (out[0].t_start, out[0].value, out[0].kind),
            (-2.0, 3.0, Max)
        );
        // right: mirror about t=4
        assert_eq!((out[5].t_start, out[5].value), (6.0, -1.0));
        assert_eq!((out[6].t_start, out[6].value), (7.0, 5.0));
    }

    #[test]
    fn odd_reflects_about_start_sample() {
        let e = pts(&[(Max, 1.0, 5.0), (Min, 2.0, -1.0)]);
        let out = extend_extrema(&e, ExtensionPolicy::Odd, (0.0, 0.0), (3.0, 0.0)).unwrap();
        assert_eq!(out[1].value, -5.0);
        assert_eq!(out[1].kind, Min);
        assert_eq!(out[1].t_start, -1.0);
        assert_eq!(
            (out[0].t_start, out[0].value, out[0].kind),
            (-2.0, 1.0, Max)
        );
        assert_eq!((out[4].t_start, out[4].value, out[4].kind), (4.0, 1.0, Max));
    }

    #[test]
    fn cyclic_with_endpoints_continues_the_period() {
        use std::f64::consts::PI;
        // sin over three periods starting at a maximum: endpoints are maxima.
        let mut e = vec![Extremum::point(Max, PI / 2.0, 1.0)];
        for k in 1..=6 {
            let kind = if k % 2 == 1 { Min } else { Max };
            let v = if k % 2 == 1 { -1.0 } else { 1.0 };
            e.push(Extremum::point(kind, PI / 2.0 + k as f64 * PI, v));
        }
        let first = (PI / 2.0, 1.0);
        let last = (PI / 2.0 + 6.0 * PI, 1.0);
        let out = extend_extrema(&e, ExtensionPolicy::Cyclic, first, last).unwrap();
        let appended = out[out.len() - 2];
        assert_eq!(appended.value, e[1].value);
        assert!((appended.t_start - (last.0 + PI)).abs() < 1e-12);
        assert!((out[out.len() - 1].t_start - (last.0 + 2.0 * PI)).abs() < 1e-12);
        assert!((out[1].t_start - (first.0 - PI)).abs() < 1e-12);
        assert_eq!(out[1].value, -1.0);
    }

    #[test]
    fn cyclic_literal_offset_differs() {
        let e = pts(&[
            (Min, 0.0, 0.0),
            (Max, 1.0, 2.0),
            (Min, 3.0, -1.0),
            (Max, 4.0, 1.0),
            (Min, 4.5, 0.0),
        ]);
        let a = extend_extrema(&e, ExtensionPolicy::Cyclic, (0.0, 0.0), (4.5, 0.0)).unwrap();
        let b = extend_extrema_with(
            &e,
            ExtensionPolicy::Cyclic,
            (0.0, 0.0),
            (4.5, 0.0),
            CyclicOffset::Literal,
        )
        .unwrap();
        assert_eq!(a[8].t_start, 4.5 + 3.0);
        assert_eq!(b[8].t_start, 4.5 + 1.5);
    }

    #[test]
    fn cyclic_rejects_unequal_endpoints() {
        let e = pts(&[(Max, 1.0, 1.0), (Min, 2.0, -1.0), (Max, 3.0, 1.0)]);
        let err = extend_extrema(&e, ExtensionPolicy::Cyclic, (0.0, 0.0), (4.0, 0.5));
        assert!(matches!(err, Err(Error::PolicyViolation(_))));
    }

    #[test]
    fn too_few_extrema() {
        let e = pts(&[(Max, 1.0, 1.0), (Min, 2.0, -1.0)]);
        assert!(matches!(
            extend_extrema(&e, ExtensionPolicy::Even, (0.0, 0.0), (3.0, 0.0)),
            Err(Error::InsufficientData { needed: 3, .. })
        ));
        assert!(matches!(
            extend_extrema(&e[..1], ExtensionPolicy::Odd, (0.0, 0.0), (3.0, 0.0)),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn trend_follows_rails() {
        // maxima on 1 + 0.5t, minima on -1 + 0.5t, spacing 1
        let e: Vec<_> = (1..=6)
            .map(|i| {
                let t = i as f64;
                if i % 2 == 1 {
                    Extremum::point(Max, t, 1.0 + 0.5 * t)
                } else {
                    Extremum::point(Min, t, -1.0 + 0.5 * t)
                }
            })
            .collect();
        let out = extend_extrema(&e, ExtensionPolicy::Trend, (0.5, 0.0), (6.5, 2.5)).unwrap();
        assert_eq!(out[1].kind, Min);
        assert_eq!(out[1].t_start, 0.0);
        assert!((out[1].value - (-1.0)).abs() < 1e-12);
        assert_eq!(out[0].kind, Max);
        assert!((out[0].value - (1.0 - 0.5)).abs() < 1e-12);
        assert_eq!(out[8].kind, Max);
        assert!((out[8].value - (1.0 + 0.5 * 7.0)).abs() < 1e-12);
    }

    #[test]
    fn trend_clamps_to_cover_the_boundary_sample() {
        let e = pts(&[
            (Max, 1.0, 1.0),
            (Min, 2.0, 0.0),
            (Max, 3.0, 1.0),
            (Min, 4.0, 0.5),
        ]);
        // min rail rises leftwards-extrapolated to -0.5 at t=0; start sample at -3.
        let out = extend_extrema(&e, ExtensionPolicy::Trend, (0.5, -3.0), (4.5, 0.7)).unwrap();
        assert_eq!(out[1].value, -3.0);
        assert!(out[1].t_start < 0.5);
    }

    #[test]
    fn prepare_anchors_even_endpoints() {
        let s = TimeSeries::from_values(vec![0.0, 2.0, -1.0, 1.0, 0.5]).unwrap();
        let interior = crate::series::find_extrema(&s);
        let list = prepare_extrema(&s, &interior, ExtensionPolicy::Even).unwrap();
        assert_eq!(list.len(), interior.len() + 6);
        assert_eq!(list[2], Extremum::point(Min, 0.0, 0.0));
        assert_eq!(list[list.len() - 3], Extremum::point(Min, 4.0, 0.5));
    }

    #[test]
    fn policy_names_round_trip() {
        for p in ExtensionPolicy::ALL {
            assert_eq!(p.name().parse::<ExtensionPolicy>().unwrap(), p);
        }
        assert!("bogus".parse::<ExtensionPolicy>().is_err());
    }
}
