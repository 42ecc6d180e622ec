//! Online decomposition.
//!
//! Each mode is a stage that consumes samples, confirms extrema with the same
//! scanner as the batch path, and emits a sample's IMF and residue as soon as
//! enough extrema on both sides of it are known. Emission evaluates the very
//! same sawtooth construction on a short window of extrema, so streamed
//! values match the batch result away from the ends exactly, and the buffer
//! only ever holds a few extrema spans of samples.

use std::collections::VecDeque;

use crate::boundary::{
    end_anchor, head_requirement, left_extension, right_extension, start_anchor, ExtensionPolicy,
};
use crate::error::{Error, Result};
use crate::mode::{evaluate, extract_mode, ResidueStrategy};
use crate::series::{ExtremaScanner, Extremum, TimeSeries};

/// One fully decomposed sample.
#[derive(Debug, Clone, PartialEq)]
pub struct StreamPoint {
    pub t: f64,
    /// One entry per stage, fastest mode first.
    pub imfs: Vec<f64>,
    pub residue: f64,
}

/// Extrema needed before and after a sample's bracketing extremum for its
/// value to be final.
pub fn context(strategy: ResidueStrategy) -> (usize, usize) {
    match strategy {
        ResidueStrategy::EnvelopeMean | ResidueStrategy::SegmentMidpoints => (2, 2),
        ResidueStrategy::TriangleCentroids => (3, 3),
    }
}

type Emitted = Vec<(f64, f64, f64)>;

#[derive(Debug)]
struct Stage {
    policy: ExtensionPolicy,
    strategy: ResidueStrategy,
    lookbehind: usize,
    lookahead: usize,
    scanner: ExtremaScanner,
    first: Option<(f64, f64)>,
    last: (f64, f64),
    pending: VecDeque<(f64, f64)>,
    /// Interior extrema seen before the left extension could be built.
    head: Vec<Extremum>,
    /// Extended extrema, trimmed from the front as samples are emitted.
    known: Vec<Extremum>,
    /// Entries of the unextended list (anchor plus interior) so far.
    list_len: usize,
    head_done: bool,
    peak: usize,
}

impl Stage {
    fn new(policy: ExtensionPolicy, strategy: ResidueStrategy) -> Self {
        let (lookbehind, lookahead) = context(strategy);
        Self {
            policy,
            strategy,
            lookbehind,
            lookahead,
            scanner: ExtremaScanner::new(),
            first: None,
            last: (0.0, 0.0),
            pending: VecDeque::new(),
            head: Vec::new(),
            known: Vec::new(),
            list_len: 0,
            head_done: false,
            peak: 0,
        }
    }

    fn push(&mut self, t: f64, x: f64) -> Result<Emitted> {
        let first = *self.first.get_or_insert((t, x));
        self.last = (t, x);
        self.pending.push_back((t, x));
        self.peak = self.peak.max(self.pending.len());
        let Some(e) = self.scanner.push(t, x) else {
            return Ok(Vec::new());
        };
        if self.head_done {
            self.known.push(e);
            self.list_len += 1;
            return self.emit_ready();
        }
        self.head.push(e);
        let needed = head_requirement(self.policy).expect("policy checked at construction");
        if self.head.len() < needed {
            return Ok(Vec::new());
        }
        let mut list = Vec::with_capacity(needed + 1);
        list.extend(start_anchor(self.policy, &self.head[0], first));
        list.append(&mut self.head);
        let left = left_extension(&list, self.policy, first, first)?;
        self.list_len = list.len();
        self.known = left.to_vec();
        self.known.append(&mut list);
        self.head_done = true;
        self.emit_ready()
    }

    fn emit_ready(&mut self) -> Result<Emitted> {
        let k = self.known.len() - 1;
        let Some(h) = (k + 1).checked_sub(self.lookahead) else {
            return Ok(Vec::new());
        };
        let horizon = self.known[h].t_end;
        let n = self
            .pending
            .iter()
            .take_while(|(t, _)| *t <= horizon)
            .count();
        let out = self.emit(n, k + 1)?;
        let keep_from = (k + 1)
            .saturating_sub(self.lookahead + self.lookbehind + 1)
            .min(self.known.len().saturating_sub(8));
        if keep_from >= 64 {
            self.known.drain(..keep_from);
        }
        Ok(out)
    }

    /// Emit the first `n` pending samples using `known[..end]` as context.
    fn emit(&mut self, n: usize, end: usize) -> Result<Emitted> {
        if n == 0 {
            return Ok(Vec::new());
        }
        let t0 = self.pending[0].0;
        let g0 = self.known[..end].partition_point(|e| e.t_start <= t0);
        let start = g0.saturating_sub(1).saturating_sub(self.lookbehind);
        let (times, values): (Vec<f64>, Vec<f64>) = self.pending.drain(..n).unzip();
        let local = TimeSeries::new(times, values)?;
        let mode = evaluate(&local, self.known[start..end].to_vec(), self.strategy, 0)?;
        Ok(local
            .times()
            .iter()
            .zip(mode.imf)
            .zip(mode.residue)
            .map(|((&t, c), r)| (t, c, r))
            .collect())
    }

    fn finish(&mut self) -> Result<Emitted> {
        if self.pending.is_empty() {
            return Ok(Vec::new());
        }
        if !self.head_done {
            let (times, values): (Vec<f64>, Vec<f64>) = self.pending.drain(..).unzip();
            let series = TimeSeries::new(times, values)?;
            let out = match extract_mode(&series, self.policy, self.strategy)? {
                Some(mode) => series
                    .times()
                    .iter()
                    .zip(mode.imf)
                    .zip(mode.residue)
                    .map(|((&t, c), r)| (t, c, r))
                    .collect(),
                None => series.iter().map(|(t, x)| (t, 0.0, x)).collect(),
            };
            return Ok(out);
        }
        let first = self.first.expect("samples were pushed");
        let last_interior = *self.known.last().expect("head is built");
        if let Some(anchor) = end_anchor(self.policy, &last_interior, self.last) {
            self.known.push(anchor);
            self.list_len += 1;
        }
        let tail = self.list_len.min(4).min(self.known.len());
        let right = right_extension(
            &self.known[self.known.len() - tail..],
            self.policy,
            first,
            self.last,
        )?;
        self.known.extend(right);
        let n = self.pending.len();
        self.emit(n, self.known.len())
    }
}

/// Push-based decomposer producing a fixed number of modes per sample.
///
/// The cyclic policy needs the end of the data before anything can be
/// emitted and is rejected.
#[derive(Debug)]
pub struct StreamDecomposer {
    stages: Vec<Stage>,
    carried: Vec<VecDeque<Vec<f64>>>,
    last_t: Option<f64>,
    pushed: usize,
}

impl StreamDecomposer {
    pub fn new(policy: ExtensionPolicy, strategy: ResidueStrategy, modes: usize) -> Result<Self> {
        if head_requirement(policy).is_none() {
            return Err(Error::Config(format!(
                "the {} policy cannot be used for streaming",
                policy.name()
            )));
        }
        if modes == 0 {
            return Err(Error::Config("at least one mode is required".into()));
        }
        Ok(Self {
            stages: (0..modes).map(|_| Stage::new(policy, strategy)).collect(),
            carried: (0..modes).map(|_| VecDeque::new()).collect(),
            last_t: None,
            pushed: 0,
        })
    }

    /// Feed one sample; returns every sample that became final.
    pub fn push(&mut self, t: f64, x: f64) -> Result<Vec<StreamPoint>> {
        if !t.is_finite() || !x.is_finite() {
            return Err(Error::NonFinite { index: self.pushed });
        }
        if let Some(previous) = self.last_t {
            if t <= previous {
                return Err(Error::Ordering {
                    index: self.pushed,
                    previous,
                    current: t,
                });
            }
        }
        self.last_t = Some(t);
        self.pushed += 1;
        let mut out = Vec::new();
        self.feed(0, t, x, Vec::new(), &mut out)?;
        Ok(out)
    }

    /// Flush everything still buffered.
    pub fn finish(mut self) -> Result<Vec<StreamPoint>> {
        if self.pushed == 0 {
            return Err(Error::Empty);
        }
        let mut out = Vec::new();
        for j in 0..self.stages.len() {
            let emitted = self.stages[j].finish()?;
            self.route(j, emitted, &mut out)?;
        }
        Ok(out)
    }

    /// Largest number of samples each stage held at once.
    pub fn peak_buffered(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.peak).collect()
    }

    fn feed(
        &mut self,
        j: usize,
        t: f64,
        x: f64,
        prefix: Vec<f64>,
        out: &mut Vec<StreamPoint>,
    ) -> Result<()> {
        self.carried[j].push_back(prefix);
        let emitted = self.stages[j].push(t, x)?;
        self.route(j, emitted, out)
    }

    fn route(&mut self, j: usize, emitted: Emitted, out: &mut Vec<StreamPoint>) -> Result<()> {
        for (t, imf, residue) in emitted {
            let mut imfs = self.carried[j]
                .pop_front()
                .ok_or_else(|| Error::Inconsistent("stage emitted an unknown sample".into()))?;
            imfs.push(imf);
            if j + 1 == self.stages.len() {
                out.push(StreamPoint { t, imfs, residue });
            } else {
                self.feed(j + 1, t, residue, imfs, out)?;
            }
        }
        Ok(())
    }
}

/// Run a whole series through a [`StreamDecomposer`].
pub fn stream_decompose(
    series: &TimeSeries,
    policy: ExtensionPolicy,
    strategy: ResidueStrategy,
    modes: usize,
) -> Result<(Vec<StreamPoint>, Vec<usize>)> {
    let mut dec = StreamDecomposer::new(policy, strategy, modes)?;
    let mut points = Vec::with_capacity(series.len());
    for (t, x) in series.iter() {
        points.extend(dec.push(t, x)?);
    }
    let peak = dec.peak_buffered();
    points.extend(dec.finish()?);
    Ok((points, peak))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::signals;

    fn compare(series: &TimeSeries, policy: ExtensionPolicy, strategy: ResidueStrategy) {
        let batch = decompose(series, policy, strategy, 4).unwrap();
        let (points, _) = stream_decompose(series, policy, strategy, 4).unwrap();
        assert_eq!(points.len(), series.len());
        for (i, p) in points.iter().enumerate() {
            assert_eq!(p.t, series.times()[i]);
            for (m, mode) in batch.modes.iter().enumerate() {
                assert_eq!(p.imfs[m], mode.imf[i], "mode {m} sample {i}");
            }
        }
    }

    #[test]
    fn matches_batch() {
        let s = signals::random_walk(3000, 11);
        for policy in [
            ExtensionPolicy::Even,
            ExtensionPolicy::Odd,
            ExtensionPolicy::Trend,
        ] {
            for strategy in ResidueStrategy::ALL {
                compare(&s, policy, strategy);
            }
        }
    }

    #[test]
    fn short_series_fall_back() {
        let s = TimeSeries::from_values(vec![0.0, 1.0, 0.0, 1.0, 2.0]).unwrap();
        let (points, _) =
            stream_decompose(&s, ExtensionPolicy::Trend, ResidueStrategy::EnvelopeMean, 2).unwrap();
        assert_eq!(points.len(), 5);
        let ramp = TimeSeries::from_values(vec![0.0, 1.0, 2.0]).unwrap();
        let (points, _) = stream_decompose(
            &ramp,
            ExtensionPolicy::Even,
            ResidueStrategy::EnvelopeMean,
            2,
        )
        .unwrap();
        assert!(points.iter().all(|p| p.imfs == [0.0, 0.0]));
        assert_eq!(points[2].residue, 2.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            StreamDecomposer::new(ExtensionPolicy::Cyclic, ResidueStrategy::EnvelopeMean, 2),
            Err(Error::Config(_))
        ));
        let mut d =
            StreamDecomposer::new(ExtensionPolicy::Even, ResidueStrategy::EnvelopeMean, 2).unwrap();
        d.push(1.0, 0.0).unwrap();
        assert!(matches!(d.push(1.0, 0.0), Err(Error::Ordering { .. })));
        let d =
            StreamDecomposer::new(ExtensionPolicy::Even, ResidueStrategy::EnvelopeMean, 2).unwrap();
        assert!(matches!(d.finish(), Err(Error::Empty)));
    }
}
