use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use sawtooth_core::compare::compare_methods;
use sawtooth_core::expansion::expansion_decompose;
use sawtooth_core::metrics::{max_abs_diff, rms, zero_crossings};
use sawtooth_core::series::count_extrema;
use sawtooth_core::{
    decompose, emd_decompose, expand, signals, Decomposition, ExtensionPolicy, ModeResult,
    ResidueStrategy, SiftConfig, StopReason, StopRule, TimeSeries,
};

use crate::cli::{BenchArgs, DecomposeArgs, GenerateArgs, MethodArg, SignalKind};
use crate::csv_io::{parse_csv, write_columns, write_series};
use crate::error::CliError;
use crate::summary::{
    BenchReport, BenchSize, ExpansionSummary, MethodTiming, ModeSummary, ScalingCheck, SiftSummary,
    Summary, Timings,
};
use crate::svg::{line_chart, Line};

/// Per-mode columns as written to `modeK.csv`.
struct ModeColumns {
    input_extrema: usize,
    envelope_passes: usize,
    sift_capped: bool,
    /// The signal this mode was extracted from.
    input: Vec<f64>,
    imf: Vec<f64>,
    residue: Vec<f64>,
    upper: Vec<f64>,
    lower: Vec<f64>,
}

impl ModeColumns {
    fn from_mode(mode: &ModeResult, input: Vec<f64>) -> Self {
        Self {
            input_extrema: mode.extrema_count,
            envelope_passes: mode.envelope_passes,
            sift_capped: mode.sift_capped,
            input,
            imf: mode.imf.clone(),
            residue: mode.residue.clone(),
            upper: mode.upper_env.clone(),
            lower: mode.lower_env.clone(),
        }
    }
}

fn stop_name(stop: StopReason) -> String {
    match stop {
        StopReason::TooFewExtrema => "too_few_extrema".into(),
        StopReason::MaxModes => "max_modes".into(),
        StopReason::NoExtremaReduction { previous, current } => {
            format!("no_extrema_reduction ({previous} -> {current})")
        }
        StopReason::ResidueNotPeriodic => "residue_not_periodic".into(),
    }
}

fn cascade(d: &Decomposition) -> Vec<ModeColumns> {
    let mut input = d.input.values().to_vec();
    d.modes
        .iter()
        .map(|m| {
            let next = m.residue.clone();
            ModeColumns::from_mode(m, std::mem::replace(&mut input, next))
        })
        .collect()
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn decompose_cmd(args: &DecomposeArgs) -> Result<Summary, CliError> {
    match (args.method, args.epsilon) {
        (MethodArg::Expansion, None) => {
            return Err(CliError::Usage(
                "--method expansion requires --epsilon".into(),
            ))
        }
        (MethodArg::Sawtooth | MethodArg::Emd, Some(_)) => {
            return Err(CliError::Usage(
                "--epsilon only applies to --method expansion".into(),
            ))
        }
        _ => {}
    }
    let start = Instant::now();
    let file = File::open(&args.input).map_err(|e| CliError::io(&args.input, e))?;
    let series = parse_csv(io::BufReader::new(file))?;
    let read_ms = ms(start);

    let start = Instant::now();
    let mut expansion = None;
    let mut sift = None;
    let mut stop = None;
    let (modes, final_residue) = match args.method {
        MethodArg::Sawtooth => {
            let d = decompose(&series, args.extension, args.strategy, args.max_modes)?;
            stop = Some(stop_name(d.stop));
            (cascade(&d), d.final_residue.clone())
        }
        MethodArg::Emd => {
            let config = SiftConfig {
                policy: args.extension,
                ..SiftConfig::default()
            };
            let d = emd_decompose(&series, &config, args.max_modes)?;
            stop = Some(stop_name(d.stop));
            sift = Some(SiftSummary {
                stop_rule: match config.stop {
                    StopRule::MeanAmplitudeThreshold(v) => format!("mean_amplitude {v}"),
                    StopRule::MaxSifts(k) => format!("max_sifts {k}"),
                    StopRule::SdThreshold(v) => format!("sd {v}"),
                },
                max_sifts: config.max_sifts,
                envelope: "natural_cubic_spline",
            });
            (cascade(&d), d.final_residue.clone())
        }
        MethodArg::Expansion => {
            let eps = args.epsilon.expect("checked above");
            let e = expand(&series, eps, args.max_components)?;
            let parts = expansion_decompose(&series, &e, args.strategy)?;
            let mut modes = Vec::with_capacity(e.components.len());
            for (c, mode) in e.components.iter().zip(&parts.components) {
                let sampled = c.eval_sorted(series.times())?;
                modes.push(match mode {
                    Some(m) => ModeColumns::from_mode(m, sampled),
                    None => ModeColumns {
                        input_extrema: 0,
                        envelope_passes: 0,
                        sift_capped: false,
                        imf: vec![0.0; series.len()],
                        residue: sampled.clone(),
                        upper: sampled.clone(),
                        lower: sampled.clone(),
                        input: sampled,
                    },
                });
            }
            // whatever the IMFs leave over, so the outputs add up exactly
            let mut residue = series.values().to_vec();
            for m in &modes {
                residue.iter_mut().zip(&m.imf).for_each(|(r, c)| *r -= c);
            }
            expansion = Some(ExpansionSummary {
                epsilon: eps,
                achieved_error: e.achieved_error,
                converged: e.converged,
                components: e.components.len(),
            });
            (modes, residue)
        }
    };
    let decompose_ms = ms(start);

    let start = Instant::now();
    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let t = series.times();
    for (k, m) in modes.iter().enumerate() {
        let path = args.out.join(format!("mode{}.csv", k + 1));
        write_columns(
            create(&path)?,
            &["t", "imf", "residue", "upper", "lower"],
            &[t, &m.imf, &m.residue, &m.upper, &m.lower],
        )?;
    }
    let path = args.out.join("residue.csv");
    write_columns(create(&path)?, &["t", "residue"], &[t, &final_residue])?;
    if args.svg {
        write_charts(&args.out, &series, &modes, &final_residue)?;
    }

    let mut sum = final_residue.clone();
    for m in &modes {
        sum.iter_mut().zip(&m.imf).for_each(|(s, c)| *s += c);
    }
    let mode_summaries: Vec<ModeSummary> = modes
        .iter()
        .enumerate()
        .map(|(k, m)| ModeSummary {
            index: k + 1,
            input_extrema: m.input_extrema,
            imf_extrema: count_extrema(&m.imf),
            zero_crossings: zero_crossings(&m.imf),
            envelope_passes: m.envelope_passes,
            rms: rms(&m.imf),
            sift_capped: m.sift_capped,
        })
        .collect();
    let dominant_mode = mode_summaries
        .iter()
        .max_by(|a, b| a.rms.total_cmp(&b.rms))
        .map(|m| m.index);
    let mut summary = Summary {
        method: args.method.name(),
        extension: args.extension.name(),
        strategy: args.strategy.name(),
        input: args.input.display().to_string(),
        input_samples: series.len(),
        mode_count: modes.len(),
        stop,
        modes: mode_summaries,
        dominant_mode,
        reconstruction_error: max_abs_diff(&sum, series.values()),
        timings_ms: Timings {
            read: read_ms,
            decompose: decompose_ms,
            write: 0.0,
        },
        expansion,
        sift,
    };
    summary.timings_ms.write = ms(start);
    let path = args.out.join("summary.json");
    let mut w = create(&path)?;
    serde_json::to_writer_pretty(&mut w, &summary)?;
    writeln!(w).map_err(|e| CliError::io(&path, e))?;
    w.flush().map_err(|e| CliError::io(&path, e))?;
    Ok(summary)
}

fn write_charts(
    dir: &Path,
    series: &TimeSeries,
    modes: &[ModeColumns],
    final_residue: &[f64],
) -> Result<(), CliError> {
    let t = series.times();
    for (k, m) in modes.iter().enumerate() {
        let n = k + 1;
        let imf = line_chart(
            &format!("Mode {n}: IMF, {} extrema", m.input_extrema),
            t,
            &[Line {
                label: "IMF",
                color: "#1f4e9c",
                values: &m.imf,
            }],
        );
        write_text(&dir.join(format!("mode{n}.svg")), &imf)?;
        let mean = line_chart(
            &format!("Mode {n}: data, envelopes and mean"),
            t,
            &[
                Line {
                    label: "data",
                    color: "#888888",
                    values: &m.input,
                },
                Line {
                    label: "upper",
                    color: "#c0392b",
                    values: &m.upper,
                },
                Line {
                    label: "lower",
                    color: "#27ae60",
                    values: &m.lower,
                },
                Line {
                    label: "mean",
                    color: "#1f4e9c",
                    values: &m.residue,
                },
            ],
        );
        write_text(&dir.join(format!("mean{n}.svg")), &mean)?;
    }
    let overview = line_chart(
        "Data and final residue",
        t,
        &[
            Line {
                label: "data",
                color: "#888888",
                values: series.values(),
            },
            Line {
                label: "residue",
                color: "#c0392b",
                values: final_residue,
            },
        ],
    );
    write_text(&dir.join("overview.svg"), &overview)
}

fn timing(d: &Decomposition, seconds: f64) -> MethodTiming {
    let passes_per_mode: Vec<usize> = d.modes.iter().map(|m| m.envelope_passes).collect();
    MethodTiming {
        seconds,
        modes: d.modes.len(),
        envelope_passes: passes_per_mode.iter().sum(),
        passes_per_mode,
    }
}

/// Acceptable time ratio for a size step of `factor`: [0.7, 1.3] times it.
fn scaling_band(factor: f64) -> [f64; 2] {
    [0.7 * factor, 1.3 * factor]
}

pub fn bench_cmd(args: &BenchArgs) -> Result<BenchReport, CliError> {
    if args.sizes.is_empty() || args.sizes.iter().any(|&n| n < 4) {
        return Err(CliError::Usage("--sizes needs values of at least 4".into()));
    }
    if args.repeats == 0 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    let (policy, strategy) = (ExtensionPolicy::Even, ResidueStrategy::EnvelopeMean);
    let mut sizes = Vec::with_capacity(args.sizes.len());
    for &n in &args.sizes {
        let series = signals::mixed(n, args.seed);
        let mut best = f64::INFINITY;
        let mut result = None;
        for _ in 0..args.repeats {
            let start = Instant::now();
            let d = decompose(&series, policy, strategy, args.max_modes)?;
            best = best.min(start.elapsed().as_secs_f64());
            result = Some(d);
        }
        let sawtooth = timing(&result.expect("at least one repeat"), best);
        let mut size = BenchSize {
            n,
            sawtooth,
            emd: None,
            emd_threshold_sensitivity: None,
            sawtooth_repeatable: None,
            speedup: None,
        };
        if n <= args.emd_max_size {
            let report = compare_methods(
                &series,
                policy,
                strategy,
                &SiftConfig::default(),
                args.max_modes,
            )?;
            let emd = timing(
                &report.emd.decomposition,
                report.emd.wall_time.as_secs_f64(),
            );
            size.speedup = Some(emd.seconds / size.sawtooth.seconds);
            size.emd = Some(emd);
            size.emd_threshold_sensitivity = Some(report.emd_threshold_sensitivity);
            size.sawtooth_repeatable = Some(report.sawtooth_repeatable);
        }
        eprintln!(
            "n = {n}: sawtooth {:.4} s{}",
            size.sawtooth.seconds,
            size.emd
                .as_ref()
                .map(|e| format!(", emd {:.4} s", e.seconds))
                .unwrap_or_default()
        );
        sizes.push(size);
    }
    let linear_scaling = sizes
        .windows(2)
        .map(|w| {
            let factor = w[1].n as f64 / w[0].n as f64;
            let accepted = scaling_band(factor);
            let time_ratio = w[1].sawtooth.seconds / w[0].sawtooth.seconds;
            ScalingCheck {
                from: w[0].n,
                to: w[1].n,
                time_ratio,
                accepted,
                linear: (accepted[0]..=accepted[1]).contains(&time_ratio),
            }
        })
        .collect();
    let report = BenchReport {
        seed: args.seed,
        signal: "mixed",
        extension: policy.name(),
        strategy: strategy.name(),
        repeats: args.repeats,
        sizes,
        linear_scaling,
    };
    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let path = args.out.join("bench.json");
    let mut w = create(&path)?;
    serde_json::to_writer_pretty(&mut w, &report)?;
    writeln!(w).map_err(|e| CliError::io(&path, e))?;
    w.flush().map_err(|e| CliError::io(&path, e))?;
    Ok(report)
}

pub fn generate(args: &GenerateArgs) -> Result<TimeSeries, CliError> {
    if args.n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    Ok(match args.kind {
        SignalKind::Sine => signals::sine(args.n, args.periods),
        SignalKind::TwoTone => signals::two_tone(args.n),
        SignalKind::Randomwalk => signals::random_walk(args.n, args.seed),
        SignalKind::Mixed => signals::mixed(args.n, args.seed),
    })
}

pub fn generate_cmd(args: &GenerateArgs) -> Result<(), CliError> {
    let series = generate(args)?;
    match &args.out {
        Some(path) => write_series(create(path)?, &series),
        None => write_series(io::stdout().lock(), &series),
    }
}
