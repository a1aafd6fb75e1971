//! Timing runs over random regular graphs.

use std::fmt::Write as _;
use std::io;
use std::time::Instant;

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generate::{gen_random_regular, GenerateError};
use crate::matcher::{maximum_matching, MatcherConfig, MatcherError};

pub const CSV_HEADER: &str = "delta,n,trial,seed,wall_micros,matched,augmentations,steps,budget_exceeded";

#[derive(Clone, Debug, PartialEq)]
pub struct BenchPlan {
    pub deltas: Vec<usize>,
    pub sizes: Vec<usize>,
    pub trials_per_cell: usize,
    pub seed: u64,
    pub budget_factor: f64,
    /// 1 runs everything on the calling thread.
    pub workers: usize,
}

impl Default for BenchPlan {
    fn default() -> Self {
        BenchPlan {
            deltas: vec![3, 4, 5],
            sizes: (1..=10).map(|k| 100 * k).collect(),
            trials_per_cell: 5,
            seed: 1,
            budget_factor: 1.0,
            workers: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub delta: usize,
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub wall_micros: u64,
    pub matched: usize,
    pub augmentations: usize,
    pub steps: u64,
    pub budget_exceeded: usize,
    #[serde(skip)]
    pub max_path_len: usize,
    #[serde(skip)]
    pub max_sprouts: usize,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("plan needs at least one trial")]
    NoTrials,
    #[error("plan needs at least one worker")]
    NoWorkers,
    #[error("cell delta={delta} n={n}: {source}")]
    Generate {
        delta: usize,
        n: usize,
        source: GenerateError,
    },
    #[error("cell delta={delta} n={n}: {source}")]
    Solve {
        delta: usize,
        n: usize,
        source: MatcherError,
    },
    #[error("need at least 3 sizes with records for delta={0}")]
    InsufficientData(usize),
    #[error("no records")]
    Empty,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("worker pool: {0}")]
    Pool(String),
}

impl BenchPlan {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.trials_per_cell == 0 {
            return Err(BenchError::NoTrials);
        }
        if self.workers == 0 {
            return Err(BenchError::NoWorkers);
        }
        for &delta in &self.deltas {
            for &n in &self.sizes {
                if delta >= n || (n * delta) % 2 == 1 {
                    return Err(BenchError::Generate {
                        delta,
                        n,
                        source: GenerateError::Infeasible { n, delta },
                    });
                }
            }
        }
        Ok(())
    }

    fn cells(&self) -> Vec<(usize, usize, usize)> {
        let mut cells = Vec::new();
        for &delta in &self.deltas {
            for &n in &self.sizes {
                for trial in 0..self.trials_per_cell {
                    cells.push((delta, n, trial));
                }
            }
        }
        cells
    }
}

/// Seed for one `(delta, n, trial)` cell, drawn from its own stream of the
/// plan seed.
pub fn cell_seed(plan_seed: u64, delta: usize, n: usize, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(plan_seed);
    rng.set_stream(((delta as u64) << 48) ^ ((n as u64) << 20) ^ trial as u64);
    rng.next_u64()
}

fn run_cell(plan: &BenchPlan, delta: usize, n: usize, trial: usize) -> Result<BenchRecord, BenchError> {
    let seed = cell_seed(plan.seed, delta, n, trial);
    let g = gen_random_regular(n, delta, seed).map_err(|source| BenchError::Generate { delta, n, source })?;
    let cfg = MatcherConfig {
        budget_factor: plan.budget_factor,
        cross_check: false,
        ..MatcherConfig::default()
    };
    let start = Instant::now();
    let result = maximum_matching(&g, &cfg);
    let wall_micros = start.elapsed().as_micros() as u64;
    let r = result.map_err(|source| BenchError::Solve { delta, n, source })?;
    Ok(BenchRecord {
        delta,
        n,
        trial,
        seed,
        wall_micros,
        matched: r.matching.len(),
        augmentations: r.augmentations,
        steps: r.total_steps,
        budget_exceeded: r.budget_exceeded.len(),
        max_path_len: r.max_path_len,
        max_sprouts: r.max_sprouts,
    })
}

/// One record per `(delta, n, trial)`, sorted by that key. Only the solver
/// call is timed.
pub fn run_bench(plan: &BenchPlan) -> Result<Vec<BenchRecord>, BenchError> {
    plan.validate()?;
    let cells = plan.cells();
    let mut records = if plan.workers == 1 {
        cells
            .iter()
            .map(|&(d, n, t)| run_cell(plan, d, n, t))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(plan.workers)
            .build()
            .map_err(|e| BenchError::Pool(e.to_string()))?;
        pool.install(|| {
            cells
                .par_iter()
                .map(|&(d, n, t)| run_cell(plan, d, n, t))
                .collect::<Result<Vec<_>, _>>()
        })?
    };
    records.sort_by_key(|r| (r.delta, r.n, r.trial));
    Ok(records)
}

pub fn budget_exceeded_total(records: &[BenchRecord]) -> usize {
    records.iter().map(|r| r.budget_exceeded).sum()
}

pub fn write_csv<W: io::Write>(records: &[BenchRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRecord>, BenchError> {
    let mut r = csv::Reader::from_reader(input);
    let records = r.deserialize().collect::<Result<Vec<BenchRecord>, _>>()?;
    Ok(records)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub points: usize,
}

/// Per-size statistics of `wall_micros`: (n, mean, min, max).
fn per_size(records: &[BenchRecord], delta: usize) -> Vec<(usize, f64, u64, u64)> {
    let mut sizes: Vec<usize> = records.iter().filter(|r| r.delta == delta).map(|r| r.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .into_iter()
        .map(|n| {
            let t: Vec<u64> = records
                .iter()
                .filter(|r| r.delta == delta && r.n == n)
                .map(|r| r.wall_micros)
                .collect();
            let mean = t.iter().sum::<u64>() as f64 / t.len() as f64;
            (n, mean, *t.iter().min().unwrap(), *t.iter().max().unwrap())
        })
        .collect()
}

/// Least-squares line through `(ln n, ln mean wall_micros)`.
pub fn fit_loglog_slope(records: &[BenchRecord], delta: usize) -> Result<Fit, BenchError> {
    let pts: Vec<(f64, f64)> = per_size(records, delta)
        .into_iter()
        .map(|(n, mean, _, _)| ((n as f64).ln(), mean.max(f64::MIN_POSITIVE).ln()))
        .collect();
    if pts.len() < 3 {
        return Err(BenchError::InsufficientData(delta));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(Fit {
        slope,
        intercept: my - slope * mx,
        r2,
        points: pts.len(),
    })
}

const COLORS: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Log-log plot of mean wall time per size, one series per degree, with
/// min/max whiskers.
pub fn emit_plot(records: &[BenchRecord]) -> Result<String, BenchError> {
    if records.is_empty() {
        return Err(BenchError::Empty);
    }
    let (w, h, pad) = (640.0, 420.0, 60.0);
    let lx = |n: f64| n.max(1.0).log10();
    let ly = |t: f64| t.max(1.0).log10();
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for r in records {
        x0 = x0.min(lx(r.n as f64));
        x1 = x1.max(lx(r.n as f64));
        y0 = y0.min(ly(r.wall_micros as f64));
        y1 = y1.max(ly(r.wall_micros as f64));
    }
    // single values still get a visible range
    if x1 - x0 < 1e-9 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 - y0 < 1e-9 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let px = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let py = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{pad} {pad} V{:.2} H{:.2}" fill="none" stroke="black"/>"#,
        h - pad,
        w - pad
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12">n (log scale)</text>"#,
        w / 2.0,
        h - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{:.2}" font-size="12" transform="rotate(-90 15 {:.2})" text-anchor="middle">wall time, microseconds (log scale)</text>"#,
        h / 2.0,
        h / 2.0
    );
    for (label, x) in [(10f64.powf(x0), x0), (10f64.powf(x1), x1)] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="10">{:.0}</text>"#,
            px(x),
            h - pad + 14.0,
            label
        );
    }
    for (label, y) in [(10f64.powf(y0), y0), (10f64.powf(y1), y1)] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-size="10">{:.0}</text>"#,
            pad - 4.0,
            py(y) + 3.0,
            label
        );
    }

    let mut deltas: Vec<usize> = records.iter().map(|r| r.delta).collect();
    deltas.sort_unstable();
    deltas.dedup();
    for (i, &delta) in deltas.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let stats = per_size(records, delta);
        let points: Vec<String> = stats
            .iter()
            .map(|&(n, mean, _, _)| format!("{:.2},{:.2}", px(lx(n as f64)), py(ly(mean))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}"/>"#,
            points.join(" ")
        );
        for &(n, mean, lo, hi) in &stats {
            let x = px(lx(n as f64));
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="{color}"/>"#,
                py(ly(lo as f64)),
                py(ly(hi as f64))
            );
            let _ = writeln!(
                s,
                r#"<circle cx="{x:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                py(ly(mean))
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" fill="{color}">delta={delta}</text>"#,
            pad + 10.0,
            pad + 14.0 * (i as f64 + 1.0)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
