//! Seeded comparison sweeps over generated instances.
//!
//! Instance `i` of a sweep is generated with seed `seed_base + i`. Instances are
//! evaluated in parallel; rows are merged and sorted by `(seed, algorithm)` so
//! the table does not depend on evaluation order.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::Algorithm;
use crate::error::{Error, Result};
use crate::oracle::optimal_makespan;
use crate::schedule::{metrics, ready_demand_per_slot, Schedule};
use crate::workload::{generate, GeneratorConfig, TaskSystem};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub generator: GeneratorConfig,
    pub algorithms: Vec<Algorithm>,
    pub repetitions: usize,
    pub seed_base: u64,
    /// Oracle node budget used by [`gap_study`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_budget: Option<u64>,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(Error::InvalidConfig("repetitions must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("no algorithms selected".into()));
        }
        if self.generator.splitable && self.algorithms.contains(&Algorithm::Lcf) {
            return Err(Error::ModeMismatch { algorithm: "lcf" });
        }
        self.generator.validate()
    }

    pub fn instance_seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.repetitions as u64).map(|i| self.seed_base.wrapping_add(i))
    }

    pub fn instance(&self, seed: u64) -> Result<TaskSystem> {
        generate(&GeneratorConfig {
            seed,
            ..self.generator.clone()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub instance_seed: u64,
    pub algorithm: Algorithm,
    pub makespan: usize,
    pub lower_bound: usize,
    pub ratio: f64,
    pub total_waste: u64,
    /// Informational only; never part of any equality check.
    pub wall_time_ms: f64,
    pub oracle_makespan: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub instances: usize,
    pub mean_ratio: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// Instances where the makespan equals the oracle's, out of those the
    /// oracle solved.
    pub optimal_hits: Option<usize>,
    pub max_gap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub rows: Vec<ResultRow>,
    pub summaries: Vec<AlgorithmSummary>,
    /// Instances the oracle solved (gap studies only).
    pub oracle_solved: usize,
    /// Instances whose oracle search ran out of budget; excluded from the
    /// optimality aggregates.
    pub oracle_exceeded: usize,
}

impl ExperimentResult {
    pub fn summary(&self, algorithm: Algorithm) -> Option<&AlgorithmSummary> {
        self.summaries.iter().find(|s| s.algorithm == algorithm)
    }

    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &ExperimentResult) -> bool {
        let strip = |r: &ExperimentResult| {
            r.rows
                .iter()
                .map(|row| ResultRow {
                    wall_time_ms: 0.0,
                    ..row.clone()
                })
                .collect::<Vec<_>>()
        };
        strip(self) == strip(other)
            && self.summaries == other.summaries
            && self.oracle_exceeded == other.oracle_exceeded
    }
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    run(spec, None)
}

/// Like [`run_experiment`], with the exact optimum attached to every row.
pub fn gap_study(spec: &ExperimentSpec, budget: u64) -> Result<ExperimentResult> {
    run(spec, Some(budget))
}

fn run(spec: &ExperimentSpec, oracle_budget: Option<u64>) -> Result<ExperimentResult> {
    spec.validate()?;
    let seeds: Vec<u64> = spec.instance_seeds().collect();

    let per_instance: Vec<(Vec<ResultRow>, Option<bool>)> = seeds
        .par_iter()
        .map(|&seed| evaluate_instance(spec, seed, oracle_budget))
        .collect::<Result<_>>()?;

    let mut oracle_solved = 0;
    let mut oracle_exceeded = 0;
    let mut rows = Vec::with_capacity(seeds.len() * spec.algorithms.len());
    for (instance_rows, solved) in per_instance {
        match solved {
            Some(true) => oracle_solved += 1,
            Some(false) => oracle_exceeded += 1,
            None => {}
        }
        rows.extend(instance_rows);
    }
    rows.sort_by(|a, b| {
        a.instance_seed
            .cmp(&b.instance_seed)
            .then(a.algorithm.name().cmp(b.algorithm.name()))
    });

    let summaries = summarize(&rows, oracle_budget.is_some());
    Ok(ExperimentResult {
        rows,
        summaries,
        oracle_solved,
        oracle_exceeded,
    })
}

fn evaluate_instance(
    spec: &ExperimentSpec,
    seed: u64,
    oracle_budget: Option<u64>,
) -> Result<(Vec<ResultRow>, Option<bool>)> {
    let system = spec.instance(seed)?;
    let oracle = match oracle_budget {
        None => None,
        Some(budget) => match optimal_makespan(&system, budget) {
            Ok(opt) => Some(Some(opt)),
            Err(Error::BudgetExceeded { .. }) => Some(None),
            Err(e) => return Err(e),
        },
    };

    let mut rows = Vec::with_capacity(spec.algorithms.len());
    for &algorithm in &spec.algorithms {
        let start = Instant::now();
        let schedule = algorithm.run(&system)?;
        let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        let m = metrics(&system, &schedule).map_err(|source| Error::Experiment {
            seed,
            algorithm: algorithm.name(),
            source: Box::new(source),
        })?;
        rows.push(ResultRow {
            instance_seed: seed,
            algorithm,
            makespan: m.makespan,
            lower_bound: m.lower_bound,
            ratio: m.ratio,
            total_waste: m.total_waste,
            wall_time_ms,
            oracle_makespan: oracle.flatten(),
        });
    }
    Ok((rows, oracle.map(|o| o.is_some())))
}

/// Per-algorithm aggregates over `rows`, sorted by algorithm name. Rows are
/// put in canonical order first so the result does not depend on input order.
pub fn summarize(rows: &[ResultRow], with_oracle: bool) -> Vec<AlgorithmSummary> {
    let mut sorted: Vec<&ResultRow> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        a.algorithm
            .name()
            .cmp(b.algorithm.name())
            .then(a.instance_seed.cmp(&b.instance_seed))
    });

    let mut out: Vec<AlgorithmSummary> = Vec::new();
    for group in sorted.chunk_by(|a, b| a.algorithm == b.algorithm) {
        let ratios: Vec<f64> = group.iter().map(|r| r.ratio).collect();
        let solved: Vec<(usize, usize)> = group
            .iter()
            .filter_map(|r| r.oracle_makespan.map(|o| (r.makespan, o)))
            .collect();
        out.push(AlgorithmSummary {
            algorithm: group[0].algorithm,
            instances: group.len(),
            mean_ratio: ratios.iter().sum::<f64>() / ratios.len() as f64,
            min_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
            max_ratio: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            optimal_hits: with_oracle.then(|| solved.iter().filter(|(m, o)| m == o).count()),
            max_gap: with_oracle.then(|| solved.iter().map(|(m, o)| m - o).max().unwrap_or(0)),
        });
    }
    out
}

/// CSV table of `result`. The `wall_time_ms` column is left empty unless
/// `with_timing` is set, so untimed output is byte-stable.
pub fn write_csv(result: &ExperimentResult, with_oracle: bool, with_timing: bool) -> Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "instance_seed",
        "algorithm",
        "makespan",
        "lower_bound",
        "ratio",
        "total_waste",
        "wall_time_ms",
    ];
    if with_oracle {
        header.push("oracle_makespan");
    }
    writer.write_record(&header)?;
    for row in &result.rows {
        let mut record = vec![
            row.instance_seed.to_string(),
            row.algorithm.name().to_string(),
            row.makespan.to_string(),
            row.lower_bound.to_string(),
            format!("{:.6}", row.ratio),
            row.total_waste.to_string(),
            if with_timing {
                format!("{:.3}", row.wall_time_ms)
            } else {
                String::new()
            },
        ];
        if with_oracle {
            record.push(row.oracle_makespan.map(|o| o.to_string()).unwrap_or_default());
        }
        writer.write_record(&record)?;
    }
    writer
        .into_inner()
        .map_err(|e| Error::Io(e.into_error()))
}

/// Human-readable aggregate lines, one per algorithm.
pub fn format_summary(result: &ExperimentResult) -> String {
    let mut out = String::new();
    for s in &result.summaries {
        let _ = write!(
            out,
            "{:<6} n={} mean_ratio={:.4} min_ratio={:.4} max_ratio={:.4}",
            s.algorithm.name(),
            s.instances,
            s.mean_ratio,
            s.min_ratio,
            s.max_ratio
        );
        if let (Some(hits), Some(gap)) = (s.optimal_hits, s.max_gap) {
            let _ = write!(out, " optimal={hits}/{} max_gap={gap}", result.oracle_solved);
        }
        out.push('\n');
    }
    if result.oracle_exceeded > 0 {
        let _ = writeln!(out, "oracle budget exceeded on {} instance(s)", result.oracle_exceeded);
    }
    out
}

/// True when every slot but the last starts with at least `M` processors of
/// ready demand.
pub fn demand_saturated(system: &TaskSystem, schedule: &Schedule) -> bool {
    let demand = ready_demand_per_slot(system, schedule);
    let m = u64::from(system.processors);
    demand
        .iter()
        .take(demand.len().saturating_sub(1))
        .all(|&d| d >= m)
}

/// An instance on which `winner` finishes strictly earlier than `loser`.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceExample {
    pub winner: Algorithm,
    pub loser: Algorithm,
    pub seed: u64,
    pub system: TaskSystem,
    pub winner_makespan: usize,
    pub loser_makespan: usize,
}

/// For every ordered pair of `algorithms`, the first seed in `seeds` whose
/// instance (generated from `base`) separates them. Pairs with no witness in
/// the range are absent from the output.
pub fn find_dominance_examples(
    base: &GeneratorConfig,
    algorithms: &[Algorithm],
    seeds: std::ops::Range<u64>,
) -> Result<Vec<DominanceExample>> {
    let pairs: Vec<(Algorithm, Algorithm)> = algorithms
        .iter()
        .flat_map(|&w| algorithms.iter().map(move |&l| (w, l)))
        .filter(|(w, l)| w != l)
        .collect();
    let mut found: Vec<Option<DominanceExample>> = vec![None; pairs.len()];

    for seed in seeds {
        if found.iter().all(Option::is_some) {
            break;
        }
        let system = generate(&GeneratorConfig {
            seed,
            ..base.clone()
        })?;
        let makespans: Vec<usize> = algorithms
            .iter()
            .map(|a| a.run(&system).map(|s| s.makespan()))
            .collect::<Result<_>>()?;
        let of = |a: Algorithm| makespans[algorithms.iter().position(|&x| x == a).unwrap()];
        for (slot, &(w, l)) in found.iter_mut().zip(&pairs) {
            if slot.is_none() && of(w) < of(l) {
                *slot = Some(DominanceExample {
                    winner: w,
                    loser: l,
                    seed,
                    system: system.clone(),
                    winner_makespan: of(w),
                    loser_makespan: of(l),
                });
            }
        }
    }
    Ok(found.into_iter().flatten().collect())
}
