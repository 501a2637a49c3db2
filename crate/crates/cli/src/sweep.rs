//! `obd sweep`: one estimator run per (n, p, class, size) cell over G(n, p)
//! bases, written as CSV in grid order.
//!
//! Each cell draws its base graph and its trials from `--seed`. With
//! `--resume`, rows already present in the output file are kept and only
//! the missing cells are run; the file is rewritten after every cell, so an
//! interrupted sweep loses at most the cell in progress.

use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use obd::estimator::{estimate, EstimateConfig, Mode, Plan};
use obd::generators::{cycle, matching, path, random_gnp, random_tree};
use obd::Graph;

use crate::{emit, formula, parse_probability, CliResult, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TemplateClass {
    /// Cycle on `size` vertices (default n).
    Cycle,
    /// Path on `size` vertices (default n).
    Path,
    /// `size` disjoint edges (default n / 2).
    Matching,
    /// Random tree on `size` vertices with maximum degree 4 (default n).
    Tree,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Comma-separated base sizes; an empty list gives an empty grid.
    #[arg(long, default_value = "")]
    n: String,
    /// Comma-separated edge probabilities.
    #[arg(long, default_value = "0.5")]
    p: String,
    /// Comma-separated template classes.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "cycle")]
    class: Vec<TemplateClass>,
    /// Comma-separated template sizes; each class's default if absent.
    #[arg(long)]
    size: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = crate::default_workers())]
    workers: usize,
    /// CSV output file; standard output if absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Keep rows already in the output file and run only missing cells.
    #[arg(long, requires = "output")]
    resume: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub p: f64,
    pub class: TemplateClass,
    pub size: usize,
    pub seed: u64,
    pub trials: u64,
    pub mean: f64,
    pub mean_num: String,
    pub mean_den: String,
    pub variance: f64,
    pub zero_fraction: f64,
    pub ratio: Option<f64>,
    pub formula: f64,
}

type Key = (usize, u64, TemplateClass, usize);

fn key(n: usize, p: f64, class: TemplateClass, size: usize) -> Key {
    (n, p.to_bits(), class, size)
}

fn list<T>(text: &str, what: &str, parse: impl Fn(&str) -> CliResult<T>) -> CliResult<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse(t).map_err(|e| Failure::validation(format!("{what}: {}", e.message))))
        .collect()
}

fn parse_usize(t: &str) -> CliResult<usize> {
    t.parse().map_err(|_| Failure::validation(format!("`{t}` is not a non-negative integer")))
}

fn template(class: TemplateClass, size: usize, n: usize, seed: u64) -> CliResult<Graph> {
    let vertices = match class {
        TemplateClass::Matching => size.checked_mul(2),
        _ => Some(size),
    };
    if vertices.is_none_or(|v| v > n) {
        return Err(Failure::validation(format!("{class:?} of size {size} does not fit in {n} vertices")));
    }
    Ok(match class {
        TemplateClass::Cycle => cycle(size)?,
        TemplateClass::Path if size == 0 => return Err(Failure::validation("a path needs at least one vertex")),
        TemplateClass::Path => path(size - 1),
        TemplateClass::Matching => matching(size),
        TemplateClass::Tree => random_tree(size, 4, &mut ChaCha8Rng::seed_from_u64(seed))?,
    })
}

fn default_size(class: TemplateClass, n: usize) -> usize {
    match class {
        TemplateClass::Matching => n / 2,
        _ => n,
    }
}

fn to_csv(rows: &[SweepRow]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    // Written by hand so that an empty grid still gets a header line.
    w.write_record([
        "n",
        "p",
        "class",
        "size",
        "seed",
        "trials",
        "mean",
        "mean_num",
        "mean_den",
        "variance",
        "zero_fraction",
        "ratio",
        "formula",
    ])
    .map_err(|e| Failure::internal(e.to_string()))?;
    for row in rows {
        w.serialize(row).map_err(|e| Failure::internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::internal(e.to_string()))
}

pub fn run(args: &SweepArgs) -> CliResult<()> {
    let ns = list(&args.n, "--n", parse_usize)?;
    let ps = list(&args.p, "--p", parse_probability)?;
    let sizes = args.size.as_deref().map(|s| list(s, "--size", parse_usize)).transpose()?;
    if args.trials == 0 {
        return Err(Failure::validation("at least one trial is required"));
    }

    let mut cells = Vec::new();
    let mut seen = HashSet::new();
    for &n in &ns {
        for &p in &ps {
            for &class in &args.class {
                let class_sizes = sizes.clone().unwrap_or_else(|| vec![default_size(class, n)]);
                for size in class_sizes {
                    if !seen.insert(key(n, p, class, size)) {
                        return Err(Failure::validation(format!(
                            "duplicate cell n={n} p={p} class={class:?} size={size}"
                        )));
                    }
                    cells.push((n, p, class, size));
                }
            }
        }
    }

    let mut done: BTreeMap<Key, SweepRow> = BTreeMap::new();
    if let Some(path) = args.output.as_ref().filter(|p| args.resume && p.exists()) {
        let mut reader =
            csv::Reader::from_path(path).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
        for row in reader.deserialize::<SweepRow>() {
            let row = row.map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
            let k = key(row.n, row.p, row.class, row.size);
            if !seen.contains(&k) {
                return Err(Failure::validation(format!(
                    "{} holds a row outside this grid (n={} p={} class={:?} size={})",
                    path.display(),
                    row.n,
                    row.p,
                    row.class,
                    row.size
                )));
            }
            if row.seed != args.seed || row.trials != args.trials {
                return Err(Failure::validation(format!(
                    "{} was written with a different seed or trial count",
                    path.display()
                )));
            }
            if done.insert(k, row).is_some() {
                return Err(Failure::validation(format!("{} holds a duplicate cell", path.display())));
            }
        }
    }

    let ordered = |done: &BTreeMap<Key, SweepRow>| -> Vec<SweepRow> {
        cells.iter().filter_map(|&(n, p, class, size)| done.get(&key(n, p, class, size)).cloned()).collect()
    };
    for &(n, p, class, size) in &cells {
        if done.contains_key(&key(n, p, class, size)) {
            continue;
        }
        let h = template(class, size, n, args.seed)?;
        let g = random_gnp(n, p, args.seed)?;
        let config =
            EstimateConfig { mode: Mode::Fixed { trials: args.trials }, seed: args.seed, workers: args.workers.max(1) };
        let report = estimate(&Plan::auto(&h)?, &g, &config)?;
        let row = report.row("", "", n, Some(p));
        done.insert(
            key(n, p, class, size),
            SweepRow {
                n,
                p,
                class,
                size,
                seed: args.seed,
                trials: args.trials,
                mean: report.point_estimate().to_f64().unwrap_or(f64::NAN),
                mean_num: row.mean_num,
                mean_den: row.mean_den,
                variance: row.variance,
                zero_fraction: row.zero_fraction,
                ratio: row.ratio,
                formula: formula(n, p, &h, &report)?,
            },
        );
        if let Some(path) = &args.output {
            emit(Some(path), &to_csv(&ordered(&done))?)?;
        }
    }
    let text = to_csv(&ordered(&done))?;
    emit(args.output.as_deref(), &text)
}
