//! Wall-clock timing of the construction.

use std::hint::black_box;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;

use lowdeg_core::{augment, generators, Graph};

use crate::{emit, to_json, CliError, Format, OrderingSource, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
pub enum BenchFamily {
    /// `size x size` grid.
    Grid,
    /// `G(n, 2n)` with `n = size`.
    RandomGnm,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = BenchFamily::Grid)]
    pub family: BenchFamily,
    /// Comma-separated sizes: grid side length, or vertex count.
    #[arg(long, value_delimiter = ',', default_values_t = [100, 200, 400])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "natural")]
    pub ordering: OrderingSource,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub family: BenchFamily,
    pub size: usize,
    pub n: usize,
    pub m: usize,
    pub reps: usize,
    pub min_s: f64,
    pub median_s: f64,
    pub mean_s: f64,
    pub stddev_s: f64,
}

pub fn instance(family: BenchFamily, size: usize, seed: u64) -> Result<Graph, CliError> {
    match family {
        BenchFamily::Grid => generators::grid(size, size),
        BenchFamily::RandomGnm => generators::random_gnm(size, 2 * size, seed),
    }
    .map_err(CliError::core("bench instance"))
}

/// Seconds taken by each of `reps` runs of [`augment`].
pub fn time_augment(g: &Graph, l: &lowdeg_core::Ordering, reps: usize) -> Vec<f64> {
    (0..reps)
        .map(|_| {
            let start = Instant::now();
            let a = augment(black_box(g), black_box(l)).expect("benchmark instances are non-empty");
            let t = start.elapsed().as_secs_f64();
            black_box(a);
            t
        })
        .collect()
}

fn summarise(family: BenchFamily, size: usize, g: &Graph, mut times: Vec<f64>) -> BenchRow {
    times.sort_by(f64::total_cmp);
    let k = times.len();
    let mean = times.iter().sum::<f64>() / k as f64;
    let var = times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (k.max(2) - 1) as f64;
    let median = if k % 2 == 1 {
        times[k / 2]
    } else {
        (times[k / 2 - 1] + times[k / 2]) / 2.0
    };
    BenchRow {
        family,
        size,
        n: g.n(),
        m: g.m(),
        reps: k,
        min_s: times[0],
        median_s: median,
        mean_s: mean,
        stddev_s: var.sqrt(),
    }
}

pub fn run_bench(
    family: BenchFamily,
    sizes: &[usize],
    reps: usize,
    seed: u64,
    ordering: &OrderingSource,
) -> Result<Vec<BenchRow>, CliError> {
    if reps == 0 {
        return Err(CliError::Usage("--reps must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let g = instance(family, size, seed)?;
        if g.is_empty() {
            return Err(CliError::Usage(format!("size {size} gives an empty graph")));
        }
        let l = ordering.resolve(&g)?;
        let times = time_augment(&g, &l, reps);
        rows.push(summarise(family, size, &g, times));
    }
    Ok(rows)
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("flat records serialise");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

pub fn cmd_bench(a: &BenchArgs) -> Result<Status, CliError> {
    let rows = run_bench(a.family, &a.sizes, a.reps, a.seed, &a.ordering)?;
    let text = match a.format {
        Format::Csv => to_csv(&rows),
        Format::Json => to_json(&rows),
    };
    emit(a.out.as_deref(), &text)?;
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bench_has_one_row_per_size() {
        let rows = run_bench(BenchFamily::Grid, &[3, 5], 3, 0, &OrderingSource::Natural).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[0].n, rows[0].m), (9, 12));
        assert_eq!(rows[1].n, 25);
        for r in &rows {
            assert!(r.min_s <= r.median_s && r.stddev_s >= 0.0);
        }
        let csv = to_csv(&rows);
        assert!(csv.starts_with("family,size,n,m,reps,min_s,median_s,mean_s,stddev_s\n"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn zero_reps_is_an_input_error() {
        assert!(run_bench(BenchFamily::Grid, &[3], 0, 0, &OrderingSource::Natural).is_err());
    }
}
