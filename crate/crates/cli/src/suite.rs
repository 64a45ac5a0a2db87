//! Batch verification over seeded random instances.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use lowdeg_core::augment::Verdict;
use lowdeg_core::{
    augment, connected_components, generators, verify_augmentation, Graph, Ordering, Vertex,
};

use crate::bench::to_csv;
use crate::{
    effective_budget, emit, successor_of, to_json, CliError, Format, OrderingSource, Status,
};

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Number of graphs.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 2)]
    pub min_n: usize,
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    /// Upper limit on the number of components per graph.
    #[arg(long, default_value_t = 1)]
    pub components: usize,
    /// Comma-separated radii.
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
    pub r: Vec<usize>,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// degeneracy, natural or random:SEED; random seeds are offset by the
    /// instance index.
    #[arg(long, default_value = "random:0")]
    pub ordering: OrderingSource,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// One `(graph, ordering, r)` run of the pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRecord {
    pub generator: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub components: usize,
    pub ordering: String,
    pub r: usize,
    pub col_2r: usize,
    /// Exact value when `adm_exact`, otherwise a lower bound.
    pub adm: usize,
    pub adm_exact: bool,
    pub bound: usize,
    /// `bound - adm`; never negative when `adm_exact` holds and the bound
    /// holds.
    pub margin: i64,
    pub verdict: Verdict,
    pub successor_ok: bool,
    pub violations: usize,
    pub augment_s: f64,
    pub verify_s: f64,
    pub successor_s: f64,
}

/// A seeded random graph with between 1 and `max_components` components
/// and `min_n..=max_n` vertices in total. Each component is a random
/// connected graph with up to twice as many edges as vertices; vertex ids
/// are shuffled across components.
pub fn random_instance(seed: u64, min_n: usize, max_n: usize, max_components: usize) -> Graph {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=max_components.max(1));
    let n = rng.gen_range(min_n.max(k)..=max_n.max(min_n).max(k));
    // Split n into k positive parts.
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(&mut rng);
    let mut cuts = cuts[..k - 1].to_vec();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(n);
    let mut label: Vec<Vertex> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut edges = Vec::new();
    for w in cuts.windows(2) {
        let (start, size) = (w[0], w[1] - w[0]);
        let max_m = size * (size - 1) / 2;
        let m = rng.gen_range(size - 1..=max_m.min(2 * size).max(size - 1));
        let part = generators::random_connected(size, m, rng.gen()).expect("m is feasible");
        edges.extend(
            part.edges()
                .map(|(u, v)| (label[start + u], label[start + v])),
        );
    }
    Graph::new(n, edges).expect("in range")
}

fn instance_ordering(source: &OrderingSource, g: &Graph, index: u64) -> Result<Ordering, CliError> {
    match source {
        OrderingSource::Random(seed) => Ok(Ordering::random(g.n(), seed.wrapping_add(index))),
        OrderingSource::File(_) => Err(CliError::Usage(
            "suite orderings cannot come from a file".into(),
        )),
        other => other.resolve(g),
    }
}

/// Runs augment, verify and the successor check for one radius.
pub fn run_instance(
    generator: &str,
    seed: u64,
    g: &Graph,
    l: &Ordering,
    ordering: &str,
    r: usize,
    budget: Option<u64>,
) -> ExperimentRecord {
    let t0 = Instant::now();
    let a = augment(g, l).expect("suite graphs are non-empty");
    let augment_s = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let report = verify_augmentation(g, l, &a, r, budget);
    let verify_s = t1.elapsed().as_secs_f64();

    let t2 = Instant::now();
    let successor_ok = successor_of(&a).is_ok();
    let successor_s = t2.elapsed().as_secs_f64();

    ExperimentRecord {
        generator: generator.to_string(),
        seed,
        n: g.n(),
        m: g.m(),
        components: connected_components(g).len(),
        ordering: ordering.to_string(),
        r,
        col_2r: report.col_2r,
        adm: report.adm.value,
        adm_exact: report.adm.exact,
        bound: report.bound,
        margin: report.bound as i64 - report.adm.value as i64,
        verdict: report.verdict,
        successor_ok,
        violations: report.violations.len() + usize::from(!successor_ok),
        augment_s,
        verify_s,
        successor_s,
    }
}

/// Instances are processed in parallel; the records come back in
/// `(instance, r)` order regardless.
pub fn run_suite(a: &SuiteArgs) -> Result<Vec<ExperimentRecord>, CliError> {
    if a.min_n == 0 || a.min_n > a.max_n {
        return Err(CliError::Usage(format!(
            "need 1 <= --min-n <= --max-n, got {} and {}",
            a.min_n, a.max_n
        )));
    }
    if matches!(a.ordering, OrderingSource::File(_)) {
        return Err(CliError::Usage(
            "suite orderings cannot come from a file".into(),
        ));
    }
    let per_instance: Vec<Vec<ExperimentRecord>> = (0..a.count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = a.seed.wrapping_add(i);
            let g = random_instance(seed, a.min_n, a.max_n, a.components);
            let l = instance_ordering(&a.ordering, &g, i)?;
            let label = match &a.ordering {
                OrderingSource::Random(s) => OrderingSource::Random(s.wrapping_add(i)).to_string(),
                other => other.to_string(),
            };
            let budget = effective_budget(g.n(), a.budget);
            Ok(a.r
                .iter()
                .map(|&r| run_instance("random_components", seed, &g, &l, &label, r, budget))
                .collect())
        })
        .collect::<Result<_, CliError>>()?;
    Ok(per_instance.into_iter().flatten().collect())
}

pub fn cmd_suite(a: &SuiteArgs) -> Result<Status, CliError> {
    let records = run_suite(a)?;
    let text = match a.format {
        Format::Json => to_json(&records),
        Format::Csv => to_csv(&records),
    };
    emit(a.out.as_deref(), &text)?;
    let failed = records.iter().any(|r| r.violations > 0);
    Ok(if failed { Status::Failed } else { Status::Ok })
}
