//! Experiment sweeps over graph families, one CSV row per instance.
//!
//! Rows are computed by a rayon worker pool (size from `ABLGRAPH_WORKERS`,
//! default all cores) and written in input order. With fixed seeds and flags
//! the CSV is byte-identical across runs; `runtime_ms` is reported as 0
//! unless `--timings` is given, since wall-clock times are not reproducible.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use rayon::prelude::*;

use ablgraph::abl::{abelian_girth, dumbbell_bound, shortest_theta_bound};
use ablgraph::gen::random_regular;
use ablgraph::girth::girth;
use ablgraph::graph::Multigraph;
use ablgraph::moore::certify_abl_upper;

use crate::CliError;

#[derive(Args)]
pub struct ExperimentArgs {
    /// Graph family to sweep; only `random-regular` is available.
    #[arg(long)]
    family: String,
    /// Degree for regular families.
    #[arg(long)]
    d: usize,
    /// Comma-separated list of vertex counts.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Number of seeds per vertex count.
    #[arg(long)]
    seeds: u64,
    /// First seed; instance seeds are seed, seed+1, ...
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Run the exact abelian-girth engine on instances up to this size.
    #[arg(long, default_value_t = 20)]
    exact_max_n: usize,
    /// Run the structural bound stage on instances up to this size.
    #[arg(long, default_value_t = 200)]
    structural_max_n: usize,
    /// Report real runtimes (breaks byte-for-byte reproducibility).
    #[arg(long, default_value_t = false)]
    timings: bool,
}

pub const CSV_HEADER: &str = "graph_id,family,n,d,girth,abl_lower,abl_upper,abl_exact,moore_bound,ratio_girth,ratio_abl,runtime_ms";

struct Row {
    graph_id: String,
    family: String,
    n: usize,
    d: usize,
    girth: Option<usize>,
    abl_lower: Option<usize>,
    abl_upper: Option<usize>,
    abl_exact: Option<usize>,
    moore_bound: Option<usize>,
    ratio_girth: Option<f64>,
    ratio_abl: Option<f64>,
    runtime_ms: u128,
}

impl Row {
    fn to_csv(&self) -> String {
        let int = |v: &Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let ratio = |v: &Option<f64>| v.map(|x| format!("{x:.4}")).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.graph_id,
            self.family,
            self.n,
            self.d,
            int(&self.girth),
            int(&self.abl_lower),
            int(&self.abl_upper),
            int(&self.abl_exact),
            int(&self.moore_bound),
            ratio(&self.ratio_girth),
            ratio(&self.ratio_abl),
            self.runtime_ms
        )
    }
}

pub fn run(args: ExperimentArgs) -> Result<(), CliError> {
    if args.family != "random-regular" {
        return Err(CliError::Usage(format!(
            "unknown experiment family {:?}; available: random-regular",
            args.family
        )));
    }
    if let Ok(workers) = std::env::var("ABLGRAPH_WORKERS") {
        let count: usize = workers
            .parse()
            .map_err(|_| CliError::Usage("ABLGRAPH_WORKERS must be a positive integer".into()))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(count)
            .build_global()
            .map_err(|e| CliError::Usage(format!("worker pool: {e}")))?;
    }

    let mut instances = Vec::new();
    for &n in &args.n {
        for s in 0..args.seeds {
            instances.push((n, args.seed + s));
        }
    }
    let rows: Result<Vec<Row>, CliError> = instances
        .par_iter()
        .map(|&(n, seed)| compute_row(&args, n, seed))
        .collect();
    let rows = rows?;

    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    match &args.csv {
        Some(path) => fs::write(path, out)
            .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn compute_row(args: &ExperimentArgs, n: usize, seed: u64) -> Result<Row, CliError> {
    let started = Instant::now();
    let d = args.d;
    let g = random_regular(n, d, seed).map_err(|e| CliError::Budget(e.to_string()))?;

    let girth_len = girth(&g).value();
    let abl_lower = girth_len.map(|v| 3 * v);
    let moore_bound = certify_abl_upper(&g, 0).ok().map(|c| c.bound);
    let structural = if n <= args.structural_max_n {
        structural_min(&g)
    } else {
        None
    };
    let abl_upper = match (structural, moore_bound) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let abl_exact = if n <= args.exact_max_n {
        abelian_girth(&g).value.finite()
    } else {
        None
    };

    let denom = if d >= 3 {
        Some((n as f64).ln() / ((d - 1) as f64).ln())
    } else {
        None
    };
    let ratio = |v: Option<usize>| match (v, denom) {
        (Some(v), Some(den)) if den > 0.0 => Some(v as f64 / den),
        _ => None,
    };

    Ok(Row {
        graph_id: format!("random-regular-n{n}-d{d}-s{seed}"),
        family: args.family.clone(),
        n,
        d,
        girth: girth_len,
        abl_lower,
        abl_upper,
        abl_exact,
        moore_bound,
        ratio_girth: ratio(girth_len),
        ratio_abl: ratio(abl_upper),
        runtime_ms: if args.timings {
            started.elapsed().as_millis()
        } else {
            0
        },
    })
}

fn structural_min(g: &Multigraph) -> Option<usize> {
    let theta = shortest_theta_bound(g).map(|(b, _)| b);
    let dumbbell = dumbbell_bound(g).map(|(b, _)| b);
    match (theta, dumbbell) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}
