//! Shared helpers for the integration suites.

use ablgraph::graph::Multigraph;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Random connected multigraph with min degree >= 2, at most `max_v`
/// vertices and `max_e` edges, by rejection sampling. Loops and parallel
/// edges occur naturally.
pub fn random_leafless_multigraph(max_v: usize, max_e: usize, rng: &mut ChaCha8Rng) -> Multigraph {
    loop {
        let n = rng.random_range(1..=max_v);
        let m = rng.random_range(n..=max_e.max(n));
        let edges: Vec<(usize, usize)> = (0..m)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect();
        let g = Multigraph::new(n, edges).expect("ids in range");
        if g.is_connected() && g.min_degree().unwrap_or(0) >= 2 && g.edge_count() <= max_e {
            return g;
        }
    }
}

/// Run a criterion body, printing one PASS/FAIL line (visible under
/// `--nocapture`) before propagating any panic.
pub fn criterion(name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("{name}: PASS"),
        Err(e) => {
            println!("{name}: FAIL");
            std::panic::resume_unwind(e);
        }
    }
}
