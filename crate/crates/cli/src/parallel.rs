//! Thread-pool drivers. Results are identical to the sequential versions in
//! `sqsum-core`; only `nodes_explored` may differ, since how much a branch
//! prunes depends on what other branches have found by then.

use rayon::prelude::*;
use sqsum_core::constructions::{scan_gap_bases, GapHit, GapSearch};
use sqsum_core::zp::{primes_in, PrimeModulus, SearchOptions, SearchResult, TableRow, ZpSearch};

pub fn pool(workers: usize) -> anyhow::Result<rayon::ThreadPool> {
    anyhow::ensure!(workers >= 1, "workers must be at least 1");
    Ok(rayon::ThreadPoolBuilder::new().num_threads(workers).build()?)
}

/// Branches of one search spread over the current pool.
pub fn min_sumset_par(n: usize, p: PrimeModulus, options: SearchOptions) -> sqsum_core::Result<SearchResult> {
    let search = ZpSearch::new(n, p, options)?;
    let outcomes = (0..search.branch_count())
        .into_par_iter()
        .map(|i| search.run_branch(i))
        .collect();
    search.finish(outcomes)
}

/// Every prime in `[p_min, p_max]`, primes and branches both in parallel.
/// Rows come back in ascending `p`.
pub fn table_scan_par(
    n: usize,
    p_min: u64,
    p_max: u64,
    options: SearchOptions,
) -> sqsum_core::Result<Vec<TableRow>> {
    Ok(primes_in(p_min, p_max)?
        .into_par_iter()
        .map(|p| TableRow {
            n,
            p,
            outcome: PrimeModulus::new(p).and_then(|m| min_sumset_par(n, m, options)),
        })
        .collect())
}

/// Base range cut into chunks scanned independently, then concatenated in
/// order.
pub fn search_gap_par(search: &GapSearch) -> Vec<GapHit> {
    const CHUNK: u64 = 256;
    let chunks = search.base_max / CHUNK + 1;
    (0..chunks)
        .into_par_iter()
        .map(|c| scan_gap_bases(search, c * CHUNK..=(c * CHUNK + CHUNK - 1).min(search.base_max)))
        .collect::<Vec<_>>()
        .concat()
}
