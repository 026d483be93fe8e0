//! Parallel drivers over the core search shards.
//!
//! Shards are independent and read only shared tables built before the
//! parallel phase; results are merged in shard order and sorted by the
//! canonical key, so output is byte-identical for any worker count.

use blockprod_core::search::z2::{self, SquareTables, Z2Options};
use blockprod_core::search::{paircube, ratio, roots, sort_dedup, triplecube, z3, SolutionRecord};
use rayon::prelude::*;

/// Worker count: the `BLOCKPROD_JOBS` environment variable wins over the
/// `--jobs` flag, which wins over the machine's available parallelism.
pub fn resolve_jobs(flag: Option<usize>) -> usize {
    if let Ok(val) = std::env::var("BLOCKPROD_JOBS") {
        if let Ok(n) = val.parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    flag.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

pub fn run_z2(b_set: &[u64], k_max: u64, jobs: usize, opts: &Z2Options) -> Vec<SolutionRecord> {
    let tables = SquareTables::new();
    let shards = z2::shards(b_set, k_max);
    let mut out: Vec<SolutionRecord> = pool(jobs).install(|| {
        shards
            .par_iter()
            .map(|&(b, k)| z2::scan_pair(b, k, &tables, opts))
            .flatten()
            .collect()
    });
    sort_dedup(&mut out);
    out
}

pub fn run_z3(k_min: u64, k_max: u64, jobs: usize) -> Vec<SolutionRecord> {
    let ks: Vec<u64> = (k_min..=k_max).collect();
    let mut out: Vec<SolutionRecord> = pool(jobs).install(|| {
        ks.par_iter()
            .map(|&k| z3::search_z3_k(k))
            .flatten()
            .collect()
    });
    sort_dedup(&mut out);
    out
}

/// Stripe width for the embarrassingly parallel grid searches.
const STRIPE: u64 = 4096;

fn stripes(from: u64, to: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut lo = from;
    while lo <= to {
        let hi = (lo + STRIPE - 1).min(to);
        out.push((lo, hi));
        lo = hi + 1;
    }
    out
}

pub fn run_ratio(x_max: u64, y_max: u64, jobs: usize) -> Vec<SolutionRecord> {
    let filter = roots::SquareFilter::new();
    let mut out: Vec<SolutionRecord> = pool(jobs).install(|| {
        stripes(1, x_max)
            .par_iter()
            .map(|&(lo, hi)| ratio::ratio_stripe(lo, hi, y_max, &filter))
            .flatten()
            .collect()
    });
    sort_dedup(&mut out);
    out
}

pub fn run_paircube(y_max: u64, jobs: usize) -> Vec<SolutionRecord> {
    let filter = roots::CubeFilter::new();
    let mut out: Vec<SolutionRecord> = pool(jobs).install(|| {
        stripes(1, y_max)
            .par_iter()
            .map(|&(lo, hi)| paircube::paircube_stripe(lo, hi, y_max, &filter))
            .flatten()
            .collect()
    });
    sort_dedup(&mut out);
    out
}

pub fn run_triplecube(n_max: u64, jobs: usize, naive: bool) -> (u64, Vec<SolutionRecord>) {
    if naive {
        return triplecube::naive_triple_cube(n_max);
    }
    let index = triplecube::SigIndex::build(n_max);
    let mut out: Vec<SolutionRecord> = pool(jobs).install(|| {
        stripes(1, n_max)
            .par_iter()
            .map(|&(lo, hi)| triplecube::pairs_block(&index, lo, hi))
            .flatten()
            .collect()
    });
    sort_dedup(&mut out);
    (out.len() as u64, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worker_count_does_not_change_output() {
        let a = run_z2(&[3], 12, 1, &Z2Options::default());
        let b = run_z2(&[3], 12, 4, &Z2Options::default());
        assert_eq!(a, b);

        let a = run_z3(4, 30, 1);
        let b = run_z3(4, 30, 3);
        assert_eq!(a, b);

        let (ca, ra) = run_triplecube(150, 1, false);
        let (cb, rb) = run_triplecube(150, 4, false);
        assert_eq!((ca, &ra), (cb, &rb));
    }

    #[test]
    fn jobs_env_override() {
        // no env set in tests: flag wins, then detection
        std::env::remove_var("BLOCKPROD_JOBS");
        assert_eq!(resolve_jobs(Some(3)), 3);
        std::env::set_var("BLOCKPROD_JOBS", "2");
        assert_eq!(resolve_jobs(Some(5)), 2);
        std::env::remove_var("BLOCKPROD_JOBS");
    }
}
