//! Seeded sample points and the worker pool.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Environment variable holding the number of worker threads.
pub const WORKERS_ENV: &str = "GENCX_WORKERS";

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly distributed direction in `ℝ^dim`, by rejection from the cube.
pub fn direction(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Points of `ℝ^dim` with `rmin < |p| < rmax`.
pub fn shell_points(rng: &mut impl Rng, n: usize, dim: usize, rmin: f64, rmax: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let r = rng.gen_range(rmin..rmax);
            direction(rng, dim).into_iter().map(|x| r * x).collect()
        })
        .collect()
}

/// Shell points of `ℂ²` with `|z₁| ≥ margin·|p|`.
pub fn shell_points_off_axis(
    rng: &mut impl Rng,
    n: usize,
    rmin: f64,
    rmax: f64,
    margin: f64,
) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = shell_points(rng, 1, 4, rmin, rmax).pop().expect("one point");
        let z1 = (p[0] * p[0] + p[1] * p[1]).sqrt();
        let r = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        if z1 >= margin * r {
            out.push(p);
        }
    }
    out
}

/// Points of the open disc of the given radius with `|q| ≤ (1 − margin)·radius`.
pub fn disc_points(rng: &mut impl Rng, n: usize, radius: f64, margin: f64) -> Vec<Vec<f64>> {
    let rmax = (1.0 - margin) * radius;
    (0..n)
        .map(|_| loop {
            let q = [rng.gen_range(-rmax..rmax), rng.gen_range(-rmax..rmax)];
            if q[0] * q[0] + q[1] * q[1] < rmax * rmax {
                return q.to_vec();
            }
        })
        .collect()
}

/// Points of the box `[lo, hi]^dim`.
pub fn box_points(rng: &mut impl Rng, n: usize, dim: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(lo..hi)).collect())
        .collect()
}

/// Worker count from the environment, if set to a positive integer.
pub fn configured_workers() -> Option<usize> {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Runs `f` inside a pool sized by the environment (or the rayon default).
pub fn with_workers<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = configured_workers() {
        b = b.num_threads(n);
    }
    match b.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
