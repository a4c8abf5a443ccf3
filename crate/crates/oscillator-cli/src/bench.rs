//! Wall-clock comparison of the fast transform against its quadratic
//! naive-engine replica, plus a growth-exponent fit.
//!
//! Timings take the minimum over several repetitions, which filters scheduler
//! noise better than averaging. The naive side runs fewer repetitions at
//! large sizes because each pass costs `O(p^2)`.

use std::time::Instant;

use oscillator::arith::Prime;
use oscillator::transform::FotPlan;
use serde::Serialize;

use crate::verify::{random_unit, rng_seeded};
use crate::CliResult;

/// Timing of both engines at one prime.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub p: u64,
    pub fast_seconds: f64,
    pub naive_seconds: f64,
    pub speedup: f64,
}

fn min_time(mut reps: usize, mut run: impl FnMut()) -> f64 {
    reps = reps.max(1);
    let mut best = f64::INFINITY;
    for _ in 0..reps {
        let start = Instant::now();
        run();
        let elapsed = start.elapsed().as_secs_f64();
        if elapsed < best {
            best = elapsed;
        }
    }
    best
}

/// Times `fast` and `naive` application of the transform to one fixed random
/// signal at `p` (which must be `1 (mod 4)`; the caller screens the rest).
pub fn bench_prime(p: Prime) -> CliResult<BenchRow> {
    let plan = FotPlan::new(p)?;
    let mut rng = rng_seeded(p.get(), 77);
    let f = random_unit(p.as_usize(), &mut rng);

    // Warm up caches and the allocator before timing.
    let _ = plan.apply(&f);

    let fast_reps = 7;
    let naive_reps = if p.get() > 2000 { 1 } else { 3 };
    let fast_seconds = min_time(fast_reps, || {
        let _ = plan.apply(&f);
    });
    let naive_seconds = min_time(naive_reps, || {
        let _ = plan.naive_reference(&f);
    });
    Ok(BenchRow { p: p.get(), fast_seconds, naive_seconds, speedup: naive_seconds / fast_seconds })
}

/// Least-squares slope of `ln(time)` against `ln(p)`: the empirical growth
/// exponent of the measurements. Needs at least two distinct sizes.
pub fn fit_exponent(points: &[(u64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|(p, _)| (*p as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, t)| t.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        cov += (x - x_mean) * (y - y_mean);
        var += (x - x_mean) * (x - x_mean);
    }
    if var == 0.0 {
        return None;
    }
    Some(cov / var)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_fit_recovers_exact_power_laws() {
        let quadratic: Vec<(u64, f64)> =
            [101u64, 1009, 10009].iter().map(|&p| (p, 3.0 * (p as f64).powi(2))).collect();
        let fitted = fit_exponent(&quadratic).unwrap();
        assert!((fitted - 2.0).abs() < 1e-12, "{fitted}");

        let linear: Vec<(u64, f64)> =
            [101u64, 1009, 10009].iter().map(|&p| (p, 0.5 * p as f64)).collect();
        let fitted = fit_exponent(&linear).unwrap();
        assert!((fitted - 1.0).abs() < 1e-12, "{fitted}");

        assert!(fit_exponent(&[(101, 1.0)]).is_none());
        assert!(fit_exponent(&[(101, 1.0), (101, 2.0)]).is_none());
    }

    #[test]
    fn bench_produces_positive_times() {
        let row = bench_prime(Prime::new(13).unwrap()).unwrap();
        assert!(row.fast_seconds > 0.0);
        assert!(row.naive_seconds > 0.0);
        assert!(row.speedup > 0.0);
    }
}
