//! Random distance-set experiments against the `2 q^((d+1)/2)` threshold.

use serde::Serialize;

use crate::analysis::rng;
use crate::error::{usage, Result};
use crate::field::Field;
use crate::grid::{distance_set, Space};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceReport {
    pub q: u32,
    pub d: usize,
    pub size: usize,
    pub trials: usize,
    pub seed: u64,
    pub threshold: f64,
    pub above_threshold: bool,
    /// `|Delta(E)|` per trial.
    pub distance_counts: Vec<usize>,
    /// Every trial produced all `q` distances.
    pub all_full: bool,
    /// `|E| > threshold` implies `|Delta(E)| = q` in every trial.
    pub implication_holds: bool,
}

/// Samples `trials` sets of `size` distinct points; trial `i` uses stream `i`.
pub fn distance_experiment(
    field: &Field,
    d: usize,
    size: usize,
    trials: usize,
    seed: u64,
) -> Result<DistanceReport> {
    if d < 2 {
        return usage(format!("distance experiments need d >= 2, got {d}"));
    }
    let space = Space::new(field, d)?;
    if size > space.size() {
        return usage(format!("|E| = {size} exceeds q^d = {}", space.size()));
    }
    if size == 0 {
        return usage("|E| must be positive");
    }
    let q = field.q();
    let threshold = 2.0 * (q as f64).powf((d as f64 + 1.0) / 2.0);
    let distance_counts = (0..trials)
        .map(|t| {
            let points = space.sample_points(size, &mut rng(seed, t as u64))?;
            Ok(distance_set(&space, &points).len())
        })
        .collect::<Result<Vec<_>>>()?;
    let all_full = distance_counts.iter().all(|&n| n == q as usize);
    let above_threshold = size as f64 > threshold;
    Ok(DistanceReport {
        q,
        d,
        size,
        trials,
        seed,
        threshold,
        above_threshold,
        distance_counts,
        all_full,
        implication_holds: !above_threshold || all_full,
    })
}
