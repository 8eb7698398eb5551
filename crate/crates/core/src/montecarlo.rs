//! Simulation backends used to check the closed forms.
//!
//! Every random draw comes from a ChaCha8 stream keyed by `(seed, index)`,
//! where the index is a chunk or run number. Work is split along those indices,
//! so results do not depend on how many threads rayon happens to use.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::NeighborModel;
use crate::error::{Error, Result};
use crate::geometry::{Point, Region};

/// Accepted samples per random stream in [`sample_uniform`].
const CHUNK: usize = 1 << 14;

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Rejection sampling from the bounding square. Returns the point and the
/// number of candidates it took.
fn draw<G: Region + ?Sized>(region: &G, rng: &mut ChaCha8Rng) -> (Point, u64) {
    let b = region.bounding_radius();
    let mut tries = 0;
    loop {
        tries += 1;
        let p = Point::new(
            b * (2.0 * rng.random::<f64>() - 1.0),
            b * (2.0 * rng.random::<f64>() - 1.0),
        );
        if region.contains(p) {
            return (p, tries);
        }
    }
}

/// Uniform points in a region together with the seed that produced them.
#[derive(Clone, Debug)]
pub struct SampleBatch<G> {
    points: Vec<Point>,
    seed: u64,
    region: G,
    candidates: u64,
}

impl<G> SampleBatch<G> {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn region(&self) -> &G {
        &self.region
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Fraction of candidates from the bounding square that were kept.
    pub fn acceptance_rate(&self) -> f64 {
        self.points.len() as f64 / self.candidates as f64
    }
}

/// Draws `count` points uniformly in `region` by acceptance-rejection.
pub fn sample_uniform<G: Region + Clone>(region: &G, count: usize, seed: u64) -> SampleBatch<G> {
    let chunks: Vec<(Vec<Point>, u64)> = (0..count.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let want = CHUNK.min(count - c * CHUNK);
            let mut rng = stream(seed, c as u64);
            let mut tries = 0;
            let pts = (0..want)
                .map(|_| {
                    let (p, t) = draw(region, &mut rng);
                    tries += t;
                    p
                })
                .collect();
            (pts, tries)
        })
        .collect();
    let candidates = chunks.iter().map(|c| c.1).sum();
    SampleBatch {
        points: chunks.into_iter().flat_map(|c| c.0).collect(),
        seed,
        region: region.clone(),
        candidates,
    }
}

/// Fraction of the batch within each radius of `grid` from `u`.
pub fn empirical_cdf<G>(batch: &SampleBatch<G>, u: Point, grid: &[f64]) -> Result<Vec<f64>> {
    if batch.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let mut dist: Vec<f64> = batch.points.iter().map(|p| p.distance(u)).collect();
    dist.sort_by(f64::total_cmp);
    let n = dist.len() as f64;
    Ok(grid
        .iter()
        .map(|&r| dist.partition_point(|&d| d <= r) as f64 / n)
        .collect())
}

/// Equal-width density histogram on `[0, upper]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram {
    upper: f64,
    density: Vec<f64>,
}

impl Histogram {
    fn from_values(
        values: impl Iterator<Item = f64>,
        total: usize,
        upper: f64,
        bins: usize,
    ) -> Self {
        let width = upper / bins as f64;
        let mut counts = vec![0u64; bins];
        for v in values {
            let i = ((v / width) as usize).min(bins - 1);
            counts[i] += 1;
        }
        let scale = 1.0 / (total as f64 * width);
        Histogram {
            upper,
            density: counts.into_iter().map(|c| c as f64 * scale).collect(),
        }
    }

    pub fn bins(&self) -> usize {
        self.density.len()
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper / self.bins() as f64
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    /// Bin `i` covers `[edge(i), edge(i + 1)]`.
    pub fn edge(&self, i: usize) -> f64 {
        if i == self.bins() {
            self.upper
        } else {
            i as f64 * self.width()
        }
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.bins())
            .map(|i| (i as f64 + 0.5) * self.width())
            .collect()
    }

    /// Total probability, one by construction.
    pub fn mass(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.width()
    }
}

fn check_runs(runs: usize, bins: usize) -> Result<()> {
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    if bins == 0 {
        return Err(Error::InvalidArgument("bins must be at least 1".into()));
    }
    Ok(())
}

/// Sorted node distances from `u` for each simulated run.
fn simulate_runs<G: Region + ?Sized>(
    region: &G,
    u: Point,
    nodes: usize,
    runs: usize,
    seed: u64,
) -> Vec<Vec<f64>> {
    (0..runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = stream(seed, run as u64);
            let mut d: Vec<f64> = (0..nodes)
                .map(|_| draw(region, &mut rng).0.distance(u))
                .collect();
            d.sort_by(f64::total_cmp);
            d
        })
        .collect()
}

/// Histograms of every order statistic `r_(1) .. r_(N)`, all taken from the
/// same runs. Bins span `[0, farthest distance from u]`.
pub fn empirical_neighbor_histograms<G: Region + ?Sized>(
    region: &G,
    u: Point,
    nodes: usize,
    runs: usize,
    bins: usize,
    seed: u64,
) -> Result<Vec<Histogram>> {
    NeighborModel::new(nodes, 1)?;
    check_runs(runs, bins)?;
    region.ensure_contains(u)?;
    let sims = simulate_runs(region, u, nodes, runs, seed);
    let upper = region.farthest_distance(u);
    Ok((0..nodes)
        .map(|k| Histogram::from_values(sims.iter().map(|d| d[k]), runs, upper, bins))
        .collect())
}

/// Histogram of the `n`-th neighbour distance over `runs` placements of `N` nodes.
pub fn empirical_nth_histogram<G: Region + ?Sized>(
    region: &G,
    u: Point,
    model: NeighborModel,
    runs: usize,
    bins: usize,
    seed: u64,
) -> Result<Histogram> {
    check_runs(runs, bins)?;
    region.ensure_contains(u)?;
    let sims = simulate_runs(region, u, model.nodes(), runs, seed);
    let upper = region.farthest_distance(u);
    let k = model.rank() - 1;
    Ok(Histogram::from_values(
        sims.iter().map(|d| d[k]),
        runs,
        upper,
        bins,
    ))
}

/// Area of `{p in region : |p - u| <= r}` by counting the midpoints of a
/// `resolution x resolution` lattice over the bounding square.
///
/// Each lattice row is handled in closed form: the region's chord at that
/// ordinate is intersected with the disk's chord and the midpoints inside are
/// counted directly.
pub fn grid_overlap_oracle<G: Region + ?Sized>(
    region: &G,
    u: Point,
    r: f64,
    resolution: usize,
) -> f64 {
    assert!(resolution >= 100, "oracle resolution must be at least 100");
    if r <= 0.0 {
        return 0.0;
    }
    let b = region.bounding_radius();
    let h = 2.0 * b / resolution as f64;
    let last = resolution as f64 - 1.0;
    let count: u64 = (0..resolution)
        .into_par_iter()
        .map(|j| {
            let y = -b + (j as f64 + 0.5) * h;
            let dy = y - u.y;
            if dy.abs() > r {
                return 0;
            }
            let Some((lo, hi)) = region.chord(y) else {
                return 0;
            };
            let half = (r * r - dy * dy).sqrt();
            let (lo, hi) = (lo.max(u.x - half), hi.min(u.x + half));
            if lo > hi {
                return 0;
            }
            let first = ((lo + b) / h - 0.5).ceil().max(0.0);
            let past = ((hi + b) / h - 0.5).floor().min(last);
            if past < first {
                0
            } else {
                (past - first) as u64 + 1
            }
        })
        .sum();
    count as f64 * h * h
}
