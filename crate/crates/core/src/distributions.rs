//! Distance distributions built on the overlap area.
//!
//! A uniformly placed node lands within distance `r` of the reference point
//! with probability `F(r) = O(r) / A`. With `N` independent nodes the `n`-th
//! smallest distance has density
//!
//! ```text
//! f_n(r) = (1 - F)^(N-n) F^(n-1) / B(N-n+1, n) * dF/dr
//! ```
//!
//! The closed-form special cases for a reference point at the centre or at
//! a vertex of the polygon, and the disk (`L -> infinity`), live here too.

use std::f64::consts::PI;

use statrs::function::beta::beta_reg;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::geometry::{Disk, Point, PolygonSpec, Region, CONTAINMENT_TOLERANCE};
use crate::overlap::{corner_area, segment_area};
use crate::piecewise::PiecewiseOverlap;

/// Largest node count for which the order-statistic constant is formed by
/// direct products; beyond this factorials overflow `f64`.
const DIRECT_PRODUCT_LIMIT: usize = 170;

/// Distribution of the distance from a fixed point to one uniform node.
pub trait RadialDistribution {
    fn cdf(&self, r: f64) -> f64;

    fn cdf_deriv(&self, r: f64) -> f64;

    /// Radius at which the CDF reaches one.
    fn support(&self) -> f64;

    /// Radii where the closed form switches expression, ascending.
    fn knots(&self) -> Vec<f64>;
}

impl RadialDistribution for PiecewiseOverlap {
    fn cdf(&self, r: f64) -> f64 {
        PiecewiseOverlap::cdf(self, r)
    }

    fn cdf_deriv(&self, r: f64) -> f64 {
        PiecewiseOverlap::cdf_deriv(self, r)
    }

    fn support(&self) -> f64 {
        PiecewiseOverlap::support(self)
    }

    fn knots(&self) -> Vec<f64> {
        self.breakpoints().to_vec()
    }
}

/// Rank `n` among `N` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NeighborModel {
    nodes: usize,
    rank: usize,
}

impl NeighborModel {
    pub fn new(nodes: usize, rank: usize) -> Result<Self> {
        if rank == 0 || rank > nodes {
            return Err(Error::InvalidModel { nodes, rank });
        }
        Ok(NeighborModel { nodes, rank })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `1 / B(N-n+1, n) = n * binom(N, n)`.
    pub fn normalizer(&self) -> f64 {
        if self.nodes <= DIRECT_PRODUCT_LIMIT {
            self.rank as f64 * binomial(self.nodes, self.rank)
        } else {
            self.ln_normalizer().exp()
        }
    }

    fn ln_normalizer(&self) -> f64 {
        let (n_total, n) = (self.nodes as f64, self.rank as f64);
        ln_gamma(n_total + 1.0) - ln_gamma(n_total - n + 1.0) - ln_gamma(n)
    }

    /// The order-statistic density given `F(r)` and `dF/dr`.
    pub fn density(&self, cdf: f64, cdf_deriv: f64) -> f64 {
        if cdf_deriv <= 0.0 {
            return 0.0;
        }
        let f = cdf.clamp(0.0, 1.0);
        let above = (self.nodes - self.rank) as i32;
        let below = (self.rank - 1) as i32;
        if self.nodes <= DIRECT_PRODUCT_LIMIT {
            return self.normalizer() * (1.0 - f).powi(above) * f.powi(below) * cdf_deriv;
        }
        if (above > 0 && f >= 1.0) || (below > 0 && f <= 0.0) {
            return 0.0;
        }
        let mut log = self.ln_normalizer();
        if above > 0 {
            log += above as f64 * (-f).ln_1p();
        }
        if below > 0 {
            log += below as f64 * f.ln();
        }
        log.exp() * cdf_deriv
    }

    /// `P(r_(n) <= r)`: at least `n` of the `N` nodes fall within `r`.
    pub fn order_cdf(&self, cdf: f64) -> f64 {
        let f = cdf.clamp(0.0, 1.0);
        if f == 0.0 {
            return 0.0;
        }
        if f == 1.0 {
            return 1.0;
        }
        if self.nodes > DIRECT_PRODUCT_LIMIT {
            return beta_reg(self.rank as f64, (self.nodes - self.rank + 1) as f64, f);
        }
        (self.rank..=self.nodes)
            .map(|k| {
                binomial(self.nodes, k) * f.powi(k as i32) * (1.0 - f).powi((self.nodes - k) as i32)
            })
            .sum::<f64>()
            .min(1.0)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

/// `f_n(u; r)` for any radial distance distribution.
pub fn nth_neighbor_pdf<D: RadialDistribution + ?Sized>(
    dist: &D,
    model: NeighborModel,
    r: f64,
) -> f64 {
    if r < 0.0 {
        return 0.0;
    }
    model.density(dist.cdf(r), dist.cdf_deriv(r))
}

/// CDF of the `n`-th neighbour distance.
pub fn nth_neighbor_cdf<D: RadialDistribution + ?Sized>(
    dist: &D,
    model: NeighborModel,
    r: f64,
) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    model.order_cdf(dist.cdf(r))
}

/// Integral of `f_n` over its support by adaptive quadrature, split at the knots.
pub fn nth_neighbor_mass<D: RadialDistribution + ?Sized>(dist: &D, model: NeighborModel) -> f64 {
    let mut edges = vec![0.0];
    edges.extend(dist.knots().into_iter().filter(|&k| k > 0.0));
    edges
        .windows(2)
        .map(|w| {
            quadrature::double_exponential::integrate(
                |r| nth_neighbor_pdf(dist, model, r),
                w[0],
                w[1],
                1e-12,
            )
            .integral
        })
        .sum()
}

/// Node-distance CDF from the polygon centre.
///
/// The disk is inside the polygon up to the inradius and covers it from the
/// circumradius on; in between `L` congruent segments are cut off.
pub fn center_cdf(poly: &PolygonSpec, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let (ri, area) = (poly.inradius(), poly.area());
    if r <= ri {
        PI * r * r / area
    } else if r < poly.circumradius() {
        let half = ((r - ri) * (r + ri)).sqrt();
        let segment = r * r * half.atan2(ri) - ri * half;
        ((PI * r * r - poly.sides() as f64 * segment) / area).clamp(0.0, 1.0)
    } else {
        1.0
    }
}

/// Node-distance CDF from vertex `V_1`.
///
/// Seen from a vertex, sides `S_i`/`S_{L+1-i}` and vertices `V_i`/`V_{L+2-i}`
/// pair up at equal distances, so the ranges are delimited by the vertex
/// distances `d(V_1; V_i)`, `i = 1..=L/2 + 1`. For odd `L` the side opposite
/// `V_1` enters inside the last range, at its own distance.
pub fn vertex_cdf(poly: &PolygonSpec, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let l = poly.sides();
    let half = l / 2;
    let v1 = poly.vertices()[0];
    let vertex_dist = |ell: usize| v1.distance(poly.vertices()[ell - 1]);
    if r >= vertex_dist(half + 1) {
        return 1.0;
    }
    let range = (1..=half)
        .rev()
        .find(|&ell| vertex_dist(ell) <= r)
        .unwrap_or(1);

    let b = |ell: usize| segment_area(poly, v1, ell, r).unwrap_or(0.0);
    let c = |ell: usize| corner_area(poly, v1, ell, r).unwrap_or(0.0);
    let mut overlap = PI * r * r;
    for i in 1..=range {
        overlap -= b(i) + b(l + 1 - i);
        overlap += c(i);
        if i > 1 {
            overlap += c(l + 2 - i);
        }
    }
    if l % 2 == 1 && range == half {
        overlap -= b(half + 1);
    }
    (overlap / poly.area()).clamp(0.0, 1.0)
}

/// Node-distance CDF in a disk of radius `radius` seen from `u`.
pub fn disk_cdf(radius: f64, u: Point, r: f64) -> Result<f64> {
    Ok(DiskDistribution::new(Disk::new(radius)?, u)?.cdf(r))
}

/// Derivative of [`disk_cdf`] in `r`.
pub fn disk_cdf_deriv(radius: f64, u: Point, r: f64) -> Result<f64> {
    Ok(DiskDistribution::new(Disk::new(radius)?, u)?.cdf_deriv(r))
}

/// The disk counterpart of [`PiecewiseOverlap`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskDistribution {
    disk: Disk,
    reference: Point,
    offset: f64,
}

impl DiskDistribution {
    pub fn new(disk: Disk, reference: Point) -> Result<Self> {
        disk.ensure_contains(reference)?;
        let offset = reference.norm().min(disk.radius());
        Ok(DiskDistribution {
            disk,
            reference,
            offset,
        })
    }

    pub fn disk(&self) -> &Disk {
        &self.disk
    }

    pub fn reference(&self) -> Point {
        self.reference
    }

    /// Distance of the reference point from the centre.
    pub fn offset(&self) -> f64 {
        self.offset
    }

    fn concentric(&self) -> bool {
        self.offset <= CONTAINMENT_TOLERANCE * self.disk.radius()
    }

    pub fn overlap_area(&self, r: f64) -> f64 {
        let (big, psi) = (self.disk.radius(), self.offset);
        if r <= 0.0 {
            return 0.0;
        }
        if self.concentric() {
            return PI * r.min(big).powi(2);
        }
        if r <= big - psi {
            return PI * r * r;
        }
        if r > big + psi {
            return self.disk.area();
        }
        let a1 = ((r * r + psi * psi - big * big) / (2.0 * r * psi))
            .clamp(-1.0, 1.0)
            .acos();
        let a2 = ((big * big + psi * psi - r * r) / (2.0 * big * psi))
            .clamp(-1.0, 1.0)
            .acos();
        let zeta = (psi + r + big) * (-psi + r + big) * (psi - r + big) * (r + psi - big);
        (r * r * a1 + big * big * a2 - 0.5 * zeta.max(0.0).sqrt()).clamp(0.0, self.disk.area())
    }
}

impl RadialDistribution for DiskDistribution {
    fn cdf(&self, r: f64) -> f64 {
        (self.overlap_area(r) / self.disk.area()).clamp(0.0, 1.0)
    }

    fn cdf_deriv(&self, r: f64) -> f64 {
        let (big, psi) = (self.disk.radius(), self.offset);
        let area = self.disk.area();
        if r < 0.0 || r >= big + psi {
            return 0.0;
        }
        if self.concentric() || r <= big - psi {
            return 2.0 * PI * r / area;
        }
        // Arc of the circle of radius r lying inside the disk.
        let half_angle = ((r * r + psi * psi - big * big) / (2.0 * r * psi))
            .clamp(-1.0, 1.0)
            .acos();
        2.0 * r * half_angle / area
    }

    fn support(&self) -> f64 {
        self.disk.farthest_distance(self.reference)
    }

    fn knots(&self) -> Vec<f64> {
        let (big, psi) = (self.disk.radius(), self.offset);
        if self.concentric() {
            vec![big]
        } else if big - psi > 0.0 {
            vec![big - psi, big + psi]
        } else {
            vec![big + psi]
        }
    }
}
