//! Piecewise assembly of the overlap area `O(u; r) = |D(u; r) ∩ polygon|`.
//!
//! The 2L side and vertex distances of the reference point, sorted, split
//! `r >= 0` into ranges. Crossing a side distance activates that side's
//! segment term `B_l` (subtracted), crossing a vertex distance activates the
//! corner term `C_l` (added back). Once the disk reaches the farthest vertex
//! the overlap is the whole polygon.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{DistanceProfile, Point, PolygonSpec, TIE_TOLERANCE};
use crate::overlap::{CornerParams, OverlapTerm, SideParams};

#[derive(Clone, Debug)]
pub struct PiecewiseOverlap {
    polygon: PolygonSpec,
    reference: Point,
    profile: DistanceProfile,
    /// Ascending, distinct, strictly positive.
    breakpoints: Vec<f64>,
    /// `ranges[i]` holds the terms active on `[breakpoints[i-1], breakpoints[i]]`
    /// (lower end 0 for `i == 0`).
    ranges: Vec<Vec<OverlapTerm>>,
    side_params: Vec<SideParams>,
    corner_params: Vec<CornerParams>,
}

impl PiecewiseOverlap {
    pub fn build(polygon: &PolygonSpec, reference: Point) -> Result<Self> {
        let profile = polygon.distance_profile(reference)?;
        let l = polygon.sides();
        let slack = TIE_TOLERANCE * polygon.circumradius();
        let sorted = profile.sorted();
        let index = profile.index_vector();
        let term = |pos: usize| OverlapTerm::from_profile_index(index[pos], l);

        let mut active = Vec::with_capacity(2 * l);
        let mut pos = 0;
        // Terms already active at r = 0 (reference on a side or at a vertex).
        while pos < sorted.len() && sorted[pos] <= slack {
            active.push(term(pos));
            pos += 1;
        }

        let mut breakpoints = Vec::new();
        let mut ranges = Vec::new();
        while pos < sorted.len() {
            // Coincident distances form one zero-width range and are merged.
            let mut end = pos;
            while end + 1 < sorted.len() && sorted[end + 1] - sorted[end] <= slack {
                end += 1;
            }
            ranges.push(active.clone());
            breakpoints.push(sorted[end]);
            active.extend((pos..=end).map(term));
            pos = end + 1;
        }

        let side_params = (1..=l)
            .map(|ell| SideParams::new(polygon, reference, ell))
            .collect();
        let corner_params = (1..=l)
            .map(|ell| CornerParams::new(polygon, reference, ell))
            .collect();

        Ok(PiecewiseOverlap {
            polygon: polygon.clone(),
            reference,
            profile,
            breakpoints,
            ranges,
            side_params,
            corner_params,
        })
    }

    pub fn polygon(&self) -> &PolygonSpec {
        &self.polygon
    }

    pub fn reference(&self) -> Point {
        self.reference
    }

    pub fn profile(&self) -> &DistanceProfile {
        &self.profile
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Active terms of every non-saturated range, in activation order.
    pub fn ranges(&self) -> &[Vec<OverlapTerm>] {
        &self.ranges
    }

    /// Radius beyond which the disk covers the whole polygon.
    pub fn support(&self) -> f64 {
        self.breakpoints.last().copied().unwrap_or(0.0)
    }

    /// Range holding `r`; ranges are closed on the left, and
    /// `ranges().len()` denotes the saturated tail.
    pub fn range_index(&self, r: f64) -> usize {
        self.breakpoints.partition_point(|&b| b <= r)
    }

    /// Evaluates the expression of range `index` at `r`, whether or not
    /// `r` lies inside that range.
    pub fn range_overlap(&self, index: usize, r: f64) -> f64 {
        match self.ranges.get(index) {
            None => self.polygon.area(),
            Some(terms) => terms.iter().fold(PI * r * r, |acc, t| match *t {
                OverlapTerm::SideSegment(l) => acc - self.side_params[l - 1].area(r),
                OverlapTerm::CornerLens(l) => acc + self.corner_params[l - 1].area(r),
            }),
        }
    }

    fn range_rate(&self, index: usize, r: f64) -> f64 {
        match self.ranges.get(index) {
            None => 0.0,
            Some(terms) => terms.iter().fold(2.0 * PI * r, |acc, t| match *t {
                OverlapTerm::SideSegment(l) => acc - self.side_params[l - 1].rate(r),
                OverlapTerm::CornerLens(l) => acc + self.corner_params[l - 1].rate(r),
            }),
        }
    }

    /// `O(u; r)`, clamped to `[0, A]`.
    pub fn overlap_area(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let area = self.polygon.area();
        self.range_overlap(self.range_index(r), r).clamp(0.0, area)
    }

    /// `F(u; r) = O(u; r) / A`.
    pub fn cdf(&self, r: f64) -> f64 {
        (self.overlap_area(r) / self.polygon.area()).clamp(0.0, 1.0)
    }

    /// `dF/dr`; at a breakpoint the right-hand expression is used.
    pub fn cdf_deriv(&self, r: f64) -> f64 {
        if r < 0.0 {
            return 0.0;
        }
        (self.range_rate(self.range_index(r), r) / self.polygon.area()).max(0.0)
    }

    /// Summary of the range structure for printing or serialization.
    pub fn structure(&self) -> OverlapStructure {
        let mut ranges = Vec::with_capacity(self.ranges.len() + 1);
        let mut lower = 0.0;
        for (terms, &upper) in self.ranges.iter().zip(&self.breakpoints) {
            let mut expression = String::from("pi r^2");
            for t in terms {
                let sign = match t {
                    OverlapTerm::SideSegment(_) => '-',
                    OverlapTerm::CornerLens(_) => '+',
                };
                expression.push_str(&format!(" {sign} {t}"));
            }
            ranges.push(RangeSummary {
                lower,
                upper: Some(upper),
                terms: terms.clone(),
                expression,
            });
            lower = upper;
        }
        ranges.push(RangeSummary {
            lower,
            upper: None,
            terms: Vec::new(),
            expression: "A".to_string(),
        });
        OverlapStructure {
            sides: self.polygon.sides(),
            circumradius: self.polygon.circumradius(),
            area: self.polygon.area(),
            reference: self.reference,
            distances: self.profile.distances().to_vec(),
            sorted: self.profile.sorted().to_vec(),
            index_vector: self.profile.index_vector().to_vec(),
            breakpoints: self.breakpoints.clone(),
            ranges,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RangeSummary {
    pub lower: f64,
    /// `None` for the saturated tail.
    pub upper: Option<f64>,
    pub terms: Vec<OverlapTerm>,
    pub expression: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverlapStructure {
    pub sides: usize,
    pub circumradius: f64,
    pub area: f64,
    pub reference: Point,
    pub distances: Vec<f64>,
    pub sorted: Vec<f64>,
    pub index_vector: Vec<usize>,
    pub breakpoints: Vec<f64>,
    pub ranges: Vec<RangeSummary>,
}
