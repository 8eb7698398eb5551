//! The five subcommands. Each builds its whole document in memory so that a
//! failure never leaves partial output behind.

use serde::Serialize;
use serde_json::json;

use polydist::{
    empirical_cdf, empirical_neighbor_histograms, grid_overlap_oracle, nth_neighbor_cdf,
    nth_neighbor_mass, nth_neighbor_pdf, sample_uniform, Disk, DiskDistribution, NeighborModel,
    OverlapTerm, PiecewiseOverlap, Point, PolygonSpec, RadialDistribution, Region,
};

use crate::config::{Format, PointSpec, RunConfig, Shape};
use crate::error::CliError;

/// The region and the distance law seen from the reference point.
pub enum Model {
    Polygon(Box<PiecewiseOverlap>),
    Disk(DiskDistribution),
}

impl Model {
    pub fn build(cfg: &RunConfig) -> Result<Model, CliError> {
        match cfg.sides {
            Shape::Polygon(l) => {
                let poly = match (cfg.circumradius, cfg.area) {
                    (Some(r), _) => PolygonSpec::new(l, r)?,
                    (None, Some(a)) => PolygonSpec::with_area(l, a)?,
                    (None, None) => unreachable!("validated in RunConfig"),
                };
                let u = match cfg.point {
                    PointSpec::At(x, y) => Point::new(x, y),
                    PointSpec::Center => Point::ORIGIN,
                    PointSpec::Vertex => poly.vertices()[0],
                    PointSpec::Midside => poly.midside(),
                };
                Ok(Model::Polygon(Box::new(PiecewiseOverlap::build(&poly, u)?)))
            }
            Shape::Disk => {
                let disk = match (cfg.circumradius, cfg.area) {
                    (Some(r), _) => Disk::new(r)?,
                    (None, Some(a)) => Disk::with_area(a)?,
                    (None, None) => unreachable!("validated in RunConfig"),
                };
                let u = match cfg.point {
                    PointSpec::At(x, y) => Point::new(x, y),
                    PointSpec::Center => Point::ORIGIN,
                    PointSpec::Vertex => Point::new(disk.radius(), 0.0),
                    PointSpec::Midside => {
                        return Err(CliError::Usage(
                            "`midside` has no meaning for a disk".into(),
                        ));
                    }
                };
                Ok(Model::Disk(DiskDistribution::new(disk, u)?))
            }
        }
    }

    pub fn dist(&self) -> &dyn RadialDistribution {
        match self {
            Model::Polygon(p) => p.as_ref(),
            Model::Disk(d) => d,
        }
    }

    fn region(&self) -> &dyn Region {
        match self {
            Model::Polygon(p) => p.polygon(),
            Model::Disk(d) => d.disk(),
        }
    }

    fn reference(&self) -> Point {
        match self {
            Model::Polygon(p) => p.reference(),
            Model::Disk(d) => d.reference(),
        }
    }

    fn scale(&self) -> f64 {
        self.region().bounding_radius()
    }

    fn empirical_cdf(&self, samples: usize, seed: u64, grid: &[f64]) -> Vec<f64> {
        let u = self.reference();
        let out = match self {
            Model::Polygon(p) => {
                empirical_cdf(&sample_uniform(p.polygon(), samples, seed), u, grid)
            }
            Model::Disk(d) => empirical_cdf(&sample_uniform(d.disk(), samples, seed), u, grid),
        };
        out.expect("samples >= 1 is validated")
    }
}

/// What a command hands back to `main`: the document and whether all checks
/// passed (always true outside `verify`).
pub struct Report {
    pub text: String,
    pub pass: bool,
}

struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn render(&self, cfg: &RunConfig, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.columns.join(",");
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => to_json(&json!({
                "config": cfg,
                "columns": self.columns,
                "rows": self.rows,
            })),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents hold only finite numbers");
    s.push('\n');
    s
}

fn radius_grid(cfg: &RunConfig, model: &Model) -> Result<Vec<f64>, CliError> {
    let hi = cfg.r_max.unwrap_or_else(|| model.dist().support());
    if hi <= cfg.r_min {
        return Err(CliError::Usage(format!(
            "--r-min {} is not below the grid maximum {hi}",
            cfg.r_min
        )));
    }
    Ok((0..=cfg.steps)
        .map(|i| cfg.r_min + (hi - cfg.r_min) * i as f64 / cfg.steps as f64)
        .collect())
}

fn models(cfg: &RunConfig) -> Result<Vec<NeighborModel>, CliError> {
    let nodes = cfg
        .nodes
        .ok_or_else(|| CliError::Usage("--nodes is required".into()))?;
    let ranks = cfg.ranks().expect("nodes is set");
    ranks
        .into_iter()
        .map(|n| NeighborModel::new(nodes, n).map_err(CliError::from))
        .collect()
}

pub fn cdf(cfg: &RunConfig) -> Result<Report, CliError> {
    let model = Model::build(cfg)?;
    let grid = radius_grid(cfg, &model)?;
    let dist = model.dist();
    let table = Table {
        columns: vec!["r".into(), "cdf".into()],
        rows: grid.iter().map(|&r| vec![r, dist.cdf(r)]).collect(),
    };
    Ok(Report {
        text: table.render(cfg, cfg.format.unwrap_or(Format::Csv)),
        pass: true,
    })
}

pub fn pdf(cfg: &RunConfig) -> Result<Report, CliError> {
    let model = Model::build(cfg)?;
    let ms = models(cfg)?;
    let grid = radius_grid(cfg, &model)?;
    let dist = model.dist();
    let mut columns = vec!["r".to_string()];
    columns.extend(ms.iter().map(|m| format!("f{}", m.rank())));
    let rows = grid
        .iter()
        .map(|&r| {
            let mut row = vec![r];
            row.extend(ms.iter().map(|&m| nth_neighbor_pdf(dist, m, r)));
            row
        })
        .collect();
    Ok(Report {
        text: Table { columns, rows }.render(cfg, cfg.format.unwrap_or(Format::Csv)),
        pass: true,
    })
}

#[derive(Serialize)]
struct DiskRange {
    lower: f64,
    upper: Option<f64>,
    expression: &'static str,
}

pub fn breakpoints(cfg: &RunConfig) -> Result<Report, CliError> {
    let model = Model::build(cfg)?;
    let format = cfg.format.unwrap_or(Format::Json);
    let text = match (&model, format) {
        (Model::Polygon(pw), Format::Json) => to_json(&json!({
            "config": cfg,
            "structure": pw.structure(),
        })),
        (Model::Polygon(pw), Format::Csv) => {
            let profile = pw.profile();
            let sides = profile.sides();
            let mut out = String::from("position,k,term,distance,range\n");
            for (i, (&k, &d)) in profile
                .index_vector()
                .iter()
                .zip(profile.sorted())
                .enumerate()
            {
                let term = OverlapTerm::from_profile_index(k, sides);
                let range = pw
                    .ranges()
                    .iter()
                    .position(|set| set.contains(&term))
                    .map_or("saturated".to_string(), |j| j.to_string());
                out.push_str(&format!("{},{k},{term},{d:.16e},{range}\n", i + 1));
            }
            out
        }
        (Model::Disk(dd), _) => {
            let knots = dd.knots();
            let big = dd.disk().radius();
            let support = dd.support();
            let mut ranges = Vec::new();
            // Until the disk of radius r pokes out, the overlap is the whole disk.
            if support <= big || knots.len() == 2 {
                ranges.push(DiskRange {
                    lower: 0.0,
                    upper: Some(knots[0]),
                    expression: "pi r^2",
                });
            }
            if support > big {
                ranges.push(DiskRange {
                    lower: if knots.len() == 2 { knots[0] } else { 0.0 },
                    upper: Some(support),
                    expression: "lens",
                });
            }
            ranges.push(DiskRange {
                lower: support,
                upper: None,
                expression: "A",
            });
            match format {
                Format::Json => to_json(&json!({
                    "config": cfg,
                    "structure": {
                        "radius": dd.disk().radius(),
                        "offset": dd.offset(),
                        "breakpoints": knots,
                        "ranges": ranges,
                    },
                })),
                Format::Csv => {
                    let mut out = String::from("range,lower,upper,expression\n");
                    for (i, r) in ranges.iter().enumerate() {
                        let upper = r.upper.map_or(String::new(), |u| format!("{u:.16e}"));
                        out.push_str(&format!("{i},{:.16e},{upper},{}\n", r.lower, r.expression));
                    }
                    out
                }
            }
        }
    };
    Ok(Report { text, pass: true })
}

pub fn simulate(cfg: &RunConfig) -> Result<Report, CliError> {
    let model = Model::build(cfg)?;
    let dist = model.dist();
    let table = if cfg.nodes.is_some() {
        let ms = models(cfg)?;
        let nodes = ms[0].nodes();
        let hists = empirical_neighbor_histograms(
            model.region(),
            model.reference(),
            nodes,
            cfg.runs,
            cfg.bins,
            cfg.seed,
        )?;
        let mut columns = vec!["r".to_string()];
        for m in &ms {
            columns.push(format!("sim{}", m.rank()));
            columns.push(format!("exact{}", m.rank()));
        }
        let width = hists[0].width();
        let rows = (0..cfg.bins)
            .map(|i| {
                let (lo, hi) = (hists[0].edge(i), hists[0].edge(i + 1));
                let mut row = vec![0.5 * (lo + hi)];
                for &m in &ms {
                    row.push(hists[m.rank() - 1].density()[i]);
                    row.push(
                        (nth_neighbor_cdf(dist, m, hi) - nth_neighbor_cdf(dist, m, lo)) / width,
                    );
                }
                row
            })
            .collect();
        Table { columns, rows }
    } else {
        let grid = radius_grid(cfg, &model)?;
        let emp = model.empirical_cdf(cfg.samples, cfg.seed, &grid);
        Table {
            columns: vec!["r".into(), "empirical".into(), "exact".into()],
            rows: grid
                .iter()
                .zip(emp)
                .map(|(&r, e)| vec![r, e, dist.cdf(r)])
                .collect(),
        }
    };
    Ok(Report {
        text: table.render(cfg, cfg.format.unwrap_or(Format::Csv)),
        pass: true,
    })
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    max_deviation: f64,
    tolerance: f64,
    pass: bool,
}

impl Check {
    fn new(name: &'static str, max_deviation: f64, tolerance: f64) -> Check {
        Check {
            name,
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
        }
    }
}

pub fn verify(cfg: &RunConfig) -> Result<Report, CliError> {
    let model = Model::build(cfg)?;
    let dist = model.dist();
    let grid = radius_grid(cfg, &model)?;
    let scale = model.scale();
    let area = model.region().area();
    let knots = dist.knots();
    let mut checks = Vec::new();

    let emp = model.empirical_cdf(cfg.samples, cfg.seed, &grid);
    let worst = grid
        .iter()
        .zip(&emp)
        .map(|(&r, e)| (e - dist.cdf(r)).abs())
        .fold(0.0, f64::max);
    checks.push(Check::new("cdf_vs_empirical", worst, 0.01));

    let u = model.reference();
    let worst = grid
        .iter()
        .map(|&r| {
            (grid_overlap_oracle(model.region(), u, r, cfg.resolution) - dist.cdf(r) * area).abs()
                / area
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("overlap_vs_grid_oracle", worst, 1e-3));

    let h = 1e-6 * scale;
    let worst = grid
        .iter()
        .filter(|&&r| r > 1e-3 * scale && knots.iter().all(|k| (k - r).abs() >= 1e-3 * scale))
        .map(|&r| ((dist.cdf(r + h) - dist.cdf(r - h)) / (2.0 * h) - dist.cdf_deriv(r)).abs())
        .fold(0.0, f64::max);
    checks.push(Check::new("derivative_vs_finite_difference", worst, 1e-5));

    let eps = 1e-12 * scale;
    let worst = knots
        .iter()
        .map(|&k| (dist.cdf(k + eps) - dist.cdf(k - eps)).abs())
        .fold(0.0, f64::max);
    checks.push(Check::new("continuity_at_breakpoints", worst, 1e-10));

    if cfg.nodes.is_some() {
        let worst = models(cfg)?
            .into_iter()
            .map(|m| (nth_neighbor_mass(dist, m) - 1.0).abs())
            .fold(0.0, f64::max);
        checks.push(Check::new("pdf_normalization", worst, 1e-6));
    }

    let pass = checks.iter().all(|c| c.pass);
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&json!({ "config": cfg, "checks": checks, "pass": pass })),
        Format::Csv => {
            let mut out = String::from("name,max_deviation,tolerance,pass\n");
            for c in &checks {
                out.push_str(&format!(
                    "{},{:.16e},{:.16e},{}\n",
                    c.name, c.max_deviation, c.tolerance, c.pass
                ));
            }
            out
        }
    };
    Ok(Report { text, pass })
}
