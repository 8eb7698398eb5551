//! Run configuration: flags, the optional key=value file, and their merge.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::{Serialize, Serializer};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    Polygon(usize),
    Disk,
}

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("disk") {
            return Ok(Shape::Disk);
        }
        s.parse()
            .map(Shape::Polygon)
            .map_err(|_| format!("expected a side count or `disk`, got `{s}`"))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Polygon(l) => write!(f, "{l}"),
            Shape::Disk => f.write_str("disk"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PointSpec {
    At(f64, f64),
    Center,
    Vertex,
    Midside,
}

impl FromStr for PointSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "center" | "centre" => return Ok(PointSpec::Center),
            "vertex" => return Ok(PointSpec::Vertex),
            "midside" => return Ok(PointSpec::Midside),
            _ => {}
        }
        let bad = || format!("expected `x,y`, `center`, `vertex` or `midside`, got `{s}`");
        let (x, y) = s.split_once(',').ok_or_else(bad)?;
        let x: f64 = x.trim().parse().map_err(|_| bad())?;
        let y: f64 = y.trim().parse().map_err(|_| bad())?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(bad());
        }
        Ok(PointSpec::At(x, y))
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::At(x, y) => write!(f, "{x},{y}"),
            PointSpec::Center => f.write_str("center"),
            PointSpec::Vertex => f.write_str("vertex"),
            PointSpec::Midside => f.write_str("midside"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rank {
    One(usize),
    All,
}

impl FromStr for Rank {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Rank::All);
        }
        s.parse()
            .map(Rank::One)
            .map_err(|_| format!("expected a neighbour rank or `all`, got `{s}`"))
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::One(n) => write!(f, "{n}"),
            Rank::All => f.write_str("all"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

/// Everything that can be set by a flag or a config-file key.
#[derive(Args, Clone, Debug, Default)]
pub struct Settings {
    /// Number of polygon sides, or `disk`
    #[arg(long)]
    pub sides: Option<Shape>,

    /// Circumradius R (or the disk radius)
    #[arg(long, conflicts_with = "area")]
    pub circumradius: Option<f64>,

    /// Target area; the radius is derived from it
    #[arg(long)]
    pub area: Option<f64>,

    /// Reference point: `x,y`, `center`, `vertex` or `midside`
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<PointSpec>,

    /// Number of nodes N
    #[arg(long)]
    pub nodes: Option<usize>,

    /// Neighbour rank n, or `all` [default: all]
    #[arg(long)]
    pub neighbor: Option<Rank>,

    /// Smallest radius of the output grid [default: 0]
    #[arg(long)]
    pub r_min: Option<f64>,

    /// Largest radius of the output grid [default: farthest distance from the point]
    #[arg(long)]
    pub r_max: Option<f64>,

    /// Number of grid intervals [default: 100]
    #[arg(long)]
    pub steps: Option<usize>,

    /// Random seed [default: 1]
    #[arg(long)]
    pub seed: Option<u64>,

    /// Simulation runs for histograms [default: 10000]
    #[arg(long)]
    pub runs: Option<usize>,

    /// Uniform samples for empirical CDFs [default: 100000]
    #[arg(long)]
    pub samples: Option<usize>,

    /// Histogram bins [default: 50]
    #[arg(long)]
    pub bins: Option<usize>,

    /// Grid oracle resolution per axis [default: 2000]
    #[arg(long)]
    pub resolution: Option<usize>,

    /// Write the document here instead of stdout
    #[arg(long, short)]
    pub output: Option<PathBuf>,

    /// Output format [default: json for breakpoints and verify, csv otherwise]
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// key=value file with defaults for any of the options above
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn parse_value<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    value.parse().map_err(|_| {
        CliError::Usage(format!(
            "config line {line}: bad value `{value}` for `{key}`"
        ))
    })
}

impl Settings {
    /// Reads `key = value` lines; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Settings, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        Settings::parse_text(&text)
    }

    pub fn parse_text(text: &str) -> Result<Settings, CliError> {
        let mut s = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {line_no}: expected key = value"))
            })?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            let k = key.as_str();
            match k {
                "sides" => s.sides = Some(parse_value(k, value, line_no)?),
                "circumradius" => s.circumradius = Some(parse_value(k, value, line_no)?),
                "area" => s.area = Some(parse_value(k, value, line_no)?),
                "point" => s.point = Some(parse_value(k, value, line_no)?),
                "nodes" => s.nodes = Some(parse_value(k, value, line_no)?),
                "neighbor" | "neighbour" => s.neighbor = Some(parse_value(k, value, line_no)?),
                "r-min" => s.r_min = Some(parse_value(k, value, line_no)?),
                "r-max" => s.r_max = Some(parse_value(k, value, line_no)?),
                "steps" => s.steps = Some(parse_value(k, value, line_no)?),
                "seed" => s.seed = Some(parse_value(k, value, line_no)?),
                "runs" => s.runs = Some(parse_value(k, value, line_no)?),
                "samples" => s.samples = Some(parse_value(k, value, line_no)?),
                "bins" => s.bins = Some(parse_value(k, value, line_no)?),
                "resolution" => s.resolution = Some(parse_value(k, value, line_no)?),
                "output" => s.output = Some(PathBuf::from(value)),
                "format" => s.format = Some(parse_value(k, value, line_no)?),
                _ => {
                    return Err(CliError::Usage(format!(
                        "config line {line_no}: unknown key `{key}`"
                    )))
                }
            }
        }
        if s.circumradius.is_some() && s.area.is_some() {
            return Err(CliError::Usage(
                "config sets both circumradius and area".into(),
            ));
        }
        Ok(s)
    }

    /// Flags win over file values. A radius or area given on the command line
    /// replaces whichever of the two the file set.
    pub fn over(self, file: Settings) -> Settings {
        let size_from_flags = self.circumradius.is_some() || self.area.is_some();
        Settings {
            sides: self.sides.or(file.sides),
            circumradius: if size_from_flags {
                self.circumradius
            } else {
                file.circumradius
            },
            area: if size_from_flags {
                self.area
            } else {
                file.area
            },
            point: self.point.or(file.point),
            nodes: self.nodes.or(file.nodes),
            neighbor: self.neighbor.or(file.neighbor),
            r_min: self.r_min.or(file.r_min),
            r_max: self.r_max.or(file.r_max),
            steps: self.steps.or(file.steps),
            seed: self.seed.or(file.seed),
            runs: self.runs.or(file.runs),
            samples: self.samples.or(file.samples),
            bins: self.bins.or(file.bins),
            resolution: self.resolution.or(file.resolution),
            output: self.output.or(file.output),
            format: self.format.or(file.format),
            config: self.config,
        }
    }

    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let merged = match &self.config {
            Some(path) => {
                let file = Settings::from_file(path)?;
                self.over(file)
            }
            None => self,
        };
        RunConfig::try_from(merged)
    }
}

fn display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Validated settings with defaults filled in. Echoed into JSON documents.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    #[serde(serialize_with = "display")]
    pub sides: Shape,
    pub circumradius: Option<f64>,
    pub area: Option<f64>,
    #[serde(serialize_with = "display")]
    pub point: PointSpec,
    pub nodes: Option<usize>,
    #[serde(serialize_with = "display")]
    pub neighbor: Rank,
    pub r_min: f64,
    pub r_max: Option<f64>,
    pub steps: usize,
    pub seed: u64,
    pub runs: usize,
    pub samples: usize,
    pub bins: usize,
    pub resolution: usize,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub format: Option<Format>,
}

impl TryFrom<Settings> for RunConfig {
    type Error = CliError;

    fn try_from(s: Settings) -> Result<RunConfig, CliError> {
        let usage = |m: &str| Err(CliError::Usage(m.to_string()));
        let Some(sides) = s.sides else {
            return usage("--sides is required");
        };
        if s.circumradius.is_none() && s.area.is_none() {
            return usage("one of --circumradius or --area is required");
        }
        let Some(point) = s.point else {
            return usage("--point is required");
        };
        if s.nodes == Some(0) {
            return usage("--nodes must be at least 1");
        }
        let neighbor = s.neighbor.unwrap_or(Rank::All);
        if let Rank::One(n) = neighbor {
            match s.nodes {
                Some(nodes) if n >= 1 && n <= nodes => {}
                Some(nodes) => {
                    return usage(&format!("--neighbor must be in 1..={nodes}, got {n}"))
                }
                None => return usage("--neighbor needs --nodes"),
            }
        }
        let r_min = s.r_min.unwrap_or(0.0);
        if !(r_min.is_finite() && r_min >= 0.0) {
            return usage("--r-min must be a non-negative number");
        }
        if let Some(r_max) = s.r_max {
            if !(r_max.is_finite() && r_max > r_min) {
                return usage("--r-max must exceed --r-min");
            }
        }
        let steps = s.steps.unwrap_or(100);
        let runs = s.runs.unwrap_or(10_000);
        let samples = s.samples.unwrap_or(100_000);
        let bins = s.bins.unwrap_or(50);
        let resolution = s.resolution.unwrap_or(2000);
        if steps == 0 || runs == 0 || samples == 0 || bins == 0 {
            return usage("--steps, --runs, --samples and --bins must be at least 1");
        }
        if resolution < 100 {
            return usage("--resolution must be at least 100");
        }
        Ok(RunConfig {
            sides,
            circumradius: s.circumradius,
            area: s.area,
            point,
            nodes: s.nodes,
            neighbor,
            r_min,
            r_max: s.r_max,
            steps,
            seed: s.seed.unwrap_or(1),
            runs,
            samples,
            bins,
            resolution,
            output: s.output,
            format: s.format,
        })
    }
}

impl RunConfig {
    /// Ranks to report for `N` nodes.
    pub fn ranks(&self) -> Option<Vec<usize>> {
        let nodes = self.nodes?;
        Some(match self.neighbor {
            Rank::One(n) => vec![n],
            Rank::All => (1..=nodes).collect(),
        })
    }
}
