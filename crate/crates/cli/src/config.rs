//! Flat `key = value` experiment configuration.
//!
//! Grammar: one `key = value` pair per line, `#` starts a comment, blank
//! lines are ignored, lists are comma-separated. Keys:
//!
//! | key               | meaning                                                |
//! |-------------------|--------------------------------------------------------|
//! | `alpha`, `beta`   | exponents, `> 0` (required)                            |
//! | `t`               | perturbation strength, `>= 0` (required)               |
//! | `experiment`      | experiment name (required)                             |
//! | `N`               | table degree; defaults to the largest of `n_list`      |
//! | `n_list`          | degrees, strictly increasing; defaults to `N`          |
//! | `bits`            | working precision, default 256                         |
//! | `quad_ratio`      | panel grading ratio, default 0.25                      |
//! | `quad_points`     | Gauss points per panel, default precision-aware        |
//! | `quad_levels`     | panel levels, default adaptive                         |
//! | `points`          | evaluation points (see the experiment list)            |
//! | `z`               | complex points for `outer`, e.g. `2, 0.5+0.8i`         |
//! | `u`, `v`          | scaled kernel grid axes (cartesian product)            |
//! | `center`          | bulk center for `sine`, default 0.5                    |
//! | `side`            | `right` or `left`, default `right`                     |
//! | `airy_variant`    | `printed` or `symmetric` for `airy-edge0`              |
//! | `soft_edge_scale` | `consistent` or `printed` for `soft-edge`              |
//! | `output`          | output directory, default `out`                        |

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use pjop_core::asym::{AiryVariant, Side};
use pjop_core::unikernels::SoftEdgeConvention;
use pjop_core::{validate_params, PanelSpec, PrecisionConfig, WeightParams};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("parse error: {0}")]
    Missing(String),
    #[error("range error: {0}")]
    Range(#[from] pjop_core::Error),
    #[error("validation error: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    Recurrence,
    Outer,
    Bulk,
    BesselEdge0,
    BesselEdge1,
    AiryEdge0,
    AiryEdge1,
    Density,
    Sine,
    HardEdge,
    SoftEdge,
    KernelInvariants,
}

impl Experiment {
    pub const ALL: [Experiment; 12] = [
        Experiment::Recurrence,
        Experiment::Outer,
        Experiment::Bulk,
        Experiment::BesselEdge0,
        Experiment::BesselEdge1,
        Experiment::AiryEdge0,
        Experiment::AiryEdge1,
        Experiment::Density,
        Experiment::Sine,
        Experiment::HardEdge,
        Experiment::SoftEdge,
        Experiment::KernelInvariants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Recurrence => "recurrence",
            Experiment::Outer => "outer",
            Experiment::Bulk => "bulk",
            Experiment::BesselEdge0 => "bessel-edge0",
            Experiment::BesselEdge1 => "bessel-edge1",
            Experiment::AiryEdge0 => "airy-edge0",
            Experiment::AiryEdge1 => "airy-edge1",
            Experiment::Density => "density",
            Experiment::Sine => "sine",
            Experiment::HardEdge => "hard-edge",
            Experiment::SoftEdge => "soft-edge",
            Experiment::KernelInvariants => "kernel-invariants",
        }
    }

    /// Error order the predictor is expected to show.
    pub fn expected_order(self) -> &'static str {
        match self {
            Experiment::Recurrence => "exact at t = 0 (closed-form shifted Jacobi)",
            Experiment::Outer | Experiment::Bulk => "O(1/n)",
            Experiment::BesselEdge0 | Experiment::BesselEdge1 => "O(1/n) + O(2 n^2 t)",
            Experiment::AiryEdge0 | Experiment::AiryEdge1 => "decreasing as 2 n^2 t grows",
            Experiment::Density | Experiment::Sine | Experiment::HardEdge => "O(1/n)",
            Experiment::SoftEdge => "decreasing as 2 n^2 t grows",
            Experiment::KernelInvariants => "working precision",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown experiment `{s}`"))
    }
}

/// Quadrature used for the table build.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub ratio: f64,
    pub points: Option<usize>,
    pub levels: Option<usize>,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            ratio: PanelSpec::DEFAULT_RATIO,
            points: None,
            levels: None,
        }
    }
}

impl QuadSpec {
    /// Stable text form used in the cache key.
    pub fn key(&self) -> String {
        let opt = |v: Option<usize>| v.map_or("auto".to_string(), |v| v.to_string());
        format!("r={:?},m={},L={}", self.ratio, opt(self.points), opt(self.levels))
    }
}

/// Evaluation grid; which fields are used depends on the experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub points: Vec<f64>,
    pub z: Vec<Complex64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub center: f64,
    pub side: Side,
    pub airy_variant: AiryVariant,
    pub soft_edge_scale: SoftEdgeConvention,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            points: Vec::new(),
            z: Vec::new(),
            u: Vec::new(),
            v: Vec::new(),
            center: 0.5,
            side: Side::Right,
            airy_variant: AiryVariant::Printed,
            soft_edge_scale: SoftEdgeConvention::Consistent,
        }
    }
}

impl GridSpec {
    /// Cartesian product of `u` and `v`, `u` outermost.
    pub fn uv_pairs(&self) -> Vec<(f64, f64)> {
        self.u
            .iter()
            .flat_map(|&u| self.v.iter().map(move |&v| (u, v)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub params: WeightParams,
    pub experiment: Experiment,
    pub n_max: usize,
    pub n_list: Vec<usize>,
    pub precision: PrecisionConfig,
    pub quad: QuadSpec,
    pub grid: GridSpec,
    pub output: PathBuf,
}

const KEYS: [&str; 20] = [
    "alpha",
    "beta",
    "t",
    "experiment",
    "N",
    "n_list",
    "bits",
    "quad_ratio",
    "quad_points",
    "quad_levels",
    "points",
    "z",
    "u",
    "v",
    "center",
    "side",
    "airy_variant",
    "soft_edge_scale",
    "output",
    "n",
];

struct Entries {
    map: HashMap<String, (usize, String)>,
}

impl Entries {
    fn raw(&self, key: &str) -> Option<&(usize, String)> {
        self.map.get(key)
    }

    fn scalar<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        match self.raw(key) {
            None => Ok(None),
            Some((line, value)) => value.parse().map(Some).map_err(|_| ConfigError::Parse {
                line: *line,
                message: format!("cannot parse `{value}` for key `{key}`"),
            }),
        }
    }

    fn required<T: FromStr>(&self, key: &str) -> Result<T, ConfigError> {
        self.scalar(key)?
            .ok_or_else(|| ConfigError::Missing(format!("missing required key `{key}`")))
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>, ConfigError> {
        let Some((line, value)) = self.raw(key) else {
            return Ok(Vec::new());
        };
        value
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse().map_err(|_| ConfigError::Parse {
                    line: *line,
                    message: format!("cannot parse list item `{s}` for key `{key}`"),
                })
            })
            .collect()
    }

    fn choice<T>(&self, key: &str, options: &[(&str, T)], default: T) -> Result<T, ConfigError>
    where
        T: Copy,
    {
        let Some((line, value)) = self.raw(key) else {
            return Ok(default);
        };
        options
            .iter()
            .find(|(name, _)| *name == value)
            .map(|(_, v)| *v)
            .ok_or_else(|| ConfigError::Parse {
                line: *line,
                message: format!(
                    "`{value}` is not one of {} for key `{key}`",
                    options.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
                ),
            })
    }
}

fn tokenize(text: &str) -> Result<Entries, ConfigError> {
    let mut map = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Parse {
            line,
            message: format!("expected `key = value`, found `{content}`"),
        })?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(ConfigError::Parse {
                line,
                message: format!("unknown key `{key}`"),
            });
        }
        // `n` is accepted as an alias of `n_list`.
        let key = if key == "n" { "n_list" } else { key };
        if map
            .insert(key.to_string(), (line, value.trim().to_string()))
            .is_some()
        {
            return Err(ConfigError::Parse {
                line,
                message: format!("duplicate key `{key}`"),
            });
        }
    }
    Ok(Entries { map })
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

fn require_nonempty<T>(items: &[T], key: &str, experiment: Experiment) -> Result<(), ConfigError> {
    if items.is_empty() {
        Err(invalid(format!("experiment `{experiment}` needs a nonempty `{key}`")))
    } else {
        Ok(())
    }
}

fn require_open_unit(items: &[f64], key: &str) -> Result<(), ConfigError> {
    match items.iter().find(|x| !(**x > 0.0 && **x < 1.0)) {
        Some(x) => Err(invalid(format!("`{key}` entry {x} outside (0, 1)"))),
        None => Ok(()),
    }
}

fn require_positive(items: &[f64], key: &str) -> Result<(), ConfigError> {
    match items.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        Some(x) => Err(invalid(format!("`{key}` entry {x} must be positive"))),
        None => Ok(()),
    }
}

fn validate_grid(experiment: Experiment, grid: &GridSpec, t: f64) -> Result<(), ConfigError> {
    use Experiment::*;
    match experiment {
        Recurrence => {}
        Outer => require_nonempty(&grid.z, "z", experiment)?,
        Bulk | Density | KernelInvariants => {
            require_nonempty(&grid.points, "points", experiment)?;
            require_open_unit(&grid.points, "points")?;
        }
        BesselEdge0 | BesselEdge1 | AiryEdge0 | AiryEdge1 => {
            require_nonempty(&grid.points, "points", experiment)?;
            require_positive(&grid.points, "points")?;
        }
        Sine => {
            require_nonempty(&grid.u, "u", experiment)?;
            require_nonempty(&grid.v, "v", experiment)?;
            require_open_unit(&[grid.center], "center")?;
        }
        HardEdge => {
            require_nonempty(&grid.u, "u", experiment)?;
            require_nonempty(&grid.v, "v", experiment)?;
            require_positive(&grid.u, "u")?;
            require_positive(&grid.v, "v")?;
        }
        SoftEdge => {
            require_nonempty(&grid.u, "u", experiment)?;
            require_nonempty(&grid.v, "v", experiment)?;
        }
    }
    if matches!(experiment, AiryEdge0 | AiryEdge1 | SoftEdge) && !(t > 0.0) {
        return Err(invalid(format!("experiment `{experiment}` needs t > 0")));
    }
    Ok(())
}

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let e = tokenize(text)?;
    let experiment: Experiment = match e.raw("experiment") {
        None => return Err(ConfigError::Missing("missing required key `experiment`".into())),
        Some((line, value)) => value.parse().map_err(|message| ConfigError::Parse {
            line: *line,
            message,
        })?,
    };
    let alpha: f64 = e.required("alpha")?;
    let beta: f64 = e.required("beta")?;
    let t: f64 = e.required("t")?;
    let params = validate_params(alpha, beta, t)?;

    let n_list: Vec<usize> = e.list("n_list")?;
    let n_max: Option<usize> = e.scalar("N")?;
    let (n_max, n_list) = match (n_max, n_list.is_empty()) {
        (Some(n), true) => (n, vec![n]),
        (Some(n), false) => (n, n_list),
        (None, false) => (*n_list.iter().max().unwrap_or(&0), n_list),
        (None, true) => return Err(ConfigError::Missing("one of `N` or `n_list` is required".into())),
    };
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("`n_list` must be strictly increasing"));
    }
    if n_list[0] == 0 {
        return Err(invalid("degrees in `n_list` must be at least 1"));
    }
    if n_max < *n_list.last().unwrap_or(&0) {
        return Err(invalid(format!("`N` = {n_max} is below the largest degree in `n_list`")));
    }

    let bits: u32 = e.scalar("bits")?.unwrap_or(PrecisionConfig::default().bits);
    let precision = PrecisionConfig::new(bits)?;

    let quad = QuadSpec {
        ratio: e.scalar("quad_ratio")?.unwrap_or(PanelSpec::DEFAULT_RATIO),
        points: e.scalar("quad_points")?,
        levels: e.scalar("quad_levels")?,
    };
    if !(quad.ratio > 0.0 && quad.ratio < 1.0) {
        return Err(invalid(format!("`quad_ratio` = {} outside (0, 1)", quad.ratio)));
    }

    let grid = GridSpec {
        points: e.list("points")?,
        z: e.list("z")?,
        u: e.list("u")?,
        v: e.list("v")?,
        center: e.scalar("center")?.unwrap_or(0.5),
        side: e.choice("side", &[("right", Side::Right), ("left", Side::Left)], Side::Right)?,
        airy_variant: e.choice(
            "airy_variant",
            &[("printed", AiryVariant::Printed), ("symmetric", AiryVariant::Symmetric)],
            AiryVariant::Printed,
        )?,
        soft_edge_scale: e.choice(
            "soft_edge_scale",
            &[
                ("consistent", SoftEdgeConvention::Consistent),
                ("printed", SoftEdgeConvention::Printed),
            ],
            SoftEdgeConvention::Consistent,
        )?,
    };
    validate_grid(experiment, &grid, t)?;

    let output = e
        .raw("output")
        .map_or_else(|| PathBuf::from("out"), |(_, v)| PathBuf::from(v));

    Ok(ExperimentConfig {
        params,
        experiment,
        n_max,
        n_list,
        precision,
        quad,
        grid,
        output,
    })
}
