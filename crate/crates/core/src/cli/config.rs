use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::{AlphaGrid, HubSelection};
use crate::error::{Error, Result};
use crate::google::check_alpha;
use crate::graph::{Family, GeneratorSpec, ScaleFreeParams};

/// Default output root when neither `--out` nor the config file sets one.
pub const OUTPUT_ROOT_ENV: &str = "QPR_OUTPUT_ROOT";
pub const DEFAULT_OUTPUT_ROOT: &str = "qpr-output";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Generate,
    Rank,
    Ipr,
    Stability,
    Powerlaw,
    Attack,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Generate => "generate",
            Command::Rank => "rank",
            Command::Ipr => "ipr",
            Command::Stability => "stability",
            Command::Powerlaw => "powerlaw",
            Command::Attack => "attack",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Quantum,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Sf,
    Er,
    Hier3,
    Outerplanar,
}

/// Everything that determines a run's output. Echoed as `run_config.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub family: FamilyKind,
    pub n: usize,
    pub p: Option<f64>,
    pub generation: u32,
    pub self_loops: bool,
    pub seed: u64,
    pub alpha: f64,
    #[serde(rename = "T")]
    pub horizon: usize,
    pub r: u32,
    pub mode: Mode,
    pub grid: AlphaGrid,
    pub reference_alpha: f64,
    pub sizes: Vec<usize>,
    pub ensemble: usize,
    pub removals: usize,
    pub selection: HubSelection,
    pub i_min: Option<usize>,
    pub i_max: Option<usize>,
    pub tol: f64,
    pub max_iter: usize,
    pub trajectory: bool,
    pub export_matrix: bool,
    pub output: Option<PathBuf>,
}

fn value<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| Error::param(format!("invalid value {raw:?} for {key}")))
}

fn flag(key: &str, raw: &str) -> Result<bool> {
    match raw {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(Error::param(format!("invalid value {raw:?} for {key}, expected true or false"))),
    }
}

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        let (n, ensemble) = match command {
            Command::Attack => (16, 100),
            Command::Powerlaw => (256, 29),
            Command::Stability => (128, 1),
            _ => (64, 1),
        };
        RunConfig {
            command,
            input: None,
            family: FamilyKind::Sf,
            n,
            p: None,
            generation: 2,
            self_loops: false,
            seed: 0,
            alpha: 0.85,
            horizon: crate::walk::DEFAULT_HORIZON,
            r: 1,
            mode: Mode::Both,
            grid: AlphaGrid::Coarse,
            reference_alpha: 0.85,
            sizes: vec![32, 64, 128, 256],
            ensemble,
            removals: 5,
            selection: HubSelection::Initial,
            i_min: None,
            i_max: None,
            tol: 1e-12,
            max_iter: 100_000,
            trajectory: false,
            export_matrix: false,
            output: None,
        }
    }

    /// Sets one field from its textual form. Shared by the config file and
    /// the command-line flags.
    pub fn set(&mut self, key: &str, raw: &str) -> Result<()> {
        let raw = raw.trim();
        match key {
            "input" => self.input = Some(PathBuf::from(raw)),
            "family" => {
                self.family = match raw {
                    "sf" | "scale_free" => FamilyKind::Sf,
                    "er" | "erdos_renyi" => FamilyKind::Er,
                    "hier3" => FamilyKind::Hier3,
                    "outerplanar" => FamilyKind::Outerplanar,
                    _ => return Err(Error::param(format!("unknown family {raw:?}"))),
                }
            }
            "n" => self.n = value(key, raw)?,
            "p" => self.p = Some(value(key, raw)?),
            "gen" | "generation" => self.generation = value(key, raw)?,
            "self_loops" => self.self_loops = flag(key, raw)?,
            "seed" => self.seed = value(key, raw)?,
            "alpha" => self.alpha = value(key, raw)?,
            "T" | "horizon" => self.horizon = value(key, raw)?,
            "r" => self.r = value(key, raw)?,
            "mode" => {
                self.mode = match raw {
                    "classical" => Mode::Classical,
                    "quantum" => Mode::Quantum,
                    "both" => Mode::Both,
                    _ => return Err(Error::param(format!("unknown mode {raw:?}"))),
                }
            }
            "grid" => {
                self.grid = match raw {
                    "coarse" => AlphaGrid::Coarse,
                    "fine" => AlphaGrid::Fine,
                    _ => return Err(Error::param(format!("unknown grid {raw:?}"))),
                }
            }
            "reference_alpha" => self.reference_alpha = value(key, raw)?,
            "sizes" => {
                self.sizes = raw
                    .split(',')
                    .map(|s| value(key, s.trim()))
                    .collect::<Result<_>>()?
            }
            "ensemble" => self.ensemble = value(key, raw)?,
            "removals" => self.removals = value(key, raw)?,
            "selection" => {
                self.selection = match raw {
                    "initial" => HubSelection::Initial,
                    "adaptive" => HubSelection::Adaptive,
                    _ => return Err(Error::param(format!("unknown hub selection {raw:?}"))),
                }
            }
            "i_min" => self.i_min = Some(value(key, raw)?),
            "i_max" => self.i_max = Some(value(key, raw)?),
            "tol" => self.tol = value(key, raw)?,
            "max_iter" => self.max_iter = value(key, raw)?,
            "trajectory" => self.trajectory = flag(key, raw)?,
            "export_matrix" => self.export_matrix = flag(key, raw)?,
            "output" | "out" => self.output = Some(PathBuf::from(raw)),
            _ => return Err(Error::param(format!("unknown configuration key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        check_alpha(self.reference_alpha)?;
        if self.horizon == 0 {
            return Err(Error::param("T must be at least 1"));
        }
        if self.r == 0 {
            return Err(Error::param("r must be at least 1"));
        }
        if self.ensemble == 0 {
            return Err(Error::param("ensemble must be at least 1"));
        }
        if self.tol.is_nan() || self.tol <= 0.0 || self.max_iter == 0 {
            return Err(Error::param("tol must be positive and max_iter at least 1"));
        }
        if self.input.is_none() && self.family == FamilyKind::Er && self.p.is_none() {
            return Err(Error::param("the er family needs an edge probability --p"));
        }
        Ok(())
    }

    /// Output directory: explicit setting, then the environment, then the default.
    pub fn output_dir(&self) -> PathBuf {
        self.output.clone().unwrap_or_else(|| {
            std::env::var_os(OUTPUT_ROOT_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_ROOT))
        })
    }

    /// Generator for a graph of `n` nodes (ignored by hierarchical families).
    pub fn spec_with_n(&self, n: usize) -> Result<GeneratorSpec> {
        let family = match self.family {
            FamilyKind::Sf => Family::ScaleFree {
                n,
                params: ScaleFreeParams {
                    allow_self_loops: self.self_loops,
                    ..ScaleFreeParams::default()
                },
            },
            FamilyKind::Er => Family::ErdosRenyi {
                n,
                p: self
                    .p
                    .ok_or_else(|| Error::param("the er family needs an edge probability --p"))?,
            },
            FamilyKind::Hier3 => Family::HierarchicalTernary {
                generation: self.generation,
            },
            FamilyKind::Outerplanar => Family::HierarchicalOuterplanar {
                generation: self.generation,
            },
        };
        Ok(GeneratorSpec {
            family,
            seed: self.seed,
        })
    }

    pub fn spec(&self) -> Result<GeneratorSpec> {
        self.spec_with_n(self.n)
    }
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, val) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(k + 1, format!("expected key = value, got {line:?}")))?;
        out.push((key.trim().to_string(), val.trim().to_string()));
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    parse_config_file(&std::fs::read_to_string(path)?)
}
