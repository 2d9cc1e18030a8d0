//! Serializable experiment descriptions. A config document captures one
//! subcommand invocation; `phdim run --config` replays it exactly, and
//! serialize → deserialize is the identity on the JSON level.

use std::path::PathBuf;

use phdim_core::filtration::ComplexKind;
use phdim_core::generators::GeneratorSpec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DimensionMethod {
    Box,
    Ph,
    Mst,
    PhComplexity,
}

impl std::fmt::Display for DimensionMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            DimensionMethod::Box => "box",
            DimensionMethod::Ph => "ph",
            DimensionMethod::Mst => "mst",
            DimensionMethod::PhComplexity => "ph-complexity",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum ExperimentConfig {
    Generate {
        spec: GeneratorSpec,
        #[serde(default)]
        out: Option<PathBuf>,
    },
    Barcode {
        spec: GeneratorSpec,
        #[serde(default)]
        input: Option<PathBuf>,
        complex: ComplexKind,
        degree: usize,
        #[serde(default)]
        scale: Option<f64>,
        #[serde(default)]
        csv: bool,
        #[serde(default)]
        out: Option<PathBuf>,
    },
    Dimension {
        spec: GeneratorSpec,
        method: DimensionMethod,
        degree: usize,
        complex: ComplexKind,
        sizes: Vec<usize>,
        scales: Vec<f64>,
        alpha_grid: Vec<f64>,
        #[serde(default)]
        out: Option<PathBuf>,
        #[serde(default)]
        diagnostics_out: Option<PathBuf>,
    },
    Mst {
        spec: GeneratorSpec,
        #[serde(default)]
        input: Option<PathBuf>,
        #[serde(default)]
        csv: bool,
        #[serde(default)]
        out: Option<PathBuf>,
    },
    Arcs {
        sizes: Vec<usize>,
        #[serde(default)]
        out: Option<PathBuf>,
    },
    Bipartite {
        level: u32,
        #[serde(default)]
        out: Option<PathBuf>,
    },
    Stable {
        input: PathBuf,
        #[serde(default)]
        out: Option<PathBuf>,
    },
    Xi {
        n: u32,
        m: u32,
        #[serde(default)]
        threshold: Option<f64>,
        #[serde(default)]
        out: Option<PathBuf>,
        #[serde(default)]
        witness_out: Option<PathBuf>,
    },
    TpVerify {
        n: f64,
        c: f64,
        grid_steps: usize,
        #[serde(default)]
        out: Option<PathBuf>,
    },
}
