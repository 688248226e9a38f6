use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use kerphi_abelian::{BlockDecomposition, ZVec};
use kerphi_factor::{Factor, FactorSpec, Word, DEFAULT_BFS_BUDGET};
use kerphi_filler::DehnModel;
use kerphi_product::Instance;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Instance configuration as read from JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub version: u32,
    pub n: usize,
    pub m: usize,
    pub block_sizes: Vec<usize>,
    pub factors: FactorsConfig,
    #[serde(default)]
    pub dehn: DehnConfig,
    /// Bigon area constant; `δ(7)` when absent.
    #[serde(default, rename = "M")]
    pub bigon_constant: Option<u64>,
    #[serde(default)]
    pub bfs_budget: Option<u32>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorsConfig {
    /// `"DF"` for all `2n` factors.
    All(String),
    List(Vec<FactorConfig>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorConfig {
    Short(String),
    Explicit {
        /// One row of `m` integers per free generator.
        phi_images: Vec<Vec<i64>>,
        /// Per block, one word per basis vector (`"x1 x2^-1"`).
        section_table: Vec<Vec<String>>,
    },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DehnConfig {
    #[default]
    Quadratic,
    Polynomial {
        degree: u32,
    },
    Table {
        values: Vec<u64>,
        #[serde(default)]
        superadditive: bool,
    },
}

impl DehnConfig {
    pub fn model(&self) -> DehnModel {
        match self {
            DehnConfig::Quadratic => DehnModel::quadratic(),
            DehnConfig::Polynomial { degree } => DehnModel::polynomial(*degree),
            DehnConfig::Table { values, superadditive } => {
                DehnModel::table(values.iter().map(|&v| v as u128).collect(), *superadditive)
            }
        }
    }
}

impl InstanceConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text)?;
        if c.version != SCHEMA_VERSION {
            bail!("version: unsupported schema version {} (expected {SCHEMA_VERSION})", c.version);
        }
        Ok(c)
    }

    /// `n` blocks of rank one with `2n` DF factors.
    pub fn doubled_free(n: usize) -> Self {
        Self {
            version: SCHEMA_VERSION,
            n,
            m: n,
            block_sizes: vec![1; n],
            factors: FactorsConfig::All("DF".into()),
            dehn: DehnConfig::Quadratic,
            bigon_constant: None,
            bfs_budget: None,
            seed: 0,
        }
    }

    /// Builds the instance, re-running every constructor invariant.
    pub fn instance(&self, bfs_budget: Option<u32>) -> Result<Instance> {
        if self.n < 3 {
            bail!("n: n = {} is below 3", self.n);
        }
        if self.block_sizes.len() != self.n {
            bail!("block_sizes: {} blocks given for n = {}", self.block_sizes.len(), self.n);
        }
        let dec = Arc::new(BlockDecomposition::new(self.block_sizes.clone()).context("block_sizes")?);
        if dec.m() != self.m {
            bail!("m: block sizes sum to {}, not {}", dec.m(), self.m);
        }
        let budget = bfs_budget.or(self.bfs_budget).unwrap_or(DEFAULT_BFS_BUDGET);
        let specs: Vec<FactorConfig> = match &self.factors {
            FactorsConfig::All(s) => vec![FactorConfig::Short(s.clone()); 2 * self.n],
            FactorsConfig::List(v) => v.clone(),
        };
        if specs.len() != 2 * self.n {
            bail!("factors: {} factors given, expected 2n = {}", specs.len(), 2 * self.n);
        }
        let mut factors = Vec::with_capacity(specs.len());
        for (i, f) in specs.iter().enumerate() {
            let spec = factor_spec(&dec, f).with_context(|| format!("factors[{}] (coordinate {})", i, i + 1))?;
            factors.push(Arc::new(
                Factor::with_budget(spec, budget).with_context(|| format!("factors[{i}]"))?,
            ));
        }
        Ok(Instance::new(dec, factors)?)
    }
}

fn factor_spec(dec: &Arc<BlockDecomposition>, f: &FactorConfig) -> Result<FactorSpec> {
    match f {
        FactorConfig::Short(s) if s == "DF" => Ok(FactorSpec::doubled_free(dec)?),
        FactorConfig::Short(s) => bail!("unknown factor shorthand `{s}`"),
        FactorConfig::Explicit {
            phi_images,
            section_table,
        } => {
            let images = phi_images
                .iter()
                .enumerate()
                .map(|(g, row)| ZVec::from_coords(dec, row.clone()).with_context(|| format!("phi_images[{g}]")))
                .collect::<Result<Vec<_>>>()?;
            let mut sections = Vec::with_capacity(section_table.len());
            for (j, row) in section_table.iter().enumerate() {
                let words = row
                    .iter()
                    .enumerate()
                    .map(|(b, w)| w.parse::<Word>().with_context(|| format!("section_table[{j}][{b}]")))
                    .collect::<Result<Vec<_>>>()?;
                sections.push(words);
            }
            Ok(FactorSpec::new(dec, images, sections)?)
        }
    }
}
