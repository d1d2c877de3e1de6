//! Instance configuration files.
//!
//! Two shapes are accepted: a symplectic instance
//! `{"ring":{"kind":"zmod","n":9},"rank":2,"gram":[[0,3],[6,0]]}` (or with
//! `"form":"standard"` / `"form":"scaled","c":3` in place of `"gram"`), and an
//! ad-hoc Cayley table `{"size":N,"op":[[..],..]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::freemod::{FormSpec, GramForm};
use crate::quandle::{FiniteQuandle, QuandleSpec};
use crate::ring::{Ring, RingDescriptor};
use crate::symplectic::{SymplecticQuandle, DEFAULT_SIZE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticConfig {
    pub ring: RingDescriptor,
    pub rank: usize,
    #[serde(flatten)]
    pub form: FormSpec,
}

impl SymplecticConfig {
    pub fn form(&self) -> Result<GramForm> {
        let ring = Ring::new(self.ring.clone())?;
        GramForm::from_spec(&ring, self.rank, &self.form)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Config {
    Symplectic(SymplecticConfig),
    Table(QuandleSpec),
}

/// A loaded instance, ready for queries.
#[derive(Debug, Clone)]
pub enum Instance {
    Symplectic(SymplecticQuandle),
    Table(FiniteQuandle),
}

impl Instance {
    pub fn quandle(&self) -> &FiniteQuandle {
        match self {
            Instance::Symplectic(sq) => sq.quandle(),
            Instance::Table(q) => q,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let Some(obj) = value.as_object() else {
            return Err(Error::Config("top level must be a JSON object".into()));
        };
        if obj.contains_key("op") {
            let spec: QuandleSpec = serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
            return Ok(Config::Table(spec));
        }
        const KNOWN: [&str; 5] = ["ring", "rank", "gram", "form", "c"];
        if let Some(key) = obj.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            return Err(Error::Config(format!("unknown field \"{key}\"")));
        }
        let cfg: SymplecticConfig = serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
        Ok(Config::Symplectic(cfg))
    }

    pub fn load(&self) -> Result<Instance> {
        self.load_with_cap(DEFAULT_SIZE_CAP)
    }

    pub fn load_with_cap(&self, cap: usize) -> Result<Instance> {
        match self {
            Config::Symplectic(cfg) => Ok(Instance::Symplectic(SymplecticQuandle::build_with_cap(&cfg.form()?, cap)?)),
            Config::Table(spec) => Ok(Instance::Table(FiniteQuandle::from_spec(spec)?)),
        }
    }
}
