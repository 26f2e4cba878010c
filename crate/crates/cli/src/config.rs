//! Experiment configuration: flat `key = value` text with dotted sections.
//!
//! The canonical form (sorted keys) is embedded as `# key = value` comment
//! lines in every output file, so any output can be re-run byte-identically.

use crate::error::{CliError, ErrorKind};
use frogsim::analysis::series::YSampler;
use frogsim::conductance::ConductanceLaw;
use frogsim::counts::CountsLaw;
use frogsim::kernel::{
    comb_kernel, elliptic_drift_kernel, outward_drift_kernel, Kernel, ResidualLaw,
};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    entries: BTreeMap<String, String>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::new(
                    ErrorKind::Config,
                    format!("line {}: expected `key = value`, got `{line}`", lineno + 1),
                ));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(CliError::new(
                    ErrorKind::Config,
                    format!("line {}: empty key", lineno + 1),
                ));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(CliError::new(
                    ErrorKind::Config,
                    format!("duplicate key `{key}`"),
                ));
            }
        }
        Ok(ExperimentConfig { entries })
    }

    /// Re-parses the `# key = value` header lines embedded in an output
    /// file.
    pub fn parse_embedded(output: &str) -> Result<Self, CliError> {
        let mut body = String::new();
        for line in output.lines() {
            if let Some(rest) = line.strip_prefix("# config: ") {
                body.push_str(rest);
                body.push('\n');
            }
        }
        ExperimentConfig::parse(&body)
    }

    pub fn set(&mut self, key: &str, value: String) {
        self.entries.insert(key.to_string(), value);
    }

    /// Canonical header block: one `# key = value` line per entry, sorted.
    pub fn header_lines(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect()
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str, CliError> {
        self.raw(key)
            .ok_or_else(|| CliError::new(ErrorKind::Config, format!("missing key `{key}`")))
    }

    pub fn get_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.raw(key).unwrap_or(default)
    }

    pub fn parse_num<T: std::str::FromStr>(&self, key: &str) -> Result<T, CliError> {
        let raw = self.require(key)?;
        raw.parse().map_err(|_| {
            CliError::new(
                ErrorKind::Config,
                format!("key `{key}`: cannot parse `{raw}`"),
            )
        })
    }

    pub fn parse_num_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        match self.raw(key) {
            None => Ok(default),
            Some(raw) => raw.parse().map_err(|_| {
                CliError::new(
                    ErrorKind::Config,
                    format!("key `{key}`: cannot parse `{raw}`"),
                )
            }),
        }
    }

    pub fn parse_list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>, CliError> {
        let raw = self.require(key)?;
        raw.split(',')
            .map(|part| {
                part.trim().parse().map_err(|_| {
                    CliError::new(
                        ErrorKind::Config,
                        format!("key `{key}`: cannot parse element `{part}`"),
                    )
                })
            })
            .collect()
    }

    pub fn seed(&self) -> Result<u64, CliError> {
        self.parse_num("run.seed")
    }

    pub fn replicas(&self) -> Result<u32, CliError> {
        let n: u32 = self.parse_num("run.replicas")?;
        if n == 0 {
            return Err(CliError::new(
                ErrorKind::Config,
                "run.replicas must be >= 1",
            ));
        }
        Ok(n)
    }

    /// Per-site count cap used by simulations (0 disables capping).
    pub fn count_cap(&self) -> Result<u64, CliError> {
        self.parse_num_or("counts.cap", 0u64)
    }

    /// The model family's lattice dimension (2 for the comb).
    pub fn model_dim(&self) -> Result<usize, CliError> {
        match self.require("model.family")? {
            "comb" => Ok(2),
            _ => self.parse_num("model.d"),
        }
    }

    /// Builds the transition kernel described by the `model.*` section.
    /// Conductance models are sampled per replicate and are built elsewhere.
    pub fn kernel(&self) -> Result<Kernel, CliError> {
        match self.require("model.family")? {
            "elliptic_drift" => {
                let d: usize = self.parse_num("model.d")?;
                let eps: f64 = self.parse_num("model.epsilon")?;
                let residual = match self.get_or("model.residual", "uniform") {
                    "stay" => ResidualLaw::Stay,
                    "plus_e1" => ResidualLaw::PlusFirstAxis,
                    "uniform" => ResidualLaw::UniformUnit,
                    other => {
                        return Err(CliError::new(
                            ErrorKind::Config,
                            format!("model.residual: unknown value `{other}`"),
                        ))
                    }
                };
                elliptic_drift_kernel(d, eps, residual).map_err(CliError::from)
            }
            "comb" => {
                let p1: f64 = self.parse_num("model.p1")?;
                let p2: f64 = self.parse_num("model.p2")?;
                comb_kernel(p1, p2).map_err(CliError::from)
            }
            "outward_drift" => {
                let d: usize = self.parse_num("model.d")?;
                let bias: f64 = self.parse_num("model.bias")?;
                outward_drift_kernel(d, bias).map_err(CliError::from)
            }
            "conductance" => Err(CliError::new(
                ErrorKind::Config,
                "conductance kernels are sampled per replicate",
            )),
            other => Err(CliError::new(
                ErrorKind::Config,
                format!("model.family: unknown value `{other}`"),
            )),
        }
    }

    pub fn is_conductance_model(&self) -> Result<bool, CliError> {
        Ok(self.require("model.family")? == "conductance")
    }

    pub fn conductance_law(&self) -> Result<ConductanceLaw, CliError> {
        match self.get_or("model.law", "bernoulli") {
            "bernoulli" => Ok(ConductanceLaw::Bernoulli {
                p: self.parse_num("model.p")?,
            }),
            "uniform" => Ok(ConductanceLaw::Uniform {
                lo: self.parse_num("model.lo")?,
                hi: self.parse_num("model.hi")?,
            }),
            other => Err(CliError::new(
                ErrorKind::Config,
                format!("model.law: unknown value `{other}`"),
            )),
        }
    }

    fn counts_law_at(&self, prefix: &str) -> Result<CountsLaw, CliError> {
        let key = format!("{prefix}law");
        let law = match self.require(&key)? {
            "constant" => CountsLaw::Constant {
                m: self.parse_num(&format!("{prefix}m"))?,
            },
            "bernoulli" => CountsLaw::Bernoulli {
                p: self.parse_num(&format!("{prefix}p"))?,
            },
            "logtail" => CountsLaw::LogTail {
                c0: self.parse_num(&format!("{prefix}c0"))?,
                d: self.parse_num(&format!("{prefix}tail_d"))?,
                t0: self.parse_num(&format!("{prefix}t0"))?,
            },
            "logmoment" => CountsLaw::LogMoment {
                theta: self.parse_num(&format!("{prefix}theta"))?,
            },
            "comb" => CountsLaw::Comb {
                spine: Box::new(self.counts_law_at(&format!("{prefix}spine_"))?),
                tooth: Box::new(self.counts_law_at(&format!("{prefix}tooth_"))?),
            },
            other => {
                return Err(CliError::new(
                    ErrorKind::Config,
                    format!("{key}: unknown value `{other}`"),
                ))
            }
        };
        law.validate()?;
        Ok(law)
    }

    pub fn counts_law(&self) -> Result<CountsLaw, CliError> {
        self.counts_law_at("counts.")
    }

    /// Radius sweep plus matched horizons (`sweep.horizons` explicit list
    /// or `sweep.horizon_factor * L`).
    pub fn sweep(&self) -> Result<Vec<(u32, u32)>, CliError> {
        let radii: Vec<u32> = self.parse_list("sweep.radii")?;
        if radii.is_empty() {
            return Err(CliError::new(ErrorKind::Config, "sweep.radii is empty"));
        }
        if let Some(raw) = self.raw("sweep.horizons") {
            let horizons: Vec<u32> = raw
                .split(',')
                .map(|p| {
                    p.trim().parse().map_err(|_| {
                        CliError::new(
                            ErrorKind::Config,
                            format!("sweep.horizons: cannot parse `{p}`"),
                        )
                    })
                })
                .collect::<Result<_, _>>()?;
            if horizons.len() != radii.len() {
                return Err(CliError::new(
                    ErrorKind::Config,
                    "sweep.horizons must match sweep.radii in length",
                ));
            }
            Ok(radii.into_iter().zip(horizons).collect())
        } else {
            let factor: u32 = self.parse_num_or("sweep.horizon_factor", 8)?;
            Ok(radii.into_iter().map(|l| (l, factor * l)).collect())
        }
    }

    pub fn series_sampler(&self) -> Result<YSampler, CliError> {
        let sampler = match self.require("series.law")? {
            "constant" => YSampler::Constant {
                value: self.parse_num("series.value")?,
            },
            "uniform" => YSampler::Uniform {
                hi: self.parse_num("series.hi")?,
            },
            "heavy_logtail" => YSampler::HeavyLogTail {
                theta: self.parse_num("series.theta")?,
            },
            "lognormal_capped" => YSampler::LogNormalCapped {
                sigma: self.parse_num("series.sigma")?,
                cap: self.parse_num("series.cap")?,
            },
            other => {
                return Err(CliError::new(
                    ErrorKind::Config,
                    format!("series.law: unknown value `{other}`"),
                ))
            }
        };
        sampler.validate()?;
        Ok(sampler)
    }
}
