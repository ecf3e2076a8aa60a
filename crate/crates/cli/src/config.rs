//! Flat `key = value` configuration, built-in presets, and run manifests.
//!
//! One setting per line, `#` starts a comment line, keys are dotted paths
//! in a single flat namespace (`chain.t = 600`). The same format serves
//! three roles: user config files, preset definitions, and the manifest
//! written next to every `--out` file. A manifest holds the full resolved
//! parameter set of the run that produced an output, so feeding it back
//! through `--config` reproduces that output byte for byte.
//!
//! Resolution precedence, highest first: explicit flag, config file,
//! preset, built-in default.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::fail::Failure;

/// Keys a manifest adds for provenance; tolerated and ignored on read.
const META_KEYS: &[&str] = &["tool", "subcommand", "rng", "preset"];

const KNOWN_KEYS: &[&str] = &[
    "seed",
    "chain.t",
    "chain.eta",
    "chain.difficulty",
    "chain.reward",
    "chain.interval",
    "market.fiat",
    "classical.rate",
    "classical.opex",
    "classical.setup",
    "quantum.rate",
    "quantum.opex",
    "quantum.setup",
    "profit.years",
    "table1.rates",
    "table1.frates",
    "crossover.network",
    "crossover.clock",
    "crossover.window",
    "crossover.network_doubling",
    "crossover.quantum_doubling",
    "crossover.horizon",
    "crossover.step",
    "sim.mode",
    "sim.epochs",
    "sim.clamp",
    "adoption.threshold",
    "adoption.count",
    "adoption.template.rate",
    "adoption.template.opex",
    "adoption.template.setup",
    "grover.n_bits",
    "grover.header",
    "grover.target",
    "extrapolate.degree",
    "extrapolate.at",
    "extrapolate.history",
];

/// `miner.<index>.kind|rate|opex|setup`
fn is_miner_key(key: &str) -> bool {
    let mut parts = key.split('.');
    matches!(
        (parts.next(), parts.next(), parts.next(), parts.next()),
        (Some("miner"), Some(idx), Some(field), None)
            if idx.parse::<usize>().is_ok()
                && matches!(field, "kind" | "rate" | "opex" | "setup")
    )
}

fn is_known(key: &str) -> bool {
    KNOWN_KEYS.contains(&key) || META_KEYS.contains(&key) || is_miner_key(key)
}

/// Parsed settings: key to (value, source line). Preset entries carry line
/// 0, meaning "not from the config file".
#[derive(Debug, Clone, Default)]
pub struct ConfigMap {
    entries: BTreeMap<String, (String, usize)>,
}

impl ConfigMap {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Failure::Usage(format!("config line {line_no}: expected 'key = value'"))
            })?;
            let key = key.trim();
            let value = value.trim();
            if !is_known(key) {
                return Err(Failure::Usage(format!(
                    "config line {line_no}: unknown key '{key}'"
                )));
            }
            if let Some((_, first)) = entries.get(key) {
                return Err(Failure::Usage(format!(
                    "config line {line_no}: duplicate key '{key}' (already set on line {first})"
                )));
            }
            entries.insert(key.to_string(), (value.to_string(), line_no));
        }
        Ok(ConfigMap { entries })
    }

    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn from_pairs(pairs: &[(&str, &str)]) -> Self {
        ConfigMap {
            entries: pairs
                .iter()
                .map(|&(k, v)| (k.to_string(), (v.to_string(), 0)))
                .collect(),
        }
    }

    /// Built-in named parameter sets.
    pub fn preset(name: &str) -> Result<Self, Failure> {
        match name {
            "btc-2025" => Ok(Self::from_pairs(&[
                ("chain.t", "600"),
                ("chain.eta", "4294967296"),
                ("chain.difficulty", "4290300000000000000"),
                ("chain.reward", "3.125"),
                ("chain.interval", "2016"),
            ])),
            "monero" => Ok(Self::from_pairs(&[("crossover.network", "1280000000")])),
            "etc" => Ok(Self::from_pairs(&[("crossover.network", "6430000000000")])),
            other => Err(Failure::Usage(format!(
                "unknown preset '{other}' (available: btc-2025, monero, etc)"
            ))),
        }
    }

    fn get(&self, key: &str) -> Option<&(String, usize)> {
        self.entries.get(key)
    }

    /// Sorted miner indices mentioned by any `miner.N.*` key.
    pub fn miner_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = self
            .entries
            .keys()
            .filter_map(|k| {
                let mut parts = k.split('.');
                (parts.next() == Some("miner")).then(|| parts.next()?.parse().ok())?
            })
            .collect();
        idx.sort_unstable();
        idx.dedup();
        idx
    }
}

/// Config file and preset merged behind the flag layer.
#[derive(Debug, Default)]
pub struct Settings {
    config: ConfigMap,
    preset: ConfigMap,
}

impl Settings {
    pub fn new(config_path: Option<&Path>, preset_name: Option<&str>) -> Result<Self, Failure> {
        let config = match config_path {
            Some(p) => ConfigMap::load(p)?,
            None => ConfigMap::default(),
        };
        let preset = match preset_name {
            Some(n) => ConfigMap::preset(n)?,
            None => ConfigMap::default(),
        };
        Ok(Settings { config, preset })
    }

    pub fn miner_indices(&self) -> Vec<usize> {
        self.config.miner_indices()
    }

    fn raw(&self, key: &str) -> Option<&(String, usize)> {
        self.config.get(key).or_else(|| self.preset.get(key))
    }

    fn parse_raw<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, Failure> {
        value.parse().map_err(|_| {
            if line > 0 {
                Failure::Usage(format!(
                    "config line {line}: invalid value for '{key}': '{value}'"
                ))
            } else {
                Failure::Usage(format!("preset: invalid value for '{key}': '{value}'"))
            }
        })
    }

    /// Typed lookup without a flag or default; `None` when the key is
    /// absent everywhere.
    pub fn opt<T: std::str::FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, Failure> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.raw(key) {
            Some((value, line)) => Ok(Some(Self::parse_raw(key, value, *line)?)),
            None => Ok(None),
        }
    }

    /// Typed lookup falling back to a default.
    pub fn or<T: std::str::FromStr>(&self, key: &str, flag: Option<T>, default: T) -> Result<T, Failure> {
        Ok(self.opt(key, flag)?.unwrap_or(default))
    }

    /// Comma-separated list of floats.
    pub fn f64_list_or(
        &self,
        key: &str,
        flag: Option<Vec<f64>>,
        default: &[f64],
    ) -> Result<Vec<f64>, Failure> {
        if let Some(list) = flag {
            return Ok(list);
        }
        match self.raw(key) {
            Some((value, line)) => value
                .split(',')
                .map(|item| Self::parse_raw(key, item.trim(), *line))
                .collect(),
            None => Ok(default.to_vec()),
        }
    }

    /// String-valued lookup (mode names, paths).
    pub fn str_opt(&self, key: &str, flag: Option<String>) -> Option<String> {
        flag.or_else(|| self.raw(key).map(|(v, _)| v.clone()))
    }

    /// Line number of a config-file key, for error messages.
    pub fn line_of(&self, key: &str) -> Option<usize> {
        self.config.get(key).map(|&(_, line)| line).filter(|&l| l > 0)
    }
}

/// The resolved parameter set of one run, rendered in config format so it
/// can be fed back through `--config`.
#[derive(Debug)]
pub struct Manifest {
    entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new(subcommand: &str) -> Self {
        Manifest {
            entries: vec![
                (
                    "tool".into(),
                    format!("qpow {}", env!("CARGO_PKG_VERSION")),
                ),
                ("subcommand".into(), subcommand.into()),
                ("rng".into(), qpow::rng::RNG_ALGORITHM.into()),
            ],
        }
    }

    pub fn push(&mut self, key: &str, value: impl std::fmt::Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.entries {
            out.push_str(&format!("{key} = {value}\n"));
        }
        out
    }
}

/// Writes the body to `--out` (or standard output) and, for file output,
/// the manifest alongside as `<name>.manifest`.
pub fn write_output(
    out: Option<&Path>,
    body: &str,
    manifest: &Manifest,
) -> Result<(), Failure> {
    match out {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, body)
                .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
            let mut manifest_path = path.as_os_str().to_owned();
            manifest_path.push(".manifest");
            let manifest_path = PathBuf::from(manifest_path);
            std::fs::write(&manifest_path, manifest.render()).map_err(|e| {
                Failure::Runtime(format!("cannot write {}: {e}", manifest_path.display()))
            })?;
            Ok(())
        }
    }
}
