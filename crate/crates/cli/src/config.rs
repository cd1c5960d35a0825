//! Flat key=value configuration files.
//!
//! A config file supplies defaults for long options: one `key=value` pair per
//! line, where the key is the option name without the leading dashes
//! (e.g. `eps-percentile=0.3`). Blank lines and lines starting with `#` are
//! ignored. Values given on the command line always win over the file.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use tsgraph::{Error, Result};

/// Every option name a config file may set. Keeping the list closed turns
/// typos into errors instead of silently ignored settings.
const KNOWN_KEYS: &[&str] = &[
    "alpha",
    "bins",
    "breaks",
    "builder",
    "by",
    "count",
    "delay",
    "direction",
    "each",
    "eps",
    "eps-percentile",
    "es-mode",
    "es-tau",
    "es-tau-cap",
    "events-percentile",
    "events-direction",
    "format",
    "horizon",
    "id",
    "k",
    "kind",
    "length",
    "limit",
    "m",
    "metric",
    "mode",
    "n",
    "nmi-norm",
    "noise",
    "radius",
    "seed",
    "sig",
    "space",
    "surrogates",
    "tau-max",
    "vg-algorithm",
    "vr-kernel",
    "vr-tau",
    "width",
    "workers",
];

/// Parsed key=value defaults, consulted when a flag was not given explicitly.
#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    /// Loads a config file, or returns an empty config when no path is given.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::data(format!(
                    "config {} line {}: expected key=value, got {line:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(Error::data(format!(
                    "config {} line {}: unknown key {key:?}",
                    path.display(),
                    lineno + 1
                )));
            }
            if values.insert(key.clone(), value).is_some() {
                return Err(Error::data(format!(
                    "config {} line {}: duplicate key {key:?}",
                    path.display(),
                    lineno + 1
                )));
            }
        }
        Ok(Self { values })
    }

    fn parse<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|e| {
                Error::data(format!("config key {key}: invalid value {raw:?}: {e}"))
            }),
        }
    }

    /// Flag value if given, otherwise the config value if present.
    pub fn opt<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.parse(key),
        }
    }

    /// Flag value, config value, or a built-in default, in that order.
    pub fn or<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.opt(flag, key)?.unwrap_or(default))
    }

    /// Flag or config value; an error naming the flag when neither is set.
    pub fn required<T>(&self, flag: Option<T>, key: &str) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.opt(flag, key)?
            .ok_or_else(|| Error::invalid(format!("missing required option --{key}")))
    }
}
