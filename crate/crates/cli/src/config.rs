//! Settings from a TOML file; command-line flags take precedence.
//!
//! ```toml
//! prime = 3
//! max_deg = 16
//! jobs = 4
//! format = "json"
//! ring = "d0"
//! adem_max_sum = 12
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::eval::Ring;
use crate::report::Format;

/// Largest `n + m` the `adem` command accepts unless configured otherwise.
pub const DEFAULT_ADEM_MAX_SUM: u32 = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub prime: Option<u64>,
    pub max_deg: Option<u64>,
    pub jobs: Option<usize>,
    pub format: Option<Format>,
    pub ring: Option<RingName>,
    pub adem_max_sum: Option<u32>,
}

/// A ring as written in the config file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingName {
    A,
    D0,
    D1,
    #[serde(alias = "ehat")]
    E0,
}

impl From<RingName> for Ring {
    fn from(r: RingName) -> Ring {
        match r {
            RingName::A => Ring::A,
            RingName::D0 => Ring::D0,
            RingName::D1 => Ring::D1,
            RingName::E0 => Ring::E0,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn adem_max_sum(&self) -> u32 {
        self.adem_max_sum.unwrap_or(DEFAULT_ADEM_MAX_SUM)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_every_key() {
        let c = Config::parse("prime = 5\nmax_deg = 12\njobs = 2\nformat = \"csv\"\nring = \"e0\"\nadem_max_sum = 9\n").unwrap();
        assert_eq!(c.prime, Some(5));
        assert_eq!(c.format, Some(Format::Csv));
        assert_eq!(c.ring.map(Ring::from), Some(Ring::E0));
        assert_eq!(c.adem_max_sum(), 9);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(Config::parse("primes = 3").is_err());
    }
}
