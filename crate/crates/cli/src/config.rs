use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

/// Everything a run needs, assembled from the optional config file with
/// command-line flags taking precedence.  The resolved struct is echoed
/// verbatim into the report.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<(u32, u32)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<(i64, i64)>>,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    /// Overlay `self` (higher precedence, from flags) onto `base`.
    pub fn over(self, base: RunConfig) -> RunConfig {
        RunConfig {
            format: self.format.or(base.format),
            out: self.out.or(base.out),
            threads: self.threads.or(base.threads),
            max_n: self.max_n.or(base.max_n),
            k_max: self.k_max.or(base.k_max),
            degrees: self.degrees.or(base.degrees),
            factors: self.factors.or(base.factors),
            dim: self.dim.or(base.dim),
            j: self.j.or(base.j),
            cells: self.cells.or(base.cells),
        }
    }
}

/// "a,b" or "a,b;c,d" into degree pairs.
pub fn parse_pairs(s: &str) -> Result<Vec<(u32, u32)>, CliError> {
    s.split(';')
        .map(|chunk| {
            let (a, b) = chunk
                .split_once(',')
                .ok_or_else(|| CliError::Usage(format!("bad degree pair '{chunk}'")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| CliError::Usage(format!("bad degree '{t}'")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

pub fn parse_cells(s: &str) -> Result<Vec<(i64, i64)>, CliError> {
    Ok(parse_pairs(s)?
        .into_iter()
        .map(|(a, b)| (a as i64, b as i64))
        .collect())
}
