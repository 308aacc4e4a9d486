//! Group input: presets, a plain text format and structured JSON/TOML documents.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Field, IntMat};
use crate::group::{close, GroupData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    #[serde(rename = "char", default)]
    pub characteristic: u64,
    /// Row-major integer matrices.
    #[serde(default)]
    pub generators: Vec<Vec<Vec<i64>>>,
}

pub const PRESET_NAMES: [&str; 6] = ["segre", "t3c2", "a1", "b2", "so3", "a2"];

fn diag(d: &[i64]) -> Vec<Vec<i64>> {
    (0..d.len())
        .map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0 }).collect())
        .collect()
}

/// Maximal-torus normalizer data for the shipped examples.
pub fn preset(name: &str) -> Option<GroupSpec> {
    let (rank, generators) = match name {
        "segre" => (2, vec![diag(&[-1, -1])]),
        "t3c2" => (3, vec![diag(&[-1, -1, 1])]),
        "a1" => (2, vec![vec![vec![0, 1], vec![1, 0]]]),
        "b2" => (2, vec![vec![vec![0, 1], vec![1, 0]], diag(&[-1, 1])]),
        "so3" => (1, vec![vec![vec![-1]]]),
        "a2" => (
            3,
            vec![
                vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]],
                vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]],
            ],
        ),
        _ => return None,
    };
    Some(GroupSpec {
        name: Some(name.to_string()),
        rank,
        characteristic: 0,
        generators,
    })
}

impl GroupSpec {
    /// Parses the text format, or a JSON or TOML document with fields
    /// `rank`, `char` and `generators`.
    pub fn parse(input: &str) -> Result<GroupSpec> {
        let trimmed = input.trim_start();
        let spec = if trimmed.starts_with('{') {
            serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?
        } else if trimmed.lines().any(|l| l.contains('=')) {
            toml::from_str(input).map_err(|e| Error::Parse(e.to_string()))?
        } else {
            GroupSpec::parse_text(input)?
        };
        spec.validate_shape()?;
        Ok(spec)
    }

    /// First line `rank p`, then the generator matrices, `rank` rows each.
    /// Blank lines between blocks and `#` comments are ignored.
    pub fn parse_text(input: &str) -> Result<GroupSpec> {
        let mut lines = input
            .lines()
            .map(|l| l.split('#').next().unwrap().trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty group description".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(Error::Parse(format!("expected `rank p` on the first line, got `{header}`")));
        }
        let rank: usize = head[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank `{}`", head[0])))?;
        let characteristic: u64 = head[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic `{}`", head[1])))?;
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for l in lines {
            let row = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
                .collect::<Result<Vec<i64>>>()?;
            if row.len() != rank {
                return Err(Error::Parse(format!(
                    "matrix row `{l}` has {} entries, expected {rank}",
                    row.len()
                )));
            }
            rows.push(row);
        }
        if rank == 0 || rows.len() % rank != 0 {
            return Err(Error::Parse("incomplete generator matrix".into()));
        }
        let generators = rows.chunks(rank).map(|c| c.to_vec()).collect();
        Ok(GroupSpec {
            name: None,
            rank,
            characteristic,
            generators,
        })
    }

    fn validate_shape(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::Parse("rank must be positive".into()));
        }
        for g in &self.generators {
            if g.len() != self.rank || g.iter().any(|r| r.len() != self.rank) {
                return Err(Error::Parse(format!(
                    "every generator must be a {0}x{0} matrix",
                    self.rank
                )));
            }
        }
        Ok(())
    }

    pub fn with_characteristic(&self, p: u64) -> GroupSpec {
        GroupSpec {
            characteristic: p,
            ..self.clone()
        }
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "custom".to_string())
    }

    /// The generator matrices as integer matrices.
    pub fn matrices(&self) -> Vec<IntMat> {
        self.generators.iter().map(|g| IntMat::from_i64(g)).collect()
    }

    /// Closes the generators into a finite group over `F_p` (or Q for `p = 0`).
    pub fn build(&self, max_order: usize) -> Result<Arc<GroupData>> {
        self.validate_shape()?;
        let field = Field::from_characteristic(self.characteristic)?;
        close(self.rank, &self.matrices(), field, max_order)
    }
}
