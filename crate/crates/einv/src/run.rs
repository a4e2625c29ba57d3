use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::numbers::{family_records, family_report, pairing_records, Family, FamilyParams, FamilyReport};
use crate::report::{CheckRecord, Report};
use crate::{reconstruct, spin, symplectic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilySel {
    Sp,
    Spin,
    Both,
}

impl FamilySel {
    pub fn families(self) -> Vec<Family> {
        match self {
            FamilySel::Sp => vec![Family::Sp],
            FamilySel::Spin => vec![Family::Spin],
            FamilySel::Both => vec![Family::Sp, Family::Spin],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Identities,
    Reconstruction,
    Numbers,
    Pairing,
}

impl CheckKind {
    pub const ALL: [CheckKind; 4] = [CheckKind::Identities, CheckKind::Reconstruction, CheckKind::Numbers, CheckKind::Pairing];

    /// Parses one name; `all` expands to every kind.
    pub fn parse(s: &str) -> Result<Vec<CheckKind>, ConfigError> {
        Ok(match s {
            "identities" => vec![CheckKind::Identities],
            "reconstruction" => vec![CheckKind::Reconstruction],
            "numbers" => vec![CheckKind::Numbers],
            "pairing" => vec![CheckKind::Pairing],
            "all" => CheckKind::ALL.to_vec(),
            other => return Err(ConfigError::UnknownCheck(other.to_string())),
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown check {0:?}; expected identities, reconstruction, numbers, pairing or all")]
    UnknownCheck(String),
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("n must be at least 1")]
    ZeroN,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub family: FamilySel,
    pub n: Vec<u64>,
    pub samples: u64,
    pub seed: u64,
    pub checks: BTreeSet<CheckKind>,
    /// Not part of the report, so the same run written to two places gives
    /// the same bytes.
    #[serde(skip)]
    pub output_path: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: FamilySel::Both,
            n: vec![1, 2],
            samples: 100,
            seed: 0,
            checks: CheckKind::ALL.into_iter().collect(),
            output_path: None,
        }
    }
}

impl RunConfig {
    /// Sorts and dedups `n` and rejects empty or zero values.
    pub fn validated(mut self) -> Result<Self, ConfigError> {
        if self.samples == 0 {
            return Err(ConfigError::NoSamples);
        }
        if self.n.is_empty() || self.n.contains(&0) {
            return Err(ConfigError::ZeroN);
        }
        self.n.sort_unstable();
        self.n.dedup();
        Ok(self)
    }
}

pub type RunReport = Report<RunConfig, FamilyReport>;

/// Largest `N` for the pairing expansion.
pub const PAIRING_MAX: u32 = 12;

pub fn suite(kind: CheckKind, family: Family, n: u64, samples: u64, seed: u64) -> Vec<CheckRecord> {
    match (kind, family) {
        (CheckKind::Identities, Family::Sp) => symplectic::suite::identity_records(n as usize, samples, seed),
        (CheckKind::Identities, Family::Spin) => spin::suite::identity_records(n as u32, samples, seed),
        (CheckKind::Reconstruction, Family::Sp) => reconstruct::sp_records(n as usize, samples, seed),
        (CheckKind::Reconstruction, Family::Spin) => reconstruct::spin_records(n as u32, samples, seed),
        (CheckKind::Numbers, f) => family_records(&FamilyParams::new(f, n).expect("n >= 1")),
        (CheckKind::Pairing, _) => Vec::new(),
    }
}

pub fn run(config: &RunConfig) -> RunReport {
    let mut checks = Vec::new();
    let mut families = Vec::new();
    for &f in &config.family.families() {
        for &n in &config.n {
            let params = FamilyParams::new(f, n).expect("validated n");
            families.push(family_report(&params));
            for &kind in &config.checks {
                checks.extend(suite(kind, f, n, config.samples, config.seed));
            }
        }
    }
    if config.checks.contains(&CheckKind::Pairing) {
        checks.extend(pairing_records(PAIRING_MAX));
    }
    Report::new(config.seed, config.clone(), families, checks)
}
