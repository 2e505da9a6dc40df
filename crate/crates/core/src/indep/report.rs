//! JSON-lines report of an independence run: one record per instance, then
//! a summary. Field order and content depend only on the configuration, so
//! a run is reproducible byte for byte unless timings are requested.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{SampleFamily, Verdict};

pub const REPORT_FORMAT: &str = "ncwitt/indep-report";
pub const REPORT_VERSION: u32 = 1;
pub const PRNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.3), seed_from_u64(seed), set_stream(sample index)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Independent,
    Undetermined,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceRecord {
    pub record: String,
    pub index: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<SampleFamily>,
    pub polys: Vec<String>,
    pub verdict: VerdictKind,
    /// Resolution level for independent verdicts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    /// Integers as decimal strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_basis: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub untested_from: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl InstanceRecord {
    pub fn from_verdict(index: u64, family: SampleFamily, polys: Vec<String>, verdict: &Verdict) -> Self {
        let mut rec = InstanceRecord {
            record: "instance".into(),
            index,
            family: Some(family),
            polys,
            verdict: VerdictKind::Independent,
            level: None,
            kernel_basis: None,
            untested_from: None,
            diagnostic: None,
            millis: None,
        };
        match verdict {
            Verdict::Independent { level } => rec.level = Some(*level),
            Verdict::Undetermined {
                kernel_basis,
                untested_from,
            } => {
                rec.verdict = VerdictKind::Undetermined;
                rec.kernel_basis = Some(
                    kernel_basis
                        .iter()
                        .map(|v| v.iter().map(ToString::to_string).collect())
                        .collect(),
                );
                rec.untested_from = *untested_from;
                rec.diagnostic = Some(match untested_from {
                    Some(n) => format!("word limit reached; levels from {n} on were not tested"),
                    None => "kernel survives every tested level; dependence is not implied".into(),
                });
            }
        }
        rec
    }

    pub fn skipped(index: u64, diagnostic: String) -> Self {
        InstanceRecord {
            record: "instance".into(),
            index,
            family: None,
            polys: Vec::new(),
            verdict: VerdictKind::Skipped,
            level: None,
            kernel_basis: None,
            untested_from: None,
            diagnostic: Some(diagnostic),
            millis: None,
        }
    }
}

/// Run parameters echoed into the summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportConfig {
    /// `sampled` or `explicit`.
    pub mode: String,
    pub p: u32,
    pub alphabet: Vec<String>,
    pub max_level: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_words: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prng: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummaryRecord {
    pub record: String,
    pub format: String,
    pub version: u32,
    pub config: ReportConfig,
    pub instances: u64,
    pub independent: u64,
    pub independent_by_level: BTreeMap<usize, u64>,
    pub undetermined: u64,
    pub undetermined_indices: Vec<u64>,
    pub skipped: u64,
    pub note: String,
}

impl SummaryRecord {
    pub fn new(config: ReportConfig) -> Self {
        SummaryRecord {
            record: "summary".into(),
            format: REPORT_FORMAT.into(),
            version: REPORT_VERSION,
            config,
            instances: 0,
            independent: 0,
            independent_by_level: BTreeMap::new(),
            undetermined: 0,
            undetermined_indices: Vec::new(),
            skipped: 0,
            note: "undetermined verdicts are not evidence of dependence: only finitely many levels are tested"
                .into(),
        }
    }

    pub fn tally(&mut self, rec: &InstanceRecord) {
        self.instances += 1;
        match rec.verdict {
            VerdictKind::Independent => {
                self.independent += 1;
                *self.independent_by_level.entry(rec.level.unwrap_or(0)).or_default() += 1;
            }
            VerdictKind::Undetermined => {
                self.undetermined += 1;
                self.undetermined_indices.push(rec.index);
            }
            VerdictKind::Skipped => self.skipped += 1,
        }
    }
}
