//! Check records, sampling loops with replayable failures, and the JSON
//! report.

use std::time::Instant;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::arith::{rat_string, sub_seed, Rational, Sampler};

pub fn ser_rat<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_string(q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub paper_anchor: String,
    pub verdict: Verdict,
    pub samples_run: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Value>,
    /// Seconds. Left out of JSON output so reports stay byte-identical.
    #[serde(serialize_with = "ser_wall_time")]
    pub wall_time: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

fn ser_wall_time<S: Serializer>(_: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_none()
}

impl CheckRecord {
    pub fn new(check_id: impl Into<String>, paper_anchor: &str) -> Self {
        CheckRecord {
            check_id: check_id.into(),
            paper_anchor: paper_anchor.to_string(),
            verdict: Verdict::Pass,
            samples_run: 0,
            first_failure: None,
            wall_time: 0.0,
            detail: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn with_detail(mut self, d: Value) -> Self {
        self.detail = Some(d);
        self
    }

    /// A single deterministic evaluation.
    pub fn single(check_id: impl Into<String>, anchor: &str, f: impl FnOnce() -> Result<Value, Value>) -> Self {
        let t = Instant::now();
        let mut rec = CheckRecord::new(check_id, anchor);
        rec.samples_run = 1;
        match f() {
            Ok(d) => {
                if !d.is_null() {
                    rec.detail = Some(d);
                }
            }
            Err(e) => {
                rec.verdict = Verdict::Fail;
                rec.first_failure = Some(e);
            }
        }
        rec.wall_time = t.elapsed().as_secs_f64();
        rec
    }
}

/// What a failing sample reports: its exact inputs and what went wrong.
pub struct SampleFailure {
    pub inputs: Value,
    pub detail: Value,
}

impl SampleFailure {
    pub fn new(inputs: impl Serialize, detail: impl Serialize) -> Self {
        SampleFailure {
            inputs: serde_json::to_value(inputs).unwrap_or(Value::Null),
            detail: serde_json::to_value(detail).unwrap_or(Value::Null),
        }
    }
}

/// FNV-1a, so that per-check seeds do not depend on the std hasher.
fn name_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Seed of sample `j` of a check. Sample `j` draws everything from
/// `Sampler::new(sample_seed(seed, id, j))`.
pub fn sample_seed(seed: u64, check_id: &str, j: u64) -> u64 {
    sub_seed(sub_seed(seed, name_hash(check_id)), j)
}

/// Runs `samples` independent samples, stopping at the first failure.
pub fn sampled(
    check_id: impl Into<String>,
    anchor: &str,
    samples: u64,
    seed: u64,
    mut f: impl FnMut(&mut Sampler) -> Result<(), SampleFailure>,
) -> CheckRecord {
    let t = Instant::now();
    let mut rec = CheckRecord::new(check_id, anchor);
    for j in 0..samples {
        let ss = sample_seed(seed, &rec.check_id, j);
        rec.samples_run = j + 1;
        if let Err(e) = f(&mut Sampler::new(ss)) {
            rec.verdict = Verdict::Fail;
            rec.first_failure = Some(json!({
                "sample_index": j,
                "sample_seed": ss,
                "run_seed": seed,
                "inputs": e.inputs,
                "detail": e.detail,
            }));
            break;
        }
    }
    rec.wall_time = t.elapsed().as_secs_f64();
    rec
}

/// The whole report: `{meta, families, checks}`, checks sorted by id.
#[derive(Clone, Debug, Serialize)]
pub struct Report<C: Serialize, F: Serialize> {
    pub meta: Meta<C>,
    pub families: Vec<F>,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta<C: Serialize> {
    pub seed: u64,
    pub config: C,
    pub version: &'static str,
}

impl<C: Serialize, F: Serialize> Report<C, F> {
    pub fn new(seed: u64, config: C, families: Vec<F>, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        Report { meta: Meta { seed, config, version: env!("CARGO_PKG_VERSION") }, families, checks }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == v).count()
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check, then the totals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let v = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "SKIP",
            };
            out.push_str(&format!("{v:<4}  {:<60} {:<14} samples={}\n", c.check_id, c.paper_anchor, c.samples_run));
            if let Some(f) = &c.first_failure {
                out.push_str(&format!("      first failure: {}\n", serde_json::to_string(f).unwrap_or_default()));
            }
        }
        for f in &self.families {
            out.push_str(&format!("family: {}\n", serde_json::to_string(f).unwrap_or_default()));
        }
        out.push_str(&format!(
            "seed {}: {} passed, {} failed, {} skipped\n",
            self.meta.seed,
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Skipped)
        ));
        out
    }
}
