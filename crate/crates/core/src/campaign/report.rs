//! Plans, the batch runner and report output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::generate::{generate, ClusterSpec, GeneratorKind, GeneratorSpec};
use super::verify::{verify, TheoremId, TheoremVerdict, VerdictStatus, VerifyOptions};
use crate::io::configuration_to_value;
use crate::{Error, Result};

/// One line of a plan: `repeat` instances of a generator, each checked
/// against every listed theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub kind: GeneratorKind,
    pub n: usize,
    pub d: usize,
    #[serde(default)]
    pub outliers: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster: Option<ClusterSpec>,
    /// Fixes the seed of the first instance; later ones count up from it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default = "one")]
    pub repeat: usize,
    pub theorems: Vec<TheoremId>,
}

fn one() -> usize {
    1
}

impl PlanEntry {
    pub fn new(spec: &GeneratorSpec, repeat: usize, theorems: &[TheoremId]) -> Self {
        PlanEntry {
            kind: spec.kind,
            n: spec.n,
            d: spec.d,
            outliers: spec.outliers,
            cluster: spec.cluster,
            seed: None,
            repeat,
            theorems: theorems.to_vec(),
        }
    }

    fn spec(&self, seed: u64) -> GeneratorSpec {
        GeneratorSpec {
            kind: self.kind,
            n: self.n,
            d: self.d,
            outliers: self.outliers,
            cluster: self.cluster,
            seed,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plan {
    pub entries: Vec<PlanEntry>,
}

impl Plan {
    /// Accepts `{"entries": [...]}` or a bare array of entries.
    pub fn from_json(text: &str) -> Result<Plan> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            field: "<document>".into(),
            reason: e.to_string(),
        })?;
        let entries = match v {
            Value::Array(_) => v,
            Value::Object(mut o) => o.remove("entries").ok_or_else(|| Error::Parse {
                field: "entries".into(),
                reason: "missing".into(),
            })?,
            _ => {
                return Err(Error::Parse {
                    field: "<document>".into(),
                    reason: "expected an object or an array".into(),
                })
            }
        };
        let Value::Array(items) = entries else {
            return Err(Error::Parse {
                field: "entries".into(),
                reason: "expected an array".into(),
            });
        };
        let entries = items
            .into_iter()
            .enumerate()
            .map(|(i, item)| {
                serde_json::from_value(item).map_err(|e| Error::Parse {
                    field: format!("entries[{i}]"),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<PlanEntry>>>()?;
        Ok(Plan { entries })
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::InvalidSpec("the plan has no entries".into()));
        }
        for (i, e) in self.entries.iter().enumerate() {
            if e.theorems.is_empty() {
                return Err(Error::InvalidSpec(format!("entries[{i}] lists no theorems")));
            }
            if e.repeat == 0 {
                return Err(Error::InvalidSpec(format!("entries[{i}] has repeat 0")));
            }
            e.spec(0)
                .validate()
                .map_err(|err| Error::InvalidSpec(format!("entries[{i}]: {err}")))?;
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("serializable");
        Sha256::digest(text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CampaignOptions {
    /// Seeds every entry without its own seed.
    pub seed: u64,
    pub verify: VerifyOptions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub entry: usize,
    pub spec: GeneratorSpec,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub verdicts: Vec<TheoremVerdict>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub instances: usize,
    pub applicable: usize,
    pub passed: usize,
    pub not_applicable: usize,
    pub inconclusive: usize,
    pub counterexample: usize,
    pub generator_errors: usize,
}

/// The instance that broke a theorem, with its points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleDump {
    pub instance: usize,
    pub theorem: TheoremId,
    pub configuration: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub plan_hash: String,
    pub seed: u64,
    pub instances: Vec<InstanceRecord>,
    pub summary: BTreeMap<TheoremId, SummaryRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleDump>,
}

impl CampaignReport {
    pub fn has_counterexample(&self) -> bool {
        self.counterexample.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// One row per (instance, theorem).
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "instance", "entry", "kind", "n", "d", "outliers", "seed", "theorem", "status", "counterexample",
        ])
        .expect("in-memory write");
        for (i, inst) in self.instances.iter().enumerate() {
            let s = &inst.spec;
            let prefix = [
                i.to_string(),
                inst.entry.to_string(),
                s.kind.name().to_string(),
                s.n.to_string(),
                s.d.to_string(),
                s.outliers.to_string(),
                inst.seed.to_string(),
            ];
            let mut rows: Vec<[String; 3]> = inst
                .verdicts
                .iter()
                .map(|v| [v.theorem.name().into(), status_name(v.status).into(), v.counterexample.to_string()])
                .collect();
            if inst.error.is_some() {
                rows.insert(0, [String::new(), "generator_error".into(), "false".into()]);
            }
            for r in rows {
                w.write_record(prefix.iter().chain(r.iter())).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
    }
}

pub fn status_name(s: VerdictStatus) -> &'static str {
    match s {
        VerdictStatus::Passed => "passed",
        VerdictStatus::NotApplicable => "not_applicable",
        VerdictStatus::Inconclusive => "inconclusive",
        VerdictStatus::Counterexample => "counterexample",
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of repetition `rep` of entry `entry`.
pub fn instance_seed(base: u64, entry: &PlanEntry, index: usize, rep: usize) -> u64 {
    match entry.seed {
        Some(s) => s.wrapping_add(rep as u64),
        None => splitmix64(splitmix64(base ^ splitmix64(index as u64)) ^ rep as u64),
    }
}

struct Job {
    entry: usize,
    spec: GeneratorSpec,
    theorems: Vec<TheoremId>,
}

fn run_job(job: &Job, opts: &VerifyOptions) -> InstanceRecord {
    let mut rec = InstanceRecord {
        entry: job.entry,
        spec: job.spec.clone(),
        seed: job.spec.seed,
        error: None,
        verdicts: Vec::new(),
    };
    let g = match generate(&job.spec) {
        Ok(g) => g,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    let mut opts = opts.clone();
    opts.extra_points = match job.spec.kind {
        GeneratorKind::RncPlusOutliers => Some(job.spec.outliers),
        GeneratorKind::OnRnc => Some(0),
        _ => None,
    };
    rec.verdicts = job.theorems.iter().map(|&t| verify(t, &g, &opts)).collect();
    rec
}

#[cfg(feature = "parallel")]
fn run_jobs(jobs: &[Job], opts: &VerifyOptions) -> Vec<InstanceRecord> {
    use rayon::prelude::*;
    jobs.par_iter().map(|j| run_job(j, opts)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_jobs(jobs: &[Job], opts: &VerifyOptions) -> Vec<InstanceRecord> {
    jobs.iter().map(|j| run_job(j, opts)).collect()
}

/// Generates and verifies every instance of the plan. Instances may run
/// concurrently; the report lists them in plan order. On the first
/// counterexample (in plan order) the report stops there and carries the
/// offending configuration.
pub fn run_campaign(plan: &Plan, opts: &CampaignOptions) -> Result<CampaignReport> {
    plan.validate()?;
    let mut jobs = Vec::new();
    for (i, e) in plan.entries.iter().enumerate() {
        for rep in 0..e.repeat {
            jobs.push(Job {
                entry: i,
                spec: e.spec(instance_seed(opts.seed, e, i, rep)),
                theorems: e.theorems.clone(),
            });
        }
    }
    let mut instances = run_jobs(&jobs, &opts.verify);
    let mut counterexample = None;
    if let Some(pos) = instances
        .iter()
        .position(|r| r.verdicts.iter().any(|v| v.counterexample))
    {
        instances.truncate(pos + 1);
        let rec = &instances[pos];
        let theorem = rec.verdicts.iter().find(|v| v.counterexample).expect("found").theorem;
        let g = generate(&rec.spec)?;
        counterexample = Some(CounterexampleDump {
            instance: pos,
            theorem,
            configuration: configuration_to_value(&g),
        });
    }
    let mut summary: BTreeMap<TheoremId, SummaryRow> = BTreeMap::new();
    for e in &plan.entries {
        for &t in &e.theorems {
            summary.entry(t).or_default();
        }
    }
    for rec in &instances {
        let theorems = &plan.entries[rec.entry].theorems;
        if rec.error.is_some() {
            for t in theorems {
                let row = summary.get_mut(t).expect("listed");
                row.instances += 1;
                row.generator_errors += 1;
            }
        }
        for v in &rec.verdicts {
            let row = summary.get_mut(&v.theorem).expect("listed");
            row.instances += 1;
            if v.applicable() {
                row.applicable += 1;
            }
            match v.status {
                VerdictStatus::Passed => row.passed += 1,
                VerdictStatus::NotApplicable => row.not_applicable += 1,
                VerdictStatus::Inconclusive => row.inconclusive += 1,
                VerdictStatus::Counterexample => row.counterexample += 1,
            }
        }
    }
    Ok(CampaignReport {
        plan_hash: plan.hash(),
        seed: opts.seed,
        instances,
        summary,
        counterexample,
    })
}
