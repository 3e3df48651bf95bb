//! Batch verification of target instances on a worker pool.

use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::{generate_target, CorpusError, CorpusSpec};
use crate::format::{emit_ca, emit_col, emit_pg};
use crate::solver::{solve, TargetInstance, TargetViolation, Validation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Sat,
    Unsat,
    Rejected(TargetViolation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceResult {
    pub index: usize,
    pub vertices: usize,
    pub boundary: usize,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub results: Vec<InstanceResult>,
    /// UNSAT targets, kept verbatim.
    pub counterexamples: Vec<(usize, TargetInstance)>,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("instance {index}: {source}")]
    Generation { index: usize, source: CorpusError },
    #[error("worker pool: {0}")]
    Pool(String),
}

impl Summary {
    pub fn total(&self) -> usize {
        self.results.len()
    }

    fn count(&self, p: impl Fn(&Outcome) -> bool) -> usize {
        self.results.iter().filter(|r| p(&r.outcome)).count()
    }

    pub fn sat(&self) -> usize {
        self.count(|o| *o == Outcome::Sat)
    }

    pub fn unsat(&self) -> usize {
        self.count(|o| *o == Outcome::Unsat)
    }

    pub fn rejected(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Rejected(_)))
    }

    /// Targets actually checked, excluding rejected ones.
    pub fn counted(&self) -> usize {
        self.total() - self.rejected()
    }

    pub fn all_sat(&self) -> bool {
        self.unsat() == 0 && self.counted() > 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "instances: {}", self.total()).unwrap();
        writeln!(out, "counted: {}", self.counted()).unwrap();
        writeln!(out, "sat: {}", self.sat()).unwrap();
        writeln!(out, "unsat: {}", self.unsat()).unwrap();
        writeln!(out, "rejected: {}", self.rejected()).unwrap();
        for r in &self.results {
            if let Outcome::Rejected(why) = &r.outcome {
                writeln!(out, "rejected {}: {}", r.index, why).unwrap();
            }
        }
        for (i, inst) in &self.counterexamples {
            writeln!(out, "unsat {i}:").unwrap();
            out.push_str(&instance_text(inst));
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("index\tvertices\tboundary\tverdict\n");
        for r in &self.results {
            let verdict = match &r.outcome {
                Outcome::Sat => "sat".to_string(),
                Outcome::Unsat => "unsat".to_string(),
                Outcome::Rejected(why) => format!("rejected: {why}"),
            };
            writeln!(out, "{}\t{}\t{}\t{}", r.index, r.vertices, r.boundary, verdict).unwrap();
        }
        out
    }
}

/// Graph, assignment and precolouring of `inst`, one file after another.
pub fn instance_text(inst: &TargetInstance) -> String {
    format!(
        "{}{}{}",
        emit_pg(&inst.graph, Some(&inst.boundary)),
        emit_ca(&inst.assignment),
        emit_col(&inst.precoloring)
    )
}

fn check(index: usize, inst: &TargetInstance) -> InstanceResult {
    let outcome = match solve(inst, Validation::Target) {
        Ok(Some(_)) => Outcome::Sat,
        Ok(None) => Outcome::Unsat,
        Err(why) => Outcome::Rejected(why),
    };
    InstanceResult {
        index,
        vertices: inst.n(),
        boundary: inst.boundary.len(),
        outcome,
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))
}

/// Solves every instance in target mode. Out-of-class instances are
/// rejected and not counted. `jobs = 0` uses all cores.
pub fn verify_instances(instances: &[TargetInstance], jobs: usize) -> Result<Summary, HarnessError> {
    let results: Vec<InstanceResult> = pool(jobs)?.install(|| {
        instances
            .par_iter()
            .enumerate()
            .map(|(i, inst)| check(i, inst))
            .collect()
    });
    let counterexamples = results
        .iter()
        .filter(|r| r.outcome == Outcome::Unsat)
        .map(|r| (r.index, instances[r.index].clone()))
        .collect();
    Ok(Summary {
        results,
        counterexamples,
    })
}

/// Generates `trials` targets from `spec` and solves each one.
pub fn verify_theorem(spec: &CorpusSpec, trials: usize, jobs: usize) -> Result<Summary, HarnessError> {
    let instances: Vec<TargetInstance> = pool(jobs)?.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| generate_target(spec, i as u64).map_err(|source| HarnessError::Generation { index: i, source }))
            .collect::<Result<_, _>>()
    })?;
    verify_instances(&instances, jobs)
}
