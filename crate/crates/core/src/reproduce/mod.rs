//! The end-to-end reproduction suite: every headline claim about
//! few-eigenvalue Hermitian adjacency matrices, each as a named check with
//! its own time limit.

mod checks;

use crate::certify::Certificate;
use crate::graph::MixedGraph;
use crate::search::SearchReport;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::PathBuf;
use std::str::FromStr;

/// Seed for the randomized corpora (bipartite signed graphs, interlacing).
pub const DEFAULT_SEED: u64 = 0x4845_524d_5350_4543;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    /// Skips the scans above `10^6` points.
    Quick,
    Full,
}

impl FromStr for Scale {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Scale::Quick),
            "full" => Ok(Scale::Full),
            _ => Err(format!("unknown scale '{s}' (expected quick or full)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    /// Which acceptance criterion the check belongs to.
    pub criterion: u8,
    pub claim: String,
    pub status: Status,
    pub elapsed_secs: f64,
    pub detail: String,
    pub artifacts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub scale: Scale,
    pub checks: Vec<CheckResult>,
    /// No check failed (skipped checks do not count against it).
    pub passed: bool,
}

impl ReproductionReport {
    pub fn criterion_status(&self, criterion: u8) -> Status {
        let mut status = Status::Skipped;
        for c in self.checks.iter().filter(|c| c.criterion == criterion) {
            match c.status {
                Status::Fail => return Status::Fail,
                Status::Pass => status = Status::Pass,
                Status::Skipped => {}
            }
        }
        status
    }
}

/// `(id, criterion, claim)` for every check, in run order.
pub const CHECKS: [(&str, u8, &str); 18] = [
    ("1", 1, "the four extremal oriented graphs certify exactly with their eigenvalue pairs"),
    ("2a", 2, "K_{3,3} has exactly one class of two-eigenvalue orientations"),
    ("2b", 2, "K_{5,5} minus a perfect matching has exactly one class of two-eigenvalue orientations"),
    ("3", 3, "the order-5 regular tournament has five distinct eigenvalues"),
    ("4a", 4, "the only two-eigenvalue mixed 4-cycles are a directed 3-path closed by an edge"),
    ("4b", 4, "no mixed orientation of the cube has two eigenvalues"),
    ("4c", 4, "undirected complete graphs have spectrum {n-1, -1^(n-1)}"),
    ("5", 5, "Paley tournaments have the three predicted eigenvalues, collapsing to two at order 3"),
    ("6", 6, "bordering a three-eigenvalue tournament gives a skew-Hadamard matrix"),
    ("7a", 7, "no orientation of K_6 has two H_i-eigenvalues"),
    ("7b", 7, "some signing of K_6 has eigenvalues ±sqrt(5)"),
    ("8a", 8, "the bipartite signed-to-oriented transform preserves spectra"),
    ("8b", 8, "signed hypercubes give oriented n-cubes with H_i-eigenvalues ±sqrt(n)"),
    ("9", 9, "every two-eigenvalue hit at k = 6 has s >= -2, with equality exactly when regular"),
    ("10", 10, "for k = 10 and 12 the directed edge is the only small two-eigenvalue oriented graph"),
    ("11a", 11, "Cauchy interlacing holds on random induced subgraphs"),
    ("11b", 11, "eigensolver trace, Frobenius and residual identities"),
    ("11c", 11, "exact and float certification agree on every connected mixed graph with n <= 5"),
];

/// Stateful runner; search results are cached so the bound check can reuse
/// the hit sets of the earlier checks.
pub struct Reproduction {
    pub scale: Scale,
    pub threads: Option<usize>,
    pub artifacts_dir: Option<PathBuf>,
    pub seed: u64,
    overrides: HashMap<String, MixedGraph>,
    searches: HashMap<&'static str, SearchReport>,
    hits6: HashMap<&'static str, Vec<(MixedGraph, Certificate)>>,
}

impl Reproduction {
    pub fn new(scale: Scale) -> Self {
        Reproduction {
            scale,
            threads: None,
            artifacts_dir: None,
            seed: DEFAULT_SEED,
            overrides: HashMap::new(),
            searches: HashMap::new(),
            hits6: HashMap::new(),
        }
    }

    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }

    pub fn artifacts_dir(mut self, dir: Option<PathBuf>) -> Self {
        self.artifacts_dir = dir;
        self
    }

    /// Replaces a named fixture for every check that uses it. Meant for
    /// negative controls.
    pub fn override_fixture(mut self, name: &str, graph: MixedGraph) -> Self {
        self.overrides.insert(name.to_string(), graph);
        self
    }

    /// The search report a check produced, if it ran one.
    pub fn search_report(&self, id: &str) -> Option<&SearchReport> {
        self.searches.get(id)
    }

    pub fn run(&mut self) -> ReproductionReport {
        let checks: Vec<CheckResult> = CHECKS.iter().map(|&(id, ..)| self.run_check(id)).collect();
        ReproductionReport {
            scale: self.scale,
            passed: checks.iter().all(|c| c.status != Status::Fail),
            checks,
        }
    }

    /// Runs the checks of one acceptance criterion.
    pub fn run_criterion(&mut self, criterion: u8) -> Vec<CheckResult> {
        CHECKS
            .iter()
            .filter(|c| c.1 == criterion)
            .map(|&(id, ..)| self.run_check(id))
            .collect()
    }

    /// Runs one check by id.
    ///
    /// # Panics
    /// If `id` is not in [`CHECKS`].
    pub fn run_check(&mut self, id: &str) -> CheckResult {
        let &(id, criterion, claim) = CHECKS
            .iter()
            .find(|c| c.0 == id)
            .unwrap_or_else(|| panic!("unknown check id {id}"));
        let start = std::time::Instant::now();
        let outcome = self.dispatch(id);
        let elapsed_secs = start.elapsed().as_secs_f64();
        let (status, detail, artifacts) = match outcome {
            Ok(o) => (o.status, o.detail, o.artifacts),
            Err(e) => (Status::Fail, format!("error: {e}"), Vec::new()),
        };
        CheckResult {
            id: id.to_string(),
            criterion,
            claim: claim.to_string(),
            status,
            elapsed_secs,
            detail,
            artifacts,
        }
    }
}

pub(crate) struct Outcome {
    status: Status,
    detail: String,
    artifacts: Vec<String>,
}
