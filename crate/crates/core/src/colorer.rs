//! Exact list coloring, Hall matching, and exhaustive lemma verification.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::assignments::{default_labels, CanonicalEnumerator, ColorSet, ListAssignment, SizeProfile};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};

/// `coloring[v]` is the color of vertex `v`.
pub type Coloring = Vec<usize>;

/// Proper on `g` and drawn from the lists.
pub fn is_valid_coloring(g: &Graph, lists: &ListAssignment, coloring: &[usize]) -> bool {
    coloring.len() == g.n()
        && lists.n() == g.n()
        && (0..g.n()).all(|v| lists.list(v).contains(coloring[v]))
        && g.edges().all(|(u, v)| coloring[u] != coloring[v])
}

/// Backtracking search with minimum-remaining-values vertex choice and
/// forward checking. Reusable across many list assignments on one graph.
#[derive(Clone, Debug)]
pub struct Solver {
    n: usize,
    adj: Vec<u64>,
    // domains per search depth, n entries each
    dom: Vec<u64>,
    color: Vec<usize>,
}

impl Solver {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        Solver {
            n,
            adj: g.adjacency_masks(),
            dom: vec![0; (n + 1) * n.max(1)],
            color: vec![0; n],
        }
    }

    pub fn colorable(&mut self, lists: &[ColorSet]) -> bool {
        assert_eq!(lists.len(), self.n, "one list per vertex");
        for (d, l) in self.dom.iter_mut().zip(lists) {
            *d = l.0;
        }
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        self.search(0, all)
    }

    pub fn solve(&mut self, lists: &[ColorSet]) -> Option<Coloring> {
        self.colorable(lists).then(|| self.color.clone())
    }

    fn search(&mut self, depth: usize, unassigned: u64) -> bool {
        if unassigned == 0 {
            return true;
        }
        let n = self.n;
        let base = depth * n;
        let mut best = u32::MAX;
        let mut v = 0;
        let mut rest = unassigned;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let c = self.dom[base + w].count_ones();
            if c < best {
                best = c;
                v = w;
            }
        }
        if best == 0 {
            return false;
        }
        let rest = unassigned & !(1 << v);
        let nb = self.adj[v] & rest;
        let mut colors = self.dom[base + v];
        while colors != 0 {
            let c = colors.trailing_zeros() as usize;
            colors &= colors - 1;
            let next = base + n;
            self.dom.copy_within(base..base + n, next);
            let mut ok = true;
            let mut m = nb;
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                let d = &mut self.dom[next + w];
                *d &= !(1 << c);
                if *d == 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.color[v] = c;
                if self.search(depth + 1, rest) {
                    return true;
                }
            }
        }
        false
    }
}

/// A proper coloring of `g` from `lists`, if one exists.
pub fn find_coloring(g: &Graph, lists: &ListAssignment) -> Option<Coloring> {
    assert_eq!(lists.n(), g.n(), "list assignment must cover the graph");
    Solver::new(g).solve(&lists.lists)
}

/// Distinct representatives `c_v ∈ L(v)` for the vertices `x`, found by
/// augmenting paths in the vertex/color bipartite graph. The result is
/// aligned with `x`.
pub fn hall_extend(x: &[usize], lists: &ListAssignment) -> Option<Vec<usize>> {
    let k = x.len();
    let mut owner: Vec<Option<usize>> = vec![None; 64];
    fn augment(i: usize, x: &[usize], lists: &ListAssignment, seen: &mut u64, owner: &mut [Option<usize>]) -> bool {
        for c in lists.list(x[i]).iter() {
            if *seen >> c & 1 == 1 {
                continue;
            }
            *seen |= 1 << c;
            if owner[c].is_none_or(|j| augment(j, x, lists, seen, owner)) {
                owner[c] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..k {
        let mut seen = 0u64;
        if !augment(i, x, lists, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut out = vec![0; k];
    for (c, o) in owner.iter().enumerate() {
        if let Some(i) = *o {
            out[i] = c;
        }
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// Restricts which enumerated assignments are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    All,
    ListsDiffer(usize, usize),
    ListsEqual(usize, usize),
}

impl Filter {
    fn keep(self, lists: &[ColorSet]) -> bool {
        match self {
            Filter::All => true,
            Filter::ListsDiffer(a, b) => lists[a] != lists[b],
            Filter::ListsEqual(a, b) => lists[a] == lists[b],
        }
    }

    fn describe(self, labels: &[String]) -> Value {
        match self {
            Filter::All => Value::Null,
            Filter::ListsDiffer(a, b) => json!(format!("L({}) != L({})", labels[a], labels[b])),
            Filter::ListsEqual(a, b) => json!(format!("L({}) = L({})", labels[a], labels[b])),
        }
    }
}

/// "Every assignment with this profile is colorable on this graph."
#[derive(Clone, Debug)]
pub struct ExhaustiveCheck {
    pub name: String,
    pub graph: Graph,
    pub profile: SizeProfile,
    pub labels: Vec<String>,
    pub filter: Filter,
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub lemma: String,
    pub profile: Vec<usize>,
    pub labels: Vec<String>,
    pub filter: Value,
    pub assignments_checked: u64,
    pub verdict: Verdict,
    pub counterexample: Option<ListAssignment>,
    pub wall_time_ms: u128,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lemma": self.lemma,
            "profile": self.profile,
            "filter": self.filter,
            "assignments_checked": self.assignments_checked,
            "result": self.verdict.as_str(),
            "counterexample": self.counterexample.as_ref().map(|c| c.to_json(&self.labels)),
            "wall_time_ms": self.wall_time_ms,
        })
    }
}

struct PartitionOutcome {
    checked: u64,
    failure: Option<(u64, Vec<ColorSet>)>,
}

impl ExhaustiveCheck {
    pub fn new(name: &str, graph: Graph, profile: SizeProfile) -> Result<Self> {
        if profile.len() != graph.n() {
            return Err(Error::Mismatch(format!(
                "profile has {} entries for {} vertices",
                profile.len(),
                graph.n()
            )));
        }
        let labels = default_labels(graph.n());
        Ok(ExhaustiveCheck { name: name.into(), graph, profile, labels, filter: Filter::All })
    }

    pub fn with_filter(mut self, filter: Filter) -> Self {
        self.filter = filter;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }

    /// Walks the canonical stream in parallel on the current rayon pool.
    /// The reported counterexample is the first failure in stream order,
    /// whatever the thread count.
    pub fn run(&self) -> Result<LemmaReport> {
        let start = Instant::now();
        let e = CanonicalEnumerator::natural(&self.profile)?;
        let depth = e.partition_depth(256);
        let parts = e.prefixes(depth);
        let first_bad = AtomicUsize::new(usize::MAX);
        let outcomes: Vec<Option<PartitionOutcome>> = parts
            .par_iter()
            .enumerate()
            .map_init(
                || Solver::new(&self.graph),
                |solver, (idx, prefix)| {
                    if first_bad.load(Ordering::Relaxed) < idx {
                        return None;
                    }
                    let mut checked = 0u64;
                    let flow = e.visit_from(prefix, |lists| {
                        if !self.filter.keep(lists) {
                            return ControlFlow::Continue(());
                        }
                        checked += 1;
                        if solver.colorable(lists) {
                            ControlFlow::Continue(())
                        } else {
                            ControlFlow::Break(lists.to_vec())
                        }
                    });
                    let failure = match flow {
                        ControlFlow::Break(lists) => {
                            first_bad.fetch_min(idx, Ordering::Relaxed);
                            Some((checked, lists))
                        }
                        ControlFlow::Continue(()) => None,
                    };
                    Some(PartitionOutcome { checked, failure })
                },
            )
            .collect();

        let mut checked = 0u64;
        let mut counterexample = None;
        for o in outcomes {
            let o = o.expect("partitions before the first failure are never skipped");
            checked += o.checked;
            if let Some((_, lists)) = o.failure {
                counterexample = Some(ListAssignment::new(lists));
                break;
            }
        }
        Ok(LemmaReport {
            lemma: self.name.clone(),
            profile: self.profile.sizes().to_vec(),
            labels: self.labels.clone(),
            filter: self.filter.describe(&self.labels),
            assignments_checked: checked,
            verdict: if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass },
            counterexample,
            wall_time_ms: start.elapsed().as_millis(),
        })
    }
}

/// The list-coloring lemmas on small graph squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    P4,
    J1,
    J2Cond1,
    J2Cond2,
}

impl Lemma {
    pub const ALL: [Lemma; 4] = [Lemma::P4, Lemma::J1, Lemma::J2Cond1, Lemma::J2Cond2];

    pub fn parse(name: &str) -> Option<Lemma> {
        Some(match name {
            "p4" => Lemma::P4,
            "j1" => Lemma::J1,
            "j2-1" => Lemma::J2Cond1,
            "j2-2" => Lemma::J2Cond2,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Lemma::P4 => "p4",
            Lemma::J1 => "j1",
            Lemma::J2Cond1 => "j2-1",
            Lemma::J2Cond2 => "j2-2",
        }
    }

    /// The underlying graph (before squaring).
    pub fn graph(self) -> Graph {
        match self {
            Lemma::P4 => graph::path(4),
            Lemma::J1 => j1(),
            Lemma::J2Cond1 | Lemma::J2Cond2 => j2(),
        }
    }

    pub fn profile(self) -> SizeProfile {
        let sizes = match self {
            Lemma::P4 => vec![2, 3, 2, 2],
            Lemma::J1 => vec![2, 3, 4, 3, 3],
            Lemma::J2Cond1 => vec![2, 4, 4, 3, 2, 2],
            Lemma::J2Cond2 => vec![3, 4, 4, 3, 2, 2],
        };
        SizeProfile::new(sizes).unwrap()
    }

    pub fn filter(self) -> Filter {
        match self {
            Lemma::J2Cond1 => Filter::ListsDiffer(0, 4),
            _ => Filter::All,
        }
    }

    pub fn check(self) -> ExhaustiveCheck {
        self.check_with_profile(self.profile())
            .expect("lemma profiles match their graphs")
            .with_filter(self.filter())
    }

    /// Same graph square, different profile (for controls).
    pub fn check_with_profile(self, profile: SizeProfile) -> Result<ExhaustiveCheck> {
        ExhaustiveCheck::new(self.name(), self.graph().square(), profile)
    }

    pub fn verify(self) -> Result<LemmaReport> {
        self.check().run()
    }
}

/// Path `v1 v2 v3 v4` plus `v5` adjacent to `v2` and `v3`.
pub fn j1() -> Graph {
    Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (4, 1), (4, 2)]).unwrap()
}

/// Path `v1 v2 v3 v4` plus `v5 ~ v1, v2` and `v6 ~ v3, v4`.
pub fn j2() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (5, 2), (5, 3)]).unwrap()
}

/// Searches condition (1) of the J2 lemma with the filter inverted, i.e.
/// `L(v1) = L(v5)`, and returns the first uncolorable assignment.
pub fn j2_necessity_witness() -> Result<Option<ListAssignment>> {
    let report = Lemma::J2Cond1
        .check_with_profile(Lemma::J2Cond1.profile())?
        .with_filter(Filter::ListsEqual(0, 4))
        .run()?;
    Ok(report.counterexample)
}
