//! Named configurations: internal graph, half-edges, recolored vertices and
//! the list sizes drawn in the figures.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::assignments::{random_assignment_with, CanonicalEnumerator, ListAssignment, SizeProfile};
use crate::colorer::{ExhaustiveCheck, Solver, Verdict};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::nullstellensatz;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    T,
    J,
    H,
    F,
}

/// Where the list sizes of an entry come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileSource {
    /// Blue numbers of a figure; checked against the residual profile.
    Figure,
    /// Stated in a lemma; there are no half-edges to derive it from.
    Lemma,
}

/// Serialized form, with vertices referred to by label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub name: String,
    pub family: Family,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub half_edges: BTreeMap<String, usize>,
    /// Path or cycle through the configuration, in figure order.
    pub spine: Vec<String>,
    pub closed: bool,
    pub recolored: Vec<String>,
    /// One entry per recolored vertex, in `recolored` order.
    pub profile: Vec<usize>,
    pub profile_source: ProfileSource,
    #[serde(default)]
    pub target_monomial: Option<Vec<u32>>,
    #[serde(default)]
    pub expected_coefficient: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct Configuration {
    pub name: String,
    pub family: Family,
    pub labels: Vec<String>,
    pub graph: Graph,
    pub half_edges: Vec<usize>,
    pub spine: Vec<usize>,
    pub closed: bool,
    pub recolored: Vec<usize>,
    pub profile: Vec<usize>,
    pub profile_source: ProfileSource,
    pub target_monomial: Option<Vec<u32>>,
    pub expected_coefficient: Option<i64>,
}

impl Configuration {
    pub fn from_record(r: &ConfigRecord) -> Result<Self> {
        let bad = |msg: String| Error::InvalidConfiguration { name: r.name.clone(), msg };
        let index = |label: &str| {
            r.vertices
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| bad(format!("unknown vertex {label:?}")))
        };
        let mut graph = Graph::empty(r.vertices.len());
        for (a, b) in &r.edges {
            graph.add_edge(index(a)?, index(b)?).map_err(|e| bad(e.to_string()))?;
        }
        let mut half_edges = vec![0; r.vertices.len()];
        for (label, &k) in &r.half_edges {
            half_edges[index(label)?] = k;
        }
        let spine = r.spine.iter().map(|l| index(l)).collect::<Result<Vec<_>>>()?;
        let recolored = r.recolored.iter().map(|l| index(l)).collect::<Result<Vec<_>>>()?;
        let c = Configuration {
            name: r.name.clone(),
            family: r.family,
            labels: r.vertices.clone(),
            graph,
            half_edges,
            spine,
            closed: r.closed,
            recolored,
            profile: r.profile.clone(),
            profile_source: r.profile_source,
            target_monomial: r.target_monomial.clone(),
            expected_coefficient: r.expected_coefficient,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn to_record(&self) -> ConfigRecord {
        let l = |v: usize| self.labels[v].clone();
        ConfigRecord {
            name: self.name.clone(),
            family: self.family,
            vertices: self.labels.clone(),
            edges: self.graph.edges().map(|(u, v)| (l(u), l(v))).collect(),
            half_edges: (0..self.graph.n())
                .filter(|&v| self.half_edges[v] > 0)
                .map(|v| (l(v), self.half_edges[v]))
                .collect(),
            spine: self.spine.iter().map(|&v| l(v)).collect(),
            closed: self.closed,
            recolored: self.recolored.iter().map(|&v| l(v)).collect(),
            profile: self.profile.clone(),
            profile_source: self.profile_source,
            target_monomial: self.target_monomial.clone(),
            expected_coefficient: self.expected_coefficient,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Error::InvalidConfiguration { name: self.name.clone(), msg };
        for v in 0..self.graph.n() {
            if self.graph.degree(v) + self.half_edges[v] > 3 {
                return Err(bad(format!("{} has degree above 3", self.labels[v])));
            }
        }
        let mut seen = vec![false; self.graph.n()];
        for &v in &self.recolored {
            if std::mem::replace(&mut seen[v], true) {
                return Err(bad(format!("{} recolored twice", self.labels[v])));
            }
        }
        if self.profile.len() != self.recolored.len() {
            return Err(bad("profile and recolored set differ in length".into()));
        }
        if self.profile.iter().any(|&s| !(1..=6).contains(&s)) {
            return Err(bad("profile entries must lie in 1..=6".into()));
        }
        if let Some(t) = &self.target_monomial {
            if t.len() != self.recolored.len() {
                return Err(bad("target monomial and recolored set differ in length".into()));
            }
        }
        for w in self.spine.windows(2) {
            if !self.graph.has_edge(w[0], w[1]) {
                return Err(bad("spine is not a walk".into()));
            }
        }
        if self.closed && self.spine.len() > 2 && !self.graph.has_edge(self.spine[0], *self.spine.last().unwrap()) {
            return Err(bad("closed spine does not close".into()));
        }
        Ok(())
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn recolored_labels(&self) -> Vec<String> {
        self.recolored.iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v) + self.half_edges[v]
    }

    pub fn size_profile(&self) -> SizeProfile {
        SizeProfile::new(self.profile.clone()).expect("validated on construction")
    }

    /// Worst-case surroundings: every half-edge ends at its own fresh
    /// vertex, which gets two fresh leaves. Internal vertices keep their ids.
    pub fn augment(&self) -> Graph {
        let mut g = self.graph.clone();
        for v in 0..self.graph.n() {
            for _ in 0..self.half_edges[v] {
                let x = g.add_vertex();
                g.add_edge(v, x).unwrap();
                for _ in 0..2 {
                    let leaf = g.add_vertex();
                    g.add_edge(x, leaf).unwrap();
                }
            }
        }
        g
    }

    /// For each recolored vertex: 6 minus its neighbors in the square of the
    /// augmented graph that are not recolored, floored at 0.
    pub fn residual_profile(&self) -> Vec<usize> {
        let sq = self.augment().square();
        let mut recolored = vec![false; sq.n()];
        for &v in &self.recolored {
            recolored[v] = true;
        }
        self.recolored
            .iter()
            .map(|&v| {
                let outside = sq.neighbors(v).iter().filter(|&&w| !recolored[w]).count();
                6usize.saturating_sub(outside)
            })
            .collect()
    }

    /// The graph the recolored vertices must be properly colored in: the
    /// square of the augmented graph induced on `recolored`.
    pub fn colorability_graph(&self) -> Graph {
        self.augment().square().induced(&self.recolored)
    }

    /// Positions along the spine: `2` for a 2-vertex, `<`/`>` for the two
    /// ends of a spine edge whose endpoints share an off-spine neighbor,
    /// `A` for any other 3-vertex.
    pub fn spine_word(&self) -> String {
        let k = self.spine.len();
        let on_spine = |x: usize| self.spine.contains(&x);
        let mut word = vec!['A'; k];
        for (i, &v) in self.spine.iter().enumerate() {
            if self.degree(v) == 2 {
                word[i] = '2';
            }
        }
        let pairs = if self.closed { k } else { k.saturating_sub(1) };
        for i in 0..pairs {
            let (a, b) = (self.spine[i], self.spine[(i + 1) % k]);
            let apex = self.graph.neighbors(a).iter().any(|&x| !on_spine(x) && self.graph.has_edge(b, x));
            if apex {
                word[i] = '<';
                word[(i + 1) % k] = '>';
            }
        }
        word.into_iter().collect()
    }

    /// Augmented graph has no cycle of length 4 to 8.
    pub fn augmented_cycle_free(&self) -> bool {
        !self.augment().has_cycle_length_in(4, 8)
    }
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

fn record(
    name: &str,
    family: Family,
    n: usize,
    edges: &[(usize, usize)],
    half_edges: &[usize],
    spine: &[usize],
    closed: bool,
    recolored: &[usize],
    profile: &[usize],
) -> ConfigRecord {
    let l = |i: usize| format!("v{i}");
    ConfigRecord {
        name: name.into(),
        family,
        vertices: labels(n),
        edges: edges.iter().map(|&(a, b)| (l(a), l(b))).collect(),
        half_edges: half_edges.iter().map(|&v| (l(v), 1)).collect(),
        spine: spine.iter().map(|&v| l(v)).collect(),
        closed,
        recolored: recolored.iter().map(|&v| l(v)).collect(),
        profile: profile.to_vec(),
        profile_source: ProfileSource::Figure,
        target_monomial: None,
        expected_coefficient: None,
    }
}

/// A `d`-cycle `v1 .. vd`, a triangle `(a, b, apex)` on each listed cycle
/// edge, and half-edges at each apex and each listed pendant vertex.
/// Every vertex is recolored.
fn cycle_config(
    name: &str,
    family: Family,
    d: usize,
    triangles: &[(usize, usize, usize)],
    pendants: &[usize],
    profile: &[usize],
) -> ConfigRecord {
    let n = d + triangles.len();
    let mut edges: Vec<(usize, usize)> = (1..=d).map(|i| (i, i % d + 1)).collect();
    let mut half: Vec<usize> = pendants.to_vec();
    for &(a, b, apex) in triangles {
        edges.extend([(a, apex), (b, apex)]);
        half.push(apex);
    }
    let all: Vec<usize> = (1..=n).collect();
    let spine: Vec<usize> = (1..=d).collect();
    record(name, family, n, &edges, &half, &spine, true, &all, profile)
}

fn with_target(mut r: ConfigRecord, target: &[u32], coefficient: i64) -> ConfigRecord {
    r.target_monomial = Some(target.to_vec());
    r.expected_coefficient = Some(coefficient);
    r
}

/// The built-in table.
pub fn builtin_records() -> Vec<ConfigRecord> {
    use Family::*;
    let mut j1 = record("J1", J, 5, &[(1, 2), (2, 3), (3, 4), (5, 2), (5, 3)], &[], &[1, 2, 3, 4], false, &[1, 2, 3, 4, 5], &[2, 3, 4, 3, 3]);
    j1.profile_source = ProfileSource::Lemma;
    let mut j2 = record(
        "J2",
        J,
        6,
        &[(1, 2), (2, 3), (3, 4), (5, 1), (5, 2), (6, 3), (6, 4)],
        &[],
        &[1, 2, 3, 4],
        false,
        &[1, 2, 3, 4, 5, 6],
        &[3, 4, 4, 3, 2, 2],
    );
    j2.profile_source = ProfileSource::Lemma;
    vec![
        record("T1", T, 5, &[(1, 2), (2, 3), (3, 4), (5, 2), (5, 3)], &[1, 4, 5], &[1, 2, 3, 4], false, &[1, 2, 3, 4, 5], &[3, 4, 4, 3, 3]),
        record(
            "T2",
            T,
            7,
            &[(1, 2), (2, 3), (3, 4), (4, 5), (6, 1), (6, 2), (7, 3), (7, 4)],
            &[1, 5, 6, 7],
            &[1, 2, 3, 4, 5],
            false,
            &[2, 3, 4, 5, 7],
            &[2, 3, 4, 3, 3],
        ),
        record(
            "T3",
            T,
            6,
            &[(1, 2), (2, 3), (3, 4), (4, 5), (6, 1), (6, 2)],
            &[1, 6, 4, 5],
            &[1, 2, 3, 4, 5],
            false,
            &[2, 3, 4, 5],
            &[2, 3, 2, 2],
        ),
        j1,
        j2,
        cycle_config(
            "H1",
            H,
            10,
            &[(1, 2, 11), (3, 4, 12), (5, 6, 13), (7, 8, 14), (9, 10, 15)],
            &[],
            &[5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 3, 3, 3, 3, 3],
        ),
        cycle_config("H2", H, 10, &[(1, 2, 11), (4, 5, 12), (7, 8, 13)], &[6, 10], &[4, 5, 6, 5, 4, 3, 4, 5, 5, 3, 3, 3, 3]),
        cycle_config("H3", H, 10, &[(1, 2, 11), (4, 5, 12)], &[6, 8, 10], &[4, 5, 6, 5, 4, 3, 4, 3, 4, 3, 3, 3]),
        cycle_config("H4", H, 10, &[], &[2, 4, 6, 8, 10], &[4, 3, 4, 3, 4, 3, 4, 3, 4, 3]),
        cycle_config("F1", F, 9, &[], &[1, 3, 5, 7, 8], &[3, 4, 3, 4, 3, 4, 2, 2, 4]),
        with_target(
            cycle_config("F2", F, 9, &[(6, 7, 10)], &[1, 3, 5, 8], &[3, 4, 3, 4, 3, 4, 4, 3, 4, 3]),
            &[2, 3, 2, 3, 2, 3, 2, 2, 2, 1],
            2,
        ),
        with_target(
            cycle_config("F3", F, 9, &[(6, 7, 10)], &[1, 3, 4, 8], &[3, 4, 2, 2, 5, 5, 4, 3, 4, 3]),
            &[2, 2, 1, 1, 4, 4, 2, 2, 2, 2],
            1,
        ),
        cycle_config("F4", F, 9, &[(1, 2, 10), (5, 6, 11)], &[4, 7, 9], &[4, 5, 5, 3, 4, 4, 3, 4, 3, 3, 3]),
        with_target(
            cycle_config("F5", F, 9, &[(1, 2, 10), (3, 4, 11)], &[5, 7, 9], &[4, 5, 5, 4, 3, 4, 3, 4, 3, 3, 3]),
            &[3, 4, 4, 3, 1, 3, 2, 3, 1, 1, 1],
            -2,
        ),
        cycle_config("F6", F, 9, &[(1, 2, 10), (6, 7, 11)], &[4, 5, 9], &[4, 5, 5, 2, 2, 4, 5, 5, 3, 3, 3]),
        cycle_config("F7", F, 9, &[(1, 2, 10), (7, 8, 11)], &[4, 5, 9], &[4, 5, 5, 2, 2, 5, 5, 4, 3, 3, 3]),
        cycle_config("F8", F, 9, &[(1, 2, 10), (4, 5, 11)], &[6, 7, 9], &[4, 5, 6, 5, 4, 2, 2, 4, 3, 3, 3]),
        with_target(
            cycle_config("F9", F, 9, &[(1, 2, 10), (4, 5, 11), (7, 8, 12)], &[6, 9], &[4, 5, 6, 5, 4, 3, 4, 4, 3, 3, 3, 3]),
            &[3, 4, 3, 4, 3, 2, 3, 3, 2, 1, 1, 1],
            4,
        ),
        with_target(
            cycle_config("F10", F, 9, &[(1, 2, 10), (3, 4, 11), (6, 7, 12)], &[5, 9], &[4, 5, 5, 4, 3, 4, 5, 5, 3, 3, 3, 3]),
            &[3, 4, 3, 3, 2, 3, 3, 4, 1, 1, 2, 1],
            2,
        ),
        cycle_config("F11", F, 9, &[(1, 2, 10), (3, 4, 11), (5, 6, 12)], &[7, 9], &[4, 5, 5, 5, 5, 4, 3, 4, 3, 3, 3, 3]),
        with_target(
            cycle_config(
                "F12",
                F,
                9,
                &[(1, 2, 10), (3, 4, 11), (5, 6, 12), (7, 8, 13)],
                &[9],
                &[4, 5, 5, 5, 5, 5, 5, 4, 3, 3, 3, 3, 3],
            ),
            &[3, 3, 4, 4, 3, 3, 4, 3, 1, 1, 1, 2, 2],
            -1,
        ),
    ]
}

/// A segment between consecutive anchors, as the tokens strictly between
/// them: `2` a 2-vertex, `P` a cycle-triangle pair. `None` marks the
/// one-parameter family of `l >= 1` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentTemplate {
    pub name: &'static str,
    pub shapes: Vec<&'static str>,
    pub any_pairs: bool,
}

pub fn segment_templates() -> Vec<SegmentTemplate> {
    vec![
        SegmentTemplate { name: "S1", shapes: vec!["2"], any_pairs: false },
        SegmentTemplate { name: "S2", shapes: vec!["2P", "P2"], any_pairs: false },
        SegmentTemplate { name: "S3", shapes: vec!["P2P"], any_pairs: false },
        SegmentTemplate { name: "S4", shapes: vec![], any_pairs: true },
        SegmentTemplate { name: "S5", shapes: vec![""], any_pairs: false },
    ]
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub configurations: Vec<Configuration>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Catalog::from_records(&builtin_records()).expect("built-in catalog is valid")
    }

    pub fn from_records(records: &[ConfigRecord]) -> Result<Self> {
        let configurations = records.iter().map(Configuration::from_record).collect::<Result<_>>()?;
        Ok(Catalog { configurations })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let records: Vec<ConfigRecord> = serde_json::from_str(text)?;
        Catalog::from_records(&records)
    }

    pub fn records(&self) -> Vec<ConfigRecord> {
        self.configurations.iter().map(Configuration::to_record).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records()).unwrap()
    }

    pub fn get(&self, name: &str) -> Result<&Configuration> {
        self.configurations
            .iter()
            .find(|c| c.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownConfiguration(name.into()))
    }

    pub fn family(&self, family: Family) -> impl Iterator<Item = &Configuration> {
        self.configurations.iter().filter(move |c| c.family == family)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileStatus {
    Match,
    Mismatch { vertices: Vec<String> },
    Skipped(&'static str),
}

#[derive(Clone, Debug)]
pub struct ProfileCheck {
    pub name: String,
    pub residual: Vec<usize>,
    pub figure: Vec<usize>,
    pub status: ProfileStatus,
}

#[derive(Clone, Debug)]
pub struct ProfileAudit {
    pub entries: Vec<ProfileCheck>,
}

impl ProfileAudit {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| !matches!(e.status, ProfileStatus::Mismatch { .. }))
    }

    pub fn checked(&self) -> usize {
        self.entries.iter().filter(|e| e.status == ProfileStatus::Match).count()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let (status, detail) = match &e.status {
                    ProfileStatus::Match => ("PASS", Value::Null),
                    ProfileStatus::Mismatch { vertices } => ("FAIL", json!({ "mismatched": vertices })),
                    ProfileStatus::Skipped(why) => ("SKIPPED", json!(why)),
                };
                json!({
                    "name": e.name,
                    "residual": e.residual,
                    "figure": e.figure,
                    "status": status,
                    "detail": detail,
                })
            })
            .collect();
        json!({ "checked": self.checked(), "entries": entries })
    }
}

/// Residual profiles against the drawn list sizes, for every entry.
pub fn check_figure_profiles(catalog: &Catalog) -> ProfileAudit {
    let entries = catalog
        .configurations
        .iter()
        .map(|c| {
            let residual = c.residual_profile();
            let status = if c.profile_source == ProfileSource::Lemma {
                ProfileStatus::Skipped("list sizes come from a lemma statement, not from half-edges")
            } else {
                let vertices: Vec<String> = c
                    .recolored
                    .iter()
                    .zip(residual.iter().zip(&c.profile))
                    .filter(|(_, (r, f))| r != f)
                    .map(|(&v, _)| c.labels[v].clone())
                    .collect();
                if vertices.is_empty() {
                    ProfileStatus::Match
                } else {
                    ProfileStatus::Mismatch { vertices }
                }
            };
            ProfileCheck { name: c.name.clone(), residual, figure: c.profile.clone(), status }
        })
        .collect();
    ProfileAudit { entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sample { n: usize, seed: u64 },
    Nullstellensatz,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sample { .. } => "sample",
            Mode::Nullstellensatz => "nullstellensatz",
        }
    }
}

pub const DEFAULT_SAMPLES: usize = 10_000;

/// Largest stream the exhaustive mode will walk.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 32;

#[derive(Clone, Debug)]
pub struct ReducibilityReport {
    pub name: String,
    pub mode: Mode,
    pub verdict: Verdict,
    pub checked: u64,
    pub counterexample: Option<ListAssignment>,
    pub labels: Vec<String>,
    pub details: Value,
    pub wall_time_ms: u128,
}

impl ReducibilityReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "configuration": self.name,
            "mode": self.mode.name(),
            "result": self.verdict.as_str(),
            "checked": self.checked,
            "counterexample": self.counterexample.as_ref().map(|c| c.to_json(&self.labels)),
            "details": self.details,
            "wall_time_ms": self.wall_time_ms,
        });
        if let Mode::Sample { seed, .. } = self.mode {
            v["seed"] = json!(seed);
        }
        v
    }
}

/// Random assignment number `i` of a sampling run: its own ChaCha stream,
/// palette size drawn from `max..=max + 4`.
pub fn sample_assignment(profile: &SizeProfile, seed: u64, i: u64) -> ListAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let max = profile.max();
    let palette = rng.gen_range(max..=max + 4);
    random_assignment_with(profile, palette, &mut rng).expect("palette covers every list")
}

pub fn verify_reducible(c: &Configuration, mode: Mode) -> Result<ReducibilityReport> {
    let start = Instant::now();
    let g = c.colorability_graph();
    let profile = c.size_profile();
    let labels = c.recolored_labels();
    let (verdict, checked, counterexample, details) = match mode {
        Mode::Exhaustive => {
            let count = CanonicalEnumerator::natural(&profile)?.count();
            if count > EXHAUSTIVE_LIMIT {
                return Err(Error::Mode(format!(
                    "{}: exhaustive enumeration needs {count} assignments; use sample mode",
                    c.name
                )));
            }
            let r = ExhaustiveCheck::new(&c.name, g, profile)?.with_labels(labels.clone()).run()?;
            (r.verdict, r.assignments_checked, r.counterexample, json!({ "stream_length": count.to_string() }))
        }
        Mode::Sample { n, seed } => {
            let first_bad = AtomicUsize::new(usize::MAX);
            (0..n).into_par_iter().for_each_init(
                || Solver::new(&g),
                |solver, i| {
                    if first_bad.load(Ordering::Relaxed) < i {
                        return;
                    }
                    let l = sample_assignment(&profile, seed, i as u64);
                    if !solver.colorable(&l.lists) {
                        first_bad.fetch_min(i, Ordering::Relaxed);
                    }
                },
            );
            match first_bad.into_inner() {
                usize::MAX => (Verdict::Pass, n as u64, None, json!({ "samples": n })),
                i => (
                    Verdict::Fail,
                    i as u64 + 1,
                    Some(sample_assignment(&profile, seed, i as u64)),
                    json!({ "samples": n, "failing_sample": i }),
                ),
            }
        }
        Mode::Nullstellensatz => {
            let target = c.target_monomial.as_ref().ok_or_else(|| {
                Error::Mode(format!("{} has no target monomial; nullstellensatz mode does not apply", c.name))
            })?;
            let cert = nullstellensatz::certify(&g, &profile, target)?;
            let verdict = if cert.holds() { Verdict::Pass } else { Verdict::Fail };
            let short: Vec<&str> = cert.short_lists.iter().map(|&i| labels[i].as_str()).collect();
            let details = json!({
                "target": target,
                "coefficient": cert.coefficient.to_string(),
                "short_lists": short,
                "term_peak": cert.term_peak,
            });
            (verdict, 1, None, details)
        }
    };
    Ok(ReducibilityReport {
        name: c.name.clone(),
        mode,
        verdict,
        checked,
        counterexample,
        labels,
        details,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Sample mode for entries too large to enumerate, exhaustive otherwise.
pub fn default_mode(c: &Configuration, seed: u64) -> Mode {
    match c.family {
        Family::H | Family::F => Mode::Sample { n: DEFAULT_SAMPLES, seed },
        Family::T | Family::J => Mode::Exhaustive,
    }
}

/// Stops at the first uncolorable assignment of a stream.
pub fn first_uncolorable(g: &Graph, e: &CanonicalEnumerator) -> Option<ListAssignment> {
    let mut solver = Solver::new(g);
    match e.visit(|l| if solver.colorable(l) { ControlFlow::Continue(()) } else { ControlFlow::Break(l.to_vec()) }) {
        ControlFlow::Break(l) => Some(ListAssignment::new(l)),
        ControlFlow::Continue(()) => None,
    }
}
