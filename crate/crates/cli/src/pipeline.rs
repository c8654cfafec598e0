use chroma_core::boundary;
use chroma_core::catalog::{self, Catalog, Mode};
use chroma_core::colorer::{self, Lemma};
use chroma_core::discharge;
use chroma_core::nullstellensatz::{graph_polynomial, monomial_coefficient};
use chroma_core::Result;
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::report::Verdict;

pub struct Stage {
    pub name: &'static str,
    pub verdict: Verdict,
    pub details: Value,
}

impl Stage {
    fn new(name: &'static str, ok: bool, details: Value) -> Self {
        Stage { name, verdict: Verdict::from_bool(ok), details }
    }

    pub fn to_json(&self) -> Value {
        json!({ "stage": self.name, "verdict": self.verdict.as_str(), "details": self.details })
    }
}

fn progress(msg: &str) {
    eprintln!("[check-all] {msg}");
}

pub fn profiles(catalog: &Catalog) -> Stage {
    let audit = catalog::check_figure_profiles(catalog);
    Stage::new("profiles", audit.passed(), audit.to_json())
}

pub fn lemmas() -> Result<Stage> {
    let mut ok = true;
    let mut reports = Vec::new();
    for lemma in Lemma::ALL {
        progress(&format!("lemma {}", lemma.name()));
        let r = lemma.verify()?;
        ok &= r.passed();
        reports.push(r.to_json());
    }
    let witness = colorer::j2_necessity_witness()?;
    let witness_ok = witness.as_ref().is_some_and(|l| colorer::find_coloring(&colorer::j2().square(), l).is_none());
    ok &= witness_ok;
    let labels = chroma_core::assignments::default_labels(6);
    Ok(Stage::new(
        "lemmas",
        ok,
        json!({
            "lemmas": reports,
            "j2_necessity_witness": witness.map(|l| l.to_json(&labels)),
        }),
    ))
}

pub fn coefficients(catalog: &Catalog) -> Result<Stage> {
    let mut ok = true;
    let mut rows = Vec::new();
    for c in &catalog.configurations {
        let Some(target) = &c.target_monomial else { continue };
        let report = monomial_coefficient(&graph_polynomial(&c.colorability_graph()), target)?;
        let matches = c.expected_coefficient.is_none_or(|e| report.coefficient == BigInt::from(e));
        ok &= matches && report.coefficient != BigInt::from(0);
        rows.push(json!({
            "configuration": c.name,
            "target": target,
            "coefficient": report.coefficient.to_string(),
            "expected": c.expected_coefficient,
            "result": Verdict::from_bool(matches).as_str(),
        }));
    }
    Ok(Stage::new("coefficients", ok, json!(rows)))
}

pub fn classification(catalog: &Catalog) -> Result<Stage> {
    let mut ok = true;
    let mut rows = Vec::new();
    for d in [10, 9] {
        progress(&format!("classify d={d}"));
        let c = boundary::classify(d, catalog)?;
        ok &= c.passed();
        let names: Vec<&Vec<String>> = c.matched.iter().collect();
        rows.push(json!({
            "d": d,
            "classes": c.boundaries.len(),
            "words": c.boundaries.iter().map(|b| b.word()).collect::<Vec<_>>(),
            "matches": names,
            "result": Verdict::from_bool(c.passed()).as_str(),
        }));
    }
    let filtered = boundary::enumerate_extremal(10, catalog)?.len();
    let unfiltered = boundary::enumerate(10, Some(5), &[]).len();
    ok &= unfiltered > filtered;
    Ok(Stage::new(
        "classification",
        ok,
        json!({ "claims": rows, "d10_without_t_filter": unfiltered, "d10_with_t_filter": filtered }),
    ))
}

pub fn reducibility(catalog: &Catalog, seed: u64) -> Result<Stage> {
    let mut ok = true;
    let mut rows = Vec::new();
    for c in &catalog.configurations {
        progress(&format!("reducible {}", c.name));
        let r = catalog::verify_reducible(c, catalog::default_mode(c, seed))?;
        ok &= r.passed();
        rows.push(r.to_json());
        if c.target_monomial.is_some() {
            let r = catalog::verify_reducible(c, Mode::Nullstellensatz)?;
            ok &= r.passed();
            rows.push(r.to_json());
        }
    }
    Ok(Stage::new("reducibility", ok, json!(rows)))
}

pub fn discharge_examples() -> Result<Stage> {
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, pg) in discharge::test_embeddings() {
        let book = discharge::bookkeeping(&pg)?;
        let audit = discharge::audit(&pg)?;
        ok &= book.passed();
        let mut row = json!({
            "embedding": name,
            "bookkeeping": book.to_json(),
            "negatives": audit.negatives.iter().map(|n| n.to_json()).collect::<Vec<_>>(),
        });
        if name == "C9" {
            let settled = audit.fin.vertex_charge.iter().all(|&c| c == 0.into());
            ok &= settled;
            row["cycle_vertices_at_zero"] = json!(settled);
        }
        rows.push(row);
    }
    Ok(Stage::new("discharge", ok, json!(rows)))
}

pub fn check_all(catalog: &Catalog, seed: u64) -> Result<Vec<Stage>> {
    progress("profiles");
    let mut stages = vec![profiles(catalog)];
    stages.push(lemmas()?);
    progress("coefficients");
    stages.push(coefficients(catalog)?);
    stages.push(classification(catalog)?);
    stages.push(reducibility(catalog, seed)?);
    progress("discharge");
    stages.push(discharge_examples()?);
    Ok(stages)
}
