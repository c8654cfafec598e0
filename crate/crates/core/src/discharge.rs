//! Discharging audit on explicit plane graphs.
//!
//! Initial charges are `2 d(v) - 6` on vertices and `d(f) - 6` on faces.
//! Rule R: every face of size at least 9 sends 1 to each incident 2-vertex
//! (per incidence) and 1 to each 3-face across each shared edge.

use num_rational::Rational64;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::boundary::{CycleBoundary, Kind};
use crate::error::{Error, Result};
use crate::plane::{self, PlaneGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

impl Element {
    pub fn name(self) -> String {
        match self {
            Element::Vertex(v) => format!("vertex {v}"),
            Element::Face(f) => format!("face {f}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub from_face: usize,
    pub to: Element,
    pub amount: Rational64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeLedger {
    pub vertex_charge: Vec<Rational64>,
    pub face_charge: Vec<Rational64>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn total(&self) -> Rational64 {
        self.vertex_charge.iter().chain(&self.face_charge).sum()
    }

    pub fn charge(&self, e: Element) -> Rational64 {
        match e {
            Element::Vertex(v) => self.vertex_charge[v],
            Element::Face(f) => self.face_charge[f],
        }
    }

    fn apply(&mut self, t: Transfer) {
        self.face_charge[t.from_face] -= t.amount;
        match t.to {
            Element::Vertex(v) => self.vertex_charge[v] += t.amount,
            Element::Face(f) => self.face_charge[f] += t.amount,
        }
        self.transfers.push(t);
    }

    /// Elements with negative charge, vertices first.
    pub fn negatives(&self) -> Vec<Element> {
        let vs = (0..self.vertex_charge.len()).map(Element::Vertex);
        let fs = (0..self.face_charge.len()).map(Element::Face);
        vs.chain(fs).filter(|&e| self.charge(e) < Rational64::zero()).collect()
    }
}

fn require_connected(pg: &PlaneGraph) -> Result<()> {
    if pg.graph().is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

pub fn initial_charges(pg: &PlaneGraph) -> Result<ChargeLedger> {
    require_connected(pg)?;
    let g = pg.graph();
    Ok(ChargeLedger {
        vertex_charge: (0..g.n()).map(|v| Rational64::from(2 * g.degree(v) as i64 - 6)).collect(),
        face_charge: pg.faces().iter().map(|f| Rational64::from(f.len() as i64 - 6)).collect(),
        transfers: Vec::new(),
    })
}

/// The transfers Rule R makes out of face `f`.
pub fn rule_r_transfers(pg: &PlaneGraph, f: usize) -> Vec<Transfer> {
    let face = &pg.faces()[f];
    if face.len() < 9 {
        return Vec::new();
    }
    let g = pg.graph();
    let one = Rational64::from(1);
    let mut out = Vec::new();
    for &v in &face.vertices {
        if g.degree(v) == 2 {
            out.push(Transfer { from_face: f, to: Element::Vertex(v), amount: one });
        }
    }
    for (u, v) in face.darts() {
        let other = pg.face_of_dart(v, u);
        if other != f && pg.faces()[other].len() == 3 {
            out.push(Transfer { from_face: f, to: Element::Face(other), amount: one });
        }
    }
    out
}

pub fn apply_rule_r(pg: &PlaneGraph, ledger: &ChargeLedger) -> ChargeLedger {
    let mut next = ledger.clone();
    for f in 0..pg.faces().len() {
        for t in rule_r_transfers(pg, f) {
            next.apply(t);
        }
    }
    next
}

/// `t(f)` read off the embedding: 2-vertex incidences plus 3-faces across
/// edges of `f`, with multiplicity.
pub fn face_t(pg: &PlaneGraph, f: usize) -> usize {
    let face = &pg.faces()[f];
    let g = pg.graph();
    let twos = face.vertices.iter().filter(|&&v| g.degree(v) == 2).count();
    let tris = face
        .darts()
        .filter(|&(u, v)| {
            let o = pg.face_of_dart(v, u);
            o != f && pg.faces()[o].len() == 3
        })
        .count();
    twos + tris
}

/// The cycle boundary of a face whose walk is a simple cycle, when its
/// 2-vertices and adjacent 3-faces form a valid boundary word.
pub fn face_boundary(pg: &PlaneGraph, f: usize) -> Option<CycleBoundary> {
    let face = &pg.faces()[f];
    let d = face.len();
    let mut seen = face.vertices.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != d || d < 3 {
        return None;
    }
    let g = pg.graph();
    let mut kinds: Vec<Option<Kind>> = face.vertices.iter().map(|&v| (g.degree(v) == 2).then_some(Kind::Two)).collect();
    for (i, (u, v)) in face.darts().enumerate() {
        let o = pg.face_of_dart(v, u);
        if o != f && pg.faces()[o].len() == 3 {
            let j = (i + 1) % d;
            if kinds[i].is_some() || kinds[j].is_some() {
                return None;
            }
            kinds[i] = Some(Kind::TriFirst);
            kinds[j] = Some(Kind::TriSecond);
        }
    }
    CycleBoundary::new(kinds.into_iter().map(|k| k.unwrap_or(Kind::Anchor)).collect()).ok()
}

#[derive(Clone, Debug)]
pub struct NegativeElement {
    pub element: Element,
    pub charge: Rational64,
    /// Face size, for faces.
    pub d: Option<usize>,
    /// `t(f)`, for faces.
    pub t: Option<usize>,
}

impl NegativeElement {
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "element": self.element.name(), "charge": self.charge.to_string() });
        if let (Some(d), Some(t)) = (self.d, self.t) {
            v["d"] = json!(d);
            v["t"] = json!(t);
            v["d_minus_6"] = json!(d as i64 - 6);
            v["t_within_bound"] = json!((t as i64) <= d as i64 - 6);
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub initial: ChargeLedger,
    pub fin: ChargeLedger,
    pub negatives: Vec<NegativeElement>,
    pub subcubic: bool,
}

impl AuditReport {
    pub fn total_initial(&self) -> Rational64 {
        self.initial.total()
    }

    pub fn total_final(&self) -> Rational64 {
        self.fin.total()
    }

    /// No element ends with negative charge.
    pub fn passed(&self) -> bool {
        self.negatives.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total_initial": self.total_initial().to_string(),
            "total_final": self.total_final().to_string(),
            "subcubic": self.subcubic,
            "negatives": self.negatives.iter().map(NegativeElement::to_json).collect::<Vec<_>>(),
            "transfers": self.fin.transfers.len(),
        })
    }
}

pub fn audit(pg: &PlaneGraph) -> Result<AuditReport> {
    let initial = initial_charges(pg)?;
    let fin = apply_rule_r(pg, &initial);
    let negatives = fin
        .negatives()
        .into_iter()
        .map(|e| {
            let (d, t) = match e {
                Element::Face(f) => (Some(pg.faces()[f].len()), Some(face_t(pg, f))),
                Element::Vertex(_) => (None, None),
            };
            NegativeElement { element: e, charge: fin.charge(e), d, t }
        })
        .collect();
    Ok(AuditReport { initial, fin, negatives, subcubic: pg.graph().is_subcubic() })
}

/// Euler and conservation bookkeeping of one audit.
#[derive(Clone, Debug)]
pub struct Bookkeeping {
    pub total_initial: Rational64,
    pub total_final: Rational64,
    /// Every face sends exactly `face_t` units.
    pub transfers_match_t: bool,
    /// Every face of size at least 9 ends at `d - 6 - t`.
    pub large_faces_settled: bool,
}

impl Bookkeeping {
    pub fn passed(&self) -> bool {
        self.total_initial == Rational64::from(-12)
            && self.total_final == self.total_initial
            && self.transfers_match_t
            && self.large_faces_settled
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total_initial": self.total_initial.to_string(),
            "total_final": self.total_final.to_string(),
            "transfers_match_t": self.transfers_match_t,
            "large_faces_settled": self.large_faces_settled,
        })
    }
}

pub fn bookkeeping(pg: &PlaneGraph) -> Result<Bookkeeping> {
    let initial = initial_charges(pg)?;
    let fin = apply_rule_r(pg, &initial);
    let faces = 0..pg.faces().len();
    let transfers_match_t = faces.clone().all(|f| {
        let sent = fin.transfers.iter().filter(|t| t.from_face == f).count();
        let expected = if pg.faces()[f].len() >= 9 { face_t(pg, f) } else { 0 };
        sent == expected
    });
    let large_faces_settled = faces.filter(|&f| pg.faces()[f].len() >= 9).all(|f| {
        let received = fin.transfers.iter().filter(|t| t.to == Element::Face(f)).count() as i64;
        let d = pg.faces()[f].len() as i64;
        fin.face_charge[f] == Rational64::from(d - 6 - face_t(pg, f) as i64 + received)
    });
    Ok(Bookkeeping { total_initial: initial.total(), total_final: fin.total(), transfers_match_t, large_faces_settled })
}

/// C9, the hexagonal prism and ten stacked triangulations on 4 to 13
/// vertices.
pub fn test_embeddings() -> Vec<(String, PlaneGraph)> {
    let mut out = vec![
        ("C9".to_string(), plane::cycle_embedding(9)),
        ("hexagonal prism".to_string(), plane::hexagonal_prism_embedding()),
    ];
    for i in 0..10 {
        let n = 4 + i;
        out.push((format!("triangulation n={n} seed={i}"), plane::stacked_triangulation(n, i as u64)));
    }
    out
}
