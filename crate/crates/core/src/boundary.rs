//! Cycle boundaries: 2-vertices, cycle-triangles and anchors around a
//! cycle, their segment decomposition, and the extremal classification.
//!
//! A boundary is written as a cyclic word: `2` a 2-vertex, `<` `>` the two
//! cycle vertices of a triangle sharing an edge with the cycle, `A` any
//! other 3-vertex (the anchors `A(C)`).

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::catalog::{segment_templates, Catalog, Family};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Two,
    Anchor,
    TriFirst,
    TriSecond,
}

impl Kind {
    pub fn from_char(c: char) -> Option<Kind> {
        Some(match c {
            '2' => Kind::Two,
            'A' => Kind::Anchor,
            '<' => Kind::TriFirst,
            '>' => Kind::TriSecond,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Kind::Two => '2',
            Kind::Anchor => 'A',
            Kind::TriFirst => '<',
            Kind::TriSecond => '>',
        }
    }

    fn mirrored(self) -> Kind {
        match self {
            Kind::TriFirst => Kind::TriSecond,
            Kind::TriSecond => Kind::TriFirst,
            k => k,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleBoundary {
    kinds: Vec<Kind>,
}

impl fmt::Debug for CycleBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleBoundary({})", self.word())
    }
}

impl fmt::Display for CycleBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

fn mirror_word(w: &str) -> String {
    w.chars()
        .rev()
        .map(|c| match c {
            '<' => '>',
            '>' => '<',
            c => c,
        })
        .collect()
}

impl CycleBoundary {
    /// Checks: every `<` is followed by `>` and vice versa (cyclically), and
    /// no two 2-vertices are adjacent.
    pub fn new(kinds: Vec<Kind>) -> Result<Self> {
        let d = kinds.len();
        if d < 3 {
            return Err(Error::InvalidBoundary(format!("cycle length {d} is below 3")));
        }
        for i in 0..d {
            let next = kinds[(i + 1) % d];
            match kinds[i] {
                Kind::TriFirst if next != Kind::TriSecond => {
                    return Err(Error::InvalidBoundary(format!("triangle at position {i} is not closed")))
                }
                Kind::Two if next == Kind::Two => {
                    return Err(Error::InvalidBoundary(format!("adjacent 2-vertices at positions {i}, {}", (i + 1) % d)))
                }
                k if k != Kind::TriFirst && next == Kind::TriSecond => {
                    return Err(Error::InvalidBoundary(format!(
                        "triangle ending at position {} has no start",
                        (i + 1) % d
                    )))
                }
                _ => {}
            }
        }
        Ok(CycleBoundary { kinds })
    }

    pub fn parse(word: &str) -> Result<Self> {
        let kinds = word
            .chars()
            .map(|c| Kind::from_char(c).ok_or_else(|| Error::InvalidBoundary(format!("unknown symbol {c:?}"))))
            .collect::<Result<_>>()?;
        CycleBoundary::new(kinds)
    }

    pub fn word(&self) -> String {
        self.kinds.iter().map(|k| k.as_char()).collect()
    }

    pub fn kinds(&self) -> &[Kind] {
        &self.kinds
    }

    pub fn d(&self) -> usize {
        self.kinds.len()
    }

    pub fn twos(&self) -> usize {
        self.kinds.iter().filter(|&&k| k == Kind::Two).count()
    }

    /// Position pairs `(i, i + 1 mod d)` spanned by a cycle-triangle.
    pub fn tri_pairs(&self) -> Vec<(usize, usize)> {
        let d = self.d();
        (0..d).filter(|&i| self.kinds[i] == Kind::TriFirst).map(|i| (i, (i + 1) % d)).collect()
    }

    /// `A(C)` as positions.
    pub fn anchors(&self) -> Vec<usize> {
        (0..self.d()).filter(|&i| self.kinds[i] == Kind::Anchor).collect()
    }

    /// 2-vertices plus triangles sharing an edge with the cycle.
    pub fn t(&self) -> usize {
        self.twos() + self.tri_pairs().len()
    }

    pub fn rotated(&self, r: usize) -> CycleBoundary {
        let d = self.d();
        CycleBoundary { kinds: (0..d).map(|i| self.kinds[(i + r) % d]).collect() }
    }

    pub fn mirrored(&self) -> CycleBoundary {
        CycleBoundary { kinds: self.kinds.iter().rev().map(|k| k.mirrored()).collect() }
    }

    /// Least word over all rotations and reflections.
    pub fn canonical(&self) -> CycleBoundary {
        let m = self.mirrored();
        (0..self.d())
            .flat_map(|r| [self.rotated(r), m.rotated(r)])
            .min()
            .unwrap()
    }

    /// Whether `pattern` occurs as consecutive positions in either direction
    /// around the cycle.
    pub fn contains_pattern(&self, pattern: &str) -> bool {
        let d = self.d();
        if pattern.chars().count() > d {
            return false;
        }
        let w = self.word();
        [w.clone(), mirror_word(&w)].iter().any(|s| {
            let doubled = format!("{s}{s}");
            (0..d).any(|i| doubled[i..].starts_with(pattern))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SegmentKind {
    S1,
    S2,
    S3,
    S4,
    S5,
}

impl SegmentKind {
    pub fn name(self) -> &'static str {
        match self {
            SegmentKind::S1 => "S1",
            SegmentKind::S2 => "S2",
            SegmentKind::S3 => "S3",
            SegmentKind::S4 => "S4",
            SegmentKind::S5 => "S5",
        }
    }

    fn from_name(name: &str) -> SegmentKind {
        match name {
            "S1" => SegmentKind::S1,
            "S2" => SegmentKind::S2,
            "S3" => SegmentKind::S3,
            "S4" => SegmentKind::S4,
            _ => SegmentKind::S5,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// An arc between consecutive anchors, both anchors included. With a
/// single anchor the arc runs all the way round and the anchor appears at
/// both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    /// Number of triangles, for `S4`; 0 otherwise.
    pub l: usize,
    pub positions: Vec<usize>,
}

impl Segment {
    /// `|S|`: vertices on the arc.
    pub fn size(&self) -> usize {
        self.positions.len()
    }

    pub fn t(&self) -> usize {
        segment_t(self.kind, self.l)
    }
}

pub fn segment_t(kind: SegmentKind, l: usize) -> usize {
    match kind {
        SegmentKind::S1 => 1,
        SegmentKind::S2 => 2,
        SegmentKind::S3 => 3,
        SegmentKind::S4 => l,
        SegmentKind::S5 => 0,
    }
}

/// Number of vertices of a segment, anchors included.
pub fn segment_size(kind: SegmentKind, l: usize) -> usize {
    match kind {
        SegmentKind::S1 => 3,
        SegmentKind::S2 => 5,
        SegmentKind::S3 => 7,
        SegmentKind::S4 => 2 * l + 2,
        SegmentKind::S5 => 2,
    }
}

fn classify_arc(tokens: &str) -> Option<(SegmentKind, usize)> {
    for t in segment_templates() {
        if t.any_pairs {
            if !tokens.is_empty() && tokens.chars().all(|c| c == 'P') {
                return Some((SegmentKind::from_name(t.name), tokens.len()));
            }
        } else if t.shapes.contains(&tokens) {
            return Some((SegmentKind::from_name(t.name), 0));
        }
    }
    None
}

/// Splits the cycle at its anchors and names each arc.
pub fn decompose(b: &CycleBoundary) -> Result<Vec<Segment>> {
    let anchors = b.anchors();
    if anchors.is_empty() {
        return Err(Error::InvalidBoundary(format!("{b} has no anchors")));
    }
    let d = b.d();
    let k = anchors.len();
    let mut segments = Vec::with_capacity(k);
    for i in 0..k {
        let start = anchors[i];
        let end = if k == 1 { start + d } else { anchors[(i + 1) % k] + if i + 1 == k { d } else { 0 } };
        let positions: Vec<usize> = (start..=end).map(|p| p % d).collect();
        let mut tokens = String::new();
        let mut j = start + 1;
        while j < end {
            match b.kinds[j % d] {
                Kind::Two => tokens.push('2'),
                Kind::TriFirst => {
                    tokens.push('P');
                    j += 1;
                }
                _ => tokens.push('?'),
            }
            j += 1;
        }
        let arc: String = positions.iter().map(|&p| b.kinds[p].as_char()).collect();
        let (kind, l) = classify_arc(&tokens).ok_or(Error::Unclassifiable(arc))?;
        segments.push(Segment { kind, l, positions });
    }
    Ok(segments)
}

/// `t <= d - ceil(d / 2)`.
pub fn check_bound(d: usize, t: usize) -> bool {
    t <= d - d.div_ceil(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub d: usize,
    pub t: usize,
    pub k: usize,
    /// `s[i]` counts segments of kind `S(i+1)`.
    pub s: [usize; 5],
    pub l_sum: usize,
}

impl Census {
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d, "t": self.t, "k": self.k,
            "s1": self.s[0], "s2": self.s[1], "s3": self.s[2], "s4": self.s[3], "s5": self.s[4],
            "l_sum": self.l_sum,
        })
    }
}

/// Segment census of a boundary, checked against the bookkeeping
/// identities:
///
/// * `t = s1 + 2 s2 + 3 s3 + Σl`
/// * `k = s1 + s2 + s3 + s4 + s5`
/// * `d = k + s1 + 3 s2 + 5 s3 + 2 Σl`
///
/// and, when `d - t = 5`, also `k = s1 + s2 + s3 + (5 - t)` and
/// `5 = k + s2 + 2 s3 + Σl`. Without anchors the boundary must instead
/// have `d` even and `t = d / 2`.
pub fn case_identities(b: &CycleBoundary) -> Result<Census> {
    let (d, t, k) = (b.d(), b.t(), b.anchors().len());
    let fail = |what: &str| Err(Error::IdentityViolation(format!("{what} on {b}")));
    if k == 0 {
        if d % 2 != 0 || 2 * t != d {
            return fail("t = d/2 with no anchors");
        }
        return Ok(Census { d, t, k, s: [0; 5], l_sum: 0 });
    }
    let segments = decompose(b)?;
    let mut s = [0usize; 5];
    let mut l_sum = 0;
    for seg in &segments {
        s[seg.kind.index()] += 1;
        l_sum += seg.l;
    }
    let [s1, s2, s3, s4, s5] = s;
    if t != s1 + 2 * s2 + 3 * s3 + l_sum {
        return fail("t = s1 + 2s2 + 3s3 + Σl");
    }
    if k != s1 + s2 + s3 + s4 + s5 {
        return fail("k = s1 + s2 + s3 + s4 + s5");
    }
    if d != k + s1 + 3 * s2 + 5 * s3 + 2 * l_sum {
        return fail("d = k + s1 + 3s2 + 5s3 + 2Σl");
    }
    if d == t + 5 {
        if k + t != s1 + s2 + s3 + 5 {
            return fail("k = s1 + s2 + s3 + (5 - t)");
        }
        if 5 != k + s2 + 2 * s3 + l_sum {
            return fail("5 = k + s2 + 2s3 + Σl");
        }
    }
    Ok(Census { d, t, k, s, l_sum })
}

/// Forbidden sub-patterns, read off the spines of the catalog's T entries.
pub fn t_patterns(catalog: &Catalog) -> Vec<(String, String)> {
    catalog.family(Family::T).map(|c| (c.name.clone(), c.spine_word())).collect()
}

/// Every valid word of length `d`, optionally restricted to one `t` and to
/// words avoiding `patterns`, up to rotation and reflection. Sorted.
pub fn enumerate(d: usize, t: Option<usize>, patterns: &[String]) -> Vec<CycleBoundary> {
    const SYMBOLS: [Kind; 4] = [Kind::Two, Kind::Anchor, Kind::TriFirst, Kind::TriSecond];
    if d < 3 {
        return Vec::new();
    }
    let classes: BTreeSet<CycleBoundary> = (0..16)
        .into_par_iter()
        .flat_map_iter(|lead| {
            let lead = [SYMBOLS[lead / 4], SYMBOLS[lead % 4]];
            let rest = d - 2;
            (0..4usize.pow(rest as u32)).filter_map(move |mut code| {
                let mut kinds = lead.to_vec();
                for _ in 0..rest {
                    kinds.push(SYMBOLS[code % 4]);
                    code /= 4;
                }
                let b = CycleBoundary::new(kinds).ok()?;
                if t.is_some_and(|t| b.t() != t) || patterns.iter().any(|p| b.contains_pattern(p)) {
                    return None;
                }
                Some(b.canonical())
            })
        })
        .collect();
    classes.into_iter().collect()
}

/// Boundaries of length 9 or 10 with `t = d - 5`, avoiding the T patterns.
pub fn enumerate_extremal(d: usize, catalog: &Catalog) -> Result<Vec<CycleBoundary>> {
    if !(9..=10).contains(&d) {
        return Err(Error::InvalidBoundary(format!("extremal enumeration is defined for d = 9, 10, not {d}")));
    }
    let patterns: Vec<String> = t_patterns(catalog).into_iter().map(|(_, p)| p).collect();
    Ok(enumerate(d, Some(d - 5), &patterns))
}

/// Names of closed catalog entries whose spine has the same canonical word.
pub fn matching_configurations(b: &CycleBoundary, catalog: &Catalog) -> Vec<String> {
    let canon = b.canonical();
    catalog
        .configurations
        .iter()
        .filter(|c| c.closed)
        .filter(|c| CycleBoundary::parse(&c.spine_word()).is_ok_and(|cb| cb.canonical() == canon))
        .map(|c| c.name.clone())
        .collect()
}

pub fn describe(b: &CycleBoundary, catalog: &Catalog) -> Value {
    let segments = if b.anchors().is_empty() {
        Value::Array(Vec::new())
    } else {
        match decompose(b) {
            Ok(segs) => segs
                .iter()
                .map(|s| json!({ "kind": s.kind.name(), "l": s.l, "size": s.size(), "t": s.t() }))
                .collect(),
            Err(e) => json!(e.to_string()),
        }
    };
    json!({
        "word": b.word(),
        "d": b.d(),
        "t": b.t(),
        "k": b.anchors().len(),
        "segments": segments,
        "census": case_identities(b).map(|c| c.to_json()).unwrap_or_else(|e| json!(e.to_string())),
        "matches": matching_configurations(b, catalog),
    })
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub d: usize,
    pub boundaries: Vec<CycleBoundary>,
    pub matched: Vec<Vec<String>>,
    pub expected: Vec<String>,
}

impl Classification {
    /// Each boundary matches exactly one catalog entry and every expected
    /// entry is hit exactly once.
    pub fn passed(&self) -> bool {
        let mut hit: Vec<String> = self.matched.iter().flatten().cloned().collect();
        hit.sort();
        let mut expected = self.expected.clone();
        expected.sort();
        self.matched.iter().all(|m| m.len() == 1) && hit == expected
    }

    pub fn to_json(&self, catalog: &Catalog) -> Value {
        json!({
            "d": self.d,
            "classes": self.boundaries.len(),
            "expected": self.expected,
            "boundaries": self.boundaries.iter().map(|b| describe(b, catalog)).collect::<Vec<_>>(),
        })
    }
}

/// Extremal boundaries of length `d` against the catalog family of that
/// length (H for 10, F for 9).
pub fn classify(d: usize, catalog: &Catalog) -> Result<Classification> {
    let boundaries = enumerate_extremal(d, catalog)?;
    let matched = boundaries.iter().map(|b| matching_configurations(b, catalog)).collect();
    let expected = catalog
        .configurations
        .iter()
        .filter(|c| c.closed && c.spine.len() == d && matches!(c.family, Family::H | Family::F))
        .map(|c| c.name.clone())
        .collect();
    Ok(Classification { d, boundaries, matched, expected })
}
