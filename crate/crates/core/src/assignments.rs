//! List assignments and their exhaustive enumeration up to color renaming.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Colors are `0..64`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(pub u64);

pub const MAX_COLORS: usize = 64;

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn from_colors(colors: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = ColorSet::EMPTY;
        for c in colors {
            if c >= MAX_COLORS {
                return Err(Error::ColorOutOfRange { got: c, max: MAX_COLORS });
            }
            s.0 |= 1 << c;
        }
        Ok(s)
    }

    /// `{0, ..., k - 1}`.
    pub fn range(k: usize) -> Self {
        assert!(k <= MAX_COLORS);
        if k == MAX_COLORS {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << k) - 1)
        }
    }

    pub fn contains(self, c: usize) -> bool {
        c < MAX_COLORS && self.0 >> c & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// One past the largest color, 0 for the empty set.
    pub fn bound(self) -> usize {
        MAX_COLORS - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(c)
            }
        })
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Required list size per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeProfile(Vec<usize>);

impl SizeProfile {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.iter().any(|&s| s == 0 || s > MAX_COLORS) {
            return Err(Error::InvalidProfile(sizes));
        }
        Ok(SizeProfile(sizes))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// One color list per vertex `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    pub lists: Vec<ColorSet>,
}

impl fmt::Debug for ListAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.lists).finish()
    }
}

/// `v1, v2, ...`
pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

impl ListAssignment {
    pub fn new(lists: Vec<ColorSet>) -> Self {
        ListAssignment { lists }
    }

    pub fn from_lists(lists: &[&[usize]]) -> Result<Self> {
        let lists = lists
            .iter()
            .map(|l| ColorSet::from_colors(l.iter().copied()))
            .collect::<Result<_>>()?;
        Ok(ListAssignment { lists })
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, v: usize) -> ColorSet {
        self.lists[v]
    }

    pub fn matches(&self, profile: &SizeProfile) -> bool {
        self.lists.len() == profile.len()
            && self.lists.iter().zip(profile.sizes()).all(|(l, &s)| l.len() == s)
    }

    /// Pointwise `L(v) \ forbidden(v)`.
    pub fn restrict(&self, forbidden: &[ColorSet]) -> Result<ListAssignment> {
        if forbidden.len() != self.lists.len() {
            return Err(Error::Mismatch(format!(
                "{} forbidden sets for {} lists",
                forbidden.len(),
                self.lists.len()
            )));
        }
        Ok(ListAssignment {
            lists: self.lists.iter().zip(forbidden).map(|(l, f)| l.difference(*f)).collect(),
        })
    }

    /// `{label: [sorted colors]}`.
    pub fn to_json(&self, labels: &[String]) -> Value {
        let mut map = Map::new();
        for (label, list) in labels.iter().zip(&self.lists) {
            map.insert(label.clone(), Value::from(list.iter().collect::<Vec<_>>()));
        }
        Value::Object(map)
    }

    pub fn from_json(value: &Value, labels: &[String]) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Mismatch("assignment must be a JSON object".into()))?;
        let lists = labels
            .iter()
            .map(|label| {
                let arr = obj
                    .get(label)
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Mismatch(format!("no list for {label}")))?;
                let colors = arr
                    .iter()
                    .map(|c| {
                        c.as_u64()
                            .map(|c| c as usize)
                            .ok_or_else(|| Error::Mismatch(format!("bad color in list of {label}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ColorSet::from_colors(colors)
            })
            .collect::<Result<_>>()?;
        Ok(ListAssignment { lists })
    }
}

/// Each list is a uniform random subset of `0..palette` of the required size.
pub fn random_assignment(profile: &SizeProfile, palette: usize, seed: u64) -> Result<ListAssignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_assignment_with(profile, palette, &mut rng)
}

pub fn random_assignment_with(
    profile: &SizeProfile,
    palette: usize,
    rng: &mut ChaCha8Rng,
) -> Result<ListAssignment> {
    if palette > MAX_COLORS {
        return Err(Error::ColorOutOfRange { got: palette, max: MAX_COLORS });
    }
    if let Some(&size) = profile.sizes().iter().find(|&&s| s > palette) {
        return Err(Error::PaletteTooSmall { palette, size });
    }
    let lists = profile
        .sizes()
        .iter()
        .map(|&s| ColorSet(index::sample(rng, palette, s).iter().fold(0, |acc, c| acc | 1 << c)))
        .collect();
    Ok(ListAssignment { lists })
}

/// Canonical list assignments for a profile, visited in a fixed order.
///
/// Vertices are processed in `order`. Colors in use so far are always
/// `0..u`; the next list is a subset of them completed by the fresh colors
/// `u, u + 1, ...`. Candidate lists at each step are tried by ascending
/// bitmask.
#[derive(Clone, Debug)]
pub struct CanonicalEnumerator {
    order: Vec<usize>,
    // choices[pos][u]: candidate masks for vertex order[pos] with colors 0..u used
    choices: Vec<Vec<Vec<u64>>>,
    palette: usize,
}

fn candidates(size: usize, used: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for a in 0..=size.min(used) {
        let fresh = ((1u64 << (size - a)) - 1) << used;
        if a == 0 {
            out.push(fresh);
            continue;
        }
        // Gosper's hack: all a-subsets of 0..used in increasing order.
        let mut old = (1u64 << a) - 1;
        while old < 1u64 << used {
            out.push(old | fresh);
            let c = old & old.wrapping_neg();
            let r = old + c;
            old = (((r ^ old) >> 2) / c) | r;
        }
    }
    out.sort_unstable();
    out
}

impl CanonicalEnumerator {
    pub fn new(profile: &SizeProfile, order: &[usize]) -> Result<Self> {
        let n = profile.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
            return Err(Error::Mismatch(format!("{order:?} is not a permutation of 0..{n}")));
        }
        let palette = profile.total();
        if palette > MAX_COLORS {
            return Err(Error::ColorOutOfRange { got: palette, max: MAX_COLORS });
        }
        let mut choices = Vec::with_capacity(n);
        let mut max_used = 0;
        for &v in order {
            let size = profile.sizes()[v];
            choices.push((0..=max_used).map(|u| candidates(size, u)).collect());
            max_used += size;
        }
        Ok(CanonicalEnumerator { order: order.to_vec(), choices, palette })
    }

    /// Enumerator in the natural vertex order.
    pub fn natural(profile: &SizeProfile) -> Result<Self> {
        Self::new(profile, &(0..profile.len()).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Upper bound on colors used: `Σ sizes`.
    pub fn palette(&self) -> usize {
        self.palette
    }

    /// Exact stream length, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        let n = self.n();
        let mut memo: HashMap<(usize, usize), u128> = HashMap::new();
        fn go(e: &CanonicalEnumerator, pos: usize, u: usize, n: usize, memo: &mut HashMap<(usize, usize), u128>) -> u128 {
            if pos == n {
                return 1;
            }
            if let Some(&c) = memo.get(&(pos, u)) {
                return c;
            }
            let c = e.choices[pos][u]
                .iter()
                .map(|&m| go(e, pos + 1, u.max(ColorSet(m).bound()), n, memo))
                .fold(0u128, u128::saturating_add);
            memo.insert((pos, u), c);
            c
        }
        go(self, 0, 0, n, &mut memo)
    }

    /// All partial assignments of the first `depth` vertices of `order`, as
    /// mask prefixes in stream order. Completing each prefix in turn
    /// reproduces the full stream.
    pub fn prefixes(&self, depth: usize) -> Vec<Vec<u64>> {
        let depth = depth.min(self.n());
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(depth);
        fn go(e: &CanonicalEnumerator, depth: usize, u: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            let pos = cur.len();
            if pos == depth {
                out.push(cur.clone());
                return;
            }
            for &m in &e.choices[pos][u] {
                cur.push(m);
                go(e, depth, u.max(ColorSet(m).bound()), cur, out);
                cur.pop();
            }
        }
        go(self, depth, 0, &mut cur, &mut out);
        out
    }

    /// Smallest prefix depth giving at least `want` partitions.
    pub fn partition_depth(&self, want: usize) -> usize {
        (0..=self.n())
            .find(|&d| self.prefixes(d).len() >= want)
            .unwrap_or(self.n())
    }

    /// Visit every completion of `prefix`, in stream order. `f` receives the
    /// lists indexed by vertex and may stop the walk early.
    pub fn visit_from<B>(
        &self,
        prefix: &[u64],
        mut f: impl FnMut(&[ColorSet]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let mut lists = vec![ColorSet::EMPTY; self.n()];
        let mut u = 0;
        for (pos, &m) in prefix.iter().enumerate() {
            lists[self.order[pos]] = ColorSet(m);
            u = u.max(ColorSet(m).bound());
        }
        self.walk(prefix.len(), u, &mut lists, &mut f)
    }

    pub fn visit<B>(&self, f: impl FnMut(&[ColorSet]) -> ControlFlow<B>) -> ControlFlow<B> {
        self.visit_from(&[], f)
    }

    fn walk<B>(
        &self,
        pos: usize,
        u: usize,
        lists: &mut [ColorSet],
        f: &mut impl FnMut(&[ColorSet]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if pos == self.n() {
            return f(lists);
        }
        let v = self.order[pos];
        for &m in &self.choices[pos][u] {
            lists[v] = ColorSet(m);
            self.walk(pos + 1, u.max(ColorSet(m).bound()), lists, f)?;
        }
        ControlFlow::Continue(())
    }

    /// Owned iterator over the stream. Allocates per item; the visitor
    /// methods are the fast path.
    pub fn iter(&self) -> CanonicalIter<'_> {
        CanonicalIter { e: self, stack: Vec::new(), started: false }
    }
}

pub struct CanonicalIter<'a> {
    e: &'a CanonicalEnumerator,
    // (choice index, colors used before this position)
    stack: Vec<(usize, usize)>,
    started: bool,
}

impl CanonicalIter<'_> {
    fn mask(&self, pos: usize) -> u64 {
        let (i, u) = self.stack[pos];
        self.e.choices[pos][u][i]
    }

    fn fill(&mut self) {
        while self.stack.len() < self.e.n() {
            let u = match self.stack.len() {
                0 => 0,
                p => self.stack[p - 1].1.max(ColorSet(self.mask(p - 1)).bound()),
            };
            self.stack.push((0, u));
        }
    }
}

impl Iterator for CanonicalIter<'_> {
    type Item = ListAssignment;

    fn next(&mut self) -> Option<ListAssignment> {
        if self.e.n() == 0 {
            // The empty profile has exactly one, empty, assignment.
            let first = !self.started;
            self.started = true;
            return first.then(|| ListAssignment::new(Vec::new()));
        }
        if !self.started {
            self.started = true;
            self.fill();
        } else {
            loop {
                let pos = self.stack.len().checked_sub(1)?;
                let (i, u) = self.stack[pos];
                if i + 1 < self.e.choices[pos][u].len() {
                    self.stack[pos].0 += 1;
                    break;
                }
                self.stack.pop();
                if self.stack.is_empty() {
                    return None;
                }
            }
            self.fill();
        }
        let mut lists = vec![ColorSet::EMPTY; self.e.n()];
        for pos in 0..self.e.n() {
            lists[self.e.order[pos]] = ColorSet(self.mask(pos));
        }
        Some(ListAssignment { lists })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(s: &[usize]) -> SizeProfile {
        SizeProfile::new(s.to_vec()).unwrap()
    }

    fn lists(e: &CanonicalEnumerator) -> Vec<Vec<Vec<usize>>> {
        e.iter().map(|l| l.lists.iter().map(|s| s.iter().collect()).collect()).collect()
    }

    #[test]
    fn single_vertex() {
        let e = CanonicalEnumerator::natural(&profile(&[1])).unwrap();
        assert_eq!(lists(&e), vec![vec![vec![0]]]);
    }

    #[test]
    fn two_by_two_order() {
        let e = CanonicalEnumerator::natural(&profile(&[2, 2])).unwrap();
        assert_eq!(
            lists(&e),
            vec![
                vec![vec![0, 1], vec![0, 1]],
                vec![vec![0, 1], vec![0, 2]],
                vec![vec![0, 1], vec![1, 2]],
                vec![vec![0, 1], vec![2, 3]],
            ]
        );
    }

    #[test]
    fn count_matches_stream() {
        for s in [&[2, 3, 2, 2][..], &[1, 2, 3], &[3, 1], &[2, 2, 2]] {
            let e = CanonicalEnumerator::natural(&profile(s)).unwrap();
            assert_eq!(e.count(), e.iter().count() as u128);
            let mut visited = 0u128;
            let _ = e.visit(|_| ControlFlow::<()>::Continue(visited += 1));
            assert_eq!(visited, e.count());
        }
        let p4 = CanonicalEnumerator::natural(&profile(&[2, 3, 2, 2])).unwrap();
        assert_eq!(p4.count(), 673);
    }

    #[test]
    fn prefixes_partition_the_stream() {
        let e = CanonicalEnumerator::new(&profile(&[2, 3, 2, 2]), &[1, 0, 3, 2]).unwrap();
        let all: Vec<_> = e.iter().collect();
        for depth in 0..=4 {
            let mut joined = Vec::new();
            for p in e.prefixes(depth) {
                let _ = e.visit_from(&p, |l| ControlFlow::<()>::Continue(joined.push(ListAssignment::new(l.to_vec()))));
            }
            assert_eq!(joined, all);
        }
    }

    #[test]
    fn visit_stops_early() {
        let e = CanonicalEnumerator::natural(&profile(&[2, 3, 2, 2])).unwrap();
        let mut k = 0;
        let r = e.visit(|_| {
            k += 1;
            if k == 10 {
                ControlFlow::Break(k)
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(r, ControlFlow::Break(10));
    }

    #[test]
    fn rejects_bad_order_and_profile() {
        assert!(CanonicalEnumerator::new(&profile(&[1, 1]), &[0, 0]).is_err());
        assert!(CanonicalEnumerator::new(&profile(&[1, 1]), &[0]).is_err());
        assert!(SizeProfile::new(vec![1, 0]).is_err());
    }

    #[test]
    fn random_forced_and_deterministic() {
        let l = random_assignment(&profile(&[3]), 3, 9).unwrap();
        assert_eq!(l.lists, vec![ColorSet::range(3)]);
        let l = random_assignment(&profile(&[2, 2]), 2, 1).unwrap();
        assert_eq!(l.lists, vec![ColorSet::range(2); 2]);
        let a = random_assignment(&profile(&[2, 3]), 6, 42).unwrap();
        let b = random_assignment(&profile(&[2, 3]), 6, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.matches(&profile(&[2, 3])));
        assert!(matches!(
            random_assignment(&profile(&[4]), 3, 0),
            Err(Error::PaletteTooSmall { palette: 3, size: 4 })
        ));
    }

    #[test]
    fn restrict_examples() {
        let l = ListAssignment::from_lists(&[&[0, 1, 2], &[0, 1]]).unwrap();
        assert_eq!(l.restrict(&[ColorSet::EMPTY; 2]).unwrap(), l);
        let r = l
            .restrict(&[ColorSet::from_colors([1]).unwrap(), ColorSet::from_colors([0, 1]).unwrap()])
            .unwrap();
        assert_eq!(r, ListAssignment::from_lists(&[&[0, 2], &[]]).unwrap());
        assert!(l.restrict(&[ColorSet::EMPTY]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let l = ListAssignment::from_lists(&[&[3, 0], &[1]]).unwrap();
        let labels = default_labels(2);
        let v = l.to_json(&labels);
        assert_eq!(v.to_string(), r#"{"v1":[0,3],"v2":[1]}"#);
        assert_eq!(ListAssignment::from_json(&v, &labels).unwrap(), l);
    }
}
