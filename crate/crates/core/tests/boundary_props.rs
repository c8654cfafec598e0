use std::collections::BTreeSet;

use chroma_core::boundary::{
    self, case_identities, check_bound, decompose, enumerate, enumerate_extremal, segment_size, segment_t,
    CycleBoundary, SegmentKind,
};
use chroma_core::catalog::{segment_templates, Catalog};
use proptest::prelude::*;

const SYMBOLS: [char; 4] = ['2', 'A', '<', '>'];

/// Cyclic validity read directly off the string.
fn valid(w: &[char]) -> bool {
    let d = w.len();
    d >= 3
        && (0..d).all(|i| {
            let (a, b) = (w[i], w[(i + 1) % d]);
            (a == '<') == (b == '>') && !(a == '2' && b == '2')
        })
}

fn mirror(w: &[char]) -> Vec<char> {
    w.iter()
        .rev()
        .map(|&c| match c {
            '<' => '>',
            '>' => '<',
            c => c,
        })
        .collect()
}

/// Least rotation or reflection, comparing symbols in the order 2, A, <, >.
fn naive_canonical(w: &[char]) -> String {
    let rank = |c: char| SYMBOLS.iter().position(|&s| s == c).unwrap() as u8;
    let d = w.len();
    let m = mirror(w);
    (0..d)
        .flat_map(|r| {
            let a: Vec<u8> = (0..d).map(|i| rank(w[(i + r) % d])).collect();
            let b: Vec<u8> = (0..d).map(|i| rank(m[(i + r) % d])).collect();
            [a, b]
        })
        .min()
        .unwrap()
        .into_iter()
        .map(|x| SYMBOLS[x as usize])
        .collect()
}

fn all_words(d: usize) -> Vec<Vec<char>> {
    (0..4usize.pow(d as u32))
        .map(|mut code| {
            (0..d)
                .map(|_| {
                    let c = SYMBOLS[code % 4];
                    code /= 4;
                    c
                })
                .collect()
        })
        .collect()
}

fn t_free() -> Vec<String> {
    boundary::t_patterns(&Catalog::builtin()).into_iter().map(|(_, p)| p).collect()
}

#[test]
fn enumeration_matches_naive_orbits() {
    for d in 3..=8 {
        let naive: BTreeSet<String> = all_words(d).iter().filter(|w| valid(w)).map(|w| naive_canonical(w)).collect();
        let ours: BTreeSet<String> = enumerate(d, None, &[]).iter().map(|b| b.word()).collect();
        assert_eq!(ours, naive, "d = {d}");
    }
}

#[test]
fn templates_obey_size_rule() {
    for t in segment_templates() {
        let kind = match t.name {
            "S1" => SegmentKind::S1,
            "S2" => SegmentKind::S2,
            "S3" => SegmentKind::S3,
            "S4" => SegmentKind::S4,
            _ => SegmentKind::S5,
        };
        let ls: Vec<usize> = if t.any_pairs { (1..=6).collect() } else { vec![0] };
        for l in ls {
            let size = segment_size(kind, l);
            assert_eq!(segment_t(kind, l), (size - 1) / 2, "{} l={l}", t.name);
        }
        for shape in &t.shapes {
            let inner = shape.chars().map(|c| if c == 'P' { 2 } else { 1 }).sum::<usize>();
            assert_eq!(segment_size(kind, 0), inner + 2, "{} {shape}", t.name);
        }
    }
}

/// Every T-free boundary of length 9 to 12: segments tile the cycle, each
/// segment has `t = floor((|S| - 1) / 2)`, the segment t values add up to
/// `t(C)`, and the census identities hold.
#[test]
fn segment_arithmetic_on_every_boundary() {
    let patterns = t_free();
    let mut checked = 0;
    for d in 9..=12 {
        for b in enumerate(d, None, &patterns) {
            let word: Vec<char> = b.word().chars().collect();
            let t = word.iter().filter(|&&c| c == '2' || c == '<').count();
            assert_eq!(b.t(), t);
            assert!(check_bound(d, t), "{b}");
            let census = case_identities(&b).unwrap_or_else(|e| panic!("{b}: {e}"));
            if b.anchors().is_empty() {
                assert!(d % 2 == 0 && 2 * t == d, "{b}");
                continue;
            }
            let segs = decompose(&b).unwrap();
            assert_eq!(segs.len(), census.k);
            let mut covered = 0;
            for s in &segs {
                assert_eq!(s.size(), segment_size(s.kind, s.l), "{b}");
                assert_eq!(s.t(), (s.size() - 1) / 2, "{b}");
                assert!(word[*s.positions.first().unwrap()] == 'A' && word[*s.positions.last().unwrap()] == 'A');
                let inner = &s.positions[1..s.size() - 1];
                assert_eq!(inner.iter().filter(|&&p| word[p] == '2' || word[p] == '<').count(), s.t(), "{b}");
                covered += s.size() - 1;
            }
            assert_eq!(covered, d, "{b}");
            assert_eq!(segs.iter().map(|s| s.t()).sum::<usize>(), t, "{b}");
            checked += 1;
        }
    }
    assert!(checked > 400, "only {checked} boundaries checked");
}

#[test]
fn extremal_classification() {
    let catalog = Catalog::builtin();
    let ten: Vec<String> = enumerate_extremal(10, &catalog).unwrap().iter().map(|b| b.word()).collect();
    assert_eq!(ten.len(), 4);
    let nine = enumerate_extremal(9, &catalog).unwrap();
    assert_eq!(nine.len(), 12);
    assert!(enumerate(10, Some(5), &[]).len() > ten.len());
    assert!(enumerate(9, Some(4), &[]).len() > nine.len());
    for d in [9, 10] {
        let c = boundary::classify(d, &catalog).unwrap();
        assert!(c.passed());
        let expected: Vec<String> =
            if d == 10 { (1..=4).map(|i| format!("H{i}")).collect() } else { (1..=12).map(|i| format!("F{i}")).collect() };
        let mut hit: Vec<String> = c.matched.into_iter().flatten().collect();
        hit.sort_by_key(|n| n[1..].parse::<usize>().unwrap());
        assert_eq!(hit, expected);
    }
    assert!(enumerate_extremal(8, &catalog).is_err());
}

#[test]
fn censuses_of_named_boundaries() {
    let census = |w: &str| case_identities(&CycleBoundary::parse(w).unwrap()).unwrap();
    let h2 = census("2A<>2<>A<>");
    assert_eq!((h2.k, h2.s[1], h2.s[2]), (2, 1, 1));
    assert_eq!(census("2A2A2A2A2A").s[0], 5);
    let h1 = census("<><><><><>");
    assert_eq!((h1.k, h1.t), (0, 5));
    let f12 = census("<><><><>A");
    assert_eq!((f12.k, f12.s[3], f12.l_sum), (1, 1, 4));
}

#[test]
fn mistaken_identity_is_detected() {
    // A segment census for a word whose arc is not one of the templates.
    assert!(decompose(&CycleBoundary::parse("A2<>2A").unwrap()).is_err());
}

proptest! {
    #[test]
    fn canonical_is_symmetry_invariant(
        units in proptest::collection::vec(prop::sample::select(vec!["A", "<>", "2A", "2<>"]), 2..8),
        r in 0usize..24,
        flip in any::<bool>(),
    ) {
        let w: Vec<char> = units.concat().chars().collect();
        let d = w.len();
        prop_assume!(d >= 3);
        prop_assert!(valid(&w));
        let b = CycleBoundary::parse(&w.iter().collect::<String>()).unwrap();
        let mut moved = b.rotated(r % d);
        if flip {
            moved = moved.mirrored();
        }
        prop_assert_eq!(moved.canonical(), b.canonical());
        prop_assert_eq!(b.canonical().word(), naive_canonical(&w));
        prop_assert_eq!(moved.t(), b.t());
    }

    #[test]
    fn parse_agrees_with_naive_validity(code in any::<u64>(), d in 1usize..=12) {
        let mut c = code;
        let w: String = (0..d).map(|_| { let s = SYMBOLS[(c % 4) as usize]; c /= 4; s }).collect();
        let chars: Vec<char> = w.chars().collect();
        prop_assert_eq!(CycleBoundary::parse(&w).is_ok(), valid(&chars));
    }
}
