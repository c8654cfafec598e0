//! Oracles for the canonical stream.
//!
//! Two assignments are renamings of each other exactly when they have the
//! same multiset of color incidence vectors (for each color, the set of
//! vertices whose list contains it). The stream may repeat a class, but it
//! must reach every class, and its members are exactly the raw assignments
//! in canonical form.

use std::collections::BTreeSet;

use chroma_core::assignments::{random_assignment, CanonicalEnumerator, ColorSet, SizeProfile};
use proptest::prelude::*;

fn incidence_multiset(lists: &[ColorSet]) -> Vec<u32> {
    let top = lists.iter().map(|l| l.bound()).max().unwrap_or(0);
    let mut out: Vec<u32> = (0..top)
        .map(|c| lists.iter().enumerate().filter(|(_, l)| l.contains(c)).fold(0, |m, (i, _)| m | 1 << i))
        .filter(|&m| m != 0)
        .collect();
    out.sort_unstable();
    out
}

/// Each list is some already-used colors plus the smallest unused ones.
fn is_canonical(lists: &[ColorSet]) -> bool {
    let mut used = 0usize;
    for l in lists {
        let fresh: Vec<usize> = l.iter().filter(|&c| c >= used).collect();
        if fresh.iter().enumerate().any(|(i, &c)| c != used + i) {
            return false;
        }
        used += fresh.len();
    }
    true
}

/// Number of renaming classes: multisets of nonempty vertex subsets
/// covering vertex `i` exactly `sizes[i]` times.
fn class_count(sizes: &[usize]) -> u64 {
    fn go(subset: u32, full: u32, need: &mut [usize]) -> u64 {
        if need.iter().all(|&x| x == 0) {
            return 1;
        }
        if subset > full {
            return 0;
        }
        let members: Vec<usize> = (0..need.len()).filter(|&i| subset >> i & 1 == 1).collect();
        let most = members.iter().map(|&i| need[i]).min().unwrap();
        let mut total = 0;
        for k in 0..=most {
            members.iter().for_each(|&i| need[i] -= k);
            total += go(subset + 1, full, need);
            members.iter().for_each(|&i| need[i] += k);
        }
        total
    }
    go(1, (1u32 << sizes.len()) - 1, &mut sizes.to_vec())
}

fn subsets_of_size(palette: usize, k: usize) -> Vec<ColorSet> {
    (0u64..1 << palette).filter(|m| m.count_ones() as usize == k).map(ColorSet).collect()
}

/// Every raw assignment over `0..palette` with the given sizes.
fn all_raw(sizes: &[usize], palette: usize, mut f: impl FnMut(&[ColorSet])) {
    fn go(choices: &[Vec<ColorSet>], cur: &mut Vec<ColorSet>, f: &mut impl FnMut(&[ColorSet])) {
        if cur.len() == choices.len() {
            f(cur);
            return;
        }
        for &s in &choices[cur.len()] {
            cur.push(s);
            go(choices, cur, f);
            cur.pop();
        }
    }
    let choices: Vec<Vec<ColorSet>> = sizes.iter().map(|&k| subsets_of_size(palette, k)).collect();
    go(&choices, &mut Vec::new(), &mut f);
}

fn stream(sizes: &[usize]) -> Vec<Vec<ColorSet>> {
    let profile = SizeProfile::new(sizes.to_vec()).unwrap();
    CanonicalEnumerator::natural(&profile).unwrap().iter().map(|a| a.lists).collect()
}

fn check_stream(sizes: &[usize]) -> Vec<Vec<ColorSet>> {
    let s = stream(sizes);
    let total: usize = sizes.iter().sum();
    let distinct: BTreeSet<&Vec<ColorSet>> = s.iter().collect();
    assert_eq!(distinct.len(), s.len(), "stream repeats an assignment");
    for l in &s {
        assert!(is_canonical(l), "{l:?}");
        for (list, &k) in l.iter().zip(sizes) {
            assert_eq!(list.len(), k);
            assert!(list.bound() <= total);
        }
    }
    let classes: BTreeSet<Vec<u32>> = s.iter().map(|l| incidence_multiset(l)).collect();
    assert_eq!(classes.len() as u64, class_count(sizes), "some renaming class is missed");
    let profile = SizeProfile::new(sizes.to_vec()).unwrap();
    assert_eq!(CanonicalEnumerator::natural(&profile).unwrap().count(), s.len() as u128);
    s
}

#[test]
fn p4_stream_equals_brute_force() {
    let sizes = [2, 3, 2, 2];
    let s = check_stream(&sizes);
    let mut raw = BTreeSet::new();
    all_raw(&sizes, 9, |l| {
        if is_canonical(l) {
            raw.insert(l.to_vec());
        }
    });
    assert_eq!(raw.len(), 673);
    assert_eq!(s.into_iter().collect::<BTreeSet<_>>(), raw);
}

#[test]
fn j1_stream_covers_every_class() {
    assert_eq!(check_stream(&[2, 3, 4, 3, 3]).len(), 274_392);
}

#[test]
fn two_two_order() {
    let got: Vec<Vec<Vec<usize>>> =
        stream(&[2, 2]).iter().map(|l| l.iter().map(|s| s.iter().collect()).collect()).collect();
    assert_eq!(
        got,
        vec![
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![0, 1], vec![0, 2]],
            vec![vec![0, 1], vec![1, 2]],
            vec![vec![0, 1], vec![2, 3]],
        ]
    );
}

/// For at most three vertices and total size at most 7, closing the stream
/// under renaming gives every assignment over `0..total`.
#[test]
fn small_profiles_are_complete() {
    let mut profiles = Vec::new();
    for n in 1..=3usize {
        let mut sizes = vec![1; n];
        loop {
            if sizes.iter().sum::<usize>() <= 7 {
                profiles.push(sizes.clone());
            }
            let Some(i) = sizes.iter().position(|&s| s < 7) else { break };
            sizes[i] += 1;
            sizes[..i].iter_mut().for_each(|s| *s = 1);
        }
    }
    for sizes in profiles {
        let total = sizes.iter().sum();
        let classes: BTreeSet<Vec<u32>> = check_stream(&sizes).iter().map(|l| incidence_multiset(l)).collect();
        let mut raw_classes = BTreeSet::new();
        all_raw(&sizes, total, |l| {
            raw_classes.insert(incidence_multiset(l));
        });
        assert_eq!(classes, raw_classes, "{sizes:?}");
    }
}

#[test]
fn partitions_cover_the_stream() {
    let profile = SizeProfile::new(vec![2, 3, 4, 3, 3]).unwrap();
    let e = CanonicalEnumerator::natural(&profile).unwrap();
    for depth in 0..=3 {
        let mut total = 0u64;
        for p in e.prefixes(depth) {
            let _ = e.visit_from::<()>(&p, |_| {
                total += 1;
                std::ops::ControlFlow::Continue(())
            });
        }
        assert_eq!(total as u128, e.count(), "depth {depth}");
    }
}

#[test]
fn lemma_stream_lengths() {
    for (sizes, expected) in [(vec![2, 4, 4, 3, 2, 2], 13_295_998u128), (vec![3, 4, 4, 3, 2, 2], 53_257_845)] {
        let profile = SizeProfile::new(sizes).unwrap();
        assert_eq!(CanonicalEnumerator::natural(&profile).unwrap().count(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn small_streams_cover_every_class(sizes in proptest::collection::vec(1usize..=3, 1..=4)) {
        check_stream(&sizes);
    }

    #[test]
    fn random_assignments_rename_into_stream(
        sizes in proptest::collection::vec(1usize..=3, 1..=4),
        extra in 0usize..6,
        seed in any::<u64>(),
    ) {
        let profile = SizeProfile::new(sizes.clone()).unwrap();
        let l = random_assignment(&profile, profile.max() + extra, seed).unwrap();
        let classes: BTreeSet<Vec<u32>> = stream(&sizes).iter().map(|l| incidence_multiset(l)).collect();
        prop_assert!(classes.contains(&incidence_multiset(&l.lists)));
    }

    #[test]
    fn vertex_order_preserves_classes(sizes in proptest::collection::vec(1usize..=3, 1..=4), r in 0usize..4) {
        let profile = SizeProfile::new(sizes.clone()).unwrap();
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        let k = order.len();
        order.rotate_left(r % k);
        let reordered: BTreeSet<Vec<u32>> = CanonicalEnumerator::new(&profile, &order)
            .unwrap()
            .iter()
            .map(|a| incidence_multiset(&a.lists))
            .collect();
        prop_assert_eq!(reordered.len() as u64, class_count(&sizes));
    }
}
