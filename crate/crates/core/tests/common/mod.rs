//! Independent brute-force oracles shared by the integration tests.

#![allow(dead_code, clippy::needless_range_loop)]

use princon_core::lattice::validate_lattice;
use princon_core::{FiniteLattice, Poset};

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
    v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

pub fn poset(labels: &[&str], covers: &[(&str, &str)]) -> Poset {
    Poset::new(names(labels), &pairs(covers)).unwrap()
}

pub fn lattice(labels: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
    validate_lattice(names(labels), &pairs(covers)).unwrap()
}

pub fn m3() -> FiniteLattice {
    lattice(
        &["0", "p", "q", "r", "1"],
        &[("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")],
    )
}

pub fn n5() -> FiniteLattice {
    lattice(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
}

/// The example poset with covers a ≺ b, b ≺ c, d ≺ c.
pub fn example_poset() -> Poset {
    poset(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("d", "c")])
}

/// A strict order on `n` points as a matrix `lt[a][b]`.
pub type Relation = Vec<Vec<bool>>;

/// Every strict partial order on `n` labelled points.
pub fn all_strict_orders(n: usize) -> Vec<Relation> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << slots.len()) {
        let mut lt = vec![vec![false; n]; n];
        for (k, &(a, b)) in slots.iter().enumerate() {
            lt[a][b] = mask >> k & 1 == 1;
        }
        let antisymmetric = (0..n).all(|a| (0..n).all(|b| !(lt[a][b] && lt[b][a])));
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(lt[a][b] && lt[b][c]) || lt[a][c])));
        if antisymmetric && transitive {
            out.push(lt);
        }
    }
    out
}

/// Least relation matrix code over all relabellings.
pub fn canonical_by_permutations(lt: &Relation) -> Vec<bool> {
    let n = lt.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    fn heap(k: usize, perm: &mut Vec<usize>, lt: &Relation, best: &mut Option<Vec<bool>>) {
        if k <= 1 {
            let n = perm.len();
            let code: Vec<bool> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| lt[perm[a]][perm[b]])
                .collect();
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, lt, best);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            perm.swap(j, k - 1);
        }
    }
    heap(n, &mut perm, lt, &mut best);
    best.unwrap_or_default()
}

/// Naive lattice test: every pair has a least upper bound and a greatest
/// lower bound, found by scanning all bounds.
pub fn naive_is_lattice(lt: &Relation) -> bool {
    let n = lt.len();
    if n == 0 {
        return false;
    }
    let le = |a: usize, b: usize| a == b || lt[a][b];
    (0..n).all(|a| {
        (0..n).all(|b| {
            let ub: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
            let lb: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
            ub.iter().any(|&j| ub.iter().all(|&c| le(j, c))) && lb.iter().any(|&m| lb.iter().all(|&c| le(c, m)))
        })
    })
}

/// Covering pairs of a strict order.
pub fn covers_of(lt: &Relation) -> Vec<(usize, usize)> {
    let n = lt.len();
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt[a][b] && !(0..n).any(|c| lt[a][c] && lt[c][b]) {
                covers.push((a, b));
            }
        }
    }
    covers
}

/// Lattices on `n ≤ 6` elements up to isomorphism, found by filtering all
/// orders on the `n - 2` middle points.
pub fn brute_force_lattice_count(n: usize) -> usize {
    if n <= 2 {
        return usize::from(n > 0);
    }
    let m = n - 2;
    let mut classes = std::collections::BTreeSet::new();
    for middle in all_strict_orders(m) {
        let mut lt = vec![vec![false; n]; n];
        for a in 0..m {
            for b in 0..m {
                lt[a + 1][b + 1] = middle[a][b];
            }
        }
        for x in 1..n {
            lt[0][x] = true;
        }
        for x in 0..n - 1 {
            lt[x][n - 1] = true;
        }
        if naive_is_lattice(&lt) {
            classes.insert(canonical_by_permutations(&middle));
        }
    }
    classes.len()
}

/// Posets on `n` points up to isomorphism, by filtering all relations.
pub fn brute_force_poset_count(n: usize) -> usize {
    all_strict_orders(n)
        .iter()
        .map(canonical_by_permutations)
        .collect::<std::collections::BTreeSet<_>>()
        .len()
}
