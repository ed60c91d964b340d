//! Small posets and lattices up to isomorphism.
//!
//! Posets are generated as naturally labelled posets (every element is added
//! above a down-closed set of earlier elements) and reduced to a canonical
//! code: the least upper-triangular order matrix over all linear extensions.
//! Lattices with `n ≥ 2` elements are a bounded extension of a poset on
//! `n - 2` points.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::KitError;
use crate::lattice::FiniteLattice;
use crate::poset::Poset;

/// Largest lattice size accepted by [`enumerate_lattices`].
pub const MAX_LATTICE_SIZE: usize = 8;
/// Largest poset size accepted by [`enumerate_posets`].
pub const MAX_POSET_SIZE: usize = 6;

/// Strict down-sets as bitmasks: bit `y` of `below[x]` means `y < x`.
type Order = Vec<u16>;

/// All naturally labelled posets on `n` points.
fn natural_posets(n: usize) -> Vec<Order> {
    let mut out = Vec::new();
    let mut below: Order = Vec::with_capacity(n);
    fn grow(n: usize, below: &mut Order, out: &mut Vec<Order>) {
        let k = below.len();
        if k == n {
            out.push(below.clone());
            return;
        }
        for set in 0u16..(1 << k) {
            let closed = (0..k).all(|y| set & (1 << y) == 0 || below[y] & !set == 0);
            if closed {
                below.push(set);
                grow(n, below, out);
                below.pop();
            }
        }
    }
    grow(n, &mut below, &mut out);
    out
}

/// Canonical code of an order: the least bit string of `x < y` flags over
/// pairs `(p, q)`, `p < q` positions, taken over all linear extensions.
/// Returns the code and one extension realizing it.
fn canonical_code(below: &Order) -> (u64, Vec<usize>) {
    let n = below.len();
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut seq = Vec::with_capacity(n);
    fn walk(below: &Order, placed: u16, seq: &mut Vec<usize>, best: &mut Option<(u64, Vec<usize>)>) {
        let n = below.len();
        if seq.len() == n {
            let mut code = 0u64;
            for q in 0..n {
                for p in 0..q {
                    code = (code << 1) | u64::from(below[seq[q]] >> seq[p] & 1);
                }
            }
            if best.as_ref().is_none_or(|(c, _)| code < *c) {
                *best = Some((code, seq.clone()));
            }
            return;
        }
        for x in 0..n {
            if placed & (1 << x) == 0 && below[x] & !placed == 0 {
                seq.push(x);
                walk(below, placed | (1 << x), seq, best);
                seq.pop();
            }
        }
    }
    walk(below, 0, &mut seq, &mut best);
    best.unwrap_or((0, Vec::new()))
}

/// Reorders an order along `seq` (new id `p` is old element `seq[p]`).
fn permute(below: &Order, seq: &[usize]) -> Order {
    let mut pos = vec![0usize; below.len()];
    for (p, &x) in seq.iter().enumerate() {
        pos[x] = p;
    }
    seq.iter()
        .map(|&x| {
            (0..below.len())
                .filter(|&y| below[x] & (1 << y) != 0)
                .fold(0u16, |acc, y| acc | (1 << pos[y]))
        })
        .collect()
}

fn cover_pairs(below: &Order) -> Vec<(usize, usize)> {
    let n = below.len();
    let mut covers = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if below[x] & (1 << y) != 0 && !(0..n).any(|z| below[x] & (1 << z) != 0 && below[z] & (1 << y) != 0) {
                covers.push((y, x));
            }
        }
    }
    covers.sort_unstable();
    covers
}

fn letter_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|k| {
            if n <= 26 {
                String::from(char::from(b'a' + k as u8))
            } else {
                format!("p{k}")
            }
        })
        .collect()
}

/// All posets on `n` points up to isomorphism, in canonical-code order.
/// Elements are labelled `a, b, c, …` along a linear extension.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>, KitError> {
    if n > MAX_POSET_SIZE {
        return Err(KitError::TooLarge {
            size: n,
            limit: MAX_POSET_SIZE,
        });
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for below in natural_posets(n) {
        let (code, seq) = canonical_code(&below);
        if seen.insert(code) {
            out.push((code, permute(&below, &seq)));
        }
    }
    out.sort_by_key(|(code, _)| *code);
    Ok(out
        .into_iter()
        .map(|(_, below)| Poset::from_ids(letter_labels(n), &cover_pairs(&below)).expect("generated order is valid"))
        .collect())
}

/// All posets with at most `max` points, smallest first.
pub fn enumerate_posets_up_to(max: usize) -> Result<Vec<Poset>, KitError> {
    let mut all = Vec::new();
    for n in 0..=max {
        all.extend(enumerate_posets(n)?);
    }
    Ok(all)
}

/// Adds a bottom (id 0) and a top (id m + 1) around a poset on `m` points.
fn bounded(middle: &Order) -> Order {
    let m = middle.len();
    let mut below = Vec::with_capacity(m + 2);
    below.push(0);
    for &set in middle {
        below.push((set << 1) | 1);
    }
    below.push(((1u32 << (m + 1)) - 1) as u16);
    below
}

/// Every pair has a least upper bound (enough for a finite bounded order).
fn has_joins(below: &Order) -> bool {
    let n = below.len();
    let up: Vec<u16> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| y == x || below[y] & (1 << x) != 0)
                .fold(0, |acc, y| acc | (1 << y))
        })
        .collect();
    for a in 0..n {
        for b in (a + 1)..n {
            let common = up[a] & up[b];
            let least = (0..n).any(|j| common & (1 << j) != 0 && common & !up[j] == 0);
            if !least {
                return false;
            }
        }
    }
    true
}

/// All lattices with `n` elements up to isomorphism, in canonical-code order.
/// Elements are labelled `x0, x1, …` along a linear extension, so `x0` is the
/// bottom and the last label is the top.
pub fn enumerate_lattices(n: usize) -> Result<Vec<FiniteLattice>, KitError> {
    if n > MAX_LATTICE_SIZE {
        return Err(KitError::TooLarge {
            size: n,
            limit: MAX_LATTICE_SIZE,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let orders: Vec<Order> = if n == 1 {
        vec![vec![0]]
    } else {
        natural_posets(n - 2).iter().map(bounded).collect()
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for below in orders {
        if !has_joins(&below) {
            continue;
        }
        let (code, seq) = canonical_code(&below);
        if seen.insert(code) {
            out.push((code, permute(&below, &seq)));
        }
    }
    out.sort_by_key(|(code, _)| *code);
    Ok(out
        .into_iter()
        .map(|(_, below)| {
            let labels = (0..n).map(|k| format!("x{k}")).collect();
            FiniteLattice::from_ids(labels, &cover_pairs(&below)).expect("generated order is a lattice")
        })
        .collect())
}
