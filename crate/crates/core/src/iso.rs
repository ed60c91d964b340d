//! Order isomorphism by backtracking.

use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::FiniteLattice;
use crate::poset::Poset;

/// Read access to a finite order.
pub trait Order {
    fn size(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn lower_cover_count(&self, x: usize) -> usize;
    fn upper_cover_count(&self, x: usize) -> usize;
}

impl Order for Poset {
    fn size(&self) -> usize {
        self.len()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        Poset::leq(self, a, b)
    }
    fn lower_cover_count(&self, x: usize) -> usize {
        self.lower_covers(x).len()
    }
    fn upper_cover_count(&self, x: usize) -> usize {
        self.upper_covers(x).len()
    }
}

impl Order for FiniteLattice {
    fn size(&self) -> usize {
        self.len()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        FiniteLattice::leq(self, a, b)
    }
    fn lower_cover_count(&self, x: usize) -> usize {
        self.lower_covers(x).len()
    }
    fn upper_cover_count(&self, x: usize) -> usize {
        self.upper_covers(x).len()
    }
}

/// Isomorphism-invariant signature of an element.
fn signature<O: Order>(o: &O, x: usize) -> [usize; 4] {
    let n = o.size();
    let below = (0..n).filter(|&y| o.leq(y, x)).count();
    let above = (0..n).filter(|&y| o.leq(x, y)).count();
    [o.lower_cover_count(x), o.upper_cover_count(x), below, above]
}

/// Finds the lexicographically least order isomorphism `p → q`, if any.
/// `map[x]` is the image of `x`.
pub fn order_isomorphism<P: Order, Q: Order>(p: &P, q: &Q) -> Option<Vec<usize>> {
    order_isomorphism_with(p, q, &[])
}

/// Like [`order_isomorphism`], with some images fixed in advance:
/// `fixed` holds `(x, image)` pairs.
pub fn order_isomorphism_with<P: Order, Q: Order>(p: &P, q: &Q, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = p.size();
    if n != q.size() {
        return None;
    }
    let sig_p: Vec<_> = (0..n).map(|x| signature(p, x)).collect();
    let sig_q: Vec<_> = (0..n).map(|x| signature(q, x)).collect();
    let mut sorted_p = sig_p.clone();
    let mut sorted_q = sig_q.clone();
    sorted_p.sort_unstable();
    sorted_q.sort_unstable();
    if sorted_p != sorted_q {
        return None;
    }

    const FREE: usize = usize::MAX;
    let mut map = vec![FREE; n];
    let mut used = vec![false; n];
    for &(x, y) in fixed {
        if sig_p[x] != sig_q[y] || used[y] {
            return None;
        }
        map[x] = y;
        used[y] = true;
    }
    for &(x, _) in fixed {
        for &(z, _) in fixed {
            if p.leq(x, z) != q.leq(map[x], map[z]) {
                return None;
            }
        }
    }

    fn extend<P: Order, Q: Order>(
        p: &P,
        q: &Q,
        x: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sig_p: &[[usize; 4]],
        sig_q: &[[usize; 4]],
    ) -> bool {
        let n = map.len();
        if x == n {
            return true;
        }
        if map[x] != FREE {
            return extend(p, q, x + 1, map, used, sig_p, sig_q);
        }
        for y in 0..n {
            if used[y] || sig_p[x] != sig_q[y] {
                continue;
            }
            let consistent = (0..n)
                .filter(|&z| map[z] != FREE)
                .all(|z| p.leq(x, z) == q.leq(y, map[z]) && p.leq(z, x) == q.leq(map[z], y));
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if extend(p, q, x + 1, map, used, sig_p, sig_q) {
                return true;
            }
            map[x] = FREE;
            used[y] = false;
        }
        false
    }

    if extend(p, q, 0, &mut map, &mut used, &sig_p, &sig_q) {
        Some(map)
    } else {
        None
    }
}

/// An order isomorphism between two posets, if one exists.
pub fn poset_isomorphic(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    order_isomorphism(p, q)
}

/// A lattice isomorphism (equivalently an order isomorphism), if one exists.
pub fn lattice_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    order_isomorphism(a, b)
}

/// Checks that `map` is an order isomorphism `p → q`.
pub fn is_order_isomorphism<P: Order, Q: Order>(p: &P, q: &Q, map: &[usize]) -> bool {
    let n = p.size();
    if n != q.size() || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    (0..n).all(|a| (0..n).all(|b| p.leq(a, b) == q.leq(map[a], map[b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};

    fn poset(labels: &[&str], covers: &[(&str, &str)]) -> Poset {
        Poset::new(
            labels.iter().map(|s| s.to_string()).collect::<Vec<String>>(),
            &covers
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn chain_is_not_antichain() {
        let chain = poset(&["a", "b"], &[("a", "b")]);
        let anti = poset(&["a", "b"], &[]);
        assert_eq!(poset_isomorphic(&chain, &anti), None);
    }

    #[test]
    fn identity_is_least() {
        let p = poset(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("d", "c")]);
        assert_eq!(poset_isomorphic(&p, &p), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn relabeled_copy() {
        let p = poset(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("d", "c")]);
        // w,x,y,z listed in a shuffled order.
        let q = poset(&["y", "w", "z", "x"], &[("w", "x"), ("x", "y"), ("z", "y")]);
        let map = poset_isomorphic(&p, &q).unwrap();
        let image: Vec<&str> = map.iter().map(|&y| q.label(y)).collect();
        assert_eq!(image, ["w", "x", "y", "z"]);
        assert!(is_order_isomorphism(&p, &q, &map));
    }

    #[test]
    fn fixed_images_are_respected() {
        let anti = poset(&["a", "b"], &[]);
        assert_eq!(order_isomorphism_with(&anti, &anti, &[(0, 1)]), Some(vec![1, 0]));
    }
}
