//! Finite lattices with precomputed order, join and meet tables.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use fixedbitset::FixedBitSet;

use crate::error::OrderError;
use crate::poset::{label_index, resolve_covers, OrderData, Poset};

/// A planar drawing: one x-coordinate per element, y is the element height.
/// Cover orderings are derived from the coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    x: Vec<i64>,
    upper_order: Vec<Vec<usize>>,
    lower_order: Vec<Vec<usize>>,
}

impl Embedding {
    pub fn x(&self, v: usize) -> i64 {
        self.x[v]
    }

    pub fn xs(&self) -> &[i64] {
        &self.x
    }

    /// Upper covers of `v`, left to right.
    pub fn upper_order(&self, v: usize) -> &[usize] {
        &self.upper_order[v]
    }

    /// Lower covers of `v`, left to right.
    pub fn lower_order(&self, v: usize) -> &[usize] {
        &self.lower_order[v]
    }
}

/// Compares the slopes dx1/dy1 and dx2/dy2 with positive `dy`.
fn slope_cmp(dx1: i64, dy1: i64, dx2: i64, dy2: i64) -> Ordering {
    (dx1 * dy2).cmp(&(dx2 * dy1))
}

/// A finite lattice. Ids are dense `0..n` in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    order: OrderData,
    join: Vec<u32>,
    meet: Vec<u32>,
    height: Vec<usize>,
    bottom: usize,
    top: usize,
    embedding: Option<Embedding>,
}

/// Validates a cover relation given by labels and derives the lattice tables.
pub fn validate_lattice(labels: Vec<String>, covers: &[(String, String)]) -> Result<FiniteLattice, OrderError> {
    FiniteLattice::new(labels, covers)
}

impl FiniteLattice {
    pub fn new(labels: Vec<String>, covers: &[(String, String)]) -> Result<Self, OrderError> {
        let index = label_index(&labels)?;
        let covers = resolve_covers(&index, covers)?;
        Self::from_ids(labels, &covers)
    }

    pub fn from_ids(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, OrderError> {
        let n = labels.len();
        if n == 0 {
            return Err(OrderError::Empty);
        }
        label_index(&labels)?;
        let order = OrderData::build(&labels, covers)?;

        let mut pos = vec![0usize; n];
        for (p, &x) in order.topo.iter().enumerate() {
            pos[x] = p;
        }
        let by_pos = |sets: &[FixedBitSet]| -> Vec<FixedBitSet> {
            sets.iter()
                .map(|s| {
                    let mut t = FixedBitSet::with_capacity(n);
                    for y in s.ones() {
                        t.insert(pos[y]);
                    }
                    t
                })
                .collect()
        };
        let up_pos = by_pos(&order.up);
        let down_pos = by_pos(&order.down);

        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        let mut buf = FixedBitSet::with_capacity(n);
        for a in 0..n {
            join[a * n + a] = a as u32;
            meet[a * n + a] = a as u32;
            for b in (a + 1)..n {
                let (j, m) = if order.up[a].contains(b) {
                    (b, a)
                } else if order.up[b].contains(a) {
                    (a, b)
                } else {
                    let no_bound = || OrderError::NotALattice(labels[a].clone(), labels[b].clone());
                    buf.clone_from(&up_pos[a]);
                    buf.intersect_with(&up_pos[b]);
                    let j = buf.ones().next().ok_or_else(no_bound)?;
                    if !buf.is_subset(&up_pos[order.topo[j]]) {
                        return Err(no_bound());
                    }
                    buf.clone_from(&down_pos[a]);
                    buf.intersect_with(&down_pos[b]);
                    let m = buf.ones().next_back().ok_or_else(no_bound)?;
                    if !buf.is_subset(&down_pos[order.topo[m]]) {
                        return Err(no_bound());
                    }
                    (order.topo[j], order.topo[m])
                };
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
            }
        }

        let mut height = vec![0usize; n];
        for &x in &order.topo {
            for &y in &order.upper[x] {
                height[y] = height[y].max(height[x] + 1);
            }
        }
        let bottom = order.topo[0];
        let top = order.topo[n - 1];
        Ok(Self {
            labels,
            order,
            join,
            meet,
            height,
            bottom,
            top,
            embedding: None,
        })
    }

    /// Attaches a drawing with the given x-coordinates.
    pub fn with_embedding(mut self, x: Vec<i64>) -> Self {
        assert_eq!(x.len(), self.len(), "one x-coordinate per element");
        let n = self.len();
        let mut upper_order = vec![Vec::new(); n];
        let mut lower_order = vec![Vec::new(); n];
        for v in 0..n {
            let mut ups = self.order.upper[v].clone();
            ups.sort_by(|&a, &b| {
                slope_cmp(
                    x[a] - x[v],
                    (self.height[a] - self.height[v]) as i64,
                    x[b] - x[v],
                    (self.height[b] - self.height[v]) as i64,
                )
                .then(a.cmp(&b))
            });
            upper_order[v] = ups;
            let mut downs = self.order.lower[v].clone();
            downs.sort_by(|&a, &b| {
                slope_cmp(
                    x[a] - x[v],
                    (self.height[v] - self.height[a]) as i64,
                    x[b] - x[v],
                    (self.height[v] - self.height[b]) as i64,
                )
                .then(a.cmp(&b))
            });
            lower_order[v] = downs;
        }
        self.embedding = Some(Embedding {
            x,
            upper_order,
            lower_order,
        });
        self
    }

    pub fn without_embedding(mut self) -> Self {
        self.embedding = None;
        self
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: a lattice has at least one element.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Map from label to id.
    pub fn label_map(&self) -> BTreeMap<&str, usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }

    /// Sorted covering pairs `(lower, upper)`; the position of a pair is its
    /// edge index.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.order.covers
    }

    pub fn edge_index(&self, lower: usize, upper: usize) -> Option<usize> {
        self.order.covers.binary_search(&(lower, upper)).ok()
    }

    pub fn is_cover(&self, lower: usize, upper: usize) -> bool {
        self.order.upper[lower].contains(&upper)
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.order.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.order.lower[x]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.order.up[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.order.down[x]
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.order.topo
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    /// Length of the longest chain from the bottom to `x`.
    pub fn height(&self, x: usize) -> usize {
        self.height[x]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Length of the lattice (height of the top).
    pub fn length(&self) -> usize {
        self.height[self.top]
    }

    pub fn is_chain(&self) -> bool {
        self.order.upper.iter().all(|u| u.len() <= 1)
    }

    /// True when every element of `↓x` is comparable with every other.
    pub fn down_set_is_chain(&self, x: usize) -> bool {
        let mut v = x;
        loop {
            match self.order.lower[v].as_slice() {
                [] => return true,
                [w] => v = *w,
                _ => return false,
            }
        }
    }

    pub fn up_set_is_chain(&self, x: usize) -> bool {
        let mut v = x;
        loop {
            match self.order.upper[v].as_slice() {
                [] => return true,
                [w] => v = *w,
                _ => return false,
            }
        }
    }

    /// A triple violating `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`, if any.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in b..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// The underlying order as a poset.
    pub fn as_poset(&self) -> Poset {
        Poset::from_ids(self.labels.clone(), &self.order.covers).expect("lattice order is a valid poset")
    }

    /// Same lattice with every label prefixed by `prefix`.
    pub fn with_prefix(&self, prefix: &str) -> Self {
        let mut out = self.clone();
        for l in &mut out.labels {
            *l = format!("{prefix}{l}");
        }
        out
    }

    /// Same lattice with new labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self, OrderError> {
        assert_eq!(labels.len(), self.len());
        label_index(&labels)?;
        let mut out = self.clone();
        out.labels = labels;
        Ok(out)
    }
}

/// Elements with exactly one lower cover, in id order.
pub fn join_irreducibles(lattice: &FiniteLattice) -> Vec<usize> {
    (0..lattice.len())
        .filter(|&x| lattice.lower_covers(x).len() == 1)
        .collect()
}

/// The join-irreducible elements with the induced order.
pub fn ji_poset(lattice: &FiniteLattice) -> Poset {
    let ji = join_irreducibles(lattice);
    let labels = ji.iter().map(|&x| lattice.label(x).to_string()).collect();
    Poset::from_leq(labels, |a, b| lattice.leq(ji[a], ji[b])).expect("induced order is valid")
}

/// The lattice of down-closed subsets of `poset`, ordered by inclusion.
///
/// Elements are sorted by size and then by their sorted member labels. A
/// down-set is labelled by its maximal elements joined with `_` (`bot` for the
/// empty set); if that is ambiguous every element is labelled `d<k>` instead.
pub fn downset_lattice(poset: &Poset) -> FiniteLattice {
    let n = poset.len();
    let topo = poset.topological_order().to_vec();
    let mut sets: Vec<Vec<bool>> = Vec::new();
    let mut current = vec![false; n];
    fn walk(poset: &Poset, topo: &[usize], k: usize, current: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if k == topo.len() {
            out.push(current.clone());
            return;
        }
        let x = topo[k];
        walk(poset, topo, k + 1, current, out);
        if poset.lower_covers(x).iter().all(|&y| current[y]) {
            current[x] = true;
            walk(poset, topo, k + 1, current, out);
            current[x] = false;
        }
    }
    walk(poset, &topo, 0, &mut current, &mut sets);

    let key = |s: &Vec<bool>| -> (usize, Vec<&str>) {
        let mut members: Vec<&str> = (0..n).filter(|&x| s[x]).map(|x| poset.label(x)).collect();
        members.sort_unstable();
        (members.len(), members)
    };
    sets.sort_by(|a, b| key(a).cmp(&key(b)));

    let index: BTreeMap<Vec<bool>, usize> = sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let mut covers = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        for x in 0..n {
            if !s[x] && poset.lower_covers(x).iter().all(|&y| s[y]) {
                let mut t = s.clone();
                t[x] = true;
                covers.push((i, index[&t]));
            }
        }
    }

    let mut labels: Vec<String> = sets
        .iter()
        .map(|s| {
            let maximal: Vec<&str> = (0..n)
                .filter(|&x| s[x] && poset.upper_covers(x).iter().all(|&y| !s[y]))
                .map(|x| poset.label(x))
                .collect();
            if maximal.is_empty() {
                "bot".to_string()
            } else {
                maximal.join("_")
            }
        })
        .collect();
    if label_index(&labels).is_err() {
        labels = (0..sets.len()).map(|k| format!("d{k}")).collect();
    }
    FiniteLattice::from_ids(labels, &covers).expect("down-sets of a poset form a lattice")
}

/// Labels for product pairs, falling back to id pairs if `a_b` is ambiguous.
fn pair_labels(a: &FiniteLattice, b: &FiniteLattice) -> Vec<String> {
    let nb = b.len();
    let labels: Vec<String> = (0..a.len() * nb)
        .map(|k| format!("{}_{}", a.label(k / nb), b.label(k % nb)))
        .collect();
    if label_index(&labels).is_ok() {
        labels
    } else {
        (0..a.len() * nb).map(|k| format!("p{}_{}", k / nb, k % nb)).collect()
    }
}

/// Componentwise product. The pair `(i, j)` has id `i * |b| + j`. When both
/// factors are chains the result carries the grid drawing in which the first
/// axis runs up-left and the second up-right.
pub fn direct_product(a: &FiniteLattice, b: &FiniteLattice) -> FiniteLattice {
    let nb = b.len();
    let id = |i: usize, j: usize| i * nb + j;
    let mut covers = Vec::new();
    for i in 0..a.len() {
        for j in 0..nb {
            for &i2 in a.upper_covers(i) {
                covers.push((id(i, j), id(i2, j)));
            }
            for &j2 in b.upper_covers(j) {
                covers.push((id(i, j), id(i, j2)));
            }
        }
    }
    let product = FiniteLattice::from_ids(pair_labels(a, b), &covers).expect("a product of lattices is a lattice");
    if a.is_chain() && b.is_chain() {
        let x = (0..a.len() * nb)
            .map(|k| b.height(k % nb) as i64 - a.height(k / nb) as i64)
            .collect();
        product.with_embedding(x)
    } else {
        product
    }
}

/// Glued sum `a ∔ b`: the top of `a` is identified with the bottom of `b`.
/// The identified element keeps its label from `a`.
pub fn glued_sum(a: &FiniteLattice, b: &FiniteLattice) -> Result<FiniteLattice, OrderError> {
    let mut labels = a.labels.clone();
    let mut map = vec![0usize; b.len()];
    for y in 0..b.len() {
        if y == b.bottom() {
            map[y] = a.top();
        } else {
            map[y] = labels.len();
            labels.push(b.label(y).to_string());
        }
    }
    let mut covers = a.covers().to_vec();
    covers.extend(b.covers().iter().map(|&(p, q)| (map[p], map[q])));
    let sum = FiniteLattice::from_ids(labels, &covers)?;
    match (a.embedding(), b.embedding()) {
        (Some(ea), Some(eb)) => {
            let dx = ea.x(a.top()) - eb.x(b.bottom());
            let mut x = ea.xs().to_vec();
            x.resize(sum.len(), 0);
            for y in 0..b.len() {
                x[map[y]] = eb.x(y) + dx;
            }
            Ok(sum.with_embedding(x))
        }
        _ => Ok(sum),
    }
}

/// The chain with `n` elements labelled `c0 < c1 < …`, drawn vertically.
pub fn chain(n: usize) -> FiniteLattice {
    assert!(n > 0, "a chain has at least one element");
    let labels = (0..n).map(|k| format!("c{k}")).collect();
    let covers: Vec<(usize, usize)> = (1..n).map(|k| (k - 1, k)).collect();
    FiniteLattice::from_ids(labels, &covers)
        .expect("a chain is a lattice")
        .with_embedding(vec![0; n])
}
