//! Finite partially ordered sets given by their covering pairs.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::OrderError;

/// Order data derived from a cover relation: cover lists, a topological
/// order, and the reflexive up-set of every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct OrderData {
    pub(crate) covers: Vec<(usize, usize)>,
    pub(crate) upper: Vec<Vec<usize>>,
    pub(crate) lower: Vec<Vec<usize>>,
    pub(crate) up: Vec<FixedBitSet>,
    pub(crate) down: Vec<FixedBitSet>,
    pub(crate) topo: Vec<usize>,
}

impl OrderData {
    /// Validates `covers` over `labels.len()` elements. Covers must be
    /// acyclic and irredundant.
    pub(crate) fn build(labels: &[String], covers: &[(usize, usize)]) -> Result<Self, OrderError> {
        let n = labels.len();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        let mut sorted = covers.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                let (a, b) = w[0];
                return Err(OrderError::RedundantCover(labels[a].clone(), labels[b].clone()));
            }
        }
        for &(a, b) in &sorted {
            if a == b {
                return Err(OrderError::CyclicCovers(labels[a].clone()));
            }
            upper[a].push(b);
            lower[b].push(a);
        }

        // Kahn's algorithm, smallest id first for a deterministic order.
        let mut indegree: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut ready: VecDeque<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = ready.pop_front() {
            topo.push(x);
            for &y in &upper[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.push_back(y);
                }
            }
        }
        if topo.len() != n {
            let stuck = (0..n).find(|&x| indegree[x] > 0).unwrap_or(0);
            return Err(OrderError::CyclicCovers(labels[stuck].clone()));
        }

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x);
            for &y in &upper[x] {
                set.union_with(&up[y]);
            }
            up[x] = set;
        }
        for &(a, b) in &sorted {
            if upper[a].iter().any(|&c| c != b && up[c].contains(b)) {
                return Err(OrderError::RedundantCover(labels[a].clone(), labels[b].clone()));
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in up[x].ones() {
                down[y].insert(x);
            }
        }
        Ok(Self {
            covers: sorted,
            upper,
            lower,
            up,
            down,
            topo,
        })
    }
}

pub(crate) fn label_index(labels: &[String]) -> Result<BTreeMap<String, usize>, OrderError> {
    let mut index = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(OrderError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

pub(crate) fn resolve_covers(
    index: &BTreeMap<String, usize>,
    covers: &[(String, String)],
) -> Result<Vec<(usize, usize)>, OrderError> {
    covers
        .iter()
        .map(|(a, b)| {
            let a = *index.get(a).ok_or_else(|| OrderError::UnknownLabel(a.clone()))?;
            let b = *index.get(b).ok_or_else(|| OrderError::UnknownLabel(b.clone()))?;
            Ok((a, b))
        })
        .collect()
}

/// A finite poset. Element ids follow input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    order: OrderData,
}

impl Poset {
    /// Builds a poset from labels and covering pairs given by label.
    pub fn new(labels: Vec<String>, covers: &[(String, String)]) -> Result<Self, OrderError> {
        let index = label_index(&labels)?;
        let covers = resolve_covers(&index, covers)?;
        Self::from_ids(labels, &covers)
    }

    pub fn from_ids(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, OrderError> {
        label_index(&labels)?;
        let order = OrderData::build(&labels, covers)?;
        Ok(Self { labels, order })
    }

    /// Builds the poset whose order is `leq` restricted to `n` elements; the
    /// covers are the transitive reduction.
    pub fn from_leq(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, OrderError> {
        let n = labels.len();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !leq(a, b) {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && leq(a, c) && leq(c, b));
                if !between {
                    covers.push((a, b));
                }
            }
        }
        Self::from_ids(labels, &covers)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

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

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.order.covers
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

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Reflexive up-set of `x`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.order.up[x]
    }

    /// Reflexive down-set of `x`.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.order.down[x]
    }

    /// A topological order of the elements (smallest id first among ties).
    pub fn topological_order(&self) -> &[usize] {
        &self.order.topo
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.order.upper[x].is_empty()
    }

    /// Elements comparable to no other element, in id order.
    pub fn isolated_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.order.upper[x].is_empty() && self.order.lower[x].is_empty())
            .collect()
    }

    /// The greatest element, if any.
    pub fn unit(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.order.down[x].count_ones(..) == self.len())
    }

    /// The least element, if any.
    pub fn zero(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.order.up[x].count_ones(..) == self.len())
    }

    /// The subposet on `keep` (ids in the given order) with the induced order.
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        Poset::from_leq(labels, |a, b| self.leq(keep[a], keep[b])).expect("an induced suborder is a valid order")
    }
}

/// Glued sum `p ∔ q`: the unit of `p` is identified with the zero of `q`.
/// Labels of `q` other than its zero must not clash with labels of `p`.
pub fn glued_sum(p: &Poset, q: &Poset) -> Result<Poset, OrderError> {
    let unit = p.unit().ok_or(OrderError::MissingBound)?;
    let zero = q.zero().ok_or(OrderError::MissingBound)?;
    let mut labels = p.labels.clone();
    let mut map = vec![0usize; q.len()];
    for y in 0..q.len() {
        if y == zero {
            map[y] = unit;
        } else {
            map[y] = labels.len();
            labels.push(q.labels[y].clone());
        }
    }
    let mut covers = p.covers().to_vec();
    covers.extend(q.covers().iter().map(|&(a, b)| (map[a], map[b])));
    Poset::from_ids(labels, &covers)
}
