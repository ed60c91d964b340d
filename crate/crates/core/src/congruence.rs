//! Congruences of a finite lattice.
//!
//! A congruence is stored as a canonical block assignment: `block[x]` is the
//! least element id in the block of `x`. Principal congruences are generated
//! by union-find closure under the substitution property.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::CongruenceError;
use crate::lattice::FiniteLattice;

/// Largest host accepted by [`brute_force_congruences`].
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// A partition of the elements of a host lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Congruence {
    block: Vec<u32>,
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Self {
            block: (0..n as u32).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self { block: vec![0; n] }
    }

    /// Canonicalizes an arbitrary block labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut least: BTreeMap<usize, u32> = BTreeMap::new();
        for (x, &l) in labels.iter().enumerate() {
            least.entry(l).or_insert(x as u32);
        }
        Self {
            block: labels.iter().map(|l| least[l]).collect(),
        }
    }

    /// Builds a congruence from explicit blocks; elements not listed are
    /// singletons.
    pub fn from_blocks(n: usize, blocks: &[&[usize]]) -> Self {
        let mut labels: Vec<usize> = (0..n).collect();
        for b in blocks {
            if let Some(&first) = b.first() {
                for &x in b.iter() {
                    labels[x] = n + first;
                }
            }
        }
        Self::from_labels(&labels)
    }

    pub fn len(&self) -> usize {
        self.block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block.is_empty()
    }

    /// Least element of the block containing `x`.
    pub fn representative(&self, x: usize) -> usize {
        self.block[x] as usize
    }

    pub fn assignment(&self) -> &[u32] {
        &self.block
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block[x] == self.block[y]
    }

    pub fn block_count(&self) -> usize {
        self.block.iter().enumerate().filter(|&(x, &r)| x as u32 == r).count()
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.len()
    }

    pub fn is_full(&self) -> bool {
        self.block.iter().all(|&r| r == 0)
    }

    /// True when every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.len()).all(|x| other.related(x, self.representative(x)))
    }

    /// Blocks as sorted member lists, ordered by least member.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut map: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (x, &r) in self.block.iter().enumerate() {
            map.entry(r).or_default().push(x);
        }
        map.into_values().collect()
    }

    /// Blocks rendered with element labels, e.g. `{0,a},{b,1}`.
    pub fn describe(&self, lattice: &FiniteLattice) -> String {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let names: Vec<&str> = b.iter().map(|&x| lattice.label(x)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        parts.join(",")
    }
}

/// Union-find over element ids that records successful merges.
struct Partition {
    parent: Vec<u32>,
}

impl Partition {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
        }
    }

    fn from_congruence(theta: &Congruence) -> Self {
        Self {
            parent: theta.block.clone(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut v = x;
        while self.parent[v] as usize != root {
            let next = self.parent[v] as usize;
            self.parent[v] = root as u32;
            v = next;
        }
        root
    }

    /// Merges the blocks of `x` and `y`; returns false if already merged.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // Keep the smaller id as root so roots are block minima.
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo as u32;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.parent.len();
        let block = (0..n).map(|x| self.find(x) as u32).collect();
        Congruence { block }
    }
}

/// Closes `partition` under the substitution property, given the pairs merged
/// so far. Every merged pair is combined with every element under join and
/// meet until nothing changes.
fn close(lattice: &FiniteLattice, mut partition: Partition, mut pending: Vec<(usize, usize)>) -> Congruence {
    let n = lattice.len();
    while let Some((x, y)) = pending.pop() {
        for z in 0..n {
            let (jx, jy) = (lattice.join(x, z), lattice.join(y, z));
            if partition.union(jx, jy) {
                pending.push((jx, jy));
            }
            let (mx, my) = (lattice.meet(x, z), lattice.meet(y, z));
            if partition.union(mx, my) {
                pending.push((mx, my));
            }
        }
    }
    partition.into_congruence()
}

/// The least congruence collapsing `a` and `b`.
pub fn principal_congruence(lattice: &FiniteLattice, a: usize, b: usize) -> Congruence {
    let mut partition = Partition::new(lattice.len());
    if partition.union(a, b) {
        close(lattice, partition, vec![(a, b)])
    } else {
        partition.into_congruence()
    }
}

/// Join in the congruence lattice: union of the partitions followed by
/// substitution closure.
pub fn join_congruences(lattice: &FiniteLattice, theta: &Congruence, phi: &Congruence) -> Congruence {
    let mut partition = Partition::from_congruence(theta);
    let mut pending = Vec::new();
    for x in 0..phi.len() {
        let r = phi.representative(x);
        if partition.union(x, r) {
            pending.push((x, r));
        }
    }
    close(lattice, partition, pending)
}

/// Meet in the congruence lattice (intersection of partitions).
pub fn meet_congruences(theta: &Congruence, phi: &Congruence) -> Congruence {
    let labels: Vec<usize> = (0..theta.len())
        .map(|x| theta.representative(x) * theta.len() + phi.representative(x))
        .collect();
    Congruence::from_labels(&labels)
}

/// Checks the substitution property. Comparing each element with its block
/// representative suffices because the relation is an equivalence.
pub fn is_congruence(lattice: &FiniteLattice, theta: &Congruence) -> bool {
    let n = lattice.len();
    (0..n).all(|x| {
        let r = theta.representative(x);
        (0..n).all(|z| {
            theta.related(lattice.join(x, z), lattice.join(r, z))
                && theta.related(lattice.meet(x, z), lattice.meet(r, z))
        })
    })
}

/// Principal congruences of all prime intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCongruences {
    /// Distinct congruences, in order of their first edge.
    pub classes: Vec<Congruence>,
    /// For every edge (cover index) the index of its congruence in `classes`.
    pub edge_class: Vec<usize>,
}

/// Groups edges that are opposite sides of a covering square. Opposite sides
/// `[o,a]`, `[b,i]` of a square `o ≺ a,b ≺ i` generate the same congruence, so
/// one closure per group suffices.
fn perspectivity_groups(lattice: &FiniteLattice) -> Vec<usize> {
    let covers = lattice.covers();
    let mut edges = Partition::new(covers.len());
    for o in 0..lattice.len() {
        let ups = lattice.upper_covers(o);
        for (k, &a) in ups.iter().enumerate() {
            for &b in &ups[k + 1..] {
                let i = lattice.join(a, b);
                if lattice.is_cover(a, i) && lattice.is_cover(b, i) {
                    let e = |p, q| lattice.edge_index(p, q).expect("cover");
                    edges.union(e(o, a), e(b, i));
                    edges.union(e(o, b), e(a, i));
                }
            }
        }
    }
    (0..covers.len()).map(|e| edges.find(e)).collect()
}

pub fn edge_congruences(lattice: &FiniteLattice) -> EdgeCongruences {
    let covers = lattice.covers();
    let groups = perspectivity_groups(lattice);
    let mut by_group: BTreeMap<usize, usize> = BTreeMap::new();
    let mut seen: BTreeMap<Congruence, usize> = BTreeMap::new();
    let mut classes = Vec::new();
    let mut edge_class = Vec::with_capacity(covers.len());
    for (e, &(a, b)) in covers.iter().enumerate() {
        let class = match by_group.get(&groups[e]) {
            Some(&c) => c,
            None => {
                let theta = principal_congruence(lattice, a, b);
                let c = *seen.entry(theta.clone()).or_insert_with(|| {
                    classes.push(theta);
                    classes.len() - 1
                });
                by_group.insert(groups[e], c);
                c
            }
        };
        edge_class.push(class);
    }
    EdgeCongruences { classes, edge_class }
}

/// `(edge, congruence)` for every distinct prime-interval congruence, keyed by
/// the first edge generating it.
pub fn prime_interval_congruences(lattice: &FiniteLattice) -> Vec<((usize, usize), Congruence)> {
    let ec = edge_congruences(lattice);
    let covers = lattice.covers();
    ec.classes
        .iter()
        .enumerate()
        .map(|(c, theta)| {
            let e = ec.edge_class.iter().position(|&k| k == c).expect("class has an edge");
            (covers[e], theta.clone())
        })
        .collect()
}

/// The lattice of all congruences of a host lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConLattice {
    members: Vec<Congruence>,
    join_irreducible: Vec<bool>,
}

impl ConLattice {
    /// Members sorted by decreasing block count, then by assignment; the
    /// identity comes first and the full congruence last.
    pub fn members(&self) -> &[Congruence] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, theta: &Congruence) -> Option<usize> {
        self.members.iter().position(|m| m == theta)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.members[i].refines(&self.members[j])
    }

    /// Indices of join-irreducible members (exactly one lower cover).
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.join_irreducible[i]).collect()
    }

    /// The congruence lattice as a finite lattice with labels `c0, c1, …`.
    pub fn to_lattice(&self) -> FiniteLattice {
        let n = self.len();
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        FiniteLattice::from_ids(labels, &self.cover_pairs()).expect("congruences form a lattice")
    }

    fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) && !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b)) {
                    covers.push((a, b));
                }
            }
        }
        covers
    }
}

fn sort_members(members: &mut [Congruence]) {
    members.sort_by(|a, b| b.block_count().cmp(&a.block_count()).then_with(|| a.cmp(b)));
}

fn finish(members: Vec<Congruence>) -> ConLattice {
    let mut members = members;
    sort_members(&mut members);
    let n = members.len();
    let mut con = ConLattice {
        members,
        join_irreducible: vec![false; n],
    };
    let mut lower_count = vec![0usize; n];
    for (_, b) in con.cover_pairs() {
        lower_count[b] += 1;
    }
    con.join_irreducible = lower_count.iter().map(|&c| c == 1).collect();
    con
}

/// All congruences: the join-closure of the identity and the prime-interval
/// congruences.
pub fn congruence_lattice(lattice: &FiniteLattice) -> ConLattice {
    let n = lattice.len();
    let generators = edge_congruences(lattice).classes;
    let mut found: BTreeSet<Congruence> = BTreeSet::new();
    found.insert(Congruence::identity(n));
    let mut frontier: Vec<Congruence> = vec![Congruence::identity(n)];
    while let Some(theta) = frontier.pop() {
        for g in &generators {
            if g.refines(&theta) {
                continue;
            }
            let joined = join_congruences(lattice, &theta, g);
            if found.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    finish(found.into_iter().collect())
}

/// Every partition satisfying the substitution property, by exhaustive
/// enumeration of restricted growth strings. Only for tiny hosts.
pub fn brute_force_congruences(lattice: &FiniteLattice) -> Result<Vec<Congruence>, CongruenceError> {
    let n = lattice.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(CongruenceError::TooLarge {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn walk(lattice: &FiniteLattice, k: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Congruence>) {
        let n = rgs.len();
        if k == n {
            // Direct definition: all related pairs, all third elements.
            let ok = (0..n).all(|x| {
                (0..n).all(|y| {
                    rgs[x] != rgs[y]
                        || (0..n).all(|z| {
                            rgs[lattice.join(x, z)] == rgs[lattice.join(y, z)]
                                && rgs[lattice.meet(x, z)] == rgs[lattice.meet(y, z)]
                        })
                })
            });
            if ok {
                out.push(Congruence::from_labels(rgs));
            }
            return;
        }
        for v in 0..=max + 1 {
            rgs[k] = v;
            walk(lattice, k + 1, max.max(v), rgs, out);
        }
    }
    if n > 0 {
        walk(lattice, 1, 0, &mut rgs, &mut out);
    }
    sort_members(&mut out);
    Ok(out)
}

/// The congruence lattice computed by [`brute_force_congruences`].
pub fn brute_force_con_lattice(lattice: &FiniteLattice) -> Result<ConLattice, CongruenceError> {
    Ok(finish(brute_force_congruences(lattice)?))
}

/// A pair `(a, b)` with `con(a, b) = theta`, scanning comparable pairs
/// `a ≤ b` in id order.
pub fn is_principal(lattice: &FiniteLattice, theta: &Congruence) -> Option<(usize, usize)> {
    let n = lattice.len();
    for a in 0..n {
        for b in a..n {
            let (lo, hi) = if lattice.leq(a, b) {
                (a, b)
            } else if lattice.leq(b, a) {
                (b, a)
            } else {
                continue;
            };
            if !theta.related(lo, hi) {
                continue;
            }
            if principal_congruence(lattice, lo, hi) == *theta {
                return Some((a, b));
            }
        }
    }
    None
}

/// Outcome of [`all_principal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Principality {
    AllPrincipal,
    /// The least (in member order) congruence without a generating pair.
    Counterexample(Congruence),
}

/// Decides whether every congruence is principal.
///
/// Uses the representation of a congruence by the join-irreducible
/// congruences below it: `con(a, b)` is the join of the edge congruences along
/// any maximal chain from `a` to `b`, so the sets of all principal congruences
/// are computed by one pass per lower endpoint.
pub fn all_principal(lattice: &FiniteLattice) -> Principality {
    let con = congruence_lattice(lattice);
    all_principal_in(lattice, &con)
}

pub fn all_principal_in(lattice: &FiniteLattice, con: &ConLattice) -> Principality {
    let n = lattice.len();
    let ec = edge_congruences(lattice);
    let k = ec.classes.len();
    let words = k.div_ceil(64).max(1);
    // below[c]: join-irreducibles (edge classes) refined by class c.
    let mut below = vec![0u64; k * words];
    for c in 0..k {
        for d in 0..k {
            if ec.classes[d].refines(&ec.classes[c]) {
                below[c * words + d / 64] |= 1 << (d % 64);
            }
        }
    }
    let mut principal: BTreeSet<Vec<u64>> = BTreeSet::new();
    let topo = lattice.topological_order();
    let mut sets = vec![0u64; n * words];
    let mut reached = vec![false; n];
    for a in 0..n {
        reached.iter_mut().for_each(|r| *r = false);
        reached[a] = true;
        sets[a * words..(a + 1) * words].iter_mut().for_each(|w| *w = 0);
        principal.insert(sets[a * words..(a + 1) * words].to_vec());
        for &b in topo {
            if b == a || !lattice.leq(a, b) {
                continue;
            }
            let c = *lattice
                .lower_covers(b)
                .iter()
                .find(|&&c| lattice.leq(a, c))
                .expect("b > a has a lower cover above a");
            debug_assert!(reached[c]);
            let e = lattice.edge_index(c, b).expect("cover");
            let class = ec.edge_class[e];
            for w in 0..words {
                sets[b * words + w] = sets[c * words + w] | below[class * words + w];
            }
            reached[b] = true;
            principal.insert(sets[b * words..(b + 1) * words].to_vec());
        }
    }
    for theta in con.members() {
        let mut set = vec![0u64; words];
        for (d, g) in ec.classes.iter().enumerate() {
            if g.refines(theta) {
                set[d / 64] |= 1 << (d % 64);
            }
        }
        if !principal.contains(&set) {
            return Principality::Counterexample(theta.clone());
        }
    }
    Principality::AllPrincipal
}
