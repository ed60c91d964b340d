//! Certification checks: semimodularity, planarity, `Con L ≅ D` and the
//! principal witnesses.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::congruence::{congruence_lattice, join_congruences, principal_congruence, ConLattice, Congruence};
use crate::error::KitError;
use crate::iso::{is_order_isomorphism, order_isomorphism};
use crate::kit::ColoredLattice;
use crate::lattice::{ji_poset, join_irreducibles, FiniteLattice};
use crate::poset::Poset;

/// Largest lattice accepted by [`is_planar_dimension2`].
pub const DIMENSION_LIMIT: usize = 12;

/// A pair `(a, b)` with `a ∧ b ≺ a` but `b` not covered by `a ∨ b`.
pub fn semimodularity_witness(lattice: &FiniteLattice) -> Option<(usize, usize)> {
    let n = lattice.len();
    for a in 0..n {
        for b in 0..n {
            let m = lattice.meet(a, b);
            if m != a && lattice.is_cover(m, a) {
                let j = lattice.join(a, b);
                if !lattice.is_cover(b, j) {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

pub fn is_semimodular(lattice: &FiniteLattice) -> bool {
    semimodularity_witness(lattice).is_none()
}

/// Why a stored drawing is not planar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanarityFailure {
    NoEmbedding,
    /// Two elements drawn at the same point.
    SharedPosition(usize, usize),
    /// An element drawn in the interior of an edge.
    VertexOnEdge {
        vertex: usize,
        edge: (usize, usize),
    },
    /// Two edges meeting outside a shared endpoint.
    Crossing((usize, usize), (usize, usize)),
    /// Two upper covers of an element leave it with the same slope.
    SlopeTie {
        vertex: usize,
        covers: (usize, usize),
    },
}

pub(crate) type Point = (i64, i64);

fn orient(p: Point, q: Point, r: Point) -> i64 {
    let v = (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
    v.signum()
}

fn on_segment(p: Point, q: Point, r: Point) -> bool {
    orient(p, q, r) == 0 && r.0 >= p.0.min(q.0) && r.0 <= p.0.max(q.0) && r.1 >= p.1.min(q.1) && r.1 <= p.1.max(q.1)
}

/// Closed segments `pq` and `rs` intersect.
fn segments_meet(p: Point, q: Point, r: Point, s: Point) -> bool {
    let (d1, d2, d3, d4) = (orient(r, s, p), orient(r, s, q), orient(p, q, r), orient(p, q, s));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(r, s, p) || on_segment(r, s, q) || on_segment(p, q, r) || on_segment(p, q, s)
}

/// Two straight edges `pq`, `rs` (drawn at distinct element positions) meet
/// somewhere other than a shared endpoint.
pub(crate) fn edges_conflict(p: Point, q: Point, r: Point, s: Point) -> bool {
    let common = if p == r || p == s {
        Some((p, q, if p == r { s } else { r }))
    } else if q == r || q == s {
        Some((q, p, if q == r { s } else { r }))
    } else {
        None
    };
    match common {
        // Edges from a common endpoint only fail if they overlap.
        Some((c, e, f)) => orient(c, e, f) == 0 && (on_segment(c, e, f) || on_segment(c, f, e)),
        None => segments_meet(p, q, r, s),
    }
}

/// Checks the stored drawing with `y = height`: distinct points, no element
/// inside an edge, no two edges meeting except at a shared endpoint, and a
/// strict left-to-right order of the upper covers of every element.
pub fn check_embedding_planarity(lattice: &FiniteLattice) -> Result<(), PlanarityFailure> {
    let emb = lattice.embedding().ok_or(PlanarityFailure::NoEmbedding)?;
    let n = lattice.len();
    let point = |v: usize| (emb.x(v), lattice.height(v) as i64);

    let mut at: BTreeMap<Point, usize> = BTreeMap::new();
    for v in 0..n {
        if let Some(&w) = at.get(&point(v)) {
            return Err(PlanarityFailure::SharedPosition(w, v));
        }
        at.insert(point(v), v);
    }

    for v in 0..n {
        let ups = emb.upper_order(v);
        for w in ups.windows(2) {
            let (a, b) = (point(w[0]), point(w[1]));
            let p = point(v);
            let cross = (a.0 - p.0) * (b.1 - p.1) - (b.0 - p.0) * (a.1 - p.1);
            if cross >= 0 {
                return Err(PlanarityFailure::SlopeTie {
                    vertex: v,
                    covers: (w[0], w[1]),
                });
            }
        }
    }

    let height = lattice.length();
    let mut by_height: Vec<Vec<usize>> = vec![Vec::new(); height + 1];
    for v in 0..n {
        by_height[lattice.height(v)].push(v);
    }
    // Edges bucketed by the unit height bands they span.
    let mut bands: Vec<Vec<(usize, usize)>> = vec![Vec::new(); height.max(1)];
    for &(a, b) in lattice.covers() {
        let (ha, hb) = (lattice.height(a), lattice.height(b));
        for h in ha..hb {
            bands[h].push((a, b));
        }
        for level in &by_height[ha + 1..hb] {
            for &v in level {
                if on_segment(point(a), point(b), point(v)) {
                    return Err(PlanarityFailure::VertexOnEdge {
                        vertex: v,
                        edge: (a, b),
                    });
                }
            }
        }
    }
    for band in &bands {
        for (k, &e) in band.iter().enumerate() {
            for &f in &band[k + 1..] {
                let crossing = edges_conflict(point(e.0), point(e.1), point(f.0), point(f.1));
                if crossing {
                    return Err(PlanarityFailure::Crossing(e, f));
                }
            }
        }
    }
    Ok(())
}

/// Decides whether the order has dimension at most two by searching for a
/// linear extension whose conjugate (incomparable pairs reversed) is also a
/// linear extension. For finite lattices this is planarity.
pub fn is_planar_dimension2(lattice: &FiniteLattice) -> Result<bool, KitError> {
    let n = lattice.len();
    if n > DIMENSION_LIMIT {
        return Err(KitError::TooLarge {
            size: n,
            limit: DIMENSION_LIMIT,
        });
    }
    let mut seq = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    fn conjugate_is_linear(lattice: &FiniteLattice, seq: &[usize]) -> bool {
        let n = seq.len();
        let mut pos = vec![0usize; n];
        for (p, &x) in seq.iter().enumerate() {
            pos[x] = p;
        }
        // Second order: a before b iff a < b, or a ∥ b and a after b in seq.
        let before =
            |a: usize, b: usize| lattice.lt(a, b) || (!lattice.leq(b, a) && !lattice.leq(a, b) && pos[a] > pos[b]);
        (0..n).all(|a| (0..n).all(|b| !before(a, b) || (0..n).all(|c| !before(b, c) || before(a, c))))
    }
    fn walk(lattice: &FiniteLattice, seq: &mut Vec<usize>, placed: &mut Vec<bool>) -> bool {
        let n = placed.len();
        if seq.len() == n {
            return conjugate_is_linear(lattice, seq);
        }
        for x in 0..n {
            if !placed[x] && lattice.lower_covers(x).iter().all(|&y| placed[y]) {
                placed[x] = true;
                seq.push(x);
                if walk(lattice, seq, placed) {
                    return true;
                }
                seq.pop();
                placed[x] = false;
            }
        }
        false
    }
    Ok(walk(lattice, &mut seq, &mut placed))
}

/// A verified isomorphism `D → Con L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConIsomorphism {
    pub con: ConLattice,
    /// For every element of `D`, the index of its image in `con.members()`.
    pub image: Vec<usize>,
    /// True if the map was read off the edge coloring, false if it came from
    /// a search over join-irreducible posets.
    pub from_colors: bool,
}

impl ConIsomorphism {
    pub fn congruence_of(&self, x: usize) -> &Congruence {
        &self.con.members()[self.image[x]]
    }
}

/// Why `Con L ≅ D` could not be certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConIsoFailure {
    NotDistributive,
    SizeMismatch { con: usize, d: usize },
    JiMismatch { con: Box<Poset>, d: Box<Poset> },
}

/// Extends a map on join-irreducibles of `D` to all of `D` by joins.
fn extend_by_joins(
    lattice: &FiniteLattice,
    d: &FiniteLattice,
    con: &ConLattice,
    ji_image: &[(usize, Congruence)],
) -> Option<Vec<usize>> {
    let mut image = Vec::with_capacity(d.len());
    for x in 0..d.len() {
        let mut theta = Congruence::identity(lattice.len());
        for (p, g) in ji_image {
            if d.leq(*p, x) {
                theta = join_congruences(lattice, &theta, g);
            }
        }
        image.push(con.index_of(&theta)?);
    }
    let mut seen = vec![false; con.len()];
    for &i in &image {
        if seen[i] {
            return None;
        }
        seen[i] = true;
    }
    Some(image)
}

/// Certifies `Con L ≅ D`. With a coloring whose colors are the labels of
/// `Ji(D)` the map `p ↦ con(edge colored p)` is tried first; otherwise, or if
/// it fails, an isomorphism of the join-irreducible posets is searched.
pub fn check_con_isomorphic(
    lattice: &FiniteLattice,
    colors: Option<&ColoredLattice>,
    d: &FiniteLattice,
) -> Result<ConIsomorphism, ConIsoFailure> {
    if !d.is_distributive() {
        return Err(ConIsoFailure::NotDistributive);
    }
    let con = congruence_lattice(lattice);
    if con.len() != d.len() {
        return Err(ConIsoFailure::SizeMismatch {
            con: con.len(),
            d: d.len(),
        });
    }
    let d_ji = join_irreducibles(d);
    let con_ji = con.join_irreducibles();

    if let Some(colored) = colors {
        let mut ji_image = Vec::with_capacity(d_ji.len());
        for &p in &d_ji {
            match colored.edge_of_color(d.label(p)) {
                Some((a, b)) => ji_image.push((p, principal_congruence(lattice, a, b))),
                None => break,
            }
        }
        if ji_image.len() == d_ji.len() {
            let images: Option<Vec<usize>> = ji_image.iter().map(|(_, g)| con.index_of(g)).collect();
            let order_ok = images.as_ref().is_some_and(|idx| {
                let mut sorted = idx.clone();
                sorted.sort_unstable();
                sorted.dedup();
                sorted.len() == idx.len()
                    && idx.iter().all(|i| con_ji.contains(i))
                    && (0..idx.len())
                        .all(|a| (0..idx.len()).all(|b| d.leq(d_ji[a], d_ji[b]) == con.leq(idx[a], idx[b])))
            });
            if order_ok && con_ji.len() == d_ji.len() {
                if let Some(image) = extend_by_joins(lattice, d, &con, &ji_image) {
                    return Ok(ConIsomorphism {
                        con,
                        image,
                        from_colors: true,
                    });
                }
            }
        }
    }

    let con_lattice = con.to_lattice();
    let p_con = ji_poset(&con_lattice);
    let p_d = ji_poset(d);
    let Some(map) = order_isomorphism(&p_d, &p_con) else {
        return Err(ConIsoFailure::JiMismatch {
            con: Box::new(p_con),
            d: Box::new(p_d),
        });
    };
    debug_assert!(is_order_isomorphism(&p_d, &p_con, &map));
    let con_lattice_ji = join_irreducibles(&con_lattice);
    let ji_image: Vec<(usize, Congruence)> = d_ji
        .iter()
        .zip(&map)
        .map(|(&p, &k)| (p, con.members()[con_lattice_ji[k]].clone()))
        .collect();
    match extend_by_joins(lattice, d, &con, &ji_image) {
        Some(image) => Ok(ConIsomorphism {
            con,
            image,
            from_colors: false,
        }),
        None => Err(ConIsoFailure::JiMismatch {
            con: Box::new(p_con),
            d: Box::new(p_d),
        }),
    }
}

/// A witness pair `(0ₓ, 1ₓ)` of `L` for the element `x` of `D`, all by label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub element: String,
    pub lower: String,
    pub upper: String,
}

/// Why the witness check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessFailure {
    MissingWitness(String),
    UnknownElement(String),
    /// `con(0ₓ, 1ₓ)` differs from the congruence assigned to `x`.
    Mismatch(String),
}

/// Checks `con(0ₓ, 1ₓ) = iso(x)` for every element `x` of `D`.
pub fn check_witnesses(
    lattice: &FiniteLattice,
    d: &FiniteLattice,
    witnesses: &[Witness],
    iso: &ConIsomorphism,
) -> Result<(), WitnessFailure> {
    let by_element: BTreeMap<&str, &Witness> = witnesses.iter().map(|w| (w.element.as_str(), w)).collect();
    for x in 0..d.len() {
        let label = d.label(x);
        let w = by_element
            .get(label)
            .ok_or_else(|| WitnessFailure::MissingWitness(String::from(label)))?;
        let lo = lattice
            .index_of(&w.lower)
            .ok_or_else(|| WitnessFailure::UnknownElement(w.lower.clone()))?;
        let hi = lattice
            .index_of(&w.upper)
            .ok_or_else(|| WitnessFailure::UnknownElement(w.upper.clone()))?;
        if principal_congruence(lattice, lo, hi) != *iso.congruence_of(x) {
            return Err(WitnessFailure::Mismatch(String::from(label)));
        }
    }
    Ok(())
}

/// Two edges of the same color generating different congruences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorConflict {
    pub color: String,
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// Checks that all edges of one color generate one congruence.
pub fn check_color_soundness(colored: &ColoredLattice) -> Result<(), ColorConflict> {
    let lattice = colored.lattice();
    let classes = crate::congruence::edge_congruences(lattice);
    let mut first: BTreeMap<&str, usize> = BTreeMap::new();
    for (e, color) in colored.colors().iter().enumerate() {
        let f = *first.entry(color.as_str()).or_insert(e);
        if classes.edge_class[f] != classes.edge_class[e] {
            return Err(ColorConflict {
                color: color.clone(),
                first: lattice.covers()[f],
                second: lattice.covers()[e],
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{chain, direct_product, downset_lattice, validate_lattice};
    use alloc::string::ToString;

    fn lattice(labels: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
        validate_lattice(
            labels.iter().map(|s| s.to_string()).collect(),
            &covers
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn m3() -> FiniteLattice {
        lattice(
            &["0", "p", "q", "r", "1"],
            &[("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")],
        )
    }

    fn n5() -> FiniteLattice {
        lattice(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
    }

    #[test]
    fn semimodularity() {
        assert!(is_semimodular(&m3()));
        assert!(is_semimodular(&chain(4)));
        assert!(semimodularity_witness(&n5()).is_some());
    }

    #[test]
    fn grid_drawings() {
        let grid = direct_product(&chain(3), &chain(3));
        assert_eq!(check_embedding_planarity(&grid), Ok(()));
        assert_eq!(check_embedding_planarity(&chain(5)), Ok(()));
        assert_eq!(check_embedding_planarity(&m3()), Err(PlanarityFailure::NoEmbedding));
        // Mirror the middle row of the grid: its edges now cross.
        let mut x = grid.embedding().unwrap().xs().to_vec();
        for j in 0..3 {
            x[3 + j] = -x[3 + j];
        }
        let broken = grid.clone().with_embedding(x);
        assert!(matches!(
            check_embedding_planarity(&broken),
            Err(PlanarityFailure::Crossing(..)
                | PlanarityFailure::SharedPosition(..)
                | PlanarityFailure::SlopeTie { .. })
        ));
    }

    #[test]
    fn dimension_two() {
        assert_eq!(is_planar_dimension2(&m3()), Ok(true));
        assert_eq!(is_planar_dimension2(&chain(4)), Ok(true));
        let b3 = direct_product(&direct_product(&chain(2), &chain(2)), &chain(2));
        assert_eq!(is_planar_dimension2(&b3), Ok(false));
    }

    #[test]
    fn con_isomorphisms() {
        let c2 = chain(2);
        let iso = check_con_isomorphic(&m3(), None, &c2).unwrap();
        assert_eq!(iso.image, vec![0, 1]);
        let b2 = direct_product(&chain(2), &chain(2));
        assert!(check_con_isomorphic(&b2, None, &b2).is_ok());
        assert!(matches!(
            check_con_isomorphic(&chain(4), None, &b2),
            Err(ConIsoFailure::SizeMismatch { con: 8, d: 4 })
        ));
        let antichain = Poset::from_ids(["x".to_string(), "y".to_string(), "z".to_string()].to_vec(), &[]).unwrap();
        let b3 = downset_lattice(&antichain);
        let iso = check_con_isomorphic(&chain(4), None, &b3).unwrap();
        assert!(!iso.from_colors);
    }
}
