//! Building blocks of the construction: colored lattices with a planar
//! drawing, their boundary chains, M3 insertion into cells, gluing along
//! chains, colored grids and chains, and the eight-element gadget.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::congruence::edge_congruences;
use crate::enumerate::enumerate_lattices;
use crate::error::KitError;
use crate::lattice::{chain, direct_product, join_irreducibles, FiniteLattice};
use crate::verify::{check_embedding_planarity, edges_conflict, is_planar_dimension2, is_semimodular};

/// One of the four boundary sides of a planar drawing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    LowerLeft,
    LowerRight,
    UpperLeft,
    UpperRight,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::LowerLeft, Side::LowerRight, Side::UpperLeft, Side::UpperRight];

    pub fn name(self) -> &'static str {
        self.role().name()
    }

    pub fn role(self) -> Role {
        match self {
            Side::LowerLeft => Role::LowerLeft,
            Side::LowerRight => Role::LowerRight,
            Side::UpperLeft => Role::UpperLeft,
            Side::UpperRight => Role::UpperRight,
        }
    }

    pub fn from_name(name: &str) -> Option<Side> {
        Side::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Names of recorded boundary chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    N1,
    N2,
    S1,
    S2,
    R1,
    R2,
    R1Prime,
    LowerLeft,
    LowerRight,
    UpperLeft,
    UpperRight,
}

impl Role {
    pub const ALL: [Role; 11] = [
        Role::N1,
        Role::N2,
        Role::S1,
        Role::S2,
        Role::R1,
        Role::R2,
        Role::R1Prime,
        Role::LowerLeft,
        Role::LowerRight,
        Role::UpperLeft,
        Role::UpperRight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Role::N1 => "N1",
            Role::N2 => "N2",
            Role::S1 => "S1",
            Role::S2 => "S2",
            Role::R1 => "R1",
            Role::R2 => "R2",
            Role::R1Prime => "R1p",
            Role::LowerLeft => "lower_left",
            Role::LowerRight => "lower_right",
            Role::UpperLeft => "upper_left",
            Role::UpperRight => "upper_right",
        }
    }

    pub fn from_name(name: &str) -> Option<Role> {
        Role::ALL.into_iter().find(|r| r.name() == name)
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The boundary chain on one side of the stored drawing, bottom to top.
///
/// The left boundary follows leftmost upper covers from the bottom to the
/// top. Its lower-left part is the longest prefix of elements whose down-set
/// is a chain, its upper-left part the longest suffix of elements whose
/// up-set is a chain; the right sides are defined symmetrically.
pub fn side_chain(lattice: &FiniteLattice, side: Side) -> Result<Vec<usize>, KitError> {
    let emb = lattice.embedding().ok_or(KitError::NoEmbedding)?;
    let left = matches!(side, Side::LowerLeft | Side::UpperLeft);
    let mut path = vec![lattice.bottom()];
    let mut v = lattice.bottom();
    while v != lattice.top() {
        let ups = emb.upper_order(v);
        v = if left { ups[0] } else { ups[ups.len() - 1] };
        path.push(v);
    }
    Ok(match side {
        Side::LowerLeft | Side::LowerRight => path.into_iter().take_while(|&v| lattice.down_set_is_chain(v)).collect(),
        Side::UpperLeft | Side::UpperRight => {
            let skip = path.iter().take_while(|&&v| !lattice.up_set_is_chain(v)).count();
            path.split_off(skip)
        }
    })
}

/// A lattice with a planar drawing, a color on every edge and named
/// boundary chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredLattice {
    lattice: FiniteLattice,
    colors: Vec<String>,
    boundaries: BTreeMap<Role, Vec<usize>>,
}

impl ColoredLattice {
    /// `colors[e]` is the color of edge `e` (position in `lattice.covers()`).
    pub fn new(lattice: FiniteLattice, colors: Vec<String>) -> Result<Self, KitError> {
        if colors.len() != lattice.covers().len() {
            return Err(KitError::ColoringSize {
                colors: colors.len(),
                edges: lattice.covers().len(),
            });
        }
        Ok(Self {
            lattice,
            colors,
            boundaries: BTreeMap::new(),
        })
    }

    /// Colors every edge `(a, b)` with `color(a, b)`.
    pub fn from_fn(lattice: FiniteLattice, color: impl Fn(usize, usize) -> String) -> Self {
        let colors = lattice.covers().iter().map(|&(a, b)| color(a, b)).collect();
        Self {
            lattice,
            colors,
            boundaries: BTreeMap::new(),
        }
    }

    fn from_map(lattice: FiniteLattice, map: &BTreeMap<(usize, usize), String>) -> Self {
        Self::from_fn(lattice, |a, b| map[&(a, b)].clone())
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> FiniteLattice {
        self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn color(&self, lower: usize, upper: usize) -> Option<&str> {
        self.lattice.edge_index(lower, upper).map(|e| self.colors[e].as_str())
    }

    /// The first edge (in edge order) with the given color.
    pub fn edge_of_color(&self, color: &str) -> Option<(usize, usize)> {
        let e = self.colors.iter().position(|c| c == color)?;
        Some(self.lattice.covers()[e])
    }

    /// Distinct colors, sorted.
    pub fn color_names(&self) -> Vec<String> {
        self.colors
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    fn color_map(&self) -> BTreeMap<(usize, usize), String> {
        self.lattice
            .covers()
            .iter()
            .copied()
            .zip(self.colors.iter().cloned())
            .collect()
    }

    pub fn boundaries(&self) -> &BTreeMap<Role, Vec<usize>> {
        &self.boundaries
    }

    pub fn boundary(&self, role: Role) -> Option<&[usize]> {
        self.boundaries.get(&role).map(Vec::as_slice)
    }

    /// Records a named boundary; it must be a chain of consecutive covers.
    pub fn set_boundary(&mut self, role: Role, chain: Vec<usize>) -> Result<(), KitError> {
        check_cover_chain(&self.lattice, &chain)?;
        self.boundaries.insert(role, chain);
        Ok(())
    }

    pub fn side(&self, side: Side) -> Result<Vec<usize>, KitError> {
        side_chain(&self.lattice, side)
    }

    /// Colors along a chain of consecutive covers, bottom to top.
    pub fn chain_colors(&self, chain: &[usize]) -> Vec<String> {
        chain
            .windows(2)
            .map(|w| self.color(w[0], w[1]).unwrap_or_default().to_string())
            .collect()
    }

    pub fn side_colors(&self, side: Side) -> Result<Vec<String>, KitError> {
        Ok(self.chain_colors(&self.side(side)?))
    }

    /// Records the four sides of the drawing under their side roles.
    pub fn mark_sides(&mut self) -> Result<(), KitError> {
        for side in Side::ALL {
            let chain = self.side(side)?;
            self.boundaries.insert(side.role(), chain);
        }
        Ok(())
    }

    pub fn with_prefix(&self, prefix: &str) -> Self {
        Self {
            lattice: self.lattice.with_prefix(prefix),
            colors: self.colors.clone(),
            boundaries: self.boundaries.clone(),
        }
    }

    pub fn recolored(&self, f: impl Fn(&str) -> String) -> Self {
        Self {
            lattice: self.lattice.clone(),
            colors: self.colors.iter().map(|c| f(c)).collect(),
            boundaries: self.boundaries.clone(),
        }
    }

    pub fn clear_boundaries(&mut self) {
        self.boundaries.clear();
    }
}

fn check_cover_chain(lattice: &FiniteLattice, chain: &[usize]) -> Result<(), KitError> {
    for w in chain.windows(2) {
        if !lattice.is_cover(w[0], w[1]) {
            return Err(KitError::NotAChain(lattice.label(w[0]).to_string()));
        }
    }
    Ok(())
}

/// A chain with one edge per color, labelled `c0 < c1 < …`.
pub fn colored_chain(colors: &[String]) -> ColoredLattice {
    ColoredLattice::new(chain(colors.len() + 1), colors.to_vec()).expect("one color per edge")
}

/// The grid `X × Y` of two colored chains. The element `(i, j)` is labelled
/// `i_j`; the `X` axis runs up-left, the `Y` axis up-right, and every edge
/// parallel to an axis edge carries its color.
pub fn colored_grid(x_colors: &[String], y_colors: &[String]) -> ColoredLattice {
    let (nx, ny) = (x_colors.len() + 1, y_colors.len() + 1);
    let grid = direct_product(&chain(nx), &chain(ny));
    let labels = (0..nx * ny).map(|k| format!("{}_{}", k / ny, k % ny)).collect();
    let grid = grid.relabeled(labels).expect("grid labels are distinct");
    ColoredLattice::from_fn(grid, |a, b| {
        let (ia, ja) = (a / ny, a % ny);
        let (ib, _) = (b / ny, b % ny);
        if ib > ia {
            x_colors[ia].clone()
        } else {
            y_colors[ja].clone()
        }
    })
}

/// A cell named by its bottom and top label, and the label of the element
/// to be inserted into it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub bottom: String,
    pub top: String,
    pub eye: String,
}

impl Cell {
    pub fn new(bottom: impl Into<String>, top: impl Into<String>, eye: impl Into<String>) -> Self {
        Self {
            bottom: bottom.into(),
            top: top.into(),
            eye: eye.into(),
        }
    }
}

/// Inserts a new element into one cell, turning it into an M3.
pub fn m3_insert(colored: &ColoredLattice, cell: &Cell) -> Result<ColoredLattice, KitError> {
    m3_insert_many(colored, core::slice::from_ref(cell))
}

/// Inserts an element into each of the given cells of the drawing. A cell is
/// a covering square `o ≺ a, b ≺ i` whose sides are neighbours around both
/// `o` and `i` in the drawing. The new element `m` is drawn between `a` and
/// `b`; `[o, m]` gets the color of `[o, a]` and `[m, i]` that of `[a, i]`,
/// where `a` is the left corner.
pub fn m3_insert_many(colored: &ColoredLattice, cells: &[Cell]) -> Result<ColoredLattice, KitError> {
    let lattice = colored.lattice();
    let emb = lattice.embedding().ok_or(KitError::NoEmbedding)?;
    let index = lattice.label_map();
    let find = |label: &str| {
        index
            .get(label)
            .copied()
            .ok_or_else(|| KitError::MissingElement(label.to_string()))
    };

    let mut used = BTreeSet::new();
    let mut placed = Vec::with_capacity(cells.len());
    for cell in cells {
        let (o, i) = (find(&cell.bottom)?, find(&cell.top)?);
        let between: Vec<usize> = lattice
            .upper_covers(o)
            .iter()
            .copied()
            .filter(|&c| lattice.is_cover(c, i))
            .collect();
        if between.len() != 2 || !used.insert((o, i)) {
            return Err(KitError::NotASquare(cell.bottom.clone(), cell.top.clone()));
        }
        let pos = |order: &[usize], v: usize| order.iter().position(|&w| w == v).expect("cover is listed");
        let (up, down) = (emb.upper_order(o), emb.lower_order(i));
        let (pa, pb) = (pos(up, between[0]), pos(up, between[1]));
        let (qa, qb) = (pos(down, between[0]), pos(down, between[1]));
        if pa.abs_diff(pb) != 1 || qa.abs_diff(qb) != 1 {
            return Err(KitError::NotACell(cell.bottom.clone()));
        }
        let (a, b) = if pa < pb {
            (between[0], between[1])
        } else {
            (between[1], between[0])
        };
        placed.push((o, a, b, i));
    }

    let scale = if placed.iter().all(|&(_, a, b, _)| (emb.x(a) + emb.x(b)) % 2 == 0) {
        1
    } else {
        2
    };
    let n = lattice.len();
    let mut labels = lattice.labels().to_vec();
    let mut x: Vec<i64> = emb.xs().iter().map(|&v| v * scale).collect();
    let mut map = colored.color_map();
    let mut covers: Vec<(usize, usize)> = lattice.covers().to_vec();
    for (k, (&(o, a, b, i), cell)) in placed.iter().zip(cells).enumerate() {
        let m = n + k;
        labels.push(cell.eye.clone());
        x.push((emb.x(a) + emb.x(b)) * scale / 2);
        covers.push((o, m));
        covers.push((m, i));
        map.insert((o, m), map[&(o, a)].clone());
        map.insert((m, i), map[&(a, i)].clone());
    }
    let grown = FiniteLattice::from_ids(labels, &covers)?.with_embedding(x);
    let mut out = ColoredLattice::from_map(grown, &map);
    out.boundaries = colored.boundaries.clone();
    Ok(out)
}

/// The grid `X × Y` with an element inserted into every cell whose two
/// axis colors agree. Eyes are labelled `m<i>_<j>`.
pub fn eyed_grid(x_colors: &[String], y_colors: &[String]) -> Result<ColoredLattice, KitError> {
    let grid = colored_grid(x_colors, y_colors);
    let cells = matching_cells(x_colors, y_colors, grid_cell);
    m3_insert_many(&grid, &cells)
}

/// The cell of a [`colored_grid`] with bottom corner `(i, j)`.
pub fn grid_cell(i: usize, j: usize) -> Cell {
    Cell::new(format!("{i}_{j}"), format!("{}_{}", i + 1, j + 1), format!("m{i}_{j}"))
}

/// Cells `(i, j)` with `x[i] == y[j]`, in row-major order.
pub fn matching_cells(x_colors: &[String], y_colors: &[String], cell: impl Fn(usize, usize) -> Cell) -> Vec<Cell> {
    let mut cells = Vec::new();
    for (i, cx) in x_colors.iter().enumerate() {
        for (j, cy) in y_colors.iter().enumerate() {
            if cx == cy {
                cells.push(cell(i, j));
            }
        }
    }
    cells
}

/// Hall–Dilworth gluing: the chain filter `filter` of `lower` is identified,
/// bottom to top, with the chain ideal `ideal` of `upper`. Identified
/// elements keep their labels from `lower`; ids of `lower` come first. The
/// drawing of `upper` is translated onto the glued chain when the two chains
/// are drawn with the same steps, otherwise the result has no drawing.
pub fn glue(
    lower: &ColoredLattice,
    filter: &[usize],
    upper: &ColoredLattice,
    ideal: &[usize],
) -> Result<ColoredLattice, KitError> {
    let (a, b) = (lower.lattice(), upper.lattice());
    if filter.len() != ideal.len() || filter.is_empty() {
        return Err(KitError::LengthMismatch(filter.len(), ideal.len()));
    }
    check_cover_chain(a, filter)?;
    check_cover_chain(b, ideal)?;
    if a.up_set(filter[0]).count_ones(..) != filter.len() {
        return Err(KitError::NotAFilter(a.label(filter[0]).to_string()));
    }
    let ideal_top = ideal[ideal.len() - 1];
    if b.down_set(ideal_top).count_ones(..) != ideal.len() {
        return Err(KitError::NotAnIdeal(b.label(ideal_top).to_string()));
    }
    for k in 1..filter.len() {
        let ca = lower.color(filter[k - 1], filter[k]).unwrap_or_default();
        let cb = upper.color(ideal[k - 1], ideal[k]).unwrap_or_default();
        if ca != cb {
            return Err(KitError::ColorMismatch(
                a.label(filter[k - 1]).to_string(),
                a.label(filter[k]).to_string(),
                ca.to_string(),
                cb.to_string(),
            ));
        }
    }

    let mut labels = a.labels().to_vec();
    let mut map = vec![usize::MAX; b.len()];
    for (&f, &g) in filter.iter().zip(ideal) {
        map[g] = f;
    }
    for y in 0..b.len() {
        if map[y] == usize::MAX {
            map[y] = labels.len();
            labels.push(b.label(y).to_string());
        }
    }
    let mut colors = lower.color_map();
    for (&(p, q), c) in b.covers().iter().zip(upper.colors()) {
        colors.entry((map[p], map[q])).or_insert_with(|| c.clone());
    }
    let covers: Vec<(usize, usize)> = colors.keys().copied().collect();
    let glued = FiniteLattice::from_ids(labels, &covers)?;

    let glued = match (a.embedding(), b.embedding()) {
        (Some(ea), Some(eb)) => {
            let same_shape =
                (1..filter.len()).all(|k| ea.x(filter[k]) - ea.x(filter[k - 1]) == eb.x(ideal[k]) - eb.x(ideal[k - 1]));
            if same_shape {
                let dx = ea.x(filter[0]) - eb.x(ideal[0]);
                let mut x = ea.xs().to_vec();
                x.resize(glued.len(), 0);
                for y in 0..b.len() {
                    x[map[y]] = eb.x(y) + dx;
                }
                glued.with_embedding(x)
            } else {
                glued
            }
        }
        _ => glued,
    };
    let mut out = ColoredLattice::from_map(glued, &colors);
    // Named roles survive; side roles are recomputed by callers.
    let named = |r: &Role| {
        !matches!(
            r,
            Role::LowerLeft | Role::LowerRight | Role::UpperLeft | Role::UpperRight
        )
    };
    for (&role, chain) in upper.boundaries().iter().filter(|(r, _)| named(r)) {
        out.boundaries.insert(role, chain.iter().map(|&v| map[v]).collect());
    }
    for (&role, chain) in lower.boundaries().iter().filter(|(r, _)| named(r)) {
        out.boundaries.insert(role, chain.clone());
    }
    Ok(out)
}

/// Glues `upper` on top of `lower`: the `side` of `lower`, without its first
/// `skip` edges, is identified with the bottom part of `upper_side` of
/// `upper`.
pub fn glue_sides(
    lower: &ColoredLattice,
    lower_side: Side,
    skip: usize,
    upper: &ColoredLattice,
    upper_side: Side,
) -> Result<ColoredLattice, KitError> {
    let filter = lower.side(lower_side)?;
    if skip >= filter.len() {
        return Err(KitError::LengthMismatch(filter.len(), skip));
    }
    let filter = &filter[skip..];
    let ideal = upper.side(upper_side)?;
    if ideal.len() < filter.len() {
        return Err(KitError::LengthMismatch(filter.len(), ideal.len()));
    }
    glue(lower, filter, upper, &ideal[..filter.len()])
}

/// The colors `{a ∈ Ji(D) : a ≤ x}` as ids of `D`, in id order.
pub fn compute_color_set(d: &FiniteLattice, x: usize) -> Vec<usize> {
    join_irreducibles(d).into_iter().filter(|&a| d.leq(a, x)).collect()
}

/// The witness chain: the glued sum over all `x ∈ D` (in id order) of a
/// chain colored by the labels of `compute_color_set(D, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalChain {
    pub chain: ColoredLattice,
    /// For every element `x` of `D`, the ids of `0ₓ` and `1ₓ` in the chain.
    pub segments: Vec<(usize, usize)>,
}

pub fn chain_for_principal_mode(d: &FiniteLattice) -> PrincipalChain {
    let mut colors = Vec::new();
    let mut segments = Vec::with_capacity(d.len());
    for x in 0..d.len() {
        let start = colors.len();
        colors.extend(compute_color_set(d, x).into_iter().map(|a| d.label(a).to_string()));
        segments.push((start, colors.len()));
    }
    PrincipalChain {
        chain: colored_chain(&colors),
        segments,
    }
}

/// The eight-element gadget: a planar semimodular lattice whose edges carry
/// two colors `u` and `v` with `con(u-edge) < con(v-edge)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetS8 {
    colored: ColoredLattice,
    rank: Option<usize>,
    skipped: usize,
}

impl GadgetS8 {
    /// Color of the edges generating the smaller congruence.
    pub const LOWER: &'static str = "u";
    /// Color of the edges generating the larger congruence.
    pub const UPPER: &'static str = "v";

    /// Validates a colored lattice as a gadget.
    pub fn from_colored(mut colored: ColoredLattice) -> Result<Self, KitError> {
        if let Some(problem) = gadget_violation(&colored) {
            return Err(KitError::InvalidGadget(problem));
        }
        colored.mark_sides()?;
        Ok(Self {
            colored,
            rank: None,
            skipped: 0,
        })
    }

    pub fn colored(&self) -> &ColoredLattice {
        &self.colored
    }

    /// Position of the gadget among all eight-element lattices in canonical
    /// order, when it was found by search.
    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    /// Lattices earlier in canonical order that have the required congruence
    /// structure but no drawing usable for gluing.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    /// A copy with labels prefixed and the colors `u`, `v` replaced.
    pub fn instance(&self, prefix: &str, lower: &str, upper: &str) -> ColoredLattice {
        self.colored.with_prefix(prefix).recolored(|c| {
            if c == Self::LOWER {
                lower.to_string()
            } else {
                upper.to_string()
            }
        })
    }
}

/// The two congruence classes of a lattice with exactly two distinct edge
/// congruences forming a chain, as a coloring.
fn two_chain_coloring(lattice: &FiniteLattice) -> Option<Vec<String>> {
    let ec = edge_congruences(lattice);
    if ec.classes.len() != 2 {
        return None;
    }
    let (c0, c1) = (&ec.classes[0], &ec.classes[1]);
    let lower = if c0.refines(c1) {
        0
    } else if c1.refines(c0) {
        1
    } else {
        return None;
    };
    Some(
        ec.edge_class
            .iter()
            .map(|&c| if c == lower { GadgetS8::LOWER } else { GadgetS8::UPPER }.to_string())
            .collect(),
    )
}

/// The drawing requirements used when gluing gadgets: lower-left and
/// upper-right sides step up-left by one, the lower-right side steps up-right
/// by one and carries both colors.
fn layout_ok(colored: &ColoredLattice) -> bool {
    let lattice = colored.lattice();
    let Some(emb) = lattice.embedding() else {
        return false;
    };
    let steps = |side: Side, dx: i64| -> Option<Vec<usize>> {
        let chain = colored.side(side).ok()?;
        let ok = chain.len() >= 2 && chain.windows(2).all(|w| emb.x(w[1]) - emb.x(w[0]) == dx);
        ok.then_some(chain)
    };
    let (Some(_), Some(lr), Some(_)) = (
        steps(Side::LowerLeft, -1),
        steps(Side::LowerRight, 1),
        steps(Side::UpperRight, -1),
    ) else {
        return false;
    };
    let lr_colors = colored.chain_colors(&lr);
    lr_colors.iter().any(|c| c == GadgetS8::LOWER) && lr_colors.iter().any(|c| c == GadgetS8::UPPER)
}

fn gadget_violation(colored: &ColoredLattice) -> Option<String> {
    let lattice = colored.lattice();
    if lattice.len() != 8 {
        return Some(format!("{} elements", lattice.len()));
    }
    if !is_semimodular(lattice) {
        return Some("not semimodular".to_string());
    }
    if let Err(e) = check_embedding_planarity(lattice) {
        return Some(format!("drawing is not planar: {e:?}"));
    }
    match two_chain_coloring(lattice) {
        Some(expected) if expected == colored.colors() => {}
        _ => return Some("edge colors do not match two comparable edge congruences".to_string()),
    }
    if !layout_ok(colored) {
        return Some("drawing does not fit the gluing layout".to_string());
    }
    None
}

/// Searches x-coordinates in `[-r, r]` (bottom at 0, elements placed by
/// height) for a planar drawing satisfying [`layout_ok`]. Candidates are
/// tried in the order `0, -1, 1, -2, 2, …`.
fn draw_gadget(lattice: &FiniteLattice, colors: &[String]) -> Option<ColoredLattice> {
    let n = lattice.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (lattice.height(v), v));
    let r = lattice.length() as i64 + 1;
    let candidates: Vec<i64> = core::iter::once(0).chain((1..=r).flat_map(|k| [-k, k])).collect();

    struct Search<'a> {
        lattice: &'a FiniteLattice,
        colors: &'a [String],
        order: Vec<usize>,
        candidates: Vec<i64>,
        x: Vec<Option<i64>>,
    }
    impl Search<'_> {
        fn point(&self, v: usize) -> (i64, i64) {
            (self.x[v].expect("placed"), self.lattice.height(v) as i64)
        }
        fn fits(&self, v: usize) -> bool {
            let p = self.point(v);
            let placed: Vec<usize> = (0..self.x.len()).filter(|&w| w != v && self.x[w].is_some()).collect();
            if placed.iter().any(|&w| self.point(w) == p) {
                return false;
            }
            let old_edges: Vec<(usize, usize)> = self
                .lattice
                .covers()
                .iter()
                .copied()
                .filter(|&(a, b)| a != v && b != v && self.x[a].is_some() && self.x[b].is_some())
                .collect();
            for &w in self.lattice.lower_covers(v) {
                let placed_before: Vec<usize> = self
                    .lattice
                    .lower_covers(v)
                    .iter()
                    .copied()
                    .take_while(|&u| u != w)
                    .collect();
                for &u in &placed_before {
                    if edges_conflict(self.point(w), p, self.point(u), p) {
                        return false;
                    }
                }
                for &(a, b) in &old_edges {
                    if edges_conflict(self.point(w), p, self.point(a), self.point(b)) {
                        return false;
                    }
                }
            }
            true
        }
        fn run(&mut self, k: usize) -> Option<ColoredLattice> {
            if k == self.order.len() {
                let x = self.x.iter().map(|v| v.expect("placed")).collect();
                let drawn = self.lattice.clone().with_embedding(x);
                if check_embedding_planarity(&drawn).is_err() {
                    return None;
                }
                let colored = ColoredLattice::new(drawn, self.colors.to_vec()).ok()?;
                return layout_ok(&colored).then_some(colored);
            }
            let v = self.order[k];
            let options: Vec<i64> = if k == 0 { vec![0] } else { self.candidates.clone() };
            for c in options {
                self.x[v] = Some(c);
                if self.fits(v) {
                    if let Some(found) = self.run(k + 1) {
                        return Some(found);
                    }
                }
            }
            self.x[v] = None;
            None
        }
    }
    let mut search = Search {
        lattice,
        colors,
        order,
        candidates,
        x: vec![None; n],
    };
    search.run(0)
}

/// Exhaustive search over all eight-element lattices in canonical order for
/// the least one that is semimodular, planar, has exactly two edge
/// congruences forming a chain, and has a drawing usable for gluing.
pub fn find_s8() -> Result<GadgetS8, KitError> {
    let mut skipped = 0;
    for (rank, lattice) in enumerate_lattices(8)?.into_iter().enumerate() {
        if !is_semimodular(&lattice) || !is_planar_dimension2(&lattice)? {
            continue;
        }
        let Some(colors) = two_chain_coloring(&lattice) else {
            continue;
        };
        match draw_gadget(&lattice, &colors) {
            Some(colored) => {
                let mut gadget = GadgetS8::from_colored(colored)?;
                gadget.rank = Some(rank);
                gadget.skipped = skipped;
                return Ok(gadget);
            }
            None => skipped += 1,
        }
    }
    Err(KitError::GadgetNotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{brute_force_congruences, congruence_lattice};
    use crate::lattice::downset_lattice;
    use crate::poset::Poset;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn sides_of_a_grid() {
        let grid = colored_grid(&names(&["p", "q"]), &names(&["r"]));
        let label = |v: Vec<usize>| -> Vec<&str> { v.into_iter().map(|x| grid.lattice().label(x)).collect() };
        assert_eq!(label(grid.side(Side::LowerLeft).unwrap()), ["0_0", "1_0", "2_0"]);
        assert_eq!(label(grid.side(Side::LowerRight).unwrap()), ["0_0", "0_1"]);
        assert_eq!(label(grid.side(Side::UpperLeft).unwrap()), ["2_0", "2_1"]);
        assert_eq!(label(grid.side(Side::UpperRight).unwrap()), ["0_1", "1_1", "2_1"]);
        assert_eq!(grid.side_colors(Side::UpperRight).unwrap(), ["p", "q"]);
        assert_eq!(grid.side_colors(Side::UpperLeft).unwrap(), ["r"]);
    }

    #[test]
    fn sides_of_a_chain() {
        let c = colored_chain(&names(&["a", "b"]));
        for side in Side::ALL {
            assert_eq!(c.side(side).unwrap(), vec![0, 1, 2]);
        }
        let single = colored_chain(&[]);
        assert_eq!(single.side(Side::UpperRight).unwrap(), vec![0]);
    }

    #[test]
    fn m3_from_square() {
        let square = colored_grid(&names(&["p"]), &names(&["q"]));
        let m3 = m3_insert(&square, &Cell::new("0_0", "1_1", "m")).unwrap();
        assert_eq!(m3.len(), 5);
        assert_eq!(brute_force_congruences(m3.lattice()).unwrap().len(), 2);
        assert_eq!(m3.color(0, 4), Some("p"));
        assert!(check_embedding_planarity(m3.lattice()).is_ok());
        assert!(matches!(
            m3_insert(&m3, &Cell::new("0_0", "1_1", "z")),
            Err(KitError::NotASquare(..))
        ));
    }

    #[test]
    fn m3_on_diagonal_cell_merges_congruences() {
        let axis = names(&["a", "b"]);
        let grid = colored_grid(&axis, &axis);
        assert_eq!(congruence_lattice(grid.lattice()).len(), 16);
        let eyed = m3_insert(&grid, &Cell::new("0_0", "1_1", "m")).unwrap();
        assert_eq!(congruence_lattice(eyed.lattice()).len(), 8);
    }

    #[test]
    fn non_face_is_rejected() {
        // o ≺ a, c, b; c ≺ x; a, x, b ≺ i: the square o, a, b, i has c and x
        // drawn inside it.
        let l = crate::lattice::validate_lattice(
            names(&["o", "a", "c", "b", "x", "i"]),
            &[
                ("o", "a"),
                ("o", "c"),
                ("o", "b"),
                ("c", "x"),
                ("a", "i"),
                ("x", "i"),
                ("b", "i"),
            ]
            .iter()
            .map(|(p, q)| (p.to_string(), q.to_string()))
            .collect::<Vec<_>>(),
        )
        .unwrap()
        .with_embedding(vec![0, -1, 0, 1, 0, 0]);
        let colored = ColoredLattice::from_fn(l, |_, _| "p".to_string());
        assert!(matches!(
            m3_insert(&colored, &Cell::new("o", "i", "m")),
            Err(KitError::NotACell(..))
        ));
        let square = colored_grid(&names(&["p"]), &names(&["q"]));
        assert!(matches!(
            m3_insert_many(&square, &[Cell::new("0_0", "1_1", "m"), Cell::new("0_0", "1_1", "n")]),
            Err(KitError::NotASquare(..))
        ));
    }

    #[test]
    fn gluing_chains() {
        let c2 = colored_chain(&names(&["p"]));
        let top = c2.with_prefix("t");
        let c3 = glue(&c2, &[1], &top, &[0]).unwrap();
        assert_eq!(c3.len(), 3);
        assert!(c3.lattice().is_chain());
        assert_eq!(c3.lattice().labels(), ["c0", "c1", "tc1"]);
        let other = colored_chain(&names(&["q"])).with_prefix("t");
        assert!(matches!(
            glue(&c2, &[0, 1], &other, &[0, 1]),
            Err(KitError::ColorMismatch(..))
        ));
        let longer = colored_chain(&names(&["p", "q"]));
        assert!(matches!(
            glue(&longer, &[0, 1], &other, &[0, 1]),
            Err(KitError::NotAFilter(..))
        ));
        assert_eq!(glue(&longer, &[1, 2], &other, &[0, 1]).unwrap().len(), 3);
        let longer = colored_chain(&names(&["q", "p"]));
        assert!(matches!(
            glue(&longer, &[1, 2], &other, &[0, 1]),
            Err(KitError::ColorMismatch(..))
        ));
    }

    #[test]
    fn color_sets() {
        let p = Poset::new(
            names(&["a", "b", "c", "d"]),
            &[("a", "b"), ("b", "c"), ("d", "c")]
                .iter()
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let d = downset_lattice(&p);
        assert_eq!(d.len(), 7);
        let sizes: Vec<usize> = (0..d.len()).map(|x| compute_color_set(&d, x).len()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 13);
        let pc = chain_for_principal_mode(&d);
        assert_eq!(pc.chain.lattice().covers().len(), 13);
        assert_eq!(pc.segments[0], (0, 0));
        assert_eq!(pc.segments[d.len() - 1].1, 13);
    }
}
