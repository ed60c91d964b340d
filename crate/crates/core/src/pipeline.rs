//! The end-to-end construction of `L` from a finite distributive lattice `D`.
//!
//! Every change to the assembly is a [`Step`] applied by a [`Workshop`], so
//! the step log of a [`ConstructionReport`] rebuilds `L` exactly.
//!
//! Outline, with `P = Ji(D)` and colors taken from `P`:
//!
//! 1. `N`: one gadget per covering pair `u ≺ v` of `P`. With several pairs,
//!    each gadget is glued onto the upper-left side of a grid whose axes are
//!    the running color list `M` and the gadget's lower-right colors, with
//!    an eye in every cell whose axis colors agree. These pieces are chained
//!    along their upper-right and lower-left sides.
//! 2. `S`: the grid `N₂ × N₂` with eyes on the diagonal, glued onto `N₂`.
//! 3. `R = C × C₁'`: glued under the lower-right side of `L₁ = N ∪ S`, then
//!    an eye in every cell of `R` whose row and column colors agree.
//! 4. In planar mode, a tail with one edge per isolated element of `P`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::congruence::edge_congruences;
use crate::error::{BuildError, KitError};
use crate::kit::{
    chain_for_principal_mode, colored_chain, colored_grid, glue_sides, m3_insert_many, Cell, ColoredLattice, GadgetS8,
    Role, Side,
};
use crate::lattice::{ji_poset, FiniteLattice};
use crate::poset::Poset;
use crate::verify::Witness;

/// Which guarantees the construction must meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// `Con L ≅ D` with `L` planar and semimodular.
    Planar,
    /// Additionally every congruence of `L` is principal.
    Principal,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Planar => "planar",
            Mode::Principal => "principal",
        }
    }

    pub fn from_name(name: &str) -> Option<Mode> {
        match name {
            "planar" => Some(Mode::Planar),
            "principal" => Some(Mode::Principal),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One operation of the assembly. Parts are named colored lattices; element
/// labels of a new part are prefixed with `<part>_`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// A gadget copy with colors `lower < upper`.
    Gadget {
        part: String,
        lower: String,
        upper: String,
    },
    /// A grid; `left` colors the axis running up-left, `right` the other.
    Grid {
        part: String,
        left: Vec<String>,
        right: Vec<String>,
    },
    Chain {
        part: String,
        colors: Vec<String>,
    },
    /// M3 insertion into cells of `part`, stored as `result`.
    Eyes {
        part: String,
        result: String,
        cells: Vec<Cell>,
    },
    /// Glues `upper` on top of `lower` along `lower_side` (minus its first
    /// `skip` edges) and the bottom of `upper_side`.
    Glue {
        result: String,
        lower: String,
        lower_side: Side,
        skip: usize,
        upper: String,
        upper_side: Side,
    },
    /// Records a side of `part` under a boundary role.
    Mark {
        part: String,
        role: Role,
        side: Side,
    },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Gadget { part, lower, upper } => write!(f, "gadget {part} ({lower} < {upper})"),
            Step::Grid { part, left, right } => write!(f, "grid {part} [{}] x [{}]", left.join(","), right.join(",")),
            Step::Chain { part, colors } => write!(f, "chain {part} [{}]", colors.join(",")),
            Step::Eyes { part, result, cells } => write!(f, "eyes {result} = {part} + {} cells", cells.len()),
            Step::Glue {
                result,
                lower,
                lower_side,
                skip,
                upper,
                upper_side,
            } => write!(
                f,
                "glue {result} = {lower}.{lower_side}[{skip}..] / {upper}.{upper_side}"
            ),
            Step::Mark { part, role, side } => write!(f, "mark {part}.{role} = {side}"),
        }
    }
}

/// Applies steps and keeps every part built so far.
#[derive(Debug, Clone)]
pub struct Workshop<'g> {
    gadget: &'g GadgetS8,
    parts: BTreeMap<String, ColoredLattice>,
    log: Vec<Step>,
}

impl<'g> Workshop<'g> {
    pub fn new(gadget: &'g GadgetS8) -> Self {
        Self {
            gadget,
            parts: BTreeMap::new(),
            log: Vec::new(),
        }
    }

    pub fn part(&self, name: &str) -> Option<&ColoredLattice> {
        self.parts.get(name)
    }

    pub fn steps(&self) -> &[Step] {
        &self.log
    }

    fn get(&self, name: &str) -> Result<&ColoredLattice, BuildError> {
        self.parts
            .get(name)
            .ok_or_else(|| BuildError::UnknownPart(name.to_string()))
    }

    /// Applies one step and returns the part it produced or changed.
    pub fn apply(&mut self, step: Step) -> Result<&ColoredLattice, BuildError> {
        let wrap = |source: KitError| BuildError::Step {
            step: step.to_string(),
            source,
        };
        let (name, part) = match &step {
            Step::Gadget { part, lower, upper } => {
                let mut built = self.gadget.instance(&format!("{part}_"), lower, upper);
                built.clear_boundaries();
                (part.clone(), built)
            }
            Step::Grid { part, left, right } => {
                (part.clone(), colored_grid(left, right).with_prefix(&format!("{part}_")))
            }
            Step::Chain { part, colors } => (part.clone(), colored_chain(colors).with_prefix(&format!("{part}_"))),
            Step::Eyes { part, result, cells } => {
                let built = m3_insert_many(self.get(part)?, cells).map_err(wrap)?;
                (result.clone(), built)
            }
            Step::Glue {
                result,
                lower,
                lower_side,
                skip,
                upper,
                upper_side,
            } => {
                let built =
                    glue_sides(self.get(lower)?, *lower_side, *skip, self.get(upper)?, *upper_side).map_err(wrap)?;
                (result.clone(), built)
            }
            Step::Mark { part, role, side } => {
                let mut built = self.get(part)?.clone();
                let chain = built.side(*side).map_err(wrap)?;
                built.set_boundary(*role, chain).map_err(wrap)?;
                (part.clone(), built)
            }
        };
        self.log.push(step);
        self.parts.insert(name.clone(), part);
        Ok(&self.parts[&name])
    }
}

/// Rebuilds the part named `L` from a step log.
pub fn replay(steps: &[Step], gadget: &GadgetS8) -> Result<ColoredLattice, BuildError> {
    let mut ws = Workshop::new(gadget);
    for step in steps {
        ws.apply(step.clone())?;
    }
    ws.get("L").cloned()
}

/// Sizes of the parts of one construction (element counts unless noted).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Sizes {
    pub n: usize,
    pub s: usize,
    pub r: usize,
    pub l1: usize,
    pub l2: usize,
    pub l: usize,
    pub c: usize,
    pub c_edges: usize,
    pub c1_edges: usize,
    pub gadgets: usize,
}

/// Everything produced by [`assemble`].
#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub mode: Mode,
    /// `P = Ji(D)`.
    pub poset: Poset,
    pub d: FiniteLattice,
    /// The assembled lattice `L`.
    pub lattice: ColoredLattice,
    /// `N`, `S`, `R`, `L1`, `L2` when they exist.
    pub intermediates: BTreeMap<String, ColoredLattice>,
    /// `(0ₓ, 1ₓ)` for every `x ∈ D`; principal mode only.
    pub witnesses: Vec<Witness>,
    pub steps: Vec<Step>,
    pub sizes: Sizes,
}

fn color_list(p: &Poset, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&x| p.label(x).to_string()).collect()
}

/// Checks the contract of `N` after the first `done` covering pairs of `P`
/// have been attached: every edge is colored by `P`, all edges of one color
/// generate one congruence, and these congruences are ordered exactly as the
/// colors are ordered by the attached pairs.
fn check_n_contract(n: &ColoredLattice, p: &Poset, done: &[(usize, usize)]) -> Result<(), BuildError> {
    let lattice = n.lattice();
    let index: BTreeMap<&str, usize> = p.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut class_of: BTreeMap<usize, usize> = BTreeMap::new();
    let ec = edge_congruences(lattice);
    for (e, color) in n.colors().iter().enumerate() {
        let Some(&c) = index.get(color.as_str()) else {
            return Err(BuildError::AssemblyContractViolation {
                clause: "i",
                witness: format!("edge colored `{color}` outside P"),
            });
        };
        let class = *class_of.entry(c).or_insert(ec.edge_class[e]);
        if class != ec.edge_class[e] {
            let (a, b) = lattice.covers()[e];
            return Err(BuildError::AssemblyContractViolation {
                clause: "iii",
                witness: format!("`{} < {}` colored `{color}`", lattice.label(a), lattice.label(b)),
            });
        }
    }
    // Reflexive-transitive closure of the attached pairs on the colors used.
    let colors: Vec<usize> = class_of.keys().copied().collect();
    let k = p.len();
    let mut below = alloc::vec![alloc::vec![false; k]; k];
    for x in 0..k {
        below[x][x] = true;
    }
    for &(u, v) in done {
        below[u][v] = true;
    }
    for m in 0..k {
        for a in 0..k {
            for b in 0..k {
                if below[a][m] && below[m][b] {
                    below[a][b] = true;
                }
            }
        }
    }
    for &x in &colors {
        for &y in &colors {
            let refines = ec.classes[class_of[&x]].refines(&ec.classes[class_of[&y]]);
            if refines != below[x][y] {
                return Err(BuildError::AssemblyContractViolation {
                    clause: "iv",
                    witness: format!(
                        "con({}) {} con({})",
                        p.label(x),
                        if refines { "<=" } else { "not <=" },
                        p.label(y)
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Builds `N` from the covering pairs of `P` and records `N1` (lower right)
/// and `N2` (upper right). Returns false if `P` has no covering pairs.
pub fn build_n(ws: &mut Workshop<'_>, p: &Poset) -> Result<bool, BuildError> {
    let covers = p.covers().to_vec();
    if covers.is_empty() {
        return Ok(false);
    }
    let label = |x: usize| p.label(x).to_string();
    if let [(u, v)] = covers[..] {
        ws.apply(Step::Gadget {
            part: "N".into(),
            lower: label(u),
            upper: label(v),
        })?;
    } else {
        let isolated: BTreeSet<usize> = p.isolated_elements().into_iter().collect();
        let linked: Vec<usize> = (0..p.len()).filter(|x| !isolated.contains(x)).collect();
        let mut running = color_list(p, &linked);
        let gadget_lr = ws
            .gadget
            .colored()
            .boundary(Role::LowerRight)
            .map(|c| ws.gadget.colored().chain_colors(c))
            .unwrap_or_default();
        let mut previous = String::new();
        for (j, &(u, v)) in covers.iter().enumerate() {
            let j1 = j + 1;
            let y: Vec<String> = gadget_lr
                .iter()
                .map(|c| if c == GadgetS8::LOWER { label(u) } else { label(v) })
                .collect();
            let grid = format!("E{j1}");
            ws.apply(Step::Grid {
                part: grid.clone(),
                left: running.clone(),
                right: y.clone(),
            })?;
            let cells = crate::kit::matching_cells(&running, &y, |a, b| prefixed_cell(&grid, a, b));
            ws.apply(Step::Eyes {
                part: grid.clone(),
                result: grid.clone(),
                cells,
            })?;
            let gadget = format!("G{j1}");
            ws.apply(Step::Gadget {
                part: gadget.clone(),
                lower: label(u),
                upper: label(v),
            })?;
            let piece = format!("Q{j1}");
            let built = ws.apply(Step::Glue {
                result: piece.clone(),
                lower: grid,
                lower_side: Side::UpperLeft,
                skip: 0,
                upper: gadget,
                upper_side: Side::LowerRight,
            })?;
            let next = built.side_colors(Side::UpperRight).map_err(|source| BuildError::Step {
                step: format!("sides of {piece}"),
                source,
            })?;
            if j == 0 {
                previous = piece;
            } else {
                let result = if j1 == covers.len() {
                    "N".to_string()
                } else {
                    format!("N{j1}")
                };
                ws.apply(Step::Glue {
                    result: result.clone(),
                    lower: previous,
                    lower_side: Side::UpperRight,
                    skip: 0,
                    upper: piece,
                    upper_side: Side::LowerLeft,
                })?;
                previous = result;
            }
            check_n_contract(ws.get(&previous)?, p, &covers[..j1])?;
            running = next;
        }
    }
    ws.apply(Step::Mark {
        part: "N".into(),
        role: Role::N1,
        side: Side::LowerRight,
    })?;
    let n = ws.apply(Step::Mark {
        part: "N".into(),
        role: Role::N2,
        side: Side::UpperRight,
    })?;
    check_n_contract(n, p, &covers)?;
    let n1: BTreeSet<String> = n
        .chain_colors(n.boundary(Role::N1).unwrap_or_default())
        .into_iter()
        .collect();
    for x in 0..p.len() {
        if !p.upper_covers(x).is_empty() && !n1.contains(p.label(x)) {
            return Err(BuildError::AssemblyContractViolation {
                clause: "ii",
                witness: format!("`{}` is not a color of N1", p.label(x)),
            });
        }
    }
    Ok(true)
}

fn prefixed_cell(part: &str, i: usize, j: usize) -> Cell {
    Cell::new(
        format!("{part}_{i}_{j}"),
        format!("{part}_{}_{}", i + 1, j + 1),
        format!("{part}_m{i}_{j}"),
    )
}

/// Builds `S = N₂ × N₂` with an eye in every diagonal cell, recording `S2`
/// (the lower-left side, glued onto `N₂`) and `S1` (lower right).
pub fn build_s(ws: &mut Workshop<'_>, n2: &[String]) -> Result<(), BuildError> {
    ws.apply(Step::Grid {
        part: "S".into(),
        left: n2.to_vec(),
        right: n2.to_vec(),
    })?;
    ws.apply(Step::Eyes {
        part: "S".into(),
        result: "S".into(),
        cells: (0..n2.len()).map(|i| prefixed_cell("S", i, i)).collect(),
    })?;
    ws.apply(Step::Mark {
        part: "S".into(),
        role: Role::S2,
        side: Side::LowerLeft,
    })?;
    ws.apply(Step::Mark {
        part: "S".into(),
        role: Role::S1,
        side: Side::LowerRight,
    })?;
    Ok(())
}

/// Builds the grid `R = C × C₁'` and records `R2` (lower left, the axis
/// `C`), `R1` (lower right) and `R1p` (upper left).
pub fn build_r(ws: &mut Workshop<'_>, c: &[String], c1: &[String]) -> Result<(), BuildError> {
    ws.apply(Step::Grid {
        part: "R".into(),
        left: c.to_vec(),
        right: c1.to_vec(),
    })?;
    for (role, side) in [
        (Role::R2, Side::LowerLeft),
        (Role::R1, Side::LowerRight),
        (Role::R1Prime, Side::UpperLeft),
    ] {
        ws.apply(Step::Mark {
            part: "R".into(),
            role,
            side,
        })?;
    }
    Ok(())
}

/// Cells of the `R` grid whose row color (from `C`) and column color (from
/// `C₁'`) are both `x`, over every color `x`. Fails if a color occurs on one
/// axis only.
pub fn identification_cells(c: &[String], c1: &[String]) -> Result<Vec<Cell>, KitError> {
    let on_c: BTreeSet<&String> = c.iter().collect();
    let on_c1: BTreeSet<&String> = c1.iter().collect();
    if let Some(x) = on_c.symmetric_difference(&on_c1).next() {
        return Err(KitError::ColorMissingOnAxis((*x).clone()));
    }
    Ok(crate::kit::matching_cells(c, c1, |i, j| prefixed_cell("R", i, j)))
}

/// Glues a chain with one edge per color below `part`, storing the result
/// as `result`.
pub fn add_tail(ws: &mut Workshop<'_>, part: &str, result: &str, colors: &[String]) -> Result<(), BuildError> {
    ws.apply(Step::Chain {
        part: "T".into(),
        colors: colors.to_vec(),
    })?;
    ws.apply(Step::Glue {
        result: result.into(),
        lower: "T".into(),
        lower_side: Side::UpperRight,
        skip: colors.len(),
        upper: part.into(),
        upper_side: Side::LowerLeft,
    })?;
    Ok(())
}

/// Builds `L` for a finite distributive lattice `D`.
pub fn assemble(d: &FiniteLattice, mode: Mode, gadget: &GadgetS8) -> Result<ConstructionReport, BuildError> {
    if !d.is_distributive() {
        return Err(BuildError::NotDistributive);
    }
    let p = ji_poset(d);
    let isolated = p.isolated_elements();
    let isolated_colors = color_list(&p, &isolated);
    let linked: Vec<usize> = (0..p.len()).filter(|x| !isolated.contains(x)).collect();

    let mut ws = Workshop::new(gadget);
    let side_err = |what: &str| {
        let what = what.to_string();
        move |source| BuildError::Step {
            step: what.clone(),
            source,
        }
    };

    let mut c1 = Vec::new();
    let has_n = build_n(&mut ws, &p)?;
    if has_n {
        let n = ws.get("N")?;
        let n2 = n.chain_colors(n.boundary(Role::N2).unwrap_or_default());
        build_s(&mut ws, &n2)?;
        ws.apply(Step::Glue {
            result: "L1".into(),
            lower: "N".into(),
            lower_side: Side::UpperRight,
            skip: 0,
            upper: "S".into(),
            upper_side: Side::LowerLeft,
        })?;
        c1 = ws
            .get("L1")?
            .side_colors(Side::LowerRight)
            .map_err(side_err("sides of L1"))?;
    }

    let (c, segments) = match mode {
        Mode::Principal => {
            let pc = chain_for_principal_mode(d);
            (pc.chain.colors().to_vec(), Some(pc.segments))
        }
        Mode::Planar => (color_list(&p, &linked), None),
    };
    let extra = if mode == Mode::Principal {
        isolated_colors.clone()
    } else {
        Vec::new()
    };
    let c1_full: Vec<String> = extra.iter().chain(&c1).cloned().collect();
    build_r(&mut ws, &c, &c1_full)?;
    let cells = identification_cells(&c, &c1_full).map_err(side_err("identifications in R"))?;

    let base = if has_n {
        ws.apply(Step::Glue {
            result: "L2".into(),
            lower: "R".into(),
            lower_side: Side::UpperLeft,
            skip: extra.len(),
            upper: "L1".into(),
            upper_side: Side::LowerRight,
        })?;
        "L2"
    } else {
        "R"
    };
    let tail = mode == Mode::Planar && !isolated_colors.is_empty();
    let eyed = if tail { "L3" } else { "L" };
    ws.apply(Step::Eyes {
        part: base.into(),
        result: eyed.into(),
        cells,
    })?;
    if tail {
        add_tail(&mut ws, eyed, "L", &isolated_colors)?;
    }
    for side in Side::ALL {
        ws.apply(Step::Mark {
            part: "L".into(),
            role: side.role(),
            side,
        })?;
    }

    let lattice = ws.get("L")?.clone();
    let witnesses = segments
        .map(|segs| {
            segs.iter()
                .enumerate()
                .map(|(x, &(lo, hi))| Witness {
                    element: d.label(x).to_string(),
                    lower: format!("R_{lo}_0"),
                    upper: format!("R_{hi}_0"),
                })
                .collect()
        })
        .unwrap_or_default();

    let size = |name: &str| ws.part(name).map_or(0, ColoredLattice::len);
    let sizes = Sizes {
        n: size("N"),
        s: size("S"),
        r: size("R"),
        l1: size("L1"),
        l2: size("L2"),
        l: lattice.len(),
        c: c.len() + 1,
        c_edges: c.len(),
        c1_edges: c1.len(),
        gadgets: ws.steps().iter().filter(|s| matches!(s, Step::Gadget { .. })).count(),
    };
    let intermediates = ["N", "S", "R", "L1", "L2"]
        .iter()
        .filter_map(|&name| ws.part(name).map(|part| (name.to_string(), part.clone())))
        .collect();
    Ok(ConstructionReport {
        mode,
        poset: p,
        d: d.clone(),
        lattice,
        intermediates,
        witnesses,
        steps: ws.steps().to_vec(),
        sizes,
    })
}
