//! Finite lattices and their congruences, together with a construction that
//! realizes any finite distributive lattice `D` as the congruence lattice of a
//! planar semimodular lattice `L` in which every congruence is principal.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, diagram export and
//! the command line live in the `princon` companion crate.
//!
//! Layout:
//!
//! - [`poset`], [`lattice`], [`iso`]: finite orders, lattices with derived
//!   join/meet tables, Birkhoff duality, products, glued sums, isomorphism.
//! - [`congruence`]: principal congruences, the congruence lattice, and a
//!   brute-force partition oracle.
//! - [`enumerate`]: posets and lattices up to isomorphism.
//! - [`kit`]: colored lattices, M3 insertion, Hall–Dilworth gluing and the
//!   eight-element gadget.
//! - [`pipeline`]: the end-to-end construction with a replayable step log.
//! - [`verify`]: semimodularity, planarity and representation checks.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod congruence;
pub mod enumerate;
pub mod iso;
pub mod kit;
pub mod lattice;
pub mod pipeline;
pub mod poset;
pub mod verify;

mod error;

pub use congruence::{ConLattice, Congruence};
pub use error::{BuildError, CongruenceError, KitError, OrderError};
pub use kit::{Cell, ColoredLattice, GadgetS8, Role, Side};
pub use lattice::{Embedding, FiniteLattice};
pub use pipeline::{ConstructionReport, Mode, Step};
pub use poset::Poset;
