use alloc::string::String;
use thiserror::Error;

/// Failures while building or validating an order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("an order needs at least one element")]
    Empty,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("cover references undeclared element `{0}`")]
    UnknownLabel(String),
    #[error("covers contain a cycle through `{0}`")]
    CyclicCovers(String),
    #[error("cover `{0} < {1}` is implied by other covers")]
    RedundantCover(String, String),
    #[error("`{0}` and `{1}` have no unique join or meet")]
    NotALattice(String, String),
    #[error("glued sum needs a unit in the lower part and a zero in the upper part")]
    MissingBound,
}

/// Failures of the congruence oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("brute force is limited to {limit} elements, got {size}")]
    TooLarge { size: usize, limit: usize },
}

/// Failures of the construction kit (colored lattices and gadgets).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KitError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("`{0}` and `{1}` are not the bottom and top of a covering square")]
    NotASquare(String, String),
    #[error("square under `{0}` is not a face of the diagram")]
    NotACell(String),
    #[error("lattice has no planar embedding")]
    NoEmbedding,
    #[error("gluing interface is not a filter at `{0}`")]
    NotAFilter(String),
    #[error("gluing interface is not an ideal at `{0}`")]
    NotAnIdeal(String),
    #[error("gluing interface is not a chain at `{0}`")]
    NotAChain(String),
    #[error("gluing chains differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("edge `{0} < {1}` colored `{2}` is matched with color `{3}`")]
    ColorMismatch(String, String, String, String),
    #[error("no element labelled `{0}`")]
    MissingElement(String),
    #[error("color `{0}` is not on both axes of the grid")]
    ColorMissingOnAxis(String),
    #[error("enumeration is limited to {limit} elements, got {size}")]
    TooLarge { size: usize, limit: usize },
    #[error("no eight-element gadget satisfies the required properties")]
    GadgetNotFound,
    #[error("gadget check failed: {0}")]
    InvalidGadget(String),
    #[error("edge coloring has {colors} colors for {edges} edges")]
    ColoringSize { colors: usize, edges: usize },
    #[error("`{0} < {1}` is not an edge")]
    NotAnEdge(String, String),
}

/// Failures of the end-to-end construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("input lattice is not distributive")]
    NotDistributive,
    #[error("step `{step}`: {source}")]
    Step {
        step: String,
        #[source]
        source: KitError,
    },
    #[error("assembly contract ({clause}) violated: {witness}")]
    AssemblyContractViolation { clause: &'static str, witness: String },
    #[error("`{part}` failed the {check} check: {witness}")]
    CheckFailed {
        part: String,
        check: &'static str,
        witness: String,
    },
    #[error("unknown part `{0}` in step log")]
    UnknownPart(String),
}
