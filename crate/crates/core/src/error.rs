use alloc::string::String;
use alloc::vec::Vec;

/// Errors produced anywhere in the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cover list is empty")]
    EmptyCoverList,
    #[error("cover relation contains a cycle through `{0}`")]
    CycleDetected(String),
    #[error("poset has several minimal elements: {0:?}")]
    MultipleMinima(Vec<String>),
    #[error("poset has several maximal elements: {0:?}")]
    MultipleMaxima(Vec<String>),
    #[error("cover `{0}` < `{1}` is implied by transitivity")]
    NonReducedCover(String, String),
    #[error("element `{0}` is not on any saturated chain from bottom to top")]
    IsolatedElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("elements `{0}` and `{1}` are not comparable as required")]
    NotComparable(String, String),
    #[error("open interval ({0}, {1}) is empty")]
    EmptyInterval(String, String),

    #[error("cover `{0}` < `{1}` has no label")]
    MissingLabel(String, String),
    #[error("covers above `{lower}` (to `{first}` and `{second}`) carry the same label")]
    DuplicateCoverLabel {
        lower: String,
        first: String,
        second: String,
    },
    #[error("facets {0} and {1} have identical label sequences")]
    DuplicateLabelSequence(usize, usize),
    #[error("facet list is not a permutation of the saturated chains of the poset")]
    NotAFacetPermutation,

    #[error(
        "facet {facet} meets earlier facet {earlier} in a face that skips a non-interval rank set"
    )]
    NonIntervalOverlap { facet: usize, earlier: usize },
    #[error("facet has {0} interior elements; at most 63 are supported")]
    FacetTooLong(usize),
    #[error("overlap of facet {facet} has homology that is neither a sphere nor acyclic")]
    UnexpectedHomology { facet: usize },
    #[error("facet index {0} is out of range")]
    FacetOutOfRange(usize),

    #[error("face is not a member of the complex")]
    UnknownFace,
    #[error("face set is not closed under taking subfaces")]
    NotClosed,
    #[error("gradient path query needs dim(tau) = dim(sigma) + 1, got {tau} and {sigma}")]
    DimensionMismatch { tau: isize, sigma: isize },
    #[error("cell is not critical")]
    NotCritical,
    #[error("expected exactly one gradient path, found {0}")]
    NotUnique(usize),
    #[error("matching is not acyclic")]
    NotAcyclic,

    #[error("facet list is not pure")]
    NotPure,
    #[error("facet order is not a shelling at position {0}")]
    NotAShelling(usize),

    #[error("integer partition {0:?} is not weakly decreasing with positive parts")]
    InvalidPartition(Vec<usize>),
    #[error("partition {0:?} is not hook-shaped")]
    NotHookShaped(Vec<usize>),
    #[error("block `{0}` does not occur in the ordered partition")]
    BlockNotPresent(String),
    #[error("malformed bar notation: {0}")]
    MalformedNotation(String),
    #[error("inconsistent bar subscripts: {0}")]
    InconsistentSubscripts(String),
    #[error("rank window starts at {start}, below the last nontrivial skipped interval ending at {last}")]
    WindowTooLow { start: usize, last: usize },
    #[error("interval [{0}, {1}] has height one")]
    TrivialInterval(usize, usize),
    #[error("ranks [{0}, {1}] are not skipped: the facet is the earliest chain agreeing with it outside them")]
    IntervalNotSkipped(usize, usize),
    #[error("facet has no nontrivial truncated skipped interval")]
    NoNontrivialInterval,
    #[error("facet is not a critical facet")]
    FacetNotCritical,
    #[error("partner of facet {facet} is not critical")]
    PartnerNotCritical { facet: usize },
    #[error("critical cells {first} and {second} both demand partner {partner}")]
    PairingConflict {
        first: usize,
        second: usize,
        partner: usize,
    },
}

pub type Result<T> = core::result::Result<T, Error>;
