//! Partitions of a multiset ordered by refinement.
//!
//! The multiset `{1^λ1, ..., k^λk}` is written with letters: `a` repeated
//! `λ1` times, then `b` repeated `λ2` times, and so on. A block is stored as
//! its sorted word; an element of the poset is the multiset of its blocks,
//! with id the blocks joined by `|` in length-lex order. The bottom element
//! is the single block and the top is the partition into singletons.

mod cancel;
mod classify;
mod inversions;
mod notation;
mod partition;
mod partner;
mod puzzle;

pub use cancel::{cancel_all_lower, cancel_lower_of, CancelOptions, CancelReport, CancelledPair};
pub use classify::{classify_chains, classify_children, classify_msi, MsiType};
pub use inversions::{inversion_set, inversions_of_steps, InversionOrientation, InversionSet};
pub use notation::{parse_bar_notation, render_bar_notation};
pub use partition::{
    block_cmp, blocks_of, build_multiset_poset, build_word_poset, chain_label, chain_steps,
    element_id, integer_partition_id, refines, ziegler_interval, Lambda, MultisetLabeling, Step,
};
pub use partner::{
    agreement, last_nontrivial, partner_candidates, partner_cell, predicted_direction, Partner,
    ShiftDirection,
};
pub use puzzle::{
    check_puzzle_solution, condition_two_splits, puzzle_search, PuzzleOptions, PuzzleSolution,
};

/// The hook Möbius criterion: `λ1 > 3 (l(λ) - 1)`.
pub fn hook_mobius_predicate(lambda: &Lambda) -> crate::Result<bool> {
    if !lambda.is_hook() {
        return Err(crate::Error::NotHookShaped(lambda.parts().to_vec()));
    }
    Ok(lambda.parts()[0] > 3 * (lambda.len() - 1))
}
