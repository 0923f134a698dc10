//! Rank inversions of a saturated chain above its last nontrivial skipped
//! interval.
//!
//! Ranks here are cover ranks: rank `i` is the cover `v_{i-1} < v_i`, the
//! insertion of the `i`-th bar.

use alloc::collections::BTreeSet;

use super::partition::{block_cmp, chain_steps, Step};
use crate::error::{Error, Result};
use crate::lex_morse::LexMorse;
use crate::poset::Poset;

/// How the bar-position condition is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InversionOrientation {
    /// `(i, j)` is an inversion when the rank-`j` bar lies left of the
    /// rank-`i` bar, so that consecutive right-to-left insertions (descents)
    /// are inversions.
    #[default]
    Left,
    /// `(i, j)` is an inversion when the rank-`j` bar lies right of the
    /// rank-`i` bar.
    Literal,
}

/// Inversion pairs `(i, j)`, `i < j`, inside the window `start..=end`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InversionSet {
    pub pairs: BTreeSet<(usize, usize)>,
    pub start: usize,
    pub end: usize,
}

impl InversionSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    /// Restriction to pairs with both ranks at least `start`.
    pub fn above(&self, start: usize) -> InversionSet {
        InversionSet {
            pairs: self
                .pairs
                .iter()
                .filter(|p| p.0 >= start)
                .copied()
                .collect(),
            start: start.max(self.start),
            end: self.end,
        }
    }

    /// Transitivity and betweenness, the two conditions for being the
    /// inversion set of a permutation of the window.
    pub fn is_permutation_like(&self) -> bool {
        let transitive = self.pairs.iter().all(|&(i, j)| {
            self.pairs
                .range((j, 0)..(j + 1, 0))
                .all(|&(_, k)| self.contains(i, k))
        });
        let between = self
            .pairs
            .iter()
            .all(|&(i, k)| (i + 1..k).all(|j| self.contains(i, j) || self.contains(j, k)));
        transitive && between
    }
}

/// Letter span `[start, end)` of the block refined by step `k` (0-based),
/// in the canonical word before the step.
fn parent_span(steps: &[Step], k: usize) -> (usize, usize) {
    let s = &steps[k];
    let start = s.position - s.left.len();
    (start, start + s.parent.len())
}

/// Inversions of a chain given by its refinement steps, over the window of
/// cover ranks `start..=steps.len()`.
pub fn inversions_of_steps(
    steps: &[Step],
    start: usize,
    orientation: InversionOrientation,
) -> InversionSet {
    let end = steps.len();
    let mut pairs = BTreeSet::new();
    let start = start.max(1);
    for i in start..=end {
        let (lo, hi) = parent_span(steps, i - 1);
        for j in i + 1..=end {
            let (pi, pj) = (steps[i - 1].position, steps[j - 1].position);
            let by_position = match orientation {
                InversionOrientation::Left => pj < pi,
                InversionOrientation::Literal => pj > pi,
            };
            let in_block = (i..=j).all(|k| {
                let (a, b) = parent_span(steps, k - 1);
                lo <= a && b <= hi
            }) && (i..j).all(|k| steps[k - 1].position < steps[k].position);
            let by_children = in_block
                && block_cmp(&steps[i - 1].left, &steps[j - 1].left)
                    == core::cmp::Ordering::Greater;
            if by_position || by_children {
                pairs.insert((i, j));
            }
        }
    }
    InversionSet { pairs, start, end }
}

/// Inversion set of facet `facet` of a lexicographic matching on
/// `Π_n/S_λ`, over cover ranks `start..`. The window must begin above the
/// last nontrivial truncated interval `[lo, hi]` of the facet, i.e. at
/// cover rank `hi + 1` or later.
pub fn inversion_set(
    poset: &Poset,
    lex: &LexMorse,
    facet: usize,
    start: usize,
    orientation: InversionOrientation,
) -> Result<InversionSet> {
    if facet >= lex.order().len() {
        return Err(Error::FacetOutOfRange(facet));
    }
    if let Some(iv) = lex.system(facet).last_nontrivial() {
        if start <= iv.hi {
            return Err(Error::WindowTooLow { start, last: iv.hi });
        }
    }
    let steps = chain_steps(poset, lex.order().facet(facet).elements())?;
    Ok(inversions_of_steps(&steps, start, orientation))
}
