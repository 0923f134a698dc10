//! Cancelling every lower critical cell of the lexicographic matching on
//! `Π_n/S_λ`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::inversions::{inversions_of_steps, InversionOrientation};
use super::partition::{build_multiset_poset, chain_steps, Lambda, MultisetLabeling};
use super::partner::{partner_candidates, predicted_direction, Partner, ShiftDirection};
use crate::error::{Error, Result};
use crate::labeling::FacetOrder;
use crate::lex_morse::LexMorse;
use crate::morse::{AcyclicMatching, GradientPath, MorseVector};
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CancelOptions {
    /// Run on shapes other than hooks, recording failures instead of
    /// raising them.
    pub force: bool,
}

/// One reversed gradient path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancelledPair {
    pub upper: usize,
    pub lower: usize,
    pub upper_facet: usize,
    pub lower_facet: usize,
    pub agreement: usize,
    pub direction: ShiftDirection,
    pub predicted: Option<ShiftDirection>,
    pub path: GradientPath,
    /// Gradient paths from `upper` to `lower` when the pair was cancelled.
    pub paths: u128,
    /// Rank of each deleted vertex along the path.
    pub deleted_ranks: Vec<usize>,
    /// Inversion count above the agreed ranks, for the facet of each upper
    /// face on the path and then for the facet of the lower cell.
    pub inversions: Vec<usize>,
    /// No deleted rank lies inside the agreed prefix.
    pub rank_preserving: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancelReport {
    pub lambda: Vec<usize>,
    pub facets: usize,
    pub top_dimension: isize,
    pub initial: MorseVector,
    pub pairs: Vec<CancelledPair>,
    /// Lower cells left without a partner (force mode only).
    pub unpaired: Vec<usize>,
    /// Facets of lower cells with no critical cell to pair with (force mode
    /// only).
    pub partner_not_critical: Vec<usize>,
    /// Pairs whose path count was not one, with that count (force mode
    /// only).
    pub not_unique: Vec<(usize, usize, u128)>,
    pub survivors: Vec<usize>,
    pub final_vector: MorseVector,
}

impl CancelReport {
    /// All survivors lie in the top dimension.
    pub fn is_concentrated(&self, matching: &AcyclicMatching) -> bool {
        self.survivors
            .iter()
            .all(|&c| matching.complex().dim_of(c) == self.top_dimension)
    }
}

/// Greedy injective pairing: candidate edges by agreement, then lexicographic
/// distance, taking an edge when both ends are free.
fn pair_up(
    lex: &LexMorse,
    lower: &[usize],
    force: bool,
    report: &mut CancelReport,
) -> Result<Vec<Partner>> {
    let mut edges = Vec::new();
    let mut best_of = Vec::with_capacity(lower.len());
    for &cell in lower {
        let cands = partner_candidates(lex, lex.matching(), cell)?;
        if cands.is_empty() {
            if !force {
                return Err(Error::PartnerNotCritical {
                    facet: lex.fibre_of(cell),
                });
            }
            report.partner_not_critical.push(lex.fibre_of(cell));
        }
        best_of.push(cands.first().map(|p| p.partner));
        edges.extend(cands);
    }
    edges.sort_by_key(|p| {
        (
            core::cmp::Reverse(p.agreement),
            p.facet.abs_diff(p.partner_facet),
            p.facet.min(p.partner_facet),
            p.cell,
            p.partner,
        )
    });
    let mut used = BTreeSet::new();
    let mut chosen = Vec::new();
    for e in edges {
        if used.contains(&e.cell) || used.contains(&e.partner) {
            continue;
        }
        used.insert(e.cell);
        used.insert(e.partner);
        chosen.push(e);
    }
    for (&cell, best) in lower.iter().zip(best_of) {
        if used.contains(&cell) {
            continue;
        }
        let Some(partner) = best else { continue };
        if !force {
            let first = chosen
                .iter()
                .find(|p| p.cell == partner || p.partner == partner)
                .map_or(cell, |p| {
                    if p.partner == partner {
                        p.cell
                    } else {
                        p.partner
                    }
                });
            return Err(Error::PairingConflict {
                first,
                second: cell,
                partner,
            });
        }
        report.unpaired.push(cell);
    }
    Ok(chosen)
}

fn inversion_counts(
    poset: &Poset,
    lex: &LexMorse,
    facets: &[usize],
    start: usize,
) -> Result<Vec<usize>> {
    facets
        .iter()
        .map(|&f| {
            let steps = chain_steps(poset, lex.order().facet(f).elements())?;
            Ok(inversions_of_steps(&steps, start, InversionOrientation::Left).len())
        })
        .collect()
}

/// Builds the lexicographic matching of `Π_n/S_λ`, pairs each lower critical
/// cell with the critical cell agreeing with it to the highest rank, and
/// cancels the pairs in lexicographic order of the earlier facet, each along
/// its unique gradient path.
pub fn cancel_all_lower(
    lambda: &Lambda,
    opts: CancelOptions,
) -> Result<(AcyclicMatching, CancelReport)> {
    if !lambda.is_hook() && !opts.force {
        return Err(Error::NotHookShaped(lambda.parts().to_vec()));
    }
    let poset = build_multiset_poset(lambda)?;
    let lex = LexMorse::build(FacetOrder::from_labeling(&poset, &MultisetLabeling)?)?;
    cancel_lower_of(&poset, &lex, lambda.parts().to_vec(), opts)
}

/// The cancellation pipeline on an already built lexicographic matching.
pub fn cancel_lower_of(
    poset: &Poset,
    lex: &LexMorse,
    lambda: Vec<usize>,
    opts: CancelOptions,
) -> Result<(AcyclicMatching, CancelReport)> {
    let top_dimension = lex.order().facet(0).proper_length() as isize - 1;
    let mut report = CancelReport {
        lambda,
        facets: lex.order().len(),
        top_dimension,
        initial: lex.matching().morse_vector(),
        pairs: Vec::new(),
        unpaired: Vec::new(),
        partner_not_critical: Vec::new(),
        not_unique: Vec::new(),
        survivors: Vec::new(),
        final_vector: MorseVector::default(),
    };
    let lower: Vec<usize> = lex
        .critical()
        .into_iter()
        .filter(|&c| lex.complex().dim_of(c) < top_dimension)
        .collect();
    let mut chosen = pair_up(lex, &lower, opts.force, &mut report)?;
    chosen.sort_by_key(|p| (p.facet.min(p.partner_facet), p.facet.max(p.partner_facet)));

    let mut matching = lex.matching().clone();
    for p in chosen {
        let (upper, lower) = match p.direction {
            ShiftDirection::Out => (p.partner, p.cell),
            ShiftDirection::In => (p.cell, p.partner),
        };
        let count = matching.count_gradient_paths(upper, lower)?;
        if count != 1 {
            if !opts.force {
                return Err(Error::NotUnique(count.min(usize::MAX as u128) as usize));
            }
            report.not_unique.push((upper, lower, count));
            continue;
        }
        let path = matching.gradient_paths(upper, lower)?.remove(0);
        let deleted_ranks = lex.deleted_ranks(&path);
        let mut on_path: Vec<usize> = path
            .faces
            .iter()
            .step_by(2)
            .map(|&f| lex.fibre_of(f))
            .collect();
        on_path.push(lex.fibre_of(lower));
        let inversions = inversion_counts(poset, lex, &on_path, p.agreement + 1)?;
        let rank_preserving = deleted_ranks.iter().all(|&r| r > p.agreement);
        matching = matching.cancel(upper, lower)?;
        report.pairs.push(CancelledPair {
            upper,
            lower,
            upper_facet: lex.fibre_of(upper),
            lower_facet: lex.fibre_of(lower),
            agreement: p.agreement,
            direction: p.direction,
            predicted: predicted_direction(poset, lex, p.facet)?,
            path,
            paths: count,
            deleted_ranks,
            inversions,
            rank_preserving,
        });
    }
    let mut survivors = matching.critical();
    survivors.sort_by_key(|&c| (lex.fibre_of(c), c));
    report.survivors = survivors;
    report.final_vector = matching.morse_vector();
    Ok((matching, report))
}
