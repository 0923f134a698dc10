//! Partner cells for lower critical cells.
//!
//! A lower critical cell is paired with a critical cell of adjacent
//! dimension, joined to it by at least one gradient path, whose facet agrees
//! with its own facet up to the highest rank. The shift direction predicted
//! from the children of the last bar inside the last nontrivial interval is
//! reported next to the direction actually found.

use alloc::vec::Vec;

use super::partition::{block_cmp, chain_steps};
use crate::error::{Error, Result};
use crate::lex_morse::{IntervalSystem, LexMorse, RankInterval};
use crate::morse::AcyclicMatching;
use crate::poset::{Facet, Poset};

/// Whether the partner lies one dimension up (a bar shifted out of the
/// interval) or one dimension down (a bar shifted in).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ShiftDirection {
    Out,
    In,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partner {
    /// The lower critical cell and its facet.
    pub cell: usize,
    pub facet: usize,
    /// The partner cell and its facet.
    pub partner: usize,
    pub partner_facet: usize,
    pub direction: ShiftDirection,
    /// Number of ranks, from rank 1 up, on which the two facets agree.
    pub agreement: usize,
    /// Gradient paths from the higher cell of the pair to the lower one.
    pub paths: u128,
    /// Direction predicted by comparing `L_r` with `L_{R_r}`, when `R_r` is
    /// refined later in the chain.
    pub predicted: Option<ShiftDirection>,
}

/// Number of leading ranks `1, 2, ...` on which two facets agree.
pub fn agreement(f: &Facet, g: &Facet) -> usize {
    f.interior()
        .iter()
        .zip(g.interior())
        .take_while(|(a, b)| a == b)
        .count()
}

/// The highest-rank nontrivial interval of the truncated system.
pub fn last_nontrivial(sys: &IntervalSystem) -> Result<RankInterval> {
    sys.last_nontrivial().ok_or(Error::NoNontrivialInterval)
}

/// Compares the left child `L_r` of the last bar insertion inside the last
/// nontrivial interval with the left child of the first later refinement of
/// the right child `R_r`.
pub fn predicted_direction(
    poset: &Poset,
    lex: &LexMorse,
    facet: usize,
) -> Result<Option<ShiftDirection>> {
    let iv = last_nontrivial(lex.system(facet))?;
    let steps = chain_steps(poset, lex.order().facet(facet).elements())?;
    let r = iv.hi - 1;
    let mut at = steps[r].block_index + 1;
    for s in &steps[r + 1..] {
        if s.block_index == at {
            let out = block_cmp(&steps[r].left, &s.left) == core::cmp::Ordering::Greater;
            return Ok(Some(if out {
                ShiftDirection::Out
            } else {
                ShiftDirection::In
            }));
        }
        if s.block_index < at {
            at += 1;
        }
    }
    Ok(None)
}

/// Every critical cell of adjacent dimension joined to `cell` by a gradient
/// path in `matching`, best partner first: highest agreement, then nearest
/// facet in the lexicographic order, then lower cell id.
pub fn partner_candidates(
    lex: &LexMorse,
    matching: &AcyclicMatching,
    cell: usize,
) -> Result<Vec<Partner>> {
    if !matching.is_critical(cell) {
        return Err(Error::NotCritical);
    }
    let facet = lex.fibre_of(cell);
    last_nontrivial(lex.system(facet))?;
    let dim = lex.complex().dim_of(cell);
    let own = lex.order().facet(facet);
    let mut out = Vec::new();
    for other in matching.critical() {
        let d = lex.complex().dim_of(other);
        let direction = if d == dim + 1 {
            ShiftDirection::Out
        } else if d + 1 == dim {
            ShiftDirection::In
        } else {
            continue;
        };
        let paths = match direction {
            ShiftDirection::Out => matching.count_gradient_paths(other, cell)?,
            ShiftDirection::In => matching.count_gradient_paths(cell, other)?,
        };
        if paths == 0 {
            continue;
        }
        let partner_facet = lex.fibre_of(other);
        out.push(Partner {
            cell,
            facet,
            partner: other,
            partner_facet,
            direction,
            agreement: agreement(own, lex.order().facet(partner_facet)),
            paths,
            predicted: None,
        });
    }
    out.sort_by_key(|p| {
        (
            core::cmp::Reverse(p.agreement),
            p.facet.abs_diff(p.partner_facet),
            p.partner,
        )
    });
    Ok(out)
}

/// The partner of a lower critical cell of the lexicographic matching.
pub fn partner_cell(poset: &Poset, lex: &LexMorse, cell: usize) -> Result<Partner> {
    let mut best = partner_candidates(lex, lex.matching(), cell)?
        .into_iter()
        .next()
        .ok_or(Error::PartnerNotCritical {
            facet: lex.fibre_of(cell),
        })?;
    best.predicted = predicted_direction(poset, lex, best.facet)?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::FacetOrder;
    use crate::multiset::{build_multiset_poset, parse_bar_notation, Lambda, MultisetLabeling};
    use alloc::vec;

    fn lex_of(parts: Vec<usize>) -> (Poset, LexMorse) {
        let p = build_multiset_poset(&Lambda::new(parts).unwrap()).unwrap();
        let lex =
            LexMorse::build(FacetOrder::from_labeling(&p, &MultisetLabeling).unwrap()).unwrap();
        (p, lex)
    }

    #[test]
    fn top_cells_have_no_partner() {
        let (p, lex) = lex_of(vec![3, 1]);
        let f = parse_bar_notation(&p, "a|_3 a|_1 a|_2 b").unwrap();
        let j = lex.order().position_of(f.elements()).unwrap();
        let cell = lex.critical_face_of(j).unwrap();
        assert!(lex.matching().is_critical(cell));
        assert_eq!(
            partner_cell(&p, &lex, cell),
            Err(Error::NoNontrivialInterval)
        );
    }

    #[test]
    fn non_critical_cells_are_rejected() {
        let (p, lex) = lex_of(vec![3, 1]);
        let matched = (0..lex.complex().len())
            .find(|&i| !lex.matching().is_critical(i))
            .unwrap();
        assert_eq!(partner_cell(&p, &lex, matched), Err(Error::NotCritical));
    }

    #[test]
    fn lower_cell_of_two_two_two() {
        let (p, lex) = lex_of(vec![2, 2, 2]);
        let f = parse_bar_notation(&p, "a|_5 c|_1 a|_2 b|_3 b|_4 c").unwrap();
        let j = lex.order().position_of(f.elements()).unwrap();
        let cell = lex.critical_face_of(j).unwrap();
        assert_eq!(lex.complex().dim_of(cell), 2);
        let best = partner_cell(&p, &lex, cell).unwrap();
        assert_eq!(lex.complex().dim_of(best.partner), 3);
        assert_eq!(best.direction, ShiftDirection::Out);
        assert!(best.paths >= 1);
        let all = partner_candidates(&lex, lex.matching(), cell).unwrap();
        assert!(all.iter().all(|c| c.agreement <= best.agreement));
    }

    #[test]
    fn agreement_counts_common_prefix() {
        let (p, _) = lex_of(vec![1, 1, 1, 1]);
        let f = parse_bar_notation(&p, "a|_2 b|_1 c|_3 d").unwrap();
        let g = parse_bar_notation(&p, "a|_3 b|_1 c|_2 d").unwrap();
        let h = parse_bar_notation(&p, "a|_1 b|_2 c|_3 d").unwrap();
        assert_eq!(agreement(&f, &f), 2);
        assert_eq!(agreement(&f, &g), 1);
        assert_eq!(agreement(&f, &h), 0);
    }
}
