//! How a nontrivial minimal skipped interval arises.
//!
//! The interval `[lo, hi]` of a facet `F` is compared with the earliest facet
//! `γ` agreeing with `F` outside it. Both refine the ordered partition at
//! rank `lo - 1` into the same partition at rank `hi + 1`; they differ in
//! which blocks get refined and into which children.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::partition::{blocks_of, chain_steps};
use crate::error::{Error, Result};
use crate::lex_morse::{LexMorse, RankInterval};
use crate::poset::{Facet, Poset};

/// The mechanism behind a nontrivial minimal skipped interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsiType {
    /// Two identical blocks refined in swapped ways.
    Type1,
    /// The same blocks split into the same pieces, with pieces attached to
    /// different parent types.
    Type2,
    /// A block refined in one chain is kept whole in the other, where it
    /// reappears as a child of a larger block.
    Type3,
    /// More than one of the above at once.
    Hybrid,
}

/// The earliest facet agreeing with facet `j` at every rank outside
/// `iv`.
fn earliest_agreeing(lex: &LexMorse, j: usize, iv: RankInterval) -> usize {
    let f = lex.order().facet(j).elements();
    let keep = |g: &Facet| {
        let e = g.elements();
        e.len() == f.len() && (0..f.len()).all(|r| iv.contains(r) || e[r] == f[r])
    };
    lex.order()
        .facets()
        .iter()
        .position(keep)
        .expect("facet agrees with itself")
}

/// Classifies a nontrivial minimal skipped interval `iv` of facet `j`.
pub fn classify_msi(poset: &Poset, lex: &LexMorse, j: usize, iv: RankInterval) -> Result<MsiType> {
    if iv.height() < 2 {
        return Err(Error::TrivialInterval(iv.lo, iv.hi));
    }
    if j >= lex.order().len() {
        return Err(Error::FacetOutOfRange(j));
    }
    let g = earliest_agreeing(lex, j, iv);
    if g == j {
        return Err(Error::IntervalNotSkipped(iv.lo, iv.hi));
    }
    let f = lex.order().facet(j).elements();
    let e = lex.order().facet(g).elements();
    let hi = iv.hi + 1;
    classify_chains(poset, &f[..=hi], &e[..=hi], iv.lo - 1)?
        .ok_or(Error::IntervalNotSkipped(iv.lo, iv.hi))
}

/// Classifies how chain `c2` differs from chain `c1` between rank `from`
/// and their common last element. Both chains start at the same element
/// and agree up to rank `from`, so their ordered partitions there agree.
pub fn classify_chains(
    poset: &Poset,
    c2: &[usize],
    c1: &[usize],
    from: usize,
) -> Result<Option<MsiType>> {
    let s2 = chain_steps(poset, c2)?;
    let s1 = chain_steps(poset, c1)?;
    let lower = if from == 0 {
        blocks_of(poset.id(c2[0]))
    } else {
        s2[from - 1].ordered.clone()
    };
    let up2 = s2
        .last()
        .map_or_else(|| lower.clone(), |s| s.ordered.clone());
    let up1 = s1
        .last()
        .map_or_else(|| lower.clone(), |s| s.ordered.clone());
    let kids = |upper: &[String]| -> Vec<Vec<String>> {
        let mut out = Vec::with_capacity(lower.len());
        let mut it = upper.iter();
        for block in &lower {
            let mut left = block.len();
            let mut k = Vec::new();
            while left > 0 {
                let b = it.next().expect("upper refines lower");
                left -= b.len();
                k.push(b.clone());
            }
            k.sort();
            out.push(k);
        }
        out
    };
    let (k2, k1) = (kids(&up2), kids(&up1));
    Ok(classify_children(&lower, &k1, &k2))
}

/// The classification rule on children lists of each lower block.
pub fn classify_children(
    lower: &[String],
    k1: &[Vec<String>],
    k2: &[Vec<String>],
) -> Option<MsiType> {
    if k1 == k2 {
        return None;
    }
    let tally = |k: &[Vec<String>], with_kids: bool| -> BTreeMap<(String, Vec<String>), usize> {
        let mut m = BTreeMap::new();
        for (b, kids) in lower.iter().zip(k) {
            if kids.len() > 1 {
                let key = (b.clone(), if with_kids { kids.clone() } else { Vec::new() });
                *m.entry(key).or_insert(0) += 1;
            }
        }
        m
    };
    let type3 = tally(k1, false) != tally(k2, false);
    let moved = tally(k1, true) != tally(k2, true);
    let differs = |i: usize| k1[i] != k2[i];
    Some(if type3 {
        let mixed = (0..lower.len()).any(|i| k1[i].len() > 1 && k2[i].len() > 1 && differs(i));
        if mixed {
            MsiType::Hybrid
        } else {
            MsiType::Type3
        }
    } else if moved {
        let swapped = (0..lower.len()).any(|i| {
            differs(i) && (0..lower.len()).any(|j| j != i && lower[j] == lower[i] && k1[i] == k2[j])
        });
        if swapped {
            MsiType::Hybrid
        } else {
            MsiType::Type2
        }
    } else {
        MsiType::Type1
    })
}
