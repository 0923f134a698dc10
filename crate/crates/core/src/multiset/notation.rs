//! Bar-subscript notation for saturated chains: the fully refined word with
//! each bar tagged by the rank at which it is inserted, e.g.
//! `a|_3 b|_1 b|_2 a|_4 b`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use super::partition::{block_cmp, chain_steps, element_id};
use crate::error::{Error, Result};
use crate::poset::{Facet, Poset};

/// Renders a saturated chain of `Π_n/S_λ`.
pub fn render_bar_notation(poset: &Poset, facet: &Facet) -> Result<String> {
    let steps = chain_steps(poset, facet.elements())?;
    let Some(last) = steps.last() else {
        return Ok(poset.id(facet.elements()[0]).to_string());
    };
    let word: Vec<char> = last.ordered.concat().chars().collect();
    if word.len() != last.ordered.len() {
        return Err(Error::MalformedNotation(format!(
            "chain ends at `{}`, not at singletons",
            poset.id(*facet.elements().last().unwrap())
        )));
    }
    let mut rank_at = alloc::vec![0usize; word.len()];
    for (r, s) in steps.iter().enumerate() {
        rank_at[s.position] = r + 1;
    }
    let mut out = String::new();
    for (i, c) in word.iter().enumerate() {
        out.push(*c);
        if i + 1 < word.len() {
            let _ = write!(out, "|_{} ", rank_at[i + 1]);
        }
    }
    Ok(out)
}

fn tokenize(s: &str) -> Result<(Vec<char>, Vec<usize>)> {
    let mut letters = Vec::new();
    let mut ranks = Vec::new();
    let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
    loop {
        match chars.next() {
            Some(c) if c.is_ascii_lowercase() => letters.push(c),
            other => {
                return Err(Error::MalformedNotation(match other {
                    Some(c) => format!("expected a letter, found `{c}`"),
                    None => "expected a letter at end of input".to_string(),
                }))
            }
        }
        match chars.next() {
            None => break,
            Some('|') => {}
            Some(c) => {
                return Err(Error::MalformedNotation(format!(
                    "expected `|`, found `{c}`"
                )))
            }
        }
        if chars.next() != Some('_') {
            return Err(Error::MalformedNotation("bar without `_` subscript".into()));
        }
        let mut digits = String::new();
        while let Some(&c) = chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            chars.next();
        }
        let rank = digits
            .parse::<usize>()
            .map_err(|_| Error::MalformedNotation("bar subscript is not a number".into()))?;
        ranks.push(rank);
    }
    Ok((letters, ranks))
}

fn sorted(chars: &[char]) -> String {
    let mut v = chars.to_vec();
    v.sort_unstable();
    v.into_iter().collect()
}

/// Reconstructs the saturated chain named by a bar-subscript word by
/// inserting bars in subscript order. Rejects words that do not arise from
/// the canonical refinement rule, so parsing and rendering are inverse.
pub fn parse_bar_notation(poset: &Poset, s: &str) -> Result<Facet> {
    let (word, ranks) = tokenize(s)?;
    let mut gap_of = alloc::vec![0usize; ranks.len()];
    for (g, &r) in ranks.iter().enumerate() {
        if r == 0 || r > ranks.len() || gap_of[r - 1] != 0 {
            return Err(Error::InconsistentSubscripts(format!(
                "subscripts must be a permutation of 1..={}",
                ranks.len()
            )));
        }
        gap_of[r - 1] = g + 1;
    }
    let mut cuts: Vec<usize> = alloc::vec![0, word.len()];
    let blocks = |cuts: &[usize]| -> Vec<String> {
        cuts.windows(2).map(|w| sorted(&word[w[0]..w[1]])).collect()
    };
    let mut elements = Vec::with_capacity(ranks.len() + 1);
    elements.push(poset.index_of(&element_id(&blocks(&cuts)))?);
    for (r, &g) in gap_of.iter().enumerate() {
        let at = cuts.partition_point(|&c| c < g);
        let (start, end) = (cuts[at - 1], cuts[at]);
        let parent = sorted(&word[start..end]);
        let left = sorted(&word[start..g]);
        let right = sorted(&word[g..end]);
        let leftmost = blocks(&cuts[..at]).iter().all(|b| *b != parent);
        if block_cmp(&left, &right) == Ordering::Greater || !leftmost {
            return Err(Error::InconsistentSubscripts(format!(
                "bar {} does not split `{parent}` by the refinement rule",
                r + 1
            )));
        }
        cuts.insert(at, g);
        elements.push(poset.index_of(&element_id(&blocks(&cuts)))?);
    }
    let facet = Facet::new(elements);
    if !poset.is_saturated_chain(facet.elements()) {
        return Err(Error::MalformedNotation(
            "word does not name a saturated chain".into(),
        ));
    }
    if render_bar_notation(poset, &facet)?.replace(' ', "") != s.replace(char::is_whitespace, "") {
        return Err(Error::InconsistentSubscripts(
            "letters within a block are not in canonical order".into(),
        ));
    }
    Ok(facet)
}
