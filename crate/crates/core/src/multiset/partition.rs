use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::labeling::{ChainLabeling, LabelToken};
use crate::poset::Poset;

/// An integer partition `λ1 >= ... >= λk >= 1`, at most 26 parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lambda(Vec<usize>);

impl Lambda {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let ok = !parts.is_empty()
            && parts.len() <= 26
            && parts.iter().all(|&p| p > 0)
            && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Lambda(parts))
        } else {
            Err(Error::InvalidPartition(parts))
        }
    }

    /// Parses comma-separated parts such as `3,1,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: core::result::Result<Vec<usize>, _> =
            s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        match parts {
            Ok(p) => Lambda::new(p),
            Err(_) => Err(Error::InvalidPartition(Vec::new())),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts, `l(λ)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// `λ2 = ... = λk = 1`.
    pub fn is_hook(&self) -> bool {
        self.0[1..].iter().all(|&p| p == 1)
    }

    /// The multiset as a sorted word: `(3,2)` gives `aaabb`.
    pub fn word(&self) -> String {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| core::iter::repeat_n((b'a' + i as u8) as char, m))
            .collect()
    }

    /// Every hook partition of `n`, longest first part first.
    pub fn hooks(n: usize) -> Vec<Lambda> {
        (1..=n)
            .rev()
            .map(|m| {
                let mut parts = alloc::vec![m];
                parts.extend(core::iter::repeat_n(1, n - m));
                Lambda(parts)
            })
            .collect()
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Length-lex order on block words: shorter first, then lexicographic.
pub fn block_cmp(a: &str, b: &str) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn sort_blocks(blocks: &mut [String]) {
    blocks.sort_by(|a, b| block_cmp(a, b));
}

/// Canonical id of a multiset of blocks.
pub fn element_id(blocks: &[String]) -> String {
    let mut sorted = blocks.to_vec();
    sort_blocks(&mut sorted);
    sorted.join("|")
}

/// The blocks of an element id.
pub fn blocks_of(id: &str) -> Vec<String> {
    id.split('|').map(ToString::to_string).collect()
}

/// Id of an integer partition inside `Π_n/S_n`: `[3, 1]` gives `a|aaa`.
pub fn integer_partition_id(parts: &[usize]) -> String {
    let blocks: Vec<String> = parts.iter().map(|&p| "a".repeat(p)).collect();
    element_id(&blocks)
}

fn letter_counts(word: &str) -> BTreeMap<char, usize> {
    let mut counts = BTreeMap::new();
    for c in word.chars() {
        *counts.entry(c).or_insert(0) += 1;
    }
    counts
}

/// Splits of a block into two nonempty children `(left, right)` with
/// `left <= right` in length-lex order.
fn splits(block: &str) -> Vec<(String, String)> {
    let counts: Vec<(char, usize)> = letter_counts(block).into_iter().collect();
    let mut out = Vec::new();
    let mut take = alloc::vec![0usize; counts.len()];
    loop {
        let mut i = 0;
        while i < counts.len() && take[i] == counts[i].1 {
            take[i] = 0;
            i += 1;
        }
        if i == counts.len() {
            break;
        }
        take[i] += 1;
        let mut left = String::new();
        let mut right = String::new();
        for (&(c, m), &t) in counts.iter().zip(&take) {
            left.extend(core::iter::repeat_n(c, t));
            right.extend(core::iter::repeat_n(c, m - t));
        }
        if !right.is_empty() && block_cmp(&left, &right) != Ordering::Greater {
            out.push((left, right));
        }
    }
    out
}

fn refinements(blocks: &[String]) -> Vec<Vec<String>> {
    let distinct: BTreeSet<&String> = blocks.iter().collect();
    let mut out = Vec::new();
    for b in distinct {
        let at = blocks.iter().position(|x| x == b).unwrap();
        for (l, r) in splits(b) {
            let mut next = blocks.to_vec();
            next.remove(at);
            next.push(l);
            next.push(r);
            sort_blocks(&mut next);
            out.push(next);
        }
    }
    out
}

fn build_from(start: Vec<String>, keep: impl Fn(&[String]) -> bool) -> Result<Poset> {
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    let mut covers = Vec::new();
    while let Some(blocks) = queue.pop_front() {
        let id = blocks.join("|");
        for next in refinements(&blocks) {
            if !keep(&next) {
                continue;
            }
            covers.push((id.clone(), next.join("|")));
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Poset::from_covers(&covers)
}

/// `Π_n/S_λ`, ordered from the single block (bottom) to the singletons
/// (top).
pub fn build_multiset_poset(lambda: &Lambda) -> Result<Poset> {
    build_from(alloc::vec![lambda.word()], |_| true)
}

/// Partitions of the multiset of letters of `word`, for letter assignments
/// other than the default one of [`Lambda::word`].
pub fn build_word_poset(word: &str) -> Result<Poset> {
    let mut letters: Vec<char> = word.chars().collect();
    letters.sort_unstable();
    build_from(alloc::vec![letters.into_iter().collect()], |_| true)
}

/// Whether `fine` refines `coarse`: its blocks can be grouped so that each
/// group's letters make up one block of `coarse`.
pub fn refines(fine: &[String], coarse: &[String]) -> bool {
    let mut fine: Vec<BTreeMap<char, usize>> = fine.iter().map(|b| letter_counts(b)).collect();
    fine.sort_by_key(|c| core::cmp::Reverse(c.values().sum::<usize>()));
    let mut room: Vec<BTreeMap<char, usize>> = coarse.iter().map(|b| letter_counts(b)).collect();
    let total = |c: &BTreeMap<char, usize>| c.values().sum::<usize>();
    if fine.iter().map(total).sum::<usize>() != room.iter().map(total).sum::<usize>() {
        return false;
    }
    fn place(i: usize, fine: &[BTreeMap<char, usize>], room: &mut [BTreeMap<char, usize>]) -> bool {
        if i == fine.len() {
            return room.iter().all(|r| r.values().all(|&c| c == 0));
        }
        for j in 0..room.len() {
            if (0..j).any(|k| room[k] == room[j]) {
                continue;
            }
            if fine[i]
                .iter()
                .all(|(c, &m)| room[j].get(c).copied().unwrap_or(0) >= m)
            {
                for (c, &m) in &fine[i] {
                    *room[j].get_mut(c).unwrap() -= m;
                }
                let ok = place(i + 1, fine, room);
                for (c, &m) in &fine[i] {
                    *room[j].get_mut(c).unwrap() += m;
                }
                if ok {
                    return true;
                }
            }
        }
        false
    }
    place(0, &fine, &mut room)
}

/// The closed interval between two elements given by id, built by
/// enumerating only refinements of the coarser one that the finer one
/// refines. The two ids may be given in either order.
pub fn ziegler_interval(x: &str, y: &str) -> Result<Poset> {
    let (bx, by) = (blocks_of(x), blocks_of(y));
    let (coarse, fine) = if bx.len() <= by.len() {
        (bx, by)
    } else {
        (by, bx)
    };
    if !refines(&fine, &coarse) {
        return Err(Error::NotComparable(x.to_string(), y.to_string()));
    }
    let mut coarse = coarse;
    sort_blocks(&mut coarse);
    build_from(coarse, |b| refines(&fine, b))
}

/// One refinement step along a rooted chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// Ordered partition after the step.
    pub ordered: Vec<String>,
    /// Index of the refined block in the ordered partition before the step.
    pub block_index: usize,
    pub parent: String,
    pub left: String,
    pub right: String,
    /// Gap index of the new bar in the canonical word after the step.
    pub position: usize,
}

impl Step {
    pub fn label(&self) -> LabelToken {
        LabelToken::Bar {
            position: self.position,
            word: self.left.clone(),
        }
    }
}

/// Refines the leftmost block equal to `parent` of an ordered partition
/// into `a` and `b`, smaller child on the left.
pub fn chain_label(ordered: &[String], parent: &str, a: &str, b: &str) -> Result<Step> {
    let block_index = ordered
        .iter()
        .position(|x| x == parent)
        .ok_or_else(|| Error::BlockNotPresent(parent.to_string()))?;
    let mut children = [a.to_string(), b.to_string()];
    if block_cmp(&children[0], &children[1]) == Ordering::Greater {
        children.swap(0, 1);
    }
    let [left, right] = children;
    let position = ordered[..block_index]
        .iter()
        .map(String::len)
        .sum::<usize>()
        + left.len();
    let mut next = ordered.to_vec();
    next.splice(block_index..=block_index, [left.clone(), right.clone()]);
    Ok(Step {
        ordered: next,
        block_index,
        parent: parent.to_string(),
        left,
        right,
        position,
    })
}

fn multiset_difference(a: &[String], b: &[String]) -> Vec<String> {
    let mut rest: Vec<&String> = b.iter().collect();
    let mut out = Vec::new();
    for x in a {
        if let Some(i) = rest.iter().position(|y| *y == x) {
            rest.remove(i);
        } else {
            out.push(x.clone());
        }
    }
    out
}

/// The refinement steps of a chain of elements, starting from the first
/// element's blocks in length-lex order.
pub fn chain_steps(poset: &Poset, chain: &[usize]) -> Result<Vec<Step>> {
    let Some(&first) = chain.first() else {
        return Ok(Vec::new());
    };
    let mut ordered = blocks_of(poset.id(first));
    let mut steps = Vec::with_capacity(chain.len().saturating_sub(1));
    for w in chain.windows(2) {
        let (u, v) = (blocks_of(poset.id(w[0])), blocks_of(poset.id(w[1])));
        let removed = multiset_difference(&u, &v);
        let added = multiset_difference(&v, &u);
        if removed.len() != 1 || added.len() != 2 {
            return Err(Error::NotComparable(
                poset.id(w[0]).into(),
                poset.id(w[1]).into(),
            ));
        }
        let step = chain_label(&ordered, &removed[0], &added[0], &added[1])?;
        ordered = step.ordered.clone();
        steps.push(step);
    }
    Ok(steps)
}

/// The length-lex bar labeling of `Π_n/S_λ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct MultisetLabeling;

impl ChainLabeling for MultisetLabeling {
    fn label(&self, poset: &Poset, root: &[usize], next: usize) -> Result<LabelToken> {
        let mut chain = root.to_vec();
        chain.push(next);
        let steps = chain_steps(poset, &chain)?;
        Ok(steps.last().expect("chain has a cover").label())
    }

    fn label_chain(&self, poset: &Poset, chain: &[usize]) -> Result<Vec<LabelToken>> {
        Ok(chain_steps(poset, chain)?.iter().map(Step::label).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ids(p: &Poset, names: &[&str]) -> Vec<usize> {
        names.iter().map(|s| p.index_of(s).unwrap()).collect()
    }

    #[test]
    fn lambda_validation() {
        assert!(Lambda::new(vec![2, 1, 1]).unwrap().is_hook());
        assert!(!Lambda::new(vec![2, 2]).unwrap().is_hook());
        assert_eq!(
            Lambda::new(vec![1, 2]),
            Err(Error::InvalidPartition(vec![1, 2]))
        );
        assert!(Lambda::new(vec![]).is_err());
        assert_eq!(Lambda::parse("3, 2").unwrap().word(), "aaabb");
        assert!(Lambda::parse("3,x").is_err());
        assert_eq!(Lambda::hooks(3).len(), 3);
    }

    #[test]
    fn split_enumeration() {
        assert_eq!(splits("aa"), vec![("a".into(), "a".into())]);
        let s = splits("abb");
        assert_eq!(
            s,
            vec![("a".into(), "bb".into()), ("b".into(), "ab".into())]
        );
        assert_eq!(splits("aabbb").len(), 5);
    }

    #[test]
    fn sizes_of_small_posets() {
        // Set partitions of 4 (Bell number 15), integer partitions of 5 (7),
        // and the 2,1,1 case.
        let pi4 = build_multiset_poset(&Lambda::new(vec![1, 1, 1, 1]).unwrap()).unwrap();
        assert_eq!(pi4.len(), 15);
        let p5 = build_multiset_poset(&Lambda::new(vec![5]).unwrap()).unwrap();
        assert_eq!(p5.len(), 7);
        let q = build_multiset_poset(&Lambda::new(vec![2, 1, 1]).unwrap()).unwrap();
        assert_eq!(q.id(q.bottom()), "aabc");
        assert_eq!(q.id(q.top()), "a|a|b|c");
    }

    #[test]
    fn worked_chain_labels() {
        let p = build_word_poset("aabbb").unwrap();
        let chain = ids(&p, &["aabbb", "ab|abb", "b|ab|ab", "a|b|b|ab", "a|a|b|b|b"]);
        let labels = MultisetLabeling.label_chain(&p, &chain).unwrap();
        let expect = [(2, "ab"), (3, "b"), (1, "a"), (4, "a")];
        for (l, (pos, w)) in labels.iter().zip(expect) {
            assert_eq!(
                *l,
                LabelToken::Bar {
                    position: pos,
                    word: w.into()
                }
            );
        }
        let steps = chain_steps(&p, &chain).unwrap();
        assert_eq!(steps[3].ordered, ["a", "b", "b", "a", "b"]);
        assert_eq!(steps[0].left, "ab");
    }

    #[test]
    fn two_letter_chain() {
        let p = build_multiset_poset(&Lambda::new(vec![2]).unwrap()).unwrap();
        let chain = ids(&p, &["aa", "a|a"]);
        assert_eq!(
            MultisetLabeling.label_chain(&p, &chain).unwrap(),
            [LabelToken::Bar {
                position: 1,
                word: "a".into()
            }]
        );
    }

    #[test]
    fn refine_missing_block() {
        let ordered = vec!["ab".to_string()];
        assert_eq!(
            chain_label(&ordered, "aa", "a", "a"),
            Err(Error::BlockNotPresent("aa".into()))
        );
    }

    #[test]
    fn refinement_check() {
        let b = |s: &str| blocks_of(s);
        assert!(refines(&b("a|a|ab"), &b("aa|ab")));
        assert!(refines(&b("a|a|ab"), &b("aab|a")));
        assert!(!refines(&b("aa|bb"), &b("ab|ab")));
        assert_eq!(integer_partition_id(&[3, 1]), "a|aaa");
    }
}
