//! Edge- and chain-labelings and the lexicographic facet orders they induce.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poset::{Facet, Poset};

/// A label on a (rooted) cover.
///
/// `Int` is the plain edge-labeling case. `Bar` is the multiset partition
/// label: the bar position is compared first, then the word to its left.
/// Labelings never mix the two variants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelToken {
    Int(i64),
    Bar { position: usize, word: String },
}

impl fmt::Display for LabelToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelToken::Int(v) => write!(f, "{v}"),
            LabelToken::Bar { position, word } => write!(f, "({position},{word})"),
        }
    }
}

/// A rule assigning a label to a cover `root.last() < next`, where `root` is
/// the saturated chain from bottom that leads to the cover. Implementations
/// must be pure functions of their arguments.
pub trait ChainLabeling {
    fn label(&self, poset: &Poset, root: &[usize], next: usize) -> Result<LabelToken>;

    /// Labels of every cover of a saturated chain, bottom first.
    fn label_chain(&self, poset: &Poset, chain: &[usize]) -> Result<Vec<LabelToken>> {
        (1..chain.len())
            .map(|i| self.label(poset, &chain[..i], chain[i]))
            .collect()
    }
}

/// Labels depending only on the cover itself.
#[derive(Clone, Debug, Default)]
pub struct EdgeLabeling {
    labels: BTreeMap<(usize, usize), LabelToken>,
}

impl EdgeLabeling {
    /// Checks that every entry is a cover and that covers with a common lower
    /// element carry distinct labels.
    pub fn new(poset: &Poset, labels: BTreeMap<(usize, usize), LabelToken>) -> Result<Self> {
        let mut seen: BTreeMap<(usize, &LabelToken), usize> = BTreeMap::new();
        for (&(u, v), token) in &labels {
            if !poset.is_cover(u, v) {
                return Err(Error::NotComparable(poset.id(u).into(), poset.id(v).into()));
            }
            if let Some(&other) = seen.get(&(u, token)) {
                return Err(Error::DuplicateCoverLabel {
                    lower: poset.id(u).into(),
                    first: poset.id(other).into(),
                    second: poset.id(v).into(),
                });
            }
            seen.insert((u, token), v);
        }
        Ok(EdgeLabeling { labels })
    }

    /// Builds integer labels from id triples.
    pub fn from_ids<S: AsRef<str>>(poset: &Poset, triples: &[(S, S, i64)]) -> Result<Self> {
        let mut labels = BTreeMap::new();
        for (u, v, l) in triples {
            let u = poset.index_of(u.as_ref())?;
            let v = poset.index_of(v.as_ref())?;
            labels.insert((u, v), LabelToken::Int(*l));
        }
        Self::new(poset, labels)
    }

    pub fn get(&self, u: usize, v: usize) -> Option<&LabelToken> {
        self.labels.get(&(u, v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &LabelToken)> {
        self.labels.iter()
    }

    /// The same labels, keyed by the element ids of `sub` (which must use
    /// this labeling's poset ids), dropping covers outside `sub`.
    pub fn restrict(&self, poset: &Poset, sub: &Poset) -> Result<EdgeLabeling> {
        let labels = self
            .labels
            .iter()
            .filter_map(|(&(u, v), t)| {
                let u = sub.index_of(poset.id(u)).ok()?;
                let v = sub.index_of(poset.id(v)).ok()?;
                Some(((u, v), t.clone()))
            })
            .collect();
        EdgeLabeling::new(sub, labels)
    }
}

impl ChainLabeling for EdgeLabeling {
    fn label(&self, poset: &Poset, root: &[usize], next: usize) -> Result<LabelToken> {
        let u = *root.last().expect("root chain is nonempty");
        self.labels
            .get(&(u, next))
            .cloned()
            .ok_or_else(|| Error::MissingLabel(poset.id(u).into(), poset.id(next).into()))
    }
}

/// A total order `F_1, ..., F_k` on the saturated chains of a poset.
#[derive(Clone, Debug)]
pub struct FacetOrder {
    facets: Vec<Facet>,
    labels: Option<Vec<Vec<LabelToken>>>,
    position: BTreeMap<Vec<usize>, usize>,
}

/// Outcome of checking the lexicographic order axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LexAxiomReport {
    Pass,
    /// `first` precedes `second`, they share ranks below the divergence,
    /// `tau` lies on `first` and `mu` on `second`, yet some facet through
    /// `tau` comes after a facet through `mu`. Positions are 0-based; `tau`
    /// and `mu` list interior elements from rank 1 up to the divergence.
    Violation {
        first: usize,
        second: usize,
        tau: Vec<usize>,
        mu: Vec<usize>,
    },
}

impl FacetOrder {
    /// Sorts all saturated chains by their label sequences.
    pub fn from_labeling<L: ChainLabeling + ?Sized>(poset: &Poset, labeling: &L) -> Result<Self> {
        let facets = poset.facets();
        let mut keyed: Vec<(Vec<LabelToken>, usize)> = facets
            .iter()
            .enumerate()
            .map(|(i, f)| labeling.label_chain(poset, f.elements()).map(|l| (l, i)))
            .collect::<Result<_>>()?;
        keyed.sort();
        if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateLabelSequence(w[0].1, w[1].1));
        }
        let (labels, order): (Vec<_>, Vec<_>) = keyed.into_iter().unzip();
        let facets: Vec<Facet> = order.into_iter().map(|i| facets[i].clone()).collect();
        Ok(Self::assemble(facets, Some(labels)))
    }

    /// Takes a caller-supplied order, which must list every saturated chain
    /// exactly once. No lexicographic property is assumed.
    pub fn from_explicit(poset: &Poset, facets: Vec<Facet>) -> Result<Self> {
        let mut given: Vec<&Facet> = facets.iter().collect();
        given.sort();
        let all = poset.facets();
        if given.len() != all.len() || given.iter().zip(&all).any(|(a, b)| *a != b) {
            return Err(Error::NotAFacetPermutation);
        }
        Ok(Self::assemble(facets, None))
    }

    fn assemble(facets: Vec<Facet>, labels: Option<Vec<Vec<LabelToken>>>) -> Self {
        let position = facets
            .iter()
            .enumerate()
            .map(|(i, f)| (f.elements().to_vec(), i))
            .collect();
        FacetOrder {
            facets,
            labels,
            position,
        }
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Facets in order; index 0 is `F_1`.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet(&self, index: usize) -> &Facet {
        &self.facets[index]
    }

    pub fn labels(&self) -> Option<&[Vec<LabelToken>]> {
        self.labels.as_deref()
    }

    /// 0-based position of a saturated chain given by its element indices.
    pub fn position_of(&self, elements: &[usize]) -> Option<usize> {
        self.position.get(elements).copied()
    }

    /// Checks the lexicographic order axiom: whenever two facets share all
    /// ranks below some rank and differ there, every facet through the
    /// earlier one's prefix precedes every facet through the later one's.
    ///
    /// Equivalently, at each node of the prefix trie the position ranges of
    /// the child subtrees must be pairwise disjoint.
    pub fn validate_lex_axiom(&self) -> LexAxiomReport {
        // parent prefix -> next element -> (min position, max position)
        let mut trie: BTreeMap<&[usize], BTreeMap<usize, (usize, usize)>> = BTreeMap::new();
        for (pos, f) in self.facets.iter().enumerate() {
            let el = f.elements();
            for depth in 1..el.len() {
                let range = trie
                    .entry(&el[..depth])
                    .or_default()
                    .entry(el[depth])
                    .or_insert((pos, pos));
                range.0 = range.0.min(pos);
                range.1 = range.1.max(pos);
            }
        }
        for (parent, children) in &trie {
            let mut ranges: Vec<(usize, usize, usize)> =
                children.iter().map(|(&c, &(lo, hi))| (lo, hi, c)).collect();
            ranges.sort();
            for w in ranges.windows(2) {
                let (lo_a, hi_a, a) = w[0];
                let (lo_b, _, b) = w[1];
                if lo_b < hi_a {
                    let mut tau: Vec<usize> = parent[1..].to_vec();
                    tau.push(a);
                    let mut mu: Vec<usize> = parent[1..].to_vec();
                    mu.push(b);
                    return LexAxiomReport::Violation {
                        first: lo_a,
                        second: lo_b,
                        tau,
                        mu,
                    };
                }
            }
        }
        LexAxiomReport::Pass
    }

    /// The order induced on the saturated chains of the closed interval
    /// `sub = [u, v]`: each chain of `sub` is completed by the root and tail
    /// of the earliest facet through `u` and `v`, and chains are ordered by
    /// the positions of their completions.
    pub fn restrict(&self, poset: &Poset, sub: &Poset) -> Result<FacetOrder> {
        let u = poset.index_of(sub.id(sub.bottom()))?;
        let v = poset.index_of(sub.id(sub.top()))?;
        let anchor = self
            .facets
            .iter()
            .find(|f| f.elements().contains(&u) && f.elements().contains(&v))
            .ok_or_else(|| {
                Error::NotComparable(poset.id(u).to_string(), poset.id(v).to_string())
            })?;
        let el = anchor.elements();
        let iu = el.iter().position(|&x| x == u).unwrap();
        let iv = el.iter().position(|&x| x == v).unwrap();
        let mut keyed: Vec<(usize, Facet)> = Vec::new();
        for chain in sub.facets() {
            let middle = poset.translate_chain(sub, chain.elements())?;
            let mut full = el[..iu].to_vec();
            full.extend_from_slice(&middle);
            full.extend_from_slice(&el[iv + 1..]);
            let pos = self.position_of(&full).ok_or(Error::NotAFacetPermutation)?;
            keyed.push((pos, chain));
        }
        keyed.sort();
        Ok(Self::assemble(
            keyed.into_iter().map(|(_, f)| f).collect(),
            None,
        ))
    }
}
