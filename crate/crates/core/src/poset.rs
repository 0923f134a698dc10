//! Finite bounded posets given by their cover relations, saturated chains,
//! and closed intervals.
//!
//! Element ids are opaque strings. Internally every element gets an index
//! equal to its position in the lexicographic order of ids, so any ordering
//! done on indices agrees with ordering on the id strings.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A finite poset with a unique minimum and maximum.
#[derive(Clone, Debug)]
pub struct Poset {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    /// `le[v]` holds every `u` with `u <= v`.
    le: Vec<FixedBitSet>,
    topo: Vec<usize>,
}

/// A saturated chain `bottom = u_0 < u_1 < ... < u_r = top`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    elements: Vec<usize>,
}

impl Facet {
    pub fn new(elements: Vec<usize>) -> Self {
        debug_assert!(elements.len() >= 2);
        Facet { elements }
    }

    /// All elements, bottom and top included.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// The elements strictly between bottom and top; the element at interior
    /// rank `i` (1-based) is `interior()[i - 1]`.
    pub fn interior(&self) -> &[usize] {
        &self.elements[1..self.elements.len() - 1]
    }

    pub fn proper_length(&self) -> usize {
        self.elements.len() - 2
    }

    /// Element at interior rank `rank` (1-based).
    pub fn at_rank(&self, rank: usize) -> usize {
        self.elements[rank]
    }

    /// Interior rank of `element` within this chain, if it lies on it.
    pub fn rank_of(&self, element: usize) -> Option<usize> {
        self.interior()
            .iter()
            .position(|&e| e == element)
            .map(|p| p + 1)
    }
}

impl Poset {
    /// Validates a cover list and builds the poset. Bottom and top are the
    /// unique source and sink of the cover digraph.
    pub fn from_covers<S: AsRef<str>>(covers: &[(S, S)]) -> Result<Self> {
        if covers.is_empty() {
            return Err(Error::EmptyCoverList);
        }
        let ids: BTreeSet<&str> = covers
            .iter()
            .flat_map(|(u, v)| [u.as_ref(), v.as_ref()])
            .collect();
        Self::build(ids.into_iter().collect(), covers)
    }

    /// Like [`Poset::from_covers`] but with an explicit element list, so that
    /// elements outside every cover are reported instead of silently dropped.
    pub fn from_elements_and_covers<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Self> {
        if covers.is_empty() {
            return Err(Error::EmptyCoverList);
        }
        let mut ids: BTreeSet<&str> = elements.iter().map(|e| e.as_ref()).collect();
        let in_covers: BTreeSet<&str> = covers
            .iter()
            .flat_map(|(u, v)| [u.as_ref(), v.as_ref()])
            .collect();
        if let Some(lonely) = ids.iter().find(|e| !in_covers.contains(*e)) {
            return Err(Error::IsolatedElement(lonely.to_string()));
        }
        ids.extend(in_covers);
        Self::build(ids.into_iter().collect(), covers)
    }

    fn build<S: AsRef<str>>(ids: Vec<&str>, covers: &[(S, S)]) -> Result<Self> {
        let n = ids.len();
        let index: BTreeMap<String, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.to_string(), i))
            .collect();
        let mut up: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut down: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (u, v) in covers {
            let (u, v) = (index[u.as_ref()], index[v.as_ref()]);
            if u == v {
                return Err(Error::CycleDetected(ids[u].to_string()));
            }
            up[u].insert(v);
            down[v].insert(u);
        }
        let up: Vec<Vec<usize>> = up.into_iter().map(|s| s.into_iter().collect()).collect();
        let down: Vec<Vec<usize>> = down.into_iter().map(|s| s.into_iter().collect()).collect();

        // Kahn's algorithm; leftovers sit on a cycle.
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &w in &up[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if topo.len() != n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(Error::CycleDetected(ids[stuck].to_string()));
        }

        let minima: Vec<usize> = (0..n).filter(|&v| down[v].is_empty()).collect();
        let maxima: Vec<usize> = (0..n).filter(|&v| up[v].is_empty()).collect();
        if minima.len() != 1 {
            return Err(Error::MultipleMinima(
                minima.iter().map(|&v| ids[v].to_string()).collect(),
            ));
        }
        if maxima.len() != 1 {
            return Err(Error::MultipleMaxima(
                maxima.iter().map(|&v| ids[v].to_string()).collect(),
            ));
        }

        let mut le = vec![FixedBitSet::with_capacity(n); n];
        for &v in &topo {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(v);
            for &u in &down[v] {
                set.union_with(&le[u]);
            }
            le[v] = set;
        }
        // A cover u < v is reduced iff no other lower cover w of v sits above u.
        for v in 0..n {
            for &u in &down[v] {
                if down[v].iter().any(|&w| w != u && le[w].contains(u)) {
                    return Err(Error::NonReducedCover(
                        ids[u].to_string(),
                        ids[v].to_string(),
                    ));
                }
            }
        }

        Ok(Poset {
            ids: ids.into_iter().map(String::from).collect(),
            index,
            up,
            down,
            bottom: minima[0],
            top: maxima[0],
            le,
            topo,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn id(&self, element: usize) -> &str {
        &self.ids[element]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    /// Elements covering `u`, in id order.
    pub fn upper_covers(&self, u: usize) -> &[usize] {
        &self.up[u]
    }

    /// Elements covered by `v`, in id order.
    pub fn lower_covers(&self, v: usize) -> &[usize] {
        &self.down[v]
    }

    pub fn is_cover(&self, u: usize, v: usize) -> bool {
        self.up[u].binary_search(&v).is_ok()
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn cover_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn le(&self, u: usize, v: usize) -> bool {
        self.le[v].contains(u)
    }

    pub fn lt(&self, u: usize, v: usize) -> bool {
        u != v && self.le(u, v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.le(u, v) || self.le(v, u)
    }

    /// The down-set `{u : u <= v}` as a bitset over element indices.
    pub fn down_set(&self, v: usize) -> &FixedBitSet {
        &self.le[v]
    }

    /// Elements in a linear extension (bottom first).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Every saturated bottom-to-top chain, each exactly once. The order is
    /// the lexicographic order of the chains' index sequences, hence of their
    /// id sequences, and does not depend on how the covers were listed.
    pub fn facets(&self) -> Vec<Facet> {
        let mut out = Vec::new();
        let mut stack = vec![self.bottom];
        self.extend_facets(&mut stack, &mut out);
        out
    }

    fn extend_facets(&self, stack: &mut Vec<usize>, out: &mut Vec<Facet>) {
        let last = *stack.last().unwrap();
        if last == self.top {
            out.push(Facet::new(stack.clone()));
            return;
        }
        for &next in &self.up[last] {
            stack.push(next);
            self.extend_facets(stack, out);
            stack.pop();
        }
    }

    /// Number of saturated chains, counted by dynamic programming rather than
    /// enumeration.
    pub fn count_facets(&self) -> u128 {
        let mut paths = vec![0u128; self.len()];
        paths[self.top] = 1;
        for &v in self.topo.iter().rev() {
            if v != self.top {
                paths[v] = self.up[v].iter().map(|&w| paths[w]).sum();
            }
        }
        paths[self.bottom]
    }

    /// Number of faces of the order complex, the empty chain included.
    pub fn count_chains(&self) -> u128 {
        // ending[v]: chains of interior elements with top element v
        let mut ending = vec![0u128; self.len()];
        let mut total = 1u128;
        for &v in &self.topo {
            if v == self.bottom || v == self.top {
                continue;
            }
            let below: u128 = self.le[v]
                .ones()
                .filter(|&u| u != v && u != self.bottom)
                .map(|u| ending[u])
                .sum();
            ending[v] = 1 + below;
            total += ending[v];
        }
        total
    }

    /// Interior elements, i.e. the vertices of the order complex.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| v != self.bottom && v != self.top)
            .collect()
    }

    /// Checks that a sequence of indices is a saturated bottom-to-top chain.
    pub fn is_saturated_chain(&self, elements: &[usize]) -> bool {
        elements.len() >= 2
            && elements[0] == self.bottom
            && *elements.last().unwrap() == self.top
            && elements.windows(2).all(|w| self.is_cover(w[0], w[1]))
    }

    /// Checks that a set of elements is pairwise comparable.
    pub fn is_chain(&self, elements: &[usize]) -> bool {
        elements.iter().enumerate().all(|(i, &x)| {
            elements[i + 1..]
                .iter()
                .all(|&y| x != y && self.comparable(x, y))
        })
    }

    /// The closed interval `[u, v]` as a bounded poset with bottom `u` and
    /// top `v`. Requires `u < v` and a nonempty open interval.
    pub fn open_interval(&self, u: usize, v: usize) -> Result<Poset> {
        if !self.lt(u, v) {
            return Err(Error::NotComparable(
                self.ids[u].clone(),
                self.ids[v].clone(),
            ));
        }
        if self.is_cover(u, v) {
            return Err(Error::EmptyInterval(
                self.ids[u].clone(),
                self.ids[v].clone(),
            ));
        }
        self.closed_interval(u, v)
    }

    /// The closed interval `[u, v]` for any `u < v`, including covers.
    pub fn closed_interval(&self, u: usize, v: usize) -> Result<Poset> {
        if !self.lt(u, v) {
            return Err(Error::NotComparable(
                self.ids[u].clone(),
                self.ids[v].clone(),
            ));
        }
        let inside: Vec<bool> = (0..self.len())
            .map(|w| self.le(u, w) && self.le(w, v))
            .collect();
        let covers: Vec<(&str, &str)> = self
            .covers()
            .filter(|&(a, b)| inside[a] && inside[b])
            .map(|(a, b)| (self.ids[a].as_str(), self.ids[b].as_str()))
            .collect();
        Poset::from_covers(&covers)
    }

    /// Maps a facet of `sub` (a subposet built from this poset's ids) into
    /// this poset's indices.
    pub fn translate_chain(&self, sub: &Poset, chain: &[usize]) -> Result<Vec<usize>> {
        chain.iter().map(|&e| self.index_of(sub.id(e))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn three_chain() {
        let p = fixtures::chain3();
        assert_eq!(p.len(), 3);
        assert_eq!(p.id(p.bottom()), "0");
        assert_eq!(p.id(p.top()), "1");
        assert_eq!(p.facets().len(), 1);
    }

    #[test]
    fn diamond_and_boolean() {
        let d = fixtures::diamond();
        assert_eq!(d.facets().len(), 2);
        let b3 = fixtures::boolean(3);
        assert_eq!(b3.cover_count(), 12);
        assert_eq!(b3.facets().len(), 6);
        assert_eq!(fixtures::boolean(4).facets().len(), 24);
    }

    #[test]
    fn facet_order_ignores_input_order() {
        let mut covers: Vec<(String, String)> = fixtures::boolean(3)
            .covers()
            .map(|(u, v)| {
                (
                    fixtures::boolean(3).id(u).into(),
                    fixtures::boolean(3).id(v).into(),
                )
            })
            .collect();
        let a = Poset::from_covers(&covers).unwrap().facets();
        covers.reverse();
        let b = Poset::from_covers(&covers).unwrap().facets();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_cover_lists() {
        let empty: [(&str, &str); 0] = [];
        assert_eq!(
            Poset::from_covers(&empty).unwrap_err(),
            Error::EmptyCoverList
        );
        assert!(matches!(
            Poset::from_covers(&[("a", "b"), ("b", "c"), ("c", "a")]),
            Err(Error::MultipleMinima(_)) | Err(Error::CycleDetected(_))
        ));
        assert!(matches!(
            Poset::from_covers(&[("0", "a"), ("a", "b"), ("b", "a"), ("b", "1")]),
            Err(Error::CycleDetected(_))
        ));
        assert!(matches!(
            Poset::from_covers(&[("0", "a"), ("0", "b"), ("a", "1")]),
            Err(Error::MultipleMaxima(_))
        ));
        assert!(matches!(
            Poset::from_covers(&[("0", "1"), ("x", "1")]),
            Err(Error::MultipleMinima(_))
        ));
        assert_eq!(
            Poset::from_covers(&[("0", "a"), ("a", "1"), ("0", "1")]).unwrap_err(),
            Error::NonReducedCover("0".into(), "1".into())
        );
        assert_eq!(
            Poset::from_elements_and_covers(&["z"], &[("0", "1")]).unwrap_err(),
            Error::IsolatedElement("z".into())
        );
    }

    #[test]
    fn intervals() {
        let b3 = fixtures::boolean(3);
        let lo = b3.index_of("{}").unwrap();
        let hi = b3.index_of("{1,2}").unwrap();
        let iv = b3.open_interval(lo, hi).unwrap();
        assert_eq!(iv.len(), 4);
        assert_eq!(iv.facets().len(), 2);
        assert_eq!(iv.id(iv.bottom()), "{}");
        assert!(iv.index_of("{1}").is_ok() && iv.index_of("{2}").is_ok());

        let whole = b3.open_interval(b3.bottom(), b3.top()).unwrap();
        assert_eq!(whole.ids(), b3.ids());
        assert_eq!(whole.cover_count(), b3.cover_count());

        let one = b3.index_of("{1}").unwrap();
        let two = b3.index_of("{2}").unwrap();
        assert!(matches!(
            b3.open_interval(one, two),
            Err(Error::NotComparable(..))
        ));
        assert!(matches!(
            b3.open_interval(lo, one),
            Err(Error::EmptyInterval(..))
        ));
    }

    #[test]
    fn facet_count_matches_dp() {
        for p in [
            fixtures::boolean(4),
            fixtures::diamond(),
            fixtures::chain3(),
        ] {
            assert_eq!(p.facets().len() as u128, p.count_facets());
        }
    }

    #[test]
    fn chain_count_matches_order_complex() {
        for p in [
            fixtures::boolean(4),
            fixtures::diamond(),
            fixtures::chain3(),
            fixtures::two_by_two(),
        ] {
            assert_eq!(
                crate::homology::order_complex(&p).len() as u128,
                p.count_chains()
            );
        }
    }
}
