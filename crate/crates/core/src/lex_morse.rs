//! Acyclic matchings from lexicographic facet orders.
//!
//! Faces of the order complex are split into fibres: a face belongs to the
//! fibre of the earliest facet containing it. Within the fibre of `F_j` the
//! faces are exactly the subchains of `F_j` hitting every minimal skipped
//! interval of `F_j`, and the matching is read off from the truncated
//! interval system. Each fibre has at most one critical face.
//!
//! Facet positions are 0-based throughout this module; ranks inside a facet
//! are 1-based, rank `i` being the `i`-th interior element.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology;
use crate::labeling::FacetOrder;
use crate::morse::{AcyclicMatching, GradientPath};
use crate::poset::Facet;

/// A nonempty run of consecutive interior ranks `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankInterval {
    pub lo: usize,
    pub hi: usize,
}

impl RankInterval {
    pub fn new(lo: usize, hi: usize) -> Self {
        assert!(1 <= lo && lo <= hi, "bad rank interval [{lo}, {hi}]");
        RankInterval { lo, hi }
    }

    pub fn height(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, rank: usize) -> bool {
        self.lo <= rank && rank <= self.hi
    }

    pub fn is_subset(&self, other: &RankInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Bit mask with bit `rank - 1` set for each rank in the interval.
    pub fn mask(&self) -> u64 {
        (u64::MAX >> (64 - self.height())) << (self.lo - 1)
    }
}

impl fmt::Display for RankInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "[{}]", self.lo)
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

/// Skipped-interval data of one facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSystem {
    /// Position of the facet in the order.
    pub facet: usize,
    pub proper_length: usize,
    /// Minimal skipped intervals, sorted by `lo`.
    pub minimal: Vec<RankInterval>,
    /// Truncated, pairwise disjoint intervals, sorted by `lo`.
    pub truncated: Vec<RankInterval>,
    /// Ranks covered by no minimal skipped interval.
    pub uncovered: Vec<usize>,
    /// `[rho_0]` when some rank is uncovered, otherwise the lowest rank of
    /// each truncated interval.
    pub rho: Vec<usize>,
}

impl IntervalSystem {
    /// Whether the minimal skipped intervals cover every rank, i.e. whether
    /// the fibre carries a critical face.
    pub fn is_covered(&self) -> bool {
        self.uncovered.is_empty()
    }

    /// Ranks of the critical face, when there is one.
    pub fn critical_ranks(&self) -> Option<&[usize]> {
        self.is_covered().then_some(self.rho.as_slice())
    }

    /// Dimension of the critical face: one less than the number of
    /// truncated intervals.
    pub fn critical_dimension(&self) -> Option<isize> {
        self.is_covered().then(|| self.truncated.len() as isize - 1)
    }

    /// Highest truncated interval of height at least two.
    pub fn last_nontrivial(&self) -> Option<RankInterval> {
        self.truncated
            .iter()
            .rev()
            .find(|iv| iv.height() > 1)
            .copied()
    }
}

/// Runs the truncation loop on a containment antichain of intervals inside
/// ranks `1..=proper_length`: repeatedly move the lowest interval into the
/// output, cut every remaining interval down to the ranks above it, and drop
/// intervals that are no longer minimal.
pub fn truncate_intervals(minimal: &[RankInterval], proper_length: usize) -> IntervalSystem {
    let mut remaining: Vec<RankInterval> = minimal.to_vec();
    remaining.sort();
    let mut truncated = Vec::new();
    while !remaining.is_empty() {
        let first = remaining.remove(0);
        truncated.push(first);
        let cut: Vec<RankInterval> = remaining
            .iter()
            .filter(|iv| iv.hi > first.hi)
            .map(|iv| RankInterval::new(iv.lo.max(first.hi + 1), iv.hi))
            .collect();
        remaining = cut
            .iter()
            .filter(|iv| !cut.iter().any(|o| o != *iv && o.is_subset(iv)))
            .copied()
            .collect();
        remaining.sort();
        remaining.dedup();
    }
    let uncovered: Vec<usize> = (1..=proper_length)
        .filter(|&r| !minimal.iter().any(|iv| iv.contains(r)))
        .collect();
    let rho = match uncovered.first() {
        Some(&r) => vec![r],
        None => truncated.iter().map(|iv| iv.lo).collect(),
    };
    IntervalSystem {
        facet: 0,
        proper_length,
        minimal: minimal.to_vec(),
        truncated,
        uncovered,
        rho,
    }
}

fn full_mask(len: usize) -> u64 {
    if len == 0 {
        0
    } else {
        u64::MAX >> (64 - len)
    }
}

/// Rank mask of `F_j ∩ F_i` inside `F_j`, for every earlier facet `i`.
fn overlap_masks(fo: &FacetOrder, j: usize, rank_in: &mut [u8]) -> Vec<(u64, usize)> {
    let fj = fo.facet(j);
    for (r, &e) in fj.interior().iter().enumerate() {
        rank_in[e] = (r + 1) as u8;
    }
    let masks = (0..j)
        .map(|i| {
            let m = fo
                .facet(i)
                .interior()
                .iter()
                .filter(|&&e| rank_in[e] != 0)
                .fold(0u64, |m, &e| m | 1 << (rank_in[e] - 1));
            (m, i)
        })
        .collect();
    for &e in fj.interior() {
        rank_in[e] = 0;
    }
    masks
}

/// Maximal masks among `masks`, each with the first earlier facet realizing
/// it.
fn maximal_masks(masks: &[(u64, usize)]) -> Vec<(u64, usize)> {
    let mut first: BTreeMap<u64, usize> = BTreeMap::new();
    for &(m, i) in masks {
        first.entry(m).or_insert(i);
    }
    first
        .iter()
        .filter(|(&m, _)| !first.keys().any(|&o| o != m && o & m == m))
        .map(|(&m, &i)| (m, i))
        .collect()
}

fn max_rank_index(fo: &FacetOrder) -> usize {
    fo.facets()
        .iter()
        .flat_map(|f| f.elements().iter().copied())
        .max()
        .map_or(0, |m| m + 1)
}

fn check_length(f: &Facet) -> Result<()> {
    if f.proper_length() > 63 {
        return Err(Error::FacetTooLong(f.proper_length()));
    }
    Ok(())
}

/// `I(F_j)`: the intervals skipped by the maximal faces of
/// `F_j ∩ (F_1 ∪ ... ∪ F_{j-1})`, computed from all pairwise intersections.
pub fn minimal_skipped_intervals(fo: &FacetOrder, j: usize) -> Result<Vec<RankInterval>> {
    if j >= fo.len() {
        return Err(Error::FacetOutOfRange(j));
    }
    let mut rank_in = vec![0u8; max_rank_index(fo)];
    skipped_with_buffer(fo, j, &mut rank_in)
}

fn skipped_with_buffer(fo: &FacetOrder, j: usize, rank_in: &mut [u8]) -> Result<Vec<RankInterval>> {
    let fj = fo.facet(j);
    check_length(fj)?;
    let full = full_mask(fj.proper_length());
    let masks = overlap_masks(fo, j, rank_in);
    let mut out = Vec::new();
    for (m, i) in maximal_masks(&masks) {
        let skipped = full & !m;
        if skipped == 0 {
            return Err(Error::NonIntervalOverlap {
                facet: j,
                earlier: i,
            });
        }
        let lo = skipped.trailing_zeros() as usize;
        let run = skipped >> lo;
        if run & (run + 1) != 0 {
            return Err(Error::NonIntervalOverlap {
                facet: j,
                earlier: i,
            });
        }
        out.push(RankInterval::new(lo + 1, lo + run.count_ones() as usize));
    }
    out.sort();
    Ok(out)
}

/// Interval systems of every facet, in order.
pub fn interval_systems(fo: &FacetOrder) -> Result<Vec<IntervalSystem>> {
    let mut rank_in = vec![0u8; max_rank_index(fo)];
    (0..fo.len())
        .map(|j| {
            let minimal = skipped_with_buffer(fo, j, &mut rank_in)?;
            let mut sys = truncate_intervals(&minimal, fo.facet(j).proper_length());
            sys.facet = j;
            Ok(sys)
        })
        .collect()
}

/// Faces of `facet` selected by a rank mask.
pub fn face_of_mask(facet: &Facet, mask: u64) -> Face {
    Face::new(
        facet
            .interior()
            .iter()
            .enumerate()
            .filter(|(r, _)| mask & (1 << r) != 0)
            .map(|(_, &e)| e)
            .collect(),
    )
}

/// Rank mask of `face` inside `facet`, if the face lies on it.
pub fn mask_of_face(facet: &Facet, face: &Face) -> Option<u64> {
    face.vertices()
        .iter()
        .try_fold(0u64, |m, &v| facet.rank_of(v).map(|r| m | 1 << (r - 1)))
}

/// The order complex (with the empty face) together with the fibre of each
/// face: the position of the earliest facet containing it.
pub fn assign_fibres(fo: &FacetOrder) -> Result<(SimplicialComplex, Vec<usize>)> {
    let mut fibre_of: BTreeMap<Face, usize> = BTreeMap::new();
    for (j, f) in fo.facets().iter().enumerate() {
        check_length(f)?;
        for mask in 0..=full_mask(f.proper_length()) {
            fibre_of.entry(face_of_mask(f, mask)).or_insert(j);
        }
    }
    let complex = SimplicialComplex::from_closed_faces(fibre_of.keys().cloned().collect(), true)?;
    let fibres = complex.faces().iter().map(|f| fibre_of[f]).collect();
    Ok((complex, fibres))
}

/// Homotopy type of `F_j ∩ (F_1 ∪ ... ∪ F_{j-1})` as seen by rational
/// homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverlapType {
    /// Homology of a sphere of this dimension (-1 for the complex `{∅}`).
    Sphere(isize),
    /// All reduced Betti numbers vanish.
    Acyclic,
}

/// Classifies the overlap of facet `j` (`j >= 1`) with the earlier facets by
/// brute-force homology.
pub fn overlap_type(fo: &FacetOrder, j: usize) -> Result<OverlapType> {
    if j == 0 || j >= fo.len() {
        return Err(Error::FacetOutOfRange(j));
    }
    let mut rank_in = vec![0u8; max_rank_index(fo)];
    let fj = fo.facet(j);
    check_length(fj)?;
    let masks = overlap_masks(fo, j, &mut rank_in);
    let generators = maximal_masks(&masks)
        .into_iter()
        .map(|(m, _)| face_of_mask(fj, m));
    let overlap = SimplicialComplex::from_generators(generators, true);
    let betti = homology::reduced_betti(&overlap);
    if betti.is_zero() {
        Ok(OverlapType::Acyclic)
    } else if let Some(d) = betti.sphere_dimension() {
        Ok(OverlapType::Sphere(d))
    } else {
        Err(Error::UnexpectedHomology { facet: j })
    }
}

/// The lexicographic acyclic matching of a facet order, with everything
/// needed to interpret it.
#[derive(Clone, Debug)]
pub struct LexMorse {
    order: FacetOrder,
    systems: Vec<IntervalSystem>,
    fibres: Vec<usize>,
    matching: AcyclicMatching,
}

impl LexMorse {
    /// Builds the matching fibre by fibre.
    pub fn build(order: FacetOrder) -> Result<Self> {
        let systems = interval_systems(&order)?;
        let (complex, fibres) = assign_fibres(&order)?;
        let complex = Arc::new(complex);
        let mut matching = AcyclicMatching::new(Arc::clone(&complex));
        for (j, sys) in systems.iter().enumerate() {
            let facet = order.facet(j);
            for mask in 0..=full_mask(facet.proper_length()) {
                let id = complex.id_of(&face_of_mask(facet, mask)).unwrap();
                if fibres[id] != j || matching.partner(id).is_some() {
                    continue;
                }
                let Some(other) = partner_mask(sys, mask) else {
                    continue;
                };
                let other_id = complex.id_of(&face_of_mask(facet, other)).unwrap();
                if fibres[other_id] != j || partner_mask(sys, other) != Some(mask) {
                    return Err(Error::NonIntervalOverlap {
                        facet: j,
                        earlier: fibres[other_id],
                    });
                }
                matching.try_pair(id, other_id)?;
            }
        }
        Ok(LexMorse {
            order,
            systems,
            fibres,
            matching,
        })
    }

    pub fn order(&self) -> &FacetOrder {
        &self.order
    }

    pub fn systems(&self) -> &[IntervalSystem] {
        &self.systems
    }

    pub fn system(&self, facet: usize) -> &IntervalSystem {
        &self.systems[facet]
    }

    pub fn matching(&self) -> &AcyclicMatching {
        &self.matching
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.matching.complex()
    }

    /// Fibre (facet position) of each face id.
    pub fn fibres(&self) -> &[usize] {
        &self.fibres
    }

    pub fn fibre_of(&self, face: usize) -> usize {
        self.fibres[face]
    }

    /// Critical face ids, ordered by fibre.
    pub fn critical(&self) -> Vec<usize> {
        let mut c = self.matching.critical();
        c.sort_by_key(|&id| self.fibres[id]);
        c
    }

    /// Critical face of facet `j`'s fibre, if any.
    pub fn critical_face_of(&self, j: usize) -> Option<usize> {
        let ranks = self.systems[j].critical_ranks()?;
        let mask = ranks.iter().fold(0u64, |m, &r| m | 1 << (r - 1));
        self.complex()
            .id_of(&face_of_mask(self.order.facet(j), mask))
    }

    /// Rank of each vertex removed along `path`, measured inside the facet
    /// whose fibre contains the face it is removed from.
    pub fn deleted_ranks(&self, path: &GradientPath) -> Vec<usize> {
        path.faces
            .chunks(2)
            .zip(&path.deleted)
            .map(|(pair, &v)| {
                self.order
                    .facet(self.fibres[pair[0]])
                    .rank_of(v)
                    .expect("face lies on its fibre's facet")
            })
            .collect()
    }

    /// Checks that no gradient path from `tau` to `sigma` (in `matching`,
    /// which must live on this complex) deletes an element of rank `<= r`.
    /// Returns the first offending path.
    pub fn check_rank_preservation(
        &self,
        matching: &AcyclicMatching,
        tau: usize,
        sigma: usize,
        r: usize,
    ) -> Result<Option<GradientPath>> {
        if r == 0 {
            return Ok(None);
        }
        let paths = matching.gradient_paths(tau, sigma)?;
        Ok(paths
            .into_iter()
            .find(|p| self.deleted_ranks(p).iter().any(|&d| d <= r)))
    }
}

/// The face matched with `mask` inside its fibre, or `None` if critical.
fn partner_mask(sys: &IntervalSystem, mask: u64) -> Option<u64> {
    if let Some(&r0) = sys.uncovered.first() {
        return Some(mask ^ (1 << (r0 - 1)));
    }
    sys.truncated
        .iter()
        .zip(&sys.rho)
        .find(|(iv, &rho)| mask & iv.mask() != 1 << (rho - 1))
        .map(|(_, &rho)| mask ^ (1 << (rho - 1)))
}

/// Convenience: the fibre of each face as a map from faces.
pub fn fibre_map(lex: &LexMorse) -> BTreeMap<Face, usize> {
    lex.complex()
        .faces()
        .iter()
        .cloned()
        .zip(lex.fibres().iter().copied())
        .collect()
}

/// All facets whose interval systems cover them.
pub fn covered_facets(systems: &[IntervalSystem]) -> BTreeSet<usize> {
    systems
        .iter()
        .filter(|s| s.is_covered())
        .map(|s| s.facet)
        .collect()
}
