//! Shellings and the matchings they induce.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lex_morse::{IntervalSystem, RankInterval};
use crate::morse::AcyclicMatching;

/// Result of testing whether a lexicographic order is a shelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShellingVerdict {
    Shelling,
    /// A minimal skipped interval of height at least two, with the 0-based
    /// position of its facet.
    Witness {
        facet: usize,
        interval: RankInterval,
    },
}

impl ShellingVerdict {
    pub fn is_shelling(&self) -> bool {
        matches!(self, ShellingVerdict::Shelling)
    }
}

/// A lexicographic order is a shelling exactly when every minimal skipped
/// interval has height one.
pub fn is_lex_shelling(systems: &[IntervalSystem]) -> ShellingVerdict {
    systems
        .iter()
        .find_map(|s| {
            s.minimal
                .iter()
                .find(|iv| iv.height() > 1)
                .map(|&interval| ShellingVerdict::Witness {
                    facet: s.facet,
                    interval,
                })
        })
        .unwrap_or(ShellingVerdict::Shelling)
}

/// The matching built from a shelling.
#[derive(Clone, Debug)]
pub struct ShellingMatching {
    pub matching: AcyclicMatching,
    /// 0-based positions of facets whose overlap with the earlier ones is
    /// their whole boundary; these facets are the critical cells apart from
    /// the empty face of a lone first facet.
    pub critical_facets: Vec<usize>,
}

/// Vertices `v` of `facet` such that `facet - v` lies in an earlier facet.
fn restriction(facet: &Face, earlier: &[Face]) -> BTreeSet<usize> {
    facet
        .vertices()
        .iter()
        .copied()
        .filter(|&v| {
            let g = facet.without(v);
            earlier.iter().any(|e| g.is_subset(e))
        })
        .collect()
}

/// Matches each new part of a shelling by toggling a cone point: the first
/// vertex of `F_j`, in the order listed, outside its restriction set. Facets
/// attached along their whole boundary stay critical. The empty face belongs
/// to the complex.
///
/// Listing the facets of an order complex as chains, bottom first, makes the
/// cone point the lowest-rank free vertex.
pub fn shelling_matching<V: AsRef<[usize]>>(listed: &[V]) -> Result<ShellingMatching> {
    let facets: Vec<Face> = listed
        .iter()
        .map(|f| Face::new(f.as_ref().to_vec()))
        .collect();
    let Some(first) = facets.first() else {
        return Err(Error::NotPure);
    };
    if facets.iter().any(|f| f.len() != first.len()) {
        return Err(Error::NotPure);
    }
    let mut restrictions = Vec::with_capacity(facets.len());
    for (j, f) in facets.iter().enumerate() {
        let r = restriction(f, &facets[..j]);
        // Every earlier facet must meet F_j inside some F_j - v with v in R.
        let pure = facets[..j]
            .iter()
            .all(|e| r.iter().any(|&v| !e.contains(v)));
        if j > 0 && (r.is_empty() || !pure) {
            return Err(Error::NotAShelling(j));
        }
        restrictions.push(r);
    }
    let complex = Arc::new(SimplicialComplex::from_generators(
        facets.iter().cloned(),
        true,
    ));
    let mut matching = AcyclicMatching::new(Arc::clone(&complex));
    let mut critical_facets = Vec::new();
    for (j, (f, r)) in facets.iter().zip(&restrictions).enumerate() {
        let Some(cone) = listed[j].as_ref().iter().copied().find(|v| !r.contains(v)) else {
            critical_facets.push(j);
            continue;
        };
        let free: Vec<usize> = f
            .vertices()
            .iter()
            .copied()
            .filter(|v| !r.contains(v) && *v != cone)
            .collect();
        let base: Vec<usize> = r.iter().copied().collect();
        for mask in 0u64..(1 << free.len()) {
            let mut low = base.clone();
            low.extend(
                free.iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v),
            );
            let low = Face::new(low);
            let high = low.with(cone);
            let a = complex.id_of(&low).ok_or(Error::UnknownFace)?;
            let b = complex.id_of(&high).ok_or(Error::UnknownFace)?;
            matching.try_pair(a, b)?;
        }
    }
    Ok(ShellingMatching {
        matching,
        critical_facets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::reduced_betti;
    use crate::labeling::FacetOrder;
    use crate::lex_morse::LexMorse;
    fn faces(list: &[&[usize]]) -> Vec<Face> {
        list.iter().map(|f| Face::new(f.to_vec())).collect()
    }

    #[test]
    fn triangle_boundary() {
        let s = shelling_matching(&faces(&[&[0, 1], &[1, 2], &[0, 2]])).unwrap();
        assert_eq!(s.critical_facets, [2]);
        assert_eq!(s.matching.morse_vector().values(), [0, 0, 1]);
        assert!(s.matching.is_acyclic());
        assert_eq!(reduced_betti(s.matching.complex()).values(), [0, 0, 1]);
    }

    #[test]
    fn square_with_opposite_edges_first() {
        let err = shelling_matching(&faces(&[&[0, 1], &[2, 3], &[1, 2], &[0, 3]]));
        assert_eq!(err.unwrap_err(), Error::NotAShelling(1));
        assert_eq!(
            shelling_matching(&faces(&[&[0, 1], &[1, 2, 3]])).unwrap_err(),
            Error::NotPure
        );
    }

    #[test]
    fn boolean_lattice_agrees_with_lex_matching() {
        for n in 3..=4 {
            let b = fixtures::boolean(n);
            let fo = FacetOrder::from_labeling(&b, &fixtures::boolean_labeling(&b)).unwrap();
            let lex = LexMorse::build(fo.clone()).unwrap();
            assert!(is_lex_shelling(lex.systems()).is_shelling());
            let list: Vec<&[usize]> = fo.facets().iter().map(|f| f.interior()).collect();
            let s = shelling_matching(&list).unwrap();
            assert_eq!(s.critical_facets, [fo.len() - 1]);
            let faces = |m: &AcyclicMatching, ids: Vec<(usize, usize)>| -> BTreeSet<(Face, Face)> {
                ids.into_iter()
                    .map(|(a, b)| (m.complex().face(a).clone(), m.complex().face(b).clone()))
                    .collect()
            };
            assert_eq!(
                faces(&s.matching, s.matching.pairs()),
                faces(lex.matching(), lex.matching().pairs())
            );
            assert!(s.matching.is_acyclic());
        }
    }

    #[test]
    fn single_facet() {
        let p = fixtures::chain3();
        let fo = FacetOrder::from_explicit(&p, p.facets()).unwrap();
        let lex = LexMorse::build(fo).unwrap();
        assert_eq!(is_lex_shelling(lex.systems()), ShellingVerdict::Shelling);
    }
}
