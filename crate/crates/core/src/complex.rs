//! Abstract simplicial complexes stored as explicit face lists with their
//! codimension-one incidences.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A face, stored as its sorted vertex list. The empty face is allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Face(Vec<usize>);

impl Face {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension; the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn without(&self, v: usize) -> Face {
        Face(self.0.iter().copied().filter(|&x| x != v).collect())
    }

    pub fn with(&self, v: usize) -> Face {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Face(out)
    }

    /// The codimension-one faces, each paired with the removed vertex.
    pub fn facets(&self) -> impl Iterator<Item = (usize, Face)> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut f = self.0.clone();
            let v = f.remove(i);
            (v, Face(f))
        })
    }
}

impl AsRef<[usize]> for Face {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Face {
    fn from(v: Vec<usize>) -> Self {
        Face::new(v)
    }
}

/// A finite simplicial complex. Faces are numbered by (dimension, vertex
/// list), so ids are deterministic.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    faces: Vec<Face>,
    index: BTreeMap<Face, usize>,
    boundary: Vec<Vec<usize>>,
    coboundary: Vec<Vec<usize>>,
    has_empty: bool,
}

impl SimplicialComplex {
    /// The downward closure of `generators`. With `include_empty` the empty
    /// face is a member, which is the setting for reduced homology and for
    /// matchings that use the empty face.
    pub fn from_generators<I>(generators: I, include_empty: bool) -> Self
    where
        I: IntoIterator<Item = Face>,
    {
        let mut all: BTreeSet<Face> = BTreeSet::new();
        let mut pending: Vec<Face> = generators.into_iter().collect();
        while let Some(f) = pending.pop() {
            if f.is_empty() && !include_empty {
                continue;
            }
            if all.insert(f.clone()) {
                pending.extend(f.facets().map(|(_, g)| g));
            }
        }
        Self::assemble(all.into_iter().collect(), include_empty)
            .expect("closure is closed under subfaces")
    }

    /// Builds a complex from a face list that is already closed under
    /// subfaces (apart from the empty face, which is added when
    /// `include_empty` is set).
    pub fn from_closed_faces(faces: Vec<Face>, include_empty: bool) -> Result<Self> {
        let mut set: BTreeSet<Face> = faces.into_iter().filter(|f| !f.is_empty()).collect();
        if include_empty {
            set.insert(Face::empty());
        }
        Self::assemble(set.into_iter().collect(), include_empty)
    }

    fn assemble(mut faces: Vec<Face>, has_empty: bool) -> Result<Self> {
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: BTreeMap<Face, usize> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        let mut boundary = vec![Vec::new(); faces.len()];
        let mut coboundary = vec![Vec::new(); faces.len()];
        for (i, f) in faces.iter().enumerate() {
            if f.is_empty() || (f.len() == 1 && !has_empty) {
                continue;
            }
            for (_, g) in f.facets() {
                let j = *index.get(&g).ok_or(Error::NotClosed)?;
                boundary[i].push(j);
                coboundary[j].push(i);
            }
        }
        Ok(SimplicialComplex {
            faces,
            index,
            boundary,
            coboundary,
            has_empty,
        })
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn has_empty_face(&self) -> bool {
        self.has_empty
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn id_of(&self, face: &Face) -> Option<usize> {
        self.index.get(face).copied()
    }

    pub fn dim_of(&self, id: usize) -> isize {
        self.faces[id].dim()
    }

    /// Top dimension (-1 for `{∅}`).
    pub fn dim(&self) -> isize {
        self.faces.last().map_or(-1, Face::dim)
    }

    /// Codimension-one faces of face `id`, listed in the order of
    /// [`Face::facets`] (removing vertex 0, 1, ... of the sorted list).
    pub fn boundary(&self, id: usize) -> &[usize] {
        &self.boundary[id]
    }

    pub fn coboundary(&self, id: usize) -> &[usize] {
        &self.coboundary[id]
    }

    /// Face ids of a given dimension, in id order.
    pub fn ids_of_dim(&self, dim: isize) -> impl Iterator<Item = usize> + '_ {
        let lo = self.faces.partition_point(|f| f.dim() < dim);
        let hi = self.faces.partition_point(|f| f.dim() <= dim);
        lo..hi
    }

    /// Maximal faces.
    pub fn maximal_faces(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.coboundary[i].is_empty())
            .collect()
    }

    /// Face counts `f_{-1}, f_0, ...`; `f_{-1}` is 0 or 1.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dim();
        (-1..=top).map(|d| self.ids_of_dim(d).count()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_closure() {
        let c = SimplicialComplex::from_generators([Face::new(vec![2, 0, 1])], true);
        assert_eq!(c.f_vector(), [1, 3, 3, 1]);
        let top = c.id_of(&Face::new(vec![0, 1, 2])).unwrap();
        assert_eq!(c.boundary(top).len(), 3);
        let empty = c.id_of(&Face::empty()).unwrap();
        assert_eq!(c.coboundary(empty).len(), 3);
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn without_empty_face() {
        let c = SimplicialComplex::from_generators([Face::new(vec![0, 1])], false);
        assert_eq!(c.f_vector(), [0, 2, 1]);
        assert!(c.id_of(&Face::empty()).is_none());
        let v = c.id_of(&Face::new(vec![0])).unwrap();
        assert!(c.boundary(v).is_empty());
    }

    #[test]
    fn closed_faces_are_checked() {
        let err = SimplicialComplex::from_closed_faces(vec![Face::new(vec![0, 1])], true);
        assert_eq!(err.unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn face_ops() {
        let f = Face::new(vec![3, 1, 2]);
        assert_eq!(f.vertices(), [1, 2, 3]);
        assert_eq!(f.without(2).vertices(), [1, 3]);
        assert_eq!(f.without(1).with(0).vertices(), [0, 2, 3]);
        assert_eq!(Face::empty().dim(), -1);
        assert!(Face::new(vec![1]).is_subset(&f));
    }
}
