//! Acyclic matchings on face posets: critical cells, Morse numbers,
//! gradient paths, and cancellation of critical pairs by path reversal.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// A partial matching of faces with their codimension-one cofaces.
///
/// Matchings are values: [`AcyclicMatching::cancel`] returns a new matching
/// and leaves the receiver untouched. The complex is shared.
#[derive(Clone, Debug)]
pub struct AcyclicMatching {
    complex: Arc<SimplicialComplex>,
    partner: Vec<Option<usize>>,
}

/// Critical-cell counts by dimension, indexed from dimension -1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorseVector {
    values: Vec<usize>,
}

impl MorseVector {
    pub fn get(&self, dim: isize) -> usize {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.values.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn total(&self) -> usize {
        self.values.iter().sum()
    }

    pub fn euler(&self) -> i64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &m)| if i % 2 == 1 { m as i64 } else { -(m as i64) })
            .sum()
    }
}

/// An alternating walk `tau = tau_0 > sigma_0 ~ tau_1 > sigma_1 ~ ... >
/// sigma_m = sigma`: each `>` removes one vertex, each `~` follows the
/// matching upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradientPath {
    /// Face ids `tau_0, sigma_0, tau_1, sigma_1, ..., sigma_m`.
    pub faces: Vec<usize>,
    /// The vertex removed at each downward step.
    pub deleted: Vec<usize>,
}

impl GradientPath {
    pub fn steps(&self) -> usize {
        self.deleted.len()
    }
}

impl AcyclicMatching {
    /// The empty matching: every face is critical.
    pub fn new(complex: Arc<SimplicialComplex>) -> Self {
        let n = complex.len();
        AcyclicMatching {
            complex,
            partner: vec![None; n],
        }
    }

    /// Builds a matching from `(lower, upper)` face-id pairs, checking that
    /// each pair is a codimension-one incidence and that no face is used
    /// twice. Acyclicity is not checked here.
    pub fn from_pairs(complex: Arc<SimplicialComplex>, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::new(complex);
        for &(a, b) in pairs {
            m.try_pair(a, b)?;
        }
        Ok(m)
    }

    pub(crate) fn try_pair(&mut self, a: usize, b: usize) -> Result<()> {
        let (lo, hi) = if self.complex.dim_of(a) < self.complex.dim_of(b) {
            (a, b)
        } else {
            (b, a)
        };
        if !self.complex.boundary(hi).contains(&lo)
            || self.partner[lo].is_some()
            || self.partner[hi].is_some()
        {
            return Err(Error::UnknownFace);
        }
        self.partner[lo] = Some(hi);
        self.partner[hi] = Some(lo);
        Ok(())
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn shared_complex(&self) -> Arc<SimplicialComplex> {
        Arc::clone(&self.complex)
    }

    pub fn partner(&self, id: usize) -> Option<usize> {
        self.partner[id]
    }

    pub fn is_critical(&self, id: usize) -> bool {
        self.partner[id].is_none()
    }

    /// Critical face ids in id order.
    pub fn critical(&self) -> Vec<usize> {
        (0..self.partner.len())
            .filter(|&i| self.partner[i].is_none())
            .collect()
    }

    /// Matched pairs as `(lower, upper)`, ordered by the lower face id.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter_map(|i| match self.partner[i] {
                Some(j) if self.complex.dim_of(i) < self.complex.dim_of(j) => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    pub fn morse_vector(&self) -> MorseVector {
        let top = self.complex.dim();
        let mut values = vec![0; (top + 2).max(1) as usize];
        for id in self.critical() {
            values[(self.complex.dim_of(id) + 1) as usize] += 1;
        }
        MorseVector { values }
    }

    /// Successors of `id` in the modified Hasse diagram: matched
    /// incidences point up, all others point down.
    fn successors(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        let up = self.partner[id].filter(|&p| self.complex.dim_of(p) > self.complex.dim_of(id));
        let down = self
            .complex
            .boundary(id)
            .iter()
            .copied()
            .filter(move |&g| self.partner[g] != Some(id));
        up.into_iter().chain(down)
    }

    /// True when the modified Hasse diagram has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.partner.len();
        let mut indeg = vec![0usize; n];
        for v in 0..n {
            for w in self.successors(v) {
                indeg[w] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for w in self.successors(v) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == n
    }

    fn check_endpoints(&self, tau: usize, sigma: usize) -> Result<()> {
        let (dt, ds) = (self.complex.dim_of(tau), self.complex.dim_of(sigma));
        if dt != ds + 1 {
            return Err(Error::DimensionMismatch { tau: dt, sigma: ds });
        }
        if !self.is_critical(tau) || !self.is_critical(sigma) {
            return Err(Error::NotCritical);
        }
        Ok(())
    }

    /// Downward moves out of `tau_t` that stay on a gradient path toward
    /// `sigma`: `(removed face, next tau or None when it is sigma)`.
    fn moves(
        &self,
        from: usize,
        sigma: usize,
    ) -> impl Iterator<Item = (usize, Option<usize>)> + '_ {
        let dim = self.complex.dim_of(from);
        self.complex
            .boundary(from)
            .iter()
            .copied()
            .filter(move |&g| self.partner[g] != Some(from))
            .filter_map(move |g| {
                if g == sigma {
                    Some((g, None))
                } else {
                    match self.partner[g] {
                        Some(t) if self.complex.dim_of(t) == dim => Some((g, Some(t))),
                        _ => None,
                    }
                }
            })
    }

    fn count_from(&self, from: usize, sigma: usize, memo: &mut BTreeMap<usize, u128>) -> u128 {
        if let Some(&c) = memo.get(&from) {
            return c;
        }
        let next: Vec<(usize, Option<usize>)> = self.moves(from, sigma).collect();
        let mut total: u128 = 0;
        for (_, t) in next {
            let c = match t {
                None => 1,
                Some(t) => self.count_from(t, sigma, memo),
            };
            total = total.saturating_add(c);
        }
        memo.insert(from, total);
        total
    }

    /// Number of gradient paths from critical `tau` to critical `sigma`,
    /// where `dim tau = dim sigma + 1`.
    pub fn count_gradient_paths(&self, tau: usize, sigma: usize) -> Result<u128> {
        self.check_endpoints(tau, sigma)?;
        Ok(self.count_from(tau, sigma, &mut BTreeMap::new()))
    }

    /// Every gradient path from critical `tau` to critical `sigma`.
    pub fn gradient_paths(&self, tau: usize, sigma: usize) -> Result<Vec<GradientPath>> {
        self.gradient_paths_limited(tau, sigma, usize::MAX)
    }

    /// At most `limit` gradient paths, in a deterministic order.
    pub fn gradient_paths_limited(
        &self,
        tau: usize,
        sigma: usize,
        limit: usize,
    ) -> Result<Vec<GradientPath>> {
        self.check_endpoints(tau, sigma)?;
        let mut memo = BTreeMap::new();
        let mut out = Vec::new();
        let mut faces = vec![tau];
        self.collect_paths(tau, sigma, &mut faces, &mut memo, &mut out, limit);
        Ok(out)
    }

    fn collect_paths(
        &self,
        from: usize,
        sigma: usize,
        faces: &mut Vec<usize>,
        memo: &mut BTreeMap<usize, u128>,
        out: &mut Vec<GradientPath>,
        limit: usize,
    ) {
        let next: Vec<(usize, Option<usize>)> = self.moves(from, sigma).collect();
        for (g, t) in next {
            if out.len() >= limit {
                return;
            }
            match t {
                None => {
                    faces.push(g);
                    out.push(self.path_from_faces(faces));
                    faces.pop();
                }
                Some(t) => {
                    if self.count_from(t, sigma, memo) == 0 {
                        continue;
                    }
                    faces.push(g);
                    faces.push(t);
                    self.collect_paths(t, sigma, faces, memo, out, limit);
                    faces.pop();
                    faces.pop();
                }
            }
        }
    }

    fn path_from_faces(&self, faces: &[usize]) -> GradientPath {
        let deleted = faces
            .chunks(2)
            .map(|pair| {
                let (big, small) = (self.complex.face(pair[0]), self.complex.face(pair[1]));
                big.vertices()
                    .iter()
                    .copied()
                    .find(|&v| !small.contains(v))
                    .expect("downward step removes a vertex")
            })
            .collect();
        GradientPath {
            faces: faces.to_vec(),
            deleted,
        }
    }

    /// Cancels critical `tau` against critical `sigma` by reversing the
    /// unique gradient path between them. Fails without side effects when
    /// the number of paths is not exactly one.
    pub fn cancel(&self, tau: usize, sigma: usize) -> Result<AcyclicMatching> {
        let paths = self.gradient_paths_limited(tau, sigma, 2)?;
        if paths.len() != 1 {
            return Err(Error::NotUnique(paths.len()));
        }
        let faces = &paths[0].faces;
        let mut out = self.clone();
        // faces = tau_0, sigma_0, tau_1, sigma_1, ..., sigma_m
        for t in 0..faces.len() / 2 {
            let sig = faces[2 * t + 1];
            if let Some(old) = out.partner[sig] {
                out.partner[old] = None;
            }
            out.partner[sig] = None;
        }
        for pair in faces.chunks(2) {
            out.partner[pair[0]] = Some(pair[1]);
            out.partner[pair[1]] = Some(pair[0]);
        }
        if !out.is_acyclic() {
            return Err(Error::NotAcyclic);
        }
        Ok(out)
    }
}
