//! Brute-force simplicial homology over the rationals, used as ground truth
//! for every topological claim the Morse machinery makes.
//!
//! Ranks of boundary matrices are computed by sparse fraction-free column
//! reduction. Coefficients start as `i64` with checked arithmetic and the
//! whole reduction is redone with big integers if anything overflows, so the
//! result is exact either way. A mod-2 rank is available for cross-checks.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

use crate::complex::{Face, SimplicialComplex};
use crate::poset::Poset;

/// Reduced (or, for complexes without the empty face, ordinary) Betti
/// numbers indexed from dimension -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    values: Vec<usize>,
}

impl BettiVector {
    pub fn from_values(values: Vec<usize>) -> Self {
        BettiVector { values }
    }

    /// Betti number in dimension `dim` (0 outside the stored range).
    pub fn get(&self, dim: isize) -> usize {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.values.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// Values for dimensions -1, 0, 1, ...
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn euler(&self) -> i64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&b| b == 0)
    }

    /// `Some(d)` when the only nonzero entry is a single 1 in dimension `d`.
    pub fn sphere_dimension(&self) -> Option<isize> {
        let nonzero: Vec<(usize, usize)> = self
            .values
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, b)| b != 0)
            .collect();
        match nonzero.as_slice() {
            [(i, 1)] => Some(*i as isize - 1),
            _ => None,
        }
    }
}

/// The order complex of the open interval `(bottom, top)`: every chain of
/// interior elements, including the empty chain. Chains are enumerated from
/// the order relation directly, independently of saturated-chain
/// enumeration.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    let interior = p.interior();
    let above: BTreeMap<usize, Vec<usize>> = interior
        .iter()
        .map(|&x| {
            (
                x,
                interior.iter().copied().filter(|&y| p.lt(x, y)).collect(),
            )
        })
        .collect();
    let mut faces = vec![Face::empty()];
    let mut stack: Vec<Vec<usize>> = interior.iter().map(|&x| vec![x]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        for &y in &above[&last] {
            let mut next = chain.clone();
            next.push(y);
            stack.push(next);
        }
        faces.push(Face::new(chain));
    }
    SimplicialComplex::from_closed_faces(faces, true).expect("chains are closed under subsets")
}

/// Sparse boundary matrix of dimension `dim` as columns indexed by the
/// `dim`-faces, with entries `(row, ±1)` where rows are positions among the
/// `(dim-1)`-faces.
pub fn boundary_columns(c: &SimplicialComplex, dim: isize) -> Vec<Vec<(usize, i8)>> {
    let rows: Vec<usize> = c.ids_of_dim(dim - 1).collect();
    let row_of = |id: usize| rows.binary_search(&id).expect("boundary face has dim - 1");
    c.ids_of_dim(dim)
        .map(|id| {
            let mut col: Vec<(usize, i8)> = c
                .boundary(id)
                .iter()
                .enumerate()
                .map(|(i, &b)| (row_of(b), if i % 2 == 0 { 1 } else { -1 }))
                .collect();
            col.sort_unstable();
            col
        })
        .collect()
}

trait Coefficient: Clone + PartialEq + Zero + One + Integer + Signed + CheckedMul + CheckedSub {}
impl<T: Clone + PartialEq + Zero + One + Integer + Signed + CheckedMul + CheckedSub> Coefficient
    for T
{
}

/// `a * x - b * y` entrywise on sparse columns, dropping zeros.
fn combine<T: Coefficient>(
    a: &T,
    x: &[(usize, T)],
    b: &T,
    y: &[(usize, T)],
) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (row, val) = match (x.get(i), y.get(j)) {
            (Some((rx, vx)), Some((ry, _))) if rx < ry => {
                i += 1;
                (*rx, a.checked_mul(vx)?)
            }
            (Some((rx, _)), Some((ry, vy))) if ry < rx => {
                j += 1;
                (*ry, T::zero().checked_sub(&b.checked_mul(vy)?)?)
            }
            (Some((rx, vx)), Some((_, vy))) => {
                i += 1;
                j += 1;
                (*rx, a.checked_mul(vx)?.checked_sub(&b.checked_mul(vy)?)?)
            }
            (Some((rx, vx)), None) => {
                i += 1;
                (*rx, a.checked_mul(vx)?)
            }
            (None, Some((ry, vy))) => {
                j += 1;
                (*ry, T::zero().checked_sub(&b.checked_mul(vy)?)?)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((row, val));
        }
    }
    // Divide out the content to keep entries small.
    let g = out.iter().fold(T::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in &mut out {
            *v = v.div_floor(&g);
        }
    }
    Some(out)
}

fn rank_with<T: Coefficient>(
    columns: &[Vec<(usize, i8)>],
    lift: impl Fn(i8) -> T,
) -> Option<usize> {
    let mut pivots: BTreeMap<usize, Vec<(usize, T)>> = BTreeMap::new();
    for col in columns {
        let mut col: Vec<(usize, T)> = col.iter().map(|&(r, v)| (r, lift(v))).collect();
        while let Some((low, low_val)) = col.last().cloned() {
            match pivots.get(&low) {
                None => {
                    pivots.insert(low, col);
                    break;
                }
                Some(p) => {
                    let p_val = &p.last().unwrap().1;
                    let g = low_val.gcd(p_val);
                    let a = p_val.div_floor(&g);
                    let b = low_val.div_floor(&g);
                    col = combine(&a, &col, &b, p)?;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Exact rank over the rationals of a sparse `±1` matrix given by columns.
pub fn rational_rank(columns: &[Vec<(usize, i8)>]) -> usize {
    rank_with::<i64>(columns, i64::from)
        .or_else(|| rank_with::<BigInt>(columns, BigInt::from))
        .expect("big integer arithmetic does not overflow")
}

/// Rank over the field with two elements.
pub fn mod2_rank(columns: &[Vec<(usize, i8)>]) -> usize {
    let mut pivots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for col in columns {
        let mut col: Vec<usize> = col.iter().map(|&(r, _)| r).collect();
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                None => {
                    pivots.insert(low, col);
                    break;
                }
                Some(p) => {
                    let mut merged = Vec::with_capacity(col.len() + p.len());
                    let (mut i, mut j) = (0, 0);
                    while i < col.len() || j < p.len() {
                        match (col.get(i), p.get(j)) {
                            (Some(a), Some(b)) if a == b => {
                                i += 1;
                                j += 1;
                            }
                            (Some(a), Some(b)) if a < b => {
                                merged.push(*a);
                                i += 1;
                            }
                            (Some(_), Some(b)) | (None, Some(b)) => {
                                merged.push(*b);
                                j += 1;
                            }
                            (Some(a), None) => {
                                merged.push(*a);
                                i += 1;
                            }
                            (None, None) => unreachable!(),
                        }
                    }
                    col = merged;
                }
            }
        }
    }
    pivots.len()
}

fn betti_with(c: &SimplicialComplex, rank: impl Fn(&[Vec<(usize, i8)>]) -> usize) -> BettiVector {
    let top = c.dim();
    let low = if c.has_empty_face() { -1 } else { 0 };
    // ranks[d + 1] = rank of the boundary map out of dimension d
    let ranks: Vec<usize> = (-1..=top + 1)
        .map(|d| {
            if d <= low {
                0
            } else {
                rank(&boundary_columns(c, d))
            }
        })
        .collect();
    let values = (-1..=top)
        .map(|d| {
            let n = c.ids_of_dim(d).count();
            let i = (d + 1) as usize;
            n - ranks[i] - ranks[i + 1]
        })
        .collect();
    BettiVector { values }
}

/// Betti numbers over the rationals. They are reduced exactly when the
/// complex contains the empty face.
pub fn reduced_betti(c: &SimplicialComplex) -> BettiVector {
    betti_with(c, rational_rank)
}

/// Betti numbers over the field with two elements.
pub fn betti_mod2(c: &SimplicialComplex) -> BettiVector {
    betti_with(c, mod2_rank)
}

/// Reduced Euler characteristic: alternating count of nonempty faces minus
/// one.
pub fn euler_characteristic(c: &SimplicialComplex) -> i64 {
    let nonempty: i64 = c
        .faces()
        .iter()
        .filter(|f| !f.is_empty())
        .map(|f| if f.dim() % 2 == 0 { 1 } else { -1 })
        .sum();
    nonempty - 1
}
