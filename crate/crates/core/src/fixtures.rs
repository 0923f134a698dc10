//! Small posets and labelings used by tests, the acceptance suite, and the
//! command-line examples.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::{Face, SimplicialComplex};
use crate::labeling::{EdgeLabeling, LabelToken};
use crate::poset::Poset;

/// `0 < x < 1`.
pub fn chain3() -> Poset {
    Poset::from_covers(&[("0", "x"), ("x", "1")]).unwrap()
}

/// `0 < a, b < 1`.
pub fn diamond() -> Poset {
    Poset::from_covers(&[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap()
}

/// Labels `0<a = 1`, `0<b = 2`, and 1 on both upper covers.
pub fn diamond_labeling(p: &Poset) -> EdgeLabeling {
    EdgeLabeling::from_ids(
        p,
        &[("0", "a", 1), ("0", "b", 2), ("a", "1", 1), ("b", "1", 1)],
    )
    .unwrap()
}

/// `0 < a, b < c, d < 1` with all four middle covers: four facets.
pub fn two_by_two() -> Poset {
    Poset::from_covers(&[
        ("0", "a"),
        ("0", "b"),
        ("a", "c"),
        ("a", "d"),
        ("b", "c"),
        ("b", "d"),
        ("c", "1"),
        ("d", "1"),
    ])
    .unwrap()
}

fn subset_id(mask: u32, n: usize) -> String {
    let members: Vec<String> = (0..n)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| format!("{}", i + 1))
        .collect();
    format!("{{{}}}", members.join(","))
}

/// Boolean lattice of subsets of `{1..n}`, ids like `{1,3}`.
pub fn boolean(n: usize) -> Poset {
    let mut covers = Vec::new();
    for mask in 0u32..(1 << n) {
        for i in 0..n {
            if mask & (1 << i) == 0 {
                covers.push((subset_id(mask, n), subset_id(mask | (1 << i), n)));
            }
        }
    }
    Poset::from_covers(&covers).unwrap()
}

/// Labels each cover of a Boolean lattice by the element it inserts.
pub fn boolean_labeling(p: &Poset) -> EdgeLabeling {
    let members = |id: &str| -> Vec<i64> {
        id.trim_matches(|c| c == '{' || c == '}')
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().unwrap())
            .collect()
    };
    let labels: BTreeMap<(usize, usize), LabelToken> = p
        .covers()
        .map(|(u, v)| {
            let small = members(p.id(u));
            let new = members(p.id(v))
                .into_iter()
                .find(|x| !small.contains(x))
                .unwrap();
            ((u, v), LabelToken::Int(new))
        })
        .collect();
    EdgeLabeling::new(p, labels).unwrap()
}

/// The 4-cycle `0-1-2-3-0` without the empty face.
pub fn square_cycle() -> SimplicialComplex {
    SimplicialComplex::from_generators(
        [[0, 1], [1, 2], [2, 3], [0, 3]].map(|e| Face::new(e.to_vec())),
        false,
    )
}

/// Two hollow triangles `o-a-b` and `o-c-d` glued at `o` (vertex 0),
/// without the empty face. Vertices: o=0, a=1, b=2, c=3, d=4.
pub fn bowtie() -> SimplicialComplex {
    SimplicialComplex::from_generators(
        [[0, 1], [1, 2], [0, 2], [0, 3], [3, 4], [0, 4]].map(|e| Face::new(e.to_vec())),
        false,
    )
}
