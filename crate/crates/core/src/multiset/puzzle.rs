//! The integer-partition puzzle whose unsolvability would make type-two
//! partner cells critical.
//!
//! Given `n_1, ..., n_k` with `k >= 3`:
//! 1. each `n_i`, `i < k`, splits as `b_{i,1} + ... + b_{i,a_i}` with
//!    `a_i >= 2`;
//! 2. `n_k = b_{k,1} + b_{k,2} = c_{k,1} + c_{k,2}` with `b_{k,1} < b_{k,2}`,
//!    `c_{k,1} < c_{k,2}` and `b_{k,1} > c_{k,1}`;
//! 3. the parts `b_{i,j}` (`i < k`) together with `c_{k,1}, c_{k,2}` regroup
//!    into blocks `B_1, ..., B_k` with `B_i` summing to `n_i` and, both
//!    listed in increasing order, `B_i` lexicographically smaller than
//!    `b_i`.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PuzzleOptions {
    /// Parts larger than one must be distinct, both among all `b_{i,j}` and
    /// among the `b_{i,j}` with `i < k` together with `c_{k,1}, c_{k,2}`.
    pub distinct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PuzzleSolution {
    pub n: Vec<usize>,
    /// `b[i]` in increasing order; `b[k-1] = [b_{k,1}, b_{k,2}]`.
    pub b: Vec<Vec<usize>>,
    pub c: [usize; 2],
    /// The regrouping `B_1, ..., B_k`, each in increasing order.
    pub blocks: Vec<Vec<usize>>,
}

/// Which condition a proposed solution breaks; distinctness is condition 4.
pub fn check_puzzle_solution(
    s: &PuzzleSolution,
    opts: PuzzleOptions,
) -> core::result::Result<(), u8> {
    let k = s.n.len();
    if k < 3 || s.b.len() != k || s.blocks.len() != k {
        return Err(1);
    }
    for i in 0..k - 1 {
        if s.b[i].len() < 2 || s.b[i].contains(&0) || s.b[i].iter().sum::<usize>() != s.n[i] {
            return Err(1);
        }
    }
    let (bk, c) = (&s.b[k - 1], s.c);
    let cond2 = bk.len() == 2
        && bk[0] + bk[1] == s.n[k - 1]
        && c[0] + c[1] == s.n[k - 1]
        && 0 < c[0]
        && bk[0] < bk[1]
        && c[0] < c[1]
        && bk[0] > c[0];
    if !cond2 {
        return Err(2);
    }
    let mut pool: Vec<usize> = s.b[..k - 1].iter().flatten().copied().chain(c).collect();
    let mut used: Vec<usize> = s.blocks.iter().flatten().copied().collect();
    pool.sort_unstable();
    used.sort_unstable();
    if pool != used {
        return Err(3);
    }
    for i in 0..k {
        let mut bi = s.b[i].clone();
        let mut block = s.blocks[i].clone();
        bi.sort_unstable();
        block.sort_unstable();
        if block.iter().sum::<usize>() != s.n[i] || block >= bi {
            return Err(3);
        }
    }
    if opts.distinct && !distinct_ok(&s.b, c) {
        return Err(4);
    }
    Ok(())
}

fn distinct_ok(b: &[Vec<usize>], c: [usize; 2]) -> bool {
    let k = b.len();
    let mut all: Vec<usize> = b.iter().flatten().copied().filter(|&x| x > 1).collect();
    let mut other: Vec<usize> = b[..k - 1]
        .iter()
        .flatten()
        .copied()
        .chain(c)
        .filter(|&x| x > 1)
        .collect();
    all.sort_unstable();
    other.sort_unstable();
    all.windows(2).all(|w| w[0] != w[1]) && other.windows(2).all(|w| w[0] != w[1])
}

/// Integer partitions of `n` into at least two parts, each in increasing
/// order, listed in lexicographic order.
fn splits_of(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        for p in min..=rest {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// The `(b, c)` split pairs allowed by condition 2 for a given `n_k`.
pub fn condition_two_splits(nk: usize) -> Vec<([usize; 2], [usize; 2])> {
    let mut out = Vec::new();
    for b1 in 1..nk {
        let b2 = nk - b1;
        if b1 >= b2 {
            break;
        }
        for c1 in 1..b1 {
            out.push(([b1, b2], [c1, nk - c1]));
        }
    }
    out
}

/// Regroups `pool` (a multiset stored as counts per value) into blocks with
/// the given targets and bounds, returning the blocks on success.
struct Regroup<'a> {
    targets: &'a [usize],
    bounds: &'a [&'a [usize]],
    counts: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Regroup<'_> {
    fn solve(&mut self, i: usize) -> bool {
        if i == self.targets.len() {
            return true;
        }
        let mut cur = Vec::new();
        self.fill(i, self.targets[i], 1, true, &mut cur)
    }

    /// Chooses the block for index `i` in increasing order; `tight` while
    /// `cur` is still a prefix of the bound.
    fn fill(
        &mut self,
        i: usize,
        rest: usize,
        min: usize,
        tight: bool,
        cur: &mut Vec<usize>,
    ) -> bool {
        if rest == 0 {
            if tight {
                // equal to the bound, or a proper prefix of it
                return false;
            }
            self.blocks.push(cur.clone());
            if self.solve(i + 1) {
                return true;
            }
            self.blocks.pop();
            return false;
        }
        let bound = self.bounds[i];
        let limit = if tight {
            match bound.get(cur.len()) {
                Some(&b) => b.min(rest),
                None => return false,
            }
        } else {
            rest
        };
        for v in min..=limit {
            if self.counts[v] == 0 {
                continue;
            }
            self.counts[v] -= 1;
            cur.push(v);
            let still = tight && bound.get(cur.len() - 1) == Some(&v);
            let ok = self.fill(i, rest - v, v, still, cur);
            cur.pop();
            self.counts[v] += 1;
            if ok {
                return true;
            }
        }
        false
    }
}

fn regroup(n: &[usize], b: &[Vec<usize>], c: [usize; 2]) -> Option<Vec<Vec<usize>>> {
    let total: usize = n.iter().sum();
    let mut counts = vec![0usize; total + 1];
    for &x in b[..b.len() - 1].iter().flatten().chain(&c) {
        counts[x] += 1;
    }
    // Hardest blocks first: the ones with the smallest bound.
    let mut order: Vec<usize> = (0..n.len()).collect();
    order.sort_by(|&x, &y| b[x].cmp(&b[y]).then(n[x].cmp(&n[y])));
    let targets: Vec<usize> = order.iter().map(|&i| n[i]).collect();
    let bounds: Vec<&[usize]> = order.iter().map(|&i| b[i].as_slice()).collect();
    let mut r = Regroup {
        targets: &targets,
        bounds: &bounds,
        counts,
        blocks: Vec::new(),
    };
    if !r.solve(0) {
        return None;
    }
    let mut blocks = vec![Vec::new(); n.len()];
    for (pos, &i) in order.iter().enumerate() {
        blocks[i] = r.blocks[pos].clone();
    }
    Some(blocks)
}

/// Exhaustive search over `3 <= k <= max_parts` and `n_1 + ... + n_k <=
/// max_total`. The blocks `i < k` are interchangeable, so each multiset of
/// pairs `(n_i, b_i)` is tried once. Solutions come out sorted.
pub fn puzzle_search(
    max_total: usize,
    max_parts: usize,
    opts: PuzzleOptions,
) -> Vec<PuzzleSolution> {
    let split_table: Vec<Vec<Vec<usize>>> = (0..=max_total).map(splits_of).collect();
    // Every (n_i, b_i) for i < k, in a fixed order.
    let items: Vec<(usize, &Vec<usize>)> = (2..=max_total)
        .flat_map(|n| split_table[n].iter().map(move |b| (n, b)))
        .collect();
    let mut out = Vec::new();
    for k in 3..=max_parts {
        for nk in 5..=max_total {
            if nk + 2 * (k - 1) > max_total {
                break;
            }
            for (bk, c) in condition_two_splits(nk) {
                // items must avoid the parts of b_k and of c; those two may share
                let mut taken = vec![false; max_total + 1];
                if opts.distinct {
                    bk.iter()
                        .chain(&c)
                        .filter(|&&x| x > 1)
                        .for_each(|&x| taken[x] = true);
                }
                let mut search = Search {
                    items: &items,
                    distinct: opts.distinct,
                    taken,
                    chosen: Vec::new(),
                };
                search.run(0, k - 1, max_total - nk, &mut |chosen| {
                    let mut n: Vec<usize> = chosen.iter().map(|&(x, _)| x).collect();
                    let mut b: Vec<Vec<usize>> = chosen.iter().map(|&(_, y)| y.clone()).collect();
                    n.push(nk);
                    b.push(bk.to_vec());
                    if opts.distinct && !distinct_ok(&b, c) {
                        return;
                    }
                    if let Some(blocks) = regroup(&n, &b, c) {
                        out.push(PuzzleSolution { n, b, c, blocks });
                    }
                });
            }
        }
    }
    out.sort();
    out
}

/// Multisets of `(n_i, b_i)` items within a budget. In distinct mode an
/// item is skipped when one of its parts larger than one is already taken.
struct Search<'s, 'a> {
    items: &'s [Item<'a>],
    distinct: bool,
    taken: Vec<bool>,
    chosen: Vec<Item<'a>>,
}

type Item<'a> = (usize, &'a Vec<usize>);

impl<'a> Search<'_, 'a> {
    fn run(&mut self, from: usize, left: usize, budget: usize, visit: &mut dyn FnMut(&[Item<'a>])) {
        if left == 0 {
            visit(&self.chosen);
            return;
        }
        for idx in from..self.items.len() {
            let (n, b) = self.items[idx];
            // items are sorted by n, so the remaining ones cannot fit either
            if n * left > budget {
                break;
            }
            if self.distinct
                && (b.iter().any(|&x| x > 1 && self.taken[x])
                    || b.windows(2).any(|w| w[0] > 1 && w[0] == w[1]))
            {
                continue;
            }
            self.mark(b, true);
            self.chosen.push((n, b));
            self.run(idx, left - 1, budget - n, visit);
            self.chosen.pop();
            self.mark(b, false);
        }
    }

    fn mark(&mut self, b: &[usize], on: bool) {
        if self.distinct {
            b.iter()
                .filter(|&&x| x > 1)
                .for_each(|&x| self.taken[x] = on);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force regrouping check: tries every assignment of pool items to
    /// blocks.
    fn brute_regroup(n: &[usize], b: &[Vec<usize>], c: [usize; 2]) -> bool {
        let k = n.len();
        let pool: Vec<usize> = b[..k - 1].iter().flatten().copied().chain(c).collect();
        let mut assign = vec![0usize; pool.len()];
        loop {
            let mut blocks = vec![Vec::new(); k];
            for (x, &a) in pool.iter().zip(&assign) {
                blocks[a].push(*x);
            }
            let ok = (0..k).all(|i| {
                blocks[i].sort_unstable();
                blocks[i].iter().sum::<usize>() == n[i] && blocks[i] < b[i]
            });
            if ok {
                return true;
            }
            let mut d = 0;
            while d < assign.len() && assign[d] == k - 1 {
                assign[d] = 0;
                d += 1;
            }
            if d == assign.len() {
                return false;
            }
            assign[d] += 1;
        }
    }

    #[test]
    fn small_bound_has_no_solutions() {
        assert!(puzzle_search(12, 5, PuzzleOptions::default()).is_empty());
        assert!(puzzle_search(5, 5, PuzzleOptions::default()).is_empty());
        assert!(puzzle_search(30, 2, PuzzleOptions::default()).is_empty());
    }

    #[test]
    fn condition_two() {
        assert!(condition_two_splits(4).is_empty());
        assert_eq!(condition_two_splits(5), [([2, 3], [1, 4])]);
        assert_eq!(condition_two_splits(8).len(), 1 + 2);
    }

    #[test]
    fn regroup_agrees_with_brute_force() {
        #[allow(clippy::type_complexity)]
        let cases: &[(&[usize], &[&[usize]], [usize; 2])] = &[
            (&[3, 4, 5], &[&[1, 2], &[2, 2], &[2, 3]], [1, 4]),
            (&[4, 4, 7], &[&[1, 3], &[2, 2], &[3, 4]], [2, 5]),
            (&[2, 6, 9], &[&[1, 1], &[1, 2, 3], &[4, 5]], [1, 8]),
            (&[5, 5, 6, 7], &[&[2, 3], &[1, 4], &[1, 5], &[3, 4]], [1, 6]),
        ];
        for &(n, b, c) in cases {
            let b: Vec<Vec<usize>> = b.iter().map(|x| x.to_vec()).collect();
            let found = regroup(n, &b, c);
            assert_eq!(
                found.is_some(),
                brute_regroup(n, &b, c),
                "{n:?} {b:?} {c:?}"
            );
            if let Some(blocks) = found {
                let s = PuzzleSolution {
                    n: n.to_vec(),
                    b,
                    c,
                    blocks,
                };
                assert_eq!(check_puzzle_solution(&s, PuzzleOptions::default()), Ok(()));
            }
        }
    }

    #[test]
    fn checker_rejects_each_condition() {
        let good = PuzzleSolution {
            n: vec![3, 4, 5],
            b: vec![vec![1, 2], vec![2, 2], vec![2, 3]],
            c: [1, 4],
            blocks: vec![vec![1, 2], vec![1, 3], vec![1, 4]],
        };
        assert_eq!(
            check_puzzle_solution(&good, PuzzleOptions::default()),
            Err(3)
        );
        let mut s = good.clone();
        s.b[0] = vec![3];
        assert_eq!(check_puzzle_solution(&s, PuzzleOptions::default()), Err(1));
        let mut s = good.clone();
        s.c = [2, 3];
        assert_eq!(check_puzzle_solution(&s, PuzzleOptions::default()), Err(2));
        s.c = [3, 2];
        assert_eq!(check_puzzle_solution(&s, PuzzleOptions::default()), Err(2));
    }
}
