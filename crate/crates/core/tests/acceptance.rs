//! Acceptance suite: one pass/fail line per criterion.
//!
//! Criteria listed in `EXPECTED_FAILURES` are reported as FAIL and do not
//! abort the run; any other failure, or an expected failure that starts
//! passing, fails the test.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use lexmorse_core::fixtures;
use lexmorse_core::homology::{order_complex, reduced_betti};
use lexmorse_core::lex_morse::{overlap_type, truncate_intervals};
use lexmorse_core::mobius::{mobius, mobius_from_morse, mobius_recursive};
use lexmorse_core::multiset::{
    build_multiset_poset, cancel_all_lower, hook_mobius_predicate, integer_partition_id,
    puzzle_search, ziegler_interval, CancelOptions, Lambda, MultisetLabeling, PuzzleOptions,
    PuzzleSolution,
};
use lexmorse_core::shelling::{is_lex_shelling, shelling_matching};
use lexmorse_core::{Face, FacetOrder, LexMorse, Poset, RankInterval};

/// The hook Möbius criterion disagrees with the recursive Möbius function
/// at `(2)` and at `(m, 1)` for every `m >= 4`.
const EXPECTED_FAILURES: &[u32] = &[11];

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

fn report(out: &mut Vec<Outcome>, id: u32, pass: bool, detail: String) {
    println!(
        "criterion {id:02} {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    out.push(Outcome { id, pass, detail });
}

fn iv(lo: usize, hi: usize) -> RankInterval {
    RankInterval::new(lo, hi)
}

fn multiset_fixture(parts: &[usize]) -> (Poset, FacetOrder) {
    let p = build_multiset_poset(&Lambda::new(parts.to_vec()).unwrap()).unwrap();
    let fo = FacetOrder::from_labeling(&p, &MultisetLabeling).unwrap();
    (p, fo)
}

fn suite() -> Vec<(&'static str, Poset, FacetOrder)> {
    let mut out = Vec::new();
    let c = fixtures::chain3();
    let fo = FacetOrder::from_explicit(&c, c.facets()).unwrap();
    out.push(("3-chain", c, fo));
    let d = fixtures::diamond();
    let fo = FacetOrder::from_labeling(&d, &fixtures::diamond_labeling(&d)).unwrap();
    out.push(("diamond", d, fo));
    for (name, n) in [("B3", 3), ("B4", 4)] {
        let b = fixtures::boolean(n);
        let fo = FacetOrder::from_labeling(&b, &fixtures::boolean_labeling(&b)).unwrap();
        out.push((name, b, fo));
    }
    for (name, parts) in [
        ("Pi4", &[1, 1, 1, 1][..]),
        ("Pi4/S211", &[2, 1, 1][..]),
        ("P4", &[4][..]),
        ("P5", &[5][..]),
        ("P6", &[6][..]),
    ] {
        let (p, fo) = multiset_fixture(parts);
        out.push((name, p, fo));
    }
    out
}

/// Independent acyclicity check: Kahn's algorithm on the modified Hasse
/// diagram, edges pointing down except along matched pairs.
fn acyclic_by_kahn(lex: &LexMorse) -> bool {
    let c = lex.complex();
    let m = lex.matching();
    let n = c.len();
    let mut adj = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for hi in 0..n {
        for &lo in c.boundary(hi) {
            let (a, b) = if m.partner(hi) == Some(lo) {
                (lo, hi)
            } else {
                (hi, lo)
            };
            adj[a].push(b);
            indeg[b] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == n
}

/// The three puzzle conditions read directly off a proposed solution.
fn verify_puzzle(s: &PuzzleSolution) -> bool {
    let k = s.n.len();
    if k < 3 || s.b.len() != k || s.blocks.len() != k {
        return false;
    }
    for i in 0..k - 1 {
        if s.b[i].len() < 2 || s.b[i].iter().sum::<usize>() != s.n[i] || s.b[i].contains(&0) {
            return false;
        }
    }
    let (b1, b2) = (s.b[k - 1][0], s.b[k - 1][1]);
    let (c1, c2) = (s.c[0], s.c[1]);
    if s.b[k - 1].len() != 2 || b1 + b2 != s.n[k - 1] || c1 + c2 != s.n[k - 1] {
        return false;
    }
    if !(c1 >= 1 && b1 < b2 && c1 < c2 && b1 > c1) {
        return false;
    }
    let mut pool: Vec<usize> = s.b[..k - 1].iter().flatten().copied().collect();
    pool.extend([c1, c2]);
    let mut given: Vec<usize> = s.blocks.iter().flatten().copied().collect();
    pool.sort();
    given.sort();
    if pool != given {
        return false;
    }
    (0..k).all(|i| {
        let mut got = s.blocks[i].clone();
        let mut want = s.b[i].clone();
        got.sort();
        want.sort();
        // smallest part no larger, and on a tie the first difference smaller
        got.iter().sum::<usize>() == s.n[i] && got[0] <= want[0] && got != want && {
            let d = got.iter().zip(&want).position(|(x, y)| x != y).unwrap();
            got[d] < want[d]
        }
    })
}

#[test]
fn acceptance() {
    let mut out = Vec::new();

    // 1
    let t = Instant::now();
    let sys = truncate_intervals(&[iv(1, 2), iv(2, 3), iv(3, 4)], 4);
    let took = t.elapsed();
    let pass = sys.truncated == [iv(1, 2), iv(3, 3)]
        && sys.critical_ranks() == Some(&[1, 3][..])
        && took < Duration::from_millis(1);
    report(
        &mut out,
        1,
        pass,
        format!(
            "J-truncation: J = {:?}, critical ranks {:?}, {took:?}",
            sys.truncated,
            sys.critical_ranks()
        ),
    );

    // 2
    let i = [iv(1, 1), iv(2, 3), iv(4, 5), iv(6, 6)];
    let sys = truncate_intervals(&i, 6);
    let pass = sys.truncated == i && sys.critical_ranks() == Some(&[1, 2, 4, 6][..]);
    report(
        &mut out,
        2,
        pass,
        format!(
            "four-interval system: J = {:?}, critical ranks {:?}",
            sys.truncated,
            sys.critical_ranks()
        ),
    );

    let t = Instant::now();
    let fixtures = suite();
    let built: Vec<(&str, &Poset, LexMorse)> = fixtures
        .iter()
        .map(|(name, p, fo)| (*name, p, LexMorse::build(fo.clone()).unwrap()))
        .collect();

    // 3
    let bad: Vec<&str> = built
        .iter()
        .filter(|(_, _, lex)| !(lex.matching().is_acyclic() && acyclic_by_kahn(lex)))
        .map(|(n, _, _)| *n)
        .collect();
    let took = t.elapsed();
    report(
        &mut out,
        3,
        bad.is_empty() && took < Duration::from_secs(10),
        format!(
            "acyclicity on {} fixtures, failures {bad:?}, {took:?}",
            built.len()
        ),
    );

    // 4
    let mut bad = Vec::new();
    for (name, _, lex) in &built {
        let mut per_fibre: BTreeMap<usize, usize> = BTreeMap::new();
        for c in lex.matching().critical() {
            *per_fibre.entry(lex.fibre_of(c)).or_default() += 1;
        }
        for sys in lex.systems() {
            let count = per_fibre.get(&sys.facet).copied().unwrap_or(0);
            if count > 1 || (count == 1) != sys.is_covered() {
                bad.push(format!("{name}#{}", sys.facet));
            }
        }
    }
    report(
        &mut out,
        4,
        bad.is_empty(),
        format!("one critical cell per covered fibre, failures {bad:?}"),
    );

    // 5
    let mut rows = Vec::new();
    let mut pass = true;
    for (name, p, lex) in &built {
        let morse = mobius_from_morse(lex);
        let rec = mobius(p);
        let chi = reduced_betti(&order_complex(p)).euler();
        pass &= morse == rec && rec == chi;
        rows.push(format!("{name}={morse}/{rec}/{chi}"));
    }
    let named = |n: &str| {
        built
            .iter()
            .find(|b| b.0 == n)
            .map(|b| mobius(b.1))
            .unwrap()
    };
    pass &= named("B3") == -1 && named("diamond") == 1 && named("P4") == 0;
    report(
        &mut out,
        5,
        pass,
        format!("mu morse/recursive/euler: {}", rows.join(" ")),
    );

    // 6
    let mut bad = Vec::new();
    for (name, p, lex) in &built {
        let m = lex.matching().morse_vector();
        let b = reduced_betti(&order_complex(p));
        for d in -1..=lex.complex().dim() {
            if m.get(d) < b.get(d) {
                bad.push(format!("{name} dim {d}"));
            }
        }
    }
    report(
        &mut out,
        6,
        bad.is_empty(),
        format!("weak Morse inequalities, failures {bad:?}"),
    );

    // 7
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, _, lex) in &built {
        for j in 1..lex.order().len() {
            checked += 1;
            if let Err(e) = overlap_type(lex.order(), j) {
                bad.push(format!("{name}#{j}: {e}"));
            }
        }
    }
    report(
        &mut out,
        7,
        bad.is_empty(),
        format!("{checked} overlaps are spheres or acyclic, unexpected {bad:?}"),
    );

    // 8
    let mut pass = true;
    let mut rows = Vec::new();
    for name in ["B3", "B4"] {
        let (_, p, lex) = built.iter().find(|b| b.0 == name).unwrap();
        let shelling = is_lex_shelling(lex.systems()).is_shelling();
        let top = lex.complex().dim();
        let crit = lex.matching().morse_vector();
        let betti = reduced_betti(&order_complex(p));
        let chains: Vec<&[usize]> = lex.order().facets().iter().map(|f| f.interior()).collect();
        let sm = shelling_matching(&chains).unwrap();
        let a: BTreeSet<Face> = sm
            .matching
            .critical()
            .iter()
            .map(|&c| sm.matching.complex().face(c).clone())
            .collect();
        let b: BTreeSet<Face> = lex
            .critical()
            .iter()
            .map(|&c| lex.complex().face(c).clone())
            .collect();
        let pairs_a: BTreeSet<(Face, Face)> = sm
            .matching
            .pairs()
            .iter()
            .map(|&(x, y)| {
                (
                    sm.matching.complex().face(x).clone(),
                    sm.matching.complex().face(y).clone(),
                )
            })
            .collect();
        let pairs_b: BTreeSet<(Face, Face)> = lex
            .matching()
            .pairs()
            .iter()
            .map(|&(x, y)| (lex.complex().face(x).clone(), lex.complex().face(y).clone()))
            .collect();
        let ok = shelling
            && crit.total() == 1
            && crit.get(top) == 1
            && betti.get(top) == 1
            && a == b
            && pairs_a == pairs_b;
        pass &= ok;
        rows.push(format!(
            "{name}: shelling {shelling}, top critical {}, b~{top} {}, agree {}",
            crit.get(top),
            betti.get(top),
            a == b && pairs_a == pairs_b
        ));
    }
    report(&mut out, 8, pass, rows.join("; "));

    // 9
    let t = Instant::now();
    let lo = integer_partition_id(&[8, 7, 4]);
    let hi = integer_partition_id(&[6, 5, 3, 2, 2, 1]);
    let z = ziegler_interval(&lo, &hi).unwrap();
    let open = z.open_interval(z.bottom(), z.top()).unwrap();
    let b0 = reduced_betti(&order_complex(&open)).get(0);
    let took = t.elapsed();
    report(
        &mut out,
        9,
        b0 >= 1 && took < Duration::from_secs(5),
        format!(
            "open interval ({hi}, {lo}) has {} elements, b~0 = {b0}, {took:?}",
            open.len()
        ),
    );

    // 10 and 12
    let t = Instant::now();
    let mut pass10 = true;
    let mut pass12 = true;
    let mut rows = Vec::new();
    let mut pairs_seen = 0;
    for n in 2..=6 {
        for lambda in Lambda::hooks(n) {
            let (m, rep) = match cancel_all_lower(&lambda, CancelOptions::default()) {
                Ok(x) => x,
                Err(e) => {
                    pass10 = false;
                    rows.push(format!("{lambda}: {e}"));
                    continue;
                }
            };
            let betti = reduced_betti(m.complex());
            let top = rep.top_dimension;
            let lower_zero = (-1..top).all(|d| betti.get(d) == 0);
            let unique = rep.pairs.iter().all(|p| p.paths == 1);
            let ok = m.is_acyclic()
                && rep.is_concentrated(&m)
                && rep.survivors.len() == betti.get(top)
                && lower_zero
                && unique;
            pass10 &= ok;
            for p in &rep.pairs {
                pairs_seen += 1;
                let steps_ok = p.inversions.windows(2).all(|w| w[0] == w[1] + 1);
                let word_ok = p.deleted_ranks.windows(2).all(|w| w[0] > w[1]);
                pass12 &= steps_ok && word_ok;
            }
            rows.push(format!(
                "{lambda}:{}/{}",
                rep.survivors.len(),
                betti.get(top)
            ));
        }
    }
    let took = t.elapsed();
    report(
        &mut out,
        10,
        pass10,
        format!(
            "hooks n<=6 survivors/b~top: {}; {pairs_seen} pairs cancelled, {took:?}",
            rows.join(" ")
        ),
    );

    // 11
    let mut bad = Vec::new();
    let mut total = 0;
    for n in 2..=8 {
        for lambda in Lambda::hooks(n) {
            total += 1;
            let p = build_multiset_poset(&lambda).unwrap();
            let mu = mobius_recursive(&p, p.bottom(), p.top()).unwrap();
            let predicate = hook_mobius_predicate(&lambda).unwrap();
            if predicate != (mu == 0) {
                bad.push(format!("{lambda}(mu={mu},pred={predicate})"));
            }
        }
    }
    report(
        &mut out,
        11,
        bad.is_empty(),
        format!(
            "hook Mobius criterion on {total} hooks, disagreements {}",
            bad.join(" ")
        ),
    );

    report(
        &mut out,
        12,
        pass12,
        if pairs_seen == 0 {
            "no lower critical cells arise for hooks n<=6, so no gradient paths to inspect (vacuous)".to_string()
        } else {
            format!("{pairs_seen} paths: one inversion per step, decreasing deleted ranks")
        },
    );

    // 13
    let t = Instant::now();
    let first = puzzle_search(30, 5, PuzzleOptions::default());
    let second = puzzle_search(30, 5, PuzzleOptions::default());
    let distinct = puzzle_search(30, 5, PuzzleOptions { distinct: true });
    let took = t.elapsed();
    let verified = first.iter().all(verify_puzzle) && distinct.iter().all(verify_puzzle);
    let subset = distinct.iter().all(|s| first.contains(s));
    report(
        &mut out,
        13,
        first == second && verified && subset && took < Duration::from_secs(300),
        format!(
            "puzzle to total 30, 5 parts: {} solutions ({} with distinct parts), all re-verified {verified}, deterministic {}, {took:?}",
            first.len(),
            distinct.len(),
            first == second
        ),
    );

    let failed: Vec<u32> = out.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    for o in out.iter().filter(|o| !o.pass) {
        let tag = if EXPECTED_FAILURES.contains(&o.id) {
            "known"
        } else {
            "unexpected"
        };
        println!("{tag} failure {}: {}", o.id, o.detail);
    }
    assert_eq!(
        failed, EXPECTED_FAILURES,
        "criteria failing differ from the documented set"
    );
}
