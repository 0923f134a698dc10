use proptest::prelude::*;

use lexmorse_core::fixtures;
use lexmorse_core::homology::{order_complex, reduced_betti};
use lexmorse_core::lex_morse::truncate_intervals;
use lexmorse_core::mobius::{mobius_from_morse, mobius_recursive};
use lexmorse_core::multiset::{
    build_multiset_poset, chain_steps, inversion_set, inversions_of_steps, parse_bar_notation,
    render_bar_notation, InversionOrientation, Lambda, MultisetLabeling,
};
use lexmorse_core::{Error, FacetOrder, LexAxiomReport, LexMorse, Poset, RankInterval};

fn small_posets() -> Vec<Poset> {
    vec![
        fixtures::diamond(),
        fixtures::two_by_two(),
        fixtures::boolean(3),
        build_multiset_poset(&Lambda::new(vec![2, 1, 1]).unwrap()).unwrap(),
        build_multiset_poset(&Lambda::new(vec![5]).unwrap()).unwrap(),
    ]
}

fn lambdas() -> Vec<Lambda> {
    [
        vec![2, 1],
        vec![3, 1],
        vec![2, 2],
        vec![2, 1, 1],
        vec![1, 1, 1, 1],
        vec![3, 2],
        vec![2, 2, 1],
        vec![4, 1],
    ]
    .into_iter()
    .map(|p| Lambda::new(p).unwrap())
    .collect()
}

/// An antichain of intervals inside `1..=len`.
fn antichain(len: usize, raw: &[(usize, usize)]) -> Vec<RankInterval> {
    let ivs: Vec<RankInterval> = raw
        .iter()
        .map(|&(a, b)| {
            let (lo, hi) = (a % len + 1, b % len + 1);
            RankInterval::new(lo.min(hi), lo.max(hi))
        })
        .collect();
    let mut out: Vec<RankInterval> = ivs
        .iter()
        .filter(|iv| !ivs.iter().any(|o| o != *iv && o.is_subset(iv)))
        .copied()
        .collect();
    out.sort();
    out.dedup();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truncation_gives_disjoint_pieces_of_the_input(
        len in 1usize..12,
        raw in proptest::collection::vec((0usize..12, 0usize..12), 0..8),
    ) {
        let minimal = antichain(len, &raw);
        let sys = truncate_intervals(&minimal, len);
        for w in sys.truncated.windows(2) {
            prop_assert!(w[0].hi < w[1].lo);
        }
        for j in &sys.truncated {
            prop_assert!(minimal.iter().any(|i| i.hi == j.hi && i.lo <= j.lo));
        }
        if sys.is_covered() {
            let ranks = sys.critical_ranks().unwrap();
            prop_assert_eq!(ranks.len(), sys.truncated.len());
            prop_assert!(ranks.iter().zip(&sys.truncated).all(|(&r, j)| r == j.lo));
        } else {
            prop_assert_eq!(sys.rho.len(), 1);
        }
    }

    #[test]
    fn any_order_that_builds_is_a_valid_morse_matching(which in 0usize..5, seed in any::<u64>()) {
        let p = &small_posets()[which];
        let mut facets = p.facets();
        // Fisher-Yates driven by a splitmix sequence
        let mut s = seed;
        for i in (1..facets.len()).rev() {
            s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = s;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            facets.swap(i, (z ^ (z >> 31)) as usize % (i + 1));
        }
        let fo = FacetOrder::from_explicit(p, facets).unwrap();
        match LexMorse::build(fo) {
            Ok(lex) => {
                prop_assert!(lex.matching().is_acyclic());
                let m = lex.matching().morse_vector();
                let b = reduced_betti(lex.complex());
                prop_assert_eq!(m.euler(), b.euler());
                prop_assert_eq!(mobius_from_morse(&lex), b.euler());
                for d in -1..=lex.complex().dim() {
                    prop_assert!(m.get(d) >= b.get(d));
                }
            }
            Err(e) => prop_assert!(matches!(e, Error::NonIntervalOverlap { .. }), "{e:?}"),
        }
    }

    #[test]
    fn mobius_is_reduced_euler_characteristic_of_open_intervals(
        which in 0usize..2,
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
    ) {
        let p = if which == 0 { fixtures::boolean(4) } else { build_multiset_poset(&Lambda::new(vec![6]).unwrap()).unwrap() };
        // u drawn freely, v from the elements strictly above it
        let u = a.index(p.len() - 1);
        let above: Vec<usize> = (0..p.len()).filter(|&x| p.lt(u, x)).collect();
        prop_assume!(!above.is_empty());
        let v = above[b.index(above.len())];
        let mu = mobius_recursive(&p, u, v).unwrap();
        let expected = match p.open_interval(u, v) {
            Ok(open) => reduced_betti(&order_complex(&open)).euler(),
            // a cover: the open interval is empty and its complex is {∅}
            Err(Error::EmptyInterval(..)) => -1,
            Err(e) => return Err(TestCaseError::fail(format!("{e:?}"))),
        };
        prop_assert_eq!(mu, expected);
    }

    #[test]
    fn bar_notation_round_trips(which in 0usize..8, pick in any::<prop::sample::Index>()) {
        let lambda = &lambdas()[which];
        let p = build_multiset_poset(lambda).unwrap();
        let facets = p.facets();
        let f = &facets[pick.index(facets.len())];
        let text = render_bar_notation(&p, f).unwrap();
        prop_assert_eq!(&parse_bar_notation(&p, &text).unwrap(), f);
    }

    #[test]
    fn bars_keep_their_positions(which in 0usize..8, pick in any::<prop::sample::Index>()) {
        let lambda = &lambdas()[which];
        let p = build_multiset_poset(lambda).unwrap();
        let facets = p.facets();
        let f = &facets[pick.index(facets.len())];
        let steps = chain_steps(&p, f.elements()).unwrap();
        let mut bars = std::collections::BTreeSet::new();
        for s in &steps {
            prop_assert!(bars.insert(s.position));
            let now: std::collections::BTreeSet<usize> = s
                .ordered
                .iter()
                .scan(0, |acc, b| { *acc += b.len(); Some(*acc) })
                .filter(|&x| x < lambda.n())
                .collect();
            prop_assert_eq!(&now, &bars);
        }
    }

    #[test]
    fn inversion_windows_restrict_and_contain_the_bar_permutation(
        which in 0usize..8,
        pick in any::<prop::sample::Index>(),
    ) {
        let lambda = &lambdas()[which];
        let p = build_multiset_poset(lambda).unwrap();
        let lex = LexMorse::build(FacetOrder::from_labeling(&p, &MultisetLabeling).unwrap()).unwrap();
        let j = pick.index(lex.order().len());
        let start = lex.system(j).last_nontrivial().map_or(1, |iv| iv.hi + 1);
        let s = inversion_set(&p, &lex, j, start, InversionOrientation::Left).unwrap();
        let steps = chain_steps(&p, lex.order().facet(j).elements()).unwrap();
        prop_assert_eq!(&inversions_of_steps(&steps, 1, InversionOrientation::Left).above(start).pairs, &s.pairs);
        for a in start..=steps.len() {
            for b in a + 1..=steps.len() {
                if steps[b - 1].position < steps[a - 1].position {
                    prop_assert!(s.contains(a, b), "({}, {}) in {:?}", a, b, s);
                }
            }
        }
    }
}

#[test]
fn labels_are_total_on_small_quotients() {
    for n in 2..=6 {
        for lambda in all_partitions(n) {
            let p = build_multiset_poset(&lambda).unwrap();
            let fo = FacetOrder::from_labeling(&p, &MultisetLabeling);
            assert!(fo.is_ok(), "{lambda}: {:?}", fo.err());
            assert_eq!(
                fo.unwrap().validate_lex_axiom(),
                LexAxiomReport::Pass,
                "{lambda}"
            );
        }
    }
}

fn all_partitions(n: usize) -> Vec<Lambda> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Lambda>) {
        if rest == 0 {
            out.push(Lambda::new(cur.clone()).unwrap());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
