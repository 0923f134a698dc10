//! The Möbius function, by its recursive definition and from critical cells.

use alloc::vec;

use crate::error::{Error, Result};
use crate::lex_morse::LexMorse;
use crate::poset::Poset;

/// `μ(u, v)` from `μ(u, u) = 1` and `μ(u, w) = -Σ_{u <= x < w} μ(u, x)`.
pub fn mobius_recursive(p: &Poset, u: usize, v: usize) -> Result<i64> {
    if !p.le(u, v) {
        return Err(Error::NotComparable(p.id(u).into(), p.id(v).into()));
    }
    let mut mu = vec![0i64; p.len()];
    for &w in p.topological_order() {
        if !p.le(u, w) || !p.le(w, v) {
            continue;
        }
        mu[w] = if w == u {
            1
        } else {
            -p.down_set(w)
                .ones()
                .filter(|&x| x != w && p.le(u, x))
                .map(|x| mu[x])
                .sum::<i64>()
        };
    }
    Ok(mu[v])
}

/// `μ(0̂, 1̂)`.
pub fn mobius(p: &Poset) -> i64 {
    mobius_recursive(p, p.bottom(), p.top()).expect("bottom is below top")
}

/// `Σ (-1)^{|J(eσ)| + 1}` over the critical cells `σ` of a lexicographic
/// matching, `eσ` being the facet whose fibre holds `σ`.
pub fn mobius_from_morse(lex: &LexMorse) -> i64 {
    lex.matching()
        .critical()
        .into_iter()
        .map(|id| {
            let j = lex.system(lex.fibre_of(id)).truncated.len();
            if j % 2 == 1 {
                1
            } else {
                -1
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::{euler_characteristic, order_complex};
    use crate::labeling::FacetOrder;

    #[test]
    fn small_values() {
        assert_eq!(mobius(&fixtures::chain3()), 0);
        assert_eq!(mobius(&fixtures::diamond()), 1);
        assert_eq!(mobius(&fixtures::boolean(3)), -1);
        assert_eq!(mobius(&fixtures::boolean(4)), 1);
        let d = fixtures::diamond();
        let a = d.index_of("a").unwrap();
        assert_eq!(mobius_recursive(&d, d.bottom(), a).unwrap(), -1);
        assert_eq!(mobius_recursive(&d, a, a).unwrap(), 1);
        let b = d.index_of("b").unwrap();
        assert!(matches!(
            mobius_recursive(&d, a, b),
            Err(Error::NotComparable(..))
        ));
    }

    #[test]
    fn morse_count_matches() {
        let d = fixtures::diamond();
        let lex = LexMorse::build(
            FacetOrder::from_labeling(&d, &fixtures::diamond_labeling(&d)).unwrap(),
        )
        .unwrap();
        assert_eq!(mobius_from_morse(&lex), 1);
        for n in 2..=4 {
            let b = fixtures::boolean(n);
            let fo = FacetOrder::from_labeling(&b, &fixtures::boolean_labeling(&b)).unwrap();
            let lex = LexMorse::build(fo).unwrap();
            assert_eq!(mobius_from_morse(&lex), mobius(&b));
            assert_eq!(mobius(&b), euler_characteristic(&order_complex(&b)));
        }
    }

    #[test]
    fn restriction_to_intervals() {
        let b = fixtures::boolean(4);
        let fo = FacetOrder::from_labeling(&b, &fixtures::boolean_labeling(&b)).unwrap();
        let u = b.index_of("{1}").unwrap();
        let v = b.index_of("{1,2,3,4}").unwrap();
        let sub = b.closed_interval(u, v).unwrap();
        let lex = LexMorse::build(fo.restrict(&b, &sub).unwrap()).unwrap();
        assert_eq!(mobius_from_morse(&lex), mobius_recursive(&b, u, v).unwrap());
        assert_eq!(mobius_from_morse(&lex), -1);
    }
}
