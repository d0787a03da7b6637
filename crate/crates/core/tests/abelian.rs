use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use covergraph::{
    abelianization, group_order, parse_presentation, smith_normal_form, EnumerationLimits, IntegerMatrix,
    Presentation, Word,
};

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn det(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// gcd of all k x k minors, for each k.
fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (m.len(), m[0].len());
    (1..=r.min(c))
        .map(|k| {
            let mut g = 0i64;
            for rows in subsets(r, k) {
                for cols in subsets(c, k) {
                    let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                    g = g.gcd(&det(&sub));
                }
            }
            g
        })
        .collect()
}

fn presentation_of(rels: &[Vec<(usize, i64)>]) -> Presentation {
    let words = rels.iter().map(|r| Word::from_syllables(r.iter().copied()).unwrap()).collect::<Vec<_>>();
    Presentation::new(vec!["a", "b", "c"], words).unwrap()
}

fn relators() -> impl Strategy<Value = Vec<Vec<(usize, i64)>>> {
    prop::collection::vec(prop::collection::vec((0..3usize, -6i64..=6), 1..5), 1..4)
}

proptest! {
    #[test]
    fn snf_matches_minor_gcds(rows in matrix()) {
        let snf = smith_normal_form(&IntegerMatrix::from_rows(rows.clone()).unwrap());
        let divisors = determinantal_divisors(&rows);
        let rank = divisors.iter().take_while(|d| !d.is_zero()).count();
        prop_assert_eq!(snf.rank, rank);
        let mut product = 1i64;
        for (k, d) in snf.invariant_factors.iter().enumerate() {
            prop_assert!(d.is_positive());
            product *= d;
            prop_assert_eq!(product, divisors[k]);
        }
        for w in snf.invariant_factors.windows(2) {
            prop_assert!(w[1] % w[0] == 0);
        }
    }

    #[test]
    fn scalar_types_agree(rows in matrix()) {
        let small = smith_normal_form(&IntegerMatrix::from_rows(rows.clone()).unwrap());
        let wide = smith_normal_form(&IntegerMatrix::from_rows(rows.clone()).unwrap().map(|&x| x as i128));
        let exact = smith_normal_form(&IntegerMatrix::from_rows(rows).unwrap().map(|&x| BigInt::from(x)));
        prop_assert_eq!(&small.invariant_factors.iter().map(|&x| x as i128).collect::<Vec<_>>(), &wide.invariant_factors);
        prop_assert_eq!(small.invariant_factors.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), exact.invariant_factors);
    }

    #[test]
    fn abelianization_ignores_relator_presentation(rels in relators(), shift in 0usize..8, flip in any::<bool>()) {
        let base = abelianization(&presentation_of(&rels));
        let mut moved = rels.clone();
        moved.rotate_left(shift % rels.len());
        let first = &mut moved[0];
        let k = shift % first.len();
        first.rotate_left(k);
        if flip {
            first.reverse();
            for s in first.iter_mut() {
                s.1 = -s.1;
            }
        }
        prop_assert_eq!(abelianization(&presentation_of(&moved)), base);
    }
}

#[test]
fn abelianization_order_divides_group_order() {
    for text in [
        "<a,b|a^2,b^3,(a b)^2>",
        "<a,b|a^2,b^3,(a b)^4>",
        "<a,b|a^2,b^3,(a b)^5>",
        "<a,b|a^4,a^2 b^-2,b^-1 a b a>",
        "<a,b|a^3,b^3,(a b)^2>",
        "<a,b|a^7,b^2,(a b)^2>",
        "<a|a^12>",
    ] {
        let p = Arc::new(parse_presentation(text).unwrap());
        let n = group_order(&p, &EnumerationLimits::default()).unwrap();
        let ab = abelianization(&p).order().expect("finite group has finite abelianization");
        assert!((BigInt::from(n) % ab).is_zero(), "{text}");
    }
}
