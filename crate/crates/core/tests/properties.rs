use num_bigint::BigInt;
use proptest::prelude::*;

use meanchaos::construct::{example_point, tail_witnesses};
use meanchaos::measure::{empirical, product_empirical, tv_distance};
use meanchaos::metric::cesaro;
use meanchaos::pairclass::{classify, ClassifyParams, Verdict};
use meanchaos::rational::{int, rat, Rational};
use meanchaos::symseq::{SymbolicPoint, Word};

fn bits(codes: &[u8]) -> SymbolicPoint {
    SymbolicPoint::finite(Word::from_codes(codes).into_symbols(), 2, "bits").unwrap()
}

/// Pairs with a mix of regimes: shared prefixes, sparse flips, dense flips.
fn pair_strategy(len: usize) -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
    (
        prop::collection::vec(0u8..2, len),
        prop::collection::vec(0u8..2, len),
        0usize..len,
        prop::sample::select(vec![1usize, 2, 7, 50, 400]),
    )
        .prop_map(|(a, noise, cut, every)| {
            let b = a
                .iter()
                .zip(&noise)
                .enumerate()
                .map(|(i, (&s, &r))| if i >= cut && i % every == 0 { r } else { s })
                .collect();
            (a, b)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_is_symmetric((a, b) in pair_strategy(700), n in 16usize..600) {
        let p = ClassifyParams::new(n).with_window(32);
        let v = classify(&bits(&a), &bits(&b), &p).unwrap();
        let r = classify(&bits(&b), &bits(&a), &p).unwrap();
        prop_assert_eq!(v.flags(), r.flags());
    }

    #[test]
    fn hierarchy_never_violated((a, b) in pair_strategy(700), n in 16usize..600, w in 1usize..40) {
        let p = ClassifyParams::new(n).with_window(w);
        let v = classify(&bits(&a), &bits(&b), &p).unwrap();
        prop_assert!(v.hierarchy_violations().is_empty(), "{:?}", v.hierarchy_violations());
    }

    #[test]
    fn mean_proximal_holds_persists((a, b) in pair_strategy(900), n in 16usize..400, extra in 0usize..400) {
        let (x, y) = (bits(&a), bits(&b));
        let v = classify(&x, &y, &ClassifyParams::new(n)).unwrap();
        if v.mean_proximal.verdict == Verdict::Holds {
            let later = classify(&x, &y, &ClassifyParams::new(n + extra)).unwrap();
            prop_assert_eq!(later.mean_proximal.verdict, Verdict::Holds);
        }
    }

    #[test]
    fn tail_witnesses_separate(c in 1usize..200, n in 1usize..3000) {
        let x = example_point();
        let (y0, y1) = tail_witnesses(&x, c).unwrap();
        let s = cesaro(&y0, &y1, n, 64, 16).unwrap().interval(n);
        let floor = rat(n.saturating_sub(c) as u128, n as u128);
        prop_assert!(s.lo() >= &floor);
    }

    #[test]
    fn empirical_measures_normalize(a in prop::collection::vec(0u8..2, 1..300), l in 1usize..5) {
        let n = a.len().saturating_sub(l - 1).max(1);
        let codes: Vec<u8> = a.iter().copied().chain(std::iter::repeat_n(0, l)).collect();
        let x = bits(&codes);
        prop_assert_eq!(empirical(&x, n, l).unwrap().total(), int(1));
        prop_assert_eq!(product_empirical(&x, &x.shift(1), n, l).unwrap().total(), int(1));
    }

    #[test]
    fn marginals_agree_across_lengths(a in prop::collection::vec(0u8..2, 10..300), l in 1usize..4) {
        let x = bits(&a);
        let n = a.len() - l;
        let long = empirical(&x, n, l + 1).unwrap();
        let short = empirical(&x, n, l).unwrap();
        prop_assert!(tv_distance(&long.marginal().unwrap(), &short).unwrap() <= rat(1, n as u128));
    }

    #[test]
    fn shift_moves_one_symbol_of_mass(a in prop::collection::vec(0u8..2, 3..300)) {
        let x = bits(&a);
        let n = a.len() - 1;
        let tv = tv_distance(&empirical(&x, n, 1).unwrap(), &empirical(&x.shift(1), n, 1).unwrap()).unwrap();
        prop_assert!(tv <= Rational::new(BigInt::from(2), BigInt::from(n)));
    }
}
