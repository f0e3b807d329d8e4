//! Property tests for the real-rootedness and interlacing machinery.

use num::{BigRational, One};
use proptest::prelude::*;

use ramlift::poly::{self, RatPoly};
use ramlift::ratio::{rat, rat_int};

/// Product of (x - r) over the given rational roots.
fn from_roots(roots: &[BigRational]) -> RatPoly {
    let mut p = RatPoly::one();
    for r in roots {
        p = p.mul(&RatPoly::from_coeffs(vec![-r.clone(), BigRational::one()]));
    }
    p
}

/// Small rationals with denominators 1..=3, deduplicated and sorted.
fn distinct_rationals(range: std::ops::Range<i64>, max_len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec((range, 1i64..=3), 1..=max_len).prop_map(|pairs| {
        let mut v: Vec<BigRational> = pairs.into_iter().map(|(n, d)| rat(n, d)).collect();
        v.sort();
        v.dedup();
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Sturm counts add over products of square-free polynomials with
    /// disjoint root sets (plus a rootless quadratic to spice the degrees).
    #[test]
    fn sturm_count_additive_over_products(
        a in distinct_rationals(-30..0, 4),
        b in distinct_rationals(1..30, 4),
        add_rootless in any::<bool>(),
    ) {
        let f = from_roots(&a);
        let mut g = from_roots(&b);
        if add_rootless {
            g = g.mul(&RatPoly::from_int_coeffs(&[1, 0, 1])); // x^2 + 1
        }
        let prod = f.mul(&g);
        prop_assert_eq!(
            poly::count_real_roots(&prod),
            poly::count_real_roots(&f) + poly::count_real_roots(&g)
        );
    }

    /// f and its derivative interlace for any real-rooted f (Rolle).
    #[test]
    fn derivative_interlaces(roots in distinct_rationals(-20..20, 5)) {
        prop_assume!(roots.len() >= 2);
        let f = from_roots(&roots);
        prop_assert!(poly::interlaces(&f.derivative(), &f).unwrap());
    }

    /// Fact about linear moves: for interlacing (f, g = f'), f + alpha g is
    /// real-rooted for every alpha, and the largest root moves monotonically
    /// (decreasing, since the leading signs agree).
    #[test]
    fn linear_combinations_stay_real_rooted(roots in distinct_rationals(-12..12, 4)) {
        prop_assume!(roots.len() >= 2);
        let f = from_roots(&roots);
        let g = f.derivative();
        let tol = ramlift::ratio::pow2(-30);
        let mut last_upper: Option<BigRational> = None;
        for alpha in [-10i64, -1, 0, 1, 10] {
            let h = f.add(&g.scale(&rat_int(alpha)));
            prop_assert!(poly::is_real_rooted(&h), "alpha = {alpha}");
            let bracket = poly::largest_root(&h, &tol).unwrap();
            if let Some(prev) = last_upper {
                // decreasing in alpha, up to bracket slack
                prop_assert!(bracket.lower <= &prev + &tol);
            }
            last_upper = Some(bracket.upper);
        }
    }

    /// Common interlacing: interleaved root sets give real-rooted convex
    /// combinations whose i-th root stays in the convex hull of the inputs'
    /// i-th roots.
    #[test]
    fn convex_combinations_of_interlaced(seeds in distinct_rationals(-24..24, 8)) {
        prop_assume!(seeds.len() >= 4 && seeds.len() % 2 == 0);
        let n = seeds.len() / 2;
        let a: Vec<BigRational> = (0..n).map(|i| seeds[2 * i].clone()).collect();
        let b: Vec<BigRational> = (0..n).map(|i| seeds[2 * i + 1].clone()).collect();
        let f = from_roots(&a);
        let g = from_roots(&b);
        prop_assert!(poly::common_interlacing(&[f.clone(), g.clone()]).unwrap());
        for (num, den) in [(0i64, 4i64), (1, 4), (2, 4), (3, 4), (4, 4)] {
            let lambda = rat(num, den);
            let combo = f.scale(&lambda).add(&g.scale(&(BigRational::one() - &lambda)));
            prop_assert!(poly::is_real_rooted(&combo));
            // i-th smallest root of the combo lies in [a_i, b_i]
            for i in 1..=n {
                let lo = &a[i - 1];
                let hi = &b[i - 1];
                prop_assert!(poly::count_roots_below(&combo, lo) <= i - 1);
                prop_assert!(poly::count_roots_above(&combo, hi) <= n - i);
            }
        }
    }

    /// largest_root bracket invariant: no roots above the upper end, at
    /// least one in (lower, upper].
    #[test]
    fn largest_root_bracket_invariant(roots in distinct_rationals(-40..40, 5)) {
        let f = from_roots(&roots);
        let tol = ramlift::ratio::pow2(-20);
        let bracket = poly::largest_root(&f, &tol).unwrap();
        prop_assert_eq!(poly::count_roots_above(&f, &bracket.upper), 0);
        if bracket.lower == bracket.upper {
            // collapsed bracket: an exact rational root
            prop_assert_eq!(f.eval(&bracket.lower), rat_int(0));
            prop_assert!(bracket.multiplicity_count >= 1);
        } else {
            let inside = poly::count_roots_above(&f, &bracket.lower)
                - poly::count_roots_above(&f, &bracket.upper);
            prop_assert!(inside >= 1);
            prop_assert_eq!(inside, bracket.multiplicity_count);
        }
        // all roots here are rational, so the snap always collapses
        prop_assert_eq!(&bracket.lower, &bracket.upper);
        prop_assert_eq!(&bracket.upper, roots.last().unwrap());
    }
}
