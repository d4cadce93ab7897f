//! Randomized properties: algebraic laws of the space operations, parser
//! totality on arbitrary input, and round-trips through the renderers.

mod common;

use fintop::census::shared_maps;
use fintop::lifting::walk_squares;
use fintop::map::monotone_maps;
use fintop::{
    map_key, parse_class_expr, parse_map, parse_space, render_map, render_space, space_key,
    FinSpace, PointSet,
};
use proptest::prelude::*;

fn arb_space(max_points: usize) -> impl Strategy<Value = FinSpace> {
    (0..=max_points)
        .prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::ANY, n * n).prop_map(move |bits| (n, bits))
        })
        .prop_map(|(n, bits)| {
            let labels = (0..n).map(|i| fintop::PointLabel::new(format!("p{i}"))).collect();
            let arrows: Vec<(usize, usize)> = (0..n * n)
                .filter(|&k| bits[k])
                .map(|k| (k / n, k % n))
                .collect();
            FinSpace::from_arrows(labels, &arrows).expect("arrow closure yields a preorder")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closure_is_extensive_monotone_idempotent(
        (space, s, t) in arb_space(5).prop_flat_map(|sp| {
            let n = sp.len();
            let a = (0u32..(1u32 << n)).prop_map(PointSet);
            let b = (0u32..(1u32 << n)).prop_map(PointSet);
            (Just(sp), a, b)
        })
    ) {
        let cl_s = space.closure(s).unwrap();
        prop_assert!(s.subset_of(cl_s));
        prop_assert_eq!(space.closure(cl_s).unwrap(), cl_s);
        if s.subset_of(t) {
            prop_assert!(cl_s.subset_of(space.closure(t).unwrap()));
        }
        let status = space.subset_status(s).unwrap();
        prop_assert_eq!(status.closed, cl_s == s);
    }

    #[test]
    fn minimal_opens_are_open_and_generate(space in arb_space(5)) {
        let opens = space.open_sets();
        for x in 0..space.len() {
            let u = space.min_open(x);
            prop_assert!(u.contains(x));
            prop_assert!(opens.contains(&u));
            for v in &opens {
                if v.contains(x) {
                    prop_assert!(u.subset_of(*v));
                }
            }
        }
        for v in &opens {
            let complement = space.full_set().difference(*v);
            prop_assert_eq!(space.closure(complement).unwrap(), complement);
        }
    }

    #[test]
    fn space_rendering_round_trips(space in arb_space(6)) {
        let text = render_space(&space);
        let back = parse_space(&text).unwrap();
        prop_assert_eq!(back.len(), space.len());
        prop_assert_eq!(space_key(&back), space_key(&space));
    }

    #[test]
    fn map_rendering_round_trips(
        (dom, cod, pick) in (arb_space(3), arb_space(3), proptest::num::usize::ANY)
    ) {
        let maps = monotone_maps(&dom, &cod);
        prop_assume!(!maps.is_empty());
        let m = &maps[pick % maps.len()];
        let text = render_map(m);
        let back = parse_map(&text).unwrap();
        prop_assert_eq!(map_key(&back), map_key(m));
    }

    #[test]
    fn parser_never_panics_and_reports_in_bounds_offsets(text in "[ {}a-d<>=^,_5'-]{0,24}") {
        for result in [parse_space(&text).err(), parse_map(&text).err()] {
            if let Some(err) = result {
                prop_assert!(err.offset <= text.len());
            }
        }
        if let Err(err) = parse_class_expr(&text) {
            prop_assert!(err.offset <= text.len());
        }
    }

    #[test]
    fn arbitrary_bytes_give_errors_not_panics(text in proptest::string::string_regex(".{0,40}").unwrap()) {
        let _ = parse_space(&text);
        let _ = parse_map(&text);
        let _ = parse_class_expr(&text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_matches_naive_enumeration_on_random_pairs(
        (li, ri, cap) in (proptest::num::usize::ANY, proptest::num::usize::ANY, 1usize..40)
    ) {
        let maps = shared_maps(3).unwrap();
        let left = &maps[li % maps.len()];
        let right = &maps[ri % maps.len()];
        let mut seen = 0usize;
        let mut failure = None;
        walk_squares(left, right, &mut |square, lift| {
            seen += 1;
            if lift.is_some() != common::naive_lift_exists(&square) {
                failure = Some(format!(
                    "solver disagrees with enumeration on top {} bottom {}",
                    render_map(square.top()),
                    render_map(square.bottom()),
                ));
                return false;
            }
            if let Some(l) = &lift {
                if !common::lift_closes_square(&square, l) {
                    failure = Some(format!("returned lift {} does not close its square", render_map(l)));
                    return false;
                }
            }
            seen < cap
        });
        prop_assert!(failure.is_none(), "{}", failure.unwrap());
    }
}
