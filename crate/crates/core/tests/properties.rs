use proptest::prelude::*;

use skeindef::diagram::io::{parse_diagram, render_diagram};
use skeindef::diagram::{from_braid, tau};
use skeindef::exactalg::{laurent_to_series, rat, LaurentPoly, PolyZW};
use skeindef::statesum::{bracket_series, bracket_with, expansion_series, skein_relation_residual};
use skeindef::Exec;

fn braid() -> impl Strategy<Value = (u32, Vec<i32>)> {
    (2u32..=4).prop_flat_map(|n| {
        let gen = (1..n as i32, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g });
        (Just(n), prop::collection::vec(gen, 0..=5))
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5, 1i64..=4), 0..5)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operator_expansion_matches_state_sum((n, w) in braid()) {
        let d = from_braid(n, &w).unwrap();
        let series = bracket_series(&d, 3).unwrap();
        let formula = expansion_series(&d, 3, Exec::default()).unwrap();
        for (k, got) in formula.iter().enumerate() {
            prop_assert_eq!(got, &series.map_coeffs(|s| s.coeff(k).clone()));
        }
    }

    #[test]
    fn execution_modes_agree((n, w) in braid()) {
        let d = from_braid(n, &w).unwrap();
        prop_assert_eq!(bracket_with(&d, Exec::Sequential).unwrap(), bracket_with(&d, Exec::Parallel).unwrap());
    }

    #[test]
    fn mirror_inverts_t((n, w) in braid()) {
        let d = from_braid(n, &w).unwrap();
        let mirrored: Vec<i32> = w.iter().map(|g| -g).collect();
        let direct = bracket_with(&tau(&d), Exec::Sequential).unwrap();
        prop_assert_eq!(&direct, &bracket_with(&d, Exec::Sequential).unwrap().map_coeffs(LaurentPoly::mirror));
        prop_assert_eq!(direct, bracket_with(&from_braid(n, &mirrored).unwrap(), Exec::Sequential).unwrap());
    }

    #[test]
    fn diagram_files_round_trip((n, w) in braid()) {
        let d = from_braid(n, &w).unwrap();
        let back = parse_diagram(&render_diagram(&d)).unwrap();
        prop_assert_eq!(render_diagram(&back), render_diagram(&d));
        prop_assert_eq!(back, d);
    }

    #[test]
    fn mirror_alternates_series(l in laurent()) {
        prop_assert_eq!(laurent_to_series(&l.mirror(), 5), laurent_to_series(&l, 5).alternate());
    }

    #[test]
    fn skein_relation_holds(
        (n, w) in braid().prop_filter("needs crossings", |(_, w)| w.len() >= 2),
        coeffs in prop::collection::vec((-3i64..=3, 1i64..=2), 3),
        plus_pick in any::<prop::sample::Index>(),
    ) {
        let d = from_braid(n, &w).unwrap();
        let ids: Vec<_> = d.crossings().iter().copied().collect();
        let plus = ids[plus_pick.index(ids.len())];
        let other = *ids.iter().find(|&&c| c != plus).unwrap();
        let p = PolyZW::from_terms(coeffs.iter().enumerate().map(|(l, &(a, b))| ((l as u32, 2 - l as u32), rat(a, b))));
        prop_assume!(!p.is_zero());
        let marked = d.with_marked([plus, other].into()).unwrap();
        prop_assert!(skein_relation_residual(&p, &marked, plus).unwrap().is_empty());
    }
}
