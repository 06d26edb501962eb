use std::sync::Arc;

use proptest::prelude::*;
use rsc_core::applications::{media_menu_choice, media_pstar, CultureParams, MediaMenu, MediaParams, Source};
use rsc_core::random::{random_single_peaked_structure, random_structure, seeded};
use rsc_core::structure::all_structures;
use rsc_core::{
    certify_single_peaked, check_spr, minimal_structure, parse_choice_function, serialize_choice_function,
    synthesize_rs, AxiomChecker, ChoiceFormat, GroundSet, RSStructure, RevealedReport,
};

fn ground(n: usize) -> Arc<GroundSet> {
    Arc::new(GroundSet::numbered(n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn serialization_round_trips(seed in any::<u64>(), n in 2usize..=6) {
        let cf = random_structure(&mut seeded(seed), &ground(n)).evaluate();
        for format in [ChoiceFormat::Json, ChoiceFormat::Csv] {
            let text = serialize_choice_function(&cf, format).unwrap();
            let back = parse_choice_function(text.as_bytes(), format).unwrap();
            prop_assert_eq!(&back, &cf);
            prop_assert_eq!(serialize_choice_function(&back, format).unwrap(), text);
        }
    }

    #[test]
    fn structure_json_round_trips(seed in any::<u64>(), n in 2usize..=6) {
        let s = random_structure(&mut seeded(seed), &ground(n));
        let back = RSStructure::from_json(s.to_json().unwrap().as_bytes()).unwrap();
        prop_assert_eq!(back.evaluate(), s.evaluate());
        prop_assert_eq!(back.to_json().unwrap(), s.to_json().unwrap());
    }

    #[test]
    fn random_structures_are_rationalized_again(seed in any::<u64>(), n in 2usize..=6) {
        let cf = random_structure(&mut seeded(seed), &ground(n)).evaluate();
        let report = RevealedReport::new(&cf);
        for v in AxiomChecker::default().rsc(&cf, &report) {
            prop_assert!(v.holds, "{:?}", v);
        }
        let (s, _) = synthesize_rs(&cf).unwrap();
        prop_assert_eq!(s.evaluate(), cf);
    }

    // SPR holds exactly when the synthesized structure certifies, on
    // ground sets large enough for SPR to bite
    #[test]
    fn spr_matches_certification(seed in any::<u64>(), n in 5usize..=6) {
        let cf = random_structure(&mut seeded(seed), &ground(n)).evaluate();
        let spr = check_spr(&cf, &RevealedReport::new(&cf)).holds;
        let (s, _) = synthesize_rs(&cf).unwrap();
        prop_assert_eq!(spr, certify_single_peaked(&s).verified);
    }

    #[test]
    fn single_peaked_structures_have_minimal_forms(seed in any::<u64>(), n in 2usize..=6) {
        let cf = random_single_peaked_structure(&mut seeded(seed), &ground(n)).evaluate();
        let (s, cert) = minimal_structure(&cf).unwrap();
        prop_assert!(cert.verified);
        prop_assert_eq!(s.evaluate(), cf);
    }

    #[test]
    fn media_choice_flips_at_pstar(p in 0.01f64..0.49, lambda in 0.51f64..0.74) {
        let params = MediaParams::new(p, lambda).unwrap();
        let pstar = media_pstar(lambda).unwrap();
        prop_assume!((p - pstar).abs() > 1e-9);
        let out = media_menu_choice(&params, MediaMenu::N).unwrap();
        let expected = if p > pstar { Source::RR } else { Source::L };
        prop_assert_eq!(out.chosen_source, expected);
        prop_assert_eq!(media_menu_choice(&params, MediaMenu::M).unwrap().chosen_source, Source::L);
    }

    #[test]
    fn posteriors_average_to_prior(p in 0.01f64..0.49, lambda in 0.51f64..0.74) {
        let params = MediaParams::new(p, lambda).unwrap();
        for s in Source::ALL {
            let probs = params.signal_probs(s);
            let post = params.posteriors(s);
            prop_assert!((probs[0] * post[0] + probs[1] * post[1] - p).abs() < 1e-12);
        }
    }

    #[test]
    fn steady_share_falls_then_rises(g1 in 1.0f64..4.0, g2 in 1.0f64..4.0, lambda_r in 1.1f64..3.0) {
        let p = CultureParams::new(2.0, 1.5, 1.2, lambda_r, 1.0, 0.3).unwrap();
        let (lo, hi) = if g1 < g2 { (g1, g2) } else { (g2, g1) };
        // below the threshold V is flat, so q* = 1 / (1 + g) falls with g
        prop_assert!((p.q_steady(lo.min(p.g_hat)) - 1.0 / (1.0 + lo.min(p.g_hat))).abs() < 1e-15);
        if hi <= p.g_hat && hi > lo {
            prop_assert!(p.q_steady(hi) < p.q_steady(lo));
        } else if lo >= p.g_hat && hi > lo {
            prop_assert!(p.q_steady(hi) > p.q_steady(lo));
        }
    }
}

#[test]
fn spr_certification_exhaustive_on_three_options() {
    // every structure on three options, not only the single-peaked ones
    for s in all_structures(&ground(3)).unwrap() {
        let cf = s.evaluate();
        let spr = check_spr(&cf, &RevealedReport::new(&cf)).holds;
        let (synth, _) = synthesize_rs(&cf).unwrap();
        assert_eq!(spr, certify_single_peaked(&synth).verified);
    }
}

#[test]
fn spr_bites_on_larger_ground_sets() {
    let mut rng = seeded(11);
    let g = ground(6);
    let failing = (0..2000)
        .filter(|_| {
            let cf = random_structure(&mut rng, &g).evaluate();
            !check_spr(&cf, &RevealedReport::new(&cf)).holds
        })
        .count();
    assert!(failing > 0);
}
