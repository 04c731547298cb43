use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use cosheaf::chain::assemble;
use cosheaf::morse::{enumerate_paths, generate_compatible_matching, generate_matching, morse_boundary_block};
use cosheaf::mv::{build_morse_mv_ses, build_mv_ses};
use cosheaf::random::{random_complex, random_cosheaf, random_decomposition, random_field};
use cosheaf::{Cosheaf, Decomposition, MorseComplex, SimplicialComplex};

fn trial(seed: u64) -> (StdRng, SimplicialComplex, Cosheaf) {
    let mut rng = StdRng::seed_from_u64(seed);
    let k = random_complex(&mut rng, 3, 40);
    let field = random_field(&mut rng);
    let c = random_cosheaf(&mut rng, &k, field, 3);
    (rng, k, c)
}

fn decomposition(rng: &mut StdRng, k: &SimplicialComplex) -> Decomposition {
    let (l, m) = random_decomposition(rng, k);
    Decomposition::new(k.clone(), l, m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>()) {
        let (_, k, c) = trial(seed);
        let cx = assemble(&k, &c).unwrap();
        prop_assert_eq!(cx.square_zero_failure(), None);
    }

    #[test]
    fn homology_by_rank_matches_quotient(seed in any::<u64>()) {
        let (_, k, c) = trial(seed);
        let cx = assemble(&k, &c).unwrap();
        for d in 0..cx.len() {
            prop_assert_eq!(cx.homology(d).dimension(), cx.betti_by_rank(d));
        }
    }

    #[test]
    fn constant_euler_characteristic(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = random_complex(&mut rng, 3, 40);
        let c = Cosheaf::constant(&k, 1, random_field(&mut rng));
        let cx = assemble(&k, &c).unwrap();
        prop_assert_eq!(cx.euler_characteristic(), k.euler_characteristic());
        let betti: i64 = cx.betti_numbers().iter().enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        prop_assert_eq!(betti, k.euler_characteristic());
    }

    #[test]
    fn generated_matchings_are_morse(seed in any::<u64>()) {
        let (_, k, c) = trial(seed);
        let sigma = generate_matching(&k, &c);
        prop_assert!(sigma.validate(&k).is_empty());
        prop_assert!(sigma.is_acyclic(&k));
        prop_assert!(sigma.is_cosheaf_compatible(&c));
        prop_assert!(sigma.critical_count(&k) <= k.len());
    }

    #[test]
    fn morse_complex_is_quasi_isomorphic(seed in any::<u64>()) {
        let (_, k, c) = trial(seed);
        let sigma = generate_matching(&k, &c);
        let mc = MorseComplex::assemble(&k, &c, &sigma).unwrap();
        prop_assert_eq!(mc.complex().square_zero_failure(), None);
        let check = mc.quasi_isomorphism_check().unwrap();
        prop_assert!(check.holds(), "{:?}", check);
    }

    #[test]
    fn morse_blocks_agree_between_routes(seed in any::<u64>()) {
        let (_, k, c) = trial(seed);
        let sigma = generate_matching(&k, &c);
        let mc = MorseComplex::assemble(&k, &c, &sigma).unwrap();
        for d in 1..mc.complex().len() {
            let bd = mc.complex().boundary(d);
            for alpha in mc.critical(d) {
                for omega in mc.critical(d - 1) {
                    let block = morse_boundary_block(&k, &c, &sigma, alpha, omega).unwrap();
                    let flow = bd.block(mc.offset_of(omega).unwrap(), mc.offset_of(alpha).unwrap(), block.rows(), block.cols());
                    prop_assert_eq!(block, flow);
                }
            }
        }
    }

    #[test]
    fn enumerated_paths_are_gradient(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = random_complex(&mut rng, 3, 40);
        let c = Cosheaf::constant(&k, 1, random_field(&mut rng));
        let sigma = generate_matching(&k, &c);
        let crit = sigma.critical_cells(&k);
        for d in 1..crit.len() {
            for alpha in &crit[d] {
                for omega in &crit[d - 1] {
                    for path in enumerate_paths(&k, &sigma, alpha, omega).unwrap() {
                        prop_assert!(path.is_valid(&sigma));
                        prop_assert!(path.is_gradient());
                    }
                }
            }
        }
    }

    #[test]
    fn mv_sequence_is_exact(seed in any::<u64>()) {
        let (mut rng, k, c) = trial(seed);
        let d = decomposition(&mut rng, &k);
        let mv = build_mv_ses(&d, &c).unwrap();
        prop_assert!(mv.ses().exactness().iter().all(|e| e.holds()));
        let les = mv.long_exact_sequence().unwrap();
        prop_assert!(les.is_exact());
        for deg in 0..mv.ses().len() {
            let h = |x: &cosheaf::ChainComplex| x.homology(deg).dimension();
            prop_assert!(h(mv.ses().middle()) <= h(mv.ses().left()) + h(mv.ses().right()));
        }
    }

    #[test]
    fn connecting_map_ignores_lift_choice(seed in any::<u64>()) {
        let (mut rng, k, c) = trial(seed);
        let d = decomposition(&mut rng, &k);
        let mv = build_mv_ses(&d, &c).unwrap();
        let ses = mv.ses();
        for deg in 1..ses.len() {
            let base = ses.connecting_homomorphism(deg).unwrap();
            let mut order: Vec<usize> = (0..ses.middle().dim(deg)).collect();
            for _ in 0..3 {
                order.shuffle(&mut rng);
                prop_assert_eq!(&ses.connecting_homomorphism_with_order(deg, &order).unwrap(), &base);
            }
        }
    }

    #[test]
    fn morse_mv_matches_standard(seed in any::<u64>()) {
        let (mut rng, k, c) = trial(seed);
        let d = decomposition(&mut rng, &k);
        let sigma = generate_compatible_matching(&k, &c, &[d.l(), d.m()]);
        let mmv = build_morse_mv_ses(&d, &c, &sigma).unwrap();
        prop_assert!(mmv.straddling_blocks_vanish(), "{:?}", mmv.straddling());
        prop_assert!(mmv.cube_commutes());
        let cmp = mmv.compare().unwrap();
        prop_assert!(cmp.agree, "{:?}", cmp.first_difference);
    }
}
