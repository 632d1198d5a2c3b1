mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use zrk::collapse::{find_collapse_sequence, replay};
use zrk::regular::{coprime_point, desingularize, is_regular, is_strongly_regular_simplex};
use zrk::scx::{parse_scx, print_scx, ScxDocument};
use zrk::subdivide::{common_refinement, is_subdivision, stellar};
use zrk::zmap::{compose, is_zmap, part2_reduce, pipeline_dh, verify_section_retraction, Budgets, PLMap};
use zrk::{GeoComplex, Int, RPoint, Rat};

fn small_complex(seed: u64, n: usize) -> GeoComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = random_simplex(&mut rng, n, n, 6);
    let p = random_interior_point(&mut rng, &s);
    stellar(&complex(n, vec![s]), &p).unwrap()
}

fn fraction() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=6).prop_flat_map(|d| (0..=d, Just(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stellar_is_a_subdivision(seed in any::<u64>(), n in 1usize..=2) {
        let k = small_complex(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let maximal = k.maximal();
        let p = random_interior_point(&mut rng, &maximal[0]);
        let sub = stellar(&k, &p).unwrap();
        prop_assert!(is_subdivision(&sub, &k));
        prop_assert!(sub.vertices().contains(&p));
    }

    #[test]
    fn common_refinement_refines_both(seed in any::<u64>()) {
        let cube = GeoComplex::standard_cube(2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = cube.maximal()[0].clone();
        let a = stellar(&cube, &random_interior_point(&mut rng, &s)).unwrap();
        let t = cube.maximal()[1].clone();
        let b = stellar(&cube, &random_interior_point(&mut rng, &t)).unwrap();
        let r = common_refinement(&a, &b).unwrap();
        prop_assert!(is_subdivision(&r, &a));
        prop_assert!(is_subdivision(&r, &b));
    }

    #[test]
    fn eval_is_affine_on_simplexes(seed in any::<u64>(), n in 1usize..=2) {
        let domain = small_complex(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let images = domain.vertices().into_iter().map(|v| (v, random_point(&mut rng, 2, 5))).collect();
        let eta = PLMap::new(domain, images).unwrap();
        for s in eta.domain().maximal() {
            let (a, b) = (&s.vertices()[0], &s.vertices()[1]);
            let (ya, yb) = (eta.eval(a).unwrap(), eta.eval(b).unwrap());
            for k in 0..=4 {
                let t = rat(k, 4);
                let w = [Rat::from_integer(Int::from(1)) - &t, t];
                let x = RPoint::combination([a, b], &w);
                prop_assert_eq!(eta.eval(&x).unwrap(), RPoint::combination([&ya, &yb], &w));
            }
        }
    }

    #[test]
    fn compose_of_zmaps_is_a_zmap(a in 0usize..3, b in 0usize..3) {
        let cuts = [(0, 1), (1, 2), (1, 1)];
        let domain = complex(1, cuts.windows(2).map(|w| simplex(&[p1(w[0].0, w[0].1), p1(w[1].0, w[1].1)])).collect());
        let mids = [p1(0, 1), p1(1, 2), p1(1, 1)];
        let eta = PLMap::new(domain.clone(), [(p1(0, 1), p1(0, 1)), (p1(1, 2), mids[a].clone()), (p1(1, 1), p1(1, 1))].into()).unwrap();
        let theta = PLMap::new(domain, [(p1(0, 1), p1(1, 1)), (p1(1, 2), mids[b].clone()), (p1(1, 1), p1(0, 1))].into()).unwrap();
        prop_assert!(is_zmap(&eta).unwrap() && is_zmap(&theta).unwrap());
        let c = compose(&eta, &theta).unwrap();
        prop_assert!(is_zmap(&c).unwrap());
        for k in 0..=8 {
            let x = p1(k, 8);
            prop_assert_eq!(c.eval(&x).unwrap(), theta.eval(&eta.eval(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn coprime_point_is_coprime_and_inside(seed in any::<u64>(), k in 1i64..=30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_simplex(&mut rng, 2, 2, 4);
        prop_assume!(is_strongly_regular_simplex(&s));
        let x = coprime_point(&s, &Int::from(k)).unwrap();
        prop_assert!(s.contains(&x));
        prop_assert_eq!(num_integer::Integer::gcd(&x.den(), &Int::from(k)), Int::from(1));
    }

    #[test]
    fn scx_round_trips(seed in any::<u64>(), n in 1usize..=3) {
        let k = small_complex(seed, n);
        let doc = ScxDocument::Complex(k);
        let text = print_scx(&doc);
        let back = parse_scx(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(print_scx(&back), text);
    }

    #[test]
    fn found_collapses_replay(seed in any::<u64>(), n in 1usize..=3) {
        let k = small_complex(seed, n);
        let seq = find_collapse_sequence(&k, 100_000).unwrap();
        prop_assert!(replay(&k, &seq));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn desingularize_gives_regular_subdivision(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_simplex(&mut rng, n, n, 6);
        let k = complex(n, vec![s]);
        let d = desingularize(&k).unwrap();
        prop_assert!(is_subdivision(&d, &k));
        prop_assert!(d.simplexes().iter().all(is_regular));
    }

    #[test]
    fn reduced_retractions_pass_part2(end in fraction()) {
        let p = load_complex("half_interval");
        let image = |(x, d): (i64, i64)| RPoint::new(vec![rat(x, d) / Rat::from_integer(Int::from(2))]).unwrap();
        let eta_b = PLMap::new(
            load_map("tent").domain().clone(),
            [(p1(0, 1), p1(0, 1)), (p1(1, 2), p1(1, 2)), (p1(1, 1), image(end))].into(),
        )
        .unwrap();
        let reduced = pipeline_dh(&eta_b, &p, Budgets::default()).unwrap();
        let part = part2_reduce(&reduced.eta, &reduced.delta, &p, Budgets::default()).unwrap();
        prop_assert!(verify_section_retraction(&p, &part.mu, &part.xi).unwrap());
    }
}
