use num_rational::Ratio;
use proptest::prelude::*;

use atomlen::affine_classical::{entropy_c, lift_to_a, member_delta_c, TypeCAffineElement};
use atomlen::affine_permutations::{AffinePermutation, FinitePermutation, TranslationVector};
use atomlen::cores_abaci::*;
use atomlen::quadratic_forms::{
    eval_p, map_c, map_c_inverse, map_pr, map_pr_inverse, ConstrainedDomain,
};
use atomlen::sumsets::hall_decompose;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u64..9, 0..8).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn charged_multipartition() -> impl Strategy<Value = (MultiPartition, Vec<i64>)> {
    (1usize..=4).prop_flat_map(|ell| {
        (
            prop::collection::vec(partition(), ell).prop_map(MultiPartition::new),
            prop::collection::vec(-4i64..=4, ell),
        )
    })
}

fn window() -> impl Strategy<Value = AffinePermutation> {
    (2usize..=7).prop_flat_map(|n| {
        (
            Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::vec(-4i64..=4, n),
        )
            .prop_map(|(images, mut x)| {
                let s: i64 = x.iter().sum();
                *x.last_mut().unwrap() -= s;
                AffinePermutation::from_parts(
                    &TranslationVector::new(x).unwrap(),
                    &FinitePermutation::new(images).unwrap(),
                )
                .unwrap()
            })
    })
}

fn weight_spec() -> impl Strategy<Value = WeightSpec> {
    (2usize..=7)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(0..n as i64, 1..=n)))
        .prop_map(|(n, mut s)| {
            s.sort_unstable();
            WeightSpec::new(n, s).unwrap()
        })
}

fn spec_and_orbit_point() -> impl Strategy<Value = (WeightSpec, Vec<i64>)> {
    weight_spec().prop_flat_map(|spec| {
        let n = spec.n();
        prop::collection::vec(0..n, 0..16).prop_map(move |word| {
            let t = affine_action_on_charges(&word, spec.sprime(), spec.ell()).unwrap();
            (spec.clone(), t)
        })
    })
}

/// Number of boxes of each content class `j − i mod n`.
fn residues(p: &Partition, n: u64) -> Vec<i64> {
    let mut r = vec![0i64; n as usize];
    for (i, &len) in p.parts().iter().enumerate() {
        for j in 0..len {
            r[((j as i64 - i as i64).rem_euclid(n as i64)) as usize] += 1;
        }
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn phi_round_trip((lambda, charges) in charged_multipartition(), n in 1usize..=6) {
        let (ln, sn) = phi(&lambda, &charges, n);
        prop_assert_eq!(phi_inverse(&ln, &sn, lambda.level()), (lambda, charges));
    }

    #[test]
    fn ns_core_is_core((lambda, charges) in charged_multipartition(), n in 1usize..=5) {
        let c = ns_core_of(&lambda, &charges, n);
        prop_assert!(is_ns_core(&c.core, &c.charges, n));
        let (q, _) = phi(&c.core, &c.charges, n);
        prop_assert!(q.is_empty());
    }

    #[test]
    fn abacus_core_test_matches_hooks(lambda in partition(), n in 1u64..=7, s in -5i64..=5) {
        prop_assert_eq!(beta_set(&lambda, s).is_n_core(n as i64), lambda.is_n_core_hooks(n));
        prop_assert_eq!(lambda.is_n_core_hooks(n), lambda.is_n_core_hooks_divisible(n));
    }

    #[test]
    fn n_core_agrees_with_rim_hook_removal(lambda in partition(), n in 1u64..=6) {
        let core = partition_of(&beta_set(&lambda, 0).n_core(n as i64));
        prop_assert!(core.is_n_core_hooks(n));
        prop_assert!(core.len() <= lambda.len());
        prop_assert!(core.parts().iter().zip(lambda.parts()).all(|(c, l)| c <= l));
        let removed = lambda.size() - core.size();
        prop_assert_eq!(removed % n, 0);
        let k = (removed / n) as i64;
        let diff: Vec<i64> = residues(&lambda, n)
            .iter()
            .zip(residues(&core, n))
            .map(|(a, b)| a - b)
            .collect();
        prop_assert!(diff.iter().all(|&d| d == k), "{:?}", diff);
    }

    #[test]
    fn entropy_is_atomic_length(w in window()) {
        prop_assert_eq!(w.entropy(), w.atomic_length_rho());
        prop_assert_eq!(w.entropy() as i64, eval_p(w.window()));
        prop_assert_eq!(w.compose(&w.inverse()).unwrap(), AffinePermutation::identity(w.rank()));
    }

    #[test]
    fn maps_round_trip(w in window()) {
        let c = map_c(w.window()).unwrap();
        prop_assert_eq!(map_c_inverse(&c).unwrap(), w.window().to_vec());
        let p = map_pr(&c).unwrap();
        let x_n = ConstrainedDomain::X { n: w.rank() };
        prop_assert!(x_n.member(&p));
        prop_assert_eq!(map_pr_inverse(&p).unwrap(), c);
    }

    #[test]
    fn ps_counts_core_boxes((spec, t) in spec_and_orbit_point()) {
        prop_assert!(spec.domain().member(&t));
        prop_assert_eq!(eval_ps(&spec, &t).unwrap(), core_size(&spec, &t) as i64);
        let scale = Ratio::new(spec.n() as i64, spec.ell() as i64);
        let p = eval_ps(&spec, &t).unwrap();
        prop_assert_eq!(eval_dilated(&spec, &dilate(&spec, &t)).unwrap(), scale * p);
    }

    #[test]
    fn ds_stable_under_affine_action(
        (spec, t) in spec_and_orbit_point(),
        word in prop::collection::vec(0usize..7, 0..10),
    ) {
        let word: Vec<usize> = word.into_iter().map(|g| g % spec.n()).collect();
        let u = affine_action_on_charges(&word, &t, spec.ell()).unwrap();
        prop_assert!(spec.domain().member(&u));
        prop_assert!(eval_ps(&spec, &u).unwrap() >= 0);
    }

    #[test]
    fn level_two_reduction(
        n in 2usize..=8,
        raw in prop::collection::vec(-4i64..=4, 8),
        k in 1usize..=8,
    ) {
        let k = (k - 1) % n + 1;
        let mut u: Vec<i64> = raw[..n].to_vec();
        let s: i64 = u.iter().sum();
        u[0] -= s;
        let mut t: Vec<i64> = u.iter().map(|x| 2 * x).collect();
        t[k - 1] += 1;
        let spec = WeightSpec::truncated(n, 2).unwrap();
        let ni = n as i64;
        let p0 = ni * u.iter().map(|x| x * x).sum::<i64>()
            - 2 * u.iter().enumerate().map(|(i, x)| i as i64 * x).sum::<i64>();
        let expected = p0 + ni - k as i64 + ni * u[k - 1];
        prop_assert_eq!(eval_ps(&spec, &t).unwrap(), expected);
    }

    #[test]
    fn hall_decompositions(m in 1u64..=12, raw in prop::collection::vec(0i64..12, 12)) {
        let mut d: Vec<i64> = raw[..m as usize].to_vec();
        let s: i64 = d.iter().sum();
        d[0] -= s;
        let (a, b) = hall_decompose(m, &d).unwrap();
        for i in 0..m as usize {
            prop_assert_eq!((b[i] as i64 - a[i] as i64 - d[i]).rem_euclid(m as i64), 0);
        }
    }

    #[test]
    fn type_c_lift(x in prop::collection::vec(-6i64..=6, 1..=6)) {
        match TypeCAffineElement::from_displacement(&x) {
            Ok(e) => {
                prop_assert!(member_delta_c(&x));
                let a = lift_to_a(&e);
                prop_assert_eq!(entropy_c(&x).unwrap(), a.entropy());
                prop_assert_eq!(e.displacement(), x);
            }
            Err(_) => prop_assert!(!member_delta_c(&x)),
        }
    }
}
