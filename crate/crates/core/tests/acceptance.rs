use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use atomlen::affine_classical::{
    entropy_c, large_rank_threshold, lift_to_a, member_delta_c, norm_universality_scan,
    scan_delta_c, AffineLatticeSpec, AffineType, TypeCAffineElement,
};
use atomlen::affine_permutations::{
    enumerate_bounded, AffinePermutation, FinitePermutation, TranslationVector,
};
use atomlen::cores_abaci::*;
use atomlen::finite_weyl::{saturation_check, FiniteType, Series, DEFAULT_BUDGET};
use atomlen::quadratic_forms::*;
use atomlen::sumsets::*;

fn verdict(id: u32, ok: bool, detail: String, elapsed: Duration, limit: Option<u64>) {
    let in_time = limit.is_none_or(|s| elapsed.as_secs_f64() < s as f64);
    let pass = ok && in_time;
    println!(
        "criterion {id}: {} ({detail}; {:.2}s{})",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.map_or(String::new(), |s| format!(" of {s}s"))
    );
    assert!(pass, "criterion {id} failed: {detail}");
}

/// Prints FAIL for a criterion that cannot hold as stated, and asserts that
/// the observed deviation is exactly the recorded one.
fn known_deviation<T: std::fmt::Debug + PartialEq>(
    id: u32,
    observed: T,
    recorded: T,
    detail: String,
) {
    println!("criterion {id}: FAIL ({detail}; observed deviation {observed:?})");
    assert_eq!(observed, recorded, "criterion {id}: deviation changed");
}

fn random_partition(rng: &mut impl Rng, max_len: usize, max_part: u64) -> Partition {
    let len = rng.gen_range(0..=max_len);
    let mut parts: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=max_part)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts).unwrap()
}

fn random_window(rng: &mut impl Rng, n: usize) -> AffinePermutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    let mut x: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
    let s: i64 = x.iter().sum();
    x[n - 1] -= s;
    AffinePermutation::from_parts(
        &TranslationVector::new(x).unwrap(),
        &FinitePermutation::new(images).unwrap(),
    )
    .unwrap()
}

fn ints(r: &[Ratio<i64>]) -> Vec<i64> {
    r.iter().map(|x| x.to_integer()).collect()
}

#[test]
fn criterion_01_entropy_equals_atomic_length() {
    let t = Instant::now();
    let mut count = 0usize;
    let mut bad = 0usize;
    for n in 2..=5 {
        for w in enumerate_bounded(n, 20) {
            count += 1;
            if w.entropy() != w.atomic_length_rho() {
                bad += 1;
            }
        }
    }
    verdict(
        1,
        bad == 0 && count > 1000,
        format!("{count} elements, {bad} mismatches"),
        t.elapsed(),
        Some(10),
    );
}

#[test]
fn criterion_02_diagram_commutes() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=7);
        let y = random_window(&mut rng, n).window().to_vec();
        let p = eval_p(&y);
        let c = map_c(&y).unwrap();
        let q_up = eval_q_upper(&c);
        let q_low = eval_q_lower(&map_pr(&c).unwrap());
        if q_up != Ratio::from_integer(p) || q_low != p {
            bad += 1;
        }
    }
    verdict(
        2,
        bad == 0,
        format!("10000 windows, {bad} mismatches"),
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_03_q_represents_s290() {
    let t = Instant::now();
    let targets: Vec<Ratio<i64>> = S290.iter().map(|&k| Ratio::from_integer(k)).collect();
    let opts = ScanOptions {
        checklist: Some("S290".into()),
        ..ScanOptions::default()
    };
    let r = scan_targets(
        &Form::lower_q(4),
        &ConstrainedDomain::Free { dim: 4 },
        &targets,
        290,
        8,
        &opts,
    );
    verdict(
        3,
        r.witness_count() == 29,
        format!("{}/29 witnesses", r.witness_count()),
        t.elapsed(),
        Some(5),
    );
}

#[test]
fn criterion_04_modular_classes() {
    let t = Instant::now();
    let c3 = attained_classes(&Form::half_norm(3), &ConstrainedDomain::Delta { n: 3 }, 3);
    let complement = |m: u64| -> Vec<u64> {
        let a = attained_classes(&Form::half_norm(4), &ConstrainedDomain::Delta { n: 4 }, m);
        (0..m).filter(|c| !a.contains(c)).collect()
    };
    let m32 = complement(32);
    let m128 = complement(128);
    let ok = c3 == vec![0, 1]
        && m32 == vec![14, 30]
        && m128 == vec![14, 30, 46, 56, 62, 78, 94, 110, 120, 126];
    verdict(
        4,
        ok,
        format!("n=3 mod 3 {c3:?}; n=4 missing mod 32 {m32:?}, mod 128 {m128:?}"),
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_05_entropy_universality_type_a() {
    let t = Instant::now();
    let opts = ScanOptions::default();
    let full: Vec<usize> = [5, 6]
        .iter()
        .map(|&n| {
            universality_scan(
                &Form::half_norm(n),
                &ConstrainedDomain::Delta { n },
                200,
                30,
                &opts,
            )
            .witness_count()
        })
        .collect();
    let r4 = universality_scan(
        &Form::half_norm(4),
        &ConstrainedDomain::Delta { n: 4 },
        200,
        30,
        &opts,
    );
    let flagged: Vec<i64> = [14, 30, 110]
        .into_iter()
        .filter(|&k| {
            matches!(
                r4.entry(Ratio::from_integer(k)).map(|e| &e.outcome),
                Some(Outcome::ModularObstruction { .. })
            )
        })
        .collect();
    verdict(
        5,
        full == vec![201, 201] && flagged.len() == 3,
        format!(
            "n=5,6 witnesses {full:?}; n=4 obstructed {flagged:?}, missing {:?}",
            ints(&r4.missing())
        ),
        t.elapsed(),
        Some(60),
    );
}

#[test]
fn criterion_06_hall_sumsets() {
    let t = Instant::now();
    let equal: Vec<bool> = (2..=6)
        .map(|n| {
            verify_sumset_equality(Family::A, n, None, DEFAULT_PAIR_BUDGET)
                .unwrap()
                .equal
        })
        .collect();
    let h6 = difference_set(&build_orbit(Family::A, 6, None).to_vec()).len();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = 0;
    for _ in 0..1000 {
        let m = rng.gen_range(1..=12u64);
        let mut d: Vec<i64> = (0..m).map(|_| rng.gen_range(0..m as i64)).collect();
        let s: i64 = d.iter().sum();
        d[0] -= s;
        let ok = match hall_decompose(m, &d) {
            Ok((a, b)) => {
                let full: BTreeSet<u64> = (0..m).collect();
                a.iter().copied().collect::<BTreeSet<_>>() == full
                    && b.iter().copied().collect::<BTreeSet<_>>() == full
                    && (0..m as usize)
                        .all(|i| (b[i] as i64 - a[i] as i64 - d[i]).rem_euclid(m as i64) == 0)
            }
            Err(_) => false,
        };
        if !ok {
            bad += 1;
        }
    }
    verdict(
        6,
        equal.iter().all(|&e| e) && h6 == 7776 && bad == 0,
        format!("A n=2..6 equal {equal:?}; |H_6| = {h6}; 1000 Hall decompositions, {bad} failures"),
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_07_type_c_sumsets() {
    let t = Instant::now();
    let equal: Vec<bool> = [2, 3]
        .iter()
        .map(|&n| {
            verify_sumset_equality(Family::C, n, None, DEFAULT_PAIR_BUDGET)
                .unwrap()
                .equal
        })
        .collect();
    let mod4 = verify_sumset_equality(Family::C, 2, Some(4), DEFAULT_PAIR_BUDGET).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    for n in [3usize, 5] {
        let p = 2 * n as u64 + 1;
        for _ in 0..100 {
            let a: Vec<i64> = (0..n).map(|_| rng.gen_range(0..p as i64)).collect();
            match c_difference_witness(n, &a) {
                Ok((w1, w2))
                    if w1.sub(&w2) == ModVector::new(p, &a)
                        && in_c_orbit(&w1)
                        && in_c_orbit(&w2) => {}
                _ => bad += 1,
            }
        }
    }
    verdict(
        7,
        equal == vec![true, true] && !mod4.equal && mod4.missing.contains(&vec![1, 0]) && bad == 0,
        format!(
            "C n=2,3 equal {equal:?}; mod 4 missing {:?}; 200 witnesses, {bad} failures",
            mod4.missing
        ),
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_08_phi_and_cores() {
    let t = Instant::now();
    let l: MultiPartition = "3,1;2,1".parse().unwrap();
    let (q, sn) = phi(&l, &[0, 0], 3);
    let c = ns_core_of(&l, &[0, 0], 3);
    let example = q.to_string() == "((1),(2),∅)"
        && sn == vec![1, -1, 0]
        && c.core.to_string() == "((1),(2))"
        && c.charges == vec![-1, 1]
        && c.core_multicharge == vec![0, -1, 1];

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut round_trip_bad = 0;
    for _ in 0..300 {
        let ell = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=5);
        let lambda =
            MultiPartition::new((0..ell).map(|_| random_partition(&mut rng, 5, 6)).collect());
        let charges: Vec<i64> = (0..ell).map(|_| rng.gen_range(-4..=4)).collect();
        let (ln, s) = phi(&lambda, &charges, n);
        if phi_inverse(&ln, &s, ell) != (lambda, charges) {
            round_trip_bad += 1;
        }
    }
    let mut core_bad = 0;
    for _ in 0..500 {
        let lambda = random_partition(&mut rng, 8, 10);
        let n = rng.gen_range(1..=6);
        if beta_set(&lambda, 0).is_n_core(n as i64) != lambda.is_n_core_hooks(n) {
            core_bad += 1;
        }
    }
    verdict(
        8,
        example && round_trip_bad == 0 && core_bad == 0,
        format!(
            "example {}; 300 round trips, {round_trip_bad} failures; 500 core tests, {core_bad} disagreements",
            if example { "exact" } else { "differs" }
        ),
        t.elapsed(),
        None,
    );
}

fn random_spec(rng: &mut impl Rng) -> WeightSpec {
    let n = rng.gen_range(2..=7);
    let ell = rng.gen_range(1..=n);
    let mut s: Vec<i64> = (0..ell).map(|_| rng.gen_range(0..n as i64)).collect();
    s.sort_unstable();
    WeightSpec::new(n, s).unwrap()
}

fn random_orbit_point(rng: &mut impl Rng, spec: &WeightSpec) -> Vec<i64> {
    let word: Vec<usize> = (0..rng.gen_range(0..15))
        .map(|_| rng.gen_range(0..spec.n()))
        .collect();
    affine_action_on_charges(&word, spec.sprime(), spec.ell()).unwrap()
}

#[test]
fn criterion_09_ps_consistency() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let zero_bad = (0..50)
        .filter(|_| {
            let spec = random_spec(&mut rng);
            eval_ps(&spec, spec.sprime()).unwrap() != 0
        })
        .count();
    let mut size_bad = 0;
    let mut dilation_bad = 0;
    for _ in 0..200 {
        let spec = random_spec(&mut rng);
        let tv = random_orbit_point(&mut rng, &spec);
        let p = eval_ps(&spec, &tv).unwrap();
        if p != core_size(&spec, &tv) as i64 {
            size_bad += 1;
        }
        let scale = Ratio::new(spec.n() as i64, spec.ell() as i64);
        if eval_dilated(&spec, &dilate(&spec, &tv)).unwrap() != scale * p {
            dilation_bad += 1;
        }
    }
    verdict(
        9,
        zero_bad == 0 && size_bad == 0 && dilation_bad == 0,
        format!(
            "P_s(s') = 0 failures {zero_bad}/50; size oracle failures {size_bad}/200; dilation failures {dilation_bad}/200"
        ),
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_10_granville_ono() {
    let t = Instant::now();
    let go: Vec<bool> = (4..=7)
        .map(|n| granville_ono_scan(n, 150, 25).all_witnessed())
        .collect();
    let refined6 = scan_refined_go(6, 100, 25);
    let p5 = universality_scan(
        &Form::separable("P_s", refined_go_polynomial(5)),
        &ConstrainedDomain::Os { n: 5 },
        150,
        25,
        &ScanOptions::default(),
    );
    let p5_missing: Vec<i64> = ints(&p5.missing())
        .into_iter()
        .filter(|&k| k >= 15)
        .collect();
    let p5_125 = matches!(
        p5.entry(Ratio::from_integer(125)).map(|e| &e.outcome),
        Some(Outcome::NotFoundWithinRadius(_))
    );
    let q5_missing = ints(&scan_refined_go(5, 150, 25).missing());
    let base = refined_go_polynomial(5).eval(&[0, 1, 2, 3, 4]);
    verdict(
        10,
        go.iter().all(|&b| b)
            && refined6.all_witnessed()
            && p5_125
            && p5_missing == vec![125]
            && q5_missing == vec![90]
            && base == Ratio::from_integer(35),
        format!(
            "GO n=4..7 {go:?}; refined n=6 {}/{}; n=5 P_s misses {p5_missing:?} above its minimum, Q_s misses {q5_missing:?}; P_s(0..4) = {base}",
            refined6.witness_count(),
            refined6.entries.len()
        ),
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_11_truncated_weights() {
    let t = Instant::now();
    let res: Vec<(usize, usize, usize)> = [(5, 2), (5, 3), (6, 2)]
        .iter()
        .map(|&(n, ell)| {
            (
                n,
                ell,
                scan_truncated_weight(n, ell, 100, 30)
                    .unwrap()
                    .witness_count(),
            )
        })
        .collect();
    verdict(
        11,
        res.iter().all(|r| r.2 == 101),
        format!("witnesses (n, ell, count) {res:?}"),
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_12_finite_types() {
    let t = Instant::now();
    let cases: Vec<(Series, usize)> = (1..=5)
        .map(|n| (Series::A, n))
        .chain((2..=4).flat_map(|n| [(Series::B, n), (Series::C, n)]))
        .chain([(Series::D, 4)])
        .collect();
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut bounds_bad: Vec<String> = Vec::new();
    for (s, n) in cases {
        let ty = FiniteType::new(s, n).unwrap();
        let lo = if s == Series::D { 2 } else { 1 };
        for ell in lo..=n {
            let r = saturation_check(ty, ell, DEFAULT_BUDGET).unwrap();
            checked += 1;
            if r.image_max != r.b {
                bounds_bad.push(format!("{ty} ell={ell}"));
            }
            if r.is_interval != r.predicted {
                bad.push(format!("{ty} ell={ell}"));
            }
        }
    }
    let b2 = saturation_check(FiniteType::new(Series::B, 2).unwrap(), 2, DEFAULT_BUDGET).unwrap();
    let c2 = saturation_check(FiniteType::new(Series::C, 2).unwrap(), 2, DEFAULT_BUDGET).unwrap();
    let elapsed = t.elapsed();
    assert!(!b2.is_interval && !c2.is_interval);
    assert!(
        bounds_bad.is_empty(),
        "b_bound differs from the maximum: {bounds_bad:?}"
    );
    assert!(elapsed.as_secs() < 120);
    known_deviation(
        12,
        bad,
        vec!["C2 ell=1".to_string(), "C3 ell=1".into(), "C3 ell=2".into(), "C4 ell=1".into()],
        format!(
            "{checked} (type, ell) cases, b_bound = max over W in all; B2/C2 ell=2 missing {:?}/{:?}; \
             type C counterexamples to the characterisation; {:.2}s of 120s",
            b2.missing,
            c2.missing,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_13_type_c_entropy() {
    let t = Instant::now();
    let scans: Vec<usize> = [4, 5]
        .iter()
        .map(|&n| scan_delta_c(n, 150, 30).witness_count())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut samples = 0;
    let mut bad = 0;
    while samples < 1000 {
        let n = rng.gen_range(1..=6);
        let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-7..=7)).collect();
        let lifted = TypeCAffineElement::from_displacement(&x);
        if !member_delta_c(&x) {
            if lifted.is_ok() {
                bad += 1;
            }
            continue;
        }
        samples += 1;
        if entropy_c(&x).unwrap() != lift_to_a(&lifted.unwrap()).entropy() {
            bad += 1;
        }
    }
    verdict(
        13,
        scans == vec![151, 151] && bad == 0,
        format!("n=4,5 witnesses {scans:?}; 1000 lift samples, {bad} mismatches"),
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_14_large_rank() {
    let t = Instant::now();
    let scans: Vec<(String, usize, usize)> = AffineType::ALL
        .iter()
        .map(|&ty| {
            let r = norm_universality_scan(&AffineLatticeSpec::new(ty, 4), 100, 24);
            (ty.to_string(), r.witness_count(), r.entries.len())
        })
        .collect();
    let n0: Vec<usize> = AffineType::ALL
        .iter()
        .map(|&ty| large_rank_threshold(ty).n0)
        .collect();
    verdict(
        14,
        scans.iter().all(|s| s.1 == s.2) && n0 == vec![15, 15, 16, 15, 16, 10],
        format!("n=4 norm scans {scans:?}; n0 {n0:?}"),
        t.elapsed(),
        None,
    );
}
