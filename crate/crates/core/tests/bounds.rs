use house_core::bounds::{
    column_bound, composite_prediction, constants, five_mod_six_polynomial, match_pattern,
    matveev_lower_bound, powerhouse, split_power_quotient, upper_bound_witness,
    verify_pattern_root, BoundColumn, PatternKind, RootPattern,
};
use house_core::roots::house;
use house_core::{parse_poly, Encoding};
use rand::{rngs::StdRng, Rng, SeedableRng};

#[test]
fn constants_are_recomputed() {
    let c = constants();
    assert!((c.theta - 1.32471795724475).abs() < 1e-12);
    assert!(c.sigma > 1.0 && c.tau > 1.0 && c.u > 1.0);
}

#[test]
fn columns_match_printed_values() {
    assert!((column_bound(1, BoundColumn::Theta32) - 1.524703).abs() < 1e-6);
    assert!((column_bound(10, BoundColumn::Tau10) - 1.125715).abs() < 1e-6);
    assert!((powerhouse(1.15096392525776, 3) - 1.524703).abs() < 1e-6);
}

#[test]
fn random_pattern_instances_have_certified_roots() {
    let mut rng = StdRng::seed_from_u64(7);
    for kind in PatternKind::ALL {
        let params: Vec<Option<i64>> = if kind.parameters().is_empty() {
            vec![None]
        } else {
            kind.parameters().iter().map(|&m| Some(m)).collect()
        };
        for _ in 0..100 {
            let pat = RootPattern {
                kind,
                m: params[rng.gen_range(0..params.len())],
            };
            let d = 2 * rng.gen_range(kind.min_degree() / 2..=12);
            let alphabet = if kind == PatternKind::MinusOnes { 1 } else { 2 };
            let interior: Vec<i64> = (0..pat.interior_len(d))
                .map(|_| rng.gen_range(-alphabet..=alphabet))
                .collect();
            let p = pat.instance(d, &interior).unwrap();
            assert_eq!(match_pattern(&p), Some(pat));
            let root = verify_pattern_root(&pat, &p).unwrap();
            assert!(root.value >= pat.guaranteed_lower_bound());
            assert!(house(&p).unwrap().0 >= pat.guaranteed_lower_bound());
        }
    }
}

#[test]
fn five_mod_six_family() {
    let mut prev = 0.0;
    for d in [5, 11, 17, 23, 29] {
        let p = five_mod_six_polynomial(d).unwrap();
        assert_eq!(p.degree(), d);
        let h = house(&p).unwrap().0;
        assert!(h > 1.0 && h < 2f64.powf(1.0 / d as f64));
        assert!(h.powi(d as i32) > prev);
        prev = h.powi(d as i32);
    }
    assert!(five_mod_six_polynomial(7).is_err());
}

#[test]
fn split_power_family() {
    let q = split_power_quotient(19).unwrap();
    assert!(q.exact);
    assert!((q.house - 1.03641032).abs() < 1e-8);
    let q = split_power_quotient(31).unwrap();
    assert!(q.house > 2f64.powf(1.0 / 31.0));
}

#[test]
fn composite_prefers_smallest_powerhouse() {
    let r8 = parse_poly("1 0 0 1 1", Encoding::Half).unwrap();
    let r4 = parse_poly("1 1 3", Encoding::Half).unwrap();
    let pred = composite_prediction(16, true, &[(4, r4), (8, r8.clone())]).unwrap();
    assert_eq!(pred.divisor, 8);
    assert_eq!(pred.poly, r8.compose_power(2));
    assert!((pred.house - 1.08133391225354).abs() < 1e-12);
}

#[test]
fn lower_bounds_below_witnesses() {
    for d in (6..=34).step_by(2) {
        let lb = matveev_lower_bound(d, true).unwrap();
        let (_, h) = upper_bound_witness(d, true).unwrap();
        assert!(lb < h, "d={d}");
    }
    assert!(matveev_lower_bound(3, true).is_err());
}
