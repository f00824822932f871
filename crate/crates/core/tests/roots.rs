use house_core::roots::{count_outside_unit, house, mahler_measure, summarize};
use house_core::{parse_poly, Encoding, IntPolynomial};
use proptest::prelude::*;

#[test]
fn known_values() {
    let p = parse_poly("1 1 3", Encoding::Half).unwrap();
    let (h, err) = house(&p).unwrap();
    assert!((h - 1.53922233842043).abs() < 1e-13 && err < 1e-12);
    assert_eq!(count_outside_unit(&p).unwrap(), 2);
    let lehmer = parse_poly("1 1 0 -1 -1 -1", Encoding::Half).unwrap();
    let (m, _) = mahler_measure(&lehmer).unwrap();
    assert!((m - 1.17628081825992).abs() < 1e-12);
    let s = summarize(&lehmer).unwrap();
    assert_eq!(s.nu, 1);
    assert_eq!(s.roots.len(), 10);
}

#[test]
fn square_factors_are_rejected() {
    let p = parse_poly("1 2 1", Encoding::Full).unwrap();
    assert!(house(&p).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn composition_takes_roots(tail in proptest::collection::vec(-2i64..=2, 3..7), k in 2usize..4) {
        let mut desc = vec![1];
        desc.extend(tail);
        let last = desc.len() - 1;
        if desc[last] == 0 { desc[last] = 1; }
        let p = IntPolynomial::from_descending(&desc).unwrap();
        if let Ok((h, _)) = house(&p) {
            let (hk, _) = house(&p.compose_power(k)).unwrap();
            prop_assert!((hk - h.powf(1.0 / k as f64)).abs() <= 1e-10);
        }
    }
}
