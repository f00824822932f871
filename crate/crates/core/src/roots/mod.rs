//! Certified roots, house, Mahler measure and the count of roots outside
//! the unit circle.
//!
//! Roots are approximated with Aberth–Ehrlich iteration and then enclosed
//! a posteriori: with Weierstrass corrections
//! `W_i = P(z_i) / (lc * prod_{j != i} (z_i - z_j))`, every root of `P`
//! lies in the union of the disks `|z - z_i| <= n |W_i|`, and a connected
//! component of `m` disks holds exactly `m` roots. The residual `P(z_i)`
//! is evaluated either in double precision (fast path) or in double-double
//! after a Newton polish (escalated path), with a rigorous bound on the
//! evaluation error added to the numerator.

mod aberth;
pub mod dd;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigpoly;
use crate::error::RootError;
use crate::poly::IntPolynomial;

pub use aberth::aberth;

/// Default radius tolerance for [`all_roots`].
pub const DEFAULT_TOL: f64 = 1e-13;
/// Default error bound requested by [`house`] and [`mahler_measure`].
pub const HOUSE_TOL: f64 = 1e-12;

const U: f64 = f64::EPSILON / 2.0;

/// A root approximation together with a certified radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootDisk {
    pub center: Complex64,
    pub radius: f64,
}

/// Everything the tables report about one polynomial.
#[derive(Debug, Clone)]
pub struct RootSummary {
    pub house: f64,
    pub house_error: f64,
    pub nu: usize,
    pub mahler: f64,
    pub mahler_error: f64,
    pub roots: Vec<RootDisk>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Precision {
    Double,
    DoubleDouble,
}

fn as_f64(p: &IntPolynomial) -> Vec<f64> {
    p.coeffs().iter().map(|&c| c as f64).collect()
}

fn iteration_budget(p: &IntPolynomial) -> usize {
    200 * p.degree()
}

/// Raw Aberth approximations (not certified).
pub fn approximate_roots(p: &IntPolynomial) -> Result<Vec<Complex64>, RootError> {
    if p.degree() == 0 {
        return Err(RootError::ConstantPolynomial);
    }
    aberth(&as_f64(p), iteration_budget(p)).map_err(RootError::NoConvergence)
}

fn newton_polish(coeffs: &[f64], z: &mut [Complex64], rounds: usize) {
    for _ in 0..rounds {
        for zi in z.iter_mut() {
            let (p, dp) = dd::eval_with_derivative(coeffs, *zi);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.re.is_finite() && step.im.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
}

/// Residual `|P(z)|` plus a rigorous bound on its evaluation error.
fn residual_bound(coeffs: &[f64], z: Complex64, prec: Precision) -> f64 {
    let n = coeffs.len() - 1;
    let az = z.norm();
    let abs_sum = coeffs.iter().rev().fold(0.0, |acc, c| acc * az + c.abs());
    match prec {
        Precision::Double => {
            let mut p = Complex64::new(0.0, 0.0);
            for &c in coeffs.iter().rev() {
                p = p * z + c;
            }
            p.norm() * (1.0 + 4.0 * U) + (8 * n + 8) as f64 * U * abs_sum * (1.0 + 1e-10)
        }
        Precision::DoubleDouble => {
            let (p, _) = dd::eval_with_derivative(coeffs, z);
            p.norm() * (1.0 + 4.0 * U) + (16 * n + 16) as f64 * dd::DD_EPS * abs_sum
        }
    }
}

/// Encloses the roots around the given approximations.
fn enclose(coeffs: &[f64], approx: &[Complex64], prec: Precision) -> Vec<RootDisk> {
    let n = approx.len();
    let lc = coeffs[n].abs();
    let mut radii: Vec<f64> = (0..n)
        .map(|i| {
            let zi = approx[i];
            let mut prod = lc;
            for (j, zj) in approx.iter().enumerate() {
                if j != i {
                    prod *= (zi - zj).norm();
                }
            }
            let prod_lower = prod * (1.0 - (4 * n + 4) as f64 * U);
            if prod_lower <= 0.0 || !prod_lower.is_finite() {
                return f64::INFINITY;
            }
            let r = n as f64 * residual_bound(coeffs, zi, prec) / prod_lower;
            r * (1.0 + 1e-12)
        })
        .collect();

    // Merge overlapping disks into components; a component of m disks holds
    // m roots, each within the component's hull around every member.
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while c[r] != r {
            r = c[r];
        }
        let mut k = i;
        while c[k] != r {
            let next = c[k];
            c[k] = r;
            k = next;
        }
        r
    }
    let mut merged = false;
    for i in 0..n {
        for j in i + 1..n {
            if (approx[i] - approx[j]).norm() <= radii[i] + radii[j] {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                if a != b {
                    comp[a] = b;
                    merged = true;
                }
            }
        }
    }
    if merged {
        let roots: Vec<usize> = (0..n).map(|i| find(&mut comp, i)).collect();
        let base = radii.clone();
        for i in 0..n {
            radii[i] = (0..n)
                .filter(|&j| roots[j] == roots[i])
                .map(|j| (approx[i] - approx[j]).norm() + base[j])
                .fold(base[i], f64::max);
        }
    }
    approx
        .iter()
        .zip(radii)
        .map(|(&center, radius)| RootDisk { center, radius })
        .collect()
}

/// House bounds `(value, error)` from an enclosure.
fn house_from_disks(disks: &[RootDisk]) -> (f64, f64) {
    let mut value = 0.0f64;
    let mut hi = 0.0f64;
    let mut lo = 0.0f64;
    for d in disks {
        let m = d.center.norm();
        value = value.max(m);
        hi = hi.max(m + d.radius);
        lo = lo.max(m - d.radius);
    }
    // one ulp for the modulus computation itself
    let err = (hi - value).max(value - lo) + 2.0 * U * value;
    (value, err)
}

fn mahler_from_disks(lc: i64, disks: &[RootDisk]) -> (f64, f64) {
    let lc = lc.unsigned_abs() as f64;
    let mut val = lc;
    let mut hi = lc;
    let mut lo = lc;
    for d in disks {
        let m = d.center.norm();
        val *= m.max(1.0);
        hi *= (m + d.radius).max(1.0);
        lo *= (m - d.radius).max(1.0);
    }
    let err = (hi - val).max(val - lo) + 4.0 * U * disks.len() as f64 * val;
    (val, err)
}

/// Certified enclosures, escalating once from double to double-double
/// residuals. `accept` decides whether an enclosure is good enough.
fn certified(
    p: &IntPolynomial,
    tol: f64,
    measure: impl Fn(&[RootDisk]) -> f64,
) -> Result<Vec<RootDisk>, RootError> {
    if p.degree() == 0 {
        return Err(RootError::ConstantPolynomial);
    }
    let coeffs = as_f64(p);
    let mut approx = match aberth(&coeffs, iteration_budget(p)) {
        Ok(z) => z,
        Err(iters) => {
            if !bigpoly::is_square_free(p) {
                return Err(RootError::NotSquareFree);
            }
            return Err(RootError::NoConvergence(iters));
        }
    };
    let disks = enclose(&coeffs, &approx, Precision::Double);
    if measure(&disks) <= tol {
        return Ok(disks);
    }
    newton_polish(&coeffs, &mut approx, 3);
    let disks = enclose(&coeffs, &approx, Precision::DoubleDouble);
    let achieved = measure(&disks);
    if achieved <= tol {
        return Ok(disks);
    }
    if !bigpoly::is_square_free(p) {
        return Err(RootError::NotSquareFree);
    }
    Err(RootError::Uncertified { achieved, tol })
}

fn max_radius(disks: &[RootDisk]) -> f64 {
    disks.iter().map(|d| d.radius).fold(0.0, f64::max)
}

/// All roots with certified radii no larger than `tol`.
pub fn all_roots(p: &IntPolynomial, tol: f64) -> Result<Vec<RootDisk>, RootError> {
    certified(p, tol, max_radius)
}

/// House with a certified absolute error bound no larger than
/// [`HOUSE_TOL`].
pub fn house(p: &IntPolynomial) -> Result<(f64, f64), RootError> {
    house_with_tol(p, HOUSE_TOL)
}

pub fn house_with_tol(p: &IntPolynomial, tol: f64) -> Result<(f64, f64), RootError> {
    let disks = certified(p, tol, |d| house_from_disks(d).1)?;
    let (value, err) = house_from_disks(&disks);
    // Refine the moduli of the outermost roots so the reported value is
    // rounded from a double-double estimate rather than the f64 center.
    let coeffs = as_f64(p);
    let refined = disks
        .iter()
        .filter(|d| d.center.norm() + d.radius >= value - err)
        .map(|d| refined_modulus(&coeffs, d.center))
        .fold(f64::NEG_INFINITY, f64::max);
    if refined.is_finite() && (refined - value).abs() <= err {
        let hi = value + err;
        let lo = value - err;
        return Ok((refined, (hi - refined).max(refined - lo)));
    }
    Ok((value, err))
}

/// `|z - P(z)/P'(z)|` with the step and the modulus in double-double.
fn refined_modulus(coeffs: &[f64], z: Complex64) -> f64 {
    let (p, dp) = dd::eval_with_derivative(coeffs, z);
    let step = if dp.norm() > 0.0 {
        p / dp
    } else {
        Complex64::new(0.0, 0.0)
    };
    if !(step.re.is_finite() && step.im.is_finite()) {
        return z.norm();
    }
    let re = dd::Dd::from_f64(z.re).sub(dd::Dd::from_f64(step.re));
    let im = dd::Dd::from_f64(z.im).sub(dd::Dd::from_f64(step.im));
    let sq = re.mul(re).add(im.mul(im));
    let s = sq.to_f64().sqrt();
    if s == 0.0 {
        return 0.0;
    }
    // one Newton step for the square root: s + (sq - s^2) / (2s)
    let resid = sq
        .sub(dd::Dd::from_f64(s).mul(dd::Dd::from_f64(s)))
        .to_f64();
    s + resid / (2.0 * s)
}

/// Fast house bounds for screening: `(approximate value, certified lower
/// bound)` from double-precision residuals only.
pub fn house_screen(p: &IntPolynomial) -> Result<(f64, f64), RootError> {
    let coeffs = as_f64(p);
    let approx = aberth(&coeffs, iteration_budget(p)).map_err(RootError::NoConvergence)?;
    let disks = enclose(&coeffs, &approx, Precision::Double);
    let (value, err) = house_from_disks(&disks);
    let lower = disks
        .iter()
        .map(|d| d.center.norm() - d.radius)
        .fold(f64::NEG_INFINITY, f64::max);
    debug_assert!(lower <= value + err);
    Ok((value, lower))
}

/// Mahler measure `|lc| * prod max(1, |root|)` and its certified error.
pub fn mahler_measure(p: &IntPolynomial) -> Result<(f64, f64), RootError> {
    let disks = certified(p, HOUSE_TOL, |d| mahler_from_disks(p.leading(), d).1)?;
    Ok(mahler_from_disks(p.leading(), &disks))
}

/// Number of roots with modulus strictly greater than one, counted with
/// multiplicity. Square-free input is required.
pub fn count_outside_unit(p: &IntPolynomial) -> Result<usize, RootError> {
    if p.degree() == 0 {
        return Err(RootError::ConstantPolynomial);
    }
    if !bigpoly::is_square_free(p) {
        return Err(RootError::NotSquareFree);
    }
    if p.is_reciprocal() || p.is_antireciprocal() {
        return Ok(count_outside_reciprocal(p));
    }
    let disks = all_roots(p, 1e-9).or_else(|_| all_roots(p, 1e-6))?;
    let mut nu = 0;
    for d in &disks {
        let m = d.center.norm();
        if m - d.radius > 1.0 {
            nu += 1;
        } else if m + d.radius >= 1.0 {
            return Err(RootError::Undecidable);
        }
    }
    Ok(nu)
}

/// For (anti-)reciprocal square-free `P`: strip the factors `x - 1` and
/// `x + 1`, write the remaining palindromic part as `z^m Q(z + 1/z)` and
/// count real roots of `Q` in `(-2, 2)` exactly. Every other root of `Q`
/// corresponds to exactly one root of `P` outside the unit circle.
fn count_outside_reciprocal(p: &IntPolynomial) -> usize {
    let mut q = p.clone();
    for r in [1, -1] {
        while q.degree() > 0 && q.sign_at(r, 1) == 0 {
            q = q
                .div_exact(&IntPolynomial::x_minus(r))
                .expect("linear factor divides at a root");
        }
    }
    debug_assert!(q.is_reciprocal() && q.degree() % 2 == 0);
    let m = q.degree() / 2;
    if m == 0 {
        return 0;
    }
    let trace = trace_polynomial(&q);
    let on_circle = bigpoly::count_real_roots_open(&trace, -2, 2);
    m - on_circle
}

/// `Q` with `P(z) = z^m Q(z + 1/z)` for palindromic `P` of degree `2m`.
pub fn trace_polynomial(p: &IntPolynomial) -> bigpoly::BigPoly {
    let m = p.degree() / 2;
    let c = p.coeffs();
    // Dickson polynomials V_k(w) = z^k + z^{-k}.
    let mut v_prev: Vec<BigInt> = vec![BigInt::from(2)];
    let mut v_cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    let mut q: Vec<BigInt> = vec![BigInt::zero(); m + 1];
    q[0] += BigInt::from(c[m]);
    for k in 1..=m {
        let a = BigInt::from(c[m + k]);
        for (i, vi) in v_cur.iter().enumerate() {
            q[i] += &a * vi;
        }
        let mut next = vec![BigInt::zero(); v_cur.len() + 1];
        for (i, vi) in v_cur.iter().enumerate() {
            next[i + 1] += vi;
        }
        for (i, vi) in v_prev.iter().enumerate() {
            next[i] -= vi;
        }
        v_prev = std::mem::replace(&mut v_cur, next);
    }
    while q.last().is_some_and(|x| x.is_zero()) {
        q.pop();
    }
    q
}

/// Full summary: house, Mahler measure, nu and the root enclosures.
pub fn summarize(p: &IntPolynomial) -> Result<RootSummary, RootError> {
    let roots = certified(p, HOUSE_TOL, |d| {
        house_from_disks(d)
            .1
            .max(mahler_from_disks(p.leading(), d).1)
    })?;
    let (house, house_error) = house_from_disks(&roots);
    let (mahler, mahler_error) = mahler_from_disks(p.leading(), &roots);
    let nu = count_outside_unit(p)?;
    Ok(RootSummary {
        house,
        house_error,
        nu,
        mahler,
        mahler_error,
        roots,
    })
}

/// A real root bracketed by exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedRealRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub value: f64,
}

fn sign_at_rational(p: &IntPolynomial, x: &BigRational) -> i32 {
    let v = p.evaluate_exact(x.numer(), x.denom());
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn rat_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// If `P(lo)` and `P(hi)` have strictly opposite exact signs, bisects to a
/// bracket of width at most `1e-12`.
pub fn real_root_in_interval(
    p: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
) -> Option<CertifiedRealRoot> {
    if lo >= hi {
        return None;
    }
    let s_lo = sign_at_rational(p, lo);
    let s_hi = sign_at_rational(p, hi);
    if s_lo * s_hi >= 0 {
        return None;
    }
    let width = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
    let two = BigRational::from_integer(BigInt::from(2));
    let (mut a, mut b) = (lo.clone(), hi.clone());
    while &b - &a > width {
        let mid = (&a + &b) / &two;
        match sign_at_rational(p, &mid) {
            0 => {
                a = mid.clone();
                b = mid;
                break;
            }
            s if s == s_lo => a = mid,
            _ => b = mid,
        }
    }
    let value = rat_to_f64(&((&a + &b) / &two));
    Some(CertifiedRealRoot {
        lo: a,
        hi: b,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Encoding};

    fn full(s: &str) -> IntPolynomial {
        parse_poly(s, Encoding::Full).unwrap()
    }

    fn half(s: &str) -> IntPolynomial {
        parse_poly(s, Encoding::Half).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn quadratic_roots() {
        let disks = all_roots(&half("1 3"), DEFAULT_TOL).unwrap();
        let mut re: Vec<f64> = disks.iter().map(|d| d.center.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s5 = 5f64.sqrt();
        assert!((re[0] - (-3.0 - s5) / 2.0).abs() < 1e-13);
        assert!((re[1] - (-3.0 + s5) / 2.0).abs() < 1e-13);
        assert!(disks.iter().all(|d| d.radius <= DEFAULT_TOL));
    }

    #[test]
    fn linear_root() {
        let disks = all_roots(&full("1 -2"), DEFAULT_TOL).unwrap();
        assert_eq!(disks.len(), 1);
        assert_eq!(disks[0].center.re, 2.0);
    }

    #[test]
    fn houses_from_table_one() {
        let (h, e) = house(&half("1 3")).unwrap();
        assert!((h - 2.61803398874989).abs() < 1e-12 && e <= 1e-12);
        let (h, _) = house(&half("1 1 3")).unwrap();
        assert!((h - 1.53922233842043).abs() < 1e-12);
        let (h, _) = house(&half("1 0 0 1 1")).unwrap();
        assert!((h - 1.16928302978955).abs() < 1e-12);
    }

    #[test]
    fn binomial_houses() {
        for d in [2usize, 3, 5] {
            let mut c = vec![0i64; d + 1];
            c[0] = -2;
            c[d] = 1;
            let (h, e) = house(&IntPolynomial::new(c).unwrap()).unwrap();
            assert!((h - 2f64.powf(1.0 / d as f64)).abs() <= e + 1e-15, "d={d}");
        }
    }

    #[test]
    fn mahler_examples() {
        let (m, _) = mahler_measure(&full("1 0 -1 -1")).unwrap();
        assert!((m - 1.324717957244746).abs() < 1e-10);
        let (m, _) = mahler_measure(&half("1 3")).unwrap();
        assert!((m - 2.61803398874989).abs() < 1e-10);
        let (m, _) = mahler_measure(&full("1 1 1")).unwrap();
        assert!((m - 1.0).abs() < 1e-10);
    }

    #[test]
    fn nu_examples() {
        assert_eq!(count_outside_unit(&half("1 0 0 1 1")).unwrap(), 2);
        assert_eq!(count_outside_unit(&half("1 0 0 0 1 1 0 1")).unwrap(), 4);
        assert_eq!(count_outside_unit(&full("1 -2")).unwrap(), 1);
        assert_eq!(count_outside_unit(&half("1 3")).unwrap(), 1);
        // odd-degree palindromic and anti-palindromic inputs
        assert_eq!(
            count_outside_unit(&full("1 3 3 1")).unwrap_err(),
            RootError::NotSquareFree
        );
        assert_eq!(count_outside_unit(&full("1 4 4 1")).unwrap(), 1);
        assert_eq!(count_outside_unit(&full("1 3 0 -3 -1")).unwrap(), 1);
        // non-reciprocal with a root on the circle
        assert_eq!(
            count_outside_unit(&full("1 0 -1 -1").mul(&full("1 0 1"))).unwrap_err(),
            RootError::Undecidable
        );
    }

    #[test]
    fn nu_agrees_with_numeric_count() {
        for s in [
            "1 1 -1 -3",
            "1 1 0 -1 -1 -1",
            "1 1 1 1 1 2 3",
            "1 0 1 1 1 1 2 2 1 3",
        ] {
            let p = half(s);
            let disks = all_roots(&p, 1e-10).unwrap();
            let numeric = disks
                .iter()
                .filter(|d| d.center.norm() > 1.0 + 1e-8)
                .count();
            assert_eq!(count_outside_unit(&p).unwrap(), numeric, "{s}");
        }
    }

    #[test]
    fn rejects_repeated_roots() {
        let p = half("1 3").mul(&half("1 3"));
        assert_eq!(house(&p).unwrap_err(), RootError::NotSquareFree);
    }

    #[test]
    fn real_root_brackets() {
        let r = real_root_in_interval(&full("1 -2"), &rat(3, 2), &rat(3, 1)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        let lehmer1 = half("1 -1 -1 -1 0 1");
        let r = real_root_in_interval(&lehmer1, &rat(3, 2), &rat(2, 1)).unwrap();
        assert!(r.value > 1.5 && r.value < 2.0);
        assert!(&r.hi - &r.lo <= rat(1, 1_000_000_000_000));
        assert!(real_root_in_interval(&full("1 0 1"), &rat(0, 1), &rat(1, 1)).is_none());
        // endpoint root is not a sign change
        assert!(real_root_in_interval(&full("1 -2"), &rat(2, 1), &rat(3, 1)).is_none());
    }

    #[test]
    fn trace_polynomial_of_quadratic() {
        // x^2 + 3x + 1 = x (w + 3)
        let q = trace_polynomial(&half("1 3"));
        assert_eq!(q, vec![BigInt::from(3), BigInt::from(1)]);
        // x^4 + 1 = x^2 (w^2 - 2)
        let q = trace_polynomial(&half("1 0 0"));
        assert_eq!(q, vec![BigInt::from(-2), BigInt::zero(), BigInt::from(1)]);
    }
}
