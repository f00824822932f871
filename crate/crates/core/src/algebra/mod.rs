//! Exact gates used by the search and the table verifier: root-of-unity
//! detection, irreducibility over the integers, and the combined
//! classification.
//!
//! Every "reducible" verdict carries a witness factor that has been checked
//! by exact division. Irreducibility proofs combine a rational-root check,
//! cyclotomic peeling, factor-degree patterns modulo small primes and, for
//! the degrees those patterns leave open, reconstruction of candidate
//! factors from clusters of certified roots.

pub mod cyclotomic;
pub mod modp;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::bigpoly;
use crate::poly::IntPolynomial;
use crate::roots;

pub use cyclotomic::{cyclotomic, cyclotomics_up_to, euler_phi};

/// Outcome of [`minimal_gate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// Product of cyclotomic polynomials; carries the indices `n` of the
    /// factors `Phi_n`, with multiplicity, ascending.
    RootOfUnity(Vec<usize>),
    /// Has a proper factor, given as witness.
    Reducible(IntPolynomial),
    /// Irreducible and not a root-of-unity polynomial.
    Candidate,
}

impl Classification {
    pub fn is_candidate(&self) -> bool {
        matches!(self, Classification::Candidate)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::RootOfUnity(_) => "RootOfUnity",
            Classification::Reducible(_) => "Reducible",
            Classification::Candidate => "Candidate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible(IntPolynomial),
}

fn normalize_sign(p: &IntPolynomial) -> IntPolynomial {
    if p.leading() < 0 {
        p.neg()
    } else {
        p.clone()
    }
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// One root-squaring step: the monic polynomial whose roots are the
/// squares of the roots of `p`, from `(-1)^d p(x) p(-x) = G(x^2)`.
fn graeffe_step(p: &[BigInt]) -> Vec<BigInt> {
    let d = p.len() - 1;
    let even: Vec<BigInt> = p.iter().step_by(2).cloned().collect();
    let odd: Vec<BigInt> = p.iter().skip(1).step_by(2).cloned().collect();
    let mut out = vec![BigInt::zero(); d + 1];
    for (i, a) in even.iter().enumerate() {
        for (j, b) in even.iter().enumerate() {
            if i + j <= d {
                out[i + j] += a * b;
            }
        }
    }
    for (i, a) in odd.iter().enumerate() {
        for (j, b) in odd.iter().enumerate() {
            if i + j < d {
                out[i + j + 1] -= a * b;
            }
        }
    }
    if d % 2 == 1 {
        for c in out.iter_mut() {
            *c = -c.clone();
        }
    }
    out
}

/// True iff every root of the monic polynomial `p` is a root of unity.
///
/// Decided exactly by iterating root squaring: for a product of cyclotomic
/// polynomials the orbit is bounded (coefficients never exceed the
/// binomial coefficients) and returns to an earlier polynomial; otherwise
/// some coefficient eventually exceeds its binomial bound.
pub fn is_root_of_unity_poly(p: &IntPolynomial) -> bool {
    if p.degree() == 0 || p.leading().abs() != 1 {
        return false;
    }
    if p.constant().abs() != 1 {
        return false;
    }
    let p = normalize_sign(p);
    if let Ok((_, lower)) = roots::house_screen(&p) {
        if lower > 1.0 + 1e-8 {
            return false;
        }
    }
    let bound = binomial_row(p.degree());
    let mut current = bigpoly::from_int(&p);
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    loop {
        if current.iter().zip(&bound).any(|(c, b)| c.abs() > *b) {
            return false;
        }
        if !seen.insert(current.clone()) {
            return true;
        }
        current = graeffe_step(&current);
    }
}

/// Cyclotomic indices of a root-of-unity polynomial, with multiplicity.
pub fn cyclotomic_indices(p: &IntPolynomial) -> Option<Vec<usize>> {
    let mut rest = normalize_sign(p);
    let mut out = Vec::new();
    for (n, phi) in cyclotomics_up_to(p.degree()) {
        while rest.degree() >= phi.degree() {
            match rest.div_exact(&phi) {
                Some(q) => {
                    out.push(n);
                    rest = q;
                }
                None => break,
            }
        }
    }
    (rest.degree() == 0 && rest.constant().abs() == 1).then_some(out)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Factor degrees still possible after intersecting the subset sums of
/// the factor-degree patterns modulo small primes. Returns the open
/// degrees in `1..=deg/2`.
fn open_factor_degrees(p: &IntPolynomial) -> Vec<usize> {
    let d = p.degree();
    let mut allowed = vec![true; d + 1];
    let mut stale = 0;
    for q in modp::small_primes(4000) {
        let Some(degrees) = modp::factor_degrees(p, q) else {
            continue;
        };
        let reach = modp::achievable_degrees(&degrees, d);
        let mut changed = false;
        for k in 1..d {
            if allowed[k] && !reach[k] {
                allowed[k] = false;
                changed = true;
            }
        }
        if (1..d).all(|k| !allowed[k]) {
            return Vec::new();
        }
        stale = if changed { 0 } else { stale + 1 };
        if stale >= 40 {
            break;
        }
    }
    (1..=d / 2).filter(|&k| allowed[k]).collect()
}

/// Real factors of degree 1 or 2 built from one real root or a conjugate
/// pair, in ascending-coefficient form.
fn conjugate_units(roots: &[Complex64], tol: f64) -> Vec<Vec<f64>> {
    let mut used = vec![false; roots.len()];
    let mut units = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = roots[i];
        if z.im.abs() <= tol {
            units.push(vec![-z.re, 1.0]);
            continue;
        }
        let partner = (0..roots.len()).filter(|&j| !used[j]).min_by(|&a, &b| {
            let da = (roots[a] - z.conj()).norm();
            let db = (roots[b] - z.conj()).norm();
            da.partial_cmp(&db).unwrap()
        });
        if let Some(j) = partner {
            used[j] = true;
        }
        units.push(vec![z.norm_sqr(), -2.0 * z.re, 1.0]);
    }
    units
}

fn mul_f64(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

struct SubsetSearch<'a> {
    p: &'a IntPolynomial,
    units: Vec<Vec<f64>>,
    target: usize,
}

impl SubsetSearch<'_> {
    fn run(&self, start: usize, degree: usize, acc: &[f64]) -> Option<IntPolynomial> {
        if degree == self.target {
            return self.try_factor(acc);
        }
        for k in start..self.units.len() {
            let u = &self.units[k];
            let du = u.len() - 1;
            if degree + du > self.target {
                continue;
            }
            let next = mul_f64(acc, u);
            if let Some(f) = self.run(k + 1, degree + du, &next) {
                return Some(f);
            }
        }
        None
    }

    fn try_factor(&self, acc: &[f64]) -> Option<IntPolynomial> {
        let mut coeffs = Vec::with_capacity(acc.len());
        for &c in acc {
            let r = c.round();
            if (c - r).abs() > 1e-4 || r.abs() > 9.0e15 {
                return None;
            }
            coeffs.push(r as i64);
        }
        let c0 = coeffs[0];
        let a0 = self.p.constant();
        if c0 == 0 || a0 % c0 != 0 {
            return None;
        }
        let f = IntPolynomial::new(coeffs).ok()?;
        self.p.div_exact(&f).map(|_| f)
    }
}

/// Exact irreducibility verdict for monic (or leading -1) polynomials.
pub fn is_irreducible(p: &IntPolynomial) -> Irreducibility {
    let p = normalize_sign(p);
    let d = p.degree();
    if d <= 1 {
        return Irreducibility::Irreducible;
    }

    // Repeated factors.
    let big = bigpoly::from_int(&p);
    let g = bigpoly::gcd(&big, &bigpoly::derivative(&big));
    if bigpoly::degree(&g).unwrap_or(0) > 0 {
        if let Some(w) = bigpoly::to_int(&g) {
            if p.div_exact(&w).is_some() {
                return Irreducibility::Reducible(w);
            }
        }
    }

    // Rational roots: for monic P they are integers dividing a0.
    if p.constant() == 0 {
        return Irreducibility::Reducible(IntPolynomial::x_minus(0));
    }
    for r in divisors(p.constant().unsigned_abs()) {
        for s in [r as i64, -(r as i64)] {
            if p.sign_at(s, 1) == 0 {
                return Irreducibility::Reducible(IntPolynomial::x_minus(s));
            }
        }
    }

    // Cyclotomic factors.
    for (_, phi) in cyclotomics_up_to(d - 1) {
        if phi.degree() >= 2 && p.div_exact(&phi).is_some() {
            return Irreducibility::Reducible(phi);
        }
    }

    let open = open_factor_degrees(&p);
    if open.is_empty() {
        return Irreducibility::Irreducible;
    }

    let approx = match roots::all_roots(&p, 1e-9) {
        Ok(disks) => disks.iter().map(|d| d.center).collect::<Vec<_>>(),
        Err(_) => roots::approximate_roots(&p).expect("square-free input converges"),
    };
    let search = |target| SubsetSearch {
        p: &p,
        units: conjugate_units(&approx, 1e-7),
        target,
    };
    for k in open {
        if let Some(f) = search(k).run(0, 0, &[1.0]) {
            return Irreducibility::Reducible(f);
        }
    }
    Irreducibility::Irreducible
}

/// Classification used by the search: root-of-unity polynomials first,
/// then reducible ones, otherwise a genuine candidate.
pub fn minimal_gate(p: &IntPolynomial) -> Classification {
    if is_root_of_unity_poly(p) {
        let idx = cyclotomic_indices(p).expect("root-of-unity polynomial factors into cyclotomics");
        return Classification::RootOfUnity(idx);
    }
    match is_irreducible(p) {
        Irreducibility::Irreducible => Classification::Candidate,
        Irreducibility::Reducible(w) => Classification::Reducible(w),
    }
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

    #[test]
    fn root_of_unity_examples() {
        assert!(is_root_of_unity_poly(&full("1 1 1")));
        assert!(!is_root_of_unity_poly(&half("1 3")));
        assert!(is_root_of_unity_poly(&full("1 0 0 0 1")));
        // repeated cyclotomic factors and a mix
        let p = full("1 1 1").mul(&full("1 1 1")).mul(&cyclotomic(12));
        assert!(is_root_of_unity_poly(&p));
        assert_eq!(cyclotomic_indices(&p), Some(vec![3, 3, 12]));
        // Lehmer's polynomial: a Salem number, most roots on the circle
        assert!(!is_root_of_unity_poly(&half("1 1 0 -1 -1 -1")));
        // zero constant term
        assert!(!is_root_of_unity_poly(&full("1 1 0")));
    }

    #[test]
    fn every_small_cyclotomic_is_detected() {
        for (n, phi) in cyclotomics_up_to(40) {
            assert!(is_root_of_unity_poly(&phi), "Phi_{n}");
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert_eq!(is_irreducible(&half("1 1 3")), Irreducibility::Irreducible);
        assert_eq!(is_irreducible(&half("1 0 3")), Irreducibility::Irreducible);
        let p = half("1 3").mul(&full("1 1 1"));
        match is_irreducible(&p) {
            Irreducibility::Reducible(w) => {
                assert!(p.div_exact(&w).is_some());
                assert!(w == half("1 3") || w == full("1 1 1"));
            }
            other => panic!("expected reducible, got {other:?}"),
        }
    }

    #[test]
    fn reducible_without_cyclotomic_or_linear_factors() {
        // theta polynomial times its reciprocal
        let p = full("1 0 -1 -1").mul(&full("1 1 0 -1"));
        match is_irreducible(&p) {
            Irreducibility::Reducible(w) => {
                assert_eq!(w.degree(), 3);
                assert!(p.div_exact(&w).is_some());
            }
            other => panic!("expected reducible, got {other:?}"),
        }
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2), reducible mod every prime
        // and over Z, without rational roots
        let p = full("1 0 0 0 4");
        assert!(matches!(is_irreducible(&p), Irreducibility::Reducible(_)));
    }

    #[test]
    fn gate_examples() {
        assert_eq!(
            minimal_gate(&full("1 1 1")),
            Classification::RootOfUnity(vec![3])
        );
        let sq = half("1 3").mul(&half("1 3"));
        assert_eq!(minimal_gate(&sq), Classification::Reducible(half("1 3")));
        assert_eq!(
            minimal_gate(&half("1 0 1 1 0 1")),
            Classification::Candidate
        );
    }

    #[test]
    fn irreducible_table_polynomials_of_higher_degree() {
        for s in [
            "1 0 1 1 0 1 0 0 0 0 0 0 1 0 1 1 0 1",
            "1 1 1 1 0 -1 -2 -2 -2 -1 1 2 3 2 1 -1 -3 -3",
            "1 0 -1 1 0 -1 1 -1 -1 1 -1 0 1 -1 1 1 -1",
        ] {
            assert_eq!(is_irreducible(&half(s)), Irreducibility::Irreducible, "{s}");
        }
    }
}
