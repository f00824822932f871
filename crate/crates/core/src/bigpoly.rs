//! Arbitrary-precision integer polynomial helpers: pseudo-division,
//! primitive gcd and Sturm sequences. Coefficients are ascending and
//! trimmed (no zero high-order terms); the empty vector is zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::IntPolynomial;

pub type BigPoly = Vec<BigInt>;

pub fn from_int(p: &IntPolynomial) -> BigPoly {
    p.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Converts back when every coefficient fits into `i64`.
pub fn to_int(p: &BigPoly) -> Option<IntPolynomial> {
    let coeffs = p
        .iter()
        .map(|c| i64::try_from(c).ok())
        .collect::<Option<Vec<_>>>()?;
    IntPolynomial::new(coeffs).ok()
}

fn trim(p: &mut BigPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &BigPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn derivative(p: &BigPoly) -> BigPoly {
    let mut d: BigPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    trim(&mut d);
    d
}

pub fn content(p: &BigPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub fn primitive_part(p: &BigPoly) -> BigPoly {
    let mut c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    if p.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder scaled by `|lc(b)|^(deg a - deg b + 1)`, so the sign
/// of the result matches the true remainder's sign pattern.
pub fn signed_prem(a: &BigPoly, b: &BigPoly) -> BigPoly {
    let db = degree(b).expect("division by zero polynomial");
    let lc = b[db].clone();
    let mut r = a.clone();
    let Some(da) = degree(a) else {
        return r;
    };
    if da < db {
        return r;
    }
    let steps = da - db + 1;
    let mut performed = 0u32;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let top = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &top * bj;
        }
        trim(&mut r);
        performed += 1;
    }
    // Bring the scaling up to lc^steps, then fix the sign to |lc|^steps.
    for _ in performed..steps as u32 {
        for c in r.iter_mut() {
            *c *= &lc;
        }
    }
    if lc.is_negative() && steps % 2 == 1 {
        for c in r.iter_mut() {
            *c = -c.clone();
        }
    }
    r
}

/// Primitive gcd over the integers (equivalently over Q up to a unit).
pub fn gcd(a: &BigPoly, b: &BigPoly) -> BigPoly {
    let (mut x, mut y) = (primitive_part(a), primitive_part(b));
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = signed_prem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    x
}

pub fn is_square_free(p: &IntPolynomial) -> bool {
    let b = from_int(p);
    let g = gcd(&b, &derivative(&b));
    degree(&g).unwrap_or(0) == 0
}

pub fn eval_int(p: &BigPoly, x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Sturm sequence with positive rescaling of each remainder.
pub fn sturm_sequence(p: &BigPoly) -> Vec<BigPoly> {
    let mut seq = vec![p.clone(), derivative(p)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        if degree(&seq[n - 1]) == Some(0) {
            break;
        }
        let r = signed_prem(&seq[n - 2], &seq[n - 1]);
        let mut neg: BigPoly = r.iter().map(|c| -c).collect();
        trim(&mut neg);
        let c = content(&neg);
        if !c.is_zero() && !c.is_one() {
            neg = neg.iter().map(|x| x / &c).collect();
        }
        if neg.is_empty() {
            break;
        }
        seq.push(neg);
    }
    seq
}

fn sign_changes(seq: &[BigPoly], x: &BigInt) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|q| {
            let v = eval_int(q, x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the open interval `(a, b)` for
/// integers `a < b` that are not themselves roots.
pub fn count_real_roots_open(p: &BigPoly, a: i64, b: i64) -> usize {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    debug_assert!(!eval_int(p, &a).is_zero() && !eval_int(p, &b).is_zero());
    let seq = sturm_sequence(p);
    sign_changes(&seq, &a) - sign_changes(&seq, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Encoding};

    fn bp(s: &str) -> BigPoly {
        from_int(&parse_poly(s, Encoding::Full).unwrap())
    }

    #[test]
    fn gcd_finds_common_factor() {
        // (x^2+3x+1)(x+1) and (x^2+3x+1)(x-2)
        let a = bp("1 4 4 1");
        let b = bp("1 1 -5 -2");
        assert_eq!(gcd(&a, &b), bp("1 3 1"));
        assert_eq!(gcd(&bp("1 0 1"), &bp("1 1")), bp("1"));
    }

    #[test]
    fn square_free_detection() {
        let p = parse_poly("1 3 1", Encoding::Full).unwrap();
        assert!(is_square_free(&p));
        assert!(!is_square_free(&p.mul(&p)));
        assert!(!is_square_free(
            &parse_poly("1 2 1", Encoding::Full).unwrap()
        ));
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x+1)(x-3) has two roots in (-2, 2)
        let p = bp("1 -3 -1 3");
        assert_eq!(count_real_roots_open(&p, -2, 2), 2);
        assert_eq!(count_real_roots_open(&p, -2, 4), 3);
        assert_eq!(count_real_roots_open(&bp("1 0 1"), -5, 5), 0);
        // x^3 - x - 1: single real root near 1.3247
        assert_eq!(count_real_roots_open(&bp("1 0 -1 -1"), 1, 2), 1);
        // negative leading coefficient
        assert_eq!(count_real_roots_open(&bp("-1 0 4"), -3, 3), 2);
    }

    #[test]
    fn signed_prem_matches_division_for_monic() {
        let r = signed_prem(&bp("1 0 0 -2"), &bp("1 -1"));
        assert_eq!(r, vec![BigInt::from(-1)]);
    }
}
