//! Distinct-degree factorisation over small prime fields, used only to
//! constrain which factor degrees an integer factorisation could have.

use crate::poly::IntPolynomial;

type Fp = Vec<u64>;

fn trim(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn reduce(p: &IntPolynomial, q: u64) -> Fp {
    let mut v: Fp = p
        .coeffs()
        .iter()
        .map(|&c| c.rem_euclid(q as i64) as u64)
        .collect();
    trim(&mut v);
    v
}

fn inv(a: u64, q: u64) -> u64 {
    pow(a, q - 2, q)
}

fn pow(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1u64;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % q;
        }
        a = a * a % q;
        e >>= 1;
    }
    r
}

fn rem(a: &Fp, b: &Fp, q: u64) -> Fp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let li = inv(b[db], q);
    while r.len() > db {
        let top = *r.last().unwrap() * li % q;
        let shift = r.len() - 1 - db;
        if top != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + q - top * bj % q) % q;
            }
        }
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn div(a: &Fp, b: &Fp, q: u64) -> Fp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let li = inv(b[db], q);
    let mut quot = vec![0u64; a.len() - db];
    while r.len() > db {
        let top = *r.last().unwrap() * li % q;
        let shift = r.len() - 1 - db;
        quot[shift] = top;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + q - top * bj % q) % q;
        }
        r.pop();
    }
    trim(&mut quot);
    quot
}

fn mul_mod(a: &Fp, b: &Fp, m: &Fp, q: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    trim(&mut out);
    rem(&out, m, q)
}

fn pow_mod(base: &Fp, mut e: u64, m: &Fp, q: u64) -> Fp {
    let mut result: Fp = vec![1];
    let mut b = rem(base, m, q);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, m, q);
        }
        b = mul_mod(&b, &b, m, q);
        e >>= 1;
    }
    result
}

fn gcd(a: &Fp, b: &Fp, q: u64) -> Fp {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, q);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let li = inv(l, q);
        for c in x.iter_mut() {
            *c = *c * li % q;
        }
    }
    x
}

fn sub(a: &Fp, b: &Fp, q: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out: Fp = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + q - y) % q
        })
        .collect();
    trim(&mut out);
    out
}

fn derivative(a: &Fp, q: u64) -> Fp {
    let mut d: Fp = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * (k as u64 % q) % q)
        .collect();
    trim(&mut d);
    d
}

/// Degrees of the irreducible factors of `p mod q`, or `None` when the
/// reduction drops degree or is not square-free.
pub fn factor_degrees(p: &IntPolynomial, q: u64) -> Option<Vec<usize>> {
    let f = reduce(p, q);
    if f.len() != p.coeffs().len() {
        return None;
    }
    let g = gcd(&f, &derivative(&f, q), q);
    if g.len() > 1 {
        return None;
    }
    let mut degrees = Vec::new();
    let mut rest = f;
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut i = 1usize;
    while rest.len() > 2 * i {
        h = pow_mod(&h, q, &rest, q);
        let g = gcd(&rest, &sub(&h, &x, q), q);
        let dg = g.len() - 1;
        if dg > 0 {
            degrees.extend(std::iter::repeat_n(i, dg / i));
            rest = div(&rest, &g, q);
            h = rem(&h, &rest, q);
        }
        i += 1;
    }
    if rest.len() > 1 {
        degrees.push(rest.len() - 1);
    }
    Some(degrees)
}

/// Subset sums of a factor degree multiset, as a membership vector over
/// `0..=total`.
pub fn achievable_degrees(degrees: &[usize], total: usize) -> Vec<bool> {
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=total).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

pub fn small_primes(limit: u64) -> impl Iterator<Item = u64> {
    (2..=limit).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}
