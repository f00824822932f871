use std::sync::OnceLock;

use crate::poly::IntPolynomial;

pub fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: usize) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn x_pow_minus_one(m: usize) -> IntPolynomial {
    let mut c = vec![0i64; m + 1];
    c[0] = -1;
    c[m] = 1;
    IntPolynomial::new(c).unwrap()
}

/// The `n`-th cyclotomic polynomial, from the Möbius product
/// `prod_{m | n} (x^m - 1)^{mu(n/m)}`.
pub fn cyclotomic(n: usize) -> IntPolynomial {
    assert!(n >= 1);
    let divisors: Vec<usize> = (1..=n).filter(|m| n % m == 0).collect();
    let mut num = IntPolynomial::new(vec![1]).unwrap();
    for &m in &divisors {
        if mobius(n / m) == 1 {
            num = num.mul(&x_pow_minus_one(m));
        }
    }
    for &m in &divisors {
        if mobius(n / m) == -1 {
            num = num
                .div_exact(&x_pow_minus_one(m))
                .expect("Möbius product is exact");
        }
    }
    num
}

/// All `n` with `phi(n) <= max_degree`.
fn indices_up_to(max_degree: usize) -> Vec<usize> {
    // phi(n) >= sqrt(n / 2), so n <= 2 max_degree^2 suffices.
    let limit = 2 * max_degree * max_degree + 2;
    (1..=limit)
        .filter(|&n| euler_phi(n) <= max_degree)
        .collect()
}

const TABLE_DEGREE: usize = 64;

fn table() -> &'static [(usize, IntPolynomial)] {
    static TABLE: OnceLock<Vec<(usize, IntPolynomial)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        indices_up_to(TABLE_DEGREE)
            .into_iter()
            .map(|n| (n, cyclotomic(n)))
            .collect()
    })
}

/// `(n, Phi_n)` for every cyclotomic polynomial of degree at most
/// `max_degree`, ordered by `n`.
pub fn cyclotomics_up_to(max_degree: usize) -> Vec<(usize, IntPolynomial)> {
    if max_degree <= TABLE_DEGREE {
        table()
            .iter()
            .filter(|(_, p)| p.degree() <= max_degree)
            .cloned()
            .collect()
    } else {
        indices_up_to(max_degree)
            .into_iter()
            .map(|n| (n, cyclotomic(n)))
            .collect()
    }
}
