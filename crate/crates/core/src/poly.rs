//! Exact integer polynomials.
//!
//! Coefficients are stored in ascending order of exponent. Every textual
//! format (the "full" and "half" encodings) lists coefficients from the
//! highest degree down; conversion happens only in [`parse_poly`] and the
//! formatting helpers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// How a polynomial is written as a list of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    /// All `d + 1` coefficients, highest degree first.
    Full,
    /// Monic palindromic shorthand: coefficients of `x^d` down to `x^{d/2}`.
    Half,
}

impl FromStr for Encoding {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Encoding::Full),
            "half" => Ok(Encoding::Half),
            other => Err(PolyError::Parse(format!("unknown encoding `{other}`"))),
        }
    }
}

/// A univariate polynomial with `i64` coefficients and nonzero leading term.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    /// Builds a polynomial from ascending coefficients. Trailing zeros
    /// (zero high-order terms) are trimmed; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<i64>) -> Result<Self, PolyError> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(PolyError::Zero);
        }
        Ok(Self { coeffs })
    }

    /// Builds from descending coefficients, as printed in tables.
    pub fn from_descending(desc: &[i64]) -> Result<Self, PolyError> {
        if desc.is_empty() {
            return Err(PolyError::Empty);
        }
        if desc[0] == 0 {
            return Err(PolyError::LeadingZero);
        }
        Ok(Self {
            coeffs: desc.iter().rev().copied().collect(),
        })
    }

    pub fn monomial(degree: usize, c: i64) -> Self {
        assert!(c != 0, "monomial coefficient must be nonzero");
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self { coeffs }
    }

    pub fn x_minus(c: i64) -> Self {
        Self {
            coeffs: vec![-c, 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ascending coefficients; `coeffs()[0]` is the constant term.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs[self.degree()]
    }

    pub fn constant(&self) -> i64 {
        self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Maximum absolute coefficient.
    pub fn height(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Descending coefficient list.
    pub fn descending(&self) -> Vec<i64> {
        self.coeffs.iter().rev().copied().collect()
    }

    /// `x^d P(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c).expect("reversal of a nonzero polynomial is nonzero")
    }

    /// `P(-x)`.
    pub fn negate_variable(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
            .collect();
        Self { coeffs }
    }

    /// Multiplies by -1.
    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn derivative(&self) -> Option<Self> {
        if self.degree() == 0 {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as i64)
            .collect();
        Self::new(coeffs).ok()
    }

    /// Product; panics on `i64` overflow, which cannot occur at the
    /// degrees and heights this crate works with.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).expect("coefficient overflow");
                out[i + j] = out[i + j].checked_add(t).expect("coefficient overflow");
            }
        }
        Self { coeffs: out }
    }

    /// Polynomial division `self = q * divisor + r` over the integers,
    /// returning `(q, r)`. Fails if some step needs a non-integral quotient
    /// coefficient, so it is exact for monic divisors.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Vec<i64>)> {
        let n = self.degree();
        let m = divisor.degree();
        let lc = divisor.leading() as i128;
        let mut rem: Vec<i128> = self.coeffs.iter().map(|&c| c as i128).collect();
        if n < m {
            return Some((Self { coeffs: vec![0] }, self.coeffs.clone()));
        }
        let mut quot = vec![0i128; n - m + 1];
        for k in (0..=n - m).rev() {
            let top = rem[k + m];
            if top == 0 {
                continue;
            }
            if top % lc != 0 {
                return None;
            }
            let q = top / lc;
            quot[k] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].checked_sub(q.checked_mul(d as i128)?)?;
            }
        }
        let to_i64 =
            |v: &[i128]| -> Option<Vec<i64>> { v.iter().map(|&c| i64::try_from(c).ok()).collect() };
        let mut q = to_i64(&quot)?;
        while q.len() > 1 && q.last() == Some(&0) {
            q.pop();
        }
        let mut r = to_i64(&rem[..m.max(1).min(rem.len())])?;
        if m == 0 {
            r = vec![0];
        }
        while r.len() > 1 && r.last() == Some(&0) {
            r.pop();
        }
        Some((Self { coeffs: q }, r))
    }

    /// Exact quotient `self / divisor`, or `None` when the remainder is
    /// nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.iter().all(|&c| c == 0) && q.coeffs.iter().any(|&c| c != 0) {
            Some(q)
        } else {
            None
        }
    }

    /// Floating-point evaluation by Horner's rule.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }

    /// True iff `a_k = a_{d-k}` for all `k`.
    pub fn is_reciprocal(&self) -> bool {
        let d = self.degree();
        (0..=d / 2).all(|k| self.coeffs[k] == self.coeffs[d - k])
    }

    /// True iff `a_k = -a_{d-k}` for all `k`.
    pub fn is_antireciprocal(&self) -> bool {
        let d = self.degree();
        (0..=d).all(|k| self.coeffs[k] == -self.coeffs[d - k])
    }

    /// `P(x^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1, "compose_power needs k >= 1");
        let mut coeffs = vec![0; self.degree() * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Self { coeffs }
    }

    /// Largest `k` with `P(x) = Q(x^k)`, together with `Q`.
    pub fn primitivity_decompose(&self) -> (Self, usize) {
        let k = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c != 0)
            .fold(0usize, |g, (e, _)| g.gcd(&e));
        if k <= 1 {
            return (self.clone(), 1);
        }
        let coeffs = self.coeffs.iter().step_by(k).copied().collect();
        (Self { coeffs }, k)
    }

    pub fn is_primitive(&self) -> bool {
        self.primitivity_decompose().1 == 1
    }

    /// `den^d * P(num/den)`, an exact integer with the sign of `P(num/den)`
    /// whenever `den > 0`.
    pub fn evaluate_exact(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // Horner on the homogenised form: sum a_k num^k den^(d-k).
        for &c in self.coeffs.iter().rev() {
            acc = acc * num + BigInt::from(c) * &den_pow;
            den_pow *= den;
        }
        acc
    }

    /// Exact sign of `P(num/den)` for `den > 0`, with an `i128` fast path.
    pub fn sign_at(&self, num: i64, den: i64) -> i32 {
        debug_assert!(den > 0);
        if let Some(v) = self.eval_homogeneous_i128(num, den) {
            return v.signum() as i32;
        }
        let v = self.evaluate_exact(&BigInt::from(num), &BigInt::from(den));
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    fn eval_homogeneous_i128(&self, num: i64, den: i64) -> Option<i128> {
        let (num, den) = (num as i128, den as i128);
        let mut acc: i128 = 0;
        let mut den_pow: i128 = 1;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(num)?
                .checked_add((c as i128).checked_mul(den_pow)?)?;
            den_pow = den_pow.checked_mul(den)?;
        }
        Some(acc)
    }

    /// Formats in the given encoding. Half encoding requires a monic
    /// palindromic polynomial of even degree.
    pub fn format(&self, encoding: Encoding) -> Result<String, PolyError> {
        let list = match encoding {
            Encoding::Full => self.descending(),
            Encoding::Half => HalfSpec::from_poly(self)?.half().to_vec(),
        };
        Ok(join(&list))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial[{}]", join(&self.descending()))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..=self.degree()).rev() {
            let c = self.coeffs[k];
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{a}x^{k}")?,
            }
        }
        Ok(())
    }
}

fn join(list: &[i64]) -> String {
    list.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Monic palindromic polynomial of even degree given by its upper half.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpec {
    half: Vec<i64>,
}

impl HalfSpec {
    /// `half` lists the coefficients of `x^d, x^{d-1}, ..., x^{d/2}`.
    pub fn new(half: Vec<i64>) -> Result<Self, PolyError> {
        match half.first() {
            None => Err(PolyError::Empty),
            Some(0) => Err(PolyError::LeadingZero),
            Some(1) => Ok(Self { half }),
            Some(_) => Err(PolyError::NotMonic),
        }
    }

    pub fn from_poly(p: &IntPolynomial) -> Result<Self, PolyError> {
        if p.degree() % 2 != 0 || !p.is_reciprocal() {
            return Err(PolyError::NotHalfEncodable);
        }
        let desc = p.descending();
        Self::new(desc[..=p.degree() / 2].to_vec())
    }

    pub fn degree(&self) -> usize {
        2 * (self.half.len() - 1)
    }

    pub fn half(&self) -> &[i64] {
        &self.half
    }

    /// Palindromic expansion.
    pub fn expand(&self) -> IntPolynomial {
        let d = self.degree();
        let mut coeffs = vec![0i64; d + 1];
        for (i, &c) in self.half.iter().enumerate() {
            // half[i] is the coefficient of x^{d-i}.
            coeffs[d - i] = c;
            coeffs[i] = c;
        }
        IntPolynomial { coeffs }
    }
}

/// Parses whitespace-separated integers, highest degree first.
pub fn parse_poly(text: &str, encoding: Encoding) -> Result<IntPolynomial, PolyError> {
    let values = text
        .split_whitespace()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| PolyError::Parse(format!("`{t}` is not an integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    match encoding {
        Encoding::Full => IntPolynomial::from_descending(&values),
        Encoding::Half => Ok(HalfSpec::new(values)?.expand()),
    }
}
