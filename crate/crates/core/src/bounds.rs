//! Closed-form house bounds, named constants, coefficient patterns that
//! force a large real root, special polynomial families and the
//! composite-degree predictor.

use std::sync::OnceLock;

use crate::error::BoundsError;
use crate::poly::{parse_poly, Encoding, IntPolynomial};
use crate::roots::{self, CertifiedRealRoot};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Constants recomputed from their defining polynomials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantCatalog {
    /// Real root of `x^3 - x - 1`, the smallest Pisot number.
    pub theta: f64,
    /// House of `x^8 + x^5 + x^4 + x^3 + 1`.
    pub sigma: f64,
    /// House of `x^10 + x^8 + x^7 + x^5 + x^3 + x^2 + 1`.
    pub tau: f64,
    /// `((3 + sqrt 5) / 2)^2`, the powerhouse of `x^d + 3x^(d/2) + 1`.
    pub u: f64,
}

fn house_of(full: &str) -> f64 {
    let p = parse_poly(full, Encoding::Full).expect("valid constant polynomial");
    roots::house(&p)
        .expect("constant polynomial is square-free")
        .0
}

pub fn constants() -> &'static ConstantCatalog {
    static CATALOG: OnceLock<ConstantCatalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
        ConstantCatalog {
            theta: house_of("1 0 -1 -1"),
            sigma: house_of("1 0 0 1 1 1 0 0 1"),
            tau: house_of("1 0 1 1 0 1 0 1 1 0 1"),
            u: golden_sq * golden_sq,
        }
    })
}

/// Lower bound for the house of a degree-`d` algebraic integer that is not
/// a root of unity: `exp(log(d + 1/2)/d^2)`, or `exp(3 log(d/2)/d^2)` for
/// reciprocal integers of degree at least 6.
pub fn matveev_lower_bound(d: usize, reciprocal: bool) -> Result<f64, BoundsError> {
    if d < 2 {
        return Err(BoundsError::DegreeTooSmall { min: 2, got: d });
    }
    let df = d as f64;
    if reciprocal {
        if d < 6 {
            return Err(BoundsError::ReciprocalDegreeTooSmall(d));
        }
        Ok((3.0 * (df / 2.0).ln() / (df * df)).exp())
    } else {
        Ok(((df + 0.5).ln() / (df * df)).exp())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundColumn {
    /// `theta^(3/(2d))`
    Theta32,
    /// `tau^(10/d)`
    Tau10,
    /// `sigma^(8/d)`
    Sigma8,
}

pub fn column_bound(d: usize, column: BoundColumn) -> f64 {
    let c = constants();
    let df = d as f64;
    match column {
        BoundColumn::Theta32 => c.theta.powf(1.5 / df),
        BoundColumn::Tau10 => c.tau.powf(10.0 / df),
        BoundColumn::Sigma8 => c.sigma.powf(8.0 / df),
    }
}

/// `house^d`, invariant under `P(x) -> P(x^k)`.
pub fn powerhouse(house: f64, d: usize) -> f64 {
    house.powi(d as i32)
}

/// Partial sum of `T^(1/d) = sum_j (log T / d)^j / j!` with `terms` terms.
pub fn taylor_root(t: f64, d: usize, terms: usize) -> f64 {
    let x = t.ln() / d as f64;
    let mut term = 1.0;
    let mut sum = 0.0;
    for j in 0..terms {
        sum += term;
        term *= x / (j + 1) as f64;
    }
    sum
}

/// `sigma^(8/2^k) > (2^(k-1))^(3/2^(2k))`, evaluated in floating point.
pub fn sigma_dominates(k: u32) -> bool {
    let d = 2f64.powi(k as i32);
    column_bound(1 << k, BoundColumn::Sigma8) > (3.0 * (d / 2.0).ln() / (d * d)).exp()
}

/// `2^(k+3) > 15(k-1)`, in integers.
pub fn integer_dominance(k: u32) -> bool {
    (1u128 << (k + 3)) > 15 * (k as u128 - 1)
}

/// Leading-coefficient templates of palindromic polynomials that force a
/// real root above a fixed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternKind {
    /// `x^d - x^(d-1) - x^(d-2) - x^(d-3) - m x^(d-4) + ...`, height one,
    /// `d >= 10`, `m` in {0, 1}; real root in (3/2, 2).
    MinusOnes,
    /// `x^d - 2x^(d-1) - 2x^(d-2) + ...`, height at most two, `d >= 6`;
    /// real root in (2, 3).
    MinusTwos,
    /// `x^d - 2x^(d-1) - x^(d-2) - m x^(d-3) + ...`, height at most two,
    /// `d >= 10`, `m` in {1, 2}; real root in (2, 3).
    MinusTwoOne,
}

impl PatternKind {
    pub const ALL: [PatternKind; 3] = [
        PatternKind::MinusOnes,
        PatternKind::MinusTwos,
        PatternKind::MinusTwoOne,
    ];

    pub fn min_degree(self) -> usize {
        match self {
            PatternKind::MinusTwos => 6,
            _ => 10,
        }
    }

    fn max_height(self) -> u64 {
        match self {
            PatternKind::MinusOnes => 1,
            _ => 2,
        }
    }

    /// Allowed values of `m`; empty for the parameter-free template.
    pub fn parameters(self) -> &'static [i64] {
        match self {
            PatternKind::MinusOnes => &[0, 1],
            PatternKind::MinusTwos => &[],
            PatternKind::MinusTwoOne => &[1, 2],
        }
    }

    fn prefix(self, m: i64) -> Vec<i64> {
        match self {
            PatternKind::MinusOnes => vec![1, -1, -1, -1, -m],
            PatternKind::MinusTwos => vec![1, -2, -2],
            PatternKind::MinusTwoOne => vec![1, -2, -1, -m],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootPattern {
    pub kind: PatternKind,
    pub m: Option<i64>,
}

impl RootPattern {
    pub fn guaranteed_lower_bound(&self) -> f64 {
        match self.kind {
            PatternKind::MinusOnes => 1.5,
            _ => 2.0,
        }
    }

    /// Rational endpoints `(num, den)` with `P(lo) < 0 < P(hi)`.
    pub fn bracket(&self) -> ((i64, i64), (i64, i64)) {
        match self.kind {
            PatternKind::MinusOnes => ((3, 2), (2, 1)),
            _ => ((2, 1), (3, 1)),
        }
    }

    /// Builds the palindromic instance of degree `d` whose half list is the
    /// template prefix followed by `interior`.
    pub fn instance(&self, d: usize, interior: &[i64]) -> Result<IntPolynomial, BoundsError> {
        let mut half = self.kind.prefix(self.m.unwrap_or(0));
        if d % 2 != 0 || d < self.kind.min_degree() || half.len() + interior.len() != d / 2 + 1 {
            return Err(BoundsError::PatternMismatch);
        }
        half.extend_from_slice(interior);
        let p = crate::poly::HalfSpec::new(half)
            .map_err(|_| BoundsError::PatternMismatch)?
            .expand();
        if match_pattern(&p) != Some(*self) {
            return Err(BoundsError::PatternMismatch);
        }
        Ok(p)
    }

    /// Length of the free part of the half list for degree `d`.
    pub fn interior_len(&self, d: usize) -> usize {
        (d / 2 + 1).saturating_sub(self.kind.prefix(0).len())
    }
}

/// Matches `P` against the three templates. The match is literal: `P` must
/// be monic palindromic of even degree with the template's leading
/// coefficients and height.
pub fn match_pattern(p: &IntPolynomial) -> Option<RootPattern> {
    let d = p.degree();
    if d % 2 != 0 || !p.is_monic() || !p.is_reciprocal() {
        return None;
    }
    let desc = p.descending();
    for kind in PatternKind::ALL {
        if d < kind.min_degree() || p.height() > kind.max_height() {
            continue;
        }
        let params = kind.parameters();
        if params.is_empty() {
            let prefix = kind.prefix(0);
            if desc.starts_with(&prefix) {
                return Some(RootPattern { kind, m: None });
            }
        } else {
            for &m in params {
                if desc.starts_with(&kind.prefix(m)) {
                    return Some(RootPattern { kind, m: Some(m) });
                }
            }
        }
    }
    None
}

/// Pattern of `P` or of `P(-x)`; both have the same house.
pub fn match_pattern_up_to_sign(p: &IntPolynomial) -> Option<RootPattern> {
    match_pattern(p).or_else(|| match_pattern(&p.negate_variable()))
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Checks the exact sign change `P(lo) < 0 < P(hi)` of the pattern's
/// bracket and returns the certified root inside it.
pub fn verify_pattern_root(
    pat: &RootPattern,
    p: &IntPolynomial,
) -> Result<CertifiedRealRoot, BoundsError> {
    if match_pattern(p) != Some(*pat) {
        return Err(BoundsError::PatternMismatch);
    }
    let ((ln, ld), (hn, hd)) = pat.bracket();
    if p.sign_at(ln, ld) >= 0 {
        return Err(BoundsError::SignConditionFailed {
            at: format!("{ln}/{ld}"),
        });
    }
    if p.sign_at(hn, hd) <= 0 {
        return Err(BoundsError::SignConditionFailed {
            at: format!("{hn}/{hd}"),
        });
    }
    roots::real_root_in_interval(p, &rational(ln, ld), &rational(hn, hd)).ok_or(
        BoundsError::SignConditionFailed {
            at: "bracket".to_string(),
        },
    )
}

/// `(x^(d+2) - x^2 - 1) / (x^2 - x + 1)` for `d = 5 mod 6`.
pub fn five_mod_six_polynomial(d: usize) -> Result<IntPolynomial, BoundsError> {
    if d < 5 || d % 6 != 5 {
        return Err(BoundsError::NotFiveModSix(d));
    }
    let mut num = vec![0i64; d + 3];
    num[0] = -1;
    num[2] = -1;
    num[d + 2] = 1;
    let num = IntPolynomial::new(num).expect("nonzero");
    let den = IntPolynomial::from_descending(&[1, -1, 1]).expect("nonzero");
    num.div_exact(&den).ok_or(BoundsError::InexactDivision)
}

/// Zero set of `(x^(d+3) - x^((d+3)/2) - x + 1) / ((x - 1)(x^2 + 1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitPowerQuotient {
    /// Numerator with every exactly dividing denominator factor removed,
    /// reduced to its square-free part.
    pub poly: IntPolynomial,
    /// Whether `x^2 + 1` divided the numerator; when it does not, the
    /// quotient is a rational function and its zeros are those of `poly`.
    pub exact: bool,
    pub house: f64,
}

pub fn split_power_quotient(d: usize) -> Result<SplitPowerQuotient, BoundsError> {
    if d % 2 == 0 || d < 3 {
        return Err(BoundsError::DegreeTooSmall { min: 3, got: d });
    }
    let n = d + 3;
    let mut num = vec![0i64; n + 1];
    num[0] = 1;
    num[1] = -1;
    num[n / 2] -= 1;
    num[n] = 1;
    let num = IntPolynomial::new(num).expect("nonzero");
    let mut q = num
        .div_exact(&IntPolynomial::x_minus(1))
        .ok_or(BoundsError::InexactDivision)?;
    let x2p1 = IntPolynomial::from_descending(&[1, 0, 1]).expect("nonzero");
    let exact = match q.div_exact(&x2p1) {
        Some(r) => {
            q = r;
            true
        }
        None => false,
    };
    let big = crate::bigpoly::from_int(&q);
    let g = crate::bigpoly::gcd(&big, &crate::bigpoly::derivative(&big));
    if crate::bigpoly::degree(&g).unwrap_or(0) > 0 {
        let g = crate::bigpoly::to_int(&g).ok_or(BoundsError::InexactDivision)?;
        q = q.div_exact(&g).ok_or(BoundsError::InexactDivision)?;
    }
    let house = roots::house(&q)?.0;
    Ok(SplitPowerQuotient {
        poly: q,
        exact,
        house,
    })
}

/// Best nonprimitive polynomial of degree `d` built from known extremal
/// records of proper divisor degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositePrediction {
    pub divisor: usize,
    pub poly: IntPolynomial,
    pub house: f64,
    pub powerhouse: f64,
    /// Other divisors whose powerhouse equals the winner's to `1e-12`.
    pub ties: Vec<usize>,
}

/// Among `R_b(x^(d/b))` for proper divisors `b` of `d` with a primitive
/// record `R_b` in `records`, picks the one of least powerhouse `house^b`;
/// ties go to the smaller `b`. For reciprocal searches only even `b`
/// qualify.
pub fn composite_prediction(
    d: usize,
    reciprocal: bool,
    records: &[(usize, IntPolynomial)],
) -> Result<CompositePrediction, BoundsError> {
    let mut scored: Vec<(usize, &IntPolynomial, f64, f64)> = Vec::new();
    for b in 1..d {
        if d % b != 0 || (reciprocal && b % 2 != 0) {
            continue;
        }
        let Some((_, rec)) = records.iter().find(|(deg, r)| *deg == b && r.degree() == b) else {
            continue;
        };
        if !rec.is_primitive() && b > 1 {
            continue;
        }
        let h = roots::house(rec)?.0;
        scored.push((b, rec, h, powerhouse(h, b)));
    }
    let best = scored
        .iter()
        .fold(
            None::<&(usize, &IntPolynomial, f64, f64)>,
            |acc, s| match acc {
                Some(a) if a.3 <= s.3 + 1e-12 * a.3 => Some(a),
                _ => Some(s),
            },
        )
        .ok_or(BoundsError::MissingDivisorRecord(d))?;
    let ties = scored
        .iter()
        .filter(|s| s.0 != best.0 && (s.3 - best.3).abs() <= 1e-12 * best.3)
        .map(|s| s.0)
        .collect();
    let (b, rec, h, ph) = *best;
    Ok(CompositePrediction {
        divisor: b,
        poly: rec.compose_power(d / b),
        house: h.powf(b as f64 / d as f64),
        powerhouse: ph,
        ties,
    })
}

/// Polynomial whose house bounds the extremal house from above: `x^d - 2`
/// in general, `x^d + 3x^(d/2) + 1` for reciprocal integers.
pub fn upper_bound_witness(
    d: usize,
    reciprocal: bool,
) -> Result<(IntPolynomial, f64), BoundsError> {
    if d == 0 {
        return Err(BoundsError::DegreeTooSmall { min: 1, got: 0 });
    }
    let mut c = vec![0i64; d + 1];
    c[d] = 1;
    if reciprocal {
        if d % 2 != 0 {
            return Err(BoundsError::OddReciprocalDegree(d));
        }
        c[0] = 1;
        c[d / 2] = 3;
        let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
        let p = IntPolynomial::new(c).expect("nonzero");
        Ok((p, golden_sq.powf(2.0 / d as f64)))
    } else {
        c[0] = -2;
        let p = IntPolynomial::new(c).expect("nonzero");
        Ok((p, 2f64.powf(1.0 / d as f64)))
    }
}
