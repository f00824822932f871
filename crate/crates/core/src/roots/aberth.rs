//! Aberth–Ehrlich simultaneous iteration in double precision.

use num_complex::Complex64;

/// Newton ratio `P(z)/P'(z)`, evaluated through the reversed polynomial
/// when `|z| > 1` to keep Horner's rule well scaled. The flag reports
/// whether the residual is already at rounding-noise level.
fn newton_ratio(coeffs: &[f64], z: Complex64) -> Option<(Complex64, bool)> {
    let n = coeffs.len() - 1;
    let noise =
        |p: Complex64, bound: f64| p.norm() <= 4.0 * (n as f64 + 1.0) * f64::EPSILON * bound;
    if z.norm_sqr() <= 1.0 {
        let (p, dp) = horner(coeffs.iter().rev(), z);
        if p == Complex64::new(0.0, 0.0) {
            return None;
        }
        let bound = abs_horner(coeffs.iter().rev(), z.norm());
        Some((p / dp, noise(p, bound)))
    } else {
        let w = z.inv();
        let (r, dr) = horner(coeffs.iter(), w);
        if r == Complex64::new(0.0, 0.0) {
            return None;
        }
        let bound = abs_horner(coeffs.iter(), w.norm());
        // P'(z)/P(z) = (n - w R'(w)/R(w)) / z with R the reversal.
        let denom = Complex64::new(n as f64, 0.0) - w * dr / r;
        Some((z / denom, noise(r, bound)))
    }
}

fn abs_horner<'a>(desc: impl Iterator<Item = &'a f64>, t: f64) -> f64 {
    desc.fold(0.0, |acc, c| acc * t + c.abs())
}

#[inline]
fn horner<'a>(desc: impl Iterator<Item = &'a f64>, z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in desc {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn initial_guesses(coeffs: &[f64], offset: f64, scale: f64) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].abs();
    let radius = if coeffs[0] != 0.0 {
        (coeffs[0].abs() / lead).powf(1.0 / n as f64)
    } else {
        0.5
    } * scale;
    (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + offset;
            Complex64::from_polar(radius, angle)
        })
        .collect()
}

/// Starting circles tried in turn: `(angle offset, radius scale)`.
const STARTS: [(f64, f64); 3] = [(0.4, 1.0), (1.1, 1.3), (2.3, 0.8)];

/// Approximates all roots of the polynomial with ascending coefficients
/// `coeffs`, restarting from a different circle when an attempt does not
/// settle. Returns the total iteration count on failure.
pub fn aberth(coeffs: &[f64], max_iter: usize) -> Result<Vec<Complex64>, usize> {
    let n = coeffs.len() - 1;
    if n == 1 {
        return Ok(vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)]);
    }
    for (offset, scale) in STARTS {
        if let Some(z) = attempt(coeffs, initial_guesses(coeffs, offset, scale), max_iter) {
            return Ok(z);
        }
    }
    Err(max_iter * STARTS.len())
}

fn attempt(coeffs: &[f64], mut z: Vec<Complex64>, max_iter: usize) -> Option<Vec<Complex64>> {
    let n = z.len();
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let Some((ratio, at_noise)) = newton_ratio(coeffs, z[i]) else {
                done[i] = true;
                continue;
            };
            let zi = z[i];
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (zi - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                all_done = false;
                continue;
            }
            z[i] = zi - w;
            if at_noise || w.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            return Some(z);
        }
    }
    None
}
