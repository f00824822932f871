//! Table-checkable instances of the conjectured structure of extremal
//! polynomials. Everything here is reported, never used for pruning.

use super::{Corpus, PolySource, Table};
use crate::bounds::{self, BoundColumn};
use crate::poly::IntPolynomial;
use crate::roots;
use crate::significant;

#[derive(Debug, Clone, PartialEq)]
pub struct Evidence {
    /// Short name of the relation being tested.
    pub relation: &'static str,
    pub instance: String,
    pub holds: bool,
    pub detail: String,
}

impl Evidence {
    fn new(relation: &'static str, instance: String, holds: bool, detail: String) -> Self {
        Self {
            relation,
            instance,
            holds,
            detail,
        }
    }

    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.relation,
            self.instance,
            if self.holds { "holds" } else { "fails" },
            self.detail
        )
    }
}

fn house(p: &IntPolynomial) -> f64 {
    roots::house(p).map(|(h, _)| h).unwrap_or(f64::NAN)
}

fn t1_poly(c: &Corpus, d: usize) -> Option<IntPolynomial> {
    c.row(Table::T1, d).and_then(|e| c.polynomial(e).ok())
}

/// `R_2d(x) = R_d(x^2)` for Table 1 rows, checked both against the
/// reference in Table 1 and against the explicit coefficients heading the
/// degree-`2d` block of the small-house tables.
fn halving(c: &Corpus, out: &mut Vec<Evidence>) {
    for (d, k) in [(16, 2), (20, 2), (24, 2), (28, 2), (32, 2), (30, 3)] {
        let (Some(rd), Some(rb)) = (t1_poly(c, d), t1_poly(c, d / k)) else {
            continue;
        };
        let composed = rb.compose_power(k);
        let explicit = c
            .small_house_table(d)
            .and_then(|t| c.row(t, d))
            .and_then(|e| c.polynomial(e).ok());
        let holds = rd == composed && explicit.as_ref() == Some(&composed);
        out.push(Evidence::new(
            "halving",
            format!("R_{d}(x) = R_{}(x^{k})", d / k),
            holds,
            format!(
                "table reference {}, explicit block head {}",
                if rd == composed { "matches" } else { "differs" },
                match &explicit {
                    Some(p) if *p == composed => "matches",
                    Some(_) => "differs",
                    None => "absent",
                }
            ),
        ));
    }
}

/// Composite-degree rows against the best composition of smaller
/// primitive records.
fn composite(c: &Corpus, out: &mut Vec<Evidence>) {
    for (t, reciprocal) in [(Table::T1, true), (Table::T2, false)] {
        let records: Vec<(usize, IntPolynomial)> = c
            .table(t)
            .filter(|e| matches!(e.source, PolySource::Coefficients(..)))
            .filter_map(|e| c.polynomial(e).ok().map(|p| (e.degree, p)))
            .filter(|(_, p)| p.is_primitive() || p.degree() == 1)
            .collect();
        for e in c.table(t) {
            let PolySource::Reference { .. } = e.source else {
                continue;
            };
            let Ok(actual) = c.polynomial(e) else {
                continue;
            };
            let d = e.degree;
            let divisors: Vec<(usize, IntPolynomial)> =
                records.iter().filter(|(b, _)| *b < d).cloned().collect();
            match bounds::composite_prediction(d, reciprocal, &divisors) {
                Ok(pred) => {
                    let printed: f64 = e.house.parse().unwrap_or(f64::NAN);
                    let holds =
                        pred.poly == actual && (pred.house - printed).abs() <= t.house_tolerance();
                    out.push(Evidence::new(
                        "composite",
                        format!("{t} d={d}"),
                        holds,
                        format!(
                            "predicted from degree {} (powerhouse {}), house {}{}",
                            pred.divisor,
                            significant(pred.powerhouse, 10),
                            significant(pred.house, 15),
                            if pred.ties.is_empty() {
                                String::new()
                            } else {
                                format!(", tied with degrees {:?}", pred.ties)
                            }
                        ),
                    ));
                }
                Err(err) => out.push(Evidence::new(
                    "composite",
                    format!("{t} d={d}"),
                    false,
                    err.to_string(),
                )),
            }
        }
    }
}

fn five_mod_six(c: &Corpus, out: &mut Vec<Evidence>) {
    for d in [17, 23] {
        let table = c.row(Table::T2, d).and_then(|e| c.polynomial(e).ok());
        let generated = bounds::five_mod_six_polynomial(d).ok();
        let holds = table.is_some() && table == generated;
        out.push(Evidence::new(
            "five-mod-six",
            format!("T2 d={d} = (x^{} - x^2 - 1)/(x^2 - x + 1)", d + 2),
            holds,
            if holds {
                "coefficients identical".to_string()
            } else {
                "coefficients differ".to_string()
            },
        ));
    }
}

fn split_power(out: &mut Vec<Evidence>) {
    for d in [19, 31] {
        let instance = format!("d={d}");
        match bounds::split_power_quotient(d) {
            Ok(q) => {
                let bound = 2f64.powf(1.0 / d as f64);
                let exact = if q.exact {
                    "exact quotient"
                } else {
                    "x^2 + 1 does not divide; zeros of the numerator over (x - 1)"
                };
                // The degree-19 member is the extremal polynomial of that
                // degree itself, so this instance is expected to fail.
                let holds = q.house > bound;
                out.push(Evidence::new(
                    "split-power",
                    instance,
                    holds,
                    format!(
                        "house {} vs 2^(1/d) = {} ({exact})",
                        significant(q.house, 15),
                        significant(bound, 15)
                    ),
                ));
            }
            Err(err) => out.push(Evidence::new(
                "split-power",
                instance,
                false,
                err.to_string(),
            )),
        }
    }
}

fn series_bound(c: &Corpus, out: &mut Vec<Evidence>) {
    for t in [Table::T1, Table::T2] {
        let mut low = Vec::new();
        for e in c.table(t) {
            let Ok(p) = c.polynomial(e) else { continue };
            let h = house(&p);
            if h < bounds::column_bound(e.degree, BoundColumn::Theta32) - 1e-10 {
                low.push(e.degree);
            }
        }
        out.push(Evidence::new(
            "theta-series",
            format!("{t}: house >= theta^(3/(2d))"),
            low.is_empty(),
            if low.is_empty() {
                "every row".to_string()
            } else {
                format!("below at degrees {low:?}")
            },
        ));
    }
}

fn tau_bound(c: &Corpus, out: &mut Vec<Evidence>) {
    let mut equal = Vec::new();
    let mut below = Vec::new();
    for e in c.table(Table::T1) {
        let Ok(p) = c.polynomial(e) else { continue };
        let gap = house(&p) - bounds::column_bound(e.degree, BoundColumn::Tau10);
        if gap.abs() <= 1e-10 {
            equal.push(e.degree);
        } else if gap < 0.0 {
            below.push(e.degree);
        }
    }
    out.push(Evidence::new(
        "tau-bound",
        "T1: house >= tau^(10/d)".to_string(),
        below.is_empty() && equal == [10, 20, 30],
        format!("equality at {equal:?}, below at {below:?}"),
    ));
}

fn monotonicity(c: &Corpus, out: &mut Vec<Evidence>) {
    let value = |d| {
        c.row(Table::T1, d)
            .and_then(|e| e.house.parse::<f64>().ok())
            .unwrap_or(f64::NAN)
    };
    for (a, b) in [(22, 24), (26, 28)] {
        out.push(Evidence::new(
            "non-monotone",
            format!("mr({a}) > mr({b})"),
            value(a) > value(b),
            format!("{} vs {}", value(a), value(b)),
        ));
    }
}

fn sigma_dominance(out: &mut Vec<Evidence>) {
    for k in 3..=20u32 {
        let a = bounds::sigma_dominates(k);
        let b = bounds::integer_dominance(k);
        out.push(Evidence::new(
            "sigma-dominance",
            format!("k={k}"),
            a && b,
            format!("sigma^(8/2^k) above reciprocal bound: {a}; 2^(k+3) > 15(k-1): {b}"),
        ));
    }
}

/// Every table-checkable instance, in a fixed order.
pub fn check_conjecture_evidence(c: &Corpus) -> Vec<Evidence> {
    let mut out = Vec::new();
    halving(c, &mut out);
    composite(c, &mut out);
    five_mod_six(c, &mut out);
    split_power(&mut out);
    series_bound(c, &mut out);
    tau_bound(c, &mut out);
    monotonicity(c, &mut out);
    sigma_dominance(&mut out);
    out
}
