use super::{Corpus, CorpusEntry, Relation, Table};
use crate::algebra::{self, Classification};
use crate::bounds::{self, BoundColumn};
use crate::error::CorpusError;
use crate::poly::{Encoding, IntPolynomial};
use crate::roots;
use crate::significant;

/// Which allowance made a printed value agree with the recomputed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slack {
    /// Within half a unit in the last printed place (correct rounding).
    HalfUlp,
    /// Within one unit in the last printed place.
    OneUlp,
    /// Only within the table tolerance.
    Tolerance,
    Exceeded,
}

impl Slack {
    pub fn as_str(self) -> &'static str {
        match self {
            Slack::HalfUlp => "half-ulp",
            Slack::OneUlp => "one-ulp",
            Slack::Tolerance => "tolerance",
            Slack::Exceeded => "exceeded",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntryReport {
    pub table: Table,
    pub degree: usize,
    pub line: usize,
    pub poly: IntPolynomial,
    pub printed: String,
    pub house: f64,
    pub house_error: f64,
    pub delta: f64,
    pub slack: Slack,
    pub checks: Vec<Check>,
    /// Observations that do not fail the row.
    pub notes: Vec<String>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn tsv_header() -> &'static str {
        "table\tdegree\tline\tprinted\trecomputed\tdelta\tslack\tstatus\tdetail"
    }

    pub fn tsv_row(&self) -> String {
        let detail: Vec<String> = self
            .failures()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .chain(self.notes.iter().map(|n| format!("note: {n}")))
            .collect();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{:.1e}\t{}\t{}\t{}",
            self.table,
            self.degree,
            self.line,
            self.printed,
            significant(self.house, 15),
            self.delta,
            self.slack.as_str(),
            if self.passed() { "PASS" } else { "FAIL" },
            detail.join("; ")
        )
    }
}

fn printed_ulp(s: &str) -> f64 {
    let decimals = s.split_once('.').map_or(0, |(_, f)| f.len());
    10f64.powi(-(decimals as i32))
}

fn slack_for(delta: f64, ulp: f64, err: f64, tol: f64) -> Slack {
    if delta <= 0.5 * ulp + err {
        Slack::HalfUlp
    } else if delta <= ulp + err {
        Slack::OneUlp
    } else if delta <= tol {
        Slack::Tolerance
    } else {
        Slack::Exceeded
    }
}

fn value(s: &str) -> f64 {
    s.parse().expect("validated at load time")
}

fn column_check(name: &'static str, printed: &str, computed: f64, tol: f64) -> Check {
    let d = (computed - value(printed)).abs();
    Check::new(
        name,
        d <= tol,
        format!(
            "printed {printed}, computed {}, |delta| {d:.1e}",
            significant(computed, 10)
        ),
    )
}

/// Relation between a house and a bound column: `=` within `1e-6`, `>`
/// by more than `1e-6`.
fn relation_check(rel: Relation, house: f64, bound: f64) -> Check {
    let gap = house - bound;
    let ok = match rel {
        Relation::Equal => gap.abs() <= 1e-6,
        Relation::Greater => gap > 1e-6,
    };
    let sym = if rel == Relation::Equal { "=" } else { ">" };
    Check::new(
        "relation",
        ok,
        format!("printed `{sym}`, house - bound = {gap:.3e}"),
    )
}

fn gate_check(p: &IntPolynomial) -> Check {
    match algebra::minimal_gate(p) {
        Classification::Candidate => {
            Check::new("irreducible", true, "irreducible, not a root of unity")
        }
        Classification::Reducible(w) => Check::new(
            "irreducible",
            false,
            format!(
                "reducible, factor {}",
                w.format(Encoding::Full).unwrap_or_default()
            ),
        ),
        Classification::RootOfUnity(idx) => {
            Check::new("irreducible", false, format!("cyclotomic product {idx:?}"))
        }
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

/// Recomputes every checkable cell of one row.
pub fn verify_entry(corpus: &Corpus, e: &CorpusEntry) -> Result<EntryReport, CorpusError> {
    let poly = corpus.polynomial(e)?;
    let tol = e.table.house_tolerance();
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let (house, house_error) = match roots::house(&poly) {
        Ok(v) => v,
        Err(err) => {
            checks.push(Check::new("house", false, err.to_string()));
            (f64::NAN, f64::NAN)
        }
    };
    let printed = value(&e.house);
    let delta = (house - printed).abs();
    let slack = if house.is_nan() {
        Slack::Exceeded
    } else {
        slack_for(delta, printed_ulp(&e.house), house_error, tol)
    };
    if !house.is_nan() {
        checks.push(Check::new(
            "house",
            delta <= tol,
            format!("|delta| {delta:.1e} against tolerance {tol:.0e}"),
        ));
    }
    let d = e.degree;

    if e.table != Table::T3 {
        checks.push(gate_check(&poly));
    }
    if e.table == Table::T1 || e.table.is_small_house_list() {
        checks.push(Check::new(
            "reciprocal",
            poly.is_reciprocal(),
            "palindromic coefficients",
        ));
    }
    if let Some(nu) = e.nu {
        let name = if e.table == Table::T1 { "nu" } else { "out" };
        match roots::count_outside_unit(&poly) {
            Ok(n) => checks.push(Check::new(
                name,
                n == nu,
                format!("printed {nu}, computed {n}"),
            )),
            Err(err) => checks.push(Check::new(name, false, err.to_string())),
        }
    }

    match e.table {
        Table::T1 => {
            if d >= 6 {
                let lb = bounds::matveev_lower_bound(d, true).expect("d >= 6");
                checks.push(Check::new(
                    "lower-bound",
                    house >= lb - 1e-10,
                    format!("bound {}", significant(lb, 10)),
                ));
            }
        }
        Table::T2 => {
            let col = bounds::column_bound(d, BoundColumn::Theta32);
            checks.push(column_check(
                "theta-column",
                e.column.as_deref().unwrap(),
                col,
                1e-6,
            ));
            checks.push(column_check(
                "powerhouse",
                e.powerhouse.as_deref().unwrap(),
                bounds::powerhouse(house, d),
                2e-6,
            ));
            checks.push(relation_check(e.relation.unwrap(), house, col));
            if d >= 2 {
                let lb = bounds::matveev_lower_bound(d, false).expect("d >= 2");
                checks.push(Check::new(
                    "lower-bound",
                    house >= lb - 1e-10,
                    format!("bound {}", significant(lb, 10)),
                ));
            }
        }
        Table::T3 => {
            let col = bounds::column_bound(d, BoundColumn::Tau10);
            checks.push(column_check(
                "tau-column",
                e.column.as_deref().unwrap(),
                col,
                2e-6,
            ));
            checks.push(column_check(
                "powerhouse",
                e.powerhouse.as_deref().unwrap(),
                bounds::powerhouse(house, d),
                2e-6,
            ));
            checks.push(relation_check(e.relation.unwrap(), house, col));
            if d >= 6 {
                let lb = bounds::matveev_lower_bound(d, true).expect("d >= 6");
                checks.push(Check::new(
                    "lower-bound",
                    house >= lb - 1e-10,
                    format!("bound {}", significant(lb, 10)),
                ));
            }
        }
        _ => {
            small_house_checks(e, &poly, &mut checks, &mut notes);
        }
    }

    Ok(EntryReport {
        table: e.table,
        degree: d,
        line: e.line,
        poly,
        printed: e.house.clone(),
        house,
        house_error,
        delta,
        slack,
        checks,
        notes,
    })
}

/// Flag checks for Tables 4 to 8.
fn small_house_checks(
    e: &CorpusEntry,
    poly: &IntPolynomial,
    checks: &mut Vec<Check>,
    notes: &mut Vec<String>,
) {
    let d = e.degree;
    let primitive = poly.is_primitive();
    // In blocks of degree 2p every row is meant to be primitive, so the
    // P flag is redundant there.
    if d == 2 || is_prime(d / 2) {
        checks.push(Check::new(
            "primitive",
            primitive,
            format!("degree 2p block, primitive = {primitive}"),
        ));
    } else {
        checks.push(Check::new(
            "primitive",
            primitive == e.flags.primitive,
            format!("flag P = {}, primitive = {primitive}", e.flags.primitive),
        ));
    }
    match roots::mahler_measure(poly) {
        Ok((m, _)) => {
            if e.flags.small_mahler {
                checks.push(Check::new(
                    "mahler",
                    m < 1.3,
                    format!("flag M, measure {}", significant(m, 12)),
                ));
            } else if d <= 20 && m < 1.3 - 1e-6 {
                notes.push(format!(
                    "measure {} below 1.3 without M flag",
                    significant(m, 12)
                ));
            }
        }
        Err(err) => checks.push(Check::new("mahler", false, err.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub table: Table,
    pub rows: Vec<EntryReport>,
    /// Checks spanning several rows.
    pub checks: Vec<Check>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(EntryReport::passed) && self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| !r.passed()).count()
    }

    pub fn slack_counts(&self) -> [(Slack, usize); 4] {
        [
            Slack::HalfUlp,
            Slack::OneUlp,
            Slack::Tolerance,
            Slack::Exceeded,
        ]
        .map(|s| (s, self.rows.iter().filter(|r| r.slack == s).count()))
    }

    pub fn summary(&self) -> String {
        let slack: Vec<String> = self
            .slack_counts()
            .iter()
            .map(|(s, n)| format!("{}={n}", s.as_str()))
            .collect();
        let failed_checks = self.checks.iter().filter(|c| !c.passed).count();
        format!(
            "{}: {} rows, {} failed; {} table checks, {} failed; slack {}",
            self.table,
            self.rows.len(),
            self.failed_rows(),
            self.checks.len(),
            failed_checks,
            slack.join(" ")
        )
    }
}

fn relation_pattern(corpus: &Corpus, t: Table, equal_at: impl Fn(usize) -> bool) -> Check {
    let wrong: Vec<usize> = corpus
        .table(t)
        .filter(|e| (e.relation == Some(Relation::Equal)) != equal_at(e.degree))
        .map(|e| e.degree)
        .collect();
    Check::new(
        "equality-rows",
        wrong.is_empty(),
        if wrong.is_empty() {
            "`=` exactly where expected".to_string()
        } else {
            format!("unexpected relation at degrees {wrong:?}")
        },
    )
}

fn table_checks(corpus: &Corpus, t: Table, rows: &[EntryReport]) -> Vec<Check> {
    let mut checks = Vec::new();
    match t {
        Table::T1 => {
            let odd: Vec<usize> = corpus
                .table(t)
                .filter(|e| e.degree >= 4 && e.nu.is_some_and(|n| n % 2 != 0))
                .map(|e| e.degree)
                .collect();
            checks.push(Check::new(
                "nu-even",
                odd.is_empty(),
                format!("rows of degree >= 4 with odd nu: {odd:?}"),
            ));
        }
        Table::T2 => checks.push(relation_pattern(corpus, t, |d| d % 3 == 0)),
        Table::T3 => {
            checks.push(relation_pattern(corpus, t, |d| [10, 20, 30].contains(&d)));
            let mut off = Vec::new();
            for r in rows {
                if let Some(t1) = corpus.row(Table::T1, r.degree) {
                    if (value(&t1.house) - r.house).abs() > 1e-12 {
                        off.push(r.degree);
                    }
                }
            }
            checks.push(Check::new(
                "matches-t1",
                off.is_empty(),
                format!("degrees whose house differs from the T1 value: {off:?}"),
            ));
        }
        _ => {
            for (d, block) in corpus.blocks(t) {
                let sorted = block
                    .windows(2)
                    .all(|w| value(&w[0].house) <= value(&w[1].house));
                checks.push(Check::new(
                    "block-sorted",
                    sorted,
                    format!("degree {d} block ascending by house"),
                ));
                if let Some(t1) = corpus.row(Table::T1, d) {
                    let first = rows
                        .iter()
                        .find(|r| r.line == block[0].line)
                        .map(|r| r.house)
                        .unwrap_or(f64::NAN);
                    let gap = (first - value(&t1.house)).abs();
                    checks.push(Check::new(
                        "block-head",
                        gap <= 1e-12,
                        format!("degree {d} first row vs T1: |delta| {gap:.1e}"),
                    ));
                }
            }
        }
    }
    checks
}

pub fn verify_table(corpus: &Corpus, t: Table) -> Result<TableReport, CorpusError> {
    let rows = corpus
        .table(t)
        .map(|e| verify_entry(corpus, e))
        .collect::<Result<Vec<_>, _>>()?;
    let checks = table_checks(corpus, t, &rows);
    Ok(TableReport {
        table: t,
        rows,
        checks,
    })
}

pub fn verify_all(corpus: &Corpus) -> Result<Vec<TableReport>, CorpusError> {
    Table::ALL
        .iter()
        .map(|&t| verify_table(corpus, t))
        .collect()
}
