//! End-to-end checks, one line per criterion. Runs as a plain binary so
//! that every criterion is reported even when an earlier one fails; set
//! `ACCEPTANCE_STRICT=1` to turn any failure into a nonzero exit status.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use house_core::bounds::{
    five_mod_six_polynomial, integer_dominance, sigma_dominates, split_power_quotient,
    verify_pattern_root, PatternKind, RootPattern,
};
use house_core::corpus::{check_conjecture_evidence, verify_table, Corpus, Table, TableReport};
use house_core::roots::house;
use house_core::search::{
    brute_force, partition_merge, search_extremal, ExtremalRecord, SearchConfig,
};
use house_core::IntPolynomial;
use rand::{rngs::StdRng, Rng, SeedableRng};

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Verdict + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!(
            "took {:.1}s, limit {}s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        )
    })
}

fn table_failures(r: &TableReport) -> Vec<String> {
    let mut out: Vec<String> = r
        .rows
        .iter()
        .filter(|row| !row.passed())
        .map(|row| {
            let why: Vec<String> = row
                .failures()
                .map(|c| format!("{} ({})", c.name, c.detail))
                .collect();
            format!(
                "{} d={} line {}: {}",
                row.table,
                row.degree,
                row.line,
                why.join(", ")
            )
        })
        .collect();
    out.extend(
        r.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} {}: {}", r.table, c.name, c.detail)),
    );
    out
}

fn verify_tables(tables: &[Table], limit: Duration) -> Verdict {
    let start = Instant::now();
    let corpus = Corpus::load().map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    let mut rows = 0;
    for &t in tables {
        let r = verify_table(&corpus, t).map_err(|e| e.to_string())?;
        rows += r.rows.len();
        failures.extend(table_failures(&r));
    }
    within(start.elapsed(), limit)?;
    if failures.is_empty() {
        Ok(format!(
            "{rows} rows in {:.1}s",
            start.elapsed().as_secs_f64()
        ))
    } else {
        Err(format!(
            "{} problems: {}",
            failures.len(),
            failures.join("; ")
        ))
    }
}

fn table_one() -> Verdict {
    let corpus = Corpus::load().map_err(|e| e.to_string())?;
    ensure(corpus.table(Table::T1).count() == 17, || {
        "expected 17 rows".into()
    })?;
    verify_tables(&[Table::T1], Duration::from_secs(60))
}

fn rederive_table_one() -> Verdict {
    let start = Instant::now();
    let corpus = Corpus::load().map_err(|e| e.to_string())?;
    let runs = [(2, 3), (4, 3), (6, 3), (8, 3), (10, 3), (12, 2), (14, 2)];
    for (d, h) in runs {
        let row = corpus
            .row(Table::T1, d)
            .ok_or(format!("no row for d={d}"))?;
        let printed = corpus.polynomial(row).map_err(|e| e.to_string())?;
        let printed_house: f64 = row.house.parse().map_err(|_| "bad house".to_string())?;
        let r = search_extremal(&SearchConfig::new(d, h)).map_err(|e| e.to_string())?;
        let best = r.best_house().ok_or(format!("d={d}: nothing found"))?;
        ensure((best - printed_house).abs() <= 1e-10, || {
            format!("d={d}: house {best} vs printed {printed_house}")
        })?;
        let mirrored = printed.negate_variable();
        let found = r
            .ties
            .iter()
            .any(|t| t.poly == printed || t.poly == mirrored);
        ensure(found, || {
            format!("d={d}: printed polynomial not among the minimisers")
        })?;
    }
    within(start.elapsed(), Duration::from_secs(30 * 60))?;
    Ok(format!(
        "7 searches in {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn pattern_suites(rng: &mut StdRng) -> Verdict {
    for kind in PatternKind::ALL {
        let params = kind.parameters();
        for _ in 0..1000 {
            let pat = RootPattern {
                kind,
                m: (!params.is_empty()).then(|| params[rng.gen_range(0..params.len())]),
            };
            let d = 2 * rng.gen_range(kind.min_degree() / 2..=14);
            let a = if kind == PatternKind::MinusOnes { 1 } else { 2 };
            let interior: Vec<i64> = (0..pat.interior_len(d))
                .map(|_| rng.gen_range(-a..=a))
                .collect();
            let p = pat.instance(d, &interior).map_err(|e| e.to_string())?;
            let root = verify_pattern_root(&pat, &p).map_err(|e| format!("{kind:?} d={d}: {e}"))?;
            let bound = pat.guaranteed_lower_bound();
            let h = house(&p).map(|x| x.0).unwrap_or(root.value);
            ensure(root.value >= bound && h >= bound, || {
                format!("{kind:?} d={d}: root {}", root.value)
            })?;
        }
    }
    let mut prev = 0.0;
    for d in [5, 11, 17, 23, 29, 35, 41] {
        let p = five_mod_six_polynomial(d).map_err(|e| format!("d={d}: {e}"))?;
        let h = house(&p).map_err(|e| e.to_string())?.0;
        let ceiling = 2f64.powf(1.0 / d as f64);
        ensure(h > 1.0 && h < ceiling, || {
            format!("d={d}: house {h} outside (1, {ceiling})")
        })?;
        let ph = h.powi(d as i32);
        ensure(ph > prev, || {
            format!("d={d}: powerhouse {ph} not above {prev}")
        })?;
        prev = ph;
    }
    for k in 3..=20 {
        ensure(sigma_dominates(k) && integer_dominance(k), || {
            format!("k={k}")
        })?;
    }
    Ok("3000 pattern instances, 7 family members, k = 3..20".into())
}

fn random_poly(rng: &mut StdRng) -> IntPolynomial {
    let d = rng.gen_range(2..=8);
    let mut desc = vec![1i64];
    desc.extend((0..d).map(|_| rng.gen_range(-3..=3)));
    if desc[d] == 0 {
        desc[d] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    IntPolynomial::from_descending(&desc).expect("monic")
}

fn composition_law(rng: &mut StdRng) -> Verdict {
    let mut tested = 0;
    let mut worst = 0.0f64;
    while tested < 200 {
        let p = random_poly(rng);
        let Ok((h, _)) = house(&p) else { continue };
        tested += 1;
        for k in 2..=5 {
            let hk = house(&p.compose_power(k))
                .map_err(|e| format!("{p:?} k={k}: {e}"))?
                .0;
            let gap = (hk - h.powf(1.0 / k as f64)).abs();
            worst = worst.max(gap);
            ensure(gap <= 1e-10, || format!("{p:?} k={k}: gap {gap:e}"))?;
        }
    }
    Ok(format!("800 compositions, worst gap {worst:.1e}"))
}

fn same_records(a: &ExtremalRecord, b: &ExtremalRecord) -> bool {
    let key = |r: &ExtremalRecord| {
        (
            r.best.as_ref().map(|h| h.half.clone()),
            r.ties
                .iter()
                .map(|h| (h.half.clone(), h.nu))
                .collect::<Vec<_>>(),
            r.candidates
                .iter()
                .map(|h| (h.half.clone(), h.nu))
                .collect::<Vec<_>>(),
        )
    };
    let houses = |r: &ExtremalRecord| r.candidates.iter().map(|h| h.house).collect::<Vec<_>>();
    key(a) == key(b)
        && houses(a)
            .iter()
            .zip(houses(b))
            .all(|(x, y)| (x - y).abs() <= 1e-12)
}

fn oracle_equivalence() -> Verdict {
    let mut compared = 0;
    for d in [2, 4, 6] {
        for h in [1, 2] {
            let threshold = Some(3.0);
            let slow = brute_force(d, h, threshold).map_err(|e| e.to_string())?;
            let mut base = SearchConfig::new(d, h);
            base.threshold = threshold;
            let fast = search_extremal(&base).map_err(|e| e.to_string())?;
            ensure(same_records(&slow, &fast), || {
                format!("d={d} H={h}: unsharded differs")
            })?;
            for n in [2, 3, 4] {
                let parts = (0..n)
                    .map(|i| search_extremal(&base.clone().with_shard(i, n)))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?;
                let merged = partition_merge(&parts).map_err(|e| e.to_string())?;
                ensure(same_records(&slow, &merged), || {
                    format!("d={d} H={h}: {n} shards differ")
                })?;
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} spaces, 1 to 4 shards each"))
}

fn evidence() -> Verdict {
    let corpus = Corpus::load().map_err(|e| e.to_string())?;
    let ev = check_conjecture_evidence(&corpus);
    let wanted = |e: &&house_core::corpus::Evidence| {
        matches!(e.relation, "halving" | "five-mod-six" | "split-power")
    };
    let relevant: Vec<_> = ev.iter().filter(wanted).collect();
    ensure(relevant.len() == 10, || {
        format!("expected 10 instances, got {}", relevant.len())
    })?;
    let failing: Vec<String> = relevant
        .iter()
        .filter(|e| !e.holds)
        .map(|e| format!("{} {}: {}", e.relation, e.instance, e.detail))
        .collect();
    ensure(failing.is_empty(), || failing.join("; "))?;
    // independent of the report: the degree-31 member
    let q = split_power_quotient(31).map_err(|e| e.to_string())?;
    ensure(q.house > 2f64.powf(1.0 / 31.0), || {
        "d=31 house below 2^(1/31)".into()
    })?;
    Ok("10 instances".into())
}

fn main() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let criteria: Vec<Criterion> = vec![
        ("table 1 verification", Box::new(table_one)),
        (
            "table 1 re-derivation by search",
            Box::new(rederive_table_one),
        ),
        (
            "table 2 verification",
            Box::new(|| verify_tables(&[Table::T2], Duration::from_secs(60))),
        ),
        (
            "table 3 verification",
            Box::new(|| verify_tables(&[Table::T3], Duration::from_secs(60))),
        ),
        (
            "small-house tables",
            Box::new(|| {
                verify_tables(
                    &[Table::T4, Table::T5, Table::T6, Table::T7, Table::T8],
                    Duration::from_secs(300),
                )
            }),
        ),
        (
            "root-pattern suites",
            Box::new(|| pattern_suites(&mut StdRng::seed_from_u64(6))),
        ),
        (
            "composition law",
            Box::new(move || composition_law(&mut rng)),
        ),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("structural evidence", Box::new(evidence)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let verdict =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        match verdict {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 && std::env::var_os("ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
