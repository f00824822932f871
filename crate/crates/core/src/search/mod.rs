//! Exhaustive search over monic palindromic polynomials of a fixed even
//! degree and height for the smallest house.
//!
//! Half lists are enumerated as an odometer whose most significant digit
//! is the coefficient of `x^(d-1)`. Only one of `P(x)` and `P(-x)` is
//! visited: the one whose first nonzero odd-exponent coefficient is
//! positive. Both have the same house, so nothing is lost.

mod checkpoint;

use std::path::PathBuf;

use crate::algebra::{self, Classification};
use crate::bounds;
use crate::error::{RootError, SearchError};
use crate::poly::{HalfSpec, IntPolynomial};
use crate::roots;

pub use checkpoint::{load_checkpoint, save_checkpoint, CheckpointState};

/// Polynomials whose houses differ by at most this much are ties.
pub const TIE_TOL: f64 = 2e-13;

/// Margin added to the record bound before the real-root probes apply.
pub const PROBE_MARGIN: f64 = 1e-9;

const PROBES: [(i64, i64); 3] = [(3, 2), (2, 1), (3, 1)];

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub degree: usize,
    pub height: i64,
    /// Collect every candidate with house strictly below this value.
    pub threshold: Option<f64>,
    pub prune_patterns: bool,
    pub prune_real_root: bool,
    /// Skip half lists that are polynomials in `x^k` for some `k > 1`.
    pub skip_nonprimitive: bool,
    /// `(index, total)`: this run covers shard `index` of `total`.
    pub shard: (usize, usize),
    pub checkpoint: Option<PathBuf>,
}

impl SearchConfig {
    pub fn new(degree: usize, height: i64) -> Self {
        Self {
            degree,
            height,
            threshold: None,
            prune_patterns: true,
            prune_real_root: true,
            skip_nonprimitive: false,
            shard: (0, 1),
            checkpoint: None,
        }
    }

    /// Height used when none is given: 3 up to degree 10, 2 up to 20,
    /// 1 beyond.
    pub fn default_height(degree: usize) -> i64 {
        match degree {
            0..=10 => 3,
            11..=20 => 2,
            _ => 1,
        }
    }

    pub fn with_threshold(mut self, t: f64) -> Self {
        self.threshold = Some(t);
        self
    }

    pub fn with_shard(mut self, index: usize, total: usize) -> Self {
        self.shard = (index, total);
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::InvalidConfig(m));
        if self.degree < 2 || self.degree % 2 != 0 {
            return bad(format!(
                "degree must be even and at least 2, got {}",
                self.degree
            ));
        }
        if self.height < 0 {
            return bad(format!("height must be nonnegative, got {}", self.height));
        }
        if let Some(t) = self.threshold {
            if !(t > 1.0) {
                return bad(format!("threshold must exceed 1, got {t}"));
            }
        }
        let (i, n) = self.shard;
        if n == 0 || i >= n {
            return bad(format!("shard {i}/{n} is out of range"));
        }
        if self.space_size().is_none() {
            return bad("search space is too large to index".into());
        }
        Ok(())
    }

    fn key(&self) -> RecordKey {
        RecordKey {
            degree: self.degree,
            height: self.height,
            threshold: self.threshold,
            skip_nonprimitive: self.skip_nonprimitive,
        }
    }

    fn digits(&self) -> usize {
        self.degree / 2
    }

    fn base(&self) -> u128 {
        2 * self.height as u128 + 1
    }

    /// Number of half lists, canonical or not.
    pub fn space_size(&self) -> Option<u128> {
        self.base().checked_pow(self.digits() as u32)
    }

    /// Index range `[start, end)` covered by this shard.
    pub fn shard_range(&self) -> (u128, u128) {
        let total = self.space_size().expect("validated");
        let (i, n) = (self.shard.0 as u128, self.shard.1 as u128);
        (total * i / n, total * (i + 1) / n)
    }
}

/// Configuration fields that determine a search result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecordKey {
    pub degree: usize,
    pub height: i64,
    pub threshold: Option<f64>,
    pub skip_nonprimitive: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchHit {
    pub half: Vec<i64>,
    pub poly: IntPolynomial,
    pub house: f64,
    pub nu: usize,
}

impl SearchHit {
    fn order(&self, other: &Self) -> std::cmp::Ordering {
        self.house
            .total_cmp(&other.house)
            .then_with(|| self.half.cmp(&other.half))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalRecord {
    pub key: RecordKey,
    /// Candidate of least house, lexicographically smallest half list
    /// among ties. `None` when the space holds no candidate.
    pub best: Option<SearchHit>,
    /// All candidates within [`TIE_TOL`] of the least house, including
    /// `best`, ordered by half list.
    pub ties: Vec<SearchHit>,
    /// Candidates below the threshold, ascending by house.
    pub candidates: Vec<SearchHit>,
}

impl ExtremalRecord {
    pub fn degree(&self) -> usize {
        self.key.degree
    }

    pub fn best_house(&self) -> Option<f64> {
        self.best.as_ref().map(|h| h.house)
    }

    pub fn best_poly(&self) -> Option<&IntPolynomial> {
        self.best.as_ref().map(|h| &h.poly)
    }

    fn from_hits(key: RecordKey, near: Vec<SearchHit>, mut below: Vec<SearchHit>) -> Self {
        let min = near.iter().map(|h| h.house).fold(f64::INFINITY, f64::min);
        let mut ties: Vec<SearchHit> = near
            .into_iter()
            .filter(|h| h.house <= min + TIE_TOL)
            .collect();
        ties.sort_by(|a, b| a.half.cmp(&b.half));
        ties.dedup_by(|a, b| a.half == b.half);
        below.sort_by(|a, b| a.half.cmp(&b.half));
        below.dedup_by(|a, b| a.half == b.half);
        below.sort_by(SearchHit::order);
        Self {
            key,
            best: ties.first().cloned(),
            ties,
            candidates: below,
        }
    }
}

/// Counters describing where polynomials left the pipeline.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub visited: u64,
    pub skipped_nonprimitive: u64,
    pub pruned_pattern: u64,
    pub pruned_probe: u64,
    pub rejected_house: u64,
    pub rejected_gate: u64,
    pub accepted: u64,
}

/// First nonzero odd-exponent coefficient positive (or none nonzero).
pub fn is_canonical(half: &[i64]) -> bool {
    half.iter()
        .skip(1)
        .step_by(2)
        .find(|&&c| c != 0)
        .is_none_or(|&c| c > 0)
}

/// Representative of `{P(x), P(-x)}` that [`enumerate_half`] visits.
pub fn canonical_half(half: &[i64]) -> Vec<i64> {
    if is_canonical(half) {
        half.to_vec()
    } else {
        half.iter()
            .enumerate()
            .map(|(j, &c)| if j % 2 == 1 { -c } else { c })
            .collect()
    }
}

/// Odometer over half lists in index order.
struct Odometer {
    digits: Vec<i64>,
    height: i64,
    index: u128,
    end: u128,
}

impl Odometer {
    fn new(config: &SearchConfig, start: u128, end: u128) -> Self {
        let n = config.digits();
        let base = config.base();
        let mut digits = vec![0i64; n];
        let mut rest = start;
        for slot in digits.iter_mut().rev() {
            *slot = (rest % base) as i64 - config.height;
            rest /= base;
        }
        Self {
            digits,
            height: config.height,
            index: start,
            end,
        }
    }

    /// Current half list, or `None` when the range is exhausted.
    fn current(&self) -> Option<Vec<i64>> {
        (self.index < self.end).then(|| {
            let mut h = Vec::with_capacity(self.digits.len() + 1);
            h.push(1);
            h.extend_from_slice(&self.digits);
            h
        })
    }

    fn advance(&mut self) {
        self.index += 1;
        for slot in self.digits.iter_mut().rev() {
            if *slot < self.height {
                *slot += 1;
                return;
            }
            *slot = -self.height;
        }
    }
}

/// Calls `visitor` on every canonical half list of the configured shard
/// and returns how many were emitted.
pub fn enumerate_half(config: &SearchConfig, mut visitor: impl FnMut(&HalfSpec)) -> u64 {
    config.validate().expect("valid search configuration");
    let (start, end) = config.shard_range();
    let mut odo = Odometer::new(config, start, end);
    let mut count = 0;
    while let Some(half) = odo.current() {
        if is_canonical(&half) {
            visitor(&HalfSpec::new(half).expect("monic"));
            count += 1;
        }
        odo.advance();
    }
    count
}

/// Mutable state of a running search; also what a checkpoint stores.
#[derive(Debug, Clone, PartialEq)]
struct Running {
    next: u128,
    near: Vec<SearchHit>,
    below: Vec<SearchHit>,
    best: f64,
}

impl Running {
    fn gate(&self, threshold: Option<f64>) -> f64 {
        let t = threshold.unwrap_or(f64::NEG_INFINITY);
        let b = self.best + TIE_TOL;
        t.max(b)
    }

    fn push(&mut self, hit: SearchHit, threshold: Option<f64>) {
        if threshold.is_some_and(|t| hit.house < t) {
            self.below.push(hit.clone());
        }
        if hit.house <= self.best + TIE_TOL {
            if hit.house < self.best {
                self.best = hit.house;
                let cut = self.best + TIE_TOL;
                self.near.retain(|h| h.house <= cut);
            }
            self.near.push(hit);
        }
    }
}

fn probe_rejects(p: &IntPolynomial, gate: f64) -> bool {
    PROBES.iter().any(|&(num, den)| {
        let x = num as f64 / den as f64;
        x >= gate + PROBE_MARGIN && (p.sign_at(num, den) <= 0 || p.sign_at(-num, den) <= 0)
    })
}

enum Verdict {
    Hit(SearchHit),
    Rejected,
}

fn examine(
    config: &SearchConfig,
    half: Vec<i64>,
    gate: f64,
    stats: &mut SearchStats,
) -> Result<Verdict, SearchError> {
    let p = HalfSpec::new(half.clone()).expect("monic").expand();
    stats.visited += 1;
    if config.skip_nonprimitive && !p.is_primitive() {
        stats.skipped_nonprimitive += 1;
        return Ok(Verdict::Rejected);
    }
    if config.prune_patterns {
        if let Some(pat) = bounds::match_pattern_up_to_sign(&p) {
            if pat.guaranteed_lower_bound() >= gate {
                stats.pruned_pattern += 1;
                return Ok(Verdict::Rejected);
            }
        }
    }
    if config.prune_real_root && probe_rejects(&p, gate) {
        stats.pruned_probe += 1;
        return Ok(Verdict::Rejected);
    }
    match roots::house_screen(&p) {
        Ok((_, lower)) if lower >= gate => {
            stats.rejected_house += 1;
            return Ok(Verdict::Rejected);
        }
        Err(RootError::NotSquareFree) => {
            stats.rejected_gate += 1;
            return Ok(Verdict::Rejected);
        }
        _ => {}
    }
    let house = match roots::house(&p) {
        Ok((h, _)) => h,
        Err(RootError::NotSquareFree) => {
            stats.rejected_gate += 1;
            return Ok(Verdict::Rejected);
        }
        Err(e) => {
            if algebra::minimal_gate(&p).is_candidate() {
                return Err(e.into());
            }
            stats.rejected_gate += 1;
            return Ok(Verdict::Rejected);
        }
    };
    if house >= gate {
        stats.rejected_house += 1;
        return Ok(Verdict::Rejected);
    }
    if !matches!(algebra::minimal_gate(&p), Classification::Candidate) {
        stats.rejected_gate += 1;
        return Ok(Verdict::Rejected);
    }
    let nu = roots::count_outside_unit(&p)?;
    stats.accepted += 1;
    Ok(Verdict::Hit(SearchHit {
        half,
        poly: p,
        house,
        nu,
    }))
}

/// How often (in odometer steps) a checkpoint is written.
const CHECKPOINT_EVERY: u128 = 1 << 14;

/// Runs the configured shard, reporting `(done, total)` odometer steps to
/// `progress` from time to time.
pub fn search_with_progress(
    config: &SearchConfig,
    mut progress: impl FnMut(u128, u128),
) -> Result<(ExtremalRecord, SearchStats), SearchError> {
    config.validate()?;
    let (start, end) = config.shard_range();
    let mut state = Running {
        next: start,
        near: Vec::new(),
        below: Vec::new(),
        best: f64::INFINITY,
    };
    if let Some(path) = &config.checkpoint {
        if path.exists() {
            let saved = load_checkpoint(path)?;
            if saved.key != config.key() || saved.shard != config.shard {
                return Err(SearchError::Checkpoint(format!(
                    "{} was written by a different configuration",
                    path.display()
                )));
            }
            state = Running {
                next: saved.next,
                best: saved
                    .near
                    .iter()
                    .map(|h| h.house)
                    .fold(f64::INFINITY, f64::min),
                near: saved.near,
                below: saved.below,
            };
        }
    }
    let mut stats = SearchStats::default();
    let mut odo = Odometer::new(config, state.next, end);
    while let Some(half) = odo.current() {
        if is_canonical(&half) {
            let gate = state.gate(config.threshold);
            if let Verdict::Hit(hit) = examine(config, half, gate, &mut stats)? {
                state.push(hit, config.threshold);
            }
        }
        odo.advance();
        state.next = odo.index;
        if (odo.index - start) % CHECKPOINT_EVERY == 0 {
            progress(odo.index - start, end - start);
            if let Some(path) = &config.checkpoint {
                save_checkpoint(path, &snapshot(config, &state))?;
            }
        }
    }
    progress(end - start, end - start);
    if let Some(path) = &config.checkpoint {
        save_checkpoint(path, &snapshot(config, &state))?;
    }
    let record = ExtremalRecord::from_hits(config.key(), state.near, state.below);
    Ok((record, stats))
}

fn snapshot(config: &SearchConfig, state: &Running) -> CheckpointState {
    CheckpointState {
        key: config.key(),
        shard: config.shard,
        next: state.next,
        near: state.near.clone(),
        below: state.below.clone(),
    }
}

/// Extremal record of the configured shard.
pub fn search_extremal(config: &SearchConfig) -> Result<ExtremalRecord, SearchError> {
    search_with_progress(config, |_, _| {}).map(|(r, _)| r)
}

/// Combines records of disjoint shards of one search.
pub fn partition_merge(records: &[ExtremalRecord]) -> Result<ExtremalRecord, SearchError> {
    let first = records
        .first()
        .ok_or_else(|| SearchError::InvalidConfig("no records to merge".into()))?;
    if records.iter().any(|r| r.key != first.key) {
        return Err(SearchError::MismatchedConfigs);
    }
    let near = records
        .iter()
        .flat_map(|r| r.ties.iter().cloned())
        .collect();
    let below = records
        .iter()
        .flat_map(|r| r.candidates.iter().cloned())
        .collect();
    Ok(ExtremalRecord::from_hits(first.key, near, below))
}

/// Reference search without pruning or symmetry reduction: every half
/// list is classified and its house computed, and hits are reported in
/// canonical form.
pub fn brute_force(
    degree: usize,
    height: i64,
    threshold: Option<f64>,
) -> Result<ExtremalRecord, SearchError> {
    let mut config = SearchConfig::new(degree, height);
    config.threshold = threshold;
    config.validate()?;
    let total = config.space_size().expect("validated");
    let mut odo = Odometer::new(&config, 0, total);
    let mut hits: Vec<SearchHit> = Vec::new();
    while let Some(half) = odo.current() {
        odo.advance();
        let p = HalfSpec::new(half.clone()).expect("monic").expand();
        if !algebra::minimal_gate(&p).is_candidate() {
            continue;
        }
        let (house, _) = roots::house(&p)?;
        let nu = roots::count_outside_unit(&p)?;
        let canon = canonical_half(&half);
        let poly = HalfSpec::new(canon.clone()).expect("monic").expand();
        hits.push(SearchHit {
            half: canon,
            poly,
            house,
            nu,
        });
    }
    let below = hits
        .iter()
        .filter(|h| threshold.is_some_and(|t| h.house < t))
        .cloned()
        .collect();
    Ok(ExtremalRecord::from_hits(config.key(), hits, below))
}
