//! Puncturing a code until a bounded decoder becomes complete.
//!
//! A code `C` of covering radius `ρ` with a decoder correcting `t < ρ` errors
//! is punctured at a set `P` of coordinates so that the shorter code `C'` has
//! covering radius `t`. A received `y'` for `C'` is decoded by completing it
//! with every possible "prefix" on `P` and running the decoder of `C`: any
//! codeword of `C'` within distance `t` of `y'` lifts to a codeword of `C`
//! within distance `t` of one of these completions.
//!
//! Coordinates are 0-based throughout this module; bit `i` of a prefix value
//! is the value placed on the `i`-th smallest punctured coordinate.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::codes::{ball_volume, visit_weight, BoundedDecoder, CosetLeaderTable, Limits, LinearCode};
use crate::error::{Error, Result};
use crate::linalg::BitVector;

/// Largest puncture set the completion loops accept.
pub const MAX_PUNCTURED: usize = 24;

fn complement(n: usize, punctured: &[usize]) -> Vec<usize> {
    let mut gone = vec![false; n];
    for &p in punctured {
        gone[p] = true;
    }
    (0..n).filter(|&i| !gone[i]).collect()
}

fn normalize(n: usize, punctured: &[usize]) -> Result<Vec<usize>> {
    let mut p = punctured.to_vec();
    p.sort_unstable();
    p.dedup();
    if let Some(&bad) = p.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    if p.len() >= n {
        return Err(Error::invalid("puncture set must leave at least one coordinate"));
    }
    if p.len() > MAX_PUNCTURED {
        return Err(Error::invalid(format!("{} punctured coordinates exceed the supported {MAX_PUNCTURED}", p.len())));
    }
    Ok(p)
}

/// Result of nearest-codeword decoding in a punctured code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearestOutcome {
    /// Closest codeword of `C'` found, `None` when every completion failed.
    pub codeword: Option<BitVector>,
    pub distance: Option<usize>,
    /// Number of calls to the parent decoder.
    pub calls: usize,
}

/// Decoder for `C` punctured at `P`, built on a bounded decoder of `C`.
#[derive(Clone)]
pub struct PuncturedDecoder {
    parent: Arc<dyn BoundedDecoder>,
    punctured: Vec<usize>,
    kept: Vec<usize>,
    child: LinearCode,
}

impl std::fmt::Debug for PuncturedDecoder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PuncturedDecoder")
            .field("n", &self.parent.code().len())
            .field("punctured", &self.punctured)
            .finish()
    }
}

impl PuncturedDecoder {
    pub fn new(parent: Arc<dyn BoundedDecoder>, punctured: &[usize]) -> Result<Self> {
        let n = parent.code().len();
        let punctured = normalize(n, punctured)?;
        let kept = complement(n, &punctured);
        let child = parent.code().puncture(&punctured)?;
        Ok(PuncturedDecoder { parent, punctured, kept, child })
    }

    pub fn parent(&self) -> &Arc<dyn BoundedDecoder> {
        &self.parent
    }

    /// The punctured code `C'`.
    pub fn code(&self) -> &LinearCode {
        &self.child
    }

    pub fn punctured(&self) -> &[usize] {
        &self.punctured
    }

    /// Coordinates of the parent that survive, increasing.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn radius(&self) -> usize {
        self.parent.radius()
    }

    fn check(&self, y_prime: &BitVector) -> Result<()> {
        if y_prime.len() != self.kept.len() {
            return Err(Error::LengthMismatch { expected: self.kept.len(), actual: y_prime.len() });
        }
        Ok(())
    }

    fn completion(&self, y_prime: &BitVector, prefix: u64) -> BitVector {
        let mut y = BitVector::zeros(self.parent.code().len());
        y.scatter(&self.kept, y_prime);
        for (i, &p) in self.punctured.iter().enumerate() {
            if (prefix >> i) & 1 == 1 {
                y.set(p, true);
            }
        }
        y
    }

    /// Decodes every completion of `y'` and returns the distinct projections
    /// of the decoded codewords, sorted lexicographically. The list contains
    /// every codeword of `C'` within distance `t` of `y'`, and possibly some
    /// farther ones.
    pub fn decode_list(&self, y_prime: &BitVector) -> Result<Vec<BitVector>> {
        self.check(y_prime)?;
        let mut out: Vec<BitVector> = (0u64..1 << self.punctured.len())
            .filter_map(|prefix| self.parent.decode(&self.completion(y_prime, prefix)))
            .map(|c| c.project(&self.kept))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// A closest codeword of `C'` to `y'`, visiting as few completions as the
    /// incumbent allows.
    ///
    /// Once a candidate at distance `D` is known, a better codeword (distance
    /// at most `D - 1`) whose prefix lies within `t - D + 1` of an already
    /// tried prefix would have been returned by that decoder call. Prefixes are
    /// tried starting from all-zero, each next one being the untried prefix
    /// farthest from every tried prefix (smallest value on ties), until every
    /// prefix is covered. The answer is exact whenever `d(y', C') <= t`.
    pub fn decode_nearest(&self, y_prime: &BitVector) -> Result<NearestOutcome> {
        self.check(y_prime)?;
        let t = self.radius();
        let np = self.punctured.len();
        let total = 1usize << np;
        let mut min_dist = vec![u8::MAX; total];
        let mut best: Option<(usize, BitVector)> = None;
        let mut calls = 0;
        let mut next = Some(0u64);
        while let Some(prefix) = next {
            calls += 1;
            if let Some(c) = self.parent.decode(&self.completion(y_prime, prefix)) {
                let c_prime = c.project(&self.kept);
                let d = c_prime.distance(y_prime);
                let better = match &best {
                    None => true,
                    Some((bd, bc)) => d < *bd || (d == *bd && c_prime < *bc),
                };
                if better {
                    best = Some((d, c_prime));
                }
            }
            for (p, md) in min_dist.iter_mut().enumerate() {
                let d = (p as u64 ^ prefix).count_ones() as u8;
                if d < *md {
                    *md = d;
                }
            }
            let incumbent = best.as_ref().map_or(t + 1, |(d, _)| *d);
            if incumbent == 0 {
                break;
            }
            let covered = (t + 1 - incumbent) as u8;
            next = min_dist
                .iter()
                .enumerate()
                .filter(|(_, &md)| md > covered)
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                .map(|(p, _)| p as u64);
        }
        Ok(match best {
            Some((d, c)) => NearestOutcome { codeword: Some(c), distance: Some(d), calls },
            None => NearestOutcome { codeword: None, distance: None, calls },
        })
    }
}

impl BoundedDecoder for PuncturedDecoder {
    fn code(&self) -> &LinearCode {
        &self.child
    }

    fn radius(&self) -> usize {
        self.parent.radius()
    }

    fn decode(&self, y: &BitVector) -> Option<BitVector> {
        let out = self.decode_nearest(y).ok()?;
        match out.distance {
            Some(d) if d <= self.radius() => out.codeword,
            _ => None,
        }
    }
}

/// Algorithm-1 style list decoding as a free function.
pub fn punctured_decode_list(
    punctured: &[usize],
    y_prime: &BitVector,
    decoder: Arc<dyn BoundedDecoder>,
) -> Result<Vec<BitVector>> {
    PuncturedDecoder::new(decoder, punctured)?.decode_list(y_prime)
}

pub fn punctured_decode_nearest(
    punctured: &[usize],
    y_prime: &BitVector,
    decoder: Arc<dyn BoundedDecoder>,
) -> Result<NearestOutcome> {
    PuncturedDecoder::new(decoder, punctured)?.decode_nearest(y_prime)
}

/// Number of decoder calls an ideal covering of the prefix space needs once
/// the error weight on the kept coordinates is known:
/// `ceil(q^|P| / V_q(|P|, t - wt(e')))`.
pub fn ideal_call_count(q: u64, punctured: u64, t: u64, error_weight: u64) -> u64 {
    let space = num_bigint::BigUint::from(q).pow(punctured as u32);
    let ball = ball_volume(q, punctured, t.saturating_sub(error_weight));
    let calls = (&space + &ball - 1u32) / &ball;
    calls.try_into().unwrap_or(u64::MAX)
}

/// When the greedy puncture search stops.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum StopPolicy {
    /// Until the covering radius equals `t`.
    ReachT,
    /// Until the embedding probability reaches the target (or `ρ' = t`).
    TargetProbability { p_target: f64 },
    /// At most this many punctures (earlier if `ρ' = t`).
    MaxPunctures { p_max: usize },
}

/// How the next coordinate is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// Most frequent coordinate over the supports of every minimum-weight
    /// vector of every coset whose leader weight exceeds `t`.
    #[default]
    AllMinimumWeight,
    /// As above but counting only the canonical leader of each coset.
    CanonicalLeaders,
    /// The leading systematic coordinates, in order.
    FirstPositions,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PunctureOptions {
    pub policy: StopPolicy,
    pub selection: Selection,
    pub limits: Limits,
}

impl Default for PunctureOptions {
    fn default() -> Self {
        PunctureOptions { policy: StopPolicy::ReachT, selection: Selection::default(), limits: Limits::default() }
    }
}

fn serialize_one_based<S: Serializer>(p: &usize, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(*p as u64 + 1)
}

/// One iteration of the greedy search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    /// Punctured coordinate of the original code (0-based; 1-based in JSON).
    #[serde(serialize_with = "serialize_one_based")]
    pub position: usize,
    /// How often the coordinate occurred in the counted supports.
    pub occurrences: u64,
    /// Cosets with leader weight above `t` before this puncture.
    pub heavy_cosets: u64,
    pub length_after: usize,
    pub redundancy_after: usize,
    pub rho_after: usize,
    pub histogram_after: Vec<u64>,
    pub p_s_after: f64,
}

#[derive(Debug, Clone)]
pub struct PunctureResult {
    pub parent: LinearCode,
    /// Sorted, coordinates of the parent.
    pub punctured: Vec<usize>,
    pub child: LinearCode,
    pub initial_rho: usize,
    pub achieved_rho: usize,
    pub t: usize,
    pub converged: bool,
    pub trace: Vec<TraceStep>,
    pub child_table: CosetLeaderTable,
}

impl PunctureResult {
    /// Coordinates in human-facing (1-based) numbering.
    pub fn punctured_one_based(&self) -> Vec<usize> {
        self.punctured.iter().map(|p| p + 1).collect()
    }

    pub fn embedding_probability(&self) -> BigRational {
        BigRational::new(self.child_table.count_within(self.t).into(), self.child_table.num_cosets().into())
    }
}

fn probability(table: &CosetLeaderTable, t: usize) -> f64 {
    table.count_within(t) as f64 / table.num_cosets() as f64
}

/// Occurrence count of each coordinate over minimum-weight vectors of the
/// cosets whose leader weight exceeds `t`.
fn occurrence_counts(
    code: &LinearCode,
    table: &CosetLeaderTable,
    t: usize,
    selection: Selection,
    limits: &Limits,
) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; code.len()];
    match selection {
        Selection::CanonicalLeaders => {
            for s in 0..table.num_cosets() {
                if table.leader_weight(s) > t {
                    for p in table.leader(s).ones_iter() {
                        counts[p] += 1;
                    }
                }
            }
        }
        Selection::AllMinimumWeight | Selection::FirstPositions => {
            let weights = table.weights();
            let mut visited = 0u64;
            for w in t + 1..=table.covering_radius() {
                visited += visit_weight(code.column_syndromes(), w, |sup, s| {
                    if weights[s as usize] as usize == w {
                        for &p in sup {
                            counts[p] += 1;
                        }
                    }
                    true
                });
                if visited > limits.max_enumerated {
                    return Err(Error::Resource {
                        what: "minimum-weight vector enumeration",
                        required: format!("{visited} vectors"),
                        limit: format!("{} vectors", limits.max_enumerated),
                    });
                }
            }
        }
    }
    Ok(counts)
}

/// Greedy search for a puncture set that brings the covering radius down
/// to `t` (or meets another stop policy).
pub fn find_puncture_set(code: &LinearCode, t: usize, options: &PunctureOptions) -> Result<PunctureResult> {
    let limits = &options.limits;
    let mut table = CosetLeaderTable::build(code, limits)?;
    let initial_rho = table.covering_radius();
    if t > initial_rho {
        return Err(Error::invalid(format!("t={t} exceeds the covering radius {initial_rho}")));
    }
    if let StopPolicy::TargetProbability { p_target } = options.policy {
        if !(p_target > 0.0 && p_target <= 1.0) {
            return Err(Error::invalid(format!("target probability {p_target} outside (0, 1]")));
        }
        if p_target <= probability(&table, t) {
            return Err(Error::invalid(format!(
                "target probability {p_target} is already met by the unpunctured code ({})",
                probability(&table, t)
            )));
        }
    }

    let n = code.len();
    let mut punctured: Vec<usize> = Vec::new();
    let mut child = code.clone();
    let mut trace = Vec::new();
    let satisfied = |table: &CosetLeaderTable| match options.policy {
        StopPolicy::TargetProbability { p_target } => table.covering_radius() <= t || probability(table, t) >= p_target,
        _ => table.covering_radius() <= t,
    };
    loop {
        if satisfied(&table) {
            break;
        }
        if let StopPolicy::MaxPunctures { p_max } = options.policy {
            if punctured.len() >= p_max {
                break;
            }
        }
        if punctured.len() + 1 >= n || punctured.len() >= MAX_PUNCTURED {
            break;
        }
        let kept = complement(n, &punctured);
        let heavy = table.num_cosets() - table.count_within(t);
        let (position, occurrences) = match options.selection {
            Selection::FirstPositions => {
                let pos = code
                    .information_set()
                    .iter()
                    .copied()
                    .chain(0..n)
                    .find(|p| !punctured.contains(p))
                    .expect("some coordinate is left");
                (pos, 0)
            }
            sel => {
                let counts = occurrence_counts(&child, &table, t, sel, limits)?;
                let (i, &c) = counts
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                    .expect("code is nonempty");
                (kept[i], c)
            }
        };
        punctured.push(position);
        punctured.sort_unstable();
        child = code.puncture(&punctured)?;
        table = CosetLeaderTable::build(&child, limits)?;
        trace.push(TraceStep {
            step: trace.len() + 1,
            position,
            occurrences,
            heavy_cosets: heavy,
            length_after: child.len(),
            redundancy_after: child.redundancy(),
            rho_after: table.covering_radius(),
            histogram_after: table.histogram().to_vec(),
            p_s_after: probability(&table, t),
        });
    }
    let achieved_rho = table.covering_radius();
    let converged = satisfied(&table);
    Ok(PunctureResult {
        parent: code.clone(),
        punctured,
        child,
        initial_rho,
        achieved_rho,
        t,
        converged,
        trace,
        child_table: table,
    })
}

/// Outcome of checking the covering-radius bound for the puncture set `P_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadiusBoundReport {
    pub j: usize,
    pub rho: usize,
    /// Intersection of the supports of all minimum-distance error vectors of
    /// words at distance at least `ρ - j` from the code.
    pub p_j: Vec<usize>,
    pub bound: usize,
    pub actual: usize,
    pub ok: bool,
    /// `P_j` was empty, so nothing was punctured.
    pub degenerate: bool,
}

/// Punctures at `P_j` and compares the covering radius with
/// `max(ρ - j - 1, ρ - |P_j|)`.
pub fn radius_bound_check(code: &LinearCode, j: usize, limits: &Limits) -> Result<RadiusBoundReport> {
    let table = CosetLeaderTable::build(code, limits)?;
    let rho = table.covering_radius();
    if j > rho {
        return Err(Error::invalid(format!("j={j} exceeds the covering radius {rho}")));
    }
    let n = code.len();
    let weights = table.weights();
    let mut inter = vec![true; n];
    let mut alive = n;
    let mut w = rho - j;
    while w <= rho && alive > 0 {
        let mut mark = vec![false; n];
        visit_weight(code.column_syndromes(), w, |sup, s| {
            if weights[s as usize] as usize != w {
                return true;
            }
            mark.iter_mut().for_each(|m| *m = false);
            for &p in sup {
                mark[p] = true;
            }
            for (i, keep) in inter.iter_mut().enumerate() {
                if *keep && !mark[i] {
                    *keep = false;
                    alive -= 1;
                }
            }
            alive > 0
        });
        w += 1;
    }
    let p_j: Vec<usize> = (0..n).filter(|&i| inter[i]).collect();
    if p_j.is_empty() || p_j.len() >= n {
        return Ok(RadiusBoundReport { j, rho, p_j, bound: rho, actual: rho, ok: true, degenerate: true });
    }
    let child = code.puncture(&p_j)?;
    let actual = CosetLeaderTable::build(&child, limits)?.covering_radius();
    let bound = (rho as i64 - j as i64 - 1).max(rho as i64 - p_j.len() as i64).max(0) as usize;
    Ok(RadiusBoundReport { j, rho, p_j, bound, actual, ok: actual <= bound, degenerate: false })
}

/// `V_q(n, t) / q^r`: the probability that a uniformly random coset has a
/// leader of weight at most `t`, valid when every vector of weight at most
/// `t` is a coset leader.
pub fn embedding_probability(n: u64, r: u64, t: u64, q: u64) -> BigRational {
    let num = ball_volume(q, n, t);
    let den = num_bigint::BigUint::from(q).pow(r as u32);
    let p = BigRational::new(num.into(), den.into());
    if p > BigRational::one() {
        BigRational::one()
    } else {
        p
    }
}
