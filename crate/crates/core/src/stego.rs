//! Stegoschemes built from linear codes.
//!
//! The message is the syndrome: `Ext(v) = v H^T`. Embedding moves the cover
//! `x` into the coset with the requested syndrome, changing as few bits as
//! the decoder can manage.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{to_f64, BoundedDecoder, CosetLeaderTable, Limits, LinearCode};
use crate::error::{Error, Result};
use crate::linalg::BitVector;
use crate::puncturing::PuncturedDecoder;

/// How a scheme finds the stego vector.
#[derive(Clone)]
pub enum Embedder {
    /// Coset-leader lookup: `Emb(x, m) = x - cl(x H^T - m)`.
    CosetTable(Arc<CosetLeaderTable>),
    /// `Emb(x, m) = y + dec(x - y)` with `y H^T = m`.
    Bounded(Arc<dyn BoundedDecoder>),
    /// As `Bounded`, decoding in the punctured code by completions.
    Punctured(Arc<PuncturedDecoder>),
}

impl std::fmt::Debug for Embedder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Embedder::CosetTable(_) => f.write_str("CosetTable"),
            Embedder::Bounded(d) => write!(f, "Bounded(t={})", d.radius()),
            Embedder::Punctured(d) => write!(f, "Punctured({:?})", d.punctured()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbedOutcome {
    Stego(BitVector),
    /// The decoder could not reach the requested coset within its radius.
    Failure,
}

impl EmbedOutcome {
    pub fn stego(self) -> Option<BitVector> {
        match self {
            EmbedOutcome::Stego(s) => Some(s),
            EmbedOutcome::Failure => None,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, EmbedOutcome::Failure)
    }
}

#[derive(Debug, Clone)]
pub struct StegoScheme {
    code: LinearCode,
    embedder: Embedder,
    t_embed: usize,
    proper: bool,
}

impl StegoScheme {
    /// Crandall-style realization with a full coset-leader table. Proper, and
    /// never fails.
    pub fn coset_table(code: LinearCode, limits: &Limits) -> Result<Self> {
        let table = CosetLeaderTable::build(&code, limits)?;
        let t_embed = table.covering_radius();
        Ok(StegoScheme { code, embedder: Embedder::CosetTable(Arc::new(table)), t_embed, proper: true })
    }

    /// Realization through a bounded-distance decoder; fails on cosets whose
    /// leader is heavier than the decoder radius.
    pub fn bounded(decoder: Arc<dyn BoundedDecoder>) -> Self {
        let code = decoder.code().clone();
        let t_embed = decoder.radius();
        StegoScheme { code, embedder: Embedder::Bounded(decoder), t_embed, proper: false }
    }

    /// Realization on the punctured code. `complete` states that the punctured
    /// code's covering radius equals the decoder radius, so embedding always
    /// succeeds with a minimum number of changes.
    pub fn punctured(decoder: PuncturedDecoder, complete: bool) -> Self {
        let code = decoder.code().clone();
        let t_embed = decoder.radius();
        StegoScheme { code, embedder: Embedder::Punctured(Arc::new(decoder)), t_embed, proper: complete }
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn embedder(&self) -> &Embedder {
        &self.embedder
    }

    /// Cover length.
    pub fn n(&self) -> usize {
        self.code.len()
    }

    /// Message length.
    pub fn r(&self) -> usize {
        self.code.redundancy()
    }

    /// Largest number of changes a successful embedding makes.
    pub fn t_embed(&self) -> usize {
        self.t_embed
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn embed(&self, x: &BitVector, msg: &BitVector) -> Result<EmbedOutcome> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), actual: x.len() });
        }
        if msg.len() != self.r() {
            return Err(Error::LengthMismatch { expected: self.r(), actual: msg.len() });
        }
        let out = match &self.embedder {
            Embedder::CosetTable(table) => {
                let s = self.code.syndrome(x)?.xor(msg);
                let idx = s.as_word().expect("table schemes have r <= 63");
                Some(x.xor(&table.leader(idx)))
            }
            Embedder::Bounded(dec) => {
                let y = self.code.syndrome_preimage(msg)?;
                dec.decode(&x.xor(&y)).map(|c| c.xor(&y))
            }
            Embedder::Punctured(dec) => {
                let y = self.code.syndrome_preimage(msg)?;
                let near = dec.decode_nearest(&x.xor(&y))?;
                match (near.codeword, near.distance) {
                    (Some(c), Some(d)) if d <= self.t_embed => Some(c.xor(&y)),
                    _ => None,
                }
            }
        };
        Ok(match out {
            Some(s) => EmbedOutcome::Stego(s),
            None => EmbedOutcome::Failure,
        })
    }

    pub fn extract(&self, v: &BitVector) -> Result<BitVector> {
        self.code.syndrome(v)
    }

    /// Exact parameters from the coset-leader table of the scheme's code. When
    /// the table exceeds `limits` the table-derived fields are left empty.
    pub fn params(&self, limits: &Limits) -> SchemeParams {
        let n = self.n();
        let r = self.r();
        let complete_radius = match &self.embedder {
            Embedder::CosetTable(table) => Some(table.covering_radius()),
            Embedder::Punctured(_) if self.proper => Some(self.t_embed),
            _ => None,
        };
        let table = match &self.embedder {
            Embedder::CosetTable(table) => Some((**table).clone()),
            _ => CosetLeaderTable::build(&self.code, limits).ok(),
        };
        let Some(table) = table else {
            return SchemeParams {
                m: None,
                n,
                r,
                t_max: complete_radius,
                t_avg: None,
                t_avg_decodable: None,
                p_s: if complete_radius.is_some() { Some(ratio(1, 1)) } else { None },
                p_s_3m: None,
            };
        };
        let limit = match &self.embedder {
            Embedder::CosetTable(_) => table.covering_radius(),
            _ => self.t_embed,
        };
        SchemeParams {
            m: None,
            n,
            r,
            t_max: Some(table.covering_radius()),
            t_avg: Some(table.average_radius()),
            t_avg_decodable: Some(table.average_radius_within(limit)),
            p_s: Some(ratio(table.count_within(limit), table.num_cosets())),
            p_s_3m: None,
        }
    }
}

pub fn embed(scheme: &StegoScheme, x: &BitVector, msg: &BitVector) -> Result<EmbedOutcome> {
    scheme.embed(x, msg)
}

pub fn extract(scheme: &StegoScheme, v: &BitVector) -> Result<BitVector> {
    scheme.extract(v)
}

pub fn scheme_params(scheme: &StegoScheme, limits: &Limits) -> SchemeParams {
    scheme.params(limits)
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Exact parameters of a stegoscheme. Optional fields are unavailable when
/// the coset enumeration was out of reach.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeParams {
    pub m: Option<u32>,
    pub n: usize,
    pub r: usize,
    /// Worst-case number of changes.
    pub t_max: Option<usize>,
    /// Average number of changes over all cosets.
    pub t_avg: Option<BigRational>,
    /// Average number of changes over the cosets the decoder reaches.
    pub t_avg_decodable: Option<BigRational>,
    /// Embedding probability over `2^r` equally likely cosets.
    pub p_s: Option<BigRational>,
    /// Success count divided by `2^{3m}` instead of `2^r`, the normalization
    /// customary for BCH(3) tables (identical when `r = 3m`).
    pub p_s_3m: Option<BigRational>,
}

fn div(num: usize, den: &BigRational) -> Option<BigRational> {
    if den.is_zero() {
        None
    } else {
        Some(BigRational::from_integer(num.into()) / den)
    }
}

impl SchemeParams {
    pub fn with_m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    /// Relative payload `r/n`.
    pub fn a(&self) -> BigRational {
        ratio(self.r as u64, self.n as u64)
    }

    fn t_rational(&self) -> Option<BigRational> {
        self.t_max.map(|t| BigRational::from_integer(t.into()))
    }

    /// Change rate `T/n`.
    pub fn change_rate(&self) -> Option<BigRational> {
        self.t_max.map(|t| ratio(t as u64, self.n as u64))
    }

    /// Average change rate `T̃/n`.
    pub fn avg_change_rate(&self) -> Option<BigRational> {
        self.t_avg.as_ref().map(|t| t / BigRational::from_integer(self.n.into()))
    }

    /// `r/T`.
    pub fn efficiency(&self) -> Option<BigRational> {
        div(self.r, &self.t_rational()?)
    }

    /// `r/T̃`.
    pub fn avg_efficiency(&self) -> Option<BigRational> {
        div(self.r, self.t_avg.as_ref()?)
    }

    pub fn relative_efficiency(&self) -> Option<BigRational> {
        Some(self.efficiency()? * self.p_s.as_ref()?)
    }

    pub fn avg_relative_efficiency(&self) -> Option<BigRational> {
        Some(self.avg_efficiency()? * self.p_s.as_ref()?)
    }

    /// Floating-point view for output.
    pub fn record(&self) -> ParamsRecord {
        let f = |x: Option<BigRational>| x.map(|v| to_f64(&v));
        ParamsRecord {
            m: self.m,
            n: self.n,
            r: self.r,
            a: to_f64(&self.a()),
            t_max: self.t_max,
            t_avg: f(self.t_avg.clone()),
            change_rate: f(self.change_rate()),
            avg_change_rate: f(self.avg_change_rate()),
            e: f(self.efficiency()),
            e_avg: f(self.avg_efficiency()),
            p_s: f(self.p_s.clone()),
            e_rel: f(self.relative_efficiency()),
            e_avg_rel: f(self.avg_relative_efficiency()),
            t_avg_decodable: f(self.t_avg_decodable.clone()),
            p_s_3m: f(self.p_s_3m.clone()),
        }
    }
}

/// Serializable parameter row. Missing values serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamsRecord {
    pub m: Option<u32>,
    pub n: usize,
    pub r: usize,
    pub a: f64,
    #[serde(rename = "T")]
    pub t_max: Option<usize>,
    #[serde(rename = "T_avg")]
    pub t_avg: Option<f64>,
    #[serde(rename = "R")]
    pub change_rate: Option<f64>,
    #[serde(rename = "R_avg")]
    pub avg_change_rate: Option<f64>,
    pub e: Option<f64>,
    pub e_avg: Option<f64>,
    #[serde(rename = "p_S")]
    pub p_s: Option<f64>,
    pub e_rel: Option<f64>,
    pub e_avg_rel: Option<f64>,
    #[serde(rename = "T_avg_decodable")]
    pub t_avg_decodable: Option<f64>,
    #[serde(rename = "p_S_3m")]
    pub p_s_3m: Option<f64>,
}

impl ParamsRecord {
    pub const CSV_HEADER: &'static str = "m,n,r,a,T,T_avg,R,R_avg,e,e_avg,p_S,e_rel,e_avg_rel";

    pub fn csv_row(&self) -> String {
        fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
            x.map_or_else(|| "n/a".to_string(), |v| v.to_string())
        }
        fn num(x: Option<f64>) -> String {
            opt(x.map(|v| format!("{v:.6}")))
        }
        [
            opt(self.m),
            self.n.to_string(),
            self.r.to_string(),
            format!("{:.6}", self.a),
            opt(self.t_max),
            num(self.t_avg),
            num(self.change_rate),
            num(self.avg_change_rate),
            num(self.e),
            num(self.e_avg),
            num(self.p_s),
            num(self.e_rel),
            num(self.e_avg_rel),
        ]
        .join(",")
    }
}

/// `H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)`.
pub fn entropy(q: u32, x: f64) -> f64 {
    let ln_q = (q as f64).ln();
    let xlogx = |v: f64| if v <= 0.0 { 0.0 } else { v * v.ln() };
    (x * ((q - 1) as f64).ln() - xlogx(x) - xlogx(1.0 - x)) / ln_q
}

/// Upper bound `a / H_q^{-1}(a)` on embedding efficiency at relative payload `a`.
pub fn entropy_bound(q: u32, a: f64) -> Result<f64> {
    if q < 2 {
        return Err(Error::invalid("alphabet size must be at least 2"));
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::invalid(format!("relative payload {a} outside (0, 1]")));
    }
    let (mut lo, mut hi) = (0.0f64, (q - 1) as f64 / q as f64);
    if entropy(q, hi) <= a {
        return Ok(a / hi);
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if entropy(q, mid) < a {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(a / (0.5 * (lo + hi)))
}

/// Measured embedding success rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProbabilityEstimate {
    pub successes: u64,
    pub trials: u64,
    pub exhaustive: bool,
}

impl ProbabilityEstimate {
    pub fn value(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

/// Embeds (cover, message) pairs and counts successes. Every pair is tried
/// when there are at most `2^24`, every coset when there are at most `2^24`
/// cosets; otherwise `trials` pairs are drawn with a seeded generator.
pub fn empirical_probability(scheme: &StegoScheme, trials: u64, seed: u64) -> Result<ProbabilityEstimate> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let (n, r) = (scheme.n(), scheme.r());
    let succeeds = |x: &BitVector, m: &BitVector| -> Result<bool> { Ok(!scheme.embed(x, m)?.is_failure()) };
    if n + r <= 24 {
        let total = 1u64 << (n + r);
        let successes = (0..1u64 << n)
            .into_par_iter()
            .map(|xw| {
                let x = BitVector::from_word(n, xw);
                let mut ok = 0u64;
                for mw in 0..1u64 << r {
                    if succeeds(&x, &BitVector::from_word(r, mw))? {
                        ok += 1;
                    }
                }
                Ok::<u64, Error>(ok)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        return Ok(ProbabilityEstimate { successes, trials: total, exhaustive: true });
    }
    if r <= 24 {
        // Success depends only on the coset of x - y, whose syndrome
        // xH^T - m is uniform; fixing x = 0 and running over m is exact.
        let x = BitVector::zeros(n);
        let successes = (0..1u64 << r)
            .into_par_iter()
            .map(|mw| succeeds(&x, &BitVector::from_word(r, mw)).map(u64::from))
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        return Ok(ProbabilityEstimate { successes, trials: 1 << r, exhaustive: true });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(BitVector, BitVector)> = (0..trials)
        .map(|_| {
            let x = BitVector::from_bools((0..n).map(|_| rng.gen::<bool>()));
            let m = BitVector::from_bools((0..r).map(|_| rng.gen::<bool>()));
            (x, m)
        })
        .collect();
    let successes = pairs.par_iter().map(|(x, m)| succeeds(x, m).map(u64::from)).try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(ProbabilityEstimate { successes, trials, exhaustive: false })
}
