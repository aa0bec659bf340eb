//! Primitive narrow-sense binary BCH codes and bounded-distance decoding.
//!
//! Coordinate `j` of a word is the coefficient of `x^j` in its polynomial, so
//! the code is the set of multiples of the generator polynomial
//! `g(x) = lcm(M_1, ..., M_2t)`, where `M_i` is the minimal polynomial of `α^i`.
//!
//! Decoding computes the power-sum syndromes `S_i = y(α^i)`, finds the error
//! locator with Berlekamp–Massey and its roots with a Chien search. A locator
//! of degree above `t`, or one that does not split into distinct roots among
//! the `n` code positions, is reported as a failure; nothing is partially
//! corrected.

use std::collections::BTreeSet;

use crate::codes::{BoundedDecoder, CosetLeaderTable, Limits, LinearCode};
use crate::error::{Error, Result};
use crate::galois::{cyclotomic_coset, FieldSpec, GfElement};
use crate::linalg::{BitMatrix, BitVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Codeword(BitVector),
    Failure,
}

impl DecodeOutcome {
    pub fn codeword(self) -> Option<BitVector> {
        match self {
            DecodeOutcome::Codeword(c) => Some(c),
            DecodeOutcome::Failure => None,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, DecodeOutcome::Failure)
    }
}

#[derive(Debug, Clone)]
pub struct BchCode {
    base: LinearCode,
    m: u32,
    t: usize,
    field: FieldSpec,
    /// Coefficient `i` is the coefficient of `x^i`.
    generator_poly: BitVector,
}

/// Redundancy of `BCH_m(t)` without building the code: the size of the union
/// of the cyclotomic cosets of `1..=2t` modulo `2^m - 1`.
pub fn bch_redundancy(m: u32, t: usize) -> usize {
    let n = (1u32 << m) - 1;
    let mut roots = BTreeSet::new();
    for i in 1..=(2 * t as u32).min(n) {
        roots.extend(cyclotomic_coset(i, n));
    }
    roots.len()
}

fn poly_mul(a: &BitVector, b: &BitVector) -> BitVector {
    let mut out = BitVector::zeros(a.len() + b.len() - 1);
    for i in a.ones_iter() {
        for j in b.ones_iter() {
            out.flip(i + j);
        }
    }
    out
}

impl BchCode {
    /// `BCH_m(t)` over `field`, which must have extension degree `m`.
    pub fn new(m: u32, t: usize, field: FieldSpec) -> Result<Self> {
        if m < 2 || t < 1 {
            return Err(Error::invalid(format!("BCH parameters need m >= 2 and t >= 1, got m={m}, t={t}")));
        }
        if field.m() != m {
            return Err(Error::invalid(format!("field has degree {} but m = {m}", field.m())));
        }
        let n = field.order() as usize;
        if 2 * t + 1 > n {
            return Err(Error::invalid(format!("t={t} too large for length {n}")));
        }
        let mut done = BTreeSet::new();
        let mut g = BitVector::from_word(1, 1);
        for i in 1..=2 * t as u32 {
            let rep = cyclotomic_coset(i, n as u32)[0];
            if done.insert(rep) {
                let mp = field.minimal_poly(rep);
                let deg = 63 - mp.leading_zeros() as usize;
                g = poly_mul(&g, &BitVector::from_word(deg + 1, mp));
            }
        }
        let r = g.len() - 1;
        if r >= n {
            return Err(Error::invalid(format!("BCH_{m}({t}) has dimension 0")));
        }
        let k = n - r;
        let rows = (0..k)
            .map(|i| {
                let mut row = BitVector::zeros(n);
                for j in g.ones_iter() {
                    row.set(i + j, true);
                }
                row
            })
            .collect();
        let base = LinearCode::from_generator(&BitMatrix::from_rows(n, rows)?)?;
        debug_assert_eq!(base.redundancy(), r);
        Ok(BchCode { base, m, t, field, generator_poly: g })
    }

    /// `BCH_m(t)` over the default field for `m`.
    pub fn with_default_field(m: u32, t: usize) -> Result<Self> {
        Self::new(m, t, FieldSpec::new(m)?)
    }

    pub fn code(&self) -> &LinearCode {
        &self.base
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn generator_poly(&self) -> &BitVector {
        &self.generator_poly
    }

    pub fn designed_distance(&self) -> usize {
        2 * self.t + 1
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// `S_1, ..., S_2t` of `y`.
    pub fn syndromes(&self, y: &BitVector) -> Vec<GfElement> {
        let f = &self.field;
        let n = f.order() as usize;
        let mut s = vec![GfElement::ZERO; 2 * self.t];
        for j in y.ones_iter() {
            for i in (1..=2 * self.t).step_by(2) {
                s[i - 1] += f.alpha_pow(((i * j) % n) as i64);
            }
        }
        for i in (2..=2 * self.t).step_by(2) {
            s[i - 1] = f.square(s[i / 2 - 1]);
        }
        s
    }

    /// Error-locator polynomial (lowest degree first) and LFSR length.
    fn berlekamp_massey(&self, s: &[GfElement]) -> (Vec<GfElement>, usize) {
        let f = &self.field;
        let mut c = vec![GfElement::ONE];
        let mut b = vec![GfElement::ONE];
        let mut l = 0usize;
        let mut shift = 1usize;
        let mut last_d = GfElement::ONE;
        for k in 0..s.len() {
            let mut d = s[k];
            for i in 1..=l.min(c.len() - 1) {
                d += f.mul(c[i], s[k - i]);
            }
            if d.is_zero() {
                shift += 1;
                continue;
            }
            let coef = f.mul(d, f.inv(last_d).expect("discrepancy is nonzero"));
            let previous = (2 * l <= k).then(|| c.clone());
            if c.len() < b.len() + shift {
                c.resize(b.len() + shift, GfElement::ZERO);
            }
            for (i, &bi) in b.iter().enumerate() {
                c[i + shift] += f.mul(coef, bi);
            }
            match previous {
                Some(prev) => {
                    l = k + 1 - l;
                    b = prev;
                    last_d = d;
                    shift = 1;
                }
                None => shift += 1,
            }
        }
        while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        (c, l)
    }

    /// Bounded-distance decoding. Fails (as a value) when `y` is farther
    /// than `t` from the code.
    pub fn bm_decode(&self, y: &BitVector) -> Result<DecodeOutcome> {
        let n = self.len();
        if y.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: y.len() });
        }
        Ok(self.decode_unchecked(y))
    }

    fn decode_unchecked(&self, y: &BitVector) -> DecodeOutcome {
        let s = self.syndromes(y);
        if s.iter().all(|x| x.is_zero()) {
            return DecodeOutcome::Codeword(y.clone());
        }
        let (locator, l) = self.berlekamp_massey(&s);
        let degree = locator.len() - 1;
        if l > self.t || degree != l {
            return DecodeOutcome::Failure;
        }
        let f = &self.field;
        let mut corrected = y.clone();
        let mut roots = 0;
        for j in 0..self.len() {
            // X_j = α^j is an error location iff Λ(α^{-j}) = 0
            if f.eval(&locator, f.alpha_pow(-(j as i64))).is_zero() {
                corrected.flip(j);
                roots += 1;
            }
        }
        if roots != degree || !self.syndromes(&corrected).iter().all(|x| x.is_zero()) {
            return DecodeOutcome::Failure;
        }
        DecodeOutcome::Codeword(corrected)
    }

    /// Number of cosets whose leader the decoder corrects, counted from the
    /// coset-leader table and confirmed by decoding one leader per coset.
    pub fn decode_success_count(&self, limits: &Limits) -> Result<u64> {
        let table = CosetLeaderTable::build(&self.base, limits)?;
        let expected = table.count_within(self.t);
        let mut decoded = 0u64;
        for s in 0..table.num_cosets() {
            let leader = table.leader(s);
            match self.decode_unchecked(&leader) {
                DecodeOutcome::Codeword(c) => {
                    if leader.distance(&c) > self.t || !self.base.is_codeword(&c)? {
                        return Err(Error::Inconsistent(format!("decoder miscorrected syndrome {s}")));
                    }
                    decoded += 1;
                }
                DecodeOutcome::Failure => {}
            }
        }
        if decoded != expected {
            return Err(Error::Inconsistent(format!(
                "decoder succeeded on {decoded} cosets, table predicts {expected}"
            )));
        }
        Ok(decoded)
    }
}

impl BoundedDecoder for BchCode {
    fn code(&self) -> &LinearCode {
        &self.base
    }

    fn radius(&self) -> usize {
        self.t
    }

    fn decode(&self, y: &BitVector) -> Option<BitVector> {
        self.decode_unchecked(y).codeword()
    }
}

/// Known bounds on the number of weight-4 coset leaders of `BCH_m(3)`.
pub fn bch3_a4_bounds(n: u64) -> (u64, u64) {
    (5 * n * (5 * n + 13) / 6, n * (5 * n * n + 10 * n - 3) / 6)
}

/// Known bounds on the number of weight-5 coset leaders of `BCH_m(3)`.
pub fn bch3_a5_bounds(n: u64) -> (u64, u64) {
    (4 * n * (n + 2) / 3, n * (n - 4) * (5 * n + 13) / 6)
}
