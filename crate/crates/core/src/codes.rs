//! Binary linear codes and their coset structure.
//!
//! Syndromes are `y · H^T`. When a syndrome is used as an integer (table
//! index, file format), coordinate `j` of the syndrome vector is bit `j` of
//! the integer, so the first coordinate is the least significant bit.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{BitMatrix, BitVector};

/// Resource limits for exhaustive coset enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest allowed table, as `log2` of the number of cosets.
    pub max_log2_entries: u32,
    /// Largest number of vectors the weight enumeration may visit.
    pub max_enumerated: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_log2_entries: 26, max_enumerated: 1 << 31 }
    }
}

impl Limits {
    pub fn with_log2_entries(bits: u32) -> Self {
        Limits { max_log2_entries: bits, ..Limits::default() }
    }

    pub(crate) fn check_table(&self, r: usize) -> Result<()> {
        if r > 63 || r as u32 > self.max_log2_entries {
            return Err(Error::Resource {
                what: "coset-leader table",
                required: format!("2^{r} entries"),
                limit: format!("2^{} entries", self.max_log2_entries),
            });
        }
        Ok(())
    }
}

/// A binary `[n, k]` linear code with consistent generator and parity-check
/// matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    k: usize,
    /// Reduced row-echelon, `k × n`.
    generator: BitMatrix,
    /// `(n - k) × n`.
    parity_check: BitMatrix,
    /// Column `j` of the systematic generator is column `perm[j]` of `generator`.
    perm: Vec<usize>,
    /// Coordinates where a message is written to obtain a vector with that
    /// syndrome, after applying `message_map`.
    message_positions: Vec<usize>,
    /// `None` means identity.
    message_map: Option<BitMatrix>,
    /// `column_syndromes[i]` is column `i` of `H` as an integer; empty when `r > 64`.
    column_syndromes: Vec<u64>,
}

impl LinearCode {
    /// The code spanned by the rows of `g`. Dependent rows are dropped.
    ///
    /// The parity-check matrix is the standard one for the systematic form:
    /// one row per non-pivot column of `rref(g)`, with the identity on those
    /// columns. Writing a message onto the non-pivot coordinates therefore
    /// gives a vector with that syndrome.
    pub fn from_generator(g: &BitMatrix) -> Result<Self> {
        let n = g.ncols();
        if n == 0 {
            return Err(Error::invalid("code length must be positive"));
        }
        let rr = g.rref();
        let mut generator = rr.matrix;
        let k = rr.rank;
        let rows: Vec<BitVector> = generator.rows()[..k].to_vec();
        generator = BitMatrix::from_rows(n, rows)?;
        let pivots = rr.pivots;
        let checks: Vec<usize> = (0..n).filter(|c| pivots.binary_search(c).is_err()).collect();
        let mut h_rows = Vec::with_capacity(checks.len());
        for &c in &checks {
            let mut row = BitVector::unit(n, c);
            for (i, &p) in pivots.iter().enumerate() {
                if generator.get(i, c) {
                    row.set(p, true);
                }
            }
            h_rows.push(row);
        }
        let parity_check = BitMatrix::from_rows(n, h_rows)?;
        let mut perm = pivots.clone();
        perm.extend(checks.iter().copied());
        Ok(Self::assemble(n, k, generator, parity_check, perm, checks, None))
    }

    /// The code with parity-check matrix `h`, which must have full row rank.
    /// `h` is kept as given so syndromes follow its row order.
    pub fn from_parity_check(h: &BitMatrix) -> Result<Self> {
        let n = h.ncols();
        if n == 0 {
            return Err(Error::invalid("code length must be positive"));
        }
        let r = h.nrows();
        let rank = h.rank();
        if rank < r {
            return Err(Error::RankDeficient { rank, rows: r });
        }
        let g = h.kernel();
        let rr = g.rref();
        let generator = rr.matrix;
        let k = rr.rank;
        let mut perm = rr.pivots.clone();
        perm.extend((0..n).filter(|c| rr.pivots.binary_search(c).is_err()));

        // Solve y H^T = m through [H | I] -> [R | T]; y carries (T m) on R's pivots.
        let mut aug = Vec::with_capacity(r);
        for (j, row) in h.rows().iter().enumerate() {
            aug.push(row.concat(&BitVector::unit(r, j)));
        }
        let aug = BitMatrix::from_rows(n + r, aug)?.rref();
        let positions = aug.pivots.clone();
        debug_assert!(positions.iter().all(|&p| p < n));
        let transform_rows: Vec<BitVector> =
            aug.matrix.rows().iter().map(|row| row.project(&(n..n + r).collect::<Vec<_>>())).collect();
        let transform = BitMatrix::from_rows(r, transform_rows)?;
        Ok(Self::assemble(n, k, generator, h.clone(), perm, positions, Some(transform)))
    }

    fn assemble(
        n: usize,
        k: usize,
        generator: BitMatrix,
        parity_check: BitMatrix,
        perm: Vec<usize>,
        message_positions: Vec<usize>,
        message_map: Option<BitMatrix>,
    ) -> Self {
        let r = n - k;
        let column_syndromes = if r <= 64 {
            (0..n).map(|c| (0..r).fold(0u64, |acc, j| acc | ((parity_check.get(j, c) as u64) << j))).collect()
        } else {
            Vec::new()
        };
        LinearCode { n, k, generator, parity_check, perm, message_positions, message_map, column_syndromes }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.k
    }

    /// `r = n - k`.
    #[inline]
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    /// Column permutation bringing the generator to `[I_k | A]`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Information set: the first `k` entries of [`LinearCode::perm`].
    pub fn information_set(&self) -> &[usize] {
        &self.perm[..self.k]
    }

    pub fn systematic_generator(&self) -> BitMatrix {
        self.generator.permute_columns(&self.perm)
    }

    pub fn syndrome(&self, y: &BitVector) -> Result<BitVector> {
        self.check_len(y)?;
        self.parity_check.mul_transpose(y)
    }

    /// Syndrome as an integer. Needs `r <= 64`.
    pub fn syndrome_index(&self, y: &BitVector) -> Result<u64> {
        self.check_len(y)?;
        if self.column_syndromes.is_empty() && self.redundancy() > 0 {
            return Err(Error::invalid("syndrome index needs redundancy <= 64"));
        }
        Ok(y.ones_iter().fold(0u64, |acc, i| acc ^ self.column_syndromes[i]))
    }

    /// Columns of `H` as integers; empty when `r > 64`.
    pub fn column_syndromes(&self) -> &[u64] {
        &self.column_syndromes
    }

    pub fn is_codeword(&self, y: &BitVector) -> Result<bool> {
        Ok(self.syndrome(y)?.is_zero())
    }

    /// `u · G` for `u` of length `k`.
    pub fn encode(&self, info: &BitVector) -> Result<BitVector> {
        self.generator.combine_rows(info)
    }

    /// All `2^k` codewords. Intended for brute-force checks on small codes.
    pub fn codewords(&self) -> impl Iterator<Item = BitVector> + '_ {
        assert!(self.k < 32, "refusing to enumerate 2^{} codewords", self.k);
        (0u64..1 << self.k).map(move |u| {
            let mut c = BitVector::zeros(self.n);
            for i in 0..self.k {
                if (u >> i) & 1 == 1 {
                    c.xor_assign(self.generator.row(i));
                }
            }
            c
        })
    }

    /// A vector `y` with `y · H^T = msg`, supported on the message positions.
    /// For codes built from a generator this is `(0, msg)` in systematic
    /// coordinates.
    pub fn syndrome_preimage(&self, msg: &BitVector) -> Result<BitVector> {
        let r = self.redundancy();
        if msg.len() != r {
            return Err(Error::LengthMismatch { expected: r, actual: msg.len() });
        }
        let values = match &self.message_map {
            None => msg.clone(),
            Some(t) => t.mul_transpose(msg)?,
        };
        let mut y = BitVector::zeros(self.n);
        y.scatter(&self.message_positions, &values);
        Ok(y)
    }

    pub fn syndrome_from_index(&self, s: u64) -> BitVector {
        BitVector::from_word(self.redundancy(), s)
    }

    /// The code punctured at `positions` (deleted coordinates).
    pub fn puncture(&self, positions: &[usize]) -> Result<LinearCode> {
        let g = self.generator.delete_columns(positions)?;
        if g.ncols() == 0 {
            return Err(Error::invalid("cannot puncture every coordinate"));
        }
        LinearCode::from_generator(&g)
    }

    /// Minimum distance by enumerating codewords (small `k` only).
    pub fn minimum_distance(&self) -> Option<usize> {
        self.codewords().filter(|c| !c.is_zero()).map(|c| c.weight()).min()
    }

    fn check_len(&self, y: &BitVector) -> Result<()> {
        if y.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: y.len() });
        }
        Ok(())
    }
}

/// Binary Hamming code of length `2^m - 1`.
///
/// Column `i` (0-based) of `H` is the binary representation of `i + 1`, read
/// top to bottom with the first row as the most significant bit. For `m = 3`
/// the message `011` is produced by flipping coordinate 2 (the third one).
pub fn hamming_code(m: usize) -> Result<LinearCode> {
    if !(2..=20).contains(&m) {
        return Err(Error::invalid(format!("Hamming parameter m={m} outside 2..=20")));
    }
    let n = (1usize << m) - 1;
    let rows = (0..m).map(|j| BitVector::from_bools((1..=n).map(|c| (c >> (m - 1 - j)) & 1 == 1))).collect();
    LinearCode::from_parity_check(&BitMatrix::from_rows(n, rows)?)
}

/// Iterates over all weight-`w` vectors of length `n` in increasing
/// left-to-right lexicographic order (`00..011` first, `110..0` last).
pub(crate) struct WeightEnumerator {
    n: usize,
    /// Colex combination over reversed coordinates: position = n - 1 - c[i].
    c: Vec<usize>,
    positions: Vec<usize>,
    started: bool,
    done: bool,
}

impl WeightEnumerator {
    pub(crate) fn new(n: usize, w: usize) -> Self {
        let c: Vec<usize> = (0..w).collect();
        let positions = c.iter().map(|&b| n.wrapping_sub(1).wrapping_sub(b)).collect();
        WeightEnumerator { n, c, positions, started: false, done: w > n }
    }

    /// Advances and returns the support of the next vector (positions in
    /// decreasing order).
    pub(crate) fn next_support(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.positions);
        }
        let w = self.c.len();
        if w == 0 {
            self.done = true;
            return None;
        }
        let mut j = 0;
        while j + 1 < w && self.c[j] + 1 == self.c[j + 1] {
            j += 1;
        }
        if j + 1 == w && self.c[j] + 1 == self.n {
            self.done = true;
            return None;
        }
        self.c[j] += 1;
        self.positions[j] = self.n - 1 - self.c[j];
        for i in 0..j {
            self.c[i] = i;
            self.positions[i] = self.n - 1 - i;
        }
        Some(&self.positions)
    }
}

/// Visits every vector of weight `w` in lexicographic order with its
/// syndrome index. Stops early when `f` returns `false`.
pub(crate) fn visit_weight(column_syndromes: &[u64], w: usize, mut f: impl FnMut(&[usize], u64) -> bool) -> u64 {
    let mut it = WeightEnumerator::new(column_syndromes.len(), w);
    let mut visited = 0u64;
    while let Some(sup) = it.next_support() {
        visited += 1;
        let s = sup.iter().fold(0u64, |acc, &p| acc ^ column_syndromes[p]);
        if !f(sup, s) {
            break;
        }
    }
    visited
}

/// Syndrome-indexed table of minimum-weight coset leaders.
///
/// Among the minimum-weight members of a coset the lexicographically
/// smallest (left-to-right bit string) is the leader.
#[derive(Clone, PartialEq, Eq)]
pub struct CosetLeaderTable {
    n: usize,
    r: usize,
    stride: usize,
    leaders: Vec<u64>,
    weights: Vec<u8>,
    histogram: Vec<u64>,
}

impl std::fmt::Debug for CosetLeaderTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CosetLeaderTable")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("histogram", &self.histogram)
            .finish()
    }
}

impl CosetLeaderTable {
    /// Builds the table by enumerating vectors in order of increasing weight,
    /// then lexicographically, and stopping once every syndrome has a leader.
    pub fn build(code: &LinearCode, limits: &Limits) -> Result<Self> {
        let n = code.len();
        let r = code.redundancy();
        limits.check_table(r)?;
        let cosets = 1usize << r;
        let stride = n.div_ceil(64);
        let mut leaders = vec![0u64; cosets * stride];
        let mut weights = vec![u8::MAX; cosets];
        let mut histogram = Vec::new();
        let cols = code.column_syndromes();
        let mut filled = 0usize;
        let mut visited = 0u64;
        for w in 0..=n {
            let mut found = 0u64;
            let budget = limits.max_enumerated.saturating_sub(visited);
            let mut seen = 0u64;
            let mut over_budget = false;
            visited += visit_weight(cols, w, |sup, s| {
                seen += 1;
                if seen > budget {
                    over_budget = true;
                    return false;
                }
                let s = s as usize;
                if weights[s] == u8::MAX {
                    weights[s] = w as u8;
                    let row = &mut leaders[s * stride..(s + 1) * stride];
                    for &p in sup {
                        row[p / 64] |= 1 << (p % 64);
                    }
                    found += 1;
                    filled += 1;
                }
                filled < cosets
            });
            if over_budget {
                return Err(Error::Resource {
                    what: "coset enumeration",
                    required: format!("more than {} vectors", limits.max_enumerated),
                    limit: format!("{} vectors", limits.max_enumerated),
                });
            }
            histogram.push(found);
            if filled == cosets {
                break;
            }
        }
        Ok(CosetLeaderTable { n, r, stride, leaders, weights, histogram })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn num_cosets(&self) -> u64 {
        1u64 << self.r
    }

    pub fn leader(&self, syndrome: u64) -> BitVector {
        let s = syndrome as usize;
        BitVector::from_words(self.n, &self.leaders[s * self.stride..(s + 1) * self.stride])
    }

    #[inline]
    pub fn leader_weight(&self, syndrome: u64) -> usize {
        self.weights[syndrome as usize] as usize
    }

    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    /// Covering radius: the largest leader weight.
    pub fn covering_radius(&self) -> usize {
        self.histogram.len() - 1
    }

    /// `A_j`: number of cosets whose leader has weight `j`, for `j = 0..=ρ`.
    pub fn histogram(&self) -> &[u64] {
        &self.histogram
    }

    /// Number of cosets with leader weight at most `t`.
    pub fn count_within(&self, t: usize) -> u64 {
        self.histogram.iter().take(t + 1).sum()
    }

    /// Mean leader weight over all cosets, exactly.
    pub fn average_radius(&self) -> BigRational {
        let num: u64 = self.histogram.iter().enumerate().map(|(j, a)| j as u64 * a).sum();
        BigRational::new(num.into(), self.num_cosets().into())
    }

    /// Mean leader weight over cosets with leader weight at most `t`.
    pub fn average_radius_within(&self, t: usize) -> BigRational {
        let num: u64 = self.histogram.iter().enumerate().take(t + 1).map(|(j, a)| j as u64 * a).sum();
        BigRational::new(num.into(), self.count_within(t).into())
    }
}

/// A decoder that corrects every error pattern of weight at most
/// [`BoundedDecoder::radius`] and reports failure otherwise.
pub trait BoundedDecoder: Send + Sync {
    fn code(&self) -> &LinearCode;

    fn radius(&self) -> usize;

    /// The codeword within distance `radius` of `y`, if there is one.
    /// `y` must have the code's length.
    fn decode(&self, y: &BitVector) -> Option<BitVector>;
}

/// Bounded-distance decoding by table lookup: succeeds exactly when the
/// coset leader of `y` has weight at most `radius`.
#[derive(Debug, Clone)]
pub struct TableDecoder {
    code: LinearCode,
    table: CosetLeaderTable,
    radius: usize,
}

impl TableDecoder {
    pub fn new(code: LinearCode, radius: usize, limits: &Limits) -> Result<Self> {
        let table = CosetLeaderTable::build(&code, limits)?;
        Ok(TableDecoder { code, table, radius })
    }

    pub fn table(&self) -> &CosetLeaderTable {
        &self.table
    }
}

impl BoundedDecoder for TableDecoder {
    fn code(&self) -> &LinearCode {
        &self.code
    }

    fn radius(&self) -> usize {
        self.radius
    }

    fn decode(&self, y: &BitVector) -> Option<BitVector> {
        let s = self.code.syndrome_index(y).ok()?;
        if self.table.leader_weight(s) > self.radius {
            return None;
        }
        Some(y.xor(&self.table.leader(s)))
    }
}

pub fn coset_leader_table(code: &LinearCode, limits: &Limits) -> Result<CosetLeaderTable> {
    CosetLeaderTable::build(code, limits)
}

pub fn covering_radius(code: &LinearCode, limits: &Limits) -> Result<usize> {
    Ok(CosetLeaderTable::build(code, limits)?.covering_radius())
}

pub fn average_radius(code: &LinearCode, limits: &Limits) -> Result<BigRational> {
    Ok(CosetLeaderTable::build(code, limits)?.average_radius())
}

pub fn leader_weight_distribution(code: &LinearCode, limits: &Limits) -> Result<Vec<u64>> {
    Ok(CosetLeaderTable::build(code, limits)?.histogram().to_vec())
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Volume of a Hamming ball of radius `r` in `F_q^n`.
pub fn ball_volume(q: u64, n: u64, r: u64) -> BigUint {
    assert!(q >= 2, "alphabet size must be at least 2");
    let r = r.min(n);
    let mut total = BigUint::zero();
    let mut power = BigUint::one();
    for j in 0..=r {
        total += binomial(n, j) * &power;
        power *= q - 1;
    }
    total
}

/// Megabits needed for a table with one `(syndrome, leader)` entry per coset:
/// `2^r · (n + r) / 10^6`.
pub fn syndrome_table_size_mb(n: u64, r: u32) -> f64 {
    let bits = (1u128 << r) * (n as u128 + r as u128);
    bits as f64 / 1e6
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_min_weights(code: &LinearCode) -> Vec<usize> {
        let n = code.len();
        let mut best = vec![usize::MAX; 1 << code.redundancy()];
        for x in 0u64..1 << n {
            let v = BitVector::from_word(n, x);
            let s = code.syndrome_index(&v).unwrap() as usize;
            best[s] = best[s].min(v.weight());
        }
        best
    }

    #[test]
    fn hamming_parameters() {
        let h3 = hamming_code(3).unwrap();
        assert_eq!((h3.len(), h3.dimension(), h3.redundancy()), (7, 4, 3));
        let h2 = hamming_code(2).unwrap();
        assert_eq!((h2.len(), h2.dimension()), (3, 1));
        assert_eq!(h2.codewords().collect::<Vec<_>>()[1].to_string(), "111");
        let h4 = hamming_code(4).unwrap();
        assert_eq!((h4.len(), h4.dimension(), h4.redundancy()), (15, 11, 4));
        assert!(hamming_code(1).is_err());
    }

    #[test]
    fn generator_and_parity_check_agree() {
        for code in [hamming_code(3).unwrap(), hamming_code(4).unwrap()] {
            assert!(code.generator().mul_transpose_matrix(code.parity_check()).unwrap().is_zero());
            assert_eq!(code.generator().rank(), code.dimension());
            assert_eq!(code.parity_check().rank(), code.redundancy());
        }
    }

    #[test]
    fn hamming_syndromes() {
        let code = hamming_code(3).unwrap();
        assert!(code.syndrome(&BitVector::zeros(7)).unwrap().is_zero());
        for c in code.codewords() {
            assert!(code.syndrome(&c).unwrap().is_zero());
        }
        for i in 0..7 {
            let s = code.syndrome(&BitVector::unit(7, i)).unwrap();
            assert_eq!(s, code.parity_check().column(i));
            let expected: BitVector = format!("{:03b}", i + 1).parse().unwrap();
            assert_eq!(s, expected);
        }
        assert!(matches!(code.syndrome(&BitVector::zeros(6)), Err(Error::LengthMismatch { expected: 7, actual: 6 })));
    }

    #[test]
    fn preimage_has_requested_syndrome() {
        let code = hamming_code(4).unwrap();
        for m in 0u64..16 {
            let msg = BitVector::from_word(4, m);
            let y = code.syndrome_preimage(&msg).unwrap();
            assert_eq!(code.syndrome(&y).unwrap(), msg);
        }
        let g = BitMatrix::parse_rows(&["1000110", "0100011", "0010111", "0001101"]).unwrap();
        let code = LinearCode::from_generator(&g).unwrap();
        let msg: BitVector = "101".parse().unwrap();
        assert_eq!(code.syndrome_preimage(&msg).unwrap().to_string(), "0000101");
    }

    #[test]
    fn hamming_table() {
        let code = hamming_code(3).unwrap();
        let t = CosetLeaderTable::build(&code, &Limits::default()).unwrap();
        assert_eq!(t.covering_radius(), 1);
        assert_eq!(t.histogram(), &[1, 7]);
        assert_eq!(t.average_radius(), BigRational::new(7.into(), 8.into()));
        for s in 0..8 {
            assert_eq!(code.syndrome_index(&t.leader(s)).unwrap(), s);
        }
    }

    #[test]
    fn hamming_covering_radius_is_one() {
        for m in 2..=6 {
            let code = hamming_code(m).unwrap();
            assert_eq!(covering_radius(&code, &Limits::default()).unwrap(), 1, "m={m}");
        }
    }

    #[test]
    fn leaders_are_minimal_and_lexicographically_first() {
        // a [10,4] code with an irregular coset structure
        let g = BitMatrix::parse_rows(&["1000110101", "0100011011", "0010101110", "0001011111"]).unwrap();
        let code = LinearCode::from_generator(&g).unwrap();
        let table = CosetLeaderTable::build(&code, &Limits::default()).unwrap();
        let best = brute_force_min_weights(&code);
        let n = code.len();
        for s in 0..table.num_cosets() {
            let leader = table.leader(s);
            assert_eq!(code.syndrome_index(&leader).unwrap(), s);
            assert_eq!(leader.weight(), best[s as usize]);
            // lexicographically smallest among minimum-weight coset members
            for x in 0u64..1 << n {
                let v = BitVector::from_word(n, x);
                if v.weight() == leader.weight() && code.syndrome_index(&v).unwrap() == s {
                    assert!(leader <= v);
                }
            }
        }
        assert_eq!(table.histogram().iter().sum::<u64>(), 1 << code.redundancy());
    }

    #[test]
    fn weight_enumerator_order() {
        let mut e = WeightEnumerator::new(4, 2);
        let mut seen = Vec::new();
        while let Some(sup) = e.next_support() {
            seen.push(BitVector::from_positions(4, sup).to_string());
        }
        assert_eq!(seen, ["0011", "0101", "0110", "1001", "1010", "1100"]);
        let mut e = WeightEnumerator::new(3, 0);
        assert_eq!(e.next_support(), Some(&[][..]));
        assert_eq!(e.next_support(), None);
        let mut e = WeightEnumerator::new(2, 3);
        assert_eq!(e.next_support(), None);
    }

    #[test]
    fn table_cap_is_enforced() {
        let code = hamming_code(5).unwrap();
        let err = CosetLeaderTable::build(&code, &Limits::with_log2_entries(4)).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
        let tight = Limits { max_log2_entries: 26, max_enumerated: 10 };
        assert!(matches!(CosetLeaderTable::build(&code, &tight), Err(Error::Resource { .. })));
    }

    #[test]
    fn ball_volumes() {
        assert_eq!(ball_volume(2, 3, 1), BigUint::from(4u32));
        assert_eq!(ball_volume(2, 9, 0), BigUint::from(1u32));
        assert_eq!(ball_volume(2, 15, 3), BigUint::from(576u32));
        assert_eq!(ball_volume(3, 2, 2), BigUint::from(9u32));
        assert_eq!(ball_volume(2, 10, 10), BigUint::from(1024u32));
    }

    #[test]
    fn table_sizes() {
        assert_eq!(format!("{:.3}", syndrome_table_size_mb(31, 15)), "1.507");
        assert_eq!(format!("{:.3}", syndrome_table_size_mb(127, 21)), "310.378");
        assert_eq!(format!("{:.3}", syndrome_table_size_mb(0, 0)), "0.000");
    }

    #[test]
    fn puncturing_keeps_dimension_below_distance() {
        let code = hamming_code(3).unwrap();
        let p = code.puncture(&[0]).unwrap();
        assert_eq!((p.len(), p.dimension()), (6, 4));
        assert!(code.puncture(&[7]).is_err());
    }
}
