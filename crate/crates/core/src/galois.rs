//! Arithmetic in GF(2^m), polynomial basis, with log/antilog tables.
//!
//! Elements are stored as `m`-bit integers whose bit `i` is the coefficient
//! of `x^i`. The primitive polynomial is stored the same way with bit `m`
//! set. `α` is the class of `x`, i.e. the element `0b10`.

use crate::error::{Error, Result};

/// An element of GF(2^m). Only meaningful together with the [`FieldSpec`]
/// that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GfElement(pub u32);

impl GfElement {
    pub const ZERO: GfElement = GfElement(0);
    pub const ONE: GfElement = GfElement(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for GfElement {
    type Output = GfElement;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: GfElement) -> GfElement {
        GfElement(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for GfElement {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: GfElement) {
        self.0 ^= rhs.0;
    }
}

/// Default primitive polynomials, indexed by `m`.
const DEFAULT_PRIMITIVE: [u32; 17] = [
    0,
    0,
    0b111,               // x^2+x+1
    0b1011,              // x^3+x+1
    0b10011,             // x^4+x+1
    0b100101,            // x^5+x^2+1
    0b1000011,           // x^6+x+1
    0b10001001,          // x^7+x^3+1
    0b100011101,         // x^8+x^4+x^3+x^2+1
    0b1000010001,        // x^9+x^4+1
    0b10000001001,       // x^10+x^3+1
    0b100000000101,      // x^11+x^2+1
    0b1000001010011,     // x^12+x^6+x^4+x+1
    0b10000000011011,    // x^13+x^4+x^3+x+1
    0b100010001000011,   // x^14+x^10+x^6+x+1
    0b1000000000000011,  // x^15+x+1
    0b10001000000001011, // x^16+x^12+x^3+x+1
];

/// A binary extension field GF(2^m) with precomputed tables.
#[derive(Clone)]
pub struct FieldSpec {
    m: u32,
    prim_poly: u32,
    /// `exp[i] = α^i` for `0 <= i < 2 * order`, so products of logs need no reduction.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldSpec")
            .field("m", &self.m)
            .field("prim_poly", &format_args!("{:#b}", self.prim_poly))
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.prim_poly == other.prim_poly
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// The field with the default primitive polynomial for `m`.
    pub fn new(m: u32) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::invalid(format!("extension degree {m} outside 2..=16")));
        }
        Self::with_poly(m, DEFAULT_PRIMITIVE[m as usize])
    }

    pub fn default_poly(m: u32) -> Option<u32> {
        DEFAULT_PRIMITIVE.get(m as usize).copied().filter(|&p| p != 0)
    }

    /// Builds the field for an explicit polynomial, rejecting anything that
    /// is not primitive of degree `m`.
    pub fn with_poly(m: u32, prim_poly: u32) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::invalid(format!("extension degree {m} outside 2..=16")));
        }
        if prim_poly >> m != 1 {
            return Err(Error::invalid(format!("polynomial {prim_poly:#b} does not have degree {m}")));
        }
        let order = (1u32 << m) - 1;
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; 1 << m];
        let mut seen = vec![false; 1 << m];
        let mut a = 1u32;
        for i in 0..order {
            if seen[a as usize] {
                // x has order i < 2^m - 1
                return Err(Error::invalid(format!("polynomial {prim_poly:#b} is not primitive")));
            }
            seen[a as usize] = true;
            exp[i as usize] = a;
            log[a as usize] = i;
            a <<= 1;
            if a >> m != 0 {
                a ^= prim_poly;
            }
        }
        if a != 1 {
            return Err(Error::invalid(format!("polynomial {prim_poly:#b} is not primitive")));
        }
        for i in order..2 * order {
            exp[i as usize] = exp[(i - order) as usize];
        }
        Ok(FieldSpec { m, prim_poly, exp, log })
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn prim_poly(&self) -> u32 {
        self.prim_poly
    }

    /// Size of the multiplicative group, `2^m - 1`.
    #[inline]
    pub fn order(&self) -> u32 {
        (1 << self.m) - 1
    }

    #[inline]
    pub fn size(&self) -> u32 {
        1 << self.m
    }

    pub fn element(&self, bits: u32) -> Result<GfElement> {
        if bits >= self.size() {
            return Err(Error::Domain("element does not fit the field"));
        }
        Ok(GfElement(bits))
    }

    #[inline]
    pub fn alpha(&self) -> GfElement {
        GfElement(self.exp[1])
    }

    /// `α^i` for any integer `i`.
    #[inline]
    pub fn alpha_pow(&self, i: i64) -> GfElement {
        let e = i.rem_euclid(self.order() as i64) as usize;
        GfElement(self.exp[e])
    }

    /// Discrete log base `α`; `None` for zero.
    #[inline]
    pub fn log(&self, a: GfElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    #[inline]
    pub fn mul(&self, a: GfElement, b: GfElement) -> GfElement {
        if a.is_zero() || b.is_zero() {
            return GfElement::ZERO;
        }
        GfElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: GfElement) -> Result<GfElement> {
        if a.is_zero() {
            return Err(Error::Domain("zero has no multiplicative inverse"));
        }
        let l = self.log[a.0 as usize];
        Ok(GfElement(self.exp[((self.order() - l) % self.order()) as usize]))
    }

    pub fn div(&self, a: GfElement, b: GfElement) -> Result<GfElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: GfElement, e: i64) -> Result<GfElement> {
        if a.is_zero() {
            return match e {
                0 => Ok(GfElement::ONE),
                e if e > 0 => Ok(GfElement::ZERO),
                _ => Err(Error::Domain("negative power of zero")),
            };
        }
        let l = self.log[a.0 as usize] as i64;
        let order = self.order() as i64;
        let e = ((l * e.rem_euclid(order)) % order) as usize;
        Ok(GfElement(self.exp[e]))
    }

    #[inline]
    pub fn square(&self, a: GfElement) -> GfElement {
        self.mul(a, a)
    }

    /// Evaluates a polynomial with coefficients in this field (lowest degree first).
    pub fn eval(&self, poly: &[GfElement], x: GfElement) -> GfElement {
        poly.iter().rev().fold(GfElement::ZERO, |acc, &c| self.mul(acc, x) + c)
    }

    /// Minimal polynomial of `α^i` over GF(2), as a bit polynomial.
    pub fn minimal_poly(&self, i: u32) -> u64 {
        let order = self.order();
        let coset = cyclotomic_coset(i % order, order);
        // product of (x - α^j) over the coset; coefficients end up in GF(2)
        let mut poly = vec![GfElement::ONE];
        for j in coset {
            let root = self.alpha_pow(j as i64);
            let mut next = vec![GfElement::ZERO; poly.len() + 1];
            for (d, &c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] += self.mul(c, root);
            }
            poly = next;
        }
        poly.iter().enumerate().fold(0u64, |acc, (d, c)| {
            debug_assert!(c.0 <= 1, "minimal polynomial has non-binary coefficient");
            acc | ((c.0 as u64) << d)
        })
    }
}

/// The cyclotomic coset `{i, 2i, 4i, ...} mod order`, sorted.
pub fn cyclotomic_coset(i: u32, order: u32) -> Vec<u32> {
    let mut coset = vec![i % order];
    let mut j = (2 * (i as u64) % order as u64) as u32;
    while j != i % order {
        coset.push(j);
        j = (2 * (j as u64) % order as u64) as u32;
    }
    coset.sort_unstable();
    coset
}
