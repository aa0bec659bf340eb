//! Matrix-embedding steganography over binary linear codes.
//!
//! A linear code `C` with parity-check matrix `H` hides an `r`-bit message in
//! an `n`-bit cover by moving the cover into the coset whose syndrome is the
//! message. How many bits change depends on the decoder used to find that
//! coset member. Algebraic decoders such as Berlekamp–Massey stop at the
//! packing radius, so most (cover, message) pairs cannot be embedded. This
//! crate punctures the code until its covering radius equals the decoder's
//! correction capability, which makes embedding succeed for every pair, and
//! computes the parameters (payload, change rates, efficiencies, embedding
//! probability) of every realization.
//!
//! Layout:
//!
//! * [`galois`]: GF(2^m) arithmetic used by the BCH decoder.
//! * [`linalg`]: bit-packed vectors and matrices over GF(2).
//! * [`codes`]: linear codes, coset-leader tables, covering radius.
//! * [`bch`]: narrow-sense binary BCH codes and a bounded Berlekamp–Massey decoder.
//! * [`puncturing`]: decoding punctured codes and greedy puncture-set search.
//! * [`stego`]: stegoschemes, their parameters and the entropy bound.
//! * [`bitstream`]: the `STGC` container used by the command-line tool.

pub mod bch;
pub mod bitstream;
pub mod codes;
pub mod error;
pub mod galois;
pub mod linalg;
pub mod puncturing;
pub mod stego;

pub use bch::{BchCode, DecodeOutcome};
pub use codes::{CosetLeaderTable, Limits, LinearCode};
pub use error::{Error, Result};
pub use galois::{FieldSpec, GfElement};
pub use linalg::{BitMatrix, BitVector};
pub use puncturing::{PunctureResult, PuncturedDecoder, StopPolicy};
pub use stego::{SchemeParams, StegoScheme};
