//! `STGC` container for block-wise embedding.
//!
//! Layout, all integers big-endian:
//!
//! ```text
//! magic "STGC" | version u8 | kind u8 | n u32 | r u32 | blocks u64 | pad u32 | message_bits u64 | payload
//! ```
//!
//! The payload holds `blocks * width - pad` bits, where `width` is `n` for
//! stego files and `r` for message files, packed most significant bit first.
//! A stego file also records how many message bits were embedded.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::linalg::BitVector;

pub const MAGIC: &[u8; 4] = b"STGC";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 34;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Stego = 0,
    Message = 1,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitstreamFile {
    pub kind: Kind,
    pub n: u32,
    pub r: u32,
    pub blocks: u64,
    pub pad: u32,
    pub message_bits: u64,
    pub payload: Vec<bool>,
}

impl BitstreamFile {
    fn width(kind: Kind, n: u32, r: u32) -> u64 {
        match kind {
            Kind::Stego => n as u64,
            Kind::Message => r as u64,
        }
    }

    /// Wraps `bits`, splitting them into `ceil(len / width)` blocks.
    pub fn new(kind: Kind, n: u32, r: u32, bits: Vec<bool>, message_bits: u64) -> Result<Self> {
        let width = Self::width(kind, n, r);
        if width == 0 {
            return Err(Error::invalid("block width must be positive"));
        }
        let len = bits.len() as u64;
        let blocks = len.div_ceil(width);
        let pad = blocks * width - len;
        Ok(BitstreamFile { kind, n, r, blocks, pad: pad as u32, message_bits, payload: bits })
    }

    pub fn block_width(&self) -> u64 {
        Self::width(self.kind, self.n, self.r)
    }

    /// The `i`-th block, zero-padded if it is the last and partial.
    pub fn block(&self, i: u64) -> BitVector {
        let w = self.block_width() as usize;
        let start = i as usize * w;
        let end = (start + w).min(self.payload.len());
        let mut v = BitVector::from_bools(self.payload[start..end].iter().copied());
        while v.len() < w {
            v.push(false);
        }
        v
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        let mut buf = Vec::with_capacity(HEADER_LEN + self.payload.len().div_ceil(8));
        buf.extend_from_slice(MAGIC);
        buf.push(VERSION);
        buf.push(self.kind as u8);
        buf.extend_from_slice(&self.n.to_be_bytes());
        buf.extend_from_slice(&self.r.to_be_bytes());
        buf.extend_from_slice(&self.blocks.to_be_bytes());
        buf.extend_from_slice(&self.pad.to_be_bytes());
        buf.extend_from_slice(&self.message_bits.to_be_bytes());
        buf.extend(pack_bits(&self.payload));
        w.write_all(&buf)?;
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_to(&mut out).expect("writing to a Vec cannot fail");
        out
    }

    pub fn read_from(mut r: impl Read) -> Result<Self> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Format(format!("{} bytes is shorter than the header", bytes.len())));
        }
        if &bytes[..4] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        if bytes[4] != VERSION {
            return Err(Error::Format(format!("unsupported version {}", bytes[4])));
        }
        let kind = match bytes[5] {
            0 => Kind::Stego,
            1 => Kind::Message,
            k => return Err(Error::Format(format!("unknown kind {k}"))),
        };
        let u32_at = |i: usize| u32::from_be_bytes(bytes[i..i + 4].try_into().unwrap());
        let u64_at = |i: usize| u64::from_be_bytes(bytes[i..i + 8].try_into().unwrap());
        let n = u32_at(6);
        let r = u32_at(10);
        let blocks = u64_at(14);
        let pad = u32_at(22);
        let message_bits = u64_at(26);
        let width = Self::width(kind, n, r);
        let total = blocks
            .checked_mul(width)
            .and_then(|t| t.checked_sub(pad as u64))
            .filter(|_| width > 0 && (pad as u64) < width.max(1))
            .ok_or_else(|| Error::Format("inconsistent block count and padding".into()))?;
        let payload = &bytes[HEADER_LEN..];
        if payload.len() as u64 != total.div_ceil(8) {
            return Err(Error::Format(format!(
                "payload has {} bytes, header implies {}",
                payload.len(),
                total.div_ceil(8)
            )));
        }
        if kind == Kind::Stego && message_bits > blocks * r as u64 {
            return Err(Error::Format("message length exceeds stego capacity".into()));
        }
        let mut bits = unpack_bits(payload);
        bits.truncate(total as usize);
        Ok(BitstreamFile { kind, n, r, blocks, pad, message_bits, payload: bits })
    }
}

/// Bits of `bytes`, most significant first.
pub fn unpack_bits(bytes: &[u8]) -> Vec<bool> {
    bytes.iter().flat_map(|&b| (0..8).rev().map(move |i| (b >> i) & 1 == 1)).collect()
}

/// Inverse of [`unpack_bits`]; the last byte is zero-filled.
pub fn pack_bits(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8).map(|c| c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i)))).collect()
}
