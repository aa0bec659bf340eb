//! Self-checks run by `puncstego verify`.

use std::sync::Arc;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use puncstego::codes::{hamming_code, BoundedDecoder};
use puncstego::puncturing::{find_puncture_set, radius_bound_check, PunctureOptions};
use puncstego::{BchCode, BitVector, Error, Limits, LinearCode, PuncturedDecoder, StegoScheme};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Bm,
    Oracle,
    Radius,
    Roundtrip,
    Proper,
}

pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), ok, detail: detail.into() }
}

pub fn run(suite: Suite, seed: u64, trials: u64, limits: &Limits) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Bm {
        out.extend(bm(limits)?);
    }
    if all || suite == Suite::Oracle {
        out.extend(oracle(limits)?);
    }
    if all || suite == Suite::Radius {
        out.extend(radius_bound(limits)?);
    }
    if all || suite == Suite::Roundtrip {
        out.extend(roundtrip(seed, trials, limits)?);
    }
    if all || suite == Suite::Proper {
        out.extend(proper(limits)?);
    }
    Ok(out)
}

fn nearest_distance(codewords: &[BitVector], y: &BitVector) -> usize {
    codewords.iter().map(|c| c.distance(y)).min().expect("code is nonempty")
}

fn bm(limits: &Limits) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for t in [2, 3] {
        let code = BchCode::with_default_field(4, t)?;
        let words: Vec<BitVector> = code.code().codewords().collect();
        let n = code.len();
        let mismatches: usize = (0u64..1 << n)
            .into_par_iter()
            .filter(|&w| {
                let y = BitVector::from_word(n, w);
                let got = code.decode(&y);
                let near: Vec<&BitVector> = words.iter().filter(|c| c.distance(&y) <= t).collect();
                match (got, near.as_slice()) {
                    (Some(c), [only]) => c != **only,
                    (None, []) => false,
                    _ => true,
                }
            })
            .count();
        out.push(check(
            format!("bm BCH_4({t}) exhaustive"),
            mismatches == 0,
            format!("{mismatches} mismatches over 2^{n} words"),
        ));
    }
    let code = BchCode::with_default_field(4, 3)?;
    let count = code.decode_success_count(limits)?;
    out.push(check("bm BCH_4(3) success count", count == 576, format!("{count} cosets decoded")));
    Ok(out)
}

fn punctured_bch43(limits: &Limits) -> Result<(Arc<BchCode>, PuncturedDecoder), Error> {
    let bch = Arc::new(BchCode::with_default_field(4, 3)?);
    let opts = PunctureOptions { limits: *limits, ..Default::default() };
    let res = find_puncture_set(bch.code(), 3, &opts)?;
    let dec = PuncturedDecoder::new(bch.clone(), &res.punctured)?;
    Ok((bch, dec))
}

fn oracle(limits: &Limits) -> Result<Vec<Check>, Error> {
    let (_, dec) = punctured_bch43(limits)?;
    let words: Vec<BitVector> = dec.code().codewords().collect();
    let n = dec.code().len();
    let bad: usize = (0u64..1 << n)
        .into_par_iter()
        .map(|w| -> Result<usize, Error> {
            let y = BitVector::from_word(n, w);
            let list = dec.decode_list(&y)?;
            let covered = words.iter().filter(|c| c.distance(&y) <= 3).all(|c| list.contains(c));
            let near = dec.decode_nearest(&y)?;
            let exact = near.distance == Some(nearest_distance(&words, &y));
            Ok(usize::from(!(covered && exact)))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(vec![check(
        format!("oracle punctured BCH_4(3) P={:?}", dec.punctured().iter().map(|p| p + 1).collect::<Vec<_>>()),
        bad == 0,
        format!("{bad} of 2^{n} received words disagree with brute force"),
    )])
}

fn radius_bound(limits: &Limits) -> Result<Vec<Check>, Error> {
    let codes: Vec<(&str, LinearCode)> = vec![
        ("Hamming [7,4]", hamming_code(3)?),
        ("BCH_4(2)", BchCode::with_default_field(4, 2)?.code().clone()),
        ("BCH_4(3)", BchCode::with_default_field(4, 3)?.code().clone()),
    ];
    let mut out = Vec::new();
    for (name, code) in codes {
        let mut j = 0;
        loop {
            match radius_bound_check(&code, j, limits) {
                Ok(rep) => out.push(check(
                    format!("radius bound {name} j={j}"),
                    rep.ok,
                    format!("|P_j| = {}, rho' = {}, bound {}", rep.p_j.len(), rep.actual, rep.bound),
                )),
                Err(Error::InvalidParameters(_)) => break,
                Err(e) => return Err(e),
            }
            j += 1;
        }
    }
    Ok(out)
}

fn roundtrip(seed: u64, trials: u64, limits: &Limits) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    let hamming = StegoScheme::coset_table(hamming_code(3)?, limits)?;
    let mut bad = 0;
    for x in 0u64..128 {
        for m in 0u64..8 {
            let (x, m) = (BitVector::from_word(7, x), BitVector::from_word(3, m));
            match hamming.embed(&x, &m)?.stego() {
                Some(s) if hamming.extract(&s)? == m && s.distance(&x) <= 1 => {}
                _ => bad += 1,
            }
        }
    }
    out.push(check("roundtrip Hamming [7,4] exhaustive", bad == 0, format!("{bad} failures")));

    let (_, dec) = punctured_bch43(limits)?;
    let scheme = StegoScheme::punctured(dec, true);
    let (n, r) = (scheme.n(), scheme.r());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u64, u64)> = (0..trials).map(|_| (rng.gen_range(0..1 << n), rng.gen_range(0..1 << r))).collect();
    let bad: usize = pairs
        .par_iter()
        .map(|&(x, m)| -> Result<usize, Error> {
            let (x, m) = (BitVector::from_word(n, x), BitVector::from_word(r, m));
            Ok(match scheme.embed(&x, &m)?.stego() {
                Some(s) if scheme.extract(&s)? == m && s.distance(&x) <= 3 => 0,
                _ => 1,
            })
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    out.push(check(
        "roundtrip punctured BCH_4(3) sampled",
        bad == 0,
        format!("{bad} failures in {trials} pairs (seed {seed})"),
    ));
    Ok(out)
}

fn proper(limits: &Limits) -> Result<Vec<Check>, Error> {
    let code = hamming_code(3)?;
    let scheme = StegoScheme::coset_table(code.clone(), limits)?;
    let mut bad = 0;
    for x in 0u64..128 {
        let x = BitVector::from_word(7, x);
        for m in 0u64..8 {
            let m = BitVector::from_word(3, m);
            let best = (0u64..128)
                .map(|v| BitVector::from_word(7, v))
                .filter(|v| code.syndrome(v).map(|s| s == m).unwrap_or(false))
                .map(|v| v.distance(&x))
                .min()
                .unwrap();
            let s = scheme.embed(&x, &m)?.stego().expect("table schemes never fail");
            if s.distance(&x) != best {
                bad += 1;
            }
        }
    }
    Ok(vec![check("proper Hamming [7,4] exhaustive", bad == 0, format!("{bad} non-minimal embeddings"))])
}
