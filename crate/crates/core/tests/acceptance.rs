//! Acceptance suite. Runs with its own `main` so that every criterion prints
//! one PASS/FAIL line regardless of output capturing.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use puncstego::codes::{ball_volume, hamming_code, to_f64, BoundedDecoder};
use puncstego::puncturing::{find_puncture_set, ideal_call_count, radius_bound_check, PunctureOptions};
use puncstego::stego::entropy_bound;
use puncstego::{BchCode, BitVector, CosetLeaderTable, Limits, LinearCode, PuncturedDecoder, StegoScheme};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let el = start.elapsed();
    ensure(el < limit, || format!("took {el:?}, limit {limit:?}"))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_puncstego"))
}

fn cli_csv(args: &[&str]) -> Result<Vec<Vec<String>>, String> {
    let out = bin().args(args).args(["--format", "csv"]).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(String::from_utf8_lossy(&out.stdout).lines().map(|l| l.split(',').map(str::to_string).collect()).collect())
}

fn column<'a>(rows: &'a [Vec<String>], name: &str, row: usize) -> Result<&'a str, String> {
    let idx = rows[0].iter().position(|h| h == name).ok_or(format!("no column {name}"))?;
    Ok(&rows[row + 1][idx])
}

fn bch(m: u32, t: usize) -> Arc<BchCode> {
    Arc::new(BchCode::with_default_field(m, t).expect("valid BCH parameters"))
}

fn punctured_bch43() -> PuncturedDecoder {
    let parent = bch(4, 3);
    let res = find_puncture_set(parent.code(), 3, &PunctureOptions::default()).unwrap();
    assert_eq!(res.achieved_rho, 3);
    PuncturedDecoder::new(parent, &res.punctured).unwrap()
}

fn nearest_distance(words: &[BitVector], y: &BitVector) -> usize {
    words.iter().map(|c| c.distance(y)).min().unwrap()
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let rows = cli_csv(&["table1"])?;
    let expected = ["1.507", "21.234", "310.378", "4680.843", "72209.138", "1130650.141"];
    for (i, want) in expected.iter().enumerate() {
        let got = column(&rows, "size_mb", i)?;
        ensure(got == *want, || format!("m={}: {got} != {want}", i + 5))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("six sizes match in {:?}", start.elapsed()))
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (m, e_want, t_avg_want, p_want) in [(4u32, 2i64, 3.33, 0.141), (5, 3, 4.28, 0.152)] {
        let code = bch(m, 3);
        let table = CosetLeaderTable::build(code.code(), &Limits::default()).map_err(|e| e.to_string())?;
        let r = code.code().redundancy() as i64;
        let e = BigRational::new(r.into(), (table.covering_radius() as i64).into());
        ensure(e == BigRational::from_integer(e_want.into()), || format!("m={m}: e = {e}"))?;
        let t_avg = to_f64(&table.average_radius());
        ensure((t_avg - t_avg_want).abs() <= 0.02, || format!("m={m}: T_avg = {t_avg}"))?;
        let p = table.count_within(3) as f64 / 2f64.powi(3 * m as i32);
        ensure((p - p_want).abs() <= 0.002, || format!("m={m}: p_S = {p}"))?;
        notes.push(format!("m={m}: e={e} T_avg={t_avg:.4} p_S={p:.4}"));
    }
    let rows = cli_csv(&["table2", "--m-min", "4", "--m-max", "5"])?;
    for (i, (e, t, p)) in [("2.000", "3.33", "0.141"), ("3.000", "4.28", "0.152")].iter().enumerate() {
        ensure(column(&rows, "e", i)? == *e, || format!("cli e row {i}"))?;
        ensure(column(&rows, "T_avg", i)? == *t, || format!("cli T_avg row {i}"))?;
        ensure(column(&rows, "p_S", i)? == *p, || format!("cli p_S row {i}"))?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} (unconditional average, 2^3m normalization)", notes.join("; ")))
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (m, t, n_want) in [(4u32, 2usize, 11usize), (5, 2, 28), (4, 3, 12), (5, 3, 25)] {
        let args = ["puncture", "--m", &m.to_string(), "--t", &t.to_string(), "--mode", "reach_t"];
        let rows = cli_csv(&args)?;
        let rho: usize = column(&rows, "rho_prime", 0)?.parse().unwrap();
        let n: usize = column(&rows, "n_prime", 0)?.parse().unwrap();
        let r: usize = column(&rows, "r_prime", 0)?.parse().unwrap();
        let e: f64 = column(&rows, "e_prime", 0)?.parse().unwrap();
        ensure(rho == t, || format!("BCH_{m}({t}): rho' = {rho}"))?;
        ensure(n.abs_diff(n_want) <= 1, || format!("BCH_{m}({t}): n' = {n}, expected {n_want} +- 1"))?;
        // r' recomputed from the child code itself
        let res = find_puncture_set(bch(m, t).code(), t, &PunctureOptions::default()).unwrap();
        let child = LinearCode::from_generator(res.child.generator()).unwrap();
        ensure(child.redundancy() == r, || format!("BCH_{m}({t}): r' mismatch"))?;
        ensure((e - r as f64 / t as f64).abs() < 1e-6, || format!("BCH_{m}({t}): e' = {e}"))?;
        notes.push(format!("BCH_{m}({t}) n'={n} r'={r}"));
    }
    within(start, Duration::from_secs(600))?;
    Ok(notes.join(", "))
}

fn criterion4() -> Outcome {
    let parent = bch(4, 3);
    let dec = PuncturedDecoder::new(parent.clone(), &[0, 1, 2]).map_err(|e| e.to_string())?;
    let child_rho = CosetLeaderTable::build(dec.code(), &Limits::default()).unwrap().covering_radius();
    ensure(child_rho == 3, || format!("P = {{1,2,3}} leaves rho' = {child_rho}"))?;
    let words: Vec<BitVector> = dec.code().codewords().collect();
    let y: BitVector = "111111111000".parse().unwrap();
    let d = nearest_distance(&words, &y);
    ensure(d == 2, || format!("d(y', C') = {d}, expected 2"))?;
    let out = dec.decode_nearest(&y).map_err(|e| e.to_string())?;
    ensure(out.distance == Some(d), || format!("decoder distance {:?}, brute force {d}", out.distance))?;
    let ideal = ideal_call_count(2, 3, 3, 2);
    ensure(ideal == 2, || format!("ceil(8 / V(3,1)) = {ideal}"))?;
    ensure(out.calls <= 2, || format!("{} decoder calls", out.calls))?;
    let c1: BitVector = "100110101111000".parse().unwrap();
    let same = parent.code().is_codeword(&c1).unwrap();
    Ok(format!(
        "{} calls, distance {d}; reference c1 {} a codeword of this construction",
        out.calls,
        if same { "is" } else { "is not" }
    ))
}

fn criterion5() -> Outcome {
    let start = Instant::now();
    let dec = punctured_bch43();
    let words: Vec<BitVector> = dec.code().codewords().collect();
    ensure(words.len() == 32, || format!("{} codewords", words.len()))?;
    let n = dec.code().len();
    let bad: Vec<u64> = (0u64..1 << n)
        .into_par_iter()
        .filter(|&w| {
            let y = BitVector::from_word(n, w);
            let list = dec.decode_list(&y).unwrap();
            let complete = words.iter().filter(|c| c.distance(&y) <= 3).all(|c| list.contains(c));
            let nearest = dec.decode_nearest(&y).unwrap().distance == Some(nearest_distance(&words, &y));
            !(complete && nearest)
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} failures, first {:012b}", bad.len(), bad[0]))?;
    within(start, Duration::from_secs(300))?;
    Ok(format!("2^{n} received words in {:?}", start.elapsed()))
}

fn check_pair(scheme: &StegoScheme, x: &BitVector, m: &BitVector) -> bool {
    match scheme.embed(x, m).unwrap().stego() {
        Some(s) => scheme.extract(&s).unwrap() == *m && s.distance(x) <= 3,
        None => false,
    }
}

fn criterion6() -> Outcome {
    let scheme = StegoScheme::punctured(punctured_bch43(), true);
    let (n, r) = (scheme.n(), scheme.r());
    ensure((n, r) == (12, 7), || format!("n' = {n}, r' = {r}"))?;

    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pairs: Vec<(u64, u64)> = (0..100_000).map(|_| (rng.gen_range(0..1 << n), rng.gen_range(0..1 << r))).collect();
    let bad = pairs
        .par_iter()
        .filter(|&&(x, m)| !check_pair(&scheme, &BitVector::from_word(n, x), &BitVector::from_word(r, m)))
        .count();
    ensure(bad == 0, || format!("{bad} failures among 10^5 sampled pairs"))?;
    within(start, Duration::from_secs(30))?;
    let sampled = start.elapsed();

    let start = Instant::now();
    let bad: u64 = (0u64..1 << n)
        .into_par_iter()
        .map(|x| {
            let x = BitVector::from_word(n, x);
            (0u64..1 << r).filter(|&m| !check_pair(&scheme, &x, &BitVector::from_word(r, m))).count() as u64
        })
        .sum();
    ensure(bad == 0, || format!("{bad} failures among all 2^19 pairs"))?;
    within(start, Duration::from_secs(1800))?;
    Ok(format!("10^5 sampled in {sampled:?}, all 2^19 pairs in {:?}", start.elapsed()))
}

fn coset_minimum(code: &LinearCode, words: &[BitVector], x: &BitVector, m: &BitVector) -> usize {
    let y = code.syndrome_preimage(m).unwrap();
    words.iter().map(|c| x.distance(&c.xor(&y))).min().unwrap()
}

fn criterion7() -> Outcome {
    let hamming = hamming_code(3).unwrap();
    let scheme = StegoScheme::coset_table(hamming.clone(), &Limits::default()).unwrap();
    let mut checked = 0;
    for x in 0u64..128 {
        let x = BitVector::from_word(7, x);
        for m in 0u64..8 {
            let m = BitVector::from_word(3, m);
            // oracle: scan all 2^7 vectors
            let best = (0u64..128)
                .map(|v| BitVector::from_word(7, v))
                .filter(|v| hamming.syndrome(v).unwrap() == m)
                .map(|v| v.distance(&x))
                .min()
                .unwrap();
            let s = scheme.embed(&x, &m).unwrap().stego().ok_or("Hamming embedding failed")?;
            ensure(s.distance(&x) == best && hamming.syndrome(&s).unwrap() == m, || "Hamming pair not minimal".into())?;
            checked += 1;
        }
    }

    let code = bch(4, 2).code().clone();
    let scheme = StegoScheme::coset_table(code.clone(), &Limits::default()).unwrap();
    let words: Vec<BitVector> = code.codewords().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let x = BitVector::from_word(15, rng.gen_range(0..1 << 15));
        let m = BitVector::from_word(8, rng.gen_range(0..1 << 8));
        let s = scheme.embed(&x, &m).unwrap().stego().ok_or("BCH_4(2) table embedding failed")?;
        let best = coset_minimum(&code, &words, &x, &m);
        ensure(s.distance(&x) == best && code.syndrome(&s).unwrap() == m, || "BCH_4(2) pair not minimal".into())?;
    }
    Ok(format!("{checked} Hamming pairs exhaustive, 10^4 BCH_4(2) pairs sampled"))
}

fn criterion8() -> Outcome {
    let start = Instant::now();
    let codes = [
        ("Hamming [7,4]", hamming_code(3).unwrap()),
        ("BCH_4(2)", bch(4, 2).code().clone()),
        ("BCH_4(3)", bch(4, 3).code().clone()),
    ];
    let mut total = 0;
    for (name, code) in codes {
        let rho = CosetLeaderTable::build(&code, &Limits::default()).unwrap().covering_radius();
        for j in 0..=rho {
            let rep = radius_bound_check(&code, j, &Limits::default()).map_err(|e| e.to_string())?;
            ensure(rep.ok, || format!("{name} j={j}: {rep:?}"))?;
            total += 1;
        }
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("{total} (code, j) pairs"))
}

fn criterion9() -> Outcome {
    let mut notes = Vec::new();
    for t in [2, 3] {
        let code = bch(4, t);
        let words: Vec<BitVector> = code.code().codewords().collect();
        let bad = (0u64..1 << 15)
            .into_par_iter()
            .filter(|&w| {
                let y = BitVector::from_word(15, w);
                let within: Vec<&BitVector> = words.iter().filter(|c| c.distance(&y) <= t).collect();
                match (code.decode(&y), within.as_slice()) {
                    (Some(c), [only]) => c != **only,
                    (None, []) => false,
                    _ => true,
                }
            })
            .count();
        ensure(bad == 0, || format!("BCH_4({t}): {bad} mismatches"))?;
        notes.push(format!("BCH_4({t}) exhaustive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (m, t) in [(5u32, 2usize), (5, 3), (6, 2)] {
        let code = bch(m, t);
        let n = code.len();
        let k = code.code().dimension();
        for _ in 0..10_000 {
            let info = BitVector::from_bools((0..k).map(|_| rng.gen::<bool>()));
            let c = code.code().encode(&info).unwrap();
            let mut y = c.clone();
            let w = rng.gen_range(0..=t);
            while y.distance(&c) < w {
                y.flip(rng.gen_range(0..n));
            }
            ensure(code.decode(&y) == Some(c), || format!("BCH_{m}({t}) miscorrection"))?;
        }
        notes.push(format!("BCH_{m}({t}) 10^4 random"));
    }
    let count = bch(4, 3).decode_success_count(&Limits::default()).map_err(|e| e.to_string())?;
    let v = ball_volume(2, 15, 3);
    ensure(count == 576 && v == 576u32.into(), || format!("success count {count}, V = {v}"))?;
    notes.push("576 decodable cosets".into());
    Ok(notes.join(", "))
}

fn criterion10() -> Outcome {
    let b = entropy_bound(2, 1.0).unwrap();
    ensure(b == 2.0, || format!("bound(1) = {b}"))?;
    let mut rows = 0;
    let limits = Limits::default();
    let mut schemes: Vec<StegoScheme> =
        (2..=6).map(|m| StegoScheme::coset_table(hamming_code(m).unwrap(), &limits).unwrap()).collect();
    for (m, t) in [(4u32, 2usize), (5, 2), (4, 3), (5, 3)] {
        let parent = bch(m, t);
        let res = find_puncture_set(parent.code(), t, &PunctureOptions::default()).unwrap();
        schemes.push(StegoScheme::punctured(PuncturedDecoder::new(parent, &res.punctured).unwrap(), true));
        schemes.push(StegoScheme::coset_table(bch(m, t).code().clone(), &limits).unwrap());
    }
    for s in &schemes {
        let p = s.params(&limits);
        let e = to_f64(&p.efficiency().unwrap());
        let bound = entropy_bound(2, to_f64(&p.a())).unwrap();
        ensure(e <= bound + 1e-9, || format!("[{}, r={}]: e = {e} > {bound}", p.n, p.r))?;
        rows += 1;
    }
    Ok(format!("bound(1) = 2, {rows} complete realizations below the bound"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("table 1 sizes", criterion1),
        ("table 2 rows m=4,5", criterion2),
        ("puncture sets for tables 3/4", criterion3),
        ("worked decoding example", criterion4),
        ("list/nearest decoding oracle", criterion5),
        ("embedding totality", criterion6),
        ("properness", criterion7),
        ("covering-radius bound for P_j", criterion8),
        ("Berlekamp-Massey correctness", criterion9),
        ("entropy bound", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{:.2?}]", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{:.2?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
