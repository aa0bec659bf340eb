//! `puncstego`: tables, puncture search and file embedding from the command line.

mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::json;

use puncstego::bch::bch_redundancy;
use puncstego::bitstream::{pack_bits, unpack_bits, BitstreamFile, Kind};
use puncstego::codes::{ball_volume, hamming_code, syndrome_table_size_mb, to_f64, BoundedDecoder, TableDecoder};
use puncstego::puncturing::{find_puncture_set, PunctureOptions, PunctureResult, Selection};
use puncstego::stego::{entropy_bound, ParamsRecord};
use puncstego::{BchCode, BitVector, CosetLeaderTable, Error, Limits, PuncturedDecoder, StegoScheme, StopPolicy};

#[derive(Parser, Debug)]
#[command(name = "puncstego", version, about = "Syndrome-coding steganography with punctured BCH codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest coset table, as log2 of its number of entries.
    #[arg(long, global = true, env = "PUNCSTEG_CAP_BITS", default_value_t = 26,
          value_parser = clap::value_parser!(u32).range(10..=40))]
    cap: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Bch,
    Hamming,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    #[value(name = "reach_t")]
    ReachT,
    #[value(name = "target_p")]
    TargetP,
    #[value(name = "max_p")]
    MaxP,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeKind {
    Punctured,
    Bounded,
    Table,
}

#[derive(Args, Debug, Clone)]
struct CodeArgs {
    #[arg(long, value_enum, default_value_t = Family::Bch)]
    family: Family,
    /// Field degree for BCH, number of parity bits for Hamming.
    #[arg(long, default_value_t = 4)]
    m: u32,
    /// Designed correction capability (BCH only).
    #[arg(long, default_value_t = 3)]
    t: usize,
}

#[derive(Args, Debug, Clone)]
struct PolicyArgs {
    #[arg(long, value_enum, default_value_t = Mode::ReachT)]
    mode: Mode,
    /// Target embedding probability for `--mode target_p`.
    #[arg(long)]
    p_target: Option<f64>,
    /// Maximum number of punctured positions for `--mode max_p`.
    #[arg(long)]
    p_max: Option<usize>,
    /// Puncture the leading systematic positions instead of searching.
    #[arg(long)]
    puncture_first_positions: bool,
    /// Count only canonical coset leaders when choosing positions.
    #[arg(long, conflicts_with = "puncture_first_positions")]
    canonical_leaders: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parameters of a code and of its stegoschemes.
    Info {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Syndrome-leader table sizes for BCH_m(3).
    Table1 {
        #[arg(long, default_value_t = 5)]
        m_min: u32,
        #[arg(long, default_value_t = 10)]
        m_max: u32,
    },
    /// Efficiency of bounded-decoder schemes from BCH_m(t).
    Table2 {
        #[arg(long, default_value_t = 4)]
        m_min: u32,
        #[arg(long, default_value_t = 10)]
        m_max: u32,
        #[arg(long, default_value_t = 3)]
        t: usize,
    },
    /// Greedy search for a puncture set.
    Puncture {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// BCH_m(t) schemes next to their punctured versions.
    Tables34 {
        #[arg(long, default_value_t = 4)]
        m_min: u32,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Hide a message file in a cover file.
    Embed {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long, value_enum, default_value_t = SchemeKind::Punctured)]
        scheme: SchemeKind,
        /// Cover file (raw bytes).
        #[arg(long = "in")]
        input: PathBuf,
        /// Message file (raw bytes).
        #[arg(long)]
        message: PathBuf,
        /// Stego output (STGC container).
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover the message from an STGC stego file.
    Extract {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long, value_enum, default_value_t = SchemeKind::Punctured)]
        scheme: SchemeKind,
        #[arg(long = "in")]
        input: PathBuf,
        /// Message output (raw bytes).
        #[arg(long)]
        out: PathBuf,
    },
    /// Upper bound a / H_q^{-1}(a) on embedding efficiency.
    Bound {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        a: f64,
    },
    /// Run self-checks.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random trials for sampled checks.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Verification(String),
    Embedding(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Lib(Error::Resource { .. }) => 2,
            Failure::Lib(Error::Inconsistent(_)) | Failure::Verification(_) => 3,
            Failure::Embedding(_) => 4,
            Failure::Lib(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(s) | Failure::Verification(s) | Failure::Embedding(s) => s.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let limits = Limits::with_log2_entries(cli.cap);
    match &cli.command {
        Command::Info { code } => info(code, &limits, cli.format),
        Command::Table1 { m_min, m_max } => Ok(table1(*m_min, *m_max, cli.format)),
        Command::Table2 { m_min, m_max, t } => table2(*m_min, *m_max, *t, &limits, cli.format),
        Command::Puncture { code, policy } => puncture(code, policy, &limits, cli.format),
        Command::Tables34 { m_min, m_max, t, policy } => tables34(*m_min, *m_max, *t, policy, &limits, cli.format),
        Command::Embed { code, policy, scheme, input, message, out } => {
            let scheme = build_scheme(code, policy, *scheme, &limits)?;
            embed_files(&scheme, input, message, out)
        }
        Command::Extract { code, policy, scheme, input, out } => {
            let scheme = build_scheme(code, policy, *scheme, &limits)?;
            extract_file(&scheme, input, out)
        }
        Command::Bound { q, a } => {
            let b = entropy_bound(*q, *a)?;
            Ok(match cli.format {
                Format::Json => format!("{}\n", json!({ "q": q, "a": a, "bound": b })),
                Format::Csv => format!("q,a,bound\n{q},{a},{b:.12}\n"),
                Format::Text => format!("{b:.12}\n"),
            })
        }
        Command::Verify { suite, seed, trials } => {
            let checks = verify::run(*suite, *seed, *trials, &limits)?;
            let mut out = String::new();
            for c in &checks {
                let _ = writeln!(out, "{} {}: {}", if c.ok { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let failed = checks.iter().filter(|c| !c.ok).count();
            if failed > 0 {
                print!("{out}");
                return Err(Failure::Verification(format!("{failed} of {} checks failed", checks.len())));
            }
            Ok(out)
        }
    }
}

fn parent_decoder(code: &CodeArgs, limits: &Limits) -> CliResult<Arc<dyn BoundedDecoder>> {
    Ok(match code.family {
        Family::Bch => Arc::new(BchCode::with_default_field(code.m, code.t)?),
        Family::Hamming => Arc::new(TableDecoder::new(hamming_code(code.m as usize)?, 1, limits)?),
    })
}

fn options(policy: &PolicyArgs, limits: &Limits) -> CliResult<PunctureOptions> {
    let stop = match policy.mode {
        Mode::ReachT => StopPolicy::ReachT,
        Mode::TargetP => StopPolicy::TargetProbability {
            p_target: policy.p_target.ok_or_else(|| Failure::Usage("--mode target_p needs --p-target".into()))?,
        },
        Mode::MaxP => StopPolicy::MaxPunctures {
            p_max: policy.p_max.ok_or_else(|| Failure::Usage("--mode max_p needs --p-max".into()))?,
        },
    };
    let selection = if policy.puncture_first_positions {
        Selection::FirstPositions
    } else if policy.canonical_leaders {
        Selection::CanonicalLeaders
    } else {
        Selection::AllMinimumWeight
    };
    Ok(PunctureOptions { policy: stop, selection, limits: *limits })
}

fn build_scheme(code: &CodeArgs, policy: &PolicyArgs, kind: SchemeKind, limits: &Limits) -> CliResult<StegoScheme> {
    let dec = parent_decoder(code, limits)?;
    Ok(match kind {
        SchemeKind::Table => StegoScheme::coset_table(dec.code().clone(), limits)?,
        SchemeKind::Bounded => StegoScheme::bounded(dec),
        SchemeKind::Punctured => {
            let t = dec.radius();
            let res = find_puncture_set(dec.code(), t, &options(policy, limits)?)?;
            let complete = res.achieved_rho <= t;
            StegoScheme::punctured(PuncturedDecoder::new(dec, &res.punctured)?, complete)
        }
    })
}

fn f(x: &Option<BigRational>) -> Option<f64> {
    x.as_ref().map(to_f64)
}

fn fmt_opt(x: Option<f64>, prec: usize) -> String {
    x.map_or_else(|| "n/a".into(), |v| format!("{v:.prec$}"))
}

fn info(code: &CodeArgs, limits: &Limits, format: Format) -> CliResult<String> {
    let dec = parent_decoder(code, limits)?;
    let c = dec.code();
    let table = CosetLeaderTable::build(c, limits).ok();
    let bounded = StegoScheme::bounded(dec.clone());
    let params = bounded.params(limits).with_m(code.m);
    let rec = params.record();
    let histogram = table.as_ref().map(|t| t.histogram().to_vec());
    Ok(match format {
        Format::Json => format!(
            "{}\n",
            json!({
                "family": format!("{:?}", code.family).to_lowercase(),
                "m": code.m,
                "t": dec.radius(),
                "n": c.len(),
                "k": c.dimension(),
                "r": c.redundancy(),
                "covering_radius": table.as_ref().map(|t| t.covering_radius()),
                "leader_weights": histogram,
                "bounded_scheme": rec,
            })
        ),
        Format::Csv => format!("{}\n{}\n", ParamsRecord::CSV_HEADER, rec.csv_row()),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "code      [{}, {}], r = {}, decoder radius {}",
                c.len(),
                c.dimension(),
                c.redundancy(),
                dec.radius()
            );
            match &table {
                Some(t) => {
                    let _ = writeln!(s, "rho       {}", t.covering_radius());
                    let _ = writeln!(s, "A_j       {:?}", t.histogram());
                }
                None => {
                    let _ = writeln!(s, "rho       n/a (2^{} cosets exceed the cap)", c.redundancy());
                }
            }
            let _ = writeln!(s, "a         {:.4}", rec.a);
            let _ = writeln!(s, "T_avg     {}", fmt_opt(rec.t_avg, 4));
            let _ = writeln!(s, "p_S       {}", fmt_opt(rec.p_s, 4));
            let _ = writeln!(s, "e         {}", fmt_opt(rec.e, 4));
            let _ = writeln!(s, "e_avg     {}", fmt_opt(rec.e_avg, 4));
            s
        }
    })
}

fn table1(m_min: u32, m_max: u32, format: Format) -> String {
    let rows: Vec<(u32, u64, u32, f64)> = (m_min..=m_max)
        .map(|m| {
            let n = (1u64 << m) - 1;
            let r = 3 * m;
            (m, n, r, syndrome_table_size_mb(n, r))
        })
        .collect();
    match format {
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(m, n, r, s)| json!({ "m": m, "n": n, "r": r, "size_mb": s })).collect();
            format!("{}\n", serde_json::Value::Array(v))
        }
        Format::Csv => {
            let mut s = "m,n,r,size_mb\n".to_string();
            for (m, n, r, mb) in rows {
                let _ = writeln!(s, "{m},{n},{r},{mb:.3}");
            }
            s
        }
        Format::Text => {
            let mut s = format!("{:>3} {:>6} {:>4} {:>16}\n", "m", "n", "r", "size (Mb)");
            for (m, n, r, mb) in rows {
                let _ = writeln!(s, "{m:>3} {n:>6} {r:>4} {mb:>16.3}");
            }
            s
        }
    }
}

/// Worst-case leader weight of BCH_m(t) for the families handled analytically.
fn known_covering_radius(t: usize) -> Option<usize> {
    match t {
        1 => Some(1),
        2 => Some(3),
        3 => Some(5),
        _ => None,
    }
}

fn table2(m_min: u32, m_max: u32, t: usize, limits: &Limits, format: Format) -> CliResult<String> {
    let mut rows = Vec::new();
    for m in m_min..=m_max {
        let n = (1usize << m) - 1;
        let r = bch_redundancy(m, t);
        let norm = BigRational::from_integer(num_bigint::BigInt::from(1) << (3 * m as usize));
        let exact = if r as u32 <= limits.max_log2_entries {
            let code = BchCode::with_default_field(m, t)?;
            CosetLeaderTable::build(code.code(), limits).ok()
        } else {
            None
        };
        let (rho, t_avg, t_avg_dec, successes, exact_flag) = match &exact {
            Some(tab) => (
                Some(tab.covering_radius()),
                Some(tab.average_radius()),
                Some(tab.average_radius_within(t)),
                BigRational::from_integer(tab.count_within(t).into()),
                true,
            ),
            None => (
                known_covering_radius(t),
                None,
                None,
                BigRational::from_integer(ball_volume(2, n as u64, t as u64).into()),
                false,
            ),
        };
        let p_s_3m = &successes / &norm;
        let p_s = &successes / BigRational::from_integer(num_bigint::BigInt::from(1) << r);
        let e = rho.map(|rho| r as f64 / rho as f64);
        let e_avg = f(&t_avg).map(|ta| r as f64 / ta);
        let p = to_f64(&p_s_3m);
        rows.push(json!({
            "m": m,
            "n": n,
            "r": r,
            "exact": exact_flag,
            "T": rho,
            "T_avg": f(&t_avg),
            "T_avg_decodable": f(&t_avg_dec),
            "e": e,
            "e_avg": e_avg,
            "p_S": p,
            "p_S_true": to_f64(&p_s),
            "e_rel": e.map(|e| e * p),
            "e_avg_rel": e_avg.map(|e| e * p),
        }));
    }
    Ok(render_rows(
        &rows,
        &[
            ("m", 0),
            ("n", 0),
            ("r", 0),
            ("T_avg", 2),
            ("e", 3),
            ("e_avg", 3),
            ("p_S", 3),
            ("e_rel", 3),
            ("e_avg_rel", 3),
            ("T", 0),
            ("T_avg_decodable", 3),
            ("p_S_true", 4),
        ],
        format,
    ))
}

/// Renders JSON rows as text or CSV columns, or as a JSON array.
fn render_rows(rows: &[serde_json::Value], cols: &[(&str, usize)], format: Format) -> String {
    let cell = |v: &serde_json::Value, prec: usize| -> String {
        match v {
            serde_json::Value::Null => "n/a".into(),
            serde_json::Value::Number(x) if x.is_f64() => format!("{:.prec$}", x.as_f64().unwrap()),
            other => other.to_string().trim_matches('"').to_string(),
        }
    };
    match format {
        Format::Json => format!("{}\n", serde_json::Value::Array(rows.to_vec())),
        Format::Csv => {
            let mut s = cols.iter().map(|c| c.0).collect::<Vec<_>>().join(",");
            s.push('\n');
            for row in rows {
                let line: Vec<String> = cols.iter().map(|(k, p)| cell(&row[*k], *p)).collect();
                let _ = writeln!(s, "{}", line.join(","));
            }
            s
        }
        Format::Text => {
            let table: Vec<Vec<String>> =
                rows.iter().map(|row| cols.iter().map(|(k, p)| cell(&row[*k], *p)).collect()).collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, (k, _))| table.iter().map(|r| r[i].len()).max().unwrap_or(0).max(k.len()))
                .collect();
            let mut s = String::new();
            let header: Vec<String> = cols.iter().zip(&widths).map(|((k, _), w)| format!("{k:>w$}")).collect();
            let _ = writeln!(s, "{}", header.join("  "));
            for r in &table {
                let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                let _ = writeln!(s, "{}", line.join("  "));
            }
            s
        }
    }
}

fn puncture_json(code: &CodeArgs, res: &PunctureResult) -> serde_json::Value {
    let child = &res.child;
    let table = &res.child_table;
    let t_avg = table.average_radius();
    json!({
        "family": format!("{:?}", code.family).to_lowercase(),
        "m": code.m,
        "t": res.t,
        "n": res.parent.len(),
        "r": res.parent.redundancy(),
        "rho": res.initial_rho,
        "punctured": res.punctured_one_based(),
        "n_prime": child.len(),
        "r_prime": child.redundancy(),
        "rho_prime": res.achieved_rho,
        "converged": res.converged,
        "a_prime": child.redundancy() as f64 / child.len() as f64,
        "e_prime": child.redundancy() as f64 / res.t as f64,
        "T_avg_prime": to_f64(&t_avg),
        "e_avg_prime": child.redundancy() as f64 / to_f64(&t_avg),
        "p_S_prime": to_f64(&res.embedding_probability()),
        "leader_weights": table.histogram(),
        "trace": res.trace,
    })
}

fn puncture(code: &CodeArgs, policy: &PolicyArgs, limits: &Limits, format: Format) -> CliResult<String> {
    let dec = parent_decoder(code, limits)?;
    let res = find_puncture_set(dec.code(), dec.radius(), &options(policy, limits)?)?;
    let v = puncture_json(code, &res);
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")),
        Format::Csv => {
            let p: Vec<String> = res.punctured_one_based().iter().map(|p| p.to_string()).collect();
            format!(
                "n,r,rho,t,n_prime,r_prime,rho_prime,converged,e_prime,p_S_prime,punctured\n{},{},{},{},{},{},{},{},{:.6},{:.6},{}\n",
                v["n"], v["r"], v["rho"], v["t"], v["n_prime"], v["r_prime"], v["rho_prime"], v["converged"],
                v["e_prime"].as_f64().unwrap(), v["p_S_prime"].as_f64().unwrap(), p.join(" ")
            )
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "parent    [{}, {}], rho = {}, t = {}",
                res.parent.len(),
                res.parent.dimension(),
                res.initial_rho,
                res.t
            );
            for step in &res.trace {
                let _ = writeln!(
                    s,
                    "step {:>2}  puncture {:>3} (count {}, {} heavy cosets) -> n' = {}, rho' = {}, p_S' = {:.4}",
                    step.step,
                    step.position + 1,
                    step.occurrences,
                    step.heavy_cosets,
                    step.length_after,
                    step.rho_after,
                    step.p_s_after
                );
            }
            let _ = writeln!(s, "P         {:?}", res.punctured_one_based());
            let _ = writeln!(
                s,
                "child     n' = {}, r' = {}, rho' = {}{}",
                res.child.len(),
                res.child.redundancy(),
                res.achieved_rho,
                if res.converged { "" } else { " (not converged)" }
            );
            let _ = writeln!(s, "e'        {:.4}", v["e_prime"].as_f64().unwrap());
            let _ = writeln!(s, "e_avg'    {:.4}", v["e_avg_prime"].as_f64().unwrap());
            let _ = writeln!(s, "p_S'      {:.4}", v["p_S_prime"].as_f64().unwrap());
            s
        }
    })
}

fn tables34(
    m_min: u32,
    m_max: u32,
    t: usize,
    policy: &PolicyArgs,
    limits: &Limits,
    format: Format,
) -> CliResult<String> {
    let opts = options(policy, limits)?;
    let mut rows = Vec::new();
    for m in m_min..=m_max {
        let code_args = CodeArgs { family: Family::Bch, m, t };
        let bch = BchCode::with_default_field(m, t)?;
        let table = CosetLeaderTable::build(bch.code(), limits)?;
        let res = find_puncture_set(bch.code(), t, &opts)?;
        let p = puncture_json(&code_args, &res);
        let n = bch.len() as f64;
        let r = bch.code().redundancy() as f64;
        let t_avg = to_f64(&table.average_radius());
        let np = res.child.len() as f64;
        let rp = res.child.redundancy() as f64;
        let tp = p["T_avg_prime"].as_f64().unwrap();
        rows.push(json!({
            "m": m,
            "n": bch.len(),
            "r": bch.code().redundancy(),
            "a": r / n,
            "T": table.covering_radius(),
            "T_avg": t_avg,
            "R_avg": t_avg / n,
            "e": r / table.covering_radius() as f64,
            "e_avg": r / t_avg,
            "n'": res.child.len(),
            "r'": res.child.redundancy(),
            "a'": rp / np,
            "rho'": res.achieved_rho,
            "T_avg'": tp,
            "R_avg'": tp / np,
            "e'": rp / t as f64,
            "e_avg'": rp / tp,
            "p_S'": p["p_S_prime"],
            "P": res.punctured_one_based(),
        }));
    }
    Ok(render_rows(
        &rows,
        &[
            ("m", 0),
            ("n", 0),
            ("r", 0),
            ("a", 3),
            ("R_avg", 4),
            ("e", 2),
            ("e_avg", 3),
            ("n'", 0),
            ("r'", 0),
            ("a'", 3),
            ("R_avg'", 4),
            ("T_avg'", 3),
            ("e'", 2),
            ("e_avg'", 3),
            ("rho'", 0),
            ("p_S'", 3),
        ],
        format,
    ))
}

fn embed_files(scheme: &StegoScheme, cover: &PathBuf, message: &PathBuf, out: &PathBuf) -> CliResult<String> {
    let cover_bits = unpack_bits(&std::fs::read(cover).map_err(Error::from)?);
    let msg_bits = unpack_bits(&std::fs::read(message).map_err(Error::from)?);
    let (n, r) = (scheme.n(), scheme.r());
    let full_blocks = cover_bits.len() / n;
    let needed = msg_bits.len().div_ceil(r);
    if needed > full_blocks {
        return Err(Failure::Embedding(format!(
            "message of {} bits needs {needed} blocks of {n} cover bits; the cover has {} bits, capacity {} blocks = {} message bits",
            msg_bits.len(),
            cover_bits.len(),
            full_blocks,
            full_blocks * r
        )));
    }
    let results: Vec<_> = (0..needed)
        .into_par_iter()
        .map(|i| {
            let x = BitVector::from_bools(cover_bits[i * n..(i + 1) * n].iter().copied());
            let end = ((i + 1) * r).min(msg_bits.len());
            let mut m = BitVector::from_bools(msg_bits[i * r..end].iter().copied());
            while m.len() < r {
                m.push(false);
            }
            scheme.embed(&x, &m).map(|o| (x, o))
        })
        .collect::<Result<_, _>>()?;
    let mut stego = cover_bits.clone();
    let mut failed = Vec::new();
    let mut changes = 0usize;
    let mut worst = 0usize;
    for (i, (x, outcome)) in results.into_iter().enumerate() {
        match outcome.stego() {
            Some(s) => {
                let d = s.distance(&x);
                changes += d;
                worst = worst.max(d);
                for (j, b) in s.iter().enumerate() {
                    stego[i * n + j] = b;
                }
            }
            None => failed.push(i),
        }
    }
    if !failed.is_empty() {
        return Err(Failure::Embedding(format!(
            "embedding failed in {} of {needed} blocks: {:?}",
            failed.len(),
            failed
        )));
    }
    let file = BitstreamFile::new(Kind::Stego, n as u32, r as u32, stego, msg_bits.len() as u64)?;
    std::fs::write(out, file.to_bytes()).map_err(Error::from)?;
    Ok(format!(
        "embedded {} bits in {needed} blocks of {n}; {changes} changes, at most {worst} per block\n",
        msg_bits.len()
    ))
}

fn extract_file(scheme: &StegoScheme, input: &PathBuf, out: &PathBuf) -> CliResult<String> {
    let file = BitstreamFile::from_bytes(&std::fs::read(input).map_err(Error::from)?)?;
    if file.kind != Kind::Stego {
        return Err(Error::Format("expected a stego container".into()).into());
    }
    if (file.n as usize, file.r as usize) != (scheme.n(), scheme.r()) {
        return Err(Failure::Usage(format!(
            "container was written for n = {}, r = {}, but the selected scheme has n = {}, r = {}",
            file.n,
            file.r,
            scheme.n(),
            scheme.r()
        )));
    }
    let l = file.message_bits as usize;
    let blocks = l.div_ceil(scheme.r());
    let parts: Vec<BitVector> =
        (0..blocks).into_par_iter().map(|i| scheme.extract(&file.block(i as u64))).collect::<Result<_, _>>()?;
    let mut bits: Vec<bool> = parts.iter().flat_map(|p| p.iter()).collect();
    bits.truncate(l);
    std::fs::write(out, pack_bits(&bits)).map_err(Error::from)?;
    Ok(format!("extracted {l} bits from {blocks} blocks\n"))
}
