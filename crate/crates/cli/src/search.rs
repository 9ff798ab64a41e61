//! Batch scans over alpha, one CSV row per candidate, in canonical order.

use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use clap::Args;
use kummono::monogenic::{kummer_edd_over_q, radical_monogenic};
use kummono::numfield::{is_irreducible_radical, FieldKind};
use kummono::{Error, FieldElem, NumberField, Status};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::commands::build_field;
use crate::report::{Failure, Outcome};
use crate::{FieldSpec, GlobalOpts};

pub const CSV_HEADER: [&str; 7] =
    ["field", "n", "alpha", "verdict", "witness_kind", "witness_prime_norm", "runtime_ms"];

const BATCH: usize = 32;

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[command(flatten)]
    pub field: FieldSpec,
    #[arg(short = 'n')]
    pub n: u64,
    /// Rational alpha in an inclusive range `a..b`.
    #[arg(long, value_name = "A..B", conflicts_with = "alpha_box", allow_hyphen_values = true)]
    pub alpha_range: Option<String>,
    /// All alpha with every power-basis coordinate in `[-B, B]`.
    #[arg(long = "box", value_name = "B")]
    pub alpha_box: Option<u64>,
    /// Primes to test as essential discriminant divisors instead of the radical criterion.
    #[arg(short = 'l', value_delimiter = ',')]
    pub l: Vec<u64>,
    /// Only emit rows whose verdict is this value.
    #[arg(long)]
    pub only: Option<String>,
    /// CSV destination; defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Continue a previously interrupted scan from its manifest.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Behave as if interrupted after this many candidates.
    #[arg(long, hide = true)]
    pub interrupt_after: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub field: String,
    pub n: u64,
    pub alpha: String,
    pub verdict: String,
    pub witness_kind: String,
    pub witness_prime_norm: String,
    pub runtime_ms: u64,
}

/// Written next to the CSV when a scan stops early.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResumeManifest {
    pub schema_version: u32,
    pub argv: Vec<String>,
    pub total: usize,
    pub completed: usize,
    pub out: Option<PathBuf>,
}

fn candidates(field: &NumberField, args: &SearchArgs) -> Result<Vec<FieldElem>, Failure> {
    match (&args.alpha_range, args.alpha_box) {
        (Some(r), None) => {
            let (a, b) =
                r.split_once("..").ok_or_else(|| Failure::Usage(format!("--alpha-range expects A..B, got {r:?}")))?;
            let parse = |s: &str| {
                s.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("--alpha-range: bad integer {s:?}")))
            };
            let (a, b) = (parse(a)?, parse(b)?);
            Ok((a..=b).filter(|&v| v != 0).map(|v| field.from_i64(v)).collect())
        }
        (None, Some(bound)) => {
            let d = field.degree();
            let side = 2 * bound + 1;
            let total = (side as u128).checked_pow(d as u32).filter(|&t| t <= 10_000_000);
            let total = total.ok_or_else(|| Failure::Usage("--box range is too large".into()))? as u64;
            let b = bound as i64;
            let mut out = Vec::with_capacity(total as usize);
            for idx in 0..total {
                let mut rest = idx;
                let mut coords = vec![0i64; d];
                for c in coords.iter_mut().rev() {
                    *c = (rest % side) as i64 - b;
                    rest /= side;
                }
                if coords.iter().any(|&c| c != 0) {
                    out.push(field.from_i64s(&coords));
                }
            }
            Ok(out)
        }
        (None, None) => Err(Failure::Usage("give --alpha-range or --box".into())),
        (Some(_), Some(_)) => Err(Failure::Usage("--alpha-range and --box are mutually exclusive".into())),
    }
}

fn classify(field: &NumberField, n: u64, alpha: &FieldElem, ls: &[u64], g: &GlobalOpts) -> (String, String, String) {
    let err_row = |e: Error| (format!("error:{:?}", e.class()).to_lowercase(), error_kind(&e), String::new());
    let none = String::new;
    if ls.is_empty() {
        return match radical_monogenic(field, n, alpha, g.assume_irreducible) {
            Ok(v) => match v.first_failure() {
                Some(w) => (
                    v.status.as_str().into(),
                    w.kind().into(),
                    w.prime().map(|p| p.norm().to_string()).unwrap_or_default(),
                ),
                None => (v.status.as_str().into(), none(), none()),
            },
            Err(Error::ReducibleRadical { .. }) => ("reducible".into(), none(), none()),
            Err(e) => err_row(e),
        };
    }
    if !g.assume_irreducible {
        match is_irreducible_radical(alpha, n) {
            Ok(true) => {}
            Ok(false) => return ("reducible".into(), none(), none()),
            Err(e) => return err_row(e),
        }
    }
    for &l in ls {
        match kummer_edd_over_q(n, alpha, l, true) {
            Ok(r) if r.is_edd => {
                let status = if g.assume_irreducible { Status::Conditional } else { Status::No };
                return (status.as_str().into(), "EddAt".into(), l.to_string());
            }
            Ok(_) | Err(Error::NotCoprimeToL { .. }) => {}
            Err(e) => return err_row(e),
        }
    }
    ("undetermined".into(), none(), none())
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("").to_string()
}

fn write_manifest(path: &Path, m: &ResumeManifest) -> io::Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(m).unwrap() + "\n")
}

fn manifest_path(out: &Option<PathBuf>) -> PathBuf {
    match out {
        Some(p) => {
            let mut s = p.clone().into_os_string();
            s.push(".resume.json");
            PathBuf::from(s)
        }
        None => PathBuf::from("kummono-search.resume.json"),
    }
}

pub fn run(args: &SearchArgs, g: &GlobalOpts) -> Result<Outcome, Failure> {
    let field = build_field(&args.field, g)?;
    if !args.l.is_empty() && field.kind() != FieldKind::Cyclotomic(args.n) {
        return Err(Failure::Usage(format!("-l requires --cyclotomic {}", args.n)));
    }
    let all = candidates(&field, args)?;
    let argv: Vec<String> = std::env::args().skip(1).collect();

    let mut start = 0usize;
    if let Some(path) = &args.resume {
        let text = std::fs::read_to_string(path)?;
        let m: ResumeManifest =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad resume manifest: {e}")))?;
        if m.total != all.len() {
            return Err(Failure::Usage("resume manifest does not match this scan".into()));
        }
        if m.out != args.out {
            return Err(Failure::Usage("resume manifest was written for a different --out".into()));
        }
        start = m.completed;
    }

    let mut sink: Box<dyn Write> = match &args.out {
        Some(p) if start > 0 => Box::new(OpenOptions::new().append(true).open(p)?),
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(&mut sink);
    if start == 0 {
        csv.write_record(CSV_HEADER).map_err(|e| Failure::Io(e.to_string()))?;
    }

    let stop = Arc::new(AtomicBool::new(false));
    {
        let stop = stop.clone();
        // only the first handler registration in a process succeeds; later ones are harmless
        let _ = ctrlc::set_handler(move || stop.store(true, Ordering::SeqCst));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Io(e.to_string()))?;

    let label = field.describe();
    let mut done = start;
    let mut counts: std::collections::BTreeMap<String, usize> = Default::default();
    let mut emitted = 0usize;
    while done < all.len() {
        if stop.load(Ordering::SeqCst) || args.interrupt_after.is_some_and(|k| done - start >= k) {
            break;
        }
        let mut end = (done + BATCH).min(all.len());
        if let Some(k) = args.interrupt_after {
            end = end.min(start + k);
        }
        let rows: Vec<Row> = pool.install(|| {
            all[done..end]
                .par_iter()
                .map(|alpha| {
                    let t0 = Instant::now();
                    let (verdict, witness_kind, witness_prime_norm) = classify(&field, args.n, alpha, &args.l, g);
                    Row {
                        field: label.clone(),
                        n: args.n,
                        alpha: alpha.display(),
                        verdict,
                        witness_kind,
                        witness_prime_norm,
                        runtime_ms: if g.timing { t0.elapsed().as_millis() as u64 } else { 0 },
                    }
                })
                .collect()
        });
        for row in rows {
            *counts.entry(row.verdict.clone()).or_default() += 1;
            if args.only.as_ref().is_none_or(|o| *o == row.verdict) {
                csv.serialize(&row).map_err(|e| Failure::Io(e.to_string()))?;
                emitted += 1;
            }
        }
        csv.flush()?;
        done = end;
    }
    csv.flush()?;
    drop(csv);
    sink.flush()?;

    let interrupted = done < all.len();
    let manifest = if interrupted {
        let path = manifest_path(&args.out);
        let m = ResumeManifest { schema_version: 1, argv, total: all.len(), completed: done, out: args.out.clone() };
        write_manifest(&path, &m)?;
        Some(path)
    } else {
        if let Some(p) = &args.resume {
            let _ = std::fs::remove_file(p);
        }
        None
    };

    let mut human = String::new();
    if args.out.is_some() || interrupted {
        human.push_str(&format!("candidates: {} (this run: {})\n", all.len(), done - start));
        for (k, v) in &counts {
            human.push_str(&format!("  {k}: {v}\n"));
        }
        if let Some(p) = &manifest {
            human.push_str(&format!("interrupted; resume with --resume {}\n", p.display()));
        }
    }
    let payload = json!({
        "total": all.len(),
        "processed": done - start,
        "rows_written": emitted,
        "counts": counts,
        "interrupted": interrupted,
        "manifest": manifest,
        "out": args.out,
    });
    Ok(Outcome { payload, human, report_to_stderr: args.out.is_none() })
}
