//! Batch command-line surface: build | verify | table.
//!
//! Output is machine-readable JSON by default (`--pretty` for a human view).
//! Exit codes: 0 success, 2 parse/usage error, 3 enumeration overflow,
//! 4 failed internal construction check, 1 anything else.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use nu_core::corpus::{builtin_corpus, find_entry, load_corpus, CorpusEntry};
use nu_core::driver::{realize_entry, run_suite, BuildSummary, Suite};
use nu_core::nu::{Caps, NuMode};
use nu_core::report::{
    render_json, write_report, write_table, CheckRecord, DihedralOutcome, PruferOutcome,
    ReportDocument, ReportFormat, RowRecord, TableDocument,
};
use nu_core::verify::{family_dihedral, family_prufer_truncation};
use nu_core::Error;

#[derive(Parser)]
#[command(name = "nu-engine", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Group name from the corpus (omit with --all).
    name: Option<String>,

    /// Run over every corpus entry.
    #[arg(long)]
    all: bool,

    /// Presentation file to use instead of the built-in corpus.
    #[arg(long, value_name = "PATH")]
    corpus: Option<PathBuf>,

    /// Live-coset limit per enumeration.
    #[arg(long, default_value_t = 50_000, env = "NU_ENGINE_CAP")]
    coset_cap: usize,

    /// Largest |G| admitted to the pipeline.
    #[arg(long, default_value_t = 24)]
    order_cap: u64,

    /// Largest |G| admitted to the direct tensor-square presentation.
    #[arg(long, default_value_t = 12)]
    direct_cap: u64,

    /// Seed for sampled scopes.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Instantiation mode for the nu relators.
    #[arg(long, default_value = "generator-triples")]
    nu_mode: String,

    /// Write the report/table to this path.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format for --out and stdout.
    #[arg(long, default_value = "json")]
    format: String,

    /// Worker threads across groups (per-group work stays sequential).
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Human-readable output instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Realize nu(G) and print the structure summary.
    Build(Common),
    /// Run verification suites and report per-check outcomes.
    Verify {
        #[command(flatten)]
        common: Common,
        /// identities | theta | rho | coset | hypothesis | proposition | theorem-a | all
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Emit family tables.
    Table {
        #[command(flatten)]
        common: Common,
        /// dihedral | prufer | corpus
        #[arg(long)]
        family: String,
        /// Inclusive range m1..m2 for the dihedral family.
        #[arg(long)]
        range: Option<String>,
        /// Prime for the truncation family.
        #[arg(long)]
        p: Option<u64>,
        /// Inclusive range k1..k2 for the truncation family.
        #[arg(long)]
        k: Option<String>,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::UndeclaredGenerator { .. }
        | Error::DuplicateName(_)
        | Error::UnknownGroup(_) => 2,
        Error::Overflow { .. } | Error::OrderCap { .. } | Error::DegreeCap { .. } => 3,
        Error::InternalCheck(_) | Error::NotAHomomorphism => 4,
        _ => 1,
    }
}

fn caps_of(c: &Common) -> Caps {
    Caps {
        coset_cap: c.coset_cap,
        order_cap: c.order_cap,
        direct_cap: c.direct_cap,
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), Error> {
    let (a, b) = s.split_once("..").ok_or_else(|| Error::InternalCheck(
        format!("range `{s}` must look like 3..15"),
    ))?;
    let lo = a.parse().map_err(|_| Error::InternalCheck(format!("bad range start `{a}`")))?;
    let hi = b.trim_start_matches('=')
        .parse()
        .map_err(|_| Error::InternalCheck(format!("bad range end `{b}`")))?;
    Ok((lo, hi))
}

fn selected_entries(c: &Common) -> Result<Vec<CorpusEntry>, Error> {
    let pool = match &c.corpus {
        Some(path) => load_corpus(path)?,
        None => builtin_corpus(),
    };
    match (&c.name, c.all) {
        (Some(name), false) => Ok(vec![find_entry(&pool, name)?.clone()]),
        (None, true) => Ok(pool),
        (Some(_), true) => Err(Error::InternalCheck(
            "give either a group name or --all, not both".into(),
        )),
        (None, false) => Err(Error::InternalCheck(
            "select a group by name, or pass --all".into(),
        )),
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(f)
}

fn cmd_build(c: &Common) -> Result<(), Error> {
    let entries = selected_entries(c)?;
    let caps = caps_of(c);
    let mode: NuMode = c.nu_mode.parse()?;
    let summaries: Vec<Result<BuildSummary, Error>> = with_pool(c.jobs, || {
        entries
            .par_iter()
            .map(|e| realize_entry(e, &caps, mode).map(|n| BuildSummary::of(&n)))
            .collect()
    });
    let mut ok: Vec<BuildSummary> = Vec::new();
    for s in summaries {
        ok.push(s?);
    }
    ok.sort_by(|a, b| a.name.cmp(&b.name));
    if c.pretty {
        for s in &ok {
            println!(
                "{}: |G| = {}, |nu(G)| = {}, |H| = {}, |Theta| = {}, tensors = {}, mode = {}",
                s.name, s.order_g, s.order_nu, s.order_h, s.order_theta, s.tensor_count, s.mode
            );
        }
    } else {
        print!("{}", render_json(&ok)?);
    }
    Ok(())
}

fn cmd_verify(c: &Common, suite_name: &str) -> Result<bool, Error> {
    let entries = selected_entries(c)?;
    let caps = caps_of(c);
    let mode: NuMode = c.nu_mode.parse()?;
    let suite: Suite = suite_name.parse()?;
    let seed = c.seed;

    let outcomes: Vec<Result<(String, Vec<nu_core::verify::CheckReport>, Option<nu_core::verify::TheoremARow>), Error>> =
        with_pool(c.jobs, || {
            entries
                .par_iter()
                .map(|e| {
                    let n = realize_entry(e, &caps, mode)?;
                    let (checks, row) = run_suite(&n, suite, seed)?;
                    Ok((e.name.clone(), checks, row))
                })
                .collect()
        });

    let mut doc = ReportDocument::new(caps, seed);
    for outcome in outcomes {
        let (name, checks, row) = outcome?;
        for ch in checks {
            doc.checks.push(CheckRecord::new(name.clone(), ch));
        }
        if let Some(r) = row {
            doc.rows.push(RowRecord::complete(r));
        }
    }
    doc.finalize();

    if let Some(path) = &c.out {
        write_report(&doc, c.format.parse()?, path)?;
    }
    if c.pretty {
        for ch in &doc.checks {
            println!(
                "{:18} {:40} {}",
                ch.group,
                ch.check,
                if ch.passed { "pass" } else { "FAIL" }
            );
        }
        for r in &doc.rows {
            if let Some(row) = &r.row {
                println!(
                    "{:18} n = {:4} |nu''| = {:4} formula-ok = {}",
                    r.name, row.n_max_tensor_class, row.order_nu_second_derived, row.formula_ok
                );
            }
        }
    } else {
        print!("{}", render_json(&doc)?);
    }
    Ok(doc.all_passed())
}

fn cmd_table(
    c: &Common,
    family: &str,
    range: Option<&str>,
    p: Option<u64>,
    k: Option<&str>,
) -> Result<bool, Error> {
    let caps = caps_of(c);
    let mode: NuMode = c.nu_mode.parse()?;
    let format: ReportFormat = c.format.parse()?;
    match family {
        "dihedral" => {
            let (lo, hi) = parse_range(range.ok_or_else(|| {
                Error::InternalCheck("--family dihedral needs --range".into())
            })?)?;
            let rows: Vec<DihedralOutcome> = with_pool(c.jobs, || {
                (lo..=hi)
                    .into_par_iter()
                    .map(|m| match family_dihedral(m..=m, &caps).pop().unwrap() {
                        (m, Ok(row)) => DihedralOutcome {
                            m,
                            complete: true,
                            row: Some(row),
                            error: None,
                        },
                        (m, Err(e)) => DihedralOutcome {
                            m,
                            complete: false,
                            row: None,
                            error: Some(e.to_string()),
                        },
                    })
                    .collect()
            });
            let any = rows.iter().any(|r| r.complete);
            let doc = TableDocument::new("dihedral", caps, c.seed, rows);
            if let Some(path) = &c.out {
                write_table(&doc, format, path)?;
            }
            if c.pretty {
                for r in &doc.rows {
                    match &r.row {
                        Some(row) => println!(
                            "m = {:3} |G| = {:3} max commutator class = {} |G'| = {}",
                            row.m, row.order_g, row.max_commutator_class, row.derived_order
                        ),
                        None => println!("m = {:3} incomplete: {}", r.m, r.error.as_deref().unwrap_or("?")),
                    }
                }
            } else {
                print!("{}", render_json(&doc)?);
            }
            Ok(any)
        }
        "prufer" => {
            let prime = p.ok_or_else(|| Error::InternalCheck("--family prufer needs --p".into()))?;
            let (lo, hi) = parse_range(
                k.ok_or_else(|| Error::InternalCheck("--family prufer needs --k".into()))?,
            )?;
            let rows: Vec<PruferOutcome> = with_pool(c.jobs, || {
                (lo as u32..=hi as u32)
                    .into_par_iter()
                    .map(|kk| {
                        match family_prufer_truncation(prime, kk..=kk, &caps, mode).pop().unwrap() {
                            (kk, Ok(row)) => PruferOutcome {
                                p: prime,
                                k: kk,
                                complete: true,
                                row: Some(row),
                                error: None,
                            },
                            (kk, Err(e)) => PruferOutcome {
                                p: prime,
                                k: kk,
                                complete: false,
                                row: None,
                                error: Some(e.to_string()),
                            },
                        }
                    })
                    .collect()
            });
            let any = rows.iter().any(|r| r.complete);
            let doc = TableDocument::new("prufer", caps, c.seed, rows);
            if let Some(path) = &c.out {
                write_table(&doc, format, path)?;
            }
            if c.pretty {
                for r in &doc.rows {
                    match &r.row {
                        Some(row) => println!(
                            "p = {} k = {} |G| = {:4} max tensor class = {} |G'| = {}",
                            row.p, row.k, row.order_g, row.max_tensor_class, row.derived_order
                        ),
                        None => println!(
                            "p = {} k = {} incomplete: {}",
                            r.p,
                            r.k,
                            r.error.as_deref().unwrap_or("?")
                        ),
                    }
                }
            } else {
                print!("{}", render_json(&doc)?);
            }
            Ok(any)
        }
        "corpus" => {
            let entries = selected_entries(c)?;
            let rows: Vec<RowRecord> = with_pool(c.jobs, || {
                entries
                    .par_iter()
                    .map(|e| match realize_entry(e, &caps, mode) {
                        Ok(n) => RowRecord::complete(nu_core::verify::theorem_a_row_for(&n)),
                        Err(err) => RowRecord::incomplete(e.name.clone(), err.to_string()),
                    })
                    .collect()
            });
            let mut doc = ReportDocument::new(caps, c.seed);
            doc.rows = rows;
            doc.finalize();
            let any = doc.rows.iter().any(|r| r.complete);
            if let Some(path) = &c.out {
                write_report(&doc, format, path)?;
            }
            if c.pretty {
                for r in &doc.rows {
                    match &r.row {
                        Some(row) => println!(
                            "{:18} |G| = {:3} |nu| = {:6} n = {:3} |nu''| = {:4} formula-ok = {}",
                            r.name,
                            row.order_g,
                            row.order_nu,
                            row.n_max_tensor_class,
                            row.order_nu_second_derived,
                            row.formula_ok
                        ),
                        None => println!(
                            "{:18} incomplete: {}",
                            r.name,
                            r.error.as_deref().unwrap_or("?")
                        ),
                    }
                }
            } else {
                print!("{}", render_json(&doc)?);
            }
            Ok(any)
        }
        other => Err(Error::InternalCheck(format!("unknown family `{other}`"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<ExitCode, Error> = match &cli.command {
        Command::Build(c) => cmd_build(c).map(|()| ExitCode::SUCCESS),
        // A completed verify with a failing check is an internal-check
        // failure (exit 4); a table with no completed row is an overflow
        // outcome (exit 3).
        Command::Verify { common, suite } => cmd_verify(common, suite).map(|ok| {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }),
        Command::Table {
            common,
            family,
            range,
            p,
            k,
        } => cmd_table(common, family, range.as_deref(), *p, k.as_deref()).map(|any| {
            if any {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
