use std::fs;
use std::io::Write;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use u6n_core::catalog::{enumerate_normal_subgroups, enumerate_subgroups, subgroup_order};
use u6n_core::chain::count_chains;
use u6n_core::verify::{verify_range, VerifyOptions};
use u6n_core::{ChainCounts, GroupParams, Lattice, LatticeMode, Parallelism};

use crate::cache::Cache;
use crate::{BatchArgs, Cli, Command, CountArgs, Format, LatticeArgs, ListArgs, Relation, VerifyArgs};

/// Outcome of a run that did not hit an input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 2,
        }
    }
}

/// One line of a batch sweep. `per_length` is `;`-separated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchRow {
    pub n: u64,
    pub mode: LatticeMode,
    pub per_length: String,
    pub total: String,
    pub fuzzy_count: String,
    pub mm_count: String,
}

impl From<&ChainCounts> for BatchRow {
    fn from(c: &ChainCounts) -> Self {
        let per_length: Vec<String> = c.per_length.iter().map(ToString::to_string).collect();
        BatchRow {
            n: c.n,
            mode: c.mode,
            per_length: per_length.join(";"),
            total: c.total.to_string(),
            fuzzy_count: c.fuzzy_count.to_string(),
            mm_count: c.mm_count.to_string(),
        }
    }
}

/// Executes one command. `Err` means invalid input (or an oracle limit hit);
/// warnings such as cache trouble go to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status> {
    match &cli.command {
        Command::Subgroups(args) => list(args, false, out),
        Command::Normal(args) => list(args, true, out),
        Command::Chains(args) => chains(args, out, err),
        Command::Count(args) => count(args, out, err),
        Command::Lattice(args) => lattice(args, out),
        Command::Verify(args) => verify(args, cli.oracle_limit, out),
        Command::Batch(args) => batch(args, out, err),
    }
}

fn params(n: u64) -> Result<GroupParams> {
    Ok(GroupParams::new(n)?)
}

fn list(args: &ListArgs, normal: bool, out: &mut dyn Write) -> Result<Status> {
    let g = params(args.n)?;
    let descs = if normal {
        enumerate_normal_subgroups(g)
    } else {
        enumerate_subgroups(g)
    };
    match args.format {
        Format::Table => {
            let what = if normal { "normal subgroups" } else { "subgroups" };
            writeln!(out, "{} {what} of U_{}", descs.len(), g.order())?;
            for d in &descs {
                writeln!(out, "{:<12} order {}", d.to_string(), subgroup_order(g, *d))?;
            }
        }
        Format::Json => {
            let items: Vec<_> = descs
                .iter()
                .map(|&d| json!({"desc": d.to_string(), "order": subgroup_order(g, d)}))
                .collect();
            let doc = json!({"n": g.n(), "normal": normal, "subgroups": items});
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["desc", "order"])?;
            for &d in &descs {
                w.write_record([d.to_string(), subgroup_order(g, d).to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(Status::Success)
}

fn open_cache(path: Option<&std::path::Path>) -> Option<Cache> {
    path.map(Cache::open)
}

fn finish_cache(cache: Option<Cache>, err: &mut dyn Write) -> Result<()> {
    if let Some(mut cache) = cache {
        cache.flush();
        for w in cache.take_warnings() {
            writeln!(err, "warning: {w}")?;
        }
    }
    Ok(())
}

fn counts_for(n: u64, mode: LatticeMode, cache: &mut Option<Cache>) -> Result<ChainCounts> {
    let g = params(n)?;
    let compute = || count_chains(g, mode, Parallelism::Parallel);
    Ok(match cache {
        Some(cache) => cache.get_or_compute(n, mode, compute),
        None => compute(),
    })
}

fn chains(args: &CountArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status> {
    let mode = args.mode.into();
    let mut cache = open_cache(args.cache.as_deref());
    let counts = counts_for(args.n, mode, &mut cache)?;
    finish_cache(cache, err)?;
    let symbol = match mode {
        LatticeMode::All => "L",
        LatticeMode::Normal => "nL",
    };
    match args.format {
        Format::Table => {
            let order = 6 * args.n;
            writeln!(out, "proper chains in U_{order} ({mode} subgroups)")?;
            writeln!(out, "{:>6}  chains", "length")?;
            for (k, c) in counts.per_length.iter().enumerate() {
                writeln!(out, "{:>6}  {c}", k + 1)?;
            }
            writeln!(out, "{:>6}  {}", "total", counts.total)?;
            writeln!(
                out,
                "{symbol}^G_k = 0 for k >= {}",
                counts.per_length.len() + 1
            )?;
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&counts.to_json())?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["length", "chains"])?;
            for (k, c) in counts.per_length.iter().enumerate() {
                w.write_record([(k + 1).to_string(), c.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(Status::Success)
}

fn count(args: &CountArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status> {
    let mode = args.mode.into();
    let mut cache = open_cache(args.cache.as_deref());
    let counts = counts_for(args.n, mode, &mut cache)?;
    finish_cache(cache, err)?;
    let value = match args.relation {
        Relation::Tarnauceanu => &counts.fuzzy_count,
        Relation::Murali => &counts.mm_count,
    };
    match args.format {
        Format::Table => {
            let symbol = match mode {
                LatticeMode::All => "N_F",
                LatticeMode::Normal => "N_NF",
            };
            let suffix = match args.relation {
                Relation::Tarnauceanu => "",
                Relation::Murali => " (murali)",
            };
            writeln!(out, "{symbol}(U_{}){suffix} = {value}", 6 * args.n)?;
        }
        Format::Json => {
            let mut doc = serde_json::to_value(counts.to_json())?;
            doc["relation"] = json!(args.relation.as_str());
            doc["count"] = json!(value.to_string());
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "mode", "relation", "count"])?;
            w.write_record([
                args.n.to_string(),
                mode.to_string(),
                args.relation.as_str().to_string(),
                value.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(Status::Success)
}

fn lattice(args: &LatticeArgs, out: &mut dyn Write) -> Result<Status> {
    let lat = Lattice::build(params(args.n)?, args.mode.into());
    let dot_to_stdout = args.dot.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if let Some(path) = &args.dot {
        if dot_to_stdout {
            write!(out, "{}", lat.to_dot())?;
        } else {
            fs::write(path, lat.to_dot())
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    if dot_to_stdout {
        return Ok(Status::Success);
    }
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&lat.to_json())?)?,
        Format::Table => {
            writeln!(
                out,
                "{} nodes, height {}, top {}",
                lat.len(),
                lat.height(),
                lat.nodes()[lat.top_index()]
            )?;
            for (i, j) in lat.hasse_edges() {
                writeln!(out, "{} < {}", lat.nodes()[i], lat.nodes()[j])?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["sub", "super", "covering"])?;
            let hasse = lat.hasse_edges();
            for (i, j) in lat.strict_pairs() {
                w.write_record([
                    lat.nodes()[i].to_string(),
                    lat.nodes()[j].to_string(),
                    hasse.binary_search(&(i, j)).is_ok().to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(Status::Success)
}

fn verify(args: &VerifyArgs, oracle_limit: u64, out: &mut dyn Write) -> Result<Status> {
    if args.n_min > args.n_max {
        bail!("empty range: --n-min {} > --n-max {}", args.n_min, args.n_max);
    }
    let opts = VerifyOptions {
        n_min: args.n_min,
        n_max: args.n_max,
        oracle_limit,
        ..VerifyOptions::default()
    };
    let report = verify_range(&opts).map_err(|e| match e {
        u6n_core::Error::OracleLimitExceeded { .. } => anyhow::anyhow!(
            "{e}\nlower --n-max, raise --oracle-limit, or use `count`/`chains`, which never need the oracle"
        ),
        other => other.into(),
    })?;
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Table | Format::Csv => write!(out, "{}", report.to_text())?,
    }
    Ok(if report.all_passed() {
        Status::Success
    } else {
        Status::VerificationFailed
    })
}

fn batch(args: &BatchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status> {
    let mode: LatticeMode = args.mode.into();
    let mut cache = open_cache(args.cache.as_deref());
    let ns: Vec<u64> = args.range.iter().collect();

    let mut results: Vec<Option<ChainCounts>> = ns
        .iter()
        .map(|&n| cache.as_mut().and_then(|c| c.lookup(n, mode)))
        .collect();
    let missing: Vec<(usize, ChainCounts)> = results
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_none())
        .map(|(i, _)| i)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|i| {
            let g = GroupParams::new(ns[i]).expect("range starts at 1");
            (i, count_chains(g, mode, Parallelism::Sequential))
        })
        .collect();
    for (i, counts) in missing {
        if let Some(cache) = cache.as_mut() {
            cache.store(&counts);
        }
        results[i] = Some(counts);
    }
    finish_cache(cache, err)?;

    let rows: Vec<BatchRow> = results
        .iter()
        .map(|r| BatchRow::from(r.as_ref().expect("every n computed")))
        .collect();
    match args.format {
        Format::Json => {
            let docs: Vec<_> = results.iter().flatten().map(ChainCounts::to_json).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&docs)?)?;
        }
        Format::Csv | Format::Table => {
            let mut w = csv::Writer::from_writer(out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
    }
    Ok(Status::Success)
}
