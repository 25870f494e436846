//! Cross-method verification matrix.
//!
//! For each `n`, build the configuration, run every applicable census method
//! and formula, and record whether they agree. Output depends only on the
//! inputs, never on the worker count.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use serde::Serialize;

use crate::census::{brute_force_structured, count_coords, count_structured, CountReport};
use crate::error::{domain, Result};
use crate::formulas::{as_count, eval_f_k, eval_t2r_closed, maximize_f_k_adaptive};
use crate::lenz::{build_even_config, build_odd_config, theorem12_partition, CircleConfig, PartitionVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub n: u64,
    pub partition: PartitionVector,
    /// Census reports keyed by method name.
    pub census: BTreeMap<String, CountReport>,
    /// Formula values keyed by formula name.
    #[serde(serialize_with = "ser_counts")]
    pub formulas: BTreeMap<String, BigUint>,
    pub agree: bool,
}

fn ser_counts<S: serde::Serializer>(m: &BTreeMap<String, BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k, v.to_string())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub first_mismatch: Option<String>,
    pub k: usize,
    pub odd: bool,
    pub ok: bool,
    pub r: u64,
    pub rows: Vec<VerifyRow>,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub ns: RangeInclusive<u64>,
    pub r: u64,
    pub k: usize,
    /// Odd-dimension skeleton instead of the even construction.
    pub odd: bool,
    /// Worker threads; `None` uses every available core.
    pub workers: Option<usize>,
}

/// Parse an inclusive range `"a..b"` or a single value `"a"`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>> {
    let bad = || domain(format!("invalid range {s:?}; expected a..b or a single value"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: u64 = a.parse().map_err(|_| bad())?;
    let b: u64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn config_for(n: u64, opts: &VerifyOptions) -> Result<(PartitionVector, CircleConfig)> {
    if opts.odd {
        let c = build_odd_config(n, opts.r)?;
        return Ok((c.partition(), c));
    }
    let partition = if opts.k == 3 {
        theorem12_partition(n, opts.r)?
    } else {
        let best = maximize_f_k_adaptive(n, opts.r, opts.k, 6)?;
        best.argmax.and_then(|a| a.into_iter().next()).ok_or_else(|| domain("no maximizer"))?
    };
    let c = build_even_config(n, opts.r, &partition)?;
    Ok((partition, c))
}

fn verify_one(n: u64, opts: &VerifyOptions) -> Result<(VerifyRow, Option<String>)> {
    let (partition, config) = config_for(n, opts)?;
    let k = opts.k;
    let mut census = BTreeMap::new();
    census.insert("closed".to_string(), count_structured(&config, k)?);
    census.insert("ticks".to_string(), brute_force_structured(&config, k)?);
    if config.is_embeddable() {
        census.insert("coords".to_string(), count_coords(&config, k, None)?);
    }
    let mut formulas = BTreeMap::new();
    if !opts.odd {
        let fk = eval_f_k(&partition, k)?;
        formulas.insert("fk".to_string(), as_count(&fk.value).expect("counts are nonnegative"));
        if k == 3 {
            let t = eval_t2r_closed(n, opts.r)?;
            formulas.insert("t2r".to_string(), as_count(&t.value).expect("counts are nonnegative"));
        }
    }

    let ctx = format!("n={n} r={} k={k} partition={partition}", opts.r);
    let mut mismatch = None;
    let mut reports = census.iter();
    if let Some((base_name, base)) = reports.next() {
        for (name, rep) in reports {
            if rep != base {
                mismatch.get_or_insert_with(|| {
                    format!(
                        "{ctx}: {base_name} ({}) != {name} ({})",
                        base.csv_row(),
                        rep.csv_row()
                    )
                });
            }
        }
        for (name, v) in &formulas {
            if *v != base.total {
                mismatch.get_or_insert_with(|| format!("{ctx}: {base_name} total {} != {name} {v}", base.total));
            }
        }
    }
    let row = VerifyRow { n, partition, census, formulas, agree: mismatch.is_none() };
    Ok((row, mismatch))
}

pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.r < 3 || opts.k < 3 || (opts.r as usize) < opts.k {
        return Err(domain(format!("need r >= k >= 3, got r = {}, k = {}", opts.r, opts.k)));
    }
    if *opts.ns.start() < opts.r {
        return Err(domain(format!("n must be at least r = {}", opts.r)));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = opts.workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = builder.build().map_err(|e| domain(format!("thread pool: {e}")))?;
    pool.install(|| {
        let mut rows = Vec::new();
        let mut first_mismatch = None;
        for n in opts.ns.clone() {
            let (row, mismatch) = verify_one(n, opts)?;
            if first_mismatch.is_none() {
                first_mismatch = mismatch;
            }
            rows.push(row);
        }
        Ok(VerifyReport {
            ok: first_mismatch.is_none(),
            first_mismatch,
            k: opts.k,
            odd: opts.odd,
            r: opts.r,
            rows,
        })
    })
}

impl VerifyReport {
    pub const CSV_HEADER: &'static str = "n,partition,method,delta1,delta2,delta3,total,agree";

    /// One row per (n, method); formulas appear with empty type columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let part = row.partition.to_string();
            for (m, rep) in &row.census {
                let _ = writeln!(out, "{},\"{}\",{},{},{}", row.n, part, m, rep.csv_row(), row.agree);
            }
            for (f, v) in &row.formulas {
                let _ = writeln!(out, "{},\"{}\",{},,,,{},{}", row.n, part, f, v, row.agree);
            }
        }
        out
    }

    /// Human-readable table: one line per n with every total side by side.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "r={} k={}{}", self.r, self.k, if self.odd { " (odd)" } else { "" });
        for row in &self.rows {
            let values: Vec<String> = row
                .census
                .iter()
                .map(|(m, rep)| format!("{m}={}", rep.total))
                .chain(row.formulas.iter().map(|(f, v)| format!("{f}={v}")))
                .collect();
            let _ = writeln!(
                out,
                "n={:<4} {:<16} {}  [{}]",
                row.n,
                row.partition.to_string(),
                values.join(" "),
                if row.agree { "ok" } else { "MISMATCH" }
            );
        }
        match &self.first_mismatch {
            Some(m) => {
                let _ = writeln!(out, "first mismatch: {m}");
            }
            None => {
                let _ = writeln!(out, "all methods agree");
            }
        }
        out
    }
}
