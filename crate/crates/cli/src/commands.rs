// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use mdkit::cover::{hrcover, AggModel, Cost, CoverProblem, GeoRect, GroupConfig, Max, Sum, Variant};
use mdkit::diameter::{diameter_bruteforce, diameter_search, DiamResult, Method};
use mdkit::encoder::{build_lmin, decode, render_encoding, DecimalMarkers, FixedWidthMarkers, MarkerScheme, Mode};
use mdkit::grammar::{count_occurrences, expand, naive_count, CountMode, Expansion, Grammar};
use mdkit::{normalize_pointset, BigRational, PointSet};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input::PointsFile;

fn list<T: FromStr>(what: &str, spec: &str) -> CliResult<Vec<T>> {
    spec.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse().map_err(|_| CliError::Input(format!("{what}: cannot parse '{t}'")))
        })
        .collect()
}

fn lengths(what: &str, spec: &str) -> CliResult<Vec<Option<BigRational>>> {
    spec.split(',')
        .map(|t| match t.trim() {
            "inf" | "∞" => Ok(None),
            t => t
                .parse()
                .map(Some)
                .map_err(|_| CliError::Input(format!("{what}: cannot parse '{t}'"))),
        })
        .collect()
}

/// Group configuration from comma-separated specs: 1-based group ids per
/// dimension, factors per dimension, bounds per group (`inf` for none).
pub fn group_config(
    d: usize,
    groups: Option<&str>,
    f: Option<&str>,
    lmin: Option<&str>,
    lmax: Option<&str>,
) -> CliResult<GroupConfig<BigRational>> {
    let groups: Vec<usize> = match groups {
        Some(s) => list::<usize>("--groups", s)?
            .into_iter()
            .map(|g| g.checked_sub(1).ok_or_else(|| CliError::Input("--groups: ids start at 1".into())))
            .collect::<CliResult<_>>()?,
        None => (0..d).collect(),
    };
    if groups.len() != d {
        return Err(CliError::Input(format!("--groups has {} entries for {d} dimensions", groups.len())));
    }
    let e = groups.iter().max().map_or(0, |g| g + 1);
    let one = BigRational::from_integer(1.into());
    let factors = match f {
        Some(s) => list::<BigRational>("--f", s)?,
        None => vec![one; d],
    };
    let lmin = match lmin {
        Some(s) => lengths("--lmin", s)?
            .into_iter()
            .map(|v| v.ok_or_else(|| CliError::Input("--lmin must be finite".into())))
            .collect::<CliResult<_>>()?,
        None => vec![BigRational::from_integer(0.into()); e],
    };
    let lmax = match lmax {
        Some(s) => lengths("--lmax", s)?,
        None => vec![None; e],
    };
    if lmin.len() != e || lmax.len() != e {
        return Err(CliError::Input(format!("--lmin and --lmax need one entry per group ({e})")));
    }
    Ok(GroupConfig::new(groups, factors, lmin, lmax)?)
}

pub fn load_points(text: &str) -> CliResult<PointSet> {
    let pf = PointsFile::parse(text)?;
    Ok(normalize_pointset(pf.dim, &pf.rows)?)
}

#[derive(Debug, Clone)]
pub struct CoverArgs {
    pub kh: usize,
    pub variant: Variant,
    pub groups: Option<String>,
    pub f: Option<String>,
    pub lmin: Option<String>,
    pub lmax: Option<String>,
    pub agg: String,
    pub json: bool,
}

#[derive(Debug, Serialize)]
pub struct Placement {
    pub xmin: Vec<String>,
    pub xmax: Vec<String>,
    pub lengths: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CoverReport {
    pub cost: String,
    pub variant: String,
    pub millis: f64,
    pub placements: Vec<Placement>,
}

fn strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn placement(r: &GeoRect<BigRational>) -> Placement {
    Placement {
        xmin: strings(&r.xmin),
        xmax: strings(&r.xmax),
        lengths: strings(&r.lengths),
    }
}

pub fn cmd_cover(points: &str, args: &CoverArgs, out: &mut dyn Write) -> CliResult<()> {
    let ps = load_points(points)?;
    let cfg = group_config(
        ps.dim(),
        args.groups.as_deref(),
        args.f.as_deref(),
        args.lmin.as_deref(),
        args.lmax.as_deref(),
    )?;
    let agg: &dyn AggModel<BigRational> = match args.agg.as_str() {
        "sum" => &Sum,
        "max" => &Max,
        other => return Err(CliError::Input(format!("unknown aggregation '{other}'"))),
    };
    let problem = CoverProblem::new(&ps, cfg, args.kh)?.with_variant(args.variant).with_agg(agg);
    let start = Instant::now();
    let sol = hrcover(&problem);
    let millis = start.elapsed().as_secs_f64() * 1e3;
    if let Cost::Infinite = sol.aggregate {
        return Err(CliError::Infeasible(format!(
            "no cover with at most {} rectangles satisfies the length bounds",
            args.kh
        )));
    }
    let report = CoverReport {
        cost: sol.aggregate.to_string(),
        variant: args.variant.to_string(),
        millis,
        placements: sol.placements.iter().map(placement).collect(),
    };
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
    } else {
        writeln!(out, "cost {}", report.cost)?;
        for (i, p) in report.placements.iter().enumerate() {
            let sides: Vec<String> = p.xmin.iter().zip(&p.xmax).map(|(a, b)| format!("[{a}, {b}]")).collect();
            writeln!(out, "rect {}: {}  lengths {}", i + 1, sides.join(" x "), p.lengths.join(","))?;
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct DiameterReport {
    pub value: i64,
    pub method: String,
    /// 1-based row numbers of an attaining pair.
    pub witness: Option<[usize; 2]>,
    pub millis: f64,
}

pub fn cmd_diameter(points: &str, method: &str, witness: bool, json: bool, out: &mut dyn Write) -> CliResult<()> {
    let ps = load_points(points)?;
    let start = Instant::now();
    let res: DiamResult = match method {
        "brute" => diameter_bruteforce(&ps)?,
        m => diameter_search(&ps, m.parse::<Method>()?, witness)?,
    };
    let report = DiameterReport {
        value: res.value,
        method: method.to_string(),
        witness: if witness { res.witness.map(|(a, b)| [a + 1, b + 1]) } else { None },
        millis: start.elapsed().as_secs_f64() * 1e3,
    };
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
    } else {
        writeln!(out, "diameter {}", report.value)?;
        if let Some([a, b]) = report.witness {
            writeln!(out, "witness {a} {b}")?;
        }
    }
    Ok(())
}

fn markers(fixed_width: Option<usize>) -> Box<dyn MarkerScheme> {
    match fixed_width {
        Some(width) => Box::new(FixedWidthMarkers { width }),
        None => Box::new(DecimalMarkers),
    }
}

/// Input text without its trailing line break.
pub fn strip_newline(text: &str) -> &str {
    text.strip_suffix('\n').map_or(text, |t| t.strip_suffix('\r').unwrap_or(t))
}

pub fn cmd_encode(
    text: &str,
    mode: Mode,
    emit_table: bool,
    fixed_width: Option<usize>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let m = markers(fixed_width);
    let chars: Vec<char> = strip_newline(text).chars().collect();
    let table = build_lmin(&chars, m.as_ref(), mode)?;
    writeln!(out, "{}", render_encoding(&chars, &table, m.as_ref()))?;
    writeln!(out, "length {}", table.total())?;
    if emit_table {
        for i in 0..chars.len() {
            let row: Vec<String> = (i..chars.len()).map(|j| table.lmin(i, j).to_string()).collect();
            writeln!(out, "{}: {}", i + 1, row.join(" "))?;
        }
    }
    Ok(())
}

pub fn cmd_decode(text: &str, fixed_width: Option<usize>, out: &mut dyn Write) -> CliResult<()> {
    let m = markers(fixed_width);
    writeln!(out, "{}", decode(strip_newline(text), m.as_ref())?)?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct GrammarReport {
    pub count: String,
    pub modulus: Option<u64>,
    /// `Some(true)` when the expansion was checked and agreed.
    pub oracle: Option<bool>,
}

pub fn cmd_grammar_count(
    g: &Grammar,
    pattern: &str,
    modulus: Option<u64>,
    oracle_limit: Option<u64>,
    json: bool,
    out: &mut dyn Write,
) -> CliResult<()> {
    let mode = modulus.map_or(CountMode::Exact, CountMode::Mod);
    let count = count_occurrences(g, pattern, mode)?;
    let mut note = None;
    let oracle = match oracle_limit {
        None => None,
        Some(limit) => match expand(g, limit) {
            Expansion::Text(text) => {
                let naive = naive_count(&text, pattern)?;
                let expect = modulus.map_or(naive, |m| naive % m);
                if count != expect.into() {
                    return Err(CliError::Internal(format!("count {count} but expansion gives {expect}")));
                }
                Some(true)
            }
            Expansion::TooLarge(len) => {
                note = Some(format!("oracle skipped: expansion length {len} exceeds {limit}"));
                None
            }
        },
    };
    let report = GrammarReport {
        count: count.to_string(),
        modulus,
        oracle,
    };
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
    } else {
        writeln!(out, "count {}", report.count)?;
        if oracle == Some(true) {
            writeln!(out, "oracle ok")?;
        }
        if let Some(n) = note {
            writeln!(out, "{n}")?;
        }
    }
    Ok(())
}
