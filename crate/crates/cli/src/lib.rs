//! Command-line front end. Every command prints one JSON report; the exit
//! code is 0 on success, 1 on a domain failure and 2 on a usage error.

pub mod acceptance;

use clap::{Args, Parser, Subcommand, ValueEnum};
use covers_core::abelian_covers::{
    burniat, campedelli, component_count, cover_invariants, uniform, BuildingData,
    CoincidencePattern,
};
use covers_core::arrangements_strata::strata::{burniat_tilings, maximal_cell_orbits, row_of_label};
use covers_core::arrangements_strata::{
    arrangement_lc_scan, burniat_boundary_catalog, campedelli_divisor_orbits,
    campedelli_single_component_argument, cell_metadata, check_item, scan_campedelli,
    surface_census, tiling_invariant, ArrangementKind, LineArrangement,
};
use covers_core::local_singularities::{
    classify_nc, classify_smooth, parse_branches, LocalBranchConfig, NCLocalConfig,
    SingularityRecord,
};
use covers_core::polytopes::burniat::delta_bur;
use covers_core::polytopes::{parse_inequality, verify_tiling};
use covers_core::{Error, GroupElt, Result};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;

#[derive(Parser, Debug)]
#[command(name = "covers", version, about = "Z2^k covers, slc tables and the Burniat polytope")]
pub struct Cli {
    /// Worker threads for enumerations (default: all cores). Output does not
    /// depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Look up the local singularity of a cover over a point.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Invariants and connected components of covers.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Maximal cells, tilings and dimensions in the Burniat polytope.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// lc scan of an explicit line arrangement.
    #[command(subcommand)]
    Arrangement(ArrangementCmd),
    /// Boundary divisor catalogs.
    Boundary { which: Family },
    /// Acceptance checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
pub enum ClassifyCmd {
    /// A point of a smooth base: `--branches "110:1,101:1,011:2,011:2"`.
    Point {
        #[arg(long)]
        rank: u8,
        #[arg(long)]
        branches: String,
    },
    /// A point on the double curve of a normal-crossing base.
    Ncpoint {
        /// Defaults to the length of the first label.
        #[arg(long)]
        rank: Option<u8>,
        /// Label of the double curve when it is ramified.
        #[arg(long)]
        ramified: Option<String>,
        #[arg(long, default_value = "")]
        side1: String,
        #[arg(long, default_value = "")]
        side2: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoverCmd {
    Invariants(InvariantsArgs),
    /// Components after identifying pairs of labels: `--pairs "100=011,010=101"`.
    Components {
        #[arg(long)]
        pairs: String,
        /// Defaults to the label length.
        #[arg(long)]
        rank: Option<u8>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct InvariantsArgs {
    /// campedelli, burniat or uniform:m,k
    #[arg(long)]
    preset: Option<String>,
    /// Building data as JSON.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum PolytopeCmd {
    Enumerate,
    Tilings,
    /// Dimension of Δ_bur cut by the inequalities in a JSON file, either a
    /// list of strings or `{"inequalities": [...]}`.
    Dim {
        #[arg(long)]
        cell: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ArrangementCmd {
    Scan {
        #[arg(long)]
        file: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    Campedelli,
    Burniat,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    All,
}

#[derive(Debug, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub diagnostics: Vec<String>,
    pub payload: Value,
    pub status: &'static str,
}

impl CommandReport {
    pub fn to_json(&self) -> String {
        // serde_json maps are ordered, so keys come out sorted.
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("payload serializes")
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))
}

fn record_payload(r: &SingularityRecord) -> Value {
    json!({ "caseId": r.case_id, "singularity": r.singularity_tag, "record": to_value(r) })
}

fn preset(name: &str) -> Result<BuildingData> {
    match name {
        "campedelli" => Ok(campedelli()),
        "burniat" => Ok(burniat()),
        other => {
            let args = other
                .strip_prefix("uniform:")
                .ok_or_else(|| Error::InvalidInput(format!("unknown preset {other:?}")))?;
            let (m, k) = args
                .split_once(',')
                .and_then(|(m, k)| Some((m.trim().parse().ok()?, k.trim().parse().ok()?)))
                .ok_or_else(|| Error::InvalidInput(format!("uniform preset needs m,k; got {args:?}")))?;
            uniform(m, k)
        }
    }
}

fn parse_pairs(s: &str, rank: Option<u8>) -> Result<(CoincidencePattern, u8)> {
    let mut pairs = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("pair {part:?} is not a=b")))?;
        pairs.push((a.trim().parse::<GroupElt>()?, b.trim().parse::<GroupElt>()?));
    }
    let k = match (rank, pairs.first()) {
        (Some(k), _) => k,
        (None, Some((a, _))) => a.k(),
        (None, None) => return Err(Error::InvalidInput("no pairs and no --rank".into())),
    };
    let used: Vec<GroupElt> = pairs.iter().flat_map(|(a, b)| [*a, *b]).collect();
    let singles = GroupElt::all(k).into_iter().filter(|g| !g.is_zero() && !used.contains(g)).collect();
    Ok((CoincidencePattern { pairs, singles }, k))
}

fn read_inequalities(path: &str) -> Result<Vec<String>> {
    let v: Value = serde_json::from_str(&read(path)?).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
    let list = match &v {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("inequalities")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("cell file needs an \"inequalities\" list".into()))?,
        _ => return Err(Error::InvalidInput("cell file must be a list or an object".into())),
    };
    list.iter()
        .map(|x| x.as_str().map(String::from).ok_or_else(|| Error::InvalidInput("inequalities are strings".into())))
        .collect()
}

fn execute(cmd: &Command) -> Result<(Value, bool, Vec<String>)> {
    let ok = |v: Value| Ok((v, true, Vec::new()));
    match cmd {
        Command::Classify(ClassifyCmd::Point { rank, branches }) => {
            let cfg = LocalBranchConfig::parse(*rank, branches)?;
            if cfg.branches.iter().any(|b| b.label.k() != *rank) {
                return Err(Error::InvalidInput(format!("labels must have length {rank}")));
            }
            ok(record_payload(classify_smooth(&cfg)?))
        }
        Command::Classify(ClassifyCmd::Ncpoint { rank, ramified, side1, side2 }) => {
            let side1 = parse_branches(side1)?;
            let side2 = parse_branches(side2)?;
            let g0 = ramified.as_deref().map(str::parse::<GroupElt>).transpose()?;
            let k = rank
                .or(g0.map(|g| g.k()))
                .or(side1.first().or(side2.first()).map(|b| b.label.k()))
                .ok_or_else(|| Error::InvalidInput("nothing to classify; pass --rank".into()))?;
            let cfg = NCLocalConfig { k, double_curve_label: g0, side1, side2 };
            ok(record_payload(classify_nc(&cfg)?))
        }
        Command::Cover(CoverCmd::Invariants(a)) => {
            let bd = match (&a.preset, &a.file) {
                (Some(p), _) => preset(p)?,
                (None, Some(f)) => BuildingData::from_json(&read(f)?)?,
                (None, None) => return Err(Error::InvalidInput("pass --preset or --file".into())),
            };
            let inv = cover_invariants(&bd)?;
            ok(json!({ "k2": inv.kx_squared, "chi": inv.chi_structure_sheaf, "degree": inv.degree }))
        }
        Command::Cover(CoverCmd::Components { pairs, rank }) => {
            let (p, k) = parse_pairs(pairs, *rank)?;
            let n = component_count(&p, k)?;
            ok(json!({
                "components": n,
                "effectiveLabels": p.effective_labels().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::Polytope(PolytopeCmd::Enumerate) => {
            let orbits = maximal_cell_orbits()?;
            let rows: Vec<Value> = orbits
                .iter()
                .map(|o| {
                    let id = o.representative.orbit_rep_id.clone();
                    let meta = id.as_deref().and_then(|i| cell_metadata(i).ok());
                    json!({
                        "id": id,
                        "size": o.members.len(),
                        "inequalities": o.representative.pretty(),
                        "componentType": meta.as_ref().map(|m| m.component_type.tag()),
                        "degree": meta.as_ref().map(|m| m.degree),
                    })
                })
                .collect();
            ok(json!({ "orbitCount": orbits.len(), "orbits": rows }))
        }
        Command::Polytope(PolytopeCmd::Tilings) => {
            let tilings = burniat_tilings()?;
            let mut all_ok = true;
            let mut out = Vec::new();
            for t in tilings {
                let report = verify_tiling(t);
                let (sum, six) = tiling_invariant(t)?;
                all_ok &= report.ok && six;
                let mut ids: Vec<String> = t.cells.iter().filter_map(|c| c.orbit_rep_id.clone()).collect();
                ids.sort();
                out.push(json!({ "cells": ids, "degreeSum": sum, "verified": report.ok }));
            }
            let census = surface_census(tilings)?;
            let payload = json!({
                "count": tilings.len(),
                "tilings": out,
                "census": {
                    "byComponentType": census.by_component_type.iter().map(|k| k.iter().map(|s| s.tag()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "byCellType": census.by_cell_type,
                },
            });
            let diags = if all_ok { Vec::new() } else { vec!["a tiling failed verification or the degree sum".into()] };
            Ok((payload, all_ok, diags))
        }
        Command::Polytope(PolytopeCmd::Dim { cell }) => {
            let hs = read_inequalities(cell)?.iter().map(|s| parse_inequality(s)).collect::<Result<Vec<_>>>()?;
            ok(json!({ "dimension": delta_bur().with(hs).dimension() }))
        }
        Command::Arrangement(ArrangementCmd::Scan { file }) => {
            let arr = LineArrangement::from_json(&read(file)?)?;
            match arr.kind {
                ArrangementKind::Burniat => {
                    let s = arrangement_lc_scan(&arr)?;
                    let row = if s.lc { None } else { row_of_label(&s.label)? };
                    ok(json!({
                        "lc": s.lc,
                        "label": s.label.pretty(),
                        "row": row,
                        "components": to_value(&s.components),
                        "points": to_value(&s.points),
                    }))
                }
                ArrangementKind::Campedelli => ok(to_value(&scan_campedelli(&arr)?)),
            }
        }
        Command::Boundary { which: Family::Campedelli } => ok(json!({
            "divisorOrbits": to_value(&campedelli_divisor_orbits()),
            "singleComponent": to_value(&campedelli_single_component_argument()?),
        })),
        Command::Boundary { which: Family::Burniat } => {
            let mut items = Vec::new();
            for item in burniat_boundary_catalog()? {
                let check = check_item(&item)?;
                items.push(json!({
                    "index": item.index,
                    "description": item.description,
                    "lc": item.lc,
                    "orbitId": item.orbit_id,
                    "cases": item.cases,
                    "scan": to_value(&check),
                }));
            }
            ok(json!({ "items": items }))
        }
        Command::Verify(VerifyCmd::All) => {
            let results = acceptance::run_all();
            let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.line()).collect();
            Ok((to_value(&results), failed.is_empty(), failed))
        }
    }
}

fn command_name(cmd: &Command) -> String {
    let s = match cmd {
        Command::Classify(ClassifyCmd::Point { .. }) => "classify point",
        Command::Classify(ClassifyCmd::Ncpoint { .. }) => "classify ncpoint",
        Command::Cover(CoverCmd::Invariants(_)) => "cover invariants",
        Command::Cover(CoverCmd::Components { .. }) => "cover components",
        Command::Polytope(PolytopeCmd::Enumerate) => "polytope enumerate",
        Command::Polytope(PolytopeCmd::Tilings) => "polytope tilings",
        Command::Polytope(PolytopeCmd::Dim { .. }) => "polytope dim",
        Command::Arrangement(ArrangementCmd::Scan { .. }) => "arrangement scan",
        Command::Boundary { which: Family::Campedelli } => "boundary campedelli",
        Command::Boundary { which: Family::Burniat } => "boundary burniat",
        Command::Verify(VerifyCmd::All) => "verify all",
    };
    s.to_string()
}

/// Parses `argv` (program name first) and runs it. Returns the exit code
/// and the text for standard output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    if let Some(n) = cli.threads {
        // A pool set up earlier in the process stays; results do not depend
        // on its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let command = command_name(&cli.command);
    let (code, report) = match execute(&cli.command) {
        Ok((payload, true, diagnostics)) => (0, CommandReport { command, diagnostics, payload, status: "ok" }),
        Ok((payload, false, diagnostics)) => (1, CommandReport { command, diagnostics, payload, status: "error" }),
        Err(e) => (1, CommandReport { command, diagnostics: vec![e.to_string()], payload: Value::Null, status: "error" }),
    };
    (code, report.to_json())
}
