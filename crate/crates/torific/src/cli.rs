//! Command-line front end.
//!
//! Subcommands:
//! - `semigroup`    characteristic exponents and semigroup data per branch
//! - `puiseux`      Puiseux parametrizations per branch
//! - `ew-tree`      Eggers-Wall tree of the input branches (DOT + JSON)
//! - `tropicalize`  the tropical fan of the input branches and its minimal
//!                  regularization (JSON)
//! - `resolve`      full pipeline: generating sequence, certificate,
//!                  re-embedding ideal, distinguished divisors, dual graph
//! - `verify`       chart-by-chart resolution verification
//! - `space-resolve` space-curve mode on arc input
//!
//! Outputs are deterministic: identical inputs give byte-identical JSON and
//! DOT artifacts. Errors exit with status 1 (module errors, as a structured
//! envelope) or 2 (input schema violations).

use std::io::Read;

use clap::{Args, Parser, Subcommand};

use crate::branch::{BranchData, Intersection};
use crate::contact::{certify_sequence, maximal_contact_sequence, ContactAnalysis};
use crate::eggers::{dual_graph, EwTree};
use crate::lattice::{ivec, ChartBasis};
use crate::rat::{rat_str, Rat};
use crate::resolution::chart::report_to_json;
use crate::resolution::space::space_report_to_json;
use crate::resolution::{
    build_embedding_ideal, chart_check_plane, initial_form_certificate, space_curve_resolve,
    EmbeddingIdeal, SpaceCurveInput,
};
use crate::tropical::{build_trop_fan, regularize_trop_fan};
use crate::{input, Error, Result};

const TRUNCATION_CAP: i64 = 1 << 12;

#[derive(Parser)]
#[command(name = "torific", about = "Toric resolution of curve singularities", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Input file (JSON); `-` or absent reads stdin.
    #[arg(long)]
    input: Option<String>,
    /// Initial series truncation (doubled on demand, capped at 4096).
    /// Defaults to the TORIFIC_TRUNCATION environment variable.
    #[arg(long)]
    truncation: Option<i64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<String>,
    /// Write DOT output here (commands with graph output).
    #[arg(long)]
    dot: Option<String>,
    /// Genericity search range for perturbation coefficients.
    #[arg(long, default_value_t = 8)]
    seed_coefficients: i64,
    /// Worker threads for chart verification.
    #[arg(long)]
    parallel: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic exponents and semigroups of the branches.
    Semigroup(CommonArgs),
    /// Puiseux parametrizations of the branches.
    Puiseux(CommonArgs),
    /// Eggers-Wall tree of the input branches.
    EwTree(CommonArgs),
    /// Local tropicalization fan and its minimal regularization.
    Tropicalize(CommonArgs),
    /// Maximal contact sequence, certificate, ideal, divisors, dual graph.
    Resolve(CommonArgs),
    /// Chart-by-chart resolution verification.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Chart basis as `v0;v1;...`, each `vi` comma-separated integers.
        #[arg(long)]
        chart: Option<String>,
    },
    /// Space-curve resolution on arc input.
    SpaceResolve {
        #[command(flatten)]
        common: CommonArgs,
        /// Apply the order-vector separation repair.
        #[arg(long)]
        separate: bool,
    },
}

/// Entry point used by the binary; returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Semigroup(c) => cmd_semigroup(c),
        Command::Puiseux(c) => cmd_puiseux(c),
        Command::EwTree(c) => cmd_ew_tree(c),
        Command::Tropicalize(c) => cmd_tropicalize(c),
        Command::Resolve(c) => cmd_resolve(c),
        Command::Verify { common, chart } => cmd_verify(common, chart.as_deref()),
        Command::SpaceResolve { common, separate } => cmd_space(common, *separate),
    };
    match outcome {
        Ok(()) => 0,
        Err(err) => {
            let envelope = serde_json::json!({
                "code": err.code(),
                "module": err.module(),
                "message": err.to_string(),
                "context": serde_json::Value::Null,
            });
            eprintln!("{}", serde_json::to_string_pretty(&envelope).unwrap());
            if matches!(err, Error::InvalidInput(_)) {
                2
            } else {
                1
            }
        }
    }
}

fn read_input(common: &CommonArgs) -> Result<String> {
    match common.input.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::InvalidInput(format!("stdin: {}", e)))?;
            Ok(buf)
        }
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {}", path, e))),
    }
}

fn initial_truncation(common: &CommonArgs) -> i64 {
    common
        .truncation
        .or_else(|| std::env::var("TORIFIC_TRUNCATION").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(64)
        .clamp(8, TRUNCATION_CAP)
}

/// Retry a truncation-sensitive computation with doubled precision.
fn with_retry<T>(t0: i64, f: impl Fn(i64) -> Result<T>) -> Result<T> {
    let mut t = t0;
    loop {
        match f(t) {
            Err(Error::TruncationInsufficient(..)) if t < TRUNCATION_CAP => {
                t = (2 * t).min(TRUNCATION_CAP);
            }
            other => return other,
        }
    }
}

fn emit(common: &CommonArgs, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).unwrap();
    match &common.json {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::InvalidInput(format!("writing {}: {}", path, e))),
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

fn emit_dot(common: &CommonArgs, dot: &str) -> Result<()> {
    if let Some(path) = &common.dot {
        std::fs::write(path, dot)
            .map_err(|e| Error::InvalidInput(format!("writing {}: {}", path, e)))?;
    }
    Ok(())
}

fn load_branches(common: &CommonArgs) -> Result<Vec<BranchData>> {
    Ok(load_curve(common)?.0)
}

fn load_curve(common: &CommonArgs) -> Result<(Vec<BranchData>, Option<Vec<BranchData>>)> {
    let text = read_input(common)?;
    let spec = input::CurveSpec::parse(&text)?;
    let branches = with_retry(initial_truncation(common), |t| spec.branches(t))?;
    let seq = with_retry(initial_truncation(common), |t| spec.sequence_branches(t))?;
    Ok((branches, seq))
}

// ---------------------------------------------------------------------------
// subcommands

fn cmd_semigroup(common: &CommonArgs) -> Result<()> {
    let branches = load_branches(common)?;
    let items: Vec<serde_json::Value> = branches
        .iter()
        .map(|b| {
            let sg = b.semigroup();
            serde_json::json!({
                "name": b.name,
                "char_exponents": b.char_exponents(),
                "semigroup": sg.generators(),
                "gcd_chain": sg.gcd_chain(),
                "quotients": sg.quotients(),
                "conductor": sg.conductor(),
            })
        })
        .collect();
    emit(common, &serde_json::json!({ "branches": items }))
}

fn cmd_puiseux(common: &CommonArgs) -> Result<()> {
    let branches = load_branches(common)?;
    let items: Vec<serde_json::Value> = branches
        .iter()
        .map(|b| {
            let param = b.param();
            serde_json::json!({
                "name": b.name,
                "ramification": param.map(|p| p.ramification()),
                "terms": param.map(|p| {
                    p.zeta()
                        .terms()
                        .map(|(e, c)| serde_json::json!([e, rat_str(c)]))
                        .collect::<Vec<_>>()
                }),
                "truncation": param.and_then(|p| p.zeta().trunc().bound()),
            })
        })
        .collect();
    emit(common, &serde_json::json!({ "branches": items }))
}

fn cmd_ew_tree(common: &CommonArgs) -> Result<()> {
    let branches = load_branches(common)?;
    let tree = EwTree::build(&branches, &[])?;
    emit_dot(common, &crate::dot::tree_to_dot(&tree))?;
    emit(common, &tree_to_json(&tree))
}

fn tree_to_json(tree: &EwTree) -> serde_json::Value {
    let nodes: Vec<serde_json::Value> = tree
        .node_ids()
        .map(|id| {
            let n = tree.node(id);
            serde_json::json!({
                "id": id,
                "parent": n.parent,
                "kind": match n.kind {
                    crate::eggers::NodeKind::Root => "root".to_string(),
                    crate::eggers::NodeKind::Leaf(b) => tree.branches()[b].name.clone(),
                    crate::eggers::NodeKind::Interior => "interior".to_string(),
                },
                "exponent": format!("{}", tree.exponent(id)),
                "index": tree.index(id),
                "contact": format!("{}", tree.contact(id)),
                "marked": n.marked,
            })
        })
        .collect();
    serde_json::json!({ "nodes": nodes })
}

fn cmd_tropicalize(common: &CommonArgs) -> Result<()> {
    let branches = load_branches(common)?;
    let mut tree = EwTree::build(&branches, &[])?;
    let fan = build_trop_fan(&tree)?;
    let reg = regularize_trop_fan(&mut tree)?;
    emit(
        common,
        &serde_json::json!({
            "fan": fan.to_json(&tree),
            "regularized": reg.to_json(&tree),
        }),
    )
}

/// Shared resolve pipeline: contact sequence, divisor values, ideals.
struct Pipeline {
    curve: Vec<BranchData>,
    analysis: ContactAnalysis,
    /// Per curve branch: predicted order vector (divisorial values).
    order_vectors: Vec<Vec<i64>>,
    /// Per distinct attaching divisor: its value vector, generators of the
    /// re-embedding ideal, and the adapted ideal when the sequence admits
    /// the initial-form machinery at that divisor.
    ideals: Vec<(Vec<i64>, Vec<crate::mpoly::MPoly>, Option<EmbeddingIdeal>)>,
}

fn run_pipeline(
    curve: Vec<BranchData>,
    user_seq: Option<Vec<BranchData>>,
) -> Result<Pipeline> {
    let analysis = match user_seq {
        Some(sequence) => {
            let certificate = certify_sequence(&curve, &sequence)?;
            ContactAnalysis { sequence, certificate, slots: Vec::new() }
        }
        None => maximal_contact_sequence(&curve)?,
    };
    if !analysis.certificate.passes() {
        return Err(Error::GenericityExhausted(8));
    }
    let mut order_vectors = Vec::new();
    for j in 0..curve.len() {
        order_vectors.push(crate::contact::predicted_order_vector(
            &curve,
            &analysis.sequence,
            j,
        )?);
    }
    let simple = crate::resolution::simple_embedding_ideal(&analysis.sequence)?;
    let mut ideals: Vec<(Vec<i64>, Vec<crate::mpoly::MPoly>, Option<EmbeddingIdeal>)> =
        Vec::new();
    for values in &order_vectors {
        if ideals.iter().any(|(v, _, _)| v == values) {
            continue;
        }
        let adapted = prefix_for_divisor(&curve, &analysis.sequence, values)
            .and_then(|(perm, g)| {
                let seq: Vec<BranchData> =
                    perm.iter().map(|&i| analysis.sequence[i].clone()).collect();
                let vals: Vec<i64> = perm.iter().map(|&i| values[i]).collect();
                build_embedding_ideal(&seq, g, &vals)
            })
            .ok();
        let generators = match &adapted {
            Some(ideal) => ideal.generators.clone(),
            None => simple.clone(),
        };
        ideals.push((values.clone(), generators, adapted));
    }
    Ok(Pipeline { curve, analysis, order_vectors, ideals })
}

/// Relabel the sequence so its prefix is a minimal generating sequence of
/// the divisor with the given value vector: order the curves by their
/// contact with the divisor's branch, taking one witness per contact level.
fn prefix_for_divisor(
    curve: &[BranchData],
    seq: &[BranchData],
    values: &[i64],
) -> Result<(Vec<usize>, usize)> {
    // the branch this divisor belongs to: the one whose predicted vector is
    // `values`
    let j = (0..curve.len())
        .find(|&j| {
            crate::contact::predicted_order_vector(curve, seq, j)
                .map(|v| v == values)
                .unwrap_or(false)
        })
        .ok_or(Error::PrefixNotGeneratingSequence)?;
    let cj = &curve[j];
    let mut kappas: Vec<(usize, Rat)> = Vec::new();
    for (i, li) in seq.iter().enumerate().skip(1) {
        match crate::branch::contact_exponent(li, cj)? {
            crate::branch::Contact::Exponent(k) => kappas.push((i, k)),
            crate::branch::Contact::FullAgreement => {
                return Err(Error::PrefixNotGeneratingSequence)
            }
        }
    }
    kappas.sort_by(|a, b| a.1.cmp(&b.1).then(values[a.0].cmp(&values[b.0])));
    let mut perm = vec![0usize];
    let mut last: Option<&Rat> = None;
    for (i, k) in &kappas {
        if last == Some(k) {
            continue;
        }
        perm.push(*i);
        last = Some(k);
    }
    let g = perm.len() - 1;
    // the remaining curves keep their order
    for i in 1..seq.len() {
        if !perm.contains(&i) {
            perm.push(i);
        }
    }
    Ok((perm, g))
}

fn analysis_to_json(p: &Pipeline) -> serde_json::Value {
    let names0: Vec<String> = vec!["X0".into(), "X1".into()];
    let seq: Vec<serde_json::Value> = p
        .analysis
        .sequence
        .iter()
        .map(|b| {
            let _ = &names0;
            serde_json::json!({
                "name": b.name,
                "equation": b
                    .equation_or_compute()
                    .map(|e| format!("{}", e.display(&["X".into(), "Y".into()])))
                    .unwrap_or_else(|_| "?".into()),
            })
        })
        .collect();
    let cert: Vec<serde_json::Value> = p
        .analysis
        .certificate
        .entries
        .iter()
        .map(|e| {
            serde_json::json!({
                "li": e.li, "cj": e.cj,
                "predicted": e.predicted,
                "actual": e.actual,
                "pass": e.pass,
            })
        })
        .collect();
    let slots: Vec<serde_json::Value> = p
        .analysis
        .slots
        .iter()
        .map(|s| {
            serde_json::json!({
                "description": s.description,
                "chosen": s.chosen.as_ref().map(rat_str),
                "excluded": s
                    .excluded
                    .iter()
                    .map(|(a, why)| serde_json::json!([rat_str(a), why]))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let ideals: Vec<serde_json::Value> = p
        .ideals
        .iter()
        .map(|(values, generators, adapted)| {
            let names: Vec<String> =
                (0..values.len()).map(|i| format!("X{}", i)).collect();
            serde_json::json!({
                "values": values,
                "adapted": adapted.is_some(),
                "generators": generators
                    .iter()
                    .map(|h| {
                        let flat = h.flatten_exact().unwrap_or_else(|_| h.clone());
                        format!("{}", flat.display(&names))
                    })
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({
        "sequence": seq,
        "certificate": cert,
        "slots": slots,
        "order_vectors": p.order_vectors,
        "ideals": ideals,
    })
}

fn cmd_resolve(common: &CommonArgs) -> Result<()> {
    let (branches, user_seq) = load_curve(common)?;
    let p = run_pipeline(branches, user_seq)?;
    // tree of the sequence with the curve attached, divisors, dual graph
    let d: Vec<BranchData> = p.analysis.sequence[1..].to_vec();
    let mut tree = EwTree::build(&d, &p.curve)?;
    let graph = dual_graph(&mut tree)?;
    emit_dot(common, &crate::dot::dual_graph_to_dot(&graph, &tree))?;
    let divisors: Vec<serde_json::Value> = tree
        .divisors()?
        .into_iter()
        .map(|(id, r)| {
            serde_json::json!({
                "exponent": format!("{}", tree.exponent(id)),
                "index": tree.index(id),
                "n": r.n, "m": r.m, "i_plus": r.i_plus,
            })
        })
        .collect();
    let mut value = analysis_to_json(&p);
    value["divisors"] = serde_json::Value::Array(divisors);
    value["dual_graph"] = serde_json::json!({
        "labels": graph.labels,
        "edges": graph.edges,
        "exceptional_ends": graph.exceptional_ends(),
    });
    emit(common, &value)
}

fn parse_chart(s: &str, rank: usize) -> Result<ChartBasis> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|v| v.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<i64>, _>>()
        })
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidInput(format!("chart: {}", e)))?;
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(Error::InvalidInput(format!(
            "chart must be {rank} vectors of length {rank}"
        )));
    }
    ChartBasis::new(rows.iter().map(|r| ivec(r)).collect())
}

fn cmd_verify(common: &CommonArgs, chart: Option<&str>) -> Result<()> {
    let (branches, user_seq) = load_curve(common)?;
    let p = run_pipeline(branches, user_seq)?;
    let m1 = p.analysis.sequence.len();
    // charts: provided, or completed from each branch order vector
    let mut charts: Vec<ChartBasis> = Vec::new();
    match chart {
        Some(s) => charts.push(parse_chart(s, m1)?),
        None => {
            let mut seen = Vec::new();
            for values in &p.order_vectors {
                let ray = crate::lattice::primitive(
                    &values.iter().map(|v| crate::rat::Int::from(*v)).collect::<Vec<_>>(),
                )?;
                if seen.contains(&ray) {
                    continue;
                }
                seen.push(ray.clone());
                charts.push(ChartBasis::from_prefix(&[ray], m1)?);
            }
        }
    }
    let jobs: Vec<(usize, &ChartBasis)> = charts.iter().enumerate().collect();
    let run_one = |(k, basis): &(usize, &ChartBasis)| -> Result<(usize, serde_json::Value)> {
        // the ideal whose values match this chart's ray
        let (values, generators, adapted) = p
            .ideals
            .iter()
            .find(|(values, _, _)| {
                let ray = crate::lattice::primitive(
                    &values.iter().map(|v| crate::rat::Int::from(*v)).collect::<Vec<_>>(),
                )
                .unwrap();
                basis.vectors().contains(&ray)
            })
            .ok_or(Error::OrderVectorMismatch)?;
        let report = chart_check_plane(&p.analysis.sequence, &p.curve, generators, basis)?;
        let init = match adapted {
            Some(ideal) => {
                let w: Vec<Rat> = values
                    .iter()
                    .map(|v| Rat::new((*v).into(), values[0].into()))
                    .collect();
                Some(initial_form_certificate(ideal, &w)?)
            }
            None => None,
        };
        Ok((
            *k,
            serde_json::json!({
                "chart": report_to_json(&report),
                "initial_forms": init.as_ref().map(|c| c.lines.clone()),
                "nondegenerate": init.as_ref().map(|c| c.nondegenerate),
            }),
        ))
    };
    let mut reports: Vec<(usize, serde_json::Value)> = match common.parallel {
        Some(n) if n > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidInput(format!("thread pool: {}", e)))?;
            pool.install(|| {
                use rayon::prelude::*;
                jobs.par_iter().map(run_one).collect::<Result<Vec<_>>>()
            })?
        }
        _ => jobs.iter().map(run_one).collect::<Result<Vec<_>>>()?,
    };
    reports.sort_by_key(|(k, _)| *k);
    let values: Vec<serde_json::Value> = reports.into_iter().map(|(_, v)| v).collect();
    emit(common, &serde_json::json!({ "charts": values }))
}

fn cmd_space(common: &CommonArgs, separate: bool) -> Result<()> {
    let text = read_input(common)?;
    let spec = input::ArcSpec::parse(&text)?;
    let arcs = spec.series()?;
    let inp = SpaceCurveInput::new(arcs)?;
    let report = space_curve_resolve(&inp, separate)?;
    emit(common, &space_report_to_json(&report))
}


/// Intersection numbers table of a sequence against a curve, used by the
/// human-readable reports.
pub fn intersection_table(
    seq: &[BranchData],
    curve: &[BranchData],
) -> Result<Vec<(String, String, Option<i64>)>> {
    let mut out = Vec::new();
    for li in seq {
        for cj in curve {
            let v = match crate::branch::intersection_multiplicity(li, cj)? {
                Intersection::Finite(v) => Some(v),
                Intersection::Infinite => None,
            };
            out.push((li.name.clone(), cj.name.clone(), v));
        }
    }
    Ok(out)
}
