use std::io::{self, Write};
use std::process::ExitCode;

use rayon::prelude::*;
use ribbon_genus::genus::{
    group_genus_upper_with, hierarchy_check_with, link_genus, min_genus_over_shuffles_with, GenusReport,
    GroupGenusWitness, LinkGenus, ShuffleSearch,
};
use ribbon_genus::presentation::{Degree3Layout, ExponentRule, Presentation};
use ribbon_genus::ribbon::{Convention, RibbonGraph, SurfaceSummary};
use serde::Serialize;

use crate::{json_line, CliError, Ctx, ExpRule, Format, Layout, NormalizeKind, SCHEMA};

/// One result line, as JSON and as a CSV record.
pub trait Row: Serialize {
    fn header() -> Vec<&'static str>;
    fn record(&self) -> Vec<String>;
    /// False when the row holds bounds rather than exact values.
    fn exact(&self) -> bool {
        true
    }
}

fn json_text<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

#[derive(Serialize)]
pub struct GenusRow {
    presentation: Presentation,
    convention: Convention,
    #[serde(flatten)]
    summary: SurfaceSummary,
}

impl Row for GenusRow {
    fn header() -> Vec<&'static str> {
        vec!["genus", "euler", "discs", "ribbons", "faces", "components"]
    }

    fn record(&self) -> Vec<String> {
        let s = &self.summary;
        [s.genus as i64, s.euler, s.discs as i64, s.ribbons as i64, s.faces as i64, s.components as i64]
            .iter()
            .map(i64::to_string)
            .collect()
    }
}

pub fn genus(ctx: &Ctx, p: &Presentation) -> Result<GenusRow, CliError> {
    let summary = RibbonGraph::canonical(p, ctx.convention).summary().map_err(|e| CliError::Compute(e.to_string()))?;
    Ok(GenusRow { presentation: p.clone(), convention: ctx.convention, summary })
}

#[derive(Serialize)]
pub struct ShuffleRow {
    presentation: Presentation,
    convention: Convention,
    #[serde(flatten)]
    search: ShuffleSearch,
}

impl Row for ShuffleRow {
    fn header() -> Vec<&'static str> {
        vec!["genus", "exact", "evaluated", "classes", "shuffle"]
    }

    fn record(&self) -> Vec<String> {
        let s = &self.search;
        vec![
            s.genus.to_string(),
            s.exact.to_string(),
            s.evaluated.to_string(),
            s.classes.to_string(),
            json_text(&s.shuffle),
        ]
    }

    fn exact(&self) -> bool {
        self.search.exact
    }
}

pub fn shuffle_min(ctx: &Ctx, p: &Presentation) -> ShuffleRow {
    let search = min_genus_over_shuffles_with(p, ctx.convention, &ctx.budget);
    ShuffleRow { presentation: p.clone(), convention: ctx.convention, search }
}

#[derive(Serialize)]
pub struct LinkRow {
    presentation: Presentation,
    convention: Convention,
    #[serde(flatten)]
    link: LinkGenus,
}

impl Row for LinkRow {
    fn header() -> Vec<&'static str> {
        vec!["lower", "upper", "exact", "method", "evaluated"]
    }

    fn record(&self) -> Vec<String> {
        let l = &self.link;
        vec![
            l.lower.to_string(),
            l.upper.to_string(),
            l.exact.to_string(),
            json_text(&l.method).trim_matches('"').to_string(),
            l.evaluated.to_string(),
        ]
    }

    fn exact(&self) -> bool {
        self.link.exact
    }
}

pub fn link(ctx: &Ctx, p: &Presentation) -> LinkRow {
    let g = RibbonGraph::canonical(p, ctx.convention).link_graph();
    LinkRow { presentation: p.clone(), convention: ctx.convention, link: link_genus(&g, &ctx.budget) }
}

#[derive(Serialize)]
#[serde(transparent)]
pub struct ReportRow(GenusReport);

impl Row for ReportRow {
    fn header() -> Vec<&'static str> {
        vec![
            "t_genus",
            "shuffle_min",
            "shuffle_exact",
            "link_lower",
            "link_upper",
            "link_exact",
            "upper_bound",
            "chain_checked",
        ]
    }

    fn record(&self) -> Vec<String> {
        let r = &self.0;
        vec![
            r.t_genus.to_string(),
            r.shuffle_min.genus.to_string(),
            r.shuffle_min.exact.to_string(),
            r.link_genus.lower.to_string(),
            r.link_genus.upper.to_string(),
            r.link_genus.exact.to_string(),
            r.upper_bound.map(|b| b.to_string()).unwrap_or_default(),
            r.chain_checked.to_string(),
        ]
    }

    fn exact(&self) -> bool {
        self.0.chain_checked
    }
}

pub fn report(ctx: &Ctx, p: &Presentation) -> Result<ReportRow, CliError> {
    hierarchy_check_with(p, ctx.convention, &ctx.budget)
        .map(ReportRow)
        .map_err(|e| CliError::Compute(e.to_string()))
}

#[derive(Serialize)]
pub struct GroupRow {
    input: Presentation,
    convention: Convention,
    max_depth: usize,
    #[serde(flatten)]
    witness: GroupGenusWitness,
}

impl Row for GroupRow {
    fn header() -> Vec<&'static str> {
        vec!["genus", "witness", "depth", "explored", "complete"]
    }

    fn record(&self) -> Vec<String> {
        let w = &self.witness;
        vec![
            w.genus.to_string(),
            w.presentation.render(),
            w.depth.to_string(),
            w.explored.to_string(),
            w.complete.to_string(),
        ]
    }

    fn exact(&self) -> bool {
        self.witness.complete
    }
}

pub fn group(ctx: &Ctx, p: &Presentation, depth: usize) -> GroupRow {
    let witness = group_genus_upper_with(p, depth, &ctx.budget, ctx.convention);
    GroupRow { input: p.clone(), convention: ctx.convention, max_depth: depth, witness }
}

#[derive(Serialize)]
pub struct NormalizeRow {
    input: Presentation,
    output: Presentation,
    rewrite: &'static str,
    genus_before: usize,
    genus_after: usize,
}

impl Row for NormalizeRow {
    fn header() -> Vec<&'static str> {
        vec!["output", "rewrite", "genus_before", "genus_after"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.output.render(),
            self.rewrite.to_string(),
            self.genus_before.to_string(),
            self.genus_after.to_string(),
        ]
    }
}

pub fn normalize(
    ctx: &Ctx,
    p: &Presentation,
    kind: NormalizeKind,
    rule: ExpRule,
    layout: Layout,
) -> Result<NormalizeRow, CliError> {
    let (output, rewrite) = match kind {
        NormalizeKind::Exp => match rule {
            ExpRule::GenusSafe => (p.reduce_exponents_with(ExponentRule::GenusSafe), "exp-genus-safe"),
            ExpRule::Mod2 => (p.reduce_exponents_with(ExponentRule::Mod2), "exp-mod2"),
        },
        NormalizeKind::Deg3 => {
            let l = match layout {
                Layout::Oriented => Degree3Layout::Oriented,
                Layout::Literal => Degree3Layout::Literal,
            };
            let out = p.degree3_normalize_with(l).map_err(|e| CliError::Input(e.to_string()))?;
            (out, if l == Degree3Layout::Oriented { "deg3-oriented" } else { "deg3-literal" })
        }
        NormalizeKind::Connect => (p.connectify(), "connect"),
    };
    Ok(NormalizeRow {
        genus_before: RibbonGraph::canonical(p, ctx.convention).genus(),
        genus_after: RibbonGraph::canonical(&output, ctx.convention).genus(),
        input: p.clone(),
        output,
        rewrite,
    })
}

#[derive(Serialize)]
pub struct PlumbRow {
    first: Presentation,
    second: Presentation,
    combined: Presentation,
    #[serde(flatten)]
    summary: SurfaceSummary,
    /// Whether the plumbed surface is the surface of the combined
    /// presentation.
    matches_combined: bool,
}

impl Row for PlumbRow {
    fn header() -> Vec<&'static str> {
        vec!["combined", "genus", "euler", "matches_combined"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.combined.render(),
            self.summary.genus.to_string(),
            self.summary.euler.to_string(),
            self.matches_combined.to_string(),
        ]
    }
}

pub fn plumb(ctx: &Ctx, a: &Presentation, b: &Presentation) -> Result<PlumbRow, CliError> {
    let ga = RibbonGraph::canonical(a, ctx.convention);
    let gb = RibbonGraph::canonical(b, ctx.convention);
    let plumbed = ga.plumb(&gb).map_err(|e| CliError::Input(e.to_string()))?;
    let combined = Presentation::new(
        a.generators().to_vec(),
        a.relators().iter().chain(b.relators()).cloned().collect(),
    )
    .map_err(|e| CliError::Input(e.to_string()))?;
    let matches_combined = plumbed.structurally_equal(&RibbonGraph::canonical(&combined, ctx.convention));
    let summary = plumbed.summary().map_err(|e| CliError::Compute(e.to_string()))?;
    Ok(PlumbRow { first: a.clone(), second: b.clone(), combined, summary, matches_combined })
}

/// Evaluate every line on the rayon pool, keeping input order.
pub fn compute<R: Send>(
    lines: &[(usize, String)],
    f: impl Fn(&str) -> Result<R, CliError> + Sync,
) -> Vec<Result<R, CliError>> {
    lines.par_iter().map(|(_, text)| f(text)).collect()
}

#[derive(Serialize)]
struct BatchItem<'a, R: Serialize> {
    line: usize,
    input: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a R>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct Batch<'a, R: Serialize> {
    schema: u32,
    results: Vec<BatchItem<'a, R>>,
}

pub fn emit<R: Row>(
    ctx: &Ctx,
    lines: &[(usize, String)],
    results: &[Result<R, CliError>],
    batch: bool,
) -> Result<ExitCode, CliError> {
    let mut out = io::stdout().lock();
    let io_err = |e: io::Error| CliError::Compute(e.to_string());
    match ctx.format {
        Format::Json if !batch => match &results[0] {
            Ok(row) => writeln!(out, "{}", json_line(row)?).map_err(io_err)?,
            Err(e) => return Err(CliError::Input(e.to_string())),
        },
        Format::Json => {
            let items = lines
                .iter()
                .zip(results)
                .map(|((line, input), r)| BatchItem {
                    line: *line,
                    input,
                    result: r.as_ref().ok(),
                    error: r.as_ref().err().map(ToString::to_string),
                })
                .collect();
            let text = serde_json::to_string(&Batch { schema: SCHEMA, results: items })
                .map_err(|e| CliError::Compute(e.to_string()))?;
            writeln!(out, "{text}").map_err(io_err)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            let csv_err = |e: csv::Error| CliError::Compute(e.to_string());
            let mut header = vec!["line", "input"];
            header.extend(R::header());
            header.push("error");
            w.write_record(&header).map_err(csv_err)?;
            let width = R::header().len();
            for ((line, input), r) in lines.iter().zip(results) {
                let mut rec = vec![line.to_string(), input.clone()];
                match r {
                    Ok(row) => {
                        rec.extend(row.record());
                        rec.push(String::new());
                    }
                    Err(e) => {
                        rec.extend(std::iter::repeat_n(String::new(), width));
                        rec.push(e.to_string().replace('\n', " "));
                    }
                }
                w.write_record(&rec).map_err(csv_err)?;
            }
            w.flush().map_err(io_err)?;
        }
    }
    if results.iter().any(Result::is_err) {
        if !batch {
            if let Some(Err(e)) = results.first() {
                return Err(CliError::Input(e.to_string()));
            }
        }
        return Ok(ExitCode::from(1));
    }
    if ctx.require_exact && results.iter().any(|r| r.as_ref().is_ok_and(|row| !row.exact())) {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}
