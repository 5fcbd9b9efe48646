use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Subcommand;
use ribbon_genus::facepair::{census, pairing_count, CensusRow, TriangulatedSphere};
use serde::Serialize;

use crate::{json_line, CliError, Ctx, Format};

#[derive(Debug, Subcommand)]
pub enum FacepairCommand {
    /// Number of pairings of 2n triangles.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Build and classify every quotient of a sphere, up to the budget.
    Census {
        /// pillow, tetrahedron, bipyramid, octahedron, bipyramid:K, or a
        /// file of vertex triples.
        #[arg(long, default_value = "tetrahedron")]
        sphere: String,
    },
}

fn load_sphere(spec: &str) -> Result<TriangulatedSphere, CliError> {
    let bad = |e: ribbon_genus::facepair::SphereError| CliError::Input(format!("{spec}: {e}"));
    match spec {
        "pillow" => Ok(TriangulatedSphere::pillow()),
        "tetrahedron" => Ok(TriangulatedSphere::tetrahedron()),
        "bipyramid" => TriangulatedSphere::bipyramid(3).map_err(bad),
        "octahedron" => TriangulatedSphere::bipyramid(4).map_err(bad),
        _ => {
            if let Some(k) = spec.strip_prefix("bipyramid:") {
                let k: usize = k.parse().map_err(|_| CliError::Input(format!("bad bipyramid size {k:?}")))?;
                if k < 2 {
                    return Err(CliError::Input("bipyramid size must be at least 2".into()));
                }
                return TriangulatedSphere::bipyramid(k).map_err(bad);
            }
            let text = fs::read_to_string(spec).map_err(|source| CliError::Io { path: spec.into(), source })?;
            TriangulatedSphere::parse(&text).map_err(bad)
        }
    }
}

#[derive(Serialize)]
struct CountOut {
    n: usize,
    #[serde(serialize_with = "as_number")]
    pairings: String,
}

/// Emit the decimal digits as a JSON number of any size.
fn as_number<S: serde::Serializer>(digits: &str, s: S) -> Result<S::Ok, S::Error> {
    let n: serde_json::Number = digits.parse().map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

#[derive(Serialize)]
struct CensusOut<'a> {
    sphere: &'a [[usize; 3]],
    pairing_count: String,
    enumerated: usize,
    manifolds: usize,
    truncated: bool,
    rows: &'a [CensusRow],
}

fn joined<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

pub fn run(ctx: &Ctx, command: &FacepairCommand) -> Result<ExitCode, CliError> {
    let mut out = io::stdout().lock();
    let io_err = |e: io::Error| CliError::Compute(e.to_string());
    match command {
        FacepairCommand::Count { n } => {
            if *n == 0 {
                return Err(CliError::Input("n must be at least 1".into()));
            }
            let count = pairing_count(*n).to_string();
            match ctx.format {
                Format::Json => writeln!(out, "{}", json_line(&CountOut { n: *n, pairings: count })?),
                Format::Csv => writeln!(out, "n,pairings\n{n},{count}"),
            }
            .map_err(io_err)?;
            Ok(ExitCode::SUCCESS)
        }
        FacepairCommand::Census { sphere } => {
            let s = load_sphere(sphere)?;
            let c = census(&s, &ctx.budget).map_err(|e| CliError::Compute(e.to_string()))?;
            match ctx.format {
                Format::Json => {
                    let body = CensusOut {
                        sphere: s.triangles(),
                        pairing_count: c.pairing_count.to_string(),
                        enumerated: c.rows.len(),
                        manifolds: c.manifold_count(),
                        truncated: c.truncated,
                        rows: &c.rows,
                    };
                    writeln!(out, "{}", json_line(&body)?).map_err(io_err)?;
                }
                Format::Csv => {
                    let csv_err = |e: csv::Error| CliError::Compute(e.to_string());
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record([
                        "id",
                        "pairs",
                        "codes",
                        "vertices",
                        "edges",
                        "faces",
                        "tetrahedra",
                        "euler",
                        "link_genera",
                        "links_connected",
                        "self_reversed_edges",
                        "singular_vertices",
                        "is_manifold",
                    ])
                    .map_err(csv_err)?;
                    for r in &c.rows {
                        let pairs: Vec<String> = r.pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                        w.write_record([
                            r.id.to_string(),
                            pairs.join(";"),
                            r.codes.clone(),
                            r.counts.vertices.to_string(),
                            r.counts.edges.to_string(),
                            r.counts.faces.to_string(),
                            r.counts.tetrahedra.to_string(),
                            r.euler.to_string(),
                            joined(&r.link_genera),
                            r.links_connected.to_string(),
                            r.self_reversed_edges.to_string(),
                            joined(&r.singular_vertices),
                            r.is_manifold.to_string(),
                        ])
                        .map_err(csv_err)?;
                    }
                    w.flush().map_err(io_err)?;
                }
            }
            if ctx.require_exact && c.truncated {
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
