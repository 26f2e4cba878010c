//! Marked-graph input files.
//!
//! Format: a `sites N` header, then one `u v weight` line per directed
//! edge, then a single `marks id id ...` line listing marked sites.
//! `#` lines are comments.

use crate::error::{CliError, ErrorKind};
use frogsim::analysis::reach::MarkedGraph;

pub fn parse_marked_graph(text: &str) -> Result<MarkedGraph, CliError> {
    let mut graph: Option<MarkedGraph> = None;
    let mut saw_marks = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let head = fields.next().unwrap();
        if head == "sites" {
            if graph.is_some() {
                return Err(CliError::new(
                    ErrorKind::Config,
                    format!("line {}: duplicate `sites` header", lineno + 1),
                ));
            }
            let n: usize = fields.next().and_then(|s| s.parse().ok()).ok_or_else(|| {
                CliError::new(
                    ErrorKind::Config,
                    format!("line {}: `sites N` expected", lineno + 1),
                )
            })?;
            graph = Some(MarkedGraph::new(n));
            continue;
        }
        let graph_ref = graph.as_mut().ok_or_else(|| {
            CliError::new(
                ErrorKind::Config,
                format!("line {}: `sites N` header must come first", lineno + 1),
            )
        })?;
        if head == "marks" {
            if saw_marks {
                return Err(CliError::new(
                    ErrorKind::Config,
                    format!("line {}: duplicate `marks` line", lineno + 1),
                ));
            }
            saw_marks = true;
            for field in fields {
                let id: u32 = field.parse().map_err(|_| {
                    CliError::new(
                        ErrorKind::Config,
                        format!("line {}: bad mark id `{field}`", lineno + 1),
                    )
                })?;
                if id as usize >= graph_ref.len() {
                    return Err(CliError::new(
                        ErrorKind::Config,
                        format!("line {}: mark id {id} out of range", lineno + 1),
                    ));
                }
                graph_ref.set_mark(id, true);
            }
            continue;
        }
        // Edge line: u v weight.
        let mut parse_edge = || -> Option<(u32, u32, f64)> {
            let u: u32 = head.parse().ok()?;
            let v: u32 = fields.next()?.parse().ok()?;
            let w: f64 = fields.next()?.parse().ok()?;
            Some((u, v, w))
        };
        let (u, v, w) = parse_edge().ok_or_else(|| {
            CliError::new(
                ErrorKind::Config,
                format!("line {}: expected `u v weight`", lineno + 1),
            )
        })?;
        graph_ref.set_weight(u, v, w)?;
    }
    let graph =
        graph.ok_or_else(|| CliError::new(ErrorKind::Config, "missing `sites N` header"))?;
    if !saw_marks {
        return Err(CliError::new(ErrorKind::Config, "missing `marks` line"));
    }
    Ok(graph)
}
