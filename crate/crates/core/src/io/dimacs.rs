//! DIMACS max-flow input: `c` comments, one `p max N M` line, `n X s` and
//! `n X t` node lines, and `M` arc lines `a U V CAP`. Vertices are `1..=N`.
//! The return arc `(t, s)` is appended as the last ground element.

use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Rational};
use crate::solver::{incidence_matrix, Digraph, FlowNetwork, Instance};
use crate::space::{RegularSpace, SpaceMode};

pub fn parse_dimacs_digraph(text: &str, mode: SpaceMode) -> Result<(Instance, FlowNetwork)> {
    let mut problem: Option<(usize, usize)> = None;
    let mut source: Option<usize> = None;
    let mut sink: Option<usize> = None;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut caps: Vec<Rational> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let Some(&kind) = tokens.first() else {
            continue;
        };
        match kind {
            "c" => {}
            "p" => {
                if problem.is_some() {
                    return Err(Error::parse(line_no, "duplicate problem line"));
                }
                let ["p", "max", nodes, arc_count] = tokens[..] else {
                    return Err(Error::parse(line_no, "expected `p max N M`"));
                };
                let nodes = nodes
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad node count {nodes:?}")))?;
                let arc_count = arc_count
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad arc count {arc_count:?}")))?;
                problem = Some((nodes, arc_count));
            }
            "n" => {
                let (nodes, _) = problem
                    .ok_or_else(|| Error::parse(line_no, "node line before problem line"))?;
                let ["n", id, role] = tokens[..] else {
                    return Err(Error::parse(line_no, "expected `n ID s|t`"));
                };
                let vertex = vertex_index(id, nodes, line_no)?;
                let slot = match role {
                    "s" => &mut source,
                    "t" => &mut sink,
                    _ => {
                        return Err(Error::parse(
                            line_no,
                            format!("node role {role:?} is not s or t"),
                        ))
                    }
                };
                if slot.is_some() {
                    return Err(Error::parse(line_no, format!("duplicate {role} line")));
                }
                *slot = Some(vertex);
            }
            "a" => {
                let (nodes, _) =
                    problem.ok_or_else(|| Error::parse(line_no, "arc line before problem line"))?;
                let ["a", u, v, cap] = tokens[..] else {
                    return Err(Error::parse(line_no, "expected `a U V CAP`"));
                };
                let u = vertex_index(u, nodes, line_no)?;
                let v = vertex_index(v, nodes, line_no)?;
                if u == v {
                    return Err(Error::parse(line_no, "self-loop"));
                }
                let cap = parse_rational(cap)
                    .ok_or_else(|| Error::parse(line_no, format!("bad capacity {cap:?}")))?;
                if cap.is_negative() {
                    return Err(Error::parse(line_no, "negative capacity"));
                }
                arcs.push((u, v));
                caps.push(cap);
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown line type {other:?}"),
                ))
            }
        }
    }

    let end = last_line.max(1);
    let (nodes, arc_count) = problem.ok_or_else(|| Error::parse(end, "missing problem line"))?;
    let source = source.ok_or_else(|| Error::parse(end, "missing source line"))?;
    let sink = sink.ok_or_else(|| Error::parse(end, "missing sink line"))?;
    if source == sink {
        return Err(Error::parse(end, "source and sink coincide"));
    }
    if arcs.len() != arc_count {
        return Err(Error::parse(
            end,
            format!("found {} arcs, declared {arc_count}", arcs.len()),
        ));
    }
    let graph = Digraph::numbered(nodes, arcs)?;
    let network = FlowNetwork::with_return_arc(graph, source, sink)?;
    let matrix = incidence_matrix(network.graph())?;
    let space = Arc::new(RegularSpace::build(matrix, mode));
    let instance = Instance::new(space, network.return_arc(), caps)?;
    Ok((instance, network))
}

fn vertex_index(token: &str, nodes: usize, line: usize) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(v) if (1..=nodes).contains(&v) => Ok(v - 1),
        _ => Err(Error::parse(
            line,
            format!("vertex {token:?} is not in 1..={nodes}"),
        )),
    }
}

/// Serializes a network and capacities back to DIMACS, omitting the return
/// arc.
pub fn serialize_dimacs(inst: &Instance, net: &FlowNetwork) -> String {
    use std::fmt::Write as _;
    let graph = net.graph();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p max {} {}",
        graph.vertex_count(),
        graph.arc_count() - 1
    );
    let _ = writeln!(out, "n {} s", net.source() + 1);
    let _ = writeln!(out, "n {} t", net.sink() + 1);
    for (j, &(u, v)) in graph.arcs().iter().enumerate() {
        if j == net.return_arc() {
            continue;
        }
        let cap = inst.capacity(j).expect("only r is uncapacitated");
        let _ = writeln!(
            out,
            "a {} {} {}",
            u + 1,
            v + 1,
            crate::linalg::format_rational(cap)
        );
    }
    out
}
