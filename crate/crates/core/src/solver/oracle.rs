use std::collections::VecDeque;
use std::sync::Arc;

use num_traits::Signed;

use super::graph::FlowNetwork;
use super::{is_augmenting, FlowState, Instance};
use crate::error::{Error, Result};
use crate::paths::RPath;
use crate::space::{Sign, SignedVector, SpaceMode};

/// Largest vertex count the cographic bipartition scan accepts.
const COGRAPHIC_VERTEX_LIMIT: usize = 22;

/// How shortest augmenting paths are found.
#[derive(Debug, Clone)]
pub enum OracleKind {
    /// Filter the cached circuit list of the space. Works for any regular
    /// space at desk scale.
    Generic,
    /// Breadth-first search in the residual graph of a flow instance.
    Graphic(Arc<FlowNetwork>),
    /// Smallest slack-respecting cut of a coflow instance.
    Cographic(Arc<FlowNetwork>),
}

impl OracleKind {
    pub fn name(&self) -> &'static str {
        match self {
            OracleKind::Generic => "generic",
            OracleKind::Graphic(_) => "graphic",
            OracleKind::Cographic(_) => "cographic",
        }
    }

    pub(crate) fn check_instance(&self, inst: &Instance) -> Result<()> {
        let space = inst.space();
        match self {
            OracleKind::Generic => Ok(()),
            OracleKind::Graphic(net) => {
                net.check_consistent(space.generator(), inst.r(), space.mode(), SpaceMode::Kernel)
            }
            OracleKind::Cographic(net) => net.check_consistent(
                space.generator(),
                inst.r(),
                space.mode(),
                SpaceMode::Rowspace,
            ),
        }
    }
}

pub fn shortest_augmenting_path(
    f: &FlowState,
    inst: &Instance,
    oracle: &OracleKind,
) -> Result<Option<RPath>> {
    match oracle {
        OracleKind::Generic => shortest_augmenting_path_generic(f, inst),
        OracleKind::Graphic(net) => shortest_augmenting_path_graphic(f, inst, net),
        OracleKind::Cographic(net) => shortest_augmenting_path_cographic(f, inst, net),
    }
}

/// The first augmenting path in tie-breaking order: shortest, then
/// lexicographically smallest support, then `+1` preferred at the first
/// differing sign.
pub fn shortest_augmenting_path_generic(f: &FlowState, inst: &Instance) -> Result<Option<RPath>> {
    Ok(inst
        .paths()?
        .iter()
        .find(|p| is_augmenting(p, f, inst))
        .cloned())
}

/// BFS from the source to the sink over forward arcs with `f_j < c_j` and
/// backward arcs with `f_j > 0`, closed up by the return arc.
pub fn shortest_augmenting_path_graphic(
    f: &FlowState,
    inst: &Instance,
    net: &FlowNetwork,
) -> Result<Option<RPath>> {
    OracleKind::Graphic(Arc::new(net.clone())).check_instance(inst)?;
    let graph = net.graph();
    let r = net.return_arc();
    // adjacency in arc order, forward use before backward use
    let mut adjacency: Vec<Vec<(usize, usize, Sign)>> = vec![Vec::new(); graph.vertex_count()];
    for (j, &(u, v)) in graph.arcs().iter().enumerate() {
        if j == r {
            continue;
        }
        let c = inst.capacity(j).expect("only r is uncapacitated");
        if f.values[j] < *c {
            adjacency[u].push((v, j, Sign::Plus));
        }
        if f.values[j].is_positive() {
            adjacency[v].push((u, j, Sign::Minus));
        }
    }
    let mut reached: Vec<Option<(usize, usize, Sign)>> = vec![None; graph.vertex_count()];
    let mut seen = vec![false; graph.vertex_count()];
    seen[net.source()] = true;
    let mut queue = VecDeque::from([net.source()]);
    while let Some(u) = queue.pop_front() {
        if u == net.sink() {
            break;
        }
        for &(v, j, s) in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                reached[v] = Some((u, j, s));
                queue.push_back(v);
            }
        }
    }
    if !seen[net.sink()] {
        return Ok(None);
    }
    let mut entries = vec![(r, Sign::Plus)];
    let mut at = net.sink();
    while let Some((prev, j, s)) = reached[at] {
        entries.push((j, s));
        at = prev;
    }
    let path = SignedVector::new(inst.ground_size(), entries)?;
    debug_assert!(inst.space().contains_signed(&path));
    Ok(Some(RPath::from_circuit(path, r)))
}

/// Scans the vertex sets `X` with the source inside and the sink outside.
/// The signed cut of `X` (+1 on arcs entering `X`, -1 on arcs leaving it)
/// has +1 on the return arc; among the cuts whose arcs all have slack in
/// the direction of their sign, the smallest in tie-breaking order wins. A
/// smallest such cut is always a minimal cutset, hence an r-path.
pub fn shortest_augmenting_path_cographic(
    f: &FlowState,
    inst: &Instance,
    net: &FlowNetwork,
) -> Result<Option<RPath>> {
    OracleKind::Cographic(Arc::new(net.clone())).check_instance(inst)?;
    let graph = net.graph();
    let vertices = graph.vertex_count();
    if vertices > COGRAPHIC_VERTEX_LIMIT {
        return Err(Error::SizeLimit {
            what: "vertex set",
            size: vertices,
            limit: COGRAPHIC_VERTEX_LIMIT,
        });
    }
    let free: Vec<usize> = (0..vertices)
        .filter(|&v| v != net.source() && v != net.sink())
        .collect();
    let mut best: Option<SignedVector> = None;
    let mut inside = vec![false; vertices];
    for choice in 0u64..(1 << free.len()) {
        inside.iter_mut().for_each(|x| *x = false);
        inside[net.source()] = true;
        for (k, &v) in free.iter().enumerate() {
            inside[v] = choice & (1 << k) != 0;
        }
        let mut entries = Vec::new();
        let mut admissible = true;
        for (j, &(u, v)) in graph.arcs().iter().enumerate() {
            let sign = match (inside[u], inside[v]) {
                (false, true) => Sign::Plus,
                (true, false) => Sign::Minus,
                _ => continue,
            };
            if let Some(c) = inst.capacity(j) {
                let slack = match sign {
                    Sign::Plus => f.values[j] < *c,
                    Sign::Minus => f.values[j].is_positive(),
                };
                if !slack {
                    admissible = false;
                    break;
                }
            }
            entries.push((j, sign));
        }
        if !admissible {
            continue;
        }
        let cut = SignedVector::new(inst.ground_size(), entries)?;
        if best.as_ref().is_none_or(|b| cut < *b) {
            best = Some(cut);
        }
    }
    Ok(best.map(|cut| {
        debug_assert!(inst.space().contains_signed(&cut));
        RPath::from_circuit(cut, net.return_arc())
    }))
}
