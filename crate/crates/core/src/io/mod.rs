//! Text formats: instance files, DIMACS digraphs and augmentation traces.

mod dimacs;
mod instance;
mod trace;

pub use dimacs::{parse_dimacs_digraph, serialize_dimacs};
pub use instance::{parse_instance, serialize_instance};
pub use trace::{parse_trace, serialize_trace};

use crate::error::Result;
use crate::solver::{FlowNetwork, Instance};
use crate::space::SpaceMode;

/// A loaded instance, with the graph when it came from a DIMACS file.
#[derive(Debug)]
pub struct LoadedInstance {
    pub instance: Instance,
    pub network: Option<FlowNetwork>,
}

/// True when the first meaningful line is a DIMACS problem or comment line.
pub fn looks_like_dimacs(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("p ") || l.starts_with("c ") || l == "c")
}

/// Reads either format. `mode` applies to DIMACS input only (default
/// kernel); instance files carry their own.
pub fn load_instance(text: &str, mode: Option<SpaceMode>) -> Result<LoadedInstance> {
    if looks_like_dimacs(text) {
        let (instance, network) = parse_dimacs_digraph(text, mode.unwrap_or(SpaceMode::Kernel))?;
        Ok(LoadedInstance {
            instance,
            network: Some(network),
        })
    } else {
        Ok(LoadedInstance {
            instance: parse_instance(text)?,
            network: None,
        })
    }
}
