//! Augmentation trace files.
//!
//! ```text
//! trace N R
//! step ITER path SIGNED-SUPPORT eps EPSILON obj OBJECTIVE len LENGTH
//! ```
//!
//! `N` is the ground set size and `R` the 1-based return element. The signed
//! support lists 1-based indices with explicit signs (`+3 -7 +12`); rationals
//! are integers or `p/q`. Lines starting with `#` are comments.

use std::fmt::Write as _;

use super::instance::content;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::paths::RPath;
use crate::solver::{AugmentationTrace, TraceStep};
use crate::space::SignedVector;

pub fn serialize_trace(trace: &AugmentationTrace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "trace {} {}", trace.ground_size, trace.r + 1);
    for step in &trace.steps {
        let _ = writeln!(
            out,
            "step {} path {} eps {} obj {} len {}",
            step.iteration,
            step.path,
            format_rational(&step.epsilon),
            format_rational(&step.objective_after),
            step.path_length
        );
    }
    out
}

pub fn parse_trace(text: &str) -> Result<AugmentationTrace> {
    let mut trace: Option<AugmentationTrace> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "trace" => {
                if trace.is_some() {
                    return Err(Error::parse(line_no, "duplicate trace header"));
                }
                let ["trace", n, r] = tokens[..] else {
                    return Err(Error::parse(line_no, "expected `trace N R`"));
                };
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::parse(line_no, "bad ground size"))?;
                let r: usize = r
                    .parse()
                    .map_err(|_| Error::parse(line_no, "bad return index"))?;
                if r == 0 || r > n {
                    return Err(Error::parse(line_no, "return index out of range"));
                }
                trace = Some(AugmentationTrace::new(n, r - 1));
            }
            "step" => {
                let trace = trace
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, "step before trace header"))?;
                trace
                    .steps
                    .push(parse_step(&tokens, trace.ground_size, trace.r, line_no)?);
            }
            other => return Err(Error::parse(line_no, format!("unknown keyword {other:?}"))),
        }
    }
    trace.ok_or_else(|| Error::parse(1, "missing trace header"))
}

fn parse_step(tokens: &[&str], n: usize, r: usize, line: usize) -> Result<TraceStep> {
    let bad = |what: &str| Error::parse(line, format!("malformed step: {what}"));
    if tokens.len() < 11 || tokens[2] != "path" {
        return Err(bad("expected `step ITER path ... eps E obj O len L`"));
    }
    let tail = &tokens[tokens.len() - 6..];
    let ["eps", eps, "obj", obj, "len", len] = tail[..] else {
        return Err(bad("expected `eps E obj O len L` at the end"));
    };
    let iteration: usize = tokens[1].parse().map_err(|_| bad("iteration"))?;
    let support = tokens[3..tokens.len() - 6].join(" ");
    let vector = SignedVector::parse_support(n, &support).map_err(|e| bad(&e.to_string()))?;
    if vector.get(r) != 1 {
        return Err(bad("path does not take +1 at the return element"));
    }
    let rational =
        |s: &str, what: &str| -> Result<Rational> { parse_rational(s).ok_or_else(|| bad(what)) };
    Ok(TraceStep {
        iteration,
        path: RPath::from_circuit(vector, r),
        epsilon: rational(eps, "epsilon")?,
        objective_after: rational(obj, "objective")?,
        path_length: len.parse().map_err(|_| bad("length"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
trace 4 4
step 1 path +3 +4 eps 1 obj 1 len 2
step 2 path +1 +2 +4 eps 1/2 obj 3/2 len 3
";

    #[test]
    fn round_trip() {
        let trace = parse_trace(SAMPLE).unwrap();
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(trace.steps[1].epsilon, Rational::new(1.into(), 2.into()));
        assert_eq!(serialize_trace(&trace), SAMPLE);
    }

    #[test]
    fn rejects_bad_steps() {
        assert!(parse_trace("step 1 path +1 eps 1 obj 1 len 1\n").is_err());
        assert!(parse_trace("trace 4 4\nstep 1 path +3 -4 eps 1 obj 1 len 2\n").is_err());
        assert!(parse_trace("trace 4 4\nstep 1 path +3 +4 eps x obj 1 len 2\n").is_err());
        assert!(parse_trace("trace 4 4\nstep 1 path eps 1 obj 1 len 2\n").is_err());
        assert!(parse_trace("").is_err());
    }
}
