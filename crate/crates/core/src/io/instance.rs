//! The line-oriented instance format.
//!
//! ```text
//! # comment
//! mode kernel          # or rowspace
//! size ROWS COLS       # generator dimensions; COLS is the ground set size
//! return R             # 1-based index of r
//! row a_1 ... a_COLS   # ROWS lines, entries in {-1, 0, 1}
//! cap c_1 ... c_k      # COLS - 1 capacities, skipping r; may span lines
//! ```
//!
//! Capacities are nonnegative integers or `p/q`. `mode`, `size` and `return`
//! must precede the first `row` or `cap` line.

use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::solver::Instance;
use crate::space::{RegularSpace, SpaceMode, TuMatrix};

pub(crate) fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut mode: Option<SpaceMode> = None;
    let mut size: Option<(usize, usize)> = None;
    let mut ret: Option<usize> = None;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut caps: Vec<Rational> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().expect("nonempty");
        let rest: Vec<&str> = tokens.collect();
        match keyword {
            "mode" => {
                if mode.is_some() {
                    return Err(Error::parse(line_no, "duplicate mode line"));
                }
                let [value] = rest[..] else {
                    return Err(Error::parse(line_no, "expected `mode kernel|rowspace`"));
                };
                mode = Some(
                    value
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("unknown mode {value:?}")))?,
                );
            }
            "size" => {
                if size.is_some() {
                    return Err(Error::parse(line_no, "duplicate size line"));
                }
                let [r, c] = rest[..] else {
                    return Err(Error::parse(line_no, "expected `size ROWS COLS`"));
                };
                let parse = |s: &str| -> Result<usize> {
                    match s.parse::<usize>() {
                        Ok(v) if v > 0 => Ok(v),
                        _ => Err(Error::parse(line_no, format!("bad dimension {s:?}"))),
                    }
                };
                size = Some((parse(r)?, parse(c)?));
            }
            "return" => {
                if ret.is_some() {
                    return Err(Error::parse(line_no, "duplicate return line"));
                }
                let [value] = rest[..] else {
                    return Err(Error::parse(line_no, "expected `return R`"));
                };
                match value.parse::<usize>() {
                    Ok(v) if v > 0 => ret = Some(v - 1),
                    _ => return Err(Error::parse(line_no, format!("bad return index {value:?}"))),
                }
            }
            "row" | "cap" => {
                let (Some(_), Some((row_count, cols)), Some(r)) = (mode, size, ret) else {
                    return Err(Error::parse(
                        line_no,
                        "mode, size and return must come first",
                    ));
                };
                if r >= cols {
                    return Err(Error::parse(
                        line_no,
                        format!("return index {} exceeds {cols} columns", r + 1),
                    ));
                }
                if keyword == "row" {
                    if rows.len() == row_count {
                        return Err(Error::parse(
                            line_no,
                            format!("more than the declared {row_count} rows"),
                        ));
                    }
                    if rest.len() != cols {
                        return Err(Error::parse(
                            line_no,
                            format!("row has {} entries, expected {cols}", rest.len()),
                        ));
                    }
                    let mut row = Vec::with_capacity(cols);
                    for token in rest {
                        match token.parse::<i64>() {
                            Ok(v) if (-1..=1).contains(&v) => row.push(v),
                            _ => {
                                return Err(Error::parse(
                                    line_no,
                                    format!("matrix entry {token:?} is not in {{-1, 0, 1}}"),
                                ))
                            }
                        }
                    }
                    rows.push(row);
                } else {
                    for token in rest {
                        let value = parse_rational(token).ok_or_else(|| {
                            Error::parse(line_no, format!("bad capacity {token:?}"))
                        })?;
                        if value.is_negative() {
                            return Err(Error::parse(
                                line_no,
                                format!("negative capacity {token}"),
                            ));
                        }
                        caps.push(value);
                    }
                    if caps.len() > cols - 1 {
                        return Err(Error::parse(
                            line_no,
                            format!("more than the expected {} capacities", cols - 1),
                        ));
                    }
                }
            }
            other => return Err(Error::parse(line_no, format!("unknown keyword {other:?}"))),
        }
    }

    let end = last_line.max(1);
    let mode = mode.ok_or_else(|| Error::parse(end, "missing mode line"))?;
    let (row_count, cols) = size.ok_or_else(|| Error::parse(end, "missing size line"))?;
    let r = ret.ok_or_else(|| Error::parse(end, "missing return line"))?;
    if r >= cols {
        return Err(Error::parse(
            end,
            format!("return index {} exceeds {cols} columns", r + 1),
        ));
    }
    if rows.len() != row_count {
        return Err(Error::parse(
            end,
            format!("found {} rows, declared {row_count}", rows.len()),
        ));
    }
    if caps.len() != cols - 1 {
        return Err(Error::parse(
            end,
            format!("found {} capacities, expected {}", caps.len(), cols - 1),
        ));
    }
    let generator = TuMatrix::new(&rows)?;
    let space = Arc::new(RegularSpace::build(generator, mode));
    Instance::new(space, r, caps)
}

pub fn serialize_instance(inst: &Instance) -> String {
    let generator = inst.space().generator();
    let mut out = String::new();
    let _ = writeln!(out, "mode {}", inst.space().mode());
    let _ = writeln!(out, "size {} {}", generator.rows(), generator.cols());
    let _ = writeln!(out, "return {}", inst.r() + 1);
    for i in 0..generator.rows() {
        let entries: Vec<String> = generator.row(i).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "row {}", entries.join(" "));
    }
    let caps: Vec<String> = inst
        .listed_capacities()
        .iter()
        .map(format_rational)
        .collect();
    if caps.is_empty() {
        out.push_str("cap\n");
    } else {
        let _ = writeln!(out, "cap {}", caps.join(" "));
    }
    out
}
