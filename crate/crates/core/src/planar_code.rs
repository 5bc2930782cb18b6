//! Text format for maps.
//!
//! ```text
//! # comment
//! AG <V> <free_loops>
//! 0: 1.2 1.3 2.0 2.1
//! ```
//!
//! Each vertex line lists the mates of slots 0..3 in counterclockwise order.

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::planemap::{dart, PlaneMap};

pub fn write_planar_code(g: &PlaneMap) -> String {
    let mut out = format!("AG {} {}\n", g.vertex_count(), g.free_loops());
    for v in 0..g.vertex_count() {
        write!(out, "{v}:").unwrap();
        for k in 0..4 {
            let m = g.mate(dart(v, k));
            write!(out, " {}.{}", m / 4, m % 4).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses one map; trailing content after the vertex lines is an error.
pub fn parse_planar_code(text: &str) -> Result<PlaneMap, ParseError> {
    let mut maps = parse_many(text)?;
    match maps.len() {
        1 => Ok(maps.pop().unwrap()),
        0 => Err(ParseError::Syntax { line: 0, msg: "no AG header".into() }),
        _ => Err(ParseError::Syntax { line: 0, msg: "more than one map".into() }),
    }
}

/// Parses a file holding any number of maps back to back.
/// Header line, vertex count, free loops, mates so far, vertex lines read.
type Pending = (usize, usize, usize, Vec<Option<usize>>, usize);

pub fn parse_many(text: &str) -> Result<Vec<PlaneMap>, ParseError> {
    let syntax = |line: usize, msg: &str| ParseError::Syntax { line, msg: msg.to_string() };
    let mut out = Vec::new();
    let mut current: Option<Pending> = None;

    let finish = |cur: Pending| -> Result<PlaneMap, ParseError> {
        let (header_line, v, loops, mate, filled) = cur;
        if filled != v {
            return Err(ParseError::Syntax {
                line: header_line,
                msg: format!("expected {v} vertex lines, found {filled}"),
            });
        }
        let mate: Vec<usize> = mate.into_iter().map(|m| m.unwrap()).collect();
        Ok(PlaneMap::from_mates(v, mate, loops)?)
    };

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("AG") {
            if let Some(cur) = current.take() {
                out.push(finish(cur)?);
            }
            let nums: Vec<&str> = rest.split_whitespace().collect();
            if nums.len() != 2 {
                return Err(syntax(lineno, "header must be `AG <V> <free_loops>`"));
            }
            let v: usize = nums[0].parse().map_err(|_| syntax(lineno, "bad vertex count"))?;
            let loops: usize = nums[1].parse().map_err(|_| syntax(lineno, "bad free loop count"))?;
            current = Some((lineno, v, loops, vec![None; 4 * v], 0));
            continue;
        }
        let Some(cur) = current.as_mut() else {
            return Err(syntax(lineno, "vertex line before AG header"));
        };
        let (head, tail) = line.split_once(':').ok_or_else(|| syntax(lineno, "missing `:`"))?;
        let v: usize = head.trim().parse().map_err(|_| syntax(lineno, "bad vertex id"))?;
        if v != cur.4 {
            return Err(syntax(lineno, &format!("expected vertex {}", cur.4)));
        }
        let fields: Vec<&str> = tail.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(syntax(lineno, "vertex line needs four darts"));
        }
        for (k, f) in fields.iter().enumerate() {
            let (a, b) = f.split_once('.').ok_or_else(|| syntax(lineno, "dart must be `<vertex>.<slot>`"))?;
            let w: usize = a.parse().map_err(|_| syntax(lineno, "bad dart vertex"))?;
            let s: usize = b.parse().map_err(|_| syntax(lineno, "bad dart slot"))?;
            if w >= cur.1 || s > 3 {
                return Err(syntax(lineno, "dart out of range"));
            }
            cur.3[dart(v, k)] = Some(dart(w, s));
        }
        cur.4 += 1;
    }
    if let Some(cur) = current.take() {
        out.push(finish(cur)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planemap::{exception, torus_graph, ExceptionKind};

    #[test]
    fn unknot_text() {
        let g = exception(ExceptionKind::UnknotProjection);
        assert_eq!(write_planar_code(&g), "AG 0 1\n");
        assert_eq!(parse_planar_code("# circle\nAG 0 1\n").unwrap(), g);
    }

    #[test]
    fn round_trip_and_many() {
        let a = torus_graph(4).unwrap();
        let b = exception(ExceptionKind::TrefoilProjection);
        let text = format!("{}\n# next\n{}", write_planar_code(&a), write_planar_code(&b));
        assert_eq!(parse_many(&text).unwrap(), vec![a.clone(), b]);
        assert_eq!(parse_planar_code(&write_planar_code(&a)).unwrap(), a);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_planar_code("AG 1 0\n0: 0.1 0.0 0.3\n").unwrap_err();
        assert_eq!(err, ParseError::Syntax { line: 2, msg: "vertex line needs four darts".into() });
        let err = parse_planar_code("\n\nAG 1 0\n0: 0.1 0.0 0.3 x\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 4, .. }));
        assert!(matches!(parse_planar_code("AG 1 0\n0: 0.2 0.3 0.0 0.1\n"), Err(ParseError::Map(_))));
        assert!(matches!(parse_planar_code("AG 2 0\n0: 0.1 0.0 0.3 0.2\n"), Err(ParseError::Syntax { line: 1, .. })));
    }
}
