//! The line-based problem file format.
//!
//! ```text
//! # diamond quiver, unit dimensions
//! vertices: 4
//! arrows: 1 2, 1 3, 2 4, 3 4
//! dims: 1 1 1 1
//! weight 1: 2
//! weight 2: 0
//! weight 3: 0
//! weight 4: -2
//! sigma: 1 0 0 -1
//! ```
//!
//! Rules: `vertices:` must come first; blank lines and lines starting with
//! `#` are ignored; every directive may appear at most once; `weight x:`
//! lines must either cover every vertex or be absent entirely. `arrows:`,
//! `dims:`, `weight x:`, and `sigma:` are each optional at parse time —
//! commands check for what they need.

use std::fmt;

/// A parse failure, attributed to an input line where one applies.
#[derive(Debug)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line: Some(line), message: message.into() })
}

/// The parsed contents of a problem file.
#[derive(Debug, Clone)]
pub struct InputFile {
    pub num_vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub dims: Option<Vec<usize>>,
    /// One entry list per vertex when any `weight` line is present.
    pub weights: Option<Vec<Vec<i64>>>,
    pub sigma: Option<Vec<i64>>,
}

fn parse_ints<T: std::str::FromStr>(
    line: usize,
    what: &str,
    text: &str,
) -> Result<Vec<T>, ParseError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<T>().or_else(|_| err(line, format!("bad {what} entry {tok:?}")))
        })
        .collect()
}

pub fn parse(text: &str) -> Result<InputFile, ParseError> {
    let mut num_vertices: Option<usize> = None;
    let mut arrows: Option<Vec<(usize, usize)>> = None;
    let mut dims: Option<Vec<usize>> = None;
    let mut weights: Vec<Option<Vec<i64>>> = Vec::new();
    let mut sigma: Option<Vec<i64>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            return err(lineno, format!("expected `directive: values`, got {line:?}"));
        };
        let key = key.trim();
        let rest = rest.trim();

        if key != "vertices" && num_vertices.is_none() {
            return err(lineno, "`vertices:` must come before every other directive");
        }

        match key {
            "vertices" => {
                if num_vertices.is_some() {
                    return err(lineno, "duplicate `vertices:` directive");
                }
                let v: usize =
                    rest.parse().or_else(|_| err(lineno, format!("bad vertex count {rest:?}")))?;
                if v == 0 {
                    return err(lineno, "vertex count must be positive");
                }
                num_vertices = Some(v);
                weights = vec![None; v];
            }
            "arrows" => {
                if arrows.is_some() {
                    return err(lineno, "duplicate `arrows:` directive");
                }
                let mut parsed = Vec::new();
                if !rest.is_empty() {
                    for part in rest.split(',') {
                        let pair: Vec<usize> = parse_ints(lineno, "arrow", part)?;
                        let [s, t] = pair[..] else {
                            return err(
                                lineno,
                                format!("expected `source target`, got {:?}", part.trim()),
                            );
                        };
                        parsed.push((s, t));
                    }
                }
                arrows = Some(parsed);
            }
            "dims" => {
                if dims.is_some() {
                    return err(lineno, "duplicate `dims:` directive");
                }
                let d: Vec<usize> = parse_ints(lineno, "dimension", rest)?;
                if d.len() != num_vertices.unwrap() {
                    return err(
                        lineno,
                        format!("expected {} dimensions, got {}", num_vertices.unwrap(), d.len()),
                    );
                }
                dims = Some(d);
            }
            "sigma" => {
                if sigma.is_some() {
                    return err(lineno, "duplicate `sigma:` directive");
                }
                let s: Vec<i64> = parse_ints(lineno, "sigma", rest)?;
                if s.len() != num_vertices.unwrap() {
                    return err(
                        lineno,
                        format!("expected {} sigma entries, got {}", num_vertices.unwrap(), s.len()),
                    );
                }
                sigma = Some(s);
            }
            _ => match key.strip_prefix("weight ") {
                Some(tail) => {
                    let x: usize = tail
                        .trim()
                        .parse()
                        .or_else(|_| err(lineno, format!("bad weight vertex {:?}", tail.trim())))?;
                    let v = num_vertices.unwrap();
                    if x == 0 || x > v {
                        return err(lineno, format!("weight vertex {x} out of range 1..={v}"));
                    }
                    if weights[x - 1].is_some() {
                        return err(lineno, format!("duplicate `weight {x}:` directive"));
                    }
                    weights[x - 1] = Some(parse_ints(lineno, "weight", rest)?);
                }
                None => return err(lineno, format!("unknown directive {key:?}")),
            },
        }
    }

    let Some(num_vertices) = num_vertices else {
        return Err(ParseError { line: None, message: "missing `vertices:` directive".into() });
    };
    let given = weights.iter().filter(|w| w.is_some()).count();
    let weights = if given == 0 {
        None
    } else if given == num_vertices {
        Some(weights.into_iter().map(Option::unwrap).collect())
    } else {
        return Err(ParseError {
            line: None,
            message: format!("weight lines cover only {given} of {num_vertices} vertices"),
        });
    };

    Ok(InputFile {
        num_vertices,
        arrows: arrows.unwrap_or_default(),
        dims,
        weights,
        sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAMOND: &str = "\
# diamond
vertices: 4
arrows: 1 2, 1 3, 2 4, 3 4
dims: 1 1 1 1
weight 1: 2
weight 2: 0
weight 3: 0
weight 4: -2
sigma: 1 0 0 -1
";

    #[test]
    fn parses_a_complete_file() {
        let f = parse(DIAMOND).unwrap();
        assert_eq!(f.num_vertices, 4);
        assert_eq!(f.arrows, vec![(1, 2), (1, 3), (2, 4), (3, 4)]);
        assert_eq!(f.dims.as_deref(), Some(&[1, 1, 1, 1][..]));
        assert_eq!(f.weights.as_ref().unwrap()[0], vec![2]);
        assert_eq!(f.weights.as_ref().unwrap()[3], vec![-2]);
        assert_eq!(f.sigma.as_deref(), Some(&[1, 0, 0, -1][..]));
    }

    #[test]
    fn weights_and_sigma_are_optional() {
        let f = parse("vertices: 2\narrows: 1 2\ndims: 2 2\n").unwrap();
        assert!(f.weights.is_none());
        assert!(f.sigma.is_none());
    }

    #[test]
    fn rejects_misformed_files() {
        let bad = [
            ("dims: 1 1\nvertices: 2\n", "must come before"),
            ("vertices: 2\nvertices: 2\n", "duplicate"),
            ("vertices: 0\n", "positive"),
            ("vertices: 2\narrows: 1\n", "source target"),
            ("vertices: 2\ndims: 1\n", "expected 2 dimensions"),
            ("vertices: 2\nweight 3: 1\n", "out of range"),
            ("vertices: 2\nweight 1: 1\nweight 1: 2\n", "duplicate"),
            ("vertices: 2\nweight 1: 1\n", "cover only 1 of 2"),
            ("vertices: 2\nwat: 1\n", "unknown directive"),
            ("vertices: 2\nno colon here\n", "expected"),
            ("vertices: 2\nsigma: 1 x\n", "bad sigma entry"),
            ("", "missing `vertices:`"),
        ];
        for (text, needle) in bad {
            let e = parse(text).unwrap_err().to_string();
            assert!(e.contains(needle), "{text:?} gave {e:?}, expected {needle:?}");
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("vertices: 2\n\n# c\ndims: 1\n").unwrap_err();
        assert_eq!(e.line, Some(4));
    }
}
