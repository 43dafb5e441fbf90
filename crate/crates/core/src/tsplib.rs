//! Reader for TSPLIB `.tsp` files with `EUC_2D` node coordinates and for
//! `.opt.tour` files.
//!
//! Only the subset needed for symmetric Euclidean instances is supported:
//! `NAME`, `TYPE`, `COMMENT`, `DIMENSION`, `EDGE_WEIGHT_TYPE` and
//! `NODE_COORD_SECTION` (or `TOUR_SECTION` for tours). File ids are 1-based
//! and become 0-based city indices.

use thiserror::Error;

use crate::instance::{Instance, InstanceError, Metric};
use crate::scalar::Scalar;
use crate::tour::Tour;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: malformed header `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: unsupported {key} `{value}`")]
    Unsupported {
        line: usize,
        key: String,
        value: String,
    },
    #[error("line {line}: invalid DIMENSION `{text}`")]
    BadDimension { line: usize, text: String },
    #[error("line {line}: non-numeric value in `{text}`")]
    NonNumeric { line: usize, text: String },
    #[error("line {line}: expected `id x y`, got `{text}`")]
    BadNodeLine { line: usize, text: String },
    #[error("line {line}: node id {id} outside 1..={dimension}")]
    IdOutOfRange {
        line: usize,
        id: usize,
        dimension: usize,
    },
    #[error("line {line}: node id {id} appears twice")]
    DuplicateId { line: usize, id: usize },
    #[error("line {line}: DIMENSION is {dimension} but {found} entries were read")]
    DimensionMismatch {
        line: usize,
        dimension: usize,
        found: usize,
    },
    #[error("missing DIMENSION header")]
    MissingDimension,
    #[error("missing {0}")]
    MissingSection(&'static str),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

struct Header {
    name: String,
    dimension: Option<usize>,
    body_start: usize,
}

fn split_header(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once(':')?;
    Some((k.trim(), v.trim()))
}

fn read_header(lines: &[&str], section: &'static str) -> Result<Header, ParseError> {
    let mut name = String::new();
    let mut dimension = None;
    for (idx, raw) in lines.iter().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == section || line.starts_with(section) && line[section.len()..].trim_start().starts_with(':') {
            return Ok(Header {
                name,
                dimension,
                body_start: idx + 1,
            });
        }
        if line == "EOF" {
            break;
        }
        let Some((key, value)) = split_header(line) else {
            return Err(ParseError::MalformedHeader {
                line: lineno,
                text: line.to_string(),
            });
        };
        match key.to_ascii_uppercase().as_str() {
            "NAME" => name = value.to_string(),
            "COMMENT" => {}
            "TYPE" => {
                let ok = match section {
                    "TOUR_SECTION" => value.eq_ignore_ascii_case("TOUR"),
                    _ => value.eq_ignore_ascii_case("TSP"),
                };
                if !ok {
                    return Err(ParseError::Unsupported {
                        line: lineno,
                        key: "TYPE".into(),
                        value: value.into(),
                    });
                }
            }
            "DIMENSION" => {
                dimension = Some(value.parse().map_err(|_| ParseError::BadDimension {
                    line: lineno,
                    text: line.to_string(),
                })?)
            }
            "EDGE_WEIGHT_TYPE" => {
                if !value.eq_ignore_ascii_case("EUC_2D") {
                    return Err(ParseError::Unsupported {
                        line: lineno,
                        key: "EDGE_WEIGHT_TYPE".into(),
                        value: value.into(),
                    });
                }
            }
            "NODE_COORD_TYPE" | "DISPLAY_DATA_TYPE" => {}
            other => {
                return Err(ParseError::Unsupported {
                    line: lineno,
                    key: "keyword".into(),
                    value: other.into(),
                })
            }
        }
    }
    Err(ParseError::MissingSection(section))
}

/// Parses a `.tsp` file under the default rounded metric.
pub fn parse_tsplib<T: Scalar>(text: &str) -> Result<Instance<T>, ParseError> {
    parse_tsplib_with_metric(text, Metric::RoundedEuc2d)
}

pub fn parse_tsplib_with_metric<T: Scalar>(
    text: &str,
    metric: Metric,
) -> Result<Instance<T>, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let header = read_header(&lines, "NODE_COORD_SECTION")?;
    let dimension = header.dimension.ok_or(ParseError::MissingDimension)?;
    if dimension < 3 {
        return Err(ParseError::BadDimension {
            line: 0,
            text: format!("DIMENSION : {dimension}"),
        });
    }
    let mut coords: Vec<Option<(T, T)>> = vec![None; dimension];
    let mut found = 0usize;
    let mut last_line = header.body_start;
    for (idx, raw) in lines.iter().enumerate().skip(header.body_start) {
        let lineno = idx + 1;
        let line = raw.trim();
        last_line = lineno;
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(ParseError::BadNodeLine {
                line: lineno,
                text: line.to_string(),
            });
        }
        let id: usize = fields[0].parse().map_err(|_| ParseError::NonNumeric {
            line: lineno,
            text: line.to_string(),
        })?;
        let num = |s: &str| -> Result<T, ParseError> {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(T::lit)
                .ok_or_else(|| ParseError::NonNumeric {
                    line: lineno,
                    text: line.to_string(),
                })
        };
        let (x, y) = (num(fields[1])?, num(fields[2])?);
        if id == 0 || id > dimension {
            return Err(ParseError::IdOutOfRange {
                line: lineno,
                id,
                dimension,
            });
        }
        if coords[id - 1].is_some() {
            return Err(ParseError::DuplicateId { line: lineno, id });
        }
        coords[id - 1] = Some((x, y));
        found += 1;
    }
    if found != dimension {
        return Err(ParseError::DimensionMismatch {
            line: last_line,
            dimension,
            found,
        });
    }
    let coords = coords.into_iter().map(|c| c.expect("count checked")).collect();
    Ok(Instance::from_coords(header.name, coords, metric)?)
}

/// Parses a TSPLIB tour file into a 0-based [`Tour`], rotated so that
/// city 0 comes first.
pub fn parse_tour(text: &str) -> Result<Tour, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let header = read_header(&lines, "TOUR_SECTION")?;
    let mut ids = Vec::new();
    let mut last_line = header.body_start;
    'outer: for (idx, raw) in lines.iter().enumerate().skip(header.body_start) {
        let lineno = idx + 1;
        last_line = lineno;
        for tok in raw.split_whitespace() {
            if tok == "EOF" {
                break 'outer;
            }
            let v: i64 = tok.parse().map_err(|_| ParseError::NonNumeric {
                line: lineno,
                text: raw.trim().to_string(),
            })?;
            if v == -1 {
                break 'outer;
            }
            if v < 1 {
                return Err(ParseError::IdOutOfRange {
                    line: lineno,
                    id: 0,
                    dimension: header.dimension.unwrap_or(0),
                });
            }
            ids.push(v as usize - 1);
        }
    }
    if let Some(d) = header.dimension {
        if d != ids.len() {
            return Err(ParseError::DimensionMismatch {
                line: last_line,
                dimension: d,
                found: ids.len(),
            });
        }
    }
    let Some(start) = ids.iter().position(|&c| c == 0) else {
        return Err(ParseError::MissingSection("city 1 in TOUR_SECTION"));
    };
    ids.rotate_left(start);
    let n = ids.len();
    Tour::try_new(ids, n).map_err(|v| ParseError::NonNumeric {
        line: last_line,
        text: format!("tour is not a permutation: {}", v[0]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRI: &str = "NAME : tri\nTYPE : TSP\nDIMENSION : 3\nNODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nEOF\n";

    #[test]
    fn parses_triangle() {
        let inst: Instance<f64> = parse_tsplib_with_metric(TRI, Metric::RawEuc2d).unwrap();
        assert_eq!(inst.len(), 3);
        assert_eq!(inst.name(), "tri");
        assert_eq!(inst.distance(0, 1), 3.0);
        assert_eq!(inst.distance(0, 2), 4.0);
        assert_eq!(inst.distance(1, 2), 5.0);
        let rounded: Instance<f64> = parse_tsplib(TRI).unwrap();
        assert_eq!(rounded.metric(), Metric::RoundedEuc2d);
    }

    #[test]
    fn ids_are_remapped_by_value() {
        let text = "DIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n3 0 4\n1 0 0\n2 3 0\nEOF";
        let inst: Instance<f64> = parse_tsplib_with_metric(text, Metric::RawEuc2d).unwrap();
        assert_eq!(inst.coords()[2], (0.0, 4.0));
        assert_eq!(inst.distance(1, 2), 5.0);
    }

    #[test]
    fn errors_name_the_line() {
        let bad = TRI.replace("2 3 0", "2 x 0");
        assert_eq!(
            parse_tsplib::<f64>(&bad).unwrap_err(),
            ParseError::NonNumeric {
                line: 6,
                text: "2 x 0".into()
            }
        );
        let geo = TRI.replace("TYPE : TSP", "TYPE : TSP\nEDGE_WEIGHT_TYPE : GEO");
        assert!(matches!(
            parse_tsplib::<f64>(&geo).unwrap_err(),
            ParseError::Unsupported { line: 3, .. }
        ));
        let short = TRI.replace("3 0 4\n", "");
        assert!(matches!(
            parse_tsplib::<f64>(&short).unwrap_err(),
            ParseError::DimensionMismatch {
                dimension: 3,
                found: 2,
                ..
            }
        ));
        let header = TRI.replace("TYPE : TSP", "TYPE TSP");
        assert_eq!(
            parse_tsplib::<f64>(&header).unwrap_err(),
            ParseError::MalformedHeader {
                line: 2,
                text: "TYPE TSP".into()
            }
        );
        let err = parse_tsplib::<f64>(&bad).unwrap_err().to_string();
        assert!(err.contains("line 6"), "{err}");
    }

    #[test]
    fn tour_file() {
        let text = "NAME : t\nTYPE : TOUR\nDIMENSION : 4\nTOUR_SECTION\n3\n1\n4\n2\n-1\nEOF\n";
        let t = parse_tour(text).unwrap();
        assert_eq!(t.order(), &[0, 3, 1, 2]);
    }
}
