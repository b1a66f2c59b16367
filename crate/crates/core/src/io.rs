//! Text formats for complexes and subdivision metadata.
//!
//! Facet lists: one facet per line as whitespace-separated vertex labels
//! (positive integers). `#` starts a comment and blank lines are skipped.
//!
//! Subdivision sidecar: one line per vertex of the subdivided complex,
//! `vertex level origin-vertices...`, where the origin is the face of the
//! original complex the vertex stands for and the level is its cardinality.
//! The sidecar is validated against the facet list on parse: every facet of
//! the subdivided complex must be a strictly nested chain of origins.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex, SubdividedComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: '{token}' is not a vertex label")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: vertex labels start at 1")]
    ZeroVertex { line: usize },
    #[error("no facets found")]
    NoFacets,
    #[error("line {line}: expected 'vertex level origin-vertices...'")]
    MalformedVertexLine { line: usize },
    #[error("line {line}: duplicate data for vertex {vertex}")]
    DuplicateVertex { line: usize, vertex: u32 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Content lines with their 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_vertex(token: &str, line: usize) -> Result<u32, ParseError> {
    let v: u32 = token.parse().map_err(|_| ParseError::InvalidToken {
        line,
        token: token.to_string(),
    })?;
    if v == 0 {
        return Err(ParseError::ZeroVertex { line });
    }
    Ok(v)
}

/// Parse a facet list into a complex. Dominated facets are dropped and
/// vertex order inside a line does not matter.
pub fn parse_facets(text: &str) -> Result<SimplicialComplex, ParseError> {
    let mut facets: Vec<Face> = Vec::new();
    for (line, content) in content_lines(text) {
        let facet = content
            .split_whitespace()
            .map(|token| parse_vertex(token, line))
            .collect::<Result<Face, _>>()?;
        facets.push(facet);
    }
    if facets.is_empty() {
        return Err(ParseError::NoFacets);
    }
    Ok(SimplicialComplex::from_facets(facets)?)
}

/// One facet per line, vertices separated by single spaces, trailing newline.
pub fn format_facets(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    for facet in complex.facets() {
        let line = facet
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parse a facet list plus its subdivision sidecar.
pub fn parse_subdivided(
    facets_text: &str,
    sidecar_text: &str,
) -> Result<SubdividedComplex, ParseError> {
    let complex = parse_facets(facets_text)?;
    let mut level: BTreeMap<u32, usize> = BTreeMap::new();
    let mut origin: BTreeMap<u32, Face> = BTreeMap::new();
    for (line, content) in content_lines(sidecar_text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() < 3 {
            return Err(ParseError::MalformedVertexLine { line });
        }
        let vertex = parse_vertex(tokens[0], line)?;
        let lv: usize = tokens[1].parse().map_err(|_| ParseError::InvalidToken {
            line,
            token: tokens[1].to_string(),
        })?;
        let mut face = tokens[2..]
            .iter()
            .map(|t| parse_vertex(t, line))
            .collect::<Result<Face, _>>()?;
        face.sort_unstable();
        face.dedup();
        if level.insert(vertex, lv).is_some() {
            return Err(ParseError::DuplicateVertex { line, vertex });
        }
        origin.insert(vertex, face);
    }
    Ok(SubdividedComplex::new(complex, level, origin)?)
}

/// Sidecar lines `vertex level origin-vertices...` in vertex order.
pub fn format_subdivided_sidecar(sd: &SubdividedComplex) -> String {
    let mut out = String::new();
    for (&v, face) in sd.origins() {
        out.push_str(&v.to_string());
        out.push(' ');
        out.push_str(&sd.level_of(v).to_string());
        for w in face {
            out.push(' ');
            out.push_str(&w.to_string());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complex, simplex};

    #[test]
    fn parses_facets_with_comments_and_blank_lines() {
        let text = "# a hollow triangle\n1 2\n\n2 3   # with an inline comment\n1 3\n";
        let cx = parse_facets(text).unwrap();
        assert_eq!(cx.facets(), &[vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_facets("1 2\n2 x\n"),
            Err(ParseError::InvalidToken {
                line: 2,
                token: "x".to_string()
            })
        );
        assert_eq!(
            parse_facets("1 2\n\n# only comments\n0 3\n"),
            Err(ParseError::ZeroVertex { line: 4 })
        );
        assert_eq!(parse_facets("# nothing\n\n"), Err(ParseError::NoFacets));
        assert_eq!(
            parse_facets("1 2\n-3 4\n"),
            Err(ParseError::InvalidToken {
                line: 2,
                token: "-3".to_string()
            })
        );
    }

    #[test]
    fn format_and_parse_round_trip() {
        let cx = complex(&[&[1, 2, 3], &[2, 3, 4], &[4, 5, 6]]);
        let text = format_facets(&cx);
        assert_eq!(text, "1 2 3\n2 3 4\n4 5 6\n");
        assert_eq!(parse_facets(&text).unwrap(), cx);
    }

    #[test]
    fn sidecar_round_trip_for_a_subdivided_triangle() {
        let sd = simplex(2).barycentric_subdivision();
        let facets = format_facets(sd.complex());
        let sidecar = format_subdivided_sidecar(&sd);
        let parsed = parse_subdivided(&facets, &sidecar).unwrap();
        assert_eq!(parsed.complex(), sd.complex());
        assert_eq!(parsed.levels(), sd.levels());
        assert_eq!(parsed.origins(), sd.origins());
        // spot-check the documented labeling
        assert!(sidecar.contains("4 2 1 2\n"));
        assert!(sidecar.contains("7 3 1 2 3\n"));
    }

    #[test]
    fn sidecar_errors_are_line_numbered_and_validated() {
        let facets = "1 2\n2 3\n";
        assert_eq!(
            parse_subdivided(facets, "1 1 1\n2 1\n"),
            Err(ParseError::MalformedVertexLine { line: 2 })
        );
        assert_eq!(
            parse_subdivided(facets, "1 1 1\n1 1 1\n2 1 2\n3 1 3\n"),
            Err(ParseError::DuplicateVertex { line: 2, vertex: 1 })
        );
        // missing sidecar data for vertex 3
        assert_eq!(
            parse_subdivided(facets, "1 1 1\n2 1 2\n"),
            Err(ParseError::Complex(ComplexError::MissingVertexData(3)))
        );
        // levels must match origin cardinalities
        assert_eq!(
            parse_subdivided(facets, "1 2 1\n2 1 2\n3 1 3\n"),
            Err(ParseError::Complex(ComplexError::LevelMismatch {
                vertex: 1,
                level: 2,
                cardinality: 1
            }))
        );
        // facets must be chains of origins
        let bad = parse_subdivided(facets, "1 1 5\n2 1 6\n3 1 7\n");
        assert!(matches!(
            bad,
            Err(ParseError::Complex(ComplexError::FacetNotAChain(_)))
        ));
    }

    #[test]
    fn sidecar_vertices_may_arrive_out_of_order() {
        let sd = simplex(1).barycentric_subdivision();
        let sidecar = "3 2 1 2\n1 1 1\n2 1 2\n";
        let parsed = parse_subdivided(&format_facets(sd.complex()), sidecar).unwrap();
        assert_eq!(parsed.levels(), sd.levels());
    }
}
