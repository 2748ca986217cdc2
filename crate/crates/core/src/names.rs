//! Tiny expression grammar for naming graphs on the command line.
//!
//! Vocabulary: `K<n>` complete, `P<n>` path, `C<n>` cycle, `S<r>` star
//! with `r` leaves, `M<t>` matching with `t` edges, `F<n>` friendship.
//! Terms combine with `+` or `∪`, both meaning disjoint union, and a
//! leading multiplier repeats a term (`2P3`). Parentheses group. Any term
//! outside the vocabulary is read as graph6, bare or with a `g6:` prefix;
//! the syntaxes cannot collide because digits never occur in graph6 text.

use crate::construct::{build, ConstructionSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::from_graph6;

/// Parses an expression into the graph it names.
pub fn parse_graph(input: &str) -> Result<Graph> {
    let terms = split_union(input)?;
    if terms.is_empty() {
        return Err(Error::InvalidSpec("empty graph expression".into()));
    }
    let mut acc = Graph::empty(0)?;
    for term in terms {
        let g = parse_term(term.trim())?;
        acc = acc.disjoint_union(&g)?;
    }
    Ok(acc)
}

/// Splits at top-level `+` / `∪`, respecting parentheses.
fn split_union(input: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in input.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1).ok_or_else(|| {
                    Error::InvalidSpec(format!("unbalanced ')' in {input:?}"))
                })?;
            }
            '+' | '∪' if depth == 0 => {
                parts.push(&input[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::InvalidSpec(format!("unbalanced '(' in {input:?}")));
    }
    parts.push(&input[start..]);
    Ok(parts)
}

fn parse_term(term: &str) -> Result<Graph> {
    if term.is_empty() {
        return Err(Error::InvalidSpec("empty term in graph expression".into()));
    }
    let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
    if digits > 0 {
        let mult: usize = term[..digits]
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("bad multiplier in {term:?}")))?;
        if mult == 0 {
            return Err(Error::InvalidSpec(format!("zero multiplier in {term:?}")));
        }
        let atom = parse_atom(term[digits..].trim())?;
        let mut acc = Graph::empty(0)?;
        for _ in 0..mult {
            acc = acc.disjoint_union(&atom)?;
        }
        return Ok(acc);
    }
    parse_atom(term)
}

fn parse_atom(atom: &str) -> Result<Graph> {
    if atom.is_empty() {
        return Err(Error::InvalidSpec("empty term in graph expression".into()));
    }
    if atom.starts_with('(') && atom.ends_with(')') {
        return parse_graph(&atom[1..atom.len() - 1]);
    }
    if let Some(g6) = atom.strip_prefix("g6:") {
        return from_graph6(g6);
    }
    if let Some(spec) = named_spec(atom) {
        return build(&spec?);
    }
    from_graph6(atom)
}

/// `K5`-style names: a family letter followed by digits.
fn named_spec(atom: &str) -> Option<Result<ConstructionSpec>> {
    let mut chars = atom.chars();
    let letter = chars.next()?;
    let rest = chars.as_str();
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: usize = match rest.parse() {
        Ok(n) => n,
        Err(_) => {
            return Some(Err(Error::InvalidSpec(format!(
                "parameter out of range in {atom:?}"
            ))))
        }
    };
    let spec = match letter {
        'K' => ConstructionSpec::Complete(n),
        'P' => ConstructionSpec::Path(n),
        'C' => ConstructionSpec::Cycle(n),
        'S' => ConstructionSpec::Star(n),
        'M' => ConstructionSpec::Matching(n),
        'F' => ConstructionSpec::Friendship(n),
        _ => return None,
    };
    Some(Ok(spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        assert_eq!(parse_graph("K5").unwrap().edge_count(), 10);
        assert_eq!(parse_graph("P4").unwrap().edge_count(), 3);
        assert_eq!(parse_graph("C9").unwrap().edge_count(), 9);
        assert_eq!(parse_graph("S3").unwrap().n(), 4);
        assert_eq!(parse_graph("M2").unwrap().n(), 4);
        assert_eq!(parse_graph("F7").unwrap().edge_count(), 9);
    }

    #[test]
    fn unions_and_multipliers() {
        let g = parse_graph("K2+P3").unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 3));
        let g = parse_graph("2P3").unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 4));
        let g = parse_graph("3K3").unwrap();
        assert_eq!((g.n(), g.edge_count()), (9, 9));
        let g = parse_graph("K4 ∪ K1").unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 6));
        let g = parse_graph("2(K2+K1)").unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 2));
    }

    #[test]
    fn graph6_terms() {
        let g = parse_graph("DQc").unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 4));
        let g = parse_graph("g6:Bw").unwrap();
        assert_eq!(g.edge_count(), 3);
        let g = parse_graph("Bw+K2").unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 4));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_graph("").is_err());
        assert!(parse_graph("K").is_err());
        assert!(parse_graph("C2").is_err()); // cycles need three vertices
        assert!(parse_graph("K3+").is_err());
        assert!(parse_graph("(K3").is_err());
        assert!(parse_graph("X5").is_err()); // not a name, invalid graph6
        assert!(parse_graph("0P3").is_err());
    }
}
