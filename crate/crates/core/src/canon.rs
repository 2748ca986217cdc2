//! Exact canonical labeling by equitable partition refinement plus
//! individualization backtracking.
//!
//! The canonical form of a graph is the relabeling whose adjacency-row
//! encoding is lexicographically maximal. Refinement splits cells by
//! neighbor counts toward every cell until stable; when a non-singleton
//! cell remains, each candidate vertex is individualized in turn and the
//! best leaf wins. Interchangeable vertices (equal rows up to the swapped
//! pair) are branched only once, which keeps highly symmetric graphs such
//! as empty graphs and clique unions cheap. Intended for the small orders
//! the enumeration works at; worst-case cost grows with the automorphism
//! group.

use std::collections::BTreeMap;

use crate::graph::{bit, Graph};
use crate::graph6::to_graph6;

type Partition = Vec<Vec<usize>>;

/// Relabels `g` into its canonical form.
pub fn canonical_form(g: &Graph) -> Graph {
    if g.n() <= 1 {
        return g.clone();
    }
    let cells: Partition = vec![(0..g.n()).collect()];
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(g, cells, &mut best);
    let (_, perm) = best.expect("at least one leaf");
    g.relabeled(&perm)
}

/// graph6 string of the canonical form.
pub fn canonical_graph6(g: &Graph) -> String {
    to_graph6(&canonical_form(g))
}

fn search(g: &Graph, mut cells: Partition, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    refine(g, &mut cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let mut perm = vec![0usize; g.n()];
            for (pos, cell) in cells.iter().enumerate() {
                perm[cell[0]] = pos;
            }
            let rows = relabeled_rows(g, &perm);
            if best.as_ref().map_or(true, |(b, _)| rows > *b) {
                *best = Some((rows, perm));
            }
        }
        Some(ci) => {
            let cell = cells[ci].clone();
            let mut branched: Vec<usize> = Vec::new();
            for &v in &cell {
                if branched.iter().any(|&u| interchangeable(g, u, v)) {
                    continue;
                }
                branched.push(v);
                let rest: Vec<usize> = cell.iter().copied().filter(|&x| x != v).collect();
                let mut child = cells.clone();
                child.splice(ci..=ci, [vec![v], rest]);
                search(g, child, best);
            }
        }
    }
}

/// Swapping `u` and `v` is an automorphism fixing everything else.
#[inline]
fn interchangeable(g: &Graph, u: usize, v: usize) -> bool {
    (g.neighbors_mask(u) & !bit(v)) == (g.neighbors_mask(v) & !bit(u))
}

/// Splits cells by neighbor counts toward each cell until equitable.
/// Fragments replace their cell in place, larger counts first; the order
/// depends only on counts, so the procedure commutes with relabeling.
fn refine(g: &Graph, cells: &mut Partition) {
    loop {
        let mut split = false;
        'pass: for t in 0..cells.len() {
            let tmask = cells[t].iter().fold(0u64, |m, &v| m | bit(v));
            for ci in 0..cells.len() {
                if cells[ci].len() <= 1 {
                    continue;
                }
                let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
                for &v in &cells[ci] {
                    let c = (g.neighbors_mask(v) & tmask).count_ones();
                    groups.entry(c).or_default().push(v);
                }
                if groups.len() > 1 {
                    let frags = groups.into_values().rev();
                    cells.splice(ci..=ci, frags);
                    split = true;
                    break 'pass;
                }
            }
        }
        if !split {
            return;
        }
    }
}

fn relabeled_rows(g: &Graph, perm: &[usize]) -> Vec<u64> {
    let mut rows = vec![0u64; g.n()];
    for u in 0..g.n() {
        for v in g.neighbors(u) {
            rows[perm[u]] |= bit(perm[v]);
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, ConstructionSpec::*};

    fn check_invariance(g: &Graph, perms: &[Vec<usize>]) {
        let c = canonical_form(g);
        for p in perms {
            assert_eq!(canonical_form(&g.relabeled(p)), c);
        }
    }

    #[test]
    fn invariant_under_relabeling() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)]).unwrap();
        check_invariance(
            &g,
            &[
                vec![4, 3, 2, 1, 0],
                vec![2, 0, 4, 1, 3],
                vec![1, 2, 3, 4, 0],
            ],
        );
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let p4 = build(&Path(4)).unwrap();
        let s3 = build(&Star(3)).unwrap();
        assert_eq!(p4.edge_count(), s3.edge_count());
        assert_ne!(canonical_form(&p4), canonical_form(&s3));
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        // would be factorial without the interchangeability skip
        let e = Graph::empty(40).unwrap();
        assert_eq!(canonical_form(&e), e);
        let k = build(&Complete(30)).unwrap();
        assert_eq!(canonical_form(&k).edge_count(), k.edge_count());
        // matchings only collapse within a pair; stay at enumeration scale
        let m = build(&Matching(5)).unwrap();
        assert_eq!(canonical_form(&m).edge_count(), 5);
    }

    #[test]
    fn split_graph_versions_coincide() {
        // H(n,2s-2,s-1) and H(n,2s-1,s-1) describe the same graph
        for (n, s) in [(7usize, 2usize), (9, 3), (10, 4)] {
            let g1 = build(&Split {
                n,
                k: 2 * s - 2,
                a: s - 1,
            })
            .unwrap();
            let g2 = build(&Split {
                n,
                k: 2 * s - 1,
                a: s - 1,
            })
            .unwrap();
            assert_eq!(canonical_form(&g1), canonical_form(&g2));
        }
    }

    #[test]
    fn join_matches_split_construction() {
        // K_{s-1} + empty(n-s+1) is H(n,2s-2,s-1)
        let s = 3;
        let n = 9;
        let j = build(&Join(
            Box::new(Complete(s - 1)),
            Box::new(Complement(Box::new(Complete(n - s + 1)))),
        ))
        .unwrap();
        let h = build(&Split {
            n,
            k: 2 * s - 2,
            a: s - 1,
        })
        .unwrap();
        assert_eq!(canonical_form(&j), canonical_form(&h));
    }
}
