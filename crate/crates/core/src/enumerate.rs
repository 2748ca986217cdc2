//! Isomorph-free generation of all n-vertex graphs and the brute-force
//! extremal oracle ex(n, H, F).
//!
//! Generation proceeds vertex by vertex: every graph of the next order is
//! obtained from some smaller graph by attaching a new vertex, and one
//! canonical representative per isomorphism class survives a per-level
//! dedup on canonical forms. Pruning on a forbidden subgraph F is sound
//! because subgraph containment is preserved under vertex deletion: an
//! F-free graph never has an ancestor containing F, so cutting those
//! branches loses nothing.

use num_bigint::BigUint;
use serde::Serialize;

use crate::canon::canonical_form;
use crate::construct::{build, ConstructionSpec};
use crate::counting::{contains, CopyCounter};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::to_graph6;

/// Default order cap for the oracle; one step further needs an override.
pub const ENUM_DEFAULT_MAX_N: usize = 9;

/// Hard generation cap.
pub const ENUM_HARD_MAX_N: usize = 10;

fn check_cap(n: usize, allow_top: bool) -> Result<()> {
    let limit = if allow_top {
        ENUM_HARD_MAX_N
    } else {
        ENUM_DEFAULT_MAX_N
    };
    if n > limit {
        Err(Error::SizeCap {
            what: "graph enumeration order",
            limit,
            got: n,
        })
    } else {
        Ok(())
    }
}

/// Calls `f` once per isomorphism class of simple graphs on `n` vertices
/// (each as its canonical form), skipping graphs that contain `prune`.
/// Returns the number of classes visited.
pub fn for_each_graph<F: FnMut(&Graph)>(
    n: usize,
    prune: Option<&Graph>,
    mut f: F,
) -> Result<u64> {
    check_cap(n, true)?;
    let passes = |g: &Graph| prune.map_or(true, |p| !contains(p, g));
    if n == 0 {
        let g = Graph::empty(0)?;
        if passes(&g) {
            f(&g);
            return Ok(1);
        }
        return Ok(0);
    }
    let seed = Graph::empty(1)?;
    let mut frontier = if passes(&seed) { vec![seed] } else { vec![] };
    let mut emitted = 0u64;
    for level in 1..n {
        let mut seen = std::collections::HashSet::<u128>::new();
        let mut next = Vec::new();
        let last = level + 1 == n;
        for parent in &frontier {
            for subset in 0..1u64 << level {
                let mut child = parent.clone().disjoint_union(&Graph::empty(1)?)?;
                for v in crate::graph::bits(subset) {
                    child.add_edge(v, level);
                }
                if !passes(&child) {
                    continue;
                }
                let canon = canonical_form(&child);
                if seen.insert(canon.pack_key()) {
                    if last {
                        emitted += 1;
                        f(&canon);
                    } else {
                        next.push(canon);
                    }
                }
            }
        }
        frontier = next;
    }
    if n == 1 {
        for g in &frontier {
            emitted += 1;
            f(g);
        }
    }
    Ok(emitted)
}

/// Collects one representative per isomorphism class.
pub fn enumerate_graphs(n: usize, prune: Option<&Graph>) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for_each_graph(n, prune, |g| out.push(g.clone()))?;
    Ok(out)
}

/// Outcome of a brute-force extremal search: the exact maximum of
/// N(H, G) over F-free n-vertex graphs, every maximizer in canonical
/// graph6 form, and the number of classes examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub h_spec: String,
    pub f_spec: String,
    #[serde(serialize_with = "ser_count")]
    pub value: BigUint,
    pub extremal: Vec<String>,
    pub searched: u64,
}

fn ser_count<S: serde::Serializer>(
    c: &BigUint,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&c.to_string())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ExBruteOptions {
    /// Permit n = 10 (roughly 12 million classes when unpruned).
    pub allow_n10: bool,
}

/// ex(n, H, F) with the default order cap.
pub fn ex_brute(n: usize, h: &Graph, f: &Graph) -> Result<ExtremalResult> {
    ex_brute_with(n, h, f, ExBruteOptions::default())
}

pub fn ex_brute_with(
    n: usize,
    h: &Graph,
    f: &Graph,
    opts: ExBruteOptions,
) -> Result<ExtremalResult> {
    check_cap(n, opts.allow_n10)?;
    let counter = if h.n() == 0 || h.n() > n {
        None
    } else {
        Some(CopyCounter::new(h)?)
    };
    let mut value = if h.n() == 0 {
        BigUint::from(1u32) // the empty pattern has exactly one copy
    } else {
        BigUint::ZERO
    };
    let mut extremal: Vec<String> = Vec::new();
    let mut failure = None;
    let searched = for_each_graph(n, Some(f), |g| {
        if failure.is_some() {
            return;
        }
        let c = match &counter {
            Some(cc) => match cc.copies(g) {
                Ok(c) => c,
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            },
            None => value.clone(), // constant over all classes
        };
        if c > value {
            value = c;
            extremal.clear();
            extremal.push(to_graph6(g));
        } else if c == value {
            extremal.push(to_graph6(g));
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    extremal.sort_unstable();
    extremal.dedup();
    Ok(ExtremalResult {
        n,
        h_spec: to_graph6(h),
        f_spec: to_graph6(f),
        value,
        extremal,
        searched,
    })
}

/// ex(n, M_t, F) for every t = 1..=t_max from a single enumeration pass,
/// sharing one matching profile per class.
pub fn ex_brute_matchings(
    n: usize,
    f: &Graph,
    t_max: usize,
    opts: ExBruteOptions,
) -> Result<Vec<ExtremalResult>> {
    check_cap(n, opts.allow_n10)?;
    let mut value = vec![BigUint::ZERO; t_max + 1];
    let mut extremal: Vec<Vec<String>> = vec![Vec::new(); t_max + 1];
    let searched = for_each_graph(n, Some(f), |g| {
        let p = crate::counting::matching_profile(g);
        for t in 1..=t_max {
            let c = p.get(t);
            if c > value[t] {
                value[t] = c;
                extremal[t].clear();
                extremal[t].push(to_graph6(g));
            } else if c == value[t] {
                extremal[t].push(to_graph6(g));
            }
        }
    })?;
    Ok((1..=t_max)
        .map(|t| {
            let mut ext = std::mem::take(&mut extremal[t]);
            ext.sort_unstable();
            ext.dedup();
            ExtremalResult {
                n,
                h_spec: format!("M{t}"),
                f_spec: to_graph6(f),
                value: value[t].clone(),
                extremal: ext,
                searched,
            }
        })
        .collect())
}

/// Maximum of N(h, build(spec)) over a candidate family, each candidate
/// padded with isolated vertices up to `n`. Returns the value and the
/// index of the first maximizer.
pub fn ex_over_family(
    n: usize,
    h: &Graph,
    family: &[ConstructionSpec],
) -> Result<(BigUint, usize)> {
    if family.is_empty() {
        return Err(Error::InvalidParams("empty candidate family".into()));
    }
    let mut best: Option<(BigUint, usize)> = None;
    for (i, spec) in family.iter().enumerate() {
        let g = build(spec)?;
        if g.n() > n {
            return Err(Error::InvalidSpec(format!(
                "candidate {spec} has {} vertices, more than n = {n}",
                g.n()
            )));
        }
        let padded = g.disjoint_union(&Graph::empty(n - g.n())?)?;
        let c = crate::counting::count_copies(h, &padded)?;
        if best.as_ref().map_or(true, |(v, _)| c > *v) {
            best = Some((c, i));
        }
    }
    Ok(best.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::ConstructionSpec::*;

    #[test]
    fn class_counts_match_known_values() {
        // number of isomorphism classes of simple graphs on n vertices
        let known = [1u64, 1, 2, 4, 11, 34, 156, 1044];
        for (n, &expect) in known.iter().enumerate() {
            let mut seen = 0u64;
            let count = for_each_graph(n, None, |_| seen += 1).unwrap();
            assert_eq!(count, expect, "n = {n}");
            assert_eq!(seen, expect);
        }
    }

    #[test]
    fn enumerated_graphs_are_pairwise_nonisomorphic() {
        // independent check: order-4 classes have distinct degree/count data
        // and the canonical forms are distinct as labeled graphs
        let gs = enumerate_graphs(4, None).unwrap();
        assert_eq!(gs.len(), 11);
        for i in 0..gs.len() {
            for j in (i + 1)..gs.len() {
                assert_ne!(gs[i], gs[j]);
                // same canonical form would mean isomorphic
                assert_ne!(
                    canonical_form(&gs[i]).pack_key(),
                    canonical_form(&gs[j]).pack_key()
                );
            }
        }
    }

    #[test]
    fn pruned_enumeration_is_the_free_subset() {
        for spec in [Path(4), Star(3), Matching(2), Complete(3)] {
            let fgraph = build(&spec).unwrap();
            for n in 0..=6usize {
                let all = enumerate_graphs(n, None).unwrap();
                let free_by_filter: Vec<&Graph> =
                    all.iter().filter(|g| !contains(&fgraph, g)).collect();
                let pruned = enumerate_graphs(n, Some(&fgraph)).unwrap();
                assert_eq!(pruned.len(), free_by_filter.len(), "{spec} n={n}");
            }
        }
    }

    #[test]
    fn prune_by_single_edge_leaves_empty_graph() {
        let k2 = build(&Complete(2)).unwrap();
        let gs = enumerate_graphs(5, Some(&k2)).unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].edge_count(), 0);
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            for_each_graph(11, None, |_| ()),
            Err(Error::SizeCap { .. })
        ));
        let k2 = build(&Complete(2)).unwrap();
        let k3 = build(&Complete(3)).unwrap();
        assert!(ex_brute(10, &k2, &k3).is_err());
        assert!(ex_brute_with(
            10,
            &k2,
            &k3,
            ExBruteOptions { allow_n10: true }
        )
        .is_ok());
    }

    #[test]
    fn ex_brute_examples() {
        let m2 = build(&Matching(2)).unwrap();
        let k2p3 = build(&DisjointUnion(vec![Complete(2), Path(3)])).unwrap();
        let r = ex_brute(5, &m2, &k2p3).unwrap();
        assert_eq!(r.value, BigUint::from(3u32));
        // the unique extremal class is K_4 plus an isolated vertex
        let k4_iso = build(&DisjointUnion(vec![Complete(4), Complete(1)])).unwrap();
        assert_eq!(r.extremal, vec![crate::canon::canonical_graph6(&k4_iso)]);

        let k3 = build(&Complete(3)).unwrap();
        let m2g = build(&Matching(2)).unwrap();
        assert_eq!(ex_brute(5, &k3, &m2g).unwrap().value, BigUint::from(1u32));
    }

    #[test]
    fn ex_of_single_edge_is_edge_count_max() {
        // ex(n, M_1, F) is the classical extremal number; check via P_3
        let m1 = build(&Matching(1)).unwrap();
        let p3 = build(&Path(3)).unwrap();
        for n in 1..=7usize {
            let r = ex_brute(n, &m1, &p3).unwrap();
            assert_eq!(r.value, BigUint::from((n / 2) as u64));
        }
    }

    #[test]
    fn monotone_in_n() {
        let m2 = build(&Matching(2)).unwrap();
        let f = build(&DisjointUnion(vec![Path(3), Path(3)])).unwrap();
        let mut prev = BigUint::ZERO;
        for n in 4..=8usize {
            let r = ex_brute(n, &m2, &f).unwrap();
            assert!(r.value >= prev);
            prev = r.value;
        }
    }

    #[test]
    fn family_max_examples() {
        let m2 = build(&Matching(2)).unwrap();
        let family = vec![Complete(4), Matching(3)];
        let (v, idx) = ex_over_family(6, &m2, &family).unwrap();
        assert_eq!(v, BigUint::from(3u32));
        assert_eq!(idx, 0, "tie goes to the first candidate");

        let single = vec![Cycle(6)];
        let (v, idx) = ex_over_family(6, &m2, &single).unwrap();
        assert_eq!((v, idx), (BigUint::from(9u32), 0));

        assert!(ex_over_family(3, &m2, &[Complete(4)]).is_err());
    }

    #[test]
    fn matchings_batch_agrees_with_singles() {
        let f = build(&DisjointUnion(vec![Complete(2), Path(3)])).unwrap();
        let batch = ex_brute_matchings(6, &f, 3, ExBruteOptions::default()).unwrap();
        for (i, t) in (1..=3usize).enumerate() {
            let mt = build(&Matching(t)).unwrap();
            let single = ex_brute(6, &mt, &f).unwrap();
            assert_eq!(batch[i].value, single.value, "t = {t}");
            assert_eq!(batch[i].extremal, single.extremal);
            assert_eq!(batch[i].searched, single.searched);
        }
    }
}
