//! Named graph constructions and the combinators used to assemble them.
//!
//! Every construction has a documented deterministic labeling: blocks are
//! laid out left to right, and inside the split graph `H(n,k,a)` the order
//! is A, then C, then B. Tests may therefore reference vertices by index.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_VERTICES};

/// Description of a graph to build.
///
/// - `Turan { n, parts }` is the balanced complete multipartite graph
///   `T(n,k)`, parts laid out left to right, larger parts first.
/// - `Split { n, k, a }` is `H(n,k,a)`: a clique side A of order `a`,
///   a clique extension C of order `k-2a` (A ∪ C is complete), and an
///   independent side B of order `n-k+a` fully joined to A.
/// - `FaudreeSchelp { n, k, l }` is `G_{n,k,l}`: `l` disjoint copies of
///   `K_{k-1}` followed by the join of `K_{(k-2)/2}` with an independent
///   set on the remaining vertices.
/// - `CliqueUnion { a, k, b }` is `a` copies of `K_{k-1}` plus one `K_b`.
/// - `Friendship(n)` is one dominating vertex plus a maximum matching on
///   the other `n-1` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConstructionSpec {
    Complete(usize),
    Path(usize),
    /// Star with the given number of leaves.
    Star(usize),
    /// Matching with the given number of edges.
    Matching(usize),
    Cycle(usize),
    Turan { n: usize, parts: usize },
    Split { n: usize, k: usize, a: usize },
    FaudreeSchelp { n: usize, k: usize, l: usize },
    Friendship(usize),
    CliqueUnion { a: usize, k: usize, b: usize },
    DisjointUnion(Vec<ConstructionSpec>),
    Join(Box<ConstructionSpec>, Box<ConstructionSpec>),
    Complement(Box<ConstructionSpec>),
    PartialBlowup {
        base: Box<ConstructionSpec>,
        set: Vec<usize>,
        mult: usize,
    },
}

impl ConstructionSpec {
    /// Number of vertices the built graph will have.
    pub fn order(&self) -> usize {
        use ConstructionSpec::*;
        match self {
            Complete(n) | Path(n) | Cycle(n) | Friendship(n) => *n,
            Star(r) => r + 1,
            Matching(k) => 2 * k,
            Turan { n, .. } | Split { n, .. } | FaudreeSchelp { n, .. } => *n,
            CliqueUnion { a, k, b } => a * (k - 1) + b,
            DisjointUnion(parts) => parts.iter().map(|p| p.order()).sum(),
            Join(x, y) => x.order() + y.order(),
            Complement(x) => x.order(),
            PartialBlowup { base, set, mult } => {
                base.order() - set.len() + set.len() * mult
            }
        }
    }

    pub fn build(&self) -> Result<Graph> {
        build(self)
    }
}

impl std::fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use ConstructionSpec::*;
        match self {
            Complete(n) => write!(f, "K{n}"),
            Path(n) => write!(f, "P{n}"),
            Star(r) => write!(f, "S{r}"),
            Matching(k) => write!(f, "M{k}"),
            Cycle(n) => write!(f, "C{n}"),
            Friendship(n) => write!(f, "F{n}"),
            Turan { n, parts } => write!(f, "T({n},{parts})"),
            Split { n, k, a } => write!(f, "H({n},{k},{a})"),
            FaudreeSchelp { n, k, l } => write!(f, "G({n},{k},{l})"),
            CliqueUnion { a, k, b } => write!(f, "{a}K{}+K{b}", k - 1),
            DisjointUnion(parts) => {
                let strs: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", strs.join("+"))
            }
            Join(x, y) => write!(f, "join({x},{y})"),
            Complement(x) => write!(f, "complement({x})"),
            PartialBlowup { base, set, mult } => {
                write!(f, "blowup({base},{set:?},{mult})")
            }
        }
    }
}

fn cap(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::SizeCap {
            what: "construction vertex count",
            limit: MAX_VERTICES,
            got: n,
        })
    } else {
        Ok(())
    }
}

/// Builds the described graph with its deterministic labeling.
pub fn build(spec: &ConstructionSpec) -> Result<Graph> {
    use ConstructionSpec::*;
    cap(spec.order())?;
    match spec {
        Complete(n) => complete(*n),
        Path(n) => {
            let mut g = Graph::empty(*n)?;
            for v in 1..*n {
                g.add_edge(v - 1, v);
            }
            Ok(g)
        }
        Star(r) => {
            let mut g = Graph::empty(r + 1)?;
            for v in 1..=*r {
                g.add_edge(0, v);
            }
            Ok(g)
        }
        Matching(k) => {
            let mut g = Graph::empty(2 * k)?;
            for i in 0..*k {
                g.add_edge(2 * i, 2 * i + 1);
            }
            Ok(g)
        }
        Cycle(n) => {
            if *n < 3 {
                return Err(Error::InvalidSpec(format!("cycle needs n >= 3, got {n}")));
            }
            let mut g = Graph::empty(*n)?;
            for v in 0..*n {
                g.add_edge(v, (v + 1) % n);
            }
            Ok(g)
        }
        Turan { n, parts } => {
            if *parts == 0 {
                return Err(Error::InvalidSpec("Turan graph needs k >= 1".into()));
            }
            // first (n mod k) parts get the extra vertex
            let (q, r) = (n / parts, n % parts);
            let sizes = (0..*parts).map(|i| q + usize::from(i < r));
            let mut g = Graph::empty(*n)?;
            let mut start = 0;
            let mut bounds = Vec::new();
            for sz in sizes {
                bounds.push((start, start + sz));
                start += sz;
            }
            for (i, &(s1, e1)) in bounds.iter().enumerate() {
                for &(s2, e2) in &bounds[i + 1..] {
                    for u in s1..e1 {
                        for v in s2..e2 {
                            g.add_edge(u, v);
                        }
                    }
                }
            }
            Ok(g)
        }
        Split { n, k, a } => {
            if *k < 2 * a {
                return Err(Error::InvalidSpec(format!(
                    "split graph needs k >= 2a, got k={k}, a={a}"
                )));
            }
            if *n < *k {
                return Err(Error::InvalidSpec(format!(
                    "split graph needs n >= k, got n={n}, k={k}"
                )));
            }
            // A = 0..a, C = a..k-a, B = k-a..n
            let mut g = Graph::empty(*n)?;
            let core = k - a; // |A ∪ C|
            for u in 0..core {
                for v in (u + 1)..core {
                    g.add_edge(u, v);
                }
            }
            for u in 0..*a {
                for v in core..*n {
                    g.add_edge(u, v);
                }
            }
            Ok(g)
        }
        FaudreeSchelp { n, k, l } => {
            if k % 2 != 0 {
                return Err(Error::InvalidSpec(format!(
                    "this family needs k even, got k={k}"
                )));
            }
            let half = (k - 2) / 2;
            if *n < l * (k - 1) + half {
                return Err(Error::InvalidSpec(format!(
                    "needs n >= l(k-1)+(k-2)/2 = {}, got n={n}",
                    l * (k - 1) + half
                )));
            }
            let mut parts: Vec<ConstructionSpec> = vec![Complete(k - 1); *l];
            let rest = n - l * (k - 1) - half;
            parts.push(Join(
                Box::new(Complete(half)),
                Box::new(Complement(Box::new(Complete(rest)))),
            ));
            build(&DisjointUnion(parts))
        }
        Friendship(n) => {
            if *n == 0 {
                return Err(Error::InvalidSpec("friendship graph needs n >= 1".into()));
            }
            let mut g = Graph::empty(*n)?;
            for v in 1..*n {
                g.add_edge(0, v);
            }
            let mut v = 1;
            while v + 1 < *n {
                g.add_edge(v, v + 1);
                v += 2;
            }
            Ok(g)
        }
        CliqueUnion { a, k, b } => {
            if *k == 0 {
                return Err(Error::InvalidSpec("clique union needs k >= 1".into()));
            }
            if *b >= *k {
                return Err(Error::InvalidSpec(format!(
                    "clique union needs b < k, got b={b}, k={k}"
                )));
            }
            let mut parts: Vec<ConstructionSpec> = vec![Complete(k - 1); *a];
            parts.push(Complete(*b));
            build(&DisjointUnion(parts))
        }
        DisjointUnion(parts) => {
            let mut g = Graph::empty(0)?;
            for p in parts {
                g = g.disjoint_union(&build(p)?)?;
            }
            Ok(g)
        }
        Join(x, y) => build(x)?.join(&build(y)?),
        Complement(x) => Ok(build(x)?.complement()),
        PartialBlowup { base, set, mult } => {
            let g = build(base)?;
            let mut mask = 0u64;
            for &v in set {
                if v >= g.n() {
                    return Err(Error::InvalidSpec(format!(
                        "blowup vertex {v} out of range"
                    )));
                }
                mask |= bit(v);
            }
            g.partial_blowup(mask, *mult)
        }
    }
}

fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::ConstructionSpec::*;
    use super::*;

    #[test]
    fn turan_5_2_is_k23() {
        let g = build(&Turan { n: 5, parts: 2 }).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree_sequence(), vec![3, 3, 2, 2, 2]);
    }

    #[test]
    fn turan_edge_formula() {
        // |E(T(n,k))| = C(n,2) - r*C(q+1,2) - (k-r)*C(q,2), q = n/k, r = n%k
        for n in 0..=12usize {
            for k in 1..=5usize {
                let g = build(&Turan { n, parts: k }).unwrap();
                let (q, r) = (n / k, n % k);
                let inside = r * q * (q + 1) / 2 + (k - r) * q.saturating_sub(1) * q / 2;
                assert_eq!(g.edge_count(), n * n.saturating_sub(1) / 2 - inside);
            }
        }
    }

    #[test]
    fn split_7_5_2() {
        let g = build(&Split { n: 7, k: 5, a: 2 }).unwrap();
        // |A|=2, |C|=1, |B|=4: C(3,2) + 2*4 = 11
        assert_eq!(g.edge_count(), 11);
        assert_eq!(g.n(), 7);
        // A vertices see everything, C only the core, B only A
        assert_eq!(g.degree(0), 6);
        assert_eq!(g.degree(2), 2);
        assert_eq!(g.degree(3), 2);
    }

    #[test]
    fn friendship_7_has_9_edges() {
        let g = build(&Friendship(7)).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.degree(0), 6);
    }

    #[test]
    fn faudree_schelp_8_4_1() {
        // K_3 ∪ (K_1 + complement K_4) = K_3 ∪ K_{1,4}: 7 edges
        let g = build(&FaudreeSchelp { n: 8, k: 4, l: 1 }).unwrap();
        assert_eq!(g.edge_count(), 7);
        let mut deg = g.degree_sequence();
        deg.sort_unstable();
        assert_eq!(deg, vec![1, 1, 1, 1, 2, 2, 2, 4]);
    }

    #[test]
    fn faudree_schelp_rejects_odd_k() {
        assert!(matches!(
            build(&FaudreeSchelp { n: 8, k: 5, l: 1 }),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn clique_union_edge_formula() {
        for (a, k, b) in [(2usize, 4usize, 2usize), (1, 5, 3), (3, 3, 1), (0, 4, 2)] {
            let g = build(&CliqueUnion { a, k, b }).unwrap();
            let c2 = |m: usize| m.saturating_sub(1) * m / 2;
            assert_eq!(g.edge_count(), a * c2(k - 1) + c2(b));
        }
    }

    #[test]
    fn join_of_k1_and_complement_k4_is_star() {
        let g = build(&Join(
            Box::new(Complete(1)),
            Box::new(Complement(Box::new(Complete(4)))),
        ))
        .unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(0), 4);
    }

    #[test]
    fn degree_sum_even_for_all_specs() {
        let specs = vec![
            Complete(6),
            Path(5),
            Star(4),
            Matching(3),
            Cycle(7),
            Turan { n: 9, parts: 3 },
            Split { n: 9, k: 5, a: 2 },
            FaudreeSchelp { n: 10, k: 4, l: 2 },
            Friendship(9),
            CliqueUnion { a: 2, k: 4, b: 2 },
        ];
        for s in specs {
            let g = build(&s).unwrap();
            assert_eq!(g.degrees().iter().sum::<usize>() % 2, 0, "{s}");
        }
    }

    #[test]
    fn display_round_names() {
        assert_eq!(Complete(5).to_string(), "K5");
        assert_eq!(
            CliqueUnion { a: 2, k: 4, b: 2 }.to_string(),
            "2K3+K2"
        );
    }
}
