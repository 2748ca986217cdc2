//! Exact copy counting.
//!
//! `count_copies` counts unlabeled copies of H in G as injective
//! edge-preserving embeddings divided by |Aut(H)|; `contains` is the same
//! search with an early exit. `matching_profile` counts matchings of every
//! size at once through the standard deletion recurrence
//! `N(M_t, G) = N(M_t, G-e) + N(M_{t-1}, G-u-v)`, memoized per connected
//! component on remaining-vertex masks and combined by convolution.
//!
//! All public counts are arbitrary-precision; nothing wraps.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph};

/// Largest pattern order accepted by the automorphism search.
pub const MAX_PATTERN_VERTICES: usize = 12;

/// Exact matching counts `c_t = N(M_t, G)` for `t = 0..=nu(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingProfile {
    counts: Vec<BigUint>,
}

impl MatchingProfile {
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `N(M_t, G)`; zero beyond the matching number.
    pub fn get(&self, t: usize) -> BigUint {
        self.counts.get(t).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Matching number: the largest `t` with a nonzero count.
    pub fn nu(&self) -> usize {
        self.counts.len() - 1
    }
}

impl serde::Serialize for MatchingProfile {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.counts.iter().map(|c| c.to_string()))
    }
}

/// Counts matchings of every size exactly.
pub fn matching_profile(g: &Graph) -> MatchingProfile {
    let mut total = vec![BigUint::one()];
    for comp in g.components() {
        let local = g.induced(comp);
        let p = component_profile(&local);
        total = convolve(&total, &p);
    }
    while total.len() > 1 && total.last().map_or(false, |c| c.is_zero()) {
        total.pop();
    }
    MatchingProfile { counts: total }
}

fn component_profile(g: &Graph) -> Vec<BigUint> {
    let mut memo: HashMap<u64, Vec<BigUint>> = HashMap::new();
    profile_rec(g, g.vertex_mask(), &mut memo)
}

fn profile_rec(g: &Graph, mask: u64, memo: &mut HashMap<u64, Vec<BigUint>>) -> Vec<BigUint> {
    if mask == 0 {
        return vec![BigUint::one()];
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !bit(v);
    // v stays unmatched, or is matched to one of its live neighbors
    let mut acc = profile_rec(g, rest, memo);
    for u in bits(g.neighbors_mask(v) & rest) {
        let sub = profile_rec(g, rest & !bit(u), memo);
        if acc.len() < sub.len() + 1 {
            acc.resize(sub.len() + 1, BigUint::zero());
        }
        for (t, c) in sub.iter().enumerate() {
            acc[t + 1] += c;
        }
    }
    memo.insert(mask, acc.clone());
    acc
}

fn convolve(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// ----------------------------------------------------------------------
// Embedding engine
// ----------------------------------------------------------------------

/// Precomputed embedding plan for one pattern graph. Reusable across many
/// host graphs, which the brute-force extremal search depends on.
pub struct CopyCounter {
    hn: usize,
    /// for slot i, mask over earlier slots holding pattern neighbors
    prev: Vec<u64>,
    /// pattern degree of the vertex in each slot
    slot_deg: Vec<usize>,
    aut: u64,
}

impl CopyCounter {
    pub fn new(h: &Graph) -> Result<CopyCounter> {
        if h.n() > MAX_PATTERN_VERTICES {
            return Err(Error::SizeCap {
                what: "pattern vertex count",
                limit: MAX_PATTERN_VERTICES,
                got: h.n(),
            });
        }
        let order = embedding_order(h);
        let mut prev = vec![0u64; h.n()];
        let mut slot_deg = vec![0usize; h.n()];
        for (i, &v) in order.iter().enumerate() {
            slot_deg[i] = h.degree(v);
            for (j, &u) in order.iter().enumerate().take(i) {
                if h.has_edge(u, v) {
                    prev[i] |= bit(j);
                }
            }
        }
        let mut counter = CopyCounter {
            hn: h.n(),
            prev,
            slot_deg,
            aut: 1,
        };
        counter.aut = counter.monomorphisms(h).try_into().map_err(|_| {
            Error::InternalInconsistency("automorphism count exceeds u64".into())
        })?;
        Ok(counter)
    }

    pub fn pattern_order(&self) -> usize {
        self.hn
    }

    /// |Aut(H)|.
    pub fn automorphisms(&self) -> u64 {
        self.aut
    }

    /// Number of injective edge-preserving maps from the pattern into `g`.
    pub fn monomorphisms(&self, g: &Graph) -> u128 {
        if self.hn > g.n() {
            return 0;
        }
        let deg_ok = degree_masks(g, self.hn);
        let mut mapped = vec![0usize; self.hn];
        let mut count = 0u128;
        self.dfs(g, &deg_ok, 0, 0, &mut mapped, &mut count, false);
        count
    }

    /// Number of unlabeled copies of the pattern in `g`.
    pub fn copies(&self, g: &Graph) -> Result<BigUint> {
        let monos = self.monomorphisms(g);
        if monos % self.aut as u128 != 0 {
            return Err(Error::InternalInconsistency(format!(
                "{monos} embeddings not divisible by |Aut| = {}",
                self.aut
            )));
        }
        Ok(BigUint::from(monos / self.aut as u128))
    }

    /// Whether the pattern embeds into `g` at all.
    pub fn embeds_in(&self, g: &Graph) -> bool {
        if self.hn > g.n() {
            return false;
        }
        let deg_ok = degree_masks(g, self.hn);
        let mut mapped = vec![0usize; self.hn];
        let mut count = 0u128;
        self.dfs(g, &deg_ok, 0, 0, &mut mapped, &mut count, true)
    }

    fn dfs(
        &self,
        g: &Graph,
        deg_ok: &[u64],
        slot: usize,
        used: u64,
        mapped: &mut [usize],
        count: &mut u128,
        early: bool,
    ) -> bool {
        if slot == self.hn {
            *count += 1;
            return true;
        }
        let mut cand = g.vertex_mask() & !used & deg_ok[self.slot_deg[slot]];
        for p in bits(self.prev[slot]) {
            cand &= g.neighbors_mask(mapped[p]);
        }
        for v in bits(cand) {
            mapped[slot] = v;
            if self.dfs(g, deg_ok, slot + 1, used | bit(v), mapped, count, early) && early {
                return true;
            }
        }
        false
    }
}

/// deg_ok[d] = host vertices of degree at least d.
fn degree_masks(g: &Graph, max_deg: usize) -> Vec<u64> {
    let mut masks = vec![0u64; max_deg + 1];
    for v in 0..g.n() {
        let d = g.degree(v).min(max_deg);
        for m in masks.iter_mut().take(d + 1) {
            *m |= bit(v);
        }
    }
    masks
}

/// Mapping order: highest degree first, then most-constrained
/// (most already-placed neighbors), ties by degree then index.
fn embedding_order(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let mut best: Option<(usize, usize, usize)> = None; // (anchored, degree, v)
        for v in 0..n {
            if placed & bit(v) != 0 {
                continue;
            }
            let anchored = (h.neighbors_mask(v) & placed).count_ones() as usize;
            let replace = match best {
                None => true,
                Some((a, d, _)) => (anchored, h.degree(v)) > (a, d),
            };
            if replace {
                best = Some((anchored, h.degree(v), v));
            }
        }
        let (_, _, v) = best.unwrap();
        order.push(v);
        placed |= bit(v);
    }
    order
}

/// Number of unlabeled copies of `h` in `g`: embeddings over |Aut(h)|,
/// with the divisibility checked. Zero when `h` has more vertices than `g`.
pub fn count_copies(h: &Graph, g: &Graph) -> Result<BigUint> {
    if h.n() == 0 {
        return Ok(BigUint::one());
    }
    if h.n() > g.n() {
        return Ok(BigUint::zero());
    }
    CopyCounter::new(h)?.copies(g)
}

/// |Aut(h)| by backtracking embedding search of `h` into itself.
pub fn automorphism_count(h: &Graph) -> Result<u64> {
    Ok(CopyCounter::new(h)?.automorphisms())
}

/// Whether `g` has a (not necessarily induced) subgraph isomorphic to `h`.
pub fn contains(h: &Graph, g: &Graph) -> bool {
    if h.n() == 0 {
        return true;
    }
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return false;
    }
    // caps do not apply: the automorphism count is never taken here
    let order = embedding_order(h);
    let mut prev = vec![0u64; h.n()];
    let mut slot_deg = vec![0usize; h.n()];
    for (i, &v) in order.iter().enumerate() {
        slot_deg[i] = h.degree(v);
        for (j, &u) in order.iter().enumerate().take(i) {
            if h.has_edge(u, v) {
                prev[i] |= bit(j);
            }
        }
    }
    let probe = CopyCounter {
        hn: h.n(),
        prev,
        slot_deg,
        aut: 1,
    };
    probe.embeds_in(g)
}
