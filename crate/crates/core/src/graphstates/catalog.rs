//! Enumeration of connected graphs up to isomorphism, and seeded random samples.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::subset::bits;

/// Largest vertex count enumerated exhaustively.
pub const MAX_CATALOG_VERTICES: usize = 8;

/// Edge code of the graph under relabeling `perm` (old vertex `v` becomes `perm[v]`).
fn edge_code(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n_vertices();
    let mut code = 0u64;
    for (u, v) in g.edges() {
        let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
        // index of pair (a, b) in a fixed triangular order
        let idx = b * (b - 1) / 2 + a;
        code |= 1 << idx;
    }
    debug_assert!(n * (n - 1) / 2 <= 64);
    code
}

/// Canonical edge code: minimum over relabelings that keep vertices sorted by degree.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n_vertices();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    // degree classes as ranges of positions in `order`
    let mut classes = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || g.degree(order[i]) != g.degree(order[start]) {
            classes.push((start, i));
            start = i;
        }
    }
    let mut best = u64::MAX;
    let mut perm = vec![0; n];
    permute_classes(g, &mut order, &classes, 0, &mut perm, &mut best);
    best
}

fn permute_classes(
    g: &Graph,
    order: &mut Vec<usize>,
    classes: &[(usize, usize)],
    ci: usize,
    perm: &mut Vec<usize>,
    best: &mut u64,
) {
    if ci == classes.len() {
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = pos;
        }
        *best = (*best).min(edge_code(g, perm));
        return;
    }
    let (lo, hi) = classes[ci];
    heap_permute(g, order, classes, ci, lo, hi, hi - lo, perm, best);
}

#[allow(clippy::too_many_arguments)]
fn heap_permute(
    g: &Graph,
    order: &mut Vec<usize>,
    classes: &[(usize, usize)],
    ci: usize,
    lo: usize,
    hi: usize,
    k: usize,
    perm: &mut Vec<usize>,
    best: &mut u64,
) {
    if k <= 1 {
        permute_classes(g, order, classes, ci + 1, perm, best);
        return;
    }
    for i in 0..k {
        heap_permute(g, order, classes, ci, lo, hi, k - 1, perm, best);
        if k % 2 == 0 {
            order.swap(lo + i, lo + k - 1);
        } else {
            order.swap(lo, lo + k - 1);
        }
    }
}

fn from_code(n: usize, code: u64) -> Graph {
    let mut g = Graph::empty(n).expect("catalog size");
    for b in 1..n {
        for a in 0..b {
            if code >> (b * (b - 1) / 2 + a) & 1 == 1 {
                g.add_edge(a, b).expect("valid pair");
            }
        }
    }
    g
}

/// All connected graphs on `n` vertices, one per isomorphism class, in canonical-code order.
///
/// Counts for n = 1..7: 1, 1, 2, 6, 21, 112, 853.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_CATALOG_VERTICES {
        return Err(Error::Size(format!(
            "exhaustive catalog covers 1..={MAX_CATALOG_VERTICES} vertices, got {n}"
        )));
    }
    let mut codes: BTreeSet<u64> = BTreeSet::new();
    codes.insert(0);
    for m in 2..=n {
        // every connected graph has a non-cut vertex, so it arises from a connected
        // graph on m-1 vertices plus a vertex with a nonempty neighborhood
        let mut next = BTreeSet::new();
        for &code in &codes {
            let base = from_code(m - 1, code);
            for nbrs in 1u32..1 << (m - 1) {
                let mut g = Graph::empty(m).expect("catalog size");
                for (u, v) in base.edges() {
                    g.add_edge(u, v).expect("valid edge");
                }
                for w in bits(nbrs) {
                    g.add_edge(m - 1, w).expect("valid edge");
                }
                next.insert(canonical_code(&g));
            }
        }
        codes = next;
    }
    Ok(codes.into_iter().map(|c| from_code(n, c)).collect())
}

/// `count` connected graphs drawn from `G(n, 1/2)` by rejection, reproducible from `seed`.
pub fn random_connected_graphs(n: usize, count: usize, seed: u64) -> Result<Vec<Graph>> {
    if n < 2 {
        return Err(Error::Size(format!("random connected graphs need n >= 2, got {n}")));
    }
    Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(0.5) {
                    g.add_edge(u, v)?;
                }
            }
        }
        if g.is_connected() {
            out.push(g);
        }
    }
    Ok(out)
}
