//! Brute-force reference computations, written independently of the fast paths they
//! check: explicit partial traces for every subset, stabilizer enumeration, and dense
//! Betti ranks.

use crate::error::Result;
use crate::graphstates::{graph_state_vector, Graph};
use crate::homology::FilteredComplex;
use crate::qstate::{linear_entropy, partial_trace, von_neumann_entropy, PureState};
use crate::scalar::Real;
use crate::subset::QubitSubset;
use crate::correlations::EntropyKind;

/// `|S_A|` by trying every `U ⊆ A` and testing `U ∪ Delta_N(U) ⊆ A` vertex by vertex.
pub fn supported_stabilizers(g: &Graph, a: &QubitSubset) -> u64 {
    let n = g.n_vertices();
    let members = a.indices();
    let mut count = 0;
    for pick in 0..1u32 << members.len() {
        let u: Vec<usize> = (0..members.len()).filter(|i| pick >> i & 1 == 1).map(|i| members[i]).collect();
        let inside = (0..n).all(|v| {
            let odd = u.iter().filter(|&&w| g.has_edge(v, w)).count() % 2 == 1;
            let in_support = odd || u.contains(&v);
            !in_support || a.contains(v)
        });
        if inside {
            count += 1;
        }
    }
    count
}

/// `1 - Tr(rho_A^2)` of the dense graph state.
pub fn dense_linear_entropy<T: Real>(g: &Graph, a: &QubitSubset) -> Result<T> {
    let state = graph_state_vector::<T>(g)?;
    Ok(linear_entropy(&partial_trace(&state, a)?))
}

/// Entropy of the explicit reduced matrix on `J` itself (no complement shortcut).
pub fn subset_entropy<T: Real>(state: &PureState<T>, j: &QubitSubset, kind: EntropyKind) -> Result<T> {
    let rho = partial_trace(state, j)?;
    match kind {
        EntropyKind::VonNeumann => von_neumann_entropy(&rho),
        EntropyKind::Tsallis2 => Ok(linear_entropy(&rho)),
    }
}

fn all_subsets<T: Real>(
    state: &PureState<T>,
    kind: EntropyKind,
) -> Result<Vec<(QubitSubset, T)>> {
    let n = state.n_qubits();
    (0..1u32 << n)
        .map(|m| {
            let j = QubitSubset::new(m, n)?;
            Ok((j, subset_entropy(state, &j, kind)?))
        })
        .collect()
}

/// `2^-n sum_J S(J)`.
pub fn ade<T: Real>(state: &PureState<T>) -> Result<T> {
    let total = all_subsets(state, EntropyKind::VonNeumann)?.into_iter().fold(T::zero(), |acc, (_, s)| acc + s);
    Ok(total / T::from_count(1 << state.n_qubits()))
}

/// `sum_J (-1)^(|J|-1) S(J)`.
pub fn iec_subset_sum<T: Real>(state: &PureState<T>, kind: EntropyKind) -> Result<T> {
    Ok(all_subsets(state, kind)?.into_iter().fold(T::zero(), |acc, (j, s)| {
        if j.len() % 2 == 1 {
            acc + s
        } else {
            acc - s
        }
    }))
}

/// `sum_{v in J} S(v) - S(J)` from explicit traces.
pub fn total_correlation<T: Real>(state: &PureState<T>, j: &QubitSubset, kind: EntropyKind) -> Result<T> {
    let n = state.n_qubits();
    let mut parts = T::zero();
    for v in j.indices() {
        parts = parts + subset_entropy(state, &QubitSubset::from_indices(&[v], n)?, kind)?;
    }
    Ok(parts - subset_entropy(state, j, kind)?)
}

/// `2^-n sum_{J ⊊ A} C(J)` with the von Neumann functional.
pub fn avg_total_correlation<T: Real>(state: &PureState<T>) -> Result<T> {
    let n = state.n_qubits();
    let mut total = T::zero();
    for m in 0..(1u32 << n) - 1 {
        total = total + total_correlation(state, &QubitSubset::new(m, n)?, EntropyKind::VonNeumann)?;
    }
    Ok(total / T::from_count(1 << n))
}

fn dense_rank(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers at `eps` by rank-nullity on dense 0/1 boundary matrices built from
/// the face list of the complex.
pub fn betti_numbers<T: Real>(complex: &FilteredComplex<T>, eps: T) -> Vec<usize> {
    let n = complex.n_vertices();
    let top = complex.max_dim();
    let faces: Vec<Vec<u32>> = (0..=top)
        .map(|k| {
            (1..1u32 << n)
                .filter(|&m| m.count_ones() as usize == k + 1)
                .filter(|&m| complex.birth(m).is_some_and(|b| b <= eps + complex.tolerance()))
                .collect()
        })
        .collect();
    let rank = |k: usize| -> usize {
        if k == 0 || k > top || faces[k].is_empty() || faces[k - 1].is_empty() {
            return 0;
        }
        let rows: Vec<Vec<u8>> = faces[k - 1]
            .iter()
            .map(|&r| faces[k].iter().map(|&c| u8::from(c & r == r && (c ^ r).count_ones() == 1)).collect())
            .collect();
        dense_rank(rows)
    };
    let ranks: Vec<usize> = (0..=top + 1).map(rank).collect();
    (0..=top).map(|k| faces[k].len() - ranks[k] - ranks[k + 1]).collect()
}
