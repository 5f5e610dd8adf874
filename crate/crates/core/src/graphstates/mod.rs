//! Graph states: construction, stabilizer supports, and the marginal linear entropies
//! they determine.
//!
//! Vertex `v` of a graph is qubit `v` of its state. The stabilizer generator of `v` is
//! `K_v = X_v prod_{w in N(v)} Z_w`; a product `K_U` is identified by the vertex set `U`.

pub mod catalog;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex;

use crate::correlations::{deformed_correlation_2, EntropyKind, MarginalTable};
use crate::error::{Error, Result};
use crate::f2::F2Matrix;
use crate::qstate::{marginal_purity, PureState};
use crate::scalar::Real;
use crate::subset::{bits, full_mask, QubitSubset, MAX_QUBITS};

/// Simple undirected graph on at most [`MAX_QUBITS`] vertices.
///
/// `adjacency[v]` is the neighborhood bitmask `N(v)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adjacency: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::Size(format!("graph with {n} vertices outside 1..={MAX_QUBITS}")));
        }
        Ok(Self { n, adjacency: vec![0; n] })
    }

    /// Builds a graph from 0-based edges; repeated edges are ignored.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Argument(format!("edge ({u},{v}) out of range for n={}", self.n)));
        }
        if u == v {
            return Err(Error::Argument(format!("self-loop at vertex {u}")));
        }
        self.adjacency[u] |= 1 << v;
        self.adjacency[v] |= 1 << u;
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn neighborhood(&self, v: usize) -> u32 {
        self.adjacency[v]
    }

    pub fn adjacency(&self) -> &[u32] {
        &self.adjacency
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones() as usize
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| bits(self.adjacency[u] >> (u + 1)).map(move |d| (u, u + 1 + d)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let next = bits(frontier).fold(0u32, |acc, v| acc | self.adjacency[v]) & !seen;
            seen |= next;
            frontier = next;
        }
        seen == full_mask(self.n)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.n > 1 && self.adjacency.iter().any(|&a| a == 0)
    }

    /// `F2` adjacency matrix restricted to `rows x cols` (both given as vertex masks).
    pub fn adjacency_submatrix(&self, rows: u32, cols: u32) -> F2Matrix {
        let col_list: Vec<usize> = bits(cols).collect();
        let row_masks: Vec<u64> = bits(rows)
            .map(|r| {
                col_list
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| self.has_edge(r, c))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        F2Matrix::from_row_masks(&row_masks, col_list.len())
    }

    /// Parses the edge-list format: a header line `n <count>` followed by 1-indexed
    /// `u v` lines. Blank lines and `#` comments are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", count] => count
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad vertex count `{count}`: {e}")))?,
            _ => return Err(Error::Parse(format!("expected header `n <count>`, got `{header}`"))),
        };
        let mut g = Self::empty(n)?;
        for (lineno, line) in lines {
            let ends: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            match ends.as_slice() {
                [u, v] if *u >= 1 && *v >= 1 => g.add_edge(u - 1, v - 1)?,
                _ => return Err(Error::Parse(format!("line {}: expected `u v` (1-indexed)", lineno + 1))),
            }
        }
        Ok(g)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_edge_list(&std::fs::read_to_string(path)?)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    fn vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::Argument(format!("vertex {v} out of range for n={}", self.n)))
        } else {
            Ok(())
        }
    }

    fn subset(&self, s: &QubitSubset) -> Result<u32> {
        if s.n() != self.n {
            Err(Error::Argument(format!("subset over {} vertices, graph has {}", s.n(), self.n)))
        } else {
            Ok(s.mask())
        }
    }
}

/// `prod_{(u,v) in E} CZ(u,v) H^{\otimes n} |0..0>`.
pub fn graph_state_vector<T: Real>(g: &Graph) -> Result<PureState<T>> {
    let n = g.n;
    let amp = T::one() / T::from_count(1 << n).sqrt();
    let amps = (0..1u32 << n)
        .map(|x| {
            let twice_edges: u32 = bits(x).map(|v| (g.adjacency[v] & x).count_ones()).sum();
            let sign = if (twice_edges / 2) % 2 == 0 { amp } else { -amp };
            Complex::new(sign, T::zero())
        })
        .collect();
    PureState::new(n, amps)
}

/// `Delta_N(U)`: vertices adjacent to an odd number of members of `U`.
pub fn symmetric_neighborhood_difference(g: &Graph, u: &QubitSubset) -> Result<QubitSubset> {
    let mask = g.subset(u)?;
    let odd = (0..g.n).filter(|&v| (g.adjacency[v] & mask).count_ones() % 2 == 1);
    QubitSubset::from_indices(&odd.collect::<Vec<_>>(), g.n)
}

/// `supp(K_U) = U ∪ Delta_N(U)`.
pub fn stabilizer_support(g: &Graph, u: &QubitSubset) -> Result<QubitSubset> {
    let delta = symmetric_neighborhood_difference(g, u)?;
    QubitSubset::new(u.mask() | delta.mask(), g.n)
}

/// `|S_A|`: stabilizers `K_U` with support inside `A`.
///
/// `supp(K_U) ⊆ A` forces `U ⊆ A` and `Delta_N(U) ∩ A^C = ∅`, so the count is the size
/// of the kernel of the `A^C x A` adjacency block: `2^(|A| - rank)`.
pub fn count_supported_stabilizers(g: &Graph, a: &QubitSubset) -> Result<u64> {
    let mask = g.subset(a)?;
    let block = g.adjacency_submatrix(!mask & full_mask(g.n), mask);
    Ok(1u64 << (a.len() - block.rank()))
}

/// `S2(A) = 1 - |S_A| / 2^|A|`.
pub fn linear_entropy_from_support<T: Real>(g: &Graph, a: &QubitSubset) -> Result<T> {
    let count = count_supported_stabilizers(g, a)?;
    Ok(T::one() - T::from_u64(count).expect("count fits") / T::from_count(1usize << a.len()))
}

/// Which of `K_u`, `K_v`, `K_u K_v` are supported on `{u, v}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairMembership {
    pub ku_in: bool,
    pub kv_in: bool,
    pub kukv_in: bool,
}

impl PairMembership {
    /// `|S_{u,v}|`; the three flags are either all set or at most one is.
    pub fn supported_count(&self) -> u64 {
        match [self.ku_in, self.kv_in, self.kukv_in].iter().filter(|&&f| f).count() {
            3 => 4,
            k => 1 + k as u64,
        }
    }
}

pub fn pair_membership_conditions(g: &Graph, u: usize, v: usize) -> Result<PairMembership> {
    g.vertex(u)?;
    g.vertex(v)?;
    if u == v {
        return Err(Error::Argument("pair needs two distinct vertices".into()));
    }
    if g.has_isolated_vertex() {
        return Err(Error::Precondition("graph has an isolated vertex".into()));
    }
    let nu = g.adjacency[u] & !(1 << v);
    let nv = g.adjacency[v] & !(1 << u);
    Ok(PairMembership { ku_in: nu == 0, kv_in: nv == 0, kukv_in: nu == nv })
}

/// The three possible values of `C2(u, v)` on a connected graph state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// `C2 = 1`: the pair is an isolated edge, all of `S_{u,v}` is supported.
    Full,
    /// `C2 = 1/2`: exactly one non-trivial stabilizer is supported on the pair.
    Half,
    /// `C2 = 1/4`: only the identity is supported on the pair.
    Quarter,
}

impl PairClass {
    pub fn value(self) -> f64 {
        match self {
            PairClass::Full => 1.0,
            PairClass::Half => 0.5,
            PairClass::Quarter => 0.25,
        }
    }
}

/// `C2(u, v) = |S_{u,v}| / 4`, classified from the neighborhoods alone.
pub fn pair_correlation_class(g: &Graph, u: usize, v: usize) -> Result<PairClass> {
    if !g.is_connected() {
        return Err(Error::Precondition("pair classification needs a connected graph".into()));
    }
    Ok(match pair_membership_conditions(g, u, v)?.supported_count() {
        4 => PairClass::Full,
        2 => PairClass::Half,
        _ => PairClass::Quarter,
    })
}

pub fn is_complete(g: &Graph) -> bool {
    g.n >= 2 && (0..g.n).all(|v| g.degree(v) == g.n - 1)
}

pub fn is_star(g: &Graph) -> bool {
    g.n >= 2
        && (0..g.n).any(|c| {
            g.degree(c) == g.n - 1 && (0..g.n).all(|v| v == c || g.adjacency[v] == 1 << c)
        })
}

/// Whether the graph state is LU-equivalent to GHZ: star or complete graph.
pub fn is_lu_ghz_graph(g: &Graph) -> Result<bool> {
    if g.n < 2 || !g.is_connected() {
        return Err(Error::Precondition("needs a connected graph on at least 2 vertices".into()));
    }
    Ok(is_star(g) || is_complete(g))
}

/// Every two-qubit `C2` equals 1/2 within `tol`.
///
/// For stabilizer states this certifies LU-equivalence to GHZ. For general states it is
/// only a necessary signature. Registers with fewer than two qubits report `false`, and so
/// does a two-qubit Bell pair: its only pair is the whole register, with `C2 = 1`. The
/// pairwise signature characterizes GHZ from three qubits on.
pub fn is_lu_ghz_state<T: Real>(state: &PureState<T>, tol: T) -> Result<bool> {
    let n = state.n_qubits();
    if n < 2 {
        return Ok(false);
    }
    let half = T::lit(0.5);
    for u in 0..n {
        for v in u + 1..n {
            let c2 = deformed_correlation_2(state, &QubitSubset::from_indices(&[u, v], n)?)?;
            if (c2 - half).abs() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Toggles every edge among the neighbors of `v`.
pub fn local_complement(g: &Graph, v: usize) -> Result<Graph> {
    g.vertex(v)?;
    let nv = g.adjacency[v];
    let mut out = g.clone();
    for a in bits(nv) {
        out.adjacency[a] ^= nv & !(1 << a);
    }
    Ok(out)
}

/// Named graphs shipped with the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinGraph {
    /// 5-cycle; its graph state is the 5-qubit AME state.
    Pentagon5,
    /// 5-cycle plus a hub joined to every rim vertex; 6-qubit AME.
    Wheel6,
    Star(usize),
    Complete(usize),
    Path(usize),
    Cycle(usize),
    /// Bundled 8-vertex graphs whose states are exactly 1-, 2- and 3-uniform.
    KUniform8(usize),
}

impl BuiltinGraph {
    /// Parses `pentagon5`, `wheel6`, `kuniform8_<k>`, and `star`/`complete`/`path`/`cycle`
    /// with a size given either inline (`star5`, `star:5`) or through `size`.
    pub fn parse(name: &str, size: Option<usize>) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "pentagon5" | "pentagon" => return Ok(BuiltinGraph::Pentagon5),
            "wheel6" | "wheel" => return Ok(BuiltinGraph::Wheel6),
            "kuniform8_1" => return Ok(BuiltinGraph::KUniform8(1)),
            "kuniform8_2" => return Ok(BuiltinGraph::KUniform8(2)),
            "kuniform8_3" => return Ok(BuiltinGraph::KUniform8(3)),
            _ => {}
        }
        for (prefix, make) in [
            ("star", BuiltinGraph::Star as fn(usize) -> Self),
            ("complete", BuiltinGraph::Complete),
            ("path", BuiltinGraph::Path),
            ("cycle", BuiltinGraph::Cycle),
        ] {
            if let Some(rest) = lower.strip_prefix(prefix) {
                let rest = rest.trim_start_matches([':', '_', '(']).trim_end_matches(')');
                let n = if rest.is_empty() {
                    size.ok_or_else(|| Error::Argument(format!("`{prefix}` needs a vertex count")))?
                } else {
                    rest.parse().map_err(|_| Error::UnknownName(name.to_string()))?
                };
                return Ok(make(n));
            }
        }
        Err(Error::UnknownName(name.to_string()))
    }

    pub fn graph(self) -> Result<Graph> {
        builtin_graph(self)
    }
}

impl fmt::Display for BuiltinGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinGraph::Pentagon5 => write!(f, "pentagon5"),
            BuiltinGraph::Wheel6 => write!(f, "wheel6"),
            BuiltinGraph::Star(n) => write!(f, "star{n}"),
            BuiltinGraph::Complete(n) => write!(f, "complete{n}"),
            BuiltinGraph::Path(n) => write!(f, "path{n}"),
            BuiltinGraph::Cycle(n) => write!(f, "cycle{n}"),
            BuiltinGraph::KUniform8(k) => write!(f, "kuniform8_{k}"),
        }
    }
}

impl FromStr for BuiltinGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}

const KUNIFORM8: [&str; 3] = [
    include_str!("../../data/kuniform8_1.txt"),
    include_str!("../../data/kuniform8_2.txt"),
    include_str!("../../data/kuniform8_3.txt"),
];

pub fn builtin_graph(name: BuiltinGraph) -> Result<Graph> {
    let cycle = |n: usize| -> Result<Graph> {
        if n < 3 {
            return Err(Error::Size(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    };
    match name {
        BuiltinGraph::Pentagon5 => cycle(5),
        BuiltinGraph::Wheel6 => {
            let mut g = Graph::from_edges(6, &(0..5).map(|i| (i, (i + 1) % 5)).collect::<Vec<_>>())?;
            for i in 0..5 {
                g.add_edge(5, i)?;
            }
            Ok(g)
        }
        BuiltinGraph::Star(n) => Graph::from_edges(n, &(1..n).map(|i| (0, i)).collect::<Vec<_>>()),
        BuiltinGraph::Complete(n) => Graph::from_edges(
            n,
            &(0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect::<Vec<_>>(),
        ),
        BuiltinGraph::Path(n) => Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()),
        BuiltinGraph::Cycle(n) => cycle(n),
        BuiltinGraph::KUniform8(k) if (1..=3).contains(&k) => Graph::parse_edge_list(KUNIFORM8[k - 1]),
        BuiltinGraph::KUniform8(k) => Err(Error::UnknownName(format!("kuniform8_{k}"))),
    }
}

/// Largest `k <= n/2` such that every marginal on `j <= k` qubits has purity `2^-j`
/// within `tol`; `0` when some single qubit is not maximally mixed.
pub fn k_uniformity<T: Real>(state: &PureState<T>, tol: T) -> usize {
    let n = state.n_qubits();
    let mut k = 0;
    for j in 1..=n / 2 {
        let target = T::one() / T::from_count(1 << j);
        let all_mixed = (0..1u32 << n)
            .filter(|m| m.count_ones() as usize == j)
            .all(|m| (marginal_purity(state, m) - target).abs() <= tol);
        if !all_mixed {
            break;
        }
        k = j;
    }
    k
}

pub fn is_ame<T: Real>(state: &PureState<T>, tol: T) -> bool {
    k_uniformity(state, tol) == state.n_qubits() / 2
}

/// `k_uniformity` of the graph state, from stabilizer counts: `rho_A` is maximally mixed
/// exactly when only the identity is supported on `A`.
pub fn graph_k_uniformity(g: &Graph) -> usize {
    let n = g.n;
    let mut k = 0;
    for j in 1..=n / 2 {
        let ok = (0..1u32 << n).filter(|m| m.count_ones() as usize == j).all(|m| {
            g.adjacency_submatrix(!m & full_mask(n), m).rank() == j
        });
        if !ok {
            break;
        }
        k = j;
    }
    k
}

/// Linear entropies of every marginal of the graph state, indexed by mask, from supports.
pub fn support_entropy_table<T: Real>(g: &Graph) -> Vec<T> {
    (0..1u32 << g.n)
        .map(|m| {
            let a = QubitSubset::new(m, g.n).expect("mask within register");
            linear_entropy_from_support(g, &a).expect("subset matches graph")
        })
        .collect()
}

/// Dense linear entropies of every marginal of `state`, indexed by mask.
pub fn dense_entropy_table<T: Real>(state: &PureState<T>) -> Result<Vec<T>> {
    Ok(MarginalTable::build(state, EntropyKind::Tsallis2)?.entropies().to_vec())
}
