//! Filtered simplicial complexes built from a correlation functional, and their
//! homology over F2: boundary operators, Betti numbers and curves, barcodes.
//!
//! A face `J` is present at scale `eps` when its birth is `<= eps`, so Betti curves are
//! right-continuous at every critical value.

pub mod export;

use std::cmp::Ordering;
use std::fmt;

use crate::correlations::{CorrelationFunctional, CorrelationKind, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::f2::F2Matrix;
use crate::qstate::PureState;
use crate::scalar::Real;
use crate::subset::{bits, QubitSubset};

/// A face of the full simplex on the qubits, `dim = |vertices| - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Simplex {
    vertices: QubitSubset,
}

impl Simplex {
    pub fn new(vertices: QubitSubset) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Argument("a simplex needs at least one vertex".into()));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> QubitSubset {
        self.vertices
    }

    pub fn mask(&self) -> u32 {
        self.vertices.mask()
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-one faces, empty for a vertex.
    pub fn facets(&self) -> impl Iterator<Item = u32> + '_ {
        let m = self.mask();
        bits(m).map(move |v| m & !(1 << v)).filter(|&f| f != 0)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.indices().iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "[{}]", vs.join(","))
    }
}

/// Lexicographic comparison of the sorted vertex lists of two masks.
fn lex_cmp(a: u32, b: u32) -> Ordering {
    bits(a).cmp(bits(b))
}

/// A face together with the scale at which it enters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Entry<T> {
    pub simplex: Simplex,
    pub birth: T,
}

/// The sublevel filtration of the full simplex on `n` vertices, truncated at `max_dim`.
///
/// Entries are ordered by birth, then dimension, then vertex list.
#[derive(Clone, Debug)]
pub struct FilteredComplex<T> {
    n: usize,
    max_dim: usize,
    label: String,
    tolerance: T,
    entries: Vec<Entry<T>>,
    /// Position in `entries` of each mask, `usize::MAX` when absent.
    position: Vec<usize>,
}

impl<T: Real> FilteredComplex<T> {
    /// Builds a complex from raw face values `value(mask)`.
    ///
    /// Vertices are born at 0; every other face at the max of its value and its facets'
    /// births. Births closer than `tolerance` are then merged onto one grid point.
    pub fn from_values(
        n: usize,
        max_dim: usize,
        label: impl Into<String>,
        tolerance: T,
        value: impl Fn(u32) -> T,
    ) -> Result<Self> {
        QubitSubset::full(n)?;
        if max_dim + 1 > n {
            return Err(Error::Argument(format!("max_dim {max_dim} exceeds n - 1 = {}", n - 1)));
        }
        let mut births = vec![T::nan(); 1 << n];
        let mut masks: Vec<u32> = (1..1u32 << n).filter(|m| m.count_ones() as usize <= max_dim + 1).collect();
        masks.sort_by_key(|m| m.count_ones());
        for &m in &masks {
            births[m as usize] = if m.count_ones() == 1 {
                T::zero()
            } else {
                bits(m).map(|v| births[(m & !(1 << v)) as usize]).fold(value(m), T::max)
            };
        }
        // snap clusters onto their smallest member; the map is monotone, so faces
        // still enter no earlier than their facets
        let mut sorted: Vec<T> = masks.iter().map(|&m| births[m as usize]).collect();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite births"));
        let mut grid: Vec<T> = Vec::new();
        for b in sorted {
            if grid.last().is_none_or(|&g| b - g >= tolerance) {
                grid.push(b);
            }
        }
        let snap = |b: T| {
            let i = grid.partition_point(|&g| g <= b);
            grid[i - 1]
        };
        let mut entries: Vec<Entry<T>> = masks
            .iter()
            .map(|&m| Entry {
                simplex: Simplex { vertices: QubitSubset::new(m, n).expect("mask in range") },
                birth: snap(births[m as usize]),
            })
            .collect();
        entries.sort_by(|a, b| {
            a.birth
                .partial_cmp(&b.birth)
                .expect("finite births")
                .then(a.simplex.dim().cmp(&b.simplex.dim()))
                .then(lex_cmp(a.simplex.mask(), b.simplex.mask()))
        });
        let mut position = vec![usize::MAX; 1 << n];
        for (i, e) in entries.iter().enumerate() {
            position[e.simplex.mask() as usize] = i;
        }
        Ok(Self { n, max_dim, label: label.into(), tolerance, entries, position })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Name of the functional the complex was built from.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    pub fn entries(&self) -> &[Entry<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn birth(&self, mask: u32) -> Option<T> {
        self.position
            .get(mask as usize)
            .filter(|&&p| p != usize::MAX)
            .map(|&p| self.entries[p].birth)
    }

    /// Sorted distinct birth values.
    pub fn critical_values(&self) -> Vec<T> {
        let mut grid: Vec<T> = self.entries.iter().map(|e| e.birth).collect();
        grid.dedup();
        grid
    }

    /// Largest birth; at and beyond it the complex is complete.
    pub fn final_value(&self) -> T {
        self.entries.last().map_or(T::zero(), |e| e.birth)
    }

    fn alive(&self, birth: T, eps: T) -> bool {
        birth <= eps + self.tolerance
    }

    /// Masks of the `k`-simplices present at `eps`, in filtration order.
    pub fn faces_at(&self, k: usize, eps: T) -> Vec<u32> {
        self.entries
            .iter()
            .filter(|e| e.simplex.dim() == k && self.alive(e.birth, eps))
            .map(|e| e.simplex.mask())
            .collect()
    }

    /// Number of `k`-simplices present at `eps`, for `k = 0..=max_dim`.
    pub fn face_counts(&self, eps: T) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim + 1];
        for e in self.entries.iter().filter(|e| self.alive(e.birth, eps)) {
            counts[e.simplex.dim()] += 1;
        }
        counts
    }
}

/// Builds the filtration of `state` under `functional`, up to faces of dimension `max_dim`.
pub fn build_filtration<T: Real>(
    state: &PureState<T>,
    functional: &CorrelationFunctional<T>,
    max_dim: usize,
) -> Result<FilteredComplex<T>> {
    let n = state.n_qubits();
    if max_dim + 1 > n {
        return Err(Error::Argument(format!("max_dim {max_dim} exceeds n - 1 = {}", n - 1)));
    }
    let values = functional.values(state)?;
    FilteredComplex::from_values(n, max_dim, functional.kind.as_str(), functional.tolerance, |m| {
        values[m as usize]
    })
}

/// Full-dimensional filtration with the default tolerance.
pub fn full_filtration<T: Real>(state: &PureState<T>, kind: CorrelationKind) -> Result<FilteredComplex<T>> {
    let functional = CorrelationFunctional::new(kind);
    build_filtration(state, &functional, state.n_qubits() - 1)
}

/// `d_k` at `eps`: rows are the `(k-1)`-simplices present, columns the `k`-simplices
/// present, both in filtration order.
pub fn boundary_matrix<T: Real>(complex: &FilteredComplex<T>, k: usize, eps: T) -> Result<F2Matrix> {
    if k == 0 || k > complex.max_dim {
        return Err(Error::Argument(format!("boundary degree {k} outside 1..={}", complex.max_dim)));
    }
    let rows = complex.faces_at(k - 1, eps);
    let cols = complex.faces_at(k, eps);
    let mut row_of = vec![usize::MAX; 1 << complex.n];
    for (i, &r) in rows.iter().enumerate() {
        row_of[r as usize] = i;
    }
    let mut m = F2Matrix::zeros(rows.len(), cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for v in bits(c) {
            m.set(row_of[(c & !(1 << v)) as usize], j, true);
        }
    }
    Ok(m)
}

/// `beta_0 ..= beta_max_dim` of the complex at `eps`.
pub fn betti_numbers<T: Real>(complex: &FilteredComplex<T>, eps: T) -> Vec<usize> {
    let counts = complex.face_counts(eps);
    let top = complex.max_dim;
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|k| {
            if k == 0 || k > top {
                0
            } else {
                boundary_matrix(complex, k, eps).expect("degree in range").rank()
            }
        })
        .collect();
    (0..=top).map(|k| counts[k] - ranks[k] - ranks[k + 1]).collect()
}

/// `beta_0 - 1`, the reduced zeroth Betti number (0 for an empty complex).
pub fn reduced_betti0(betti: &[usize]) -> usize {
    betti.first().map_or(0, |b| b.saturating_sub(1))
}

/// `sum_k (-1)^k beta_k(eps)`.
pub fn euler_characteristic<T: Real>(complex: &FilteredComplex<T>, eps: T) -> i64 {
    alternating(&betti_numbers(complex, eps))
}

/// `sum_k (-1)^k |X^(k)(eps)|`.
pub fn alternating_face_count<T: Real>(complex: &FilteredComplex<T>, eps: T) -> i64 {
    alternating(&complex.face_counts(eps))
}

fn alternating(xs: &[usize]) -> i64 {
    xs.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// `beta_k` as a step function of the scale.
#[derive(Clone, Debug, PartialEq)]
pub struct BettiCurve<T> {
    pub dim: usize,
    /// Sorted critical values; `values[i]` holds on `[breakpoints[i], breakpoints[i+1])`.
    pub breakpoints: Vec<T>,
    pub values: Vec<usize>,
    /// Breakpoints within this distance above a query still count as reached.
    pub tolerance: T,
}

impl<T: Real> BettiCurve<T> {
    /// Value at `eps`; 0 before the first breakpoint.
    pub fn at(&self, eps: T) -> usize {
        match self.breakpoints.partition_point(|&b| b <= eps + self.tolerance) {
            0 => 0,
            i => self.values[i - 1],
        }
    }

    pub fn is_non_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Incremental row-echelon basis over F2, for ranks of growing column sets.
struct XorBasis {
    words: usize,
    pivots: Vec<Option<Vec<u64>>>,
}

impl XorBasis {
    fn new(len: usize) -> Self {
        Self { words: len.div_ceil(64).max(1), pivots: vec![None; len] }
    }

    /// Adds `v`; true when it was independent of the vectors already present.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        loop {
            let Some(w) = (0..self.words).rev().find(|&w| v[w] != 0) else {
                return false;
            };
            let top = w * 64 + 63 - v[w].leading_zeros() as usize;
            match &self.pivots[top] {
                Some(p) => v.iter_mut().zip(p).for_each(|(a, b)| *a ^= b),
                None => {
                    self.pivots[top] = Some(v);
                    return true;
                }
            }
        }
    }
}

/// Betti curves for `k = 0..=max_dim` over the critical grid.
///
/// Ranks of each boundary operator are tracked by inserting columns in filtration order.
pub fn betti_curves<T: Real>(complex: &FilteredComplex<T>) -> Vec<BettiCurve<T>> {
    let grid = complex.critical_values();
    let top = complex.max_dim;
    let n = complex.n;
    // index of each mask among the faces of its own dimension
    let mut dim_index = vec![0usize; 1 << n];
    let mut dim_sizes = vec![0usize; top + 1];
    for m in 1..1u32 << n {
        let d = m.count_ones() as usize - 1;
        if d <= top {
            dim_index[m as usize] = dim_sizes[d];
            dim_sizes[d] += 1;
        }
    }
    let mut bases: Vec<XorBasis> = (0..=top).map(|k| XorBasis::new(if k == 0 { 0 } else { dim_sizes[k - 1] })).collect();
    let mut counts = vec![0usize; top + 1];
    let mut ranks = vec![0usize; top + 2];
    let mut curves: Vec<BettiCurve<T>> =
        (0..=top)
            .map(|dim| BettiCurve { dim, breakpoints: grid.clone(), values: Vec::new(), tolerance: complex.tolerance })
            .collect();
    let mut next = 0;
    for &g in &grid {
        while next < complex.entries.len() && complex.entries[next].birth <= g {
            let s = complex.entries[next].simplex;
            let k = s.dim();
            counts[k] += 1;
            if k > 0 {
                let basis = &mut bases[k];
                let mut col = vec![0u64; basis.words];
                for f in s.facets() {
                    let r = dim_index[f as usize];
                    col[r / 64] |= 1 << (r % 64);
                }
                if basis.insert(col) {
                    ranks[k] += 1;
                }
            }
            next += 1;
        }
        for k in 0..=top {
            curves[k].values.push(counts[k] - ranks[k] - ranks[k + 1]);
        }
    }
    curves
}

/// A persistence interval; `death = None` marks an essential class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    pub dim: usize,
    pub birth: T,
    pub death: Option<T>,
}

impl<T: Real> Interval<T> {
    /// Whether the class is alive at `eps`: `birth <= eps < death`.
    pub fn contains(&self, eps: T) -> bool {
        self.birth <= eps && self.death.is_none_or(|d| eps < d)
    }

    pub fn is_essential(&self) -> bool {
        self.death.is_none()
    }

    pub fn length(&self) -> T {
        self.death.map_or(T::infinity(), |d| d - self.birth)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Barcode<T> {
    pub intervals: Vec<Interval<T>>,
}

impl<T: Real> Barcode<T> {
    pub fn in_dim(&self, k: usize) -> impl Iterator<Item = &Interval<T>> {
        self.intervals.iter().filter(move |i| i.dim == k)
    }

    /// Number of `k`-dimensional intervals alive at `eps`.
    pub fn count_at(&self, k: usize, eps: T) -> usize {
        self.in_dim(k).filter(|i| i.contains(eps)).count()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.intervals.iter().map(|i| i.dim).max()
    }
}

/// Standard column reduction of the filtration boundary matrix over F2.
///
/// Zero-length intervals are dropped; positive simplices never paired are essential.
pub fn persistence_pairs<T: Real>(complex: &FilteredComplex<T>) -> Barcode<T> {
    let len = complex.entries.len();
    let words = len.div_ceil(64).max(1);
    let low = |col: &[u64]| -> Option<usize> {
        (0..words).rev().find(|&w| col[w] != 0).map(|w| w * 64 + 63 - col[w].leading_zeros() as usize)
    };
    let mut reduced: Vec<Option<Vec<u64>>> = vec![None; len];
    let mut owner_of_low: Vec<usize> = vec![usize::MAX; len];
    let mut paired = vec![false; len];
    let mut intervals = Vec::new();
    for j in 0..len {
        let s = complex.entries[j].simplex;
        let mut col = vec![0u64; words];
        for f in s.facets() {
            let i = complex.position[f as usize];
            col[i / 64] |= 1 << (i % 64);
        }
        while let Some(l) = low(&col) {
            match owner_of_low[l] {
                usize::MAX => break,
                other => {
                    let prev = reduced[other].as_ref().expect("stored column");
                    col.iter_mut().zip(prev).for_each(|(a, b)| *a ^= b);
                }
            }
        }
        if let Some(l) = low(&col) {
            owner_of_low[l] = j;
            paired[l] = true;
            paired[j] = true;
            let (birth, death) = (complex.entries[l].birth, complex.entries[j].birth);
            if death > birth {
                intervals.push(Interval { dim: s.dim() - 1, birth, death: Some(death) });
            }
            reduced[j] = Some(col);
        }
    }
    for (j, e) in complex.entries.iter().enumerate() {
        if !paired[j] {
            intervals.push(Interval { dim: e.simplex.dim(), birth: e.birth, death: None });
        }
    }
    intervals.sort_by(|a, b| {
        a.dim.cmp(&b.dim).then(a.birth.partial_cmp(&b.birth).expect("finite")).then(
            match (a.death, b.death) {
                (Some(x), Some(y)) => x.partial_cmp(&y).expect("finite"),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => Ordering::Equal,
            },
        )
    });
    Barcode { intervals }
}

/// Default comparison tolerance for externally built complexes.
pub fn default_tolerance<T: Real>() -> T {
    T::lit(DEFAULT_TOLERANCE)
}
