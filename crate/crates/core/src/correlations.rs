//! Entropic correlation functionals over qubit subsets.
//!
//! These are the filtration functions of the entanglement complex: a face `J` enters
//! once the functional value `C(J)` is at most the filtration parameter.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{marginal_purity, partial_trace, von_neumann_entropy, PureState};
use crate::scalar::Real;
use crate::subset::{bits, submasks, QubitSubset};

/// Default absolute tolerance for closure checks and birth-value comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntropyKind {
    /// von Neumann entropy in bits.
    VonNeumann,
    /// Tsallis entropy at `q = 2`, i.e. the linear entropy `1 - Tr rho^2`.
    Tsallis2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CorrelationKind {
    /// `C(J) = sum_{v in J} S(v) - S(J)`.
    #[serde(rename = "vn-total")]
    VnTotal,
    /// `C2(J) = sum_{v in J} S2(v) - S2(J)`.
    #[serde(rename = "tsallis2-total")]
    Tsallis2Total,
}

impl CorrelationKind {
    pub fn entropy(self) -> EntropyKind {
        match self {
            CorrelationKind::VnTotal => EntropyKind::VonNeumann,
            CorrelationKind::Tsallis2Total => EntropyKind::Tsallis2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CorrelationKind::VnTotal => "vn-total",
            CorrelationKind::Tsallis2Total => "tsallis2-total",
        }
    }
}

impl fmt::Display for CorrelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorrelationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vn-total" => Ok(CorrelationKind::VnTotal),
            "tsallis2-total" => Ok(CorrelationKind::Tsallis2Total),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// A vertex-wise total-correlation functional with its comparison tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationFunctional<T> {
    pub kind: CorrelationKind,
    pub tolerance: T,
}

impl<T: Real> CorrelationFunctional<T> {
    pub fn new(kind: CorrelationKind) -> Self {
        Self { kind, tolerance: T::lit(DEFAULT_TOLERANCE) }
    }

    pub fn vn_total() -> Self {
        Self::new(CorrelationKind::VnTotal)
    }

    pub fn tsallis2_total() -> Self {
        Self::new(CorrelationKind::Tsallis2Total)
    }

    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// `C(J)` for every mask, indexed by mask.
    pub fn values(&self, state: &PureState<T>) -> Result<Vec<T>> {
        let table = MarginalTable::build(state, self.kind.entropy())?;
        Ok(table.correlations())
    }
}

/// Entropy of `rho_J`, evaluated on whichever of `J`, `J^C` is smaller.
pub fn subset_entropy<T: Real>(state: &PureState<T>, mask: u32, kind: EntropyKind) -> Result<T> {
    let n = state.n_qubits();
    let subset = QubitSubset::new(mask, n)?;
    match kind {
        EntropyKind::Tsallis2 => Ok(T::one() - marginal_purity(state, mask)),
        EntropyKind::VonNeumann => {
            let side = if subset.len() * 2 > n { subset.complement() } else { subset };
            von_neumann_entropy(&partial_trace(state, &side)?)
        }
    }
}

/// Entropies of all `2^n` marginals of one state, indexed by mask.
#[derive(Clone, Debug)]
pub struct MarginalTable<T> {
    n: usize,
    kind: EntropyKind,
    values: Vec<T>,
}

impl<T: Real> MarginalTable<T> {
    pub fn build(state: &PureState<T>, kind: EntropyKind) -> Result<Self> {
        let n = state.n_qubits();
        let values = (0..1u32 << n)
            .into_par_iter()
            .map(|mask| subset_entropy(state, mask, kind))
            .collect::<Result<Vec<T>>>()?;
        Ok(Self { n, kind, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> EntropyKind {
        self.kind
    }

    pub fn entropy(&self, mask: u32) -> T {
        self.values[mask as usize]
    }

    pub fn entropies(&self) -> &[T] {
        &self.values
    }

    /// Vertex-wise correlation `sum_{v in J} S(v) - S(J)`; zero for `|J| <= 1`.
    pub fn correlation(&self, mask: u32) -> T {
        if mask.count_ones() <= 1 {
            return T::zero();
        }
        bits(mask).map(|v| self.values[1 << v]).sum::<T>() - self.values[mask as usize]
    }

    pub fn correlations(&self) -> Vec<T> {
        (0..1u32 << self.n).map(|m| self.correlation(m)).collect()
    }
}

/// Lazily built marginal tables for one state; safe to share between threads.
pub struct Correlator<'a, T> {
    state: &'a PureState<T>,
    vn: OnceLock<MarginalTable<T>>,
    tsallis2: OnceLock<MarginalTable<T>>,
}

impl<'a, T: Real> Correlator<'a, T> {
    pub fn new(state: &'a PureState<T>) -> Self {
        Self { state, vn: OnceLock::new(), tsallis2: OnceLock::new() }
    }

    pub fn state(&self) -> &'a PureState<T> {
        self.state
    }

    pub fn table(&self, kind: EntropyKind) -> Result<&MarginalTable<T>> {
        let cell = match kind {
            EntropyKind::VonNeumann => &self.vn,
            EntropyKind::Tsallis2 => &self.tsallis2,
        };
        if let Some(t) = cell.get() {
            return Ok(t);
        }
        let built = MarginalTable::build(self.state, kind)?;
        Ok(cell.get_or_init(|| built))
    }

    pub fn correlation(&self, kind: CorrelationKind, subset: &QubitSubset) -> Result<T> {
        Ok(self.table(kind.entropy())?.correlation(subset.mask()))
    }
}

fn check_parts(n: usize, parts: &[QubitSubset]) -> Result<u32> {
    if parts.is_empty() {
        return Err(Error::Argument("total correlation needs at least one part".into()));
    }
    let mut union = 0u32;
    for p in parts {
        if p.n() != n {
            return Err(Error::Argument(format!("part {p} is over {} qubits, state has {n}", p.n())));
        }
        if union & p.mask() != 0 {
            return Err(Error::Argument(format!("part {p} overlaps an earlier part")));
        }
        union |= p.mask();
    }
    Ok(union)
}

/// `sum_i S(J_i) - S(union J_i)` for pairwise-disjoint parts, with entropies of `kind`.
pub fn total_correlation_with<T: Real>(
    state: &PureState<T>,
    parts: &[QubitSubset],
    kind: EntropyKind,
) -> Result<T> {
    let union = check_parts(state.n_qubits(), parts)?;
    let mut sum = T::zero();
    for p in parts {
        sum = sum + subset_entropy(state, p.mask(), kind)?;
    }
    Ok(sum - subset_entropy(state, union, kind)?)
}

/// von Neumann total correlation of disjoint parts, in bits.
pub fn total_correlation<T: Real>(state: &PureState<T>, parts: &[QubitSubset]) -> Result<T> {
    total_correlation_with(state, parts, EntropyKind::VonNeumann)
}

fn singleton_parts(j: &QubitSubset) -> Result<Vec<QubitSubset>> {
    if j.is_empty() {
        return Err(Error::Argument("correlation of the empty set is undefined".into()));
    }
    j.indices()
        .into_iter()
        .map(|v| QubitSubset::from_indices(&[v], j.n()))
        .collect()
}

/// `C(J) = sum_{v in J} S(v) - S(J)` with von Neumann entropies.
pub fn vertex_correlation<T: Real>(state: &PureState<T>, j: &QubitSubset) -> Result<T> {
    let parts = singleton_parts(j)?;
    if parts.len() == 1 {
        return Ok(T::zero());
    }
    total_correlation(state, &parts)
}

/// `C2(J) = sum_{v in J} S2(v) - S2(J)` with linear entropies.
pub fn deformed_correlation_2<T: Real>(state: &PureState<T>, j: &QubitSubset) -> Result<T> {
    let parts = singleton_parts(j)?;
    if parts.len() == 1 {
        return Ok(T::zero());
    }
    total_correlation_with(state, &parts, EntropyKind::Tsallis2)
}

/// All pairs `J ⊊ K`, `|K| <= max_size`, with `C(J) > C(K) + tol`.
pub fn check_downward_closure<T: Real>(
    functional: &CorrelationFunctional<T>,
    state: &PureState<T>,
    max_size: usize,
) -> Result<Vec<(QubitSubset, QubitSubset)>> {
    let n = state.n_qubits();
    if max_size > n {
        return Err(Error::Argument(format!("max_size {max_size} exceeds n={n}")));
    }
    let values = functional.values(state)?;
    let mut violations = Vec::new();
    for k in 0..1u32 << n {
        if k.count_ones() as usize > max_size {
            continue;
        }
        for j in submasks(k) {
            if j != k && values[j as usize] > values[k as usize] + functional.tolerance {
                violations.push((QubitSubset::new(j, n)?, QubitSubset::new(k, n)?));
            }
        }
    }
    Ok(violations)
}

/// Functional value on the whole register: the parameter at which the complex is full.
pub fn epsilon_max<T: Real>(state: &PureState<T>, functional: &CorrelationFunctional<T>) -> Result<T> {
    let table = MarginalTable::build(state, functional.kind.entropy())?;
    Ok(table.correlation(state.full_set().mask()))
}
