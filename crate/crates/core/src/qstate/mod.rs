//! Dense pure states of small qubit registers, their marginals, and entropies.
//!
//! Basis index bit `i` is the value of qubit `i` (little-endian). Every subset mask in
//! the crate uses the same convention.

mod density;
pub mod eigen;

use std::path::Path;

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

pub use density::{
    eigvals_hermitian, linear_entropy, tsallis_entropy, von_neumann_entropy, DensityMatrix,
};

use crate::error::{Error, Result};
use crate::scalar::{tol, Real};
use crate::subset::{bits, QubitSubset, MAX_QUBITS};

/// Numeric thresholds shared by the state and entropy routines.
#[derive(Clone, Copy, Debug)]
pub struct NumericConfig {
    /// Eigenvalues below this are treated as exact zeros (`0 log 0 := 0`).
    pub eigenvalue_cutoff: f64,
    pub state_norm_tol: f64,
    /// Normalization slack accepted when loading a state file.
    pub file_norm_tol: f64,
    pub hermitian_tol: f64,
    pub trace_tol: f64,
    pub psd_tol: f64,
    pub jacobi_offdiag_tol: f64,
    pub jacobi_max_sweeps: usize,
}

pub const NUMERIC: NumericConfig = NumericConfig {
    eigenvalue_cutoff: 1e-12,
    state_norm_tol: 1e-12,
    file_norm_tol: 1e-9,
    hermitian_tol: 1e-10,
    trace_tol: 1e-10,
    psd_tol: 1e-10,
    jacobi_offdiag_tol: 1e-12,
    jacobi_max_sweeps: 100,
};

/// A normalized pure state `|psi>` on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T> {
    n: usize,
    amplitudes: Vec<Complex<T>>,
}

fn check_qubits(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_QUBITS {
        Err(Error::Size(format!("n={n} outside {min}..={MAX_QUBITS}")))
    } else {
        Ok(())
    }
}

impl<T: Real> PureState<T> {
    /// Wraps an amplitude vector, checking its length and unit norm.
    pub fn new(n: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        check_qubits(n, 1)?;
        if amplitudes.len() != 1 << n {
            return Err(Error::Shape(format!(
                "{} amplitudes for {n} qubits, expected {}",
                amplitudes.len(),
                1usize << n
            )));
        }
        let norm: T = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - T::one()).abs() > tol::<T>(NUMERIC.state_norm_tol) {
            return Err(Error::Argument(format!("state norm^2 is {norm}, expected 1")));
        }
        Ok(Self { n, amplitudes })
    }

    /// Normalizes `amplitudes` before wrapping them.
    pub fn normalized(n: usize, mut amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
        if norm <= T::zero() {
            return Err(Error::Argument("zero vector cannot be normalized".into()));
        }
        for a in &mut amplitudes {
            *a = *a / norm;
        }
        Self::new(n, amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn full_set(&self) -> QubitSubset {
        QubitSubset::full(self.n).expect("n within cap")
    }

    pub fn subset(&self, mask: u32) -> Result<QubitSubset> {
        QubitSubset::new(mask, self.n)
    }

    /// Same state with qubit `i` moved to position `perm[i]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n || {
            let mut seen = vec![false; self.n];
            perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true))
        } {
            return Err(Error::Argument("not a permutation of the register".into()));
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.amplitudes.len()];
        for (x, amp) in self.amplitudes.iter().enumerate() {
            let y = bits(x as u32).fold(0usize, |acc, i| acc | 1 << perm[i]);
            out[y] = *amp;
        }
        Ok(Self { n: self.n, amplitudes: out })
    }

    pub fn to_file(&self) -> StateFile {
        StateFile {
            n: self.n,
            amplitudes: self
                .amplitudes
                .iter()
                .map(|a| [a.re.to_f64_lossy(), a.im.to_f64_lossy()])
                .collect(),
        }
    }

    /// Parses the JSON state format, renormalizing after a 1e-9 normalization check.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)?;
        file.into_state()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("state serializes")
    }
}

/// On-disk state: `{"n": int, "amplitudes": [[re, im], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn into_state<T: Real>(self) -> Result<PureState<T>> {
        check_qubits(self.n, 1)?;
        if self.amplitudes.len() != 1 << self.n {
            return Err(Error::Shape(format!(
                "state file has {} amplitudes for n={}",
                self.amplitudes.len(),
                self.n
            )));
        }
        let norm: f64 = self.amplitudes.iter().map(|[re, im]| re * re + im * im).sum();
        if (norm - 1.0).abs() > NUMERIC.file_norm_tol {
            return Err(Error::Argument(format!("state file norm^2 is {norm}, expected 1")));
        }
        let amps = self
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex::new(T::lit(re), T::lit(im)))
            .collect();
        PureState::normalized(self.n, amps)
    }
}

/// `(|0..0> + |1..1>)/sqrt(2)`.
pub fn make_ghz<T: Real>(n: usize) -> Result<PureState<T>> {
    check_qubits(n, 1)?;
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
    let a = Complex::new(T::lit(0.5).sqrt(), T::zero());
    amps[0] = a;
    amps[(1 << n) - 1] = a;
    PureState::new(n, amps)
}

/// Equal superposition of the `n` weight-one basis states.
pub fn make_w<T: Real>(n: usize) -> Result<PureState<T>> {
    check_qubits(n, 2)?;
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
    let a = Complex::new(T::one() / T::from_count(n).sqrt(), T::zero());
    for i in 0..n {
        amps[1 << i] = a;
    }
    PureState::new(n, amps)
}

/// `|0>^{\otimes n}`.
pub fn make_product<T: Real>(n: usize) -> Result<PureState<T>> {
    check_qubits(n, 1)?;
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
    amps[0] = Complex::new(T::one(), T::zero());
    PureState::new(n, amps)
}

/// Haar-distributed state from i.i.d. standard complex Gaussian amplitudes.
///
/// The stream is ChaCha8 seeded with `seed_from_u64(seed)`; amplitude `x` takes the
/// real then imaginary draw, in index order, before normalization.
pub fn random_pure<T: Real>(n: usize, seed: u64) -> Result<PureState<T>> {
    check_qubits(n, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<(f64, f64)> = (0..1usize << n)
        .map(|_| (StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
        .collect();
    let norm = raw.iter().map(|(re, im)| re * re + im * im).sum::<f64>().sqrt();
    let amps = raw
        .into_iter()
        .map(|(re, im)| Complex::new(T::lit(re / norm), T::lit(im / norm)))
        .collect();
    PureState::normalized(n, amps)
}

/// Reduced state `rho_keep = Tr_{keep^C} |psi><psi|`.
///
/// Row/column index bit `j` of the result is the `j`-th smallest qubit of `keep`.
pub fn partial_trace<T: Real>(state: &PureState<T>, keep: &QubitSubset) -> Result<DensityMatrix<T>> {
    if keep.n() != state.n {
        return Err(Error::Argument(format!(
            "subset over {} qubits applied to a {}-qubit state",
            keep.n(),
            state.n
        )));
    }
    let kept = scatter_table(keep.mask());
    let traced = scatter_table(keep.complement().mask());
    let dim = kept.len();
    let zero = Complex::new(T::zero(), T::zero());
    let mut data = vec![zero; dim * dim];
    let psi = &state.amplitudes;
    for a in 0..dim {
        for b in a..dim {
            let mut acc = zero;
            for &r in &traced {
                acc = acc + psi[kept[a] | r] * psi[kept[b] | r].conj();
            }
            data[a * dim + b] = acc;
            data[b * dim + a] = acc.conj();
        }
        data[a * dim + a].im = T::zero();
    }
    Ok(DensityMatrix::from_raw(dim, data))
}

/// Full-register basis offsets for each compact index over the qubits of `mask`.
fn scatter_table(mask: u32) -> Vec<usize> {
    let qubits: Vec<usize> = bits(mask).collect();
    (0..1usize << qubits.len())
        .map(|c| {
            qubits
                .iter()
                .enumerate()
                .filter(|(j, _)| c >> j & 1 == 1)
                .fold(0usize, |acc, (_, &q)| acc | 1 << q)
        })
        .collect()
}

/// `Tr(rho_J^2)` straight from the amplitudes, without forming `rho_J`.
///
/// Uses the smaller side of the bipartition, so the cost is `2^(n + min(|J|, |J^C|))`.
pub(crate) fn marginal_purity<T: Real>(state: &PureState<T>, mask: u32) -> T {
    let full = crate::subset::full_mask(state.n);
    let mask = if (mask.count_ones() as usize) * 2 > state.n { !mask & full } else { mask };
    let kept = scatter_table(mask);
    let traced = scatter_table(!mask & full);
    let psi = &state.amplitudes;
    let mut total = T::zero();
    for a in 0..kept.len() {
        for b in 0..kept.len() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for &r in &traced {
                acc = acc + psi[kept[a] | r] * psi[kept[b] | r].conj();
            }
            total = total + acc.norm_sqr();
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz_amplitudes() {
        let s = make_ghz::<f64>(3).unwrap();
        let a = s.amplitudes();
        assert!((a[0].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((a[7].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(a[1..7].iter().all(|z| z.norm() == 0.0));
        // n = 1 degenerates to |+>
        let one = make_ghz::<f64>(1).unwrap();
        assert_eq!(one.amplitudes().len(), 2);
        assert!(make_ghz::<f64>(0).is_err());
        assert!(make_ghz::<f64>(13).is_err());
    }

    #[test]
    fn w_amplitudes() {
        let s = make_w::<f64>(3).unwrap();
        for (i, a) in s.amplitudes().iter().enumerate() {
            let expected = if [1, 2, 4].contains(&i) { 1.0 / 3f64.sqrt() } else { 0.0 };
            assert!((a.re - expected).abs() < 1e-15);
        }
        let two = make_w::<f64>(2).unwrap();
        assert!((two.amplitudes()[1].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(make_w::<f64>(1).is_err());
    }

    #[test]
    fn random_is_deterministic_and_normalized() {
        let a = random_pure::<f64>(3, 7).unwrap();
        let b = random_pure::<f64>(3, 7).unwrap();
        assert_eq!(a, b);
        let norm: f64 = a.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert_ne!(a, random_pure::<f64>(3, 8).unwrap());
    }

    #[test]
    fn ghz_pair_marginal_is_classical_mixture() {
        let s = make_ghz::<f64>(4).unwrap();
        let rho = partial_trace(&s, &QubitSubset::from_indices(&[1, 3], 4).unwrap()).unwrap();
        let d = rho.entries();
        for (i, z) in d.iter().enumerate() {
            let expected = if i == 0 || i == 15 { 0.5 } else { 0.0 };
            assert!((z.re - expected).abs() < 1e-15 && z.im.abs() < 1e-15);
        }
    }

    #[test]
    fn w3_single_qubit_marginal() {
        let s = make_w::<f64>(3).unwrap();
        let rho = partial_trace(&s, &QubitSubset::from_indices(&[0], 3).unwrap()).unwrap();
        let d = rho.entries();
        assert!((d[0].re - 2.0 / 3.0).abs() < 1e-15);
        assert!((d[3].re - 1.0 / 3.0).abs() < 1e-15);
        assert!(d[1].norm() < 1e-15);
    }

    #[test]
    fn trace_over_everything_and_nothing() {
        let s = random_pure::<f64>(3, 1).unwrap();
        let empty = partial_trace(&s, &QubitSubset::empty(3).unwrap()).unwrap();
        assert_eq!(empty.dim(), 1);
        assert!((empty.entries()[0].re - 1.0).abs() < 1e-12);
        let full = partial_trace(&s, &s.full_set()).unwrap();
        let psi = s.amplitudes();
        for a in 0..8 {
            for b in 0..8 {
                let expected = psi[a] * psi[b].conj();
                assert!((full.entries()[a * 8 + b] - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn mismatched_subset_is_rejected() {
        let s = make_ghz::<f64>(3).unwrap();
        assert!(partial_trace(&s, &QubitSubset::empty(4).unwrap()).is_err());
    }

    #[test]
    fn state_file_round_trip_and_validation() {
        let s = random_pure::<f64>(2, 3).unwrap();
        let back = PureState::<f64>::from_json(&s.to_json()).unwrap();
        for (x, y) in s.amplitudes().iter().zip(back.amplitudes()) {
            assert!((x - y).norm() < 1e-15);
        }
        assert!(PureState::<f64>::from_json(r#"{"n":1,"amplitudes":[[1,0],[1,0]]}"#).is_err());
        assert!(PureState::<f64>::from_json(r#"{"n":2,"amplitudes":[[1,0],[0,0]]}"#).is_err());
    }

    #[test]
    fn permutation_moves_qubits() {
        let s = make_w::<f64>(3).unwrap();
        let mut amps = vec![Complex::new(0.0, 0.0); 8];
        amps[0b001] = Complex::new(1.0, 0.0);
        let basis = PureState::new(3, amps).unwrap();
        let moved = basis.permute_qubits(&[2, 0, 1]).unwrap();
        assert_eq!(moved.amplitudes()[0b100].re, 1.0);
        assert!(s.permute_qubits(&[0, 0, 1]).is_err());
    }
}
