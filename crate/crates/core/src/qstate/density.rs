use num_complex::Complex;

use super::eigen::hermitian_eigenvalues;
use super::NUMERIC;
use crate::error::{Error, Result};
use crate::scalar::{tol, Real};

/// Hermitian, positive semidefinite, unit-trace matrix of dimension `2^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, trace and the spectrum before accepting `data`.
    pub fn new(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if !dim.is_power_of_two() {
            return Err(Error::Shape(format!("dimension {dim} is not a power of two")));
        }
        if data.len() != dim * dim {
            return Err(Error::Shape(format!("expected {} entries, got {}", dim * dim, data.len())));
        }
        let dm = Self { dim, data };
        dm.check_hermitian()?;
        let trace: T = (0..dim).map(|i| dm.data[i * dim + i].re).sum();
        if (trace - T::one()).abs() > tol::<T>(NUMERIC.trace_tol) {
            return Err(Error::Domain(format!("trace is {trace}, expected 1")));
        }
        let min = hermitian_eigenvalues(dim, &dm.data)?
            .into_iter()
            .fold(T::infinity(), T::min);
        if min < -tol::<T>(NUMERIC.psd_tol) {
            return Err(Error::Domain(format!("negative eigenvalue {min}")));
        }
        Ok(dm)
    }

    pub(crate) fn from_raw(dim: usize, data: Vec<Complex<T>>) -> Self {
        Self { dim, data }
    }

    /// `I / 2^k`.
    pub fn maximally_mixed(k: usize) -> Self {
        let dim = 1usize << k;
        let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        let w = T::one() / T::from_count(dim);
        for i in 0..dim {
            data[i * dim + i] = Complex::new(w, T::zero());
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    /// `Tr(rho^2) = sum |rho_ij|^2` for Hermitian `rho`.
    pub fn purity(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    fn check_hermitian(&self) -> Result<()> {
        let d = self.dim;
        let limit = tol::<T>(NUMERIC.hermitian_tol);
        for i in 0..d {
            for j in i..d {
                if (self.data[i * d + j] - self.data[j * d + i].conj()).norm() > limit {
                    return Err(Error::Shape(format!("entry ({i},{j}) breaks Hermiticity")));
                }
            }
        }
        Ok(())
    }
}

/// Spectrum of `dm`, descending, clamped to `[0, 1]`.
pub fn eigvals_hermitian<T: Real>(dm: &DensityMatrix<T>) -> Result<Vec<T>> {
    dm.check_hermitian()?;
    let mut ev: Vec<T> = hermitian_eigenvalues(dm.dim, &dm.data)?
        .into_iter()
        .map(|x| x.max(T::zero()).min(T::one()))
        .collect();
    ev.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    Ok(ev)
}

/// `-sum lambda log2 lambda` in bits; eigenvalues under the cutoff contribute nothing.
pub fn von_neumann_entropy<T: Real>(dm: &DensityMatrix<T>) -> Result<T> {
    let cutoff = T::lit(NUMERIC.eigenvalue_cutoff);
    Ok(eigvals_hermitian(dm)?
        .into_iter()
        .filter(|&l| l >= cutoff)
        .map(|l| -l * l.log2())
        .sum::<T>()
        .max(T::zero()))
}

/// Tsallis entropy `(Tr rho^q - 1)/(1 - q)`, summing `lambda^q` over the support of `rho`.
pub fn tsallis_entropy<T: Real>(dm: &DensityMatrix<T>, q: T) -> Result<T> {
    if q == T::zero() || q == T::one() {
        return Err(Error::Domain(format!(
            "Tsallis index q={q} is excluded; use von_neumann_entropy for the q->1 limit"
        )));
    }
    let cutoff = T::lit(NUMERIC.eigenvalue_cutoff);
    let trace_q: T = eigvals_hermitian(dm)?
        .into_iter()
        .filter(|&l| l >= cutoff)
        .map(|l| l.powf(q))
        .sum();
    Ok((trace_q - T::one()) / (T::one() - q))
}

/// Linear entropy `1 - Tr rho^2`, read off the matrix entries.
pub fn linear_entropy<T: Real>(dm: &DensityMatrix<T>) -> T {
    T::one() - dm.purity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{make_ghz, make_w, partial_trace, random_pure};
    use crate::subset::QubitSubset;

    fn diag(values: &[f64]) -> DensityMatrix<f64> {
        let d = values.len();
        let mut data = vec![Complex::new(0.0, 0.0); d * d];
        for (i, v) in values.iter().enumerate() {
            data[i * d + i] = Complex::new(*v, 0.0);
        }
        DensityMatrix::new(d, data).unwrap()
    }

    #[test]
    fn constructor_validates() {
        let bad_trace = vec![Complex::new(0.7, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::new(0.7, 0.0)];
        assert!(DensityMatrix::new(2, bad_trace).is_err());
        let not_herm = vec![Complex::new(0.5, 0.0), Complex::new(0.1, 0.0), Complex::new(0.2, 0.0), Complex::new(0.5, 0.0)];
        assert!(matches!(DensityMatrix::new(2, not_herm), Err(Error::Shape(_))));
        let negative = vec![Complex::new(1.5, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::new(-0.5, 0.0)];
        assert!(DensityMatrix::new(2, negative).is_err());
        assert!(DensityMatrix::<f64>::new(3, vec![Complex::new(0.0, 0.0); 9]).is_err());
    }

    #[test]
    fn spectra() {
        let ev = eigvals_hermitian(&diag(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        assert_eq!(ev, vec![0.5, 0.5, 0.0, 0.0]);
        let mixed = DensityMatrix::<f64>::maximally_mixed(3);
        assert!(eigvals_hermitian(&mixed).unwrap().iter().all(|l| (l - 0.125).abs() < 1e-15));
        let w = make_w::<f64>(3).unwrap();
        let rho = partial_trace(&w, &QubitSubset::from_indices(&[2], 3).unwrap()).unwrap();
        let ev = eigvals_hermitian(&rho).unwrap();
        assert!((ev[0] - 2.0 / 3.0).abs() < 1e-12 && (ev[1] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bell_pair_marginal_has_one_bit() {
        let bell = make_ghz::<f64>(2).unwrap();
        let rho = partial_trace(&bell, &QubitSubset::from_indices(&[0], 2).unwrap()).unwrap();
        assert!((von_neumann_entropy(&rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_values() {
        let pure = partial_trace(&random_pure::<f64>(2, 4).unwrap(), &QubitSubset::full(2).unwrap()).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-9);
        assert!(tsallis_entropy(&pure, 2.0).unwrap().abs() < 1e-10);
        assert!(linear_entropy(&pure).abs() < 1e-12);
        let mixed = DensityMatrix::<f64>::maximally_mixed(1);
        assert!((von_neumann_entropy(&mixed).unwrap() - 1.0).abs() < 1e-12);
        assert!((tsallis_entropy(&mixed, 2.0).unwrap() - 0.5).abs() < 1e-12);
        for k in 1..4 {
            let m = DensityMatrix::<f64>::maximally_mixed(k);
            assert!((linear_entropy(&m) - (1.0 - 0.5f64.powi(k as i32))).abs() < 1e-15);
        }
    }

    #[test]
    fn ghz_marginals_have_one_bit_and_half_linear_entropy() {
        let ghz = make_ghz::<f64>(5).unwrap();
        for mask in 1u32..31 {
            let rho = partial_trace(&ghz, &QubitSubset::new(mask, 5).unwrap()).unwrap();
            assert!((von_neumann_entropy(&rho).unwrap() - 1.0).abs() < 1e-10);
            assert!((linear_entropy(&rho) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn tsallis_rejects_degenerate_indices() {
        let m = DensityMatrix::<f64>::maximally_mixed(1);
        assert!(matches!(tsallis_entropy(&m, 1.0), Err(Error::Domain(_))));
        assert!(matches!(tsallis_entropy(&m, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn tsallis_near_one_approaches_entropy_in_nats() {
        for seed in 0..10 {
            let s = random_pure::<f64>(4, seed).unwrap();
            let rho = partial_trace(&s, &QubitSubset::from_indices(&[0, 2], 4).unwrap()).unwrap();
            let s_bits = von_neumann_entropy(&rho).unwrap();
            let near = tsallis_entropy(&rho, 1.0 + 1e-6).unwrap();
            assert!((near - s_bits * std::f64::consts::LN_2).abs() < 1e-4);
        }
    }
}
