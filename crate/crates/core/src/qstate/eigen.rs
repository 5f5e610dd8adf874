//! Cyclic Jacobi eigenvalue solver for dense complex Hermitian matrices.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qstate::NUMERIC;
use crate::scalar::Real;

/// Eigenvalues of the Hermitian matrix `a` (row-major, `dim x dim`), unsorted.
///
/// The input is symmetrized as `(A + A^H)/2` first; callers are responsible for
/// rejecting matrices that are not Hermitian to begin with. Iterates cyclic sweeps
/// until the off-diagonal Frobenius norm drops below the configured threshold.
pub fn hermitian_eigenvalues<T: Real>(dim: usize, a: &[Complex<T>]) -> Result<Vec<T>> {
    if a.len() != dim * dim {
        return Err(Error::Shape(format!("expected {} entries, got {}", dim * dim, a.len())));
    }
    let half = T::lit(0.5);
    let mut m = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            m[i * dim + j] = (a[i * dim + j] + a[j * dim + i].conj()) * half;
        }
        m[i * dim + i].im = T::zero();
    }
    if dim <= 1 {
        return Ok(m.iter().map(|z| z.re).collect());
    }

    let frob = m.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    let threshold = T::lit(NUMERIC.jacobi_offdiag_tol)
        .max(T::epsilon() * T::from_count(dim) * frob);

    for _ in 0..NUMERIC.jacobi_max_sweeps {
        if off_diagonal_norm(dim, &m) < threshold {
            return Ok((0..dim).map(|i| m[i * dim + i].re).collect());
        }
        for p in 0..dim - 1 {
            for q in p + 1..dim {
                rotate(dim, &mut m, p, q);
            }
        }
    }
    if off_diagonal_norm(dim, &m) < threshold {
        return Ok((0..dim).map(|i| m[i * dim + i].re).collect());
    }
    Err(Error::Convergence(format!(
        "Jacobi sweeps exhausted on a {dim}x{dim} matrix"
    )))
}

fn off_diagonal_norm<T: Real>(dim: usize, m: &[Complex<T>]) -> T {
    let mut acc = T::zero();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                acc = acc + m[i * dim + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilates `m[p][q]` with the unitary `V = D R`, where `D` rotates the phase of
/// column `q` so the pivot is real and `R` is the real Jacobi rotation.
fn rotate<T: Real>(dim: usize, m: &mut [Complex<T>], p: usize, q: usize) {
    let apq = m[p * dim + q];
    let r = apq.norm();
    if r <= T::min_positive_value() {
        return;
    }
    let phase = apq / r;
    let app = m[p * dim + p].re;
    let aqq = m[q * dim + q].re;
    let theta = (aqq - app) / (T::lit(2.0) * r);
    let sign = if theta < T::zero() { -T::one() } else { T::one() };
    let t = sign / (theta.abs() + (theta * theta + T::one()).sqrt());
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    let conj_phase = phase.conj();
    // A <- A V
    for k in 0..dim {
        let akp = m[k * dim + p];
        let akq = m[k * dim + q];
        m[k * dim + p] = akp * c - akq * conj_phase * s;
        m[k * dim + q] = akp * s + akq * conj_phase * c;
    }
    // A <- V^H A
    for k in 0..dim {
        let apk = m[p * dim + k];
        let aqk = m[q * dim + k];
        m[p * dim + k] = apk * c - aqk * phase * s;
        m[q * dim + k] = apk * s + aqk * phase * c;
    }
    let zero = Complex::new(T::zero(), T::zero());
    m[p * dim + q] = zero;
    m[q * dim + p] = zero;
    m[p * dim + p].im = T::zero();
    m[q * dim + q].im = T::zero();
}
