//! Small dense complex matrix helpers and a cyclic Jacobi
//! eigendecomposition for Hermitian matrices.
//!
//! Matrices here stay small (at most a few hundred rows: square
//! flattenings of desk-scale tensors), so an O(n^3)-per-sweep Jacobi
//! scheme is plenty and keeps the crate free of LAPACK bindings.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{CScalar, Real};

/// Row-major dense complex square matrix.
#[derive(Debug, Clone)]
pub struct CMatrix<R: Real> {
    n: usize,
    data: Vec<CScalar<R>>,
}

impl<R: Real> CMatrix<R> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex::new(R::zero(), R::zero()); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex::new(R::one(), R::zero()));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<CScalar<R>>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("matrix rows must all have length n".into()));
        }
        Ok(Self { n, data: rows.iter().flatten().copied().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> CScalar<R> {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: CScalar<R>) {
        self.data[i * self.n + j] = v;
    }

    /// Largest deviation from Hermitian symmetry, max |A_ij - conj(A_ji)|.
    pub fn hermitian_defect(&self) -> R {
        let mut worst = R::zero();
        for i in 0..self.n {
            for j in i..self.n {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn matvec(&self, x: &[CScalar<R>]) -> Vec<CScalar<R>> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut s = Complex::new(R::zero(), R::zero());
                for j in 0..self.n {
                    s = s + self.get(i, j) * x[j];
                }
                s
            })
            .collect()
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in
/// descending order with matching orthonormal eigenvectors (columns).
#[derive(Debug, Clone)]
pub struct HermitianEig<R: Real> {
    pub eigenvalues: Vec<R>,
    pub eigenvectors: Vec<Vec<CScalar<R>>>,
}

const JACOBI_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic complex Jacobi for a Hermitian matrix.
///
/// Each rotation zeroes one off-diagonal entry a_pq = r e^{i theta}
/// with a unitary plane rotation whose (p,q) block is
/// `[[c, s e^{i theta}], [-s e^{-i theta}, c]]`; sweeps repeat until the
/// off-diagonal Frobenius mass drops below tolerance.
pub fn hermitian_eig<R: Real>(a: &CMatrix<R>, tau_sym: R) -> Result<HermitianEig<R>> {
    if a.hermitian_defect() > tau_sym {
        return Err(Error::Structure(format!(
            "matrix is not Hermitian within {tau_sym} (defect {})",
            a.hermitian_defect()
        )));
    }
    let n = a.n();
    let mut b = a.clone();
    // enforce exact Hermitian symmetry so rotations keep it
    for i in 0..n {
        for j in 0..i {
            let avg = (b.get(i, j) + b.get(j, i).conj()) * Complex::new(R::of(0.5), R::zero());
            b.set(i, j, avg);
            b.set(j, i, avg.conj());
        }
        let d = b.get(i, i);
        b.set(i, i, Complex::new(d.re, R::zero()));
    }
    let mut v = CMatrix::<R>::identity(n);
    let tol = R::of(JACOBI_TOL);
    let scale = R::one().max(off_diagonal_norm(&b));

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&b) <= tol * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = b.get(p, q);
                let r = apq.norm();
                if r <= tol * scale {
                    continue;
                }
                let phase = apq / r; // e^{i theta}
                let app = b.get(p, p).re;
                let aqq = b.get(q, q).re;
                let tau_rot = (aqq - app) / (R::of(2.0) * r);
                let t = if tau_rot == R::zero() {
                    R::one()
                } else {
                    let sign = if tau_rot > R::zero() { R::one() } else { -R::one() };
                    sign / (tau_rot.abs() + (R::one() + tau_rot * tau_rot).sqrt())
                };
                let c = R::one() / (R::one() + t * t).sqrt();
                let s = t * c;
                let cs = Complex::new(c, R::zero());
                let sp = phase * s; // s e^{i theta}
                // B <- U^H B U with U the plane rotation
                for k in 0..n {
                    let bkp = b.get(k, p);
                    let bkq = b.get(k, q);
                    b.set(k, p, bkp * cs - bkq * sp.conj());
                    b.set(k, q, bkp * sp + bkq * cs);
                }
                for k in 0..n {
                    let bpk = b.get(p, k);
                    let bqk = b.get(q, k);
                    b.set(p, k, bpk * cs - bqk * sp);
                    b.set(q, k, bpk * sp.conj() + bqk * cs);
                }
                // keep the pivot pair exactly Hermitian against drift
                b.set(p, q, Complex::new(R::zero(), R::zero()));
                b.set(q, p, Complex::new(R::zero(), R::zero()));
                b.set(p, p, Complex::new(b.get(p, p).re, R::zero()));
                b.set(q, q, Complex::new(b.get(q, q).re, R::zero()));
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * cs - vkq * sp.conj());
                    v.set(k, q, vkp * sp + vkq * cs);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<R> = (0..n).map(|i| b.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v.get(row, col)).collect())
        .collect();
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

fn off_diagonal_norm<R: Real>(a: &CMatrix<R>) -> R {
    let mut s = R::zero();
    for i in 0..a.n() {
        for j in 0..a.n() {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}
