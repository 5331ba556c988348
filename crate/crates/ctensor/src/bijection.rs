//! Maps between conjugate polynomials and structured tensors, the
//! square matrix flattening, the weighted rank-one decomposition of
//! conjugate partial-symmetric tensors, and their embedding into
//! conjugate super-symmetric tensors.

use itertools::Itertools;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::forms::{ConjugatePolynomial, FormClass, MonomialKey};
use crate::linalg::{hermitian_eig, CMatrix};
use crate::scalar::{canonical_phase, CScalar, Real};
use crate::tensor::{
    distinct_permutations, each_index, outer_product, DenseComplexTensor, TAU_SYM,
};

/// Default tolerance for decomposition residuals and eigenvalue cutoffs.
pub const TAU_DEC: f64 = 1e-9;

/// Weighted sum of conjugated-rank-one terms reconstructing a conjugate
/// partial-symmetric tensor: `F = sum_k alpha_k conj(H_k) (x) H_k`.
#[derive(Debug, Clone)]
pub struct CpsDecomposition<R: Real> {
    pub alphas: Vec<R>,
    /// Symmetric order-d unit-norm tensors, phases canonicalized.
    pub components: Vec<DenseComplexTensor<R>>,
    pub residual: R,
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k.min(n - k) {
        num *= (n - i) as u64;
        den *= (i + 1) as u64;
    }
    num / den
}

/// Sorted multi-indices of length d over 0..n (combinations with
/// replacement).
fn sorted_multi_indices(n: usize, d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    (0..n).combinations_with_replacement(d).collect()
}

fn check_equal_even(f: &DenseComplexTensor<impl Real>) -> Result<(usize, usize)> {
    let n = f.dims()[0];
    if f.dims().iter().any(|&m| m != n) {
        return Err(Error::Dimension("dims must all be equal".into()));
    }
    if f.order() % 2 != 0 {
        return Err(Error::Dimension("order must be even".into()));
    }
    Ok((n, f.order() / 2))
}

/// Reads a partial-symmetric tensor in `C^{n^{2d}}` off into the
/// symmetric conjugate form `F(xbar,...,xbar,x,...,x)`.
pub fn s_forward<R: Real>(f: &DenseComplexTensor<R>) -> Result<ConjugatePolynomial<R>> {
    let (n, d) = check_equal_even(f)?;
    if !f.is_partial_symmetric(R::of(TAU_SYM)) {
        return Err(Error::Structure("tensor is not partial-symmetric".into()));
    }
    let mut p = ConjugatePolynomial::zero(n);
    for front in sorted_multi_indices(n, d) {
        let wf = distinct_permutations(&front);
        for back in sorted_multi_indices(n, d) {
            let wb = distinct_permutations(&back);
            let mut idx = front.clone();
            idx.extend(&back);
            let entry = f.get0(&idx);
            if entry.re == R::zero() && entry.im == R::zero() {
                continue;
            }
            let coeff = entry * Complex::new(R::of((wf * wb) as f64), R::zero());
            let key = MonomialKey::new(
                front.iter().map(|i| i + 1).collect(),
                back.iter().map(|j| j + 1).collect(),
            );
            p.add_term(key, coeff);
        }
    }
    p.with_n(n)
}

/// Inverse of [`s_forward`]: spreads each coefficient over both
/// permutation orbits, divided by the orbit sizes.
pub fn s_inverse<R: Real>(p: &ConjugatePolynomial<R>) -> Result<DenseComplexTensor<R>> {
    let d = match p.classify_form() {
        FormClass::SymmetricConjugateForm { d } if d > 0 => d,
        other => {
            return Err(Error::Structure(format!(
                "expected a symmetric conjugate form of positive degree, got {other:?}"
            )))
        }
    };
    let n = p.n();
    let dims = vec![n; 2 * d];
    let mut f = DenseComplexTensor::zeros(&dims);
    each_index(&dims, |idx| {
        let front: Vec<usize> = idx[..d].iter().map(|i| i + 1).collect();
        let back: Vec<usize> = idx[d..].iter().map(|j| j + 1).collect();
        let coeff = p.coeff(&MonomialKey::new(front, back));
        if coeff.re != R::zero() || coeff.im != R::zero() {
            let wf = distinct_permutations(&idx[..d]);
            let wb = distinct_permutations(&idx[d..]);
            let denom = R::of((wf * wb) as f64);
            f.set0(idx, coeff / Complex::new(denom, R::zero()));
        }
    });
    Ok(f)
}

/// Maps a 0-based tensor index over 1..2n to (variable, conjugated?).
fn split_var(t: usize, n: usize) -> (usize, bool) {
    if t < n {
        (t + 1, true)
    } else {
        (t - n + 1, false)
    }
}

fn key_of_tuple(idx: &[usize], n: usize) -> MonomialKey {
    let mut conj = Vec::new();
    let mut plain = Vec::new();
    for &t in idx {
        let (v, is_conj) = split_var(t, n);
        if is_conj {
            conj.push(v);
        } else {
            plain.push(v);
        }
    }
    MonomialKey::new(conj, plain)
}

/// Reads a symmetric tensor in `C^{(2n)^d}` off into the general
/// conjugate form `F((xbar;x),...,(xbar;x))`.
pub fn g_forward<R: Real>(f: &DenseComplexTensor<R>) -> Result<ConjugatePolynomial<R>> {
    let m = f.dims()[0];
    if f.dims().iter().any(|&k| k != m) {
        return Err(Error::Dimension("dims must all be equal".into()));
    }
    if m % 2 != 0 {
        return Err(Error::Structure("every dimension must be even (stacked (xbar;x))".into()));
    }
    if !f.is_symmetric(R::of(TAU_SYM)) {
        return Err(Error::Structure("tensor is not symmetric".into()));
    }
    let n = m / 2;
    let d = f.order();
    let mut p = ConjugatePolynomial::zero(n);
    for idx in sorted_multi_indices(m, d) {
        let entry = f.get0(&idx);
        if entry.re == R::zero() && entry.im == R::zero() {
            continue;
        }
        let w = distinct_permutations(&idx);
        p.add_term(key_of_tuple(&idx, n), entry * Complex::new(R::of(w as f64), R::zero()));
    }
    p.with_n(n)
}

/// Inverse of [`g_forward`]: builds the symmetric tensor over the
/// stacked variable, entry = coefficient / orbit size.
pub fn g_inverse<R: Real>(p: &ConjugatePolynomial<R>) -> Result<DenseComplexTensor<R>> {
    let d = match p.classify_form() {
        FormClass::GeneralConjugateForm { d } => d,
        FormClass::SymmetricConjugateForm { d } if d > 0 => 2 * d,
        FormClass::ComplexForm { d } => d,
        other => {
            return Err(Error::Structure(format!(
                "expected a homogeneous conjugate form of positive degree, got {other:?}"
            )))
        }
    };
    let n = p.n();
    let dims = vec![2 * n; d];
    let mut f = DenseComplexTensor::zeros(&dims);
    each_index(&dims, |idx| {
        let coeff = p.coeff(&key_of_tuple(idx, n));
        if coeff.re != R::zero() || coeff.im != R::zero() {
            let w = distinct_permutations(idx);
            f.set0(idx, coeff / Complex::new(R::of(w as f64), R::zero()));
        }
    });
    Ok(f)
}

/// Groups the first d modes into rows and the last d into columns.
/// The result is Hermitian exactly when the input is conjugate
/// partial-symmetric.
pub fn flatten_square<R: Real>(f: &DenseComplexTensor<R>) -> Result<CMatrix<R>> {
    let (n, d) = check_equal_even(f)?;
    let rows = n.pow(d as u32);
    // row-major storage over 2d equal modes is exactly the rows x rows
    // matrix layout, so this is a reshape
    let mut m = CMatrix::zeros(rows);
    for (k, &z) in f.data().iter().enumerate() {
        m.set(k / rows, k % rows, z);
    }
    Ok(m)
}

fn require_cps<R: Real>(f: &DenseComplexTensor<R>) -> Result<()> {
    if let Err(defect) = f.check_cps(R::of(TAU_SYM)) {
        return Err(Error::Structure(format!(
            "tensor is not conjugate partial-symmetric: {defect:?}"
        )));
    }
    Ok(())
}

/// Eigendecomposes the Hermitian flattening of a conjugate
/// partial-symmetric tensor into `sum_k alpha_k conj(H_k) (x) H_k` with
/// symmetric unit-norm components.
pub fn cps_decompose<R: Real>(
    f: &DenseComplexTensor<R>,
    tau_dec: R,
) -> Result<CpsDecomposition<R>> {
    require_cps(f)?;
    let (n, d) = check_equal_even(f)?;
    let m = flatten_square(f)?;
    let eig = hermitian_eig(&m, R::of(TAU_SYM))?;
    let mut alphas = Vec::new();
    let mut components = Vec::new();
    let comp_dims = vec![n; d];
    for (k, &alpha) in eig.eigenvalues.iter().enumerate() {
        if alpha.abs() <= tau_dec {
            continue;
        }
        let mut h: Vec<CScalar<R>> = eig.eigenvectors[k].iter().map(|z| z.conj()).collect();
        canonical_phase(&mut h);
        let ht = DenseComplexTensor::from_data(&comp_dims, h)?;
        if let Err(defect) = ht.check_symmetric(R::of(TAU_SYM).max(tau_dec)) {
            return Err(Error::Internal(format!(
                "decomposition component is not symmetric ({defect:?}); input structure is \
                 corrupt beyond the certified tolerance"
            )));
        }
        alphas.push(alpha);
        components.push(ht);
    }
    let mut rebuilt = DenseComplexTensor::zeros(f.dims());
    for (alpha, h) in alphas.iter().zip(&components) {
        let term = outer_product(&h.conj(), h).scaled_re(*alpha);
        rebuilt = rebuilt.add(&term)?;
    }
    let residual = f.sub(&rebuilt)?.norm();
    Ok(CpsDecomposition { alphas, components, residual })
}

/// True when the Hermitian flattening has no eigenvalue below -tau_dec.
pub fn is_flattening_psd<R: Real>(f: &DenseComplexTensor<R>, tau_dec: R) -> Result<bool> {
    require_cps(f)?;
    let eig = hermitian_eig(&flatten_square(f)?, R::of(TAU_SYM))?;
    Ok(eig.eigenvalues.last().map(|&lo| lo >= -tau_dec).unwrap_or(true))
}

/// Embeds a conjugate partial-symmetric tensor over `C^n` into a
/// conjugate super-symmetric tensor over the stacked dimension 2n so
/// that `F(xbar,..,xbar,x,..,x) = G((xbar;x),...,(xbar;x))`.
///
/// Entries whose index tuple does not split into d low and d high
/// positions vanish; the others carry `F / C(2d,d)`.
pub fn embed_cps_to_css<R: Real>(f: &DenseComplexTensor<R>) -> Result<DenseComplexTensor<R>> {
    require_cps(f)?;
    let (n, d) = check_equal_even(f)?;
    let scale = R::one() / R::of(binomial(2 * d, d) as f64);
    let dims = vec![2 * n; 2 * d];
    let mut g = DenseComplexTensor::zeros(&dims);
    each_index(&dims, |idx| {
        let mut small: Vec<usize> = idx.iter().copied().filter(|&t| t < n).collect();
        if small.len() != d {
            return;
        }
        let mut large: Vec<usize> = idx.iter().copied().filter(|&t| t >= n).map(|t| t - n).collect();
        small.sort_unstable();
        large.sort_unstable();
        small.extend(large.drain(..));
        g.set0(idx, f.get0(&small).scale(scale));
    });
    Ok(g)
}
