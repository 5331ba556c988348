//! Dense complex tensor storage, multilinear evaluation, symmetry
//! predicates and projections.
//!
//! Storage is dense row-major; the target scale is small dimensions
//! (n <= 8) and orders up to six, so no sparse format is provided.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{CScalar, Real};

/// Default per-entry tolerance for the symmetry predicates.
pub const TAU_SYM: f64 = 1e-10;

/// Which defining identity a symmetry predicate found violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryDefect {
    /// Shape rules out the structure (odd order, unequal dims, ...).
    Shape(String),
    /// An entry differs from its permuted counterpart.
    PermutationMismatch { index: Vec<usize>, other: Vec<usize> },
    /// An entry fails the conjugate-pair identity.
    ConjugateMismatch { index: Vec<usize>, other: Vec<usize> },
}

/// Dense complex tensor with an explicit dimension vector.
///
/// Entries are stored row-major (last index fastest). All public index
/// I/O is 1-based to match the usual mathematical convention; the
/// 0-based layout is internal.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseComplexTensor<R: Real> {
    dims: Vec<usize>,
    data: Vec<CScalar<R>>,
}

fn product(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// Calls `f` on every multi-index of the given shape (0-based).
pub(crate) fn each_index<F: FnMut(&[usize])>(dims: &[usize], mut f: F) {
    if dims.iter().any(|&d| d == 0) {
        return;
    }
    let mut idx = vec![0usize; dims.len()];
    loop {
        f(&idx);
        let mut k = dims.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < dims[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Number of distinct permutations of an index multiset, |Pi(i_1...i_d)|.
pub fn distinct_permutations(indices: &[usize]) -> u64 {
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    let mut numerator = 1u64;
    for k in 2..=sorted.len() as u64 {
        numerator *= k;
    }
    let mut denom = 1u64;
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
            denom *= run;
        } else {
            run = 1;
        }
    }
    numerator / denom
}

/// All permutations of `0..d` (positions, not values).
pub(crate) fn all_permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..d).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(d, &mut current, &mut out);
    out
}

impl<R: Real> DenseComplexTensor<R> {
    /// Zero tensor of the given shape.
    pub fn zeros(dims: &[usize]) -> Self {
        assert!(!dims.is_empty() && dims.iter().all(|&d| d > 0), "dims must be positive");
        Self { dims: dims.to_vec(), data: vec![Complex::new(R::zero(), R::zero()); product(dims)] }
    }

    /// Builds a tensor from row-major data; rejects shape/length mismatch
    /// and non-finite entries.
    pub fn from_data(dims: &[usize], data: Vec<CScalar<R>>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::Dimension("dims must be nonempty and positive".into()));
        }
        if data.len() != product(dims) {
            return Err(Error::Dimension(format!(
                "entry count {} does not match dims product {}",
                data.len(),
                product(dims)
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Argument("non-finite entry".into()));
        }
        Ok(Self { dims: dims.to_vec(), data })
    }

    fn scalar_tensor(value: CScalar<R>) -> Self {
        Self { dims: vec![], data: vec![value] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn data(&self) -> &[CScalar<R>] {
        &self.data
    }

    /// The single entry of an order-0 (fully contracted) tensor.
    pub fn scalar(&self) -> CScalar<R> {
        assert!(self.dims.is_empty(), "scalar() on non-scalar tensor");
        self.data[0]
    }

    pub(crate) fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut off = 0;
        for (k, &i) in idx.iter().enumerate() {
            debug_assert!(i < self.dims[k]);
            off = off * self.dims[k] + i;
        }
        off
    }

    /// 0-based entry access.
    pub fn get0(&self, idx: &[usize]) -> CScalar<R> {
        self.data[self.offset(idx)]
    }

    /// 0-based entry mutation.
    pub fn set0(&mut self, idx: &[usize], value: CScalar<R>) {
        let off = self.offset(idx);
        self.data[off] = value;
    }

    /// 1-based entry access (matches the printed index convention).
    pub fn get(&self, idx: &[usize]) -> CScalar<R> {
        let shifted: Vec<usize> = idx.iter().map(|&i| i - 1).collect();
        self.get0(&shifted)
    }

    /// 1-based entry mutation.
    pub fn set(&mut self, idx: &[usize], value: CScalar<R>) {
        let shifted: Vec<usize> = idx.iter().map(|&i| i - 1).collect();
        self.set0(&shifted, value)
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        Self { dims: self.dims.clone(), data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scaled(&self, factor: CScalar<R>) -> Self {
        Self { dims: self.dims.clone(), data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn scaled_re(&self, factor: R) -> Self {
        self.scaled(Complex::new(factor, R::zero()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::Dimension("tensor shapes differ".into()));
        }
        Ok(Self {
            dims: self.dims.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(self.add(&other.scaled_re(-R::one()))?)
    }

    /// Euclidean (Frobenius) norm.
    pub fn norm(&self) -> R {
        self.data.iter().map(|z| z.norm_sqr()).fold(R::zero(), |a, b| a + b).sqrt()
    }

    /// Contracts a single mode with a vector; result drops that mode.
    pub fn contract_mode(&self, mode: usize, v: &[CScalar<R>]) -> Result<Self> {
        if mode >= self.order() {
            return Err(Error::Argument(format!("mode {mode} out of range")));
        }
        if v.len() != self.dims[mode] {
            return Err(Error::Dimension(format!(
                "vector length {} does not match mode {} dimension {}",
                v.len(),
                mode,
                self.dims[mode]
            )));
        }
        let outer: usize = self.dims[..mode].iter().product();
        let m = self.dims[mode];
        let inner: usize = self.dims[mode + 1..].iter().product();
        let zero = Complex::new(R::zero(), R::zero());
        let mut out = vec![zero; outer * inner];
        for o in 0..outer {
            for j in 0..m {
                let coeff = v[j];
                let base = (o * m + j) * inner;
                let obase = o * inner;
                for i in 0..inner {
                    out[obase + i] = out[obase + i] + self.data[base + i] * coeff;
                }
            }
        }
        let mut dims = self.dims.clone();
        dims.remove(mode);
        if dims.is_empty() {
            Ok(Self::scalar_tensor(out[0]))
        } else {
            Ok(Self { dims, data: out })
        }
    }

    /// Full multilinear form value: `sum F_{i_1..i_d} x^1_{i_1} ... x^d_{i_d}`.
    pub fn multilinear_eval(&self, args: &[&[CScalar<R>]]) -> Result<CScalar<R>> {
        if args.len() != self.order() {
            return Err(Error::Dimension(format!(
                "expected {} arguments, got {}",
                self.order(),
                args.len()
            )));
        }
        let mut acc = self.clone();
        for (mode, v) in args.iter().enumerate().rev() {
            acc = acc.contract_mode(mode, v)?;
        }
        Ok(acc.scalar())
    }

    /// Contracts the listed modes (0-based, distinct) with the given
    /// vectors; the remaining modes keep their relative order.
    /// Contracting every mode yields an order-0 tensor (see [`Self::scalar`]).
    pub fn partial_eval(&self, args: &[(usize, &[CScalar<R>])]) -> Result<Self> {
        let mut seen = vec![false; self.order()];
        for &(mode, v) in args {
            if mode >= self.order() {
                return Err(Error::Argument(format!("mode {mode} out of range")));
            }
            if seen[mode] {
                return Err(Error::Argument(format!("mode {mode} listed twice")));
            }
            seen[mode] = true;
            if v.len() != self.dims[mode] {
                return Err(Error::Dimension(format!(
                    "vector length {} does not match mode {} dimension {}",
                    v.len(),
                    mode,
                    self.dims[mode]
                )));
            }
        }
        let mut sorted: Vec<(usize, &[CScalar<R>])> = args.to_vec();
        sorted.sort_by(|a, b| b.0.cmp(&a.0));
        let mut acc = self.clone();
        for (mode, v) in sorted {
            acc = acc.contract_mode(mode, v)?;
        }
        Ok(acc)
    }

    /// Average over all `d!` index permutations; requires equal dims.
    pub fn symmetrize(&self) -> Result<Self> {
        let d = self.order();
        let n = self.dims[0];
        if self.dims.iter().any(|&m| m != n) {
            return Err(Error::Dimension("symmetrize requires equal dims".into()));
        }
        let perms = all_permutations(d);
        let weight = R::one() / R::of(perms.len() as f64);
        let mut out = Self::zeros(&self.dims);
        let mut permuted = vec![0usize; d];
        each_index(&self.dims, |idx| {
            let mut sum = Complex::new(R::zero(), R::zero());
            for perm in &perms {
                for (k, &p) in perm.iter().enumerate() {
                    permuted[k] = idx[p];
                }
                sum = sum + self.get0(&permuted);
            }
            let off = out.offset(idx);
            out.data[off] = sum * weight;
        });
        Ok(out)
    }

    /// Average over permutations within the first d and last d modes
    /// separately (even order, equal dims).
    pub fn partial_symmetrize(&self) -> Result<Self> {
        let order = self.order();
        if order % 2 != 0 {
            return Err(Error::Dimension("partial_symmetrize requires even order".into()));
        }
        let d = order / 2;
        let n = self.dims[0];
        if self.dims.iter().any(|&m| m != n) {
            return Err(Error::Dimension("partial_symmetrize requires equal dims".into()));
        }
        let perms = all_permutations(d);
        let count = R::of((perms.len() * perms.len()) as f64);
        let mut out = Self::zeros(&self.dims);
        let mut permuted = vec![0usize; order];
        each_index(&self.dims, |idx| {
            let mut sum = Complex::new(R::zero(), R::zero());
            for pf in &perms {
                for (k, &p) in pf.iter().enumerate() {
                    permuted[k] = idx[p];
                }
                for pb in &perms {
                    for (k, &p) in pb.iter().enumerate() {
                        permuted[d + k] = idx[d + p];
                    }
                    sum = sum + self.get0(&permuted);
                }
            }
            let off = out.offset(idx);
            out.data[off] = sum / count;
        });
        Ok(out)
    }

    /// Checks invariance under all index permutations.
    pub fn check_symmetric(&self, tau: R) -> std::result::Result<(), SymmetryDefect> {
        let n = self.dims[0];
        if self.dims.iter().any(|&m| m != n) {
            return Err(SymmetryDefect::Shape("dims not all equal".into()));
        }
        let mut defect = None;
        each_index(&self.dims, |idx| {
            if defect.is_some() {
                return;
            }
            let mut sorted = idx.to_vec();
            sorted.sort_unstable();
            let diff = (self.get0(idx) - self.get0(&sorted)).norm();
            if diff > tau {
                defect = Some(SymmetryDefect::PermutationMismatch {
                    index: idx.iter().map(|i| i + 1).collect(),
                    other: sorted.iter().map(|i| i + 1).collect(),
                });
            }
        });
        match defect {
            Some(d) => Err(d),
            None => Ok(()),
        }
    }

    pub fn is_symmetric(&self, tau: R) -> bool {
        self.check_symmetric(tau).is_ok()
    }

    /// Checks invariance under permutations within the first half and the
    /// last half of the modes separately.
    pub fn check_partial_symmetric(&self, tau: R) -> std::result::Result<(), SymmetryDefect> {
        let order = self.order();
        if order % 2 != 0 {
            return Err(SymmetryDefect::Shape("order must be even".into()));
        }
        let d = order / 2;
        let n = self.dims[0];
        if self.dims.iter().any(|&m| m != n) {
            return Err(SymmetryDefect::Shape("dims not all equal".into()));
        }
        let mut defect = None;
        each_index(&self.dims, |idx| {
            if defect.is_some() {
                return;
            }
            let mut canon = idx.to_vec();
            canon[..d].sort_unstable();
            canon[d..].sort_unstable();
            let diff = (self.get0(idx) - self.get0(&canon)).norm();
            if diff > tau {
                defect = Some(SymmetryDefect::PermutationMismatch {
                    index: idx.iter().map(|i| i + 1).collect(),
                    other: canon.iter().map(|i| i + 1).collect(),
                });
            }
        });
        match defect {
            Some(d) => Err(d),
            None => Ok(()),
        }
    }

    pub fn is_partial_symmetric(&self, tau: R) -> bool {
        self.check_partial_symmetric(tau).is_ok()
    }

    /// Conjugate partial-symmetry: partial symmetry plus the front/back
    /// block swap conjugating entries. Generalizes Hermitian matrices.
    pub fn check_cps(&self, tau: R) -> std::result::Result<(), SymmetryDefect> {
        self.check_partial_symmetric(tau)?;
        let d = self.order() / 2;
        let mut defect = None;
        each_index(&self.dims, |idx| {
            if defect.is_some() {
                return;
            }
            let mut swapped = idx.to_vec();
            swapped.rotate_left(d);
            let diff = (self.get0(idx) - self.get0(&swapped).conj()).norm();
            if diff > tau {
                defect = Some(SymmetryDefect::ConjugateMismatch {
                    index: idx.iter().map(|i| i + 1).collect(),
                    other: swapped.iter().map(|i| i + 1).collect(),
                });
            }
        });
        match defect {
            Some(d) => Err(d),
            None => Ok(()),
        }
    }

    pub fn is_cps(&self, tau: R) -> bool {
        self.check_cps(tau).is_ok()
    }

    /// Conjugate super-symmetry: full symmetry over even dimension 2n plus
    /// entries conjugating when every index is shifted across the halves.
    pub fn check_css(&self, tau: R) -> std::result::Result<(), SymmetryDefect> {
        let m = self.dims[0];
        if self.dims.iter().any(|&k| k != m) {
            return Err(SymmetryDefect::Shape("dims not all equal".into()));
        }
        if m % 2 != 0 {
            return Err(SymmetryDefect::Shape("dimension must be even".into()));
        }
        self.check_symmetric(tau)?;
        let n = m / 2;
        let mut defect = None;
        each_index(&self.dims, |idx| {
            if defect.is_some() {
                return;
            }
            let flipped: Vec<usize> =
                idx.iter().map(|&i| if i < n { i + n } else { i - n }).collect();
            let diff = (self.get0(idx) - self.get0(&flipped).conj()).norm();
            if diff > tau {
                defect = Some(SymmetryDefect::ConjugateMismatch {
                    index: idx.iter().map(|i| i + 1).collect(),
                    other: flipped.iter().map(|i| i + 1).collect(),
                });
            }
        });
        match defect {
            Some(d) => Err(d),
            None => Ok(()),
        }
    }

    pub fn is_css(&self, tau: R) -> bool {
        self.check_css(tau).is_ok()
    }

    /// Nearest conjugate partial-symmetric tensor under the obvious
    /// group averaging (front/back permutations + conjugate swap).
    pub fn cps_project(&self) -> Result<Self> {
        let ps = self.partial_symmetrize()?;
        let d = self.order() / 2;
        let mut swapped = Self::zeros(&self.dims);
        each_index(&self.dims, |idx| {
            let mut s = idx.to_vec();
            s.rotate_left(d);
            let off = swapped.offset(idx);
            swapped.data[off] = ps.get0(&s).conj();
        });
        ps.add(&swapped)?.scaled_re(R::of(0.5)).pipe_ok()
    }

    /// Nearest conjugate super-symmetric tensor (symmetrize + average with
    /// the conjugated half-shift image). Requires even, equal dims.
    pub fn css_project(&self) -> Result<Self> {
        let m = self.dims[0];
        if m % 2 != 0 {
            return Err(Error::Dimension("css_project requires even dimension".into()));
        }
        let n = m / 2;
        let sym = self.symmetrize()?;
        let mut flipped = Self::zeros(&self.dims);
        each_index(&self.dims, |idx| {
            let f: Vec<usize> = idx.iter().map(|&i| if i < n { i + n } else { i - n }).collect();
            let off = flipped.offset(idx);
            flipped.data[off] = sym.get0(&f).conj();
        });
        sym.add(&flipped)?.scaled_re(R::of(0.5)).pipe_ok()
    }
}

trait PipeOk: Sized {
    fn pipe_ok(self) -> Result<Self> {
        Ok(self)
    }
}
impl<T> PipeOk for T {}

/// Outer product: entries `A_{i...} * B_{j...}` of order `ord(A)+ord(B)`.
pub fn outer_product<R: Real>(
    a: &DenseComplexTensor<R>,
    b: &DenseComplexTensor<R>,
) -> DenseComplexTensor<R> {
    let mut dims = a.dims().to_vec();
    dims.extend_from_slice(b.dims());
    let mut data = Vec::with_capacity(a.data.len() * b.data.len());
    for &x in &a.data {
        for &y in &b.data {
            data.push(x * y);
        }
    }
    DenseComplexTensor { dims, data }
}

/// `tensor_norm(F)`, exposed as a free function to mirror the module API.
pub fn tensor_norm<R: Real>(f: &DenseComplexTensor<R>) -> R {
    f.norm()
}
