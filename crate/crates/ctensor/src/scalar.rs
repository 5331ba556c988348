//! Real scalar abstraction so the whole crate works over `f32` or `f64`.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use rand::Rng;

/// Floating-point scalar the tensor machinery is generic over.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + Display
    + Debug
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn of(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 conversion")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over a [`Real`] base type.
pub type CScalar<R> = Complex<R>;

/// Standard normal sample via Box-Muller, driven by `f64` draws so the
/// stream is identical regardless of the target scalar type.
pub fn standard_normal<R: Real, G: Rng + ?Sized>(rng: &mut G) -> R {
    let u1: f64 = loop {
        let u = rng.gen::<f64>();
        if u > 0.0 {
            break u;
        }
    };
    let u2: f64 = rng.gen::<f64>();
    R::of((-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos())
}

/// Circularly symmetric complex Gaussian sample.
pub fn complex_normal<R: Real, G: Rng + ?Sized>(rng: &mut G) -> CScalar<R> {
    Complex::new(standard_normal(rng), standard_normal(rng))
}

/// Random complex vector on the unit sphere of `C^n`.
pub fn random_unit_vector<R: Real, G: Rng + ?Sized>(n: usize, rng: &mut G) -> Vec<CScalar<R>> {
    loop {
        let v: Vec<CScalar<R>> = (0..n).map(|_| complex_normal(rng)).collect();
        let norm = vec_norm(&v);
        if norm > R::of(1e-6) {
            return v.iter().map(|z| z / norm).collect();
        }
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm<R: Real>(v: &[CScalar<R>]) -> R {
    v.iter()
        .map(|z| z.norm_sqr())
        .fold(R::zero(), |a, b| a + b)
        .sqrt()
}

/// Hermitian inner product `<a, b> = a^H b`.
pub fn inner<R: Real>(a: &[CScalar<R>], b: &[CScalar<R>]) -> CScalar<R> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .fold(Complex::new(R::zero(), R::zero()), |s, t| s + t)
}

/// Normalizes `v` in place; returns the pre-normalization norm.
pub fn normalize<R: Real>(v: &mut [CScalar<R>]) -> R {
    let norm = vec_norm(v);
    if norm > R::zero() {
        for z in v.iter_mut() {
            *z = *z / norm;
        }
    }
    norm
}

/// Distance between the phase orbits of two unit vectors:
/// `min_phi || a - b e^{i phi} || = sqrt(2 - 2 |a^H b|)`.
pub fn phase_orbit_distance<R: Real>(a: &[CScalar<R>], b: &[CScalar<R>]) -> R {
    let two = R::of(2.0);
    let overlap = inner(a, b).norm();
    (two - two * overlap).max(R::zero()).sqrt()
}

/// Rotates `v` so its largest-modulus entry becomes real positive.
pub fn canonical_phase<R: Real>(v: &mut [CScalar<R>]) {
    let mut best = 0usize;
    let mut best_mod = R::zero();
    for (k, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best_mod {
            best_mod = m;
            best = k;
        }
    }
    if best_mod == R::zero() {
        return;
    }
    let phase = v[best] / best_mod;
    let rot = phase.conj();
    for z in v.iter_mut() {
        *z = *z * rot;
    }
}
