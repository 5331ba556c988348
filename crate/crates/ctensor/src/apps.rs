//! Two application reductions: best rank-one approximation of an
//! arbitrary complex tensor (with its CSS single-vector embedding), and
//! radar code design where the expected disturbance power is assembled
//! as a quartic conjugate form and minimized as a smallest-C-eigenvalue
//! problem.

use num_complex::Complex;

use crate::banach::{block_coordinate_ascent, AscentResult, BanachConfig, SlotKind};
use crate::bijection::s_inverse;
use crate::eigen::{solve_c_eig, SolverConfig};
use crate::error::{Error, Result};
use crate::forms::{ConjugatePolynomial, MonomialKey};
use crate::scalar::{normalize, random_unit_vector, vec_norm, CScalar, Real};
use crate::tensor::{each_index, outer_product, DenseComplexTensor, TAU_SYM};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Best rank-one approximation `lambda z^1 x ... x z^d` of a tensor.
#[derive(Debug, Clone)]
pub struct RankOneResult<R: Real> {
    /// Unit factor vectors.
    pub factors: Vec<Vec<CScalar<R>>>,
    /// Optimal nonnegative scale.
    pub lambda: R,
    /// `Re F(z^1,...,z^d)` at the output (equals lambda).
    pub objective: R,
    /// `|| lambda z^1 x ... x z^d - F ||`.
    pub residual: R,
}

/// Best rank-one approximation via alternating maximization of
/// `Re F(z^1,...,z^d)` over unit spheres; the optimal scale equals the
/// objective, and `residual^2 = ||F||^2 - objective^2`.
pub fn rank_one_als<R: Real>(
    f: &DenseComplexTensor<R>,
    cfg: &BanachConfig<R>,
) -> Result<RankOneResult<R>> {
    if f.norm() == R::zero() {
        return Err(Error::Argument("rank-one approximation of the zero tensor".into()));
    }
    // conjugated slots make the objective Re <z^1 x ... x z^d, F>, so the
    // blocks are directly the factors of the approximating tensor
    let pattern = vec![SlotKind::Conj; f.order()];
    let out: AscentResult<R> = block_coordinate_ascent(f, &pattern, cfg)?;
    let mut factors = out.blocks;
    let mut objective = out.value;
    if objective < R::zero() {
        for z in factors[0].iter_mut() {
            *z = -*z;
        }
        objective = -objective;
    }
    let lambda = objective;
    let mut rank_one: Option<DenseComplexTensor<R>> = None;
    for z in &factors {
        let v = DenseComplexTensor::from_data(&[z.len()], z.clone())?;
        rank_one = Some(match rank_one {
            None => v,
            Some(t) => outer_product(&t, &v),
        });
    }
    let rank_one = rank_one.expect("positive order").scaled_re(lambda);
    let residual = rank_one.sub(f)?.norm();
    Ok(RankOneResult { factors, lambda, objective, residual })
}

/// `Re F(z^1,...,z^d)` maximized under the coupled constraint
/// `sum_k ||z^k||^2 = d` (projected fixed-point ascent). Used to verify
/// that the per-block unit-sphere relaxation is tight.
pub fn rank_one_coupled_value<R: Real>(
    f: &DenseComplexTensor<R>,
    cfg: &BanachConfig<R>,
) -> Result<R> {
    if f.norm() == R::zero() {
        return Err(Error::Argument("rank-one approximation of the zero tensor".into()));
    }
    let d = f.order();
    let dims = f.dims().to_vec();
    let total: usize = dims.iter().sum();
    let radius = R::of(d as f64).sqrt();
    let scale = f.norm().max(R::one());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e3779b9);
    let split = |z: &[CScalar<R>]| -> Vec<Vec<CScalar<R>>> {
        let mut blocks = Vec::with_capacity(d);
        let mut at = 0;
        for &nk in &dims {
            blocks.push(z[at..at + nk].to_vec());
            at += nk;
        }
        blocks
    };
    let value = |blocks: &[Vec<CScalar<R>>]| -> R {
        let refs: Vec<&[CScalar<R>]> = blocks.iter().map(|b| &b[..]).collect();
        f.multilinear_eval(&refs).expect("evaluation").re
    };
    let mut best = R::neg_infinity();
    for s in 0..cfg.starts {
        let ladder = [R::zero(), R::one(), R::of(4.0), R::of(16.0)];
        let gamma = ladder[s % 4] * scale;
        let mut z = random_unit_vector(total, &mut rng);
        for w in z.iter_mut() {
            *w = *w * radius;
        }
        let mut obj = value(&split(&z));
        if obj > best {
            best = obj;
        }
        for _ in 0..cfg.max_sweeps {
            let blocks = split(&z);
            let mut dir: Vec<CScalar<R>> = Vec::with_capacity(total);
            for k in 0..d {
                let args: Vec<(usize, &[CScalar<R>])> = (0..d)
                    .filter(|&j| j != k)
                    .map(|j| (j, &blocks[j][..]))
                    .collect();
                let v = f.partial_eval(&args)?;
                dir.extend(v.data().iter().map(|c| c.conj()));
            }
            let mut z_new: Vec<CScalar<R>> =
                dir.iter().zip(&z).map(|(a, b)| a + b * gamma).collect();
            if normalize(&mut z_new) <= R::of(1e-14) {
                break;
            }
            for w in z_new.iter_mut() {
                *w = *w * radius;
            }
            let obj_new = value(&split(&z_new));
            z = z_new;
            let progress = obj_new - obj;
            obj = obj_new;
            if obj > best {
                best = obj;
            }
            if progress.abs() < cfg.tau_bca {
                break;
            }
        }
    }
    Ok(best)
}

/// Embeds the rank-one objective of `F` in `C^{n_1 x ... x n_d}` as a
/// CSS tensor `G` in `C^{(2N)^d}`, `N = sum n_k`, so that
/// `max Re F(z^1,...,z^d)` over unit blocks equals the maximum
/// single-vector value `G((xbar;x),...,(xbar;x))` over the unit sphere.
pub fn embed_rank_one_as_geig<R: Real>(
    f: &DenseComplexTensor<R>,
) -> Result<DenseComplexTensor<R>> {
    if f.norm() == R::zero() {
        return Err(Error::Argument("embedding of the zero tensor".into()));
    }
    let d = f.order();
    let dims = f.dims().to_vec();
    let total: usize = dims.iter().sum();
    let mut offsets = Vec::with_capacity(d);
    let mut at = 0;
    for &nk in &dims {
        offsets.push(at);
        at += nk;
    }
    // block placement: H(z,...,z) = F(z^1,...,z^d) for stacked z
    let mut h = DenseComplexTensor::zeros(&vec![total; d]);
    each_index(&dims, |idx| {
        let placed: Vec<usize> = idx.iter().zip(&offsets).map(|(&i, &o)| i + o).collect();
        h.set0(&placed, f.get0(idx));
    });
    let h = h.symmetrize()?;
    // G carries (sqrt(d^d)/2) H on the all-plain corner and its
    // conjugate on the all-conj corner; value at (xbar;x) is then
    // sqrt(d^d) Re H(x,...,x), matching the rescaling z = sqrt(d) x
    let c = R::of((d as f64).powi(d as i32)).sqrt() * R::of(0.5);
    let mut g = DenseComplexTensor::zeros(&vec![2 * total; d]);
    each_index(&vec![total; d], |idx| {
        let v = h.get0(idx);
        if v.re != R::zero() || v.im != R::zero() {
            let plain: Vec<usize> = idx.iter().map(|&i| i + total).collect();
            g.set0(&plain, v * c);
            g.set0(idx, v.conj() * c);
        }
    });
    debug_assert!(g.is_css(R::of(TAU_SYM)));
    Ok(g)
}

// ---------------------------------------------------------------------
// radar code design

/// One point scatterer: delay lag, mean normalized Doppler frequency,
/// frequency tolerance, and mean power.
#[derive(Debug, Clone)]
pub struct Scatterer<R: Real> {
    pub lag: usize,
    pub freq: R,
    pub tol: R,
    pub power: R,
}

/// Radar code design scenario: code length, Doppler grid resolution,
/// scatterers, receiver noise power, reference code, and the penalty
/// weight keeping the solution close to the reference.
#[derive(Debug, Clone)]
pub struct RadarScenario<R: Real> {
    pub n: usize,
    pub m: usize,
    pub scatterers: Vec<Scatterer<R>>,
    pub noise: R,
    pub reference: Vec<CScalar<R>>,
    pub penalty: R,
}

/// Ambiguity value of the designed code at one (lag, Doppler-bin) cell.
#[derive(Debug, Clone)]
pub struct AmbiguityEntry<R: Real> {
    pub r: usize,
    pub j: usize,
    pub x_j: R,
    pub weight: R,
    pub value: R,
}

#[derive(Debug, Clone)]
pub struct RadarSolution<R: Real> {
    /// Designed unit-norm code, phase-normalized toward the reference.
    pub code: Vec<CScalar<R>>,
    /// Value of the quartic objective at the code (noise excluded).
    pub objective: R,
    /// Receiver noise power, an additive constant excluded from the tensor.
    pub noise: R,
    /// Eigen-system residual of the minimizing pair.
    pub residual: R,
    pub report: Vec<AmbiguityEntry<R>>,
}

/// Center of Doppler bin j (0-based) on the m-bin grid over [-1/2, 1/2).
pub fn bin_center<R: Real>(j: usize, m: usize) -> R {
    R::of(-0.5) + (R::of(j as f64) + R::of(0.5)) / R::of(m as f64)
}

/// Bins whose half-open interval meets the scatterer's closed frequency
/// interval `[freq - tol/2, freq + tol/2]`.
fn delta_bins<R: Real>(sc: &Scatterer<R>, m: usize) -> Vec<usize> {
    let half = R::of(0.5) / R::of(m as f64);
    let lo = sc.freq - sc.tol * R::of(0.5);
    let hi = sc.freq + sc.tol * R::of(0.5);
    (0..m)
        .filter(|&j| {
            let c: R = bin_center(j, m);
            let a = c - half;
            let b = c + half;
            a <= hi && lo < b
        })
        .collect()
}

fn validate_scenario<R: Real>(sc: &RadarScenario<R>) -> Result<()> {
    if sc.n == 0 {
        return Err(Error::Argument("code length must be positive".into()));
    }
    if sc.m == 0 {
        return Err(Error::Argument("at least one Doppler bin is required".into()));
    }
    if sc.reference.len() != sc.n {
        return Err(Error::Argument(format!(
            "reference code has length {}, expected {}",
            sc.reference.len(),
            sc.n
        )));
    }
    if sc.noise < R::zero() || sc.penalty < R::zero() {
        return Err(Error::Argument("noise and penalty must be nonnegative".into()));
    }
    for (k, s) in sc.scatterers.iter().enumerate() {
        if s.lag >= sc.n {
            return Err(Error::Argument(format!(
                "scatterer {k}: lag {} outside 0..{}",
                s.lag,
                sc.n - 1
            )));
        }
        if s.tol < R::zero() || s.power < R::zero() {
            return Err(Error::Argument(format!(
                "scatterer {k}: tolerance and power must be nonnegative"
            )));
        }
        if delta_bins(s, sc.m).is_empty() {
            return Err(Error::Argument(format!(
                "scatterer {k}: no Doppler bin meets its frequency interval"
            )));
        }
    }
    Ok(())
}

/// 0/1 matrix with ones exactly where (row - column) = r.
pub fn build_shift_matrix<R: Real>(r: usize, n: usize) -> Result<DenseComplexTensor<R>> {
    if r >= n {
        return Err(Error::Argument(format!("shift {r} outside 0..{}", n - 1)));
    }
    let mut j = DenseComplexTensor::zeros(&[n, n]);
    for b in 1..=n - r {
        j.set(&[b + r, b], Complex::new(R::one(), R::zero()));
    }
    Ok(j)
}

/// `p(v)` with entries `e^{i 2 pi (k-1) v}`, k = 1..n.
pub fn steering_vector<R: Real>(v: R, n: usize) -> Vec<CScalar<R>> {
    (0..n)
        .map(|k| {
            let ang = R::of(2.0) * R::PI() * R::of(k as f64) * v;
            Complex::new(ang.cos(), ang.sin())
        })
        .collect()
}

/// Weight attached to cell (r, j): scatterer powers spread uniformly
/// over each scatterer's bin set.
fn cell_weight<R: Real>(sc: &RadarScenario<R>, r: usize, j: usize) -> R {
    let mut w = R::zero();
    for s in &sc.scatterers {
        if s.lag != r {
            continue;
        }
        let bins = delta_bins(s, sc.m);
        if bins.contains(&j) {
            w += s.power / R::of(bins.len() as f64);
        }
    }
    w
}

/// Quadratic of cell (r, x_j) in the plain pairing,
/// `h_{r,j}(s) = s^T J^r (s .* p(x_j))`: its squared modulus is exactly
/// `conj(W) x W` for the symmetric matrix W of the quadratic, so each
/// cell contributes a PSD rank-one block to the flattening of the
/// assembled tensor. The reported ambiguity values use the
/// matched-filter pairing instead (see [`cell_value`]).
fn cell_form<R: Real>(r: usize, x_j: R, n: usize) -> ConjugatePolynomial<R> {
    let p = steering_vector(x_j, n);
    let mut h = ConjugatePolynomial::zero(n);
    for b in 1..=n - r {
        h.add_term(MonomialKey::new(vec![], vec![b + r, b]), p[b - 1]);
    }
    h
}

/// Ambiguity value `|s^H J^r (s .* p(x_j))|^2` of a code at one cell.
fn cell_value<R: Real>(r: usize, x_j: R, s: &[CScalar<R>]) -> R {
    let p = steering_vector(x_j, s.len());
    let mut h = Complex::new(R::zero(), R::zero());
    for b in 0..s.len() - r {
        h = h + s[b + r].conj() * p[b] * s[b];
    }
    h.norm_sqr()
}

/// Quartic conjugate-form objective of the scenario as a CPS tensor in
/// `C^{n^4}`: the weighted ambiguity powers minus the reference-tracking
/// penalty. On the unit sphere the printed penalty
/// `(s^H s0 + s0^H s)^2 ||s||^2` equals `4 |s^H s0|^2 ||s||^2` after
/// aligning the free global phase of s, and only the latter is a
/// conjugate (2,2)-form, so the tensor carries the aligned version;
/// the minimizer is reported at the aligned phase.
pub fn build_radar_objective<R: Real>(
    sc: &RadarScenario<R>,
) -> Result<DenseComplexTensor<R>> {
    validate_scenario(sc)?;
    let n = sc.n;
    let mut poly = ConjugatePolynomial::zero(n);
    let mut lags: Vec<usize> = sc.scatterers.iter().map(|s| s.lag).collect();
    lags.sort_unstable();
    lags.dedup();
    for &r in &lags {
        for j in 0..sc.m {
            let w = cell_weight(sc, r, j);
            if w == R::zero() {
                continue;
            }
            let h = cell_form(r, bin_center(j, sc.m), n);
            let sq = h.conjugate().mul(&h);
            poly = poly.add(&sq.scaled(Complex::new(w, R::zero())));
        }
    }
    if sc.penalty > R::zero() {
        let mut q = ConjugatePolynomial::zero(n);
        let mut norm_sq = ConjugatePolynomial::zero(n);
        for a in 1..=n {
            q.add_term(MonomialKey::new(vec![a], vec![]), sc.reference[a - 1]);
            norm_sq.add_term(
                MonomialKey::new(vec![a], vec![a]),
                Complex::new(R::one(), R::zero()),
            );
        }
        let pen = q.conjugate().mul(&q).mul(&norm_sq);
        poly = poly.add(&pen.scaled(Complex::new(-R::of(4.0) * sc.penalty, R::zero())));
    }
    if poly.is_zero() {
        return Ok(DenseComplexTensor::zeros(&[n, n, n, n]));
    }
    let f = s_inverse(&poly.with_n(n)?)?;
    if !f.is_cps(R::of(TAU_SYM)) {
        return Err(Error::Internal("radar objective tensor failed CPS certification".into()));
    }
    Ok(f)
}

/// Minimizes the scenario objective over the unit sphere via the
/// smallest C-eigenvalue of its tensor, normalizing the code's global
/// phase so `Re (s*)^H s0 > 0` when the inner product is nonzero.
pub fn solve_radar<R: Real>(
    sc: &RadarScenario<R>,
    cfg: &SolverConfig<R>,
) -> Result<RadarSolution<R>> {
    let f = build_radar_objective(sc)?;
    let pairs = solve_c_eig(&f, cfg)?;
    let bottom = pairs.last().expect("nonempty spectrum");
    let mut code = bottom.x.clone();
    let objective = bottom.lambda;
    let overlap = code
        .iter()
        .zip(&sc.reference)
        .map(|(a, b)| a.conj() * b)
        .fold(Complex::new(R::zero(), R::zero()), |s, t| s + t);
    if overlap.norm() > R::of(1e-12) * vec_norm(&sc.reference).max(R::one()) {
        let rot = overlap / Complex::new(overlap.norm(), R::zero());
        for z in code.iter_mut() {
            *z = *z * rot;
        }
    }
    let mut lags: Vec<usize> = sc.scatterers.iter().map(|s| s.lag).collect();
    lags.sort_unstable();
    lags.dedup();
    let mut report = Vec::new();
    for &r in &lags {
        for j in 0..sc.m {
            let x_j = bin_center(j, sc.m);
            report.push(AmbiguityEntry {
                r,
                j,
                x_j,
                weight: cell_weight(sc, r, j),
                value: cell_value(r, x_j, &code),
            });
        }
    }
    Ok(RadarSolution {
        code,
        objective,
        noise: sc.noise,
        residual: bottom.residual,
        report,
    })
}
