//! Structured tensor eigenpairs via shifted fixed-point ascent with
//! multistart, plus cross-checks between the three eigenpair notions
//! and a brute-force sphere-sampling oracle for tests.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bijection::embed_cps_to_css;
use crate::error::{Error, Result};
use crate::scalar::{
    canonical_phase, inner, normalize, phase_orbit_distance, random_unit_vector, vec_norm,
    CScalar, Real,
};
use crate::tensor::{outer_product, DenseComplexTensor, TAU_SYM};

/// Which defining system an eigenpair satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenKind {
    C,
    G,
    Q,
}

#[derive(Debug, Clone)]
pub struct EigenPair<R: Real> {
    pub lambda: R,
    pub x: Vec<CScalar<R>>,
    pub residual: R,
    pub kind: EigenKind,
    pub iters: usize,
    pub start_id: usize,
}

#[derive(Debug, Clone)]
pub struct SolverConfig<R: Real> {
    pub starts: usize,
    pub max_iters: usize,
    pub tau_eig: R,
    pub seed: u64,
}

impl<R: Real> Default for SolverConfig<R> {
    fn default() -> Self {
        Self { starts: 32, max_iters: 2000, tau_eig: R::of(1e-8), seed: 0 }
    }
}

/// One verified implication between two eigenpair systems.
#[derive(Debug, Clone)]
pub struct RelationCheck<R: Real> {
    pub lambda_from: R,
    pub lambda_to: R,
    pub residual: R,
}

#[derive(Debug, Clone)]
pub struct RelationReport<R: Real> {
    pub forward: Vec<RelationCheck<R>>,
    pub backward: Vec<RelationCheck<R>>,
}

fn conj_vec<R: Real>(x: &[CScalar<R>]) -> Vec<CScalar<R>> {
    x.iter().map(|z| z.conj()).collect()
}

// ---------------------------------------------------------------------
// defining-system residuals

/// Largest defect of the two equivalent C-eigen systems
/// `F(., xbar^{d-1}, x^d) = lambda x` and `F(xbar^d, x^{d-1}, .) = lambda xbar`.
pub fn c_eig_residual<R: Real>(
    f: &DenseComplexTensor<R>,
    lambda: R,
    x: &[CScalar<R>],
) -> Result<R> {
    if let Err(defect) = f.check_cps(R::of(TAU_SYM)) {
        return Err(Error::Structure(format!("tensor is not CPS: {defect:?}")));
    }
    let d = f.order() / 2;
    let xc = conj_vec(x);
    let u = c_map(f, d, &xc, x)?;
    let r1: R = u
        .iter()
        .zip(x)
        .map(|(a, b)| (a - b * lambda).norm_sqr())
        .fold(R::zero(), |s, t| s + t)
        .sqrt();
    // second system: contract modes 0..d-1 with xbar, d..2d-2 with x
    let mut args: Vec<(usize, &[CScalar<R>])> = Vec::new();
    for k in 0..d {
        args.push((k, &xc[..]));
    }
    for k in d..2 * d - 1 {
        args.push((k, &x[..]));
    }
    let v = f.partial_eval(&args)?;
    let r2: R = v
        .data()
        .iter()
        .zip(&xc)
        .map(|(a, b)| (a - b * lambda).norm_sqr())
        .fold(R::zero(), |s, t| s + t)
        .sqrt();
    Ok(r1.max(r2))
}

/// `F(., xbar^{d-1}, x^d)` as a plain vector.
fn c_map<R: Real>(
    f: &DenseComplexTensor<R>,
    d: usize,
    xc: &[CScalar<R>],
    x: &[CScalar<R>],
) -> Result<Vec<CScalar<R>>> {
    let mut args: Vec<(usize, &[CScalar<R>])> = Vec::new();
    for k in 1..d {
        args.push((k, xc));
    }
    for k in d..2 * d {
        args.push((k, x));
    }
    Ok(f.partial_eval(&args)?.data().to_vec())
}

/// Residual of the Q-eigen system `H(., x^{d-1}) = lambda xbar`.
pub fn q_eig_residual<R: Real>(
    h: &DenseComplexTensor<R>,
    lambda: R,
    x: &[CScalar<R>],
) -> Result<R> {
    let u = q_map(h, x)?;
    Ok(u.iter()
        .zip(x)
        .map(|(a, b)| (a - b.conj() * lambda).norm_sqr())
        .fold(R::zero(), |s, t| s + t)
        .sqrt())
}

fn q_map<R: Real>(h: &DenseComplexTensor<R>, x: &[CScalar<R>]) -> Result<Vec<CScalar<R>>> {
    let args: Vec<(usize, &[CScalar<R>])> = (1..h.order()).map(|k| (k, x)).collect();
    Ok(h.partial_eval(&args)?.data().to_vec())
}

/// Residual of the G-eigen system
/// `G((.;.), (xbar;x)^{d-1}) = lambda (x;xbar)` for x in C^n.
pub fn g_eig_residual<R: Real>(
    g: &DenseComplexTensor<R>,
    lambda: R,
    x: &[CScalar<R>],
) -> Result<R> {
    let w = stack(x);
    let u = g_map(g, &w)?;
    let target: Vec<CScalar<R>> = conj_vec(&w); // (x; xbar)
    Ok(u.iter()
        .zip(&target)
        .map(|(a, b)| (a - b * lambda).norm_sqr())
        .fold(R::zero(), |s, t| s + t)
        .sqrt())
}

/// Stacked argument (xbar; x).
fn stack<R: Real>(x: &[CScalar<R>]) -> Vec<CScalar<R>> {
    let mut w = conj_vec(x);
    w.extend_from_slice(x);
    w
}

fn g_map<R: Real>(g: &DenseComplexTensor<R>, w: &[CScalar<R>]) -> Result<Vec<CScalar<R>>> {
    let args: Vec<(usize, &[CScalar<R>])> = (1..g.order()).map(|k| (k, w)).collect();
    Ok(g.partial_eval(&args)?.data().to_vec())
}

// ---------------------------------------------------------------------
// shifted fixed-point ascent core

struct AscentOutcome<R: Real> {
    lambda: R,
    x: Vec<CScalar<R>>,
    residual: R,
    iters: usize,
}

/// Runs `x <- normalize(step(x) + gamma x)` with a fixed shift until the
/// fixed-point residual drops below tau, returning the best iterate seen.
///
/// `step` returns the ascent direction u; the caller guarantees that at
/// a KKT point u = lambda x with lambda = value. `project` is applied
/// to every iterate (identity by default; used for deflation). A large
/// enough shift makes the iteration convergent; callers vary the shift
/// across starts rather than adapting it within a run, because the
/// objective is allowed to dip transiently and reacting to dips stalls
/// the iteration.
fn shifted_ascent<R: Real>(
    x0: Vec<CScalar<R>>,
    step: &dyn Fn(&[CScalar<R>]) -> Vec<CScalar<R>>,
    value: &dyn Fn(&[CScalar<R>], &[CScalar<R>]) -> R,
    project: &dyn Fn(&mut Vec<CScalar<R>>),
    scale: R,
    gamma: R,
    max_iters: usize,
    tau: R,
) -> AscentOutcome<R> {
    let mut x = x0;
    project(&mut x);
    normalize(&mut x);
    let mut gamma = gamma;
    let gamma_cap = R::of(1024.0) * scale.max(R::one());
    let mut best = AscentOutcome {
        lambda: R::neg_infinity(),
        x: x.clone(),
        residual: R::infinity(),
        iters: 0,
    };
    for it in 1..=max_iters {
        let u = step(&x);
        let obj = value(&x, &u);
        let resid = fixed_point_residual(&u, obj, &x);
        if resid < best.residual {
            best = AscentOutcome { lambda: obj, x: x.clone(), residual: resid, iters: it };
        }
        if resid <= tau {
            break;
        }
        let mut cand: Vec<CScalar<R>> =
            u.iter().zip(&x).map(|(a, b)| a + b * gamma).collect();
        project(&mut cand);
        if normalize(&mut cand) <= R::of(1e-14) * scale.max(R::one()) {
            // direction vanished; raise the shift and retry
            gamma = if gamma == R::zero() { scale.max(R::one()) } else { gamma * R::of(2.0) };
            if gamma > gamma_cap {
                break;
            }
            continue;
        }
        x = cand;
    }
    best
}

/// Shift used for a given start index: cycling through increasing
/// multiples of the tensor scale trades convergence speed for the
/// guaranteed monotonicity of large shifts.
fn start_gamma<R: Real>(start: usize, scale: R, needs_positive: bool) -> R {
    let base = scale.max(R::one());
    let ladder: [f64; 4] = if needs_positive { [1.0, 2.0, 8.0, 32.0] } else { [0.0, 1.0, 4.0, 16.0] };
    base * R::of(ladder[start % 4])
}

fn fixed_point_residual<R: Real>(u: &[CScalar<R>], lambda: R, x: &[CScalar<R>]) -> R {
    u.iter()
        .zip(x)
        .map(|(a, b)| (a - b * lambda).norm_sqr())
        .fold(R::zero(), |s, t| s + t)
        .sqrt()
}

/// Keeps one representative per (lambda, phase-orbit) cluster, sorted by
/// lambda descending.
fn dedupe<R: Real>(mut pairs: Vec<EigenPair<R>>, tau_eig: R) -> Vec<EigenPair<R>> {
    pairs.sort_by(|a, b| {
        b.lambda
            .partial_cmp(&a.lambda)
            .unwrap()
            .then(a.residual.partial_cmp(&b.residual).unwrap())
    });
    let mut kept: Vec<EigenPair<R>> = Vec::new();
    for p in pairs {
        let dup = kept.iter().any(|q| {
            (p.lambda - q.lambda).abs() <= tau_eig
                && phase_orbit_distance(&p.x, &q.x) <= R::of(1e-6)
        });
        if !dup {
            kept.push(p);
        }
    }
    kept
}

// ---------------------------------------------------------------------
// solvers

/// C-eigenpairs of a conjugate partial-symmetric tensor: multistart
/// shifted ascent on the form value, both signs, deduplicated and
/// sorted by eigenvalue descending.
///
/// For order-2 inputs (Hermitian matrices) the search additionally
/// deflates against already-found eigenvectors, which recovers the full
/// spectrum; for higher orders no completeness is claimed.
pub fn solve_c_eig<R: Real>(
    f: &DenseComplexTensor<R>,
    cfg: &SolverConfig<R>,
) -> Result<Vec<EigenPair<R>>> {
    if let Err(defect) = f.check_cps(R::of(TAU_SYM)) {
        return Err(Error::Structure(format!("tensor is not CPS: {defect:?}")));
    }
    let d = f.order() / 2;
    let n = f.dims()[0];
    let scale = f.norm();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut found: Vec<EigenPair<R>> = Vec::new();
    let mut best_residual = R::infinity();

    let run = |tensor: &DenseComplexTensor<R>,
                   sign: R,
                   start_id: usize,
                   x0: Vec<CScalar<R>>,
                   project: &dyn Fn(&mut Vec<CScalar<R>>),
                   found: &mut Vec<EigenPair<R>>,
                   best_residual: &mut R| {
        let step = |x: &[CScalar<R>]| {
            let xc = conj_vec(x);
            c_map(tensor, d, &xc, x).expect("contraction")
        };
        let value = |x: &[CScalar<R>], u: &[CScalar<R>]| inner(x, u).re;
        let gamma = start_gamma(start_id, scale, false);
        let out =
            shifted_ascent(x0, &step, &value, project, scale, gamma, cfg.max_iters, cfg.tau_eig);
        let lambda = sign * out.lambda;
        let mut x = out.x;
        canonical_phase(&mut x);
        let residual = c_eig_residual(f, lambda, &x).expect("residual");
        if residual < *best_residual {
            *best_residual = residual;
        }
        if residual <= cfg.tau_eig {
            found.push(EigenPair {
                lambda,
                x,
                residual,
                kind: EigenKind::C,
                iters: out.iters,
                start_id,
            });
        }
    };

    let identity = |_: &mut Vec<CScalar<R>>| {};
    let neg = f.scaled_re(-R::one());
    for s in 0..cfg.starts {
        let x0 = random_unit_vector(n, &mut rng);
        run(f, R::one(), s, x0.clone(), &identity, &mut found, &mut best_residual);
        run(&neg, -R::one(), s, x0, &identity, &mut found, &mut best_residual);
    }

    if d == 1 {
        // Hermitian case: eigenvectors are orthogonal, so deflating the
        // iterates against found eigenvectors is exact and yields the
        // whole spectrum (descending, then ascending for the negated run).
        for (tensor, sign) in [(f, R::one()), (&neg, -R::one())] {
            let mut basis: Vec<Vec<CScalar<R>>> = Vec::new();
            for k in 0..n {
                let basis_now = basis.clone();
                let project = move |v: &mut Vec<CScalar<R>>| {
                    for b in &basis_now {
                        let c = inner(b, v);
                        for (vi, bi) in v.iter_mut().zip(b) {
                            *vi = *vi - bi * c;
                        }
                    }
                };
                let mut got: Option<Vec<CScalar<R>>> = None;
                for s in 0..cfg.starts.max(4) {
                    let before = found.len();
                    let x0 = random_unit_vector(n, &mut rng);
                    run(
                        tensor,
                        sign,
                        cfg.starts + k * cfg.starts + s,
                        x0,
                        &project,
                        &mut found,
                        &mut best_residual,
                    );
                    if found.len() > before {
                        got = Some(found.last().unwrap().x.clone());
                        break;
                    }
                }
                match got {
                    Some(mut v) => {
                        let pv = &project;
                        pv(&mut v);
                        if normalize(&mut v) > R::of(1e-8) {
                            basis.push(v);
                        } else {
                            break;
                        }
                    }
                    None => break,
                }
            }
        }
    }

    if found.is_empty() {
        return Err(Error::Convergence {
            best_residual: best_residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(dedupe(found, cfg.tau_eig))
}

/// G-eigenpairs of a conjugate super-symmetric tensor. The reported
/// vector lives in C^n (half the stacked dimension).
pub fn solve_g_eig<R: Real>(
    g: &DenseComplexTensor<R>,
    cfg: &SolverConfig<R>,
) -> Result<Vec<EigenPair<R>>> {
    if let Err(defect) = g.check_css(R::of(TAU_SYM)) {
        return Err(Error::Structure(format!("tensor is not CSS: {defect:?}")));
    }
    let n = g.dims()[0] / 2;
    let scale = g.norm();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut found: Vec<EigenPair<R>> = Vec::new();
    let mut best_residual = R::infinity();
    let half = R::of(0.5);

    for sign_flip in [false, true] {
        let tensor = if sign_flip { g.scaled_re(-R::one()) } else { g.clone() };
        let sign = if sign_flip { -R::one() } else { R::one() };
        let step = |x: &[CScalar<R>]| {
            let w = stack(x);
            let u = g_map(&tensor, &w).expect("contraction");
            u[..n].to_vec() // first half of the system drives x
        };
        // objective is the full form value; lambda is half of it
        let value = |x: &[CScalar<R>], _u1: &[CScalar<R>]| {
            let w = stack(x);
            let u = g_map(&tensor, &w).expect("contraction");
            let dot = w
                .iter()
                .zip(&u)
                .map(|(a, b)| a * b)
                .fold(Complex::new(R::zero(), R::zero()), |s, t| s + t);
            dot.re * half
        };
        for s in 0..cfg.starts {
            let x0 = random_unit_vector(n, &mut rng);
            let out = shifted_ascent(
                x0,
                &step,
                &value,
                &|_| {},
                scale,
                start_gamma(s, scale, true),
                cfg.max_iters,
                // the loop sees only the first half of the stacked system;
                // the accepted residual spans both halves (sqrt(2) larger)
                cfg.tau_eig * R::of(0.5),
            );
            let lambda = sign * out.lambda;
            let residual = g_eig_residual(g, lambda, &out.x)?;
            if residual < best_residual {
                best_residual = residual;
            }
            if residual <= cfg.tau_eig {
                found.push(EigenPair {
                    lambda,
                    x: out.x,
                    residual,
                    kind: EigenKind::G,
                    iters: out.iters,
                    start_id: s,
                });
            }
        }
    }
    if found.is_empty() {
        return Err(Error::Convergence {
            best_residual: best_residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(dedupe(found, cfg.tau_eig))
}

/// Rotates x by the d-th root of unity putting the largest-modulus
/// entry's phase closest to the positive real axis (the only phase
/// freedom a Q-eigenpair has).
fn canonical_root_phase<R: Real>(x: &mut [CScalar<R>], d: usize) {
    let mut best = 0usize;
    let mut best_mod = R::zero();
    for (k, z) in x.iter().enumerate() {
        if z.norm() > best_mod {
            best_mod = z.norm();
            best = k;
        }
    }
    if best_mod == R::zero() {
        return;
    }
    let mut best_rot = Complex::new(R::one(), R::zero());
    let mut best_re = (x[best] * best_rot).re;
    for k in 1..d {
        let ang = R::of(2.0) * R::PI() * R::of(k as f64) / R::of(d as f64);
        let rot = Complex::new(ang.cos(), ang.sin());
        let re = (x[best] * rot).re;
        if re > best_re {
            best_re = re;
            best_rot = rot;
        }
    }
    for z in x.iter_mut() {
        *z = *z * best_rot;
    }
}

/// Q-eigenpairs of a symmetric complex tensor. Eigenvalues are reported
/// nonnegative: the phase rotation x -> x e^{i pi/d} flips the sign of
/// lambda, so the nonnegative representative is canonical.
pub fn solve_q_eig<R: Real>(
    h: &DenseComplexTensor<R>,
    cfg: &SolverConfig<R>,
) -> Result<Vec<EigenPair<R>>> {
    if let Err(defect) = h.check_symmetric(R::of(TAU_SYM)) {
        return Err(Error::Structure(format!("tensor is not symmetric: {defect:?}")));
    }
    let d = h.order();
    let n = h.dims()[0];
    let scale = h.norm();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut found: Vec<EigenPair<R>> = Vec::new();
    let mut best_residual = R::infinity();

    // fixed point of x <- normalize(conj(u) + gamma x), u = H(., x^{d-1});
    // at a KKT point u = lambda xbar with lambda = Re sum u_i x_i
    let step = |x: &[CScalar<R>]| {
        let u = q_map(h, x).expect("contraction");
        conj_vec(&u)
    };
    let value = |x: &[CScalar<R>], cu: &[CScalar<R>]| {
        // cu = conj(u); Re sum u_i x_i = Re inner(x, cu)... both equal
        cu.iter()
            .zip(x)
            .map(|(a, b)| (a.conj() * b).re)
            .fold(R::zero(), |s, t| s + t)
    };
    for s in 0..cfg.starts {
        let x0 = random_unit_vector(n, &mut rng);
        let out =
            shifted_ascent(x0, &step, &value, &|_| {}, scale, start_gamma(s, scale, true), cfg.max_iters, cfg.tau_eig);
        let mut lambda = out.lambda;
        let mut x = out.x;
        if lambda < R::zero() {
            // rotate onto the nonnegative representative
            let ang = R::PI() / R::of(d as f64);
            let rot = Complex::new(ang.cos(), ang.sin());
            for z in x.iter_mut() {
                *z = *z * rot;
            }
            lambda = -lambda;
        }
        canonical_root_phase(&mut x, d);
        let residual = q_eig_residual(h, lambda, &x)?;
        if residual < best_residual {
            best_residual = residual;
        }
        if residual <= cfg.tau_eig {
            found.push(EigenPair {
                lambda,
                x,
                residual,
                kind: EigenKind::Q,
                iters: out.iters,
                start_id: s,
            });
        }
    }
    if found.is_empty() {
        return Err(Error::Convergence {
            best_residual: best_residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(dedupe(found, cfg.tau_eig))
}

// ---------------------------------------------------------------------
// relations between the notions

/// For symmetric H and F = conj(H) (x) H: every Q-eigenpair (lambda, x)
/// of H gives the C-eigenpair (lambda^2, x) of F, and every positive
/// C-eigenpair (mu, x) of F gives the Q-eigenpair (sqrt(mu), x e^{-i theta/d})
/// with theta the phase of H(x,...,x).
pub fn check_q_c_relation<R: Real>(
    h: &DenseComplexTensor<R>,
    cfg: &SolverConfig<R>,
) -> Result<RelationReport<R>> {
    let f = outer_product(&h.conj(), h);
    if let Err(defect) = f.check_cps(R::of(TAU_SYM)) {
        return Err(Error::Internal(format!(
            "conj(H) (x) H failed the CPS certificate: {defect:?}"
        )));
    }
    let d = h.order();
    // solve the source systems tighter than the target tolerance: mapping
    // a pair into the other system amplifies its residual by O(|lambda|)
    let tight = SolverConfig { tau_eig: cfg.tau_eig * R::of(1e-2), ..cfg.clone() };
    let q_pairs = solve_q_eig(h, &tight).or_else(|_| solve_q_eig(h, cfg))?;
    let mut forward = Vec::new();
    for p in &q_pairs {
        let mu = p.lambda * p.lambda;
        let residual = c_eig_residual(&f, mu, &p.x)?;
        if residual > cfg.tau_eig {
            return Err(Error::Relation(format!(
                "Q-eigenpair lambda={} does not give a C-eigenpair at lambda^2 (residual {})",
                p.lambda, residual
            )));
        }
        forward.push(RelationCheck { lambda_from: p.lambda, lambda_to: mu, residual });
    }
    let c_pairs = solve_c_eig(&f, &tight).or_else(|_| solve_c_eig(&f, cfg))?;
    let mut backward = Vec::new();
    for p in &c_pairs {
        if p.lambda <= cfg.tau_eig {
            continue;
        }
        let lam = p.lambda.sqrt();
        let args: Vec<&[CScalar<R>]> = (0..d).map(|_| &p.x[..]).collect();
        let hval = h.multilinear_eval(&args)?;
        let theta = hval.im.atan2(hval.re);
        let ang = -theta / R::of(d as f64);
        let rot = Complex::new(ang.cos(), ang.sin());
        let y: Vec<CScalar<R>> = p.x.iter().map(|z| z * rot).collect();
        let residual = q_eig_residual(h, lam, &y)?;
        if residual > cfg.tau_eig {
            return Err(Error::Relation(format!(
                "C-eigenpair mu={} does not give a Q-eigenpair at sqrt(mu) (residual {})",
                p.lambda, residual
            )));
        }
        backward.push(RelationCheck { lambda_from: p.lambda, lambda_to: lam, residual });
    }
    Ok(RelationReport { forward, backward })
}

/// For CPS F and its CSS embedding G: lambda is a C-eigenvalue of F at x
/// exactly when lambda/2 is a G-eigenvalue of G at the same x.
pub fn check_c_g_relation<R: Real>(
    f: &DenseComplexTensor<R>,
    cfg: &SolverConfig<R>,
) -> Result<RelationReport<R>> {
    let g = embed_cps_to_css(f)?;
    let half = R::of(0.5);
    let tight = SolverConfig { tau_eig: cfg.tau_eig * R::of(1e-2), ..cfg.clone() };
    let c_pairs = solve_c_eig(f, &tight).or_else(|_| solve_c_eig(f, cfg))?;
    let mut forward = Vec::new();
    for p in &c_pairs {
        let residual = g_eig_residual(&g, p.lambda * half, &p.x)?;
        if residual > cfg.tau_eig {
            return Err(Error::Relation(format!(
                "C-eigenpair lambda={} fails the G-system at lambda/2 (residual {})",
                p.lambda, residual
            )));
        }
        forward.push(RelationCheck {
            lambda_from: p.lambda,
            lambda_to: p.lambda * half,
            residual,
        });
    }
    let g_pairs = solve_g_eig(&g, &tight).or_else(|_| solve_g_eig(&g, cfg))?;
    let mut backward = Vec::new();
    for p in &g_pairs {
        let lam = p.lambda * R::of(2.0);
        let residual = c_eig_residual(f, lam, &p.x)?;
        if residual > cfg.tau_eig {
            return Err(Error::Relation(format!(
                "G-eigenpair lambda={} fails the C-system at 2 lambda (residual {})",
                p.lambda, residual
            )));
        }
        backward.push(RelationCheck { lambda_from: p.lambda, lambda_to: lam, residual });
    }
    Ok(RelationReport { forward, backward })
}

// ---------------------------------------------------------------------
// brute-force oracle

/// Best value of a real objective over random complex unit vectors,
/// polished by shrinking random perturbations. A cheap lower-bound
/// certificate for maxima in tests — never used by the solvers.
pub fn sphere_oracle<R: Real>(
    objective: &dyn Fn(&[CScalar<R>]) -> R,
    n: usize,
    samples: usize,
    seed: u64,
) -> (R, Vec<CScalar<R>>) {
    assert!(samples >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_x = random_unit_vector(n, &mut rng);
    let mut best = objective(&best_x);
    for _ in 1..samples {
        let x = random_unit_vector(n, &mut rng);
        let v = objective(&x);
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let mut sigma = R::of(0.3);
    while sigma > R::of(1e-7) {
        let mut improved = false;
        for _ in 0..60 {
            let noise = random_unit_vector(n, &mut rng);
            let mut cand: Vec<CScalar<R>> =
                best_x.iter().zip(&noise).map(|(a, b)| a + b * sigma).collect();
            normalize(&mut cand);
            let v = objective(&cand);
            if v > best {
                best = v;
                best_x = cand;
                improved = true;
            }
        }
        if !improved {
            sigma = sigma * R::of(0.5);
        }
    }
    let _ = vec_norm(&best_x);
    (best, best_x)
}
