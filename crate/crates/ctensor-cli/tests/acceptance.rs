//! Acceptance gate: one test per release criterion, each printing a
//! single pass line. Tolerances are pinned here and must not be loosened.

use std::io::Write as _;
use std::process::{Command, Stdio};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ctensor::apps::{
    embed_rank_one_as_geig, rank_one_als, solve_radar, RadarScenario, Scatterer,
};
use ctensor::banach::{check_css_banach, hermitian_banach, sandwich_check, BanachConfig};
use ctensor::bijection::{
    cps_decompose, flatten_square, g_forward, g_inverse, is_flattening_psd, s_forward,
    s_inverse,
};
use ctensor::eigen::{
    check_c_g_relation, check_q_c_relation, solve_c_eig, solve_g_eig, SolverConfig,
};
use ctensor::forms::{parse_poly, print_poly, ConjugatePolynomial, MonomialKey};
use ctensor::linalg::hermitian_eig;
use ctensor::{outer_product, Tensor64};

type C64 = Complex64;
type Poly = ConjugatePolynomial<f64>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn randc(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
}

fn random_tensor(dims: &[usize], rng: &mut ChaCha8Rng) -> Tensor64 {
    let total: usize = dims.iter().product();
    Tensor64::from_data(dims, (0..total).map(|_| randc(rng)).collect()).unwrap()
}

fn random_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    (0..n).map(|_| randc(rng)).collect()
}

/// Random conjugate partial-symmetric tensor in C^{n^{2d}}.
fn random_cps(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Tensor64 {
    random_tensor(&vec![n; 2 * d], rng).cps_project().unwrap()
}

/// Random conjugate super-symmetric tensor in C^{(2n)^d}.
fn random_css(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Tensor64 {
    random_tensor(&vec![2 * n; d], rng).css_project().unwrap()
}

fn random_symmetric(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Tensor64 {
    random_tensor(&vec![n; d], rng).symmetrize().unwrap()
}

fn pass(criterion: usize, what: &str) {
    println!("criterion {criterion}: pass — {what}");
}

const QUARTIC: &str = "(1-1i)*~x1^2*x1^2 + 4*~x1*~x2*x1*x2 + 6*~x1*~x2*x2^2";
const QUADRATIC: &str = "i*~x1^2 + 2*~x1*x1 + 4*~x2*x1 + 3*x2^2";

#[test]
fn criterion_01_symmetric_form_bijection_example() {
    let p: Poly = parse_poly(QUARTIC).unwrap();
    let f = s_inverse(&p).unwrap();
    assert_eq!(f.dims(), &[2, 2, 2, 2]);
    let expect = |idx: &[usize], v: C64| {
        assert!((f.get(idx) - v).norm() <= 1e-12, "F{idx:?} = {}", f.get(idx));
    };
    expect(&[1, 1, 1, 1], c(1.0, -1.0));
    for idx in [[1, 2, 1, 2], [1, 2, 2, 1], [2, 1, 1, 2], [2, 1, 2, 1]] {
        expect(&idx, c(1.0, 0.0));
    }
    expect(&[1, 2, 2, 2], c(3.0, 0.0));
    expect(&[2, 1, 2, 2], c(3.0, 0.0));
    let nonzero = f.data().iter().filter(|z| z.norm() > 0.0).count();
    assert_eq!(nonzero, 7, "exactly the seven listed entries are nonzero");
    assert_eq!(print_poly(&s_forward(&f).unwrap()), QUARTIC);
    pass(1, "quartic example tensor entries exact and round-trip");
}

#[test]
fn criterion_02_general_form_bijection_example() {
    let p: Poly = parse_poly(QUADRATIC).unwrap();
    let g = g_inverse(&p).unwrap();
    assert_eq!(g.dims(), &[4, 4]);
    assert_eq!(print_poly(&g_forward(&g).unwrap()), QUADRATIC);
    pass(2, "quadratic example matrix round-trips through the general form");
}

/// Builds a real-valued polynomial as p + conj(p).
fn random_real_valued(rng: &mut ChaCha8Rng) -> Poly {
    let n = rng.gen_range(1..=3);
    let mut p = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=4) {
        let deg = rng.gen_range(1..=3usize);
        let split = rng.gen_range(0..=deg);
        let conj: Vec<usize> = (0..split).map(|_| rng.gen_range(1..=n)).collect();
        let plain: Vec<usize> = (split..deg).map(|_| rng.gen_range(1..=n)).collect();
        p.add_term(MonomialKey::new(conj, plain), randc(rng));
    }
    let p = p.with_n(n).unwrap();
    p.add(&p.conjugate())
}

#[test]
fn criterion_03_realness_characterization_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..200 {
        let p = random_real_valued(&mut rng);
        assert!(p.check_real_valued(1e-10).is_real_valued(), "case {case}");
        for _ in 0..50 {
            let x = random_point(p.n(), &mut rng);
            let v = p.eval(&x).unwrap();
            assert!(
                v.im.abs() <= 1e-10 * (1.0 + v.norm()),
                "case {case}: Im = {}",
                v.im
            );
        }
    }
    for case in 0..200 {
        let mut q = random_real_valued(&mut rng);
        // break the conjugate pairing of one monomial
        let a = rng.gen_range(1..=q.n());
        q.add_term(MonomialKey::new(vec![a], vec![]), c(0.0, 1.0));
        assert!(!q.check_real_valued(1e-10).is_real_valued(), "case {case}");
        let worst = (0..50)
            .map(|_| q.eval(&random_point(q.n(), &mut rng)).unwrap().im.abs())
            .fold(0.0f64, f64::max);
        assert!(worst > 1e-6, "case {case}: max |Im| = {worst}");
    }
    pass(3, "200 real-valued and 200 violating polynomials classified and evaluated");
}

#[test]
fn criterion_04_cps_decomposition_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..50 {
        let n = rng.gen_range(1..=3);
        let d = rng.gen_range(1..=2);
        let f = random_cps(n, d, &mut rng);
        let dec = cps_decompose(&f, 1e-9).unwrap();
        assert!(dec.residual <= 1e-9 * f.norm(), "case {case}: residual {}", dec.residual);
        for _ in 0..20 {
            let x = random_point(n, &mut rng);
            let xc: Vec<C64> = x.iter().map(|z| z.conj()).collect();
            let mut args: Vec<&[C64]> = vec![&xc; d];
            args.extend(std::iter::repeat(&x[..]).take(d));
            let lhs = f.multilinear_eval(&args).unwrap();
            let rhs: f64 = dec
                .alphas
                .iter()
                .zip(&dec.components)
                .map(|(&a, h)| {
                    let hargs: Vec<&[C64]> = vec![&x; d];
                    a * h.multilinear_eval(&hargs).unwrap().norm_sqr()
                })
                .sum();
            assert!(
                (lhs.re - rhs).abs() <= 1e-9 * (1.0 + lhs.norm()),
                "case {case}: {} vs {rhs}",
                lhs.re
            );
            assert!(lhs.im.abs() <= 1e-9 * (1.0 + lhs.norm()));
        }
    }
    pass(4, "50 CPS tensors decomposed with tight residual and evaluation identity");
}

#[test]
fn criterion_05_hermitian_spectrum_recovery() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = SolverConfig { starts: 64, ..SolverConfig::default() };
    for case in 0..50 {
        let n = rng.gen_range(1..=6);
        let f = random_cps(n, 1, &mut rng);
        let jacobi = hermitian_eig(&flatten_square(&f).unwrap(), 1e-10).unwrap();
        let found = solve_c_eig(&f, &cfg).unwrap();
        for (k, &lam) in jacobi.eigenvalues.iter().enumerate() {
            let hit = found.iter().any(|p| (p.lambda - lam).abs() <= 1e-8);
            assert!(hit, "case {case} (n={n}): eigenvalue {k} = {lam} missed");
        }
    }
    pass(5, "50 Hermitian matrices: full Jacobi spectrum recovered by the C-solver");
}

#[test]
fn criterion_06_q_to_c_eigenpair_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = SolverConfig { starts: 64, ..SolverConfig::default() };
    for case in 0..20 {
        let n = rng.gen_range(2..=3);
        let d = rng.gen_range(2..=3);
        let h = random_symmetric(n, d, &mut rng);
        let report = check_q_c_relation(&h, &cfg)
            .unwrap_or_else(|e| panic!("case {case} (n={n}, d={d}): {e}"));
        assert!(!report.forward.is_empty(), "case {case}: no Q-eigenpairs found");
        assert!(report.forward.iter().all(|r| r.residual <= 1e-8));
        assert!(report.backward.iter().all(|r| r.residual <= 1e-8));
    }
    pass(6, "20 symmetric tensors: Q-eigenpairs map to C-eigenpairs of conj(H)(x)H and back");
}

#[test]
fn criterion_07_c_to_g_embedding_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = SolverConfig { starts: 64, ..SolverConfig::default() };
    for case in 0..20 {
        let n = rng.gen_range(1..=2);
        let d = rng.gen_range(1..=2);
        let f = random_cps(n, d, &mut rng);
        let report = check_c_g_relation(&f, &cfg)
            .unwrap_or_else(|e| panic!("case {case} (n={n}, d={d}): {e}"));
        assert!(!report.forward.is_empty(), "case {case}: no C-eigenpairs found");
        assert!(report.forward.iter().all(|r| r.residual <= 1e-8));
    }
    pass(7, "20 CPS tensors: every C-eigenpair solves the embedded G-system at lambda/2");
}

fn gap_tensor() -> Tensor64 {
    let mut f = Tensor64::zeros(&[2, 2, 2, 2]);
    f.set(&[1, 1, 2, 2], c(1.0, 0.0));
    f.set(&[2, 2, 1, 1], c(1.0, 0.0));
    f
}

#[test]
fn criterion_08_single_vector_vs_multilinear_gap() {
    let f = gap_tensor();
    let cfg = SolverConfig { starts: 64, ..SolverConfig::default() };
    let top = solve_c_eig(&f, &cfg).unwrap()[0].lambda;
    assert!((top - 0.5).abs() <= 1e-6, "single-vector max {top}");
    // the multilinear maximum is attained at the witness (e1, e1, e2, e2)
    let e1 = [c(1.0, 0.0), c(0.0, 0.0)];
    let e2 = [c(0.0, 0.0), c(1.0, 0.0)];
    let witness = f.multilinear_eval(&[&e1, &e1, &e2, &e2]).unwrap();
    assert!((witness.re - 1.0).abs() <= 1e-9, "witness value {}", witness.re);
    let bca = ctensor::banach::check_cps_banach(&f, &BanachConfig::default()).unwrap();
    assert!((bca.rhs - 1.0).abs() <= 1e-9, "multilinear max {}", bca.rhs);
    pass(8, "gap tensor: restricted max 0.5, multilinear max 1 at the printed witness");
}

#[test]
fn criterion_09_css_equality_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cfg = BanachConfig {
        starts: 64,
        eig: SolverConfig { starts: 64, ..SolverConfig::default() },
        ..BanachConfig::default()
    };
    for case in 0..50 {
        let n = rng.gen_range(1..=2);
        let d = rng.gen_range(2..=4);
        let g = random_css(n, d, &mut rng);
        let report = check_css_banach(&g, &cfg)
            .unwrap_or_else(|e| panic!("case {case} (n={n}, d={d}): {e}"));
        assert!(
            report.gap.abs() <= 1e-6,
            "case {case} (n={n}, d={d}): gap {}",
            report.gap
        );
    }
    pass(9, "50 CSS tensors: single-vector and multilinear maxima agree");
}

#[test]
fn criterion_10_hermitian_bilinear_equality_and_recovery() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cfg = BanachConfig::default();
    for case in 0..50 {
        let n = rng.gen_range(1..=6);
        let mut q = random_cps(n, 1, &mut rng);
        // equality needs the top eigenvalue to dominate in magnitude
        let eig = hermitian_eig(&flatten_square(&q).unwrap(), 1e-10).unwrap();
        let (top, bottom) = (eig.eigenvalues[0], *eig.eigenvalues.last().unwrap());
        if top < bottom.abs() {
            q = q.scaled_re(-1.0);
        }
        let out = hermitian_banach(&q, &cfg).unwrap();
        assert!(
            (out.report.lhs - out.report.rhs).abs() <= 1e-8,
            "case {case}: v(L)={} v(R)={}",
            out.report.lhs,
            out.report.rhs
        );
        if let Some(v) = out.recovered_value {
            assert!((v - out.report.lhs).abs() <= 1e-8, "case {case}: recovered {v}");
        }
    }
    pass(10, "50 Hermitian matrices: bilinear relaxation tight and recovery achieves it");
}

#[test]
fn criterion_11_psd_flattening_sandwich_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = BanachConfig::default();
    for case in 0..30 {
        let n = 2;
        let d = rng.gen_range(1..=2);
        let terms = rng.gen_range(1..=2);
        let mut f = Tensor64::zeros(&vec![n; 2 * d]);
        for _ in 0..terms {
            let h = random_symmetric(n, d, &mut rng);
            let alpha = rng.gen::<f64>() * 2.0;
            f = f.add(&outer_product(&h.conj(), &h).scaled_re(alpha)).unwrap();
        }
        assert!(is_flattening_psd(&f, 1e-9).unwrap(), "case {case}");
        let report = sandwich_check(&f, &cfg)
            .unwrap_or_else(|e| panic!("case {case} (d={d}): {e}"));
        assert!(
            (report.l - report.m).abs() <= 1e-6 && (report.m - report.r).abs() <= 1e-6,
            "case {case} (d={d}): L'={} M'={} R'={}",
            report.l,
            report.m,
            report.r
        );
    }
    pass(11, "30 PSD-flattening CPS tensors: three-level maxima coincide");
}

#[test]
fn criterion_12_rank_one_identity_and_embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let cfg = BanachConfig::default();
    let eig_cfg = SolverConfig { starts: 32, ..SolverConfig::default() };
    for case in 0..50 {
        let order = rng.gen_range(2..=3);
        let dims: Vec<usize> = (0..order).map(|_| rng.gen_range(2..=3)).collect();
        let f = random_tensor(&dims, &mut rng);
        let als = rank_one_als(&f, &cfg).unwrap();
        let norm_sq = f.norm() * f.norm();
        assert!(
            (als.residual * als.residual + als.objective * als.objective - norm_sq).abs()
                <= 1e-8 * (1.0 + norm_sq),
            "case {case} {dims:?}: identity violated"
        );
        let g = embed_rank_one_as_geig(&f).unwrap();
        let pairs = solve_g_eig(&g, &eig_cfg)
            .unwrap_or_else(|e| panic!("case {case} {dims:?}: {e}"));
        let best = 2.0 * pairs.iter().map(|p| p.lambda).fold(f64::NEG_INFINITY, f64::max);
        assert!(
            (best - als.objective).abs() <= 1e-6,
            "case {case} {dims:?}: embedding {best} vs ALS {}",
            als.objective
        );
    }
    pass(12, "50 tensors: rank-one Pythagorean identity and embedding agreement");
}

#[test]
fn criterion_13_radar_pipeline() {
    use ctensor::apps::build_radar_objective;
    // scatterer scenario without penalty: structured objective tensor
    let sc = RadarScenario {
        n: 4,
        m: 4,
        scatterers: vec![
            Scatterer { lag: 0, freq: 0.1, tol: 0.2, power: 1.0 },
            Scatterer { lag: 2, freq: -0.3, tol: 0.1, power: 0.5 },
        ],
        noise: 0.2,
        reference: vec![c(1.0, 0.0); 4],
        penalty: 0.0,
    };
    let f = build_radar_objective(&sc).unwrap();
    assert!(f.is_cps(1e-10), "objective tensor is CPS");
    assert!(is_flattening_psd(&f, 1e-9).unwrap(), "flattening PSD without penalty");

    // penalty-only scenario recovers the reference code up to phase
    let sc = RadarScenario {
        n: 3,
        m: 1,
        scatterers: vec![],
        noise: 0.0,
        reference: vec![c(0.5, 0.5), c(0.0, -1.0), c(1.0, 0.0)],
        penalty: 1.0,
    };
    let sol = solve_radar(&sc, &SolverConfig::default()).unwrap();
    let ref_norm: f64 = sc.reference.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let overlap: C64 =
        sol.code.iter().zip(&sc.reference).map(|(a, b)| a.conj() * b).sum();
    let alignment = overlap.norm() / ref_norm;
    assert!(alignment >= 1.0 - 1e-6, "alignment {alignment}");
    pass(13, "radar objective CPS with PSD flattening; penalty-only recovers the reference");
}

#[test]
fn criterion_14_cli_determinism() {
    let run = |args: &[&str], stdin: &str| -> Vec<u8> {
        let mut child = Command::new(env!("CARGO_BIN_EXE_ctensor"))
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.as_mut().unwrap().write_all(stdin.as_bytes()).unwrap();
        let out = child.wait_with_output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let doc = r#"{"dims":[2,2,2,2],"entries":[{"idx":[1,1,2,2],"re":1,"im":0},{"idx":[2,2,1,1],"re":1,"im":0}]}"#;
    let scenario = r#"{"n":3,"m":2,"scatterers":[{"lag":1,"freq":0.2,"tol":0.3,"power":1.0}],"noise":0.1,"reference":[{"re":1,"im":0},{"re":0,"im":1},{"re":1,"im":0}],"penalty":0.5}"#;
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["eig", "--kind", "c", "--seed", "0"], doc),
        (vec!["banach", "--check", "cps", "--seed", "0"], doc),
        (vec!["radar", "--seed", "0"], scenario),
    ];
    for (args, stdin) in &cases {
        let a = run(args, stdin);
        let b = run(args, stdin);
        assert_eq!(a, b, "output differs for {args:?}");
    }
    pass(14, "repeated seeded CLI runs produce byte-identical JSON");
}
