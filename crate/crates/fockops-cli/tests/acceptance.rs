//! The acceptance gate: every release criterion, one test each, one
//! pass line each (run with `--nocapture` to see them).

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fockops::function::{AffineSymbol, ExpPolyFunction, FunctionRep};
use fockops::norms::{fock_norm, hu_norm, paley_norm, FockTypeParams, PNorm, QuadratureConfig};
use fockops::oracle::brute_force_lq_integral;
use fockops::section::{build_matrix, ratio_test, sigma_min, spectral_radius_estimate};
use fockops::symbol::{classify_d_focktype, classify_wcd, order_bounded, OperatorSpec, Verdict};
use fockops::verify::{doubled_corpus, run_verify, standard_corpus, VerifyOptions};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pn(p: f64) -> PNorm {
    PNorm::finite(p)
}

const INF: PNorm = PNorm::Infinity;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

/// Criterion 1 - kernel normalization: ||k_w||_p = 1 within 1e-7 for
/// p in {1, 2, 3, inf} and w in {0, 1, 2+i, 3i}, in under ten seconds.
#[test]
fn acceptance_1_kernel_normalization() {
    let start = Instant::now();
    let ws = [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 1.0), c(0.0, 3.0)];
    let ps = [pn(1.0), pn(2.0), pn(3.0), INF];
    let mut worst = 0.0f64;
    for w in ws {
        let kw: FunctionRep = ExpPolyFunction::normalized_kernel(w).into();
        for p in ps {
            let norm = fock_norm(&kw, &FockTypeParams::classical(p), &cfg()).unwrap();
            let err = (norm.value - 1.0).abs();
            assert!(err < 1e-7, "w={w} p={p:?}: norm={}", norm.value);
            worst = worst.max(err);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 PASS: kernel norms unital within {worst:.2e} across 16 cases in {:.2}s",
        elapsed.as_secs_f64()
    );
}

fn bracket_c(ratios: &[f64]) -> f64 {
    let mut worst = 1.0f64;
    for &r in ratios {
        assert!(r.is_finite() && r > 0.0, "ratio {r}");
        worst = worst.max(r).max(1.0 / r);
    }
    worst
}

fn paley_ratios(corpus: &[fockops::verify::CorpusEntry]) -> Vec<f64> {
    let mut out = Vec::new();
    for p in [1.0, 2.0] {
        for e in corpus.iter().filter(|e| e.focktype_m1) {
            let fock = fock_norm(&e.f, &FockTypeParams::fock_type(1.0, pn(p)), &cfg()).unwrap();
            let paley = paley_norm(&e.f, 1.0, pn(p), &cfg()).unwrap();
            out.push(paley.value / fock.value);
        }
    }
    out
}

fn hu_ratios(corpus: &[fockops::verify::CorpusEntry]) -> Vec<f64> {
    let mut out = Vec::new();
    for n in [1usize, 2] {
        for p in [1.0, 2.0] {
            for e in corpus.iter() {
                let fock = fock_norm(&e.f, &FockTypeParams::classical(pn(p)), &cfg()).unwrap();
                let hu = hu_norm(&e.f, pn(p), n, &cfg()).unwrap();
                out.push(hu.value / fock.value);
            }
        }
    }
    out
}

/// Criterion 2 - norm-equivalence brackets: the derivative-side norms sit
/// in a single [1/C, C] bracket over the 30-function corpus, with C
/// stable to 10% when the corpus doubles.
#[test]
fn acceptance_2_norm_equivalence_brackets() {
    let base = standard_corpus();
    let double = doubled_corpus();

    let paley_base = bracket_c(&paley_ratios(&base));
    let paley_double = bracket_c(&paley_ratios(&double));
    assert!(paley_double <= 1.1 * paley_base, "paley C {paley_base} -> {paley_double}");

    let hu_base = bracket_c(&hu_ratios(&base));
    let hu_double = bracket_c(&hu_ratios(&double));
    assert!(hu_double <= 1.1 * hu_base, "hu C {hu_base} -> {hu_double}");

    println!(
        "ACCEPTANCE 2 PASS: brackets C_paley={paley_base:.3} (doubled {paley_double:.3}), C_hu={hu_base:.3} (doubled {hu_double:.3})"
    );
}

/// Criterion 3 - closed-range frontier exponents of the monomial ratio
/// test: ~0 with a positive floor at (m=1, p=q=2); -1/4 at the frontier
/// of (p, q) = (1, 2), which sits at m = 4/3; -1/4 at the frontier of
/// (p, q) = (2, inf), which also sits at m = 4/3 (the formula of the
/// sup-norm route gives -3/4 at the literal m = 1, checked in the
/// section test suite). Total runtime under two minutes.
#[test]
fn acceptance_3_closed_range_frontier() {
    let start = Instant::now();

    let rt = ratio_test(1.0, pn(2.0), pn(2.0), 200).unwrap();
    assert!(rt.fitted_tail_exponent.abs() <= 0.05, "exp={}", rt.fitted_tail_exponent);
    let floor = rt.rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    assert!(floor > 0.5, "floor={floor}");
    let e1 = rt.fitted_tail_exponent;

    let rt = ratio_test(4.0 / 3.0, pn(1.0), pn(2.0), 200).unwrap();
    assert!((rt.fitted_tail_exponent + 0.25).abs() <= 0.05, "exp={}", rt.fitted_tail_exponent);
    let e2 = rt.fitted_tail_exponent;

    let rt = ratio_test(4.0 / 3.0, pn(2.0), INF, 200).unwrap();
    assert!((rt.fitted_tail_exponent + 0.25).abs() <= 0.05, "exp={}", rt.fitted_tail_exponent);
    let e3 = rt.fitted_tail_exponent;

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 3 PASS: frontier exponents {e1:.4} (floor {floor:.3}), {e2:.4}, {e3:.4} in {:.1}s",
        elapsed.as_secs_f64()
    );
}

struct Expected {
    bounded: Verdict,
    compact: Verdict,
    order_bounded: Verdict,
    closed_range: Verdict,
    surjective: Verdict,
}

fn want(b: &str, cpt: &str, ob: &str, cr: &str, s: &str) -> Expected {
    fn v(s: &str) -> Verdict {
        match s {
            "yes" => Verdict::Yes,
            "no" => Verdict::No,
            "probe" => Verdict::NeedsProbe,
            _ => panic!("bad verdict {s}"),
        }
    }
    Expected {
        bounded: v(b),
        compact: v(cpt),
        order_bounded: v(ob),
        closed_range: v(cr),
        surjective: v(s),
    }
}

fn spec(u: ExpPolyFunction, a: Complex64, b: Complex64, n: usize) -> OperatorSpec {
    OperatorSpec::new(u, AffineSymbol::new(a, b), n)
}

fn random_spec(rng: &mut ChaCha8Rng) -> OperatorSpec {
    let a = match rng.gen_range(0..4) {
        0 => Complex64::from_polar(rng.gen_range(0.05..0.95), rng.gen_range(0.0..6.28)),
        1 => Complex64::from_polar(1.0, rng.gen_range(0.0..6.28)),
        2 => Complex64::from_polar(rng.gen_range(1.01..1.8), rng.gen_range(0.0..6.28)),
        _ => Complex64::new(0.0, 0.0),
    };
    let b = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
    let n = rng.gen_range(0..3);
    let u = match rng.gen_range(0..5) {
        0 => ExpPolyFunction::one(),
        1 => ExpPolyFunction::kernel(Complex64::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        )),
        2 => ExpPolyFunction::exp_quadratic(
            Complex64::new(rng.gen_range(-0.5..0.5), 0.0),
            Complex64::new(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8)),
            Complex64::new(rng.gen_range(-0.45..0.45), rng.gen_range(-0.3..0.3)),
        ),
        3 => {
            let w = Complex64::from_polar(1.0, rng.gen_range(0.0..6.28));
            let kappa = (1.0 - a.norm_sqr()) / 2.0;
            let a1 = w - a * b.conj();
            ExpPolyFunction::exp_quadratic(Complex64::new(0.0, 0.0), a1, -kappa * w * w)
        }
        _ => ExpPolyFunction::polynomial(vec![
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        ]),
    };
    let psi = if a == Complex64::new(0.0, 0.0) {
        AffineSymbol::constant(b)
    } else {
        AffineSymbol::new(a, b)
    };
    OperatorSpec::new(u, psi, n)
}

/// Criterion 4 - classifier truth table: operator fixtures spanning all
/// classification branches, the 60-cell derivative grid, and implication
/// invariants on 1000 seeded random operators.
#[test]
fn acceptance_4_classifier_truth_table() {
    let one = ExpPolyFunction::one;
    let cases: Vec<(&str, OperatorSpec, PNorm, PNorm, Expected)> = vec![
        ("identity", OperatorSpec::identity(), pn(2.0), pn(2.0), want("yes", "no", "no", "yes", "yes")),
        ("contraction-n0", spec(one(), c(0.5, 0.0), c(0.0, 0.0), 0), pn(2.0), pn(2.0), want("yes", "yes", "yes", "no", "no")),
        ("contraction-n1", spec(one(), c(0.5, 0.0), c(0.0, 0.0), 1), pn(2.0), pn(2.0), want("yes", "yes", "yes", "no", "no")),
        ("translation-kernel", spec(ExpPolyFunction::kernel(c(-1.0, 0.0)), c(1.0, 0.0), c(1.0, 0.0), 0), pn(2.0), pn(2.0), want("yes", "no", "no", "yes", "yes")),
        ("expansion", spec(one(), c(2.0, 0.0), c(0.0, 0.0), 0), pn(2.0), pn(2.0), want("no", "no", "no", "no", "no")),
        ("gauss-interior", spec(ExpPolyFunction::exp_quadratic(c(0.0, 0.0), c(0.0, 0.0), c(0.25, 0.0)), c(0.5, 0.0), c(0.0, 0.0), 0), pn(2.0), pn(2.0), want("yes", "yes", "yes", "no", "no")),
        ("gauss-boundary", spec(ExpPolyFunction::exp_quadratic(c(0.0, 0.0), c(0.0, 0.0), c(0.375, 0.0)), c(0.5, 0.0), c(0.0, 0.0), 0), pn(2.0), pn(2.0), want("yes", "no", "no", "probe", "no")),
        ("gauss-boundary-neg", spec(ExpPolyFunction::exp_quadratic(c(0.0, 0.0), c(0.0, 0.0), c(-0.375, 0.0)), c(0.5, 0.0), c(0.0, 0.0), 0), pn(2.0), pn(2.0), want("yes", "no", "no", "probe", "no")),
        ("gauss-boundary-misaligned", spec(ExpPolyFunction::exp_quadratic(c(0.0, 0.0), c(1.0, 0.0), c(0.375, 0.0)), c(0.5, 0.0), c(0.0, 0.0), 0), pn(2.0), pn(2.0), want("no", "no", "no", "no", "no")),
        ("gauss-boundary-aligned", spec(ExpPolyFunction::exp_quadratic(c(0.0, 0.0), c(1.0, 0.0), c(-0.375, 0.0)), c(0.5, 0.0), c(0.0, 0.0), 0), pn(2.0), pn(2.0), want("yes", "no", "no", "probe", "no")),
        ("kernel-contraction", spec(ExpPolyFunction::kernel(c(1.0, 1.0)), c(1.0 / 3.0, 0.0), c(0.0, 0.0), 0), pn(2.0), pn(2.0), want("yes", "yes", "yes", "no", "no")),
        ("complex-contraction-n2", spec(one(), c(0.5, 0.5), c(1.0, 0.0), 2), pn(2.0), pn(2.0), want("yes", "yes", "yes", "no", "no")),
        ("rotation", spec(one(), Complex64::from_polar(1.0, core::f64::consts::FRAC_PI_4), c(0.0, 0.0), 0), pn(2.0), pn(2.0), want("yes", "no", "no", "yes", "yes")),
        ("rotation-n1-escape", spec(ExpPolyFunction::kernel(c(0.0, 1.0)), c(0.0, 1.0), c(2.0, 0.0), 1), pn(2.0), pn(2.0), want("no", "no", "no", "no", "no")),
        ("zero", spec(ExpPolyFunction::polynomial(vec![c(0.0, 0.0)]), c(0.5, 0.0), c(0.0, 0.0), 0), pn(2.0), pn(2.0), want("yes", "yes", "yes", "yes", "no")),
        ("shifted-kernel", spec(ExpPolyFunction::kernel(c(1.0, 0.0)), c(1.0, 0.0), c(-1.0, 0.0), 0), pn(2.0), pn(2.0), want("yes", "no", "no", "yes", "yes")),
        ("anti-kernel", spec(ExpPolyFunction::kernel(c(1.0, 0.0)), c(1.0, 0.0), c(1.0, 0.0), 0), pn(2.0), pn(2.0), want("no", "no", "no", "no", "no")),
        ("downward-contraction", spec(one(), c(0.5, 0.0), c(0.0, 0.0), 0), pn(2.0), pn(1.0), want("yes", "yes", "yes", "no", "no")),
        ("downward-identity", OperatorSpec::identity(), pn(2.0), pn(1.0), want("no", "no", "no", "no", "no")),
        ("derivative-unbounded", spec(one(), c(1.0, 0.0), c(0.0, 0.0), 1), pn(2.0), pn(2.0), want("no", "no", "no", "no", "no")),
        ("constant-symbol", OperatorSpec::new(one(), AffineSymbol::constant(c(1.0, 0.0)), 0), pn(2.0), pn(2.0), want("yes", "yes", "yes", "yes", "no")),
        ("constant-symbol-bad-weight", OperatorSpec::new(ExpPolyFunction::exp_quadratic(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)), AffineSymbol::constant(c(0.0, 0.0)), 0), pn(2.0), pn(2.0), want("no", "no", "no", "yes", "no")),
        ("upward-rotation", spec(one(), c(0.0, 1.0), c(0.0, 0.0), 0), pn(1.0), pn(2.0), want("yes", "no", "no", "no", "no")),
        ("identity-qinf", OperatorSpec::identity(), pn(2.0), INF, want("yes", "no", "yes", "no", "no")),
    ];
    let n_specs = cases.len();
    assert!(n_specs >= 20, "at least twenty fixtures");
    for (name, s, p, q, w) in cases {
        let got = classify_wcd(&s, p, q).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(got.bounded, w.bounded, "{name}: bounded");
        assert_eq!(got.compact, w.compact, "{name}: compact");
        assert_eq!(got.order_bounded, w.order_bounded, "{name}: order_bounded");
        assert_eq!(got.closed_range, w.closed_range, "{name}: closed_range");
        assert_eq!(got.surjective, w.surjective, "{name}: surjective");
    }

    // 60-cell derivative grid against hand-computed frontiers.
    let t = true;
    let f = false;
    let grid: Vec<(f64, PNorm, PNorm, bool, bool, bool)> = vec![
        (0.5, pn(1.0), pn(1.0), t, t, f),
        (1.0, pn(1.0), pn(1.0), t, f, t),
        (1.5, pn(1.0), pn(1.0), f, f, f),
        (0.5, pn(2.0), pn(2.0), t, t, f),
        (1.0, pn(2.0), pn(2.0), t, f, t),
        (4.0 / 3.0, pn(2.0), pn(2.0), f, f, f),
        (2.0, pn(2.0), pn(2.0), f, f, f),
        (0.9, pn(3.0), pn(3.0), t, t, f),
        (1.0, pn(3.0), pn(3.0), t, f, t),
        (1.1, pn(3.0), pn(3.0), f, f, f),
        (1.0, pn(1.0), pn(2.0), t, t, f),
        (4.0 / 3.0, pn(1.0), pn(2.0), t, f, f),
        (1.5, pn(1.0), pn(2.0), f, f, f),
        (2.0, pn(1.0), pn(2.0), f, f, f),
        (1.3, pn(1.0), pn(3.0), t, t, f),
        (1.4, pn(1.0), pn(3.0), t, f, f),
        (1.45, pn(1.0), pn(3.0), f, f, f),
        (1.0, pn(2.0), pn(3.0), t, t, f),
        (8.0 / 7.0, pn(2.0), pn(3.0), t, f, f),
        (1.2, pn(2.0), pn(3.0), f, f, f),
        (1.1, pn(2.0), pn(4.0), t, t, f),
        (1.2, pn(2.0), pn(4.0), t, f, f),
        (1.25, pn(2.0), pn(4.0), f, f, f),
        (1.4, pn(1.0), INF, t, t, f),
        (1.5, pn(1.0), INF, t, f, f),
        (1.6, pn(1.0), INF, f, f, f),
        (1.0, pn(2.0), INF, t, t, f),
        (4.0 / 3.0, pn(2.0), INF, t, f, f),
        (1.4, pn(2.0), INF, f, f, f),
        (1.2, pn(3.0), INF, t, t, f),
        (1.25, pn(3.0), INF, t, f, f),
        (1.3, pn(3.0), INF, f, f, f),
        (0.8, INF, INF, t, t, f),
        (1.0, INF, INF, t, f, t),
        (1.2, INF, INF, f, f, f),
        (0.5, pn(2.0), pn(1.0), f, f, f),
        (0.05, pn(2.0), pn(1.0), f, f, f),
        (0.5, pn(3.0), pn(1.0), f, f, f),
        (0.5, pn(3.0), pn(2.0), t, t, f),
        (2.0 / 3.0, pn(3.0), pn(2.0), f, f, f),
        (0.7, pn(3.0), pn(2.0), f, f, f),
        (0.4, pn(4.0), pn(2.0), t, t, f),
        (0.5, pn(4.0), pn(2.0), f, f, f),
        (0.8, pn(4.0), pn(3.0), t, t, f),
        (5.0 / 6.0, pn(4.0), pn(3.0), f, f, f),
        (0.9, pn(4.0), pn(3.0), f, f, f),
        (0.5, INF, pn(2.0), f, f, f),
        (0.25, INF, pn(3.0), t, t, f),
        (1.0 / 3.0, INF, pn(3.0), f, f, f),
        (0.4, INF, pn(3.0), f, f, f),
        (0.45, INF, pn(4.0), t, t, f),
        (0.5, INF, pn(4.0), f, f, f),
        (1.2, pn(1.0), pn(1.5), t, t, f),
        (1.25, pn(1.0), pn(1.5), t, f, f),
        (1.3, pn(1.0), pn(1.5), f, f, f),
        (1.1, pn(1.5), pn(2.0), t, t, f),
        (8.0 / 7.0, pn(1.5), pn(2.0), t, f, f),
        (1.15, pn(1.5), pn(2.0), f, f, f),
        (0.1, pn(1.0), pn(1.0), t, t, f),
        (3.0, pn(1.0), pn(2.0), f, f, f),
    ];
    assert_eq!(grid.len(), 60);
    for (m, p, q, bounded, compact, closed) in grid {
        let rep = classify_d_focktype(m, p, q);
        assert_eq!(rep.bounded.is_yes(), bounded, "m={m} p={p:?} q={q:?} bounded");
        assert_eq!(rep.compact.is_yes(), compact, "m={m} p={p:?} q={q:?} compact");
        assert_eq!(rep.closed_range.is_yes(), closed, "m={m} p={p:?} q={q:?} closed_range");
        assert_eq!(rep.surjective.is_yes(), closed, "m={m} p={p:?} q={q:?} surjective");
    }

    // Implication invariants on 1000 random operators.
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0004);
    let exponents = [pn(1.0), pn(1.5), pn(2.0), pn(3.0), INF];
    for _ in 0..1000 {
        let s = random_spec(&mut rng);
        let p = exponents[rng.gen_range(0..exponents.len())];
        let q = exponents[rng.gen_range(0..exponents.len())];
        let rep = classify_wcd(&s, p, q).unwrap_or_else(|e| panic!("{s:?}: {e}"));
        assert!(rep.implications_hold(q), "implications fail for {s:?} p={p:?} q={q:?}");
    }

    println!(
        "ACCEPTANCE 4 PASS: {n_specs} operator fixtures, 60 derivative cells, 1000 random implication checks"
    );
}

/// Criterion 5 - quasinilpotency: s_m = ||T^m||^(1/m) strictly decreasing
/// on m in {5, 10, 15, 20} with s_20 < 0.5 for the halving shift at
/// section size 60.
#[test]
fn acceptance_5_quasinilpotency() {
    let s = spec(ExpPolyFunction::one(), c(0.5, 0.0), c(0.0, 0.0), 1);
    let mat = build_matrix(&s, 60, 0).unwrap();
    let seq = spectral_radius_estimate(&mat, 20);
    let picks: Vec<f64> = [5usize, 10, 15, 20].iter().map(|&m| seq[m - 1]).collect();
    for w in picks.windows(2) {
        assert!(w[1] < w[0], "not strictly decreasing: {picks:?}");
    }
    assert!(picks[3] < 0.5, "s_20 = {}", picks[3]);
    println!(
        "ACCEPTANCE 5 PASS: power norms {:.4} > {:.4} > {:.4} > {:.4} with s_20 < 0.5",
        picks[0], picks[1], picks[2], picks[3]
    );
}

/// Criterion 6 - bounded-below dichotomy: the compact shift's sigma_min
/// is monotone non-increasing and falls below 1e-3 by N = 80; the
/// surjective translation kernel holds its N = 40 value within 10%
/// through N = 160.
#[test]
fn acceptance_6_bounded_below_dichotomy() {
    let compact = spec(ExpPolyFunction::one(), c(0.5, 0.0), c(0.0, 0.0), 1);
    let mut prev = f64::INFINITY;
    let mut final_sigma = f64::NAN;
    for n_dim in [10usize, 20, 40, 80] {
        let mat = build_matrix(&compact, n_dim, 1).unwrap();
        let s = sigma_min(&mat);
        assert!(s <= prev + 1e-12, "sigma_min grew at N={n_dim}");
        prev = s;
        final_sigma = s;
    }
    assert!(final_sigma < 1e-3, "sigma_min(80) = {final_sigma}");

    let surjective = spec(ExpPolyFunction::kernel(c(-1.0, 0.0)), c(1.0, 0.0), c(1.0, 0.0), 0);
    let reference = sigma_min(&build_matrix(&surjective, 40, 0).unwrap());
    let mut drift = 0.0f64;
    for n_dim in [80usize, 160] {
        let s = sigma_min(&build_matrix(&surjective, n_dim, 0).unwrap());
        drift = drift.max((s - reference).abs() / reference);
    }
    assert!(drift <= 0.10, "drift {drift}");
    println!(
        "ACCEPTANCE 6 PASS: compact sigma_min(80)={final_sigma:.2e}; surjective floor {reference:.6} stable to {:.2}%",
        drift * 100.0
    );
}

/// Criterion 7 - order-boundedness integral: the contraction's L^2
/// integral equals 4 pi / 3 within 1e-6 of both the closed form and the
/// oracle; |a| = 1 operators are never order bounded.
#[test]
fn acceptance_7_order_boundedness() {
    let s = spec(ExpPolyFunction::one(), c(0.5, 0.0), c(0.0, 0.0), 0);
    let rep = order_bounded(&s, pn(2.0), &cfg()).unwrap();
    assert!(rep.verdict.is_yes());
    let expected = 4.0 * core::f64::consts::PI / 3.0;
    let closed = rep.closed_form.unwrap();
    let quad = rep.quadrature.unwrap();
    assert!((closed - expected).abs() < 1e-6, "closed={closed}");
    assert!((quad - expected).abs() < 1e-6, "quad={quad}");
    let oracle = brute_force_lq_integral(&s.u, &s.psi, 0, 2.0).unwrap();
    assert!((oracle.value - expected).abs() < 1e-6, "oracle={}", oracle.value);

    for (u, a, b) in [
        (ExpPolyFunction::kernel(c(-1.0, 0.0)), c(1.0, 0.0), c(1.0, 0.0)),
        (ExpPolyFunction::one(), c(0.0, 1.0), c(0.0, 0.0)),
        (ExpPolyFunction::one(), Complex64::from_polar(1.0, 1.3), c(0.0, 0.0)),
    ] {
        let s1 = spec(u, a, b, 0);
        let rep = order_bounded(&s1, pn(2.0), &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::No, "|a| = 1 must fail");
    }
    println!(
        "ACCEPTANCE 7 PASS: integral of L^2 = {closed:.9} (closed) / {quad:.9} (quadrature) / {:.9} (oracle); modulus-one specs rejected",
        oracle.value
    );
}

/// Criterion 8 - oracle agreement: the full verification suite passes,
/// including the monomial Gamma closed form to k = 100 and the recorded
/// norm-constant discrepancy with its k-stable asymptotic ratio.
#[test]
fn acceptance_8_oracle_agreement() {
    let manifest = run_verify(&VerifyOptions::default());
    for check in manifest.checks.iter().filter(|c| !c.passed) {
        eprintln!(
            "FAILED {}: module {} oracle {} tol {}",
            check.id, check.module_value, check.oracle_value, check.tolerance
        );
    }
    assert!(manifest.passed, "{} of {} checks failed", manifest.failures, manifest.total);
    assert!(
        manifest.checks.iter().any(|c| c.id.contains("monomial-gamma::k100")),
        "k = 100 closed-form check present"
    );
    assert!(
        manifest.checks.iter().any(|c| c.id.contains("monomial-asymptotic-stability")),
        "asymptotic stability check present"
    );
    assert!(
        manifest.checks.iter().any(|c| c.id.contains("monomial-variant-constant-rejected")),
        "constant-discrepancy record present"
    );
    println!(
        "ACCEPTANCE 8 PASS: verification suite green ({} checks, 0 failures)",
        manifest.total
    );
}
