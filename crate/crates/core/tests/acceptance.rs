//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and enforcing its wall-clock budget. Tolerances and sample budgets are
//! pinned here, not configured.

use std::time::{Duration, Instant};

use verify_core::clifford::{
    check_clifford, check_conformal_relations, conformal_split, EnlargedGammaBasis, GammaBasis,
    Signature,
};
use verify_core::conformal::{packed_matrix, RepParams};
use verify_core::loperators::{
    build_conformal_l, build_sln_l, intertwiner_check, sl4_so6_bridge_check, SpectralParams,
};
use verify_core::numint::{
    chain_rule_check, fourier_constant_check, scalar_str_mc, scalar_str_quadrature,
    spinorial_str_check, MCConfig, ScalarStrParams, SpinStrParams,
};
use verify_core::rmatrix::{
    asym_condition, conformal_rep, crossing_check, permutation_identity_check, r_coefficients,
    rll_check, rll_yang_weyl, weyl_projection_check, ybe_check, LinearRationalFn, RepChoice,
};
use verify_core::rng::SeededRng;
use verify_core::scalar::{rat, GaussianRational, Rational};
use verify_core::startriangle::{
    build_nilpotent_a, operator_str_check, scalar_r_rll_check, ScalarRExponents,
};
use verify_core::weyl::WeylElement;

struct Criterion {
    label: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn start(label: &'static str, budget: Duration) -> Self {
        Self { label, budget, started: Instant::now() }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        println!(
            "criterion {}: pass ({:.2}s / budget {:.0}s)",
            self.label,
            elapsed.as_secs_f64(),
            self.budget.as_secs_f64()
        );
        assert!(
            elapsed <= self.budget,
            "criterion {} exceeded its budget: {:.2}s > {:.0}s",
            self.label,
            elapsed.as_secs_f64(),
            self.budget.as_secs_f64()
        );
    }
}

fn enlarged(n: usize) -> EnlargedGammaBasis {
    EnlargedGammaBasis::enlarge(&GammaBasis::build(Signature::new(n, 0)).unwrap()).unwrap()
}

fn coeff_seed(n: usize) -> LinearRationalFn {
    if n == 4 {
        LinearRationalFn::n4_comparison_seed()
    } else {
        LinearRationalFn::constant(GaussianRational::one())
    }
}

fn gr(r: Rational) -> GaussianRational {
    GaussianRational::from_rational(r)
}

/// Random rational spectral point at which every needed coefficient is
/// finite.
fn pole_free_point(rng: &mut SeededRng, n: usize, seed: &LinearRationalFn) -> Rational {
    loop {
        let u = rng.rational(9, 7);
        let w = gr(u.clone());
        if r_coefficients(n, &w, seed).is_ok() {
            return u;
        }
    }
}

#[test]
fn criterion_01_clifford_suite() {
    let c = Criterion::start("1 (Clifford suite)", Duration::from_secs(5));
    for n in [2usize, 4] {
        for sig in Signature::all_with_n(n) {
            let basis = GammaBasis::build(sig).unwrap();
            check_clifford(&basis.gammas, &sig.metric()).unwrap();
            let enl = EnlargedGammaBasis::enlarge(&basis).unwrap();
            check_clifford(&enl.gammas, &enl.metric).unwrap();
            let gens = conformal_split(&basis);
            check_conformal_relations(
                &sig.metric(),
                &|mu, nu| gens.ell[mu][nu].clone(),
                &|mu| gens.p[mu].clone(),
                &|mu| gens.k[mu].clone(),
                &gens.d,
            )
            .unwrap();
        }
    }
    c.finish();
}

#[test]
fn criterion_02_r_coefficients() {
    let c = Criterion::start("2 (R coefficients, n=4 seed (u+4)/8)", Duration::from_secs(1));
    let seed = LinearRationalFn::n4_comparison_seed();
    let mut rng = SeededRng::new(202);
    for _ in 0..5 {
        let u = gr(rng.rational(9, 7));
        let eighth = GaussianRational::from_pair(1, 8);
        let coeffs = r_coefficients(4, &u, &seed).unwrap();
        let expect = [
            &(&u + &GaussianRational::from_int(4)) * &eighth,
            -&u * &eighth,
            &u * &eighth,
            -&(&u + &GaussianRational::from_int(4)) * &eighth,
        ];
        assert_eq!(coeffs.len(), 4);
        for ((k, got), want) in coeffs.iter().zip(expect.iter()) {
            assert_eq!(got, want, "R_{k} at u={u}");
        }
    }
    c.finish();
}

#[test]
fn criterion_03_yang_baxter() {
    let c = Criterion::start("3 (Yang-Baxter, n=2 x5 and n=4 x3)", Duration::from_secs(600));
    let mut rng = SeededRng::new(303);
    let enl2 = enlarged(2);
    let seed2 = coeff_seed(2);
    for _ in 0..5 {
        let u = pole_free_point(&mut rng, 2, &seed2);
        let v = pole_free_point(&mut rng, 2, &seed2);
        if r_coefficients(2, &gr(u.clone() - v.clone()), &seed2).is_err() {
            continue;
        }
        ybe_check(&enl2, &gr(u), &gr(v), &seed2).unwrap();
    }
    let enl4 = enlarged(4);
    let seed4 = coeff_seed(4);
    for _ in 0..3 {
        let u = pole_free_point(&mut rng, 4, &seed4);
        let v = pole_free_point(&mut rng, 4, &seed4);
        if r_coefficients(4, &gr(u.clone() - v.clone()), &seed4).is_err() {
            continue;
        }
        ybe_check(&enl4, &gr(u), &gr(v), &seed4).unwrap();
    }
    c.finish();
}

#[test]
fn criterion_04_rll() {
    let c = Criterion::start("4 (RLL: defining, scalar-conformal, spin with Yang R)", Duration::from_secs(900));
    let mut rng = SeededRng::new(404);
    // (i) defining representation, n in {2, 4}
    for n in [2usize, 4] {
        let enl = enlarged(n);
        let seed = coeff_seed(n);
        let u = pole_free_point(&mut rng, n, &seed);
        let v = pole_free_point(&mut rng, n, &seed);
        rll_check(&enl, &RepChoice::Defining, &gr(u), &gr(v), &seed).unwrap();
    }
    // (ii) scalar conformal representation, 3 tuples (u, v, Delta1, Delta2);
    // the relation holds per dimension (the two L-operators share the
    // quantum space), so each tuple runs at Delta1 and at Delta2.
    for n in [2usize, 4] {
        let enl = enlarged(n);
        let seed = coeff_seed(n);
        for _ in 0..3 {
            let u = gr(pole_free_point(&mut rng, n, &seed));
            let v = gr(pole_free_point(&mut rng, n, &seed));
            let d1 = rng.rational(6, 4);
            let d2 = rng.rational(6, 4);
            for delta in [d1, d2] {
                rll_check(&enl, &RepChoice::ScalarConformal { delta: gr(delta) }, &u, &v, &seed)
                    .unwrap();
            }
        }
    }
    // (iii) n=4 spin representation against the Yang matrix on the minus
    // projection, two parameter points including the pinned spin pairs.
    for (ell, elldot) in [(rat(1, 2), rat(0, 1)), (rat(1, 1), rat(1, 2))] {
        let params =
            RepParams::spin4d(Signature::new(4, 0), gr(rng.rational(6, 4)), ell, elldot).unwrap();
        let u = gr(rng.rational(6, 4));
        let v = gr(rng.rational(6, 4));
        let lu = build_conformal_l(&params, &u).unwrap();
        let lv = build_conformal_l(&params, &v).unwrap();
        rll_yang_weyl(&lu.space, &lu.direct, &lv.direct, &u, &v).unwrap();
    }
    c.finish();
}

#[test]
fn criterion_05_weyl_projection() {
    let c = Criterion::start("5 (Weyl projection to the Yang matrix)", Duration::from_secs(10));
    for u in [rat(0, 1), rat(1, 1), rat(3, 7)] {
        let rep = weyl_projection_check(&gr(u)).unwrap();
        assert!(rep.minus_matches_yang && rep.cross_projections_vanish);
    }
    c.finish();
}

#[test]
fn criterion_06_factorization_and_packed_matrix() {
    let c = Criterion::start("6 (L factorization and packed matrix)", Duration::from_secs(60));
    let mut rng = SeededRng::new(606);
    for _ in 0..3 {
        for sig in [Signature::new(2, 0), Signature::new(4, 0)] {
            let params = RepParams::scalar(sig, rng.gaussian_rational(6, 4));
            let op = build_conformal_l(&params, &rng.gaussian_rational(6, 4)).unwrap();
            op.check_factorization().unwrap();
            let pm = packed_matrix(&params).unwrap();
            assert_eq!(pm.assembled, pm.block_form);
        }
        let params = RepParams::spin4d(
            Signature::new(4, 0),
            rng.gaussian_rational(6, 4),
            rat(1, 2),
            rat(1, 1),
        )
        .unwrap();
        let op = build_conformal_l(&params, &rng.gaussian_rational(6, 4)).unwrap();
        op.check_factorization().unwrap();
        let pm = packed_matrix(&params).unwrap();
        assert_eq!(pm.assembled, pm.block_form);
    }
    c.finish();
}

#[test]
fn criterion_07_sl4_conformal_bridge() {
    let c = Criterion::start("7 (sl(4) to conformal bridge)", Duration::from_secs(120));
    let mut rng = SeededRng::new(707);
    for _ in 0..3 {
        let u = rng.rational(6, 4);
        let delta = rng.rational(6, 4);
        let ell = rng.rational(4, 3);
        let elldot = rng.rational(4, 3);
        sl4_so6_bridge_check(&u, &delta, &ell, &elldot).unwrap();
    }
    c.finish();
}

#[test]
fn criterion_08_intertwiners() {
    let c = Criterion::start("8 (parameter-permuting intertwiners)", Duration::from_secs(120));
    let mut rng = SeededRng::new(808);
    // N = 2 with m in {1, 2, 3}; m = 2 is the printed l = 1/2 identity,
    // also checked directly on the spin matrices.
    for m in [1i64, 2, 3] {
        let ell = rat(m - 1, 2);
        let params = SpectralParams::sl2_spin(gr(rng.rational(5, 4)), &ell);
        intertwiner_check(&params, 1).unwrap();
    }
    let space = verify_core::weyl::VariableSpace::euclidean(&["z"]);
    let d2 = WeylElement::deriv(&space, 0).pow(2);
    let s_half = verify_core::conformal::spin_matrix(&space, 0, &rat(1, 2));
    let s_shadow = verify_core::conformal::spin_matrix(&space, 0, &rat(-3, 2));
    for r in 0..2 {
        for cc in 0..2 {
            assert_eq!(d2.mul(&s_half[(r, cc)]), s_shadow[(r, cc)].mul(&d2));
        }
    }
    // N = 4, k = 2, m in {1, 2} at admissible random weights.
    for m in [1i64, 2] {
        let r1 = rng.gaussian_rational(4, 3);
        let r2 = rng.gaussian_rational(4, 3);
        let r3 = &r2 - &GaussianRational::from_int(m);
        let r4 = &GaussianRational::from_int(6) - &(&(&r1 + &r2) + &r3);
        let params = SpectralParams::new(gr(rng.rational(5, 4)), vec![r1, r2, r3, r4]).unwrap();
        intertwiner_check(&params, 2).unwrap();
    }
    // Direct-vs-factorized consistency of the builders used above.
    build_sln_l(&SpectralParams::sl2_spin(gr(rat(1, 3)), &rat(1, 2)))
        .unwrap()
        .check_gl_relations()
        .unwrap();
    c.finish();
}

#[test]
fn criterion_09_operator_star_triangle_and_scalar_r() {
    let c = Criterion::start("9 (operator star-triangle and scalar R-operator RLL)", Duration::from_secs(360));
    for n in 1..=4usize {
        for a in 0..=2i64 {
            for b in 0..=2i64 {
                operator_str_check(n, a, b).unwrap();
            }
        }
    }
    scalar_r_rll_check(2, ScalarRExponents::new(1, 1, 1, 1).unwrap()).unwrap();
    scalar_r_rll_check(4, ScalarRExponents::new(2, 1, 1, 0).unwrap()).unwrap();
    c.finish();
}

#[test]
fn criterion_10_crossing() {
    let c = Criterion::start("10 (crossing symmetry)", Duration::from_secs(120));
    let mut rng = SeededRng::new(1010);
    for n in [2usize, 4] {
        for _ in 0..3 {
            let u = rng.rational(6, 4);
            let rep = crossing_check(n, &gr(u)).unwrap();
            assert!(rep.full_identity && rep.block_identity);
        }
    }
    c.finish();
}

#[test]
fn criterion_11_permutation_identity() {
    let c = Criterion::start("11 (permutation-operator identity)", Duration::from_secs(10));
    for n in [2usize, 4] {
        let rep = permutation_identity_check(n).unwrap();
        assert!(rep.graded_convention, "alternating-sign convention expected at n={n}");
        assert!(rep.equals_swap);
    }
    c.finish();
}

#[test]
fn criterion_12_numeric_gamma_suite() {
    let c = Criterion::start("12 (numeric Gamma-constant suite)", Duration::from_secs(600));
    // Fourier constants, n = 4, within 0.5%.
    for alpha in [1.0, 1.3] {
        let check = fourier_constant_check(4, alpha, 0.005).unwrap();
        assert!(check.passed, "fourier alpha={alpha}: rel={} err={}", check.rel_error, check.result.std_error);
    }
    // Chain rule, n = 4, within 1% at 1e7 samples.
    let check = chain_rule_check(
        1.4,
        1.3,
        &[0.0, 0.0, 0.0, 0.0],
        &[1.0, 0.0, 0.0, 0.0],
        &MCConfig::new(10_000_000, 7),
        0.01,
    )
    .unwrap();
    assert!(check.passed, "chain rule: rel={} err={}", check.rel_error, check.result.std_error);
    // Scalar star-triangle: n = 2 quadrature within 0.5%.
    let p2 = ScalarStrParams::new(2, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0).unwrap();
    let check = scalar_str_quadrature(&p2, &[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], 0.005).unwrap();
    assert!(check.passed, "scalar n=2: rel={} err={}", check.rel_error, check.result.std_error);
    // Scalar star-triangle: n = 4 Monte Carlo within 2% at 1e7 samples.
    let p4 = ScalarStrParams::new(4, 1.5, 1.2, 1.3).unwrap();
    let check = scalar_str_mc(
        &p4,
        &[0.0, 0.0, 0.0, 0.0],
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &MCConfig::new(10_000_000, 5),
        0.02,
    )
    .unwrap();
    assert!(check.passed, "scalar n=4: rel={} err={}", check.rel_error, check.result.std_error);
    // Spinorial star-triangle, m in {1, 2}, within 3% at <= 2e7 samples.
    let a_mat = build_nilpotent_a(
        [GaussianRational::one(), GaussianRational::from_pair(1, 2)],
        [GaussianRational::from_pair(-1, 3), GaussianRational::one()],
    )
    .unwrap();
    for (m, a, b, cc) in [(1u32, 1.6, 0.4, 1.8), (2, 2.2, 0.4, 2.2)] {
        let params = SpinStrParams::new(a, b, cc, m).unwrap();
        let check = spinorial_str_check(
            &params,
            &a_mat,
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &MCConfig::new(20_000_000, 42),
            0.03,
        )
        .unwrap();
        assert!(check.passed, "spin m={m}: rel={} err={}", check.rel_error, check.result.std_error);
    }
    c.finish();
}

#[test]
fn criterion_13_negative_control() {
    let c = Criterion::start("13 (negative control)", Duration::from_secs(120));
    // A deliberately invalid family: scalar generators with the dilatation
    // shifted by a constant. It violates the antisymmetrized-anticommutator
    // condition AND produces a nonzero RLL residual, so a vacuous pass in
    // either check would be caught.
    let enl = enlarged(2);
    let seed = coeff_seed(2);
    let rep = RepChoice::BrokenScalar {
        delta: GaussianRational::from_pair(5, 2),
        shift: GaussianRational::from_pair(1, 3),
    };
    let fam = verify_core::rmatrix::rep_family_public(&enl, &rep).unwrap();
    assert!(asym_condition(&fam, 4).is_err(), "invalid family must violate the asym condition");
    let res = rll_check(&enl, &rep, &gr(rat(1, 3)), &gr(rat(2, 5)), &seed);
    assert!(res.is_err(), "invalid family must produce a nonzero RLL residual");
    // And the machinery is not vacuous: the honest scalar representation
    // passes both at the same spectral points.
    let good = RepChoice::ScalarConformal { delta: GaussianRational::from_pair(5, 2) };
    let fam = conformal_rep(&RepParams::scalar(Signature::new(2, 0), GaussianRational::from_pair(5, 2))).unwrap();
    assert!(asym_condition(&fam, 4).is_ok());
    rll_check(&enl, &good, &gr(rat(1, 3)), &gr(rat(2, 5)), &seed).unwrap();
    c.finish();
}
