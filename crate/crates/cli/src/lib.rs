//! Scenario registry and runners behind the `verify` binary.
//!
//! Each scenario bundles one family of checks with documented defaults; the
//! registry is the single source of those defaults, and every parameter in
//! play is echoed into the report for reproducibility.

use std::collections::BTreeMap;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use verify_core::clifford::{
    check_clifford, conformal_split, find_transpose_intertwiner, EnlargedGammaBasis, GammaBasis,
    Signature,
};
use verify_core::conformal::{coset_action, packed_matrix, rho, RepParams};
use verify_core::loperators::{
    build_conformal_l, build_sln_l, intertwiner_check, sl4_so6_bridge_check, SpectralParams,
};
use verify_core::numint::{
    chain_rule_check, fourier_constant_check, scalar_str_mc, scalar_str_quadrature,
    spinorial_str_check, MCConfig, ScalarStrParams, SpinStrParams,
};
use verify_core::report::{CheckReport, ReportBundle, Status};
use verify_core::rmatrix::{
    asym_condition, conformal_rep, crossing_check, defining_rep, differential_y_rep,
    permutation_identity_check, r_coefficients, rll_check, weyl_projection_check,
    LinearRationalFn, RepChoice,
};
use verify_core::rng::SeededRng;
use verify_core::scalar::{parse_rational, rat, GaussianRational, Rational};
use verify_core::startriangle::{
    build_nilpotent_a, inversion_spotcheck, operator_str_check, per_space_str_check,
    scalar_r_rll_check, ScalarRExponents,
};
use verify_core::CheckError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug)]
pub struct Overrides {
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub u: Option<Rational>,
    pub v: Option<Rational>,
    pub delta: Option<Rational>,
    pub ell: Option<Rational>,
    pub elldot: Option<Rational>,
    pub m: Option<u32>,
    pub k: Option<usize>,
    pub exponents: Option<Vec<i64>>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub rep: Option<String>,
    pub form: Option<String>,
    pub samples: Option<u64>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub profile: Profile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl Default for Overrides {
    fn default() -> Self {
        Self {
            n: None,
            p: None,
            q: None,
            u: None,
            v: None,
            delta: None,
            ell: None,
            elldot: None,
            m: None,
            k: None,
            exponents: None,
            alpha: None,
            beta: None,
            gamma: None,
            a: None,
            b: None,
            c: None,
            rep: None,
            form: None,
            samples: None,
            seed: 12345,
            profile: Profile::Quick,
            tol: None,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

type ScenarioFn = fn(&Overrides) -> Result<Vec<CheckReport>, CliError>;

pub struct Scenario {
    pub name: &'static str,
    pub about: &'static str,
    pub run: ScenarioFn,
}

pub const SCENARIOS: &[Scenario] = &[
    Scenario { name: "clifford", about: "gamma bases for all signatures (n in {2,4}): Clifford/enlarged relations, split conformal generators, transpose intertwiner", run: run_clifford },
    Scenario { name: "conformal-rep", about: "differential representation relations; defaults sig=(4,0) scalar delta=5/3, spin point (1/2,1) at delta=3/2", run: run_conformal_rep },
    Scenario { name: "packed-matrix", about: "packed-generator identity; defaults scalar n in {2,4} and spin n=4 at seeded rational delta", run: run_packed_matrix },
    Scenario { name: "coset-action", about: "global coset action: translation, rational dilatation, composition on 20 seeded points", run: run_coset_action },
    Scenario { name: "sln-l", about: "factorized sl(N) L-operator: gl(N) relations and linearity; default N=4, seeded rational weights", run: run_sln_l },
    Scenario { name: "intertwiner", about: "parameter-permuting intertwiners; defaults N=2 m in {1,2,3} and N=4 k=2 m in {1,2}", run: run_intertwiner },
    Scenario { name: "conformal-l", about: "conformal L-operator factorization; defaults scalar n in {2,4} and spin n=4, 3 seeded points each", run: run_conformal_l },
    Scenario { name: "bridge", about: "sl(4) to conformal change of variables; default pinned point (u,delta,l,ld)=(2/5,7/3,1/2,1) plus seeded points", run: run_bridge },
    Scenario { name: "r-coefficients", about: "recurrence coefficients; default n=4 seed (u+4)/8 at 5 seeded rational u", run: run_r_coefficients },
    Scenario { name: "ybe", about: "Yang-Baxter equation in braid form; default n=2 at (1/2,1/3); full profile adds n=4", run: run_ybe },
    Scenario { name: "rll", about: "RLL with the spinorial R; --rep defining|scalar|diff-y|spin-yang, --n 2|4; default: the representation table (wider in the full profile)", run: run_rll },
    Scenario { name: "asym", about: "antisymmetrized anticommutator condition per representation, n in {2,4}; includes the expected spin violation at n=4", run: run_asym },
    Scenario { name: "weyl-projection", about: "n=4 projection onto the Yang matrix; default u in {0, 1, 3/7}", run: run_weyl_projection },
    Scenario { name: "crossing", about: "crossing symmetry for the differential-y representation; default u=2/5, n in {2,4}", run: run_crossing },
    Scenario { name: "permutation", about: "permutation-operator closed form and normalization; n in {2,4}", run: run_permutation },
    Scenario { name: "operator-str", about: "operator star-triangle; default all (a,b) in {0..2}^2, n in {1..4}", run: run_operator_str },
    Scenario { name: "fourier", about: "Fourier constant a(alpha); default n=4 alpha=1.3 tol=0.005", run: run_fourier },
    Scenario { name: "chain-rule", about: "propagator convolution; default n=4 alpha=1.4 beta=1.3 tol=0.01 samples=1e7", run: run_chain_rule },
    Scenario { name: "star-triangle", about: "--form operator|scalar-integral|spin-integral; defaults: scalar n=2 quadrature tol 0.005 / n=4 MC tol 0.02, spin m=1 tol 0.03; full profile runs all numeric forms", run: run_star_triangle },
    Scenario { name: "scalar-r-rll", about: "scalar R-operator RLL at integer exponents; defaults n=2 (1,1,1,1) and n=4 (2,1,1,0)", run: run_scalar_r_rll },
    Scenario { name: "inversion-spotcheck", about: "pointwise inversion laws at 100 seeded rational points", run: run_inversion },
];

pub fn scenario_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = SCENARIOS.iter().map(|s| s.name).collect();
    names.push("all");
    names
}

fn params_of(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn exact_report(
    name: &str,
    params: BTreeMap<String, String>,
    started: Instant,
    outcome: Result<(), CheckError>,
) -> CheckReport {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(()) => CheckReport::exact_pass(name, params, secs),
        Err(CheckError::Structural(d)) => CheckReport::exact_fail(name, params, d, secs),
        Err(e) => CheckReport::error(name, params, e.to_string(), secs),
    }
}

fn usage(e: CheckError) -> CliError {
    CliError::Usage(e.to_string())
}

fn signature_from(ov: &Overrides, default: Signature) -> Signature {
    match (ov.p, ov.q) {
        (Some(p), Some(q)) => Signature::new(p, q),
        _ => match ov.n {
            Some(n) => Signature::new(n, 0),
            None => default,
        },
    }
}

// ---------------------------------------------------------------------
// scenario runners
// ---------------------------------------------------------------------

fn run_clifford(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let mut out = Vec::new();
    let dims: Vec<usize> = match ov.n {
        Some(n) => vec![n],
        None => vec![2, 4],
    };
    for n in dims {
        for sig in Signature::all_with_n(n) {
            let t = Instant::now();
            let outcome = (|| -> Result<(), CheckError> {
                let basis = GammaBasis::build(sig)?;
                check_clifford(&basis.gammas, &sig.metric())?;
                let enl = EnlargedGammaBasis::enlarge(&basis)?;
                check_clifford(&enl.gammas, &enl.metric)?;
                let gens = conformal_split(&basis);
                verify_core::clifford::check_conformal_relations(
                    &sig.metric(),
                    &|mu, nu| gens.ell[mu][nu].clone(),
                    &|mu| gens.p[mu].clone(),
                    &|mu| gens.k[mu].clone(),
                    &gens.d,
                )?;
                find_transpose_intertwiner(&basis.gammas)?;
                Ok(())
            })();
            out.push(exact_report(
                "clifford",
                params_of(&[("p", sig.p.to_string()), ("q", sig.q.to_string())]),
                t,
                outcome,
            ));
        }
    }
    Ok(out)
}

fn run_conformal_rep(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let mut out = Vec::new();
    let sig = signature_from(ov, Signature::new(4, 0));
    let delta = ov.delta.clone().unwrap_or_else(|| rat(5, 3));
    let spin = ov.ell.is_some() || ov.elldot.is_some();
    let t = Instant::now();
    let params = if spin {
        RepParams::spin4d(
            sig,
            GaussianRational::from_rational(delta.clone()),
            ov.ell.clone().unwrap_or_else(|| rat(1, 2)),
            ov.elldot.clone().unwrap_or_else(|| rat(0, 1)),
        )
        .map_err(usage)?
    } else {
        RepParams::scalar(sig, GaussianRational::from_rational(delta.clone()))
    };
    let outcome = rho(&params).and_then(|r| r.check_relations());
    out.push(exact_report(
        "conformal-rep",
        params_of(&[
            ("p", sig.p.to_string()),
            ("q", sig.q.to_string()),
            ("delta", delta.to_string()),
            ("mode", if spin { "spin".into() } else { "scalar".into() }),
        ]),
        t,
        outcome,
    ));
    if !spin && sig.n() == 4 && ov.delta.is_none() {
        // default spin point as well
        let t = Instant::now();
        let params = RepParams::spin4d(sig, GaussianRational::from_pair(3, 2), rat(1, 2), rat(1, 1))
            .map_err(usage)?;
        let outcome = rho(&params).and_then(|r| r.check_relations());
        out.push(exact_report(
            "conformal-rep",
            params_of(&[
                ("p", sig.p.to_string()),
                ("q", sig.q.to_string()),
                ("delta", "3/2".into()),
                ("mode", "spin(1/2,1)".into()),
            ]),
            t,
            outcome,
        ));
    }
    Ok(out)
}

fn run_packed_matrix(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let mut rng = SeededRng::new(ov.seed);
    let mut out = Vec::new();
    let mut run_one = |params: RepParams, label: &str| {
        let t = Instant::now();
        let outcome = packed_matrix(&params).and_then(|pm| {
            if pm.assembled == pm.block_form {
                Ok(())
            } else {
                Err(CheckError::Structural("packed matrix mismatch".into()))
            }
        });
        out.push(exact_report(
            "packed-matrix",
            params_of(&[("case", label.to_string()), ("delta", params.delta.to_string())]),
            t,
            outcome,
        ));
    };
    match ov.n {
        Some(2) => run_one(
            RepParams::scalar(Signature::new(2, 0), GaussianRational::from_rational(ov.delta.clone().unwrap_or_else(|| rng.rational(6, 4)))),
            "scalar n=2",
        ),
        Some(4) => run_one(
            RepParams::scalar(Signature::new(4, 0), GaussianRational::from_rational(ov.delta.clone().unwrap_or_else(|| rng.rational(6, 4)))),
            "scalar n=4",
        ),
        _ => {
            run_one(RepParams::scalar(Signature::new(2, 0), rng.gaussian_rational(6, 4)), "scalar n=2");
            run_one(RepParams::scalar(Signature::new(4, 0), rng.gaussian_rational(6, 4)), "scalar n=4");
            let spin = RepParams::spin4d(Signature::new(4, 0), rng.gaussian_rational(6, 4), rat(1, 2), rat(1, 1))
                .map_err(usage)?;
            run_one(spin, "spin n=4");
        }
    }
    Ok(out)
}

fn run_coset_action(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    use verify_core::matrix::{Matrix, NumMatrix};
    let t = Instant::now();
    let outcome = (|| -> Result<(), CheckError> {
        let b = GammaBasis::build(Signature::new(1, 3))?;
        let sb = b.sigma_blocks();
        let h = 2usize;
        let id = NumMatrix::identity(h);
        let zero = NumMatrix::zeros(h, h);
        let mut rng = SeededRng::new(ov.seed);
        let point = |rng: &mut SeededRng| -> NumMatrix {
            let mut acc = NumMatrix::zeros(h, h);
            for mu in 0..4 {
                let c = GaussianRational::from_rational(rng.rational(5, 3));
                acc = acc.add(&sb.sigmabar[mu].scale(&(&c * &-GaussianRational::i())));
            }
            acc
        };
        // translation
        let x = point(&mut rng);
        let bold_a = point(&mut rng).scale(&-GaussianRational::one());
        let (xp, hinv) = coset_action(&id, &zero, &bold_a, &id, &x)?;
        if xp != x.add(&bold_a) || hinv != NumMatrix::identity(2 * h) {
            return Err(CheckError::Structural("translation action failed".into()));
        }
        // rational dilatation
        let tfac = GaussianRational::from_pair(3, 2);
        let (xp, _) = coset_action(&id.scale(&tfac.inv()), &zero, &zero, &id.scale(&tfac), &x)?;
        if xp != x.scale(&(&tfac * &tfac)) {
            return Err(CheckError::Structural("dilatation action failed".into()));
        }
        // composition on 20 points
        for _ in 0..20 {
            let x = point(&mut rng);
            let m1 = (id.add(&point(&mut rng).scale(&GaussianRational::from_pair(1, 9))), zero.clone(), point(&mut rng), id.clone());
            let m2 = (id.clone(), point(&mut rng).scale(&GaussianRational::from_pair(1, 7)), zero.clone(), id.clone());
            let Ok((x1, _)) = coset_action(&m1.0, &m1.1, &m1.2, &m1.3, &x) else { continue };
            let Ok((x2, _)) = coset_action(&m2.0, &m2.1, &m2.2, &m2.3, &x1) else { continue };
            let big1 = verify_core::conformal::block2(&m1.0, &m1.1, &m1.2, &m1.3);
            let big2 = verify_core::conformal::block2(&m2.0, &m2.1, &m2.2, &m2.3);
            let prod = big2.mul(&big1);
            let blk = |r0: usize, c0: usize| Matrix::from_fn(h, h, |r, c| prod[(r + r0, c + c0)].clone());
            let (x12, _) = coset_action(&blk(0, 0), &blk(0, h), &blk(h, 0), &blk(h, h), &x)?;
            if x2 != x12 {
                return Err(CheckError::Structural("composition law failed".into()));
            }
        }
        Ok(())
    })();
    Ok(vec![exact_report(
        "coset-action",
        params_of(&[("seed", ov.seed.to_string())]),
        t,
        outcome,
    )])
}

fn run_sln_l(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let nmat = ov.n.unwrap_or(4);
    let mut rng = SeededRng::new(ov.seed);
    let mut rho_w: Vec<GaussianRational> = (0..nmat.saturating_sub(1)).map(|_| rng.gaussian_rational(5, 3)).collect();
    let mut sum = GaussianRational::zero();
    for r in &rho_w {
        sum += r;
    }
    rho_w.push(&GaussianRational::from_rational(rat((nmat * (nmat - 1) / 2) as i64, 1)) - &sum);
    let u = GaussianRational::from_rational(ov.u.clone().unwrap_or_else(|| rat(2, 5)));
    let t = Instant::now();
    let outcome = SpectralParams::new(u.clone(), rho_w)
        .and_then(|p| build_sln_l(&p))
        .and_then(|op| {
            op.check_gl_relations()?;
            op.check_linearity()
        });
    Ok(vec![exact_report(
        "sln-l",
        params_of(&[("N", nmat.to_string()), ("u", u.to_string()), ("seed", ov.seed.to_string())]),
        t,
        outcome,
    )])
}

fn run_intertwiner(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let mut out = Vec::new();
    let cases: Vec<(usize, usize, i64)> = match (ov.n, ov.k, ov.m) {
        (Some(n), k, m) => vec![(n, k.unwrap_or(1), m.unwrap_or(1) as i64)],
        _ => vec![(2, 1, 1), (2, 1, 2), (2, 1, 3), (4, 2, 1), (4, 2, 2)],
    };
    let mut rng = SeededRng::new(ov.seed);
    for (nmat, k, m) in cases {
        let t = Instant::now();
        let outcome = (|| -> Result<(), CheckError> {
            let params = if nmat == 2 {
                // ell = (m-1)/2 gives u_2 - u_1 = m
                let ell = rat(m - 1, 2);
                SpectralParams::sl2_spin(GaussianRational::from_rational(rng.rational(5, 4)), &ell)
            } else {
                let r1 = rng.gaussian_rational(4, 3);
                let rk = rng.gaussian_rational(4, 3);
                let rk1 = &rk - &GaussianRational::from_int(m);
                let mut rest = vec![r1, rk, rk1];
                let mut sum = GaussianRational::zero();
                for r in &rest {
                    sum += r;
                }
                rest.push(&GaussianRational::from_rational(rat((nmat * (nmat - 1) / 2) as i64, 1)) - &sum);
                // order so that positions k-1, k hold the gap pair
                let ordered = vec![rest[0].clone(), rest[1].clone(), rest[2].clone(), rest[3].clone()];
                SpectralParams::new(GaussianRational::from_rational(rng.rational(5, 4)), ordered)?
            };
            intertwiner_check(&params, k)
        })();
        out.push(exact_report(
            "intertwiner",
            params_of(&[("N", nmat.to_string()), ("k", k.to_string()), ("m", m.to_string())]),
            t,
            outcome,
        ));
    }
    Ok(out)
}

fn run_conformal_l(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let mut rng = SeededRng::new(ov.seed);
    let mut out = Vec::new();
    let mut run_one = |params: RepParams, u: GaussianRational, label: &str| {
        let t = Instant::now();
        let outcome = build_conformal_l(&params, &u).and_then(|op| op.check_factorization());
        out.push(exact_report(
            "conformal-l",
            params_of(&[("case", label.to_string()), ("u", u.to_string()), ("delta", params.delta.to_string())]),
            t,
            outcome,
        ));
    };
    for _ in 0..3 {
        run_one(
            RepParams::scalar(Signature::new(2, 0), rng.gaussian_rational(6, 4)),
            rng.gaussian_rational(6, 4),
            "scalar n=2",
        );
        run_one(
            RepParams::scalar(Signature::new(4, 0), rng.gaussian_rational(6, 4)),
            rng.gaussian_rational(6, 4),
            "scalar n=4",
        );
        let spin = RepParams::spin4d(Signature::new(4, 0), rng.gaussian_rational(6, 4), rat(1, 2), rat(1, 2))
            .map_err(usage)?;
        run_one(spin, rng.gaussian_rational(6, 4), "spin n=4");
    }
    Ok(out)
}

fn run_bridge(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let mut out = Vec::new();
    let mut rng = SeededRng::new(ov.seed);
    let mut cases = vec![(
        ov.u.clone().unwrap_or_else(|| rat(2, 5)),
        ov.delta.clone().unwrap_or_else(|| rat(7, 3)),
        ov.ell.clone().unwrap_or_else(|| rat(1, 2)),
        ov.elldot.clone().unwrap_or_else(|| rat(1, 1)),
    )];
    if ov.u.is_none() {
        for _ in 0..3 {
            cases.push((rng.rational(6, 4), rng.rational(6, 4), rng.rational(4, 3), rng.rational(4, 3)));
        }
    }
    for (u, delta, ell, elldot) in cases {
        let t = Instant::now();
        let outcome = sl4_so6_bridge_check(&u, &delta, &ell, &elldot).map(|_| ());
        out.push(exact_report(
            "bridge",
            params_of(&[
                ("u", u.to_string()),
                ("delta", delta.to_string()),
                ("ell", ell.to_string()),
                ("elldot", elldot.to_string()),
            ]),
            t,
            outcome,
        ));
    }
    Ok(out)
}

fn run_r_coefficients(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let n = ov.n.unwrap_or(4);
    let seed_fn = if n == 4 {
        LinearRationalFn::n4_comparison_seed()
    } else {
        LinearRationalFn::constant(GaussianRational::one())
    };
    let mut rng = SeededRng::new(ov.seed);
    let points: Vec<Rational> = match &ov.u {
        Some(u) => vec![u.clone()],
        None => (0..5).map(|_| rng.rational(9, 7)).collect(),
    };
    let mut out = Vec::new();
    for u in points {
        let t = Instant::now();
        let uu = GaussianRational::from_rational(u.clone());
        let outcome = (|| -> Result<(), CheckError> {
            let coeffs = r_coefficients(n, &uu, &seed_fn)?;
            if n == 4 {
                let eighth = GaussianRational::from_pair(1, 8);
                let expect = [
                    &(&uu + &GaussianRational::from_int(4)) * &eighth,
                    -&uu * &eighth,
                    &uu * &eighth,
                    -&(&uu + &GaussianRational::from_int(4)) * &eighth,
                ];
                for ((k, got), want) in coeffs.iter().zip(expect.iter()) {
                    if got != want {
                        return Err(CheckError::Structural(format!("R_{k} mismatch at u={u}")));
                    }
                }
            }
            Ok(())
        })();
        out.push(exact_report(
            "r-coefficients",
            params_of(&[("n", n.to_string()), ("u", u.to_string())]),
            t,
            outcome,
        ));
    }
    Ok(out)
}

fn enlarged_for(n: usize) -> Result<EnlargedGammaBasis, CheckError> {
    EnlargedGammaBasis::enlarge(&GammaBasis::build(Signature::new(n, 0))?)
}

fn seed_for(n: usize) -> LinearRationalFn {
    if n == 4 {
        LinearRationalFn::n4_comparison_seed()
    } else {
        LinearRationalFn::constant(GaussianRational::one())
    }
}

fn run_ybe(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let mut out = Vec::new();
    let mut cases: Vec<(usize, Rational, Rational)> = Vec::new();
    match (&ov.u, &ov.v) {
        (Some(u), Some(v)) => cases.push((ov.n.unwrap_or(2), u.clone(), v.clone())),
        _ => {
            cases.push((2, rat(1, 2), rat(1, 3)));
            if ov.profile == Profile::Full {
                cases.push((4, rat(2, 7), rat(-3, 5)));
            }
        }
    }
    for (n, u, v) in cases {
        let t = Instant::now();
        let outcome = enlarged_for(n).and_then(|enl| {
            ybe_wrap(&enl, &u, &v, &seed_for(n))
        });
        out.push(exact_report(
            "ybe",
            params_of(&[("n", n.to_string()), ("u", u.to_string()), ("v", v.to_string())]),
            t,
            outcome,
        ));
    }
    Ok(out)
}

fn ybe_wrap(
    enl: &EnlargedGammaBasis,
    u: &Rational,
    v: &Rational,
    seed: &LinearRationalFn,
) -> Result<(), CheckError> {
    verify_core::rmatrix::ybe_check(
        enl,
        &GaussianRational::from_rational(u.clone()),
        &GaussianRational::from_rational(v.clone()),
        seed,
    )
}

fn run_rll(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    // With no explicit rep the scenario covers the representation table:
    // n=2 defining + scalar in the quick profile; the full profile adds
    // the n=4 members and the minus-projection spin case.
    if ov.rep.is_none() && ov.n.is_none() {
        let mut out = Vec::new();
        let mut cases: Vec<(usize, &str)> = vec![(2, "defining"), (2, "scalar")];
        if ov.profile == Profile::Full {
            cases.extend([(2, "diff-y"), (4, "defining"), (4, "scalar"), (4, "spin-yang")]);
        }
        for (n, rep) in cases {
            let mut one = ov.clone();
            one.n = Some(n);
            one.rep = Some(rep.to_string());
            out.extend(run_rll(&one)?);
        }
        return Ok(out);
    }
    let n = ov.n.unwrap_or(2);
    let rep_name = ov.rep.clone().unwrap_or_else(|| "scalar".to_string());
    let u = ov.u.clone().unwrap_or_else(|| rat(1, 3));
    let v = ov.v.clone().unwrap_or_else(|| rat(2, 5));
    let delta = ov.delta.clone().unwrap_or_else(|| rat(5, 2));
    let t = Instant::now();
    let outcome = (|| -> Result<(), CheckError> {
        let uu = GaussianRational::from_rational(u.clone());
        let vv = GaussianRational::from_rational(v.clone());
        if rep_name == "spin-yang" {
            if n != 4 {
                return Err(CheckError::Contract("spin-yang requires n = 4".into()));
            }
            let params = RepParams::spin4d(
                Signature::new(4, 0),
                GaussianRational::from_rational(delta.clone()),
                ov.ell.clone().unwrap_or_else(|| rat(1, 2)),
                ov.elldot.clone().unwrap_or_else(|| rat(0, 1)),
            )?;
            let lu = build_conformal_l(&params, &uu)?;
            let lv = build_conformal_l(&params, &vv)?;
            return verify_core::rmatrix::rll_yang_weyl(&lu.space, &lu.direct, &lv.direct, &uu, &vv);
        }
        let enl = enlarged_for(n)?;
        let rep = match rep_name.as_str() {
            "defining" => RepChoice::Defining,
            "diff-y" => RepChoice::DifferentialY,
            "scalar" => RepChoice::ScalarConformal { delta: GaussianRational::from_rational(delta.clone()) },
            other => return Err(CheckError::Contract(format!("unknown rep '{other}'"))),
        };
        rll_check(&enl, &rep, &uu, &vv, &seed_for(n))
    })();
    Ok(vec![exact_report(
        "rll",
        params_of(&[
            ("n", n.to_string()),
            ("rep", rep_name),
            ("u", u.to_string()),
            ("v", v.to_string()),
            ("delta", delta.to_string()),
        ]),
        t,
        outcome,
    )])
}

fn run_asym(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let dims: Vec<usize> = match ov.n {
        Some(n) => vec![n],
        None => vec![2, 4],
    };
    let mut out = Vec::new();
    for n in dims {
        let enl = enlarged_for(n).map_err(usage)?;
        let nidx = n + 2;
        let reps: Vec<(&str, verify_core::rmatrix::ConformalFamilyFree)> = vec![
            ("defining", defining_rep(&enl.metric)),
            ("differential-y", differential_y_rep(&enl.metric)),
            (
                "scalar-conformal",
                conformal_rep(&RepParams::scalar(Signature::new(n, 0), GaussianRational::from_pair(3, 2)))
                    .map_err(usage)?,
            ),
        ];
        for (name, fam) in reps {
            let t = Instant::now();
            let res = asym_condition(&fam, nidx);
            let outcome = res.map_err(|(a, b, c, d)| {
                CheckError::Structural(format!("asym violated at ({a},{b},{c},{d})"))
            });
            out.push(exact_report(
                "asym",
                params_of(&[("n", n.to_string()), ("rep", name.to_string())]),
                t,
                outcome,
            ));
        }
        if n == 4 {
            // The generic spin representation is expected to violate the
            // condition (the relation survives through the duality
            // mechanism instead); the check here is that it does.
            let t = Instant::now();
            let fam = conformal_rep(
                &RepParams::spin4d(Signature::new(4, 0), GaussianRational::from_pair(3, 4), rat(1, 2), rat(1, 1))
                    .map_err(usage)?,
            )
            .map_err(usage)?;
            let outcome = match asym_condition(&fam, nidx) {
                Err(_) => Ok(()),
                Ok(()) => Err(CheckError::Structural(
                    "spin representation unexpectedly satisfies the asym condition".into(),
                )),
            };
            out.push(exact_report(
                "asym",
                params_of(&[("n", "4".into()), ("rep", "spin4d".into()), ("expected", "violated".into())]),
                t,
                outcome,
            ));
        }
    }
    Ok(out)
}

fn run_weyl_projection(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let points: Vec<Rational> = match &ov.u {
        Some(u) => vec![u.clone()],
        None => vec![rat(0, 1), rat(1, 1), rat(3, 7)],
    };
    let mut out = Vec::new();
    for u in points {
        let t = Instant::now();
        let outcome = weyl_projection_check(&GaussianRational::from_rational(u.clone())).map(|_| ());
        out.push(exact_report("weyl-projection", params_of(&[("u", u.to_string())]), t, outcome));
    }
    Ok(out)
}

fn run_crossing(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let dims: Vec<usize> = match ov.n {
        Some(n) => vec![n],
        None => vec![2, 4],
    };
    let u = ov.u.clone().unwrap_or_else(|| rat(2, 5));
    let mut out = Vec::new();
    for n in dims {
        let t = Instant::now();
        let outcome = crossing_check(n, &GaussianRational::from_rational(u.clone())).map(|_| ());
        out.push(exact_report(
            "crossing",
            params_of(&[("n", n.to_string()), ("u", u.to_string())]),
            t,
            outcome,
        ));
    }
    Ok(out)
}

fn run_permutation(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let dims: Vec<usize> = match ov.n {
        Some(n) => vec![n],
        None => vec![2, 4],
    };
    let mut out = Vec::new();
    for n in dims {
        let t = Instant::now();
        let outcome = permutation_identity_check(n).map(|rep| {
            let _ = rep;
        });
        out.push(exact_report("permutation", params_of(&[("n", n.to_string())]), t, outcome));
    }
    Ok(out)
}

fn run_operator_str(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let mut out = Vec::new();
    let cases: Vec<(usize, i64, i64)> = match (&ov.exponents, ov.n) {
        (Some(e), n) if e.len() == 2 => vec![(n.unwrap_or(4), e[0], e[1])],
        _ => {
            let mut v = Vec::new();
            for n in 1..=4 {
                for a in 0..=2 {
                    for b in 0..=2 {
                        v.push((n, a, b));
                    }
                }
            }
            v
        }
    };
    for (n, a, b) in cases {
        let t = Instant::now();
        let outcome = operator_str_check(n, a, b).and_then(|_| per_space_str_check(n.min(4), a, b));
        out.push(exact_report(
            "operator-str",
            params_of(&[("n", n.to_string()), ("a", a.to_string()), ("b", b.to_string())]),
            t,
            outcome,
        ));
    }
    Ok(out)
}

fn run_fourier(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let n = ov.n.unwrap_or(4);
    let alpha = ov.alpha.unwrap_or(1.3);
    let tol = ov.tol.unwrap_or(0.005);
    let t = Instant::now();
    match fourier_constant_check(n, alpha, tol) {
        Ok(check) => Ok(vec![CheckReport::numeric(
            "fourier",
            params_of(&[("n", n.to_string()), ("alpha", alpha.to_string()), ("tol", tol.to_string())]),
            &check,
            t.elapsed().as_secs_f64(),
        )]),
        Err(e) => Err(usage(e)),
    }
}

fn run_chain_rule(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let alpha = ov.alpha.unwrap_or(1.4);
    let beta = ov.beta.unwrap_or(1.3);
    let tol = ov.tol.unwrap_or(0.01);
    let samples = ov.samples.unwrap_or(10_000_000);
    let cfg = MCConfig::new(samples, ov.seed);
    let x = [0.0, 0.0, 0.0, 0.0];
    let y = [1.0, 0.0, 0.0, 0.0];
    let t = Instant::now();
    match chain_rule_check(alpha, beta, &x, &y, &cfg, tol) {
        Ok(check) => Ok(vec![CheckReport::numeric(
            "chain-rule",
            params_of(&[
                ("alpha", alpha.to_string()),
                ("beta", beta.to_string()),
                ("samples", samples.to_string()),
                ("seed", ov.seed.to_string()),
                ("tol", tol.to_string()),
            ]),
            &check,
            t.elapsed().as_secs_f64(),
        )]),
        Err(e) => Err(usage(e)),
    }
}

fn run_star_triangle(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    // In the full profile with no explicit form, run the whole numeric
    // family: plane quadrature, four-dimensional Monte Carlo, and the
    // spinorial integral at m = 1 and m = 2.
    if ov.form.is_none() && ov.profile == Profile::Full {
        let mut out = Vec::new();
        for (form, n, m) in [
            ("scalar-integral", 2usize, 1u32),
            ("scalar-integral", 4, 1),
            ("spin-integral", 4, 1),
            ("spin-integral", 4, 2),
        ] {
            let mut one = ov.clone();
            one.form = Some(form.to_string());
            one.n = Some(n);
            one.m = Some(m);
            out.extend(run_star_triangle(&one)?);
        }
        return Ok(out);
    }
    let form = ov.form.clone().unwrap_or_else(|| "scalar-integral".to_string());
    match form.as_str() {
        "operator" => {
            let mut o2 = Overrides::default();
            o2.exponents = ov.exponents.clone();
            o2.n = ov.n;
            run_operator_str(&o2)
        }
        "scalar-integral" => {
            let n = ov.n.unwrap_or(2);
            if n == 2 {
                let a = ov.alpha.unwrap_or(2.0 / 3.0);
                let b = ov.beta.unwrap_or(2.0 / 3.0);
                let g = ov.gamma.unwrap_or(2.0 - a - b);
                let tol = ov.tol.unwrap_or(0.005);
                let t = Instant::now();
                let params = ScalarStrParams::new(2, a, b, g).map_err(usage)?;
                let check = scalar_str_quadrature(&params, &[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], tol)
                    .map_err(usage)?;
                Ok(vec![CheckReport::numeric(
                    "star-triangle",
                    params_of(&[
                        ("form", "scalar-quadrature-n2".into()),
                        ("alpha", a.to_string()),
                        ("beta", b.to_string()),
                        ("gamma", g.to_string()),
                        ("tol", tol.to_string()),
                    ]),
                    &check,
                    t.elapsed().as_secs_f64(),
                )])
            } else {
                let a = ov.alpha.unwrap_or(1.5);
                let b = ov.beta.unwrap_or(1.2);
                let g = ov.gamma.unwrap_or(4.0 - a - b);
                let tol = ov.tol.unwrap_or(0.02);
                let samples = ov.samples.unwrap_or(10_000_000);
                let t = Instant::now();
                let params = ScalarStrParams::new(4, a, b, g).map_err(usage)?;
                let check = scalar_str_mc(
                    &params,
                    &[0.0, 0.0, 0.0, 0.0],
                    &[1.0, 0.0, 0.0, 0.0],
                    &[0.0, 1.0, 0.0, 0.0],
                    &MCConfig::new(samples, ov.seed),
                    tol,
                )
                .map_err(usage)?;
                Ok(vec![CheckReport::numeric(
                    "star-triangle",
                    params_of(&[
                        ("form", "scalar-mc-n4".into()),
                        ("alpha", a.to_string()),
                        ("beta", b.to_string()),
                        ("gamma", g.to_string()),
                        ("samples", samples.to_string()),
                        ("seed", ov.seed.to_string()),
                        ("tol", tol.to_string()),
                    ]),
                    &check,
                    t.elapsed().as_secs_f64(),
                )])
            }
        }
        "spin-integral" => {
            let m = ov.m.unwrap_or(1);
            let (da, db, dc) = match m {
                1 => (1.6, 0.4, 1.8),
                _ => (2.2, 0.4, 2.2),
            };
            let a = ov.a.unwrap_or(da);
            let b = ov.b.unwrap_or(db);
            let c = ov.c.unwrap_or(dc);
            let tol = ov.tol.unwrap_or(0.03);
            let samples = ov.samples.unwrap_or(20_000_000);
            let t = Instant::now();
            let params = SpinStrParams::new(a, b, c, m).map_err(usage)?;
            let amat = build_nilpotent_a(
                [GaussianRational::one(), GaussianRational::from_pair(1, 2)],
                [GaussianRational::from_pair(-1, 3), GaussianRational::one()],
            )
            .map_err(usage)?;
            let check = spinorial_str_check(
                &params,
                &amat,
                &[1.0, 0.0, 0.0, 0.0],
                &[0.0, 1.0, 0.0, 0.0],
                &MCConfig::new(samples, ov.seed),
                tol,
            )
            .map_err(usage)?;
            Ok(vec![CheckReport::numeric(
                "star-triangle",
                params_of(&[
                    ("form", "spin-integral".into()),
                    ("m", m.to_string()),
                    ("a", a.to_string()),
                    ("b", b.to_string()),
                    ("c", c.to_string()),
                    ("samples", samples.to_string()),
                    ("seed", ov.seed.to_string()),
                    ("tol", tol.to_string()),
                ]),
                &check,
                t.elapsed().as_secs_f64(),
            )])
        }
        other => Err(CliError::Usage(format!("unknown star-triangle form '{other}'"))),
    }
}

fn run_scalar_r_rll(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let mut cases: Vec<(usize, [i64; 4])> = Vec::new();
    match (&ov.exponents, ov.n) {
        (Some(e), n) if e.len() == 4 => cases.push((n.unwrap_or(2), [e[0], e[1], e[2], e[3]])),
        _ => {
            cases.push((2, [1, 1, 1, 1]));
            cases.push((4, [2, 1, 1, 0]));
        }
    }
    let mut out = Vec::new();
    for (n, e) in cases {
        let t = Instant::now();
        let outcome = ScalarRExponents::new(e[0], e[1], e[2], e[3])
            .and_then(|exps| scalar_r_rll_check(n, exps));
        out.push(exact_report(
            "scalar-r-rll",
            params_of(&[("n", n.to_string()), ("exponents", format!("{},{},{},{}", e[0], e[1], e[2], e[3]))]),
            t,
            outcome,
        ));
    }
    Ok(out)
}

fn run_inversion(ov: &Overrides) -> Result<Vec<CheckReport>, CliError> {
    let t = Instant::now();
    let outcome = build_nilpotent_a(
        [GaussianRational::from_pair(1, 2), GaussianRational::from_pair(2, 3)],
        [GaussianRational::from_pair(-1, 3), GaussianRational::one()],
    )
    .and_then(|a| inversion_spotcheck(&a, 100, ov.seed));
    Ok(vec![exact_report(
        "inversion-spotcheck",
        params_of(&[("points", "100".into()), ("seed", ov.seed.to_string())]),
        t,
        outcome,
    )])
}

// ---------------------------------------------------------------------
// driver
// ---------------------------------------------------------------------

fn quick_suite() -> Vec<&'static str> {
    vec![
        "clifford",
        "conformal-rep",
        "packed-matrix",
        "coset-action",
        "sln-l",
        "intertwiner",
        "conformal-l",
        "bridge",
        "r-coefficients",
        "ybe",
        "rll",
        "asym",
        "weyl-projection",
        "crossing",
        "permutation",
        "operator-str",
        "scalar-r-rll",
        "inversion-spotcheck",
        "fourier",
    ]
}

fn full_suite() -> Vec<&'static str> {
    let mut v = quick_suite();
    v.extend(["chain-rule", "star-triangle"]);
    v
}

/// Run the named scenarios (possibly "all") with a per-scenario wall-clock
/// budget; returns the bundle and the process exit code.
pub fn run(names: &[String], ov: &Overrides, jobs: usize, budget_secs: u64) -> (ReportBundle, i32) {
    let mut queue: Vec<&'static str> = Vec::new();
    let mut usage_error = None;
    for name in names {
        if name == "all" {
            let suite = match ov.profile {
                Profile::Quick => quick_suite(),
                Profile::Full => full_suite(),
            };
            queue.extend(suite);
        } else if let Some(s) = SCENARIOS.iter().find(|s| s.name == name) {
            queue.push(s.name);
        } else {
            usage_error = Some(format!("unknown scenario '{name}'"));
        }
    }
    let mut reports = Vec::new();
    let mut exit = 0;
    if let Some(msg) = usage_error {
        reports.push(CheckReport::error("usage", BTreeMap::new(), msg, 0.0));
        exit = 2;
    } else {
        let jobs = jobs.max(1);
        let mut idx = 0usize;
        while idx < queue.len() {
            let chunk: Vec<&'static str> = queue[idx..(idx + jobs).min(queue.len())].to_vec();
            idx += chunk.len();
            let mut handles = Vec::new();
            for name in chunk {
                let ov = ov.clone();
                let (tx, rx) = mpsc::channel();
                let handle = std::thread::spawn(move || {
                    let scenario = SCENARIOS.iter().find(|s| s.name == name).unwrap();
                    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (scenario.run)(&ov)));
                    let _ = tx.send(result);
                });
                handles.push((name, rx, handle));
            }
            for (name, rx, handle) in handles {
                match rx.recv_timeout(Duration::from_secs(budget_secs)) {
                    Ok(Ok(Ok(mut reps))) => reports.append(&mut reps),
                    Ok(Ok(Err(CliError::Usage(msg)))) => {
                        reports.push(CheckReport::error(name, BTreeMap::new(), format!("config: {msg}"), 0.0));
                        exit = exit.max(2);
                    }
                    Ok(Ok(Err(CliError::Internal(msg)))) => {
                        reports.push(CheckReport::error(name, BTreeMap::new(), format!("internal: {msg}"), 0.0));
                        exit = exit.max(3);
                    }
                    Ok(Err(_panic)) => {
                        reports.push(CheckReport::error(name, BTreeMap::new(), "internal: panicked".into(), 0.0));
                        exit = exit.max(3);
                    }
                    Err(_) => {
                        reports.push(CheckReport::error(name, BTreeMap::new(), "timeout".into(), 0.0));
                        exit = exit.max(3);
                        // the worker keeps running detached; partial results
                        // for other scenarios are still emitted.
                        drop(handle);
                        continue;
                    }
                }
                let _ = handle.join();
            }
        }
        if exit == 0 && reports.iter().any(|r| r.status == Status::Fail) {
            exit = 1;
        }
        // Error-status reports from scenario internals are configuration
        // errors (bad windows, poles, unsupported parameters); timeouts and
        // panics already forced exit 3 above.
        if reports.iter().any(|r| r.status == Status::Error) {
            exit = exit.max(2);
        }
    }
    let bundle = ReportBundle {
        tool: "verify".into(),
        version: VERSION.into(),
        profile: match ov.profile {
            Profile::Quick => "quick".into(),
            Profile::Full => "full".into(),
        },
        seed_policy: format!("base seed {} with splitmix-derived shard seeds", ov.seed),
        reports,
    };
    (bundle, exit)
}

/// Parse "p/q" or integer text into a rational (CLI form).
pub fn parse_rat_flag(s: &str) -> Result<Rational, String> {
    parse_rational(s)
}

pub fn parse_exponents(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| e.to_string()))
        .collect()
}
