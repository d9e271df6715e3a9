use criterion::{criterion_group, criterion_main, Criterion};

use verify_core::clifford::{EnlargedGammaBasis, GammaBasis, Signature};
use verify_core::numint::{integrate_mc, MCConfig, Mixture, RadialComponent};
use verify_core::rmatrix::{assemble_r, clear_denominators, ybe_check, LinearRationalFn};
use verify_core::rng::SeededRng;
use verify_core::scalar::GaussianRational;
use verify_core::weyl::{VariableSpace, WeylElement};

fn bench_gamma_build(c: &mut Criterion) {
    c.bench_function("gamma_basis_build_n4_all_signatures", |b| {
        b.iter(|| {
            for sig in Signature::all_with_n(4) {
                let basis = GammaBasis::build(sig).unwrap();
                std::hint::black_box(&basis.chirality);
            }
        })
    });
}

fn bench_weyl_multiply(c: &mut Criterion) {
    let space = VariableSpace::euclidean(&["a", "b", "c", "d"]);
    let mut rng = SeededRng::new(3);
    let mut random_element = |terms: usize| {
        let mut acc = WeylElement::zero(&space);
        for _ in 0..terms {
            let xe: Vec<u32> = (0..4).map(|_| rng.int_in(0, 3) as u32).collect();
            let de: Vec<u32> = (0..4).map(|_| rng.int_in(0, 3) as u32).collect();
            acc = acc.add(&WeylElement::monomial(&space, &xe, &de, rng.gaussian_rational(5, 3)));
        }
        acc
    };
    let x = random_element(24);
    let y = random_element(24);
    c.bench_function("weyl_multiply_24x24_terms", |b| b.iter(|| std::hint::black_box(x.mul(&y))));
}

fn bench_r_assembly(c: &mut Criterion) {
    let enl = EnlargedGammaBasis::enlarge(&GammaBasis::build(Signature::new(4, 0)).unwrap()).unwrap();
    let seed = LinearRationalFn::n4_comparison_seed();
    let u = GaussianRational::from_pair(2, 7);
    c.bench_function("spinorial_r_assembly_n4", |b| {
        b.iter(|| std::hint::black_box(clear_denominators(&assemble_r(&enl, &u, &seed).unwrap())))
    });
}

fn bench_ybe_n2(c: &mut Criterion) {
    let enl = EnlargedGammaBasis::enlarge(&GammaBasis::build(Signature::new(2, 0)).unwrap()).unwrap();
    let seed = LinearRationalFn::constant(GaussianRational::one());
    let u = GaussianRational::from_pair(1, 2);
    let v = GaussianRational::from_pair(1, 3);
    c.bench_function("ybe_exact_n2", |b| b.iter(|| ybe_check(&enl, &u, &v, &seed).unwrap()));
}

fn bench_mc_sampling(c: &mut Criterion) {
    let mixture = Mixture::new(
        4,
        vec![
            RadialComponent { center: vec![0.0; 4], near_exp: 2.8, far_exp: 2.0, scale: 0.5, weight: 0.5 },
            RadialComponent { center: vec![1.0, 0.0, 0.0, 0.0], near_exp: 0.0, far_exp: 3.6, scale: 3.0, weight: 0.5 },
        ],
    );
    let f = |z: &[f64]| {
        let r2: f64 = z.iter().map(|x| x * x).sum();
        num_complex_shim(r2)
    };
    let cfg = MCConfig::new(64_000, 9);
    c.bench_function("mc_integrate_64k_samples", |b| {
        b.iter(|| std::hint::black_box(integrate_mc(&mixture, &f, &cfg)))
    });
}

fn num_complex_shim(r2: f64) -> verify_core::numint::FloatComplex {
    verify_core::numint::FloatComplex::new((1.0 + r2).powf(-4.0), 0.0)
}

criterion_group!(
    benches,
    bench_gamma_build,
    bench_weyl_multiply,
    bench_r_assembly,
    bench_ybe_n2,
    bench_mc_sampling
);
criterion_main!(benches);
