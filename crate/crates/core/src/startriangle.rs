//! Star-triangle machinery, exact layer: the operator identity for integer
//! exponents, its two-point per-space forms, the scalar R-operator RLL at
//! integer specializations, the nilpotent matrices built from spinors, and
//! the pointwise inversion transformation laws.

use crate::clifford::GammaBasis;
use crate::clifford::Signature;
use crate::conformal::spin_matrix;
use crate::error::CheckError;
use crate::matrix::{Matrix, NumMatrix};
use crate::rng::SeededRng;
use crate::scalar::{rat, GaussianRational, Rational};
use crate::weyl::{weyl_identity, SpaceRef, VariableSpace, WeylElement};

/// p^{2a} x^{2(a+b)} p^{2b} = x^{2b} p^{2(a+b)} x^{2a} in the Euclidean
/// Weyl algebra on n coordinates, for nonnegative integer exponents.
pub fn operator_str_check(n: usize, a: i64, b: i64) -> Result<(), CheckError> {
    if a < 0 || b < 0 {
        return Err(CheckError::Unsupported("negative exponents are excluded".into()));
    }
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let space = VariableSpace::euclidean(&refs);
    let psq = WeylElement::momentum_squared(&space);
    let xsq = WeylElement::coord_squared(&space);
    let lhs = psq.pow(a as u32).mul(&xsq.pow((a + b) as u32)).mul(&psq.pow(b as u32));
    let rhs = xsq.pow(b as u32).mul(&psq.pow((a + b) as u32)).mul(&xsq.pow(a as u32));
    if lhs != rhs {
        return Err(CheckError::Structural(format!("operator star-triangle fails at n={n}, a={a}, b={b}")));
    }
    Ok(())
}

/// Two-point Euclidean variable space (x1, x2), n coordinates each.
pub fn two_point_space(n: usize) -> SpaceRef {
    let mut names = Vec::new();
    for i in 0..n {
        names.push(format!("a{i}"));
    }
    for i in 0..n {
        names.push(format!("b{i}"));
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    VariableSpace::euclidean(&refs)
}

/// x12^2 = sum (x1 - x2)^2 as a multiplication operator.
pub fn x12_squared(space: &SpaceRef, n: usize) -> WeylElement {
    let mut acc = WeylElement::zero(space);
    for i in 0..n {
        let d = WeylElement::coord(space, i).sub(&WeylElement::coord(space, n + i));
        acc = acc.add(&d.mul(&d));
    }
    acc
}

/// p_i^2 for point i (0 or 1) of the two-point space.
pub fn point_momentum_squared(space: &SpaceRef, n: usize, point: usize) -> WeylElement {
    let mut acc = WeylElement::zero(space);
    for i in 0..n {
        let d = WeylElement::deriv(space, point * n + i);
        acc = acc.sub(&d.mul(&d));
    }
    acc
}

/// The two per-space forms of the Coxeter identity follow from the
/// single-space identity by renaming; both are verified exactly and the
/// renaming itself is checked as a Weyl homomorphism image.
pub fn per_space_str_check(n: usize, a: i64, b: i64) -> Result<(), CheckError> {
    if a < 0 || b < 0 {
        return Err(CheckError::Unsupported("negative exponents are excluded".into()));
    }
    let space = two_point_space(n);
    let xsq = x12_squared(&space, n);
    for point in 0..2usize {
        let psq = point_momentum_squared(&space, n, point);
        let lhs = psq.pow(a as u32).mul(&xsq.pow((a + b) as u32)).mul(&psq.pow(b as u32));
        let rhs = xsq.pow(b as u32).mul(&psq.pow((a + b) as u32)).mul(&xsq.pow(a as u32));
        if lhs != rhs {
            return Err(CheckError::Structural(format!(
                "per-space star-triangle fails at n={n}, point={point}, a={a}, b={b}"
            )));
        }
    }
    // Renaming: the single-space identity maps into the two-point algebra
    // under x_mu -> x1_mu - x2_mu, d_mu -> -d(2)_mu.
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let single = VariableSpace::euclidean(&refs);
    let coords: Vec<WeylElement> = (0..n)
        .map(|i| WeylElement::coord(&space, i).sub(&WeylElement::coord(&space, n + i)))
        .collect();
    let derivs: Vec<WeylElement> = (0..n).map(|i| WeylElement::deriv(&space, n + i).neg()).collect();
    WeylElement::check_substitution_map(&space, &coords, &derivs)?;
    let psq1 = WeylElement::momentum_squared(&single);
    let xsq1 = WeylElement::coord_squared(&single);
    let single_diff = psq1
        .pow(a as u32)
        .mul(&xsq1.pow((a + b) as u32))
        .mul(&psq1.pow(b as u32))
        .sub(&xsq1.pow(b as u32).mul(&psq1.pow((a + b) as u32)).mul(&xsq1.pow(a as u32)));
    let image = single_diff.substitute(&space, &coords, &derivs)?;
    if !image.is_zero() {
        return Err(CheckError::Structural("renamed single-space identity does not vanish".into()));
    }
    Ok(())
}

/// Exponent data for the integer specialization of the scalar R-operator:
/// (m1, m2, m3, m4) = (u- - v+, u+ - v+, u- - v-, u+ - v-).
#[derive(Clone, Copy, Debug)]
pub struct ScalarRExponents {
    pub m1: i64,
    pub m2: i64,
    pub m3: i64,
    pub m4: i64,
}

impl ScalarRExponents {
    pub fn new(m1: i64, m2: i64, m3: i64, m4: i64) -> Result<Self, CheckError> {
        if m1 < 0 || m2 < 0 || m3 < 0 || m4 < 0 {
            return Err(CheckError::Unsupported(
                "non-integer or negative exponents are unsupported in the exact layer".into(),
            ));
        }
        if m2 + m3 != m1 + m4 {
            return Err(CheckError::Contract("exponents must satisfy m2 + m3 = m1 + m4".into()));
        }
        Ok(Self { m1, m2, m3, m4 })
    }

    /// Solve for (u - v, Delta1, Delta2) realizing the four exponents.
    pub fn parameters(&self, n: usize) -> (Rational, Rational, Rational) {
        let half_n = rat(n as i64, 2);
        let delta1 = &half_n + &rat(self.m2 - self.m1, 1);
        let delta2 = &half_n + &rat(self.m3 - self.m1, 1);
        let u_minus_v = rat(self.m1, 1) + (&delta1 + &delta2 - rat(n as i64, 1)) / rat(2, 1);
        (u_minus_v, delta1, delta2)
    }
}

fn bold_x_at(space: &SpaceRef, sigmabar: &[NumMatrix], offset: usize) -> Matrix<WeylElement> {
    let h = sigmabar[0].rows();
    let mut acc = Matrix::filled(h, h, WeylElement::zero(space));
    for (mu, sb) in sigmabar.iter().enumerate() {
        let x = WeylElement::coord(space, offset + mu).scale(&-GaussianRational::i());
        acc = acc.add(&Matrix::from_fn(h, h, |r, c| x.scale(&sb[(r, c)])));
    }
    acc
}

fn bold_p_at(space: &SpaceRef, sigma: &[NumMatrix], offset: usize) -> Matrix<WeylElement> {
    let h = sigma[0].rows();
    let mut acc = Matrix::filled(h, h, WeylElement::zero(space));
    for (mu, s) in sigma.iter().enumerate() {
        let p = WeylElement::momentum(space, offset + mu).scale(&GaussianRational::from_pair(1, 2));
        acc = acc.add(&Matrix::from_fn(h, h, |r, c| p.scale(&s[(r, c)])));
    }
    acc
}

fn scalar_l_at(
    space: &SpaceRef,
    sigma: &[NumMatrix],
    sigmabar: &[NumMatrix],
    offset: usize,
    u_plus: &GaussianRational,
    u_minus: &GaussianRational,
) -> Matrix<WeylElement> {
    let h = sigma[0].rows();
    let id = weyl_identity(space, h);
    let zero = Matrix::filled(h, h, WeylElement::zero(space));
    let bx = bold_x_at(space, sigmabar, offset);
    let bp = bold_p_at(space, sigma, offset);
    let lower = crate::conformal::block2(&id, &zero, &bx, &id);
    let mid = crate::conformal::block2(&id.scale(u_plus), &bp, &zero, &id.scale(u_minus));
    let upper = crate::conformal::block2(&id, &zero, &bx.neg(), &id);
    lower.mul(&mid).mul(&upper)
}

/// The scalar R-operator at an integer-exponent specialization:
/// R12 = (x12^2)^{m1} (p2^2)^{m2} (p1^2)^{m3} (x12^2)^{m4}, and the defining
/// RLL exchange of the full parameter pairs, exact over the two-point
/// Weyl algebra.
pub fn scalar_r_rll_check(n: usize, exps: ScalarRExponents) -> Result<(), CheckError> {
    if n != 2 && n != 4 {
        return Err(CheckError::Unsupported("scalar R-operator check runs at n in {2,4}".into()));
    }
    let (u_minus_v, delta1, delta2) = exps.parameters(n);
    let u = GaussianRational::from_rational(u_minus_v); // take v = 0
    let v = GaussianRational::zero();
    let d1 = GaussianRational::from_rational(delta1);
    let d2 = GaussianRational::from_rational(delta2);
    let nn = GaussianRational::from_int(n as i64);
    let half = GaussianRational::from_pair(1, 2);
    let u_plus = &u + &(&(&d1 - &nn) * &half);
    let u_minus = &u - &(&d1 * &half);
    let v_plus = &v + &(&(&d2 - &nn) * &half);
    let v_minus = &v - &(&d2 * &half);
    // exponent sanity: the four differences match the requested integers
    assert_eq!(&u_minus - &v_plus, GaussianRational::from_int(exps.m1));
    assert_eq!(&u_plus - &v_plus, GaussianRational::from_int(exps.m2));
    assert_eq!(&u_minus - &v_minus, GaussianRational::from_int(exps.m3));
    assert_eq!(&u_plus - &v_minus, GaussianRational::from_int(exps.m4));

    let space = two_point_space(n);
    let sb = GammaBasis::build(Signature::new(n, 0))?.sigma_blocks();
    let l1_u = scalar_l_at(&space, &sb.sigma, &sb.sigmabar, 0, &u_plus, &u_minus);
    let l2_v = scalar_l_at(&space, &sb.sigma, &sb.sigmabar, n, &v_plus, &v_minus);
    let l1_v = scalar_l_at(&space, &sb.sigma, &sb.sigmabar, 0, &v_plus, &v_minus);
    let l2_u = scalar_l_at(&space, &sb.sigma, &sb.sigmabar, n, &u_plus, &u_minus);

    let xsq = x12_squared(&space, n);
    let p1sq = point_momentum_squared(&space, n, 0);
    let p2sq = point_momentum_squared(&space, n, 1);
    let r_op = xsq
        .pow(exps.m1 as u32)
        .mul(&p2sq.pow(exps.m2 as u32))
        .mul(&p1sq.pow(exps.m3 as u32))
        .mul(&xsq.pow(exps.m4 as u32));

    let prod_uv = l1_u.mul(&l2_v);
    let prod_vu = l1_v.mul(&l2_u);
    let dim = prod_uv.rows();
    for r in 0..dim {
        for c in 0..dim {
            let lhs = r_op.mul(&prod_uv[(r, c)]);
            let rhs = prod_vu[(r, c)].mul(&r_op);
            if lhs != rhs {
                return Err(CheckError::Structural(format!(
                    "scalar R-operator RLL fails at entry ({r},{c}) for exponents {exps:?}"
                )));
            }
        }
    }
    Ok(())
}

/// 4x4 matrix A_munu = lambdat sigmabar_mu sigma_nu etat over the Euclidean
/// sigma blocks, with its generating spinors.
pub struct NilpotentA {
    pub a: NumMatrix,
    pub lambdat: [GaussianRational; 2],
    pub etat: [GaussianRational; 2],
}

pub fn build_nilpotent_a(
    lambdat: [GaussianRational; 2],
    etat: [GaussianRational; 2],
) -> Result<NilpotentA, CheckError> {
    let sb = GammaBasis::euclidean4()?.sigma_blocks();
    let a = Matrix::from_fn(4, 4, |mu, nu| {
        let m = sb.sigmabar[mu].mul(&sb.sigma[nu]);
        let mut acc = GaussianRational::zero();
        for r in 0..2 {
            for c in 0..2 {
                acc += &(&(&lambdat[r] * &m[(r, c)]) * &etat[c]);
            }
        }
        acc
    });
    if a.is_zero() {
        return Err(CheckError::Domain("degenerate spinors produce A = 0".into()));
    }
    Ok(NilpotentA { a, lambdat, etat })
}

impl NilpotentA {
    /// Normalized trace (tr 1 = 1 convention): (1/4) sum A_mumu.
    pub fn trace_normalized(&self) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for mu in 0..4 {
            acc += &self.a[(mu, mu)];
        }
        &acc * &GaussianRational::from_pair(1, 4)
    }

    /// The nilpotency and symmetric-part properties, exact.
    pub fn check_properties(&self) -> Result<(), CheckError> {
        // A_munu A^mu_la = 0 and A_numu A_la^mu = 0 (Euclidean indices).
        for nu in 0..4 {
            for la in 0..4 {
                let mut left = GaussianRational::zero();
                let mut right = GaussianRational::zero();
                for mu in 0..4 {
                    left += &(&self.a[(mu, nu)] * &self.a[(mu, la)]);
                    right += &(&self.a[(nu, mu)] * &self.a[(la, mu)]);
                }
                if !left.is_zero() || !right.is_zero() {
                    return Err(CheckError::Structural(format!(
                        "nilpotency fails at ({nu},{la})"
                    )));
                }
            }
        }
        // A_munu + A_numu = 2 g_munu tr A (normalized trace).
        let t2 = &self.trace_normalized() * &GaussianRational::from_int(2);
        for mu in 0..4 {
            for nu in 0..4 {
                let s = &self.a[(mu, nu)] + &self.a[(nu, mu)];
                let expect = if mu == nu { t2.clone() } else { GaussianRational::zero() };
                if s != expect {
                    return Err(CheckError::Structural(format!(
                        "symmetric-part relation fails at ({mu},{nu})"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn dot(x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (a, b) in x.iter().zip(y) {
        acc += &(a * b);
    }
    acc
}

fn pair_a(x: &[GaussianRational], a: &NumMatrix, y: &[GaussianRational]) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            acc += &(&(&x[mu] * &y[nu]) * &a[(mu, nu)]);
        }
    }
    acc
}

fn invert_point(x: &[GaussianRational]) -> Result<Vec<GaussianRational>, CheckError> {
    let n2 = dot(x, x);
    if n2.is_zero() {
        return Err(CheckError::Domain("point with zero norm excluded from inversion".into()));
    }
    Ok(x.iter().map(|c| c / &n2).collect())
}

/// Pointwise inversion transformation laws at random rational points:
/// <(z'-x') A z'> = <x A (x - z)> / (x^2 z^2) and
/// (x' - z')^2 = (x - z)^2 / (x^2 z^2) under w -> w / w^2, plus the
/// dimension bookkeeping 2(a + b' + c) - 2m = 8 under uniqueness.
pub fn inversion_spotcheck(a_mat: &NilpotentA, points: usize, seed: u64) -> Result<(), CheckError> {
    let mut rng = SeededRng::new(seed);
    let mut done = 0usize;
    while done < points {
        let x: Vec<GaussianRational> = (0..4).map(|_| GaussianRational::from_rational(rng.rational(6, 4))).collect();
        let z: Vec<GaussianRational> = (0..4).map(|_| GaussianRational::from_rational(rng.rational(6, 4))).collect();
        if dot(&x, &x).is_zero() || dot(&z, &z).is_zero() {
            continue;
        }
        let xs = dot(&x, &x);
        let zs = dot(&z, &z);
        let xi = invert_point(&x)?;
        let zi = invert_point(&z)?;
        let zmx: Vec<GaussianRational> = zi.iter().zip(&xi).map(|(a, b)| a - b).collect();
        let lhs = pair_a(&zmx, &a_mat.a, &zi);
        let xmz: Vec<GaussianRational> = x.iter().zip(&z).map(|(a, b)| a - b).collect();
        let rhs = &pair_a(&x, &a_mat.a, &xmz) / &(&xs * &zs);
        if lhs != rhs {
            return Err(CheckError::Structural("inversion law for <(z-x) A z> fails".into()));
        }
        let dxi: Vec<GaussianRational> = xi.iter().zip(&zi).map(|(a, b)| a - b).collect();
        let lhs = dot(&dxi, &dxi);
        let rhs = &dot(&xmz, &xmz) / &(&xs * &zs);
        if lhs != rhs {
            return Err(CheckError::Structural("inversion law for (x-z)^2 fails".into()));
        }
        done += 1;
    }
    // Scaling-dimension bookkeeping under uniqueness a + c - b = 2 + m.
    for _ in 0..20 {
        let aa = rng.rational(8, 5);
        let cc = rng.rational(8, 5);
        let m = rat(rng.int_in(0, 3), 1);
        let b = &aa + &cc - rat(2, 1) - &m;
        let bprime = rat(2, 1) - &b;
        let total = (aa + bprime + cc - &m) * rat(2, 1);
        if total != rat(8, 1) {
            return Err(CheckError::Structural("uniqueness bookkeeping 2(a+b'+c) - 2m != 8".into()));
        }
    }
    Ok(())
}

/// Verify the reduction ingredients of the generating star-triangle
/// identity: S = I + alpha B + beta C satisfies S S^T = lambda I and
/// S A S^T = lambda A, with A, B, C the spinor-bilinear matrices that
/// carry the generating identity down to its reduced integral form.
pub fn reduction_ingredients_check(seed: u64) -> Result<(), CheckError> {
    let sb = GammaBasis::euclidean4()?.sigma_blocks();
    let mut rng = SeededRng::new(seed);
    let spinor = |rng: &mut SeededRng| -> [GaussianRational; 2] {
        [
            GaussianRational::from_rational(rng.rational(5, 3)),
            GaussianRational::from_rational(rng.rational(5, 3)),
        ]
    };
    for _ in 0..5 {
        // A_munu = (lt sigmabar_mu sigma_nu et), B_munu = (l sigma_mu sigmabar_nu e),
        // C_munu = (l' sigma_nu sigmabar_mu e') as in the identifications.
        let (lt, et) = (spinor(&mut rng), spinor(&mut rng));
        let (l1, e1) = (spinor(&mut rng), spinor(&mut rng));
        let (l2, e2) = (spinor(&mut rng), spinor(&mut rng));
        let contract = |row: &[GaussianRational; 2], m: &NumMatrix, col: &[GaussianRational; 2]| {
            let mut acc = GaussianRational::zero();
            for r in 0..2 {
                for c in 0..2 {
                    acc += &(&(&row[r] * &m[(r, c)]) * &col[c]);
                }
            }
            acc
        };
        let a = Matrix::from_fn(4, 4, |mu, nu| contract(&lt, &sb.sigmabar[mu].mul(&sb.sigma[nu]), &et));
        let b = Matrix::from_fn(4, 4, |mu, nu| contract(&l1, &sb.sigma[mu].mul(&sb.sigmabar[nu]), &e1));
        let c = Matrix::from_fn(4, 4, |mu, nu| contract(&l2, &sb.sigma[nu].mul(&sb.sigmabar[mu]), &e2));
        let alpha = GaussianRational::from_rational(rng.rational(4, 3));
        let beta = GaussianRational::from_rational(rng.rational(4, 3));
        let s = NumMatrix::identity(4).add(&b.scale(&alpha)).add(&c.scale(&beta));
        let sst = s.mul(&s.transpose());
        let lambda = sst[(0, 0)].clone();
        if sst != NumMatrix::identity(4).scale(&lambda) {
            return Err(CheckError::Structural("S S^T is not proportional to the identity".into()));
        }
        let sast = s.mul(&a).mul(&s.transpose());
        if sast != a.scale(&lambda) {
            return Err(CheckError::Structural("S A S^T != lambda A".into()));
        }
        // trace formula for lambda
        let ntr = |m: &NumMatrix| {
            let mut acc = GaussianRational::zero();
            for i in 0..4 {
                acc += &m[(i, i)];
            }
            &acc * &GaussianRational::from_pair(1, 4)
        };
        let expect = GaussianRational::one()
            + &(&alpha * &ntr(&b)) * &GaussianRational::from_int(2)
            + &(&beta * &ntr(&c)) * &GaussianRational::from_int(2)
            + &(&(&alpha * &beta) * &ntr(&b.mul(&c.transpose()))) * &GaussianRational::from_int(2);
        if lambda != expect {
            return Err(CheckError::Structural("lambda trace formula fails".into()));
        }
    }
    Ok(())
}

/// Shadow-type conjugation of the n=2 spin matrix: the printed identity
/// d^m S^(l) = S^(-l-1) d^m for m = 2l + 1 (exercised here once more from
/// the star-triangle side, where the same exchange underlies S1 and S3).
pub fn spin_shadow_identity(ell: &Rational) -> Result<(), CheckError> {
    use num_traits::ToPrimitive;
    let two_ell_plus_1 = (ell + ell + rat(1, 1))
        .to_integer()
        .to_i64()
        .ok_or_else(|| CheckError::Contract("2l + 1 must be an integer".into()))?;
    if two_ell_plus_1 <= 0 {
        return Err(CheckError::Contract("2l + 1 must be positive".into()));
    }
    let space = VariableSpace::euclidean(&["z"]);
    let dm = WeylElement::deriv(&space, 0).pow(two_ell_plus_1 as u32);
    let s = spin_matrix(&space, 0, ell);
    let shadow = spin_matrix(&space, 0, &(-ell.clone() - rat(1, 1)));
    for r in 0..2 {
        for c in 0..2 {
            if dm.mul(&s[(r, c)]) != shadow[(r, c)].mul(&dm) {
                return Err(CheckError::Structural("spin shadow identity fails".into()));
            }
        }
    }
    Ok(())
}
