//! L-operators: the factorized sl(N) construction on the triangular z
//! variables, parameter-permuting intertwiners, the conformal L-operator in
//! direct and factorized form, and the change of variables identifying the
//! sl(4) operator with the four-dimensional conformal one.

use crate::conformal::{block2, bold_p, bold_x, rep_space, spin_matrix, RepMode, RepParams};
use crate::clifford::GammaBasis;
use crate::error::CheckError;
use crate::matrix::{Matrix, NumMatrix};
use crate::scalar::{rat, GaussianRational, Rational};
use crate::weyl::{lift_matrix, weyl_identity, SpaceRef, VariableSpace, WeylElement};

/// Spectral parameter plus representation weights rho_1..rho_N with
/// sum rho_k = N(N-1)/2; u_k = u - rho_k.
#[derive(Clone, Debug)]
pub struct SpectralParams {
    pub u: GaussianRational,
    pub rho: Vec<GaussianRational>,
}

impl SpectralParams {
    pub fn new(u: GaussianRational, rho: Vec<GaussianRational>) -> Result<Self, CheckError> {
        let n = rho.len() as i64;
        let mut sum = GaussianRational::zero();
        for r in &rho {
            sum += r;
        }
        if sum != GaussianRational::from_rational(rat(n * (n - 1), 2)) {
            return Err(CheckError::Contract(format!(
                "sum of rho_k must equal N(N-1)/2 = {}/2",
                n * (n - 1)
            )));
        }
        Ok(Self { u, rho })
    }

    /// The standard sl(2) parameterization rho = (l+1, -l).
    pub fn sl2_spin(u: GaussianRational, ell: &Rational) -> Self {
        let l = GaussianRational::from_rational(ell.clone());
        Self { u, rho: vec![&l + &GaussianRational::one(), -l] }
    }

    pub fn nn(&self) -> usize {
        self.rho.len()
    }

    pub fn u_k(&self, k: usize) -> GaussianRational {
        &self.u - &self.rho[k]
    }
}

/// sl(N) L-operator in the factorized form Z D Z^{-1} over the Weyl algebra
/// of the strictly-lower-triangular coordinates z_{km}.
pub struct SlnLOperator {
    pub nmat: usize,
    pub space: SpaceRef,
    pub params: SpectralParams,
    pub z: Matrix<WeylElement>,
    pub dmat: Matrix<WeylElement>,
    pub l: Matrix<WeylElement>,
}

/// Variable index of z_{km} (k > m, both 1-based) in the canonical order
/// (2,1), (3,1), (3,2), (4,1), (4,2), (4,3), ...
pub fn z_index(nmat: usize, k: usize, m: usize) -> usize {
    assert!(k > m && k <= nmat && m >= 1);
    (k - 1) * (k - 2) / 2 + (m - 1)
}

pub fn z_space(nmat: usize) -> SpaceRef {
    let mut names = Vec::new();
    for k in 2..=nmat {
        for m in 1..k {
            names.push(format!("z{k}{m}"));
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    VariableSpace::euclidean(&refs)
}

/// Build the factorized L-operator for 2 <= N <= 4.
pub fn build_sln_l(params: &SpectralParams) -> Result<SlnLOperator, CheckError> {
    let nmat = params.nn();
    if !(2..=4).contains(&nmat) {
        return Err(CheckError::Unsupported(format!("N = {nmat} outside 2..=4")));
    }
    let space = z_space(nmat);
    let zero = WeylElement::zero(&space);
    let one = WeylElement::one(&space);
    let zvar = |k: usize, m: usize| WeylElement::coord(&space, z_index(nmat, k, m));
    let dvar = |k: usize, m: usize| WeylElement::deriv(&space, z_index(nmat, k, m));

    let z = Matrix::from_fn(nmat, nmat, |r, c| {
        let (k, m) = (r + 1, c + 1);
        if k == m {
            one.clone()
        } else if k > m {
            zvar(k, m)
        } else {
            zero.clone()
        }
    });

    // D_ij = -d_ji - sum_{k=j+1}^N z_kj d_ki (i < j)
    let dmat = Matrix::from_fn(nmat, nmat, |r, c| {
        let (i, j) = (r + 1, c + 1);
        if i == j {
            WeylElement::scalar(&space, params.u_k(r))
        } else if i < j {
            let mut acc = dvar(j, i).neg();
            for k in (j + 1)..=nmat {
                acc = acc.sub(&zvar(k, j).mul(&dvar(k, i)));
            }
            acc
        } else {
            zero.clone()
        }
    });

    let zinv = z.unitriangular_inverse(one.clone(), zero.clone());
    let l = z.mul(&dmat).mul(&zinv);
    Ok(SlnLOperator { nmat, space, params: params.clone(), z, dmat, l })
}

impl SlnLOperator {
    /// The u-independent part M with L(u) = u I + M; M_{ij} = rho(E_{ji}).
    pub fn generator_part(&self) -> Matrix<WeylElement> {
        let id = weyl_identity(&self.space, self.nmat);
        self.l.sub(&id.scale(&self.params.u))
    }

    /// gl(N) commutation relations of the generator part:
    /// [M_ij, M_kl] = delta_il M_kj - delta_kj M_il.
    pub fn check_gl_relations(&self) -> Result<(), CheckError> {
        let m = self.generator_part();
        let nm = self.nmat;
        for i in 0..nm {
            for j in 0..nm {
                for k in 0..nm {
                    for l in 0..nm {
                        let lhs = m[(i, j)].commutator(&m[(k, l)]);
                        let mut rhs = WeylElement::zero(&self.space);
                        if i == l {
                            rhs = rhs.add(&m[(k, j)]);
                        }
                        if k == j {
                            rhs = rhs.sub(&m[(i, l)]);
                        }
                        if lhs != rhs {
                            return Err(CheckError::Structural(format!(
                                "gl relation fails at ({i},{j}),({k},{l})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// dL/du = I, checked by evaluating at a second spectral point.
    pub fn check_linearity(&self) -> Result<(), CheckError> {
        let shifted = SpectralParams {
            u: &self.params.u + &GaussianRational::from_int(1),
            rho: self.params.rho.clone(),
        };
        let other = build_sln_l(&shifted)?;
        let diff = other.l.sub(&self.l);
        if diff != weyl_identity(&self.space, self.nmat) {
            return Err(CheckError::Structural("L is not affine in u with slope I".into()));
        }
        Ok(())
    }
}

/// Exact intertwiner check: with m = u_{k+1} - u_k a positive integer,
/// T_k = (D_{k,k+1})^m satisfies T_k L(.., u_k, u_{k+1}, ..) =
/// L(.., u_{k+1}, u_k, ..) T_k. `k` is 1-based.
pub fn intertwiner_check(params: &SpectralParams, k: usize) -> Result<(), CheckError> {
    use num_traits::ToPrimitive;
    let nmat = params.nn();
    if k == 0 || k >= nmat {
        return Err(CheckError::Contract(format!("k = {k} outside 1..{}", nmat - 1)));
    }
    let gap = &params.u_k(k) - &params.u_k(k - 1);
    if !gap.is_real() || !gap.re.is_integer() {
        return Err(CheckError::Unsupported(
            "u_{k+1} - u_k must be a positive integer (fractional powers are excluded from the exact layer)"
                .into(),
        ));
    }
    let m = gap.re.to_integer().to_i64().unwrap_or(-1);
    if m <= 0 {
        return Err(CheckError::Unsupported(format!(
            "u_{{k+1}} - u_k = {m} is not a positive integer"
        )));
    }
    let lhs_op = build_sln_l(params)?;
    let mut swapped = params.clone();
    swapped.rho.swap(k - 1, k);
    let rhs_op = build_sln_l(&swapped)?;
    let t = lhs_op.dmat[(k - 1, k)].pow(m as u32);
    for r in 0..nmat {
        for c in 0..nmat {
            let lhs = t.mul(&lhs_op.l[(r, c)]);
            let rhs = rhs_op.l[(r, c)].mul(&t);
            if lhs != rhs {
                return Err(CheckError::Structural(format!(
                    "intertwiner identity fails at entry ({r},{c}), k={k}, m={m}"
                )));
            }
        }
    }
    Ok(())
}

/// Conformal L-operator: the direct block form and the factorized triple
/// product, built independently.
pub struct ConformalLOperator {
    pub params: RepParams,
    pub u: GaussianRational,
    pub space: SpaceRef,
    pub direct: Matrix<WeylElement>,
    pub factorized: Matrix<WeylElement>,
}

pub fn u_plus_minus(n: usize, u: &GaussianRational, delta: &GaussianRational) -> (GaussianRational, GaussianRational) {
    let nn = GaussianRational::from_int(n as i64);
    let u_plus = u + &(delta - &nn).scale_by_rat(&rat(1, 2));
    let u_minus = u - &delta.scale_by_rat(&rat(1, 2));
    (u_plus, u_minus)
}

pub fn build_conformal_l(params: &RepParams, u: &GaussianRational) -> Result<ConformalLOperator, CheckError> {
    let n = params.n();
    if !(n == 2 || n == 4) {
        return Err(CheckError::Unsupported("conformal L built for n in {2,4}".into()));
    }
    if params.mode == RepMode::Spin4d && n != 4 {
        return Err(CheckError::Contract("spin labels require n = 4".into()));
    }
    let space = rep_space(params);
    let basis = GammaBasis::build(params.sig)?;
    let sb = basis.sigma_blocks();
    let metric = params.sig.metric();
    let h = basis.dim() / 2;
    let bx = bold_x(&space, &sb.sigmabar);
    let bp = bold_p(&space, &sb.sigma, &metric);
    let (s_mat, sbar_mat) = match params.mode {
        RepMode::Spin4d => (spin_matrix(&space, n, &params.ell), spin_matrix(&space, n + 1, &params.elldot)),
        _ => (
            Matrix::filled(h, h, WeylElement::zero(&space)),
            Matrix::filled(h, h, WeylElement::zero(&space)),
        ),
    };
    let (u_plus, u_minus) = u_plus_minus(n, u, &params.delta);
    let id = weyl_identity(&space, h);
    let zero = Matrix::filled(h, h, WeylElement::zero(&space));

    // Direct block form.
    let nn = GaussianRational::from_int(n as i64);
    let c_ll = &params.delta - &nn.scale_by_rat(&rat(1, 2));
    let ul = id.scale(&u_plus).add(&s_mat).sub(&bp.mul(&bx));
    let ur = bp.clone();
    let ll = bx
        .mul(&s_mat)
        .sub(&sbar_mat.mul(&bx))
        .sub(&bx.mul(&bp).mul(&bx))
        .add(&bx.scale(&c_ll));
    let lr = id.scale(&u_minus).add(&sbar_mat).add(&bx.mul(&bp));
    let direct = block2(&ul, &ur, &ll, &lr);

    // Factorized triple product.
    let lower = block2(&id, &zero, &bx, &id);
    let mid = block2(&id.scale(&u_plus).add(&s_mat), &bp, &zero, &id.scale(&u_minus).add(&sbar_mat));
    let upper = block2(&id, &zero, &bx.neg(), &id);
    let factorized = lower.mul(&mid).mul(&upper);

    Ok(ConformalLOperator { params: params.clone(), u: u.clone(), space, direct, factorized })
}

impl ConformalLOperator {
    /// The factorization statement: triple product equals the block form.
    pub fn check_factorization(&self) -> Result<(), CheckError> {
        if self.direct != self.factorized {
            return Err(CheckError::Structural("conformal L factorization failed".into()));
        }
        Ok(())
    }
}

/// Outcome of the sl(4) <-> conformal change of variables.
pub struct BridgeReport {
    pub harmonic_block_1: bool,
    pub harmonic_block_2: bool,
    pub z43_isolated: bool,
}

/// The identification: substituting x = z z1^{-1}, p = z1 d, chi_1 = z21,
/// chi_2 = z43 into the sl(4) L-operator reproduces the conformal one with
/// u_1..u_4 = (u+ - l - 1, u+ + l, u- - ld - 1, u- + ld).
pub fn sl4_so6_bridge_check(
    u: &Rational,
    delta: &Rational,
    ell: &Rational,
    elldot: &Rational,
) -> Result<BridgeReport, CheckError> {
    // rho parameters from the dictionary.
    let rho1 = -delta / rat(2, 1) + ell + rat(3, 1);
    let rho2 = -delta / rat(2, 1) - ell + rat(2, 1);
    let rho3 = delta / rat(2, 1) + elldot + rat(1, 1);
    let rho4 = delta / rat(2, 1) - elldot;
    let params = SpectralParams::new(
        GaussianRational::from_rational(u.clone()),
        vec![rho1, rho2, rho3, rho4].into_iter().map(GaussianRational::from_rational).collect(),
    )?;
    let sl4 = build_sln_l(&params)?;

    // Parameter dictionary u_k <-> (u_plus, u_minus, l, ld).
    let u_plus = GaussianRational::from_rational(u + &(delta - &rat(4, 1)) / rat(2, 1));
    let u_minus = GaussianRational::from_rational(u - &(delta / rat(2, 1)));
    let lc = GaussianRational::from_rational(ell.clone());
    let ldc = GaussianRational::from_rational(elldot.clone());
    let one = GaussianRational::one();
    assert_eq!(params.u_k(0), &u_plus - &lc - &one);
    assert_eq!(params.u_k(1), &u_plus + &lc);
    assert_eq!(params.u_k(2), &u_minus - &ldc - &one);
    assert_eq!(params.u_k(3), &u_minus + &ldc);

    // Target space: light-cone coordinates and the two harmonic variables.
    let tgt = VariableSpace::euclidean(&["xp", "x", "xb", "xm", "c1", "c2"]);
    let (xp, x, xb, xm, c1, c2) = (0usize, 1, 2, 3, 4, 5);
    let co = |i: usize| WeylElement::coord(&tgt, i);
    let de = |i: usize| WeylElement::deriv(&tgt, i);

    // z21 -> c1, z31 -> xp + x c1, z32 -> x, z41 -> xb + xm c1, z42 -> xm,
    // z43 -> c2; derivatives by the chain rule of the inverse map.
    let coord_images = vec![
        co(c1),
        co(xp).add(&co(x).mul(&co(c1))),
        co(x),
        co(xb).add(&co(xm).mul(&co(c1))),
        co(xm),
        co(c2),
    ];
    let deriv_images = vec![
        de(c1).sub(&co(x).mul(&de(xp))).sub(&co(xm).mul(&de(xb))),
        de(xp),
        de(x).sub(&co(c1).mul(&de(xp))),
        de(xb),
        de(xm).sub(&co(c1).mul(&de(xb))),
        de(c2),
    ];
    WeylElement::check_substitution_map(&tgt, &coord_images, &deriv_images)?;

    let substituted = Matrix::from_fn(4, 4, |r, c| {
        sl4.l[(r, c)].substitute(&tgt, &coord_images, &deriv_images).expect("substitution")
    });

    // Conformal side in light-cone blocks.
    let bx = Matrix::from_rows(vec![vec![co(xp), co(x)], vec![co(xb), co(xm)]]);
    let bp = Matrix::from_rows(vec![
        vec![de(xp).neg(), de(xb).neg()],
        vec![de(x).neg(), de(xm).neg()],
    ]);
    let s_mat = spin_matrix(&tgt, c1, ell);
    let sbar_mat = spin_matrix(&tgt, c2, elldot);
    let id = weyl_identity(&tgt, 2);
    let ul = id.scale(&u_plus).add(&s_mat).sub(&bp.mul(&bx));
    let ur = bp.clone();
    let ll = bx
        .mul(&id.scale(&u_plus).add(&s_mat))
        .sub(&id.scale(&u_minus).add(&sbar_mat).mul(&bx))
        .sub(&bx.mul(&bp).mul(&bx));
    let lr = id.scale(&u_minus).add(&sbar_mat).add(&bx.mul(&bp));
    let conf = block2(&ul, &ur, &ll, &lr);

    if substituted != conf {
        return Err(CheckError::Structural("sl(4) -> conformal substitution mismatch".into()));
    }

    // Harmonic sub-blocks: z1 d1 z1^{-1} = u+ I + S^(l) and the chi_2 block.
    let lower1 = Matrix::from_rows(vec![
        vec![WeylElement::one(&tgt), WeylElement::zero(&tgt)],
        vec![co(c1), WeylElement::one(&tgt)],
    ]);
    let mid1 = Matrix::from_rows(vec![
        vec![WeylElement::scalar(&tgt, params.u_k(0)), de(c1).neg()],
        vec![WeylElement::zero(&tgt), WeylElement::scalar(&tgt, params.u_k(1))],
    ]);
    let upper1 = Matrix::from_rows(vec![
        vec![WeylElement::one(&tgt), WeylElement::zero(&tgt)],
        vec![co(c1).neg(), WeylElement::one(&tgt)],
    ]);
    let block1 = lower1.mul(&mid1).mul(&upper1);
    let harmonic_block_1 = block1 == id.scale(&u_plus).add(&s_mat);

    let lower2 = Matrix::from_rows(vec![
        vec![WeylElement::one(&tgt), WeylElement::zero(&tgt)],
        vec![co(c2), WeylElement::one(&tgt)],
    ]);
    let mid2 = Matrix::from_rows(vec![
        vec![WeylElement::scalar(&tgt, params.u_k(2)), de(c2).neg()],
        vec![WeylElement::zero(&tgt), WeylElement::scalar(&tgt, params.u_k(3))],
    ]);
    let upper2 = Matrix::from_rows(vec![
        vec![WeylElement::one(&tgt), WeylElement::zero(&tgt)],
        vec![co(c2).neg(), WeylElement::one(&tgt)],
    ]);
    let block2m = lower2.mul(&mid2).mul(&upper2);
    let harmonic_block_2 = block2m == id.scale(&u_minus).add(&sbar_mat);

    // Structural isolation of z43: the operator depends on z43 only through
    // the combination W = z2 d2 z2^{-1}. In the factorized block form that
    // means: the upper row is z43-free, subtracting W from the lower-right
    // block leaves it z43-free, and adding W z z1^{-1} back to the
    // lower-left block leaves it z43-free.
    let z43 = z_index(4, 4, 3);
    let src = &sl4.space;
    let zvar = |k: usize, m: usize| WeylElement::coord(src, z_index(4, k, m));
    let dvar = |k: usize, m: usize| WeylElement::deriv(src, z_index(4, k, m));
    let one_s = WeylElement::one(src);
    let zero_s = WeylElement::zero(src);
    let z2 = Matrix::from_rows(vec![vec![one_s.clone(), zero_s.clone()], vec![zvar(4, 3), one_s.clone()]]);
    let d2 = Matrix::from_rows(vec![
        vec![WeylElement::scalar(src, params.u_k(2)), dvar(4, 3).neg()],
        vec![zero_s.clone(), WeylElement::scalar(src, params.u_k(3))],
    ]);
    let z2inv = z2.unitriangular_inverse(one_s.clone(), zero_s.clone());
    let w = z2.mul(&d2).mul(&z2inv);
    let zsmall = Matrix::from_rows(vec![vec![zvar(3, 1), zvar(3, 2)], vec![zvar(4, 1), zvar(4, 2)]]);
    let z1 = Matrix::from_rows(vec![vec![one_s.clone(), zero_s.clone()], vec![zvar(2, 1), one_s.clone()]]);
    let z1inv = z1.unitriangular_inverse(one_s.clone(), zero_s.clone());
    let wzz = w.mul(&zsmall).mul(&z1inv);
    let mut z43_isolated = true;
    for r in 0..2 {
        for c in 0..4 {
            if sl4.l[(r, c)].uses_var(z43) {
                z43_isolated = false;
            }
        }
    }
    for r in 0..2 {
        for c in 0..2 {
            if sl4.l[(r + 2, c + 2)].sub(&w[(r, c)]).uses_var(z43) {
                z43_isolated = false;
            }
            if sl4.l[(r + 2, c)].add(&wzz[(r, c)]).uses_var(z43) {
                z43_isolated = false;
            }
        }
    }

    if !harmonic_block_1 || !harmonic_block_2 {
        return Err(CheckError::Structural("harmonic sub-block identity failed".into()));
    }
    if !z43_isolated {
        return Err(CheckError::Structural("z43 leaks outside the lower-right block".into()));
    }
    Ok(BridgeReport { harmonic_block_1, harmonic_block_2, z43_isolated })
}

/// Helper for tests and the RLL module: lift a numeric matrix to the
/// operator's space.
pub fn lift_to(space: &SpaceRef, m: &NumMatrix) -> Matrix<WeylElement> {
    lift_matrix(space, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Signature;
    use crate::rng::SeededRng;

    fn random_params(rng: &mut SeededRng, nmat: usize) -> SpectralParams {
        // rho_1..rho_{N-1} random, last fixed by the constraint.
        let mut rho: Vec<GaussianRational> = (0..nmat - 1).map(|_| rng.gaussian_rational(5, 3)).collect();
        let mut sum = GaussianRational::zero();
        for r in &rho {
            sum += r;
        }
        let target = GaussianRational::from_rational(rat((nmat * (nmat - 1) / 2) as i64, 1));
        rho.push(&target - &sum);
        SpectralParams::new(rng.gaussian_rational(7, 4), rho).unwrap()
    }

    #[test]
    fn constraint_enforced() {
        assert!(SpectralParams::new(
            GaussianRational::zero(),
            vec![GaussianRational::one(), GaussianRational::one()]
        )
        .is_err());
    }

    #[test]
    fn sl2_matches_spin_matrix() {
        // L(u) = u I + S^(l) for rho = (l+1, -l).
        let ell = rat(3, 4);
        let u = GaussianRational::from_pair(2, 5);
        let params = SpectralParams::sl2_spin(u.clone(), &ell);
        let op = build_sln_l(&params).unwrap();
        let s = spin_matrix(&op.space, 0, &ell);
        let expect = weyl_identity(&op.space, 2).scale(&u).add(&s);
        assert_eq!(op.l, expect);
    }

    #[test]
    fn sl2_ell_zero_entries() {
        // l = 0: off-diagonal spin entries reduce to (-d_z, z^2 d_z).
        let params = SpectralParams::sl2_spin(GaussianRational::zero(), &rat(0, 1));
        let op = build_sln_l(&params).unwrap();
        let z = WeylElement::coord(&op.space, 0);
        let d = WeylElement::deriv(&op.space, 0);
        assert_eq!(op.l[(0, 1)], d.neg());
        assert_eq!(op.l[(1, 0)], z.pow(2).mul(&d));
    }

    #[test]
    fn factorized_equals_direct_gl_relations() {
        let mut rng = SeededRng::new(41);
        for nmat in 2..=4 {
            let params = random_params(&mut rng, nmat);
            let op = build_sln_l(&params).unwrap();
            op.check_gl_relations().unwrap();
            op.check_linearity().unwrap();
        }
    }

    #[test]
    fn intertwiner_n2_printed_identity() {
        // d^2 S^(1/2) = S^(-3/2) d^2 checked directly on spin matrices.
        let space = VariableSpace::euclidean(&["z"]);
        let d2 = WeylElement::deriv(&space, 0).pow(2);
        let s_half = spin_matrix(&space, 0, &rat(1, 2));
        let s_shadow = spin_matrix(&space, 0, &rat(-3, 2));
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(d2.mul(&s_half[(r, c)]), s_shadow[(r, c)].mul(&d2));
            }
        }
    }

    #[test]
    fn intertwiner_n2_through_l() {
        // m = 2l + 1 for l in {0, 1/2, 1}.
        for ell in [rat(0, 1), rat(1, 2), rat(1, 1)] {
            let params = SpectralParams::sl2_spin(GaussianRational::from_pair(3, 7), &ell);
            intertwiner_check(&params, 1).unwrap();
        }
    }

    #[test]
    fn intertwiner_rejects_fractional() {
        let params = SpectralParams::sl2_spin(GaussianRational::zero(), &rat(1, 4));
        assert!(intertwiner_check(&params, 1).is_err());
    }

    #[test]
    fn intertwiner_n4_k2() {
        let mut rng = SeededRng::new(77);
        for m in [1i64, 2] {
            // rho_2 - rho_3 = m; rho_1, rho_2, rho_4 random-ish.
            let r1 = rng.gaussian_rational(4, 3);
            let r2 = rng.gaussian_rational(4, 3);
            let r3 = &r2 - &GaussianRational::from_int(m);
            let r4 = &GaussianRational::from_int(6) - &(&r1 + &r2) - &r3;
            let params =
                SpectralParams::new(rng.gaussian_rational(5, 4), vec![r1, r2, r3, r4]).unwrap();
            intertwiner_check(&params, 2).unwrap();
        }
    }

    #[test]
    fn conformal_l_factorization() {
        let mut rng = SeededRng::new(55);
        // scalar n=2 and n=4
        for sig in [Signature::new(2, 0), Signature::new(4, 0)] {
            for _ in 0..3 {
                let params = RepParams::scalar(sig, rng.gaussian_rational(6, 4));
                let op = build_conformal_l(&params, &rng.gaussian_rational(6, 4)).unwrap();
                op.check_factorization().unwrap();
            }
        }
        // spin n=4
        for _ in 0..3 {
            let params = RepParams::spin4d(
                Signature::new(4, 0),
                rng.gaussian_rational(6, 4),
                rat(1, 2),
                rat(1, 2),
            )
            .unwrap();
            let op = build_conformal_l(&params, &rng.gaussian_rational(6, 4)).unwrap();
            op.check_factorization().unwrap();
        }
    }

    #[test]
    fn conformal_l_u_plus_minus_cross() {
        // u_+ = u_- iff Delta = n/2.
        let (up, um) = u_plus_minus(4, &GaussianRational::from_pair(1, 3), &GaussianRational::from_int(2));
        assert_eq!(up, um);
        let (up, um) = u_plus_minus(4, &GaussianRational::from_pair(1, 3), &GaussianRational::from_int(3));
        assert_ne!(up, um);
    }

    #[test]
    fn bridge_pinned_point() {
        sl4_so6_bridge_check(&rat(2, 5), &rat(7, 3), &rat(1, 2), &rat(1, 1)).unwrap();
    }

    #[test]
    fn bridge_random_points() {
        let mut rng = SeededRng::new(2024);
        for _ in 0..3 {
            let u = rng.rational(6, 4);
            let delta = rng.rational(6, 4);
            let ell = rng.rational(4, 3);
            let elldot = rng.rational(4, 3);
            sl4_so6_bridge_check(&u, &delta, &ell, &elldot).unwrap();
        }
    }
}
