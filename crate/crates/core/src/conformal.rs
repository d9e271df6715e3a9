//! Differential representation of the conformal algebra: scalar mode in any
//! even dimension and signature, spin mode in four dimensions with harmonic
//! variables chi_1, chi_2 carrying the two spin labels. Also the quadratic
//! Casimir (two routes), the packed-matrix identity, the shadow intertwiner
//! for integer Laplacian powers, and the global coset action.

use crate::clifford::{conformal_split, GammaBasis, Signature};
use crate::error::CheckError;
use crate::matrix::{Matrix, NumMatrix, RingElem};
use crate::scalar::{rat, GaussianRational, Rational};
use crate::weyl::{SpaceRef, VariableSpace, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepMode {
    Scalar,
    /// Generic (Delta, ell, elldot) representation, n = 4 only.
    Spin4d,
    /// n = 2 scalar representation deformed by a constant spin s != 0.
    /// Satisfies the conformal relations but violates the antisymmetrized
    /// anticommutator condition; used as the negative control.
    TwistedScalar2d,
}

#[derive(Clone, Debug)]
pub struct RepParams {
    pub sig: Signature,
    pub delta: GaussianRational,
    pub ell: Rational,
    pub elldot: Rational,
    pub mode: RepMode,
    /// Twist parameter for the negative-control mode.
    pub twist: GaussianRational,
}

impl RepParams {
    pub fn scalar(sig: Signature, delta: GaussianRational) -> Self {
        Self {
            sig,
            delta,
            ell: Rational::from_integer(0.into()),
            elldot: Rational::from_integer(0.into()),
            mode: RepMode::Scalar,
            twist: GaussianRational::zero(),
        }
    }

    pub fn spin4d(sig: Signature, delta: GaussianRational, ell: Rational, elldot: Rational) -> Result<Self, CheckError> {
        if sig.n() != 4 {
            return Err(CheckError::Contract("spin mode requires n = 4".into()));
        }
        Ok(Self { sig, delta, ell, elldot, mode: RepMode::Spin4d, twist: GaussianRational::zero() })
    }

    pub fn twisted2d(sig: Signature, delta: GaussianRational, twist: GaussianRational) -> Result<Self, CheckError> {
        if sig.n() != 2 {
            return Err(CheckError::Contract("twisted mode is the n = 2 control".into()));
        }
        Ok(Self {
            sig,
            delta,
            ell: Rational::from_integer(0.into()),
            elldot: Rational::from_integer(0.into()),
            mode: RepMode::TwistedScalar2d,
            twist,
        })
    }

    pub fn n(&self) -> usize {
        self.sig.n()
    }
}

/// A conformal generator family over any ring, with the so(p+1,q+1)
/// dictionary M_{mu nu} = L, M_{n mu} = (P+K)/2, M_{n+1 mu} = (P-K)/2,
/// M_{n n+1} = -D built in.
pub struct ConformalFamily<R> {
    pub n: usize,
    pub l: Vec<Vec<R>>,
    pub p: Vec<R>,
    pub k: Vec<R>,
    pub d: R,
}

impl<R: RingElem> ConformalFamily<R> {
    fn m_low(&self, a: usize, b: usize) -> R {
        // M with a lowered first index pattern: dictionary rows for a in
        // {n, n+1} paired with b < n.
        let half = GaussianRational::from_pair(1, 2);
        let n = self.n;
        debug_assert!(a >= n && b < n);
        if a == n {
            self.p[b].r_add(&self.k[b]).scale(&half)
        } else {
            self.p[b].r_sub(&self.k[b]).scale(&half)
        }
    }
}

/// Build the dictionary closure including the mixed rows.
pub fn family_m<R: RingElem>(fam: &ConformalFamily<R>) -> impl Fn(usize, usize) -> R + '_ {
    move |a, b| {
        let n = fam.n;
        if a == b {
            fam.d.r_sub(&fam.d)
        } else if a < n && b < n {
            fam.l[a][b].clone()
        } else if a >= n && b < n {
            fam.m_low(a, b)
        } else if a < n && b >= n {
            fam.m_low(b, a).r_neg()
        } else if a == n && b == n + 1 {
            fam.d.r_neg()
        } else {
            fam.d.clone()
        }
    }
}

/// Generators of the differential representation, all normal-ordered Weyl
/// elements over (x; chi_1, chi_2 in spin mode).
pub struct RhoGenerators {
    pub params: RepParams,
    pub space: SpaceRef,
    pub fam: ConformalFamily<WeylElement>,
}

/// Names and metric for the representation's variable space. Coordinates
/// occupy indices 0..n; harmonic variables (spin mode) sit at n, n+1.
pub fn rep_space(params: &RepParams) -> SpaceRef {
    let n = params.n();
    let mut names: Vec<String> = (0..n).map(|m| format!("x{m}")).collect();
    let mut metric = params.sig.metric();
    if params.mode == RepMode::Spin4d {
        names.push("c1".into());
        names.push("c2".into());
        metric.push(1);
        metric.push(1);
    }
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    VariableSpace::with_metric(&name_refs, &metric)
}

/// The spin generators S_munu as differential operators in the harmonic
/// variable at index `chi` with label `ell`: the degree-2ell principal
/// realization of sl(2) induced from lambda sigma_munu d_lambda.
fn induced_spin(space: &SpaceRef, chi: usize, ell: &Rational, m: &NumMatrix) -> WeylElement {
    let x = WeylElement::coord(space, chi);
    let dx = WeylElement::deriv(space, chi);
    let two_ell = GaussianRational::from_rational(ell + ell);
    // lambda_1 d_1 -> chi d ; lambda_2 d_2 -> 2 ell - chi d ;
    // lambda_1 d_2 -> chi^2 d - 2 ell chi ; lambda_2 d_1 -> -d.
    let e11 = x.mul(&dx);
    let e22 = WeylElement::scalar(space, two_ell.clone()).sub(&e11);
    let e12 = x.pow(2).mul(&dx).sub(&x.scale(&two_ell));
    let e21 = dx.neg();
    e11.scale(&m[(0, 0)])
        .add(&e12.scale(&m[(0, 1)]))
        .add(&e21.scale(&m[(1, 0)]))
        .add(&e22.scale(&m[(1, 1)]))
}

/// Differential representation rho of the conformal algebra.
pub fn rho(params: &RepParams) -> Result<RhoGenerators, CheckError> {
    let n = params.n();
    let space = rep_space(params);
    let g: Vec<i64> = params.sig.metric().iter().map(|&s| s as i64).collect();
    let i = GaussianRational::i();

    let x_up = |mu: usize| WeylElement::coord(&space, mu);
    let x_low = |mu: usize| x_up(mu).scale(&GaussianRational::from_int(g[mu]));
    let p_low = |mu: usize| WeylElement::momentum(&space, mu);

    // Spin part S_munu (zero in scalar mode).
    let spin = spin_part(params, &space)?;

    // ellhat_munu = x_nu p_mu - x_mu p_nu
    let ellhat = |mu: usize, nu: usize| x_low(nu).mul(&p_low(mu)).sub(&x_low(mu).mul(&p_low(nu)));

    let l: Vec<Vec<WeylElement>> =
        (0..n).map(|mu| (0..n).map(|nu| ellhat(mu, nu).add(&spin[mu][nu])).collect()).collect();

    let p: Vec<WeylElement> = (0..n).map(p_low).collect();

    // D = x^mu p_mu - i Delta
    let mut d = WeylElement::scalar(&space, -(&i * &params.delta));
    for mu in 0..n {
        d = d.add(&x_up(mu).mul(&p_low(mu)));
    }

    // x^2 = sum g_mumu (x^mu)^2
    let mut xsq = WeylElement::zero(&space);
    for mu in 0..n {
        xsq = xsq.add(&x_up(mu).pow(2).scale(&GaussianRational::from_int(g[mu])));
    }

    // K_mu = 2 x^nu (ellhat_numu + S_numu) + x^2 p_mu - 2 i Delta x_mu
    let k: Vec<WeylElement> = (0..n)
        .map(|mu| {
            let mut acc = WeylElement::zero(&space);
            for nu in 0..n {
                let lnumu = ellhat(nu, mu).add(&spin[nu][mu]);
                acc = acc.add(&x_up(nu).mul(&lnumu).scale(&GaussianRational::from_int(2)));
            }
            acc = acc.add(&xsq.mul(&p_low(mu)));
            let two_i_delta = (&i * &params.delta).scale_by_int(2);
            acc.sub(&x_low(mu).scale(&two_i_delta))
        })
        .collect();

    Ok(RhoGenerators {
        params: params.clone(),
        space: space.clone(),
        fam: ConformalFamily { n, l, p, k, d },
    })
}

impl RhoGenerators {
    /// Exhaustive check of the conformal commutation relations, exact.
    pub fn check_relations(&self) -> Result<(), CheckError> {
        crate::clifford::check_conformal_relations(
            &self.params.sig.metric(),
            &|mu, nu| self.fam.l[mu][nu].clone(),
            &|mu| self.fam.p[mu].clone(),
            &|mu| self.fam.k[mu].clone(),
            &self.fam.d,
        )
    }

    /// Quadratic Casimir assembled from the generators:
    /// (1/2)(L.L + PK + KP) - D^2.
    pub fn casimir_from_generators(&self) -> WeylElement {
        let n = self.params.n();
        let g: Vec<i64> = self.params.sig.metric().iter().map(|&s| s as i64).collect();
        let up2 = |mu: usize, nu: usize| GaussianRational::from_int(g[mu] * g[nu]);
        let up1 = |mu: usize| GaussianRational::from_int(g[mu]);
        let mut acc = WeylElement::zero(&self.space);
        for mu in 0..n {
            for nu in 0..n {
                let lup = self.fam.l[mu][nu].scale(&up2(mu, nu));
                acc = acc.add(&self.fam.l[mu][nu].mul(&lup));
            }
            let kup = self.fam.k[mu].scale(&up1(mu));
            let pup = self.fam.p[mu].scale(&up1(mu));
            acc = acc.add(&self.fam.p[mu].mul(&kup));
            acc = acc.add(&self.fam.k[mu].mul(&pup));
        }
        let half = GaussianRational::from_pair(1, 2);
        acc.scale(&half).sub(&self.fam.d.mul(&self.fam.d))
    }

    /// Independent closed form of the same Casimir:
    /// (1/2) S.S + Delta (Delta - n), with the spin part rebuilt from the
    /// sigma blocks. The operator is a constant: central elements act by
    /// the infinitesimal character on the induced module. (A commonly
    /// quoted variant carries an extra -(1/2) ellhat.ellhat term; see
    /// `ellhat_squared` and the test pinning the difference.)
    pub fn casimir_closed_form(&self) -> WeylElement {
        let n = self.params.n();
        let g: Vec<i64> = self.params.sig.metric().iter().map(|&s| s as i64).collect();
        let spin = spin_part(&self.params, &self.space).expect("spin part");
        let mut acc = WeylElement::zero(&self.space);
        for mu in 0..n {
            for nu in 0..n {
                let scale = GaussianRational::from_int(g[mu] * g[nu]);
                acc = acc.add(&spin[mu][nu].mul(&spin[mu][nu].scale(&scale)));
            }
        }
        let half = GaussianRational::from_pair(1, 2);
        let delta = &self.params.delta;
        let c = delta * &(delta - &GaussianRational::from_int(n as i64));
        acc.scale(&half).add(&WeylElement::scalar(&self.space, c))
    }

    /// ellhat_munu ellhat^munu, the rotation part of the orbital generators.
    pub fn ellhat_squared(&self) -> WeylElement {
        let n = self.params.n();
        let g: Vec<i64> = self.params.sig.metric().iter().map(|&s| s as i64).collect();
        let x_up = |mu: usize| WeylElement::coord(&self.space, mu);
        let x_low = |mu: usize| x_up(mu).scale(&GaussianRational::from_int(g[mu]));
        let p_low = |mu: usize| WeylElement::momentum(&self.space, mu);
        let ellhat = |mu: usize, nu: usize| x_low(nu).mul(&p_low(mu)).sub(&x_low(mu).mul(&p_low(nu)));
        let mut acc = WeylElement::zero(&self.space);
        for mu in 0..n {
            for nu in 0..n {
                let scale = GaussianRational::from_int(g[mu] * g[nu]);
                let e = ellhat(mu, nu);
                acc = acc.add(&e.mul(&e.scale(&scale)));
            }
        }
        acc
    }
}

/// Spin generators S_munu for the representation's mode.
fn spin_part(params: &RepParams, space: &SpaceRef) -> Result<Vec<Vec<WeylElement>>, CheckError> {
    let n = params.n();
    Ok(match params.mode {
        RepMode::Scalar => (0..n)
            .map(|_| (0..n).map(|_| WeylElement::zero(space)).collect())
            .collect(),
        RepMode::TwistedScalar2d => (0..n)
            .map(|mu| {
                (0..n)
                    .map(|nu| {
                        if mu == nu {
                            WeylElement::zero(space)
                        } else {
                            let sgn = if mu < nu { 1 } else { -1 };
                            WeylElement::scalar(space, params.twist.clone().scale_by_int(sgn))
                        }
                    })
                    .collect()
            })
            .collect(),
        RepMode::Spin4d => {
            let basis = GammaBasis::build(params.sig)?;
            let sb = basis.sigma_blocks();
            (0..n)
                .map(|mu| {
                    (0..n)
                        .map(|nu| {
                            let s1 = induced_spin(space, n, &params.ell, &sb.sigma_munu(mu, nu));
                            let s2 = induced_spin(space, n + 1, &params.elldot, &sb.sigmabar_munu(mu, nu));
                            s1.add(&s2)
                        })
                        .collect()
                })
                .collect()
        }
    })
}

/// 2x2 spin matrix S^(ell) over the harmonic variable at index `chi`:
/// [[chi d - ell, -d], [chi^2 d - 2 ell chi, -chi d + ell]].
pub fn spin_matrix(space: &SpaceRef, chi: usize, ell: &Rational) -> Matrix<WeylElement> {
    let x = WeylElement::coord(space, chi);
    let d = WeylElement::deriv(space, chi);
    let ell_c = GaussianRational::from_rational(ell.clone());
    let two_ell = GaussianRational::from_rational(ell + ell);
    let s3 = x.mul(&d).sub(&WeylElement::scalar(space, ell_c.clone()));
    let sminus = d.neg();
    let splus = x.pow(2).mul(&d).sub(&x.scale(&two_ell));
    Matrix::from_rows(vec![vec![s3.clone(), sminus], vec![splus, s3.neg()]])
}

/// bold x = -i sum_mu sigmabar_mu x^mu, a matrix of multiplication operators.
pub fn bold_x(space: &SpaceRef, sigmabar: &[NumMatrix]) -> Matrix<WeylElement> {
    let h = sigmabar[0].rows();
    let mut acc = Matrix::filled(h, h, WeylElement::zero(space));
    for (mu, sb) in sigmabar.iter().enumerate() {
        let x = WeylElement::coord(space, mu).scale(&-GaussianRational::i());
        acc = acc.add(&weyl_scale_matrix(sb, &x));
    }
    acc
}

/// bold p = (1/2) sum_mu sigma^mu phat_mu = -(i/2) sum g^mumu sigma_mu d_mu.
pub fn bold_p(space: &SpaceRef, sigma: &[NumMatrix], metric: &[i8]) -> Matrix<WeylElement> {
    let h = sigma[0].rows();
    let mut acc = Matrix::filled(h, h, WeylElement::zero(space));
    for (mu, s) in sigma.iter().enumerate() {
        let c = GaussianRational::from_pair(metric[mu] as i64, 2);
        let p = WeylElement::momentum(space, mu).scale(&c);
        acc = acc.add(&weyl_scale_matrix(s, &p));
    }
    acc
}

/// Numeric matrix times a single Weyl element (entrywise scaling).
pub fn weyl_scale_matrix(m: &NumMatrix, w: &WeylElement) -> Matrix<WeylElement> {
    Matrix::from_fn(m.rows(), m.cols(), |r, c| w.scale(&m[(r, c)]))
}

/// Assemble a 2x2 block matrix from equal-size blocks.
pub fn block2<R: RingElem>(
    a: &Matrix<R>,
    b: &Matrix<R>,
    c: &Matrix<R>,
    d: &Matrix<R>,
) -> Matrix<R> {
    let h = a.rows();
    Matrix::from_fn(2 * h, 2 * h, |r, cc| {
        match (r < h, cc < h) {
            (true, true) => a[(r, cc)].clone(),
            (true, false) => b[(r, cc - h)].clone(),
            (false, true) => c[(r - h, cc)].clone(),
            (false, false) => d[(r - h, cc - h)].clone(),
        }
    })
}

/// Result of the packed-matrix comparison.
pub struct PackedMatrix {
    pub assembled: Matrix<WeylElement>,
    pub block_form: Matrix<WeylElement>,
}

/// Both sides of the packed-generator identity:
/// (1/2) T1(M^{ab}) rho(M_{ab}) against the explicit block form.
pub fn packed_matrix(params: &RepParams) -> Result<PackedMatrix, CheckError> {
    let n = params.n();
    let basis = GammaBasis::build(params.sig)?;
    let split = conformal_split(&basis);
    let t1 = ConformalFamily { n, l: split.ell.clone(), p: split.p.clone(), k: split.k.clone(), d: split.d.clone() };
    let rgen = rho(params)?;
    let space = &rgen.space;
    let genlarged = params.sig.enlarged_metric();
    let t1_m = family_m(&t1);
    let rho_m = family_m(&rgen.fam);

    let dim = basis.dim();
    let mut assembled = Matrix::filled(dim, dim, WeylElement::zero(space));
    for a in 0..n + 2 {
        for b in (a + 1)..n + 2 {
            let raise = GaussianRational::from_int((genlarged[a] * genlarged[b]) as i64);
            let t = t1_m(a, b).scale(&raise);
            assembled = assembled.add(&weyl_scale_matrix_by(&t, &rho_m(a, b)));
        }
    }

    // Block form.
    let sb = basis.sigma_blocks();
    let h = dim / 2;
    let metric = params.sig.metric();
    let bx = bold_x(space, &sb.sigmabar);
    let bp = bold_p(space, &sb.sigma, &metric);
    let (s_mat, sbar_mat) = match params.mode {
        RepMode::Spin4d => (
            spin_matrix(space, n, &params.ell),
            spin_matrix(space, n + 1, &params.elldot),
        ),
        RepMode::Scalar => (
            Matrix::filled(h, h, WeylElement::zero(space)),
            Matrix::filled(h, h, WeylElement::zero(space)),
        ),
        RepMode::TwistedScalar2d => {
            // bold S = (1/2) sigma^munu S_munu with S_munu = twist * eps.
            let mut s = Matrix::filled(h, h, WeylElement::zero(space));
            let mut sbar = Matrix::filled(h, h, WeylElement::zero(space));
            for mu in 0..n {
                for nu in 0..n {
                    if mu == nu {
                        continue;
                    }
                    let raise = GaussianRational::from_int((metric[mu] * metric[nu]) as i64);
                    let sgn = if mu < nu { 1i64 } else { -1 };
                    let c = params.twist.clone().scale_by_int(sgn).scale_by_rat(&rat(1, 2)) * raise.clone();
                    let w = WeylElement::scalar(space, c);
                    s = s.add(&weyl_scale_matrix_by(&sb.sigma_munu(mu, nu), &w));
                    sbar = sbar.add(&weyl_scale_matrix_by(&sb.sigmabar_munu(mu, nu), &w));
                }
            }
            (s, sbar)
        }
    };
    let id = crate::weyl::weyl_identity(space, h);
    let nn = GaussianRational::from_int(n as i64);
    let delta = &params.delta;
    let c_ul = (delta - &nn).scale_by_rat(&rat(1, 2));
    let c_lr = -delta.scale_by_rat(&rat(1, 2));
    let c_ll = delta - &nn.scale_by_rat(&rat(1, 2));
    let ul = id.scale(&c_ul).add(&s_mat).sub(&bp.mul(&bx));
    let ur = bp.clone();
    let ll = bx.mul(&s_mat).sub(&sbar_mat.mul(&bx)).sub(&bx.mul(&bp).mul(&bx)).add(&bx.scale(&c_ll));
    let lr = id.scale(&c_lr).add(&sbar_mat).add(&bx.mul(&bp));
    let block_form = block2(&ul, &ur, &ll, &lr);

    Ok(PackedMatrix { assembled, block_form })
}

fn weyl_scale_matrix_by(m: &NumMatrix, w: &WeylElement) -> Matrix<WeylElement> {
    weyl_scale_matrix(m, w)
}

/// bold L = (1/2) sigma^munu ellhat_munu; the intermediate identity checks
/// bold L = -bold p bold x - (i/2)(phat_mu x^mu) 1.
pub fn check_l_intermediate(params: &RepParams) -> Result<(), CheckError> {
    let basis = GammaBasis::build(params.sig)?;
    let sb = basis.sigma_blocks();
    let n = params.n();
    let metric = params.sig.metric();
    let scalar = RepParams::scalar(params.sig, params.delta.clone());
    let space = rep_space(&scalar);
    let g: Vec<i64> = metric.iter().map(|&s| s as i64).collect();
    let x_up = |mu: usize| WeylElement::coord(&space, mu);
    let x_low = |mu: usize| x_up(mu).scale(&GaussianRational::from_int(g[mu]));
    let p_low = |mu: usize| WeylElement::momentum(&space, mu);
    let h = basis.dim() / 2;
    let mut bold_l = Matrix::filled(h, h, WeylElement::zero(&space));
    for mu in 0..n {
        for nu in 0..n {
            let raise = GaussianRational::from_int(g[mu] * g[nu]);
            let ellhat = x_low(nu).mul(&p_low(mu)).sub(&x_low(mu).mul(&p_low(nu)));
            bold_l = bold_l.add(&weyl_scale_matrix(
                &sb.sigma_munu(mu, nu),
                &ellhat.scale(&raise.scale_by_rat(&rat(1, 2))),
            ));
        }
    }
    let bx = bold_x(&space, &sb.sigmabar);
    let bp = bold_p(&space, &sb.sigma, &metric);
    let mut px = WeylElement::zero(&space);
    for mu in 0..n {
        px = px.add(&p_low(mu).mul(&x_up(mu)));
    }
    let scalar_term = px.scale(&GaussianRational::i().scale_by_rat(&rat(-1, 2)));
    let rhs = bp.mul(&bx).neg().add(&weyl_scale_matrix(&NumMatrix::identity(h), &scalar_term));
    if bold_l != rhs {
        return Err(CheckError::Structural("bold-L intermediate identity failed".into()));
    }
    Ok(())
}

/// Global coset action: blocks (A, B, C, D) of the acting element, rational
/// point matrix bold-x. Returns bold-x' and h^-1, and verifies the defining
/// reconstruction M Z = Z' h^-1 exactly.
pub fn coset_action(
    a: &NumMatrix,
    b: &NumMatrix,
    c: &NumMatrix,
    d: &NumMatrix,
    x: &NumMatrix,
) -> Result<(NumMatrix, NumMatrix), CheckError> {
    let denom = a.add(&b.mul(x));
    let denom_inv = denom
        .inverse()
        .map_err(|_| CheckError::Domain("point maps to infinity (A + B x singular)".into()))?;
    let xp = c.add(&d.mul(x)).mul(&denom_inv);
    // h^-1 = [[A + B x, B], [0, D - x' B]]
    let h = x.rows();
    let zero = NumMatrix::zeros(h, h);
    let hinv = block2(&denom, b, &zero, &d.sub(&xp.mul(b)));
    // Reconstruction M Z = Z' h^-1.
    let m = block2(a, b, c, d);
    let id = NumMatrix::identity(h);
    let z = block2(&id, &zero, x, &id);
    let zp = block2(&id, &zero, &xp, &id);
    if m.mul(&z) != zp.mul(&hinv) {
        return Err(CheckError::Structural("coset reconstruction failed".into()));
    }
    Ok((xp, hinv))
}

/// Shadow intertwiner check: S = (p^2)^k conjugates the scalar representation
/// with Delta = n/2 - k into the one with n - Delta, generator by generator.
pub fn shadow_intertwiner_check(sig: Signature, k_pow: i64) -> Result<(), CheckError> {
    if !sig.metric().iter().all(|&g| g == 1) {
        return Err(CheckError::Contract("shadow check uses the Euclidean form".into()));
    }
    let n = sig.n() as i64;
    let delta = GaussianRational::from_rational(rat(n, 2) - rat(k_pow, 1));
    let delta_shadow = GaussianRational::from_int(n) - &delta;
    let lo = rho(&RepParams::scalar(sig, delta))?;
    let hi = rho(&RepParams::scalar(sig, delta_shadow))?;
    let s = WeylElement::laplacian_power(&lo.space, k_pow)?;
    let nvars = sig.n();
    // P and L commute with S; D and K intertwine.
    for mu in 0..nvars {
        if hi.fam.p[mu].mul(&s) != s.mul(&lo.fam.p[mu]) {
            return Err(CheckError::Structural("shadow: P fails".into()));
        }
        if hi.fam.k[mu].mul(&s) != s.mul(&lo.fam.k[mu]) {
            return Err(CheckError::Structural("shadow: K fails".into()));
        }
        for nu in 0..nvars {
            if hi.fam.l[mu][nu].mul(&s) != s.mul(&lo.fam.l[mu][nu]) {
                return Err(CheckError::Structural("shadow: L fails".into()));
            }
        }
    }
    if hi.fam.d.mul(&s) != s.mul(&lo.fam.d) {
        return Err(CheckError::Structural("shadow: D fails".into()));
    }
    Ok(())
}

/// The lambda-realization of the spin generators restricted to homogeneity
/// 2 ell reproduces S^(ell): checked by applying both to chi-monomials of
/// degree <= 2 ell through the generating-function map
/// chi^j -> (-1)^(2ell + j) lambda_1^j lambda_2^(2ell - j).
pub fn check_spin_restriction(sig: Signature, ell: &Rational) -> Result<(), CheckError> {
    use num_traits::ToPrimitive;
    let two_ell = (ell + ell)
        .to_integer()
        .to_i64()
        .ok_or_else(|| CheckError::Contract("2 ell must be an integer here".into()))?;
    if two_ell < 0 {
        return Err(CheckError::Contract("2 ell must be nonnegative".into()));
    }
    let basis = GammaBasis::build(sig)?;
    let sb = basis.sigma_blocks();
    let lam = VariableSpace::euclidean(&["l1", "l2"]);
    let chi = VariableSpace::euclidean(&["c"]);
    let n = sig.n();
    let to_lambda = |poly: &WeylElement| -> WeylElement {
        // chi^j -> (-1)^(2ell + j) l1^j l2^(2ell - j)
        let mut acc = WeylElement::zero(&lam);
        for j in 0..=(two_ell as u32) {
            let coeff = poly.coefficient(&[j], &[]);
            if coeff.is_zero() {
                continue;
            }
            let sign = if (two_ell + j as i64) % 2 == 0 { 1 } else { -1 };
            acc = acc.add(&WeylElement::monomial(
                &lam,
                &[j, two_ell as u32 - j],
                &[],
                coeff.scale_by_int(sign),
            ));
        }
        acc
    };
    for mu in 0..n {
        for nu in 0..n {
            let m = sb.sigma_munu(mu, nu);
            // lambda-realization: l_a M_ab d_b
            let l1 = WeylElement::coord(&lam, 0);
            let l2 = WeylElement::coord(&lam, 1);
            let d1 = WeylElement::deriv(&lam, 0);
            let d2 = WeylElement::deriv(&lam, 1);
            let lam_op = l1
                .mul(&d1)
                .scale(&m[(0, 0)])
                .add(&l1.mul(&d2).scale(&m[(0, 1)]))
                .add(&l2.mul(&d1).scale(&m[(1, 0)]))
                .add(&l2.mul(&d2).scale(&m[(1, 1)]));
            let chi_op = induced_spin(&chi, 0, ell, &m);
            for j in 0..=(two_ell as u32) {
                let f = WeylElement::monomial(&chi, &[j], &[], GaussianRational::one());
                let lhs = to_lambda(&chi_op.apply(&f).unwrap());
                let big_f = to_lambda(&f);
                let rhs = lam_op.apply(&big_f).unwrap();
                if lhs != rhs {
                    return Err(CheckError::Structural(format!(
                        "spin restriction mismatch at ({mu},{nu}), j={j}, 2l={two_ell}"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    #[test]
    fn scalar_relations_both_signatures_n2() {
        for sig in Signature::all_with_n(2) {
            let params = RepParams::scalar(sig, GaussianRational::from_pair(5, 3));
            rho(&params).unwrap().check_relations().unwrap();
        }
    }

    #[test]
    fn scalar_relations_n4() {
        for sig in [Signature::new(4, 0), Signature::new(1, 3)] {
            let params = RepParams::scalar(sig, GaussianRational::from_pair(-7, 4));
            rho(&params).unwrap().check_relations().unwrap();
        }
    }

    #[test]
    fn spin4d_relations_random_delta() {
        let mut rng = SeededRng::new(20260810);
        for _ in 0..3 {
            let delta = rng.gaussian_rational(6, 4);
            let params =
                RepParams::spin4d(Signature::new(4, 0), delta, rat(1, 2), rat(0, 1)).unwrap();
            rho(&params).unwrap().check_relations().unwrap();
        }
        // and a dotted-spin point in the Minkowski convention
        let params =
            RepParams::spin4d(Signature::new(1, 3), GaussianRational::from_pair(3, 7), rat(1, 1), rat(1, 2))
                .unwrap();
        rho(&params).unwrap().check_relations().unwrap();
    }

    #[test]
    fn twisted_control_is_a_representation() {
        let params = RepParams::twisted2d(
            Signature::new(2, 0),
            GaussianRational::from_pair(5, 2),
            GaussianRational::from_pair(1, 3),
        )
        .unwrap();
        rho(&params).unwrap().check_relations().unwrap();
    }

    #[test]
    fn rho_d_on_constant() {
        // rho(D) applied to 1 = -i Delta.
        let params = RepParams::scalar(Signature::new(4, 0), GaussianRational::from_int(2));
        let r = rho(&params).unwrap();
        let one = WeylElement::one(&r.space);
        let out = r.fam.d.apply(&one).unwrap();
        let expect = WeylElement::scalar(&r.space, -GaussianRational::i().scale_by_int(2));
        assert_eq!(out, expect);
    }

    #[test]
    fn casimir_two_routes_scalar() {
        for sig in [Signature::new(2, 0), Signature::new(4, 0), Signature::new(1, 3)] {
            let params = RepParams::scalar(sig, GaussianRational::from_pair(7, 5));
            let r = rho(&params).unwrap();
            assert_eq!(r.casimir_from_generators(), r.casimir_closed_form(), "{sig:?}");
        }
    }

    #[test]
    fn casimir_two_routes_spin() {
        let params =
            RepParams::spin4d(Signature::new(4, 0), GaussianRational::from_pair(2, 3), rat(1, 2), rat(1, 1))
                .unwrap();
        let r = rho(&params).unwrap();
        assert_eq!(r.casimir_from_generators(), r.casimir_closed_form());
        // The constant is Delta(Delta-4) + 2[l(l+1) + ld(ld+1)].
        let expect = GaussianRational::from_rational(
            rat(2, 3) * (rat(2, 3) - rat(4, 1)) + rat(2, 1) * (rat(1, 2) * rat(3, 2) + rat(1, 1) * rat(2, 1)),
        );
        assert_eq!(r.casimir_from_generators(), WeylElement::scalar(&r.space, expect));
    }

    #[test]
    fn casimir_quoted_form_differs_by_ellhat_squared() {
        // A commonly quoted closed form subtracts (1/2) ellhat.ellhat; the
        // exact generator-route Casimir shows that term is absent (the
        // Casimir is central, hence constant on the induced module). Pin
        // the difference.
        for sig in [Signature::new(2, 0), Signature::new(4, 0)] {
            let params = RepParams::scalar(sig, GaussianRational::from_pair(7, 5));
            let r = rho(&params).unwrap();
            let half = GaussianRational::from_pair(1, 2);
            let quoted = r.casimir_closed_form().sub(&r.ellhat_squared().scale(&half));
            let diff = r.casimir_from_generators().sub(&quoted);
            assert_eq!(diff, r.ellhat_squared().scale(&half));
        }
    }

    #[test]
    fn casimir_on_constant_and_shadow_symmetry() {
        let sig = Signature::new(4, 0);
        // applied to 1: Delta(Delta - n)
        let params = RepParams::scalar(sig, GaussianRational::from_int(2));
        let r = rho(&params).unwrap();
        let one = WeylElement::one(&r.space);
        let out = r.casimir_from_generators().apply(&one).unwrap();
        let expect = WeylElement::scalar(&r.space, GaussianRational::from_int(2 * (2 - 4)));
        assert_eq!(out, expect);
        // Delta = 3 and n - Delta = 1 give the same Casimir element.
        let c3 = rho(&RepParams::scalar(sig, GaussianRational::from_int(3)))
            .unwrap()
            .casimir_from_generators();
        let c1 = rho(&RepParams::scalar(sig, GaussianRational::from_int(1)))
            .unwrap()
            .casimir_from_generators();
        assert_eq!(c3, c1);
        // self-shadow point Delta = 2 = n - Delta trivially agrees
        let c2a = rho(&RepParams::scalar(sig, GaussianRational::from_int(2)))
            .unwrap()
            .casimir_from_generators();
        let c2b = rho(&RepParams::scalar(sig, GaussianRational::from_int(2)))
            .unwrap()
            .casimir_closed_form();
        assert_eq!(c2a, c2b);
    }

    #[test]
    fn packed_matrix_scalar_n2() {
        let mut rng = SeededRng::new(4);
        for sig in Signature::all_with_n(2) {
            let delta = rng.gaussian_rational(9, 5);
            let pm = packed_matrix(&RepParams::scalar(sig, delta)).unwrap();
            assert_eq!(pm.assembled, pm.block_form, "{sig:?}");
        }
    }

    #[test]
    fn packed_matrix_scalar_and_spin_n4() {
        let pm = packed_matrix(&RepParams::scalar(Signature::new(4, 0), GaussianRational::from_pair(5, 3))).unwrap();
        assert_eq!(pm.assembled, pm.block_form);
        let pm = packed_matrix(&RepParams::scalar(Signature::new(1, 3), GaussianRational::from_pair(-2, 7))).unwrap();
        assert_eq!(pm.assembled, pm.block_form);
        let params =
            RepParams::spin4d(Signature::new(1, 3), GaussianRational::from_pair(3, 2), rat(1, 2), rat(1, 1))
                .unwrap();
        let pm = packed_matrix(&params).unwrap();
        assert_eq!(pm.assembled, pm.block_form);
    }

    #[test]
    fn packed_matrix_twisted_control() {
        // The packed identity is representation-agnostic, so it also holds
        // for the constant-spin control.
        let params = RepParams::twisted2d(
            Signature::new(2, 0),
            GaussianRational::from_pair(4, 3),
            GaussianRational::from_pair(2, 5),
        )
        .unwrap();
        let pm = packed_matrix(&params).unwrap();
        assert_eq!(pm.assembled, pm.block_form);
    }

    #[test]
    fn l_intermediate_identity() {
        for sig in [Signature::new(2, 0), Signature::new(4, 0), Signature::new(1, 3)] {
            check_l_intermediate(&RepParams::scalar(sig, GaussianRational::from_int(1))).unwrap();
        }
    }

    #[test]
    fn shadow_intertwiner_integer_powers() {
        for sig in [Signature::new(2, 0), Signature::new(4, 0)] {
            for k in 0..=2 {
                shadow_intertwiner_check(sig, k).unwrap();
            }
        }
    }

    #[test]
    fn spin_restriction_small_ells() {
        for ell in [rat(1, 2), rat(1, 1), rat(3, 2)] {
            check_spin_restriction(Signature::new(4, 0), &ell).unwrap();
            check_spin_restriction(Signature::new(1, 3), &ell).unwrap();
        }
    }

    #[test]
    fn spin_matrix_sl2_relations() {
        // [S3, S+-] = +- S+-, [S+, S-] = 2 S3 at a non-half-integer ell.
        let space = VariableSpace::euclidean(&["c"]);
        let ell = rat(5, 7);
        let s = spin_matrix(&space, 0, &ell);
        let s3 = &s[(0, 0)];
        let sm = &s[(0, 1)];
        let sp = &s[(1, 0)];
        assert_eq!(s3.commutator(sp), sp.clone());
        assert_eq!(s3.commutator(sm), sm.neg());
        assert_eq!(sp.commutator(sm), s3.scale(&GaussianRational::from_int(2)));
    }

    #[test]
    fn sigma_block_spin_relations_n4() {
        // sigma_munu and sigmabar_munu each satisfy the so(p,q) relations.
        for sig in [Signature::new(4, 0), Signature::new(1, 3)] {
            let sb = GammaBasis::build(sig).unwrap().sigma_blocks();
            crate::clifford::check_so_relations(&sig.metric(), &|mu, nu| sb.sigma_munu(mu, nu))
                .unwrap();
            crate::clifford::check_so_relations(&sig.metric(), &|mu, nu| sb.sigmabar_munu(mu, nu))
                .unwrap();
        }
    }

    #[test]
    fn sigma_trace_normalization() {
        // Standard trace of sigma_mu sigmabar_nu is 2^(n/2 - 1) g_munu;
        // the unit-normalized trace convention rescales by that dimension.
        let b = GammaBasis::build(Signature::new(1, 3)).unwrap();
        let sb = b.sigma_blocks();
        let g = b.sig.metric();
        for mu in 0..4 {
            for nu in 0..4 {
                let t = sb.sigma[mu].mul(&sb.sigmabar[nu]).trace();
                let expect = GaussianRational::from_int(if mu == nu { 2 * g[mu] as i64 } else { 0 });
                assert_eq!(t, expect);
            }
        }
    }

    #[test]
    fn coset_translation_dilatation_composition() {
        let b = GammaBasis::build(Signature::new(1, 3)).unwrap();
        let sb = b.sigma_blocks();
        let h = 2usize;
        let id = NumMatrix::identity(h);
        let zero = NumMatrix::zeros(h, h);
        let mut rng = SeededRng::new(8);
        let point = |rng: &mut SeededRng| -> NumMatrix {
            let coords: Vec<GaussianRational> = (0..4).map(|_| rng.gaussian_rational(5, 3)).collect();
            let mut acc = NumMatrix::zeros(h, h);
            for mu in 0..4 {
                acc = acc.add(&sb.sigmabar[mu].scale(&(&coords[mu] * &-GaussianRational::i())));
            }
            acc
        };
        // Translation: blocks [[1,0],[a,1]] with a = +i a^mu sigmabar_mu send
        // bold(x) to bold(x - a).
        let avec: Vec<GaussianRational> = (0..4).map(|_| rng.gaussian_rational(4, 3)).collect();
        let mut bold_a = NumMatrix::zeros(h, h);
        let mut bold_a_neg = NumMatrix::zeros(h, h);
        for mu in 0..4 {
            bold_a = bold_a.add(&sb.sigmabar[mu].scale(&(&avec[mu] * &GaussianRational::i())));
            bold_a_neg = bold_a_neg.add(&sb.sigmabar[mu].scale(&(&avec[mu] * &-GaussianRational::i())));
        }
        let x = point(&mut rng);
        let (xp, hinv) = coset_action(&id, &zero, &bold_a, &id, &x).unwrap();
        assert_eq!(xp, x.add(&bold_a)); // bold(x - a) = bold x + i a sigmabar
        assert_eq!(hinv, NumMatrix::identity(2 * h));
        // Dilatation at rational scale t: blocks diag(t^-1, t) give x' = t^2 x.
        let t = GaussianRational::from_pair(3, 2);
        let (xp, _) = coset_action(&id.scale(&t.inv()), &zero, &zero, &id.scale(&t), &x).unwrap();
        assert_eq!(xp, x.scale(&(&t * &t)));
        // Composition: act(M1) then act(M2) = act(M2 M1) on 20 random points.
        for _ in 0..20 {
            let x = point(&mut rng);
            let m1 = (
                id.add(&point(&mut rng).scale(&GaussianRational::from_pair(1, 9))),
                zero.clone(),
                point(&mut rng),
                id.clone(),
            );
            let m2 = (
                id.clone(),
                point(&mut rng).scale(&GaussianRational::from_pair(1, 7)),
                zero.clone(),
                id.clone(),
            );
            let step1 = coset_action(&m1.0, &m1.1, &m1.2, &m1.3, &x);
            let (x1, _) = match step1 {
                Ok(v) => v,
                Err(_) => continue,
            };
            let step2 = coset_action(&m2.0, &m2.1, &m2.2, &m2.3, &x1);
            let (x2, _) = match step2 {
                Ok(v) => v,
                Err(_) => continue,
            };
            // product M2 M1 in block form
            let big1 = block2(&m1.0, &m1.1, &m1.2, &m1.3);
            let big2 = block2(&m2.0, &m2.1, &m2.2, &m2.3);
            let prod = big2.mul(&big1);
            let pa = Matrix::from_fn(h, h, |r, c| prod[(r, c)].clone());
            let pb = Matrix::from_fn(h, h, |r, c| prod[(r, c + h)].clone());
            let pc = Matrix::from_fn(h, h, |r, c| prod[(r + h, c)].clone());
            let pd = Matrix::from_fn(h, h, |r, c| prod[(r + h, c + h)].clone());
            let (x12, _) = coset_action(&pa, &pb, &pc, &pd, &x).unwrap();
            assert_eq!(x2, x12);
        }
        // Singular denominator reported as "maps to infinity".
        let sing = coset_action(&zero, &zero, &id, &id, &x);
        assert!(sing.is_err());
    }
}
