//! The spinorial R-matrix with recurrence-fixed coefficients, exact
//! Yang-Baxter and RLL verification across representation choices, the
//! antisymmetrized-anticommutator condition, the four-dimensional Weyl
//! projection onto the Yang R-matrix, crossing symmetry, and the
//! permutation-operator identity.

use crate::clifford::{EnlargedGammaBasis, GammaBasis, Signature};

use crate::conformal::{family_m, rho, RepParams};
use crate::error::CheckError;
use crate::matrix::{Matrix, NumMatrix, RingElem};
use crate::scalar::{rat, GaussianRational, Rational};
use crate::weyl::{lift_matrix, weyl_identity, SpaceRef, VariableSpace, WeylElement};

/// Rational function of u in fully factored linear form:
/// coef * prod (u + s_i) / prod (u + t_j).
#[derive(Clone, Debug)]
pub struct LinearRationalFn {
    pub coef: GaussianRational,
    pub num_shifts: Vec<Rational>,
    pub den_shifts: Vec<Rational>,
}

impl LinearRationalFn {
    pub fn constant(c: GaussianRational) -> Self {
        Self { coef: c, num_shifts: vec![], den_shifts: vec![] }
    }

    /// The seed (u+4)/8 used for the four-dimensional coefficient
    /// comparisons (it clears every pole of the even recurrence).
    pub fn n4_comparison_seed() -> Self {
        Self { coef: GaussianRational::from_pair(1, 8), num_shifts: vec![rat(4, 1)], den_shifts: vec![] }
    }

    /// Multiply by -(u + a)/(u + b), cancelling matching shifts.
    fn recurrence_step(&self, a: Rational, b: Rational) -> Self {
        let mut out = self.clone();
        out.coef = -out.coef;
        if let Some(pos) = out.den_shifts.iter().position(|s| *s == a) {
            out.den_shifts.remove(pos);
        } else {
            out.num_shifts.push(a);
        }
        if let Some(pos) = out.num_shifts.iter().position(|s| *s == b) {
            out.num_shifts.remove(pos);
        } else {
            out.den_shifts.push(b);
        }
        out
    }

    pub fn eval(&self, u: &GaussianRational) -> Result<GaussianRational, CheckError> {
        let mut acc = self.coef.clone();
        for s in &self.num_shifts {
            acc = &acc * &(u + &GaussianRational::from_rational(s.clone()));
        }
        for t in &self.den_shifts {
            let f = u + &GaussianRational::from_rational(t.clone());
            if f.is_zero() {
                return Err(CheckError::Pole {
                    k: 0,
                    detail: format!("denominator factor u + {t} vanishes at u = {u}"),
                });
            }
            acc = &acc / &f;
        }
        Ok(acc)
    }

    fn sort_key(v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        v.sort();
        v
    }

    /// Equality as rational functions (factored forms up to ordering).
    pub fn same_function(&self, other: &Self) -> bool {
        self.coef == other.coef
            && Self::sort_key(&self.num_shifts) == Self::sort_key(&other.num_shifts)
            && Self::sort_key(&self.den_shifts) == Self::sort_key(&other.den_shifts)
    }

    fn mul_linear(&self, shift: Rational) -> Self {
        let mut out = self.clone();
        if let Some(pos) = out.den_shifts.iter().position(|s| *s == shift) {
            out.den_shifts.remove(pos);
        } else {
            out.num_shifts.push(shift);
        }
        out
    }

    fn negated(&self) -> Self {
        let mut out = self.clone();
        out.coef = -out.coef.clone();
        out
    }
}

/// Even coefficient functions R_0, R_2, ..., R_{n+2} from the recurrence
/// R_{k+2} = -(u+k)/(u+n-k) R_k. Odd coefficients are fixed to zero.
pub fn r_coefficient_fns(n: usize, seed: &LinearRationalFn) -> Vec<(usize, LinearRationalFn)> {
    let mut out = vec![(0usize, seed.clone())];
    let mut cur = seed.clone();
    let mut k = 0usize;
    while k + 2 <= n + 2 {
        cur = cur.recurrence_step(rat(k as i64, 1), rat((n - k) as i64, 1));
        out.push((k + 2, cur.clone()));
        k += 2;
    }
    out
}

/// Evaluate the even coefficients at a rational spectral point; a pole in
/// any needed coefficient is an explicit error naming the offending k.
pub fn r_coefficients(
    n: usize,
    u: &GaussianRational,
    seed: &LinearRationalFn,
) -> Result<Vec<(usize, GaussianRational)>, CheckError> {
    let mut out = Vec::new();
    for (k, f) in r_coefficient_fns(n, seed) {
        let v = f.eval(u).map_err(|e| match e {
            CheckError::Pole { detail, .. } => CheckError::Pole { k, detail },
            other => other,
        })?;
        out.push((k, v));
    }
    Ok(out)
}

/// First bracket of the expanded RLL residual:
/// (u + n - k) R_{k+2} + (u + k) R_k = 0 identically.
pub fn check_recurrence_bracket(n: usize, seed: &LinearRationalFn) -> Result<(), CheckError> {
    let fns = r_coefficient_fns(n, seed);
    for w in fns.windows(2) {
        let (k, rk) = (&w[0].0, &w[0].1);
        let rk2 = &w[1].1;
        let lhs = rk2.mul_linear(rat((n - k) as i64, 1));
        let rhs = rk.mul_linear(rat(*k as i64, 1)).negated();
        if !lhs.same_function(&rhs) {
            return Err(CheckError::Structural(format!(
                "(u+n-k) R_{{k+2}} + (u+k) R_k does not vanish at k={k}"
            )));
        }
    }
    Ok(())
}

/// Sum over index subsets of size k of Gamma_A (x) Gamma^A (the 1/k!
/// already absorbed by summing unordered subsets).
pub fn gamma_pair_sum(enl: &EnlargedGammaBasis, k: usize) -> Result<NumMatrix, CheckError> {
    let nidx = enl.n_indices();
    let d = enl.dim();
    let mut acc = NumMatrix::zeros(d * d, d * d);
    let mut subset: Vec<usize> = (0..k).collect();
    if k > nidx {
        return Ok(acc);
    }
    loop {
        let lower = enl.antisym_product(&subset)?;
        let mut raise = 1i64;
        for &a in &subset {
            raise *= enl.metric_sign(a) as i64;
        }
        let upper = lower.scale(&GaussianRational::from_int(raise));
        acc = acc.add(&lower.kron(&upper));
        // next k-subset of 0..nidx
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(acc);
            }
            i -= 1;
            if subset[i] != i + nidx - k {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Assembled spinorial R-matrix at a rational spectral point.
pub fn assemble_r(
    enl: &EnlargedGammaBasis,
    u: &GaussianRational,
    seed: &LinearRationalFn,
) -> Result<NumMatrix, CheckError> {
    let n = enl.base.sig.n();
    let d = enl.dim();
    let mut acc = NumMatrix::zeros(d * d, d * d);
    for (k, coeff) in r_coefficients(n, u, seed)? {
        if coeff.is_zero() {
            continue;
        }
        acc = acc.add(&gamma_pair_sum(enl, k)?.scale(&coeff));
    }
    Ok(acc)
}

/// Clear denominators: scale a rational matrix to a Gaussian-integer one
/// (YBE and RLL are homogeneous in each factor's overall scale).
pub fn clear_denominators(m: &NumMatrix) -> NumMatrix {
    use num_bigint::BigInt;
    use num_traits::One;
    let mut l: BigInt = BigInt::one();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let e = &m[(r, c)];
            l = lcm(&l, e.re.denom());
            l = lcm(&l, e.im.denom());
        }
    }
    m.scale(&GaussianRational::from_rational(Rational::from(l)))
}

fn lcm(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_traits::Zero;
    if a.is_zero() || b.is_zero() {
        return num_bigint::BigInt::from(1);
    }
    (a * b / gcd(a, b)).into()
}

fn gcd(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_traits::Zero;
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
    }
    if a.sign() == num_bigint::Sign::Minus {
        -a
    } else {
        a
    }
}

/// Exact Yang-Baxter check in the braid form
/// R12(u-v) R23(u) R12(v) = R23(v) R12(u) R23(u-v).
pub fn ybe_check(
    enl: &EnlargedGammaBasis,
    u: &GaussianRational,
    v: &GaussianRational,
    seed: &LinearRationalFn,
) -> Result<(), CheckError> {
    let d = enl.dim();
    let id = NumMatrix::identity(d);
    let r_at = |w: &GaussianRational| -> Result<NumMatrix, CheckError> {
        Ok(clear_denominators(&assemble_r(enl, w, seed)?))
    };
    let r_uv = r_at(&(u - v))?;
    let r_u = r_at(u)?;
    let r_v = r_at(v)?;
    let r12 = |m: &NumMatrix| m.kron(&id);
    let r23 = |m: &NumMatrix| id.kron(m);
    let lhs = r12(&r_uv).mul(&r23(&r_u)).mul(&r12(&r_v));
    let rhs = r23(&r_v).mul(&r12(&r_u)).mul(&r23(&r_uv));
    let diff = lhs.sub(&rhs);
    if let Some((r, c)) = diff.first_nonzero() {
        return Err(CheckError::Structural(format!(
            "YBE residual nonzero at entry ({r},{c}): {}",
            diff[(r, c)]
        )));
    }
    Ok(())
}

/// Representation choices for the quantum space of the RLL relation.
pub enum RepChoice {
    /// (n+2)-dimensional defining representation.
    Defining,
    /// First-order differential operators on R^{p+1,q+1}.
    DifferentialY,
    /// Scalar conformal representation with dimension Delta.
    ScalarConformal { delta: GaussianRational },
    /// Generic four-dimensional spin representation.
    Spin4d { delta: GaussianRational, ell: Rational, elldot: Rational },
    /// The n=2 scalar representation twisted by a constant spin. A valid
    /// representation that violates the antisymmetrized-anticommutator
    /// condition (and nevertheless satisfies RLL; see tests).
    TwistedScalar2d { delta: GaussianRational, twist: GaussianRational },
    /// Deliberately invalid family: the scalar generators with the
    /// dilatation shifted by a constant, which breaks the conformal
    /// commutation relations. Used as the negative control.
    BrokenScalar { delta: GaussianRational, shift: GaussianRational },
}

/// T'(M_ab) for the defining representation: i (g e_ab - e_ba g).
pub fn defining_rep(metric: &[i8]) -> ConformalFamilyFree {
    let nn = metric.len();
    let i = GaussianRational::i();
    let metric: Vec<i8> = metric.to_vec();
    let m = move |a: usize, b: usize| -> NumMatrix {
        Matrix::from_fn(nn, nn, |r, c| {
            let mut v = GaussianRational::zero();
            if r == a && c == b {
                v = &v + &GaussianRational::from_int(metric[a] as i64);
            }
            if r == b && c == a {
                v = &v - &GaussianRational::from_int(metric[b] as i64);
            }
            &v * &i
        })
    };
    ConformalFamilyFree::Numeric(Box::new(m), nn)
}

/// A generator family M_ab over either ring, as a closure.
pub enum ConformalFamilyFree {
    Numeric(Box<dyn Fn(usize, usize) -> NumMatrix>, usize),
    Weyl(Box<dyn Fn(usize, usize) -> WeylElement>, SpaceRef),
}

/// T'(M_ab) = i (y_a d_b - y_b d_a) on the enlarged coordinates.
pub fn differential_y_rep(metric: &[i8]) -> ConformalFamilyFree {
    let names: Vec<String> = (0..metric.len()).map(|a| format!("y{a}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let space = VariableSpace::with_metric(&refs, metric);
    let metric: Vec<i8> = metric.to_vec();
    let sp = space.clone();
    let m = move |a: usize, b: usize| -> WeylElement {
        let ya = WeylElement::coord(&sp, a).scale(&GaussianRational::from_int(metric[a] as i64));
        let yb = WeylElement::coord(&sp, b).scale(&GaussianRational::from_int(metric[b] as i64));
        let da = WeylElement::deriv(&sp, a);
        let db = WeylElement::deriv(&sp, b);
        ya.mul(&db).sub(&yb.mul(&da)).scale(&GaussianRational::i())
    };
    ConformalFamilyFree::Weyl(Box::new(m), space)
}

/// T'(M_ab) for the conformal differential representations, through the
/// standard dictionary.
pub fn conformal_rep(params: &RepParams) -> Result<ConformalFamilyFree, CheckError> {
    let r = rho(params)?;
    let space = r.space.clone();
    let fam = r.fam;
    let m = move |a: usize, b: usize| -> WeylElement { family_m(&fam)(a, b) };
    Ok(ConformalFamilyFree::Weyl(Box::new(m), space))
}

/// L(u) = u I + (1/2) T(M_ab) (x) T'(M^{ab}) with T the spinor
/// representation, for a ring-valued quantum representation.
pub fn build_l_weyl(
    enl: &EnlargedGammaBasis,
    space: &SpaceRef,
    tprime: &dyn Fn(usize, usize) -> WeylElement,
    u: &GaussianRational,
) -> Matrix<WeylElement> {
    let d = enl.dim();
    let nidx = enl.n_indices();
    let mut acc = weyl_identity(space, d).scale(u);
    for a in 0..nidx {
        for b in (a + 1)..nidx {
            let raise =
                GaussianRational::from_int((enl.metric_sign(a) * enl.metric_sign(b)) as i64);
            let t = enl.spin_generator(a, b);
            let w = tprime(a, b).scale(&raise);
            acc = acc.add(&Matrix::from_fn(d, d, |r, c| w.scale(&t[(r, c)])));
        }
    }
    acc
}

/// Same, numeric quantum space of dimension m: L acts on V (x) V'.
pub fn build_l_numeric(
    enl: &EnlargedGammaBasis,
    tprime: &dyn Fn(usize, usize) -> NumMatrix,
    qdim: usize,
    u: &GaussianRational,
) -> NumMatrix {
    let d = enl.dim();
    let nidx = enl.n_indices();
    let mut acc = NumMatrix::identity(d * qdim).scale(u);
    for a in 0..nidx {
        for b in (a + 1)..nidx {
            let raise =
                GaussianRational::from_int((enl.metric_sign(a) * enl.metric_sign(b)) as i64);
            let t = enl.spin_generator(a, b);
            acc = acc.add(&t.kron(&tprime(a, b).scale(&raise)));
        }
    }
    acc
}

/// Embed a d x d ring-valued L acting on (auxiliary, quantum) into spaces
/// (1,3) of V (x) V (x) quantum.
fn embed13<R: RingElem>(l: &Matrix<R>, d: usize, zero: &R) -> Matrix<R> {
    Matrix::from_fn(d * d, d * d, |row, col| {
        let (i, j) = (row / d, row % d);
        let (ip, jp) = (col / d, col % d);
        if j == jp {
            l[(i, ip)].clone()
        } else {
            zero.clone()
        }
    })
}

fn embed23<R: RingElem>(l: &Matrix<R>, d: usize, zero: &R) -> Matrix<R> {
    Matrix::from_fn(d * d, d * d, |row, col| {
        let (i, j) = (row / d, row % d);
        let (ip, jp) = (col / d, col % d);
        if i == ip {
            l[(j, jp)].clone()
        } else {
            zero.clone()
        }
    })
}

/// Embed a (d*m) x (d*m) numeric L acting on (auxiliary, quantum) into
/// (1,3) of V(d) (x) V(d) (x) V'(m).
fn embed13_q(l: &NumMatrix, d: usize, m: usize) -> NumMatrix {
    Matrix::from_fn(d * d * m, d * d * m, |row, col| {
        let (ij, k) = (row / m, row % m);
        let (i, j) = (ij / d, ij % d);
        let (ipjp, kp) = (col / m, col % m);
        let (ip, jp) = (ipjp / d, ipjp % d);
        if j == jp {
            l[(i * m + k, ip * m + kp)].clone()
        } else {
            GaussianRational::zero()
        }
    })
}

fn embed23_q(l: &NumMatrix, d: usize, m: usize) -> NumMatrix {
    Matrix::from_fn(d * d * m, d * d * m, |row, col| {
        let (ij, k) = (row / m, row % m);
        let (i, j) = (ij / d, ij % d);
        let (ipjp, kp) = (col / m, col % m);
        let (ip, jp) = (ipjp / d, ipjp % d);
        if i == ip {
            l[(j * m + k, jp * m + kp)].clone()
        } else {
            GaussianRational::zero()
        }
    })
}

/// RLL residual over a ring quantum space:
/// R12(u-v) L13(u) L23(v) - L13(v) L23(u) R12(u-v).
pub fn rll_residual_weyl(
    r12: &NumMatrix,
    space: &SpaceRef,
    lu: &Matrix<WeylElement>,
    lv: &Matrix<WeylElement>,
) -> Matrix<WeylElement> {
    let d = lu.rows();
    let zero = WeylElement::zero(space);
    let l13u = embed13(lu, d, &zero);
    let l23v = embed23(lv, d, &zero);
    let l13v = embed13(lv, d, &zero);
    let l23u = embed23(lu, d, &zero);
    let rw = lift_matrix(space, r12);
    rw.mul(&l13u).mul(&l23v).sub(&l13v.mul(&l23u).mul(&rw))
}

/// RLL residual for a numeric quantum space of dimension m.
pub fn rll_residual_numeric(r12: &NumMatrix, lu: &NumMatrix, lv: &NumMatrix, d: usize, m: usize) -> NumMatrix {
    let r_full = r12.kron(&NumMatrix::identity(m));
    let l13u = embed13_q(lu, d, m);
    let l23v = embed23_q(lv, d, m);
    let l13v = embed13_q(lv, d, m);
    let l23u = embed23_q(lu, d, m);
    r_full.mul(&l13u).mul(&l23v).sub(&l13v.mul(&l23u).mul(&r_full))
}

/// The full RLL check with the spinorial R-matrix.
pub fn rll_check(
    enl: &EnlargedGammaBasis,
    rep: &RepChoice,
    u: &GaussianRational,
    v: &GaussianRational,
    seed: &LinearRationalFn,
) -> Result<(), CheckError> {
    let d = enl.dim();
    let r12 = clear_denominators(&assemble_r(enl, &(u - v), seed)?);
    let fam = rep_family(enl, rep)?;
    match fam {
        ConformalFamilyFree::Numeric(m, qdim) => {
            let lu = build_l_numeric(enl, &*m, qdim, u);
            let lv = build_l_numeric(enl, &*m, qdim, v);
            let diff = rll_residual_numeric(&r12, &lu, &lv, d, qdim);
            if let Some((r, c)) = diff.first_nonzero() {
                return Err(CheckError::Structural(format!(
                    "RLL residual nonzero at ({r},{c}): {}",
                    diff[(r, c)]
                )));
            }
        }
        ConformalFamilyFree::Weyl(m, space) => {
            let lu = build_l_weyl(enl, &space, &*m, u);
            let lv = build_l_weyl(enl, &space, &*m, v);
            let diff = rll_residual_weyl(&r12, &space, &lu, &lv);
            if let Some((r, c)) = diff.first_nonzero() {
                return Err(CheckError::Structural(format!(
                    "RLL residual nonzero at ({r},{c}): {}",
                    diff[(r, c)]
                )));
            }
        }
    }
    Ok(())
}

/// RLL probe with two different scalar dimensions on the shared quantum
/// space: L13 carries delta1, L23 carries delta2. (Both L-operators act on
/// the same function space, so this is only an identity when the two
/// representations coincide; exposed to document that fact exactly.)
pub fn rll_check_mixed_scalar(
    enl: &EnlargedGammaBasis,
    delta1: &GaussianRational,
    delta2: &GaussianRational,
    u: &GaussianRational,
    v: &GaussianRational,
    seed: &LinearRationalFn,
) -> Result<(), CheckError> {
    let r12 = clear_denominators(&assemble_r(enl, &(u - v), seed)?);
    let sig = enl.base.sig;
    let ConformalFamilyFree::Weyl(m1, space) =
        conformal_rep(&RepParams::scalar(sig, delta1.clone()))?
    else {
        unreachable!()
    };
    let ConformalFamilyFree::Weyl(m2, space2) =
        conformal_rep(&RepParams::scalar(sig, delta2.clone()))?
    else {
        unreachable!()
    };
    let m2_in_space: Box<dyn Fn(usize, usize) -> WeylElement> = Box::new(move |a, b| {
        let _ = &space2;
        m2(a, b)
    });
    let d = enl.dim();
    let zero = WeylElement::zero(&space);
    let lu = build_l_weyl(enl, &space, &*m1, u);
    let lv = build_l_weyl(enl, &space, &*m2_in_space, v);
    let lup = build_l_weyl(enl, &space, &*m1, v);
    let lvp = build_l_weyl(enl, &space, &*m2_in_space, u);
    let l13u = embed13(&lu, d, &zero);
    let l23v = embed23(&lv, d, &zero);
    let l13v = embed13(&lup, d, &zero);
    let l23u = embed23(&lvp, d, &zero);
    let rw = lift_matrix(&space, &r12);
    let diff = rw.mul(&l13u).mul(&l23v).sub(&l13v.mul(&l23u).mul(&rw));
    if let Some((r, c)) = diff.first_nonzero() {
        return Err(CheckError::Structural(format!(
            "mixed-delta RLL residual nonzero at ({r},{c})"
        )));
    }
    Ok(())
}

/// Public access to the generator family of a representation choice (used
/// by the asym scenario and the negative control).
pub fn rep_family_public(
    enl: &EnlargedGammaBasis,
    rep: &RepChoice,
) -> Result<ConformalFamilyFree, CheckError> {
    rep_family(enl, rep)
}

fn rep_family(enl: &EnlargedGammaBasis, rep: &RepChoice) -> Result<ConformalFamilyFree, CheckError> {
    let sig = enl.base.sig;
    match rep {
        RepChoice::Defining => Ok(defining_rep(&enl.metric)),
        RepChoice::DifferentialY => Ok(differential_y_rep(&enl.metric)),
        RepChoice::ScalarConformal { delta } => conformal_rep(&RepParams::scalar(sig, delta.clone())),
        RepChoice::Spin4d { delta, ell, elldot } => {
            conformal_rep(&RepParams::spin4d(sig, delta.clone(), ell.clone(), elldot.clone())?)
        }
        RepChoice::TwistedScalar2d { delta, twist } => {
            conformal_rep(&RepParams::twisted2d(sig, delta.clone(), twist.clone())?)
        }
        RepChoice::BrokenScalar { delta, shift } => {
            let r = rho(&RepParams::scalar(sig, delta.clone()))?;
            let space = r.space.clone();
            let mut fam = r.fam;
            fam.d = fam.d.add(&WeylElement::scalar(&space, shift.clone()));
            let m = move |a: usize, b: usize| -> WeylElement { family_m(&fam)(a, b) };
            Ok(ConformalFamilyFree::Weyl(Box::new(m), space))
        }
    }
}

/// RLL with the Yang matrix I + u P on the minus Weyl projection: L is the
/// 2^{n/2}-dimensional conformal L-operator.
pub fn rll_yang_weyl(
    space: &SpaceRef,
    lu: &Matrix<WeylElement>,
    lv: &Matrix<WeylElement>,
    u: &GaussianRational,
    v: &GaussianRational,
) -> Result<(), CheckError> {
    let d = lu.rows();
    let r12 = NumMatrix::identity(d * d).add(&NumMatrix::permutation(d).scale(&(u - v)));
    let diff = rll_residual_weyl(&r12, space, lu, lv);
    if let Some((r, c)) = diff.first_nonzero() {
        return Err(CheckError::Structural(format!(
            "Yang RLL residual nonzero at ({r},{c}): {}",
            diff[(r, c)]
        )));
    }
    Ok(())
}

/// Antisymmetrized-anticommutator condition T'({M_[ab, M_c]d}) = 0.
/// Returns the offending index quadruple when it fails.
pub fn asym_condition(fam: &ConformalFamilyFree, nidx: usize) -> Result<(), (usize, usize, usize, usize)> {
    match fam {
        ConformalFamilyFree::Numeric(m, _) => asym_generic(&|a, b| m(a, b), nidx),
        ConformalFamilyFree::Weyl(m, _) => asym_generic(&|a, b| m(a, b), nidx),
    }
}

fn asym_generic<R: RingElem>(
    m: &dyn Fn(usize, usize) -> R,
    nidx: usize,
) -> Result<(), (usize, usize, usize, usize)> {
    for a in 0..nidx {
        for b in (a + 1)..nidx {
            for c in (b + 1)..nidx {
                for d in 0..nidx {
                    // sum over the 6 permutations of (a,b,c) with parity
                    let perms: [(usize, usize, usize, i64); 6] = [
                        (a, b, c, 1),
                        (b, c, a, 1),
                        (c, a, b, 1),
                        (b, a, c, -1),
                        (a, c, b, -1),
                        (c, b, a, -1),
                    ];
                    let mut acc: Option<R> = None;
                    for (x, y, z, s) in perms {
                        let term = m(x, y)
                            .r_mul(&m(z, d))
                            .r_add(&m(z, d).r_mul(&m(x, y)))
                            .scale(&GaussianRational::from_int(s));
                        acc = Some(match acc {
                            Some(v) => v.r_add(&term),
                            None => term,
                        });
                    }
                    if !acc.unwrap().r_is_zero() {
                        return Err((a, b, c, d));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The four identities displayed for the scalar conformal representation,
/// in the conformal basis (nontrivial only for n = 4).
pub fn scalar_conformal_asym_identities(params: &RepParams) -> Result<(), CheckError> {
    let r = rho(params)?;
    let n = params.n();
    let anti = |x: &WeylElement, y: &WeylElement| x.anticommutator(y);
    // {L_[mu nu, L_la] si} = 0 ; {L_[mu nu, P_la]} = 0 ; {L_[mu nu, K_la]} = 0
    for mu in 0..n {
        for nu in 0..n {
            for la in 0..n {
                let cyc = |f: &dyn Fn(usize, usize) -> WeylElement| {
                    f(mu, nu).add(&f(nu, la)).add(&f(la, mu))
                };
                let with_p = cyc(&|x, y| {
                    let z = third(x, y, mu, nu, la);
                    anti(&r.fam.l[x][y], &r.fam.p[z])
                });
                if !with_p.is_zero() {
                    return Err(CheckError::Structural("{L_[mn, P_l]} != 0".into()));
                }
                let with_k = cyc(&|x, y| {
                    let z = third(x, y, mu, nu, la);
                    anti(&r.fam.l[x][y], &r.fam.k[z])
                });
                if !with_k.is_zero() {
                    return Err(CheckError::Structural("{L_[mn, K_l]} != 0".into()));
                }
                for si in 0..n {
                    let with_l = cyc(&|x, y| {
                        let z = third(x, y, mu, nu, la);
                        anti(&r.fam.l[x][y], &r.fam.l[z][si])
                    });
                    if !with_l.is_zero() {
                        return Err(CheckError::Structural("{L_[mn, L_l]s} != 0".into()));
                    }
                }
            }
            // {L_mn, D} + (1/2){K_m, P_n} - (1/2){K_n, P_m} = 0
            let half = GaussianRational::from_pair(1, 2);
            let combo = anti(&r.fam.l[mu][nu], &r.fam.d)
                .add(&anti(&r.fam.k[mu], &r.fam.p[nu]).scale(&half))
                .sub(&anti(&r.fam.k[nu], &r.fam.p[mu]).scale(&half));
            if !combo.is_zero() {
                return Err(CheckError::Structural("{L,D} + (1/2){K,P} antisym != 0".into()));
            }
        }
    }
    Ok(())
}

fn third(x: usize, y: usize, mu: usize, nu: usize, la: usize) -> usize {
    // the member of {mu, nu, la} not in {x, y} for the cyclic sum
    if (x, y) == (mu, nu) {
        la
    } else if (x, y) == (nu, la) {
        mu
    } else {
        nu
    }
}

/// Report of the Weyl projection of the four-dimensional R-matrix.
pub struct WeylProjectionReport {
    pub minus_matches_yang: bool,
    pub plus_matches_yang: bool,
    pub cross_projections_vanish: bool,
    pub vanishing_combinations_hold: bool,
    pub gamma2_projection_is_permutation: bool,
}

/// Projection of a V (x) V operator onto the eps1/eps2 chirality blocks
/// (eps = +1 selects the upper half, -1 the lower half).
fn project(m: &NumMatrix, d: usize, eps1: i8, eps2: i8) -> NumMatrix {
    let h = d / 2;
    let off = |e: i8| if e > 0 { 0 } else { h };
    let (o1, o2) = (off(eps1), off(eps2));
    Matrix::from_fn(h * h, h * h, |row, col| {
        let (i, j) = (row / h, row % h);
        let (ip, jp) = (col / h, col % h);
        m[((i + o1) * d + (j + o2), (ip + o1) * d + (jp + o2))].clone()
    })
}

pub fn weyl_projection_check(u: &GaussianRational) -> Result<WeylProjectionReport, CheckError> {
    let base = GammaBasis::build(Signature::new(4, 0))?;
    let enl = EnlargedGammaBasis::enlarge(&base)?;
    let d = enl.dim();
    let h = d / 2;
    let seed = LinearRationalFn::n4_comparison_seed();
    let r = assemble_r(&enl, u, &seed)?;
    let yang = NumMatrix::identity(h * h).add(&NumMatrix::permutation(h).scale(u));
    let minus_matches_yang = project(&r, d, -1, -1) == yang;
    let plus_matches_yang = project(&r, d, 1, 1) == yang;
    let cross_projections_vanish =
        project(&r, d, 1, -1).is_zero() && project(&r, d, -1, 1).is_zero();

    // Vanishing combinations of the plain gamma-pair sums.
    let s0 = gamma_pair_sum(&enl, 0)?;
    let s2 = gamma_pair_sum(&enl, 2)?;
    let s4 = gamma_pair_sum(&enl, 4)?;
    let s6 = gamma_pair_sum(&enl, 6)?;
    let pm = |m: &NumMatrix| project(m, d, 1, -1);
    let mm = |m: &NumMatrix| project(m, d, -1, -1);
    let vanishing_combinations_hold = pm(&s0.sub(&s6)).is_zero()
        && pm(&s2.sub(&s4)).is_zero()
        && mm(&s0.add(&s6)).is_zero()
        && mm(&s2.add(&s4)).is_zero();

    // -(1/8) Gamma_ab (x) Gamma^ab restricted to minus-minus equals
    // P - (1/4) I. The display sums over ordered index pairs, which is
    // twice the subset sum.
    let lhs = mm(&s2.scale(&GaussianRational::from_pair(-1, 4)));
    let rhs = NumMatrix::permutation(h)
        .sub(&NumMatrix::identity(h * h).scale(&GaussianRational::from_pair(1, 4)));
    let gamma2_projection_is_permutation = lhs == rhs;

    if !(minus_matches_yang && plus_matches_yang && cross_projections_vanish && vanishing_combinations_hold && gamma2_projection_is_permutation)
    {
        return Err(CheckError::Structural(format!(
            "Weyl projection failed: minus={minus_matches_yang} plus={plus_matches_yang} cross={cross_projections_vanish} combos={vanishing_combinations_hold} perm={gamma2_projection_is_permutation}"
        )));
    }
    Ok(WeylProjectionReport {
        minus_matches_yang,
        plus_matches_yang,
        cross_projections_vanish,
        vanishing_combinations_hold,
        gamma2_projection_is_permutation,
    })
}

/// Crossing symmetry: L^T(u) C L(u + n/2) = (u u' - (1/4) T'(C_2)) C for the
/// differential-y representation, plus the block version by the parity of
/// (n+2)(n+1)/2.
pub struct CrossingReport {
    pub full_identity: bool,
    pub block_identity: bool,
    pub parity_even: bool,
}

pub fn crossing_check(n: usize, u: &GaussianRational) -> Result<CrossingReport, CheckError> {
    let base = GammaBasis::build(Signature::new(n, 0))?;
    let enl = EnlargedGammaBasis::enlarge(&base)?;
    let d = enl.dim();
    let fam = differential_y_rep(&enl.metric);
    let ConformalFamilyFree::Weyl(m, space) = fam else { unreachable!() };
    let u_prime = u + &GaussianRational::from_rational(rat(n as i64, 2));
    let lu = build_l_weyl(&enl, &space, &*m, u);
    let lup = build_l_weyl(&enl, &space, &*m, &u_prime);
    let c_big = crate::clifford::find_transpose_intertwiner(&enl.gammas)?;
    let cw = lift_matrix(&space, &c_big.c);
    let lhs = lu.transpose().mul(&cw).mul(&lup);
    // z(u) = u u' - (1/4) T'(C_2), with T'(C_2) = (1/2) T'(M_ab) T'(M^{ab}).
    let mut cas = WeylElement::zero(&space);
    for a in 0..n + 2 {
        for b in 0..n + 2 {
            let raise = GaussianRational::from_int((enl.metric_sign(a) * enl.metric_sign(b)) as i64);
            cas = cas.add(&m(a, b).mul(&m(a, b).scale(&raise)));
        }
    }
    let half = GaussianRational::from_pair(1, 2);
    let cas = cas.scale(&half);
    let z = WeylElement::scalar(&space, u * &u_prime)
        .sub(&cas.scale(&GaussianRational::from_pair(1, 4)));
    let rhs = Matrix::from_fn(d, d, |r, c| z.scale(&c_big.c[(r, c)]));
    let full_identity = lhs == rhs;

    // Block version.
    let h = d / 2;
    let parity_even = ((n + 2) * (n + 1) / 2) % 2 == 0;
    let blk = |mt: &Matrix<WeylElement>, r0: usize, c0: usize| {
        Matrix::from_fn(h, h, |r, c| mt[(r + r0, c + c0)].clone())
    };
    let l_plus_u = blk(&lu, 0, 0);
    let l_minus_u = blk(&lu, h, h);
    let l_plus_up = blk(&lup, 0, 0);
    let l_minus_up = blk(&lup, h, h);
    let inner = lift_matrix(&space, &c_big.inner_block);
    let zc = Matrix::from_fn(h, h, |r, c| z.scale(&c_big.inner_block[(r, c)]));
    let block_identity = if parity_even {
        l_plus_u.transpose().mul(&inner).mul(&l_plus_up) == zc
            && l_minus_u.transpose().mul(&inner).mul(&l_minus_up) == zc
    } else {
        l_plus_u.transpose().mul(&inner).mul(&l_minus_up) == zc
    };

    if !full_identity || !block_identity {
        return Err(CheckError::Structural(format!(
            "crossing failed: full={full_identity} block={block_identity} parity_even={parity_even}"
        )));
    }
    Ok(CrossingReport { full_identity, block_identity, parity_even })
}

/// Permutation-operator identity from its closed-form expansion. Both sign
/// conventions for the odd sector are tried; the one satisfying the defining
/// relation P (I (x) G_a) = (G_a (x) I) P is reported, along with the scalar
/// normalization making P^2 = I.
pub struct PermutationReport {
    /// True when the alternating-sign (graded, decoded) convention passes.
    pub graded_convention: bool,
    pub normalization: GaussianRational,
    pub equals_swap: bool,
}

pub fn permutation_identity_check(n: usize) -> Result<PermutationReport, CheckError> {
    let base = GammaBasis::build(Signature::new(n, 0))?;
    let enl = EnlargedGammaBasis::enlarge(&base)?;
    let d = enl.dim();
    let build = |use_sk: bool| -> Result<NumMatrix, CheckError> {
        let mut acc = NumMatrix::zeros(d * d, d * d);
        for k in 0..=n + 2 {
            let sk = if use_sk && (k * (k.max(1) - 1) / 2) % 2 == 1 { -1i64 } else { 1 };
            acc = acc.add(&gamma_pair_sum(&enl, k)?.scale(&GaussianRational::from_int(sk)));
        }
        Ok(acc)
    };
    let defining_holds = |p: &NumMatrix| -> bool {
        let id = NumMatrix::identity(d);
        enl.gammas.iter().all(|g| p.mul(&id.kron(g)) == g.kron(&id).mul(p))
    };
    let p_graded = build(true)?;
    let p_plain = build(false)?;
    let (p, graded_convention) = if defining_holds(&p_graded) {
        (p_graded, true)
    } else if defining_holds(&p_plain) {
        (p_plain, false)
    } else {
        return Err(CheckError::Structural(
            "neither tensor convention satisfies the defining permutation relation".into(),
        ));
    };
    // P^2 = lambda I with lambda = d^2; normalize by 1/d.
    let p2 = p.mul(&p);
    let lambda = p2[(0, 0)].clone();
    if p2 != NumMatrix::identity(d * d).scale(&lambda) {
        return Err(CheckError::Structural("P^2 is not a multiple of the identity".into()));
    }
    let dd = GaussianRational::from_int(d as i64);
    if lambda != &dd * &dd {
        return Err(CheckError::Structural(format!("P^2 = {lambda} I, expected d^2")));
    }
    let normalized = p.scale(&dd.inv());
    let equals_swap = normalized == NumMatrix::permutation(d);
    if normalized.mul(&normalized) != NumMatrix::identity(d * d) {
        return Err(CheckError::Structural("normalized P does not square to I".into()));
    }
    Ok(PermutationReport { graded_convention, normalization: dd.inv(), equals_swap })
}

/// Polarized-Casimir identity [r12 + r13, r23] = 0.
pub fn split_casimir_check_sln(nmat: usize) -> Result<(), CheckError> {
    // r = sum e_ij (x) e_ji = P in the defining (x) defining realization.
    let p = NumMatrix::permutation(nmat);
    triple_bracket_check(&p, nmat)
}

pub fn split_casimir_check_so_spinor(n: usize) -> Result<(), CheckError> {
    let base = GammaBasis::build(Signature::new(n, 0))?;
    let enl = EnlargedGammaBasis::enlarge(&base)?;
    let d = enl.dim();
    let mut r = NumMatrix::zeros(d * d, d * d);
    for a in 0..n + 2 {
        for b in (a + 1)..n + 2 {
            let raise = GaussianRational::from_int((enl.metric_sign(a) * enl.metric_sign(b)) as i64);
            let t = enl.spin_generator(a, b);
            r = r.add(&t.kron(&t.scale(&raise)));
        }
    }
    triple_bracket_check(&r, d)
}

fn triple_bracket_check(r: &NumMatrix, d: usize) -> Result<(), CheckError> {
    let id = NumMatrix::identity(d);
    let r12 = r.kron(&id);
    let r23 = id.kron(r);
    // r13 = (P (x) I)(I (x) r)(P (x) I) with P the swap of spaces 1,2.
    let p12 = NumMatrix::permutation(d).kron(&id);
    let r13 = p12.mul(&r23).mul(&p12);
    let lhs = r12.add(&r13).commutator(&r23);
    if !lhs.is_zero() {
        return Err(CheckError::Structural("[r12 + r13, r23] != 0".into()));
    }
    Ok(())
}

/// The mechanism behind representation-independent four-dimensional RLL:
/// Y^{bc} = sum_a {M^{ab}, M^{c}_a} is symmetric in (b, c) as an algebra
/// identity, so its contraction with the antisymmetric Gamma_{bc} dies.
/// This verifies the antisymmetric part of Y vanishes exactly.
pub fn symmetric_pair_contraction_check(
    fam: &ConformalFamilyFree,
    metric: &[i8],
) -> Result<(), (usize, usize)> {
    match fam {
        ConformalFamilyFree::Numeric(m, _) => q_tensor_zero(&|a, b| m(a, b), metric),
        ConformalFamilyFree::Weyl(m, _) => q_tensor_zero(&|a, b| m(a, b), metric),
    }
}

fn q_tensor_zero<R: RingElem>(
    m: &dyn Fn(usize, usize) -> R,
    metric: &[i8],
) -> Result<(), (usize, usize)> {
    let nidx = metric.len();
    let up = |a: usize| metric[a] as i64;
    for b in 0..nidx {
        for c in 0..nidx {
            let mut acc: Option<R> = None;
            for a in 0..nidx {
                // {M^{ab}, M^{c}_a} - (b <-> c)
                let m_ab = m(a, b).scale(&GaussianRational::from_int(up(a) * up(b)));
                let m_ca = m(c, a).scale(&GaussianRational::from_int(up(c)));
                let t1 = m_ab.r_mul(&m_ca).r_add(&m_ca.r_mul(&m_ab));
                let m_ac = m(a, c).scale(&GaussianRational::from_int(up(a) * up(c)));
                let m_ba = m(b, a).scale(&GaussianRational::from_int(up(b)));
                let t2 = m_ac.r_mul(&m_ba).r_add(&m_ba.r_mul(&m_ac));
                let term = t1.r_sub(&t2);
                acc = Some(match acc {
                    Some(v) => v.r_add(&term),
                    None => term,
                });
            }
            if !acc.unwrap().r_is_zero() {
                return Err((b, c));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    fn enlarged(n: usize) -> EnlargedGammaBasis {
        EnlargedGammaBasis::enlarge(&GammaBasis::build(Signature::new(n, 0)).unwrap()).unwrap()
    }

    #[test]
    fn coefficients_n4_comparison_seed() {
        let seed = LinearRationalFn::n4_comparison_seed();
        let mut rng = SeededRng::new(1);
        for _ in 0..5 {
            let u = rng.gaussian_rational(9, 7);
            let eighth = GaussianRational::from_pair(1, 8);
            let coeffs = r_coefficients(4, &u, &seed).unwrap();
            let expect: Vec<GaussianRational> = vec![
                &(&u + &GaussianRational::from_int(4)) * &eighth,
                -&u * &eighth,
                &u * &eighth,
                -&(&u + &GaussianRational::from_int(4)) * &eighth,
            ];
            for ((k, got), want) in coeffs.iter().zip(&expect) {
                assert_eq!(got, want, "k={k} u={u}");
            }
        }
    }

    #[test]
    fn coefficient_k0_step_and_u_zero() {
        // R_2 = -u/(u+n) R_0 for the constant seed.
        let seed = LinearRationalFn::constant(GaussianRational::one());
        let u = GaussianRational::from_pair(3, 5);
        let c = r_coefficients(2, &u, &seed).unwrap();
        let expect = -&u / &(&u + &GaussianRational::from_int(2));
        assert_eq!(c[1].1, expect);
        // u = 0 with the n=4 comparison seed: (1/2, 0, 0, -1/2).
        let c = r_coefficients(4, &GaussianRational::zero(), &LinearRationalFn::n4_comparison_seed()).unwrap();
        let vals: Vec<GaussianRational> = c.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(
            vals,
            vec![
                GaussianRational::from_pair(1, 2),
                GaussianRational::zero(),
                GaussianRational::zero(),
                GaussianRational::from_pair(-1, 2)
            ]
        );
    }

    #[test]
    fn pole_reported_with_offending_k() {
        let seed = LinearRationalFn::constant(GaussianRational::one());
        // n=2: poles at u = -2 (from the k=0 step).
        let err = r_coefficients(2, &GaussianRational::from_int(-2), &seed).unwrap_err();
        match err {
            CheckError::Pole { k, .. } => assert_eq!(k, 2),
            other => panic!("expected pole, got {other}"),
        }
    }

    #[test]
    fn recurrence_bracket_vanishes_symbolically() {
        for n in [2usize, 4, 6] {
            check_recurrence_bracket(n, &LinearRationalFn::constant(GaussianRational::one())).unwrap();
            check_recurrence_bracket(n, &LinearRationalFn::n4_comparison_seed()).unwrap();
        }
    }

    #[test]
    fn ybe_n2_exact() {
        let enl = enlarged(2);
        let seed = LinearRationalFn::constant(GaussianRational::one());
        let pts = [
            (rat(1, 2), rat(1, 3)),
            (rat(2, 7), rat(-3, 5)),
            (rat(1, 4), rat(1, 4)), // u = v degenerate input
        ];
        for (u, v) in pts {
            ybe_check(
                &enl,
                &GaussianRational::from_rational(u),
                &GaussianRational::from_rational(v),
                &seed,
            )
            .unwrap();
        }
    }

    #[test]
    fn n6_basis_and_assembly() {
        // n = 6 is excluded from default suites for runtime but must stay
        // available: the basis builds, the coefficient list truncates at
        // k = n + 2, and the 256-dimensional R-matrix assembles.
        let enl = enlarged(6);
        assert_eq!(enl.dim(), 16);
        let seed = LinearRationalFn::constant(GaussianRational::one());
        let coeffs = r_coefficients(6, &GaussianRational::from_pair(1, 3), &seed).unwrap();
        assert_eq!(coeffs.last().unwrap().0, 8);
        let r = assemble_r(&enl, &GaussianRational::from_pair(1, 3), &seed).unwrap();
        assert_eq!(r.rows(), 256);
    }

    #[test]
    fn rll_defining_n2() {
        let enl = enlarged(2);
        let seed = LinearRationalFn::constant(GaussianRational::one());
        rll_check(
            &enl,
            &RepChoice::Defining,
            &GaussianRational::from_pair(2, 3),
            &GaussianRational::from_pair(-1, 5),
            &seed,
        )
        .unwrap();
    }

    #[test]
    fn rll_scalar_conformal_n2() {
        let enl = enlarged(2);
        let seed = LinearRationalFn::constant(GaussianRational::one());
        rll_check(
            &enl,
            &RepChoice::ScalarConformal { delta: GaussianRational::from_pair(5, 2) },
            &GaussianRational::from_pair(1, 3),
            &GaussianRational::from_pair(2, 5),
            &seed,
        )
        .unwrap();
    }

    #[test]
    fn rll_differential_y_n2() {
        let enl = enlarged(2);
        let seed = LinearRationalFn::constant(GaussianRational::one());
        rll_check(
            &enl,
            &RepChoice::DifferentialY,
            &GaussianRational::from_pair(3, 4),
            &GaussianRational::from_pair(-1, 3),
            &seed,
        )
        .unwrap();
    }

    #[test]
    fn rll_twisted_rep_passes_despite_asym_failure() {
        // The constant-spin twist violates the antisymmetrized
        // anticommutator condition, yet the n=2 RLL relation still holds:
        // only an epsilon-contraction of that tensor enters the expanded
        // residual, and it vanishes here. Pin both facts.
        let enl = enlarged(2);
        let seed = LinearRationalFn::constant(GaussianRational::one());
        let rep = RepChoice::TwistedScalar2d {
            delta: GaussianRational::from_pair(5, 2),
            twist: GaussianRational::from_pair(1, 3),
        };
        let fam = conformal_rep(
            &RepParams::twisted2d(
                Signature::new(2, 0),
                GaussianRational::from_pair(5, 2),
                GaussianRational::from_pair(1, 3),
            )
            .unwrap(),
        )
        .unwrap();
        assert!(asym_condition(&fam, 4).is_err());
        for (u, v) in [(rat(1, 3), rat(2, 5)), (rat(-2, 7), rat(1, 2))] {
            rll_check(
                &enl,
                &rep,
                &GaussianRational::from_rational(u),
                &GaussianRational::from_rational(v),
                &seed,
            )
            .unwrap();
        }
    }

    #[test]
    fn rll_broken_control_fails() {
        // The negative control: shifting the dilatation by a constant breaks
        // the conformal relations, the asym condition, and the RLL relation.
        let enl = enlarged(2);
        let seed = LinearRationalFn::constant(GaussianRational::one());
        let rep = RepChoice::BrokenScalar {
            delta: GaussianRational::from_pair(5, 2),
            shift: GaussianRational::from_pair(1, 3),
        };
        let fam = rep_family(&enl, &rep).unwrap();
        assert!(asym_condition(&fam, 4).is_err(), "broken family must violate asym");
        let err = rll_check(
            &enl,
            &rep,
            &GaussianRational::from_pair(1, 3),
            &GaussianRational::from_pair(2, 5),
            &seed,
        );
        assert!(err.is_err(), "broken family must break RLL");
    }

    #[test]
    fn asym_reps_n2() {
        let enl = enlarged(2);
        let nidx = 4;
        assert!(asym_condition(&defining_rep(&enl.metric), nidx).is_ok());
        assert!(asym_condition(&differential_y_rep(&enl.metric), nidx).is_ok());
        let scalar = conformal_rep(&RepParams::scalar(Signature::new(2, 0), GaussianRational::from_pair(3, 2)))
            .unwrap();
        assert!(asym_condition(&scalar, nidx).is_ok());
        // and the twisted control violates it
        let twisted = conformal_rep(
            &RepParams::twisted2d(
                Signature::new(2, 0),
                GaussianRational::from_pair(3, 2),
                GaussianRational::from_pair(1, 3),
            )
            .unwrap(),
        )
        .unwrap();
        assert!(asym_condition(&twisted, nidx).is_err());
    }

    #[test]
    fn asym_reps_n4() {
        let enl = enlarged(4);
        let nidx = 6;
        assert!(asym_condition(&defining_rep(&enl.metric), nidx).is_ok());
        assert!(asym_condition(&differential_y_rep(&enl.metric), nidx).is_ok());
        let scalar = conformal_rep(&RepParams::scalar(Signature::new(4, 0), GaussianRational::from_pair(5, 2)))
            .unwrap();
        assert!(asym_condition(&scalar, nidx).is_ok());
        // the generic spin representation violates it (the relation survives
        // there through the four-dimensional duality mechanism instead)
        let spin = conformal_rep(
            &RepParams::spin4d(Signature::new(4, 0), GaussianRational::from_pair(3, 4), rat(1, 2), rat(1, 1))
                .unwrap(),
        )
        .unwrap();
        assert!(asym_condition(&spin, nidx).is_err());
    }

    #[test]
    fn permutation_even_sector_convention_independent() {
        // Realize the anticommuting-factor convention explicitly: the first
        // factor of a pair is G_a (x) I, the second is chirality (x) G_a
        // (which anticommutes with the first). For even k the realized
        // product of a subset equals the ordinary Kronecker term; for odd k
        // it differs by the chirality twist.
        let enl = enlarged(2);
        let d = enl.dim();
        let id = NumMatrix::identity(d);
        let g1 = |a: usize| enl.gammas[a].kron(&id);
        let g2 = |a: usize| {
            let raise = GaussianRational::from_int(enl.metric_sign(a) as i64);
            enl.chirality.kron(&enl.gammas[a].scale(&raise))
        };
        for k in 0..=4usize {
            let mut realized = NumMatrix::zeros(d * d, d * d);
            let mut subset: Vec<usize> = (0..k).collect();
            if k == 0 {
                realized = NumMatrix::identity(d * d);
            } else {
                'outer: loop {
                    let mut prod = NumMatrix::identity(d * d);
                    for &a in &subset {
                        prod = prod.mul(&g1(a));
                    }
                    for &a in &subset {
                        prod = prod.mul(&g2(a));
                    }
                    realized = realized.add(&prod);
                    let mut i = k;
                    loop {
                        if i == 0 {
                            break 'outer;
                        }
                        i -= 1;
                        if subset[i] != i + 4 - k {
                            subset[i] += 1;
                            for j in i + 1..k {
                                subset[j] = subset[j - 1] + 1;
                            }
                            break;
                        }
                    }
                }
            }
            let plain = gamma_pair_sum(&enl, k).unwrap();
            if k % 2 == 0 {
                assert_eq!(realized, plain, "even k = {k} must be convention independent");
            } else {
                assert_ne!(realized, plain, "odd k = {k} carries the chirality twist");
            }
        }
    }

    #[test]
    fn weyl_projection_points() {
        for u in [rat(0, 1), rat(1, 1), rat(3, 7)] {
            let rep = weyl_projection_check(&GaussianRational::from_rational(u)).unwrap();
            assert!(rep.minus_matches_yang);
        }
    }

    #[test]
    fn permutation_identity_n2() {
        let rep = permutation_identity_check(2).unwrap();
        assert!(rep.graded_convention);
        assert!(rep.equals_swap);
    }

    #[test]
    fn split_casimir_identities() {
        split_casimir_check_sln(2).unwrap();
        split_casimir_check_sln(4).unwrap();
        split_casimir_check_so_spinor(2).unwrap();
    }

    #[test]
    fn crossing_n2() {
        crossing_check(2, &GaussianRational::from_pair(2, 5)).unwrap();
    }

    #[test]
    fn scalar_asym_identities_all_n() {
        for sig in [Signature::new(2, 0), Signature::new(4, 0)] {
            scalar_conformal_asym_identities(&RepParams::scalar(sig, GaussianRational::from_pair(7, 3)))
                .unwrap();
        }
    }

    #[test]
    fn yang_rll_spin4d() {
        // V_minus projection: conformal L with Yang R.
        use crate::loperators::build_conformal_l;
        let params = RepParams::spin4d(
            Signature::new(4, 0),
            GaussianRational::from_pair(3, 4),
            rat(1, 2),
            rat(0, 1),
        )
        .unwrap();
        let u = GaussianRational::from_pair(2, 7);
        let v = GaussianRational::from_pair(-1, 3);
        let lu = build_conformal_l(&params, &u).unwrap();
        let lv = build_conformal_l(&params, &v).unwrap();
        rll_yang_weyl(&lu.space, &lu.direct, &lv.direct, &u, &v).unwrap();
    }
}
