//! Normal-ordered algebra of polynomial-coefficient differential operators.
//!
//! Elements are finite sums  c * x^A d^B  with all coordinates to the left of
//! all derivatives; the canonical relation [d_i, x_j] = delta_ij is realized
//! by the multiplication rule. Coefficients live in Q(i), parameters (Delta,
//! ell, u, ...) are evaluated to concrete Gaussian rationals before elements
//! are built.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::CheckError;
use crate::matrix::{Matrix, RingElem};
use crate::scalar::{GaussianRational, Rational};

pub const MAX_VARS: usize = 8;

/// Named coordinates with a diagonal metric tag per coordinate (+1/-1),
/// used when raising indices. Derivatives pair one-to-one with coordinates.
#[derive(Debug, PartialEq, Eq)]
pub struct VariableSpace {
    names: Vec<String>,
    metric: Vec<i8>,
}

pub type SpaceRef = Arc<VariableSpace>;

impl VariableSpace {
    pub fn euclidean(names: &[&str]) -> SpaceRef {
        Self::with_metric(names, &vec![1i8; names.len()])
    }

    pub fn with_metric(names: &[&str], metric: &[i8]) -> SpaceRef {
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} coordinates supported");
        assert_eq!(names.len(), metric.len());
        assert!(metric.iter().all(|&g| g == 1 || g == -1));
        Arc::new(VariableSpace { names: names.iter().map(|s| s.to_string()).collect(), metric: metric.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Metric sign g_ii of coordinate i (diagonal metric).
    pub fn metric_sign(&self, i: usize) -> i8 {
        self.metric[i]
    }

    pub fn is_euclidean(&self) -> bool {
        self.metric.iter().all(|&g| g == 1)
    }
}

type Key = (u64, u64); // packed coordinate / derivative multidegrees, 8 bits each

fn get_exp(packed: u64, i: usize) -> u32 {
    ((packed >> (8 * i)) & 0xff) as u32
}

fn set_exp(packed: u64, i: usize, v: u32) -> u64 {
    debug_assert!(v < 256, "exponent overflow");
    (packed & !(0xffu64 << (8 * i))) | ((v as u64) << (8 * i))
}

fn total_deg(packed: u64) -> u32 {
    (0..MAX_VARS).map(|i| get_exp(packed, i)).sum()
}

/// Normal-ordered element of the Weyl algebra over a [`VariableSpace`].
#[derive(Clone)]
pub struct WeylElement {
    space: SpaceRef,
    terms: BTreeMap<Key, GaussianRational>,
}

impl WeylElement {
    pub fn zero(space: &SpaceRef) -> Self {
        Self { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(space: &SpaceRef, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Self { space: space.clone(), terms }
    }

    pub fn one(space: &SpaceRef) -> Self {
        Self::scalar(space, GaussianRational::one())
    }

    /// Multiplication operator by coordinate i.
    pub fn coord(space: &SpaceRef, i: usize) -> Self {
        assert!(i < space.len());
        let mut terms = BTreeMap::new();
        terms.insert((set_exp(0, i, 1), 0), GaussianRational::one());
        Self { space: space.clone(), terms }
    }

    /// Derivative d/dx_i.
    pub fn deriv(space: &SpaceRef, i: usize) -> Self {
        assert!(i < space.len());
        let mut terms = BTreeMap::new();
        terms.insert((0, set_exp(0, i, 1)), GaussianRational::one());
        Self { space: space.clone(), terms }
    }

    /// Momentum p_i = -i d/dx_i.
    pub fn momentum(space: &SpaceRef, i: usize) -> Self {
        Self::deriv(space, i).scale(&-GaussianRational::i())
    }

    pub fn monomial(space: &SpaceRef, xexp: &[u32], dexp: &[u32], coeff: GaussianRational) -> Self {
        assert!(xexp.len() <= space.len() && dexp.len() <= space.len());
        let mut xk = 0u64;
        let mut dk = 0u64;
        for (i, &e) in xexp.iter().enumerate() {
            xk = set_exp(xk, i, e);
        }
        for (i, &e) in dexp.iter().enumerate() {
            dk = set_exp(dk, i, e);
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((xk, dk), coeff);
        }
        Self { space: space.clone(), terms }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when no term contains a derivative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(_, d)| d == 0)
    }

    pub fn same_space(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }

    fn assert_space(&self, other: &Self) {
        assert!(
            self.same_space(other),
            "variable-space mismatch: {:?} vs {:?}",
            self.space.names,
            other.space.names
        );
    }

    fn insert_term(terms: &mut BTreeMap<Key, GaussianRational>, key: Key, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += &c;
                if v.is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_space(other);
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            Self::insert_term(&mut terms, *k, c.clone());
        }
        Self { space: self.space.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.space);
        }
        Self {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Normal-ordered product. Uses, per variable,
    /// d^b x^c = sum_k C(b,k) (c)_k x^(c-k) d^(b-k).
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_space(other);
        let nvars = self.space.len();
        let mut terms = BTreeMap::new();
        for (&(ax, ad), ac) in &self.terms {
            for (&(bx, bd), bc) in &other.terms {
                let coeff = ac * bc;
                // Distribute the contraction of `ad` against `bx`.
                // Odometer over K with K_i <= min(ad_i, bx_i).
                let mut kvec = [0u32; MAX_VARS];
                let maxk: Vec<u32> = (0..nvars).map(|i| get_exp(ad, i).min(get_exp(bx, i))).collect();
                loop {
                    let mut factor = BigInt::one();
                    for i in 0..nvars {
                        let k = kvec[i];
                        if k > 0 {
                            factor *= binom(get_exp(ad, i), k) * falling(get_exp(bx, i), k);
                        }
                    }
                    let mut xk = 0u64;
                    let mut dk = 0u64;
                    for i in 0..nvars {
                        let k = kvec[i];
                        xk = set_exp(xk, i, get_exp(ax, i) + get_exp(bx, i) - k);
                        dk = set_exp(dk, i, get_exp(ad, i) + get_exp(bd, i) - k);
                    }
                    let c = coeff.scale_int(&factor);
                    Self::insert_term(&mut terms, (xk, dk), c);
                    // advance odometer
                    let mut i = 0;
                    loop {
                        if i == nvars {
                            break;
                        }
                        if kvec[i] < maxk[i] {
                            kvec[i] += 1;
                            break;
                        }
                        kvec[i] = 0;
                        i += 1;
                    }
                    if i == nvars {
                        break;
                    }
                }
            }
        }
        Self { space: self.space.clone(), terms }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.space);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Derivative-free part (the image of acting on the constant 1).
    pub fn polynomial_part(&self) -> Self {
        Self {
            space: self.space.clone(),
            terms: self.terms.iter().filter(|((_, d), _)| *d == 0).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    /// Act on a polynomial (derivative action is formal differentiation).
    pub fn apply(&self, f: &Self) -> Result<Self, CheckError> {
        if !f.is_polynomial() {
            return Err(CheckError::Unsupported("apply target must be a polynomial".into()));
        }
        Ok(self.mul(f).polynomial_part())
    }

    /// p^2 = sum_mu p^mu p_mu = -sum_mu g^mumu d_mu d_mu.
    pub fn momentum_squared(space: &SpaceRef) -> Self {
        let mut acc = Self::zero(space);
        for i in 0..space.len() {
            let sign = GaussianRational::from_int(-space.metric_sign(i) as i64);
            acc = acc.add(&Self::monomial(space, &[], &index_exp(i, 2), sign));
        }
        acc
    }

    /// (p^2)^k for nonnegative integer k, Euclidean coordinates only.
    pub fn laplacian_power(space: &SpaceRef, k: i64) -> Result<Self, CheckError> {
        if k < 0 {
            return Err(CheckError::Unsupported("fractional/negative powers excluded from the exact layer".into()));
        }
        if !space.is_euclidean() {
            return Err(CheckError::Contract("laplacian_power requires a Euclidean metric tag".into()));
        }
        Ok(Self::momentum_squared(space).pow(k as u32))
    }

    /// x^2 = sum_mu x^mu x_mu as a multiplication operator.
    pub fn coord_squared(space: &SpaceRef) -> Self {
        let mut acc = Self::zero(space);
        for i in 0..space.len() {
            let sign = GaussianRational::from_int(space.metric_sign(i) as i64);
            acc = acc.add(&Self::monomial(space, &index_exp(i, 2), &[], sign));
        }
        acc
    }

    /// Coefficient of the monomial x^xexp d^dexp (zero if absent).
    pub fn coefficient(&self, xexp: &[u32], dexp: &[u32]) -> GaussianRational {
        let mut xk = 0u64;
        let mut dk = 0u64;
        for (i, &e) in xexp.iter().enumerate() {
            xk = set_exp(xk, i, e);
        }
        for (i, &e) in dexp.iter().enumerate() {
            dk = set_exp(dk, i, e);
        }
        self.terms.get(&(xk, dk)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Coefficient of the identity monomial.
    pub fn constant_term(&self) -> GaussianRational {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// True if coordinate i or its derivative occurs in any term.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|&(x, d)| get_exp(x, i) > 0 || get_exp(d, i) > 0)
    }

    pub fn coord_degree(&self) -> u32 {
        self.terms.keys().map(|&(x, _)| total_deg(x)).max().unwrap_or(0)
    }

    pub fn deriv_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, d)| total_deg(d)).max().unwrap_or(0)
    }

    /// Push the element through a polynomial change of variables.
    ///
    /// `coord_images[i]` is the image of coordinate i (a polynomial in the
    /// target space); `deriv_images[i]` is the image of d_i (a first-order
    /// operator, the pushforward vector field). The map must be a Weyl
    /// homomorphism; `check_substitution_map` verifies the canonical
    /// relations of the images.
    pub fn substitute(
        &self,
        target: &SpaceRef,
        coord_images: &[WeylElement],
        deriv_images: &[WeylElement],
    ) -> Result<Self, CheckError> {
        let nvars = self.space.len();
        if coord_images.len() != nvars || deriv_images.len() != nvars {
            return Err(CheckError::SpaceMismatch("substitution image count != variable count".into()));
        }
        let mut out = Self::zero(target);
        for (&(xk, dk), c) in &self.terms {
            let mut prod = Self::scalar(target, c.clone());
            for i in 0..nvars {
                let e = get_exp(xk, i);
                if e > 0 {
                    prod = prod.mul(&coord_images[i].pow(e));
                }
            }
            for i in 0..nvars {
                let e = get_exp(dk, i);
                if e > 0 {
                    prod = prod.mul(&deriv_images[i].pow(e));
                }
            }
            out = out.add(&prod);
        }
        Ok(out)
    }

    /// Verify the images of a substitution map satisfy the canonical Weyl
    /// relations ([D_i, X_j] = delta_ij, [X_i, X_j] = [D_i, D_j] = 0).
    pub fn check_substitution_map(
        target: &SpaceRef,
        coord_images: &[WeylElement],
        deriv_images: &[WeylElement],
    ) -> Result<(), CheckError> {
        let n = coord_images.len();
        for i in 0..n {
            for j in 0..n {
                let dx = deriv_images[i].commutator(&coord_images[j]);
                let expect = if i == j { Self::one(target) } else { Self::zero(target) };
                if dx != expect {
                    return Err(CheckError::Structural(format!("[D_{i}, X_{j}] != delta in substitution map")));
                }
                if !coord_images[i].commutator(&coord_images[j]).is_zero() {
                    return Err(CheckError::Structural(format!("[X_{i}, X_{j}] != 0 in substitution map")));
                }
                if !deriv_images[i].commutator(&deriv_images[j]).is_zero() {
                    return Err(CheckError::Structural(format!("[D_{i}, D_{j}] != 0 in substitution map")));
                }
            }
        }
        Ok(())
    }

    /// All coordinate monomials of total degree <= d (as polynomials),
    /// used by the bounded-degree equality oracle.
    pub fn monomials_up_to(space: &SpaceRef, d: u32) -> Vec<Self> {
        let n = space.len();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        loop {
            if exps.iter().sum::<u32>() <= d {
                out.push(Self::monomial(space, &exps, &[], GaussianRational::one()));
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                if exps[i] < d {
                    exps[i] += 1;
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }
}

fn index_exp(i: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0u32; i + 1];
    v[i] = e;
    v
}

fn binom(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn falling(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(n - j);
    }
    acc
}

impl GaussianRational {
    /// Scale by a big integer (internal helper for Leibniz coefficients).
    pub(crate) fn scale_int(&self, n: &BigInt) -> GaussianRational {
        if n.is_one() {
            return self.clone();
        }
        let f = Rational::from(n.clone());
        GaussianRational::new(&self.re * &f, &self.im * &f)
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other) && self.terms == other.terms
    }
}

impl RingElem for WeylElement {
    fn r_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn r_sub(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn r_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn r_neg(&self) -> Self {
        self.neg()
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        self.scale(c)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(xk, dk), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for i in 0..self.space.len() {
                let e = get_exp(xk, i);
                if e == 1 {
                    write!(f, " {}", self.space.name(i))?;
                } else if e > 1 {
                    write!(f, " {}^{}", self.space.name(i), e)?;
                }
            }
            for i in 0..self.space.len() {
                let e = get_exp(dk, i);
                if e == 1 {
                    write!(f, " d_{}", self.space.name(i))?;
                } else if e > 1 {
                    write!(f, " d_{}^{}", self.space.name(i), e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Matrix of Weyl elements with the identity in a given space.
pub fn weyl_identity(space: &SpaceRef, dim: usize) -> Matrix<WeylElement> {
    Matrix::from_fn(dim, dim, |r, c| {
        if r == c {
            WeylElement::one(space)
        } else {
            WeylElement::zero(space)
        }
    })
}

/// Lift a numeric matrix into a Weyl-entry matrix over `space`.
pub fn lift_matrix(space: &SpaceRef, m: &Matrix<GaussianRational>) -> Matrix<WeylElement> {
    Matrix::from_fn(m.rows(), m.cols(), |r, c| WeylElement::scalar(space, m[(r, c)].clone()))
}
