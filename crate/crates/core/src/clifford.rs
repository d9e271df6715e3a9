//! Gamma matrices for even n = p+q in any signature, the enlarged basis for
//! the two-dimensions-bigger space, antisymmetrized products, spinor and
//! conformal generators, and transpose intertwiners.
//!
//! The construction is the recursive block form: gamma_mu off-diagonal with
//! sigma blocks, chirality diag(1,-1). All checks are gauge-internal; the
//! two four-dimensional bases that later modules compare against explicit
//! 2x2 sigma formulas are pinned to those sigma choices.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::CheckError;
use crate::matrix::{Matrix, NumMatrix, RingElem};
use crate::scalar::{rat, GaussianRational};

/// Metric signature (p pluses then q minuses, n = p+q even).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Self {
        Self { p, q }
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// diag(1^p, -1^q)
    pub fn metric(&self) -> Vec<i8> {
        let mut g = vec![1i8; self.p];
        g.extend(vec![-1i8; self.q]);
        g
    }

    /// Metric of the enlarged space: diag(1^p, -1^q, +1, -1).
    pub fn enlarged_metric(&self) -> Vec<i8> {
        let mut g = self.metric();
        g.push(1);
        g.push(-1);
        g
    }

    /// All signatures with the given even n.
    pub fn all_with_n(n: usize) -> Vec<Signature> {
        (0..=n).map(|p| Signature::new(p, n - p)).collect()
    }
}

pub fn pauli(k: usize) -> NumMatrix {
    let z = GaussianRational::zero;
    let o = GaussianRational::one;
    let i = GaussianRational::i;
    match k {
        0 => NumMatrix::identity(2),
        1 => Matrix::from_rows(vec![vec![z(), o()], vec![o(), z()]]),
        2 => Matrix::from_rows(vec![vec![z(), -i()], vec![i(), z()]]),
        3 => Matrix::from_rows(vec![vec![o(), z()], vec![z(), -o()]]),
        _ => panic!("pauli index out of range"),
    }
}

/// Gamma matrices of size 2^(n/2) for a signature, with chirality and the
/// normalization alpha of gamma_{n+1} = alpha * gamma_0 ... gamma_{n-1}.
#[derive(Clone)]
pub struct GammaBasis {
    pub sig: Signature,
    pub gammas: Vec<NumMatrix>,
    pub chirality: NumMatrix,
    pub alpha: GaussianRational,
}

impl GammaBasis {
    pub fn dim(&self) -> usize {
        self.gammas[0].rows()
    }

    /// Build the basis for any even-n signature. The two four-dimensional
    /// bases used elsewhere with explicit sigma formulas are pinned:
    /// (1,3) uses (s0, s1, s2, s3) / (s0, -s1, -s2, -s3) and (4,0) uses
    /// (s0, i s1, i s2, i s3) / (s0, -i s1, -i s2, -i s3).
    pub fn build(sig: Signature) -> Result<Self, CheckError> {
        let n = sig.n();
        if n % 2 != 0 || n < 2 {
            return Err(CheckError::Unsupported(format!(
                "odd or degenerate dimension n={n} not supported"
            )));
        }
        if sig == Signature::new(1, 3) {
            return Self::minkowski4();
        }
        if sig == Signature::new(4, 0) {
            return Self::euclidean4();
        }
        if n == 2 {
            return Self::base2(sig);
        }
        // Generic even n: Euclidean block basis, then Wick-rotate the last
        // q gammas.
        let eucl = Self::euclidean_block(n)?;
        let mut gammas = eucl.gammas;
        for g in gammas.iter_mut().skip(sig.p) {
            *g = g.scale(&GaussianRational::i());
        }
        Self::from_parts(sig, gammas, eucl.chirality)
    }

    /// n=2 base case in the block gauge.
    fn base2(sig: Signature) -> Result<Self, CheckError> {
        let g = sig.metric();
        let (g0, g1) = (g[0] as i64, g[1] as i64);
        // sigma_0 = 1, sigmabar_0 = g00; sigma_1 = t, sigmabar_1 = g11/t with
        // t^2 = -g00 g11, sign of t chosen so alpha = t*g11 is 1 or i.
        let t = if -g0 * g1 == 1 {
            // t = +-1, alpha = t*g11 must be 1
            GaussianRational::from_int(g1)
        } else {
            // t = +-i, alpha = t*g11 must be i
            GaussianRational::i().scale_by_int(g1)
        };
        let s0 = GaussianRational::one();
        let sb0 = GaussianRational::from_int(g0);
        let s1 = t.clone();
        let sb1 = GaussianRational::from_int(g1) * t.inv();
        let sigma = vec![NumMatrix::diag(vec![s0]), NumMatrix::diag(vec![s1])];
        let sigmabar = vec![NumMatrix::diag(vec![sb0]), NumMatrix::diag(vec![sb1])];
        Self::from_sigma_blocks(sig, &sigma, &sigmabar)
    }

    /// Euclidean basis of dimension n in the block gauge: recursively
    /// enlarge and rotate the single timelike direction back.
    fn euclidean_block(n: usize) -> Result<Self, CheckError> {
        if n == 2 {
            return Self::base2(Signature::new(2, 0));
        }
        let prev = Self::euclidean_block(n - 2)?;
        let enl = EnlargedGammaBasis::enlarge(&prev)?;
        let mut gammas = enl.gammas;
        let last = gammas.len() - 1;
        gammas[last] = gammas[last].scale(&GaussianRational::i());
        Self::from_parts(Signature::new(n, 0), gammas, enl.chirality)
    }

    /// Minkowski R^{1,3} with the standard Pauli sigma blocks.
    pub fn minkowski4() -> Result<Self, CheckError> {
        let sigma = vec![pauli(0), pauli(1), pauli(2), pauli(3)];
        let sigmabar = vec![
            pauli(0),
            pauli(1).neg(),
            pauli(2).neg(),
            pauli(3).neg(),
        ];
        Self::from_sigma_blocks(Signature::new(1, 3), &sigma, &sigmabar)
    }

    /// Euclidean R^4 with sigma = (s0, i s1, i s2, i s3).
    pub fn euclidean4() -> Result<Self, CheckError> {
        let i = GaussianRational::i();
        let sigma = vec![pauli(0), pauli(1).scale(&i), pauli(2).scale(&i), pauli(3).scale(&i)];
        let sigmabar = vec![
            pauli(0),
            pauli(1).scale(&i).neg(),
            pauli(2).scale(&i).neg(),
            pauli(3).scale(&i).neg(),
        ];
        Self::from_sigma_blocks(Signature::new(4, 0), &sigma, &sigmabar)
    }

    /// Assemble gamma_mu = [[0, sigma_mu], [sigmabar_mu, 0]] with chirality
    /// diag(1, -1).
    pub fn from_sigma_blocks(
        sig: Signature,
        sigma: &[NumMatrix],
        sigmabar: &[NumMatrix],
    ) -> Result<Self, CheckError> {
        let half = sigma[0].rows();
        let dim = 2 * half;
        let zero = GaussianRational::zero();
        let gammas: Vec<NumMatrix> = sigma
            .iter()
            .zip(sigmabar)
            .map(|(s, sb)| {
                Matrix::from_fn(dim, dim, |r, c| {
                    if r < half && c >= half {
                        s[(r, c - half)].clone()
                    } else if r >= half && c < half {
                        sb[(r - half, c)].clone()
                    } else {
                        zero.clone()
                    }
                })
            })
            .collect();
        let chirality = Matrix::from_fn(dim, dim, |r, c| {
            if r != c {
                GaussianRational::zero()
            } else if r < half {
                GaussianRational::one()
            } else {
                -GaussianRational::one()
            }
        });
        Self::from_parts(sig, gammas, chirality)
    }

    fn from_parts(sig: Signature, gammas: Vec<NumMatrix>, chirality: NumMatrix) -> Result<Self, CheckError> {
        check_clifford(&gammas, &sig.metric())?;
        let alpha = alpha_from_product(&gammas, &chirality)?;
        // alpha^2 = (-1)^(q + n(n-1)/2)
        let n = sig.n();
        let expect = if (sig.q + n * (n - 1) / 2) % 2 == 0 {
            GaussianRational::one()
        } else {
            -GaussianRational::one()
        };
        if &alpha * &alpha != expect {
            return Err(CheckError::Structural(format!(
                "alpha^2 mismatch for signature ({}, {})",
                sig.p, sig.q
            )));
        }
        Ok(Self { sig, gammas, chirality, alpha })
    }

    /// The sigma / sigmabar blocks of the off-diagonal gauge.
    pub fn sigma_blocks(&self) -> SigmaBlocks {
        let half = self.dim() / 2;
        let sigma: Vec<NumMatrix> = self
            .gammas
            .iter()
            .map(|g| Matrix::from_fn(half, half, |r, c| g[(r, c + half)].clone()))
            .collect();
        let sigmabar: Vec<NumMatrix> = self
            .gammas
            .iter()
            .map(|g| Matrix::from_fn(half, half, |r, c| g[(r + half, c)].clone()))
            .collect();
        SigmaBlocks::new(self.sig, sigma, sigmabar)
    }

    /// Spinor generator (i/4) [gamma_mu, gamma_nu].
    pub fn spin_generator(&self, mu: usize, nu: usize) -> NumMatrix {
        let quarter_i = GaussianRational::i().scale_by_rat(&rat(1, 4));
        self.gammas[mu].commutator(&self.gammas[nu]).scale(&quarter_i)
    }
}

/// sigma_mu, sigmabar_mu blocks and their antisymmetric generators.
pub struct SigmaBlocks {
    pub sig: Signature,
    pub sigma: Vec<NumMatrix>,
    pub sigmabar: Vec<NumMatrix>,
}

impl SigmaBlocks {
    pub fn new(sig: Signature, sigma: Vec<NumMatrix>, sigmabar: Vec<NumMatrix>) -> Self {
        Self { sig, sigma, sigmabar }
    }

    /// sigma_munu = (i/4)(sigma_mu sigmabar_nu - sigma_nu sigmabar_mu)
    pub fn sigma_munu(&self, mu: usize, nu: usize) -> NumMatrix {
        let quarter_i = GaussianRational::i().scale_by_rat(&rat(1, 4));
        self.sigma[mu]
            .mul(&self.sigmabar[nu])
            .sub(&self.sigma[nu].mul(&self.sigmabar[mu]))
            .scale(&quarter_i)
    }

    /// sigmabar_munu = (i/4)(sigmabar_mu sigma_nu - sigmabar_nu sigma_mu)
    pub fn sigmabar_munu(&self, mu: usize, nu: usize) -> NumMatrix {
        let quarter_i = GaussianRational::i().scale_by_rat(&rat(1, 4));
        self.sigmabar[mu]
            .mul(&self.sigma[nu])
            .sub(&self.sigmabar[nu].mul(&self.sigma[mu]))
            .scale(&quarter_i)
    }

    /// sigma_mu sigmabar_nu + sigma_nu sigmabar_mu = 2 g_munu (and barred).
    pub fn check_identities(&self) -> Result<(), CheckError> {
        let g = self.sig.metric();
        let n = self.sig.n();
        let dim = self.sigma[0].rows();
        for mu in 0..n {
            for nu in 0..n {
                let expect = NumMatrix::identity(dim).scale(&GaussianRational::from_int(2 * g[mu] as i64 * if mu == nu { 1 } else { 0 }));
                let lhs = self.sigma[mu].mul(&self.sigmabar[nu]).add(&self.sigma[nu].mul(&self.sigmabar[mu]));
                if lhs != expect {
                    return Err(CheckError::Structural(format!("sigma identity fails at ({mu},{nu})")));
                }
                let lhs = self.sigmabar[mu].mul(&self.sigma[nu]).add(&self.sigmabar[nu].mul(&self.sigma[mu]));
                if lhs != expect {
                    return Err(CheckError::Structural(format!("sigmabar identity fails at ({mu},{nu})")));
                }
            }
        }
        Ok(())
    }
}

/// Gamma matrices of the enlarged space R^{p+1,q+1}, dimension 2^(n/2+1).
pub struct EnlargedGammaBasis {
    pub base: GammaBasis,
    pub gammas: Vec<NumMatrix>,
    pub chirality: NumMatrix,
    pub metric: Vec<i8>,
    product_cache: RwLock<HashMap<u32, NumMatrix>>,
}

impl EnlargedGammaBasis {
    pub fn enlarge(base: &GammaBasis) -> Result<Self, CheckError> {
        let n = base.sig.n();
        let small_dim = base.dim();
        let i = GaussianRational::i();
        let mut gammas: Vec<NumMatrix> = base.gammas.iter().map(|g| pauli(2).kron(g)).collect();
        gammas.push(pauli(1).kron(&NumMatrix::identity(small_dim)));
        gammas.push(pauli(2).scale(&i).kron(&base.chirality));
        let chirality = pauli(3).kron(&NumMatrix::identity(small_dim));
        let metric = base.sig.enlarged_metric();
        check_clifford(&gammas, &metric)?;
        // chirality of the big space reproduces -alpha Gamma_0 ... Gamma_{n+1}
        let mut prod = NumMatrix::identity(2 * small_dim);
        for g in &gammas {
            prod = prod.mul(g);
        }
        if prod.scale(&base.alpha.clone().neg_of()) != chirality {
            return Err(CheckError::Structural(format!(
                "-alpha Gamma_0..Gamma_{} != diag(I,-I) for signature ({}, {})",
                n + 1,
                base.sig.p,
                base.sig.q
            )));
        }
        Ok(Self {
            base: base.clone(),
            gammas,
            chirality,
            metric,
            product_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn n_indices(&self) -> usize {
        self.gammas.len()
    }

    pub fn dim(&self) -> usize {
        self.gammas[0].rows()
    }

    pub fn metric_sign(&self, a: usize) -> i8 {
        self.metric[a]
    }

    fn sorted_product(&self, mask: u32) -> NumMatrix {
        if let Some(m) = self.product_cache.read().unwrap().get(&mask) {
            return m.clone();
        }
        let mut prod = NumMatrix::identity(self.dim());
        for a in 0..self.n_indices() {
            if mask & (1 << a) != 0 {
                prod = prod.mul(&self.gammas[a]);
            }
        }
        self.product_cache.write().unwrap().entry(mask).or_insert(prod).clone()
    }

    /// Antisymmetrized product Gamma_{a1...ak}. Zero for repeated indices;
    /// for distinct indices equals the plain ordered product (and so is
    /// antisymmetric under index exchange).
    pub fn antisym_product(&self, indices: &[usize]) -> Result<NumMatrix, CheckError> {
        for &a in indices {
            if a >= self.n_indices() {
                return Err(CheckError::Domain(format!("gamma index {a} out of range")));
            }
        }
        if indices.len() > self.n_indices() {
            return Ok(NumMatrix::zeros(self.dim(), self.dim()));
        }
        let mut seen = 0u32;
        for &a in indices {
            if seen & (1 << a) != 0 {
                return Ok(NumMatrix::zeros(self.dim(), self.dim()));
            }
            seen |= 1 << a;
        }
        let sign = permutation_sign_to_sorted(indices);
        let prod = self.sorted_product(seen);
        Ok(if sign < 0 { prod.neg() } else { prod })
    }

    /// Oracle form of the antisymmetrized product: (1/k!) sum over all
    /// permutations with parity signs. Exponential in k; test use only.
    pub fn antisym_product_definition(&self, indices: &[usize]) -> NumMatrix {
        let k = indices.len();
        let mut acc = NumMatrix::zeros(self.dim(), self.dim());
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            let mut prod = NumMatrix::identity(self.dim());
            for &pos in &perm {
                prod = prod.mul(&self.gammas[indices[pos]]);
            }
            let sign = permutation_sign_to_sorted(&perm);
            acc = if sign < 0 { acc.sub(&prod) } else { acc.add(&prod) };
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let mut kfact = rat(1, 1);
        for j in 1..=k as i64 {
            kfact = kfact * rat(j, 1);
        }
        acc.scale(&GaussianRational::from_rational(kfact).inv())
    }

    /// Spinor representation T(M_ab) = (i/4)[Gamma_a, Gamma_b].
    pub fn spin_generator(&self, a: usize, b: usize) -> NumMatrix {
        let quarter_i = GaussianRational::i().scale_by_rat(&rat(1, 4));
        self.gammas[a].commutator(&self.gammas[b]).scale(&quarter_i)
    }
}

fn permutation_sign_to_sorted(indices: &[usize]) -> i32 {
    let mut inv = 0usize;
    for i in 0..indices.len() {
        for j in (i + 1)..indices.len() {
            if indices[i] > indices[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// gamma_a gamma_b + gamma_b gamma_a = 2 g_ab I, exact.
pub fn check_clifford(gammas: &[NumMatrix], metric: &[i8]) -> Result<(), CheckError> {
    let dim = gammas[0].rows();
    for a in 0..gammas.len() {
        for b in 0..gammas.len() {
            let lhs = gammas[a].anticommutator(&gammas[b]);
            let coeff = if a == b { 2 * metric[a] as i64 } else { 0 };
            let rhs = NumMatrix::identity(dim).scale(&GaussianRational::from_int(coeff));
            if lhs != rhs {
                return Err(CheckError::Structural(format!("Clifford relation fails at ({a},{b})")));
            }
        }
    }
    Ok(())
}

fn alpha_from_product(gammas: &[NumMatrix], chirality: &NumMatrix) -> Result<GaussianRational, CheckError> {
    let mut prod = NumMatrix::identity(gammas[0].rows());
    for g in gammas {
        prod = prod.mul(g);
    }
    // prod = c * chirality for a scalar c; alpha = 1/c.
    let (r, c) = chirality.first_nonzero().ok_or_else(|| CheckError::Structural("zero chirality".into()))?;
    let factor = &prod[(r, c)] / &chirality[(r, c)];
    if chirality.scale(&factor) != prod {
        return Err(CheckError::Structural("gamma product is not proportional to the chirality".into()));
    }
    if factor.is_zero() {
        return Err(CheckError::Structural("degenerate gamma product".into()));
    }
    Ok(factor.inv())
}

/// so-algebra relations [M_ab, M_cd] = i(g_bc M_ad + g_ad M_bc - g_ac M_bd
/// - g_bd M_ac) for an antisymmetric family of ring elements.
pub fn check_so_relations<R: RingElem>(
    metric: &[i8],
    m: &dyn Fn(usize, usize) -> R,
) -> Result<(), CheckError> {
    let n = metric.len();
    let i = GaussianRational::i();
    let gr = |s: i8| GaussianRational::from_int(s as i64);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let lhs = m(a, b).r_mul(&m(c, d)).r_sub(&m(c, d).r_mul(&m(a, b)));
                    let mut rhs = m(a, d).scale(&(&i * &gr(if b == c { metric[b] } else { 0 })));
                    rhs = rhs.r_add(&m(b, c).scale(&(&i * &gr(if a == d { metric[a] } else { 0 }))));
                    rhs = rhs.r_sub(&m(b, d).scale(&(&i * &gr(if a == c { metric[a] } else { 0 }))));
                    rhs = rhs.r_sub(&m(a, c).scale(&(&i * &gr(if b == d { metric[b] } else { 0 }))));
                    if lhs != rhs {
                        return Err(CheckError::Structural(format!(
                            "so relation fails at ({a},{b}),({c},{d})"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The conformal commutation relations, checked exactly for any realization
/// over a ring: matrices here, Weyl elements in the differential module.
pub fn check_conformal_relations<R: RingElem>(
    metric: &[i8],
    l: &dyn Fn(usize, usize) -> R,
    p: &dyn Fn(usize) -> R,
    k: &dyn Fn(usize) -> R,
    d: &R,
) -> Result<(), CheckError> {
    let n = metric.len();
    let i = GaussianRational::i();
    let g = |mu: usize, nu: usize| {
        if mu == nu {
            GaussianRational::from_int(metric[mu] as i64)
        } else {
            GaussianRational::zero()
        }
    };
    let comm = |a: &R, b: &R| a.r_mul(b).r_sub(&b.r_mul(a));
    let fail = |what: &str| Err(CheckError::Structural(format!("conformal relation {what} fails")));

    for mu in 0..n {
        // [d, p_mu] = i p_mu ; [d, k_mu] = -i k_mu
        if comm(d, &p(mu)) != p(mu).scale(&i) {
            return fail(&format!("[D,P_{mu}]"));
        }
        if comm(d, &k(mu)) != k(mu).scale(&i).r_neg() {
            return fail(&format!("[D,K_{mu}]"));
        }
        for nu in 0..n {
            // [p,p] = [k,k] = 0
            if !comm(&p(mu), &p(nu)).r_is_zero() {
                return fail(&format!("[P_{mu},P_{nu}]"));
            }
            if !comm(&k(mu), &k(nu)).r_is_zero() {
                return fail(&format!("[K_{mu},K_{nu}]"));
            }
            // [k_mu, p_nu] = 2i (g_munu d - l_munu)
            let rhs = d.scale(&g(mu, nu)).r_sub(&l(mu, nu)).scale(&(&i + &i));
            if comm(&k(mu), &p(nu)) != rhs {
                return fail(&format!("[K_{mu},P_{nu}]"));
            }
            // [l_munu, d] = 0
            if !comm(&l(mu, nu), d).r_is_zero() {
                return fail(&format!("[L_{mu}{nu},D]"));
            }
            for rho in 0..n {
                // [k_rho, l_munu] = i (g_rhomu k_nu - g_rhonu k_mu)
                let rhs = k(nu).scale(&(&i * &g(rho, mu))).r_sub(&k(mu).scale(&(&i * &g(rho, nu))));
                if comm(&k(rho), &l(mu, nu)) != rhs {
                    return fail(&format!("[K_{rho},L_{mu}{nu}]"));
                }
                let rhs = p(nu).scale(&(&i * &g(rho, mu))).r_sub(&p(mu).scale(&(&i * &g(rho, nu))));
                if comm(&p(rho), &l(mu, nu)) != rhs {
                    return fail(&format!("[P_{rho},L_{mu}{nu}]"));
                }
                for sig in 0..n {
                    // [l_munu, l_rhosig] = i(g_nurho l_musig + g_musig l_nurho
                    //                        - g_murho l_nusig - g_nusig l_murho)
                    let mut rhs = l(mu, sig).scale(&(&i * &g(nu, rho)));
                    rhs = rhs.r_add(&l(nu, rho).scale(&(&i * &g(mu, sig))));
                    rhs = rhs.r_sub(&l(nu, sig).scale(&(&i * &g(mu, rho))));
                    rhs = rhs.r_sub(&l(mu, rho).scale(&(&i * &g(nu, sig))));
                    if comm(&l(mu, nu), &l(rho, sig)) != rhs {
                        return fail(&format!("[L_{mu}{nu},L_{rho}{sig}]"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Conformal generators extracted from one irreducible half of the spinor
/// representation: l_munu = (i/4)[g_mu, g_nu], p_mu = g_mu (1+chi)/2,
/// k_mu = g_mu (1-chi)/2, d = -(i/2) chi.
pub struct ConformalSpinGenerators {
    pub ell: Vec<Vec<NumMatrix>>,
    pub p: Vec<NumMatrix>,
    pub k: Vec<NumMatrix>,
    pub d: NumMatrix,
}

pub fn conformal_split(basis: &GammaBasis) -> ConformalSpinGenerators {
    let n = basis.sig.n();
    let dim = basis.dim();
    let half = GaussianRational::from_pair(1, 2);
    let proj_plus = NumMatrix::identity(dim).add(&basis.chirality).scale(&half);
    let proj_minus = NumMatrix::identity(dim).sub(&basis.chirality).scale(&half);
    let ell = (0..n)
        .map(|mu| (0..n).map(|nu| basis.spin_generator(mu, nu)).collect())
        .collect();
    let p = (0..n).map(|mu| basis.gammas[mu].mul(&proj_plus)).collect();
    let k = (0..n).map(|mu| basis.gammas[mu].mul(&proj_minus)).collect();
    let d = basis.chirality.scale(&GaussianRational::i().scale_by_rat(&rat(-1, 2)));
    ConformalSpinGenerators { ell, p, k, d }
}

/// Block parity of the transpose intertwiner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntertwinerParity {
    BlockDiagonal,
    BlockAntidiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockSymmetry {
    Symmetric,
    Antisymmetric,
}

pub struct TransposeIntertwiner {
    pub c: NumMatrix,
    pub parity: IntertwinerParity,
    /// The inner block (c or g in the two parity cases).
    pub inner_block: NumMatrix,
    /// Symmetry type of the inner block. This is congruence-invariant, so
    /// it is an honest invariant of the basis: n=2 gives a symmetric g,
    /// n=4 gives the antisymmetric 2x2 epsilon.
    pub inner_symmetry: BlockSymmetry,
}

/// Solve gamma_mu^T = C gamma_mu C^{-1} exactly. The solution space must be
/// one-dimensional; anything else signals a broken basis.
pub fn find_transpose_intertwiner(gammas: &[NumMatrix]) -> Result<TransposeIntertwiner, CheckError> {
    let dim = gammas[0].rows();
    let nunk = dim * dim;
    // Rows: for each gamma and each entry, gamma^T C - C gamma = 0.
    let mut rows: Vec<Vec<GaussianRational>> = Vec::with_capacity(gammas.len() * nunk);
    for g in gammas {
        let gt = g.transpose();
        for r in 0..dim {
            for c in 0..dim {
                let mut row = vec![GaussianRational::zero(); nunk];
                // (gt * C)[r][c] = sum_k gt[r][k] C[k][c]
                for k in 0..dim {
                    row[k * dim + c] = &row[k * dim + c] + &gt[(r, k)];
                }
                // -(C * g)[r][c] = -sum_k C[r][k] g[k][c]
                for k in 0..dim {
                    row[r * dim + k] = &row[r * dim + k] - &g[(k, c)];
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows);
    let null = system.nullspace();
    if null.len() != 1 {
        return Err(CheckError::Structural(format!(
            "transpose-intertwiner solution space has dimension {} (expected 1)",
            null.len()
        )));
    }
    let c = Matrix::from_fn(dim, dim, |r, cc| null[0][r * dim + cc].clone());
    // Classify block structure against the chirality grading (upper/lower
    // halves of the construction gauge).
    let half = dim / 2;
    let mut diag_zero = true;
    let mut anti_zero = true;
    for r in 0..dim {
        for cc in 0..dim {
            let same_block = (r < half) == (cc < half);
            if !c[(r, cc)].is_zero() {
                if same_block {
                    diag_zero = false;
                } else {
                    anti_zero = false;
                }
            }
        }
    }
    let (parity, inner_block) = if diag_zero && !anti_zero {
        // off-diagonal blocks only: C = [[0, g],[g, 0]]
        let upper = Matrix::from_fn(half, half, |r, cc| c[(r, cc + half)].clone());
        let lower = Matrix::from_fn(half, half, |r, cc| c[(r + half, cc)].clone());
        if upper != lower {
            return Err(CheckError::Structural("antidiagonal intertwiner blocks differ".into()));
        }
        (IntertwinerParity::BlockAntidiagonal, upper)
    } else if anti_zero && !diag_zero {
        let upper = Matrix::from_fn(half, half, |r, cc| c[(r, cc)].clone());
        let lower = Matrix::from_fn(half, half, |r, cc| c[(r + half, cc + half)].clone());
        if upper != lower {
            return Err(CheckError::Structural("diagonal intertwiner blocks differ".into()));
        }
        (IntertwinerParity::BlockDiagonal, upper)
    } else {
        return Err(CheckError::Structural("intertwiner has no block structure".into()));
    };
    let inner_symmetry = if inner_block == inner_block.transpose() {
        BlockSymmetry::Symmetric
    } else if inner_block == inner_block.transpose().neg() {
        BlockSymmetry::Antisymmetric
    } else {
        return Err(CheckError::Structural("intertwiner inner block has no definite symmetry".into()));
    };
    Ok(TransposeIntertwiner { c, parity, inner_block, inner_symmetry })
}

impl GaussianRational {
    pub(crate) fn scale_by_int(&self, k: i64) -> GaussianRational {
        self * GaussianRational::from_int(k)
    }

    pub(crate) fn scale_by_rat(&self, r: &crate::scalar::Rational) -> GaussianRational {
        self * GaussianRational::from_rational(r.clone())
    }

    pub(crate) fn neg_of(self) -> GaussianRational {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_case_n2_euclidean() {
        let b = GammaBasis::build(Signature::new(2, 0)).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.gammas[0], pauli(1));
        // gamma_1 equals sigma_2 up to the construction's gauge (here -sigma_2).
        assert_eq!(b.gammas[1], pauli(2).neg());
        check_clifford(&b.gammas, &[1, 1]).unwrap();
    }

    #[test]
    fn minkowski4_matches_pauli_sigma() {
        let b = GammaBasis::build(Signature::new(1, 3)).unwrap();
        let sb = b.sigma_blocks();
        assert_eq!(sb.sigma[2], pauli(2));
        assert_eq!(sb.sigmabar[3], pauli(3).neg());
        sb.check_identities().unwrap();
        // gamma_5 = -i gamma_0 gamma_1 gamma_2 gamma_3
        assert_eq!(b.alpha, -GaussianRational::i());
    }

    #[test]
    fn chirality_properties_all_signatures() {
        for n in [2usize, 4] {
            for sig in Signature::all_with_n(n) {
                let b = GammaBasis::build(sig).unwrap();
                assert_eq!(b.chirality.mul(&b.chirality), NumMatrix::identity(b.dim()), "{sig:?}");
                assert!(b.chirality.trace().is_zero(), "{sig:?}");
                b.sigma_blocks().check_identities().unwrap();
            }
        }
    }

    #[test]
    fn odd_dimension_rejected() {
        assert!(GammaBasis::build(Signature::new(2, 1)).is_err());
    }

    #[test]
    fn enlarged_all_signatures() {
        for n in [2usize, 4] {
            for sig in Signature::all_with_n(n) {
                let b = GammaBasis::build(sig).unwrap();
                let e = EnlargedGammaBasis::enlarge(&b).unwrap();
                check_clifford(&e.gammas, &e.metric).unwrap();
                assert_eq!(e.chirality.mul(&e.chirality), NumMatrix::identity(e.dim()));
            }
        }
    }

    #[test]
    fn enlarged_n2_anticommutators() {
        // n=2 basis: four 4x4 Gammas with metric diag(1,1,1,-1).
        let b = GammaBasis::build(Signature::new(2, 0)).unwrap();
        let e = EnlargedGammaBasis::enlarge(&b).unwrap();
        assert_eq!(e.metric, vec![1, 1, 1, -1]);
        assert_eq!(e.dim(), 4);
    }

    #[test]
    fn antisym_products() {
        let b = GammaBasis::build(Signature::new(2, 0)).unwrap();
        let e = EnlargedGammaBasis::enlarge(&b).unwrap();
        // k=0: identity
        assert_eq!(e.antisym_product(&[]).unwrap(), NumMatrix::identity(4));
        // antisymmetry
        let g01 = e.antisym_product(&[0, 1]).unwrap();
        let g10 = e.antisym_product(&[1, 0]).unwrap();
        assert_eq!(g01, g10.neg());
        // repeated index gives zero
        assert!(e.antisym_product(&[2, 2]).unwrap().is_zero());
        // equals (1/2)[G0, G1] and the full permutation-sum oracle
        let half = GaussianRational::from_pair(1, 2);
        assert_eq!(g01, e.gammas[0].commutator(&e.gammas[1]).scale(&half));
        for idx in [vec![0usize, 1], vec![0, 2, 3], vec![3, 1, 0], vec![0, 1, 2, 3]] {
            assert_eq!(e.antisym_product(&idx).unwrap(), e.antisym_product_definition(&idx), "{idx:?}");
        }
        // out of range
        assert!(e.antisym_product(&[7]).is_err());
    }

    #[test]
    fn spinor_rep_satisfies_so_relations() {
        for n in [2usize, 4] {
            for sig in Signature::all_with_n(n) {
                let b = GammaBasis::build(sig).unwrap();
                let e = EnlargedGammaBasis::enlarge(&b).unwrap();
                check_so_relations(&e.metric, &|a, bb| e.spin_generator(a, bb)).unwrap();
            }
        }
    }

    #[test]
    fn conformal_split_relations() {
        for n in [2usize, 4] {
            for sig in Signature::all_with_n(n) {
                let b = GammaBasis::build(sig).unwrap();
                let gens = conformal_split(&b);
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
    }

    #[test]
    fn momenta_commute_via_projectors() {
        let b = GammaBasis::build(Signature::new(4, 0)).unwrap();
        let gens = conformal_split(&b);
        for mu in 0..4 {
            for nu in 0..4 {
                assert!(gens.p[mu].commutator(&gens.p[nu]).is_zero());
            }
        }
    }

    #[test]
    fn split_block_matches_enlarged_rep_lower_block() {
        // The lower diagonal block of (i/4)[Gamma_a, Gamma_b], read through
        // the conformal dictionary, is exactly the split generator set.
        for sig in [Signature::new(2, 0), Signature::new(1, 3)] {
            let b = GammaBasis::build(sig).unwrap();
            let e = EnlargedGammaBasis::enlarge(&b).unwrap();
            let gens = conformal_split(&b);
            let n = sig.n();
            let h = b.dim();
            let lower = |m: &NumMatrix| Matrix::from_fn(h, h, |r, c| m[(r + h, c + h)].clone());
            let half = GaussianRational::from_pair(1, 2);
            for mu in 0..n {
                for nu in 0..n {
                    assert_eq!(lower(&e.spin_generator(mu, nu)), gens.ell[mu][nu]);
                }
                // M_{n,mu} = (P_mu + K_mu)/2, M_{n+1,mu} = (P_mu - K_mu)/2
                let pk_half = gens.p[mu].add(&gens.k[mu]).scale(&half);
                assert_eq!(lower(&e.spin_generator(n, mu)), pk_half);
                let pmk_half = gens.p[mu].sub(&gens.k[mu]).scale(&half);
                assert_eq!(lower(&e.spin_generator(n + 1, mu)), pmk_half);
            }
            // M_{n,n+1} = -D
            assert_eq!(lower(&e.spin_generator(n, n + 1)), gens.d.neg());
        }
    }

    #[test]
    fn transpose_intertwiner_parity() {
        // n=2: n(n-1)/2 = 1 odd -> antidiagonal with symmetric g.
        let b2 = GammaBasis::build(Signature::new(2, 0)).unwrap();
        let t2 = find_transpose_intertwiner(&b2.gammas).unwrap();
        assert_eq!(t2.parity, IntertwinerParity::BlockAntidiagonal);
        assert_eq!(t2.inner_symmetry, BlockSymmetry::Symmetric);
        // n=4: n(n-1)/2 = 6 even -> block diagonal. The unique inner block
        // is the 2x2 epsilon, hence antisymmetric (the solver certifies the
        // one-dimensional solution space, so this is forced).
        for sig in Signature::all_with_n(4) {
            let b4 = GammaBasis::build(sig).unwrap();
            let t4 = find_transpose_intertwiner(&b4.gammas).unwrap();
            assert_eq!(t4.parity, IntertwinerParity::BlockDiagonal, "{sig:?}");
            assert_eq!(t4.inner_symmetry, BlockSymmetry::Antisymmetric, "{sig:?}");
        }
    }

    #[test]
    fn transpose_intertwiner_defining_relation() {
        for n in [2usize, 4] {
            for sig in Signature::all_with_n(n) {
                let b = GammaBasis::build(sig).unwrap();
                let t = find_transpose_intertwiner(&b.gammas).unwrap();
                let cinv = t.c.inverse().unwrap();
                for g in &b.gammas {
                    assert_eq!(g.transpose(), t.c.mul(g).mul(&cinv), "{sig:?}");
                }
            }
        }
    }

    #[test]
    fn transpose_intertwiner_chirality_conjugation() {
        // gamma_{n+1}^T = (-1)^(n(n-1)/2) C gamma_{n+1} C^{-1}
        for n in [2usize, 4] {
            for sig in Signature::all_with_n(n) {
                let b = GammaBasis::build(sig).unwrap();
                let t = find_transpose_intertwiner(&b.gammas).unwrap();
                let cinv = t.c.inverse().unwrap();
                let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
                let rhs = t.c.mul(&b.chirality).mul(&cinv).scale(&GaussianRational::from_int(sign));
                assert_eq!(b.chirality.transpose(), rhs, "{sig:?}");
            }
        }
    }
}
