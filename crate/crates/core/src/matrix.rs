//! Dense matrices over an exact ring, valid for noncommutative entry rings.
//!
//! Multiplication never reorders entry products, so the same type carries
//! numeric Gaussian-rational matrices and matrices of differential operators.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::CheckError;
use crate::scalar::GaussianRational;

/// Ring interface needed by the matrix layer. `scale` is the action of the
/// ground field Q(i), available for every ring in this crate.
pub trait RingElem: Clone + PartialEq {
    fn r_add(&self, other: &Self) -> Self;
    fn r_sub(&self, other: &Self) -> Self;
    fn r_mul(&self, other: &Self) -> Self;
    fn r_neg(&self) -> Self;
    fn r_is_zero(&self) -> bool;
    fn scale(&self, c: &GaussianRational) -> Self;
}

impl RingElem for GaussianRational {
    fn r_add(&self, other: &Self) -> Self {
        self + other
    }
    fn r_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn r_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        self * c
    }
}

/// Square matrices over a ring again form a ring, which lets the generic
/// relation checkers run over matrix families directly.
impl<R: RingElem> RingElem for Matrix<R> {
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

/// Dense row-major matrix over ring `R`.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

pub type NumMatrix = Matrix<GaussianRational>;

impl<R: RingElem> Matrix<R> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Self { rows: nr, cols: nc, entries: rows.into_iter().flatten().collect() }
    }

    /// All-`zero` matrix; the caller supplies the ring's zero element.
    pub fn filled(rows: usize, cols: usize, zero: R) -> Self {
        Self { rows, cols, entries: vec![zero; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.r_add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.r_sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a.r_neg()).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a.scale(c)).collect() }
    }

    /// Entry-order-preserving product: C[i][j] = sum_k A[i][k] * B[k][j],
    /// each term multiplied left-to-right. Zero entries are skipped.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out: Vec<Option<R>> = vec![None; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.r_is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.r_is_zero() {
                        continue;
                    }
                    let prod = a.r_mul(b);
                    let slot = &mut out[i * other.cols + j];
                    *slot = Some(match slot.take() {
                        Some(acc) => acc.r_add(&prod),
                        None => prod,
                    });
                }
            }
        }
        // Entries never touched are zero; synthesize them from an existing
        // element (a ring with no elements cannot reach this point).
        let zero = self
            .entries
            .first()
            .or_else(|| other.entries.first())
            .expect("empty matrix product")
            .r_sub(self.entries.first().or_else(|| other.entries.first()).unwrap());
        Self {
            rows: self.rows,
            cols: other.cols,
            entries: out.into_iter().map(|e| e.unwrap_or_else(|| zero.clone())).collect(),
        }
    }

    /// Commutator [A, B] = AB - BA.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Anticommutator {A, B} = AB + BA.
    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    /// Kronecker product. Caller guarantees the entries of `self` and
    /// `other` commute (numeric-numeric, or disjoint variable sets).
    pub fn kron(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (ra, rb) = (r / other.rows, r % other.rows);
            let (ca, cb) = (c / other.cols, c % other.cols);
            self[(ra, ca)].r_mul(&other[(rb, cb)])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.r_is_zero())
    }

    /// Coordinates of the first nonzero entry, for residual reports.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries.iter().position(|e| !e.r_is_zero()).map(|k| (k / self.cols, k % self.cols))
    }

    /// Inverse of a lower unitriangular matrix over any ring, via the
    /// terminating Neumann series (I + N)^-1 = I - N + N^2 - ...
    pub fn unitriangular_inverse(&self, one: R, zero: R) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let id = Matrix::from_fn(n, n, |r, c| if r == c { one.clone() } else { zero.clone() });
        let nil = self.sub(&id);
        let mut inv = id.clone();
        let mut pow = id.clone();
        let mut sign_neg = true;
        for _ in 1..n {
            pow = pow.mul(&nil);
            if pow.is_zero() {
                break;
            }
            inv = if sign_neg { inv.sub(&pow) } else { inv.add(&pow) };
            sign_neg = !sign_neg;
        }
        inv
    }
}

impl Matrix<GaussianRational> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, GaussianRational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { GaussianRational::one() } else { GaussianRational::zero() })
    }

    pub fn diag(values: Vec<GaussianRational>) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |r, c| if r == c { values[r].clone() } else { GaussianRational::zero() })
    }

    /// Permutation operator on V (x) V with dim(V) = d: P(e_i (x) e_j) = e_j (x) e_i.
    pub fn permutation(d: usize) -> Self {
        Self::from_fn(d * d, d * d, |r, c| {
            let (i, j) = (r / d, r % d);
            let (k, l) = (c / d, c % d);
            if i == l && j == k {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn trace(&self) -> GaussianRational {
        assert!(self.is_square());
        let mut t = GaussianRational::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    /// Exact inverse via Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, CheckError> {
        if !self.is_square() {
            return Err(CheckError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or_else(|| CheckError::Structural("singular matrix".into()))?;
            if pivot_row != col {
                for j in 0..n {
                    a.entries.swap(col * n + j, pivot_row * n + j);
                    inv.entries.swap(col * n + j, pivot_row * n + j);
                }
            }
            let pinv = a[(col, col)].inv();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &pinv;
                inv[(col, j)] = &inv[(col, j)] * &pinv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &a[(col, j)] * &f;
                    a[(r, j)] = &a[(r, j)] - &t;
                    let t = &inv[(col, j)] * &f;
                    inv[(r, j)] = &inv[(r, j)] - &t;
                }
            }
        }
        Ok(inv)
    }

    /// Basis of the (right) nullspace of `self`, exact.
    pub fn nullspace(&self) -> Vec<Vec<GaussianRational>> {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(pr) = (row..m).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            if pr != row {
                for j in 0..n {
                    a.entries.swap(row * n + j, pr * n + j);
                }
            }
            let pinv = a[(row, col)].inv();
            for j in 0..n {
                a[(row, j)] = &a[(row, j)] * &pinv;
            }
            for r in 0..m {
                if r == row || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &a[(row, j)] * &f;
                    a[(r, j)] = &a[(r, j)] - &t;
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == m {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![GaussianRational::zero(); n];
            v[free] = GaussianRational::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (r, c): (usize, usize)) -> &R {
        &self.entries[r * self.cols + c]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut R {
        &mut self.entries[r * self.cols + c]
    }
}

impl<R: fmt::Display> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[ ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.entries[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;
    use crate::scalar::GaussianRational as G;

    fn random_matrix(rng: &mut SeededRng, n: usize) -> NumMatrix {
        Matrix::from_fn(n, n, |_, _| rng.gaussian_rational(6, 4))
    }

    #[test]
    fn kron_identity() {
        let i2 = NumMatrix::identity(2);
        assert_eq!(i2.kron(&i2), NumMatrix::identity(4));
    }

    #[test]
    fn kron_basis_permutation() {
        // sigma1 (x) sigma1 maps e1 (x) e1 to e2 (x) e2.
        let s1 = Matrix::from_rows(vec![
            vec![G::zero(), G::one()],
            vec![G::one(), G::zero()],
        ]);
        let k = s1.kron(&s1);
        let mut e11 = NumMatrix::zeros(4, 1);
        e11[(0, 0)] = G::one();
        let out = k.mul(&e11);
        let mut expect = NumMatrix::zeros(4, 1);
        expect[(3, 0)] = G::one();
        assert_eq!(out, expect);
    }

    #[test]
    fn kron_mixed_product_rule() {
        // kron(A,B) * kron(C,D) = kron(AC, BD) on random rational 2x2 blocks.
        let mut rng = SeededRng::new(7);
        for _ in 0..5 {
            let (a, b, c, d) = (
                random_matrix(&mut rng, 2),
                random_matrix(&mut rng, 2),
                random_matrix(&mut rng, 2),
                random_matrix(&mut rng, 2),
            );
            assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
        }
    }

    #[test]
    fn associativity_sampled() {
        let mut rng = SeededRng::new(11);
        for _ in 0..10 {
            let (a, b, c) = (
                random_matrix(&mut rng, 3),
                random_matrix(&mut rng, 3),
                random_matrix(&mut rng, 3),
            );
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }

    #[test]
    fn exact_inverse() {
        let mut rng = SeededRng::new(3);
        for _ in 0..5 {
            let a = random_matrix(&mut rng, 4);
            if let Ok(inv) = a.inverse() {
                assert_eq!(a.mul(&inv), NumMatrix::identity(4));
                assert_eq!(inv.mul(&a), NumMatrix::identity(4));
            }
        }
    }

    #[test]
    fn nullspace_of_rank_one() {
        // [[1,1],[1,1]] has nullspace spanned by (1,-1).
        let a = Matrix::from_rows(vec![vec![G::one(), G::one()], vec![G::one(), G::one()]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!(&v[0] + &v[1], G::zero());
    }

    #[test]
    fn permutation_swaps() {
        let p = NumMatrix::permutation(3);
        assert_eq!(p.mul(&p), NumMatrix::identity(9));
        assert_eq!(p.trace(), G::from_int(3));
    }
}
