//! Exact integer matrices. All entries are arbitrary-precision integers and
//! no operation in this file ever rounds.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactlin::poly::IntPoly;
use crate::{linalg, Int, Rat};

/// A square matrix with exact integer entries, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<Int>) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        IntMatrix { n, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must be square");
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Int::from(x)))
            .collect();
        IntMatrix::new(n, entries)
    }

    pub fn zero(n: usize) -> Self {
        IntMatrix::new(n, vec![Int::zero(); n * n])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn scalar(n: usize, c: &Int) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// `Some(c)` when the matrix equals `c`·identity.
    pub fn as_scalar(&self) -> Option<Int> {
        let c = self.get(0, 0).clone();
        let zero = Int::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let want = if i == j { &c } else { &zero };
                if want != self.get(i, j) {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix::new(self.n, entries)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix::new(self.n, entries)
    }

    pub fn scale(&self, c: &Int) -> Self {
        IntMatrix::new(self.n, self.entries.iter().map(|e| e * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Int::zero();
                for k in 0..n {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_int_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| Rat::from(self.get(i, j).clone()) * &v[j])
                    .sum()
            })
            .collect()
    }

    pub fn trace(&self) -> Int {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        bareiss_det(self.n, |i, j| self.get(i, j).clone())
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        linalg::rank(self.to_rat_rows())
    }

    pub fn to_rat_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|e| Rat::from(e.clone())).collect())
            .collect()
    }

    /// The integer matrix `den·M − num·I`, whose rank equals the rank of
    /// `M − (num/den)·I`. Used for eigenspace and Jordan computations with a
    /// rational eigenvalue without leaving integer arithmetic.
    pub fn shifted_by_rational(&self, lambda: &Rat) -> IntMatrix {
        let num = lambda.numer();
        let den = lambda.denom();
        let mut m = self.scale(den);
        for i in 0..self.n {
            let v = m.get(i, i) - num;
            m.set(i, i, v);
        }
        m
    }

    /// Primitive integer basis of the kernel of `M` over the rationals.
    pub fn kernel(&self) -> Vec<Vec<Int>> {
        linalg::kernel_basis(self.to_rat_rows(), self.n)
            .into_iter()
            .map(|v| clear_denominators(&v))
            .collect()
    }

    /// Characteristic polynomial `det(xI − M)` with exact integer
    /// coefficients, ascending degree, by the Faddeev–LeVerrier recurrence
    /// (every division in the recurrence is exact).
    pub fn char_poly(&self) -> IntPoly {
        let n = self.n;
        let mut coeffs = vec![Int::zero(); n + 1];
        coeffs[n] = Int::one();
        let mut b = IntMatrix::identity(n);
        for k in 1..=n {
            b = self.mul(&b);
            let c = -b.trace() / Int::from(k as i64);
            coeffs[n - k] = c.clone();
            for i in 0..n {
                let v = b.get(i, i) + &c;
                b.set(i, i, v);
            }
        }
        IntPoly::new(coeffs)
    }

    /// Evaluates an integer polynomial at the matrix (Horner form).
    pub fn eval_poly(&self, p: &IntPoly) -> IntMatrix {
        let mut acc = IntMatrix::zero(self.n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            writeln!(
                f,
                "  {}",
                self.row(i)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )?;
        }
        write!(f, "]")
    }
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (gcd of entries 1, sign of the first nonzero entry preserved).
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive_int_vector(&ints)
}

/// Divides an integer vector by the gcd of its entries. The direction is
/// preserved; an all-zero vector is returned unchanged.
pub fn primitive_int_vector(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = num_integer::gcd(g, x.abs());
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// The restriction of a matrix to the smallest invariant subspace containing
/// a vector: the basis is `v, Mv, M²v, …` up to the first linear dependence,
/// and the restricted action is the integer companion matrix of the minimal
/// polynomial of `v` (monic integer by Gauss's lemma, since it divides the
/// characteristic polynomial).
#[derive(Clone, Debug)]
pub struct KrylovRestriction {
    /// Integer basis vectors `M^i v` of the invariant subspace.
    pub basis: Vec<Vec<Int>>,
    /// The action of `M` on the subspace in that basis.
    pub companion: IntMatrix,
}

pub fn krylov_restriction(m: &IntMatrix, v: &[Int]) -> KrylovRestriction {
    assert_eq!(v.len(), m.dim());
    assert!(v.iter().any(|x| !x.is_zero()), "needs a nonzero start vector");
    let mut basis: Vec<Vec<Int>> = vec![v.to_vec()];
    loop {
        let w = m.mul_int_vec(basis.last().unwrap());
        let rows: Vec<Vec<Rat>> = (0..m.dim())
            .map(|i| basis.iter().map(|b| Rat::from(b[i].clone())).collect())
            .collect();
        let rhs: Vec<Rat> = w.iter().map(|x| Rat::from(x.clone())).collect();
        if let Some(c) = linalg::solve(&rows, &rhs) {
            let d = basis.len();
            let mut companion = IntMatrix::zero(d);
            for i in 0..d - 1 {
                companion.set(i + 1, i, Int::one());
            }
            for (j, cj) in c.iter().enumerate() {
                assert!(
                    cj.is_integer(),
                    "minimal polynomial of an integer matrix must have integer coefficients"
                );
                companion.set(j, d - 1, cj.to_integer());
            }
            return KrylovRestriction { basis, companion };
        }
        basis.push(w);
    }
}

/// Fraction-free determinant of an `n`×`n` matrix given by an entry accessor.
pub fn bareiss_det<F: Fn(usize, usize) -> Int>(n: usize, entry: F) -> Int {
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev; // exact by Bareiss
            }
        }
        for i in k + 1..n {
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_matches_cofactor_on_small_matrices() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(m.det(), Int::from(-3));
        let id = IntMatrix::identity(4);
        assert_eq!(id.det(), Int::one());
    }

    #[test]
    fn char_poly_basics() {
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![-1, 3]]);
        let p = m.char_poly();
        assert_eq!(p.coeffs(), &[Int::from(3), Int::from(-4), Int::from(1)]);
    }

    #[test]
    fn kernel_is_primitive() {
        let m = IntMatrix::from_rows(&[vec![2, -4], vec![1, -2]]);
        let k = m.kernel();
        assert_eq!(k, vec![vec![Int::from(2), Int::from(1)]]);
    }
}
