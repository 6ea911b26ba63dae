//! Exact linear algebra over ℚ and ℤ.
//!
//! Scalars are arbitrary-precision: [`Rational`] is always stored in lowest
//! terms with a positive denominator and all arithmetic is exact. Matrices
//! are small and dense; the algorithms favour determinism over asymptotic
//! cleverness (fixed pivot rules, canonical output bases).

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer-valued rational.
pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn rat_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat_int(x)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Rational, a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Scale a nonzero rational vector by a positive rational so that the entries
/// become coprime integers. The direction (sign) is preserved: this is the
/// canonical representative of a ray.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.iter()
        .map(|n| Rational::from_integer(n / &g))
        .collect()
}

/// Like [`primitive`], but additionally flips the sign so the leading nonzero
/// entry is positive. Only meaningful for sign-free vectors (lineality
/// directions, equation normals).
pub fn primitive_signed(v: &[Rational]) -> Vec<Rational> {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => vec_neg(&p),
        _ => p,
    }
}

pub fn int_dot(a: &[Integer], b: &[Integer]) -> Integer {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Integer::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Divide an integer vector by the gcd of its entries (positive scaling).
pub fn int_primitive(v: &[Integer]) -> Vec<Integer> {
    let mut g = Integer::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Like [`int_primitive`] with the leading nonzero entry made positive.
pub fn int_primitive_signed(v: &[Integer]) -> Vec<Integer> {
    let p = int_primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => p.iter().map(|y| -y).collect(),
        _ => p,
    }
}

/// Clear denominators by the lcm, yielding a primitive integer vector that
/// spans the same ray.
pub fn to_int_primitive(v: &[Rational]) -> Vec<Integer> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    int_primitive(
        &v.iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect::<Vec<_>>(),
    )
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn int_rank(rows: &[Vec<Integer>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut m: Vec<Vec<Integer>> = rows.to_vec();
    let mut rank = 0;
    for c in 0..n {
        if rank == m.len() {
            break;
        }
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        let pivot = pivot_row[c].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if !row[c].is_zero() {
                let f = row[c].clone();
                for (x, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                    let v = &*x * &pivot - &f * pv;
                    *x = v;
                }
                *row = int_primitive(row);
            }
        }
        rank += 1;
    }
    rank
}

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        let nr = rows.len();
        RatMatrix {
            rows: nr,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| rat_vec(r)).collect(), cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn mul_mat(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    let a = self.at(i, k);
                    if !a.is_zero() {
                        acc += a * other.at(k, j);
                    }
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let tmp = m.at(p, j).clone();
                    *m.at_mut(p, j) = m.at(r, j).clone();
                    *m.at_mut(r, j) = tmp;
                }
            }
            let inv = m.at(r, c).clone();
            for j in 0..m.cols {
                let v = m.at(r, j).clone() / &inv;
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.at(i, j).clone() - &f * m.at(r, j);
                        *m.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the rational kernel `{x : M x = 0}`, one vector per free
    /// column, canonical from the RREF.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let piv_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        for free in 0..self.cols {
            if piv_of_col[free].is_some() {
                continue;
            }
            let mut x = vec![Rational::zero(); self.cols];
            x[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -r.at(row, free).clone();
            }
            basis.push(x);
        }
        basis
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            let x = solve_rational(self, &e)?;
            if self.mul_vec(&x) != e {
                return None; // consistent solve but not exact: singular
            }
            cols.push(x);
        }
        let mut inv = RatMatrix::zero(n, n);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                *inv.at_mut(i, j) = x.clone();
            }
        }
        Some(inv)
    }

    /// Exact determinant by fraction-free-ish Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                det = -det;
                for j in 0..n {
                    let tmp = m.at(p, j).clone();
                    *m.at_mut(p, j) = m.at(c, j).clone();
                    *m.at_mut(c, j) = tmp;
                }
            }
            let pivot = m.at(c, c).clone();
            det *= &pivot;
            for i in (c + 1)..n {
                if !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone() / &pivot;
                    for j in c..n {
                        let v = m.at(i, j).clone() - &f * m.at(c, j);
                        *m.at_mut(i, j) = v;
                    }
                }
            }
        }
        det
    }
}

/// Solve `A x = b` exactly. Returns a particular solution, or `None` when the
/// system is inconsistent.
pub fn solve_rational(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.nrows(), b.len());
    let mut aug = RatMatrix::zero(a.nrows(), a.ncols() + 1);
    for (i, rhs) in b.iter().enumerate() {
        for j in 0..a.ncols() {
            *aug.at_mut(i, j) = a.at(i, j).clone();
        }
        *aug.at_mut(i, a.ncols()) = rhs.clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&a.ncols()) {
        return None; // row (0 ... 0 | 1)
    }
    let mut x = vec![Rational::zero(); a.ncols()];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = r.at(row, a.ncols()).clone();
    }
    Some(x)
}

/// Dense integer matrix, row-major. Used for lattice maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Integer::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Integer::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Integer>>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        let nr = rows.len();
        IntMatrix {
            rows: nr,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Integer {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Integer {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Integer] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Integer]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_rows(
            self.rows_iter()
                .map(|r| {
                    r.iter()
                        .map(|x| Rational::from_integer(x.clone()))
                        .collect()
                })
                .collect(),
            self.cols,
        )
    }

    pub fn mul_mat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Integer::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * other.at(k, j);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn mul_int_vec(&self, v: &[Integer]) -> Vec<Integer> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Integer::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    acc += a * x;
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `H = U * M`, `U` unimodular, `H` in row echelon form
/// with positive pivots, zeros below each pivot and entries above a pivot
/// reduced into `[0, pivot)`. Pivoting is leftmost column first, choosing the
/// remaining row with the smallest nonzero absolute value, so the output is
/// deterministic.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;

    let swap_rows = |m: &mut IntMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for j in 0..m.ncols() {
            let tmp = m.at(a, j).clone();
            *m.at_mut(a, j) = m.at(b, j).clone();
            *m.at_mut(b, j) = tmp;
        }
    };
    // row[a] += f * row[b]
    let add_mul = |m: &mut IntMatrix, a: usize, b: usize, f: &Integer| {
        for j in 0..m.ncols() {
            let v = m.at(a, j) + f * m.at(b, j);
            *m.at_mut(a, j) = v;
        }
    };
    let negate_row = |m: &mut IntMatrix, a: usize| {
        for j in 0..m.ncols() {
            let v = -m.at(a, j).clone();
            *m.at_mut(a, j) = v;
        }
    };

    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below row r
            let mut best: Option<(usize, Integer)> = None;
            for i in r..rows {
                let v = h.at(i, c);
                if !v.is_zero() {
                    let a = v.abs();
                    if best.as_ref().is_none_or(|(_, ba)| a < *ba) {
                        best = Some((i, a));
                    }
                }
            }
            let Some((p, _)) = best else {
                break;
            };
            swap_rows(&mut h, r, p);
            swap_rows(&mut u, r, p);
            if h.at(r, c).is_negative() {
                negate_row(&mut h, r);
                negate_row(&mut u, r);
            }
            let pivot = h.at(r, c).clone();
            let mut done = true;
            for i in (r + 1)..rows {
                if !h.at(i, c).is_zero() {
                    let q = -h.at(i, c).div_floor(&pivot);
                    add_mul(&mut h, i, r, &q);
                    add_mul(&mut u, i, r, &q);
                    if !h.at(i, c).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !h.at(r, c).is_zero() {
            // reduce entries above the pivot into [0, pivot)
            let pivot = h.at(r, c).clone();
            for i in 0..r {
                if !h.at(i, c).is_zero() {
                    let q = -h.at(i, c).div_floor(&pivot);
                    add_mul(&mut h, i, r, &q);
                    add_mul(&mut u, i, r, &q);
                }
            }
            r += 1;
        }
    }
    (h, u)
}

/// Saturated ℤ-basis of `ker(M) ∩ ℤⁿ`, in Hermite normal form.
///
/// The kernel of an integer matrix is automatically saturated in ℤⁿ; the
/// basis is extracted from the unimodular factor of the HNF of `Mᵀ`.
pub fn integer_kernel_basis(m: &IntMatrix) -> Vec<Vec<Integer>> {
    let (h, u) = hermite_normal_form(&m.transpose());
    let mut kernel_rows = Vec::new();
    for i in 0..h.nrows() {
        if h.row(i).iter().all(|x| x.is_zero()) {
            kernel_rows.push(u.row(i).to_vec());
        }
    }
    if kernel_rows.is_empty() {
        return Vec::new();
    }
    let n = m.ncols();
    let (hk, _) = hermite_normal_form(&IntMatrix::from_rows(kernel_rows, n));
    hk.rows_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| r.to_vec())
        .collect()
}

/// ℤ-basis (HNF rows) of the image lattice `M · ℤⁿ ⊆ ℤᵈ`.
pub fn integer_image_basis(m: &IntMatrix) -> Vec<Vec<Integer>> {
    let (h, _) = hermite_normal_form(&m.transpose());
    h.rows_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| r.to_vec())
        .collect()
}

/// Saturation of the row lattice of `basis` inside ℤⁿ: the lattice of all
/// integer points of its rational span, as HNF basis rows. Not used by any
/// theorem check; exposed for lattice inspection.
pub fn saturate_lattice(basis: &IntMatrix) -> Vec<Vec<Integer>> {
    // x ∈ sat(L) iff x is orthogonal to L^⊥, so saturate by taking the
    // kernel of the kernel.
    let n = basis.ncols();
    let comp = integer_kernel_basis(basis); // {y : basis · y = 0} = L^⊥ ∩ ℤⁿ
    if comp.is_empty() {
        return IntMatrix::identity(n)
            .rows_iter()
            .map(|r| r.to_vec())
            .collect();
    }
    let comp_mat = IntMatrix::from_rows(comp, n);
    integer_kernel_basis(&comp_mat)
}

/// Does the HNF row basis `h` contain `v` as a ℤ-combination? `h` must be the
/// output of [`hermite_normal_form`] restricted to its nonzero rows.
pub fn hnf_lattice_contains(h: &[Vec<Integer>], v: &[Integer]) -> bool {
    let mut v = v.to_vec();
    for row in h {
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if !v[pc].is_zero() {
            let (q, r) = v[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return false;
            }
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi -= &q * ri;
            }
        }
    }
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force lattice membership: is `v` an integer combination of
    /// `rows`, searching coefficients in `[-bound, bound]`?
    fn brute_member(rows: &[Vec<i64>], v: &[i64], bound: i64) -> bool {
        fn rec(rows: &[Vec<i64>], acc: Vec<i64>, v: &[i64], bound: i64) -> bool {
            if rows.is_empty() {
                return acc.iter().zip(v).all(|(a, b)| a == b);
            }
            (-bound..=bound).any(|c| {
                let next: Vec<i64> = acc.iter().zip(&rows[0]).map(|(a, r)| a + c * r).collect();
                rec(&rows[1..], next, v, bound)
            })
        }
        rec(rows, vec![0; v.len()], v, bound)
    }

    fn int_vec(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn hnf_identity() {
        let m = IntMatrix::identity(3);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_zero_row() {
        let m = IntMatrix::from_i64(&[&[0, 0]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, IntMatrix::from_i64(&[&[0, 0]]));
        assert_eq!(u, IntMatrix::identity(1));
    }

    #[test]
    fn hnf_row_space_preserved() {
        // H's rows must generate the same lattice as {(2,4),(3,3)}; checked
        // against a brute-force membership oracle on a small box.
        let m = IntMatrix::from_i64(&[&[2, 4], &[3, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul_mat(&m), h);
        assert_eq!(u.to_rational().det().abs(), rat_int(1).abs());
        let h_rows: Vec<Vec<i64>> = vec![vec![1, 5], vec![0, 6]];
        assert_eq!(
            h,
            IntMatrix::from_i64(&[&[1, 5], &[0, 6]]),
            "pinned deterministic HNF output"
        );
        let orig = vec![vec![2i64, 4], vec![3, 3]];
        for x in -6..=6i64 {
            for y in -6..=6i64 {
                let v = vec![x, y];
                assert_eq!(
                    brute_member(&orig, &v, 8),
                    brute_member(&h_rows, &v, 8),
                    "lattice membership differs at {v:?}"
                );
            }
        }
    }

    #[test]
    fn kernel_of_sum_map() {
        let m = IntMatrix::from_i64(&[&[1, 1, 1]]);
        let k = integer_kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Integer = v.iter().sum();
            assert!(s.is_zero());
        }
        // both candidate generators must be ℤ-combinations of the output
        for cand in [&[1i64, -1, 0][..], &[0, 1, -1]] {
            assert!(hnf_lattice_contains(&k, &int_vec(cand)));
        }
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(integer_kernel_basis(&IntMatrix::identity(3)).is_empty());
        let z = IntMatrix::zero(1, 2);
        let k = integer_kernel_basis(&z);
        assert_eq!(k.len(), 2);
        for cand in [&[1i64, 0][..], &[0, 1]] {
            assert!(hnf_lattice_contains(&k, &int_vec(cand)));
        }
    }

    #[test]
    fn kernel_is_saturated() {
        // kernel of (2, 4): contains (2, -1), primitive
        let m = IntMatrix::from_i64(&[&[2, 4]]);
        let k = integer_kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(hnf_lattice_contains(&k, &int_vec(&[2, -1])));
    }

    #[test]
    fn image_basis_cases() {
        let id = integer_image_basis(&IntMatrix::identity(2));
        assert_eq!(id, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);
        // gcd of entries is 1, so the image of (1,1,1) : ℤ³ → ℤ is all of ℤ
        let g = integer_image_basis(&IntMatrix::from_i64(&[&[1, 1, 1]]));
        assert_eq!(g, vec![int_vec(&[1])]);
        // {(2a, 3b)} lattice, membership-checked on a small box
        let d = integer_image_basis(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        for x in -6..=6i64 {
            for y in -6..=6i64 {
                let member = x % 2 == 0 && y % 3 == 0;
                assert_eq!(hnf_lattice_contains(&d, &int_vec(&[x, y])), member);
            }
        }
    }

    #[test]
    fn solve_cases() {
        let a = RatMatrix::identity(2);
        let x = solve_rational(&a, &rat_vec(&[1, 2])).unwrap();
        assert_eq!(x, rat_vec(&[1, 2]));

        let a = RatMatrix::from_i64(&[&[1, 1]]);
        let x = solve_rational(&a, &rat_vec(&[0])).unwrap();
        assert!(
            dot(&rat_vec(&[1, 1]), &x).is_zero(),
            "residual must be exactly 0"
        );

        let a = RatMatrix::from_i64(&[&[1], &[1]]);
        assert!(solve_rational(&a, &rat_vec(&[0, 1])).is_none());
    }

    #[test]
    fn saturation_utility() {
        // rows (2, 0): saturation is span{(1, 0)} ∩ ℤ² = {(a, 0)}
        let b = IntMatrix::from_i64(&[&[2, 0]]);
        let s = saturate_lattice(&b);
        assert_eq!(s, vec![int_vec(&[1, 0])]);
    }

    proptest! {
        #[test]
        fn rational_field_axioms(pn in -50i64..50, pd in 1i64..20, qn in -50i64..50, qd in 1i64..20) {
            let p = rat(pn, pd);
            let q = rat(qn, qd);
            prop_assert_eq!(&(&p + &q) - &q, p.clone());
            if !q.is_zero() {
                prop_assert_eq!((&p * &q) / &q, p);
            }
        }

        #[test]
        fn hnf_invariants(rows in proptest::collection::vec(proptest::collection::vec(-9i64..10, 3), 1..4)) {
            let refs: Vec<Vec<Integer>> = rows.iter().map(|r| int_vec(r)).collect();
            let m = IntMatrix::from_rows(refs, 3);
            let (h, u) = hermite_normal_form(&m);
            prop_assert_eq!(u.mul_mat(&m), h.clone());
            prop_assert_eq!(u.to_rational().det().abs(), rat_int(1));
            // rank + kernel dimension = n
            let k = integer_kernel_basis(&m);
            prop_assert_eq!(m.rank() + k.len(), 3);
            for v in &k {
                prop_assert!(m.mul_int_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }
}
