//! Dense matrices over arbitrary-precision integers, with the exact
//! normal forms (Hermite, Smith) the lattice layer is built on.
//!
//! Vectors are columns; a basis of a subgroup of `Z^n` is a matrix whose
//! columns are the basis vectors. Canonical bases are column-style Hermite
//! normal forms, so equal subgroups have identical basis matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMat { rows, cols, data }
    }

    /// Row-major construction from machine integers; panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMat::identity(self.rows)
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn neg(&self) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| c * &self[(i, j)])
    }

    pub fn kronecker(&self, other: &IntMat) -> IntMat {
        IntMat::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| &self[(i / other.rows, j / other.cols)] * &other[(i % other.rows, j % other.cols)],
        )
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        IntMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols);
        IntMat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    pub fn column(&self, j: usize) -> IntMat {
        IntMat::from_fn(self.rows, 1, |i, _| self[(i, j)].clone())
    }

    pub fn set_column(&mut self, j: usize, col: &IntMat) {
        assert_eq!(col.rows, self.rows);
        assert_eq!(col.cols, 1);
        for i in 0..self.rows {
            self[(i, j)] = col[(i, 0)].clone();
        }
    }

    /// The submatrix of rows `lo..hi` (all columns).
    pub fn row_range(&self, lo: usize, hi: usize) -> IntMat {
        assert!(lo <= hi && hi <= self.rows);
        IntMat::from_fn(hi - lo, self.cols, |i, j| self[(lo + i, j)].clone())
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &IntMat) -> IntMat {
        IntMat::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| match (i < self.rows, j < self.cols) {
                (true, true) => self[(i, j)].clone(),
                (false, false) => other[(i - self.rows, j - self.cols)].clone(),
                _ => BigInt::zero(),
            },
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a -= q * row_b
    fn row_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * &self[(b, j)];
            self[(a, j)] -= t;
        }
    }

    /// col_a -= q * col_b
    fn col_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q * &self[(i, b)];
            self[(i, a)] -= t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -&self[(a, j)];
            self[(a, j)] = t;
        }
    }
}

impl Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form with transform: returns `(h, u)` with
/// `u * a == h`, `u` unimodular, `h` in reduced row echelon form over `Z`
/// (positive pivots, zeros below, entries above a pivot reduced into
/// `[0, pivot)`). Zero rows are kept at the bottom so `u` stays square.
pub fn row_hnf_with_transform(a: &IntMat) -> (IntMat, IntMat) {
    let mut h = a.clone();
    let mut u = IntMat::identity(a.rows());
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        // gcd elimination in column c among rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..h.rows() {
                if !h[(i, c)].is_zero()
                    && best.is_none_or(|b| h[(i, c)].abs() < h[(b, c)].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            u.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..h.rows() {
                if !h[(i, c)].is_zero() {
                    let q = &h[(i, c)] / &h[(r, c)];
                    h.row_axpy(i, r, &q);
                    u.row_axpy(i, r, &q);
                    if !h[(i, c)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.row_axpy(i, r, &q);
            u.row_axpy(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Canonical row HNF with zero rows dropped.
pub fn row_hnf(a: &IntMat) -> IntMat {
    let (h, _) = row_hnf_with_transform(a);
    let nonzero = (0..h.rows())
        .filter(|&i| (0..h.cols()).any(|j| !h[(i, j)].is_zero()))
        .count();
    h.row_range(0, nonzero)
}

/// Canonical basis of the column span: columns of the result form the
/// Hermite basis of the subgroup of `Z^n` generated by the columns of `a`.
pub fn col_hnf(a: &IntMat) -> IntMat {
    row_hnf(&a.transpose()).transpose()
}

/// Basis of the integer kernel `{x : a·x = 0}`, as canonical columns.
/// The kernel of an integer matrix is a saturated subgroup, so this basis
/// is primitive.
pub fn kernel_basis(a: &IntMat) -> IntMat {
    let (h, u) = row_hnf_with_transform(&a.transpose());
    let mut gens = IntMat::zero(a.cols(), 0);
    for i in 0..h.rows() {
        if (0..h.cols()).all(|j| h[(i, j)].is_zero()) {
            let row = IntMat::from_fn(a.cols(), 1, |k, _| u[(i, k)].clone());
            gens = gens.hstack(&row);
        }
    }
    col_hnf(&gens)
}

/// Smith normal form with transforms: `u * a * v == d`, `u`, `v`
/// unimodular, `d` diagonal with `d_1 | d_2 | ...` nonnegative.
pub fn snf_with_transforms(a: &IntMat) -> (IntMat, IntMat, IntMat) {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows());
    let mut v = IntMat::identity(a.cols());
    let n = a.rows().min(a.cols());
    for t in 0..n {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows() {
                for j in t..d.cols() {
                    if !d[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);
            for i in t + 1..d.rows() {
                if !d[(i, t)].is_zero() {
                    let q = &d[(i, t)] / &d[(t, t)];
                    d.row_axpy(i, t, &q);
                    u.row_axpy(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        continue 'pivot;
                    }
                }
            }
            for j in t + 1..d.cols() {
                if !d[(t, j)].is_zero() {
                    let q = &d[(t, j)] / &d[(t, t)];
                    d.col_axpy(j, t, &q);
                    v.col_axpy(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        continue 'pivot;
                    }
                }
            }
            // enforce divisibility of the remaining block by the pivot
            for i in t + 1..d.rows() {
                for j in t + 1..d.cols() {
                    if !d[(i, j)].mod_floor(&d[(t, t)]).is_zero() {
                        let one = BigInt::one();
                        // row_t += row_i, then restart elimination
                        d.row_axpy(t, i, &(-&one));
                        u.row_axpy(t, i, &(-&one));
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, d, v)
}

/// The diagonal of the Smith normal form (nonnegative, divisor chain).
pub fn snf_diagonal(a: &IntMat) -> Vec<BigInt> {
    let (_, d, _) = snf_with_transforms(a);
    (0..a.rows().min(a.cols())).map(|i| d[(i, i)].clone()).collect()
}

/// Solve `a · x = b` over the integers, columnwise; `None` if any column
/// has no integral solution.
pub fn solve(a: &IntMat, b: &IntMat) -> Option<IntMat> {
    assert_eq!(a.rows(), b.rows(), "shape mismatch in solve");
    let (u, d, v) = snf_with_transforms(a);
    let c = u.mul(b);
    let n = a.rows().min(a.cols());
    let mut y = IntMat::zero(a.cols(), b.cols());
    for col in 0..b.cols() {
        for i in 0..a.rows() {
            let ci = &c[(i, col)];
            if i < n && !d[(i, i)].is_zero() {
                let (q, r) = ci.div_rem(&d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[(i, col)] = q;
            } else if !ci.is_zero() {
                return None;
            }
        }
    }
    Some(v.mul(&y))
}

/// A subgroup of `Z^n` given by column generators, preprocessed for
/// repeated membership tests.
#[derive(Debug, Clone)]
pub struct ColSpan {
    dim: usize,
    hnf_rows: IntMat,
    pivots: Vec<usize>,
}

impl ColSpan {
    pub fn new(gens: &IntMat) -> Self {
        let hnf_rows = row_hnf(&gens.transpose());
        let pivots = (0..hnf_rows.rows())
            .map(|i| (0..hnf_rows.cols()).find(|&j| !hnf_rows[(i, j)].is_zero()).unwrap())
            .collect();
        ColSpan {
            dim: gens.rows(),
            hnf_rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.hnf_rows.rows()
    }

    pub fn contains(&self, v: &IntMat) -> bool {
        assert_eq!(v.rows(), self.dim);
        assert_eq!(v.cols(), 1);
        let mut w: Vec<BigInt> = (0..v.rows()).map(|i| v[(i, 0)].clone()).collect();
        for (i, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let (q, r) = w[p].div_rem(&self.hnf_rows[(i, p)]);
            if !r.is_zero() {
                return false;
            }
            for (j, wj) in w.iter_mut().enumerate() {
                *wj -= &q * &self.hnf_rows[(i, j)];
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_all_columns(&self, m: &IntMat) -> bool {
        (0..m.cols()).all(|j| self.contains(&m.column(j)))
    }
}

/// Exact equality of the subgroups generated by the columns of `a` and `b`.
pub fn same_column_span(a: &IntMat, b: &IntMat) -> bool {
    col_hnf(a) == col_hnf(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(rows)
    }

    #[test]
    fn hnf_known_small() {
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let h = row_hnf(&a);
        assert_eq!(h, m(&[vec![2, 0], vec![0, 4]]));
    }

    #[test]
    fn hnf_is_idempotent() {
        let a = m(&[vec![3, 1, 2], vec![0, 5, 7], vec![6, 2, 4]]);
        let h = row_hnf(&a);
        assert_eq!(row_hnf(&h), h);
    }

    #[test]
    fn snf_known_small() {
        // gcd 2, |det| = 8: diag (2, 4)
        let a = m(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(
            snf_diagonal(&a),
            vec![BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn kernel_of_augmentation_row() {
        let a = m(&[vec![1, 1, 1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 3);
        assert!(a.mul(&k).is_zero());
        // basis of a saturated subgroup is primitive
        assert!(snf_diagonal(&k).iter().all(|d| d == &BigInt::one()));
    }

    #[test]
    fn solve_exact_and_unsolvable() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let b = m(&[vec![4], vec![9]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        let b2 = m(&[vec![3], vec![9]]);
        assert!(solve(&a, &b2).is_none());
    }

    #[test]
    fn membership_with_index() {
        // the span of 2e1, e1+e2 contains e1+e2 but not e1
        let gens = m(&[vec![2, 1], vec![0, 1]]);
        let span = ColSpan::new(&gens);
        assert!(span.contains(&m(&[vec![1], vec![1]])));
        assert!(span.contains(&m(&[vec![3], vec![1]])));
        assert!(!span.contains(&m(&[vec![1], vec![0]])));
    }

    #[test]
    fn kronecker_shape_and_entries() {
        let a = m(&[vec![1, 2]]);
        let b = m(&[vec![3], vec![4]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k, m(&[vec![3, 6], vec![4, 8]]));
    }

    fn arb_mat(max_dim: usize) -> impl Strategy<Value = IntMat> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                IntMat::from_fn(r, c, |i, j| BigInt::from(v[i * c + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn snf_transforms_are_consistent(a in arb_mat(5)) {
            let (u, d, v) = snf_with_transforms(&a);
            prop_assert_eq!(u.mul(&a).mul(&v), d.clone());
            // diagonal, nonnegative, divisor chain
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    if i != j {
                        prop_assert!(d[(i, j)].is_zero());
                    }
                }
            }
            let n = d.rows().min(d.cols());
            for i in 0..n {
                prop_assert!(!d[(i, i)].is_negative());
                if i + 1 < n && !d[(i, i)].is_zero() {
                    prop_assert!(d[(i + 1, i + 1)].mod_floor(&d[(i, i)]).is_zero());
                }
                if d[(i, i)].is_zero() && i + 1 < n {
                    prop_assert!(d[(i + 1, i + 1)].is_zero());
                }
            }
        }

        #[test]
        fn hnf_transform_and_span(a in arb_mat(5)) {
            let (h, u) = row_hnf_with_transform(&a);
            prop_assert_eq!(u.mul(&a), h.clone());
            // row spans agree: every row of a reduces to zero against h and
            // vice versa (as column spans of the transposes)
            let sa = ColSpan::new(&a.transpose());
            let sh = ColSpan::new(&h.transpose());
            prop_assert!(sh.contains_all_columns(&a.transpose()));
            prop_assert!(sa.contains_all_columns(&h.transpose()));
        }

        #[test]
        fn kernel_is_kernel(a in arb_mat(5)) {
            let k = kernel_basis(&a);
            prop_assert!(a.mul(&k).is_zero());
            if k.cols() > 0 {
                let diag = snf_diagonal(&k);
                prop_assert!(diag.iter().all(|d| d == &BigInt::one()));
            }
            // rank-nullity
            let rank = row_hnf(&a).rows();
            prop_assert_eq!(rank + k.cols(), a.cols());
        }

        #[test]
        fn solve_roundtrip(a in arb_mat(4), xs in proptest::collection::vec(-5i64..=5, 4)) {
            let x = IntMat::from_fn(a.cols(), 1, |i, _| BigInt::from(xs[i % xs.len()]));
            let b = a.mul(&x);
            let got = solve(&a, &b).expect("constructed system must be solvable");
            prop_assert_eq!(a.mul(&got), b);
        }
    }
}
