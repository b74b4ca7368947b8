//! Dense integer matrices with exact linear algebra.
//!
//! Everything here works over `BigInt`, so no computation in the crate ever
//! rounds.  Three facilities are provided:
//!
//! * [`IMat`] — a dense row-major matrix with the usual arithmetic,
//!   and a fraction-free Bareiss determinant.
//! * [`Snf`] — Smith normal form `d = u * a * v` with unimodular transforms
//!   tracked, including the divisibility chain on the diagonal.
//! * [`Solver`] — exact linear solving and inverse computation factored
//!   through the Smith form: `a x = b` has an integral solution iff each
//!   diagonal invariant divides the transformed right-hand side, which gives
//!   integrality certificates for free.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Dense row-major matrix over `BigInt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Exact division helper: panics if `b` does not divide `a`.  Used only in
/// algorithms (Bareiss) where divisibility is a theorem, so a failure here is
/// a genuine bug rather than a data error.
fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(a, b);
    assert!(r.is_zero(), "non-exact division in fraction-free elimination");
    q
}

impl IMat {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build a matrix entry-by-entry from a closure.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Build from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Column vector (an `n x 1` matrix) from a slice.
    pub fn col_vec(v: &[BigInt]) -> Self {
        IMat { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Extract row `i` as a vector.
    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Extract column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Contiguous block `[r0, r1) x [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IMat {
        IMat::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn transpose(&self) -> IMat {
        IMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn neg(&self) -> IMat {
        IMat::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    /// Determinant by the Bareiss fraction-free algorithm (exact, no
    /// rationals).  Panics if the matrix is not square.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            // Pivot: find a nonzero entry in column k at or below row k.
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let x = a.get(k, j).clone();
                            let y = a.get(i, j).clone();
                            a.set(k, j, y);
                            a.set(i, j, x);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.get(i, j) * &pivot - a.get(i, k) * a.get(k, j);
                    a.set(i, j, exact_div(&num, &prev));
                }
                a.set(i, k, BigInt::zero());
            }
            prev = pivot;
        }
        sign * a.get(n - 1, n - 1).clone()
    }

    /// Smith normal form with transforms: returns [`Snf`] with `d = u * self * v`,
    /// `u`, `v` unimodular, `d` diagonal with a divisibility chain
    /// `d[0] | d[1] | ...` and non-negative entries.
    pub fn snf(&self) -> Snf {
        let (r, c) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = IMat::identity(r);
        let mut v = IMat::identity(c);

        // Elementary operations, mirrored into the transforms.
        fn swap_rows(d: &mut IMat, u: &mut IMat, a: usize, b: usize) {
            if a == b {
                return;
            }
            for j in 0..d.cols {
                let x = d.get(a, j).clone();
                let y = d.get(b, j).clone();
                d.set(a, j, y);
                d.set(b, j, x);
            }
            for j in 0..u.cols {
                let x = u.get(a, j).clone();
                let y = u.get(b, j).clone();
                u.set(a, j, y);
                u.set(b, j, x);
            }
        }
        fn swap_cols(d: &mut IMat, v: &mut IMat, a: usize, b: usize) {
            if a == b {
                return;
            }
            for i in 0..d.rows {
                let x = d.get(i, a).clone();
                let y = d.get(i, b).clone();
                d.set(i, a, y);
                d.set(i, b, x);
            }
            for i in 0..v.rows {
                let x = v.get(i, a).clone();
                let y = v.get(i, b).clone();
                v.set(i, a, y);
                v.set(i, b, x);
            }
        }
        // row[a] -= q * row[b]
        fn row_sub(d: &mut IMat, u: &mut IMat, a: usize, b: usize, q: &BigInt) {
            if q.is_zero() {
                return;
            }
            for j in 0..d.cols {
                let x = d.get(a, j) - q * d.get(b, j);
                d.set(a, j, x);
            }
            for j in 0..u.cols {
                let x = u.get(a, j) - q * u.get(b, j);
                u.set(a, j, x);
            }
        }
        // col[a] -= q * col[b]
        fn col_sub(d: &mut IMat, v: &mut IMat, a: usize, b: usize, q: &BigInt) {
            if q.is_zero() {
                return;
            }
            for i in 0..d.rows {
                let x = d.get(i, a) - q * d.get(i, b);
                d.set(i, a, x);
            }
            for i in 0..v.rows {
                let x = v.get(i, a) - q * v.get(i, b);
                v.set(i, a, x);
            }
        }
        fn negate_row(d: &mut IMat, u: &mut IMat, a: usize) {
            for j in 0..d.cols {
                let x = -d.get(a, j);
                d.set(a, j, x);
            }
            for j in 0..u.cols {
                let x = -u.get(a, j);
                u.set(a, j, x);
            }
        }

        let t_max = r.min(c);
        let mut t = 0;
        while t < t_max {
            // Find the entry of smallest absolute value in the remaining block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if d.get(i, j).is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if d.get(i, j).abs() < d.get(bi, bj).abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break; // remaining block all zero
            };
            swap_rows(&mut d, &mut u, t, pi);
            swap_cols(&mut d, &mut v, t, pj);

            // Clear row and column t, then enforce divisibility, keeping the
            // pivot position fixed throughout.  Termination: every surviving
            // remainder swapped into the pivot strictly shrinks |pivot|, and
            // after a divisibility fold the offending entry sits in the
            // pivot row where the next clearing pass is forced to leave a
            // (strictly smaller) remainder — so folds cannot recur forever.
            loop {
                loop {
                    let mut dirty = false;
                    for i in t + 1..r {
                        if !d.get(i, t).is_zero() {
                            let q = num_integer::Integer::div_floor(d.get(i, t), d.get(t, t));
                            row_sub(&mut d, &mut u, i, t, &q);
                            if !d.get(i, t).is_zero() {
                                swap_rows(&mut d, &mut u, t, i);
                                dirty = true;
                            }
                        }
                    }
                    for j in t + 1..c {
                        if !d.get(t, j).is_zero() {
                            let q = num_integer::Integer::div_floor(d.get(t, j), d.get(t, t));
                            col_sub(&mut d, &mut v, j, t, &q);
                            if !d.get(t, j).is_zero() {
                                swap_cols(&mut d, &mut v, t, j);
                                dirty = true;
                            }
                        }
                    }
                    if !dirty {
                        break;
                    }
                }

                // Divisibility chain: if the pivot fails to divide some
                // remaining entry, fold that row into row t and re-clear
                // with the same pivot.
                let mut folded = false;
                'chain: for i in t + 1..r {
                    for j in t + 1..c {
                        if !num_integer::Integer::is_multiple_of(d.get(i, j), d.get(t, t)) {
                            let minus_one = -BigInt::one();
                            row_sub(&mut d, &mut u, t, i, &minus_one); // row t += row i
                            folded = true;
                            break 'chain;
                        }
                    }
                }
                if !folded {
                    break;
                }
            }
            if d.get(t, t).is_negative() {
                negate_row(&mut d, &mut u, t);
            }
            t += 1;
        }

        debug_assert_eq!(u.mul(self).mul(&v), d, "SNF transform bookkeeping broke");
        Snf { u, d, v }
    }
}

/// Smith normal form `d = u * a * v` of a matrix `a`, with `u` and `v`
/// unimodular and `d` diagonal, non-negative, each entry dividing the next.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IMat,
    pub d: IMat,
    pub v: IMat,
}

impl Snf {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        (0..self.d.rows().min(self.d.cols())).filter(|&i| !self.d.get(i, i).is_zero()).count()
    }

    /// The nonzero diagonal entries (the invariant factors).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

/// Fraction-free Gauss–Jordan (Bareiss/Montante) elimination on `[a | I]`:
/// returns `(d, c)` with `c * a = d * I` and `d = ±det(a)`, or `None` when
/// `a` is singular.  All divisions are exact and intermediate entries are
/// minors of the input, so entry sizes stay Hadamard-bounded — this is the
/// growth-controlled path for dense matrices, where naive elimination
/// explodes.
fn bareiss_jordan(a: &IMat) -> Option<(BigInt, IMat)> {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    if n == 0 {
        return Some((BigInt::one(), IMat::identity(0)));
    }
    // Augmented matrix [a | I], row-major.
    let w = 2 * n;
    let mut m: Vec<BigInt> = Vec::with_capacity(n * w);
    for i in 0..n {
        for j in 0..n {
            m.push(a.get(i, j).clone());
        }
        for j in 0..n {
            m.push(if i == j { BigInt::one() } else { BigInt::zero() });
        }
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k * w + k].is_zero() {
            // Columns 0..k are already diagonal, so only rows below can
            // rescue the pivot; if none does, the matrix is singular.
            let Some(swap) = (k + 1..n).find(|&i| !m[i * w + k].is_zero()) else {
                return None;
            };
            for j in 0..w {
                m.swap(k * w + j, swap * w + j);
            }
            for j in 0..w {
                let x = -&m[swap * w + j];
                m[swap * w + j] = x;
            }
        }
        let pivot = m[k * w + k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let lead = m[i * w + k].clone();
            for j in 0..w {
                let num = &pivot * &m[i * w + j] - &lead * &m[k * w + j];
                m[i * w + j] = exact_div(&num, &prev);
            }
        }
        prev = pivot;
    }
    // Left block is now prev * I (fraction-free Jordan invariant) except
    // that row n-1 kept its original scale only on the diagonal; verify.
    let d = prev;
    for i in 0..n {
        for j in 0..n {
            let expected_zero = i != j;
            if expected_zero {
                assert!(m[i * w + j].is_zero(), "elimination left a residue");
            } else {
                assert_eq!(m[i * w + j], d, "elimination pivot scale broke");
            }
        }
    }
    let c = IMat::from_fn(n, n, |i, j| m[i * w + n + j].clone());
    Some((d, c))
}

#[derive(Debug, Clone)]
enum SolverKind {
    /// Nonsingular: `adj * a = det * I` from fraction-free Jordan
    /// elimination.
    Regular { det: BigInt, adj: IMat },
    /// Singular: fall back to the Smith form.
    Smith(Snf),
}

/// A square matrix factored once for repeated exact solves and (when
/// unimodular) inversion.  Nonsingular matrices use growth-controlled
/// fraction-free elimination; singular ones fall back to Smith form.
#[derive(Debug, Clone)]
pub struct Solver {
    n: usize,
    kind: SolverKind,
}

impl Solver {
    pub fn new(a: &IMat) -> Solver {
        assert_eq!(a.rows(), a.cols(), "Solver requires a square matrix");
        let kind = match bareiss_jordan(a) {
            Some((det, adj)) => SolverKind::Regular { det, adj },
            None => SolverKind::Smith(a.snf()),
        };
        Solver { n: a.rows(), kind }
    }

    /// Solve `a x = b` over the integers.  A failure of divisibility (or an
    /// inconsistent singular system) means there is no integral solution and
    /// yields a [`Error::CertificateFailure`].
    pub fn solve(&self, b: &[BigInt]) -> Result<Vec<BigInt>, Error> {
        assert_eq!(b.len(), self.n, "right-hand side has wrong length");
        match &self.kind {
            SolverKind::Regular { det, adj } => {
                // x = adj * b / det, coordinate by coordinate.
                let y = adj.mul_vec(b);
                let mut x = Vec::with_capacity(self.n);
                for yi in y {
                    let (q, r) = num_integer::Integer::div_rem(&yi, det);
                    if !r.is_zero() {
                        return Err(Error::CertificateFailure(format!(
                            "linear system has no integral solution: \
                             {yi} not divisible by determinant {det}"
                        )));
                    }
                    x.push(q);
                }
                Ok(x)
            }
            SolverKind::Smith(snf) => {
                // With d = u a v this is d (v^-1 x) = u b: each coordinate of
                // u b must be divisible by the matching invariant factor.
                let ub = snf.u.mul_vec(b);
                let mut y = vec![BigInt::zero(); self.n];
                for i in 0..self.n {
                    let di = snf.d.get(i, i);
                    if di.is_zero() {
                        if !ub[i].is_zero() {
                            return Err(Error::CertificateFailure(format!(
                                "linear system has no solution: \
                                 residual {} against zero invariant",
                                ub[i]
                            )));
                        }
                    } else {
                        let (q, r) = num_integer::Integer::div_rem(&ub[i], di);
                        if !r.is_zero() {
                            return Err(Error::CertificateFailure(format!(
                                "linear system has no integral solution: \
                                 {} not divisible by invariant {}",
                                ub[i], di
                            )));
                        }
                        y[i] = q;
                    }
                }
                Ok(snf.v.mul_vec(&y))
            }
        }
    }

    /// Exact inverse; errors unless the determinant is a unit.
    pub fn inverse(&self) -> Result<IMat, Error> {
        match &self.kind {
            SolverKind::Regular { det, adj } => {
                if det.is_one() {
                    Ok(adj.clone())
                } else if (-det).is_one() {
                    Ok(adj.neg())
                } else {
                    Err(Error::CertificateFailure(format!(
                        "matrix is not unimodular: determinant {det}"
                    )))
                }
            }
            SolverKind::Smith(_) => Err(Error::CertificateFailure(
                "matrix is singular, no inverse".into(),
            )),
        }
    }
}

/// Convenience: exact inverse of a unimodular matrix.
pub fn inverse(a: &IMat) -> Result<IMat, Error> {
    Solver::new(a).inverse()
}
