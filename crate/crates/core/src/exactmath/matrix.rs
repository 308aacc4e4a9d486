//! Dense matrices over exact fields and over Z.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Field, FieldElem};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldMat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl FieldMat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> FieldMat {
        FieldMat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> FieldMat {
        let mut m = FieldMat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows of length `cols`. Every entry must lie in `field`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<FieldElem>>) -> Result<FieldMat> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::MixedCharacteristic);
                }
                data.push(x);
            }
        }
        Ok(FieldMat {
            field,
            rows: n_rows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: FieldElem) {
        debug_assert_eq!(x.field(), self.field);
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> FieldMat {
        let mut t = FieldMat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &FieldMat) -> FieldMat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        assert_eq!(self.field, other.field);
        let mut out = FieldMat::zeros(self.field, self.rows, other.cols);
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
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `others` below `self`.
    pub fn vstack(&self, other: &FieldMat) -> FieldMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        FieldMat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Gauss-Jordan elimination. Pivots are normalized to one.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            let pivot_row: Vec<FieldElem> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for (off, pv) in pivot_row.iter().enumerate() {
                    if pv.is_zero() {
                        continue;
                    }
                    let j = c + off;
                    let v = m.get(i, j) - &(&factor * pv);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    pub fn kernel(&self) -> Vec<Vec<FieldElem>> {
        self.rref().kernel_basis()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> FieldElem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv().unwrap();
            for i in c + 1..m.rows {
                let factor = m.get(i, c) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// One solution of `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FieldMat::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let ech = aug.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.reduced.get(i, self.cols).clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Result of [`FieldMat::rref`].
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: FieldMat,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Nonzero rows of the reduced matrix.
    pub fn basis_rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rank())
            .map(|r| self.reduced.row(r).to_vec())
            .collect()
    }

    /// Kernel basis, itself brought to reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        let m = &self.reduced;
        let field = m.field();
        let mut is_pivot = vec![false; m.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let raw: Vec<Vec<FieldElem>> = (0..m.cols())
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![field.zero(); m.cols()];
                v[free] = field.one();
                for (i, &pc) in self.pivots.iter().enumerate() {
                    v[pc] = -m.get(i, free);
                }
                v
            })
            .collect();
        if raw.is_empty() {
            return raw;
        }
        FieldMat::from_rows(field, m.cols(), raw)
            .expect("kernel vectors share the field")
            .rref()
            .basis_rows()
    }
}

/// Rank and reduced-echelon kernel basis of `a`.
pub fn rref(a: &FieldMat) -> (usize, Vec<Vec<FieldElem>>) {
    let ech = a.rref();
    (ech.rank(), ech.kernel_basis())
}

/// Incrementally maintained reduced row space, used to pick deterministic
/// complements of a subspace.
#[derive(Clone, Debug)]
pub struct RowSpace {
    dim: usize,
    rows: Vec<(usize, Vec<FieldElem>)>,
}

impl RowSpace {
    pub fn new(dim: usize) -> RowSpace {
        RowSpace {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates the pivot coordinates of every stored row from `v`.
    pub fn reduce(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.dim);
        let mut out = v.to_vec();
        for (pc, row) in &self.rows {
            let factor = out[*pc].clone();
            if factor.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o = &*o - &(&factor * x);
                }
            }
        }
        out
    }

    /// Adds `v` if it is independent; returns its reduced, leading-one form.
    pub fn insert(&mut self, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let mut r = self.reduce(v);
        let pc = r.iter().position(|x| !x.is_zero())?;
        let inv = r[pc].inv().unwrap();
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push((pc, r.clone()));
        Some(r)
    }
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<IntMat> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMat {
            rows: n,
            cols,
            data,
        })
    }

    /// Square or rectangular matrix from small-integer rows. Panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> IntMat {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        IntMat::from_rows(
            cols,
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rectangular input")
    }

    pub fn diag(entries: &[i64]) -> IntMat {
        let mut m = IntMat::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, BigInt::from(e));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: BigInt) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> IntMat {
        self.sub(&IntMat::identity(self.rows))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMat::identity(self.rows)
    }

    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn to_field(&self, field: Field) -> FieldMat {
        let rows = self
            .row_vecs()
            .iter()
            .map(|r| field.vector_from_ints(r))
            .collect();
        FieldMat::from_rows(field, self.cols, rows).expect("single field")
    }

    pub fn determinant(&self) -> BigInt {
        self.to_field(Field::Rational)
            .determinant()
            .to_integer()
            .expect("integer determinant")
    }

    pub fn rank(&self) -> usize {
        self.to_field(Field::Rational).rank()
    }

    /// Exact inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Option<IntMat> {
        let n = self.rows;
        if n != self.cols || !self.determinant().abs().is_one() {
            return None;
        }
        let q = self.to_field(Field::Rational);
        let mut aug = FieldMat::zeros(Field::Rational, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, q.get(r, c).clone());
            }
            aug.set(r, n + r, Field::Rational.one());
        }
        let red = aug.rref().reduced;
        let mut inv = IntMat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).to_integer()?);
            }
        }
        Some(inv)
    }

    fn row_combine(&mut self, a: usize, b: usize, coeffs: [&BigInt; 4]) {
        // (row_a, row_b) <- (s*row_a + t*row_b, u*row_a + v*row_b)
        let [s, t, u, v] = coeffs;
        for c in 0..self.cols {
            let x = self.get(a, c).clone();
            let y = self.get(b, c).clone();
            self.set(a, c, s * &x + t * &y);
            self.set(b, c, u * &x + v * &y);
        }
    }

    fn row_axpy(&mut self, target: usize, src: usize, k: &BigInt) {
        // row_target -= k * row_src
        for c in 0..self.cols {
            let v = self.get(target, c) - k * self.get(src, c);
            self.set(target, c, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u * a = h`, `u` unimodular,
/// pivots positive and entries above each pivot reduced into `[0, pivot)`.
/// Zero rows of `h` come last.
pub fn hermite_normal_form(a: &IntMat) -> (IntMat, IntMat) {
    let mut h = a.clone();
    let mut u = IntMat::identity(a.rows());
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        for i in r + 1..h.rows() {
            if h.get(i, c).is_zero() {
                continue;
            }
            let a_rc = h.get(r, c).clone();
            let a_ic = h.get(i, c).clone();
            let eg = a_rc.extended_gcd(&a_ic);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let uu = -(&a_ic / &g);
            let vv = &a_rc / &g;
            h.row_combine(r, i, [&s, &t, &uu, &vv]);
            u.row_combine(r, i, [&s, &t, &uu, &vv]);
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h.get(r, c).clone();
        for k in 0..r {
            let q = h.get(k, c).div_floor(&pivot);
            if !q.is_zero() {
                h.row_axpy(k, r, &q);
                u.row_axpy(k, r, &q);
            }
        }
        r += 1;
    }
    debug_assert_eq!(u.mul(a), h);
    (h, u)
}

/// Drops the zero rows of a Hermite form.
pub(crate) fn nonzero_rows(h: &IntMat) -> IntMat {
    let rows: Vec<Vec<BigInt>> = h
        .row_vecs()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    IntMat::from_rows(h.cols(), rows).unwrap()
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Basis rows of the saturation of the row lattice of `b`, in Hermite normal form.
pub(crate) fn saturated_basis(b: &IntMat) -> Result<IntMat> {
    let r = b.rows();
    let n = b.cols();
    if r == 0 {
        return Ok(IntMat::zeros(0, n));
    }
    if b.rank() < r {
        return Err(Error::DependentRows);
    }
    // U * B^T = [H; 0], so B = H^T * (first r columns of U^-1)^T and those
    // columns extend to a Z-basis of Z^n.
    let (_, u) = hermite_normal_form(&b.transpose());
    let uinv = u.unimodular_inverse().expect("transform is unimodular");
    let rows: Vec<Vec<BigInt>> = (0..r)
        .map(|j| (0..n).map(|i| uinv.get(i, j).clone()).collect())
        .collect();
    let basis = IntMat::from_rows(n, rows)?;
    Ok(nonzero_rows(&hermite_normal_form(&basis).0))
}

/// Saturated Z-basis of `{x in Z^n : m x = 0}`.
pub fn integer_kernel(m: &IntMat) -> IntMat {
    let kernel = m.to_field(Field::Rational).kernel();
    let rows: Vec<Vec<BigInt>> = kernel
        .iter()
        .map(|v| {
            let q: Vec<BigRational> = v.iter().map(|x| x.as_rational().unwrap().clone()).collect();
            primitive_integer_vector(&q)
        })
        .collect();
    let b = IntMat::from_rows(m.cols(), rows).unwrap();
    saturated_basis(&b).expect("kernel basis is independent")
}

/// Entrywise reduction of an integer matrix into F_p.
pub fn reduce_mod_p(m: &IntMat, p: u64) -> Result<FieldMat> {
    Ok(m.to_field(Field::from_characteristic(p)?))
}

/// Reduction of a single integer into F_p.
pub fn reduce_int_mod_p(x: &BigInt, p: u64) -> Result<FieldElem> {
    Ok(Field::from_characteristic(p)?.from_bigint(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> FieldMat {
        IntMat::from_i64(rows).to_field(Field::Rational)
    }

    fn qv(v: &[i64]) -> Vec<FieldElem> {
        v.iter().map(|&x| Field::Rational.from_i64(x)).collect()
    }

    #[test]
    fn rref_identity() {
        let (rank, ker) = rref(&FieldMat::identity(Field::Rational, 3));
        assert_eq!(rank, 3);
        assert!(ker.is_empty());
    }

    #[test]
    fn rref_zero_matrix() {
        let (rank, ker) = rref(&FieldMat::zeros(Field::Rational, 2, 3));
        assert_eq!(rank, 0);
        assert_eq!(ker, vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])]);
    }

    #[test]
    fn rref_all_ones() {
        // hand reduction: [[1,1],[1,1]] -> [[1,1],[0,0]], kernel spanned by (1,-1)
        let (rank, ker) = rref(&q(&[&[1, 1], &[1, 1]]));
        assert_eq!(rank, 1);
        assert_eq!(ker, vec![qv(&[1, -1])]);
    }

    #[test]
    fn mixed_entries_rejected() {
        let rows = vec![vec![Field::Rational.one(), Field::Prime(5).one()]];
        assert_eq!(
            FieldMat::from_rows(Field::Rational, 2, rows),
            Err(Error::MixedCharacteristic)
        );
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = q(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let (rank, ker) = rref(&a);
        assert_eq!(rank + ker.len(), 4);
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn diag_mod_three() {
        let m = reduce_mod_p(&IntMat::diag(&[-1, -1, 1]), 3).unwrap();
        assert_eq!(m, IntMat::diag(&[2, 2, 1]).to_field(Field::Prime(3)));
    }

    #[test]
    fn minus_one_mod_five() {
        assert_eq!(
            reduce_int_mod_p(&BigInt::from(-1), 5).unwrap(),
            Field::Prime(5).from_i64(4)
        );
    }

    #[test]
    fn swap_kernel_mod_five_matches_integral_kernel() {
        let g = IntMat::from_i64(&[[0, 1], [1, 0]]).minus_identity();
        let integral = integer_kernel(&g);
        let reduced = integral.to_field(Field::Prime(5)).row_vecs();
        let direct = reduce_mod_p(&g, 5).unwrap().kernel();
        assert_eq!(reduced, direct);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntMat::from_i64(&[[4, 6, 2], [2, 3, 7], [-6, -9, 1]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a), h);
        assert!(u.determinant().abs().is_one());
        assert!(h.get(0, 0).is_positive());
    }

    #[test]
    fn determinant_and_solve() {
        let a = q(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.determinant(), Field::Rational.one());
        let x = a.solve(&qv(&[3, 2])).unwrap();
        assert_eq!(x, qv(&[1, 1]));
        assert!(q(&[&[1, 1], &[1, 1]]).solve(&qv(&[1, 2])).is_none());
    }

    #[test]
    fn rowspace_complement() {
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(&qv(&[1, 1, 0])).is_some());
        assert!(rs.insert(&qv(&[2, 2, 0])).is_none());
        let r = rs.insert(&qv(&[1, 0, 0])).unwrap();
        assert_eq!(r, qv(&[0, 1, 0]));
        assert_eq!(rs.rank(), 2);
    }
}
