//! Dense exact linear algebra over F_p.
//!
//! Conventions used across the whole crate:
//! - coordinate vectors are column vectors;
//! - a linear map from an m-dimensional space to an n-dimensional one is an
//!   n x m matrix acting by `mul_vec`;
//! - subspaces are stored as reduced row-echelon bases, which makes the
//!   representation canonical: two subspaces are equal iff their `Subspace`
//!   values are structurally equal.

use crate::error::{Error, Result};
use crate::field::{Fp, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Fp,
    entries: Vec<u32>,
}

impl Matrix {
    pub fn zero(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Build from row slices of raw residues (reduced mod p).
    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let p = field.modulus();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row length",
                    expected: cols,
                    actual: r.len(),
                });
            }
            entries.extend(r.iter().map(|&x| x % p));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            field,
            entries,
        })
    }

    pub fn from_fn(field: Fp, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let p = field.modulus();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j) % p);
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v % self.field.modulus();
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.field.scalar(self.at(i, j))
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.at(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        assert_eq!(self.field, other.field);
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.at(i, j), f.mul(a, other.at(k, j)));
                    out.entries[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u32;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.at(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for (a, &b) in out.entries.iter_mut().zip(&other.entries) {
            *a = f.add(*a, b);
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for (a, &b) in out.entries.iter_mut().zip(&other.entries) {
            *a = f.sub(*a, b);
        }
        out
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = f.mul(*a, c);
        }
        out
    }

    pub fn stack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        let field = parts[0].field;
        let mut entries = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "stack: column mismatch");
            assert_eq!(m.field, field);
            entries.extend_from_slice(&m.entries);
            rows += m.rows;
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    /// Flatten to a single row-major coordinate vector.
    pub fn vectorize(&self) -> Vec<u32> {
        self.entries.clone()
    }

    pub fn from_vectorized(field: Fp, rows: usize, cols: usize, v: &[u32]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        let p = field.modulus();
        Matrix {
            rows,
            cols,
            field,
            entries: v.iter().map(|&x| x % p).collect(),
        }
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            // find a nonzero entry in this column at or below pivot_row
            let found = (pivot_row..m.rows).find(|&r| m.at(r, col) != 0);
            let Some(r) = found else { continue };
            if r != pivot_row {
                for j in 0..m.cols {
                    let (a, b) = (m.at(pivot_row, j), m.at(r, j));
                    m.set(pivot_row, j, b);
                    m.set(r, j, a);
                }
            }
            let inv = f.inv(m.at(pivot_row, col));
            if inv != 1 {
                for j in 0..m.cols {
                    let v = f.mul(m.at(pivot_row, j), inv);
                    m.set(pivot_row, j, v);
                }
            }
            for r2 in 0..m.rows {
                if r2 == pivot_row {
                    continue;
                }
                let c = m.at(r2, col);
                if c == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.at(r2, j), f.mul(c, m.at(pivot_row, j)));
                    m.set(r2, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// The kernel {v : self * v = 0} in canonical form.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let f = self.field;
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u32; self.cols];
            v[fc] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.at(ri, fc));
            }
            rows.push(v);
        }
        Subspace::from_rows(f, self.cols, &rows)
    }

    /// Some v with self * v = rhs, or None when the system is inconsistent.
    pub fn solve(&self, rhs: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(rhs.len(), self.rows, "solve: rhs length mismatch");
        let f = self.field;
        let mut aug = Matrix::zero(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, self.cols, rhs[i]);
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut v = vec![0u32; self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = r.at(ri, self.cols);
        }
        debug_assert_eq!(self.mul_vec(&v), rhs);
        Some(v)
    }

    /// Column span as a canonical subspace of the row space F^rows.
    pub fn column_space(&self) -> Subspace {
        let t = self.transpose();
        Subspace::from_rows(self.field, self.rows, &t.row_vecs())
    }

    /// Row span as a canonical subspace.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_rows(self.field, self.cols, &self.row_vecs())
    }
}

/// A linear subspace of F_p^n with a canonical (rref, zero-row-free) basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    field: Fp,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_rows(field: Fp, ambient: usize, rows: &[Vec<u32>]) -> Subspace {
        let m = Matrix::from_rows(field, ambient, rows).expect("subspace row length");
        Self::from_matrix(&m)
    }

    pub fn from_matrix(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref_with_pivots();
        let rows: Vec<Vec<u32>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let basis = Matrix::from_rows(m.field(), m.cols(), &rows).unwrap();
        Subspace {
            ambient: m.cols(),
            field: m.field(),
            basis,
            pivots,
        }
    }

    pub fn zero(field: Fp, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            field,
            basis: Matrix::zero(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Fp, ambient: usize) -> Subspace {
        Self::from_matrix(&Matrix::identity(field, ambient))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                context: "subspace ambient dimension",
                expected: self.ambient,
                actual: other.ambient,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }

    /// Canonical representative of v modulo this subspace: v reduced against
    /// the rref basis so that all pivot coordinates vanish.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let mut w = v.to_vec();
        for (ri, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            for j in 0..self.ambient {
                w[j] = f.sub(w[j], f.mul(c, self.basis.at(ri, j)));
            }
        }
        w
    }

    pub fn contains_vec(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other
            .basis_rows()
            .iter()
            .all(|row| self.contains_vec(row))
    }

    /// Coordinates of v in the rref basis (just the pivot entries), or None
    /// when v lies outside the subspace.
    pub fn coords_of(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains_vec(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// The vector with the given coordinates in the rref basis.
    pub fn from_coords(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim());
        let f = self.field;
        let mut v = vec![0u32; self.ambient];
        for (ri, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..self.ambient {
                v[j] = f.add(v[j], f.mul(c, self.basis.at(ri, j)));
            }
        }
        v
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let stacked = Matrix::stack(&[&self.basis, &other.basis]);
        Ok(Subspace::from_matrix(&stacked))
    }

    /// Annihilator under the standard bilinear form: {x : B x = 0} for the
    /// basis matrix B. Nondegeneracy of the form gives ann(ann(U)) = U.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field, self.ambient);
        }
        self.basis.kernel()
    }

    /// Intersection via the kernel of the stacked annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        if a.dim() + b.dim() == 0 {
            return Ok(Subspace::full(self.field, self.ambient));
        }
        let stacked = Matrix::stack(&[a.basis(), b.basis()]);
        Ok(stacked.kernel())
    }

    /// All vectors of the subspace, including zero. Exponential in dim; only
    /// for small search spaces.
    pub fn enumerate_vectors(&self) -> Vec<Vec<u32>> {
        let p = self.field.modulus();
        let d = self.dim();
        let total = (p as u64).pow(d as u32);
        let mut out = Vec::with_capacity(total as usize);
        let mut coords = vec![0u32; d];
        for _ in 0..total {
            out.push(self.from_coords(&coords));
            for c in coords.iter_mut() {
                *c += 1;
                if *c < p {
                    break;
                }
                *c = 0;
            }
        }
        out
    }
}

/// Enumerate every subspace of F_p^n as canonical rref bases, by pivot-column
/// set and free-entry pattern. Count is Gaussian-binomial bounded; callers
/// keep n and p small.
pub fn enumerate_subspaces(field: Fp, n: usize) -> Vec<Subspace> {
    let p = field.modulus() as u64;
    let mut out = vec![Subspace::zero(field, n)];
    for k in 1..=n {
        // choose pivot columns via bitmask combinations
        let mut mask = (1u32 << k) - 1;
        while (mask as usize) < (1usize << n) {
            let pivots: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            // free positions: row i may have arbitrary entries in non-pivot
            // columns strictly right of pivots[i]
            let mut free_pos: Vec<(usize, usize)> = Vec::new();
            for (i, &pc) in pivots.iter().enumerate() {
                for c in (pc + 1)..n {
                    if !pivots.contains(&c) {
                        free_pos.push((i, c));
                    }
                }
            }
            let combos = p.pow(free_pos.len() as u32);
            for pattern in 0..combos {
                let mut rows = vec![vec![0u32; n]; k];
                for (i, &pc) in pivots.iter().enumerate() {
                    rows[i][pc] = 1;
                }
                let mut rem = pattern;
                for &(i, c) in &free_pos {
                    rows[i][c] = (rem % p) as u32;
                    rem /= p;
                }
                let basis = Matrix::from_rows(field, n, &rows).unwrap();
                out.push(Subspace {
                    ambient: n,
                    field,
                    basis,
                    pivots: pivots.clone(),
                });
            }
            // next bitmask with the same popcount (Gosper's hack)
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            if c == 0 || r == 0 {
                break;
            }
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn rref_zero_and_identity() {
        let f2 = fp(2);
        let f3 = fp(3);
        let z = Matrix::zero(f2, 2, 2);
        assert_eq!(z.rref(), z);
        let id = Matrix::identity(f3, 3);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_hand_example() {
        // [[1,1],[1,1]] over F_2 row-reduces to [[1,1],[0,0]]
        let f2 = fp(2);
        let m = Matrix::from_rows(f2, 2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let expect = Matrix::from_rows(f2, 2, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(m.rref(), expect);
    }

    #[test]
    fn rref_idempotent() {
        let f3 = fp(3);
        let m = Matrix::from_rows(f3, 3, &[vec![1, 2, 0], vec![2, 1, 1], vec![0, 0, 2]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rref(), r);
    }

    #[test]
    fn kernel_trivial_cases() {
        let f2 = fp(2);
        assert!(Matrix::identity(f2, 2).kernel().is_zero());
        let z = Matrix::zero(f2, 1, 3);
        assert!(z.kernel().is_full());
    }

    #[test]
    fn kernel_enumeration_oracle() {
        // kernel of [[1,1,0]] over F_2: enumerate all 8 vectors
        let f2 = fp(2);
        let m = Matrix::from_rows(f2, 3, &[vec![1, 1, 0]]).unwrap();
        let k = m.kernel();
        let mut expected = Vec::new();
        for bits in 0..8u32 {
            let v = vec![bits & 1, (bits >> 1) & 1, (bits >> 2) & 1];
            if m.mul_vec(&v).iter().all(|&x| x == 0) && v.iter().any(|&x| x != 0) {
                expected.push(v);
            }
        }
        assert_eq!(k.dim(), 2);
        for v in expected {
            assert!(k.contains_vec(&v));
        }
        assert!(k.contains_vec(&[1, 1, 0]));
        assert!(k.contains_vec(&[0, 0, 1]));
    }

    #[test]
    fn solve_examples() {
        let f2 = fp(2);
        let id = Matrix::identity(f2, 2);
        assert_eq!(id.solve(&[1, 0]), Some(vec![1, 0]));
        let z = Matrix::zero(f2, 1, 1);
        assert_eq!(z.solve(&[1]), None);
        // [[1,1],[0,1]] rhs (0,1): checking all 4 candidates gives (1,1)
        let m = Matrix::from_rows(f2, 2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let mut witness = None;
        for bits in 0..4u32 {
            let v = vec![bits & 1, (bits >> 1) & 1];
            if m.mul_vec(&v) == vec![0, 1] {
                witness = Some(v);
            }
        }
        assert_eq!(witness, Some(vec![1, 1]));
        assert_eq!(m.solve(&[0, 1]), Some(vec![1, 1]));
    }

    #[test]
    fn subspace_ops_trivial() {
        let f2 = fp(2);
        let a = Subspace::from_rows(f2, 2, &[vec![1, 0]]);
        let b = Subspace::from_rows(f2, 2, &[vec![0, 1]]);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(a.sum(&b).unwrap().is_full());
    }

    #[test]
    fn subspace_intersection_oracle() {
        // span{(1,1,0)} meets span{(1,1,1),(0,0,1)} in span{(1,1,0)}
        let f2 = fp(2);
        let a = Subspace::from_rows(f2, 3, &[vec![1, 1, 0]]);
        let b = Subspace::from_rows(f2, 3, &[vec![1, 1, 1], vec![0, 0, 1]]);
        let meet = a.intersect(&b).unwrap();
        // enumeration oracle over all 8 vectors
        for bits in 0..8u32 {
            let v = vec![bits & 1, (bits >> 1) & 1, (bits >> 2) & 1];
            let in_both = a.contains_vec(&v) && b.contains_vec(&v);
            assert_eq!(meet.contains_vec(&v), in_both, "vector {v:?}");
        }
        assert_eq!(meet, a);
    }

    #[test]
    fn ambient_mismatch_is_error() {
        let f2 = fp(2);
        let a = Subspace::from_rows(f2, 2, &[vec![1, 0]]);
        let b = Subspace::from_rows(f2, 3, &[vec![1, 0, 0]]);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn enumerate_subspaces_counts() {
        // F_2^3: 1 + 7 + 7 + 1 = 16 subspaces; F_3^2: 1 + 4 + 1 = 6
        assert_eq!(enumerate_subspaces(fp(2), 3).len(), 16);
        assert_eq!(enumerate_subspaces(fp(3), 2).len(), 6);
        // every enumerated basis is canonical
        for s in enumerate_subspaces(fp(3), 3) {
            assert_eq!(Subspace::from_matrix(s.basis()), s);
        }
    }
}
