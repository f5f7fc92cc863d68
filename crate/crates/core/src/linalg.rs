//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Vectors are row vectors (`&[FieldElement]`); a matrix acts on the right,
//! `v ↦ v·M`. Subspaces are stored by their reduced row-echelon basis so that
//! equal subspaces compare equal structurally.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Default bound on `p^dim` for exhaustive enumerations.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            for x in &row {
                if x.field() != field {
                    return Err(Error::FieldMismatch { left: field, right: x.field() });
                }
            }
            entries.extend(row);
        }
        Ok(Matrix { field, rows: nrows, cols, entries })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, cols, rows).expect("ragged integer matrix")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: FieldElement) {
        debug_assert_eq!(x.field(), self.field);
        self.entries[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[FieldElement]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        self.row_iter().map(<[FieldElement]>::to_vec).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let prod = other.apply_row(self.row(r))?;
            for (c, x) in prod.into_iter().enumerate() {
                out.set(r, c, x);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v·M`.
    pub fn apply_row(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let mut out = vec![self.field.zero(); self.cols];
        for (r, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (c, acc) in out.iter_mut().enumerate() {
                let m = self.get(r, c);
                if !m.is_zero() {
                    *acc += &(coeff * m);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form (zero rows kept at the bottom) and its pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, found);
            let inv = m.get(pivot_row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let x = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, x);
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let x = m.get(r, c) - &(&factor * m.get(pivot_row, c));
                    m.set(r, c, x);
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

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::SingularTransform);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularTransform);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    /// Right null space `{x : M·xᵀ = 0}` as a subspace of `F^cols`.
    pub fn kernel(&self) -> Subspace {
        let (red, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -red.get(r, f);
                }
                v
            })
            .collect::<Vec<_>>();
        Subspace::span(self.field, self.cols, &vectors).expect("kernel vectors sized to cols")
    }

    /// Left null space `{v : v·M = 0}` as a subspace of `F^rows`.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    /// Some solution `x` of `x·M = b`, if one exists.
    pub fn solve_left(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        if b.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: b.len() });
        }
        // Solve Mᵀ xᵀ = bᵀ through the augmented system.
        let t = self.transpose();
        let mut aug = Matrix::zeros(self.field, t.rows, t.cols + 1);
        for r in 0..t.rows {
            for c in 0..t.cols {
                aug.set(r, c, t.get(r, c).clone());
            }
            aug.set(r, t.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&t.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); t.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = red.get(r, t.cols).clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_iter()).finish()
    }
}

pub fn is_zero_vector(v: &[FieldElement]) -> bool {
    v.iter().all(FieldElement::is_zero)
}

/// A linear subspace of `F^ambient_dim`, held in canonical RREF form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(field, 0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span<V: AsRef<[FieldElement]>>(
        field: FieldSpec,
        ambient_dim: usize,
        vectors: &[V],
    ) -> Result<Self> {
        let rows = vectors.iter().map(|v| v.as_ref().to_vec()).collect();
        Ok(Subspace::from_matrix(&Matrix::from_rows(field, ambient_dim, rows)?))
    }

    /// The row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let (red, pivots) = m.rref_with_pivots();
        let rows = red.row_iter().take(pivots.len()).map(<[FieldElement]>::to_vec).collect();
        let basis = Matrix::from_rows(m.field(), m.cols(), rows).expect("rows sized to cols");
        Subspace { ambient_dim: m.cols(), basis, pivots }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.basis.row_iter()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch { left: self.field(), right: other.field() });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Coefficients of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        let coeffs: Vec<FieldElement> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coeffs.iter().zip(self.basis_vectors()) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(row) {
                *r -= &(c * x);
            }
        }
        Ok(is_zero_vector(&residual).then_some(coeffs))
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in other.basis_vectors() {
            if !self.contains_vector(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let rows: Vec<&[FieldElement]> = self.basis_vectors().chain(other.basis_vectors()).collect();
        Subspace::span(self.field(), self.ambient_dim, &rows)
    }

    /// Intersection through the left kernel of the stacked bases: every
    /// relation `a·U + b·V = 0` contributes the common vector `a·U`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let rows: Vec<Vec<FieldElement>> = self
            .basis_vectors()
            .chain(other.basis_vectors())
            .map(<[FieldElement]>::to_vec)
            .collect();
        let stacked = Matrix::from_rows(self.field(), self.ambient_dim, rows)?;
        let relations = stacked.left_kernel();
        let k = self.dim();
        let mut common = Vec::with_capacity(relations.dim());
        for rel in relations.basis_vectors() {
            common.push(self.basis.apply_row(&rel[..k])?);
        }
        Subspace::span(self.field(), self.ambient_dim, &common)
    }

    /// Image under `v ↦ v·M`.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.rows() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: m.rows() });
        }
        let rows: Vec<Vec<FieldElement>> =
            self.basis_vectors().map(|v| m.apply_row(v)).collect::<Result<_>>()?;
        Subspace::span(self.field(), m.cols(), &rows)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span")?;
        f.debug_list().entries(self.basis_vectors()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersect,
    Contains,
    Equal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceOpResult {
    Space(Subspace),
    Bool(bool),
}

pub fn subspace_ops(a: &Subspace, b: &Subspace, op: SubspaceOp) -> Result<SubspaceOpResult> {
    a.check_compatible(b)?;
    Ok(match op {
        SubspaceOp::Sum => SubspaceOpResult::Space(a.sum(b)?),
        SubspaceOp::Intersect => SubspaceOpResult::Space(a.intersect(b)?),
        SubspaceOp::Contains => SubspaceOpResult::Bool(a.contains(b)?),
        SubspaceOp::Equal => SubspaceOpResult::Bool(a == b),
    })
}

pub(crate) fn check_cap(p: u64, dim: usize, cap: u64) -> Result<()> {
    let size = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        Err(Error::EnumerationTooLarge { size, cap })
    } else {
        Ok(())
    }
}

/// Every vector of `F_p^n`, in lexicographic residue order.
pub fn all_vectors(field: FieldSpec, n: usize, cap: u64) -> Result<VectorIter> {
    let p = field.require_finite()?;
    check_cap(p, n, cap)?;
    Ok(VectorIter { field, p, digits: vec![0; n], done: false })
}

pub struct VectorIter {
    field: FieldSpec,
    p: u64,
    digits: Vec<u64>,
    done: bool,
}

impl Iterator for VectorIter {
    type Item = Vec<FieldElement>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.digits.iter().map(|&d| self.field.residue(d)).collect();
        self.done = !odometer(&mut self.digits, self.p);
        Some(out)
    }
}

/// Increments the base-`p` counter, most significant digit first; false on wrap-around.
fn odometer(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// Every subspace of `ambient` exactly once, ordered by dimension, then pivot
/// pattern, then free entries.
///
/// Subspaces of `ambient` correspond to RREF coefficient matrices with respect
/// to its basis, so no deduplication is required.
pub fn enumerate_subspaces(ambient: &Subspace, cap: u64) -> Result<SubspaceIter> {
    let p = ambient.field().require_finite()?;
    check_cap(p, ambient.dim(), cap)?;
    let mut it = SubspaceIter {
        ambient: ambient.clone(),
        p,
        k: 0,
        pivots: Vec::new(),
        free: Vec::new(),
        digits: Vec::new(),
        done: false,
    };
    it.reset_free();
    Ok(it)
}

pub struct SubspaceIter {
    ambient: Subspace,
    p: u64,
    k: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u64>,
    done: bool,
}

impl SubspaceIter {
    fn reset_free(&mut self) {
        let d = self.ambient.dim();
        self.free = self
            .pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                let pivots = &self.pivots;
                (p + 1..d).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        self.digits = vec![0; self.free.len()];
    }

    fn advance(&mut self) {
        if odometer(&mut self.digits, self.p) {
            return;
        }
        let d = self.ambient.dim();
        if !next_combination(&mut self.pivots, d) {
            self.k += 1;
            if self.k > d {
                self.done = true;
                return;
            }
            self.pivots = (0..self.k).collect();
        }
        self.reset_free();
    }

    fn current(&self) -> Subspace {
        let field = self.ambient.field();
        let d = self.ambient.dim();
        let mut coeffs = Matrix::zeros(field, self.k, d);
        for (r, &p) in self.pivots.iter().enumerate() {
            coeffs.set(r, p, field.one());
        }
        for (&(r, c), &digit) in self.free.iter().zip(&self.digits) {
            coeffs.set(r, c, field.residue(digit));
        }
        let rows = coeffs.mul(self.ambient.basis()).expect("coefficient matrix sized to basis");
        Subspace::from_matrix(&rows)
    }
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn vecs(field: FieldSpec, rows: &[&[i64]]) -> Vec<Vec<FieldElement>> {
        rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect()
    }

    #[test]
    fn rref_examples() {
        let m = Matrix::from_i64(q(), &[&[2, 4], &[1, 2]]);
        assert_eq!(m.rref(), Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(Subspace::from_matrix(&m).basis(), &Matrix::from_i64(q(), &[&[1, 2]]));

        let id = Matrix::identity(q(), 3);
        assert_eq!(id.rref(), id);

        let m = Matrix::from_i64(f(2), &[&[1, 1], &[1, 2]]);
        assert_eq!(m.rref(), Matrix::identity(f(2), 2));
    }

    #[test]
    fn span_examples() {
        let empty: Vec<Vec<FieldElement>> = Vec::new();
        assert!(Subspace::span(q(), 3, &empty).unwrap().is_zero());

        let s = Subspace::span(q(), 2, &vecs(q(), &[&[1, -1], &[2, -2]])).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &Matrix::from_i64(q(), &[&[1, -1]]));

        let s = Subspace::span(f(2), 3, &vecs(f(2), &[&[1, 0, 1], &[0, 1, 1]])).unwrap();
        assert_eq!(s.dim(), 2);

        let err = Subspace::span(q(), 2, &vecs(q(), &[&[1, 2, 3]]));
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn lattice_examples() {
        let x = Subspace::span(q(), 2, &vecs(q(), &[&[1, 0]])).unwrap();
        let y = Subspace::span(q(), 2, &vecs(q(), &[&[0, 1]])).unwrap();
        assert_eq!(
            subspace_ops(&x, &y, SubspaceOp::Sum).unwrap(),
            SubspaceOpResult::Space(Subspace::full(q(), 2))
        );
        assert_eq!(
            subspace_ops(&x, &y, SubspaceOp::Intersect).unwrap(),
            SubspaceOpResult::Space(Subspace::zero(q(), 2))
        );

        let u = Subspace::span(q(), 3, &vecs(q(), &[&[1, 1, 0], &[0, 0, 1]])).unwrap();
        let v = Subspace::span(q(), 3, &vecs(q(), &[&[1, 1, 1]])).unwrap();
        assert_eq!(u.intersect(&v).unwrap(), v);
        assert_eq!(subspace_ops(&u, &v, SubspaceOp::Contains).unwrap(), SubspaceOpResult::Bool(true));
        assert_eq!(subspace_ops(&v, &u, SubspaceOp::Contains).unwrap(), SubspaceOpResult::Bool(false));
        assert_eq!(subspace_ops(&u, &u, SubspaceOp::Equal).unwrap(), SubspaceOpResult::Bool(true));

        let w = Subspace::zero(q(), 2);
        assert!(matches!(u.sum(&w), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn inverse_and_kernel() {
        let t = Matrix::from_i64(q(), &[&[1, 0], &[1, 1]]);
        let inv = t.inverse().unwrap();
        assert_eq!(inv, Matrix::from_i64(q(), &[&[1, 0], &[-1, 1]]));
        assert_eq!(t.mul(&inv).unwrap(), Matrix::identity(q(), 2));
        let s = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(Error::SingularTransform));
        let k = s.kernel();
        let expected = Subspace::span(q(), 2, &vecs(q(), &[&[-2, 1]])).unwrap();
        assert_eq!(k, expected);
        assert_eq!(k.basis().get(0, 1).to_string(), "-1/2");
    }

    #[test]
    fn solve_left_consistency() {
        let m = Matrix::from_i64(q(), &[&[1, 2, 0], &[0, 1, 1]]);
        let b = vecs(q(), &[&[2, 5, 1]]).remove(0);
        let x = m.solve_left(&b).unwrap().unwrap();
        assert_eq!(m.apply_row(&x).unwrap(), b);
        let unreachable = vecs(q(), &[&[0, 0, 1]]).remove(0);
        assert_eq!(m.solve_left(&unreachable).unwrap(), None);
    }

    /// Independent count: closed subsets of F_p^d found by brute force over the power set.
    fn brute_force_subspace_count(p: u64, d: usize) -> usize {
        let field = f(p);
        let points: Vec<Vec<FieldElement>> = all_vectors(field, d, u64::MAX).unwrap().collect();
        let n = points.len();
        let index = |v: &Vec<FieldElement>| points.iter().position(|w| w == v).unwrap();
        let mut count = 0;
        for mask in 0u64..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let closed = (0..n).filter(|i| mask >> i & 1 == 1).all(|i| {
                (0..n).filter(|j| mask >> j & 1 == 1).all(|j| {
                    field.elements().unwrap().iter().all(|c| {
                        let v: Vec<FieldElement> = points[i]
                            .iter()
                            .zip(&points[j])
                            .map(|(a, b)| &(c * a) + b)
                            .collect();
                        mask >> index(&v) & 1 == 1
                    })
                })
            });
            if closed {
                count += 1;
            }
        }
        count
    }

    fn gaussian_total(p: u64, d: usize) -> u64 {
        // G(d, k) via the q-Pascal rule G(d,k) = G(d-1,k-1) + p^k G(d-1,k)
        let mut row = vec![1u64];
        for n in 1..=d {
            let mut next = vec![1u64; n + 1];
            for k in 1..n {
                next[k] = row[k - 1] + p.pow(k as u32) * row[k];
            }
            row = next;
        }
        row.iter().sum()
    }

    #[test]
    fn enumeration_counts_small() {
        assert_eq!(brute_force_subspace_count(2, 1), 2);
        assert_eq!(brute_force_subspace_count(2, 2), 5);
        assert_eq!(brute_force_subspace_count(2, 3), 16);
        for (d, expected) in [(1, 2), (2, 5), (3, 16)] {
            let got = enumerate_subspaces(&Subspace::full(f(2), d), DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .count();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn enumeration_matches_galois_numbers() {
        assert_eq!(brute_force_subspace_count(3, 2), gaussian_total(3, 2) as usize);
        for p in [2, 3] {
            for d in 0..=4 {
                let all: Vec<Subspace> =
                    enumerate_subspaces(&Subspace::full(f(p), d), DEFAULT_ENUMERATION_CAP)
                        .unwrap()
                        .collect();
                assert_eq!(all.len() as u64, gaussian_total(p, d), "p={p} d={d}");
                let distinct: HashSet<&Subspace> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
            }
        }
    }

    #[test]
    fn enumeration_inside_proper_ambient() {
        let field = f(3);
        let ambient = Subspace::span(field, 4, &vecs(field, &[&[1, 1, 0, 0], &[0, 0, 1, 2]])).unwrap();
        let subs: Vec<Subspace> = enumerate_subspaces(&ambient, 1 << 10).unwrap().collect();
        assert_eq!(subs.len() as u64, gaussian_total(3, 2));
        assert!(subs.iter().all(|s| ambient.contains(s).unwrap()));
    }

    #[test]
    fn enumeration_errors() {
        assert!(matches!(
            enumerate_subspaces(&Subspace::full(q(), 2), 1 << 20),
            Err(Error::FieldNotFinite(_))
        ));
        assert!(matches!(
            enumerate_subspaces(&Subspace::full(f(2), 21), 1 << 20),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    fn small_subspace(p: u64, d: usize) -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(proptest::collection::vec(0..p, d), 0..=d).prop_map(move |rows| {
            let field = f(p);
            let rows: Vec<Vec<FieldElement>> =
                rows.iter().map(|r| r.iter().map(|&x| field.residue(x)).collect()).collect();
            Subspace::span(field, d, &rows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn modular_dimension_formula(u in small_subspace(5, 4), v in small_subspace(5, 4)) {
            let s = u.sum(&v).unwrap();
            let i = u.intersect(&v).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
            prop_assert!(u.contains(&i).unwrap() && v.contains(&i).unwrap());
            prop_assert!(s.contains(&u).unwrap() && s.contains(&v).unwrap());
        }

        #[test]
        fn span_of_basis_is_canonical(u in small_subspace(3, 5)) {
            let rows = u.basis().to_rows();
            prop_assert_eq!(Subspace::span(u.field(), 5, &rows).unwrap(), u);
        }
    }
}
