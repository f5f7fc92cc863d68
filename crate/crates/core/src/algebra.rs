//! Finite-dimensional algebras given by structure constants.
//!
//! An [`Algebra`] of dimension `n` stores `c[i][j][k]` with
//! `e_i · e_j = Σ_k c[i][j][k] e_k`, 0-based, zero entries omitted.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{is_zero_vector, Matrix, Subspace};

/// Coordinates of an algebra element in the algebra's basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element(Vec<FieldElement>);

impl Element {
    pub fn new(coords: Vec<FieldElement>) -> Self {
        Element(coords)
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Element(vec![field.zero(); n])
    }

    pub fn basis(field: FieldSpec, n: usize, i: usize) -> Self {
        let mut e = Element::zero(field, n);
        e.0[i] = field.one();
        e
    }

    pub fn from_i64(field: FieldSpec, coords: &[i64]) -> Self {
        Element(coords.iter().map(|&x| field.from_i64(x)).collect())
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<FieldElement> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.0)
    }

    pub fn scale(&self, s: &FieldElement) -> Element {
        Element(self.0.iter().map(|x| s * x).collect())
    }

    /// Concatenation `(self | other)`.
    pub fn concat(&self, other: &Element) -> Element {
        Element(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> Element {
        Element(self.0[start..end].to_vec())
    }
}

impl Index<usize> for Element {
    type Output = FieldElement;
    fn index(&self, i: usize) -> &FieldElement {
        &self.0[i]
    }
}

impl AsRef<[FieldElement]> for Element {
    fn as_ref(&self) -> &[FieldElement] {
        &self.0
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.len(), rhs.len(), "element length mismatch");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.len(), rhs.len(), "element length mismatch");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub type Triple = (usize, usize, usize);

#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    constants: BTreeMap<Triple, FieldElement>,
    basis_names: Option<Vec<String>>,
}

impl Algebra {
    /// Builds an algebra from `((i, j, k), c)` entries; zeros are dropped,
    /// repeated triples are rejected.
    pub fn new<I>(field: FieldSpec, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Triple, FieldElement)>,
    {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let mut constants = BTreeMap::new();
        for ((i, j, k), c) in entries {
            for index in [i, j, k] {
                if index >= dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            if c.field() != field {
                return Err(Error::FieldMismatch { left: field, right: c.field() });
            }
            if constants.insert((i, j, k), c.clone()).is_some() {
                return Err(Error::DuplicateTriple(i, j, k));
            }
            if c.is_zero() {
                constants.remove(&(i, j, k));
            }
        }
        Ok(Algebra { field, dim, constants, basis_names: None })
    }

    pub fn from_fn(field: FieldSpec, dim: usize, f: impl Fn(usize, usize, usize) -> FieldElement) -> Self {
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    entries.push(((i, j, k), f(i, j, k)));
                }
            }
        }
        Algebra::new(field, dim, entries).expect("from_fn entries are in range")
    }

    /// Algebra whose product of basis vectors is given as element coordinates.
    pub fn from_products(field: FieldSpec, dim: usize, product: impl Fn(usize, usize) -> Element) -> Self {
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for (k, c) in product(i, j).into_coords().into_iter().enumerate() {
                    entries.push(((i, j, k), c));
                }
            }
        }
        Algebra::new(field, dim, entries).expect("from_products entries are in range")
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: names.len() });
        }
        self.basis_names = Some(names);
        Ok(self)
    }

    pub fn without_basis_names(mut self) -> Self {
        self.basis_names = None;
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> FieldElement {
        self.constants.get(&(i, j, k)).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero structure constants in lexicographic `(i, j, k)` order.
    pub fn constants(&self) -> impl Iterator<Item = (Triple, &FieldElement)> {
        self.constants.iter().map(|(&t, c)| (t, c))
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.field, self.dim)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim, i)
    }

    pub fn element(&self, coords: Vec<FieldElement>) -> Result<Element> {
        let e = Element::new(coords);
        self.check(&e)?;
        Ok(e)
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        if let Some(bad) = x.coords().iter().find(|c| c.field() != self.field) {
            return Err(Error::FieldMismatch { left: self.field, right: bad.field() });
        }
        Ok(())
    }

    /// `e_i · e_j` as an element.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        let mut out = self.zero();
        for ((_, _, k), c) in self.constants.range((i, j, 0)..=(i, j, self.dim - 1)) {
            out.0[*k] = c.clone();
        }
        out
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        for (&(i, j, k), c) in &self.constants {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            out.0[k] += &(&(&x[i] * &y[j]) * c);
        }
        Ok(out)
    }

    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(&self.multiply(x, y)? - &self.multiply(y, x)?)
    }

    pub fn associator(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        let left = self.multiply(&self.multiply(x, y)?, z)?;
        let right = self.multiply(x, &self.multiply(y, z)?)?;
        Ok(&left - &right)
    }

    pub fn is_commutative(&self) -> bool {
        self.constants.iter().all(|(&(i, j, k), c)| self.constant(j, i, k) == *c)
            && self.constants.keys().all(|&(i, j, k)| self.constants.contains_key(&(j, i, k)))
    }

    pub fn is_associative(&self) -> bool {
        let basis: Vec<Element> = (0..self.dim).map(|i| self.basis_element(i)).collect();
        triples(self.dim).all(|(i, j, k)| {
            self.associator(&basis[i], &basis[j], &basis[k]).expect("basis elements").is_zero()
        })
    }

    /// `(x, x, y) = 0` for all `x, y`: the associator is quadratic in `x`, so it
    /// vanishes iff it vanishes at every `e_i` and at every `e_i + e_j`.
    pub fn is_left_alternative(&self) -> bool {
        self.quadratic_check(|x, y| self.associator(x, x, y))
    }

    /// `(x, y, y) = 0` for all `x, y`.
    pub fn is_right_alternative(&self) -> bool {
        self.quadratic_check(|y, x| self.associator(x, y, y))
    }

    fn quadratic_check(&self, q: impl Fn(&Element, &Element) -> Result<Element>) -> bool {
        let basis: Vec<Element> = (0..self.dim).map(|i| self.basis_element(i)).collect();
        for i in 0..self.dim {
            for j in i..self.dim {
                let x = if i == j { basis[i].clone() } else { &basis[i] + &basis[j] };
                for other in &basis {
                    if !q(&x, other).expect("basis elements").is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The two-sided unit, found by solving `e·e_i = e_i·e = e_i` for all `i`.
    pub fn unit(&self) -> Option<Element> {
        let n = self.dim;
        let mut m = Matrix::zeros(self.field, n, 2 * n * n);
        let mut rhs = vec![self.field.zero(); 2 * n * n];
        for i in 0..n {
            for k in 0..n {
                let col = i * n + k;
                if i == k {
                    rhs[col] = self.field.one();
                    rhs[n * n + col] = self.field.one();
                }
                for a in 0..n {
                    m.set(a, col, self.constant(a, i, k));
                    m.set(a, n * n + col, self.constant(i, a, k));
                }
            }
        }
        m.solve_left(&rhs).expect("system sized to algebra").map(Element::new)
    }

    pub fn property_flags(&self) -> PropertyFlags {
        let unit = self.unit();
        PropertyFlags {
            commutative: self.is_commutative(),
            associative: self.is_associative(),
            left_alternative: self.is_left_alternative(),
            right_alternative: self.is_right_alternative(),
            unital: unit.is_some(),
            unit,
        }
    }

    /// Elements commuting with every basis vector: the left kernel of the
    /// stacked maps `a ↦ a·e_j − e_j·a`.
    pub fn commutative_center(&self) -> Subspace {
        let n = self.dim;
        let mut m = Matrix::zeros(self.field, n, n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m.set(i, j * n + k, self.constant(i, j, k) - self.constant(j, i, k));
                }
            }
        }
        m.left_kernel()
    }

    /// Re-expresses the product in the basis `e'_i = Σ_j T[i][j] e_j`.
    pub fn change_basis(&self, t: &Matrix) -> Result<Algebra> {
        if t.rows() != self.dim || t.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: t.rows().max(t.cols()) });
        }
        let t_inv = t.inverse()?;
        let new_basis: Vec<Element> = t.row_iter().map(|r| Element::new(r.to_vec())).collect();
        let mut entries = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let prod = self.multiply(&new_basis[i], &new_basis[j])?;
                let coords = t_inv.apply_row(prod.coords())?;
                for (k, c) in coords.into_iter().enumerate() {
                    entries.push(((i, j, k), c));
                }
            }
        }
        let mut out = Algebra::new(self.field, self.dim, entries)?;
        out.basis_names = self.basis_names.clone();
        Ok(out)
    }

    /// Matrix of right multiplication `x ↦ x·y` acting on row vectors.
    pub fn right_multiplication(&self, y: &Element) -> Result<Matrix> {
        self.check(y)?;
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (&(i, j, k), c) in &self.constants {
            if !y[j].is_zero() {
                let x = m.get(i, k) + &(c * &y[j]);
                m.set(i, k, x);
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field)
            .field("dim", &self.dim)
            .field("constants", &self.constants)
            .finish()
    }
}

fn triples(n: usize) -> impl Iterator<Item = Triple> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyFlags {
    pub commutative: bool,
    pub associative: bool,
    pub left_alternative: bool,
    pub right_alternative: bool,
    pub unital: bool,
    pub unit: Option<Element>,
}

/// `K[x]/(x^n)` in the basis `1, x, …, x^(n-1)`.
pub fn truncated_polynomial(field: FieldSpec, n: usize) -> Algebra {
    Algebra::from_fn(field, n, |i, j, k| if i + j == k { field.one() } else { field.zero() })
}

/// `K^n` with componentwise product.
pub fn componentwise(field: FieldSpec, n: usize) -> Algebra {
    Algebra::from_fn(field, n, |i, j, k| if i == j && j == k { field.one() } else { field.zero() })
}

/// Group algebra `K[Z/2]` in the basis `1, g` with `g² = 1`.
pub fn group_algebra_z2(field: FieldSpec) -> Algebra {
    Algebra::from_fn(field, 2, |i, j, k| if (i + j) % 2 == k { field.one() } else { field.zero() })
}

/// `x·y = ω(y)·x` for the weight vector `w`: `c[i][j][k] = w[j]·δ(i,k)`.
pub fn scalar_action(field: FieldSpec, w: &[FieldElement]) -> Algebra {
    Algebra::from_fn(field, w.len(), |i, j, k| if i == k { w[j].clone() } else { field.zero() })
}
