//! Weight functionals and baric algebras.
//!
//! A weight is stored by its values on the basis, `w[i] = ω(e_i)`. It is a
//! valid weight when it is nonzero and multiplicative on basis pairs:
//! `Σ_k c[i][j][k]·w[k] = w[i]·w[j]`.

use crate::algebra::{Algebra, Element};
use crate::bowtie::{kpow, BowtieTag};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{all_vectors, check_cap, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightFunctional(Vec<FieldElement>);

impl WeightFunctional {
    pub fn new(values: Vec<FieldElement>) -> Self {
        WeightFunctional(values)
    }

    pub fn from_i64(field: FieldSpec, values: &[i64]) -> Self {
        WeightFunctional(values.iter().map(|&x| field.from_i64(x)).collect())
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElement::is_zero)
    }

    /// `ω(x) = Σ_i x_i·w_i`.
    pub fn eval(&self, x: &Element) -> FieldElement {
        debug_assert_eq!(x.len(), self.len());
        let field = self.0[0].field();
        x.coords()
            .iter()
            .zip(&self.0)
            .filter(|(c, _)| !c.is_zero())
            .fold(field.zero(), |acc, (c, w)| acc + c * w)
    }

    /// `Ker ω` as a subspace of the ambient coordinates.
    pub fn kernel(&self) -> Subspace {
        let field = self.0[0].field();
        Matrix::from_rows(field, self.len(), vec![self.0.clone()])
            .expect("single row sized to itself")
            .kernel()
    }
}

/// True iff `w` is a nonzero algebra homomorphism `A → K`.
pub fn validate_weight(a: &Algebra, w: &WeightFunctional) -> Result<bool> {
    if w.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: w.len() });
    }
    if let Some(bad) = w.values().iter().find(|x| x.field() != a.field()) {
        return Err(Error::FieldMismatch { left: a.field(), right: bad.field() });
    }
    if w.is_zero() {
        return Ok(false);
    }
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = w.eval(&a.basis_product(i, j));
            if lhs != &w.values()[i] * &w.values()[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An algebra together with a validated weight and, for bowtie products,
/// the block structure it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaricAlgebra {
    algebra: Algebra,
    weight: WeightFunctional,
    provenance: Option<BowtieTag>,
}

impl BaricAlgebra {
    pub fn new(algebra: Algebra, weight: WeightFunctional) -> Result<Self> {
        if !validate_weight(&algebra, &weight)? {
            return Err(Error::WeightInvalid);
        }
        Ok(BaricAlgebra { algebra, weight, provenance: None })
    }

    /// Attaches a bowtie tag after checking it against the structure constants.
    pub fn with_provenance(mut self, tag: BowtieTag) -> Result<Self> {
        tag.validate_against(&self.algebra, &self.weight)?;
        self.provenance = Some(tag);
        Ok(self)
    }

    pub(crate) fn with_provenance_unchecked(mut self, tag: BowtieTag) -> Self {
        self.provenance = Some(tag);
        self
    }

    pub fn without_provenance(mut self) -> Self {
        self.provenance = None;
        self
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn weight(&self) -> &WeightFunctional {
        &self.weight
    }

    pub fn provenance(&self) -> Option<&BowtieTag> {
        self.provenance.as_ref()
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn weight_of(&self, x: &Element) -> FieldElement {
        self.weight.eval(x)
    }

    pub fn kernel(&self) -> Subspace {
        self.weight.kernel()
    }

    /// The same baric algebra in the basis `e'_i = Σ_j T[i][j] e_j`; provenance is dropped.
    pub fn change_basis(&self, t: &Matrix) -> Result<BaricAlgebra> {
        let algebra = self.algebra.change_basis(t)?;
        let weight = WeightFunctional::new(t.transpose().apply_row(self.weight.values())?);
        BaricAlgebra::new(algebra, weight)
    }
}

/// Every nonzero homomorphism `A → F_p`, by scanning all `p^n` functionals.
pub fn enumerate_weights(a: &Algebra, cap: u64) -> Result<Vec<WeightFunctional>> {
    let mut out = Vec::new();
    for v in all_vectors(a.field(), a.dim(), cap)? {
        let w = WeightFunctional::new(v);
        if validate_weight(a, &w)? {
            out.push(w);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilReport {
    /// No tested kernel element survived `bound` left-normed powers.
    pub nil: bool,
    /// A kernel element none of whose first `bound` powers vanish.
    pub witness: Option<Element>,
    /// Whether every kernel element was tested rather than only the RREF basis.
    pub exhaustive: bool,
}

/// Left-normed powers `x, x·x, (x·x)·x, …`; true if one of the first `bound` vanishes.
pub fn has_vanishing_power(a: &Algebra, x: &Element, bound: usize) -> bool {
    let mut power = x.clone();
    for _ in 0..bound.max(1) {
        if power.is_zero() {
            return true;
        }
        power = a.multiply(&power, x).expect("element sized to algebra");
    }
    false
}

/// Semi-decides whether `Ker ω` is nil.
///
/// Over `F_p` with `p^dim(Ker) ≤ cap` every kernel element is tested;
/// otherwise only the RREF basis vectors of the kernel are.
pub fn is_nil_kernel(b: &BaricAlgebra, bound: usize, cap: u64) -> NilReport {
    let kernel = b.kernel();
    let a = b.algebra();
    let exhaustive = match b.field().modulus() {
        Some(p) => check_cap(p, kernel.dim(), cap).is_ok(),
        None => false,
    };
    let candidates: Box<dyn Iterator<Item = Element>> = if exhaustive {
        let coeffs = all_vectors(b.field(), kernel.dim(), cap).expect("cap already checked");
        Box::new(coeffs.map(move |c| {
            Element::new(kernel.basis().apply_row(&c).expect("coefficients sized to basis"))
        }))
    } else {
        Box::new(kernel.basis().to_rows().into_iter().map(Element::new))
    };
    for x in candidates {
        if !has_vanishing_power(a, &x, bound) {
            return NilReport { nil: false, witness: Some(x), exhaustive };
        }
    }
    NilReport { nil: true, witness: None, exhaustive }
}

/// Re-expresses `b` in a basis of weight-one vectors.
///
/// Basis vectors of nonzero weight are rescaled to weight one, a weight-one
/// vector is moved to the front, and then `e'_n = (Σ_{j≤n} ε_j)⁻¹ Σ_{j≤n} e_j`.
/// Returns the new baric algebra and `T` with `e'_i = Σ_j T[i][j] e_j`.
pub fn normalize_weight_one_basis(b: &BaricAlgebra) -> Result<(BaricAlgebra, Matrix)> {
    let field = b.field();
    let n = b.dim();
    let w = b.weight().values();

    let mut scale = Matrix::identity(field, n);
    let mut eps = Vec::with_capacity(n);
    for (i, wi) in w.iter().enumerate() {
        if wi.is_zero() {
            eps.push(field.zero());
        } else {
            scale.set(i, i, wi.inv()?);
            eps.push(field.one());
        }
    }

    let first = eps.iter().position(FieldElement::is_one).ok_or(Error::WeightInvalid)?;
    let order: Vec<usize> = std::iter::once(first).chain((0..n).filter(|&i| i != first)).collect();
    let mut perm = Matrix::zeros(field, n, n);
    for (r, &c) in order.iter().enumerate() {
        perm.set(r, c, field.one());
    }

    let mut average = Matrix::zeros(field, n, n);
    let mut partial = field.zero();
    for (r, &c) in order.iter().enumerate() {
        partial += &eps[c];
        let inv = partial.inv().map_err(|_| Error::CharacteristicObstruction {
            index: r,
            characteristic: field.characteristic(),
        })?;
        for j in 0..=r {
            average.set(r, j, inv.clone());
        }
    }

    let t = average.mul(&perm)?.mul(&scale)?;
    let normalized = b.change_basis(&t)?;
    debug_assert!(normalized.weight().values().iter().all(FieldElement::is_one));
    Ok((normalized, t))
}

/// Whether `x·y = ω(y)·x`, checked on the basis as `c[i][j][k] = w[j]·δ(i,k)`.
pub fn satisfies_scalar_action(a: &Algebra, w: &WeightFunctional) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let expected = if i == k { w.values()[j].clone() } else { a.field().zero() };
                a.constant(i, j, k) == expected
            })
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarActionClass {
    /// `T` with `e'_i = Σ_j T[i][j] e_j`, the weight-one basis.
    pub change_of_basis: Matrix,
    /// Baric isomorphism from the input onto `target`, acting on row vectors (`T⁻¹`).
    pub isomorphism: Matrix,
    pub target: BaricAlgebra,
}

/// Recognizes algebras with `x·y = ω(y)·x` and identifies them with `K^{⋈n}`.
pub fn classify_scalar_action(b: &BaricAlgebra) -> Result<Option<ScalarActionClass>> {
    if !satisfies_scalar_action(b.algebra(), b.weight()) {
        return Ok(None);
    }
    let (normalized, t) = normalize_weight_one_basis(b)?;
    let target = kpow(b.field(), b.dim());
    debug_assert_eq!(
        normalized.algebra().clone().without_basis_names(),
        target.algebra().clone().without_basis_names()
    );
    let isomorphism = t.inverse()?;
    Ok(Some(ScalarActionClass { change_of_basis: t, isomorphism, target }))
}

/// True iff `x ↦ x·F` is invertible, multiplicative on basis pairs and weight preserving.
pub fn baric_isomorphic_by(f: &Matrix, b1: &BaricAlgebra, b2: &BaricAlgebra) -> Result<bool> {
    if f.rows() != b1.dim() {
        return Err(Error::DimensionMismatch { expected: b1.dim(), found: f.rows() });
    }
    if f.cols() != b2.dim() {
        return Err(Error::DimensionMismatch { expected: b2.dim(), found: f.cols() });
    }
    if f.inverse().is_err() {
        return Ok(false);
    }
    let images: Vec<Element> = f.row_iter().map(|r| Element::new(r.to_vec())).collect();
    for (i, img) in images.iter().enumerate() {
        if b2.weight_of(img) != b1.weight().values()[i] {
            return Ok(false);
        }
    }
    let n = b1.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = Element::new(f.apply_row(b1.algebra().basis_product(i, j).coords())?);
            let rhs = b2.algebra().multiply(&images[i], &images[j])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{componentwise, scalar_action, truncated_polynomial};
    use crate::bowtie::{bowtie, field_algebra};
    use crate::linalg::DEFAULT_ENUMERATION_CAP as CAP;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn d2(field: FieldSpec) -> BaricAlgebra {
        BaricAlgebra::new(truncated_polynomial(field, 2), WeightFunctional::from_i64(field, &[1, 0])).unwrap()
    }

    #[test]
    fn validate_weight_examples() {
        let kk = kpow(q(), 2);
        assert!(validate_weight(kk.algebra(), &WeightFunctional::from_i64(q(), &[1, 1])).unwrap());
        assert!(!validate_weight(kk.algebra(), &WeightFunctional::from_i64(q(), &[0, 0])).unwrap());
        let kk3 = kpow(f(3), 2);
        assert!(!validate_weight(kk3.algebra(), &WeightFunctional::from_i64(f(3), &[1, 2])).unwrap());
        assert!(matches!(
            validate_weight(kk.algebra(), &WeightFunctional::from_i64(q(), &[1])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            BaricAlgebra::new(kk.algebra().clone(), WeightFunctional::from_i64(q(), &[0, 0])),
            Err(Error::WeightInvalid)
        );
    }

    #[test]
    fn enumerate_weights_examples() {
        let kk = kpow(f(3), 2);
        assert_eq!(enumerate_weights(kk.algebra(), CAP).unwrap(), vec![WeightFunctional::from_i64(f(3), &[1, 1])]);

        let prod = componentwise(f(2), 2);
        let ws = enumerate_weights(&prod, CAP).unwrap();
        assert_eq!(ws, vec![WeightFunctional::from_i64(f(2), &[0, 1]), WeightFunctional::from_i64(f(2), &[1, 0])]);

        assert!(matches!(enumerate_weights(kpow(q(), 2).algebra(), CAP), Err(Error::FieldNotFinite(_))));
        assert!(matches!(enumerate_weights(kpow(f(2), 4).algebra(), 8), Err(Error::EnumerationTooLarge { .. })));
    }

    #[test]
    fn nil_kernel_examples() {
        let kk = kpow(q(), 2);
        assert!(is_nil_kernel(&kk, 3, CAP).nil);

        // (Q×Q componentwise, first projection) ⋈ (Q, id)
        let left = BaricAlgebra::new(componentwise(q(), 2), WeightFunctional::from_i64(q(), &[1, 0])).unwrap();
        let b = bowtie(&left, &field_algebra(q())).unwrap();
        let report = is_nil_kernel(&b, b.dim() + 1, CAP);
        assert!(!report.nil);
        let idem = Element::from_i64(q(), &[0, 1, 0]);
        assert_eq!(b.algebra().multiply(&idem, &idem).unwrap(), idem);
        // the kernel still has a unique weight over F_2: nil is not necessary
        let left2 = BaricAlgebra::new(componentwise(f(2), 2), WeightFunctional::from_i64(f(2), &[1, 0])).unwrap();
        let b2 = bowtie(&left2, &field_algebra(f(2))).unwrap();
        assert!(!is_nil_kernel(&b2, 4, CAP).nil);
        assert_eq!(enumerate_weights(b2.algebra(), CAP).unwrap().len(), 1);

        // zero multiplication on the kernel: K ⊕ N with N² = 0, e·n = n·e = 0
        let a = Algebra::new(q(), 3, [((0, 0, 0), q().one())]).unwrap();
        let z = BaricAlgebra::new(a, WeightFunctional::from_i64(q(), &[1, 0, 0])).unwrap();
        let r = is_nil_kernel(&z, 2, CAP);
        assert!(r.nil && !r.exhaustive);
    }

    #[test]
    fn nil_kernel_implies_unique_weight() {
        for b in [kpow(f(2), 2), kpow(f(3), 3), d2(f(3)), d2(f(2))] {
            if is_nil_kernel(&b, b.dim() + 1, CAP).nil {
                assert_eq!(enumerate_weights(b.algebra(), CAP).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn normalization_examples() {
        let eps = WeightFunctional::from_i64(q(), &[1, 0, 1]);
        let b = BaricAlgebra::new(scalar_action(q(), eps.values()), eps).unwrap();
        let (nb, t) = normalize_weight_one_basis(&b).unwrap();
        let half = q().parse("1/2").unwrap();
        let expected = Matrix::from_rows(
            q(),
            3,
            vec![
                vec![q().one(), q().zero(), q().zero()],
                vec![q().one(), q().one(), q().zero()],
                vec![half.clone(), half.clone(), half],
            ],
        )
        .unwrap();
        assert_eq!(t, expected);
        assert!(nb.weight().values().iter().all(FieldElement::is_one));
        assert_eq!(&b.algebra().change_basis(&t).unwrap(), nb.algebra());

        let ones = WeightFunctional::from_i64(f(2), &[1, 1]);
        let b = BaricAlgebra::new(scalar_action(f(2), ones.values()), ones).unwrap();
        assert_eq!(
            normalize_weight_one_basis(&b).map(|_| ()),
            Err(Error::CharacteristicObstruction { index: 1, characteristic: 2 })
        );
    }

    #[test]
    fn normalization_reorders_and_rescales() {
        // weights (0, 3, -2): scale to (0, 1, 1) and move index 1 first
        let w = WeightFunctional::from_i64(q(), &[0, 3, -2]);
        let b = BaricAlgebra::new(scalar_action(q(), w.values()), w).unwrap();
        let (nb, t) = normalize_weight_one_basis(&b).unwrap();
        assert!(nb.weight().values().iter().all(FieldElement::is_one));
        assert!(t.inverse().is_ok());
        for (i, row) in t.row_iter().enumerate() {
            assert!(b.weight_of(&Element::new(row.to_vec())).is_one(), "row {i}");
        }
    }

    #[test]
    fn classify_examples() {
        let k3 = kpow(q(), 3);
        let c = classify_scalar_action(&k3).unwrap().unwrap();
        assert_eq!(c.target.algebra(), k3.algebra());
        assert!(baric_isomorphic_by(&c.isomorphism, &k3, &c.target).unwrap());

        let w = WeightFunctional::from_i64(q(), &[1, 0]);
        let s = BaricAlgebra::new(scalar_action(q(), w.values()), w).unwrap();
        let c = classify_scalar_action(&s).unwrap().unwrap();
        assert_eq!(s.algebra().change_basis(&c.change_of_basis).unwrap(), *kpow(q(), 2).algebra());
        assert!(baric_isomorphic_by(&c.isomorphism, &s, &c.target).unwrap());

        assert_eq!(classify_scalar_action(&d2(q())).unwrap(), None);
    }

    #[test]
    fn isomorphism_examples() {
        let kk = kpow(q(), 2);
        assert!(baric_isomorphic_by(&Matrix::identity(q(), 2), &kk, &kk).unwrap());
        let swap = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]);
        assert!(baric_isomorphic_by(&swap, &kk, &kk).unwrap());
        let k = field_algebra(q());
        assert!(!baric_isomorphic_by(&Matrix::from_i64(q(), &[&[2]]), &k, &k).unwrap());
        assert!(matches!(
            baric_isomorphic_by(&Matrix::identity(q(), 1), &kk, &kk),
            Err(Error::DimensionMismatch { .. })
        ));
        let singular = Matrix::from_i64(q(), &[&[1, 0], &[1, 0]]);
        assert!(!baric_isomorphic_by(&singular, &kk, &kk).unwrap());
    }
}
