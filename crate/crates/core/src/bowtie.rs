//! The bowtie product of two baric algebras.
//!
//! On `A₁ ⊕ A₂` the product is
//! `(a₁,a₂)(b₁,b₂) = (a₁b₁ + ω₂(b₂)a₁, a₂b₂ + ω₁(b₁)a₂)` with weight
//! `ω₁⋈ω₂(a₁,a₂) = ω₁(a₁) + ω₂(a₂)`. The basis of the product is the left
//! factor's basis followed by the right factor's.

use crate::algebra::{Algebra, Element};
use crate::baric::{baric_isomorphic_by, satisfies_scalar_action, validate_weight, BaricAlgebra, WeightFunctional};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{Matrix, Subspace};

/// Block structure of an algebra built as `A₁ ⋈ A₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BowtieTag {
    pub left_dim: usize,
    pub right_dim: usize,
    pub left_weight: WeightFunctional,
    pub right_weight: WeightFunctional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl BowtieTag {
    /// Tag for a bowtie whose weight vector splits after `left_dim` coordinates.
    pub fn split(weight: &WeightFunctional, left_dim: usize) -> Result<Self> {
        let n = weight.len();
        if left_dim == 0 || left_dim >= n {
            return Err(Error::InvalidProvenance);
        }
        Ok(BowtieTag {
            left_dim,
            right_dim: n - left_dim,
            left_weight: WeightFunctional::new(weight.values()[..left_dim].to_vec()),
            right_weight: WeightFunctional::new(weight.values()[left_dim..].to_vec()),
        })
    }

    fn range(&self, side: Side) -> std::ops::Range<usize> {
        match side {
            Side::Left => 0..self.left_dim,
            Side::Right => self.left_dim..self.left_dim + self.right_dim,
        }
    }

    pub fn factor_dim(&self, side: Side) -> usize {
        self.range(side).len()
    }

    pub fn factor_weight(&self, side: Side) -> &WeightFunctional {
        match side {
            Side::Left => &self.left_weight,
            Side::Right => &self.right_weight,
        }
    }

    /// Checks that the tag describes `algebra` exactly: the weight splits into
    /// the stored factor weights and rebuilding the bowtie from the diagonal
    /// blocks reproduces every structure constant.
    pub fn validate_against(&self, algebra: &Algebra, weight: &WeightFunctional) -> Result<()> {
        if self.left_dim == 0 || self.right_dim == 0 || self.left_dim + self.right_dim != algebra.dim() {
            return Err(Error::InvalidProvenance);
        }
        let expected = BowtieTag::split(weight, self.left_dim)?;
        if expected != *self {
            return Err(Error::InvalidProvenance);
        }
        let left = block_algebra(algebra, self.range(Side::Left));
        let right = block_algebra(algebra, self.range(Side::Right));
        if !validate_weight(&left, &self.left_weight)? || !validate_weight(&right, &self.right_weight)? {
            return Err(Error::InvalidProvenance);
        }
        let rebuilt = bowtie_constants(&left, &self.left_weight, &right, &self.right_weight);
        if rebuilt.without_basis_names() != algebra.clone().without_basis_names() {
            return Err(Error::InvalidProvenance);
        }
        Ok(())
    }
}

fn block_algebra(a: &Algebra, range: std::ops::Range<usize>) -> Algebra {
    let start = range.start;
    let entries: Vec<_> = a
        .constants()
        .filter(|((i, j, k), _)| range.contains(i) && range.contains(j) && range.contains(k))
        .map(|((i, j, k), c)| ((i - start, j - start, k - start), c.clone()))
        .collect();
    let block = Algebra::new(a.field(), range.len(), entries).expect("block indices in range");
    match a.basis_names() {
        Some(names) => block.with_basis_names(names[range].to_vec()).expect("names sized to block"),
        None => block,
    }
}

fn bowtie_constants(a1: &Algebra, w1: &WeightFunctional, a2: &Algebra, w2: &WeightFunctional) -> Algebra {
    let n1 = a1.dim();
    let n2 = a2.dim();
    let mut entries = Vec::new();
    for ((i, j, k), c) in a1.constants() {
        entries.push(((i, j, k), c.clone()));
    }
    for ((i, j, k), c) in a2.constants() {
        entries.push(((n1 + i, n1 + j, n1 + k), c.clone()));
    }
    // (e_i,0)(0,f_j) = ω₂(f_j)(e_i,0)
    for i in 0..n1 {
        for j in 0..n2 {
            entries.push(((i, n1 + j, i), w2.values()[j].clone()));
        }
    }
    // (0,f_i)(e_j,0) = ω₁(e_j)(0,f_i)
    for i in 0..n2 {
        for j in 0..n1 {
            entries.push(((n1 + i, j, n1 + i), w1.values()[j].clone()));
        }
    }
    let out = Algebra::new(a1.field(), n1 + n2, entries).expect("bowtie indices in range");
    match (a1.basis_names(), a2.basis_names()) {
        (Some(l), Some(r)) => out.with_basis_names(l.iter().chain(r).cloned().collect()).expect("names sized"),
        _ => out,
    }
}

/// `(A₁ ⋈ A₂, ω₁ ⋈ ω₂)`, tagged with its block structure.
pub fn bowtie(b1: &BaricAlgebra, b2: &BaricAlgebra) -> Result<BaricAlgebra> {
    if b1.field() != b2.field() {
        return Err(Error::FieldMismatch { left: b1.field(), right: b2.field() });
    }
    let algebra = bowtie_constants(b1.algebra(), b1.weight(), b2.algebra(), b2.weight());
    let weight = WeightFunctional::new(b1.weight().values().iter().chain(b2.weight().values()).cloned().collect());
    let tag = BowtieTag {
        left_dim: b1.dim(),
        right_dim: b2.dim(),
        left_weight: b1.weight().clone(),
        right_weight: b2.weight().clone(),
    };
    Ok(BaricAlgebra::new(algebra, weight)?.with_provenance_unchecked(tag))
}

pub fn tag_of(b: &BaricAlgebra) -> Result<&BowtieTag> {
    b.provenance().ok_or(Error::NotABowtie)
}

/// The factor on `side`, recovered from the diagonal block.
pub fn factor(b: &BaricAlgebra, side: Side) -> Result<BaricAlgebra> {
    let tag = tag_of(b)?;
    let algebra = block_algebra(b.algebra(), tag.range(side));
    BaricAlgebra::new(algebra, tag.factor_weight(side).clone())
}

pub fn factors(b: &BaricAlgebra) -> Result<(BaricAlgebra, BaricAlgebra)> {
    Ok((factor(b, Side::Left)?, factor(b, Side::Right)?))
}

/// `ι₁(x) = (x, 0)` or `ι₂(x) = (0, x)`.
pub fn embed(b: &BaricAlgebra, side: Side, x: &Element) -> Result<Element> {
    let tag = tag_of(b)?;
    let range = tag.range(side);
    if x.len() != range.len() {
        return Err(Error::DimensionMismatch { expected: range.len(), found: x.len() });
    }
    let mut coords = vec![b.field().zero(); b.dim()];
    for (slot, c) in coords[range].iter_mut().zip(x.coords()) {
        *slot = c.clone();
    }
    Ok(Element::new(coords))
}

/// Embeds a factor subspace as a subspace of the bowtie.
pub fn embed_subspace(b: &BaricAlgebra, side: Side, s: &Subspace) -> Result<Subspace> {
    let rows: Vec<Element> = s
        .basis_vectors()
        .map(|v| embed(b, side, &Element::new(v.to_vec())))
        .collect::<Result<_>>()?;
    Subspace::span(b.field(), b.dim(), &rows)
}

pub fn project_element(b: &BaricAlgebra, side: Side, x: &Element) -> Result<Element> {
    let tag = tag_of(b)?;
    b.algebra().check(x)?;
    let range = tag.range(side);
    Ok(x.slice(range.start, range.end))
}

/// `p_i(S)`, the coordinate projection of `S` onto one block.
pub fn project(b: &BaricAlgebra, side: Side, s: &Subspace) -> Result<Subspace> {
    let tag = tag_of(b)?;
    if s.ambient_dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: b.dim(), found: s.ambient_dim() });
    }
    let range = tag.range(side);
    let rows: Vec<Vec<FieldElement>> = s.basis_vectors().map(|v| v[range.clone()].to_vec()).collect();
    Subspace::span(b.field(), range.len(), &rows)
}

fn check_pair(b1: &BaricAlgebra, b2: &BaricAlgebra, x: (&Element, &Element)) -> Result<()> {
    b1.algebra().check(x.0)?;
    b2.algebra().check(x.1)
}

/// `[x, y]` in `A₁ ⋈ A₂` from factor data only:
/// `([a₁,b₁] + ω₂(b₂)a₁ − ω₂(a₂)b₁, [a₂,b₂] + ω₁(b₁)a₂ − ω₁(a₁)b₂)`.
pub fn commutator_closed_form(
    b1: &BaricAlgebra,
    b2: &BaricAlgebra,
    x: (&Element, &Element),
    y: (&Element, &Element),
) -> Result<Element> {
    check_pair(b1, b2, x)?;
    check_pair(b1, b2, y)?;
    let (a1, a2) = x;
    let (c1, c2) = y;
    let first = &(&b1.algebra().commutator(a1, c1)? + &a1.scale(&b2.weight_of(c2))) - &c1.scale(&b2.weight_of(a2));
    let second = &(&b2.algebra().commutator(a2, c2)? + &a2.scale(&b1.weight_of(c1))) - &c2.scale(&b1.weight_of(a1));
    Ok(first.concat(&second))
}

/// `(x, y, z)` in `A₁ ⋈ A₂` from factor data only:
/// `((a₁,b₁,c₁) + ω₂(b₂)(a₁c₁ − ω₁(c₁)a₁), (a₂,b₂,c₂) + ω₁(b₁)(a₂c₂ − ω₂(c₂)a₂))`.
pub fn associator_closed_form(
    b1: &BaricAlgebra,
    b2: &BaricAlgebra,
    x: (&Element, &Element),
    y: (&Element, &Element),
    z: (&Element, &Element),
) -> Result<Element> {
    check_pair(b1, b2, x)?;
    check_pair(b1, b2, y)?;
    check_pair(b1, b2, z)?;
    let block = |own: &BaricAlgebra, other: &BaricAlgebra, a: &Element, b: &Element, b_other: &Element, c: &Element| {
        let assoc = own.algebra().associator(a, b, c)?;
        let correction = &own.algebra().multiply(a, c)? - &a.scale(&own.weight_of(c));
        Ok::<_, Error>(&assoc + &correction.scale(&other.weight_of(b_other)))
    };
    let first = block(b1, b2, x.0, y.0, y.1, z.0)?;
    let second = block(b2, b1, x.1, y.1, y.0, z.1)?;
    Ok(first.concat(&second))
}

fn is_idempotent(a: &Algebra, e: &Element) -> Result<bool> {
    Ok(a.multiply(e, e)? == *e)
}

/// `(λe₁, (1−λ)e₂)` for weight-one idempotents `e₁ ∈ A₁`, `e₂ ∈ A₂`.
pub fn idempotent_family(b: &BaricAlgebra, e1: &Element, e2: &Element, lambda: &FieldElement) -> Result<Element> {
    let (f1, f2) = factors(b)?;
    for (f, e) in [(&f1, e1), (&f2, e2)] {
        f.algebra().check(e)?;
        if !is_idempotent(f.algebra(), e)? {
            return Err(Error::NotIdempotentInput);
        }
        if !f.weight_of(e).is_one() {
            return Err(Error::WeightNotOne);
        }
    }
    let mu = &b.field().one() - lambda;
    let left = embed(b, Side::Left, &e1.scale(lambda))?;
    let right = embed(b, Side::Right, &e2.scale(&mu))?;
    Ok(&left + &right)
}

/// `(K, id)`.
pub fn field_algebra(field: FieldSpec) -> BaricAlgebra {
    let a = Algebra::new(field, 1, [((0, 0, 0), field.one())]).expect("one-dimensional");
    BaricAlgebra::new(a, WeightFunctional::new(vec![field.one()])).expect("identity is a weight")
}

/// `K^{⋈n}`, built as the left-associated iterated bowtie of `(K, id)`.
///
/// Its structure constants are `c[i][j][k] = δ(i,k)` with all-ones weight.
pub fn kpow(field: FieldSpec, n: usize) -> BaricAlgebra {
    assert!(n >= 1, "K^n requires n >= 1");
    let k = field_algebra(field);
    (1..n).fold(k.clone(), |acc, _| bowtie(&acc, &k).expect("same field"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifiedMap {
    pub matrix: Matrix,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralIsos {
    /// `A₁⋈A₂ → A₂⋈A₁`, `(a₁,a₂) ↦ (a₂,a₁)`.
    pub swap: VerifiedMap,
    /// `(A₁⋈A₂)⋈A₃ → A₁⋈(A₂⋈A₃)`; the identity on concatenated coordinates.
    pub assoc: VerifiedMap,
    /// `A₁⋈A₂ → A₁'⋈A₂`, `(a₁,a₂) ↦ (f(a₁),a₂)`.
    pub transport: Option<VerifiedMap>,
}

fn block_diag(field: FieldSpec, a: &Matrix, b: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(field, a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    m
}

/// Builds and verifies the swap, reassociation and transport isomorphisms.
///
/// `transport` is `(f, A₁')` with `f: A₁ → A₁'` a baric isomorphism.
pub fn structural_isos(
    b1: &BaricAlgebra,
    b2: &BaricAlgebra,
    b3: &BaricAlgebra,
    transport: Option<(&Matrix, &BaricAlgebra)>,
) -> Result<StructuralIsos> {
    let field = b1.field();
    let (n1, n2) = (b1.dim(), b2.dim());

    let b12 = bowtie(b1, b2)?;
    let b21 = bowtie(b2, b1)?;
    let mut swap = Matrix::zeros(field, n1 + n2, n1 + n2);
    for i in 0..n1 {
        swap.set(i, n2 + i, field.one());
    }
    for j in 0..n2 {
        swap.set(n1 + j, j, field.one());
    }
    let swap_verified = baric_isomorphic_by(&swap, &b12, &b21)?;

    let left_assoc = bowtie(&b12, b3)?;
    let right_assoc = bowtie(b1, &bowtie(b2, b3)?)?;
    let assoc = Matrix::identity(field, left_assoc.dim());
    let assoc_verified = baric_isomorphic_by(&assoc, &left_assoc, &right_assoc)?;

    let transport = match transport {
        None => None,
        Some((f, b1_prime)) => {
            if f.rows() != n1 || f.cols() != b1_prime.dim() || !baric_isomorphic_by(f, b1, b1_prime)? {
                return Err(Error::NotWeightPreserving);
            }
            let lifted = block_diag(field, f, &Matrix::identity(field, n2));
            let target = bowtie(b1_prime, b2)?;
            let verified = baric_isomorphic_by(&lifted, &b12, &target)?;
            Some(VerifiedMap { matrix: lifted, verified })
        }
    };

    Ok(StructuralIsos {
        swap: VerifiedMap { matrix: swap, verified: swap_verified },
        assoc: VerifiedMap { matrix: assoc, verified: assoc_verified },
        transport,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssociativityCharacter {
    pub bowtie_associative: bool,
    pub scalar_action_left: bool,
    pub scalar_action_right: bool,
}

/// Associativity of `A₁ ⋈ A₂` next to the scalar-action law in each factor.
pub fn associativity_character(b1: &BaricAlgebra, b2: &BaricAlgebra) -> Result<AssociativityCharacter> {
    let b = bowtie(b1, b2)?;
    Ok(AssociativityCharacter {
        bowtie_associative: b.algebra().is_associative(),
        scalar_action_left: satisfies_scalar_action(b1.algebra(), b1.weight()),
        scalar_action_right: satisfies_scalar_action(b2.algebra(), b2.weight()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{scalar_action, truncated_polynomial};
    use crate::baric::classify_scalar_action;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn d2(field: FieldSpec) -> BaricAlgebra {
        BaricAlgebra::new(truncated_polynomial(field, 2), WeightFunctional::from_i64(field, &[1, 0])).unwrap()
    }

    fn e(field: FieldSpec, v: &[i64]) -> Element {
        Element::from_i64(field, v)
    }

    #[test]
    fn bowtie_examples() {
        let kk = bowtie(&field_algebra(q()), &field_algebra(q())).unwrap();
        let expected = Algebra::from_fn(q(), 2, |i, _, k| if i == k { q().one() } else { q().zero() });
        assert_eq!(kk.algebra(), &expected);
        assert_eq!(kk.weight(), &WeightFunctional::from_i64(q(), &[1, 1]));

        let dd = bowtie(&d2(q()), &d2(q())).unwrap();
        let m = |x: &[i64], y: &[i64]| dd.algebra().multiply(&e(q(), x), &e(q(), y)).unwrap();
        assert_eq!(m(&[0, 1, 0, 0], &[0, 0, 1, 0]), e(q(), &[0, 1, 0, 0]));
        assert_eq!(m(&[0, 0, 0, 1], &[1, 0, 0, 0]), e(q(), &[0, 0, 0, 1]));

        assert!(matches!(bowtie(&d2(q()), &d2(f(3))), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn provenance_roundtrip() {
        let dd = bowtie(&d2(f(2)), &kpow(f(2), 2)).unwrap();
        let tag = dd.provenance().unwrap().clone();
        let stripped = dd.clone().without_provenance();
        assert_eq!(stripped.clone().with_provenance(tag).unwrap(), dd);
        let bogus = BowtieTag::split(dd.weight(), 1).unwrap();
        assert_eq!(stripped.with_provenance(bogus), Err(Error::InvalidProvenance));
        assert_eq!(factors(&dd).unwrap(), (d2(f(2)), kpow(f(2), 2).without_provenance()));
    }

    #[test]
    fn embed_examples() {
        let kk = kpow(q(), 2);
        assert_eq!(embed(&kk, Side::Left, &e(q(), &[1])).unwrap(), e(q(), &[1, 0]));
        let dd = bowtie(&d2(q()), &d2(q())).unwrap();
        assert_eq!(embed(&dd, Side::Right, &e(q(), &[0, 1])).unwrap(), e(q(), &[0, 0, 0, 1]));
        let x = embed(&dd, Side::Left, &e(q(), &[0, 1])).unwrap();
        for y in [[1, 2, 3, 4], [0, 0, 5, -1], [7, 0, 0, 2]] {
            let prod = dd.algebra().multiply(&x, &e(q(), &y)).unwrap();
            assert!(prod[2].is_zero() && prod[3].is_zero());
        }
        assert_eq!(embed(&d2(q()), Side::Left, &e(q(), &[1])), Err(Error::NotABowtie));
        assert!(matches!(embed(&dd, Side::Left, &e(q(), &[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn project_examples() {
        let dd = bowtie(&d2(q()), &d2(q())).unwrap();
        let s = Subspace::span(q(), 4, &[e(q(), &[1, 0, -1, 0])]).unwrap();
        assert_eq!(project(&dd, Side::Left, &s).unwrap(), Subspace::span(q(), 2, &[e(q(), &[1, 0])]).unwrap());
        assert!(project(&dd, Side::Right, &Subspace::zero(q(), 4)).unwrap().is_zero());
        let kk = kpow(q(), 2);
        assert!(project(&kk, Side::Left, &kk.kernel()).unwrap().is_full());
    }

    #[test]
    fn commutator_closed_form_examples() {
        let k = field_algebra(q());
        let x = (&e(q(), &[1]), &e(q(), &[0]));
        let y = (&e(q(), &[0]), &e(q(), &[1]));
        assert_eq!(commutator_closed_form(&k, &k, x, y).unwrap(), e(q(), &[1, -1]));
        assert!(commutator_closed_form(&k, &k, x, x).unwrap().is_zero());

        // weight-zero components in commutative factors: the bracket vanishes
        let d = d2(q());
        let a = (&e(q(), &[0, 2]), &e(q(), &[0, 3]));
        let b = (&e(q(), &[0, -1]), &e(q(), &[0, 5]));
        assert!(commutator_closed_form(&d, &d, a, b).unwrap().is_zero());
    }

    #[test]
    fn associator_closed_form_examples() {
        let d = d2(q());
        let zero = e(q(), &[0, 0]);
        let (one, x) = (e(q(), &[1, 0]), e(q(), &[0, 1]));
        let w = associator_closed_form(&d, &d, (&one, &zero), (&zero, &one), (&x, &zero)).unwrap();
        assert_eq!(w, e(q(), &[0, 1, 0, 0]));
        let dd = bowtie(&d, &d).unwrap();
        let direct = dd.algebra().associator(&e(q(), &[1, 0, 0, 0]), &e(q(), &[0, 0, 1, 0]), &e(q(), &[0, 1, 0, 0])).unwrap();
        assert_eq!(w, direct);

        let a = e(q(), &[2, 1]);
        let b = e(q(), &[1, -3]);
        let c = e(q(), &[0, 4]);
        assert!(associator_closed_form(&d, &d, (&a, &zero), (&b, &zero), (&c, &zero)).unwrap().is_zero());
    }

    #[test]
    fn idempotent_family_examples() {
        let dd = bowtie(&d2(q()), &d2(q())).unwrap();
        let unit = e(q(), &[1, 0]);
        let member = |l: &str| idempotent_family(&dd, &unit, &unit, &q().parse(l).unwrap()).unwrap();
        let m1 = member("1");
        assert_eq!(m1, e(q(), &[1, 0, 0, 0]));
        let half = member("1/2");
        assert_eq!(dd.algebra().multiply(&half, &half).unwrap(), half);
        let (a, b) = (member("1/3"), member("2/3"));
        assert_eq!(dd.algebra().multiply(&a, &b).unwrap(), a);
        assert!(dd.weight_of(&a).is_one());

        let x = e(q(), &[0, 1]);
        assert_eq!(idempotent_family(&dd, &x, &unit, &q().one()), Err(Error::NotIdempotentInput));
        let z = e(q(), &[0, 0]);
        assert_eq!(idempotent_family(&dd, &z, &unit, &q().one()), Err(Error::WeightNotOne));
    }

    #[test]
    fn kpow_examples() {
        assert_eq!(kpow(q(), 1), field_algebra(q()));
        let k2 = kpow(q(), 2);
        assert_eq!(k2.weight(), &WeightFunctional::from_i64(q(), &[1, 1]));
        let k3 = kpow(q(), 3);
        let direct = Algebra::from_fn(q(), 3, |i, _, k| if i == k { q().one() } else { q().zero() });
        assert_eq!(k3.algebra(), &direct);
        let flags = k3.algebra().property_flags();
        assert!(flags.associative && !flags.commutative);
        assert_eq!(k3.weight(), &WeightFunctional::from_i64(q(), &[1, 1, 1]));
    }

    #[test]
    fn structural_iso_examples() {
        let k = field_algebra(q());
        let isos = structural_isos(&k, &k, &k, Some((&Matrix::identity(q(), 1), &k))).unwrap();
        assert!(isos.swap.verified && isos.assoc.verified);
        let t = isos.transport.unwrap();
        assert!(t.verified);
        assert_eq!(t.matrix, Matrix::identity(q(), 2));

        let bad = Matrix::from_i64(q(), &[&[2]]);
        assert_eq!(structural_isos(&k, &k, &k, Some((&bad, &k))), Err(Error::NotWeightPreserving));
    }

    #[test]
    fn associativity_character_examples() {
        let k2 = kpow(q(), 2);
        let c = associativity_character(&k2, &k2).unwrap();
        assert!(c.bowtie_associative && c.scalar_action_left && c.scalar_action_right);
        let b = bowtie(&k2, &k2).unwrap();
        let cls = classify_scalar_action(&b).unwrap().unwrap();
        assert!(baric_isomorphic_by(&cls.isomorphism, &b, &kpow(q(), 4)).unwrap());

        let d = d2(q());
        assert!(!associativity_character(&d, &d).unwrap().bowtie_associative);
        let c = associativity_character(&field_algebra(q()), &d).unwrap();
        assert!(!c.bowtie_associative && !c.scalar_action_right && c.scalar_action_left);
    }

    fn random_weight_scalar_action(p: u64) -> impl Strategy<Value = BaricAlgebra> {
        proptest::collection::vec(0..p, 1..4).prop_map(move |mut w| {
            w[0] = 1;
            let field = f(p);
            let w = WeightFunctional::new(w.into_iter().map(|r| field.residue(r)).collect());
            BaricAlgebra::new(scalar_action(field, w.values()), w).unwrap()
        })
    }

    proptest! {
        #[test]
        fn bowtie_weight_is_multiplicative(b1 in random_weight_scalar_action(5), b2 in random_weight_scalar_action(5),
                                            xs in proptest::collection::vec(0u64..5, 12)) {
            let b = bowtie(&b1, &b2).unwrap();
            let n = b.dim();
            let field = f(5);
            let x = Element::new(xs[..n].iter().map(|&r| field.residue(r)).collect());
            let y = Element::new(xs[6..6 + n].iter().map(|&r| field.residue(r)).collect());
            let xy = b.algebra().multiply(&x, &y).unwrap();
            prop_assert_eq!(b.weight_of(&xy), b.weight_of(&x) * b.weight_of(&y));
        }

        #[test]
        fn kpow_splits(n1 in 1usize..4, n2 in 1usize..4) {
            let joined = bowtie(&kpow(q(), n1), &kpow(q(), n2)).unwrap();
            prop_assert!(baric_isomorphic_by(&Matrix::identity(q(), n1 + n2), &kpow(q(), n1 + n2), &joined).unwrap());
        }
    }
}
