//! Ideals of finite-dimensional algebras and how they pass through a bowtie.

use crate::algebra::{Algebra, Element};
use crate::baric::BaricAlgebra;
use crate::bowtie::{embed_subspace, factors, project, tag_of, Side};
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, check_cap, enumerate_subspaces, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sidedness {
    Right,
    TwoSided,
    None,
}

/// Which multiplications a closure must absorb.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealSide {
    Right,
    TwoSided,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub space: Subspace,
    pub sided: Sidedness,
}

fn check_ambient(a: &Algebra, s: &Subspace) -> Result<()> {
    if s.ambient_dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: s.ambient_dim() });
    }
    Ok(())
}

/// Products of the basis of `s` with every algebra basis vector on the given side.
fn products(a: &Algebra, s: &Subspace, left: bool) -> Vec<Element> {
    let mut out = Vec::new();
    for v in s.basis_vectors() {
        let v = Element::new(v.to_vec());
        for k in 0..a.dim() {
            let e = a.basis_element(k);
            let p = if left { a.multiply(&e, &v) } else { a.multiply(&v, &e) };
            out.push(p.expect("sized to algebra"));
        }
    }
    out
}

fn absorbs(a: &Algebra, s: &Subspace, left: bool) -> bool {
    products(a, s, left)
        .iter()
        .all(|p| s.contains_vector(p.coords()).expect("sized to algebra"))
}

pub fn is_right_ideal(a: &Algebra, s: &Subspace) -> Result<bool> {
    check_ambient(a, s)?;
    Ok(absorbs(a, s, false))
}

pub fn is_two_sided(a: &Algebra, s: &Subspace) -> Result<bool> {
    check_ambient(a, s)?;
    Ok(absorbs(a, s, false) && absorbs(a, s, true))
}

/// The strongest label among right / two-sided that `s` carries.
pub fn sidedness(a: &Algebra, s: &Subspace) -> Result<Sidedness> {
    check_ambient(a, s)?;
    Ok(match (absorbs(a, s, false), absorbs(a, s, true)) {
        (true, true) => Sidedness::TwoSided,
        (true, false) => Sidedness::Right,
        _ => Sidedness::None,
    })
}

/// Least right or two-sided ideal containing `gens`.
pub fn ideal_closure(a: &Algebra, gens: &[Element], side: IdealSide) -> Result<Ideal> {
    for g in gens {
        a.check(g)?;
    }
    let mut space = Subspace::span(a.field(), a.dim(), gens)?;
    loop {
        let mut new = products(a, &space, false);
        if side == IdealSide::TwoSided {
            new.extend(products(a, &space, true));
        }
        let next = space.sum(&Subspace::span(a.field(), a.dim(), &new)?)?;
        if next.dim() == space.dim() {
            break;
        }
        space = next;
    }
    let sided = sidedness(a, &space)?;
    Ok(Ideal { space, sided })
}

/// Two-sided ideals of `a` contained in `within`, in enumeration order.
pub fn two_sided_ideals_within(a: &Algebra, within: &Subspace, cap: u64) -> Result<Vec<Subspace>> {
    check_ambient(a, within)?;
    let mut out = Vec::new();
    for s in enumerate_subspaces(within, cap)? {
        if absorbs(a, &s, false) && absorbs(a, &s, true) {
            out.push(s);
        }
    }
    Ok(out)
}

/// `𝓘(A, ω)`: the two-sided ideals inside `Ker ω`.
pub fn kernel_ideals(b: &BaricAlgebra, cap: u64) -> Result<Vec<Subspace>> {
    two_sided_ideals_within(b.algebra(), &b.kernel(), cap)
}

/// Whether the two-sided factor ideal `i` stays two-sided once embedded.
pub fn embedded_ideal_check(bow: &BaricAlgebra, side: Side, i: &Subspace) -> Result<bool> {
    let (f1, f2) = factors(bow)?;
    let factor = if side == Side::Left { f1 } else { f2 };
    if !is_two_sided(factor.algebra(), i)? {
        return Err(Error::NotAnIdeal);
    }
    is_two_sided(bow.algebra(), &embed_subspace(bow, side, i)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedIdeal {
    pub i1: Subspace,
    pub i2: Subspace,
    pub i1_is_ideal: bool,
    pub i2_is_ideal: bool,
}

/// `(p₁(I), p₂(I))` for a two-sided ideal `I` of the bowtie.
pub fn project_ideal(bow: &BaricAlgebra, i: &Subspace) -> Result<ProjectedIdeal> {
    tag_of(bow)?;
    if !is_two_sided(bow.algebra(), i)? {
        return Err(Error::NotAnIdeal);
    }
    let (f1, f2) = factors(bow)?;
    let i1 = project(bow, Side::Left, i)?;
    let i2 = project(bow, Side::Right, i)?;
    Ok(ProjectedIdeal {
        i1_is_ideal: is_two_sided(f1.algebra(), &i1)?,
        i2_is_ideal: is_two_sided(f2.algebra(), &i2)?,
        i1,
        i2,
    })
}

/// `φ(I, J) = I ⋈ J = ι₁(I) ⊕ ι₂(J)`.
pub fn phi(bow: &BaricAlgebra, i: &Subspace, j: &Subspace) -> Result<Subspace> {
    embed_subspace(bow, Side::Left, i)?.sum(&embed_subspace(bow, Side::Right, j)?)
}

/// `ψ(I) = (I₁, I₂)`.
pub fn psi(bow: &BaricAlgebra, i: &Subspace) -> Result<(Subspace, Subspace)> {
    Ok((project(bow, Side::Left, i)?, project(bow, Side::Right, i)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelIdealBijection {
    /// `𝓘(A₁) × 𝓘(A₂)`.
    pub pairs: Vec<(Subspace, Subspace)>,
    /// `𝓘(A₁⋈A₂) ∖ {Ker}`.
    pub bowtie_ideals: Vec<Subspace>,
    /// `φ` applied to each pair, in the order of `pairs`.
    pub images: Vec<Subspace>,
    pub verified: bool,
}

/// Enumerates both sides of `𝓘(A₁)×𝓘(A₂) ↔ 𝓘(A₁⋈A₂)∖{Ker}` and checks that
/// `φ` and `ψ` are mutually inverse on them.
pub fn kernel_ideal_bijection(bow: &BaricAlgebra, cap: u64) -> Result<KernelIdealBijection> {
    let (f1, f2) = factors(bow)?;
    for f in [&f1, &f2] {
        let flags = f.algebra().property_flags();
        if !(flags.commutative && flags.unital) {
            return Err(Error::FactorsNotCommutativeUnital);
        }
    }
    bow.field().require_finite()?;
    let ideals1 = kernel_ideals(&f1, cap)?;
    let ideals2 = kernel_ideals(&f2, cap)?;
    let kernel = bow.kernel();
    let bowtie_ideals: Vec<Subspace> = kernel_ideals(bow, cap)?.into_iter().filter(|s| *s != kernel).collect();

    let mut pairs = Vec::new();
    let mut images = Vec::new();
    let mut verified = true;
    for i in &ideals1 {
        for j in &ideals2 {
            let image = phi(bow, i, j)?;
            verified &= bowtie_ideals.contains(&image);
            verified &= psi(bow, &image)? == (i.clone(), j.clone());
            pairs.push((i.clone(), j.clone()));
            images.push(image);
        }
    }
    for s in &bowtie_ideals {
        let (i, j) = psi(bow, s)?;
        verified &= ideals1.contains(&i) && ideals2.contains(&j);
        verified &= phi(bow, &i, &j)? == *s;
    }
    verified &= pairs.len() == bowtie_ideals.len();
    Ok(KernelIdealBijection { pairs, bowtie_ideals, images, verified })
}

fn is_idempotent(a: &Algebra, x: &Element) -> bool {
    a.multiply(x, x).expect("sized to algebra") == *x
}

/// Every idempotent of weight one, by scanning all of `F_p^n`.
pub fn weight_one_idempotents(b: &BaricAlgebra, cap: u64) -> Result<Vec<Element>> {
    let one = b.field().one();
    let mut out = Vec::new();
    for v in all_vectors(b.field(), b.dim(), cap)? {
        let x = Element::new(v);
        if b.weight_of(&x) == one && is_idempotent(b.algebra(), &x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Weight-one idempotents among the basis vectors, the unit and `candidates`.
pub fn weight_one_idempotents_among(b: &BaricAlgebra, candidates: &[Element]) -> Result<Vec<Element>> {
    let one = b.field().one();
    let mut pool: Vec<Element> = (0..b.dim()).map(|i| b.algebra().basis_element(i)).collect();
    pool.extend(b.algebra().unit());
    for c in candidates {
        b.algebra().check(c)?;
        pool.push(c.clone());
    }
    let mut out: Vec<Element> = Vec::new();
    for x in pool {
        if b.weight_of(&x) == one && is_idempotent(b.algebra(), &x) && !out.contains(&x) {
            out.push(x);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposability {
    Decomposable { n1: Subspace, n2: Subspace },
    Indecomposable,
    NoWeightOneIdempotent,
    Undecided,
}

impl Decomposability {
    pub fn label(&self) -> &'static str {
        match self {
            Decomposability::Decomposable { .. } => "decomposable",
            Decomposability::Indecomposable => "indecomposable",
            Decomposability::NoWeightOneIdempotent => "no_weight1_idempotent",
            Decomposability::Undecided => "undecided",
        }
    }
}

fn splits(kernel: &Subspace, n1: &Subspace, n2: &Subspace) -> Result<bool> {
    Ok(!n1.is_zero() && !n2.is_zero() && n1.dim() + n2.dim() == kernel.dim() && n1.sum(n2)? == *kernel)
}

/// Decides whether `Ker ω` splits as a direct sum of two nonzero ideals.
///
/// Over `F_p` the search is exhaustive within `cap`. Over `ℚ` only ideals
/// generated by subsets of the kernel vectors among `candidates` and the
/// kernel basis are tried, and a failed search is `Undecided`.
pub fn decomposability(b: &BaricAlgebra, candidates: &[Element], cap: u64) -> Result<Decomposability> {
    let finite = b.field().modulus().is_some();
    let has_idempotent = if finite {
        !weight_one_idempotents(b, cap)?.is_empty()
    } else {
        !weight_one_idempotents_among(b, candidates)?.is_empty()
    };
    if !has_idempotent {
        return Ok(Decomposability::NoWeightOneIdempotent);
    }
    let kernel = b.kernel();
    if kernel.dim() <= 1 {
        return Ok(Decomposability::Indecomposable);
    }
    let a = b.algebra();

    if finite {
        let ideals = kernel_ideals(b, cap)?;
        for (idx, n1) in ideals.iter().enumerate() {
            for n2 in &ideals[idx + 1..] {
                if splits(&kernel, n1, n2)? {
                    return Ok(Decomposability::Decomposable { n1: n1.clone(), n2: n2.clone() });
                }
            }
        }
        return Ok(Decomposability::Indecomposable);
    }

    let mut gens: Vec<Element> = Vec::new();
    for c in candidates {
        if b.weight_of(c).is_zero() && !c.is_zero() && !gens.contains(c) {
            gens.push(c.clone());
        }
    }
    for v in kernel.basis_vectors() {
        let v = Element::new(v.to_vec());
        if !gens.contains(&v) {
            gens.push(v);
        }
    }
    let m = gens.len();
    check_cap(2, m, cap)?;
    for mask in 1u64..(1u64 << m) - 1 {
        let (left, right): (Vec<_>, Vec<_>) = (0..m).partition(|&i| mask >> i & 1 == 1);
        let pick = |idx: &[usize]| idx.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>();
        let n1 = ideal_closure(a, &pick(&left), IdealSide::TwoSided)?.space;
        let n2 = ideal_closure(a, &pick(&right), IdealSide::TwoSided)?.space;
        if kernel.contains(&n1)? && kernel.contains(&n2)? && splits(&kernel, &n1, &n2)? {
            return Ok(Decomposability::Decomposable { n1, n2 });
        }
    }
    Ok(Decomposability::Undecided)
}

/// Checks a claimed splitting `Ker ω = N₁ ⊕ N₂` into nonzero two-sided ideals.
pub fn is_valid_splitting(b: &BaricAlgebra, n1: &Subspace, n2: &Subspace) -> Result<bool> {
    let kernel = b.kernel();
    Ok(is_two_sided(b.algebra(), n1)?
        && is_two_sided(b.algebra(), n2)?
        && kernel.contains(n1)?
        && kernel.contains(n2)?
        && splits(&kernel, n1, n2)?)
}
