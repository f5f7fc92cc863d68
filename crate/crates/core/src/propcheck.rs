//! Seeded executable checks of the bowtie results.
//!
//! Each proposition id names a suite; `check` runs `trials` independent
//! trials, trial `t` drawing from a ChaCha8 stream keyed by `(seed, t)`, so a
//! report is reproduced exactly by rerunning with the same arguments.
//!
//! Suites that need associative factors draw from a fixed list instead of
//! rejection sampling: scalar-action algebras `xy = ω(y)x` with a random
//! weight, `K`, `K^{⋈m}` for `m ≤ 3`, `D2 = K[x]/(x²)`, `K[x]/(x³)` and
//! `K[Z/2]` with the augmentation weight.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{group_algebra_z2, scalar_action, truncated_polynomial, Algebra, Element};
use crate::baric::{
    baric_isomorphic_by, classify_scalar_action, enumerate_weights, normalize_weight_one_basis, satisfies_scalar_action,
    validate_weight, BaricAlgebra, WeightFunctional,
};
use crate::bowtie::{
    associator_closed_form, bowtie, commutator_closed_form, embed, field_algebra, idempotent_family, kpow,
    structural_isos, Side,
};
use crate::document::to_json;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::ideals::{
    decomposability, embedded_ideal_check, kernel_ideal_bijection, kernel_ideals, project_ideal, two_sided_ideals_within,
    Decomposability,
};
use crate::linalg::{Matrix, Subspace, DEFAULT_ENUMERATION_CAP};

pub const PROPOSITION_IDS: [&str; 22] = [
    "P2.1", "P3.1", "P3.2", "P3.3", "C3.1", "P4.1", "C4.1", "P5.1", "P5.2", "P5.3", "P5.4", "P5.5", "L3.1", "L6.1",
    "P6.1", "P6.2", "L6.2", "P6.3", "C6.1", "EX2.1", "EX5.1", "EX6.1",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GenFlags {
    pub commutative: bool,
    pub unital: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Field for suites that are not tied to characteristic zero.
    pub field: FieldSpec,
    /// Largest factor dimension for general suites.
    pub max_dim: usize,
    /// Largest factor dimension for suites that enumerate ideal lattices.
    pub ideal_max_dim: usize,
    pub enum_cap: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            field: FieldSpec::prime(3).expect("3 is prime"),
            max_dim: 3,
            ideal_max_dim: 2,
            enum_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    pub description: String,
    /// The offending algebra as a document.
    pub document: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropReport {
    pub proposition_id: String,
    pub trials: usize,
    pub failures: usize,
    pub first_counterexample: Option<Counterexample>,
    pub seed: u64,
}

impl PropReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// `<id> trials=<n> failures=<k> seed=<s> [counterexample=<path>]`.
    pub fn line(&self, counterexample_path: Option<&str>) -> String {
        let mut s = format!(
            "{} trials={} failures={} seed={}",
            self.proposition_id, self.trials, self.failures, self.seed
        );
        if let Some(path) = counterexample_path {
            s.push_str(&format!(" counterexample={path}"));
        }
        s
    }
}

impl fmt::Display for PropReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line(None))
    }
}

struct Failure {
    description: String,
    instance: BaricAlgebra,
}

type Outcome = Result<Option<Failure>>;

fn fail(description: impl Into<String>, instance: &BaricAlgebra) -> Outcome {
    Ok(Some(Failure { description: description.into(), instance: instance.clone() }))
}

fn scalar(rng: &mut ChaCha8Rng, field: FieldSpec) -> FieldElement {
    match field.modulus() {
        Some(p) => field.residue(rng.gen_range(0..p)),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

fn nonzero_scalar(rng: &mut ChaCha8Rng, field: FieldSpec) -> FieldElement {
    loop {
        let s = scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

fn element(rng: &mut ChaCha8Rng, field: FieldSpec, n: usize) -> Element {
    Element::new((0..n).map(|_| scalar(rng, field)).collect())
}

fn invertible_matrix(rng: &mut ChaCha8Rng, field: FieldSpec, n: usize) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| scalar(rng, field)).collect()).collect();
        let m = Matrix::from_rows(field, n, rows).expect("square rows");
        if m.rank() == n {
            return m;
        }
    }
}

/// Random structure constants compatible with `weight` (random with
/// `w₀ = 1` when absent). `c[i][j][0]` is solved from the weight equation.
fn sample_baric(
    rng: &mut ChaCha8Rng,
    field: FieldSpec,
    dim: usize,
    flags: GenFlags,
    weight: Option<Vec<FieldElement>>,
) -> BaricAlgebra {
    let w = weight.unwrap_or_else(|| {
        let mut w = vec![field.one()];
        w.extend((1..dim).map(|_| scalar(rng, field)));
        w
    });
    assert!(!flags.unital || w[0].is_one(), "a unit must have weight one");
    let w0_inv = w[0].inv().expect("leading weight is nonzero");
    let mut table = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if flags.commutative && j < i {
                table[i][j] = table[j][i].clone();
                continue;
            }
            let row = &mut table[i][j];
            if flags.unital && (i == 0 || j == 0) {
                row[if i == 0 { j } else { i }] = field.one();
                continue;
            }
            let mut acc = &w[i] * &w[j];
            for k in 1..dim {
                let c = scalar(rng, field);
                acc -= &(&c * &w[k]);
                row[k] = c;
            }
            row[0] = &acc * &w0_inv;
        }
    }
    let algebra = Algebra::from_fn(field, dim, |i, j, k| table[i][j][k].clone());
    BaricAlgebra::new(algebra, WeightFunctional::new(w)).expect("constructed to satisfy the weight equation")
}

/// A random baric algebra over `F_p` whose first basis vector has weight one.
pub fn random_baric(field: FieldSpec, dim: usize, flags: GenFlags, seed: u64) -> Result<BaricAlgebra> {
    field.require_finite()?;
    if dim == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_baric(&mut rng, field, dim, flags, None))
}

fn random_factor(rng: &mut ChaCha8Rng, field: FieldSpec, max_dim: usize, flags: GenFlags) -> BaricAlgebra {
    let dim = rng.gen_range(1..=max_dim.max(1));
    sample_baric(rng, field, dim, flags, None)
}

fn random_scalar_action(rng: &mut ChaCha8Rng, field: FieldSpec, max_dim: usize) -> BaricAlgebra {
    let dim = rng.gen_range(1..=max_dim.max(1));
    let mut w = vec![field.one()];
    w.extend((1..dim).map(|_| scalar(rng, field)));
    BaricAlgebra::new(scalar_action(field, &w), WeightFunctional::new(w)).expect("scalar action is baric")
}

fn associative_generator(rng: &mut ChaCha8Rng, field: FieldSpec, max_dim: usize) -> BaricAlgebra {
    let baric = |a: Algebra, w: &[i64]| BaricAlgebra::new(a, WeightFunctional::from_i64(field, w)).expect("known weight");
    match rng.gen_range(0..6) {
        0 => random_scalar_action(rng, field, max_dim),
        1 => field_algebra(field),
        2 => kpow(field, rng.gen_range(2..=3)).without_provenance(),
        3 => baric(truncated_polynomial(field, 2), &[1, 0]),
        4 => baric(truncated_polynomial(field, 3), &[1, 0, 0]),
        _ => baric(group_algebra_z2(field), &[1, 1]),
    }
}

fn pair_element(x: &Element, n1: usize) -> (Element, Element) {
    (x.slice(0, n1), x.slice(n1, x.len()))
}

fn suite_p2_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b2 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b = bowtie(&b1, &b2)?;
    if b.weight().is_zero() || !validate_weight(b.algebra(), b.weight())? {
        return fail("bowtie weight is not a nonzero homomorphism", &b);
    }
    let (x, y) = (element(rng, caps.field, b.dim()), element(rng, caps.field, b.dim()));
    if b.weight_of(&b.algebra().multiply(&x, &y)?) != b.weight_of(&x) * b.weight_of(&y) {
        return fail(format!("weight not multiplicative on x={x} y={y}"), &b);
    }
    Ok(None)
}

fn suite_p3_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let bs: Vec<_> = (0..3).map(|_| random_factor(rng, caps.field, caps.max_dim, GenFlags::default())).collect();
    let isos = structural_isos(&bs[0], &bs[1], &bs[2], None)?;
    if !isos.swap.verified {
        return fail("swap is not a baric isomorphism", &bowtie(&bs[0], &bs[1])?);
    }
    if !isos.assoc.verified {
        return fail("reassociation is not a baric isomorphism", &bowtie(&bowtie(&bs[0], &bs[1])?, &bs[2])?);
    }
    Ok(None)
}

fn suite_p3_2(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b2 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let t = invertible_matrix(rng, caps.field, b1.dim());
    let b1_prime = b1.change_basis(&t)?;
    let f = t.inverse()?;
    let isos = structural_isos(&b1, &b2, &b2, Some((&f, &b1_prime)))?;
    match isos.transport {
        Some(m) if m.verified => Ok(None),
        _ => fail("lifted isomorphism f × id is not a baric isomorphism", &bowtie(&b1, &b2)?),
    }
}

fn suite_p3_3(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let unital = GenFlags { commutative: false, unital: true };
    let b1 = random_factor(rng, caps.field, caps.max_dim, unital);
    let b2 = random_factor(rng, caps.field, caps.max_dim, unital);
    let b = bowtie(&b1, &b2)?;
    let (e1, e2) = (b1.algebra().basis_element(0), b2.algebra().basis_element(0));
    let (l1, l2) = (scalar(rng, caps.field), scalar(rng, caps.field));
    let e = idempotent_family(&b, &e1, &e2, &l1)?;
    let f = idempotent_family(&b, &e1, &e2, &l2)?;
    let a = b.algebra();
    if a.multiply(&e, &e)? != e || !b.weight_of(&e).is_one() || a.multiply(&e, &f)? != e {
        return fail(format!("family members λ={l1}, λ={l2} violate ef = e"), &b);
    }
    Ok(None)
}

fn suite_c3_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b2 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b = bowtie(&b1, &b2)?;
    if !b.algebra().commutative_center().is_zero() {
        return fail("nonzero commutative center", &b);
    }
    Ok(None)
}

fn suite_p4_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b2 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b = bowtie(&b1, &b2)?;
    let weights = enumerate_weights(b.algebra(), caps.enum_cap)?;
    if weights != [b.weight().clone()] {
        return fail(format!("found {} weights", weights.len()), &b);
    }
    Ok(None)
}

fn suite_c4_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b2 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b = bowtie(&b1, &b2)?;
    for (side, f) in [(Side::Left, &b1), (Side::Right, &b2)] {
        let (x, y) = (element(rng, caps.field, f.dim()), element(rng, caps.field, f.dim()));
        let xy = f.algebra().multiply(&x, &y)?;
        let (ex, ey) = (embed(&b, side, &x)?, embed(&b, side, &y)?);
        if embed(&b, side, &xy)? != b.algebra().multiply(&ex, &ey)? || b.weight_of(&ex) != f.weight_of(&x) {
            return fail(format!("embedding {side:?} is not a weight-compatible homomorphism"), &b);
        }
        let images: Vec<Element> =
            (0..f.dim()).map(|i| embed(&b, side, &f.algebra().basis_element(i))).collect::<Result<_>>()?;
        if Subspace::span(b.field(), b.dim(), &images)?.dim() != f.dim() {
            return fail(format!("embedding {side:?} is not injective"), &b);
        }
    }
    if caps.field.is_finite() && enumerate_weights(b.algebra(), caps.enum_cap)?.len() != 1 {
        return fail("ambient weight is not unique", &b);
    }
    Ok(None)
}

fn suite_p5_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = random_factor(rng, caps.field, caps.ideal_max_dim, GenFlags::default());
    let b2 = random_factor(rng, caps.field, caps.ideal_max_dim, GenFlags::default());
    let b = bowtie(&b1, &b2)?;
    for (side, f) in [(Side::Left, &b1), (Side::Right, &b2)] {
        let full = Subspace::full(f.field(), f.dim());
        for i in two_sided_ideals_within(f.algebra(), &full, caps.enum_cap)? {
            if embedded_ideal_check(&b, side, &i)? != f.kernel().contains(&i)? {
                return fail(format!("{side:?} ideal {i:?}: embedding contract violated"), &b);
            }
        }
    }
    Ok(None)
}

fn bowtie_ideals(b: &BaricAlgebra, caps: &Caps) -> Result<Vec<Subspace>> {
    two_sided_ideals_within(b.algebra(), &Subspace::full(b.field(), b.dim()), caps.enum_cap)
}

fn suite_p5_2(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = random_factor(rng, caps.field, caps.ideal_max_dim, GenFlags::default());
    let b2 = random_factor(rng, caps.field, caps.ideal_max_dim, GenFlags::default());
    let b = bowtie(&b1, &b2)?;
    for i in bowtie_ideals(&b, caps)? {
        let p = project_ideal(&b, &i)?;
        if !p.i1.is_full() && p.i1_is_ideal != b2.kernel().contains(&p.i2)? {
            return fail(format!("I={i:?}: I₁ ideal ⟺ I₂ ⊆ Ker ω₂ fails"), &b);
        }
        if !p.i2.is_full() && p.i2_is_ideal != b1.kernel().contains(&p.i1)? {
            return fail(format!("I={i:?}: I₂ ideal ⟺ I₁ ⊆ Ker ω₁ fails"), &b);
        }
    }
    Ok(None)
}

fn suite_p5_3(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let comm = GenFlags { commutative: true, unital: false };
    let b1 = random_factor(rng, caps.field, caps.ideal_max_dim, comm);
    let b2 = random_factor(rng, caps.field, caps.ideal_max_dim, comm);
    let b = bowtie(&b1, &b2)?;
    let kernel = b.kernel();
    for i in kernel_ideals(&b, caps.enum_cap)? {
        let p = project_ideal(&b, &i)?;
        if p.i1.is_full() != (i == kernel) || p.i2.is_full() != (i == kernel) {
            return fail(format!("I={i:?}: I₁ = A₁ ⟺ I = Ker fails"), &b);
        }
    }
    Ok(None)
}

fn suite_p5_4(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let flags = GenFlags { commutative: true, unital: true };
    let b1 = random_factor(rng, caps.field, caps.ideal_max_dim, flags);
    let b2 = random_factor(rng, caps.field, caps.ideal_max_dim, flags);
    let b = bowtie(&b1, &b2)?;
    if !kernel_ideal_bijection(&b, caps.enum_cap)?.verified {
        return fail("φ and ψ are not mutually inverse", &b);
    }
    Ok(None)
}

fn indecomposable_factor(rng: &mut ChaCha8Rng, caps: &Caps) -> Result<BaricAlgebra> {
    let flags = GenFlags { commutative: true, unital: true };
    for _ in 0..32 {
        let b = random_factor(rng, caps.field, caps.ideal_max_dim, flags);
        if decomposability(&b, &[], caps.enum_cap)? == Decomposability::Indecomposable {
            return Ok(b);
        }
    }
    Ok(field_algebra(caps.field))
}

fn suite_p5_5(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = indecomposable_factor(rng, caps)?;
    let b2 = indecomposable_factor(rng, caps)?;
    let b = bowtie(&b1, &b2)?;
    let d = decomposability(&b, &[], caps.enum_cap)?;
    if d != Decomposability::Indecomposable {
        return fail(format!("bowtie of indecomposables reported {}", d.label()), &b);
    }
    Ok(None)
}

fn suite_l3_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b2 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b = bowtie(&b1, &b2)?;
    let n = b.dim();
    let mut samples: Vec<Element> = (0..n).map(|i| b.algebra().basis_element(i)).collect();
    samples.push(element(rng, caps.field, n));
    for x in &samples {
        for y in &samples {
            let (xp, yp) = (pair_element(x, b1.dim()), pair_element(y, b1.dim()));
            let closed = commutator_closed_form(&b1, &b2, (&xp.0, &xp.1), (&yp.0, &yp.1))?;
            if closed != b.algebra().commutator(x, y)? {
                return fail(format!("commutator mismatch at x={x} y={y}"), &b);
            }
        }
    }
    Ok(None)
}

fn suite_l6_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b2 = random_factor(rng, caps.field, caps.max_dim, GenFlags::default());
    let b = bowtie(&b1, &b2)?;
    let n = b.dim();
    let basis: Vec<Element> = (0..n).map(|i| b.algebra().basis_element(i)).collect();
    let mut triples: Vec<[Element; 3]> = Vec::new();
    for x in &basis {
        for y in &basis {
            for z in &basis {
                triples.push([x.clone(), y.clone(), z.clone()]);
            }
        }
    }
    triples.push([0, 1, 2].map(|_| element(rng, caps.field, n)));
    for [x, y, z] in &triples {
        let (xp, yp, zp) = (pair_element(x, b1.dim()), pair_element(y, b1.dim()), pair_element(z, b1.dim()));
        let closed = associator_closed_form(&b1, &b2, (&xp.0, &xp.1), (&yp.0, &yp.1), (&zp.0, &zp.1))?;
        if closed != b.algebra().associator(x, y, z)? {
            return fail(format!("associator mismatch at x={x} y={y} z={z}"), &b);
        }
    }
    Ok(None)
}

fn mixed_factor(rng: &mut ChaCha8Rng, field: FieldSpec, max_dim: usize) -> BaricAlgebra {
    if rng.gen_bool(0.5) {
        random_scalar_action(rng, field, max_dim)
    } else {
        random_factor(rng, field, max_dim, GenFlags::default())
    }
}

fn suite_p6_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = mixed_factor(rng, caps.field, caps.max_dim);
    let b2 = mixed_factor(rng, caps.field, caps.max_dim);
    let b = bowtie(&b1, &b2)?;
    if b.algebra().is_associative() != satisfies_scalar_action(b.algebra(), b.weight()) {
        return fail("associativity differs from xy = ω(y)x", &b);
    }
    Ok(None)
}

fn suite_p6_2(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b1 = associative_generator(rng, caps.field, caps.max_dim);
    let b2 = associative_generator(rng, caps.field, caps.max_dim);
    let b = bowtie(&b1, &b2)?;
    let a = b.algebra();
    let flags = [a.is_associative(), a.is_left_alternative(), a.is_right_alternative()];
    if flags[0] != flags[1] || flags[1] != flags[2] {
        return fail(format!("associative/left/right alternative = {flags:?}"), &b);
    }
    Ok(None)
}

fn suite_l6_2(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let q = FieldSpec::rationals();
    let n = rng.gen_range(1..=caps.max_dim.max(1) * 2);
    let mut w = vec![q.one()];
    for _ in 1..n {
        w.push(if rng.gen_bool(0.5) { nonzero_scalar(rng, q) } else { q.zero() });
    }
    let b = sample_baric(rng, q, n, GenFlags::default(), Some(w));
    let (normalized, t) = normalize_weight_one_basis(&b)?;
    if !normalized.weight().values().iter().all(FieldElement::is_one) {
        return fail("normalized basis has a vector of weight other than one", &b);
    }
    if t.rank() != n || !baric_isomorphic_by(&t.inverse()?, &b, &normalized)? {
        return fail("change of basis is not an invertible baric isomorphism", &b);
    }
    Ok(None)
}

fn suite_p6_3(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let q = FieldSpec::rationals();
    let b = random_scalar_action(rng, q, caps.max_dim * 2);
    let t = invertible_matrix(rng, q, b.dim());
    let b = b.change_basis(&t)?;
    match classify_scalar_action(&b)? {
        Some(c) if baric_isomorphic_by(&c.isomorphism, &b, &kpow(q, b.dim()))? => Ok(None),
        _ => fail("scalar-action algebra not identified with K^n", &b),
    }
}

fn suite_c6_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let q = FieldSpec::rationals();
    let b1 = associative_generator(rng, q, caps.max_dim);
    let b2 = mixed_factor(rng, q, caps.max_dim);
    let b = bowtie(&b1, &b2)?;
    let c1 = classify_scalar_action(&b1)?;
    let c2 = classify_scalar_action(&b2)?;
    let associative = b.algebra().is_associative();
    if associative != (c1.is_some() && c2.is_some()) {
        return fail("associativity differs from both factors being K^n", &b);
    }
    if associative {
        let c = classify_scalar_action(&b)?.ok_or(Error::WeightInvalid)?;
        if !baric_isomorphic_by(&c.isomorphism, &b, &kpow(q, b.dim()))? {
            return fail("associative bowtie not identified with K^n", &b);
        }
    }
    Ok(None)
}

fn suite_ex2_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b = kpow(caps.field, 2);
    let (x, y) = (element(rng, caps.field, 2), element(rng, caps.field, 2));
    let s = &y[0] + &y[1];
    if b.algebra().multiply(&x, &y)? != x.scale(&s) || b.weight_of(&x) != &x[0] + &x[1] {
        return fail(format!("K⋈K product rule fails at x={x} y={y}"), &b);
    }
    Ok(None)
}

fn suite_ex5_1(_rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let b = kpow(caps.field, 2);
    let ideals = kernel_ideals(&b, caps.enum_cap)?;
    if ideals != [Subspace::zero(caps.field, 2), b.kernel()] {
        return fail(format!("Ker has {} ideals inside it", ideals.len()), &b);
    }
    Ok(None)
}

fn suite_ex6_1(rng: &mut ChaCha8Rng, caps: &Caps) -> Outcome {
    let n = rng.gen_range(1..=caps.max_dim + 3);
    let b = kpow(caps.field, n);
    let f = caps.field;
    let direct = Algebra::from_fn(f, n, |i, _, k| if i == k { f.one() } else { f.zero() });
    if !b.algebra().is_associative() || b.algebra() != &direct || !b.weight().values().iter().all(FieldElement::is_one) {
        return fail(format!("K^{n} is not the associative δ(i,k) algebra"), &b);
    }
    Ok(None)
}

type Suite = fn(&mut ChaCha8Rng, &Caps) -> Outcome;

fn suite(id: &str) -> Option<Suite> {
    Some(match id {
        "P2.1" => suite_p2_1,
        "P3.1" => suite_p3_1,
        "P3.2" => suite_p3_2,
        "P3.3" => suite_p3_3,
        "C3.1" => suite_c3_1,
        "P4.1" => suite_p4_1,
        "C4.1" => suite_c4_1,
        "P5.1" => suite_p5_1,
        "P5.2" => suite_p5_2,
        "P5.3" => suite_p5_3,
        "P5.4" => suite_p5_4,
        "P5.5" => suite_p5_5,
        "L3.1" => suite_l3_1,
        "L6.1" => suite_l6_1,
        "P6.1" => suite_p6_1,
        "P6.2" => suite_p6_2,
        "L6.2" => suite_l6_2,
        "P6.3" => suite_p6_3,
        "C6.1" => suite_c6_1,
        "EX2.1" => suite_ex2_1,
        "EX5.1" => suite_ex5_1,
        "EX6.1" => suite_ex6_1,
        _ => return None,
    })
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Runs `trials` trials of the suite `id`. Trials run in parallel; the report
/// depends only on the arguments.
pub fn check(id: &str, trials: usize, seed: u64, caps: &Caps) -> Result<PropReport> {
    let run = suite(id).ok_or_else(|| Error::UnknownProposition(id.to_owned()))?;
    let outcomes: Vec<Option<Failure>> = (0..trials)
        .into_par_iter()
        .map(|t| run(&mut trial_rng(seed, t), caps))
        .collect::<Result<_>>()?;
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    let first_counterexample = outcomes.into_iter().enumerate().find_map(|(trial, o)| {
        o.map(|f| Counterexample { trial, description: f.description, document: to_json(&f.instance) })
    });
    Ok(PropReport { proposition_id: id.to_owned(), trials, failures, first_counterexample, seed })
}
