//! Functions on a finite group, stored as their values `f(g)`.

use crate::exactla::{Field, Scalar};
use crate::group::{Element, FiniteGroup};

/// Values of a function on the group, indexed by element.
pub type FunctionVector = Vec<Scalar>;

/// The basis function `x^g`, equal to 1 at `g` and 0 elsewhere.
pub fn delta(n: usize, g: Element) -> FunctionVector {
    let mut f = vec![Scalar::zero(); n];
    f[g] = Scalar::one();
    f
}

pub fn constant(n: usize, c: Scalar) -> FunctionVector {
    vec![c; n]
}

/// `(ℛ_h f)(g) = f(gh)`, so that `ℛ_h x^g = x^{gh⁻¹}`.
pub fn right_translate(group: &FiniteGroup, h: Element, f: &[Scalar]) -> FunctionVector {
    (0..group.order()).map(|g| f[group.mul(g, h)].clone()).collect()
}

/// `(ℒ_h f)(g) = f(hg)`.
pub fn left_translate(group: &FiniteGroup, h: Element, f: &[Scalar]) -> FunctionVector {
    (0..group.order()).map(|g| f[group.mul(h, g)].clone()).collect()
}

pub fn pointwise_mul(f: &[Scalar], g: &[Scalar]) -> FunctionVector {
    f.iter().zip(g).map(|(a, b)| a.mul_ref(b)).collect()
}

pub fn add(f: &[Scalar], g: &[Scalar]) -> FunctionVector {
    f.iter().zip(g).map(|(a, b)| a.add_ref(b)).collect()
}

pub fn sub(f: &[Scalar], g: &[Scalar]) -> FunctionVector {
    f.iter().zip(g).map(|(a, b)| a.sub_ref(b)).collect()
}

pub fn scale(c: &Scalar, f: &[Scalar]) -> FunctionVector {
    f.iter().map(|a| a.mul_ref(c)).collect()
}

/// Complex conjugation of the values; `(x^g)* = x^g`.
pub fn conj(f: &[Scalar]) -> FunctionVector {
    f.iter().map(Field::conj).collect()
}

pub fn is_zero(f: &[Scalar]) -> bool {
    f.iter().all(Field::is_zero)
}

/// `Σ_g f(g)`.
pub fn sum(f: &[Scalar]) -> Scalar {
    f.iter().fold(Scalar::zero(), |acc, x| acc.add_ref(x))
}
