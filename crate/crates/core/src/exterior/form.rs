use crate::error::{Error, Result};
use crate::exactla::{Field, Rational, Scalar, SparseVec};
use crate::functions::{self, FunctionVector};
use crate::group::Element;

use super::tower::FormTower;

/// A function-valued `k`-form `Σ_I f_I Θ^I`, one coefficient function per
/// basis monomial of degree `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    pub k: usize,
    pub coeffs: Vec<FunctionVector>,
}

impl Form {
    pub fn zero(tower: &FormTower, k: usize) -> Result<Form> {
        let dim = tower.level(k)?.dim();
        Ok(Form { k, coeffs: vec![functions::constant(tower.n(), Scalar::zero()); dim] })
    }

    /// A 0-form.
    pub fn function(f: FunctionVector) -> Form {
        Form { k: 0, coeffs: vec![f] }
    }

    /// A constant-coefficient form from its expansion over the level-`k` basis.
    pub fn constant(tower: &FormTower, k: usize, w: &SparseVec<Rational>) -> Result<Form> {
        let mut out = Form::zero(tower, k)?;
        for (j, c) in w.iter() {
            out.coeffs[*j] = functions::constant(tower.n(), Scalar::real(c.clone()));
        }
        Ok(out)
    }

    /// `f θ^{t₁} ∧ ... ∧ θ^{t_k}` for an arbitrary tuple of generator positions.
    pub fn monomial(tower: &FormTower, f: &[Scalar], t: &[usize]) -> Result<Form> {
        let w = tower.wedge_expand(t)?;
        let mut out = Form::zero(tower, t.len())?;
        for (j, c) in w.iter() {
            out.coeffs[*j] = functions::scale(&Scalar::real(c.clone()), f);
        }
        Ok(out)
    }

    /// `x^g Θ^I`.
    pub fn basis(tower: &FormTower, k: usize, index: usize, g: Element) -> Result<Form> {
        let mut out = Form::zero(tower, k)?;
        out.coeffs[index] = functions::delta(tower.n(), g);
        Ok(out)
    }

    /// Constant monomial given by generator labels, e.g. `["a", "b"]` for `θ^a ∧ θ^b`.
    pub fn from_labels(tower: &FormTower, labels: &[&str]) -> Result<Form> {
        let c = tower.calculus();
        let t = labels.iter().map(|l| c.gen_by_label(l)).collect::<Result<Vec<_>>>()?;
        Form::monomial(tower, &functions::constant(tower.n(), Scalar::one()), &t)
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|f| functions::is_zero(f))
    }

    fn check_same(&self, other: &Form) -> Result<()> {
        if self.k != other.k || self.coeffs.len() != other.coeffs.len() {
            return Err(Error::DegreeMismatch(self.k, other.k));
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| functions::add(a, b)).collect();
        Ok(Form { k: self.k, coeffs })
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| functions::sub(a, b)).collect();
        Ok(Form { k: self.k, coeffs })
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        Form { k: self.k, coeffs: self.coeffs.iter().map(|f| functions::scale(c, f)).collect() }
    }

    /// `f ρ`.
    pub fn left_mul_function(&self, f: &[Scalar]) -> Form {
        let coeffs = self.coeffs.iter().map(|a| functions::pointwise_mul(f, a)).collect();
        Form { k: self.k, coeffs }
    }

    /// `ρ f`, moving `f` to the left through each monomial: `Θ^I f = (ℛ_{π_I} f) Θ^I`
    /// where `π_I` is the product of the monomial's labels.
    pub fn right_mul_function(&self, tower: &FormTower, f: &[Scalar]) -> Result<Form> {
        let lv = tower.level(self.k)?;
        let g = tower.calculus().group();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&lv.basis)
            .map(|(a, t)| {
                let moved = functions::right_translate(g, tower.calculus().product(t), f);
                functions::pointwise_mul(a, &moved)
            })
            .collect();
        Ok(Form { k: self.k, coeffs })
    }

    /// Coefficients flattened as `index·n + g`.
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.coeffs.iter().flatten().cloned().collect()
    }

    pub fn from_vector(tower: &FormTower, k: usize, v: &[Scalar]) -> Result<Form> {
        let n = tower.n();
        let dim = tower.level(k)?.dim();
        if v.len() != n * dim {
            return Err(Error::DimensionMismatch(format!("{} coefficients for {} slots", v.len(), n * dim)));
        }
        Ok(Form { k, coeffs: v.chunks(n).map(<[Scalar]>::to_vec).collect() })
    }

    pub fn to_sparse(&self) -> SparseVec<Scalar> {
        SparseVec::from_dense(&self.to_vector())
    }

    /// `ρ ∧ σ = Σ f_I (ℛ_{π_I} h_J) Θ^I ∧ Θ^J`.
    pub fn wedge(&self, tower: &FormTower, other: &Form) -> Result<Form> {
        let k = self.k + other.k;
        let mut out = Form::zero(tower, k)?;
        let g = tower.calculus().group();
        let (la, lb) = (tower.level(self.k)?, tower.level(other.k)?);
        for (ti, f) in la.basis.iter().zip(&self.coeffs) {
            if functions::is_zero(f) {
                continue;
            }
            let pi = tower.calculus().product(ti);
            for (tj, h) in lb.basis.iter().zip(&other.coeffs) {
                if functions::is_zero(h) {
                    continue;
                }
                let coeff = functions::pointwise_mul(f, &functions::right_translate(g, pi, h));
                let mut t = ti.clone();
                t.extend_from_slice(tj);
                for (l, c) in tower.wedge_expand(&t)?.iter() {
                    let term = functions::scale(&Scalar::real(c.clone()), &coeff);
                    out.coeffs[*l] = functions::add(&out.coeffs[*l], &term);
                }
            }
        }
        Ok(out)
    }

    /// `ℒ_h`: acts on the coefficients only, `(ℒ_h f)(g) = f(hg)`.
    pub fn left_action(&self, tower: &FormTower, h: Element) -> Form {
        let g = tower.calculus().group();
        let coeffs = self.coeffs.iter().map(|f| functions::left_translate(g, h, f)).collect();
        Form { k: self.k, coeffs }
    }

    /// `ℛ_h`: translates coefficients and sends `θ^g` to `θ^{ad(h)g}`.
    pub fn right_action(&self, tower: &FormTower, h: Element) -> Result<Form> {
        let c = tower.calculus();
        let lv = tower.level(self.k)?;
        let mut out = Form::zero(tower, self.k)?;
        for (t, f) in lv.basis.iter().zip(&self.coeffs) {
            if functions::is_zero(f) {
                continue;
            }
            let rf = functions::right_translate(c.group(), h, f);
            let moved: Vec<usize> = t.iter().map(|&i| c.ad_pos(h, i)).collect();
            for (l, x) in tower.wedge_expand(&moved)?.iter() {
                let term = functions::scale(&Scalar::real(x.clone()), &rf);
                out.coeffs[*l] = functions::add(&out.coeffs[*l], &term);
            }
        }
        Ok(out)
    }

    /// The conjugation `(f Θ)* = Θ* f*`, with the function moved back to the left.
    pub fn star(&self, tower: &FormTower) -> Result<Form> {
        let lv = tower.level(self.k)?;
        let g = tower.calculus().group();
        let mut out = Form::zero(tower, self.k)?;
        for (t, f) in lv.basis.iter().zip(&self.coeffs) {
            if functions::is_zero(f) {
                continue;
            }
            let fc = functions::conj(f);
            for (j, x) in tower.star_monomial(t)?.iter() {
                let moved = functions::right_translate(g, tower.calculus().product(&lv.basis[*j]), &fc);
                let term = functions::scale(&Scalar::real(x.clone()), &moved);
                out.coeffs[*j] = functions::add(&out.coeffs[*j], &term);
            }
        }
        Ok(out)
    }
}
