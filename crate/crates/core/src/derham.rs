//! The exterior derivative on function-valued forms, de Rham cohomology and
//! Hodge theory on the resulting finite complex.

use crate::calculus::tangent;
use crate::error::{Error, Result};
use crate::exactla::{rat, Echelon, ExactMatrix, Field, Insert, Rational, Scalar, SparseVec};
use crate::exterior::{Form, FormTower};
use crate::functions::{self, FunctionVector};
use crate::metric_hodge::{self, HodgeMap};

fn next_level_built(tower: &FormTower, k: usize) -> Result<()> {
    let lv = tower.level(k)?;
    if !lv.has_next() || k + 1 >= tower.levels().len() {
        return Err(Error::TowerIncomplete(format!("degree {} has not been built", k + 1)));
    }
    Ok(())
}

/// `η = Σ_{g∈G'} θ^g`, the biinvariant one-form whose graded commutator is `d`.
pub fn eta(tower: &FormTower) -> Result<Form> {
    let mut out = Form::zero(tower, 1)?;
    for f in out.coeffs.iter_mut() {
        *f = functions::constant(tower.n(), Scalar::one());
    }
    Ok(out)
}

/// `df = Σ_i (t_i f) θ^i`.
pub fn d_function(tower: &FormTower, f: &[Scalar]) -> Result<Form> {
    let c = tower.calculus();
    let lv = tower.level(1)?;
    let mut out = Form::zero(tower, 1)?;
    for (i, &g) in c.gens().iter().enumerate() {
        let j = lv.index_of(&[i]).expect("each θ^g is a basis one-form");
        out.coeffs[j] = tangent(c.group(), g, f);
    }
    Ok(out)
}

/// `dρ = η ∧ ρ − (−1)^k ρ ∧ η`, using the stored left and right wedge constants.
pub fn d(tower: &FormTower, rho: &Form) -> Result<Form> {
    let k = rho.k;
    next_level_built(tower, k)?;
    let c = tower.calculus();
    let lv = tower.level(k)?;
    let mut out = Form::zero(tower, k + 1)?;
    let right_sign = if k % 2 == 0 { Scalar::int(-1) } else { Scalar::one() };
    for (idx, f) in rho.coeffs.iter().enumerate() {
        if functions::is_zero(f) {
            continue;
        }
        for (i, &g) in c.gens().iter().enumerate() {
            // θ^i f = (ℛ_i f) θ^i
            let moved = functions::right_translate(c.group(), g, f);
            for (l, x) in lv.t_left[i][idx].iter() {
                accumulate(&mut out.coeffs[*l], &Scalar::real(x.clone()), &moved);
            }
            for (l, x) in lv.t_right[idx][i].iter() {
                accumulate(&mut out.coeffs[*l], &Scalar::real(x.clone()).mul_ref(&right_sign), f);
            }
        }
    }
    Ok(out)
}

fn accumulate(target: &mut FunctionVector, c: &Scalar, f: &[Scalar]) {
    for (t, x) in target.iter_mut().zip(f) {
        *t = t.add_ref(&c.mul_ref(x));
    }
}

/// `dθ^g = −Σ_{h,h'∈G'} C^g_{h,h'} θ^h ∧ θ^{h'}` over the two-form basis.
pub fn cartan_maurer(tower: &FormTower, i: usize) -> Result<SparseVec<Rational>> {
    let c = tower.calculus();
    let m = c.m();
    let g = c.gen(i);
    let mut acc = SparseVec::new();
    for h in 0..m {
        for h2 in 0..m {
            let coef = c.fusion_constant(c.gen(h), c.gen(h2), g);
            if coef != 0 {
                acc = acc.axpy(&rat(-coef), &tower.wedge_expand(&[h, h2])?);
            }
        }
    }
    Ok(acc)
}

/// `d` by the Leibniz rule, `df = Σ (t_g f) θ^g` and the Cartan–Maurer equations.
/// Uses only left multiplication, independently of [`d`].
pub fn d_leibniz(tower: &FormTower, rho: &Form) -> Result<Form> {
    let k = rho.k;
    next_level_built(tower, k)?;
    let c = tower.calculus();
    let m = c.m();
    let lv = tower.level(k)?;
    let mut out = Form::zero(tower, k + 1)?;
    let cm: Vec<Vec<(usize, usize, i64)>> = (0..m)
        .map(|i| {
            let g = c.gen(i);
            let mut terms = Vec::new();
            for h in 0..m {
                for h2 in 0..m {
                    let coef = c.fusion_constant(c.gen(h), c.gen(h2), g);
                    if coef != 0 {
                        terms.push((h, h2, -coef));
                    }
                }
            }
            terms
        })
        .collect();
    for (t, f) in lv.basis.iter().zip(&rho.coeffs) {
        if functions::is_zero(f) {
            continue;
        }
        // df ∧ Θ^I
        for (i, &g) in c.gens().iter().enumerate() {
            let tf = tangent(c.group(), g, f);
            let mut u = vec![i];
            u.extend_from_slice(t);
            for (l, x) in tower.wedge_expand(&u)?.iter() {
                accumulate(&mut out.coeffs[*l], &Scalar::real(x.clone()), &tf);
            }
        }
        // f dΘ^I, one Cartan–Maurer substitution per slot
        for j in 0..k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            for &(h, h2, coef) in &cm[t[j]] {
                let mut u = t[..j].to_vec();
                u.push(h);
                u.push(h2);
                u.extend_from_slice(&t[j + 1..]);
                let s = Scalar::int(sign * coef);
                for (l, x) in tower.wedge_expand(&u)?.iter() {
                    accumulate(&mut out.coeffs[*l], &s.mul_ref(&Scalar::real(x.clone())), f);
                }
            }
        }
    }
    Ok(out)
}

/// The matrix of `d` from degree `k` to `k + 1`, column `I·n + g` holding
/// `d(x^g Θ^I)`:
/// `M^{Ig}_{Jg'} = Σ_i T^{iI}_J (δ_{g', g g_i⁻¹} − δ_{g',g}) + C^I_J δ_{g',g}`.
pub fn d_matrix(tower: &FormTower, k: usize) -> Result<ExactMatrix> {
    next_level_built(tower, k)?;
    let c = tower.calculus();
    let g = c.group();
    let n = tower.n();
    let lv = tower.level(k)?;
    let dk1 = tower.level(k + 1)?.dim();
    let mut trip = Vec::new();
    for idx in 0..lv.dim() {
        for x in 0..n {
            let col = idx * n + x;
            let mut entries: std::collections::HashMap<usize, Rational> = std::collections::HashMap::new();
            for (i, &gi) in c.gens().iter().enumerate() {
                let moved = g.mul(x, g.inv(gi));
                for (l, t) in lv.t_left[i][idx].iter() {
                    *entries.entry(l * n + moved).or_insert_with(|| rat(0)) += t;
                    *entries.entry(l * n + x).or_insert_with(|| rat(0)) -= t;
                }
            }
            for (l, t) in lv.c[idx].iter() {
                *entries.entry(l * n + x).or_insert_with(|| rat(0)) += t;
            }
            trip.extend(entries.into_iter().filter(|(_, v)| *v != rat(0)).map(|(r, v)| (r, col, Scalar::real(v))));
        }
    }
    Ok(ExactMatrix::from_triplets(dk1 * n, lv.dim() * n, trip))
}

/// Integral of a top form: `∫ f vol = Σ_g f(g)` for the real volume form.
pub fn integrate(tower: &FormTower, rho: &Form) -> Result<Scalar> {
    let p = tower.p()?;
    if rho.k != p {
        return Err(Error::WrongDegree { expected: p, got: rho.k });
    }
    // the coefficient is taken against the top monomial, which is vol / scale
    Ok(functions::sum(&rho.coeffs[0]).div_ref(tower.vol_scale()).expect("nonzero scale"))
}

/// The cochain complex of function-valued forms.
#[derive(Clone, Debug)]
pub struct DeRhamComplex {
    pub n: usize,
    /// Form dimensions per built degree.
    pub dims: Vec<usize>,
    /// `d[k]` maps degree `k` to degree `k + 1`.
    pub d: Vec<ExactMatrix>,
    /// True when the tower reached a vanishing level.
    pub complete: bool,
}

impl DeRhamComplex {
    pub fn new(tower: &FormTower) -> Result<Self> {
        let levels = tower.levels();
        let built = levels[..levels.len() - 1].iter().take_while(|l| l.has_next()).count();
        let d = (0..built).map(|k| d_matrix(tower, k)).collect::<Result<Vec<_>>>()?;
        let dims = levels.iter().map(|l| l.dim()).collect();
        Ok(DeRhamComplex { n: tower.n(), dims, d, complete: tower.is_complete() })
    }

    /// Number of degrees whose outgoing `d` is known.
    pub fn degrees(&self) -> usize {
        self.d.len()
    }

    /// `d_{k+1} d_k = 0` at every built degree.
    pub fn d_squared_vanishes(&self) -> Result<bool> {
        for w in self.d.windows(2) {
            if !w[1].mul(&w[0])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.d.iter().map(ExactMatrix::rank).collect()
    }

    /// `b_k = dim ker d_k − rank d_{k−1}` for each degree with known `d_k`.
    pub fn betti(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.d.len())
            .map(|k| {
                let prev = if k == 0 { 0 } else { ranks[k - 1] };
                self.n * self.dims[k] - ranks[k] - prev
            })
            .collect()
    }

    fn image_echelon(&self, k: usize) -> Echelon<Scalar> {
        let mut e = Echelon::new();
        if k > 0 {
            for col in self.d[k - 1].columns() {
                e.insert(&col);
            }
        }
        e
    }

    /// Closed forms spanning `H^k`, reduced against the image of `d` and with
    /// their first nonzero coefficient scaled to 1.
    pub fn representatives(&self, k: usize) -> Vec<SparseVec<Scalar>> {
        let image = self.image_echelon(k);
        let mut all = image.clone();
        let mut reps = Vec::new();
        for v in self.d[k].kernel_basis() {
            if let Insert::Independent(_) = all.insert(&v) {
                let r = image.reduce(&v);
                let lead = r.first().expect("not exact").1.inv().expect("nonzero");
                reps.push(r.scale(&lead));
            }
        }
        reps
    }

    /// Checks candidate forms of degree `k` against the cohomology.
    pub fn span_check(&self, k: usize, forms: &[Form]) -> Result<SpanCheck> {
        if k >= self.d.len() {
            return Err(Error::TowerIncomplete(format!("no derivative out of degree {k}")));
        }
        let image = self.image_echelon(k);
        let mut all = image.clone();
        let mut closed = Vec::new();
        let mut exact = Vec::new();
        let mut independent = 0;
        for f in forms {
            if f.k != k {
                return Err(Error::WrongDegree { expected: k, got: f.k });
            }
            let v = f.to_sparse();
            closed.push(self.d[k].mul_sparse(&v).is_zero());
            exact.push(image.contains(&v));
            if let Insert::Independent(_) = all.insert(&v) {
                independent += 1;
            }
        }
        let betti = self.betti()[k];
        Ok(SpanCheck { k, closed, exact, classes: independent, betti })
    }
}

/// Closedness, exactness and span of a list of candidate cohomology generators.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanCheck {
    pub k: usize,
    pub closed: Vec<bool>,
    pub exact: Vec<bool>,
    /// Dimension of the span of their classes.
    pub classes: usize,
    pub betti: usize,
}

impl SpanCheck {
    /// All closed, none exact, and their classes form a basis of `H^k`.
    pub fn ok(&self) -> bool {
        self.closed.iter().all(|&c| c)
            && self.exact.iter().all(|&e| !e)
            && self.classes == self.betti
            && self.closed.len() == self.betti
    }
}

/// `∫ dρ = 0` for every `(p−1)`-form, and `dΘ = 0` for constant ones.
pub fn integration_by_parts_check(tower: &FormTower, complex: &DeRhamComplex) -> Result<bool> {
    let p = tower.p()?;
    if p == 0 {
        return Ok(true);
    }
    let closed = tower.level(p - 1)?.c.iter().all(SparseVec::is_zero);
    // the integral of d(x^g Θ^I) is the column sum of d_{p−1}
    let m = &complex.d[p - 1];
    let sums = (0..m.cols()).all(|c| functions::sum(&m.column(c).to_dense(m.rows())).is_zero());
    Ok(closed && sums)
}

/// Gram matrix `⟨⟨x^g Θ^I, x^{g'} Θ^J⟩⟩ = δ_{g g'} <(Θ^I)*, Θ^J>`, checked positive definite.
pub fn gram(tower: &FormTower, k: usize) -> Result<ExactMatrix> {
    let kmat = metric_hodge::star_pairing_matrix(tower, k)?;
    if let Err(minor) = kmat.positive_definite() {
        return Err(Error::GramNotPositiveDefinite { degree: k, minor });
    }
    Ok(kmat.kron_identity(tower.n()))
}

/// `⟨⟨a, b⟩⟩ = a† G b`.
pub fn inner(gram: &ExactMatrix, a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
    let gb = gram.mul_vec(b)?;
    Ok(a.iter().zip(&gb).fold(Scalar::zero(), |acc, (x, y)| acc.add_ref(&x.conj().mul_ref(y))))
}

/// Codifferential, Laplacian and harmonic forms of a complete star-closed tower.
#[derive(Clone, Debug)]
pub struct HodgeTheory {
    pub gram: Vec<ExactMatrix>,
    /// `delta[k]` maps degree `k` to `k − 1`; `delta[0]` is a `0 × n` zero map.
    pub delta: Vec<ExactMatrix>,
    pub laplacian: Vec<ExactMatrix>,
    /// Kernel of each Laplacian.
    pub harmonic: Vec<Vec<SparseVec<Scalar>>>,
}

impl HodgeTheory {
    pub fn new(tower: &FormTower, complex: &DeRhamComplex) -> Result<Self> {
        let p = tower.p()?;
        let n = tower.n();
        let mut gram = Vec::new();
        let mut gram_inv = Vec::new();
        for k in 0..=p {
            let kmat = metric_hodge::star_pairing_matrix(tower, k)?;
            if let Err(minor) = kmat.positive_definite() {
                return Err(Error::GramNotPositiveDefinite { degree: k, minor });
            }
            gram_inv.push(kmat.inverse()?.kron_identity(n));
            gram.push(kmat.kron_identity(n));
        }
        let mut delta = vec![ExactMatrix::zeros(0, n * complex.dims[0])];
        for k in 1..=p {
            // δ_k = G_{k−1}⁻¹ d_{k−1}† G_k
            let dk = gram_inv[k - 1].mul(&complex.d[k - 1].conjugate_transpose())?.mul(&gram[k])?;
            delta.push(dk);
        }
        let mut laplacian = Vec::new();
        for k in 0..=p {
            let size = n * complex.dims[k];
            let mut lap = ExactMatrix::zeros(size, size);
            if k > 0 {
                lap = lap.add(&complex.d[k - 1].mul(&delta[k])?)?;
            }
            if k < p {
                lap = lap.add(&delta[k + 1].mul(&complex.d[k])?)?;
            }
            laplacian.push(lap);
        }
        let harmonic = laplacian.iter().map(ExactMatrix::kernel_basis).collect();
        Ok(HodgeTheory { gram, delta, laplacian, harmonic })
    }

    pub fn harmonic_basis(&self, k: usize) -> &[SparseVec<Scalar>] {
        &self.harmonic[k]
    }

    pub fn harmonic_dims(&self) -> Vec<usize> {
        self.harmonic.iter().map(Vec::len).collect()
    }

    /// `⟨⟨dα, β⟩⟩ − ⟨⟨α, δβ⟩⟩` for `α` of degree `k`, `β` of degree `k + 1`.
    pub fn adjoint_defect(&self, complex: &DeRhamComplex, k: usize, alpha: &[Scalar], beta: &[Scalar]) -> Result<Scalar> {
        let da = complex.d[k].mul_vec(alpha)?;
        let db = self.delta[k + 1].mul_vec(beta)?;
        Ok(inner(&self.gram[k + 1], &da, beta)?.sub_ref(&inner(&self.gram[k], alpha, &db)?))
    }

    /// Orthogonal splitting of degree `k` into exact, coexact and harmonic parts.
    pub fn decomposition(&self, complex: &DeRhamComplex, k: usize) -> Result<Decomposition> {
        let p = self.laplacian.len() - 1;
        let total = self.laplacian[k].cols();
        let exact = (k > 0).then(|| &complex.d[k - 1]);
        let coexact = (k < p).then(|| &self.delta[k + 1]);
        let harm = ExactMatrix::from_columns(total, self.harmonic_basis(k));
        let g = &self.gram[k];
        let orth = |a: &ExactMatrix, b: &ExactMatrix| -> Result<bool> {
            Ok(a.conjugate_transpose().mul(g)?.mul(b)?.is_zero())
        };
        let mut orthogonal = true;
        if let Some(a) = exact {
            orthogonal &= orth(a, &harm)?;
            if let Some(b) = coexact {
                orthogonal &= orth(a, b)?;
            }
        }
        if let Some(b) = coexact {
            orthogonal &= orth(b, &harm)?;
        }
        Ok(Decomposition {
            k,
            total,
            exact: exact.map_or(0, ExactMatrix::rank),
            coexact: coexact.map_or(0, ExactMatrix::rank),
            harmonic: harm.cols(),
            orthogonal,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub k: usize,
    pub total: usize,
    pub exact: usize,
    pub coexact: usize,
    pub harmonic: usize,
    pub orthogonal: bool,
}

impl Decomposition {
    pub fn ok(&self) -> bool {
        self.orthogonal && self.exact + self.coexact + self.harmonic == self.total
    }
}

/// Compares `d ∘ *` with `* ∘ δ` on `k`-forms for `k = 1..=p`.
/// Entry `k − 1` is `Some(s)` when `d*β = s *δβ` for all `β`, with `s = ±1`.
pub fn lemma1_signs(
    tower: &FormTower,
    complex: &DeRhamComplex,
    theory: &HodgeTheory,
    hodge: &HodgeMap,
) -> Result<Vec<Option<i8>>> {
    let p = tower.p()?;
    let n = tower.n();
    let mut out = Vec::new();
    for k in 1..=p {
        let lhs = complex.d[p - k].mul(&hodge.function_valued(k, n))?;
        let rhs = hodge.function_valued(k - 1, n).mul(&theory.delta[k])?;
        out.push(if lhs == rhs {
            Some(1)
        } else if lhs == rhs.scale(&Scalar::int(-1)) {
            Some(-1)
        } else {
            None
        });
    }
    Ok(out)
}

/// `d*β = (−1)^k *δβ` at every degree.
pub fn lemma1_check(tower: &FormTower, complex: &DeRhamComplex, theory: &HodgeTheory, hodge: &HodgeMap) -> Result<bool> {
    let signs = lemma1_signs(tower, complex, theory, hodge)?;
    Ok(signs.iter().enumerate().all(|(j, s)| {
        let k = j + 1;
        *s == Some(if k % 2 == 0 { 1 } else { -1 })
    }))
}

/// `b_k = b_{p−k}`.
pub fn poincare_check(betti: &[usize]) -> bool {
    betti.iter().eq(betti.iter().rev())
}
