//! Metric pairing on tensors and forms, and the Hodge dual.

use std::collections::HashMap;

use crate::calculus::Calculus;
use crate::error::{Error, Result};
use crate::exactla::{rat, ExactMatrix, Field, Rational, Scalar, SparseVec};
use crate::exterior::{decode, encode, Form, FormTower, TensorVector};

/// `g^{rs} = −δ^r_{s⁻¹}` and its inverse, which is the same matrix.
#[derive(Clone, Debug)]
pub struct MetricPairing {
    pub g_upper: ExactMatrix,
    pub g_lower: ExactMatrix,
}

impl MetricPairing {
    pub fn new(c: &Calculus) -> Result<Self> {
        c.require_star_closed()?;
        let m = c.m();
        let g_upper = ExactMatrix::from_triplets(
            m,
            m,
            (0..m).map(|r| (r, c.inv_pos(r).expect("star closed"), Scalar::int(-1))),
        );
        let g_lower = g_upper.inverse()?;
        Ok(MetricPairing { g_upper, g_lower })
    }

    /// `g^{rs}` as an integer.
    pub fn upper(&self, r: usize, s: usize) -> i64 {
        self.g_upper.get(r, s).as_integer().expect("integral metric")
    }

    pub fn lower(&self, r: usize, s: usize) -> i64 {
        self.g_lower.get(r, s).as_integer().expect("integral metric")
    }
}

/// The only tuple `J` with `<θ^I, θ^J> ≠ 0`: `j_r = P⁻¹ i_r⁻¹ P` with `P = i_{r+1}⋯i_k`.
/// The pairing is then `(−1)^k`.
pub fn dual_tuple(c: &Calculus, t: &[usize]) -> Vec<usize> {
    let g = c.group();
    let mut out = vec![0; t.len()];
    let mut p = g.identity();
    for r in (0..t.len()).rev() {
        let ir = c.inv_pos(t[r]).expect("star closed");
        out[r] = c.ad_pos(g.inv(p), ir);
        p = g.mul(c.gen(t[r]), p);
    }
    out
}

/// `<θ^{i₁}⊗...⊗θ^{i_k}, θ^{j₁}⊗...⊗θ^{j_k}>`, contracted slot by slot from the right.
pub fn pair_basis(c: &Calculus, metric: &MetricPairing, i: &[usize], j: &[usize]) -> i64 {
    assert_eq!(i.len(), j.len());
    let g = c.group();
    let mut value = 1;
    let mut p = g.identity();
    for r in (0..i.len()).rev() {
        value *= metric.upper(i[r], c.ad_pos(p, j[r]));
        if value == 0 {
            return 0;
        }
        p = g.mul(c.gen(i[r]), p);
    }
    value
}

/// Pairing of tensors given as coefficient vectors over base-`m` codes.
pub fn pair_codes(c: &Calculus, k: usize, a: &SparseVec<Rational>, b: &SparseVec<Rational>) -> Rational {
    let m = c.m();
    let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
    let mut acc = rat(0);
    for (code, x) in a.iter() {
        let dual = encode(&dual_tuple(c, &decode(*code, k, m)), m);
        if let Some(y) = b.get(dual) {
            acc += x * y;
        }
    }
    acc * sign
}

pub fn pair_tensors(c: &Calculus, a: &TensorVector, b: &TensorVector) -> Result<Rational> {
    c.require_star_closed()?;
    if a.k != b.k {
        return Err(Error::DegreeMismatch(a.k, b.k));
    }
    Ok(pair_codes(c, a.k, &a.coeffs, &b.coeffs))
}

/// `(θ^{i₁}⊗...⊗θ^{i_k})* = (−1)^k θ^{i_k⁻¹}⊗...⊗θ^{i₁⁻¹}` extended to real tensors.
pub fn star_tensor(c: &Calculus, a: &TensorVector) -> Result<TensorVector> {
    c.require_star_closed()?;
    let (k, m) = (a.k, a.m);
    let neg = k % 2 == 1;
    let coeffs = SparseVec::from_pairs(a.coeffs.iter().map(|(code, x)| {
        let t: Vec<usize> = decode(*code, k, m).iter().rev().map(|&i| c.inv_pos(i).unwrap()).collect();
        (encode(&t, m), if neg { -x.clone() } else { x.clone() })
    }));
    Ok(TensorVector { k, m, coeffs })
}

/// Pairing of constant forms of degree `k`, through their tensor representatives.
pub fn pair_forms(tower: &FormTower, k: usize, a: &SparseVec<Rational>, b: &SparseVec<Rational>) -> Result<Rational> {
    tower.calculus().require_star_closed()?;
    let ra = tower.representative(k, a)?;
    let rb = tower.representative(k, b)?;
    Ok(pair_codes(tower.calculus(), k, &ra, &rb))
}

/// `P[I][J] = <Θ^I, Θ^J>` on the level-`k` basis.
pub fn pairing_matrix(tower: &FormTower, k: usize) -> Result<ExactMatrix> {
    let c = tower.calculus();
    c.require_star_closed()?;
    let lv = tower.level(k)?;
    let d = lv.dim();
    let m = c.m();
    // index the representatives of the right factor by code for the dual lookup
    let mut by_code: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for (j, r) in lv.reps.iter().enumerate() {
        for (code, y) in r.iter() {
            by_code.entry(*code).or_default().push((j, y.clone()));
        }
    }
    let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
    let mut trip = Vec::new();
    for (i, r) in lv.reps.iter().enumerate() {
        let mut row: HashMap<usize, Rational> = HashMap::new();
        for (code, x) in r.iter() {
            let dual = encode(&dual_tuple(c, &decode(*code, k, m)), m);
            for (j, y) in by_code.get(&dual).into_iter().flatten() {
                *row.entry(*j).or_insert_with(|| rat(0)) += x * y;
            }
        }
        trip.extend(row.into_iter().filter(|(_, v)| *v != rat(0)).map(|(j, v)| (i, j, Scalar::real(v * &sign))));
    }
    Ok(ExactMatrix::from_triplets(d, d, trip))
}

/// `K[I][J] = <(Θ^I)*, Θ^J>`, the metric part of the Gram matrix.
pub fn star_pairing_matrix(tower: &FormTower, k: usize) -> Result<ExactMatrix> {
    let p = pairing_matrix(tower, k)?;
    let rows: Vec<SparseVec<Scalar>> = tower
        .star_matrix(k)?
        .iter()
        .map(|s| s.map(|x| Scalar::real(x.clone())))
        .collect();
    ExactMatrix::from_rows(p.rows(), rows).mul(&p)
}

/// `N(ρ) = <ρ*, ρ>` for a constant form.
pub fn norm(tower: &FormTower, k: usize, w: &SparseVec<Rational>) -> Result<Rational> {
    let star = linear_combination_rows(w, &tower.star_matrix(k)?);
    pair_forms(tower, k, &star, w)
}

fn linear_combination_rows(w: &SparseVec<Rational>, rows: &[SparseVec<Rational>]) -> SparseVec<Rational> {
    crate::exactla::linear_combination(w.iter().map(|(j, c)| (c, &rows[*j])))
}

/// The Hodge dual on every degree of a complete tower.
#[derive(Clone, Debug)]
pub struct HodgeMap {
    pub p: usize,
    /// `1` or `i`; the real volume is `scale` times the top basis monomial.
    pub scale: Scalar,
    /// `maps[k]` is `d_k × d_{p−k}`; row `J` holds `*Θ^J` over the level-`(p−k)` basis.
    pub maps: Vec<ExactMatrix>,
}

impl HodgeMap {
    /// `* ∘ *` on degree `k`, as a `d_k × d_k` matrix acting on rows.
    pub fn double(&self, k: usize) -> Result<ExactMatrix> {
        self.maps[k].mul(&self.maps[self.p - k])
    }

    /// `*` on function-valued forms: `*(f Θ^J) = f *Θ^J`, with the usual
    /// `index·n + g` layout, as a matrix acting on column vectors.
    pub fn function_valued(&self, k: usize, n: usize) -> ExactMatrix {
        self.maps[k].transpose().kron_identity(n)
    }

    /// `*ρ` for a function-valued form `ρ`.
    pub fn apply(&self, tower: &FormTower, rho: &Form) -> Result<Form> {
        let v = self.function_valued(rho.k, tower.n()).mul_vec(&rho.to_vector())?;
        Form::from_vector(tower, self.p - rho.k, &v)
    }
}

/// Solves `Θ^I ∧ *Θ^J = <Θ^I, Θ^J> vol` for every degree.
pub fn hodge(tower: &FormTower) -> Result<HodgeMap> {
    let c = tower.calculus();
    c.require_star_closed()?;
    let p = tower.p()?;
    if !tower.volume_properties()?.central_by_product {
        return Err(Error::NonCentralVolume);
    }
    let dims = tower.form_dims();
    for k in 0..=p {
        if dims[k] != dims[p - k] {
            return Err(Error::DimensionAsymmetry { k, dk: dims[k], pk: p - k, dpk: dims[p - k] });
        }
    }
    let s = tower.vol_scale().clone();
    let mut maps = Vec::with_capacity(p + 1);
    for k in 0..=p {
        let w = wedge_pairing(tower, k)?;
        let rhs = pairing_matrix(tower, k)?.scale(&s);
        let winv = w.inverse().map_err(|_| Error::SingularHodgeSystem(k))?;
        // W Hᵀ = s P
        maps.push(winv.mul(&rhs)?.transpose());
    }
    Ok(HodgeMap { p, scale: s, maps })
}

/// `W[I][L]`: coefficient of the top basis monomial in `Θ^I ∧ Θ^L`, for `I`
/// of degree `k` and `L` of degree `p − k`.
pub fn wedge_pairing(tower: &FormTower, k: usize) -> Result<ExactMatrix> {
    let p = tower.p()?;
    let a = tower.level(k)?;
    let b = tower.level(p - k)?;
    let mut trip = Vec::new();
    for (i, ti) in a.basis.iter().enumerate() {
        for (l, tl) in b.basis.iter().enumerate() {
            let mut t = ti.clone();
            t.extend_from_slice(tl);
            let e = tower.epsilon(&t)?;
            if e != rat(0) {
                trip.push((i, l, Scalar::real(e)));
            }
        }
    }
    Ok(ExactMatrix::from_triplets(a.dim(), b.dim(), trip))
}

/// Outcome of comparing the solved Hodge map with the contracted ε tensor at one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonFit {
    pub k: usize,
    /// Whether `* = const · (ε contraction)` holds on the whole degree.
    pub consistent: bool,
    pub constant: Option<Scalar>,
    pub constant_squared: Option<Scalar>,
}

/// For each degree, the form `Σ_J ε_{J}^{I} θ^{j_p} ∧ ... ∧ θ^{j_{k+1}}`
/// with lower indices through `g_{ab}`, compared with the solved Hodge dual.
pub fn check_conjecture1(tower: &FormTower, hodge: &HodgeMap) -> Result<Vec<EpsilonFit>> {
    let c = tower.calculus();
    let p = hodge.p;
    let dims = tower.form_dims();
    // contraction[k][I] accumulates over the level-(p−k) basis
    let mut contraction: Vec<Vec<HashMap<usize, Scalar>>> = (0..=p).map(|k| vec![HashMap::new(); dims[k]]).collect();
    let mut tuples = Vec::new();
    tower.for_each_epsilon(|t, e| tuples.push((t.to_vec(), e.clone())))?;
    for (t, e) in tuples {
        let e = Scalar::real(e).div_ref(&hodge.scale).expect("nonzero scale");
        for k in 0..=p {
            let Some(i) = tower.level(k)?.index_of(&t[..k]) else { continue };
            // lowering each index with g_{ab} = −δ_{a,b⁻¹}
            let sign = if (p - k) % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
            let j: Vec<usize> = t[k..].iter().rev().map(|&x| c.inv_pos(x).unwrap()).collect();
            let coef = e.mul_ref(&sign);
            for (l, x) in tower.wedge_expand(&j)?.iter() {
                let v = coef.mul_ref(&Scalar::real(x.clone()));
                let slot = contraction[k][i].entry(*l).or_insert_with(Scalar::zero);
                *slot = slot.add_ref(&v);
            }
        }
    }
    let mut out = Vec::new();
    for k in 0..=p {
        let h = &hodge.maps[k];
        let mut constant: Option<Scalar> = None;
        let mut consistent = true;
        'rows: for (i, row) in contraction[k].iter().enumerate() {
            for l in 0..dims[p - k] {
                let e = row.get(&l).cloned().unwrap_or_else(Scalar::zero);
                let hv = h.get(i, l);
                match (&constant, e.is_zero()) {
                    (_, true) if !hv.is_zero() => {
                        consistent = false;
                        break 'rows;
                    }
                    (_, true) => {}
                    (None, false) => constant = Some(hv.div_ref(&e).unwrap()),
                    (Some(cst), false) => {
                        if cst.mul_ref(&e) != hv {
                            consistent = false;
                            break 'rows;
                        }
                    }
                }
            }
        }
        let constant = if consistent { constant.filter(|x| !x.is_zero()) } else { None };
        let consistent = consistent && constant.is_some();
        let constant_squared = constant.as_ref().map(|x| x.mul_ref(x));
        out.push(EpsilonFit { k, consistent, constant, constant_squared });
    }
    Ok(out)
}

/// `**` per degree, and whether a single rescaling of `*` makes it `±id`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutionReport {
    /// `Some(c)` when `**` is `c · id` on that degree.
    pub scalars: Vec<Option<Scalar>>,
    /// When every degree is scalar and all scalars agree up to sign, their
    /// common value `c` (from degree 0) and the sign `η_k = c_k / c` per degree.
    pub normalization: Option<(Scalar, Vec<i8>)>,
}

pub fn check_conjecture2(hodge: &HodgeMap) -> Result<InvolutionReport> {
    let mut scalars = Vec::new();
    for k in 0..=hodge.p {
        let dd = hodge.double(k)?;
        let c = dd.get(0, 0);
        let scalar = dd == ExactMatrix::identity(dd.rows()).scale(&c) && !c.is_zero();
        scalars.push(scalar.then_some(c));
    }
    let normalization = match scalars.iter().cloned().collect::<Option<Vec<_>>>() {
        Some(all) => {
            let c0 = all[0].clone();
            let signs: Option<Vec<i8>> = all
                .iter()
                .map(|c| {
                    if *c == c0 {
                        Some(1)
                    } else if c.neg_ref() == c0 {
                        Some(-1)
                    } else {
                        None
                    }
                })
                .collect();
            signs.map(|s| (c0, s))
        }
        None => None,
    };
    Ok(InvolutionReport { scalars, normalization })
}
