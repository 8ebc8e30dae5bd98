use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::tensor::{decode, left_wedge_rep, monomial_rep, right_wedge_rep};
use crate::calculus::{Braiding, Calculus};
use crate::error::{Error, Result};
use crate::exactla::{linear_combination, rat, Echelon, Field, Insert, Rational, Scalar, SparseVec};

/// Limits for [`FormTower::build`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerOptions {
    /// Highest degree to build.
    pub degree_cap: usize,
    /// Largest number of tensor terms generated while building one level.
    pub term_budget: u64,
}

pub const DEFAULT_DEGREE_CAP: usize = 12;
pub const DEFAULT_TERM_BUDGET: u64 = 4_000_000;

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions { degree_cap: DEFAULT_DEGREE_CAP, term_budget: DEFAULT_TERM_BUDGET }
    }
}

impl TowerOptions {
    pub fn with_cap(degree_cap: usize) -> Self {
        TowerOptions { degree_cap, ..Self::default() }
    }
}

/// Why the construction stopped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stop {
    /// A zero-dimensional level was reached.
    Vanished,
    /// The degree cap was hit.
    DegreeCap,
    /// The next level would exceed the term budget.
    Budget { degree: usize, terms: u64 },
}

/// Left-invariant `k`-forms: a basis of monomials and their structure constants.
#[derive(Clone, Debug)]
pub struct Level {
    pub k: usize,
    /// Basis monomials as tuples of generator positions.
    pub basis: Vec<Vec<usize>>,
    /// Tensor representative of each basis monomial, keyed by encoded tuple.
    pub reps: Vec<SparseVec<Rational>>,
    /// `t_left[i][I]`: `θ^i ∧ Θ^I` over the next level's basis.
    pub t_left: Vec<Vec<SparseVec<Rational>>>,
    /// `t_right[I][i]`: `Θ^I ∧ θ^i` over the next level's basis.
    pub t_right: Vec<Vec<SparseVec<Rational>>>,
    /// `c[I]`: `dΘ^I` over the next level's basis.
    pub c: Vec<SparseVec<Rational>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Level {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Position of a monomial in the basis, if it is a basis monomial.
    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Whether the structure constants into the next level are known.
    pub fn has_next(&self) -> bool {
        self.c.len() == self.basis.len()
    }
}

/// Counts of nonzero ε components by value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonStats {
    pub nonzero: u64,
    /// Value (as text) → number of components.
    pub values: BTreeMap<String, u64>,
}

/// Facts about the volume form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeProperties {
    /// The product of the volume's labels is the identity.
    pub central_by_product: bool,
    /// `vol·x^g = x^g·vol` for every `g`, via the commutation rule.
    pub central_by_commutation: bool,
    /// `vol* = star_sign · vol` before any adjustment.
    pub star_sign: i64,
    /// `vol` was multiplied by `i` to make it real.
    pub adjusted: bool,
    /// `ℛ_h vol = vol` for every `h`.
    pub biinvariant: bool,
    /// The coefficient `c_h` in `ℛ_h vol = c_h vol`, indexed by `h`.
    #[serde(skip)]
    pub right_coefficients: Vec<Rational>,
}

/// The exterior algebra of left-invariant forms of a calculus, degree by degree.
#[derive(Clone, Debug)]
pub struct FormTower {
    calculus: Calculus,
    braiding: Braiding,
    levels: Vec<Level>,
    stop: Stop,
    top: Option<usize>,
    vol_scale: Scalar,
    diagnostics: Vec<String>,
}

impl FormTower {
    /// Builds levels `0, 1, ...` until a level vanishes or a limit is hit.
    pub fn build(calculus: &Calculus, opts: TowerOptions) -> FormTower {
        let braiding = calculus.braiding();
        let m = calculus.m();
        let mut diagnostics = Vec::new();
        if !calculus.is_star_closed() {
            diagnostics.push("calculus is not closed under inversion; metric data unavailable".into());
        }
        let mut levels = vec![Level {
            k: 0,
            basis: vec![Vec::new()],
            reps: vec![SparseVec::unit(0)],
            t_left: Vec::new(),
            t_right: Vec::new(),
            c: Vec::new(),
            index: HashMap::from([(Vec::new(), 0)]),
        }];
        let stop = loop {
            let k = levels.len() - 1;
            if k >= opts.degree_cap {
                break Stop::DegreeCap;
            }
            let cur = &levels[k];
            let terms: u64 = cur.reps.iter().map(|r| r.nnz() as u64).sum::<u64>() * (k as u64 + 1) * m as u64;
            if terms > opts.term_budget {
                break Stop::Budget { degree: k + 1, terms };
            }
            let next = extend(&braiding, &mut levels[k]);
            let vanished = next.basis.is_empty();
            levels.push(next);
            if vanished {
                break Stop::Vanished;
            }
        };

        let top = match stop {
            Stop::Vanished => {
                let last = levels.len() - 2;
                (levels[last].dim() == 1).then_some(last)
            }
            _ => None,
        };
        if stop == Stop::Vanished && top.is_none() {
            diagnostics.push("the last nonzero level is not one-dimensional".into());
        }
        if m == 1 {
            diagnostics.push("one-dimensional calculus: the volume form is the single one-form".into());
        }
        let mut tower = FormTower {
            calculus: calculus.clone(),
            braiding,
            levels,
            stop,
            top,
            vol_scale: Scalar::one(),
            diagnostics,
        };
        if tower.top.is_some() && calculus.is_star_closed() && tower.vol_star_sign() == -1 {
            tower.vol_scale = Scalar::i();
        }
        tower
    }

    pub fn calculus(&self) -> &Calculus {
        &self.calculus
    }

    pub fn braiding(&self) -> &Braiding {
        &self.braiding
    }

    pub fn m(&self) -> usize {
        self.calculus.m()
    }

    pub fn n(&self) -> usize {
        self.calculus.group().order()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> Result<&Level> {
        self.levels.get(k).ok_or(Error::DegreeNotBuilt(k))
    }

    /// Dimensions of the built levels, including a final zero level if one was reached.
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Level::dim).collect()
    }

    /// Dimensions of the nonzero levels `0..=p` (or all built levels if incomplete).
    pub fn form_dims(&self) -> Vec<usize> {
        let mut d = self.dims();
        if self.stop == Stop::Vanished {
            d.pop();
        }
        d
    }

    pub fn stop(&self) -> &Stop {
        &self.stop
    }

    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }

    /// Degree of the volume form, when the tower ended in a one-dimensional level.
    pub fn top_degree(&self) -> Option<usize> {
        self.top
    }

    pub fn is_complete(&self) -> bool {
        self.top.is_some()
    }

    /// Top degree, or an error saying why there is none.
    pub fn p(&self) -> Result<usize> {
        self.top.ok_or_else(|| {
            Error::TowerIncomplete(match &self.stop {
                Stop::Vanished => "no one-dimensional top level".into(),
                Stop::DegreeCap => format!("degree cap {} reached", self.levels.len() - 1),
                Stop::Budget { degree, terms } => {
                    format!("degree {degree} needs {terms} tensor terms, over budget")
                }
            })
        })
    }

    /// The volume monomial (the top basis monomial).
    pub fn vol(&self) -> Result<&[usize]> {
        let p = self.p()?;
        Ok(&self.levels[p].basis[0])
    }

    /// `1`, or `i` when the volume was multiplied by `i` to make it real.
    pub fn vol_scale(&self) -> &Scalar {
        &self.vol_scale
    }

    /// Coefficients of a monomial over the basis of its degree.
    pub fn wedge_expand(&self, t: &[usize]) -> Result<SparseVec<Rational>> {
        let k = t.len();
        if k >= self.levels.len() {
            return Err(Error::DegreeNotBuilt(k));
        }
        let mut v = SparseVec::unit(0);
        for (r, &i) in t.iter().enumerate().rev() {
            let level = &self.levels[k - 1 - r];
            let tl = &level.t_left[i];
            v = linear_combination(v.iter().map(|(j, c)| (c, &tl[*j])));
        }
        Ok(v)
    }

    /// `θ^i ∧ ω` for a constant form `ω` of degree `k`.
    pub fn left_mul(&self, i: usize, k: usize, w: &SparseVec<Rational>) -> Result<SparseVec<Rational>> {
        let lv = self.level(k)?;
        if !lv.has_next() {
            return Err(Error::DegreeNotBuilt(k + 1));
        }
        Ok(linear_combination(w.iter().map(|(j, c)| (c, &lv.t_left[i][*j]))))
    }

    /// `ω ∧ θ^i` for a constant form `ω` of degree `k`.
    pub fn right_mul(&self, k: usize, w: &SparseVec<Rational>, i: usize) -> Result<SparseVec<Rational>> {
        let lv = self.level(k)?;
        if !lv.has_next() {
            return Err(Error::DegreeNotBuilt(k + 1));
        }
        Ok(linear_combination(w.iter().map(|(j, c)| (c, &lv.t_right[*j][i]))))
    }

    /// Wedge product of constant forms of degrees `k1` and `k2`.
    pub fn wedge(
        &self,
        k1: usize,
        a: &SparseVec<Rational>,
        k2: usize,
        b: &SparseVec<Rational>,
    ) -> Result<SparseVec<Rational>> {
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (i, x) in a.iter() {
            let mono = &self.level(k1)?.basis[*i];
            for (j, y) in b.iter() {
                let mut t = mono.clone();
                t.extend_from_slice(&self.level(k2)?.basis[*j]);
                let xy = x.mul_ref(y);
                for (l, z) in self.wedge_expand(&t)?.iter() {
                    let v = z.mul_ref(&xy);
                    acc.entry(*l).and_modify(|w| *w = w.add_ref(&v)).or_insert(v);
                }
            }
        }
        Ok(SparseVec::from_pairs(acc))
    }

    /// Tensor representative of a constant form of degree `k`.
    pub fn representative(&self, k: usize, w: &SparseVec<Rational>) -> Result<SparseVec<Rational>> {
        let lv = self.level(k)?;
        Ok(linear_combination(w.iter().map(|(j, c)| (c, &lv.reps[*j]))))
    }

    /// Tensor representative of any monomial, computed from scratch.
    pub fn monomial_representative(&self, t: &[usize]) -> SparseVec<Rational> {
        monomial_rep(&self.braiding, t)
    }

    /// Coefficient of `vol` in the monomial `t` (relative to the top basis monomial).
    pub fn epsilon(&self, t: &[usize]) -> Result<Rational> {
        let p = self.p()?;
        if t.len() != p {
            return Err(Error::WrongDegree { expected: p, got: t.len() });
        }
        Ok(self.wedge_expand(t)?.get(0).cloned().unwrap_or_else(|| rat(0)))
    }

    /// `ε` with respect to the real volume form: `ε / vol_scale`.
    pub fn epsilon_adjusted(&self, t: &[usize]) -> Result<Scalar> {
        let e = Scalar::real(self.epsilon(t)?);
        Ok(e.div_ref(&self.vol_scale).expect("nonzero scale"))
    }

    /// Visits every `p`-tuple with a nonzero ε, in lexicographic order.
    ///
    /// Expansions are built for all suffixes, shortest first, so each
    /// tuple costs one left multiplication.
    pub fn for_each_epsilon(&self, mut f: impl FnMut(&[usize], &Rational)) -> Result<()> {
        let p = self.p()?;
        let m = self.m();
        // cache[len][code of suffix] = expansion of that suffix
        let mut cache: Vec<HashMap<usize, SparseVec<Rational>>> = vec![HashMap::new(); p + 1];
        cache[0].insert(0, SparseVec::unit(0));
        for len in 1..=p {
            let level = &self.levels[len - 1];
            let (prev, rest) = cache.split_at_mut(len);
            let prev = &prev[len - 1];
            let stride = m.pow(len as u32 - 1);
            for (code, v) in prev {
                for i in 0..m {
                    let tl = &level.t_left[i];
                    let w = linear_combination(v.iter().map(|(j, c)| (c, &tl[*j])));
                    if !w.is_zero() {
                        rest[0].insert(i * stride + code, w);
                    }
                }
            }
        }
        let mut top: Vec<(&usize, &SparseVec<Rational>)> = cache[p].iter().collect();
        top.sort_unstable_by_key(|e| *e.0);
        for (code, v) in top {
            if let Some(e) = v.get(0) {
                f(&decode(*code, p, m), e);
            }
        }
        Ok(())
    }

    /// Number of nonzero ε components and their values.
    pub fn epsilon_stats(&self) -> Result<EpsilonStats> {
        let mut values: BTreeMap<String, u64> = BTreeMap::new();
        let mut nonzero = 0;
        self.for_each_epsilon(|_, v| {
            nonzero += 1;
            *values.entry(v.to_string()).or_insert(0) += 1;
        })?;
        Ok(EpsilonStats { nonzero, values })
    }

    /// `vol* = s·vol` with `s = (−1)^{p(p+1)/2} ε^{k_p⁻¹...k_1⁻¹}`.
    fn vol_star_sign(&self) -> i64 {
        let vol = self.vol().expect("complete tower").to_vec();
        let p = vol.len();
        let rev: Vec<usize> = vol
            .iter()
            .rev()
            .map(|&i| self.calculus.inv_pos(i).expect("star closed"))
            .collect();
        let e = self.epsilon(&rev).expect("complete tower");
        let s = if (p * (p + 1) / 2) % 2 == 0 { e } else { -e };
        if s == rat(1) {
            1
        } else if s == rat(-1) {
            -1
        } else {
            panic!("vol* is not ±vol (coefficient {s})")
        }
    }

    /// Centrality, reality and biinvariance of the volume form.
    pub fn volume_properties(&self) -> Result<VolumeProperties> {
        let vol = self.vol()?.to_vec();
        let g = self.calculus.group();
        let prod = self.calculus.product(&vol);
        let central_by_commutation = (0..g.order()).all(|x| {
            // iterate θ^i f = (ℛ_i f) θ^i through the monomial, from the right
            let mut f = crate::functions::delta(g.order(), x);
            for &i in vol.iter().rev() {
                f = crate::functions::right_translate(g, self.calculus.gen(i), &f);
            }
            f == crate::functions::delta(g.order(), x)
        });
        let right_coefficients = (0..g.order())
            .map(|h| {
                let t: Vec<usize> = vol.iter().map(|&i| self.calculus.ad_pos(h, i)).collect();
                self.epsilon(&t)
            })
            .collect::<Result<Vec<_>>>()?;
        let biinvariant = right_coefficients.iter().all(|c| *c == rat(1));
        let star_sign = if self.calculus.is_star_closed() { self.vol_star_sign() } else { 0 };
        Ok(VolumeProperties {
            central_by_product: prod == 0,
            central_by_commutation,
            star_sign,
            adjusted: self.vol_scale != Scalar::one(),
            biinvariant,
            right_coefficients,
        })
    }

    /// `(Θ^I)* = (−1)^{k(k+1)/2} θ^{i_k⁻¹} ∧ ... ∧ θ^{i_1⁻¹}`, over the level-`k` basis.
    pub fn star_monomial(&self, t: &[usize]) -> Result<SparseVec<Rational>> {
        self.calculus.require_star_closed()?;
        let k = t.len();
        let rev: Vec<usize> =
            t.iter().rev().map(|&i| self.calculus.inv_pos(i).expect("star closed")).collect();
        let v = self.wedge_expand(&rev)?;
        Ok(if (k * (k + 1) / 2) % 2 == 0 { v } else { v.neg() })
    }

    /// `(Θ^I)*` for every basis monomial of degree `k`, as rows.
    pub fn star_matrix(&self, k: usize) -> Result<Vec<SparseVec<Rational>>> {
        self.level(k)?.basis.iter().map(|t| self.star_monomial(t)).collect()
    }

    /// Independent check of the stored right-multiplication constants:
    /// recomputes them by expanding `I ++ [i]` through left multiplication.
    pub fn right_constants_consistent(&self) -> bool {
        self.levels.iter().filter(|l| l.has_next()).all(|l| {
            l.basis.iter().enumerate().all(|(ii, t)| {
                (0..self.m()).all(|i| {
                    let mut u = t.clone();
                    u.push(i);
                    self.wedge_expand(&u).map(|v| v == l.t_right[ii][i]).unwrap_or(false)
                })
            })
        })
    }

    /// Checks that each basis representative equals the representative of its monomial,
    /// and that expanding any monomial agrees with its representative.
    pub fn expansion_consistent(&self, t: &[usize]) -> Result<bool> {
        let v = self.wedge_expand(t)?;
        Ok(self.representative(t.len(), &v)? == self.monomial_representative(t))
    }
}

/// Builds level `k+1` from level `k`, filling in the structure constants of level `k`.
fn extend(br: &Braiding, cur: &mut Level) -> Level {
    let m = br.m();
    let k = cur.k;
    let mut ech: Echelon<Rational> = Echelon::tracking();
    let mut basis = Vec::new();
    let mut reps = Vec::new();
    let mut t_left = vec![Vec::with_capacity(cur.dim()); m];
    for (i, row) in t_left.iter_mut().enumerate() {
        for (jj, r) in cur.reps.iter().enumerate() {
            let rep = left_wedge_rep(br, i, r, k);
            match ech.insert(&rep) {
                Insert::Independent(tag) => {
                    debug_assert_eq!(tag, basis.len());
                    let mut t = vec![i];
                    t.extend_from_slice(&cur.basis[jj]);
                    basis.push(t);
                    reps.push(rep);
                    row.push(SparseVec::unit(tag));
                }
                Insert::Dependent(coords) => row.push(coords),
            }
        }
    }
    let t_right: Vec<Vec<SparseVec<Rational>>> = cur
        .reps
        .iter()
        .map(|r| {
            (0..m)
                .map(|i| {
                    ech.express(&right_wedge_rep(br, r, k, i))
                        .expect("right products lie in the span of left products")
                })
                .collect()
        })
        .collect();
    let sign = if k % 2 == 0 { rat(-1) } else { rat(1) };
    let one = rat(1);
    let c = (0..cur.dim())
        .map(|jj| {
            let terms = (0..m)
                .map(|i| (&one, &t_left[i][jj]))
                .chain((0..m).map(|i| (&sign, &t_right[jj][i])));
            linear_combination(terms)
        })
        .collect();
    cur.t_left = t_left;
    cur.t_right = t_right;
    cur.c = c;
    let index = basis.iter().cloned().enumerate().map(|(a, b)| (b, a)).collect();
    Level {
        k: k + 1,
        basis,
        reps,
        t_left: Vec::new(),
        t_right: Vec::new(),
        c: Vec::new(),
        index,
    }
}
