//! Bicovariant calculi: a choice of conjugacy classes, and the braiding on pairs of generators.

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactla::{ratio, ExactMatrix, Field, Scalar};
use crate::functions::{self, FunctionVector};
use crate::group::{Element, FiniteGroup};

/// A group together with a conjugation-closed set of generators `G'`.
///
/// Generators are kept in ascending element order; a generator is referred
/// to by its position in that list throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calculus {
    group: FiniteGroup,
    classes: Vec<usize>,
    gens: Vec<Element>,
    pos: Vec<Option<usize>>,
    star_closed: bool,
}

impl Calculus {
    /// Calculus spanned by the given class indices (see [`FiniteGroup::classes`]).
    pub fn new(group: FiniteGroup, classes: &[usize]) -> Result<Self> {
        let mut cls: Vec<usize> = classes.to_vec();
        cls.sort_unstable();
        cls.dedup();
        if cls.is_empty() {
            return Err(Error::NotAUnionOfClasses("empty selection".into()));
        }
        if let Some(bad) = cls.iter().find(|&&c| c >= group.classes().len()) {
            return Err(Error::NotAUnionOfClasses(format!(
                "class {} does not exist ({} nontrivial classes)",
                bad + 1,
                group.classes().len()
            )));
        }
        let mut gens: Vec<Element> =
            cls.iter().flat_map(|&c| group.classes()[c].iter().copied()).collect();
        gens.sort_unstable();
        let mut pos = vec![None; group.order()];
        for (i, &g) in gens.iter().enumerate() {
            pos[g] = Some(i);
        }
        let star_closed = gens.iter().all(|&g| pos[group.inv(g)].is_some());
        Ok(Calculus { group, classes: cls, gens, pos, star_closed })
    }

    /// Like [`Calculus::new`], but rejects selections not closed under inversion.
    pub fn new_strict(group: FiniteGroup, classes: &[usize]) -> Result<Self> {
        let c = Self::new(group, classes)?;
        c.require_star_closed()?;
        Ok(c)
    }

    /// Calculus with exactly the given generator elements.
    pub fn from_elements(group: FiniteGroup, elems: &[Element]) -> Result<Self> {
        let mut classes = Vec::new();
        for &g in elems {
            let c = group.class_of(g).ok_or_else(|| {
                Error::NotAUnionOfClasses("the identity cannot be a generator".into())
            })?;
            classes.push(c);
        }
        classes.sort_unstable();
        classes.dedup();
        for &c in &classes {
            if let Some(&missing) = group.classes()[c].iter().find(|g| !elems.contains(g)) {
                return Err(Error::NotAUnionOfClasses(format!(
                    "`{}` is conjugate to a selected element but not selected",
                    group.label(missing)
                )));
            }
        }
        Self::new(group, &classes)
    }

    /// The universal calculus: every nontrivial class.
    pub fn universal(group: FiniteGroup) -> Result<Self> {
        let all: Vec<usize> = (0..group.classes().len()).collect();
        Self::new(group, &all)
    }

    /// All `2^r − 1` calculi of a group, in order of the bitmask of selected classes.
    pub fn enumerate(group: &FiniteGroup) -> Vec<Calculus> {
        let r = group.classes().len();
        (1u64..(1u64 << r))
            .map(|mask| {
                let sel: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
                Self::new(group.clone(), &sel).expect("classes exist")
            })
            .collect()
    }

    pub fn require_star_closed(&self) -> Result<()> {
        match self.gens.iter().find(|&&g| self.pos[self.group.inv(g)].is_none()) {
            Some(&g) => Err(Error::NotStarClosed(self.group.label(g).to_string())),
            None => Ok(()),
        }
    }

    /// Extends the selection by the classes of inverses.
    pub fn star_completion(&self) -> Calculus {
        let mut cls = self.classes.clone();
        for &g in &self.gens {
            cls.push(self.group.class_of(self.group.inv(g)).expect("nontrivial"));
        }
        Self::new(self.group.clone(), &cls).expect("valid classes")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Selected class indices, ascending.
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> Element {
        self.gens[i]
    }

    /// Dimension `m` of the space of left-invariant one-forms.
    pub fn m(&self) -> usize {
        self.gens.len()
    }

    /// Position of an element among the generators.
    pub fn position(&self, g: Element) -> Option<usize> {
        self.pos[g]
    }

    pub fn is_star_closed(&self) -> bool {
        self.star_closed
    }

    pub fn gen_label(&self, i: usize) -> &str {
        self.group.label(self.gens[i])
    }

    /// Position of the generator by label.
    pub fn gen_by_label(&self, label: &str) -> Result<usize> {
        self.group
            .index_of(label)
            .and_then(|g| self.pos[g])
            .ok_or_else(|| Error::GeneratorNotInCalculus(label.to_string()))
    }

    /// Position of the inverse of generator `i`. Needs a star-closed calculus.
    pub fn inv_pos(&self, i: usize) -> Option<usize> {
        self.pos[self.group.inv(self.gens[i])]
    }

    /// Position of `ad(h) g_i`.
    pub fn ad_pos(&self, h: Element, i: usize) -> usize {
        self.pos[self.group.ad(h, self.gens[i])].expect("generator set is conjugation closed")
    }

    /// Product of the generators at the given positions.
    pub fn product(&self, tuple: &[usize]) -> Element {
        self.group.product(tuple.iter().map(|&i| self.gens[i]))
    }

    /// Short description such as `{a,b,c}`.
    pub fn describe(&self) -> String {
        let labels: Vec<&str> = (0..self.m()).map(|i| self.gen_label(i)).collect();
        format!("{{{}}}", labels.join(","))
    }

    /// Class names, 1-based roman numerals.
    pub fn class_names(&self) -> Vec<String> {
        self.classes.iter().map(|&c| roman(c + 1)).collect()
    }

    /// `Λ(θ^{g_a} ⊗ θ^{g_b}) = θ^{g_a g_b g_a⁻¹} ⊗ θ^{g_a}`, on generator positions.
    pub fn lambda(&self, a: usize, b: usize) -> (usize, usize) {
        (self.ad_pos(self.gens[a], b), a)
    }

    /// Inverse of [`Calculus::lambda`]: `(a, b) ↦ (b, ad(g_b⁻¹) g_a)`.
    pub fn lambda_inv(&self, a: usize, b: usize) -> (usize, usize) {
        (b, self.ad_pos(self.group.inv(self.gens[b]), a))
    }

    pub fn braiding(&self) -> Braiding {
        Braiding::new(self)
    }

    /// `C^h_{g,g'} = δ^h_{gg'} − δ^h_g − δ^h_{g'}` for arbitrary elements.
    pub fn fusion_constant(&self, g: Element, g2: Element, h: Element) -> i64 {
        (self.group.mul(g, g2) == h) as i64 - (g == h) as i64 - (g2 == h) as i64
    }

    /// Table of fusion constants restricted to generators, indexed `[g][g'][h]` by position.
    pub fn fusion_constants(&self) -> Vec<Vec<Vec<i64>>> {
        let m = self.m();
        (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| (0..m).map(|c| self.fusion_constant(self.gens[a], self.gens[b], self.gens[c])).collect())
                    .collect()
            })
            .collect()
    }

    /// `t_g f = ℛ_g f − f`, for a generator `g`.
    pub fn tangent_apply(&self, g: Element, f: &[Scalar]) -> Result<FunctionVector> {
        if self.pos[g].is_none() {
            return Err(Error::GeneratorNotInCalculus(self.group.label(g).to_string()));
        }
        Ok(tangent(&self.group, g, f))
    }
}

/// `ℛ_h f − f` for any element `h`.
pub fn tangent(group: &FiniteGroup, h: Element, f: &[Scalar]) -> FunctionVector {
    functions::sub(&functions::right_translate(group, h, f), f)
}

/// Parses a class selection such as `a,ab`, `I,II` or `i,j`.
///
/// Items are element labels (selecting that element's class) or 1-based
/// roman numerals in the order of [`FiniteGroup::classes`]. Labels win
/// when an item is both.
pub fn parse_selection(group: &FiniteGroup, text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let class = if let Some(g) = group.index_of(item) {
            group
                .class_of(g)
                .ok_or_else(|| Error::NotAUnionOfClasses("the identity is not a generator".into()))?
        } else if let Some(k) = parse_roman(item).filter(|&k| k >= 1 && k <= group.classes().len()) {
            k - 1
        } else {
            return Err(Error::NotAUnionOfClasses(format!("`{item}` names no class")));
        };
        out.push(class);
    }
    if out.is_empty() {
        return Err(Error::NotAUnionOfClasses("empty selection".into()));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

const ROMAN: [(usize, &str); 6] = [(40, "XL"), (10, "X"), (9, "IX"), (5, "V"), (4, "IV"), (1, "I")];

pub fn roman(mut k: usize) -> String {
    let mut s = String::new();
    for &(v, r) in &ROMAN {
        while k >= v {
            s.push_str(r);
            k -= v;
        }
    }
    s
}

fn parse_roman(s: &str) -> Option<usize> {
    (1..50).find(|&k| roman(k) == s)
}

/// The braiding as a permutation of pair indices `a·m + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Braiding {
    m: usize,
    perm: Vec<usize>,
    inv: Vec<usize>,
    order: usize,
}

impl Braiding {
    pub fn new(c: &Calculus) -> Self {
        let m = c.m();
        let mut perm = vec![0; m * m];
        let mut inv = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                let (x, y) = c.lambda(a, b);
                perm[a * m + b] = x * m + y;
                let (x, y) = c.lambda_inv(a, b);
                inv[a * m + b] = x * m + y;
            }
        }
        let order = cycle_lcm(&perm);
        Braiding { m, perm, inv, order }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Image of each pair index under `Λ`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Image of each pair index under `Λ⁻¹`.
    pub fn inverse_perm(&self) -> &[usize] {
        &self.inv
    }

    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        let x = self.perm[a * self.m + b];
        (x / self.m, x % self.m)
    }

    pub fn apply_inv(&self, a: usize, b: usize) -> (usize, usize) {
        let x = self.inv[a * self.m + b];
        (x / self.m, x % self.m)
    }

    /// Smallest `s ≥ 1` with `Λ^s = id`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `Λ^j` as a permutation.
    pub fn power(&self, j: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.perm.len()).collect();
        for _ in 0..j {
            p = p.iter().map(|&x| self.perm[x]).collect();
        }
        p
    }

    /// `Λ` as an exact matrix. Row index is the input pair, column the output pair.
    pub fn matrix(&self) -> ExactMatrix {
        perm_matrix(&self.perm)
    }

    pub fn inverse_matrix(&self) -> ExactMatrix {
        perm_matrix(&self.inv)
    }

    /// `P₀ = (1/s) Σ_j Λ^j`, exactly.
    pub fn p0(&self) -> ExactMatrix {
        let s = self.order as i64;
        let w = Scalar::real(ratio(1, s));
        let mut trip = Vec::new();
        for j in 0..self.order {
            for (x, y) in self.power(j).into_iter().enumerate() {
                trip.push((x, y, w.clone()));
            }
        }
        ExactMatrix::from_triplets(self.perm.len(), self.perm.len(), trip)
    }

    /// The projector on two-forms, `id − P₀`.
    pub fn two_form_projector(&self) -> ExactMatrix {
        ExactMatrix::identity(self.perm.len()).sub(&self.p0()).expect("same shape")
    }

    /// All `P_i = (1/s) Σ_j q^{−ij} Λ^j` in floating point, dense row-major.
    pub fn projectors_f64(&self) -> Vec<Vec<Vec<Complex64>>> {
        let s = self.order;
        let d = self.perm.len();
        let powers: Vec<Vec<usize>> = (0..s).map(|j| self.power(j)).collect();
        (0..s)
            .map(|i| {
                let mut p = vec![vec![Complex64::new(0.0, 0.0); d]; d];
                for (j, pw) in powers.iter().enumerate() {
                    let angle = -2.0 * std::f64::consts::PI * ((i * j) % s) as f64 / s as f64;
                    let w = Complex64::from_polar(1.0 / s as f64, angle);
                    for (x, &y) in pw.iter().enumerate() {
                        p[x][y] += w;
                    }
                }
                p
            })
            .collect()
    }

    /// Checks `Λ₁₂Λ₂₃Λ₁₂ = Λ₂₃Λ₁₂Λ₂₃` on all `m³` triples.
    pub fn yang_baxter(&self) -> bool {
        let m = self.m;
        let l12 = |t: [usize; 3]| {
            let (x, y) = self.apply(t[0], t[1]);
            [x, y, t[2]]
        };
        let l23 = |t: [usize; 3]| {
            let (x, y) = self.apply(t[1], t[2]);
            [t[0], x, y]
        };
        (0..m * m * m).all(|i| {
            let t = [i / (m * m), i / m % m, i % m];
            l12(l23(l12(t))) == l23(l12(l23(t)))
        })
    }

    /// Checks that `Λ` and `Λ⁻¹` undo each other.
    pub fn inverse_ok(&self) -> bool {
        (0..self.perm.len()).all(|x| self.inv[self.perm[x]] == x && self.perm[self.inv[x]] == x)
    }
}

fn perm_matrix(perm: &[usize]) -> ExactMatrix {
    ExactMatrix::from_triplets(
        perm.len(),
        perm.len(),
        perm.iter().enumerate().map(|(x, &y)| (x, y, Scalar::one())),
    )
}

/// Least common multiple of the cycle lengths of a permutation.
pub fn cycle_lcm(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut l = 1usize;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        l = l.lcm(&len);
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3(sel: &str) -> Calculus {
        let g = FiniteGroup::s3_table();
        let cls = parse_selection(&g, sel).unwrap();
        Calculus::new(g, &cls).unwrap()
    }

    #[test]
    fn braiding_on_s3() {
        let c = s3("I");
        let (a, b, cc) = (0, 1, 2);
        assert_eq!(c.describe(), "{a,b,c}");
        assert_eq!(c.lambda(a, b), (cc, a));
        let br = c.braiding();
        assert!(br.inverse_ok());
        assert!(br.yang_baxter());
        assert!(br.order() <= 2 * c.group().ad_group_size());
    }

    #[test]
    fn abelian_braiding_is_flip() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let c = Calculus::universal(g).unwrap();
        for a in 0..c.m() {
            for b in 0..c.m() {
                assert_eq!(c.lambda(a, b), (b, a));
            }
        }
        assert_eq!(c.braiding().order(), 2);
    }

    #[test]
    fn selections() {
        let g = FiniteGroup::s3_table();
        assert_eq!(parse_selection(&g, "a,ab").unwrap(), vec![0, 1]);
        assert_eq!(parse_selection(&g, "II").unwrap(), vec![1]);
        assert!(parse_selection(&g, "e").is_err());
        assert!(parse_selection(&g, "III").is_err());
        assert_eq!(roman(14), "XIV");
        let c = s3("ab");
        assert_eq!(c.describe(), "{ab,ba}");
        assert!(c.is_star_closed());
    }

    #[test]
    fn non_star_closed() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let cls = parse_selection(&g, "u").unwrap();
        let c = Calculus::new(g.clone(), &cls).unwrap();
        assert!(!c.is_star_closed());
        assert_eq!(c.star_completion().m(), 2);
        assert!(matches!(Calculus::new_strict(g, &cls), Err(Error::NotStarClosed(_))));
    }

    #[test]
    fn from_elements_rejects_partial_classes() {
        let g = FiniteGroup::s3_table();
        let a = g.index_of("a").unwrap();
        assert!(matches!(Calculus::from_elements(g, &[a]), Err(Error::NotAUnionOfClasses(_))));
    }

    #[test]
    fn tangent_kills_constants() {
        let c = s3("I");
        let one = functions::constant(6, Scalar::one());
        let t = c.tangent_apply(c.gen(0), &one).unwrap();
        assert!(functions::is_zero(&t));
        assert!(c.tangent_apply(0, &one).is_err());
    }
}
