//! Finite groups given by multiplication tables.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a group element. Index 0 is always the identity.
pub type Element = usize;

/// Largest `n` accepted by [`FiniteGroup::symmetric`].
pub const MAX_SYMMETRIC: usize = 6;

const S3_TABLE: &str = include_str!("../data/s3.json");
const D4_TABLE: &str = include_str!("../data/d4.json");

/// On-disk form of a multiplication table: `table[r][c]` is `labels[r]·labels[c]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub labels: Vec<String>,
    pub table: Vec<Vec<String>>,
}

/// A validated finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    mul: Vec<Element>,
    inv: Vec<Element>,
    classes: Vec<Vec<Element>>,
    center: Vec<Element>,
}

impl FiniteGroup {
    /// Builds a group from labels and a grid of labels.
    pub fn from_table(labels: &[String], table: &[Vec<String>]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty label list".into()));
        }
        if table.len() != n {
            return Err(Error::MalformedTable(format!("{} rows for {} labels", table.len(), n)));
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::MalformedTable(format!("duplicate label `{l}`")));
            }
        }
        let mut mul = Vec::with_capacity(n * n);
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row `{}` has {} entries, expected {}",
                    labels[r],
                    row.len(),
                    n
                )));
            }
            for cell in row {
                let k = index
                    .get(cell.as_str())
                    .ok_or_else(|| Error::MalformedTable(format!("unknown label `{cell}`")))?;
                mul.push(*k);
            }
        }
        Self::from_raw(labels.to_vec(), mul)
    }

    /// Parses the JSON table format.
    pub fn from_json(text: &str) -> Result<Self> {
        let t: GroupTable =
            serde_json::from_str(text).map_err(|e| Error::MalformedTable(e.to_string()))?;
        Self::from_table(&t.labels, &t.table)
    }

    /// The group as a JSON-serializable table.
    pub fn to_table(&self) -> GroupTable {
        let n = self.order();
        GroupTable {
            labels: self.labels.clone(),
            table: (0..n)
                .map(|g| (0..n).map(|h| self.labels[self.mul(g, h)].clone()).collect())
                .collect(),
        }
    }

    /// Validates a flat row-major table of indices and moves the identity to index 0.
    pub fn from_raw(labels: Vec<String>, mul: Vec<Element>) -> Result<Self> {
        let n = labels.len();
        if mul.len() != n * n || mul.iter().any(|&k| k >= n) {
            return Err(Error::MalformedTable("table shape or entries out of range".into()));
        }
        let at = |g: usize, h: usize| mul[g * n + h];

        let e = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or(Error::NoIdentity)?;

        // relabel: identity first, others keep their relative order
        let order: Vec<usize> = std::iter::once(e).chain((0..n).filter(|&g| g != e)).collect();
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let labels: Vec<String> = order.iter().map(|&o| labels[o].clone()).collect();
        let mut table = vec![0; n * n];
        for g in 0..n {
            for h in 0..n {
                table[pos[g] * n + pos[h]] = pos[at(g, h)];
            }
        }
        let at = |g: usize, h: usize| table[g * n + h];

        for g in 0..n {
            for h in 0..n {
                let gh = at(g, h);
                for k in 0..n {
                    if at(gh, k) != at(g, at(h, k)) {
                        return Err(Error::NotAssociative(
                            labels[g].clone(),
                            labels[h].clone(),
                            labels[k].clone(),
                        ));
                    }
                }
            }
        }

        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| at(g, h) == 0 && at(h, g) == 0)
                .ok_or_else(|| Error::NoInverse(labels[g].clone()))?;
        }

        let mut grp = FiniteGroup { labels, mul: table, inv, classes: Vec::new(), center: Vec::new() };
        grp.classes = grp.compute_classes();
        grp.center = (0..n).filter(|&z| (0..n).all(|g| grp.mul(z, g) == grp.mul(g, z))).collect();
        Ok(grp)
    }

    fn compute_classes(&self) -> Vec<Vec<Element>> {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut classes = Vec::new();
        for g in 1..n {
            if seen[g] {
                continue;
            }
            let mut class: Vec<Element> = (0..n).map(|h| self.ad(h, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn mul(&self, g: Element, h: Element) -> Element {
        self.mul[g * self.order() + h]
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, elems: impl IntoIterator<Item = Element>) -> Element {
        elems.into_iter().fold(0, |acc, g| self.mul(acc, g))
    }

    pub fn inv(&self, g: Element) -> Element {
        self.inv[g]
    }

    /// `ad(h) g = h g h⁻¹`.
    pub fn ad(&self, h: Element, g: Element) -> Element {
        self.mul(self.mul(h, g), self.inv[h])
    }

    pub fn label(&self, g: Element) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    /// Nontrivial conjugacy classes, each sorted, ordered by smallest member.
    pub fn classes(&self) -> &[Vec<Element>] {
        &self.classes
    }

    /// Position of the class containing `g` (`None` for the identity).
    pub fn class_of(&self, g: Element) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&g))
    }

    pub fn center(&self) -> &[Element] {
        &self.center
    }

    /// Order of the inner automorphism group, `n / |Z(G)|`.
    pub fn ad_group_size(&self) -> usize {
        self.order() / self.center.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.center.len() == self.order()
    }

    /// The order of `g` as a group element.
    pub fn element_order(&self, g: Element) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Cyclic group of order `n`, labels `e, u, u^2, ...`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::ParameterOutOfRange(format!("cyclic order {n} not in 1..=64")));
        }
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "u".to_string(),
                _ => format!("u^{k}"),
            })
            .collect();
        let mul = (0..n * n).map(|x| (x / n + x % n) % n).collect();
        Self::from_raw(labels, mul)
    }

    /// Dihedral group of order `2n`: elements `r^a s^b`, with `s r s = r⁻¹`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if !(2..=32).contains(&n) {
            return Err(Error::ParameterOutOfRange(format!("dihedral parameter {n} not in 2..=32")));
        }
        let name = |a: usize, b: usize| -> String {
            let r = match a {
                0 => String::new(),
                1 => "r".into(),
                _ => format!("r^{a}"),
            };
            match (a, b) {
                (0, 0) => "e".into(),
                (_, 0) => r,
                _ => format!("{r}s"),
            }
        };
        let elems: Vec<(usize, usize)> =
            (0..2).flat_map(|b| (0..n).map(move |a| (a, b))).collect();
        let idx = |a: usize, b: usize| b * n + a;
        let mut mul = Vec::with_capacity(4 * n * n);
        for &(a, b) in &elems {
            for &(c, d) in &elems {
                let c = if b == 1 { (n - c) % n } else { c };
                mul.push(idx((a + c) % n, (b + d) % 2));
            }
        }
        Self::from_raw(elems.iter().map(|&(a, b)| name(a, b)).collect(), mul)
    }

    /// Symmetric group on `n` letters, labelled in cycle notation.
    ///
    /// Elements are listed in lexicographic order of their images; the
    /// product `σ·τ` applies `τ` first.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_SYMMETRIC {
            return Err(Error::ParameterOutOfRange(format!(
                "symmetric degree {n} not in 1..={MAX_SYMMETRIC}"
            )));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            perms.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut mul = Vec::with_capacity(perms.len() * perms.len());
        for s in &perms {
            for t in &perms {
                let st: Vec<usize> = t.iter().map(|&x| s[x]).collect();
                mul.push(index[&st]);
            }
        }
        Self::from_raw(perms.iter().map(|p| cycle_label(p)).collect(), mul)
    }

    /// Quaternion group `{±e, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // unit index 0..4 = 1, i, j, k; element = 2·unit + sign bit
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let names = ["e", "i", "j", "k"];
        let labels = (0..8)
            .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]))
            .collect();
        let mut mul = Vec::with_capacity(64);
        for x in 0..8 {
            for y in 0..8 {
                let (u, neg) = UNIT[x / 2][y / 2];
                let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
                mul.push(2 * u + sign as usize);
            }
        }
        Self::from_raw(labels, mul).expect("quaternion table is a group")
    }

    /// `S₃` with labels `e, a, b, c, ab, ba`, where `a`, `b`, `c` are the transpositions.
    pub fn s3_table() -> Self {
        Self::from_json(S3_TABLE).expect("embedded S3 table")
    }

    /// `D₄` with labels `1..8` (rotations 1-4, reflections 5-8).
    pub fn d4_table() -> Self {
        Self::from_json(D4_TABLE).expect("embedded D4 table")
    }

    /// Direct product; labels are `(x,y)` except for the identity `e`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let (n1, n2) = (self.order(), other.order());
        let labels = (0..n1 * n2)
            .map(|x| {
                let (a, b) = (x / n2, x % n2);
                if a == 0 && b == 0 {
                    "e".to_string()
                } else {
                    format!("({},{})", self.label(a), other.label(b))
                }
            })
            .collect();
        let mut mul = Vec::with_capacity(n1 * n1 * n2 * n2);
        for x in 0..n1 * n2 {
            for y in 0..n1 * n2 {
                mul.push(self.mul(x / n2, y / n2) * n2 + other.mul(x % n2, y % n2));
            }
        }
        Self::from_raw(labels, mul).expect("product of groups is a group")
    }

    /// Resolves a builtin name.
    ///
    /// `S3` and `D4` are the labelled tables; `Q`, `Zn`, `Dn`, `Sn`
    /// and products such as `Z2xZ4` are generated.
    pub fn builtin(name: &str) -> Result<Self> {
        if name.contains('x') {
            let mut parts = name.split('x').map(Self::builtin);
            let first = parts.next().expect("split yields one part")?;
            return parts.try_fold(first, |acc, g| Ok(acc.direct_product(&g?)));
        }
        let param = |prefix: &str| -> Result<usize> {
            name[prefix.len()..]
                .parse()
                .map_err(|_| Error::UnknownName(name.to_string()))
        };
        match name {
            "S3" => Ok(Self::s3_table()),
            "D4" => Ok(Self::d4_table()),
            "Q" | "Q8" => Ok(Self::quaternion()),
            _ if name.starts_with('Z') => Self::cyclic(param("Z")?),
            _ if name.starts_with('D') => Self::dihedral(param("D")?),
            _ if name.starts_with('S') => Self::symmetric(param("S")?),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    /// Builtin names covering every group of order at most 8, up to isomorphism.
    pub fn small_builtins() -> Vec<&'static str> {
        vec![
            "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2",
            "D4", "Q",
        ]
    }

    /// Some isomorphism `self → other`, found by backtracking, if one exists.
    pub fn isomorphism_to(&self, other: &Self) -> Option<Vec<Element>> {
        let n = self.order();
        if n != other.order() {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        fn consistent(a: &FiniteGroup, b: &FiniteGroup, map: &[usize], upto: usize) -> bool {
            (0..=upto).all(|g| {
                (0..=upto).all(|h| {
                    let gh = a.mul(g, h);
                    gh > upto || map[gh] == b.mul(map[g], map[h])
                })
            })
        }
        fn go(a: &FiniteGroup, b: &FiniteGroup, map: &mut [usize], used: &mut [bool], k: usize) -> bool {
            if k == map.len() {
                return true;
            }
            for t in 1..map.len() {
                if used[t] || a.element_order(k) != b.element_order(t) {
                    continue;
                }
                map[k] = t;
                used[t] = true;
                if consistent(a, b, map, k) && go(a, b, map, used, k + 1) {
                    return true;
                }
                used[t] = false;
            }
            map[k] = usize::MAX;
            false
        }
        go(self, other, &mut map, &mut used, 1).then_some(map)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        out.push('(');
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}
