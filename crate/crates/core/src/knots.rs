//! Knot invariants from the braiding and the metric of a calculus.

use std::fmt;
use std::str::FromStr;

use crate::calculus::Calculus;
use crate::error::{Error, Result};
use crate::metric_hodge::MetricPairing;

/// `g^{ab} g_{ab} = m`.
pub fn kn_unknot(c: &Calculus) -> Result<i64> {
    let g = MetricPairing::new(c)?;
    let m = c.m();
    Ok((0..m).flat_map(|a| (0..m).map(move |b| (a, b))).map(|(a, b)| g.upper(a, b) * g.lower(a, b)).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chirality {
    Left,
    Right,
}

/// The trefoil contraction
/// `Λ⁻¹^{a1a2}_{a3a4} Λ⁻¹^{b1b2}_{b3b4} Λ^{a4b3}_{c3c4} g^{c3a3} g^{c4b4} g_{a2b1} g_{a1b2}`,
/// upper indices of `Λ` being inputs. The left trefoil swaps `Λ` and `Λ⁻¹`.
pub fn kn_trefoil(c: &Calculus, chirality: Chirality) -> Result<i64> {
    let g = MetricPairing::new(c)?;
    let m = c.m();
    let (under, over): (fn(&Calculus, usize, usize) -> (usize, usize), fn(&Calculus, usize, usize) -> (usize, usize)) =
        match chirality {
            Chirality::Right => (Calculus::lambda_inv, Calculus::lambda),
            Chirality::Left => (Calculus::lambda, Calculus::lambda_inv),
        };
    let mut total = 0;
    for a1 in 0..m {
        for a2 in 0..m {
            for b1 in 0..m {
                let g1 = g.lower(a2, b1);
                if g1 == 0 {
                    continue;
                }
                for b2 in 0..m {
                    let g2 = g.lower(a1, b2);
                    if g2 == 0 {
                        continue;
                    }
                    let (a3, a4) = under(c, a1, a2);
                    let (b3, b4) = under(c, b1, b2);
                    let (c3, c4) = over(c, a4, b3);
                    total += g1 * g2 * g.upper(c3, a3) * g.upper(c4, b4);
                }
            }
        }
    }
    Ok(total)
}

/// A braid word: `σ_i` is written `i`, `σ_i⁻¹` is written `-i`, strands numbered from 1.
/// A positive letter crosses strands `i, i+1` with `Λ`, a negative one with `Λ⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::MalformedWord("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::MalformedWord(format!("letter {l} on {strands} strands")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// The closure of `σ₁³`.
    pub fn trefoil(chirality: Chirality) -> Self {
        let s = match chirality {
            Chirality::Right => 1,
            Chirality::Left => -1,
        };
        BraidWord { strands: 2, letters: vec![s; 3] }
    }

    /// Parses comma-separated signed integers, with an optional strand count
    /// (default: one more than the largest generator).
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self> {
        let letters = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i32>().map_err(|_| Error::MalformedWord(format!("`{s}` is not an integer"))))
            .collect::<Result<Vec<_>>>()?;
        let needed = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
        BraidWord::new(strands.unwrap_or(needed), letters)
    }

    /// Inserts `σ σ⁻¹` before position `pos` (Reidemeister II).
    pub fn insert_cancelling_pair(&self, pos: usize, letter: i32) -> Result<Self> {
        let mut letters = self.letters.clone();
        let pos = pos.min(letters.len());
        letters.splice(pos..pos, [letter, -letter]);
        BraidWord::new(self.strands, letters)
    }

    /// Rewrites `σ_i σ_{i+1} σ_i` as `σ_{i+1} σ_i σ_{i+1}` (or back) at `pos`,
    /// when the three letters there have that shape with a common sign (Reidemeister III).
    pub fn braid_relation_at(&self, pos: usize) -> Option<Self> {
        let w = self.letters.get(pos..pos + 3)?;
        let (x, y, z) = (w[0], w[1], w[2]);
        if x != z || x.signum() != y.signum() || (x.abs() - y.abs()).abs() != 1 {
            return None;
        }
        let mut letters = self.letters.clone();
        letters[pos..pos + 3].copy_from_slice(&[y, x, y]);
        Some(BraidWord { strands: self.strands, letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BraidWord::parse(s, None)
    }
}

/// Closed-braid value: the braid acts on `V^{⊗s}` as a permutation of index
/// tuples, and the closure, a cap `g_{ab}` above each strand joined to a cup
/// `g^{ab}` below, contracts to its trace.
pub fn evaluate_braid(c: &Calculus, word: &BraidWord) -> Result<i64> {
    let metric = MetricPairing::new(c)?;
    let m = c.m();
    let s = word.strands;
    let states = m.checked_pow(s as u32).filter(|&n| n <= 1 << 24).ok_or_else(|| {
        Error::MalformedWord(format!("{s} strands over {m} generators is too large to evaluate"))
    })?;
    let mut total = 0;
    let mut t = vec![0usize; s];
    for code in 0..states {
        let mut x = code;
        for slot in t.iter_mut().rev() {
            *slot = x % m;
            x /= m;
        }
        let start = t.clone();
        for &l in &word.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (a, b) = if l > 0 { c.lambda(t[i], t[i + 1]) } else { c.lambda_inv(t[i], t[i + 1]) };
            t[i] = a;
            t[i + 1] = b;
        }
        // the cap-cup pair on each strand contributes g_{ab} g^{cb} = δ_a^c
        if t == start {
            total += start.iter().map(|&a| (0..m).map(|b| metric.lower(a, b) * metric.upper(a, b)).sum::<i64>()).product::<i64>();
        }
    }
    Ok(total)
}

/// The matrix identities behind invariance under the three Reidemeister moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReidemeisterReport {
    /// `g_{ab} Λ^{ab}_{cd} = g_{cd}`.
    pub move1: bool,
    /// `Λ Λ⁻¹ = id`.
    pub move2: bool,
    /// Yang–Baxter.
    pub yang_baxter: bool,
    /// `g_{ab} Λ^{bc}_{de} = Λ⁻¹^{cb}_{ad} g_{be}`.
    pub metric_braiding: bool,
}

impl ReidemeisterReport {
    pub fn ok(&self) -> bool {
        self.move1 && self.move2 && self.yang_baxter && self.metric_braiding
    }
}

pub fn reidemeister_check(c: &Calculus) -> Result<ReidemeisterReport> {
    let g = MetricPairing::new(c)?;
    let m = c.m();
    let br = c.braiding();
    let pairs = || (0..m).flat_map(move |a| (0..m).map(move |b| (a, b)));

    // Σ_{ab} g_{ab} Λ^{ab}_{cd}: the only (a, b) reaching (c, d) is Λ⁻¹(c, d)
    let move1 = pairs().all(|(c2, d)| {
        let (a, b) = c.lambda_inv(c2, d);
        g.lower(a, b) == g.lower(c2, d)
    });
    let move2 = br.inverse_ok() && pairs().all(|(a, b)| {
        let (x, y) = c.lambda(a, b);
        c.lambda_inv(x, y) == (a, b)
    });
    let mut metric_braiding = true;
    for a in 0..m {
        for cc in 0..m {
            for d in 0..m {
                for e in 0..m {
                    let lhs: i64 = (0..m).filter(|&b| c.lambda(b, cc) == (d, e)).map(|b| g.lower(a, b)).sum();
                    let rhs: i64 = (0..m).filter(|&b| c.lambda_inv(cc, b) == (a, d)).map(|b| g.lower(b, e)).sum();
                    metric_braiding &= lhs == rhs;
                }
            }
        }
    }
    Ok(ReidemeisterReport { move1, move2, yang_baxter: br.yang_baxter(), metric_braiding })
}
