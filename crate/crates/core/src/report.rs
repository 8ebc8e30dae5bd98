//! The per-calculus pipeline behind the command line: dimensions, cohomology,
//! knot values and the invariant checks, gathered into one serializable record.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::calculus::{Braiding, Calculus};
use crate::derham::{self, DeRhamComplex, HodgeTheory};
use crate::error::{Error, Result};
use crate::exactla::{rat, ExactMatrix, Scalar, SparseVec};
use crate::exterior::{EpsilonStats, Form, FormTower, Stop, TowerOptions};
use crate::graph::ManifoldGraph;
use crate::knots::{self, BraidWord, Chirality};
use crate::metric_hodge;

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub tower: TowerOptions,
    /// Record wall-clock time in the report (makes the output nondeterministic).
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Preconditions not met, e.g. no metric or an incomplete tower.
    Skipped,
    /// An outcome recorded without a pass/fail verdict.
    Reported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn verdict(ok: bool, detail: impl Into<String>) -> Self {
        Check { status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }

    fn skipped(why: impl Into<String>) -> Self {
        Check { status: Status::Skipped, detail: why.into() }
    }

    fn reported(detail: impl Into<String>) -> Self {
        Check { status: Status::Reported, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub name: String,
    pub order: usize,
    pub ad_size: usize,
    pub classes: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CalculusInfo {
    pub classes: Vec<String>,
    pub generators: Vec<String>,
    pub m: usize,
    pub star_closed: bool,
    pub braiding_order: usize,
    pub complete: bool,
    pub stop: Stop,
    pub top_degree: Option<usize>,
    pub volume: Option<Vec<String>>,
    /// `1`, or `i` when the top monomial was rescaled to make the volume real.
    pub volume_scale: Option<String>,
    /// `<vol*, vol>`.
    pub volume_norm: Option<String>,
    pub graph_components: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct KnValues {
    pub unknot: i64,
    pub trefoil_right: i64,
    pub trefoil_left: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub group: GroupInfo,
    pub calculus: CalculusInfo,
    /// Form dimensions per degree, up to the last built level.
    pub dims: Vec<usize>,
    /// Betti numbers for every degree whose outgoing `d` is known.
    pub betti: Vec<usize>,
    pub kn: Option<KnValues>,
    pub epsilon_stats: Option<EpsilonStats>,
    pub checks: BTreeMap<String, Check>,
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, c)| c.status == Status::Fail).map(|(k, _)| k.as_str()).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    /// A compact table in the layout `order / ♯ / b_k`, followed by the checks.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let c = &self.calculus;
        writeln!(s, "group {} (order {}, |ad| = {})", self.group.name, self.group.order, self.group.ad_size).unwrap();
        writeln!(s, "calculus {{{}}}  m = {}  braiding order {}", c.generators.join(","), c.m, c.braiding_order).unwrap();
        let width = self.dims.iter().chain(&self.betti).map(|x| x.to_string().len()).max().unwrap_or(1).max(2);
        let row = |name: &str, xs: Vec<String>| {
            let cells: Vec<String> = xs.iter().map(|x| format!("{x:>width$}")).collect();
            format!("  {name:<6}{}\n", cells.join(" "))
        };
        s.push_str(&row("order", (0..self.dims.len()).map(|k| k.to_string()).collect()));
        s.push_str(&row("forms", self.dims.iter().map(usize::to_string).collect()));
        s.push_str(&row("b_k", self.betti.iter().map(usize::to_string).collect()));
        match (&c.stop, c.top_degree) {
            (_, Some(p)) => writeln!(s, "  top degree {p}").unwrap(),
            (Stop::DegreeCap, None) => writeln!(s, "  stopped at the degree cap").unwrap(),
            (Stop::Budget { degree, .. }, None) => writeln!(s, "  stopped before degree {degree} (term budget)").unwrap(),
            (Stop::Vanished, None) => writeln!(s, "  no one-dimensional top level").unwrap(),
        }
        if let Some(kn) = &self.kn {
            writeln!(s, "KN  unknot {}  trefoil {} (left {})", kn.unknot, kn.trefoil_right, kn.trefoil_left).unwrap();
        }
        if let Some(e) = &self.epsilon_stats {
            let vals: Vec<String> = e.values.iter().map(|(v, n)| format!("{v}: {n}")).collect();
            writeln!(s, "epsilon  {} nonzero ({})", e.nonzero, vals.join(", ")).unwrap();
        }
        if let Some(n) = &c.volume_norm {
            writeln!(s, "volume norm {n}").unwrap();
        }
        s.push_str("checks\n");
        for (name, chk) in &self.checks {
            let tag = match chk.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
                Status::Reported => "info",
            };
            if chk.detail.is_empty() {
                writeln!(s, "  {tag}  {name}").unwrap();
            } else {
                writeln!(s, "  {tag}  {name}: {}", chk.detail).unwrap();
            }
        }
        if let Some(ms) = self.timing_ms {
            writeln!(s, "time {ms} ms").unwrap();
        }
        s
    }
}

/// Runs the whole pipeline on one calculus.
pub fn analyze(group_name: &str, c: &Calculus, opts: &RunOptions) -> Result<Report> {
    let start = Instant::now();
    let g = c.group();
    let br = c.braiding();
    let mut checks = BTreeMap::new();
    let mut put = |name: &str, chk: Check| {
        checks.insert(name.to_string(), chk);
    };

    put("braiding_inverse", Check::verdict(br.inverse_ok(), ""));
    put("yang_baxter", Check::verdict(br.yang_baxter(), ""));
    let bound = 2 * g.ad_group_size();
    put(
        "braiding_order_bound",
        Check::verdict(br.order() <= bound, format!("s = {}, 2|ad| = {bound}", br.order())),
    );
    put("p0_exact", Check::verdict(p0_identities(&br)?, ""));
    let (sum_err, orth_err) = projector_errors(&br);
    put(
        "projectors_float",
        if sum_err.is_nan() {
            Check::skipped("too large for dense products")
        } else {
            Check::verdict(sum_err <= 1e-9 && orth_err <= 1e-9, format!("sum {sum_err:.1e}, products {orth_err:.1e}"))
        },
    );

    let graph = ManifoldGraph::new(c);
    let star_closed = c.is_star_closed();
    let kn = if star_closed {
        let r = knots::reidemeister_check(c)?;
        let failed: Vec<&str> = [
            ("move1", r.move1),
            ("move2", r.move2),
            ("yang_baxter", r.yang_baxter),
            ("metric_braiding", r.metric_braiding),
        ]
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect();
        put("reidemeister", Check::verdict(r.ok(), failed.join(", ")));
        let kn = KnValues {
            unknot: knots::kn_unknot(c)?,
            trefoil_right: knots::kn_trefoil(c, Chirality::Right)?,
            trefoil_left: knots::kn_trefoil(c, Chirality::Left)?,
        };
        put("kn_unknot_is_m", Check::verdict(kn.unknot == c.m() as i64, ""));
        let wr = knots::evaluate_braid(c, &BraidWord::trefoil(Chirality::Right))?;
        let wl = knots::evaluate_braid(c, &BraidWord::trefoil(Chirality::Left))?;
        put(
            "kn_braid_closure",
            Check::verdict(wr == kn.trefoil_right && wl == kn.trefoil_left, format!("closed braid {wr}, left {wl}")),
        );
        Some(kn)
    } else {
        put("reidemeister", Check::skipped("not star-closed"));
        None
    };

    let tower = FormTower::build(c, opts.tower);
    let complex = DeRhamComplex::new(&tower)?;
    let betti = complex.betti();
    put("right_constants", Check::verdict(tower.right_constants_consistent(), ""));
    put("d_squared_zero", Check::verdict(complex.d_squared_vanishes()?, ""));
    put("d_routes_agree", Check::verdict(d_routes_agree(&tower, &complex)?, ""));
    put(
        "b0_graph_components",
        Check::verdict(betti.first().map_or(true, |&b| b == graph.components()), format!("{} components", graph.components())),
    );

    let mut epsilon_stats = None;
    let mut volume = None;
    let mut volume_scale = None;
    let mut volume_norm = None;
    if let Some(p) = tower.top_degree() {
        let vp = tower.volume_properties()?;
        put(
            "volume_centrality",
            Check::verdict(
                vp.central_by_product == vp.central_by_commutation,
                if vp.central_by_product { "central" } else { "not central" },
            ),
        );
        put("volume_biinvariant", volume_biinvariance(c, &vp));
        volume = Some(tower.vol()?.iter().map(|&i| c.gen_label(i).to_string()).collect());
        volume_scale = Some(tower.vol_scale().to_string());
        epsilon_stats = Some(tower.epsilon_stats()?);
        put("euler_characteristic", {
            let chi: i64 = betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
            Check::verdict(chi == 0, format!("{chi}"))
        });
        put("poincare_duality", Check::verdict(derham::poincare_check(&betti), ""));
        put("integration_by_parts", Check::verdict(derham::integration_by_parts_check(&tower, &complex)?, ""));
        if star_closed {
            volume_norm = Some(metric_hodge::norm(&tower, p, &SparseVec::unit(0))?.to_string());
            hodge_checks(&tower, &complex, &betti, &mut put)?;
        } else {
            for name in ["gram_positive_definite", "hodge_dual", "harmonic_equals_betti", "hodge_decomposition", "adjointness"] {
                put(name, Check::skipped("not star-closed"));
            }
        }
    } else {
        let why = match tower.p() {
            Err(e) => e.to_string(),
            Ok(_) => unreachable!("incomplete tower"),
        };
        for name in ["poincare_duality", "hodge_dual", "harmonic_equals_betti"] {
            put(name, Check::skipped(why.clone()));
        }
    }

    let dims = tower.form_dims();
    let report = Report {
        group: GroupInfo {
            name: group_name.to_string(),
            order: g.order(),
            ad_size: g.ad_group_size(),
            classes: g.classes().iter().map(|cl| cl.iter().map(|&x| g.label(x).to_string()).collect()).collect(),
        },
        calculus: CalculusInfo {
            classes: c.class_names(),
            generators: (0..c.m()).map(|i| c.gen_label(i).to_string()).collect(),
            m: c.m(),
            star_closed,
            braiding_order: br.order(),
            complete: tower.is_complete(),
            stop: tower.stop().clone(),
            top_degree: tower.top_degree(),
            volume,
            volume_scale,
            volume_norm,
            graph_components: graph.components(),
        },
        dims,
        betti,
        kn,
        epsilon_stats,
        checks,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    };
    Ok(report)
}

/// Right invariance of `vol` holds only up to sign on some calculi: when `ad(h)`
/// permutes the volume's labels oddly, `ℛ_h vol = −vol`. That is reported, not failed.
fn volume_biinvariance(c: &Calculus, vp: &crate::exterior::VolumeProperties) -> Check {
    if vp.biinvariant {
        return Check::verdict(true, "");
    }
    let flipped: Vec<&str> = vp
        .right_coefficients
        .iter()
        .enumerate()
        .filter(|(_, k)| **k != rat(1))
        .map(|(h, _)| c.group().label(h))
        .collect();
    if vp.right_coefficients.iter().all(|k| *k == rat(1) || *k == rat(-1)) {
        Check::reported(format!("R_h vol = -vol for h in {{{}}}", flipped.join(",")))
    } else {
        Check::verdict(false, format!("R_h vol not a sign for h in {{{}}}", flipped.join(",")))
    }
}

fn hodge_checks(
    tower: &FormTower,
    complex: &DeRhamComplex,
    betti: &[usize],
    put: &mut impl FnMut(&str, Check),
) -> Result<()> {
    let theory = match HodgeTheory::new(tower, complex) {
        Ok(t) => {
            put("gram_positive_definite", Check::verdict(true, ""));
            Some(t)
        }
        Err(Error::GramNotPositiveDefinite { degree, minor }) => {
            put("gram_positive_definite", Check::verdict(false, format!("degree {degree}, leading minor {minor}")));
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(th) = &theory {
        let harm = th.harmonic_dims();
        put("harmonic_equals_betti", Check::verdict(harm == betti, format!("{harm:?}")));
        let mut bad = Vec::new();
        for k in 0..harm.len() {
            if !th.decomposition(complex, k)?.ok() {
                bad.push(k.to_string());
            }
        }
        put("hodge_decomposition", Check::verdict(bad.is_empty(), bad.join(",")));
        put("adjointness", Check::verdict(adjoint_identity(complex, th)?, ""));
    }

    match metric_hodge::hodge(tower) {
        Ok(h) => {
            put("hodge_dual", Check::verdict(true, format!("scale {}", h.scale)));
            if let Some(th) = &theory {
                let signs = derham::lemma1_signs(tower, complex, th, &h)?;
                let text: Vec<String> = signs.iter().map(|s| s.map_or("none".into(), |x| x.to_string())).collect();
                put("lemma1", Check::verdict(derham::lemma1_check(tower, complex, th, &h)?, text.join(",")));
            }
            let fits = metric_hodge::check_conjecture1(tower, &h)?;
            let text: Vec<String> = fits
                .iter()
                .map(|f| match &f.constant_squared {
                    Some(c2) if f.consistent => format!("{}: {}", f.k, c2),
                    _ => format!("{}: no fit", f.k),
                })
                .collect();
            put("conjecture1_constant_squared", Check::reported(text.join("; ")));
            let inv = metric_hodge::check_conjecture2(&h)?;
            let text: Vec<String> = inv.scalars.iter().map(|s| s.as_ref().map_or("not scalar".into(), Scalar::to_string)).collect();
            let global = match &inv.normalization {
                Some((c, _)) => format!("global normalization {c}"),
                None => "no global normalization".into(),
            };
            put("conjecture2_double_dual", Check::reported(format!("{}; {global}", text.join(", "))));
        }
        Err(Error::NonCentralVolume) => put("hodge_dual", Check::skipped("volume form is not central")),
        Err(e @ (Error::SingularHodgeSystem(_) | Error::DimensionAsymmetry { .. })) => {
            put("hodge_dual", Check::reported(e.to_string()))
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

/// `G_k δ_{k+1} = d_k† G_{k+1}` at every degree, i.e. `⟨⟨dα, β⟩⟩ = ⟨⟨α, δβ⟩⟩` for all pairs.
fn adjoint_identity(complex: &DeRhamComplex, th: &HodgeTheory) -> Result<bool> {
    for k in 0..th.delta.len() - 1 {
        let lhs = th.gram[k].mul(&th.delta[k + 1])?;
        let rhs = complex.d[k].conjugate_transpose().mul(&th.gram[k + 1])?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The matrix `d`, the commutator with `η`, and the Leibniz/Cartan–Maurer
/// route agree on every basis form `x^g Θ^I` of every built degree.
pub fn d_routes_agree(tower: &FormTower, complex: &DeRhamComplex) -> Result<bool> {
    let n = tower.n();
    for (k, m) in complex.d.iter().enumerate() {
        for idx in 0..tower.level(k)?.dim() {
            for x in 0..n {
                let f = Form::basis(tower, k, idx, x)?;
                let a = derham::d(tower, &f)?;
                let b = derham::d_leibniz(tower, &f)?;
                if a != b || a.to_sparse() != m.column(idx * n + x) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `P₀(1 − Λ) = 0`, `P₀Λ = P₀`, `P₀² = P₀` and `𝒜² = 𝒜`, exactly.
pub fn p0_identities(br: &Braiding) -> Result<bool> {
    let p0 = br.p0();
    let lam = br.matrix();
    let id = ExactMatrix::identity(lam.rows());
    let a = br.two_form_projector();
    Ok(p0.mul(&id.sub(&lam)?)?.is_zero() && p0.mul(&lam)? == p0 && p0.mul(&p0)? == p0 && a.mul(&a)? == a)
}

/// Largest entry errors of `Σ P_i − id` and of `P_i P_j − δ_ij P_i`; `NaN` when
/// the dense products would be too expensive.
pub fn projector_errors(br: &Braiding) -> (f64, f64) {
    let d = br.perm().len();
    let s = br.order();
    if (d * d * d * s * s) as f64 > 2e9 {
        return (f64::NAN, f64::NAN);
    }
    let ps = br.projectors_f64();
    let mut sum_err: f64 = 0.0;
    for r in 0..d {
        for c in 0..d {
            let total: Complex64 = ps.iter().map(|p| p[r][c]).sum();
            let want = if r == c { 1.0 } else { 0.0 };
            sum_err = sum_err.max((total - want).norm());
        }
    }
    let mut orth_err: f64 = 0.0;
    for (i, a) in ps.iter().enumerate() {
        for (j, b) in ps.iter().enumerate() {
            for r in 0..d {
                for c in 0..d {
                    let v: Complex64 = (0..d).map(|t| a[r][t] * b[t][c]).sum();
                    let want = if i == j { a[r][c] } else { Complex64::new(0.0, 0.0) };
                    orth_err = orth_err.max((v - want).norm());
                }
            }
        }
    }
    (sum_err, orth_err)
}
