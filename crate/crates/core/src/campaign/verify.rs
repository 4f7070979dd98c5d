//! One verifier per theorem. A verifier evaluates the hypotheses on the
//! instance, and only when all of them hold does it evaluate conclusions.

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::rnc::{self, LocalizeOutcome, DEFAULT_RHO_BUDGET};
use crate::scheme::{self, Configuration};
use crate::secant;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// `reg <= ceil((d - n - 1) / t) + 2`, with equality to the on-curve
    /// value for points on a rational normal curve.
    Bound,
    /// Unique regularity-preserving `t`-plane.
    Main1,
    /// Unique regularity-preserving rational normal curve.
    Main2,
    /// Plane then curve.
    Main3,
    /// Maximal regularity versus curve incidence.
    Corollary,
    /// Extra points, curve share sufficiency and the `h^1` characterization.
    Section5,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Bound,
        TheoremId::Main1,
        TheoremId::Main2,
        TheoremId::Main3,
        TheoremId::Corollary,
        TheoremId::Section5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Bound => "bound",
            TheoremId::Main1 => "main1",
            TheoremId::Main2 => "main2",
            TheoremId::Main3 => "main3",
            TheoremId::Corollary => "corollary",
            TheoremId::Section5 => "section5",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        TheoremId::ALL.into_iter().find(|t| t.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub name: String,
    pub holds: bool,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Passed,
    NotApplicable,
    /// Hypotheses hold but a search ran out of budget before every
    /// conclusion was decided; nothing evaluated so far failed.
    Inconclusive,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub status: VerdictStatus,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusions: Vec<Conclusion>,
    /// True exactly when every hypothesis holds and some conclusion fails.
    pub counterexample: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Only filled in when timings are requested, so reports stay
    /// reproducible by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl TheoremVerdict {
    pub fn applicable(&self) -> bool {
        self.hypotheses.iter().all(|h| h.satisfied)
    }

    pub fn conclusion(&self, name: &str) -> Option<&Conclusion> {
        self.conclusions.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Curves constructed per curve search.
    pub rho_budget: u64,
    /// Subsets tried per localization step.
    pub localize_budget: u64,
    /// For the extra-points theorem: the last `k` points are the extra set.
    /// `None` splits by the curve through the first `n + 3` points.
    pub extra_points: Option<usize>,
    pub record_timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            rho_budget: DEFAULT_RHO_BUDGET,
            localize_budget: 100_000,
            extra_points: None,
            record_timings: false,
        }
    }
}

struct Builder {
    v: TheoremVerdict,
}

impl Builder {
    fn hyp(&mut self, name: &str, satisfied: bool, detail: String) -> bool {
        self.v.hypotheses.push(Hypothesis {
            name: name.into(),
            satisfied,
            detail,
        });
        satisfied
    }

    fn check(&mut self, name: &str, holds: bool, witness: String) {
        self.v.conclusions.push(Conclusion {
            name: name.into(),
            holds,
            witness,
        });
    }
}

fn run(id: TheoremId, opts: &VerifyOptions, body: impl FnOnce(&mut Builder) -> Result<()>) -> TheoremVerdict {
    let start = opts.record_timings.then(std::time::Instant::now);
    let mut b = Builder {
        v: TheoremVerdict {
            theorem: id,
            status: VerdictStatus::NotApplicable,
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            counterexample: false,
            note: None,
            elapsed_ms: None,
        },
    };
    if let Err(e) = body(&mut b) {
        b.v.note = Some(e.to_string());
    }
    let mut v = b.v;
    let applicable = v.applicable();
    v.counterexample = applicable && v.conclusions.iter().any(|c| !c.holds);
    v.status = if v.counterexample {
        VerdictStatus::Counterexample
    } else if !applicable {
        VerdictStatus::NotApplicable
    } else if v.note.is_some() || v.conclusions.is_empty() {
        VerdictStatus::Inconclusive
    } else {
        VerdictStatus::Passed
    };
    v.elapsed_ms = start.map(|s| s.elapsed().as_millis() as u64);
    v
}

fn nondegenerate(b: &mut Builder, g: &Configuration) -> bool {
    let n = g.ambient_dim();
    let dim = g.span_dim();
    let detail = match dim {
        Some(k) => format!("the points span a {k}-plane of P^{n}"),
        None => "no points".into(),
    };
    b.hyp("nondegenerate", dim == Some(n), detail)
}

fn lgp(b: &mut Builder, g: &Configuration) -> bool {
    let ok = secant::is_lgp(g);
    b.hyp(
        "linearly general position",
        ok,
        if ok { "every n+1 points independent" } else { "some n+1 points dependent" }.into(),
    )
}

fn curve_degree(b: &mut Builder, d: usize, n: usize, what: &str) -> bool {
    let need = bounds::curve_degree_threshold(n);
    b.hyp(
        &format!("{what} >= 4n^2+6n+1"),
        d >= need,
        format!("{what} = {d}, threshold {need} for n = {n}"),
    )
}

fn at_least_plane(b: &mut Builder, n: usize) -> bool {
    b.hyp("n >= 2", n >= 2, format!("n = {n}"))
}

fn indices(v: &[usize]) -> String {
    format!("{v:?}")
}

/// `reg <= ceil((d - n - 1) / t) + 2`; for points in general position on a
/// rational normal curve also `reg = ceil((d - 1) / n) + 1`.
pub fn verify_regularity_bound(g: &Configuration, opts: &VerifyOptions) -> TheoremVerdict {
    run(TheoremId::Bound, opts, |b| {
        if !nondegenerate(b, g) {
            return Ok(());
        }
        let (n, d) = (g.ambient_dim(), g.degree());
        let t = secant::t_invariant(g)?.t;
        let reg = scheme::regularity(g);
        let bound = bounds::regularity_upper_bound(d, n, t);
        b.check(
            "reg <= ceil((d-n-1)/t)+2",
            reg as i64 <= bound,
            format!("reg = {reg}, t = {t}, bound = {bound}"),
        );
        if t == n {
            // At most n + 2 points in general position always lie on a curve.
            let on_curve = d < n + 3 || rnc::lies_on_rnc(g).is_some();
            if on_curve {
                let expected = bounds::on_curve_regularity(d, n);
                b.check(
                    "on-curve reg = ceil((d-1)/n)+1",
                    reg as i64 == expected,
                    format!("reg = {reg}, expected {expected}"),
                );
            }
        }
        Ok(())
    })
}

/// Unique regularity-preserving `t(Γ)`-plane, plus the hyperplane condition,
/// when the regularity lies in the window for `t(Γ) <= n - 1`.
pub fn verify_main1(g: &Configuration, opts: &VerifyOptions) -> TheoremVerdict {
    run(TheoremId::Main1, opts, |b| {
        if !nondegenerate(b, g) {
            return Ok(());
        }
        let (n, d) = (g.ambient_dim(), g.degree());
        let t = secant::t_invariant(g)?.t;
        if !b.hyp("t <= n-1", t < n, format!("t = {t}, n = {n}")) {
            return Ok(());
        }
        let reg = scheme::regularity(g);
        let lo = bounds::window_lower(d, n, t);
        let hi = bounds::regularity_upper_bound(d, n, t);
        if !b.hyp(
            "window",
            bounds::in_window(reg, d, n, t),
            format!("reg = {reg}, window [{lo}, {hi}]"),
        ) {
            return Ok(());
        }
        let ws = secant::find_reg_preserving_subspaces(g, t)?;
        let sections: Vec<String> = ws.iter().map(|w| indices(&w.section_indices)).collect();
        b.check(
            "unique regularity-preserving t-plane",
            ws.len() == 1,
            format!("{} plane(s), sections {}", ws.len(), sections.join(" ")),
        );
        if let Some(w) = ws.first() {
            b.check(
                "section nondegenerate in the plane",
                w.nondegenerate_in_subspace,
                indices(&w.section_indices),
            );
            b.check("section in linearly general position in the plane", w.lgp_in_subspace, String::new());
            b.check(
                "section regularity equals reg",
                w.section_reg == reg,
                format!("section reg = {}", w.section_reg),
            );
        }
        let hyperplanes = if t == n - 1 {
            ws
        } else {
            secant::find_reg_preserving_subspaces(g, n - 1)?
        };
        let good = hyperplanes.iter().find(|w| w.nondegenerate_in_subspace);
        b.check(
            "regularity-preserving hyperplane with nondegenerate section",
            good.is_some(),
            good.map(|w| indices(&w.section_indices)).unwrap_or_default(),
        );
        Ok(())
    })
}

/// Unique regularity-preserving curve carrying the maximal incidence, with
/// the incidence bound and the quadric localization chain.
pub fn verify_main2(g: &Configuration, opts: &VerifyOptions) -> TheoremVerdict {
    run(TheoremId::Main2, opts, |b| {
        let (n, d) = (g.ambient_dim(), g.degree());
        if !at_least_plane(b, n) || !lgp(b, g) || !curve_degree(b, d, n, "d") {
            return Ok(());
        }
        let reg = scheme::regularity(g);
        let need = bounds::curve_regularity_threshold(d, n);
        if !b.hyp(
            "reg >= ceil((d-1)/(n+n/(2n+2)))+3",
            reg as i64 >= need,
            format!("reg = {reg}, threshold {need}"),
        ) {
            return Ok(());
        }
        let m = bounds::regularity_drop(d, n, reg);
        let floor = bounds::incidence_floor(d, n, reg);
        let best = rnc::rho(g, opts.rho_budget)?;
        b.check(
            "rho > d-(m+1)n",
            best.rho as i64 > floor,
            format!("rho = {}, m = {m}, d-(m+1)n = {floor}", best.rho),
        );
        let preserving = rnc::find_reg_preserving_rnc(g, opts.rho_budget)?;
        b.check(
            "unique regularity-preserving curve",
            preserving.len() == 1,
            format!(
                "{} curve(s): {}",
                preserving.len(),
                preserving.iter().map(|(_, inc)| indices(inc)).collect::<Vec<_>>().join(" ")
            ),
        );
        let Some((_, on)) = preserving.first() else {
            return Ok(());
        };
        b.check(
            "rho = |Γ∩C|",
            on.len() == best.rho,
            format!("|Γ∩C| = {}, rho = {}", on.len(), best.rho),
        );
        let chain = rnc::rnc_localize(g, opts.localize_budget)?;
        match &chain.outcome {
            LocalizeOutcome::OnCurve { indices: kept, .. } => {
                let steps = chain.steps.len() as i64;
                let limit = m * n as i64 + n as i64 - 1;
                b.check(
                    "quadric chain reaches a curve within mn+n-1 steps",
                    steps <= limit,
                    format!("{steps} step(s), limit {limit}"),
                );
                let inside = kept.iter().all(|i| on.binary_search(i).is_ok());
                b.check(
                    "quadric chain ends on the preserving curve",
                    preserving.len() == 1 && inside,
                    format!("{} point(s) kept", kept.len()),
                );
            }
            LocalizeOutcome::Failed { reason } => {
                b.check("quadric chain reaches a curve within mn+n-1 steps", false, reason.clone());
            }
        }
        Ok(())
    })
}

/// Plane then curve, under the strict composed window.
///
/// The curve step needs the degree condition of the curve theorem for the
/// section, which is checked as an explicit hypothesis; a plane of
/// dimension one is its own curve and needs no such step.
pub fn verify_main3(g: &Configuration, opts: &VerifyOptions) -> TheoremVerdict {
    run(TheoremId::Main3, opts, |b| {
        if !nondegenerate(b, g) {
            return Ok(());
        }
        let (n, d) = (g.ambient_dim(), g.degree());
        let t = secant::t_invariant(g)?.t;
        let reg = scheme::regularity(g);
        let lo = bounds::composed_lower(d, t);
        let hi = bounds::regularity_upper_bound(d, n, t);
        if !b.hyp(
            "composed window",
            lo < reg as i64 && reg as i64 <= hi,
            format!("t = {t}, reg = {reg}, need {lo} < reg <= {hi}"),
        ) {
            return Ok(());
        }
        let section = if t == n {
            g.clone()
        } else {
            let ws = secant::find_reg_preserving_subspaces(g, t)?;
            if ws.len() != 1 {
                b.check(
                    "unique regularity-preserving t-plane",
                    false,
                    format!("{} plane(s)", ws.len()),
                );
                return Ok(());
            }
            let w = &ws[0];
            let local = secant::section_in_subspace(&w.subspace, &w.section)?;
            if t >= 2 && !curve_degree(b, local.degree(), t, "section degree") {
                return Ok(());
            }
            b.check("unique regularity-preserving t-plane", true, indices(&w.section_indices));
            local
        };
        if t == 1 {
            b.check(
                "section regularity equals reg",
                scheme::regularity(&section) == reg,
                "the line is its own curve".into(),
            );
            return Ok(());
        }
        if t == n && !curve_degree(b, d, n, "d") {
            return Ok(());
        }
        let preserving = rnc::find_reg_preserving_rnc(&section, opts.rho_budget)?;
        b.check(
            "unique regularity-preserving curve in the plane",
            preserving.len() == 1,
            format!("{} curve(s)", preserving.len()),
        );
        Ok(())
    })
}

/// `reg` maximal exactly when `rho >= d - r`; for `r = 0` maximal
/// regularity puts every point on one curve.
pub fn verify_corollary(g: &Configuration, opts: &VerifyOptions) -> TheoremVerdict {
    run(TheoremId::Corollary, opts, |b| {
        let (n, d) = (g.ambient_dim(), g.degree());
        if !at_least_plane(b, n) || !lgp(b, g) || !curve_degree(b, d, n, "d") {
            return Ok(());
        }
        let (q, r) = bounds::decompose(d, n);
        let reg = scheme::regularity(g);
        let max = bounds::on_curve_regularity(d, n);
        let best = rnc::rho(g, opts.rho_budget)?;
        let maximal = reg as i64 == max;
        let rich = best.rho + r >= d;
        b.check(
            "reg maximal iff rho >= d-r",
            maximal == rich,
            format!("q = {q}, r = {r}, reg = {reg}, max = {max}, rho = {}, d-r = {}", best.rho, d - r),
        );
        if r == 0 && maximal {
            b.check(
                "r = 0 and maximal reg puts every point on a curve",
                best.rho == d,
                format!("rho = {}", best.rho),
            );
        }
        Ok(())
    })
}

/// Adding points off a curve, the curve-share criterion on the union, and
/// the `h^1(q)` characterization with `d + |A| = nq + r + 2`.
pub fn verify_section5(on_curve: &Configuration, extra: &Configuration, opts: &VerifyOptions) -> TheoremVerdict {
    run(TheoremId::Section5, opts, |b| {
        let n = on_curve.ambient_dim();
        if !b.hyp(
            "same ambient space",
            extra.ambient_dim() == n,
            format!("P^{n} and P^{}", extra.ambient_dim()),
        ) || !at_least_plane(b, n)
        {
            return Ok(());
        }
        let (d, k) = (on_curve.degree(), extra.degree());
        let curve = rnc::lies_on_rnc(on_curve);
        if !b.hyp(
            "base points on a rational normal curve",
            curve.is_some(),
            format!("{d} base point(s)"),
        ) {
            return Ok(());
        }
        let curve = curve.expect("checked");
        let on = extra.points().iter().filter(|p| curve.contains(p)).count();
        if !b.hyp("extra points off the curve", on == 0, format!("{on} of {k} on the curve")) {
            return Ok(());
        }
        let union = on_curve.union(extra)?;
        if !lgp(b, &union) || !curve_degree(b, d + k, n, "d+|A|") {
            return Ok(());
        }
        let reg_base = scheme::regularity(on_curve);
        let reg_union = scheme::regularity(&union);
        let formula = bounds::on_curve_regularity(d, n);
        let need = bounds::outlier_degree_threshold(n, k);
        if d >= need {
            b.check(
                "adding the extra points keeps reg = ceil((d-1)/n)+1",
                reg_union == reg_base && reg_base as i64 == formula,
                format!("reg(Γ∪A) = {reg_union}, reg(Γ) = {reg_base}, formula {formula}, d = {d} >= {need}"),
            );
        }
        if bounds::curve_share_sufficient(d + k, n, d) {
            b.check(
                "curve section of the union keeps the regularity",
                reg_base == reg_union,
                format!("reg(Γ∪A) = {reg_union}, reg(Γ∪A ∩ C) = {reg_base}"),
            );
        }
        let (q, r) = bounds::decompose(d + k, n);
        let h = scheme::h1(&union, q as u32);
        b.check("h1(q) <= r+1", h <= r + 1, format!("q = {q}, r = {r}, h1 = {h}"));
        let union_on_curve = rnc::lies_on_rnc(&union).is_some();
        b.check(
            "h1(q) = r+1 iff the union lies on a curve",
            (h == r + 1) == union_on_curve,
            format!("h1 = {h}, r+1 = {}, on a curve: {union_on_curve}", r + 1),
        );
        Ok(())
    })
}

/// Splits a configuration for [`verify_section5`]: the last `extra` points
/// form `A`, or with `None` the points off the curve through the first
/// `n + 3` points do.
pub fn split_extra(g: &Configuration, extra: Option<usize>) -> Result<(Configuration, Configuration)> {
    let d = g.degree();
    let n = g.ambient_dim();
    let (base, rest): (Vec<usize>, Vec<usize>) = match extra {
        Some(k) => {
            if k > d {
                return Err(Error::OutOfRange(format!("{k} extra points out of {d}")));
            }
            ((0..d - k).collect(), (d - k..d).collect())
        }
        None => {
            let curve = (d >= n + 3)
                .then(|| rnc::rnc_through(&g.points()[..n + 3]).ok())
                .flatten();
            match curve {
                Some(c) => (0..d).partition(|&i| c.contains(&g.points()[i])),
                None => ((0..d).collect(), Vec::new()),
            }
        }
    };
    Ok((g.subset(&base), g.subset(&rest)))
}

/// Runs one verifier on one configuration.
pub fn verify(id: TheoremId, g: &Configuration, opts: &VerifyOptions) -> TheoremVerdict {
    match id {
        TheoremId::Bound => verify_regularity_bound(g, opts),
        TheoremId::Main1 => verify_main1(g, opts),
        TheoremId::Main2 => verify_main2(g, opts),
        TheoremId::Main3 => verify_main3(g, opts),
        TheoremId::Corollary => verify_corollary(g, opts),
        TheoremId::Section5 => match split_extra(g, opts.extra_points) {
            Ok((on, extra)) => verify_section5(&on, &extra, opts),
            Err(e) => run(id, opts, |_| Err(e)),
        },
    }
}
