//! Shannon-capacity estimation and assembled bound reports.
//!
//! `capacity_lower` takes k-th roots of independence numbers of strong
//! powers; `haemers_upper` funnels cover-derived subspace representations
//! and user certificates through exact re-verification; `bounds_report`
//! gathers everything and recomputes the sandwich-chain inequalities, which
//! are theorems: a violation beyond tolerance is a hard error, never data.

pub mod suites;
pub mod theta;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{
    alpha_exact, chifrac, clique_cover_exact, dr_cover_from_fractional, Graph,
    DEFAULT_ALPHA_BUDGET,
};
use crate::graphs::cliques::DEFAULT_CLIQUE_BUDGET;
use crate::inertia::{inertia_bound, optimize_weights, OptimizeConfig, WeightedAdjacency};
use crate::reps::certfile::{AnyFitting, AnySubspaceRep};
use crate::reps::{cover_to_rep, verify_subspace_rep, Verdict};
use crate::Rat;

pub use theta::{theta, ThetaResult, THETA_GAP_TOL};

/// Floating comparisons in reports run at this absolute tolerance.
pub const REPORT_TOL: f64 = 1e-4;

#[derive(Clone, Debug)]
pub struct PowerAlpha {
    pub k: u32,
    pub vertices: usize,
    pub alpha: Option<usize>,
    pub root: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct CapacityLower {
    pub best: f64,
    pub best_k: u32,
    pub powers: Vec<PowerAlpha>,
    /// False when some power exceeded the α budget; the result then covers
    /// the completed powers only.
    pub complete: bool,
}

/// Best k-th root of α(G^⊠k) over k ≤ k_max. Monotone in k_max.
pub fn capacity_lower(g: &Graph, k_max: u32, alpha_budget: usize) -> Result<CapacityLower> {
    if k_max == 0 {
        return Err(Error::Param("capacity_lower needs k_max >= 1".into()));
    }
    if g.n() == 0 {
        return Ok(CapacityLower {
            best: 0.0,
            best_k: 1,
            powers: vec![PowerAlpha { k: 1, vertices: 0, alpha: Some(0), root: Some(0.0) }],
            complete: true,
        });
    }
    let mut powers = Vec::new();
    let mut best = 0.0f64;
    let mut best_k = 1;
    let mut complete = true;
    let mut power_graph = g.clone();
    for k in 1..=k_max {
        if k > 1 {
            // Don't build a power we cannot solve anyway.
            if power_graph.n().saturating_mul(g.n()) > alpha_budget {
                powers.push(PowerAlpha {
                    k,
                    vertices: power_graph.n().saturating_mul(g.n()),
                    alpha: None,
                    root: None,
                });
                complete = false;
                break;
            }
            power_graph = power_graph.strong_product(g);
        }
        match alpha_exact(&power_graph, alpha_budget) {
            Ok((a, _)) => {
                let root = (a as f64).powf(1.0 / k as f64);
                if root > best {
                    best = root;
                    best_k = k;
                }
                powers.push(PowerAlpha {
                    k,
                    vertices: power_graph.n(),
                    alpha: Some(a),
                    root: Some(root),
                });
            }
            Err(Error::Budget { .. }) => {
                powers.push(PowerAlpha { k, vertices: power_graph.n(), alpha: None, root: None });
                complete = false;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CapacityLower { best, best_k, powers, complete })
}

/// User-supplied certificate for the Haemers-upper pipeline.
#[derive(Clone, Debug)]
pub enum HaemersCert {
    Subspace(AnySubspaceRep),
    Fitting(AnyFitting),
}

#[derive(Clone, Debug)]
pub struct HaemersCertReport {
    pub index: usize,
    pub accepted: bool,
    pub value: Option<Rat>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct HaemersUpper {
    pub value: Rat,
    /// Cover-derived contribution (equals the fractional clique cover
    /// number); always present.
    pub cover_value: Rat,
    pub cert_reports: Vec<HaemersCertReport>,
}

/// Min over the cover-derived representation value and every verified user
/// certificate; invalid certificates are excluded with a reason.
pub fn haemers_upper(
    g: &Graph,
    user_certs: &[HaemersCert],
    clique_budget: usize,
) -> Result<HaemersUpper> {
    if g.n() == 0 {
        return Ok(HaemersUpper {
            value: Rat::from_integer(0.into()),
            cover_value: Rat::from_integer(0.into()),
            cert_reports: vec![],
        });
    }
    let (cover_value, cover) = chifrac(g, clique_budget)?;
    let dr = dr_cover_from_fractional(g, &cover)?;
    let rep = cover_to_rep(g, &dr)?;
    let rep_value = match verify_subspace_rep(g, &rep)? {
        Verdict::Accept(v) => v,
        Verdict::Reject { reason } => {
            return Err(Error::Numeric(format!(
                "internal: cover-derived representation rejected: {reason}"
            )));
        }
    };
    debug_assert_eq!(rep_value, cover_value);
    let mut best = rep_value;
    let mut cert_reports = Vec::new();
    for (index, cert) in user_certs.iter().enumerate() {
        let report = match cert {
            HaemersCert::Subspace(rep) => match rep.verify(g) {
                Ok(Verdict::Accept(value)) => HaemersCertReport {
                    index,
                    accepted: true,
                    value: Some(value),
                    detail: "subspace representation verified".into(),
                },
                Ok(Verdict::Reject { reason }) => {
                    HaemersCertReport { index, accepted: false, value: None, detail: reason }
                }
                Err(e) => HaemersCertReport {
                    index,
                    accepted: false,
                    value: None,
                    detail: e.to_string(),
                },
            },
            HaemersCert::Fitting(fit) => match fit.verify(g) {
                Ok(Verdict::Accept(rank)) => HaemersCertReport {
                    index,
                    accepted: true,
                    value: Some(Rat::from_integer((rank as i64).into())),
                    detail: "fitting matrix verified".into(),
                },
                Ok(Verdict::Reject { reason }) => {
                    HaemersCertReport { index, accepted: false, value: None, detail: reason }
                }
                Err(e) => HaemersCertReport {
                    index,
                    accepted: false,
                    value: None,
                    detail: e.to_string(),
                },
            },
        };
        if let (true, Some(v)) = (report.accepted, &report.value) {
            if *v < best {
                best = v.clone();
            }
        }
        cert_reports.push(report);
    }
    Ok(HaemersUpper { value: best, cover_value, cert_reports })
}

// ---------------------------------------------------------------------------
// Assembled report.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ReportConfig {
    pub seed: u64,
    pub alpha_budget: usize,
    pub clique_budget: usize,
    pub k_max: u32,
    /// Optimize inertia weights; unit weights otherwise.
    pub optimize_inertia: bool,
    pub optimize: OptimizeConfig,
    /// Bound selection; all on by default.
    pub enabled: BoundSelection,
    pub tol: f64,
}

#[derive(Clone, Debug)]
pub struct BoundSelection {
    pub alpha: bool,
    pub theta: bool,
    pub chifrac: bool,
    pub inertia: bool,
    pub haemers: bool,
    pub capacity: bool,
    pub clique_cover: bool,
}

impl Default for BoundSelection {
    fn default() -> Self {
        BoundSelection {
            alpha: true,
            theta: true,
            chifrac: true,
            inertia: true,
            haemers: true,
            capacity: true,
            clique_cover: true,
        }
    }
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            seed: 42,
            alpha_budget: DEFAULT_ALPHA_BUDGET,
            clique_budget: DEFAULT_CLIQUE_BUDGET,
            k_max: 2,
            optimize_inertia: false,
            optimize: OptimizeConfig::default(),
            enabled: BoundSelection::default(),
            tol: REPORT_TOL,
        }
    }
}

/// One computed bound: a value, a recorded budget error, or absent when the
/// bound was not requested.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum BoundEntry<T: Serialize> {
    Value(T),
    Error { error: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct RatJson {
    pub num: String,
    pub den: String,
}

impl From<&Rat> for RatJson {
    fn from(r: &Rat) -> Self {
        RatJson { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaJson {
    pub value: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CapacityJson {
    pub value: f64,
    pub k: u32,
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HaemersJson {
    pub num: String,
    pub den: String,
    pub certificates_accepted: usize,
    pub certificates_rejected: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphJson {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<BoundEntry<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<BoundEntry<ThetaJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chifrac: Option<BoundEntry<RatJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clique_cover: Option<BoundEntry<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inertia: Option<BoundEntry<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub haemers_upper: Option<BoundEntry<HaemersJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity_lower: Option<BoundEntry<CapacityJson>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainCheck {
    pub lhs: String,
    pub rhs: String,
    pub relation: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MetaJson {
    pub seed: u64,
    pub versions: std::collections::BTreeMap<String, String>,
    pub tolerances: std::collections::BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub graph: GraphJson,
    pub bounds: BoundsJson,
    pub chain: Vec<ChainCheck>,
    pub meta: MetaJson,
    /// True when a budget error left some bound unevaluated.
    pub partial: bool,
}

fn entry_from<T: Serialize>(r: Result<T>) -> Result<(Option<BoundEntry<T>>, bool)> {
    match r {
        Ok(v) => Ok((Some(BoundEntry::Value(v)), false)),
        Err(Error::Budget { what, detail }) => Ok((
            Some(BoundEntry::Error { error: format!("budget exceeded in {what}: {detail}") }),
            true,
        )),
        Err(e) => Err(e),
    }
}

/// Compute every enabled bound and validate the sandwich chain. Chain
/// violations are implementation bugs by theorem and surface as errors.
pub fn bounds_report(g: &Graph, name: &str, config: &ReportConfig) -> Result<BoundsReport> {
    bounds_report_with_certs(g, name, config, &[])
}

/// As [`bounds_report`], with user certificates feeding the Haemers-upper
/// minimum; every certificate is re-verified and rejects are recorded.
pub fn bounds_report_with_certs(
    g: &Graph,
    name: &str,
    config: &ReportConfig,
    user_certs: &[HaemersCert],
) -> Result<BoundsReport> {
    let mut partial = false;

    let (alpha_entry, alpha_val) = if config.enabled.alpha {
        let (e, p) = entry_from(alpha_exact(g, config.alpha_budget).map(|t| t.0))?;
        partial |= p;
        let v = match &e {
            Some(BoundEntry::Value(v)) => Some(*v),
            _ => None,
        };
        (e, v)
    } else {
        (None, None)
    };

    let (theta_entry, theta_val) = if config.enabled.theta {
        let t = theta(g)?;
        (
            Some(BoundEntry::Value(ThetaJson { value: t.value, gap: t.gap })),
            Some(t.value),
        )
    } else {
        (None, None)
    };

    let (chifrac_entry, chifrac_val) = if config.enabled.chifrac {
        match chifrac(g, config.clique_budget) {
            Ok((v, _)) => {
                (Some(BoundEntry::Value(RatJson::from(&v))), Some(v))
            }
            Err(Error::Budget { what, detail }) => {
                partial = true;
                (
                    Some(BoundEntry::Error {
                        error: format!("budget exceeded in {what}: {detail}"),
                    }),
                    None,
                )
            }
            Err(e) => return Err(e),
        }
    } else {
        (None, None)
    };

    let (cover_entry, cover_val) = if config.enabled.clique_cover {
        let (e, p) = entry_from(clique_cover_exact(g, config.alpha_budget).map(|t| t.0))?;
        partial |= p;
        let v = match &e {
            Some(BoundEntry::Value(v)) => Some(*v),
            _ => None,
        };
        (e, v)
    } else {
        (None, None)
    };

    let (inertia_entry, inertia_val) = if config.enabled.inertia {
        let bound = if config.optimize_inertia {
            optimize_weights(g, &config.optimize)?.0
        } else {
            inertia_bound(&WeightedAdjacency::unit(g.clone()))?.0
        };
        (Some(BoundEntry::Value(bound)), Some(bound))
    } else {
        (None, None)
    };

    let (haemers_entry, haemers_val) = if config.enabled.haemers {
        match haemers_upper(g, user_certs, config.clique_budget) {
            Ok(h) => {
                let accepted = h.cert_reports.iter().filter(|r| r.accepted).count();
                let json = HaemersJson {
                    num: h.value.numer().to_string(),
                    den: h.value.denom().to_string(),
                    certificates_accepted: accepted,
                    certificates_rejected: h.cert_reports.len() - accepted,
                };
                (Some(BoundEntry::Value(json)), Some(h.value))
            }
            Err(Error::Budget { what, detail }) => {
                partial = true;
                (
                    Some(BoundEntry::Error {
                        error: format!("budget exceeded in {what}: {detail}"),
                    }),
                    None,
                )
            }
            Err(e) => return Err(e),
        }
    } else {
        (None, None)
    };

    let (capacity_entry, capacity_val) = if config.enabled.capacity {
        let c = capacity_lower(g, config.k_max, config.alpha_budget)?;
        partial |= !c.complete;
        (
            Some(BoundEntry::Value(CapacityJson {
                value: c.best,
                k: c.best_k,
                complete: c.complete,
            })),
            Some(c.best),
        )
    } else {
        (None, None)
    };

    // Chain validation, recomputed from the values just obtained.
    let tol = config.tol;
    let mut chain = Vec::new();
    let mut check = |lhs: &str, rhs: &str, ok: Option<bool>| -> Result<()> {
        if let Some(ok) = ok {
            chain.push(ChainCheck {
                lhs: lhs.into(),
                rhs: rhs.into(),
                relation: "<=".into(),
                ok,
            });
            if !ok {
                return Err(Error::ChainViolation(format!(
                    "{lhs} <= {rhs} failed; this inequality is a theorem, so this is a bug"
                )));
            }
        }
        Ok(())
    };

    let rat_f = |r: &Rat| r.to_f64().unwrap_or(f64::INFINITY);
    check(
        "alpha",
        "theta",
        alpha_val.and_then(|a| theta_val.map(|t| a as f64 <= t + tol)),
    )?;
    check(
        "alpha",
        "capacity_lower",
        alpha_val.and_then(|a| capacity_val.map(|c| a as f64 <= c + 1e-9)),
    )?;
    check(
        "capacity_lower",
        "theta",
        capacity_val.and_then(|c| theta_val.map(|t| c <= t + tol)),
    )?;
    check(
        "capacity_lower",
        "haemers_upper",
        capacity_val.and_then(|c| haemers_val.as_ref().map(|h| c <= rat_f(h) + 1e-9)),
    )?;
    check(
        "theta",
        "chifrac",
        theta_val.and_then(|t| chifrac_val.as_ref().map(|x| t <= rat_f(x) + tol)),
    )?;
    check(
        "chifrac",
        "clique_cover",
        chifrac_val
            .as_ref()
            .and_then(|x| cover_val.map(|c| *x <= Rat::from_integer((c as i64).into()))),
    )?;
    check(
        "alpha",
        "inertia",
        alpha_val.and_then(|a| inertia_val.map(|i| a <= i)),
    )?;
    check(
        "alpha",
        "haemers_upper",
        alpha_val.and_then(|a| {
            haemers_val
                .as_ref()
                .map(|h| Rat::from_integer((a as i64).into()) <= *h)
        }),
    )?;
    check(
        "haemers_upper",
        "chifrac",
        haemers_val
            .as_ref()
            .and_then(|h| chifrac_val.as_ref().map(|x| h <= x)),
    )?;

    let mut versions = std::collections::BTreeMap::new();
    versions.insert("capbounds".to_string(), env!("CARGO_PKG_VERSION").to_string());
    let mut tolerances = std::collections::BTreeMap::new();
    tolerances.insert("report".to_string(), tol);
    tolerances.insert("theta_gap".to_string(), THETA_GAP_TOL);

    Ok(BoundsReport {
        graph: GraphJson { name: name.to_string(), vertices: g.n(), edges: g.edge_count() },
        bounds: BoundsJson {
            alpha: alpha_entry,
            theta: theta_entry,
            chifrac: chifrac_entry,
            clique_cover: cover_entry,
            inertia: inertia_entry,
            haemers_upper: haemers_entry,
            capacity_lower: capacity_entry,
        },
        chain,
        meta: MetaJson { seed: config.seed, versions, tolerances },
        partial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Family};
    use crate::scalar::rat;

    #[test]
    fn capacity_lower_examples() {
        let kd = generate(&Family::Complete(4)).unwrap();
        let c = capacity_lower(&kd, 2, 128).unwrap();
        assert_eq!(c.best, 1.0);

        let ed = generate(&Family::Empty(4)).unwrap();
        let c = capacity_lower(&ed, 1, 128).unwrap();
        assert_eq!(c.best, 4.0);

        let c5 = generate(&Family::Cycle(5)).unwrap();
        let c = capacity_lower(&c5, 2, 128).unwrap();
        assert_eq!(c.powers[1].alpha, Some(5));
        assert!((c.best - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(c.best_k, 2);
    }

    #[test]
    fn capacity_monotone_in_k() {
        let c5 = generate(&Family::Cycle(5)).unwrap();
        let c1 = capacity_lower(&c5, 1, 128).unwrap();
        let c2 = capacity_lower(&c5, 2, 128).unwrap();
        assert!(c2.best >= c1.best);
    }

    #[test]
    fn capacity_budget_flagged() {
        let c5 = generate(&Family::Cycle(5)).unwrap();
        let c = capacity_lower(&c5, 3, 30).unwrap();
        assert!(!c.complete);
        assert_eq!(c.powers.last().unwrap().alpha, None);
        assert!((c.best - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn haemers_upper_c5() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let h = haemers_upper(&g, &[], 1000).unwrap();
        assert_eq!(h.value, rat(5, 2));
    }

    #[test]
    fn haemers_upper_complete() {
        let g = generate(&Family::Complete(4)).unwrap();
        let h = haemers_upper(&g, &[], 1000).unwrap();
        assert_eq!(h.value, rat(1, 1));
    }

    #[test]
    fn report_c5_values() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let report = bounds_report(&g, "c5", &ReportConfig::default()).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["bounds"]["alpha"], 2);
        let theta = json["bounds"]["theta"]["value"].as_f64().unwrap();
        assert!((theta - 5f64.sqrt()).abs() < 1e-4);
        assert_eq!(json["bounds"]["chifrac"]["num"], "5");
        assert_eq!(json["bounds"]["chifrac"]["den"], "2");
        assert_eq!(json["bounds"]["inertia"], 2);
        let cap = json["bounds"]["capacity_lower"]["value"].as_f64().unwrap();
        assert!((cap - 5f64.sqrt()).abs() < 1e-6);
        assert!((theta - cap).abs() < 1e-4, "capacity interval should close at √5");
        assert!(report.chain.iter().all(|c| c.ok));
        assert!(!report.partial);
    }

    #[test]
    fn report_on_empty_graph_convention() {
        let g = Graph::new(0);
        let report = bounds_report(&g, "k0", &ReportConfig::default()).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["bounds"]["alpha"], 0);
        assert_eq!(json["bounds"]["theta"]["value"], 0.0);
    }
}


#[cfg(test)]
mod user_cert_tests {
    use super::*;
    use crate::graphs::{generate, Family};
    use crate::mat::Mat;
    use crate::reps::certfile::{AnyFitting, AnySubspaceRep};
    use crate::reps::{FittingMatrix, SubspaceRep};
    use crate::scalar::rat;

    #[test]
    fn user_fitting_certificate_lowers_the_min() {
        // A verified fitting matrix of rank ρ contributes min(cover, ρ).
        let g = generate(&Family::Cycle(5)).unwrap();
        let fit = FittingMatrix { mat: Mat::<Rat>::identity(5) }; // rank 5, no help
        let certs = vec![HaemersCert::Fitting(AnyFitting::Rational(fit))];
        let h = haemers_upper(&g, &certs, 1000).unwrap();
        assert_eq!(h.value, rat(5, 2));
        assert!(h.cert_reports[0].accepted);

        // On the complete graph a rank-1 certificate ties the cover value.
        let k4 = generate(&Family::Complete(4)).unwrap();
        let ones = FittingMatrix { mat: Mat::filled(4, 4, rat(1, 1)) };
        let certs = vec![HaemersCert::Fitting(AnyFitting::Rational(ones))];
        let h = haemers_upper(&k4, &certs, 1000).unwrap();
        assert_eq!(h.value, rat(1, 1));
    }

    #[test]
    fn invalid_user_certificate_excluded_with_reason() {
        let g = generate(&Family::Cycle(5)).unwrap();
        // Fitting matrix violating the zero pattern at a non-edge.
        let mut bad = Mat::<Rat>::identity(5);
        bad[(0, 2)] = rat(1, 1);
        let certs = vec![
            HaemersCert::Fitting(AnyFitting::Rational(FittingMatrix { mat: bad })),
            HaemersCert::Subspace(AnySubspaceRep::Rational(SubspaceRep {
                d: 1,
                r: 1,
                bases: (0..5).map(|_| Mat::from_fn(1, 1, |_, _| rat(1, 1))).collect(),
            })),
        ];
        let h = haemers_upper(&g, &certs, 1000).unwrap();
        assert!(!h.cert_reports[0].accepted);
        assert!(h.cert_reports[0].detail.contains("(0,2)"));
        // The d = 1 rep is invalid on C5 too (non-neighbors share the line),
        // so the min stays at the cover value.
        assert!(!h.cert_reports[1].accepted);
        assert_eq!(h.value, rat(5, 2));
    }
}
