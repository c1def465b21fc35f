//! The admissibility cascade.
//!
//! Layers run in the order domain, structural, epistemic, economic,
//! physical:
//!
//! 1. restrict candidates to the eligible universe;
//! 2. size the sleeve at `min(alpha_policy_max, L / D_max)`;
//! 3. take `K = min(K_entropy, K_econ, #eligible)` names, in input order;
//! 4. weight them with the tier rule;
//! 5. check every weight against its impact (and participation) cap.
//!
//! When a design is supplied, steps 2-4 check it instead of building one.
//! Both paths share [`evaluate_design`], so a synthesized design re-checked
//! as a supplied one yields the same verdicts.
//!
//! The engine is a single-pass checker. Remediation is reported as advice
//! and never applied.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::layers::{
    breadth_bound_econ, breadth_bound_entropy, economic::min_weight_change, entropy_increment_approx,
    entropy_increment_mixture, max_weight_impact, max_weight_participation, structural, weight_entropy,
};
use crate::model::{
    validate_tilts, Asset, Breadth, ConstraintCheck, DerivedBounds, Diagnostics, FeasibilityParams, FeasibilityReport,
    LayerVerdict, LayerVerdicts, SatelliteDesign, Sense, WeightCaps,
};
use crate::tiering::{assign_tier_weights, eligibility_filter, Eligibility};

#[derive(Clone, Debug, PartialEq)]
pub struct CascadeInput {
    pub theme: String,
    pub candidates: Vec<Asset>,
    pub params: FeasibilityParams,
    /// Design to check; `None` synthesizes one.
    pub design: Option<SatelliteDesign>,
    /// Tilts used when synthesizing.
    pub kappa_a: f64,
    pub kappa_c: f64,
    /// Normalized core composition, for the exact entropy diagnostic.
    pub core: Option<Vec<f64>>,
}

impl CascadeInput {
    pub fn synthesize(
        theme: impl Into<String>,
        candidates: Vec<Asset>,
        params: FeasibilityParams,
        kappa_a: f64,
        kappa_c: f64,
    ) -> Self {
        CascadeInput {
            theme: theme.into(),
            candidates,
            params,
            design: None,
            kappa_a,
            kappa_c,
            core: None,
        }
    }

    pub fn with_design(mut self, design: SatelliteDesign) -> Self {
        self.design = Some(design);
        self
    }

    pub fn with_core(mut self, core: Vec<f64>) -> Self {
        self.core = Some(core);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CascadeOutcome {
    pub report: FeasibilityReport,
    /// The checked or synthesized design; `None` when nothing could be built.
    pub design: Option<SatelliteDesign>,
}

/// Closed-form bounds at the effective sleeve size, with per-asset caps for
/// `assets`.
pub fn derive_bounds(params: &FeasibilityParams, assets: &[Asset]) -> DerivedBounds {
    let alpha = structural::effective_alpha(&params.structural);
    DerivedBounds {
        alpha_max_structural: structural::alpha_max_structural(&params.structural),
        alpha_effective: alpha,
        alpha_below_policy_min: structural::below_policy_min(&params.structural),
        delta_w_min: min_weight_change(&params.econ),
        k_max_econ: breadth_bound_econ(alpha, &params.econ),
        k_max_entropy: breadth_bound_entropy(alpha, &params.entropy),
        weight_caps: assets.iter().map(|a| weight_caps(a, params)).collect(),
    }
}

fn weight_caps(asset: &Asset, params: &FeasibilityParams) -> WeightCaps {
    WeightCaps {
        id: asset.id.clone(),
        impact: max_weight_impact(asset, params),
        participation: max_weight_participation(asset, params).ok(),
        delta_w_min: min_weight_change(&params.econ.with_cost(asset.round_trip_cost_bps)),
    }
}

pub fn run_cascade(input: &CascadeInput) -> Result<CascadeOutcome> {
    let params = &input.params;
    params.validate()?;
    validate_tilts(input.kappa_a, input.kappa_c, "tilts.")?;
    for asset in &input.candidates {
        asset.validate()?;
    }
    if let Some(design) = &input.design {
        design.validate()?;
    }
    if let Some(core) = &input.core {
        weight_entropy(core)?;
    }

    let eligibility = eligibility_filter(&input.candidates)?;
    let bounds = derive_bounds(params, &eligibility.eligible);

    let (verdicts, design) = match &input.design {
        Some(design) => (
            evaluate_design(design, &input.candidates, params)?,
            Some(design.clone()),
        ),
        None => synthesize(input, &eligibility, &bounds)?,
    };

    let mut advice = Vec::new();
    if bounds.alpha_below_policy_min {
        advice.push(format!(
            "structural: effective alpha {:.6} is below the policy minimum {:.6}",
            bounds.alpha_effective, params.structural.alpha_policy_min
        ));
    }
    advice.extend(advise(&verdicts, design.is_some(), &eligibility));

    let diagnostics = diagnostics(design.as_ref(), input.core.as_deref());
    let report = FeasibilityReport {
        theme: design
            .as_ref()
            .map(|d| d.theme.clone())
            .filter(|t| !t.is_empty())
            .unwrap_or_else(|| input.theme.clone()),
        admissible: verdicts.all_pass(),
        binding_layer: verdicts.binding_layer(),
        layer_verdicts: verdicts,
        derived_bounds: bounds,
        rejected: eligibility.rejections(),
        diagnostics,
        advice,
    };
    Ok(CascadeOutcome { report, design })
}

fn synthesize(
    input: &CascadeInput,
    eligibility: &Eligibility,
    bounds: &DerivedBounds,
) -> Result<(LayerVerdicts, Option<SatelliteDesign>)> {
    let alpha = bounds.alpha_effective;
    let breadth = bounds
        .k_max_entropy
        .min(bounds.k_max_econ)
        .cap(eligibility.eligible.len()) as usize;

    if alpha <= 0.0 || breadth == 0 {
        return Ok((unbuildable_verdicts(&input.params, eligibility, bounds), None));
    }

    let selected = &eligibility.eligible[..breadth];
    let constituents = assign_tier_weights(alpha, selected, input.kappa_a, input.kappa_c)?;
    let design = SatelliteDesign::new(input.theme.clone(), alpha, constituents, input.kappa_a, input.kappa_c)?;
    let verdicts = evaluate_design(&design, &input.candidates, &input.params)?;
    Ok((verdicts, Some(design)))
}

/// Verdicts when no design could be formed: breadth layers are measured
/// against the smallest possible sleeve of one name, and the physical layer
/// has nothing to check.
fn unbuildable_verdicts(
    params: &FeasibilityParams,
    eligibility: &Eligibility,
    bounds: &DerivedBounds,
) -> LayerVerdicts {
    let alpha = bounds.alpha_effective;
    LayerVerdicts {
        domain: LayerVerdict::membership(eligibility.eligible.len(), 0),
        structural: structural_verdict(params, alpha),
        epistemic: LayerVerdict::from_checks(vec![ConstraintCheck::breadth(
            "entropy_breadth",
            bounds.k_max_entropy,
            1,
        )]),
        economic: LayerVerdict::from_checks(vec![ConstraintCheck::breadth(
            "resolution_breadth",
            bounds.k_max_econ,
            1,
        )]),
        physical: LayerVerdict::not_evaluated(),
    }
}

fn structural_verdict(params: &FeasibilityParams, alpha: f64) -> LayerVerdict {
    let s = &params.structural;
    let mut checks = vec![
        ConstraintCheck::upper("loss_budget", None, Some(structural::alpha_max_structural(s)), alpha),
        ConstraintCheck::upper("policy_cap", None, Some(s.alpha_policy_max), alpha),
    ];
    if alpha <= 0.0 {
        let mut empty = ConstraintCheck::lower("nonempty_sleeve", None, 0.0, alpha);
        empty.pass = false;
        empty.normalized_margin = 0.0;
        checks.push(empty);
    }
    LayerVerdict::from_checks(checks)
}

/// Evaluate every layer against a concrete design. Each verdict reads only
/// its own layer's parameters and the design.
pub fn evaluate_design(
    design: &SatelliteDesign,
    candidates: &[Asset],
    params: &FeasibilityParams,
) -> Result<LayerVerdicts> {
    let lookup: BTreeMap<&str, &Asset> = candidates.iter().map(|a| (a.id.as_str(), a)).collect();
    let members = design
        .constituents
        .iter()
        .map(|h| {
            lookup
                .get(h.id.as_str())
                .map(|a| (*a, h.weight))
                .ok_or_else(|| Error::UnknownAsset(h.id.clone()))
        })
        .collect::<Result<Vec<_>>>()?;

    let alpha = design.alpha;
    let names = members.len();

    let violations = members
        .iter()
        .filter(|(a, _)| crate::tiering::rejection_reason(a).is_some())
        .count();
    let domain = if names == 0 {
        LayerVerdict::membership(1, 0)
    } else {
        LayerVerdict::membership(names, violations)
    };

    let epistemic = LayerVerdict::from_checks(vec![ConstraintCheck::breadth(
        "entropy_breadth",
        breadth_bound_entropy(alpha, &params.entropy),
        names,
    )]);

    let mut econ_checks = vec![ConstraintCheck::breadth(
        "resolution_breadth",
        breadth_bound_econ(alpha, &params.econ),
        names,
    )];
    econ_checks.extend(members.iter().map(|(a, w)| {
        let floor = min_weight_change(&params.econ.with_cost(a.round_trip_cost_bps));
        ConstraintCheck::lower("min_ticket", Some(&a.id), floor, *w)
    }));

    let mut physical_checks = Vec::with_capacity(names * 2);
    for (a, w) in &members {
        physical_checks.push(ConstraintCheck::upper(
            "impact_cap",
            Some(&a.id),
            Some(max_weight_impact(a, params)),
            *w,
        ));
        if let Ok(cap) = max_weight_participation(a, params) {
            physical_checks.push(ConstraintCheck::upper("participation_cap", Some(&a.id), Some(cap), *w));
        }
    }

    Ok(LayerVerdicts {
        domain,
        structural: structural_verdict(params, alpha),
        epistemic,
        economic: LayerVerdict::from_checks(econ_checks),
        physical: LayerVerdict::from_checks(physical_checks),
    })
}

fn diagnostics(design: Option<&SatelliteDesign>, core: Option<&[f64]>) -> Diagnostics {
    let Some(design) = design else {
        return Diagnostics {
            breadth: 0,
            entropy_increment_approx: None,
            entropy_increment_exact: None,
        };
    };
    let k = design.breadth() as u64;
    let weights: Vec<f64> = design.constituents.iter().map(|h| h.weight).collect();
    Diagnostics {
        breadth: design.breadth(),
        entropy_increment_approx: (k > 0)
            .then(|| entropy_increment_approx(design.alpha, k).ok())
            .flatten(),
        entropy_increment_exact: core.and_then(|c| entropy_increment_mixture(c, &weights).ok()),
    }
}

fn advise(verdicts: &LayerVerdicts, has_design: bool, eligibility: &Eligibility) -> Vec<String> {
    let mut out = Vec::new();
    if !verdicts.domain.passed() {
        if has_design {
            out.push("domain: design holds ineligible names; replace them with eligible candidates".to_string());
        } else if eligibility.eligible.is_empty() {
            out.push("domain: no eligible candidates; the sleeve cannot be formed".to_string());
        }
    }
    for (layer, verdict) in verdicts.iter() {
        for check in verdict.checks.iter().filter(|c| !c.pass) {
            let subject = check.asset.as_deref().unwrap_or("sleeve");
            let bound = check.bound.unwrap_or(f64::INFINITY);
            let line = match (check.name.as_str(), check.sense) {
                ("nonempty_sleeve", _) => {
                    format!("{layer}: effective alpha is zero; no sleeve fits the loss budget and policy cap")
                }
                ("loss_budget" | "policy_cap", _) => {
                    format!("{layer}: reduce alpha from {:.6} to at most {bound:.6}", check.usage)
                }
                ("entropy_breadth" | "resolution_breadth", _) => {
                    format!(
                        "{layer}: breadth {} exceeds the bound {}",
                        check.usage,
                        Breadth::from_count(bound as u64)
                    )
                }
                ("min_ticket", _) => format!(
                    "{layer}: {subject} weight {:.6} is below the minimum meaningful change {bound:.6}; \
                     drop it or concentrate the sleeve",
                    check.usage
                ),
                (_, Sense::Upper) => format!(
                    "{layer}: {subject} weight {:.6} exceeds its {} {bound:.6}; adjust K, reduce alpha, \
                     or replace it with a higher-ADV proxy",
                    check.usage, check.name
                ),
                (_, Sense::Lower) => format!("{layer}: {subject} fails {}", check.name),
            };
            out.push(line);
        }
    }
    out
}
