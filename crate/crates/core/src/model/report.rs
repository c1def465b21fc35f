use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Breadth, WEIGHT_TOLERANCE};

/// Feasibility layers in cascade order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Domain,
    Structural,
    Epistemic,
    Economic,
    Physical,
}

impl Layer {
    pub const CASCADE_ORDER: [Layer; 5] = [
        Layer::Domain,
        Layer::Structural,
        Layer::Epistemic,
        Layer::Economic,
        Layer::Physical,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Layer::Domain => "domain",
            Layer::Structural => "structural",
            Layer::Epistemic => "epistemic",
            Layer::Economic => "economic",
            Layer::Physical => "physical",
        }
    }

    /// Short label of the design dimension the layer bounds.
    pub fn bounds_label(self) -> &'static str {
        match self {
            Layer::Domain => "admissible universe",
            Layer::Structural => "sleeve size",
            Layer::Epistemic => "breadth, dispersion",
            Layer::Economic => "ticket size, breadth",
            Layer::Physical => "trade size per name",
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// An upstream failure left nothing to evaluate.
    NotEvaluated,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotEvaluated => "not_evaluated",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    /// `usage <= bound`
    Upper,
    /// `usage >= bound`
    Lower,
}

/// One inequality evaluated against a design.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintCheck {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asset: Option<String>,
    pub sense: Sense,
    /// `None` when the bound is infinite.
    pub bound: Option<f64>,
    pub usage: f64,
    /// Signed distance to the boundary in native units; `None` when unbounded.
    pub margin: Option<f64>,
    /// Margin as a fraction of the bound, comparable across layers.
    pub normalized_margin: f64,
    pub pass: bool,
}

impl ConstraintCheck {
    pub fn upper(name: &str, asset: Option<&str>, bound: Option<f64>, usage: f64) -> Self {
        let (margin, normalized) = match bound {
            None => (None, 1.0),
            Some(b) => {
                let m = b - usage;
                let n = if b > 0.0 {
                    m / b
                } else if usage <= 0.0 {
                    0.0
                } else {
                    -1.0
                };
                (Some(m), n)
            }
        };
        Self::build(name, asset, Sense::Upper, bound, usage, margin, normalized)
    }

    pub fn lower(name: &str, asset: Option<&str>, bound: f64, usage: f64) -> Self {
        let m = usage - bound;
        let n = if bound > 0.0 { m / bound } else { 1.0 };
        Self::build(name, asset, Sense::Lower, Some(bound), usage, Some(m), n)
    }

    /// Breadth bound as an upper check on a name count.
    pub fn breadth(name: &str, bound: Breadth, names: usize) -> Self {
        Self::upper(name, None, bound.finite().map(|k| k as f64), names as f64)
    }

    fn build(
        name: &str,
        asset: Option<&str>,
        sense: Sense,
        bound: Option<f64>,
        usage: f64,
        margin: Option<f64>,
        normalized_margin: f64,
    ) -> Self {
        let pass = match (margin, bound) {
            (Some(m), Some(b)) => m >= -WEIGHT_TOLERANCE * b.abs().max(1.0),
            _ => true,
        };
        ConstraintCheck {
            name: name.to_string(),
            asset: asset.map(str::to_string),
            sense,
            bound,
            usage,
            margin,
            normalized_margin,
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerVerdict {
    pub status: Status,
    /// Native margin of the tightest check.
    pub margin: Option<f64>,
    pub normalized_margin: Option<f64>,
    pub checks: Vec<ConstraintCheck>,
}

impl LayerVerdict {
    /// Pass iff every check passes; the margin is that of the check with the
    /// smallest normalized margin (the first such check on ties).
    pub fn from_checks(checks: Vec<ConstraintCheck>) -> Self {
        let tightest = checks.iter().reduce(|best, c| {
            if c.normalized_margin < best.normalized_margin {
                c
            } else {
                best
            }
        });
        let (margin, normalized) = match tightest {
            Some(c) => (c.margin, c.normalized_margin),
            None => (None, 1.0),
        };
        let status = if checks.iter().all(|c| c.pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        LayerVerdict {
            status,
            margin,
            normalized_margin: Some(normalized),
            checks,
        }
    }

    /// Set-membership verdict: margin 1 when every member is admissible,
    /// otherwise minus the inadmissible fraction.
    pub fn membership(members: usize, violations: usize) -> Self {
        let (status, m) = if violations == 0 && members > 0 {
            (Status::Pass, 1.0)
        } else if members == 0 {
            (Status::Fail, -1.0)
        } else {
            (Status::Fail, -(violations as f64) / members as f64)
        };
        LayerVerdict {
            status,
            margin: Some(m),
            normalized_margin: Some(m),
            checks: Vec::new(),
        }
    }

    /// Fail without a design to measure against.
    pub fn failed(checks: Vec<ConstraintCheck>) -> Self {
        let mut v = Self::from_checks(checks);
        v.status = Status::Fail;
        v
    }

    pub fn not_evaluated() -> Self {
        LayerVerdict {
            status: Status::NotEvaluated,
            margin: None,
            normalized_margin: None,
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Verdicts keyed by layer; serializes in cascade order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerVerdicts {
    pub domain: LayerVerdict,
    pub structural: LayerVerdict,
    pub epistemic: LayerVerdict,
    pub economic: LayerVerdict,
    pub physical: LayerVerdict,
}

impl LayerVerdicts {
    pub fn get(&self, layer: Layer) -> &LayerVerdict {
        match layer {
            Layer::Domain => &self.domain,
            Layer::Structural => &self.structural,
            Layer::Epistemic => &self.epistemic,
            Layer::Economic => &self.economic,
            Layer::Physical => &self.physical,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Layer, &LayerVerdict)> {
        Layer::CASCADE_ORDER.into_iter().map(move |l| (l, self.get(l)))
    }

    pub fn all_pass(&self) -> bool {
        self.iter().all(|(_, v)| v.passed())
    }

    /// First failing layer in cascade order; otherwise the passing layer with
    /// the smallest normalized margin. Ties (within the weight tolerance) go
    /// to the layer later in the cascade, the one whose bound was exhausted
    /// last.
    pub fn binding_layer(&self) -> Layer {
        if let Some((layer, _)) = self.iter().find(|(_, v)| v.status != Status::Pass) {
            return layer;
        }
        let mut best = Layer::Domain;
        let mut best_margin = f64::INFINITY;
        for (layer, v) in self.iter() {
            let m = v.normalized_margin.unwrap_or(f64::INFINITY);
            if m <= best_margin + WEIGHT_TOLERANCE {
                best = layer;
                best_margin = best_margin.min(m);
            }
        }
        best
    }
}

/// Per-asset weight caps from the physical and economic layers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightCaps {
    pub id: String,
    pub impact: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub participation: Option<f64>,
    /// Minimum meaningful weight change under the asset's own friction.
    pub delta_w_min: f64,
}

/// Closed-form bounds; a function of the parameters (and candidate liquidity
/// for the per-asset caps) only, never of the design under test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivedBounds {
    pub alpha_max_structural: f64,
    pub alpha_effective: f64,
    /// Effective alpha fell below the policy minimum.
    pub alpha_below_policy_min: bool,
    pub delta_w_min: f64,
    /// Breadth bounds evaluated at `alpha_effective`.
    pub k_max_econ: Breadth,
    pub k_max_entropy: Breadth,
    pub weight_caps: Vec<WeightCaps>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagnostics {
    pub breadth: usize,
    /// `-alpha ln(alpha/K)`, the quantity the epistemic bound inverts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy_increment_approx: Option<f64>,
    /// `H(total) - H(core)` when a core composition is known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy_increment_exact: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rejection {
    pub id: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeasibilityReport {
    pub theme: String,
    pub admissible: bool,
    pub binding_layer: Layer,
    pub layer_verdicts: LayerVerdicts,
    pub derived_bounds: DerivedBounds,
    pub rejected: Vec<Rejection>,
    pub diagnostics: Diagnostics,
    /// Remediation notes; the engine never acts on them.
    pub advice: Vec<String>,
}
