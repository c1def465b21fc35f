//! Property tests over the engine's invariants.

use proptest::prelude::*;

use satellite_feasibility::layers::*;
use satellite_feasibility::model::*;
use satellite_feasibility::rebalance::check_trade;
use satellite_feasibility::*;

fn impact() -> impl Strategy<Value = ImpactParams> {
    (0.01f64..1.0, 0.1f64..0.9, 1e-4f64..0.05, prop::option::of(0.01f64..1.0))
        .prop_map(|(c, d, cap, phi)| ImpactParams::new(c, d, cap, phi).unwrap())
}

fn params() -> impl Strategy<Value = FeasibilityParams> {
    (
        1e4f64..1e7,
        0.05f64..1.0,
        impact(),
        (1.0f64..100.0, 0.0f64..10.0),
        (0.0f64..0.2, 0.1f64..1.0, 0.0f64..0.2, 0.0f64..0.3),
        0.0f64..2.0,
    )
        .prop_map(
            |(aum, tau, impact, (cost, eps), (l, d, lo, span), dh)| FeasibilityParams {
                aum_usd: aum,
                turnover_fraction: tau,
                impact,
                econ: EconParams::new(cost, eps).unwrap(),
                structural: StructuralParams::new(l, d, lo, (lo + span).min(1.0)).unwrap(),
                entropy: EntropyParams::new(dh).unwrap(),
            },
        )
}

fn tier() -> impl Strategy<Value = TierClass> {
    prop_oneof![Just(TierClass::TierA), Just(TierClass::TierB), Just(TierClass::TierC)]
}

fn exclusion() -> impl Strategy<Value = ExclusionCategory> {
    prop::sample::select(ExclusionCategory::ALL.to_vec())
}

fn assets(max: usize) -> impl Strategy<Value = Vec<Asset>> {
    prop::collection::vec(
        (
            tier(),
            1e4f64..1e9,
            prop::option::of(1.0f64..100.0),
            prop::bool::weighted(0.9),
            prop::bool::weighted(0.2),
            exclusion(),
        ),
        0..max,
    )
    .prop_map(|rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, (t, adv, cost, gaer, excluded, cat))| {
                let mut a = Asset::new(format!("N{i}"), t, adv).unwrap().with_gaer_admissible(gaer);
                if excluded {
                    a = a.with_exclusion(cat);
                }
                if let Some(c) = cost {
                    a = a.with_round_trip_cost_bps(c).unwrap();
                }
                a
            })
            .collect()
    })
}

fn core() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, 1..12).prop_map(|raw| {
        let t: f64 = raw.iter().sum();
        raw.iter().map(|x| x / t).collect()
    })
}

fn liquid_asset(adv: f64) -> Asset {
    Asset::new("X", TierClass::TierB, adv).unwrap()
}

proptest! {
    #[test]
    fn impact_cost_is_concave(ip in impact(), v in 1e4f64..1e9, q1 in 1.0f64..1e7, dq in 1.0f64..1e7, lambda in 0.01f64..0.99) {
        let q2 = q1 + dq;
        let mid = impact_cost(lambda * q1 + (1.0 - lambda) * q2, v, &ip).unwrap();
        let chord = lambda * impact_cost(q1, v, &ip).unwrap() + (1.0 - lambda) * impact_cost(q2, v, &ip).unwrap();
        prop_assert!(mid >= chord - 1e-9);
    }

    #[test]
    fn impact_inverse_consistency(p in params(), v in 1e4f64..1e8) {
        let asset = liquid_asset(v);
        let w = max_weight_impact(&asset, &p);
        prop_assume!(w < 1.0);
        let q = p.aum_usd * w * p.turnover_fraction;
        prop_assert!((impact_cost(q, v, &p.impact).unwrap() - p.impact.impact_cap).abs() <= 1e-9);
    }

    #[test]
    fn entropy_bound_is_the_integer_inverse(alpha in 0.01f64..0.5, dh in 0.0f64..1.2) {
        let k = breadth_bound_entropy(alpha, &EntropyParams::new(dh).unwrap());
        let mut best = 0u64;
        for cand in 1..=MAX_FINITE_BREADTH {
            if entropy_increment_approx(alpha, cand).unwrap() <= dh { best = cand } else { break }
        }
        prop_assert_eq!(k, Breadth::from_count(best));
    }

    #[test]
    fn monotonicity(p in params(), bump in 0.001f64..0.5, v in 1e4f64..1e8) {
        let s = &p.structural;
        let base = alpha_max_structural(s);
        let mut more_l = s.clone();
        more_l.loss_tolerance = (s.loss_tolerance + bump).min(1.0);
        prop_assert!(alpha_max_structural(&more_l) >= base);
        let mut more_d = s.clone();
        more_d.max_drawdown = (s.max_drawdown + bump).min(1.0);
        prop_assert!(alpha_max_structural(&more_d) <= base);

        let e = &p.econ;
        let mut more_eps = e.clone();
        more_eps.min_effect_bps += bump;
        prop_assert!(min_weight_change(&more_eps) >= min_weight_change(e));
        let mut more_cost = e.clone();
        more_cost.round_trip_cost_bps += bump;
        prop_assert!(min_weight_change(&more_cost) <= min_weight_change(e));

        let alpha = alpha_max_structural(s).max(0.01);
        let mut more_h = p.entropy.clone();
        more_h.delta_h_max += bump;
        prop_assert!(breadth_bound_entropy(alpha, &more_h) >= breadth_bound_entropy(alpha, &p.entropy));

        let w = max_weight_impact(&liquid_asset(v), &p);
        prop_assert!(max_weight_impact(&liquid_asset(v * (1.0 + bump)), &p) >= w);
        let mut bigger = p.clone();
        bigger.aum_usd *= 1.0 + bump;
        prop_assert!(max_weight_impact(&liquid_asset(v), &bigger) <= w);
    }

    #[test]
    fn boundary_trade_is_admissible(cost in 1.0f64..100.0, eps in 0.0f64..10.0) {
        let e = EconParams::new(cost, eps).unwrap();
        let dw = min_weight_change(&e);
        prop_assert!(trade_admissible(dw, &e));
        prop_assert!(trade_admissible(-dw, &e));
    }

    #[test]
    fn entropy_gap_identity(c in core(), alpha in 0.001f64..0.9, k in 1u64..60) {
        let h_core = weight_entropy(&c).unwrap();
        let exact = entropy_increment_exact(&c, alpha, k).unwrap();
        let approx = entropy_increment_approx(alpha, k).unwrap();
        let dropped = -alpha * h_core - (1.0 - alpha) * (1.0 - alpha).ln();
        prop_assert!((exact - approx - dropped).abs() <= 1e-9);
        prop_assert!((exact - approx).abs() <= alpha * h_core + (1.0 - alpha) * -(1.0 - alpha).ln() + 1e-9);
    }

    #[test]
    fn entropy_is_continuous_at_zero(c in core(), eps in 1e-15f64..1e-9) {
        let mut shifted = c.clone();
        shifted[0] -= eps.min(c[0]);
        shifted.push(eps.min(c[0]));
        let gap = (weight_entropy(&shifted).unwrap() - weight_entropy(&c).unwrap()).abs();
        prop_assert!(gap < 1e-6);
    }

    #[test]
    fn tier_weights_sum_and_order(alpha in 0.001f64..1.0, tiers in prop::collection::vec(tier(), 1..30), ka in 1.0f64..3.0, kc in 0.01f64..1.0) {
        let a: Vec<Asset> = tiers.iter().enumerate().map(|(i, t)| Asset::new(format!("N{i}"), *t, 1e6).unwrap()).collect();
        let ws = assign_tier_weights(alpha, &a, ka, kc).unwrap();
        let total: f64 = ws.iter().map(|h| h.weight).sum();
        prop_assert!((total - alpha).abs() <= 1e-12);
        let of = |t| ws.iter().zip(&a).filter(move |(_, x)| x.tier == t).map(|(h, _)| h.weight).collect::<Vec<_>>();
        for t in [TierClass::TierA, TierClass::TierB, TierClass::TierC] {
            let v = of(t);
            prop_assert!(v.windows(2).all(|p| p[0] == p[1]));
        }
        let first = |t| of(t).first().copied();
        if let (Some(x), Some(y)) = (first(TierClass::TierA), first(TierClass::TierB)) { prop_assert!(x >= y) }
        if let (Some(x), Some(y)) = (first(TierClass::TierB), first(TierClass::TierC)) { prop_assert!(x >= y) }
    }

    #[test]
    fn tier_weights_follow_permutation(tiers in prop::collection::vec(tier(), 1..15), seed in any::<u64>()) {
        let a: Vec<Asset> = tiers.iter().enumerate().map(|(i, t)| Asset::new(format!("N{i}"), *t, 1e6).unwrap()).collect();
        let mut shuffled = a.clone();
        let n = shuffled.len();
        shuffled.rotate_left((seed as usize) % n);
        shuffled.reverse();
        let ws = assign_tier_weights(0.1, &a, 1.5, 0.5).unwrap();
        let ws2 = assign_tier_weights(0.1, &shuffled, 1.5, 0.5).unwrap();
        for h in &ws2 {
            let orig = ws.iter().find(|x| x.id == h.id).unwrap();
            prop_assert!((orig.weight - h.weight).abs() <= 1e-15);
        }
    }

    #[test]
    fn untilted_weights_are_equal(alpha in 0.001f64..1.0, tiers in prop::collection::vec(tier(), 1..30)) {
        let a: Vec<Asset> = tiers.iter().enumerate().map(|(i, t)| Asset::new(format!("N{i}"), *t, 1e6).unwrap()).collect();
        let ws = assign_tier_weights(alpha, &a, 1.0, 1.0).unwrap();
        prop_assert!(ws.iter().all(|h| h.weight == alpha / a.len() as f64));
    }

    #[test]
    fn eligibility_filter_is_idempotent(a in assets(20)) {
        let once = eligibility_filter(&a).unwrap();
        let twice = eligibility_filter(&once.eligible).unwrap();
        prop_assert_eq!(&twice.eligible, &once.eligible);
        prop_assert!(twice.rejected.is_empty());
    }

    #[test]
    fn cascade_conjunction_and_determinism(p in params(), a in assets(20), ka in 1.0f64..3.0, kc in 0.05f64..1.0) {
        let input = CascadeInput::synthesize("t", a, p, ka, kc);
        let first = run_cascade(&input).unwrap();
        let second = run_cascade(&input).unwrap();
        prop_assert_eq!(&first.report, &second.report);
        prop_assert_eq!(first.report.admissible, first.report.layer_verdicts.all_pass());
    }

    #[test]
    fn synthesized_design_is_a_fixed_point(p in params(), a in assets(20)) {
        let input = CascadeInput::synthesize("t", a, p, 1.5, 0.5);
        let out = run_cascade(&input).unwrap();
        if let (true, Some(design)) = (out.report.admissible, out.design.clone()) {
            let rerun = run_cascade(&input.clone().with_design(design)).unwrap();
            prop_assert!(rerun.report.admissible);
            prop_assert_eq!(rerun.report.derived_bounds, out.report.derived_bounds);
            prop_assert_eq!(rerun.report.layer_verdicts, out.report.layer_verdicts);
        }
    }

    #[test]
    fn weakening_one_layer_never_fails_another(p in params(), a in assets(12), which in 0usize..5, bump in 0.01f64..1.0) {
        let elig = eligibility_filter(&a).unwrap().eligible;
        prop_assume!(!elig.is_empty());
        let alpha = 0.12;
        let ws = assign_tier_weights(alpha, &elig, 1.0, 1.0).unwrap();
        let design = SatelliteDesign::new("t", alpha, ws, 1.0, 1.0).unwrap();
        let before = evaluate_design(&design, &a, &p).unwrap();

        let mut q = p.clone();
        let weakened = match which {
            0 => { q.structural.loss_tolerance = (q.structural.loss_tolerance + bump).min(1.0); Layer::Structural }
            1 => { q.entropy.delta_h_max += bump; Layer::Epistemic }
            2 => { q.econ.min_effect_bps *= 1.0 - bump.min(0.99); Layer::Economic }
            3 => { q.impact.impact_cap += bump * 0.01; Layer::Physical }
            _ => { q.structural.alpha_policy_max = (q.structural.alpha_policy_max + bump).min(1.0); Layer::Structural }
        };
        let after = evaluate_design(&design, &a, &q).unwrap();
        for layer in Layer::CASCADE_ORDER {
            if layer != weakened && before.get(layer).passed() {
                prop_assert!(after.get(layer).passed(), "{layer} flipped after weakening {weakened}");
            }
        }
        if before.get(weakened).passed() {
            prop_assert!(after.get(weakened).passed());
        }
    }

    #[test]
    fn json_round_trip(p in params(), a in assets(10)) {
        let out = run_cascade(&CascadeInput::synthesize("t", a.clone(), p.clone(), 1.5, 0.5)).unwrap();
        let json = io::emit_report(&out.report, out.design.as_ref(), io::OutputFormat::Json);
        let doc = io::parse_report_json(std::str::from_utf8(&json).unwrap()).unwrap();
        prop_assert_eq!(doc.report, out.report);
        prop_assert_eq!(doc.design, out.design);
        let p2: FeasibilityParams = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(p2, p);
        for asset in a {
            let back: Asset = serde_json::from_str(&serde_json::to_string(&asset).unwrap()).unwrap();
            prop_assert_eq!(back, asset);
        }
    }
}

fn proposal_strategy() -> impl Strategy<Value = (Vec<f64>, bool, bool)> {
    (prop::collection::vec(-0.3f64..0.3, 0..4), any::<bool>(), any::<bool>())
}

fn rebalance_world() -> (Vec<Asset>, Portfolio) {
    let assets: Vec<Asset> = (0..4)
        .map(|i| Asset::new(format!("S{i}"), TierClass::TierB, [2e5, 1e6, 5e6, 5e7][i]).unwrap())
        .collect();
    let sat = SatelliteDesign::new(
        "t",
        0.2,
        (0..4).map(|i| Holding::new(format!("S{i}"), 0.05)).collect(),
        1.0,
        1.0,
    )
    .unwrap();
    (assets, Portfolio::from_core_composition(&[], sat).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn filter_partitions_without_leakage(p in params(), (dws, due, brk) in proposal_strategy()) {
        let (assets, current) = rebalance_world();
        let trades: Vec<Trade> = dws.iter().enumerate().map(|(i, w)| Trade::new(format!("S{i}"), *w)).collect();
        let proposal = RebalanceProposal::new(trades.clone(), due, brk).unwrap();
        let out = filter_rebalance(&proposal, &p, &current, &assets).unwrap();

        let mut seen: Vec<&str> = out.executed.iter().map(|t| t.id.as_str())
            .chain(out.suppressed.iter().map(|s| s.trade.id.as_str())).collect();
        seen.sort();
        let mut ids: Vec<&str> = trades.iter().map(|t| t.id.as_str()).collect();
        ids.sort();
        prop_assert_eq!(seen, ids);

        for t in &out.executed {
            let a = assets.iter().find(|a| a.id == t.id).unwrap();
            prop_assert!(check_trade(t, a, &p).unwrap().is_none());
            let e = p.econ.with_cost(a.round_trip_cost_bps);
            prop_assert!(trade_admissible(t.delta_w, &e));
            prop_assert!(impact_cost(p.aum_usd * t.delta_w.abs(), a.adv_usd, &p.impact).unwrap() <= p.impact.impact_cap);
        }
        if !(due || brk) {
            prop_assert!(out.executed.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn replay_conserves_weight_and_is_monotone_in_epsilon(
        p in params(),
        stream in prop::collection::vec(proposal_strategy(), 0..12),
        extra_eps in 0.0f64..10.0,
    ) {
        let (assets, initial) = rebalance_world();
        let start = chrono::NaiveDate::from_ymd_opt(2024, 1, 1).unwrap();
        let events: Vec<RebalanceEvent> = stream.iter().enumerate().map(|(n, (dws, due, brk))| {
            let trades = dws.iter().enumerate().map(|(i, w)| Trade::new(format!("S{i}"), *w)).collect();
            RebalanceEvent::new(start + chrono::Duration::days(91 * n as i64), RebalanceProposal::new(trades, *due, *brk).unwrap())
        }).collect();

        let trace = replay_trace(&events, &p, &initial, &assets).unwrap();
        for step in &trace.steps {
            prop_assert!((step.portfolio.total_weight() - 1.0).abs() <= 1e-9);
            prop_assert!(step.portfolio.weights().all(|w| w >= 0.0));
        }
        let s = &trace.stats;
        prop_assert_eq!(s.trades_executed + s.trades_suppressed(), s.trades_proposed);
        prop_assert_eq!(&replay(&events, &p, &initial, &assets).unwrap(), s);

        let mut stricter = p.clone();
        stricter.econ.min_effect_bps += extra_eps;
        let strict = replay(&events, &stricter, &initial, &assets).unwrap();
        prop_assert!(
            strict.suppressed(SuppressionReason::BelowActionResolution) >= s.suppressed(SuppressionReason::BelowActionResolution)
        );
    }
}
