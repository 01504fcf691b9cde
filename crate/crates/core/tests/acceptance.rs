//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ifr::aggregate::{score_card, PanelScores, WeightDraw};
use ifr::normalize::IndicatorScore;
use ifr::prelude::*;
use ifr::report::{self, Format, RunManifest};
use ifr::synthetic::{synthetic_panel, PanelOptions};

use common::{brute_force_ranks, close, direct_score, map_dataset, oracle_scorecards};

const FORMULA_TOL: f64 = 1e-12;
const DUALITY_TOL: f64 = 1e-12;
const DUAL_PATH_TOL: f64 = 1e-9;
const ORACLE_TOL: f64 = 1e-12;
const AFFINE_TOL: f64 = 1e-9;
const NORMALIZATION_CASES: usize = 1000;
const DUAL_PATH_PANELS: usize = 200;
const ORACLE_PANELS: usize = 60;
const MONOTONE_CASES: usize = 500;
const DOMINANCE_CASES: usize = 500;
const AFFINE_CASES: usize = 100;
const NORMALIZATION_BUDGET: Duration = Duration::from_secs(1);
const DUAL_PATH_BUDGET: Duration = Duration::from_secs(10);
const SENSITIVITY_BUDGET: Duration = Duration::from_secs(30);
const PINNED_INDICATOR_COUNT: usize = 99;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_case(rng: &mut ChaCha8Rng) -> (f64, f64, f64, Orientation) {
    let a: f64 = rng.random_range(-1e4..1e4);
    let width: f64 = 10f64.powf(rng.random_range(-3.0..4.0));
    let b = a + width;
    let x = rng.random_range(a..=b);
    let o = if rng.random_bool(0.5) {
        Orientation::Positive
    } else {
        Orientation::Negative
    };
    (x, a, b, o)
}

fn score(x: f64, min: f64, max: f64, o: Orientation) -> f64 {
    normalize_value(
        x,
        (min, max),
        o,
        &BoundsPolicy::new(BoundsMode::InSamplePerYear),
    )
    .unwrap()
    .score
}

fn c1_formula() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..NORMALIZATION_CASES {
        let (x, min, max, o) = random_case(&mut rng);
        let got = score(x, min, max, o);
        let want = direct_score(x, min, max, o);
        worst = worst.max((got - want).abs());
        let (lo_end, hi_end) = match o {
            Orientation::Positive => (min, max),
            Orientation::Negative => (max, min),
        };
        ensure(score(lo_end, min, max, o) == 1.0, || {
            format!("endpoint {lo_end} of [{min}, {max}] is not exactly 1")
        })?;
        ensure(score(hi_end, min, max, o) == 100.0, || {
            format!("endpoint {hi_end} of [{min}, {max}] is not exactly 100")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(worst <= FORMULA_TOL, || {
        format!("max deviation {worst:e} > {FORMULA_TOL:e}")
    })?;
    ensure(elapsed < NORMALIZATION_BUDGET, || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{NORMALIZATION_CASES} cases, max deviation {worst:e}, {elapsed:?}"
    ))
}

fn c2_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..NORMALIZATION_CASES {
        let (x, min, max, _) = random_case(&mut rng);
        let sum =
            score(x, min, max, Orientation::Positive) + score(x, min, max, Orientation::Negative);
        worst = worst.max((sum - 101.0).abs());
    }
    ensure(worst <= DUALITY_TOL, || {
        format!("max |sum - 101| = {worst:e}")
    })?;
    Ok(format!(
        "{NORMALIZATION_CASES} cases, max |sum - 101| = {worst:e}"
    ))
}

fn c3_dual_path() -> Outcome {
    let spec = build_default_ifr_hierarchy();
    let bounds = BoundsPolicy::new(BoundsMode::InSamplePerYear);
    let missing = MissingDataPolicy::default();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for panel in 0..DUAL_PATH_PANELS {
        let n = rng.random_range(5..=30);
        let data = synthetic_panel(&spec, &PanelOptions::new(n, panel as u64));
        for card in build_scorecards(&data, &spec, &bounds, &missing).map_err(|e| e.to_string())? {
            let six: Vec<f64> = ElementId::ALL
                .iter()
                .map(|e| card.element_scores[e].unwrap())
                .collect();
            let flat = six.iter().sum::<f64>() / 6.0;
            let check = card
                .nfri_check
                .ok_or("dual-path check missing on a full-coverage card")?;
            let nfri = card.nfri.ok_or("NFRI missing on a full-coverage card")?;
            for v in [nfri, check.thematic, check.actor] {
                worst = worst.max((v - flat).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(worst <= DUAL_PATH_TOL, || {
        format!("max route disagreement {worst:e}")
    })?;
    ensure(elapsed < DUAL_PATH_BUDGET, || format!("took {elapsed:?}"))?;

    let example: BTreeMap<ElementId, Option<f64>> = ElementId::ALL
        .iter()
        .zip([10.0, 20.0, 30.0, 40.0, 50.0, 60.0])
        .map(|(e, v)| (*e, Some(v)))
        .collect();
    let flat_oracle = (10.0 + 20.0 + 30.0 + 40.0 + 50.0 + 60.0) / 6.0;
    let (n, check) = nfri(&example, &missing);
    let check = check.ok_or("reference example has no dual-path check")?;
    for (route, v) in [
        ("flat", n.unwrap_or(f64::NAN)),
        ("thematic", check.thematic),
        ("actor", check.actor),
    ] {
        ensure((v - flat_oracle).abs() <= DUAL_PATH_TOL, || {
            format!("reference example {route} route gives {v}")
        })?;
    }
    Ok(format!(
        "{DUAL_PATH_PANELS} panels, max disagreement {worst:e}, reference example -> {flat_oracle}, {elapsed:?}"
    ))
}

fn c4_oracle() -> Outcome {
    let spec = build_default_ifr_hierarchy();
    let bounds = BoundsPolicy::new(BoundsMode::InSamplePerYear);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut cards_checked = 0;
    for panel in 0..ORACLE_PANELS {
        let theta = [0.3, 0.5, 0.7, 1.0][panel % 4];
        let missing = MissingDataPolicy {
            coverage_threshold: theta,
            ..MissingDataPolicy::default()
        };
        let opts = PanelOptions {
            countries: rng.random_range(3..=12),
            years: vec![2022, 2023],
            missing_rate: rng.random_range(0.0..0.5),
            seed: 400 + panel as u64,
        };
        let data = synthetic_panel(&spec, &opts);
        let oracle = oracle_scorecards(&data, &spec, theta);
        let cards = build_scorecards(&data, &spec, &bounds, &missing).map_err(|e| e.to_string())?;
        ensure(cards.len() == oracle.len(), || {
            "card count differs from oracle".into()
        })?;
        for card in &cards {
            let o = &oracle[&(card.country.clone(), card.year)];
            let mut pairs: Vec<(String, Option<f64>, Option<f64>)> = Vec::new();
            for (id, v) in &o.sub_elements {
                pairs.push((id.clone(), card.sub_element_scores[id], *v));
            }
            for (e, v) in &o.elements {
                pairs.push((e.code().into(), card.element_scores[e], *v));
            }
            pairs.push((
                "gov".into(),
                card.score(ScoreKind::Actor(Actor::Government)),
                o.gov,
            ));
            pairs.push((
                "bus".into(),
                card.score(ScoreKind::Actor(Actor::Business)),
                o.bus,
            ));
            pairs.push((
                "cit".into(),
                card.score(ScoreKind::Actor(Actor::Citizens)),
                o.cit,
            ));
            pairs.push(("nri".into(), card.nri, o.nri));
            pairs.push(("nai".into(), card.nai, o.nai));
            pairs.push(("nfri".into(), card.nfri, o.nfri));
            for (what, got, want) in pairs {
                ensure(close(got, want, ORACLE_TOL), || {
                    format!(
                        "{} {} {what}: engine {got:?} vs oracle {want:?}",
                        card.country, card.year
                    )
                })?;
                if let (Some(a), Some(b)) = (got, want) {
                    worst = worst.max((a - b).abs());
                }
            }
            cards_checked += 1;
        }
    }
    Ok(format!(
        "{cards_checked} score cards over {ORACLE_PANELS} panels, max deviation {worst:e}"
    ))
}

fn indicator_map(scores: &[IndicatorScore]) -> PanelScores {
    let mut out = PanelScores::new();
    for s in scores {
        out.entry((s.country.clone(), s.year))
            .or_default()
            .insert(s.indicator_id.clone(), (s.score, s.degenerate));
    }
    out
}

fn all_scores(card: &ScoreCard) -> Vec<(String, Option<f64>)> {
    let mut v: Vec<(String, Option<f64>)> = card
        .sub_element_scores
        .iter()
        .map(|(k, s)| (k.clone(), *s))
        .collect();
    for kind in ScoreKind::ALL {
        v.push((kind.label().to_owned(), card.score(kind)));
    }
    v
}

fn c5_monotonicity_dominance() -> Outcome {
    let mut spec = build_default_ifr_hierarchy();
    for ind in &mut spec.indicators {
        ind.fixed_bounds = Some((-500.0, 500.0));
    }
    let goalposts = BoundsPolicy::new(BoundsMode::FixedGoalposts);
    let missing = MissingDataPolicy::default();
    let positives: Vec<String> = spec
        .indicators
        .iter()
        .filter(|i| i.orientation == Orientation::Positive)
        .map(|i| i.id.clone())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    for case in 0..MONOTONE_CASES {
        let opts = PanelOptions {
            countries: 4,
            years: vec![2024],
            missing_rate: 0.1,
            seed: 500 + case as u64,
        };
        let data = synthetic_panel(&spec, &opts);
        let target = format!("C{:03}", rng.random_range(1..=4));
        let ind = positives.choose(&mut rng).unwrap().clone();
        let delta: f64 = rng.random_range(0.0..300.0);
        let raised = map_dataset(&data, |o| match o.value {
            Some(v) if o.country == target && o.indicator_id == ind => Some(v + delta),
            other => other,
        });
        let before =
            build_scorecards(&data, &spec, &goalposts, &missing).map_err(|e| e.to_string())?;
        let after =
            build_scorecards(&raised, &spec, &goalposts, &missing).map_err(|e| e.to_string())?;
        for (b, a) in before.iter().zip(&after) {
            for ((what, sb), (_, sa)) in all_scores(b).into_iter().zip(all_scores(a)) {
                if b.country == target {
                    if let (Some(x), Some(y)) = (sb, sa) {
                        ensure(y >= x, || {
                            format!(
                                "case {case}: raising {ind} lowered {target} {what}: {x} -> {y}"
                            )
                        })?;
                    }
                } else {
                    ensure(sb == sa, || {
                        format!("case {case}: raising {target} moved {} {what}", b.country)
                    })?;
                }
            }
        }
    }

    let in_sample = BoundsPolicy::new(BoundsMode::InSamplePerYear);
    for case in 0..DOMINANCE_CASES {
        let n = rng.random_range(3..=8);
        let data = synthetic_panel(&spec, &PanelOptions::new(n, 5000 + case as u64));
        let weak = format!("C{:03}", rng.random_range(1..=n));
        let strong = "DOM".to_owned();
        let orient: BTreeMap<&str, Orientation> = spec
            .indicators
            .iter()
            .map(|i| (i.id.as_str(), i.orientation))
            .collect();
        let mut rows: Vec<Observation> = data.observations().collect();
        let extra: Vec<Observation> = rows
            .iter()
            .filter(|o| o.country == weak)
            .map(|o| {
                // weakly better: sometimes equal, sometimes strictly better in oriented terms
                let gain = if rng.random_bool(0.5) {
                    0.0
                } else {
                    rng.random_range(0.0..50.0)
                };
                let v = o.value.map(|v| match orient[o.indicator_id.as_str()] {
                    Orientation::Positive => v + gain,
                    Orientation::Negative => v - gain,
                });
                Observation {
                    country: strong.clone(),
                    value: v,
                    ..o.clone()
                }
            })
            .collect();
        rows.extend(extra);
        let data = Dataset::from_observations(rows).map_err(|e| e.to_string())?;
        let scores = normalize_dataset(&data, &spec, &in_sample).map_err(|e| e.to_string())?;
        let grouped = indicator_map(&scores);
        let config = SensitivityConfig {
            sigma: rng.random_range(0.0..1.0),
            seed: case as u64,
            ..SensitivityConfig::default()
        };
        for trial in 0..4u64 {
            let weights = if trial == 0 {
                WeightDraw::equal(&spec)
            } else {
                perturb_weights(&spec, &config, trial)
            };
            let cards: Vec<ScoreCard> = grouped
                .iter()
                .map(|((c, y), ind)| score_card(c, *y, ind, &spec, &missing, Some(&weights)))
                .collect();
            let table = rank(&cards, ScoreKind::Nfri);
            let ranks: BTreeMap<&str, usize> = table
                .rows
                .iter()
                .map(|r| (r.country.as_str(), r.rank))
                .collect();
            let nfri: BTreeMap<String, f64> = table
                .rows
                .iter()
                .map(|r| (r.country.clone(), r.score))
                .collect();
            ensure(
                brute_force_ranks(&nfri)
                    .iter()
                    .all(|(c, r)| ranks[c.as_str()] == *r),
                || format!("case {case}: ranks disagree with brute force"),
            )?;
            ensure(ranks[strong.as_str()] <= ranks[weak.as_str()], || {
                format!("case {case} trial {trial}: dominating country ranked below {weak}")
            })?;
        }
    }
    Ok(format!(
        "{MONOTONE_CASES} goalpost raises, {DOMINANCE_CASES} dominance cases x 4 weight draws"
    ))
}

fn c6_affine() -> Outcome {
    let spec = build_default_ifr_hierarchy();
    let bounds = BoundsPolicy::new(BoundsMode::InSamplePerYear);
    let missing = MissingDataPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for case in 0..AFFINE_CASES {
        let opts = PanelOptions {
            countries: rng.random_range(3..=10),
            years: vec![2023, 2024],
            missing_rate: 0.1,
            seed: 600 + case as u64,
        };
        let data = synthetic_panel(&spec, &opts);
        let ind = spec.indicators[rng.random_range(0..spec.indicators.len())]
            .id
            .clone();
        let a: f64 = 10f64.powf(rng.random_range(-3.0..3.0));
        let b: f64 = rng.random_range(-1e3..1e3);
        let moved = map_dataset(&data, |o| {
            if o.indicator_id == ind {
                o.value.map(|v| a * v + b)
            } else {
                o.value
            }
        });
        let before =
            build_scorecards(&data, &spec, &bounds, &missing).map_err(|e| e.to_string())?;
        let after =
            build_scorecards(&moved, &spec, &bounds, &missing).map_err(|e| e.to_string())?;
        for (x, y) in before.iter().zip(&after) {
            for (id, s) in &x.indicator_scores {
                let t = y.indicator_scores[id];
                worst = worst.max((s - t).abs());
            }
            for ((what, s), (_, t)) in all_scores(x).into_iter().zip(all_scores(y)) {
                ensure(close(s, t, AFFINE_TOL), || {
                    format!("case {case}: {what} moved under a={a}, b={b} on {ind}")
                })?;
                if let (Some(s), Some(t)) = (s, t) {
                    worst = worst.max((s - t).abs());
                }
            }
        }
    }
    ensure(worst <= AFFINE_TOL, || format!("max deviation {worst:e}"))?;
    Ok(format!("{AFFINE_CASES} cases, max deviation {worst:e}"))
}

fn c7_taxonomy() -> Outcome {
    let spec = build_default_ifr_hierarchy();
    ensure(spec.elements.len() == 6, || {
        format!("{} elements", spec.elements.len())
    })?;
    ensure(spec.sub_elements.len() == 29, || {
        format!("{} sub-elements", spec.sub_elements.len())
    })?;
    let expected = [
        (ElementId::GR, 5),
        (ElementId::GA, 5),
        (ElementId::BR, 5),
        (ElementId::BA, 5),
        (ElementId::CR, 4),
        (ElementId::CA, 5),
    ];
    for (e, n) in expected {
        let got = spec.sub_elements_of(e).count();
        ensure(got == n, || format!("{e} has {got} sub-elements"))?;
    }
    let ba: Vec<&str> = spec
        .sub_elements_of(ElementId::BA)
        .map(|s| s.id.as_str())
        .collect();
    ensure(ba == ["BA1", "BA2", "BA3", "BA4", "BA6"], || {
        format!("BA ids {ba:?}")
    })?;
    ensure(spec.indicator_count() == PINNED_INDICATOR_COUNT, || {
        format!("{} indicators", spec.indicator_count())
    })?;
    ensure(validate_hierarchy(&spec).is_empty(), || {
        "default hierarchy has diagnostics".into()
    })?;
    let text = serialize_hierarchy(&spec);
    let back = parse_hierarchy(&text).map_err(|e| e.to_string())?;
    ensure(back == spec, || "parse(serialize(spec)) != spec".into())?;
    ensure(serialize_hierarchy(&back) == text, || {
        "serialization is not stable".into()
    })?;
    Ok(format!(
        "6 elements, 29 sub-elements, {PINNED_INDICATOR_COUNT} indicators, round trip exact"
    ))
}

fn c8_sensitivity() -> Outcome {
    let spec = build_default_ifr_hierarchy();
    let bounds = BoundsPolicy::new(BoundsMode::InSamplePerYear);
    let missing = MissingDataPolicy::default();
    let data = synthetic_panel(&spec, &PanelOptions::new(20, 8));

    for trials in [1, 7, 50] {
        let config = SensitivityConfig {
            trials,
            sigma: 0.0,
            ..SensitivityConfig::default()
        };
        let r =
            run_sensitivity(&data, &spec, &bounds, &missing, &config).map_err(|e| e.to_string())?;
        ensure(
            r.mean_spearman == Some(1.0) && r.min_spearman == Some(1.0),
            || {
                format!(
                    "sigma=0, {trials} trials: rho {:?}/{:?}",
                    r.mean_spearman, r.min_spearman
                )
            },
        )?;
        for c in &r.countries {
            ensure(
                c.mean_abs_rank_shift == 0.0
                    && c.min_rank == c.baseline_rank
                    && c.max_rank == c.baseline_rank,
                || format!("sigma=0: {} moved", c.country),
            )?;
        }
    }

    let config = SensitivityConfig {
        trials: 40,
        sigma: 0.5,
        seed: 99,
        ..SensitivityConfig::default()
    };
    let manifest = RunManifest::new(&spec, &data, &bounds, &missing).with_sensitivity(&config);
    let render = || -> Result<String, String> {
        let r =
            run_sensitivity(&data, &spec, &bounds, &missing, &config).map_err(|e| e.to_string())?;
        Ok(report::robustness(&r, None, &manifest, Format::Json))
    };
    ensure(render()? == render()?, || {
        "same seed gave different reports".into()
    })?;

    let rho = spearman_rho(&[1.0, 2.0, 3.0], &[2.0, 1.0, 3.0]).map_err(|e| e.to_string())?;
    let oracle = 1.0 - 6.0 * (1.0 + 1.0 + 0.0) / (3.0 * (9.0 - 1.0));
    ensure(
        (rho - oracle).abs() <= 1e-12 && (rho - 0.5).abs() <= 1e-12,
        || format!("rho = {rho}"),
    )?;

    let config = SensitivityConfig {
        trials: 1000,
        sigma: 0.2,
        seed: 1,
        ..SensitivityConfig::default()
    };
    let start = Instant::now();
    run_sensitivity(&data, &spec, &bounds, &missing, &config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < SENSITIVITY_BUDGET, || {
        format!("1000 trials took {elapsed:?}")
    })?;
    Ok(format!("sigma=0 fixed point, byte-identical reruns, rho(1,2,3;2,1,3) = {rho}, 1000 trials in {elapsed:?}"))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ifr"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn c9_end_to_end() -> Outcome {
    let spec = build_default_ifr_hierarchy();
    let opts = PanelOptions {
        countries: 12,
        years: vec![2023, 2024],
        missing_rate: 0.05,
        seed: 9,
    };
    let csv = synthetic_panel(&spec, &opts).to_csv();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (header, body) = csv.split_once('\n').ok_or("empty csv")?;
    let mut paths = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..3 {
        let mut lines: Vec<&str> = body.lines().collect();
        if k > 0 {
            lines.shuffle(&mut rng);
        }
        let path = dir.path().join(format!("panel{k}.csv"));
        std::fs::write(&path, format!("{header}\n{}\n", lines.join("\n")))
            .map_err(|e| e.to_string())?;
        paths.push(path.to_string_lossy().into_owned());
    }
    let mut checked = 0;
    for verb in [&["score"][..], &["rank"], &["rank", "--score-kind", "nai"]] {
        for format in ["json", "csv"] {
            let mut outputs = Vec::new();
            for path in &paths {
                for _ in 0..2 {
                    let mut args = verb.to_vec();
                    args.extend(["--data", path, "--format", format]);
                    outputs.push(run_cli(&args)?);
                }
            }
            ensure(!outputs[0].is_empty(), || {
                format!("{verb:?} {format} printed nothing")
            })?;
            ensure(outputs.iter().all(|o| *o == outputs[0]), || {
                format!("{verb:?} --format {format} output differs across runs or row orders")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} verb/format combinations, 2 runs x 3 row orders each"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 normalization formula conformance", c1_formula),
        ("2 orientation duality", c2_duality),
        ("3 dual-aggregation identity", c3_dual_path),
        ("4 oracle equivalence", c4_oracle),
        ("5 monotonicity and dominance", c5_monotonicity_dominance),
        ("6 affine invariance", c6_affine),
        ("7 default taxonomy fidelity", c7_taxonomy),
        ("8 sensitivity fixed point and determinism", c8_sensitivity),
        ("9 end-to-end determinism", c9_end_to_end),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
