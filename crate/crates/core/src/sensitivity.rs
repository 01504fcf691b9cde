//! Rank robustness of the NFRI under sibling-weight perturbation and under
//! switching the normalization bounds policy.
//!
//! # Weight draws
//!
//! For trial `t`, each member `m` of a sibling group `(level, parent)` gets the
//! factor `exp(sigma · g)`, `g ~ N(0, 1)`, and each group is renormalized to
//! sum to one. `g` is generated by a counter-based scheme so any variate can
//! be computed on its own:
//!
//! 1. `key = SHA-256("ifr-weight-v1" ‖ seed_le64 ‖ t_le64 ‖ level_u8 ‖
//!    len_le64(parent) ‖ parent ‖ len_le64(m) ‖ m)`, with level 0 = indicator,
//!    1 = sub-element, 2 = element;
//! 2. seed a ChaCha8 stream with the 32-byte key;
//! 3. draw one standard normal from it.
//!
//! Levels not selected for perturbation keep equal weights. With `sigma = 0`
//! every draw equals the equal-weight baseline bit for bit.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::aggregate::{
    group_scores, rank, score_card, Level, MissingDataPolicy, PanelScores, ScoreKind, WeightDraw,
    WeightGroup,
};
use crate::ingest::Dataset;
use crate::normalize::{normalize_dataset, BoundsPolicy, NormalizeError};
use crate::taxonomy::HierarchySpec;

#[derive(Debug, Error)]
pub enum SensitivityError {
    #[error("invalid sensitivity config: {0}")]
    InvalidConfig(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityConfig {
    pub trials: usize,
    pub sigma: f64,
    pub seed: u64,
    pub levels: BTreeSet<Level>,
    /// Cross-section to rank; the latest year in the data when unset.
    pub year: Option<i32>,
}

impl Default for SensitivityConfig {
    fn default() -> Self {
        SensitivityConfig {
            trials: 1000,
            sigma: 0.2,
            seed: 0,
            levels: Level::ALL.into_iter().collect(),
            year: None,
        }
    }
}

impl SensitivityConfig {
    pub fn validate(&self) -> Result<(), SensitivityError> {
        if self.trials < 1 {
            return Err(SensitivityError::InvalidConfig(
                "trials must be at least 1".into(),
            ));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(SensitivityError::InvalidConfig(format!(
                "sigma must be a finite non-negative number, got {}",
                self.sigma
            )));
        }
        Ok(())
    }
}

fn level_tag(level: Level) -> u8 {
    match level {
        Level::Indicator => 0,
        Level::SubElement => 1,
        Level::Element => 2,
    }
}

/// The standard normal variate for one `(seed, trial, group, member)` key.
pub fn keyed_normal(seed: u64, trial: u64, level: Level, parent: &str, member: &str) -> f64 {
    let mut h = Sha256::new();
    h.update(b"ifr-weight-v1");
    h.update(seed.to_le_bytes());
    h.update(trial.to_le_bytes());
    h.update([level_tag(level)]);
    for s in [parent, member] {
        h.update((s.len() as u64).to_le_bytes());
        h.update(s.as_bytes());
    }
    let key: [u8; 32] = h.finalize().into();
    StandardNormal.sample(&mut ChaCha8Rng::from_seed(key))
}

/// Sibling weights for one trial.
pub fn perturb_weights(
    spec: &HierarchySpec,
    config: &SensitivityConfig,
    trial_index: u64,
) -> WeightDraw {
    let groups = WeightDraw::sibling_groups(spec)
        .into_iter()
        .map(|(level, parent, members)| {
            let perturb = config.sigma > 0.0 && config.levels.contains(&level);
            let logs: Vec<f64> = members
                .iter()
                .map(|m| {
                    if perturb {
                        config.sigma * keyed_normal(config.seed, trial_index, level, &parent, m)
                    } else {
                        0.0
                    }
                })
                .collect();
            // shift by the max so exp never overflows; floor keeps weights positive
            let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let factors: Vec<f64> = logs
                .iter()
                .map(|l| (l - top).exp().max(f64::MIN_POSITIVE))
                .collect();
            let total: f64 = factors.iter().sum();
            let weights = factors.iter().map(|f| f / total).collect();
            ((level, parent), WeightGroup { members, weights })
        })
        .collect();
    WeightDraw { groups }
}

/// Average (fractional) ranks, 1-based, ascending.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation of two rankings of the same items. Inputs are
/// re-ranked with average ranks, so tied ranks are handled. Without ties this
/// is `1 − 6Σd² / (n(n² − 1))`; with ties, the Pearson correlation of the
/// average ranks. A constant ranking correlates 1 with another constant
/// ranking and 0 with anything else.
pub fn spearman_rho(ranks_a: &[f64], ranks_b: &[f64]) -> Result<f64, SensitivityError> {
    if ranks_a.len() != ranks_b.len() {
        return Err(SensitivityError::Domain(format!(
            "rank vectors differ in length ({} vs {})",
            ranks_a.len(),
            ranks_b.len()
        )));
    }
    let n = ranks_a.len();
    if n < 2 {
        return Err(SensitivityError::Domain(format!(
            "spearman correlation needs at least 2 items, got {n}"
        )));
    }
    if ranks_a.iter().chain(ranks_b).any(|r| !r.is_finite()) {
        return Err(SensitivityError::Domain("non-finite rank".into()));
    }
    let a = average_ranks(ranks_a);
    let b = average_ranks(ranks_b);
    let has_ties = |r: &[f64]| {
        let mut s = r.to_vec();
        s.sort_by(f64::total_cmp);
        s.windows(2).any(|w| w[0] == w[1])
    };

    let rho = if !has_ties(&a) && !has_ties(&b) {
        let d2: f64 = a.iter().zip(&b).map(|(x, y)| (x - y) * (x - y)).sum();
        let n = n as f64;
        1.0 - 6.0 * d2 / (n * (n * n - 1.0))
    } else {
        let mean = (n as f64 + 1.0) / 2.0;
        let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
        for (x, y) in a.iter().zip(&b) {
            sab += (x - mean) * (y - mean);
            saa += (x - mean) * (x - mean);
            sbb += (y - mean) * (y - mean);
        }
        match (saa == 0.0, sbb == 0.0) {
            (true, true) => 1.0,
            (true, false) | (false, true) => 0.0,
            _ => sab / (saa * sbb).sqrt(),
        }
    };
    Ok(rho.clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountryRobustness {
    pub country: String,
    pub baseline_score: f64,
    pub baseline_rank: usize,
    pub min_rank: usize,
    pub max_rank: usize,
    pub mean_abs_rank_shift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustnessReport {
    pub config: SensitivityConfig,
    pub seed: u64,
    pub year: Option<i32>,
    /// Ranked countries, in baseline rank order.
    pub countries: Vec<CountryRobustness>,
    /// Countries with no baseline NFRI.
    pub unranked: Vec<String>,
    /// Mean Spearman ρ between each trial and the baseline; absent with fewer than two ranked countries.
    pub mean_spearman: Option<f64>,
    pub min_spearman: Option<f64>,
}

/// `(country, NFRI)` for one cross-section under the given weights.
fn nfri_cross_section(
    grouped: &PanelScores,
    year: i32,
    spec: &HierarchySpec,
    missing: &MissingDataPolicy,
    weights: &WeightDraw,
) -> Vec<crate::aggregate::ScoreCard> {
    grouped
        .iter()
        .filter(|((_, y), _)| *y == year)
        .map(|((c, y), ind)| score_card(c, *y, ind, spec, missing, Some(weights)))
        .collect()
}

/// `country → (rank, score)`.
type RankMap = BTreeMap<String, (usize, f64)>;

fn rank_map(cards: &[crate::aggregate::ScoreCard]) -> RankMap {
    rank(cards, ScoreKind::Nfri)
        .rows
        .into_iter()
        .map(|r| (r.country, (r.rank, r.score)))
        .collect()
}

/// Baseline equal-weight NFRI ranking vs. `config.trials` perturbed rankings.
pub fn run_sensitivity(
    d: &Dataset,
    spec: &HierarchySpec,
    bounds: &BoundsPolicy,
    missing: &MissingDataPolicy,
    config: &SensitivityConfig,
) -> Result<RobustnessReport, SensitivityError> {
    config.validate()?;
    missing.validate()?;
    let scores = normalize_dataset(d, spec, bounds)?;
    let grouped = group_scores(d, &scores);
    let Some(year) = config.year.or_else(|| d.latest_year()) else {
        return Ok(RobustnessReport {
            config: config.clone(),
            seed: config.seed,
            year: None,
            countries: Vec::new(),
            unranked: Vec::new(),
            mean_spearman: None,
            min_spearman: None,
        });
    };

    let baseline_cards =
        nfri_cross_section(&grouped, year, spec, missing, &WeightDraw::equal(spec));
    let baseline = rank_map(&baseline_cards);
    let unranked: Vec<String> = baseline_cards
        .iter()
        .filter(|c| !baseline.contains_key(&c.country))
        .map(|c| c.country.clone())
        .collect();
    let countries: Vec<&String> = baseline.keys().collect();
    let base_ranks: Vec<f64> = countries.iter().map(|c| baseline[*c].0 as f64).collect();

    // per-trial results in trial order
    let trials: Vec<(RankMap, Option<f64>)> = (0..config.trials as u64)
        .map(|t| {
            let draw = perturb_weights(spec, config, t);
            let ranks = rank_map(&nfri_cross_section(&grouped, year, spec, missing, &draw));
            let trial_ranks: Vec<f64> = countries
                .iter()
                .map(|c| ranks.get(*c).map_or(f64::NAN, |r| r.0 as f64))
                .collect();
            let rho = spearman_rho(&base_ranks, &trial_ranks).ok();
            (ranks, rho)
        })
        .collect();

    let mut rows: Vec<CountryRobustness> = countries
        .iter()
        .map(|c| {
            let (base_rank, base_score) = baseline[*c];
            let mut min_rank = base_rank;
            let mut max_rank = base_rank;
            let mut shift = 0.0;
            for (ranks, _) in &trials {
                let r = ranks[*c].0;
                min_rank = min_rank.min(r);
                max_rank = max_rank.max(r);
                shift += (r as f64 - base_rank as f64).abs();
            }
            CountryRobustness {
                country: (*c).clone(),
                baseline_score: base_score,
                baseline_rank: base_rank,
                min_rank,
                max_rank,
                mean_abs_rank_shift: shift / trials.len() as f64,
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        a.baseline_rank
            .cmp(&b.baseline_rank)
            .then_with(|| a.country.cmp(&b.country))
    });

    let rhos: Vec<f64> = trials.iter().filter_map(|(_, r)| *r).collect();
    let (mean_spearman, min_spearman) = if rhos.is_empty() {
        (None, None)
    } else {
        (
            Some(rhos.iter().sum::<f64>() / rhos.len() as f64),
            Some(rhos.iter().copied().fold(f64::INFINITY, f64::min)),
        )
    };

    Ok(RobustnessReport {
        config: config.clone(),
        seed: config.seed,
        year: Some(year),
        countries: rows,
        unranked,
        mean_spearman,
        min_spearman,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwitchMatrix {
    pub policies: Vec<BoundsPolicy>,
    pub year: i32,
    /// Countries ranked under every policy; the correlations use these.
    pub countries: Vec<String>,
    /// Symmetric, unit diagonal.
    pub rho: Vec<Vec<f64>>,
}

/// Pairwise Spearman ρ between equal-weight NFRI rankings of the latest year
/// under each bounds policy.
pub fn normalization_switch_analysis(
    d: &Dataset,
    spec: &HierarchySpec,
    missing: &MissingDataPolicy,
    policies: &[BoundsPolicy],
) -> Result<SwitchMatrix, SensitivityError> {
    if policies.len() < 2 {
        return Err(SensitivityError::InvalidConfig(
            "normalization switch needs at least two policies".into(),
        ));
    }
    missing.validate()?;
    let year = d
        .latest_year()
        .ok_or_else(|| SensitivityError::Domain("dataset is empty".into()))?;
    let equal = WeightDraw::equal(spec);

    let mut rankings = Vec::with_capacity(policies.len());
    for policy in policies {
        let scores = normalize_dataset(d, spec, policy)?;
        let grouped = group_scores(d, &scores);
        rankings.push(rank_map(&nfri_cross_section(
            &grouped, year, spec, missing, &equal,
        )));
    }
    let countries: Vec<String> = rankings[0]
        .keys()
        .filter(|c| rankings.iter().all(|r| r.contains_key(*c)))
        .cloned()
        .collect();
    let vectors: Vec<Vec<f64>> = rankings
        .iter()
        .map(|r| countries.iter().map(|c| r[c].0 as f64).collect())
        .collect();

    let k = policies.len();
    let mut rho = vec![vec![1.0; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let r = spearman_rho(&vectors[i], &vectors[j])?;
            rho[i][j] = r;
            rho[j][i] = r;
        }
    }
    Ok(SwitchMatrix {
        policies: policies.to_vec(),
        year,
        countries,
        rho,
    })
}
