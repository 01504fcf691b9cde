//! Score hierarchy: indicators → sub-elements → elements → actor and thematic
//! sub-indexes → NFRI, plus ranking.
//!
//! Every level is an arithmetic mean so scores stay on the 1–100 scale. A node
//! is scored from its available children only when their share reaches the
//! coverage threshold θ. Weighted means are used only when a [`WeightDraw`] is
//! supplied (robustness analysis); the default path is equal-weighted.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ingest::Dataset;
use crate::normalize::{normalize_dataset, BoundsPolicy, IndicatorScore, NormalizeError};
use crate::taxonomy::{Actor, ElementId, HierarchySpec, Theme};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MissingDataPolicy {
    /// Minimum share of present children, in (0, 1].
    pub coverage_threshold: f64,
    /// NFRI needs all six elements. When false, NFRI is the gated mean of
    /// whichever elements are present.
    pub element_required_for_nfri: bool,
}

impl Default for MissingDataPolicy {
    fn default() -> Self {
        MissingDataPolicy {
            coverage_threshold: 0.5,
            element_required_for_nfri: true,
        }
    }
}

impl MissingDataPolicy {
    pub fn validate(&self) -> Result<(), NormalizeError> {
        let t = self.coverage_threshold;
        if t > 0.0 && t <= 1.0 {
            Ok(())
        } else {
            Err(NormalizeError::InvalidPolicy(format!(
                "coverage threshold {t} outside (0, 1]"
            )))
        }
    }

    fn admits(&self, available: usize, total: usize) -> bool {
        available > 0 && available as f64 / total as f64 >= self.coverage_threshold
    }
}

/// Level of the tree at which sibling weights can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// Indicators within a sub-element.
    Indicator,
    /// Sub-elements within an element.
    SubElement,
    /// The six elements within the NFRI.
    Element,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Indicator, Level::SubElement, Level::Element];
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "indicator" => Ok(Level::Indicator),
            "sub_element" | "sub-element" => Ok(Level::SubElement),
            "element" => Ok(Level::Element),
            other => Err(format!("unknown level {other:?}")),
        }
    }
}

/// Group id used for the element-level sibling group.
pub const NFRI_GROUP: &str = "NFRI";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightGroup {
    pub members: Vec<String>,
    pub weights: Vec<f64>,
}

/// Positive weights for every sibling group in a hierarchy, keyed by
/// `(level, parent id)`. Parent ids are sub-element ids, element codes, or
/// [`NFRI_GROUP`]. Members follow the hierarchy's declaration order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightDraw {
    pub groups: BTreeMap<(Level, String), WeightGroup>,
}

impl WeightDraw {
    /// Sibling groups of `spec` with their members, in a fixed order.
    pub fn sibling_groups(spec: &HierarchySpec) -> Vec<(Level, String, Vec<String>)> {
        let mut out = Vec::new();
        for sub in &spec.sub_elements {
            out.push((Level::Indicator, sub.id.clone(), sub.indicator_ids.clone()));
        }
        for e in ElementId::ALL {
            let members = spec.sub_elements_of(e).map(|s| s.id.clone()).collect();
            out.push((Level::SubElement, e.code().to_owned(), members));
        }
        let elements = ElementId::ALL.iter().map(|e| e.code().to_owned()).collect();
        out.push((Level::Element, NFRI_GROUP.to_owned(), elements));
        out
    }

    /// Weights `1/k` in every group of size `k`.
    pub fn equal(spec: &HierarchySpec) -> WeightDraw {
        let groups = Self::sibling_groups(spec)
            .into_iter()
            .map(|(level, id, members)| {
                let k = members.len();
                let weights = vec![1.0 / k as f64; k];
                ((level, id), WeightGroup { members, weights })
            })
            .collect();
        WeightDraw { groups }
    }

    pub fn group(&self, level: Level, id: &str) -> Option<&WeightGroup> {
        self.groups.get(&(level, id.to_owned()))
    }
}

/// Mean of the available children, or `None` when coverage is below θ.
/// `weights`, when given, is aligned with `values` and renormalized over them.
fn gated_mean(
    values: &[f64],
    weights: Option<&[f64]>,
    total: usize,
    policy: &MissingDataPolicy,
) -> Option<f64> {
    if total == 0 || !policy.admits(values.len(), total) {
        return None;
    }
    Some(match weights {
        None => values.iter().sum::<f64>() / values.len() as f64,
        Some(w) => {
            let num: f64 = values.iter().zip(w).map(|(v, w)| v * w).sum();
            let den: f64 = w.iter().sum();
            num / den
        }
    })
}

fn mean_all(values: &[Option<f64>]) -> Option<f64> {
    let mut sum = 0.0;
    for v in values {
        sum += (*v)?;
    }
    Some(sum / values.len() as f64)
}

/// Equal-weighted mean of the present indicator scores in one sub-element.
pub fn score_sub_element(scores: &[f64], total: usize, policy: &MissingDataPolicy) -> Option<f64> {
    gated_mean(scores, None, total, policy)
}

/// Same rule one level up.
pub fn score_element(sub_scores: &[f64], total: usize, policy: &MissingDataPolicy) -> Option<f64> {
    gated_mean(sub_scores, None, total, policy)
}

pub type ElementScores = BTreeMap<ElementId, Option<f64>>;

/// Normalized scores of one country-year: `indicator id → (score, degenerate)`.
pub type IndicatorScores = BTreeMap<String, (f64, bool)>;

/// [`IndicatorScores`] for every `(country, year)`.
pub type PanelScores = BTreeMap<(String, i32), IndicatorScores>;

fn element(e: &ElementScores, id: ElementId) -> Option<f64> {
    e.get(&id).copied().flatten()
}

/// Government, Business and Citizens readiness: the mean of each actor's two elements.
pub fn actor_readiness(e: &ElementScores) -> BTreeMap<Actor, Option<f64>> {
    Actor::ALL
        .into_iter()
        .map(|a| (a, mean_all(&a.elements().map(|id| element(e, id)))))
        .collect()
}

/// `(NRI, NAI)`: the resilience and adaptive-capacity averages over the three actors.
pub fn thematic_indexes(e: &ElementScores) -> (Option<f64>, Option<f64>) {
    let [nri, nai] = Theme::ALL.map(|t| mean_all(&t.elements().map(|id| element(e, id))));
    (nri, nai)
}

/// NFRI computed through the thematic and the actor sub-indexes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualPathCheck {
    /// mean(NRI, NAI)
    pub thematic: f64,
    /// mean(Government, Business, Citizens readiness)
    pub actor: f64,
    /// |thematic − actor|
    pub gap: f64,
}

/// NFRI as the mean of the six elements, with the two sub-index routes recorded
/// when every element is present.
pub fn nfri(e: &ElementScores, policy: &MissingDataPolicy) -> (Option<f64>, Option<DualPathCheck>) {
    nfri_weighted(e, policy, None)
}

fn dual_path(e: &ElementScores) -> Option<DualPathCheck> {
    let (nri, nai) = thematic_indexes(e);
    let thematic = mean_all(&[nri, nai])?;
    let actors: Vec<Option<f64>> = actor_readiness(e).into_values().collect();
    let actor = mean_all(&actors)?;
    Some(DualPathCheck {
        thematic,
        actor,
        gap: (thematic - actor).abs(),
    })
}

fn nfri_weighted(
    e: &ElementScores,
    policy: &MissingDataPolicy,
    weights: Option<&[f64]>,
) -> (Option<f64>, Option<DualPathCheck>) {
    let mut values = Vec::with_capacity(6);
    let mut w = Vec::with_capacity(6);
    for (k, id) in ElementId::ALL.into_iter().enumerate() {
        if let Some(v) = element(e, id) {
            values.push(v);
            if let Some(ws) = weights {
                w.push(ws[k]);
            }
        }
    }
    if policy.element_required_for_nfri && values.len() < 6 {
        return (None, None);
    }
    let score = gated_mean(&values, weights.map(|_| w.as_slice()), 6, policy);
    (score, dual_path(e))
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct LevelCoverage {
    pub indicators: f64,
    pub sub_elements: f64,
    pub elements: f64,
}

/// Every score for one country-year.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreCard {
    pub country: String,
    pub year: i32,
    pub indicator_scores: BTreeMap<String, f64>,
    pub degenerate_indicators: BTreeSet<String>,
    pub sub_element_scores: BTreeMap<String, Option<f64>>,
    pub element_scores: ElementScores,
    pub actor_readiness: BTreeMap<Actor, Option<f64>>,
    pub nri: Option<f64>,
    pub nai: Option<f64>,
    pub nfri: Option<f64>,
    pub nfri_check: Option<DualPathCheck>,
    pub coverage: LevelCoverage,
}

impl ScoreCard {
    pub fn score(&self, kind: ScoreKind) -> Option<f64> {
        match kind {
            ScoreKind::Nfri => self.nfri,
            ScoreKind::Nri => self.nri,
            ScoreKind::Nai => self.nai,
            ScoreKind::Actor(a) => self.actor_readiness.get(&a).copied().flatten(),
            ScoreKind::Element(e) => element(&self.element_scores, e),
        }
    }
}

/// Aggregates one country-year from its normalized indicator scores
/// (`id → (score, degenerate)`).
pub fn score_card(
    country: &str,
    year: i32,
    indicators: &IndicatorScores,
    spec: &HierarchySpec,
    policy: &MissingDataPolicy,
    weights: Option<&WeightDraw>,
) -> ScoreCard {
    let group = |level, id: &str| weights.and_then(|w| w.group(level, id));

    let mut sub_element_scores = BTreeMap::new();
    let mut element_scores = ElementScores::new();
    let mut subs_present = 0usize;
    let mut indicators_present = 0usize;
    let mut values = Vec::new();
    let mut w = Vec::new();
    for e in ElementId::ALL {
        let subs: Vec<_> = spec.sub_elements_of(e).collect();
        let mut sub_values = Vec::new();
        let mut sub_w = Vec::new();
        let sub_group = group(Level::SubElement, e.code());
        for (k, sub) in subs.iter().enumerate() {
            values.clear();
            w.clear();
            let ind_group = group(Level::Indicator, &sub.id);
            for (j, id) in sub.indicator_ids.iter().enumerate() {
                if let Some((s, _)) = indicators.get(id) {
                    values.push(*s);
                    if let Some(g) = ind_group {
                        w.push(g.weights[j]);
                    }
                }
            }
            indicators_present += values.len();
            let score = gated_mean(
                &values,
                ind_group.map(|_| w.as_slice()),
                sub.indicator_ids.len(),
                policy,
            );
            if let Some(s) = score {
                subs_present += 1;
                sub_values.push(s);
                if let Some(g) = sub_group {
                    sub_w.push(g.weights[k]);
                }
            }
            sub_element_scores.insert(sub.id.clone(), score);
        }
        let score = gated_mean(
            &sub_values,
            sub_group.map(|_| sub_w.as_slice()),
            subs.len(),
            policy,
        );
        element_scores.insert(e, score);
    }

    let (nri, nai) = thematic_indexes(&element_scores);
    let actors = actor_readiness(&element_scores);
    let nfri_weights = group(Level::Element, NFRI_GROUP).map(|g| g.weights.as_slice());
    let (nfri, nfri_check) = nfri_weighted(&element_scores, policy, nfri_weights);

    let frac = |n: usize, total: usize| {
        if total == 0 {
            0.0
        } else {
            n as f64 / total as f64
        }
    };
    let coverage = LevelCoverage {
        indicators: frac(indicators_present, spec.indicator_count()),
        sub_elements: frac(subs_present, spec.sub_elements.len()),
        elements: frac(element_scores.values().flatten().count(), 6),
    };

    ScoreCard {
        country: country.to_owned(),
        year,
        indicator_scores: indicators
            .iter()
            .map(|(k, (s, _))| (k.clone(), *s))
            .collect(),
        degenerate_indicators: indicators
            .iter()
            .filter(|(_, (_, d))| *d)
            .map(|(k, _)| k.clone())
            .collect(),
        sub_element_scores,
        element_scores,
        actor_readiness: actors,
        nri,
        nai,
        nfri,
        nfri_check,
        coverage,
    }
}

/// Groups normalized scores by `(country, year)`. Every country-year in `d`
/// gets an entry, even if all of its values are missing.
pub(crate) fn group_scores(d: &Dataset, scores: &[IndicatorScore]) -> PanelScores {
    let mut out: PanelScores = d
        .country_years()
        .into_iter()
        .map(|k| (k, BTreeMap::new()))
        .collect();
    for s in scores {
        out.entry((s.country.clone(), s.year))
            .or_default()
            .insert(s.indicator_id.clone(), (s.score, s.degenerate));
    }
    out
}

/// One [`ScoreCard`] per country-year in `d`, sorted by country then year.
pub fn build_scorecards(
    d: &Dataset,
    spec: &HierarchySpec,
    bounds: &BoundsPolicy,
    missing: &MissingDataPolicy,
) -> Result<Vec<ScoreCard>, NormalizeError> {
    missing.validate()?;
    let scores = normalize_dataset(d, spec, bounds)?;
    Ok(group_scores(d, &scores)
        .iter()
        .map(|((c, y), ind)| score_card(c, *y, ind, spec, missing, None))
        .collect())
}

/// Which score a ranking uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ScoreKind {
    Nfri,
    Nri,
    Nai,
    Actor(Actor),
    Element(ElementId),
}

impl ScoreKind {
    pub const ALL: [ScoreKind; 12] = [
        ScoreKind::Nfri,
        ScoreKind::Nri,
        ScoreKind::Nai,
        ScoreKind::Actor(Actor::Government),
        ScoreKind::Actor(Actor::Business),
        ScoreKind::Actor(Actor::Citizens),
        ScoreKind::Element(ElementId::GR),
        ScoreKind::Element(ElementId::GA),
        ScoreKind::Element(ElementId::BR),
        ScoreKind::Element(ElementId::BA),
        ScoreKind::Element(ElementId::CR),
        ScoreKind::Element(ElementId::CA),
    ];

    pub fn label(self) -> &'static str {
        match self {
            ScoreKind::Nfri => "nfri",
            ScoreKind::Nri => "nri",
            ScoreKind::Nai => "nai",
            ScoreKind::Actor(Actor::Government) => "gov",
            ScoreKind::Actor(Actor::Business) => "bus",
            ScoreKind::Actor(Actor::Citizens) => "cit",
            ScoreKind::Element(ElementId::GR) => "gr",
            ScoreKind::Element(ElementId::GA) => "ga",
            ScoreKind::Element(ElementId::BR) => "br",
            ScoreKind::Element(ElementId::BA) => "ba",
            ScoreKind::Element(ElementId::CR) => "cr",
            ScoreKind::Element(ElementId::CA) => "ca",
        }
    }
}

impl fmt::Display for ScoreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ScoreKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        ScoreKind::ALL
            .into_iter()
            .find(|k| k.label() == lower)
            .ok_or_else(|| format!("unknown score kind {s:?}"))
    }
}

impl From<ScoreKind> for String {
    fn from(k: ScoreKind) -> String {
        k.label().to_owned()
    }
}

impl TryFrom<String> for ScoreKind {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankRow {
    pub rank: usize,
    pub country: String,
    pub year: i32,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankTable {
    pub score_kind: ScoreKind,
    pub rows: Vec<RankRow>,
    /// `(country, year)` pairs whose score is missing.
    pub unranked: Vec<(String, i32)>,
}

/// Descending ranking with shared minimum ranks for ties; equal scores are
/// listed by country code.
pub fn rank(cards: &[ScoreCard], score_kind: ScoreKind) -> RankTable {
    let mut scored = Vec::new();
    let mut unranked = Vec::new();
    for c in cards {
        match c.score(score_kind) {
            Some(s) => scored.push((s, c.country.clone(), c.year)),
            None => unranked.push((c.country.clone(), c.year)),
        }
    }
    scored.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then_with(|| a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });
    unranked.sort();

    let mut rows: Vec<RankRow> = Vec::with_capacity(scored.len());
    for (i, (score, country, year)) in scored.into_iter().enumerate() {
        let rank = match rows.last() {
            Some(prev) if prev.score == score => prev.rank,
            _ => i + 1,
        };
        rows.push(RankRow {
            rank,
            country,
            year,
            score,
        });
    }
    RankTable {
        score_kind,
        rows,
        unranked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p() -> MissingDataPolicy {
        MissingDataPolicy::default()
    }

    fn elements(v: [f64; 6]) -> ElementScores {
        ElementId::ALL
            .into_iter()
            .zip(v)
            .map(|(e, s)| (e, Some(s)))
            .collect()
    }

    #[test]
    fn node_means() {
        assert_eq!(score_sub_element(&[1.0, 100.0], 2, &p()), Some(50.5));
        assert_eq!(score_sub_element(&[60.0], 3, &p()), None);
        assert_eq!(score_sub_element(&[20.0, 30.0, 40.0], 3, &p()), Some(30.0));
        assert_eq!(score_sub_element(&[60.0], 2, &p()), Some(60.0));
        assert_eq!(score_sub_element(&[], 2, &p()), None);
        assert_eq!(score_element(&[80.0; 5], 5, &p()), Some(80.0));
        assert_eq!(score_element(&[10.0, 90.0], 5, &p()), None);
        assert_eq!(score_element(&[10.0, 90.0, 50.0], 5, &p()), Some(50.0));
    }

    #[test]
    fn sub_indexes() {
        // GR, GA, BR, BA, CR, CA
        let e = elements([10.0, 20.0, 30.0, 40.0, 50.0, 60.0]);
        let a = actor_readiness(&e);
        assert_eq!(a[&Actor::Government], Some(15.0));
        assert_eq!(a[&Actor::Business], Some(35.0));
        assert_eq!(a[&Actor::Citizens], Some(55.0));
        assert_eq!(thematic_indexes(&e), (Some(30.0), Some(40.0)));
        let (score, check) = nfri(&e, &p());
        assert_eq!(score, Some(35.0));
        let check = check.unwrap();
        assert_eq!((check.thematic, check.actor, check.gap), (35.0, 35.0, 0.0));
    }

    #[test]
    fn missing_operands() {
        let mut e = elements([10.0, 20.0, 30.0, 40.0, 50.0, 60.0]);
        e.insert(ElementId::GR, None);
        assert_eq!(actor_readiness(&e)[&Actor::Government], None);
        assert_eq!(thematic_indexes(&e).0, None);

        let mut e = elements([7.0; 6]);
        e.insert(ElementId::CA, None);
        assert_eq!(nfri(&e, &p()), (None, None));
        let partial = MissingDataPolicy {
            element_required_for_nfri: false,
            ..p()
        };
        assert_eq!(nfri(&e, &partial).0, Some(7.0));
    }

    #[test]
    fn constant_elements() {
        let e = elements([42.0; 6]);
        assert!(actor_readiness(&e).values().all(|v| *v == Some(42.0)));
        assert_eq!(thematic_indexes(&e), (Some(42.0), Some(42.0)));
        let (s, c) = nfri(&e, &p());
        assert_eq!(s, Some(42.0));
        assert_eq!(c.unwrap().gap, 0.0);
    }

    fn card(country: &str, nfri: Option<f64>) -> ScoreCard {
        ScoreCard {
            country: country.into(),
            year: 2024,
            indicator_scores: BTreeMap::new(),
            degenerate_indicators: BTreeSet::new(),
            sub_element_scores: BTreeMap::new(),
            element_scores: ElementScores::new(),
            actor_readiness: BTreeMap::new(),
            nri: None,
            nai: None,
            nfri,
            nfri_check: None,
            coverage: LevelCoverage::default(),
        }
    }

    fn ranks(cards: &[ScoreCard]) -> Vec<(String, usize)> {
        rank(cards, ScoreKind::Nfri)
            .rows
            .into_iter()
            .map(|r| (r.country, r.rank))
            .collect()
    }

    #[test]
    fn rank_examples() {
        let t = ranks(&[
            card("B", Some(50.0)),
            card("C", Some(40.0)),
            card("A", Some(50.0)),
        ]);
        assert_eq!(t, [("A".into(), 1), ("B".into(), 1), ("C".into(), 3)]);
        assert_eq!(ranks(&[card("A", Some(1.0))]), [("A".into(), 1)]);
        let t = ranks(&[
            card("A", Some(10.0)),
            card("B", Some(20.0)),
            card("C", Some(30.0)),
        ]);
        assert_eq!(t, [("C".into(), 1), ("B".into(), 2), ("A".into(), 3)]);

        let table = rank(&[card("A", None), card("B", Some(3.0))], ScoreKind::Nfri);
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.unranked, [("A".to_owned(), 2024)]);
    }

    #[test]
    fn score_kind_labels() {
        for k in ScoreKind::ALL {
            assert_eq!(k.label().parse::<ScoreKind>().unwrap(), k);
        }
        assert!("xyz".parse::<ScoreKind>().is_err());
        assert_eq!("NRI".parse::<ScoreKind>().unwrap(), ScoreKind::Nri);
    }

    proptest! {
        #[test]
        fn dual_aggregation_identity(v in proptest::array::uniform6(1.0f64..=100.0)) {
            let e = elements(v);
            let (s, check) = nfri(&e, &p());
            let s = s.unwrap();
            let check = check.unwrap();
            prop_assert!((check.thematic - s).abs() <= 1e-12);
            prop_assert!((check.actor - s).abs() <= 1e-12);
            prop_assert!((1.0..=100.0).contains(&s));
        }

        #[test]
        fn ranks_match_brute_force(scores in proptest::collection::vec(0u8..6, 1..30)) {
            let cards: Vec<ScoreCard> = scores
                .iter()
                .enumerate()
                .map(|(i, s)| card(&format!("C{i:02}"), Some(*s as f64)))
                .collect();
            let table = rank(&cards, ScoreKind::Nfri);
            for w in table.rows.windows(2) {
                prop_assert!(w[0].score >= w[1].score);
                if w[0].score == w[1].score {
                    prop_assert!(w[0].country < w[1].country);
                }
            }
            for row in &table.rows {
                let better = scores.iter().filter(|s| **s as f64 > row.score).count();
                prop_assert_eq!(row.rank, better + 1);
            }
        }
    }
}
