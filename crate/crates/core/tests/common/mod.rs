//! Independent reference implementations used by the integration suites.
//! Nothing here calls the engine's normalization or aggregation code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use ifr::prelude::*;

/// Both min–max formulas written out directly.
pub fn direct_score(x: f64, min: f64, max: f64, orientation: Orientation) -> f64 {
    match orientation {
        Orientation::Positive => 1.0 + (x - min) / (max - min) * (100.0 - 1.0),
        Orientation::Negative => 1.0 + (max - x) / (max - min) * (100.0 - 1.0),
    }
}

#[derive(Debug, Default, Clone)]
pub struct OracleCard {
    pub sub_elements: BTreeMap<String, Option<f64>>,
    pub elements: BTreeMap<ElementId, Option<f64>>,
    pub gov: Option<f64>,
    pub bus: Option<f64>,
    pub cit: Option<f64>,
    pub nri: Option<f64>,
    pub nai: Option<f64>,
    pub nfri: Option<f64>,
}

fn gated(values: &[f64], total: usize, theta: f64) -> Option<f64> {
    if values.is_empty() || (values.len() as f64) / (total as f64) < theta {
        return None;
    }
    let mut s = 0.0;
    for v in values {
        s += v;
    }
    Some(s / values.len() as f64)
}

fn both(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    Some((a? + b?) / 2.0)
}

fn three(a: Option<f64>, b: Option<f64>, c: Option<f64>) -> Option<f64> {
    Some((a? + b? + c?) / 3.0)
}

/// Naive nested-loop scorer: in-sample per-year min–max, then gated
/// mean-of-means up the tree. NFRI requires all six elements.
pub fn oracle_scorecards(
    data: &Dataset,
    spec: &HierarchySpec,
    theta: f64,
) -> BTreeMap<(String, i32), OracleCard> {
    let mut out = BTreeMap::new();
    let obs: Vec<Observation> = data.observations().collect();
    let mut country_years: Vec<(String, i32)> =
        obs.iter().map(|o| (o.country.clone(), o.year)).collect();
    country_years.sort();
    country_years.dedup();

    for (country, year) in country_years {
        let mut card = OracleCard::default();
        for e in ElementId::ALL {
            let mut sub_vals = Vec::new();
            let mut n_subs = 0;
            for sub in spec.sub_elements.iter().filter(|s| s.element == e) {
                n_subs += 1;
                let mut ind_vals = Vec::new();
                for id in &sub.indicator_ids {
                    let def = spec.indicators.iter().find(|i| &i.id == id).unwrap();
                    let mine = obs
                        .iter()
                        .find(|o| o.country == country && o.year == year && &o.indicator_id == id)
                        .and_then(|o| o.value);
                    let Some(x) = mine else { continue };
                    let mut lo = f64::INFINITY;
                    let mut hi = f64::NEG_INFINITY;
                    for o in &obs {
                        if o.year == year && &o.indicator_id == id {
                            if let Some(v) = o.value {
                                lo = lo.min(v);
                                hi = hi.max(v);
                            }
                        }
                    }
                    let s = if lo == hi {
                        50.5
                    } else {
                        direct_score(x, lo, hi, def.orientation)
                    };
                    ind_vals.push(s);
                }
                let s = gated(&ind_vals, sub.indicator_ids.len(), theta);
                if let Some(v) = s {
                    sub_vals.push(v);
                }
                card.sub_elements.insert(sub.id.clone(), s);
            }
            card.elements.insert(e, gated(&sub_vals, n_subs, theta));
        }
        let el = |e: ElementId| card.elements[&e];
        card.gov = both(el(ElementId::GR), el(ElementId::GA));
        card.bus = both(el(ElementId::BR), el(ElementId::BA));
        card.cit = both(el(ElementId::CR), el(ElementId::CA));
        card.nri = three(el(ElementId::GR), el(ElementId::BR), el(ElementId::CR));
        card.nai = three(el(ElementId::GA), el(ElementId::BA), el(ElementId::CA));
        let six: Vec<f64> = ElementId::ALL.iter().filter_map(|e| el(*e)).collect();
        card.nfri = if six.len() == 6 {
            Some(six.iter().sum::<f64>() / 6.0)
        } else {
            None
        };
        out.insert((country, year), card);
    }
    out
}

/// Rank by brute force: 1 + number of strictly better scores.
pub fn brute_force_ranks(scores: &BTreeMap<String, f64>) -> BTreeMap<String, usize> {
    scores
        .iter()
        .map(|(c, s)| (c.clone(), 1 + scores.values().filter(|o| *o > s).count()))
        .collect()
}

pub fn close(a: Option<f64>, b: Option<f64>, tol: f64) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => (x - y).abs() <= tol,
        _ => false,
    }
}

/// Rebuilds a dataset with one transformation applied to every observation.
pub fn map_dataset(d: &Dataset, mut f: impl FnMut(&Observation) -> Option<f64>) -> Dataset {
    Dataset::from_observations(d.observations().map(|o| {
        let v = f(&o);
        Observation { value: v, ..o }
    }))
    .unwrap()
}
