//! Exports: run manifests, scorecards, rank tables, robustness reports and
//! country profiles as human tables, CSV, or JSON.
//!
//! Machine formats carry full precision and sorted keys and never embed a
//! timestamp; only the manifest written by [`RunManifest::to_sidecar_json`]
//! does. Human tables print one decimal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::aggregate::{MissingDataPolicy, RankTable, ScoreCard, ScoreKind};
use crate::ingest::{CoverageReport, Dataset};
use crate::normalize::{BoundsMode, BoundsPolicy};
use crate::sensitivity::{RobustnessReport, SensitivityConfig, SwitchMatrix};
use crate::taxonomy::{serialize_hierarchy, Actor, ElementId, HierarchySpec};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no data for country {country}{}", .year.map(|y| format!(" in {y}")).unwrap_or_default())]
    Lookup { country: String, year: Option<i32> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub hierarchy_name: String,
    pub hierarchy_version: String,
    pub bounds_policy: BoundsPolicy,
    pub missing_policy: MissingDataPolicy,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sensitivity: Option<SensitivityConfig>,
    /// SHA-256 of the canonical hierarchy document and canonical dataset CSV,
    /// so reordered input rows give the same digest.
    pub input_digests: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(
        spec: &HierarchySpec,
        data: &Dataset,
        bounds: &BoundsPolicy,
        missing: &MissingDataPolicy,
    ) -> Self {
        let mut input_digests = BTreeMap::new();
        input_digests.insert(
            "hierarchy".to_owned(),
            sha256_hex(serialize_hierarchy(spec).as_bytes()),
        );
        input_digests.insert("data".to_owned(), sha256_hex(data.to_csv().as_bytes()));
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            hierarchy_name: spec.name.clone(),
            hierarchy_version: spec.version.clone(),
            bounds_policy: *bounds,
            missing_policy: *missing,
            sensitivity: None,
            input_digests,
            timestamp: None,
        }
    }

    pub fn with_sensitivity(mut self, config: &SensitivityConfig) -> Self {
        self.sensitivity = Some(config.clone());
        self
    }

    /// The manifest plus a wall-clock timestamp (seconds since the Unix epoch).
    pub fn to_sidecar_json(&self) -> String {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or_default();
        let stamped = RunManifest {
            timestamp: Some(secs.to_string()),
            ..self.clone()
        };
        to_json(&stamped)
    }

    fn table_header(&self) -> String {
        format!(
            "# {} v{} | bounds={} theta={} | ifr {}\n",
            self.hierarchy_name,
            self.hierarchy_version,
            policy_label(&self.bounds_policy),
            self.missing_policy.coverage_threshold,
            self.tool_version
        )
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn human(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_owned(), |v| format!("{v:.1}"))
}

fn machine(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Right-aligned fixed-width table; first column left-aligned.
fn text_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for r in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| {
                if i == 0 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

const SUMMARY_KINDS: [ScoreKind; 12] = ScoreKind::ALL;

// ---------------------------------------------------------------- scorecards

pub fn scorecards(
    cards: &[ScoreCard],
    spec: &HierarchySpec,
    manifest: &RunManifest,
    format: Format,
) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                manifest: &'a RunManifest,
                scorecards: &'a [ScoreCard],
            }
            to_json(&Doc {
                manifest,
                scorecards: cards,
            })
        }
        Format::Csv => {
            let mut header: Vec<String> = ["country", "year"].map(String::from).to_vec();
            header.extend(SUMMARY_KINDS.iter().map(|k| k.label().to_owned()));
            header.extend(
                [
                    "nfri_path_gap",
                    "coverage_indicators",
                    "coverage_sub_elements",
                    "coverage_elements",
                ]
                .map(String::from),
            );
            header.extend(spec.sub_elements.iter().map(|s| s.id.clone()));
            header.extend(spec.indicators.iter().map(|i| i.id.clone()));
            let mut rows = vec![header];
            for c in cards {
                let mut r = vec![c.country.clone(), c.year.to_string()];
                r.extend(SUMMARY_KINDS.iter().map(|k| machine(c.score(*k))));
                r.push(machine(c.nfri_check.map(|p| p.gap)));
                r.push(c.coverage.indicators.to_string());
                r.push(c.coverage.sub_elements.to_string());
                r.push(c.coverage.elements.to_string());
                r.extend(
                    spec.sub_elements
                        .iter()
                        .map(|s| machine(c.sub_element_scores.get(&s.id).copied().flatten())),
                );
                r.extend(
                    spec.indicators
                        .iter()
                        .map(|i| machine(c.indicator_scores.get(&i.id).copied())),
                );
                rows.push(r);
            }
            csv_string(rows)
        }
        Format::Table => {
            let mut header: Vec<String> = ["country", "year"].map(String::from).to_vec();
            header.extend(SUMMARY_KINDS.iter().map(|k| k.label().to_uppercase()));
            header.push("COV%".into());
            let rows: Vec<Vec<String>> = cards
                .iter()
                .map(|c| {
                    let mut r = vec![c.country.clone(), c.year.to_string()];
                    r.extend(SUMMARY_KINDS.iter().map(|k| human(c.score(*k))));
                    r.push(format!("{:.1}", c.coverage.indicators * 100.0));
                    r
                })
                .collect();
            manifest.table_header() + &text_table(&header, &rows)
        }
    }
}

// ---------------------------------------------------------------- ranks

pub fn rank_table(table: &RankTable, manifest: &RunManifest, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                manifest: &'a RunManifest,
                ranking: &'a RankTable,
            }
            to_json(&Doc {
                manifest,
                ranking: table,
            })
        }
        Format::Csv => {
            let mut rows = vec![["rank", "country", "year", table.score_kind.label()]
                .map(String::from)
                .to_vec()];
            for r in &table.rows {
                rows.push(vec![
                    r.rank.to_string(),
                    r.country.clone(),
                    r.year.to_string(),
                    r.score.to_string(),
                ]);
            }
            for (c, y) in &table.unranked {
                rows.push(vec![String::new(), c.clone(), y.to_string(), String::new()]);
            }
            csv_string(rows)
        }
        Format::Table => {
            let header = [
                "rank",
                "country",
                "year",
                &table.score_kind.label().to_uppercase(),
            ]
            .map(String::from);
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.rank.to_string(),
                        r.country.clone(),
                        r.year.to_string(),
                        human(Some(r.score)),
                    ]
                })
                .collect();
            let mut out = manifest.table_header() + &text_table(&header, &rows);
            if !table.unranked.is_empty() {
                out.push_str("\nunranked (score missing):\n");
                for (c, y) in &table.unranked {
                    let _ = writeln!(out, "  {c} {y}");
                }
            }
            out
        }
    }
}

// ---------------------------------------------------------------- robustness

pub fn robustness(
    report: &RobustnessReport,
    switch: Option<&SwitchMatrix>,
    manifest: &RunManifest,
    format: Format,
) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                manifest: &'a RunManifest,
                robustness: &'a RobustnessReport,
                #[serde(skip_serializing_if = "Option::is_none")]
                normalization_switch: Option<&'a SwitchMatrix>,
            }
            to_json(&Doc {
                manifest,
                robustness: report,
                normalization_switch: switch,
            })
        }
        Format::Csv => {
            let mut rows = vec![[
                "country",
                "baseline_score",
                "baseline_rank",
                "min_rank",
                "max_rank",
                "mean_abs_rank_shift",
            ]
            .map(String::from)
            .to_vec()];
            for c in &report.countries {
                rows.push(vec![
                    c.country.clone(),
                    c.baseline_score.to_string(),
                    c.baseline_rank.to_string(),
                    c.min_rank.to_string(),
                    c.max_rank.to_string(),
                    c.mean_abs_rank_shift.to_string(),
                ]);
            }
            csv_string(rows)
        }
        Format::Table => {
            let mut out = manifest.table_header();
            let _ = writeln!(
                out,
                "# trials={} sigma={} seed={} year={}",
                report.config.trials,
                report.config.sigma,
                report.seed,
                report.year.map_or("-".into(), |y| y.to_string())
            );
            let _ = writeln!(
                out,
                "mean spearman rho vs baseline: {}   min: {}",
                report
                    .mean_spearman
                    .map_or("-".into(), |r| format!("{r:.4}")),
                report
                    .min_spearman
                    .map_or("-".into(), |r| format!("{r:.4}")),
            );
            let header = ["country", "NFRI", "rank", "min", "max", "mean|shift|"].map(String::from);
            let rows: Vec<Vec<String>> = report
                .countries
                .iter()
                .map(|c| {
                    vec![
                        c.country.clone(),
                        human(Some(c.baseline_score)),
                        c.baseline_rank.to_string(),
                        c.min_rank.to_string(),
                        c.max_rank.to_string(),
                        format!("{:.2}", c.mean_abs_rank_shift),
                    ]
                })
                .collect();
            out.push_str(&text_table(&header, &rows));
            if !report.unranked.is_empty() {
                let _ = writeln!(
                    out,
                    "\nunranked (NFRI missing): {}",
                    report.unranked.join(", ")
                );
            }
            if let Some(m) = switch {
                let _ = writeln!(
                    out,
                    "\nnormalization switch (spearman rho, {} countries):",
                    m.countries.len()
                );
                let labels: Vec<String> = m.policies.iter().map(policy_label).collect();
                let mut header = vec![String::new()];
                header.extend(labels.iter().cloned());
                let rows: Vec<Vec<String>> = m
                    .rho
                    .iter()
                    .zip(&labels)
                    .map(|(row, l)| {
                        let mut r = vec![l.clone()];
                        r.extend(row.iter().map(|v| format!("{v:.4}")));
                        r
                    })
                    .collect();
                out.push_str(&text_table(&header, &rows));
            }
            out
        }
    }
}

pub fn bounds_label(mode: BoundsMode) -> &'static str {
    match mode {
        BoundsMode::InSamplePerYear => "in-sample",
        BoundsMode::PooledPanel => "pooled",
        BoundsMode::FixedGoalposts => "goalposts",
    }
}

/// Mode name plus any trim percentiles, e.g. `in-sample[5,95]`.
pub fn policy_label(p: &BoundsPolicy) -> String {
    match p.trim_percentiles {
        Some((lo, hi)) => format!("{}[{lo},{hi}]", bounds_label(p.mode)),
        None => bounds_label(p.mode).to_owned(),
    }
}

// ---------------------------------------------------------------- coverage

pub fn coverage(report: &CoverageReport, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                country: &'a str,
                year: i32,
                coverage: f64,
            }
            #[derive(Serialize)]
            struct Doc<'a> {
                global: f64,
                country_year: Vec<Row<'a>>,
                indicator: &'a BTreeMap<String, f64>,
            }
            to_json(&Doc {
                global: report.global,
                country_year: report
                    .country_year
                    .iter()
                    .map(|((c, y), v)| Row {
                        country: c,
                        year: *y,
                        coverage: *v,
                    })
                    .collect(),
                indicator: &report.indicator,
            })
        }
        Format::Csv => {
            let mut rows = vec![["country", "year", "coverage"].map(String::from).to_vec()];
            for ((c, y), v) in &report.country_year {
                rows.push(vec![c.clone(), y.to_string(), v.to_string()]);
            }
            csv_string(rows)
        }
        Format::Table => {
            let mut out = format!("global coverage: {:.1}%\n", report.global * 100.0);
            let header = ["country", "year", "coverage%"].map(String::from);
            let rows: Vec<Vec<String>> = report
                .country_year
                .iter()
                .map(|((c, y), v)| vec![c.clone(), y.to_string(), format!("{:.1}", v * 100.0)])
                .collect();
            if !rows.is_empty() {
                out.push_str(&text_table(&header, &rows));
            }
            out
        }
    }
}

// ---------------------------------------------------------------- profile

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileLevel {
    Index,
    Thematic,
    Actor,
    Element,
    SubElement,
    Indicator,
}

impl ProfileLevel {
    fn label(self) -> &'static str {
        match self {
            ProfileLevel::Index => "index",
            ProfileLevel::Thematic => "thematic",
            ProfileLevel::Actor => "actor",
            ProfileLevel::Element => "element",
            ProfileLevel::SubElement => "sub_element",
            ProfileLevel::Indicator => "indicator",
        }
    }

    fn depth(self) -> usize {
        match self {
            ProfileLevel::Index => 0,
            ProfileLevel::Thematic | ProfileLevel::Actor => 1,
            ProfileLevel::Element => 2,
            ProfileLevel::SubElement => 3,
            ProfileLevel::Indicator => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileRow {
    pub level: ProfileLevel,
    pub id: String,
    pub name: String,
    pub parent: Option<String>,
    pub score: Option<f64>,
    /// Share of children with a score, for interior nodes.
    pub coverage: Option<f64>,
    pub degenerate: bool,
    pub provisional_orientation: bool,
}

/// Tree-ordered breakdown of one country-year: NFRI, the thematic and actor
/// sub-indexes, then each actor's elements with their sub-elements and
/// indicators.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Profile {
    pub country: String,
    pub year: i32,
    pub rows: Vec<ProfileRow>,
}

impl Profile {
    pub fn rows_at(&self, level: ProfileLevel) -> impl Iterator<Item = &ProfileRow> {
        self.rows.iter().filter(move |r| r.level == level)
    }
}

fn actor_id(a: Actor) -> &'static str {
    match a {
        Actor::Government => "GOV",
        Actor::Business => "BUS",
        Actor::Citizens => "CIT",
    }
}

fn actor_name(a: Actor) -> &'static str {
    match a {
        Actor::Government => "Government Future Readiness",
        Actor::Business => "Business Future Readiness",
        Actor::Citizens => "Citizens Future Readiness",
    }
}

/// Finds the card for `country` (latest year when `year` is `None`) and lays
/// it out as a [`Profile`].
pub fn profile(
    cards: &[ScoreCard],
    spec: &HierarchySpec,
    country: &str,
    year: Option<i32>,
) -> Result<Profile, ReportError> {
    let card = cards
        .iter()
        .filter(|c| c.country == country && year.is_none_or(|y| c.year == y))
        .max_by_key(|c| c.year)
        .ok_or_else(|| ReportError::Lookup {
            country: country.to_owned(),
            year,
        })?;

    let mut rows = Vec::new();
    let mut push = |level, id: &str, name: &str, parent: Option<&str>, score, coverage| {
        rows.push(ProfileRow {
            level,
            id: id.to_owned(),
            name: name.to_owned(),
            parent: parent.map(str::to_owned),
            score,
            coverage,
            degenerate: false,
            provisional_orientation: false,
        });
    };
    let elements_present = |es: &[ElementId]| {
        es.iter()
            .filter(|e| card.element_scores.get(e).copied().flatten().is_some())
            .count() as f64
            / es.len() as f64
    };

    push(
        ProfileLevel::Index,
        "NFRI",
        "National Future Readiness Index",
        None,
        card.nfri,
        Some(card.coverage.elements),
    );
    push(
        ProfileLevel::Thematic,
        "NRI",
        "National Resilience Index",
        Some("NFRI"),
        card.nri,
        Some(elements_present(
            &crate::taxonomy::Theme::Resilience.elements(),
        )),
    );
    push(
        ProfileLevel::Thematic,
        "NAI",
        "National Adaptive Capacity Index",
        Some("NFRI"),
        card.nai,
        Some(elements_present(
            &crate::taxonomy::Theme::AdaptiveCapacity.elements(),
        )),
    );
    for a in Actor::ALL {
        push(
            ProfileLevel::Actor,
            actor_id(a),
            actor_name(a),
            Some("NFRI"),
            card.actor_readiness.get(&a).copied().flatten(),
            Some(elements_present(&a.elements())),
        );
    }
    let mut tail = Vec::new();
    for a in Actor::ALL {
        for e in a.elements() {
            let subs: Vec<_> = spec.sub_elements_of(e).collect();
            let present = subs
                .iter()
                .filter(|s| {
                    card.sub_element_scores
                        .get(&s.id)
                        .copied()
                        .flatten()
                        .is_some()
                })
                .count();
            tail.push(ProfileRow {
                level: ProfileLevel::Element,
                id: e.code().to_owned(),
                name: e.display_name().to_owned(),
                parent: Some(actor_id(a).to_owned()),
                score: card.element_scores.get(&e).copied().flatten(),
                coverage: Some(present as f64 / subs.len().max(1) as f64),
                degenerate: false,
                provisional_orientation: false,
            });
            for sub in subs {
                let present = sub
                    .indicator_ids
                    .iter()
                    .filter(|i| card.indicator_scores.contains_key(*i))
                    .count();
                tail.push(ProfileRow {
                    level: ProfileLevel::SubElement,
                    id: sub.id.clone(),
                    name: sub.display_name.clone(),
                    parent: Some(e.code().to_owned()),
                    score: card.sub_element_scores.get(&sub.id).copied().flatten(),
                    coverage: Some(present as f64 / sub.indicator_ids.len().max(1) as f64),
                    degenerate: false,
                    provisional_orientation: false,
                });
                for id in &sub.indicator_ids {
                    let def = spec.indicator(id);
                    tail.push(ProfileRow {
                        level: ProfileLevel::Indicator,
                        id: id.clone(),
                        name: def.map(|d| d.display_name.clone()).unwrap_or_default(),
                        parent: Some(sub.id.clone()),
                        score: card.indicator_scores.get(id).copied(),
                        coverage: None,
                        degenerate: card.degenerate_indicators.contains(id),
                        provisional_orientation: def.is_some_and(|d| d.orientation_provisional),
                    });
                }
            }
        }
    }
    rows.extend(tail);
    Ok(Profile {
        country: card.country.clone(),
        year: card.year,
        rows,
    })
}

pub fn profile_report(p: &Profile, manifest: &RunManifest, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                manifest: &'a RunManifest,
                profile: &'a Profile,
            }
            to_json(&Doc {
                manifest,
                profile: p,
            })
        }
        Format::Csv => profile_plot_data(p),
        Format::Table => {
            let mut out = manifest.table_header();
            let _ = writeln!(out, "{} {}", p.country, p.year);
            let width = p
                .rows
                .iter()
                .map(|r| 2 * r.level.depth() + r.id.len())
                .max()
                .unwrap_or(0);
            for r in &p.rows {
                let indent = "  ".repeat(r.level.depth());
                let mut flags = Vec::new();
                if let Some(c) = r.coverage {
                    if c < 1.0 {
                        flags.push(format!("coverage {:.0}%", c * 100.0));
                    }
                }
                if r.degenerate {
                    flags.push("degenerate bounds".into());
                }
                if r.provisional_orientation {
                    flags.push("provisional orientation".into());
                }
                let flags = if flags.is_empty() {
                    String::new()
                } else {
                    format!("  [{}]", flags.join(", "))
                };
                let id = format!("{indent}{}", r.id);
                let _ = writeln!(out, "{id:<width$} {:>6}  {}{flags}", human(r.score), r.name);
            }
            out
        }
    }
}

/// Long-format series (one row per node) for external charting.
pub fn profile_plot_data(p: &Profile) -> String {
    let mut rows = vec![[
        "country",
        "year",
        "level",
        "id",
        "parent",
        "score",
        "coverage",
        "degenerate",
    ]
    .map(String::from)
    .to_vec()];
    for r in &p.rows {
        rows.push(vec![
            p.country.clone(),
            p.year.to_string(),
            r.level.label().to_owned(),
            r.id.clone(),
            r.parent.clone().unwrap_or_default(),
            machine(r.score),
            machine(r.coverage),
            r.degenerate.to_string(),
        ]);
    }
    csv_string(rows)
}
