//! Observation panels: loading, keying, and coverage.
//!
//! Input is CSV with the exact header `country,year,indicator,value`. An empty
//! value or the literal `NA` marks a missing observation.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use serde::Serialize;
use thiserror::Error;

use crate::taxonomy::HierarchySpec;

pub const HEADER: [&str; 4] = ["country", "year", "indicator", "value"];

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("bad header: expected `country,year,indicator,value`, found `{0}`")]
    Header(String),
    #[error("format error at line {line}: {message}")]
    Format { line: u64, message: String },
    #[error("duplicate observation for ({country}, {year}, {indicator})")]
    DuplicateKey {
        country: String,
        year: i32,
        indicator: String,
    },
    #[error("unknown indicators: {}", .0.join(", "))]
    UnknownIndicators(Vec<String>),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Observation key: `(country, year, indicator)`.
pub type ObsKey = (String, i32, String);

#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub country: String,
    pub year: i32,
    pub indicator_id: String,
    pub value: Option<f64>,
}

/// An immutable panel of observations, stored in key order so that the
/// input row order never matters.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Dataset {
    values: BTreeMap<ObsKey, Option<f64>>,
}

impl Dataset {
    pub fn from_observations<I>(observations: I) -> Result<Dataset, IngestError>
    where
        I: IntoIterator<Item = Observation>,
    {
        let mut values = BTreeMap::new();
        for obs in observations {
            if let Some(v) = obs.value {
                if !v.is_finite() {
                    return Err(IngestError::Format {
                        line: 0,
                        message: format!(
                            "non-finite value for ({}, {}, {})",
                            obs.country, obs.year, obs.indicator_id
                        ),
                    });
                }
            }
            let key = (obs.country, obs.year, obs.indicator_id);
            if values.contains_key(&key) {
                let (country, year, indicator) = key;
                return Err(IngestError::DuplicateKey {
                    country,
                    year,
                    indicator,
                });
            }
            values.insert(key, obs.value);
        }
        Ok(Dataset { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, country: &str, year: i32, indicator: &str) -> Option<f64> {
        self.values
            .get(&(country.to_owned(), year, indicator.to_owned()))
            .copied()
            .flatten()
    }

    /// Observations in `(country, year, indicator)` order.
    pub fn observations(&self) -> impl Iterator<Item = Observation> + '_ {
        self.values.iter().map(|((c, y, i), v)| Observation {
            country: c.clone(),
            year: *y,
            indicator_id: i.clone(),
            value: *v,
        })
    }

    pub(crate) fn entries(&self) -> impl Iterator<Item = (&ObsKey, Option<f64>)> {
        self.values.iter().map(|(k, v)| (k, *v))
    }

    pub fn countries(&self) -> BTreeSet<String> {
        self.values.keys().map(|(c, _, _)| c.clone()).collect()
    }

    pub fn years(&self) -> BTreeSet<i32> {
        self.values.keys().map(|(_, y, _)| *y).collect()
    }

    pub fn latest_year(&self) -> Option<i32> {
        self.values.keys().map(|(_, y, _)| *y).max()
    }

    /// Distinct `(country, year)` pairs with at least one row.
    pub fn country_years(&self) -> BTreeSet<(String, i32)> {
        self.values
            .keys()
            .map(|(c, y, _)| (c.clone(), *y))
            .collect()
    }

    pub fn indicator_ids(&self) -> BTreeSet<&str> {
        self.values.keys().map(|(_, _, i)| i.as_str()).collect()
    }

    /// Canonical CSV rendering: header plus rows in key order. Two datasets
    /// are equal iff their canonical texts are equal.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(HEADER).expect("in-memory write");
        for ((c, y, i), v) in &self.values {
            let value = v.map(|v| v.to_string()).unwrap_or_default();
            w.write_record([c.as_str(), &y.to_string(), i.as_str(), &value])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}

fn parse_value(raw: &str, line: u64) -> Result<Option<f64>, IngestError> {
    if raw.is_empty() || raw == "NA" {
        return Ok(None);
    }
    let bad = |why: &str| IngestError::Format {
        line,
        message: format!("value {raw:?} {why}"),
    };
    // Reject the textual infinities and NaN that `f64::from_str` accepts.
    if !raw
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'))
    {
        return Err(bad("is not a decimal number"));
    }
    let v: f64 = raw.parse().map_err(|_| bad("is not a decimal number"))?;
    if !v.is_finite() {
        return Err(bad("is outside double-precision range"));
    }
    Ok(Some(v))
}

/// Reads an observation file. Every row becomes one observation; a repeated
/// key is an error.
pub fn load_observations<R: Read>(source: R) -> Result<Dataset, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(source);
    let header = reader.headers()?.clone();
    if header.iter().ne(HEADER) {
        return Err(IngestError::Header(
            header.iter().collect::<Vec<_>>().join(","),
        ));
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| match e.position() {
            Some(pos) => IngestError::Format {
                line: pos.line(),
                message: e.to_string(),
            },
            None => IngestError::Csv(e),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let country = record[0].to_owned();
        if country.is_empty() {
            return Err(IngestError::Format {
                line,
                message: "empty country code".into(),
            });
        }
        let year: i32 = record[1].parse().map_err(|_| IngestError::Format {
            line,
            message: format!("year {:?} is not an integer", &record[1]),
        })?;
        let indicator_id = record[2].to_owned();
        if indicator_id.is_empty() {
            return Err(IngestError::Format {
                line,
                message: "empty indicator id".into(),
            });
        }
        let value = parse_value(&record[3], line)?;
        rows.push(Observation {
            country,
            year,
            indicator_id,
            value,
        });
    }
    Dataset::from_observations(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    /// Present-indicator fraction per `(country, year)`.
    pub country_year: BTreeMap<(String, i32), f64>,
    /// Fraction of countries with at least one present value, per hierarchy indicator.
    pub indicator: BTreeMap<String, f64>,
    /// Present values over `country-years × indicators`.
    pub global: f64,
}

/// Checks every referenced indicator against `spec` and computes coverage.
pub fn validate_dataset(d: &Dataset, spec: &HierarchySpec) -> Result<CoverageReport, IngestError> {
    let known = spec.indicator_map();
    let unknown: Vec<String> = d
        .indicator_ids()
        .into_iter()
        .filter(|id| !known.contains_key(id))
        .map(str::to_owned)
        .collect();
    if !unknown.is_empty() {
        return Err(IngestError::UnknownIndicators(unknown));
    }

    let total = spec.indicator_count();
    let mut present_per_cy: BTreeMap<(String, i32), usize> =
        d.country_years().into_iter().map(|k| (k, 0)).collect();
    let mut countries_per_indicator: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    let mut present_total = 0usize;
    for ((c, y, i), v) in d.entries() {
        if v.is_some() {
            *present_per_cy
                .get_mut(&(c.clone(), *y))
                .expect("key from dataset") += 1;
            countries_per_indicator.entry(i).or_default().insert(c);
            present_total += 1;
        }
    }

    let n_countries = d.countries().len();
    let indicator = spec
        .indicators
        .iter()
        .map(|ind| {
            let covered = countries_per_indicator
                .get(ind.id.as_str())
                .map_or(0, BTreeSet::len);
            let frac = if n_countries == 0 {
                0.0
            } else {
                covered as f64 / n_countries as f64
            };
            (ind.id.clone(), frac)
        })
        .collect();
    let cells = present_per_cy.len() * total;
    let global = if cells == 0 {
        0.0
    } else {
        present_total as f64 / cells as f64
    };
    let country_year = present_per_cy
        .into_iter()
        .map(|(k, n)| (k, n as f64 / total as f64))
        .collect();
    Ok(CoverageReport {
        country_year,
        indicator,
        global,
    })
}
