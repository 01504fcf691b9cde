//! Seeded synthetic panels for demos and tests.
//!
//! Each country gets a latent strength; each raw value is that strength plus
//! noise, mapped onto an indicator-specific scale and flipped for negatively
//! oriented indicators, so stronger countries tend to score higher.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ingest::{Dataset, Observation};
use crate::taxonomy::{HierarchySpec, Orientation};

#[derive(Debug, Clone)]
pub struct PanelOptions {
    pub countries: usize,
    pub years: Vec<i32>,
    /// Probability that any single observation is missing.
    pub missing_rate: f64,
    pub seed: u64,
}

impl PanelOptions {
    /// `countries` countries, one year (2024), no missing values.
    pub fn new(countries: usize, seed: u64) -> Self {
        PanelOptions {
            countries,
            years: vec![2024],
            missing_rate: 0.0,
            seed,
        }
    }
}

/// Country codes `C001`, `C002`, ...
pub fn country_code(i: usize) -> String {
    format!("C{:03}", i + 1)
}

pub fn synthetic_panel(spec: &HierarchySpec, opts: &PanelOptions) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let strength: Vec<f64> = (0..opts.countries)
        .map(|_| rng.random_range(0.0..1.0))
        .collect();
    let scales: Vec<(f64, f64)> = spec
        .indicators
        .iter()
        .map(|_| (rng.random_range(-50.0..50.0), rng.random_range(1.0..200.0)))
        .collect();

    let mut rows = Vec::new();
    for (ci, s) in strength.iter().enumerate() {
        for (yi, &year) in opts.years.iter().enumerate() {
            for (ind, (offset, scale)) in spec.indicators.iter().zip(&scales) {
                let missing =
                    opts.missing_rate > 0.0 && rng.random_bool(opts.missing_rate.min(1.0));
                let quality = s + 0.02 * yi as f64 + rng.random_range(-0.3..0.3);
                let raw = match ind.orientation {
                    Orientation::Positive => offset + scale * quality,
                    Orientation::Negative => offset - scale * quality,
                };
                rows.push(Observation {
                    country: country_code(ci),
                    year,
                    indicator_id: ind.id.clone(),
                    value: (!missing).then_some(raw),
                });
            }
        }
    }
    Dataset::from_observations(rows).expect("generated keys are unique and finite")
}
