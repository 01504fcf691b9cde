//! Scores a country panel through the full hierarchy.
//!
//! ```text
//! cargo run --example score_panel                    # seeded synthetic panel
//! cargo run --example score_panel -- panel.csv       # your own data
//! cargo run --example score_panel -- panel.csv json  # table, csv or json
//! ```

use std::fs::File;

use ifr::prelude::*;
use ifr::report::{self, Format, RunManifest};
use ifr::synthetic::{synthetic_panel, PanelOptions};

fn main() -> ifr::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let spec = build_default_ifr_hierarchy();
    let data = match args.first() {
        Some(path) => load_observations(File::open(path).map_err(|source| ifr::Error::Io {
            path: path.clone(),
            source,
        })?)?,
        None => synthetic_panel(
            &spec,
            &PanelOptions {
                countries: 8,
                years: vec![2023, 2024],
                missing_rate: 0.1,
                seed: 42,
            },
        ),
    };
    let format = match args.get(1).map(String::as_str) {
        Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        _ => Format::Table,
    };

    let coverage = validate_dataset(&data, &spec)?;
    eprintln!("global coverage {:.1}%", coverage.global * 100.0);

    let bounds = BoundsPolicy::new(BoundsMode::InSamplePerYear);
    let missing = MissingDataPolicy::default();
    let cards = build_scorecards(&data, &spec, &bounds, &missing)?;
    let manifest = RunManifest::new(&spec, &data, &bounds, &missing);
    print!("{}", report::scorecards(&cards, &spec, &manifest, format));

    let worst_gap = cards
        .iter()
        .filter_map(|c| c.nfri_check.map(|p| p.gap))
        .fold(0.0, f64::max);
    eprintln!("largest thematic vs actor NFRI gap: {worst_gap:e}");
    Ok(())
}
