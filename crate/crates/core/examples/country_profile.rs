//! One country's breakdown from NFRI down to single indicators.
//!
//! ```text
//! cargo run --example country_profile -- [country] [--plot-data]
//! ```

use ifr::prelude::*;
use ifr::report::{self, Format, ProfileLevel, RunManifest};
use ifr::synthetic::{synthetic_panel, PanelOptions};

fn main() -> ifr::Result<()> {
    let country = std::env::args().nth(1).unwrap_or_else(|| "C003".into());
    let plot = std::env::args().any(|a| a == "--plot-data");

    let spec = build_default_ifr_hierarchy();
    let data = synthetic_panel(
        &spec,
        &PanelOptions {
            countries: 6,
            years: vec![2023, 2024],
            missing_rate: 0.15,
            seed: 5,
        },
    );
    let bounds = BoundsPolicy::new(BoundsMode::InSamplePerYear);
    let missing = MissingDataPolicy::default();
    let cards = build_scorecards(&data, &spec, &bounds, &missing)?;
    let profile = report::profile(&cards, &spec, &country, None)?;

    if plot {
        print!("{}", report::profile_plot_data(&profile));
        return Ok(());
    }
    let manifest = RunManifest::new(&spec, &data, &bounds, &missing);
    print!(
        "{}",
        report::profile_report(&profile, &manifest, Format::Table)
    );

    let weakest = profile
        .rows_at(ProfileLevel::SubElement)
        .filter_map(|r| r.score.map(|s| (s, r)))
        .min_by(|a, b| a.0.total_cmp(&b.0));
    if let Some((score, row)) = weakest {
        println!();
        println!("weakest sub-element: {} {} ({score:.1})", row.id, row.name);
    }
    Ok(())
}
