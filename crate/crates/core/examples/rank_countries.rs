//! Ranks a panel by several scores, with shared minimum ranks for ties.
//!
//! ```text
//! cargo run --example rank_countries
//! ```

use ifr::prelude::*;
use ifr::report::{self, Format, RunManifest};
use ifr::synthetic::{synthetic_panel, PanelOptions};

fn main() -> ifr::Result<()> {
    let spec = build_default_ifr_hierarchy();
    let data = synthetic_panel(
        &spec,
        &PanelOptions {
            countries: 10,
            years: vec![2024],
            missing_rate: 0.25,
            seed: 3,
        },
    );
    let bounds = BoundsPolicy::new(BoundsMode::InSamplePerYear);
    let missing = MissingDataPolicy::default();
    let cards = build_scorecards(&data, &spec, &bounds, &missing)?;
    let manifest = RunManifest::new(&spec, &data, &bounds, &missing);

    for kind in ["nfri", "nri", "nai", "gov"] {
        let kind: ScoreKind = kind.parse().expect("known score kind");
        println!("== {}", kind.label());
        print!(
            "{}",
            report::rank_table(&rank(&cards, kind), &manifest, Format::Table)
        );
        println!();
    }

    let lenient = MissingDataPolicy {
        element_required_for_nfri: false,
        ..missing
    };
    let cards = build_scorecards(&data, &spec, &bounds, &lenient)?;
    let table = rank(&cards, ScoreKind::Nfri);
    println!(
        "partial NFRI: {} ranked, {} unranked",
        table.rows.len(),
        table.unranked.len()
    );
    Ok(())
}
