//! Monte Carlo weight perturbation and a bounds-policy comparison.
//!
//! ```text
//! cargo run --release --example sensitivity_analysis -- [trials] [sigma] [seed]
//! ```

use ifr::aggregate::Level;
use ifr::prelude::*;
use ifr::report::{self, Format, RunManifest};
use ifr::synthetic::{synthetic_panel, PanelOptions};

fn arg<T: std::str::FromStr>(i: usize, default: T) -> T {
    std::env::args()
        .nth(i)
        .and_then(|a| a.parse().ok())
        .unwrap_or(default)
}

fn main() -> ifr::Result<()> {
    let spec = build_default_ifr_hierarchy();
    let data = synthetic_panel(
        &spec,
        &PanelOptions {
            countries: 20,
            years: vec![2022, 2023, 2024],
            missing_rate: 0.05,
            seed: 11,
        },
    );
    let bounds = BoundsPolicy::new(BoundsMode::InSamplePerYear);
    let missing = MissingDataPolicy::default();
    let config = SensitivityConfig {
        trials: arg(1, 200),
        sigma: arg(2, 0.3),
        seed: arg(3, 7),
        ..SensitivityConfig::default()
    };

    let result = run_sensitivity(&data, &spec, &bounds, &missing, &config)?;
    let policies = [
        bounds,
        BoundsPolicy::new(BoundsMode::PooledPanel),
        BoundsPolicy {
            trim_percentiles: Some((5.0, 95.0)),
            ..bounds
        },
    ];
    let switch = normalization_switch_analysis(&data, &spec, &missing, &policies)?;
    let manifest = RunManifest::new(&spec, &data, &bounds, &missing).with_sensitivity(&config);
    print!(
        "{}",
        report::robustness(&result, Some(&switch), &manifest, Format::Table)
    );

    let element_only = SensitivityConfig {
        levels: [Level::Element].into_iter().collect(),
        ..config.clone()
    };
    let r = run_sensitivity(&data, &spec, &bounds, &missing, &element_only)?;
    println!();
    println!(
        "element weights only: mean rho {:.4}",
        r.mean_spearman.unwrap_or(f64::NAN)
    );

    let fixed = SensitivityConfig {
        sigma: 0.0,
        ..config
    };
    let r = run_sensitivity(&data, &spec, &bounds, &missing, &fixed)?;
    println!(
        "sigma = 0:             mean rho {:.4}",
        r.mean_spearman.unwrap_or(f64::NAN)
    );
    Ok(())
}
