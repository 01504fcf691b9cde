//! Min–max rescaling onto 1–100 under each bounds mode.
//!
//! ```text
//! cargo run --example normalize_indicators
//! ```

use ifr::normalize::normalize_value;
use ifr::prelude::*;
use ifr::taxonomy::IndicatorDef;

fn def(id: &str, orientation: Orientation, bounds: Option<(f64, f64)>) -> IndicatorDef {
    IndicatorDef {
        id: id.into(),
        display_name: id.into(),
        sub_element_id: "GR1".into(),
        orientation,
        units: String::new(),
        fixed_bounds: bounds,
        orientation_provisional: false,
    }
}

fn show(label: &str, values: &[f64], ind: &IndicatorDef, policy: &BoundsPolicy) -> ifr::Result<()> {
    let bounds = compute_bounds(values, ind, policy)?;
    let scores = values
        .iter()
        .map(|x| {
            normalize_value(*x, bounds, ind.orientation, policy).map(|n| format!("{:.2}", n.score))
        })
        .collect::<Result<Vec<_>, _>>()?;
    println!(
        "{label:<28} bounds [{:>6.2}, {:>6.2}]  scores {}",
        bounds.0,
        bounds.1,
        scores.join(" ")
    );
    Ok(())
}

fn main() -> ifr::Result<()> {
    let inflation = [2.0, 4.0, 10.0];
    let growth = [0.5, 1.5, 2.5, 3.0, 6.0];

    let in_sample = BoundsPolicy::new(BoundsMode::InSamplePerYear);
    show(
        "growth, positive",
        &growth,
        &def("growth", Orientation::Positive, None),
        &in_sample,
    )?;
    show(
        "inflation, negative",
        &inflation,
        &def("inflation", Orientation::Negative, None),
        &in_sample,
    )?;

    let goalposts = BoundsPolicy::new(BoundsMode::FixedGoalposts);
    let fixed = def("growth", Orientation::Positive, Some((0.0, 5.0)));
    show("growth, goalposts [0, 5]", &growth, &fixed, &goalposts)?;

    let trimmed = BoundsPolicy {
        trim_percentiles: Some((10.0, 90.0)),
        ..in_sample
    };
    show(
        "growth, trimmed 10-90",
        &growth,
        &def("growth", Orientation::Positive, None),
        &trimmed,
    )?;

    let flat = [3.0, 3.0, 3.0];
    show(
        "constant column",
        &flat,
        &def("flat", Orientation::Positive, None),
        &in_sample,
    )?;

    for x in growth {
        let p = normalize_value(x, (0.5, 6.0), Orientation::Positive, &in_sample)?.score;
        let n = normalize_value(x, (0.5, 6.0), Orientation::Negative, &in_sample)?.score;
        println!(
            "x = {x:<4} positive {p:>7.3} + negative {n:>7.3} = {:.3}",
            p + n
        );
    }
    Ok(())
}
