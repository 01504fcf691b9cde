//! Loads observation CSV text and reports coverage against the hierarchy.
//!
//! ```text
//! cargo run --example validate_panel
//! ```

use ifr::prelude::*;
use ifr::report::{self, Format};

const PANEL: &str = "\
country,year,indicator,value
AAA,2024,gr1_inflation_rate,2.1
AAA,2024,gr1_public_debt_gdp,60
AAA,2024,gr1_budget_balance_gdp,NA
BBB,2024,gr1_inflation_rate,7.5
BBB,2024,gr1_public_debt_gdp,
BBB,2024,gr1_budget_balance_gdp,-3.2
";

fn main() -> ifr::Result<()> {
    let spec = build_default_ifr_hierarchy();
    let data = load_observations(PANEL.as_bytes())?;
    println!("{} rows, countries {:?}", data.len(), data.countries());
    let cov = validate_dataset(&data, &spec)?;
    print!("{}", report::coverage(&cov, Format::Table));

    let bad = "country,year,indicator,value\nAAA,2024,gr1_inflation_rate,1\nAAA,2024,gr1_inflation_rate,2\n";
    match load_observations(bad.as_bytes()) {
        Ok(_) => println!("unexpectedly accepted duplicate rows"),
        Err(e) => println!("rejected: {e}"),
    }
    let unknown =
        load_observations("country,year,indicator,value\nAAA,2024,made_up,1\n".as_bytes())?;
    if let Err(e) = validate_dataset(&unknown, &spec) {
        println!("rejected: {e}");
    }
    Ok(())
}
