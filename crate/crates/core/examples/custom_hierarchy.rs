//! Parses a hand-written hierarchy document and shows how faults are reported.
//!
//! ```text
//! cargo run --example custom_hierarchy
//! ```

use ifr::prelude::*;
use ifr::taxonomy::TaxonomyError;

fn document(sub_elements: &str) -> String {
    format!(r#"{{"name": "Mini", "version": "1", "sub_elements": [{sub_elements}]}}"#)
}

fn sub(element: &str, indicators: &str) -> String {
    format!(
        r#"{{"id": "{element}1", "element": "{element}", "name": "{element} core", "indicators": [{indicators}]}}"#
    )
}

fn indicator(id: &str, orientation: &str) -> String {
    format!(
        r#"{{"id": "{id}", "name": "{id}", "orientation": "{orientation}", "bounds": [0, 100]}}"#
    )
}

fn report(label: &str, text: &str) {
    match parse_hierarchy(text) {
        Ok(spec) => println!(
            "{label}: ok, {} elements, {} indicators",
            spec.elements.len(),
            spec.indicator_count()
        ),
        Err(TaxonomyError::Semantic(diags)) => {
            println!("{label}: {} problem(s)", diags.len());
            for d in diags {
                println!("  {d}");
            }
        }
        Err(e) => println!("{label}: {e}"),
    }
}

fn main() {
    let codes = ["GR", "GA", "BR", "BA", "CR", "CA"];
    let full: Vec<String> = codes
        .iter()
        .map(|c| {
            sub(
                c,
                &indicator(&format!("{}_x", c.to_lowercase()), "positive"),
            )
        })
        .collect();
    let good = document(&full.join(","));
    report("six elements", &good);

    let spec = parse_hierarchy(&good).unwrap();
    assert_eq!(
        serialize_hierarchy(&parse_hierarchy(&serialize_hierarchy(&spec)).unwrap()),
        serialize_hierarchy(&spec)
    );

    report("five elements", &document(&full[..5].join(",")));

    let mut dup = full.clone();
    dup[1] = sub("GA", &indicator("gr_x", "negative"));
    report("shared indicator id", &document(&dup.join(",")));

    let mut empty = full.clone();
    empty[2] = sub("BR", "");
    report("empty sub-element", &document(&empty.join(",")));

    report("bad json", "{\n  \"name\": \"Mini\",\n  oops\n}");
}
