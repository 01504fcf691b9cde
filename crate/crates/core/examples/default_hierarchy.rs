//! Walks the built-in hierarchy and prints its shape.
//!
//! ```text
//! cargo run --example default_hierarchy            # summary tree
//! cargo run --example default_hierarchy -- --json  # full hierarchy document
//! ```

use ifr::prelude::*;

fn main() {
    let spec = build_default_ifr_hierarchy();
    if std::env::args().any(|a| a == "--json") {
        print!("{}", serialize_hierarchy(&spec));
        return;
    }

    println!("{} ({})", spec.name, spec.version);
    for actor in Actor::ALL {
        println!("{actor:?}");
        for e in actor.elements() {
            let subs: Vec<_> = spec.sub_elements_of(e).collect();
            println!("  {e} {}: {} sub-elements", e.display_name(), subs.len());
            for sub in subs {
                println!(
                    "    {:<4} {:<55} {:>2} indicators",
                    sub.id,
                    sub.display_name,
                    sub.indicator_ids.len()
                );
            }
        }
    }

    let provisional: Vec<&str> = spec
        .indicators
        .iter()
        .filter(|i| i.orientation_provisional)
        .map(|i| i.id.as_str())
        .collect();
    println!();
    println!(
        "{} indicators, {} sub-elements",
        spec.indicator_count(),
        spec.sub_elements.len()
    );
    println!("provisional orientation: {}", provisional.join(", "));
    assert!(validate_hierarchy(&spec).is_empty());
}
