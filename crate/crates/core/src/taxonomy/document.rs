//! JSON hierarchy documents.
//!
//! ```json
//! {
//!   "name": "...", "version": "...",
//!   "sub_elements": [
//!     { "id": "GR1", "element": "GR", "name": "...",
//!       "indicators": [
//!         { "id": "infl", "name": "Inflation Rate", "orientation": "negative",
//!           "units": "%", "bounds": [0, 20] }
//!       ] }
//!   ]
//! }
//! ```
//!
//! Element membership comes from each sub-element's `element` code.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    validate_hierarchy, Diagnostic, ElementId, HierarchySpec, IndicatorDef, Orientation,
    SubElementDef,
};

#[derive(Debug, Error)]
pub enum TaxonomyError {
    #[error("hierarchy syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid hierarchy: {}", join(.0))]
    Semantic(Vec<Diagnostic>),
}

fn join(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.message.as_str())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    name: String,
    version: String,
    sub_elements: Vec<SubElementDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubElementDoc {
    id: String,
    element: String,
    name: String,
    indicators: Vec<IndicatorDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IndicatorDoc {
    id: String,
    name: String,
    orientation: Orientation,
    #[serde(default)]
    units: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bounds: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    orientation_provisional: bool,
}

/// Parses and validates a hierarchy document.
pub fn parse_hierarchy(text: &str) -> Result<HierarchySpec, TaxonomyError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| TaxonomyError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let mut diags = Vec::new();
    let mut present = BTreeSet::new();
    let mut sub_elements = Vec::with_capacity(doc.sub_elements.len());
    let mut indicators = Vec::new();
    for sub in doc.sub_elements {
        let element = match sub.element.parse::<ElementId>() {
            Ok(e) => e,
            Err(_) => {
                diags.push(Diagnostic::new(
                    &sub.id,
                    format!(
                        "sub-element {} has unknown element code {}",
                        sub.id, sub.element
                    ),
                ));
                continue;
            }
        };
        present.insert(element);
        sub_elements.push(SubElementDef {
            id: sub.id.clone(),
            element,
            display_name: sub.name,
            indicator_ids: sub.indicators.iter().map(|i| i.id.clone()).collect(),
        });
        indicators.extend(sub.indicators.into_iter().map(|i| IndicatorDef {
            id: i.id,
            display_name: i.name,
            sub_element_id: sub.id.clone(),
            orientation: i.orientation,
            units: i.units,
            fixed_bounds: i.bounds.map(|[lo, hi]| (lo, hi)),
            orientation_provisional: i.orientation_provisional,
        }));
    }

    let spec = HierarchySpec {
        name: doc.name,
        version: doc.version,
        elements: present.into_iter().collect(),
        sub_elements,
        indicators,
    };
    diags.extend(validate_hierarchy(&spec));
    if diags.is_empty() {
        Ok(spec)
    } else {
        diags.sort();
        Err(TaxonomyError::Semantic(diags))
    }
}

/// Pretty-printed JSON document. Indicators are emitted under the sub-element
/// that lists them, in list order.
pub fn serialize_hierarchy(spec: &HierarchySpec) -> String {
    let by_id = spec.indicator_map();
    let doc = Document {
        name: spec.name.clone(),
        version: spec.version.clone(),
        sub_elements: spec
            .sub_elements
            .iter()
            .map(|sub| SubElementDoc {
                id: sub.id.clone(),
                element: sub.element.code().to_owned(),
                name: sub.display_name.clone(),
                indicators: sub
                    .indicator_ids
                    .iter()
                    .filter_map(|id| by_id.get(id.as_str()))
                    .map(|i| IndicatorDoc {
                        id: i.id.clone(),
                        name: i.display_name.clone(),
                        orientation: i.orientation,
                        units: i.units.clone(),
                        bounds: i.fixed_bounds.map(|(lo, hi)| [lo, hi]),
                        orientation_provisional: i.orientation_provisional,
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("hierarchy documents always serialize");
    out.push('\n');
    out
}
