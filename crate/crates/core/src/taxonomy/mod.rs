//! Index structure: actors, themes, the six elements, and the
//! sub-element / indicator tree hanging off them.

mod default;
mod document;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use default::{
    build_default_ifr_hierarchy, DEFAULT_INDICATOR_COUNT, DEFAULT_SUB_ELEMENT_COUNT,
};
pub use document::{parse_hierarchy, serialize_hierarchy, TaxonomyError};

/// Societal actor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Actor {
    Government,
    Business,
    Citizens,
}

impl Actor {
    pub const ALL: [Actor; 3] = [Actor::Government, Actor::Business, Actor::Citizens];

    pub fn elements(self) -> [ElementId; 2] {
        [
            ElementId::from_parts(self, Theme::Resilience),
            ElementId::from_parts(self, Theme::AdaptiveCapacity),
        ]
    }
}

/// Shock-response theme: absorbing temporary shocks vs. transforming after permanent ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Theme {
    Resilience,
    AdaptiveCapacity,
}

impl Theme {
    pub const ALL: [Theme; 2] = [Theme::Resilience, Theme::AdaptiveCapacity];

    pub fn elements(self) -> [ElementId; 3] {
        Actor::ALL.map(|a| ElementId::from_parts(a, self))
    }
}

/// One cell of the actor × theme grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ElementId {
    GR,
    GA,
    BR,
    BA,
    CR,
    CA,
}

impl ElementId {
    pub const ALL: [ElementId; 6] = [
        ElementId::GR,
        ElementId::GA,
        ElementId::BR,
        ElementId::BA,
        ElementId::CR,
        ElementId::CA,
    ];

    pub fn from_parts(actor: Actor, theme: Theme) -> ElementId {
        match (actor, theme) {
            (Actor::Government, Theme::Resilience) => ElementId::GR,
            (Actor::Government, Theme::AdaptiveCapacity) => ElementId::GA,
            (Actor::Business, Theme::Resilience) => ElementId::BR,
            (Actor::Business, Theme::AdaptiveCapacity) => ElementId::BA,
            (Actor::Citizens, Theme::Resilience) => ElementId::CR,
            (Actor::Citizens, Theme::AdaptiveCapacity) => ElementId::CA,
        }
    }

    pub fn actor(self) -> Actor {
        match self {
            ElementId::GR | ElementId::GA => Actor::Government,
            ElementId::BR | ElementId::BA => Actor::Business,
            ElementId::CR | ElementId::CA => Actor::Citizens,
        }
    }

    pub fn theme(self) -> Theme {
        match self {
            ElementId::GR | ElementId::BR | ElementId::CR => Theme::Resilience,
            ElementId::GA | ElementId::BA | ElementId::CA => Theme::AdaptiveCapacity,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            ElementId::GR => "GR",
            ElementId::GA => "GA",
            ElementId::BR => "BR",
            ElementId::BA => "BA",
            ElementId::CR => "CR",
            ElementId::CA => "CA",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            ElementId::GR => "Government Resilience",
            ElementId::GA => "Government Adaptive Capacity",
            ElementId::BR => "Business Resilience",
            ElementId::BA => "Business Adaptive Capacity",
            ElementId::CR => "Citizens' Resilience",
            ElementId::CA => "Citizens' Adaptive Capacity",
        }
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ElementId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ElementId::ALL
            .into_iter()
            .find(|e| e.code() == s)
            .ok_or_else(|| format!("unknown element code {s:?}"))
    }
}

/// Whether a higher raw value is better (`Positive`) or worse (`Negative`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorDef {
    pub id: String,
    pub display_name: String,
    pub sub_element_id: String,
    pub orientation: Orientation,
    pub units: String,
    /// Declared goalposts `(lower, upper)` in raw units.
    pub fixed_bounds: Option<(f64, f64)>,
    /// The orientation is a default pending a sourcing decision.
    pub orientation_provisional: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubElementDef {
    pub id: String,
    pub element: ElementId,
    pub display_name: String,
    pub indicator_ids: Vec<String>,
}

/// The full index tree. Build it with [`build_default_ifr_hierarchy`] or
/// [`parse_hierarchy`]; both return specs with no [`validate_hierarchy`] findings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HierarchySpec {
    pub name: String,
    pub version: String,
    pub elements: Vec<ElementId>,
    pub sub_elements: Vec<SubElementDef>,
    pub indicators: Vec<IndicatorDef>,
}

impl HierarchySpec {
    pub fn indicator(&self, id: &str) -> Option<&IndicatorDef> {
        self.indicators.iter().find(|i| i.id == id)
    }

    pub fn sub_element(&self, id: &str) -> Option<&SubElementDef> {
        self.sub_elements.iter().find(|s| s.id == id)
    }

    /// Sub-elements of `element`, in declaration order.
    pub fn sub_elements_of(&self, element: ElementId) -> impl Iterator<Item = &SubElementDef> {
        self.sub_elements
            .iter()
            .filter(move |s| s.element == element)
    }

    pub fn indicator_map(&self) -> BTreeMap<&str, &IndicatorDef> {
        self.indicators.iter().map(|i| (i.id.as_str(), i)).collect()
    }

    pub fn indicator_count(&self) -> usize {
        self.indicators.len()
    }
}

/// One invariant violation, keyed by the offending id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Diagnostic {
    pub subject: String,
    pub message: String,
}

impl Diagnostic {
    fn new(subject: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            subject: subject.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Checks every structural invariant. Empty result means the hierarchy is valid.
/// Diagnostics are sorted by subject id, then message.
pub fn validate_hierarchy(spec: &HierarchySpec) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    let mut seen_elements = BTreeSet::new();
    for e in &spec.elements {
        if !seen_elements.insert(*e) {
            out.push(Diagnostic::new(e.code(), format!("duplicate element {e}")));
        }
    }
    for e in ElementId::ALL {
        if !seen_elements.contains(&e) {
            out.push(Diagnostic::new(e.code(), format!("missing element {e}")));
        } else if spec.sub_elements_of(e).next().is_none() {
            out.push(Diagnostic::new(
                e.code(),
                format!("element {e} has no sub-elements"),
            ));
        }
    }

    let mut sub_ids: BTreeMap<&str, &SubElementDef> = BTreeMap::new();
    for sub in &spec.sub_elements {
        if sub.id.is_empty() {
            out.push(Diagnostic::new("", "sub-element with empty id"));
        } else if sub_ids.insert(&sub.id, sub).is_some() {
            out.push(Diagnostic::new(
                &sub.id,
                format!("duplicate sub-element id {}", sub.id),
            ));
        }
    }

    let mut indicators: BTreeMap<&str, &IndicatorDef> = BTreeMap::new();
    let mut duplicated = BTreeSet::new();
    for ind in &spec.indicators {
        if ind.id.is_empty() {
            out.push(Diagnostic::new("", "indicator with empty id"));
            continue;
        }
        if indicators.insert(&ind.id, ind).is_some() {
            duplicated.insert(ind.id.as_str());
            out.push(Diagnostic::new(
                &ind.id,
                format!("duplicate indicator id {}", ind.id),
            ));
            continue;
        }
        match sub_ids.get(ind.sub_element_id.as_str()) {
            None => out.push(Diagnostic::new(
                &ind.id,
                format!(
                    "indicator {} references unknown sub-element {}",
                    ind.id, ind.sub_element_id
                ),
            )),
            Some(sub) if !sub.indicator_ids.contains(&ind.id) => out.push(Diagnostic::new(
                &ind.id,
                format!(
                    "indicator {} is not listed by sub-element {}",
                    ind.id, sub.id
                ),
            )),
            Some(_) => {}
        }
        if let Some((lo, hi)) = ind.fixed_bounds {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                out.push(Diagnostic::new(
                    &ind.id,
                    format!("indicator {} has invalid bounds [{lo}, {hi}]", ind.id),
                ));
            }
        }
    }

    for sub in &spec.sub_elements {
        if sub.indicator_ids.is_empty() {
            out.push(Diagnostic::new(
                &sub.id,
                format!("sub-element {} has no indicators", sub.id),
            ));
        }
        let mut listed = BTreeSet::new();
        for id in &sub.indicator_ids {
            if !listed.insert(id.as_str()) {
                out.push(Diagnostic::new(
                    &sub.id,
                    format!("sub-element {} lists indicator {id} twice", sub.id),
                ));
                continue;
            }
            match indicators.get(id.as_str()) {
                None => out.push(Diagnostic::new(
                    &sub.id,
                    format!("sub-element {} lists unknown indicator {id}", sub.id),
                )),
                // Dangling references and duplicate ids are reported on the indicator.
                Some(ind)
                    if ind.sub_element_id != sub.id
                        && sub_ids.contains_key(ind.sub_element_id.as_str())
                        && !duplicated.contains(id.as_str()) =>
                {
                    out.push(Diagnostic::new(
                        &sub.id,
                        format!(
                            "sub-element {} lists indicator {id} owned by {}",
                            sub.id, ind.sub_element_id
                        ),
                    ))
                }
                Some(_) => {}
            }
        }
    }

    out.sort();
    out
}
