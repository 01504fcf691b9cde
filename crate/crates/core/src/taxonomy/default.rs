//! The shipped IFR taxonomy: six elements, 29 sub-elements, one indicator per
//! proposed metric. Business adaptive capacity has no BA5 sub-element.

use super::{ElementId, HierarchySpec, IndicatorDef, Orientation, SubElementDef};

use Orientation::{Negative as Neg, Positive as Pos};

/// Number of indicators in the default hierarchy (hand count of the metric list).
pub const DEFAULT_INDICATOR_COUNT: usize = 99;
pub const DEFAULT_SUB_ELEMENT_COUNT: usize = 29;

struct Ind {
    id: &'static str,
    name: &'static str,
    orientation: Orientation,
    units: &'static str,
    provisional: bool,
}

const fn ind(
    id: &'static str,
    name: &'static str,
    orientation: Orientation,
    units: &'static str,
) -> Ind {
    Ind {
        id,
        name,
        orientation,
        units,
        provisional: false,
    }
}

// Direction not settled by the metric definition; defaults to Positive.
const fn provisional(id: &'static str, name: &'static str, units: &'static str) -> Ind {
    Ind {
        id,
        name,
        orientation: Pos,
        units,
        provisional: true,
    }
}

struct Sub {
    id: &'static str,
    element: ElementId,
    name: &'static str,
    indicators: &'static [Ind],
}

const SUB_ELEMENTS: &[Sub] = &[
    // Government resilience
    Sub {
        id: "GR1",
        element: ElementId::GR,
        name: "Fiscal Buffers and Monetary Policy Space",
        indicators: &[
            // high inflation erodes monetary space
            ind("gr1_inflation_rate", "Inflation Rate", Neg, "% per year"),
            // debt load narrows fiscal space
            ind("gr1_public_debt_gdp", "Public Debt to GDP Ratio", Neg, "% of GDP"),
            // surplus positive, deficit negative
            ind("gr1_budget_balance_gdp", "Budget Balance as a Fraction of GDP", Pos, "% of GDP"),
            // numeric rating scale, higher is more creditworthy
            ind("gr1_sovereign_credit_rating", "Sovereign Credit Rating", Pos, "rating scale"),
        ],
    },
    Sub {
        id: "GR2",
        element: ElementId::GR,
        name: "Diversification of Government Revenue",
        indicators: &[
            // concentration is a vulnerability
            ind(
                "gr2_single_source_revenue_share",
                "Percentage of Government Revenue from a Single Dominant Source (e.g., oil)",
                Neg,
                "% of revenue",
            ),
            // volatility is a vulnerability
            ind(
                "gr2_revenue_variability_5y",
                "Variability of Government Revenue over the last five years",
                Neg,
                "coefficient of variation",
            ),
        ],
    },
    Sub {
        id: "GR3",
        element: ElementId::GR,
        name: "Infrastructure and Digital Resilience",
        indicators: &[
            ind(
                "gr3_infrastructure_reliability",
                "Reliability of energy, transport, and communication systems",
                Pos,
                "index",
            ),
            ind(
                "gr3_public_cybersecurity",
                "Cybersecurity of government and public digital infrastructure",
                Pos,
                "index",
            ),
            ind(
                "gr3_sovereign_wealth_fund_gdp",
                "Sovereign Wealth Fund capacity (e.g., as a percentage of GDP, indicating ability to finance emergency rebuilding)",
                Pos,
                "% of GDP",
            ),
        ],
    },
    Sub {
        id: "GR4",
        element: ElementId::GR,
        name: "Diplomatic Diversification",
        indicators: &[
            ind(
                "gr4_multilateral_engagement",
                "Measure of multilateral engagement (e.g., number of international agreements, participation in international organizations)",
                Pos,
                "count",
            ),
            ind(
                "gr4_visa_free_access",
                "Visa-free travel access for citizens (as a proxy for diplomatic reach and soft power)",
                Pos,
                "destinations",
            ),
            ind(
                "gr4_bilateral_trade_agreements",
                "Number of bilateral trade agreements in force",
                Pos,
                "count",
            ),
        ],
    },
    Sub {
        id: "GR5",
        element: ElementId::GR,
        name: "Trade and Currency Buffers",
        indicators: &[
            ind(
                "gr5_foreign_reserves_gdp",
                "Foreign Reserves as a percentage of GDP (Reserve Adequacy)",
                Pos,
                "% of GDP",
            ),
            // surplus positive
            ind(
                "gr5_current_account_gdp",
                "Current Account Balance as a percentage of GDP",
                Pos,
                "% of GDP",
            ),
            provisional("gr5_exchange_rate_flexibility", "Exchange Rate Regime Flexibility", "index"),
            provisional("gr5_trade_gdp", "Trade as a fraction of GDP", "% of GDP"),
        ],
    },
    // Government adaptive capacity
    Sub {
        id: "GA1",
        element: ElementId::GA,
        name: "Institutional Flexibility",
        indicators: &[
            ind("ga1_egdi", "E-government Development Index (EGDI)", Pos, "index 0-1"),
            ind(
                "ga1_voice_accountability",
                "Voice and Accountability Index (World Bank Governance Indicators)",
                Pos,
                "WGI estimate",
            ),
            ind(
                "ga1_strategic_foresight",
                "Strategic Foresight Capacity (e.g., existence and effectiveness of national foresight units)",
                Pos,
                "index",
            ),
            ind(
                "ga1_political_stability",
                "Political Stability and Absence of Violence Index (World Bank Governance Indicators)",
                Pos,
                "WGI estimate",
            ),
            ind(
                "ga1_rule_of_law",
                "Rule of Law Index (World Bank Governance Indicators)",
                Pos,
                "WGI estimate",
            ),
            ind("ga1_open_data", "Open Data Implementation Index", Pos, "index"),
            ind(
                "ga1_legal_frameworks",
                "Legal Frameworks (e.g., World Bank Doing Business indicators related to legal enforceability)",
                Pos,
                "index",
            ),
            // more democratic and adaptable scores higher
            ind(
                "ga1_responsive_policy_making",
                "Responsive Policy Making (e.g., Polity Score, indicating democratic and adaptable governance)",
                Pos,
                "score",
            ),
            ind(
                "ga1_decentralization",
                "Decentralization Index (e.g., fiscal and administrative decentralization)",
                Pos,
                "index",
            ),
            ind(
                "ga1_regulatory_predictability",
                "Predictability of Regulatory Environment",
                Pos,
                "index",
            ),
        ],
    },
    Sub {
        id: "GA2",
        element: ElementId::GA,
        name: "Adaptive Governance",
        indicators: &[
            ind(
                "ga2_regulatory_quality",
                "Regulatory Quality Index (World Bank Governance Indicators)",
                Pos,
                "WGI estimate",
            ),
            ind(
                "ga2_government_effectiveness",
                "Government Effectiveness Index (World Bank Governance Indicators)",
                Pos,
                "WGI estimate",
            ),
            // a burden, so more is worse
            ind(
                "ga2_bureaucracy_burden",
                "Perceived Burden of Bureaucracy (e.g., survey data)",
                Neg,
                "survey score",
            ),
        ],
    },
    Sub {
        id: "GA3",
        element: ElementId::GA,
        name: "Labor Market Regulatory Flexibility",
        indicators: &[
            // measured as ease; an EPL strictness series must be inverted before loading
            ind(
                "ga3_ease_hiring_firing",
                "Ease of Hiring/Firing (e.g., OECD Employment Protection Legislation Index)",
                Pos,
                "index",
            ),
            ind(
                "ga3_retraining_effectiveness",
                "Effectiveness of National Retraining Systems",
                Pos,
                "index",
            ),
            ind(
                "ga3_labor_mobility_index",
                "Labor Mobility Index (e.g., inter-sectoral and geographical mobility facilitation)",
                Pos,
                "index",
            ),
        ],
    },
    Sub {
        id: "GA4",
        element: ElementId::GA,
        name: "Environmental and Sustainability Governance (Investment in Innovation and Green Structure)",
        indicators: &[
            ind(
                "ga4_renewable_share",
                "Renewable Energy Share in Total Energy Consumption",
                Pos,
                "% of consumption",
            ),
            ind("ga4_renewable_adoption", "Renewable Energy Adoption Rates", Pos, "% per year"),
            ind(
                "ga4_climate_resilience_policy",
                "Climate Resilience Policies and Investments",
                Pos,
                "index",
            ),
            ind("ga4_epi", "Environmental Performance Index (EPI)", Pos, "index 0-100"),
        ],
    },
    Sub {
        id: "GA5",
        element: ElementId::GA,
        name: "Capacity for Policy Experimentation and Entrepreneurial State",
        indicators: &[ind(
            "ga5_policy_sandboxes",
            "Existence and utilization of regulatory sandboxes or pilot programs for policy innovation",
            Pos,
            "index",
        )],
    },
    // Business resilience
    Sub {
        id: "BR1",
        element: ElementId::BR,
        name: "Robust Risk Management and Capital Buffers",
        indicators: &[
            ind(
                "br1_bank_solvency",
                "Banking System Solvency (e.g., Bank Capital Ratios)",
                Pos,
                "% of risk-weighted assets",
            ),
            // scored as oversight quality; a raw NPL series must be inverted before loading
            ind(
                "br1_bank_oversight",
                "Banking System Regulation and Oversight (e.g., Non-performing Loan Ratios, Financial Supervision scores)",
                Pos,
                "index",
            ),
            ind(
                "br1_stock_market_cap_gdp",
                "Stock Market Capitalization as a percentage of GDP",
                Pos,
                "% of GDP",
            ),
        ],
    },
    Sub {
        id: "BR2",
        element: ElementId::BR,
        name: "Infrastructure and Digital Resilience (Private Sector)",
        indicators: &[ind(
            "br2_private_cybersecurity",
            "Cybersecurity of private business institutions and critical infrastructure",
            Pos,
            "index",
        )],
    },
    Sub {
        id: "BR3",
        element: ElementId::BR,
        name: "GDP and Trade Diversification",
        indicators: &[
            // concentration is the opposite of diversification
            ind("br3_gdp_concentration", "Sectorial Concentration in GDP", Neg, "HHI"),
            ind("br3_export_concentration", "Sectorial Concentration in Exports", Neg, "HHI"),
        ],
    },
    Sub {
        id: "BR4",
        element: ElementId::BR,
        name: "Supply Chain Redundancy and Flexibility",
        indicators: &[
            ind(
                "br4_energy_decentralization",
                "Decentralization of energy systems",
                Pos,
                "index",
            ),
            ind(
                "br4_food_decentralization",
                "Decentralization of food production and distribution",
                Pos,
                "index",
            ),
            // lower concentration means higher resilience
            ind(
                "br4_supply_chain_concentration",
                "Supply Chain Concentration Index (lower concentration indicates higher resilience)",
                Neg,
                "index",
            ),
            ind("br4_lpi", "Logistics Performance Index (LPI)", Pos, "index 1-5"),
        ],
    },
    Sub {
        id: "BR5",
        element: ElementId::BR,
        name: "Formality of Economic Activity",
        indicators: &[
            // inversely related to resilience
            ind(
                "br5_informal_economy_gdp",
                "Informal Economy Size (as a percentage of GDP, inversely related to resilience)",
                Neg,
                "% of GDP",
            ),
            // a distortion measure
            ind(
                "br5_black_market_premium",
                "Black Market Premium (as an indicator of economic distortion)",
                Neg,
                "%",
            ),
        ],
    },
    // Business adaptive capacity
    Sub {
        id: "BA1",
        element: ElementId::BA,
        name: "Innovation Systems and R&D",
        indicators: &[
            ind(
                "ba1_rd_spending_gdp",
                "Research & Development (R&D) Spending as a percentage of GDP",
                Pos,
                "% of GDP",
            ),
            ind(
                "ba1_educational_attainment",
                "Educational Attainment (e.g., PISA scores, tertiary education enrollment)",
                Pos,
                "score",
            ),
            ind(
                "ba1_firm_digital_access",
                "Digital Infrastructure Access for Firms (e.g., internet access, broadband penetration)",
                Pos,
                "% of firms",
            ),
            // rank position, 1 is best
            ind("ba1_gii_rank", "Global Innovation Index (GII) ranking", Neg, "rank"),
            ind(
                "ba1_firms_online",
                "Percentage of Firms with an Online Presence (Website)",
                Pos,
                "% of firms",
            ),
        ],
    },
    Sub {
        id: "BA2",
        element: ElementId::BA,
        name: "Market Dynamism",
        indicators: &[
            ind(
                "ba2_sme_ecosystem",
                "SME Ecosystem Health (e.g., new firm entry rate, survival rate of startups)",
                Pos,
                "index",
            ),
            ind(
                "ba2_competition_policy",
                "Competition Policy Effectiveness (e.g., market concentration indices)",
                Pos,
                "index",
            ),
            ind(
                "ba2_entrepreneurial_culture",
                "Entrepreneurial Culture Index (e.g., survey-based measures of entrepreneurial attitudes)",
                Pos,
                "index",
            ),
            ind(
                "ba2_ease_closing_business",
                "Ease of Closing a Business (World Bank Doing Business indicator)",
                Pos,
                "score",
            ),
            // slower clearance is worse
            ind("ba2_customs_clearance_time", "Customs Clearance Time", Neg, "days"),
            ind(
                "ba2_global_mobility_access",
                "Global Mobility Access (e.g., ease of international business travel)",
                Pos,
                "index",
            ),
            ind(
                "ba2_logistics_competence",
                "Logistics Competence (e.g., LPI sub-components)",
                Pos,
                "index 1-5",
            ),
        ],
    },
    Sub {
        id: "BA3",
        element: ElementId::BA,
        name: "Economic Complexity and Sophistication",
        indicators: &[
            ind("ba3_eci", "Economic Complexity Index (Hausmann)", Pos, "index"),
            ind(
                "ba3_high_tech_exports",
                "High-Technology Exports as a percentage of total exports",
                Pos,
                "% of exports",
            ),
        ],
    },
    Sub {
        id: "BA4",
        element: ElementId::BA,
        name: "Capital Flexibility",
        indicators: &[
            ind(
                "ba4_venture_capital_gdp",
                "Venture Capital Investment as a percentage of GDP",
                Pos,
                "% of GDP",
            ),
            ind(
                "ba4_fdi_gdp",
                "Foreign Direct Investment (FDI) as a percentage of GDP",
                Pos,
                "% of GDP",
            ),
            ind(
                "ba4_private_credit_gdp",
                "Domestic Credit to Private Sector as a percentage of GDP",
                Pos,
                "% of GDP",
            ),
        ],
    },
    Sub {
        id: "BA6",
        element: ElementId::BA,
        name: "Institutions Supporting Business Experimentation and Learning",
        indicators: &[ind(
            "ba6_business_experimentation",
            "Measures of regulatory sandboxes for business innovation, industry-academia collaboration indices",
            Pos,
            "index",
        )],
    },
    // Citizens' resilience
    Sub {
        id: "CR1",
        element: ElementId::CR,
        name: "Social Safety Nets and Financial Security",
        indicators: &[
            ind(
                "cr1_social_spending_gdp",
                "Social Spending as a percentage of GDP (Welfare Programs)",
                Pos,
                "% of GDP",
            ),
            ind(
                "cr1_unemployment_benefits",
                "Unemployment Benefits Coverage and Adequacy",
                Pos,
                "% of unemployed",
            ),
            ind(
                "cr1_health_coverage",
                "Health Coverage (e.g., percentage of population with access to healthcare)",
                Pos,
                "% of population",
            ),
            ind(
                "cr1_poverty_gap_coverage",
                "Poverty Gap Coverage (e.g., percentage of the poverty gap covered by transfers)",
                Pos,
                "% of poverty gap",
            ),
            ind("cr1_household_savings_rate", "Household Savings Rate", Pos, "% of disposable income"),
            ind("cr1_cumulated_savings_pc", "Cumulated Savings per capita", Pos, "USD per capita"),
            ind(
                "cr1_income_after_housing",
                "Average Percentage of Disposable Income Available after Housing Costs (rent or mortgage)",
                Pos,
                "% of disposable income",
            ),
            ind("cr1_tax_progressivity", "Progressivity of the Tax System", Pos, "index"),
            ind(
                "cr1_account_ownership",
                "Account Ownership at Financial Institutions (percentage of population over 15)",
                Pos,
                "% of population 15+",
            ),
        ],
    },
    Sub {
        id: "CR2",
        element: ElementId::CR,
        name: "Emergency Savings and Financial Buffers",
        indicators: &[ind(
            "cr2_individual_savings_rate",
            "Individuals savings rate",
            Pos,
            "% of income",
        )],
    },
    Sub {
        id: "CR3",
        element: ElementId::CR,
        name: "Financial Literacy and Risk Management",
        indicators: &[ind(
            "cr3_financial_literacy",
            "Percentage of population with financial literacy",
            Pos,
            "% of population",
        )],
    },
    Sub {
        id: "CR4",
        element: ElementId::CR,
        name: "Social Capital and Trust",
        indicators: &[
            ind(
                "cr4_institutional_trust",
                "Public Trust in Institutions (e.g., World Values Survey data)",
                Pos,
                "% trusting",
            ),
            ind(
                "cr4_social_cohesion",
                "Social Cohesion Index (e.g., World Values Survey data, measures of civic participation)",
                Pos,
                "index",
            ),
            // inequality as social friction
            ind(
                "cr4_gini",
                "Gini Coefficient (as an inverse measure of income equality and potential social friction)",
                Neg,
                "Gini 0-100",
            ),
            ind(
                "cr4_civic_engagement",
                "Civic Engagement Rates (e.g., volunteerism, participation in community organizations)",
                Pos,
                "% of population",
            ),
        ],
    },
    // Citizens' adaptive capacity
    Sub {
        id: "CA1",
        element: ElementId::CA,
        name: "Lifelong Learning and Skill Development",
        indicators: &[
            ind(
                "ca1_educational_attainment",
                "Overall Educational Attainment (e.g., average years of schooling, tertiary enrollment rates)",
                Pos,
                "years",
            ),
            ind(
                "ca1_reskilling",
                "Availability and Participation in Post-Education Re-skilling Programs",
                Pos,
                "% of adults",
            ),
            ind(
                "ca1_upskilling",
                "Availability and Participation in Post-Education Up-skilling Programs",
                Pos,
                "% of adults",
            ),
            ind(
                "ca1_forward_looking_education",
                "Emphasis on Forward-Looking Education (e.g., curricula fostering curiosity, critical thinking, and creativity)",
                Pos,
                "index",
            ),
            ind("ca1_stem_graduates_pc", "STEM Graduates per capita", Pos, "per 1,000 people"),
            ind(
                "ca1_international_students_net",
                "Net Flow of International Students (indicating openness to global knowledge exchange)",
                Pos,
                "students per 1,000 people",
            ),
            ind(
                "ca1_household_internet",
                "Household Internet Penetration Rate",
                Pos,
                "% of households",
            ),
        ],
    },
    Sub {
        id: "CA2",
        element: ElementId::CA,
        name: "Labor Mobility",
        indicators: &[
            ind("ca2_sectoral_mobility", "Sectoral Labor Mobility Rates", Pos, "% of workers"),
            ind(
                "ca2_geographical_mobility",
                "Geographical Labor Mobility Rates",
                Pos,
                "% of workers",
            ),
        ],
    },
    Sub {
        id: "CA3",
        element: ElementId::CA,
        name: "Population Dynamics",
        indicators: &[
            ind(
                "ca3_working_age_growth",
                "Working Age Population Growth Rate",
                Pos,
                "% per year",
            ),
            provisional(
                "ca3_urban_population_growth",
                "Urban Population Growth Rate (as an indicator of demographic shifts and potential for agglomeration effects)",
                "% per year",
            ),
        ],
    },
    Sub {
        id: "CA4",
        element: ElementId::CA,
        name: "Digital Connectivity and Skills",
        indicators: &[
            ind(
                "ca4_digital_skills",
                "Digital Skills among the Population (e.g., digital literacy rates)",
                Pos,
                "% of population",
            ),
            ind(
                "ca4_e_participation",
                "E-participation Index (e.g., citizen engagement in online governance)",
                Pos,
                "index 0-1",
            ),
            ind(
                "ca4_5g_subscriptions",
                "Mobile Broadband 5G Subscriptions (households)",
                Pos,
                "per 100 households",
            ),
            ind(
                "ca4_bandwidth_speed",
                "Internet Bandwidth Speed (households)",
                Pos,
                "Mbit/s",
            ),
            ind(
                "ca4_digital_payments",
                "Access to Digital Payments (e.g., percentage of population using mobile money or online banking)",
                Pos,
                "% of population",
            ),
        ],
    },
    Sub {
        id: "CA5",
        element: ElementId::CA,
        name: "Proactive Financial Planning",
        indicators: &[ind(
            "ca5_long_term_planning",
            "Ability to engage in long-term financial planning",
            Pos,
            "% of population",
        )],
    },
];

/// The default Index of Future Readiness hierarchy.
pub fn build_default_ifr_hierarchy() -> HierarchySpec {
    let mut sub_elements = Vec::with_capacity(SUB_ELEMENTS.len());
    let mut indicators = Vec::with_capacity(DEFAULT_INDICATOR_COUNT);
    for sub in SUB_ELEMENTS {
        sub_elements.push(SubElementDef {
            id: sub.id.to_owned(),
            element: sub.element,
            display_name: sub.name.to_owned(),
            indicator_ids: sub.indicators.iter().map(|i| i.id.to_owned()).collect(),
        });
        indicators.extend(sub.indicators.iter().map(|i| IndicatorDef {
            id: i.id.to_owned(),
            display_name: i.name.to_owned(),
            sub_element_id: sub.id.to_owned(),
            orientation: i.orientation,
            units: i.units.to_owned(),
            fixed_bounds: None,
            orientation_provisional: i.provisional,
        }));
    }
    HierarchySpec {
        name: "Index of Future Readiness".to_owned(),
        version: "0.1-preliminary".to_owned(),
        elements: ElementId::ALL.to_vec(),
        sub_elements,
        indicators,
    }
}
