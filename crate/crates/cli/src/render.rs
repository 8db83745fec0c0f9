use kerov_core::diagram::{free_cumulants, s_functionals, transition_moments, DiagramJson};
use kerov_core::kerov::{EnumerationStats, KerovResult};
use kerov_core::poly::PolynomialJson;
use kerov_core::series::SeriesJson;
use kerov_core::{MultiRectangular, SeriesRole, TruncatedSeries};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Serialize)]
struct ComputeJson<'a> {
    cycles: &'a [usize],
    polynomial: PolynomialJson,
    stats: EnumerationStats,
}

/// The polynomial of a computation in the requested format. JSON output is
/// byte-stable: terms are sorted and the thread count is not recorded.
pub fn render_kerov(result: &KerovResult, format: Format) -> String {
    match format {
        Format::Text => result.polynomial.to_text("R"),
        Format::Latex => result.polynomial.to_latex("R"),
        Format::Json => {
            let json = ComputeJson {
                cycles: &result.spec,
                polynomial: result.polynomial.to_json("R"),
                stats: result.stats,
            };
            serde_json::to_string_pretty(&json).expect("serializable")
        }
    }
}

#[derive(Serialize)]
struct DiagramReport {
    diagram: DiagramJson,
    area: String,
    #[serde(rename = "s-functionals")]
    s_functionals: SeriesJson,
    moments: SeriesJson,
    #[serde(rename = "free-cumulants")]
    free_cumulants: SeriesJson,
}

/// One series of a diagram up to `order`.
pub fn diagram_series(d: &MultiRectangular, role: SeriesRole, order: usize) -> TruncatedSeries {
    match role {
        SeriesRole::SFunctionals => s_functionals(d, order),
        SeriesRole::Moments => transition_moments(d, order),
        SeriesRole::FreeCumulants => free_cumulants(d, order),
    }
}

pub fn render_diagram(d: &MultiRectangular, order: usize, only: Option<SeriesRole>) -> String {
    match only {
        Some(role) => render_series(&diagram_series(d, role, order)),
        None => {
            let report = DiagramReport {
                diagram: d.to_json(),
                area: d.area().to_string(),
                s_functionals: s_functionals(d, order).to_json(),
                moments: transition_moments(d, order).to_json(),
                free_cumulants: free_cumulants(d, order).to_json(),
            };
            serde_json::to_string_pretty(&report).expect("serializable")
        }
    }
}

pub fn render_series(s: &TruncatedSeries) -> String {
    serde_json::to_string_pretty(&s.to_json()).expect("serializable")
}
