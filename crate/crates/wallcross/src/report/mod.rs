//! Verification fixtures, canonical JSON emission, and figure rendering.

pub mod figure;
mod fixtures;

use serde_json::{json, Value};

pub use figure::{render_figure, FigureSpec};
pub use fixtures::{algebra_laws, oracle_equivalence, start_point_independence};

/// Canonical JSON text: compact, with the deterministic key order the
/// builders produce. All fixture comparisons and CLI output go through here.
pub fn emit_json(value: &Value) -> String {
    serde_json::to_string(value).expect("JSON values serialize")
}

/// Outcome of one replayed fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureResult {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl FixtureResult {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "expected": self.expected,
            "actual": self.actual,
            "pass": self.pass,
        })
    }
}

/// Replays every fixture whose name contains `filter` (all of them when no
/// filter is given). A fixture passes when expected and actual agree as
/// canonical JSON. Failures are data, not errors.
pub fn run_verify(filter: Option<&str>) -> Vec<FixtureResult> {
    fixtures::all_fixtures()
        .into_iter()
        .filter(|f| filter.is_none_or(|needle| f.name.contains(needle)))
        .map(|f| {
            let name = f.name.to_string();
            let expected = emit_json(&f.expected);
            let actual = emit_json(&f.actual());
            let pass = expected == actual;
            FixtureResult {
                name,
                expected,
                actual,
                pass,
            }
        })
        .collect()
}
