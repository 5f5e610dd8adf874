//! Self-contained verification suites with machine-readable reports.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::correlations::{deformed_correlation_2, CorrelationKind};
use crate::error::{Error, Result};
use crate::exact;
use crate::graphstates::catalog::connected_graphs;
use crate::graphstates::{builtin_graph, graph_state_vector, is_lu_ghz_graph, k_uniformity, BuiltinGraph, Graph};
use crate::homology::{betti_curves, full_filtration, FilteredComplex};
use crate::invariants::{ade, ame_correlation_vanishes, avg_total_correlation, bounds_report, iec_report};
use crate::qstate::{make_ghz, make_product, make_w, random_pure, PureState};
use crate::subset::QubitSubset;

/// Violations kept verbatim in a report.
pub const MAX_LISTED: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    GhzFootprint,
    IecIdentity,
    AdeBounds,
    Kuniform,
    Appendix,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::GhzFootprint, Suite::IecIdentity, Suite::AdeBounds, Suite::Kuniform, Suite::Appendix];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::GhzFootprint => "ghz-footprint",
            Suite::IecIdentity => "iec-identity",
            Suite::AdeBounds => "ade-bounds",
            Suite::Kuniform => "kuniform",
            Suite::Appendix => "appendix",
        }
    }

    /// The functional a suite's theorem is stated for, if it is tied to one.
    pub fn required_functional(self) -> Option<CorrelationKind> {
        match self {
            Suite::GhzFootprint => Some(CorrelationKind::Tsallis2Total),
            Suite::AdeBounds => Some(CorrelationKind::VnTotal),
            _ => None,
        }
    }

    /// Rejects a functional the suite's theorem does not cover.
    pub fn check_functional(self, kind: CorrelationKind) -> Result<()> {
        match self.required_functional() {
            Some(required) if required != kind => Err(Error::Argument(format!(
                "suite {} is stated for the {} functional, not {}",
                self.as_str(),
                required,
                kind
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    /// The first [`MAX_LISTED`] failures.
    pub violations: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
    violations: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.violations.len() < MAX_LISTED {
                self.violations.push(what());
            }
        }
    }

    fn close(&mut self, got: f64, want: f64, tol: f64, what: impl FnOnce() -> String) {
        self.check((got - want).abs() < tol, || format!("{}: got {got:.12e}, expected {want:.12e}", what()));
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport {
            suite,
            passed: self.failures == 0,
            checks: self.checks,
            failures: self.failures,
            violations: self.violations,
        }
    }
}

/// Whether the 2-deformed barcode has the GHZ shape: `n` components until 0.5, then one
/// component and `(n-1)(n-2)/2` independent cycles at 0.5.
pub fn has_ghz_signature(complex: &FilteredComplex<f64>) -> bool {
    let n = complex.n_vertices();
    let tol = complex.tolerance();
    let curves = betti_curves(complex);
    if curves.len() < 2 {
        return false;
    }
    let before = curves[0]
        .breakpoints
        .iter()
        .zip(&curves[0].values)
        .filter(|(&b, _)| b < 0.5 - tol)
        .all(|(_, &v)| v == n);
    before && curves[0].at(0.5 + tol) == 1 && curves[1].at(0.5 + tol) == (n - 1) * (n - 2) / 2
}

/// Every pair has `C2 = 0.5` within `tol` on the dense state.
pub fn all_pairs_half(state: &PureState<f64>, tol: f64) -> Result<bool> {
    let n = state.n_qubits();
    for u in 0..n {
        for v in u + 1..n {
            let c2 = deformed_correlation_2(state, &QubitSubset::from_indices(&[u, v], n)?)?;
            if (c2 - 0.5).abs() >= tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn graph_state(b: BuiltinGraph) -> Result<PureState<f64>> {
    graph_state_vector(&builtin_graph(b)?)
}

fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
    format!("n={} [{}]", g.n_vertices(), edges.join(" "))
}

/// Named states every suite draws on.
pub fn builtin_states() -> Result<Vec<(String, PureState<f64>)>> {
    let mut out = Vec::new();
    for n in 3..=6 {
        out.push((format!("ghz{n}"), make_ghz(n)?));
    }
    for n in 3..=5 {
        out.push((format!("w{n}"), make_w(n)?));
    }
    out.push(("product4".into(), make_product(4)?));
    out.push(("pentagon5".into(), graph_state(BuiltinGraph::Pentagon5)?));
    out.push(("wheel6".into(), graph_state(BuiltinGraph::Wheel6)?));
    Ok(out)
}

fn ghz_footprint(t: &mut Tally, sizes: std::ops::RangeInclusive<usize>) -> Result<()> {
    for n in sizes {
        for g in connected_graphs(n)? {
            let state = graph_state_vector(&g)?;
            let structural = is_lu_ghz_graph(&g)?;
            let pairs = all_pairs_half(&state, 1e-9)?;
            let complex = full_filtration(&state, CorrelationKind::Tsallis2Total)?;
            let topological = has_ghz_signature(&complex);
            t.check(structural == pairs && pairs == topological, || {
                format!("{}: graph {structural}, pairs {pairs}, barcode {topological}", describe(&g))
            });
        }
    }
    Ok(())
}

fn iec_identity(t: &mut Tally) -> Result<()> {
    let mut states = builtin_states()?;
    for n in 2..=5 {
        for seed in 0..10 {
            states.push((format!("random{n}/{seed}"), random_pure(n, seed)?));
        }
    }
    for (name, state) in &states {
        for kind in [CorrelationKind::VnTotal, CorrelationKind::Tsallis2Total] {
            let r = iec_report(state, kind)?;
            t.close(r.iec_integral, r.iec_closed_form, 1e-8, || format!("{name} {kind} IEC"));
        }
        if state.n_qubits() % 2 == 1 {
            let r = iec_report(state, CorrelationKind::VnTotal)?;
            t.close(r.iec_closed_form, 0.0, 1e-8, || format!("{name} odd-register IEC"));
        }
    }
    Ok(())
}

fn ade_bounds(t: &mut Tally) -> Result<()> {
    let mut states = builtin_states()?;
    for n in 3..=6 {
        for seed in 0..100 {
            states.push((format!("random{n}/{seed}"), random_pure(n, 1000 + seed)?));
        }
    }
    for (name, state) in &states {
        let b = bounds_report(state)?;
        t.check(b.holds(1e-8), || format!("{name}: {} <= {} <= {} fails", b.lower, b.ade, b.upper));
        let ceiling = exact::to_f64(exact::ade_ame(state.n_qubits())?);
        t.check(b.ade <= ceiling + 1e-9, || format!("{name}: ADE {} above the AME value {ceiling}", b.ade));
    }
    for (b, n) in [(BuiltinGraph::Pentagon5, 5), (BuiltinGraph::Wheel6, 6)] {
        let state = graph_state(b)?;
        let report = bounds_report(&state)?;
        t.close(report.ade, exact::to_f64(exact::ade_ame(n)?), 1e-9, || format!("{b} ADE"));
        t.close(report.slack, exact::to_f64(exact::ame_slack(n)?), 1e-9, || format!("{b} slack"));
    }
    Ok(())
}

fn kuniform(t: &mut Tally) -> Result<()> {
    for k in 1..=3 {
        let b = BuiltinGraph::KUniform8(k);
        let state = graph_state(b)?;
        t.check(k_uniformity(&state, 1e-10) == k, || format!("{b}: uniformity {}", k_uniformity(&state, 1e-10)));
        let bound = exact::to_f64(exact::ade_kuniform_lower_bound(8, k)?);
        let value = ade(&state)?;
        t.check(value >= bound - 1e-9, || format!("{b}: ADE {value} below bound {bound}"));
    }
    for (b, k) in [(BuiltinGraph::Pentagon5, 2), (BuiltinGraph::Wheel6, 3)] {
        let state = graph_state(b)?;
        t.check(k_uniformity(&state, 1e-10) == k, || format!("{b} is not AME"));
    }
    for n in 3..=6 {
        let state = make_ghz(n)?;
        t.check(k_uniformity(&state, 1e-10) == 1, || format!("ghz{n} uniformity"));
    }
    Ok(())
}

fn appendix(t: &mut Tally) -> Result<()> {
    for n in 0..=20 {
        for m in 0..=n {
            let direct = exact::alternating_binomial(n, m)?;
            let closed = exact::alternating_binomial_closed(n, m)?;
            t.check(direct == closed, || format!("alternating binomial ({n},{m}): {direct} != {closed}"));
        }
    }
    for (b, n) in [(BuiltinGraph::Pentagon5, 5), (BuiltinGraph::Wheel6, 6)] {
        let state = graph_state(b)?;
        t.check(ame_correlation_vanishes(&state, 1e-9)?, || format!("{b}: low-order correlation nonzero"));
        let got = avg_total_correlation(&state)?;
        t.close(got, exact::to_f64(exact::ame_avg_total_correlation(n)?), 1e-9, || {
            format!("{b} average total correlation")
        });
    }
    for n in 2..=25 {
        t.check(exact::ame_slack(n)? == exact::ame_slack_from_parts(n)?, || format!("slack forms differ at n={n}"));
        t.check(exact::ame_iec(n)? == exact::ame_iec_direct(n)?, || format!("AME IEC forms differ at n={n}"));
    }
    Ok(())
}

pub fn run_suite(suite: Suite) -> Result<SuiteReport> {
    let mut t = Tally::default();
    match suite {
        Suite::GhzFootprint => ghz_footprint(&mut t, 4..=6)?,
        Suite::IecIdentity => iec_identity(&mut t)?,
        Suite::AdeBounds => ade_bounds(&mut t)?,
        Suite::Kuniform => kuniform(&mut t)?,
        Suite::Appendix => appendix(&mut t)?,
    }
    Ok(t.finish(suite))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn functional_gate() {
        assert!(Suite::GhzFootprint.check_functional(CorrelationKind::VnTotal).is_err());
        assert!(Suite::AdeBounds.check_functional(CorrelationKind::Tsallis2Total).is_err());
        assert!(Suite::Appendix.check_functional(CorrelationKind::VnTotal).is_ok());
    }

    #[test]
    fn appendix_suite_passes() {
        let r = run_suite(Suite::Appendix).unwrap();
        assert!(r.passed, "{:?}", r.violations);
    }
}
