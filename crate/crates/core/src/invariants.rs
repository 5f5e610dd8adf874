//! Scalar invariants of the filtration: the integrated Euler characteristic (IEC), the
//! average distillable entanglement (ADE) and the bounds relating them, plus
//! floating-point views of the exact closed forms.

use serde::Serialize;

use crate::correlations::{CorrelationKind, EntropyKind, MarginalTable};
use crate::error::{Error, Result};
use crate::exact;
use crate::homology::{betti_curves, full_filtration, BettiCurve, FilteredComplex};
use crate::qstate::PureState;
use crate::scalar::{pairwise_sum, Real};
use crate::subset::full_mask;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IecReport<T> {
    pub functional: CorrelationKind,
    pub iec_integral: T,
    pub iec_closed_form: T,
    pub epsilon_max: T,
    /// `[∫ reduced beta0, ∫ beta1, ∫ beta2, ...]`, unsigned.
    pub integrals: Vec<T>,
}

impl<T: Real> IecReport<T> {
    pub fn discrepancy(&self) -> T {
        (self.iec_integral - self.iec_closed_form).abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundsReport<T> {
    pub lower: T,
    pub ade: T,
    pub upper: T,
    /// `upper - ade`.
    pub slack: T,
}

impl<T: Real> BoundsReport<T> {
    pub fn holds(&self, tol: T) -> bool {
        self.lower <= self.ade + tol && self.ade <= self.upper + tol
    }
}

/// `∫_0^∞` of each curve (reduced for `k = 0`), as finite sums over the critical grid.
pub fn betti_integrals<T: Real>(curves: &[BettiCurve<T>]) -> Result<Vec<T>> {
    curves
        .iter()
        .map(|c| {
            let value = |i: usize| if c.dim == 0 { c.values[i].saturating_sub(1) } else { c.values[i] };
            let last = c.values.len() - 1;
            if value(last) != 0 {
                return Err(Error::Divergence(format!(
                    "beta_{} = {} past the last critical value",
                    c.dim,
                    value(last)
                )));
            }
            let terms: Vec<T> = (0..last)
                .map(|i| (c.breakpoints[i + 1] - c.breakpoints[i]) * T::from_count(value(i)))
                .collect();
            Ok(pairwise_sum(&terms))
        })
        .collect()
}

/// `∫ reduced beta0 + sum_{k>=1} (-1)^k ∫ beta_k`.
pub fn iec_integral<T: Real>(complex: &FilteredComplex<T>) -> Result<T> {
    Ok(signed_total(&betti_integrals(&betti_curves(complex))?))
}

fn signed_total<T: Real>(integrals: &[T]) -> T {
    integrals
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (k, &x)| if k % 2 == 0 { acc + x } else { acc - x })
}

/// `sum_{J ⊆ A} (-1)^(|J|-1) S(J)` for the chosen entropy.
pub fn iec_closed_form<T: Real>(state: &PureState<T>, entropy: EntropyKind) -> Result<T> {
    Ok(iec_from_table(&MarginalTable::build(state, entropy)?))
}

fn iec_from_table<T: Real>(table: &MarginalTable<T>) -> T {
    let terms: Vec<T> = table
        .entropies()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(m, &s)| if m.count_ones() % 2 == 1 { s } else { -s })
        .collect();
    pairwise_sum(&terms)
}

/// Both sides of the IEC identity on the full-dimension complex.
pub fn iec_report<T: Real>(state: &PureState<T>, kind: CorrelationKind) -> Result<IecReport<T>> {
    let complex = full_filtration(state, kind)?;
    let integrals = betti_integrals(&betti_curves(&complex))?;
    let table = MarginalTable::build(state, kind.entropy())?;
    Ok(IecReport {
        functional: kind,
        iec_integral: signed_total(&integrals),
        iec_closed_form: iec_from_table(&table),
        epsilon_max: table.correlation(full_mask(state.n_qubits())),
        integrals,
    })
}

/// `2^-n sum_{J ⊆ A} S(J)` with von Neumann entropies, in bits.
pub fn ade<T: Real>(state: &PureState<T>) -> Result<T> {
    Ok(ade_from_table(&MarginalTable::build(state, EntropyKind::VonNeumann)?))
}

fn ade_from_table<T: Real>(table: &MarginalTable<T>) -> T {
    pairwise_sum(table.entropies()) / T::from_count(1 << table.n())
}

/// `IEC/2^n <= ADE <= IEC/2^n + eps_max/2`, with the von Neumann subset sum as the IEC.
pub fn bounds_report<T: Real>(state: &PureState<T>) -> Result<BoundsReport<T>> {
    let table = MarginalTable::build(state, EntropyKind::VonNeumann)?;
    let scale = T::from_count(1 << state.n_qubits());
    let lower = iec_from_table(&table) / scale;
    let ade = ade_from_table(&table);
    let upper = lower + table.correlation(full_mask(state.n_qubits())) / T::lit(2.0);
    Ok(BoundsReport { lower, ade, upper, slack: upper - ade })
}

/// Whether the von Neumann total correlation is below `tol` on every `|J| <= n/2`.
pub fn ame_correlation_vanishes<T: Real>(state: &PureState<T>, tol: T) -> Result<bool> {
    let n = state.n_qubits();
    let table = MarginalTable::build(state, EntropyKind::VonNeumann)?;
    Ok((1..1u32 << n).filter(|m| m.count_ones() as usize <= n / 2).all(|m| table.correlation(m) < tol))
}

/// `2^-n sum_{J ⊊ A} C(J)`, the quantity the AME closed form describes.
pub fn avg_total_correlation<T: Real>(state: &PureState<T>) -> Result<T> {
    let n = state.n_qubits();
    let table = MarginalTable::build(state, EntropyKind::VonNeumann)?;
    let terms: Vec<T> = (0..full_mask(n)).map(|m| table.correlation(m)).collect();
    Ok(pairwise_sum(&terms) / T::from_count(1 << n))
}

pub fn ade_ame_closed_form(n: usize) -> Result<f64> {
    exact::ade_ame(n).map(exact::to_f64)
}

pub fn ade_kuniform_lower_bound(n: usize, k: usize) -> Result<f64> {
    exact::ade_kuniform_lower_bound(n, k).map(exact::to_f64)
}

pub fn ame_slack_closed_form(n: usize) -> Result<f64> {
    exact::ame_slack(n).map(exact::to_f64)
}

pub fn ame_birth_time(n: usize, d: usize) -> Result<f64> {
    exact::ame_birth_time(n, d).map(exact::to_f64)
}

pub fn ame_avg_total_correlation(n: usize) -> Result<f64> {
    exact::ame_avg_total_correlation(n).map(exact::to_f64)
}

pub use crate::exact::alternating_binomial;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphstates::{builtin_graph, graph_state_vector, BuiltinGraph};
    use crate::qstate::{make_ghz, make_product, random_pure};

    fn graph_state(b: BuiltinGraph) -> PureState<f64> {
        graph_state_vector(&builtin_graph(b).unwrap()).unwrap()
    }

    #[test]
    fn product_state_invariants() {
        let p = make_product::<f64>(4).unwrap();
        let c = full_filtration(&p, CorrelationKind::VnTotal).unwrap();
        assert_eq!(iec_integral(&c).unwrap(), 0.0);
        assert_eq!(iec_closed_form(&p, EntropyKind::VonNeumann).unwrap(), 0.0);
        let b = bounds_report(&p).unwrap();
        assert_eq!((b.lower, b.ade, b.upper), (0.0, 0.0, 0.0));
        assert!(ame_correlation_vanishes(&p, 1e-9).unwrap());
    }

    #[test]
    fn odd_register_iec_vanishes() {
        for seed in 0..5 {
            let s = random_pure::<f64>(5, seed).unwrap();
            assert!(iec_closed_form(&s, EntropyKind::VonNeumann).unwrap().abs() < 1e-8);
        }
    }

    #[test]
    fn ghz_tsallis_integral_matches_subset_sum() {
        let s = make_ghz::<f64>(4).unwrap();
        let r = iec_report(&s, CorrelationKind::Tsallis2Total).unwrap();
        // GHZ_4: S2 = 1/2 on every proper nonempty subset
        let direct: f64 = (1..15u32).map(|m| if m.count_ones() % 2 == 1 { 0.5 } else { -0.5 }).sum();
        assert!((r.iec_closed_form - direct).abs() < 1e-12);
        assert!(r.discrepancy() < 1e-8);
    }

    #[test]
    fn wheel_iec_is_twelve() {
        let w = graph_state(BuiltinGraph::Wheel6);
        let r = iec_report(&w, CorrelationKind::VnTotal).unwrap();
        assert!((r.iec_closed_form - 12.0).abs() < 1e-8);
        assert!(r.discrepancy() < 1e-8);
    }

    #[test]
    fn ade_values() {
        assert!((ade(&make_ghz::<f64>(3).unwrap()).unwrap() - 0.75).abs() < 1e-12);
        assert!((ade(&graph_state(BuiltinGraph::Pentagon5)).unwrap() - 1.5625).abs() < 1e-9);
        assert!((ade(&graph_state(BuiltinGraph::Wheel6)).unwrap() - 2.0625).abs() < 1e-9);
        assert!((ade(&make_ghz::<f64>(2).unwrap()).unwrap() - ade_ame_closed_form(2).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn bounds_examples() {
        let pent = bounds_report(&graph_state(BuiltinGraph::Pentagon5)).unwrap();
        assert!(pent.lower.abs() < 1e-9);
        assert!((pent.upper - 2.5).abs() < 1e-9);
        assert!((pent.slack - 0.9375).abs() < 1e-9);
        let wheel = bounds_report(&graph_state(BuiltinGraph::Wheel6)).unwrap();
        assert!((wheel.slack - ame_slack_closed_form(6).unwrap()).abs() < 1e-9);
        let s = random_pure::<f64>(3, 11).unwrap();
        let b = bounds_report(&s).unwrap();
        assert!(b.lower.abs() < 1e-9 && b.holds(1e-8));
    }

    #[test]
    fn truncated_complex_diverges() {
        let s = make_ghz::<f64>(4).unwrap();
        let f = crate::correlations::CorrelationFunctional::tsallis2_total();
        let c = crate::homology::build_filtration(&s, &f, 1).unwrap();
        assert!(matches!(iec_integral(&c), Err(Error::Divergence(_))));
    }

    #[test]
    fn vanishing_correlation() {
        assert!(ame_correlation_vanishes(&graph_state(BuiltinGraph::Pentagon5), 1e-9).unwrap());
        assert!(!ame_correlation_vanishes(&make_ghz::<f64>(5).unwrap(), 1e-9).unwrap());
    }

    #[test]
    fn average_total_correlation_on_ame() {
        for (b, n) in [(BuiltinGraph::Pentagon5, 5), (BuiltinGraph::Wheel6, 6)] {
            let got = avg_total_correlation(&graph_state(b)).unwrap();
            assert!((got - ame_avg_total_correlation(n).unwrap()).abs() < 1e-9);
        }
        let bell = make_ghz::<f64>(2).unwrap();
        assert!(avg_total_correlation(&bell).unwrap().abs() < 1e-12);
    }

    #[test]
    fn f32_path() {
        let s = make_ghz::<f32>(4).unwrap();
        let r = iec_report(&s, CorrelationKind::Tsallis2Total).unwrap();
        assert!(r.discrepancy() < 1e-4);
    }
}
