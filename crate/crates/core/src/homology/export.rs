//! Barcode JSON and Betti-curve / barcode CSV serialization.
//!
//! Exported numbers carry 12 significant digits.

use serde::{Deserialize, Serialize};

use super::{reduced_betti0, Barcode, BettiCurve, Interval};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub dim: usize,
    pub birth: f64,
    /// `null` for an essential class.
    pub death: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarcodeFile {
    pub n: usize,
    pub functional: String,
    pub intervals: Vec<IntervalRecord>,
}

impl BarcodeFile {
    pub fn new<T: Real>(n: usize, functional: &str, barcode: &Barcode<T>) -> Self {
        let intervals = barcode
            .intervals
            .iter()
            .map(|i| IntervalRecord {
                dim: i.dim,
                birth: i.birth.to_f64_lossy(),
                death: i.death.map(|d| d.to_f64_lossy()),
            })
            .collect();
        Self { n, functional: functional.to_string(), intervals }
    }

    pub fn to_barcode(&self) -> Barcode<f64> {
        Barcode {
            intervals: self
                .intervals
                .iter()
                .map(|r| Interval { dim: r.dim, birth: r.birth, death: r.death })
                .collect(),
        }
    }
}

/// Significant digits of exported numbers.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` with `sig` significant digits, trailing zeros dropped (`%g`-style).
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sig = sig.max(1);
    // round first so that e.g. 9.9999999999999e-1 is classified by its rounded exponent
    let rounded: f64 = format!("{:.*e}", sig - 1, x).parse().expect("formatted float");
    let exp = rounded.abs().log10().floor() as i32;
    if (-5..sig as i32).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let s = format!("{rounded:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{:.*e}", sig - 1, rounded);
        let (mantissa, e) = s.split_once('e').expect("exponent");
        let mantissa =
            if mantissa.contains('.') { mantissa.trim_end_matches('0').trim_end_matches('.') } else { mantissa };
        format!("{mantissa}e{e}")
    }
}

fn round_sig(x: f64) -> f64 {
    fmt_sig(x, SIGNIFICANT_DIGITS).parse().unwrap_or(x)
}

pub fn barcode_json<T: Real>(n: usize, functional: &str, barcode: &Barcode<T>) -> String {
    let mut file = BarcodeFile::new(n, functional, barcode);
    for r in &mut file.intervals {
        r.birth = round_sig(r.birth);
        r.death = r.death.map(round_sig);
    }
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn parse_barcode_json(text: &str) -> Result<BarcodeFile> {
    Ok(serde_json::from_str(text)?)
}

/// Columns `epsilon, beta0, reduced_beta0, beta1, ...`, one row per critical value.
pub fn betti_csv<T: Real>(curves: &[BettiCurve<T>]) -> Result<String> {
    let Some(first) = curves.first() else {
        return Err(Error::Argument("no Betti curves to export".into()));
    };
    if curves.iter().any(|c| c.breakpoints != first.breakpoints) {
        return Err(Error::Argument("Betti curves sampled on different grids".into()));
    }
    let mut out = String::from("epsilon,beta0,reduced_beta0");
    for c in &curves[1..] {
        out.push_str(&format!(",beta{}", c.dim));
    }
    out.push('\n');
    for (i, eps) in first.breakpoints.iter().enumerate() {
        let b0 = first.values[i];
        out.push_str(&format!(
            "{},{},{}",
            fmt_sig(eps.to_f64_lossy(), SIGNIFICANT_DIGITS),
            b0,
            reduced_betti0(&[b0])
        ));
        for c in &curves[1..] {
            out.push_str(&format!(",{}", c.values[i]));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Columns `dim, birth, death`, with `inf` for essential classes.
pub fn barcode_csv<T: Real>(barcode: &Barcode<T>) -> String {
    let mut out = String::from("dim,birth,death\n");
    for i in &barcode.intervals {
        let death = i.death.map_or("inf".to_string(), |d| fmt_sig(d.to_f64_lossy(), SIGNIFICANT_DIGITS));
        out.push_str(&format!("{},{},{}\n", i.dim, fmt_sig(i.birth.to_f64_lossy(), SIGNIFICANT_DIGITS), death));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::CorrelationKind;
    use crate::homology::{betti_curves, full_filtration, persistence_pairs};
    use crate::qstate::make_ghz;

    #[test]
    fn json_round_trip_with_null_death() {
        let c = full_filtration(&make_ghz::<f64>(3).unwrap(), CorrelationKind::Tsallis2Total).unwrap();
        let bars = persistence_pairs(&c);
        let text = barcode_json(3, "tsallis2-total", &bars);
        assert!(text.contains("null"));
        let parsed = parse_barcode_json(&text).unwrap().to_barcode();
        assert_eq!(parsed.intervals.len(), bars.intervals.len());
        for (a, b) in parsed.intervals.iter().zip(&bars.intervals) {
            assert_eq!(a.dim, b.dim);
            assert!((a.birth - b.birth).abs() < 1e-11);
            assert_eq!(a.death.is_some(), b.death.is_some());
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.5, 12), "0.5");
        assert_eq!(fmt_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(fmt_sig(0.2500000000000002, 12), "0.25");
        assert_eq!(fmt_sig(0.99999999999999, 12), "1");
        assert_eq!(fmt_sig(12.0, 12), "12");
        assert_eq!(fmt_sig(1e-9, 12), "1e-9");
        assert_eq!(fmt_sig(-0.25, 12), "-0.25");
        assert_eq!(fmt_sig(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(fmt_sig(f64::INFINITY, 12), "inf");
    }

    #[test]
    fn csv_layout() {
        let c = full_filtration(&make_ghz::<f64>(3).unwrap(), CorrelationKind::Tsallis2Total).unwrap();
        let csv = betti_csv(&betti_curves(&c)).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "epsilon,beta0,reduced_beta0,beta1,beta2");
        assert_eq!(lines.next().unwrap(), "0,3,2,0,0");
        assert!(barcode_csv(&persistence_pairs(&c)).contains("inf"));
    }
}
