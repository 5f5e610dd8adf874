//! Exact combinatorial closed forms, as rationals over `i128`.

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Largest register size the closed forms accept.
pub const MAX_EXACT_N: usize = 60;

pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

fn pow2(e: usize) -> i128 {
    1i128 << e
}

fn sign(e: usize) -> i128 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_EXACT_N {
        Err(Error::Domain(format!("n = {n} outside {min}..={MAX_EXACT_N}")))
    } else {
        Ok(())
    }
}

/// `sum_{i=0}^{m} (-1)^i C(n, i)` by direct summation.
pub fn alternating_binomial(n: usize, m: usize) -> Result<i128> {
    if m > n {
        return Err(Error::Domain(format!("m = {m} exceeds n = {n}")));
    }
    Ok((0..=m).map(|i| sign(i) * binomial(n, i)).sum())
}

/// `(-1)^m C(n-1, m)`, the closed form of [`alternating_binomial`].
pub fn alternating_binomial_closed(n: usize, m: usize) -> Result<i128> {
    if m > n {
        return Err(Error::Domain(format!("m = {m} exceeds n = {n}")));
    }
    if n == 0 {
        return Ok(1);
    }
    Ok(sign(m) * binomial(n - 1, m))
}

/// `(n / 2^n) (2^(n-1) - C(n-1, floor(n/2)))`: the ADE of an `n`-qubit AME state.
pub fn ade_ame(n: usize) -> Result<Rational> {
    check_n(n, 2)?;
    Ok(Rational::new(n as i128 * (pow2(n - 1) - binomial(n - 1, n / 2)), pow2(n)))
}

/// `2^-(n-1) sum_{i=1}^{k} i C(n, i)`: lower bound on the ADE of a `k`-uniform state.
pub fn ade_kuniform_lower_bound(n: usize, k: usize) -> Result<Rational> {
    check_n(n, 2)?;
    if k < 1 || k >= n / 2 {
        return Err(Error::Domain(format!("k = {k} outside 1..{} for n = {n}", n / 2)));
    }
    let s: i128 = (1..=k).map(|i| i as i128 * binomial(n, i)).sum();
    Ok(Rational::new(s, pow2(n - 1)))
}

/// `sum_J (-1)^(|J|-1) min(|J|, n-|J|)`: the von Neumann subset sum of an AME state.
pub fn ame_iec_direct(n: usize) -> Result<Rational> {
    check_n(n, 1)?;
    let s: i128 = (1..=n).map(|j| -sign(j) * binomial(n, j) * j.min(n - j) as i128).sum();
    Ok(Rational::from_integer(s))
}

/// Closed form of [`ame_iec_direct`]: 0 for odd `n`, and for `n = 2k`
/// `(-1)^k [4k C(2k-2, k-2) - k C(2k, k)]`.
pub fn ame_iec(n: usize) -> Result<Rational> {
    check_n(n, 1)?;
    if n % 2 == 1 {
        return Ok(Rational::zero());
    }
    let k = n / 2;
    let c = if k >= 2 { binomial(2 * k - 2, k - 2) } else { 0 };
    Ok(Rational::from_integer(sign(k) * (4 * k as i128 * c - k as i128 * binomial(2 * k, k))))
}

/// `IEC / 2^n + n/2 - ADE` for an AME state, assembled from the pieces above.
pub fn ame_slack_from_parts(n: usize) -> Result<Rational> {
    Ok(ame_iec(n)? / Rational::from_integer(pow2(n)) + Rational::new(n as i128, 2) - ade_ame(n)?)
}

/// Slack `upper - ADE` of the bound theorem on an AME state.
pub fn ame_slack(n: usize) -> Result<Rational> {
    check_n(n, 2)?;
    let k = n / 2;
    let central = binomial(2 * k, k);
    if n % 2 == 1 {
        return Ok(Rational::new(n as i128 * central, pow2(n)));
    }
    let k_i = k as i128;
    let num = if k % 2 == 0 { 2 * k_i * (k_i - 1) } else { 2 * k_i * k_i };
    Ok(Rational::new(num * central, pow2(2 * k) * (2 * k_i - 1)))
}

/// Birth value of the `d`-simplices in the 2-deformed filtration of an AME state.
pub fn ame_birth_time(n: usize, d: usize) -> Result<Rational> {
    check_n(n, 2)?;
    if d + 2 > n {
        return Err(Error::Domain(format!("dimension {d} outside 0..={}", n - 2)));
    }
    let size = d + 1;
    let e = if size <= n / 2 { size } else { n - size };
    Ok(Rational::new(size as i128, 2) + Rational::new(1, pow2(e)) - Rational::one())
}

/// Average of the von Neumann total correlation over the proper subsets of an AME
/// register, normalized by `2^n`.
pub fn ame_avg_total_correlation(n: usize) -> Result<Rational> {
    check_n(n, 2)?;
    let k = n / 2;
    let central = binomial(2 * k, k);
    let k_i = k as i128;
    if n % 2 == 0 {
        Ok(Rational::new(k_i * central, pow2(2 * k)) - Rational::new(k_i, pow2(2 * k - 1)))
    } else {
        Ok(Rational::new(n as i128 * central, pow2(n))
            - Rational::new(k_i, pow2(2 * k))
            - Rational::new(1, pow2(n)))
    }
}

/// Same average by direct summation of `sum_{v in J} S(v) - S(J)` with AME entropies.
pub fn ame_avg_total_correlation_direct(n: usize) -> Result<Rational> {
    check_n(n, 2)?;
    let s: i128 = (1..n).map(|j| binomial(n, j) * (j as i128 - j.min(n - j) as i128)).sum();
    Ok(Rational::new(s, pow2(n)))
}

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().expect("finite rational")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn alternating_sums() {
        assert_eq!(alternating_binomial(4, 2).unwrap(), 3);
        assert_eq!(alternating_binomial(7, 0).unwrap(), 1);
        assert_eq!(alternating_binomial(5, 5).unwrap(), 0);
        assert!(alternating_binomial(2, 3).is_err());
        for n in 0..=30 {
            for m in 0..=n {
                assert_eq!(alternating_binomial(n, m).unwrap(), alternating_binomial_closed(n, m).unwrap());
            }
        }
    }

    #[test]
    fn ade_values() {
        assert_eq!(ade_ame(5).unwrap(), r(25, 16));
        assert_eq!(ade_ame(6).unwrap(), r(33, 16));
        assert_eq!(ade_ame(2).unwrap(), r(1, 2));
        assert_eq!(ade_kuniform_lower_bound(8, 1).unwrap(), r(1, 16));
        assert_eq!(ade_kuniform_lower_bound(8, 2).unwrap(), r(1, 2));
        assert_eq!(ade_kuniform_lower_bound(8, 3).unwrap(), r(232, 128));
        assert!(ade_kuniform_lower_bound(8, 4).is_err());
        assert!(ade_kuniform_lower_bound(8, 0).is_err());
    }

    #[test]
    fn ame_iec_forms_agree() {
        assert_eq!(ame_iec(6).unwrap(), Rational::from_integer(12));
        assert_eq!(ame_iec(2).unwrap(), Rational::from_integer(2));
        for n in 1..=40 {
            assert_eq!(ame_iec(n).unwrap(), ame_iec_direct(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn slack_forms_agree() {
        assert_eq!(ame_slack(5).unwrap(), r(15, 16));
        assert_eq!(ame_slack(6).unwrap(), r(9, 8));
        assert_eq!(ame_slack(2).unwrap(), Rational::one());
        for n in 2..=40 {
            assert_eq!(ame_slack(n).unwrap(), ame_slack_from_parts(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn birth_times() {
        assert_eq!(ame_birth_time(5, 1).unwrap(), r(1, 4));
        assert_eq!(ame_birth_time(5, 2).unwrap(), r(3, 4));
        assert_eq!(ame_birth_time(6, 2).unwrap(), r(5, 8));
        assert_eq!(ame_birth_time(6, 3).unwrap(), r(5, 4));
        assert_eq!(ame_birth_time(6, 0).unwrap(), Rational::zero());
        assert!(ame_birth_time(5, 4).is_err());
    }

    #[test]
    fn average_total_correlation() {
        assert_eq!(ame_avg_total_correlation(5).unwrap(), r(25, 32));
        assert_eq!(ame_avg_total_correlation(6).unwrap(), r(54, 64));
        assert_eq!(ame_avg_total_correlation(2).unwrap(), Rational::zero());
        for n in 2..=40 {
            assert_eq!(ame_avg_total_correlation(n).unwrap(), ame_avg_total_correlation_direct(n).unwrap());
        }
    }
}
