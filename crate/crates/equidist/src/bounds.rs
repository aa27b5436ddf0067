//! Upper bounds on equidistant code size, each with an explicit
//! applicability predicate, plus an aggregator taking the best one.
//!
//! All arithmetic is exact; nothing here touches floating point.

use num::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

/// One evaluated bound. `applicable` records whether the hypothesis of the
/// bound holds at these parameters; inapplicable bounds still carry their
/// fallback value but are ignored by [`best_bound`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    pub value: u64,
    pub applicable: bool,
    pub condition: String,
}

fn check_params(n: u64, q: u32, d: u64) -> Result<()> {
    if q < 2 || n == 0 || d == 0 || d > n {
        return Err(Error::InvalidParameters {
            reason: format!("need q >= 2 and 1 <= d <= n, got n={n} q={q} d={d}"),
        });
    }
    Ok(())
}

fn narrow(value: u128) -> Result<u64> {
    u64::try_from(value)
        .map_err(|_| Error::InvalidParameters { reason: format!("bound value {value} overflows") })
}

/// Σ_{i=0}^{s} C(n,i)(q−1)^i, the size bound for codes with at most s
/// distinct pairwise distances.
pub fn delsarte_bound(n: u64, q: u32, s: u64) -> Result<BigUint> {
    if q < 2 || s > n {
        return Err(Error::InvalidParameters {
            reason: format!("need q >= 2 and 0 <= s <= n, got n={n} q={q} s={s}"),
        });
    }
    let mut sum = BigUint::from(0u32);
    let mut term = BigUint::from(1u32); // C(n,i)(q−1)^i
    for i in 0..=s {
        sum += &term;
        if i < s {
            term = term * BigUint::from(n - i) * BigUint::from(q - 1) / BigUint::from(i + 1);
        }
    }
    Ok(sum)
}

/// n(q−1) + 1, the single-distance specialization of the bound above.
pub fn trivial_equidistant_bound(n: u64, q: u32) -> u64 {
    n.saturating_mul(q as u64 - 1).saturating_add(1)
}

/// n(q−1), valid whenever d avoids the exceptional distance ((q−1)n+1)/q.
/// At the exceptional distance the simplex rank argument degenerates and the
/// report falls back to n(q−1)+1, marked inapplicable.
pub fn rank_bound(n: u64, q: u32, d: u64) -> Result<BoundReport> {
    check_params(n, q, d)?;
    let lhs = q as u128 * d as u128;
    let rhs = (q as u128 - 1) * n as u128 + 1;
    if lhs != rhs {
        Ok(BoundReport {
            name: "rank",
            value: narrow(rhs - 1)?,
            applicable: true,
            condition: format!("qd = {lhs} avoids the exceptional value (q-1)n+1 = {rhs}"),
        })
    } else {
        Ok(BoundReport {
            name: "rank",
            value: narrow(rhs)?,
            applicable: false,
            condition: format!(
                "exceptional distance d = ((q-1)n+1)/q = {d}; falls back to n(q-1)+1 \
                 (the conjectured threshold (q-1)(n+1)/q would differ for q > 2)"
            ),
        })
    }
}

/// n(q−1), valid for distances up to (q−1)n/q.
pub fn barg_musin_bound(n: u64, q: u32, d: u64) -> Result<BoundReport> {
    check_params(n, q, d)?;
    let lhs = q as u128 * d as u128;
    let rhs = (q as u128 - 1) * n as u128;
    Ok(BoundReport {
        name: "barg_musin",
        value: narrow(rhs)?,
        applicable: lhs <= rhs,
        condition: format!(
            "qd = {lhs} {} (q-1)n = {rhs}",
            if lhs <= rhs { "<=" } else { ">" }
        ),
    })
}

/// Binary sunflower bound: max{(d²+2d+8)/4, ⌊2n/d⌋}, collapsing to ⌊2n/d⌋
/// alone once n ≥ d(d²+2d+8)/8. Odd distances admit at most two codewords.
pub fn deza_binary_bound(n: u64, d: u64) -> Result<BoundReport> {
    check_params(n, 2, d)?;
    if d % 2 != 0 {
        return Ok(BoundReport {
            name: "deza_binary",
            value: 2,
            applicable: true,
            condition: "odd distance forces at most two codewords".into(),
        });
    }
    let d = d as u128;
    let n = n as u128;
    let head = (d * d + 2 * d + 8) / 4;
    let tail = 2 * n / d;
    let in_regime = 8 * n >= d * (d * d + 2 * d + 8);
    let (value, condition) = if in_regime {
        (tail, format!("n >= d(d^2+2d+8)/8, so the bound is floor(2n/d) = {tail}"))
    } else {
        (head.max(tail), format!("below the large-n regime; max{{{head}, {tail}}}"))
    };
    Ok(BoundReport { name: "deza_binary", value: narrow(value)?, applicable: true, condition })
}

/// q-ary sunflower bound: max{d²+d+2, q, ⌊2n/d⌋}, collapsing to ⌊2n/d⌋ once
/// n ≥ max{d(d²+d+2)/2, dq/2}.
pub fn deza_qary_bound(n: u64, q: u32, d: u64) -> Result<BoundReport> {
    check_params(n, q, d)?;
    let d = d as u128;
    let n = n as u128;
    let q = q as u128;
    let head = (d * d + d + 2).max(q);
    let tail = 2 * n / d;
    let in_regime = 2 * n >= d * (d * d + d + 2) && 2 * n >= d * q;
    let (value, condition) = if in_regime {
        (tail, format!("n >= max{{d(d^2+d+2)/2, dq/2}}, so the bound is floor(2n/d) = {tail}"))
    } else {
        (head.max(tail), format!("below the large-n regime; max{{{}, {q}, {tail}}}", d * d + d + 2))
    };
    Ok(BoundReport { name: "deza_qary", value: narrow(value)?, applicable: true, condition })
}

/// Every bound report at these parameters plus the minimum over the
/// applicable ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BestBound {
    pub reports: Vec<BoundReport>,
    pub minimum: u64,
}

pub fn best_bound(n: u64, q: u32, d: u64) -> Result<BestBound> {
    check_params(n, q, d)?;
    let mut reports = vec![
        BoundReport {
            name: "trivial",
            value: trivial_equidistant_bound(n, q),
            applicable: true,
            condition: "n(q-1)+1 holds for every equidistant code".into(),
        },
        rank_bound(n, q, d)?,
        barg_musin_bound(n, q, d)?,
    ];
    if q == 2 {
        reports.push(deza_binary_bound(n, d)?);
    }
    reports.push(deza_qary_bound(n, q, d)?);
    let minimum = reports
        .iter()
        .filter(|r| r.applicable)
        .map(|r| r.value)
        .min()
        .expect("the trivial bound always applies");
    Ok(BestBound { reports, minimum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::pow::Pow;

    #[test]
    fn delsarte_values() {
        for n in 1..6 {
            assert_eq!(delsarte_bound(n, 3, 0).unwrap(), BigUint::from(1u32));
        }
        assert_eq!(delsarte_bound(7, 2, 1).unwrap(), BigUint::from(8u32));
        assert_eq!(delsarte_bound(4, 3, 1).unwrap(), BigUint::from(9u32));
        assert!(delsarte_bound(4, 3, 5).is_err());
        assert!(delsarte_bound(4, 1, 1).is_err());
    }

    #[test]
    fn delsarte_full_sum_is_whole_space() {
        for q in [2u32, 3, 5] {
            for n in 1u64..=12 {
                assert_eq!(
                    delsarte_bound(n, q, n).unwrap(),
                    BigUint::from(q).pow(n),
                    "sum over all radii must cover H_{q}^{n}"
                );
            }
        }
    }

    #[test]
    fn trivial_values() {
        assert_eq!(trivial_equidistant_bound(7, 2), 8);
        assert_eq!(trivial_equidistant_bound(4, 3), 9);
        assert_eq!(trivial_equidistant_bound(1, 2), 2);
    }

    #[test]
    fn rank_bound_cases() {
        let exceptional = rank_bound(7, 2, 4).unwrap();
        assert!(!exceptional.applicable);
        assert_eq!(exceptional.value, 8);

        let plain = rank_bound(7, 2, 2).unwrap();
        assert!(plain.applicable);
        assert_eq!(plain.value, 7);

        let non_integral = rank_bound(6, 2, 3).unwrap();
        assert!(non_integral.applicable);
        assert_eq!(non_integral.value, 6);

        assert!(rank_bound(5, 2, 6).is_err());
    }

    #[test]
    fn barg_musin_cases() {
        let a = barg_musin_bound(10, 2, 5).unwrap();
        assert!(a.applicable);
        assert_eq!(a.value, 10);
        assert!(!barg_musin_bound(10, 2, 6).unwrap().applicable);
        let c = barg_musin_bound(9, 3, 6).unwrap();
        assert!(c.applicable);
        assert_eq!(c.value, 18);
    }

    #[test]
    fn deza_binary_cases() {
        let at_regime = deza_binary_bound(16, 4).unwrap();
        assert_eq!(at_regime.value, 8);
        let below = deza_binary_bound(15, 4).unwrap();
        assert_eq!(below.value, 8);
        assert_eq!(deza_binary_bound(100, 4).unwrap().value, 50);
        assert_eq!(deza_binary_bound(7, 4).unwrap().value, 8);
        assert_eq!(deza_binary_bound(9, 5).unwrap().value, 2);
        assert_eq!(deza_binary_bound(9, 1).unwrap().value, 2);
    }

    #[test]
    fn deza_qary_cases() {
        assert_eq!(deza_qary_bound(100, 3, 4).unwrap().value, 50);
        assert_eq!(deza_qary_bound(10, 3, 4).unwrap().value, 22);
        assert_eq!(deza_qary_bound(10, 30, 4).unwrap().value, 30);
    }

    #[test]
    fn best_bound_cases() {
        assert_eq!(best_bound(7, 2, 4).unwrap().minimum, 8);
        assert_eq!(best_bound(100, 2, 4).unwrap().minimum, 50);
        assert_eq!(best_bound(7, 2, 2).unwrap().minimum, 7);
        assert_eq!(best_bound(4, 3, 3).unwrap().minimum, 9);
        assert_eq!(best_bound(10, 2, 4).unwrap().minimum, 8);
        assert_eq!(best_bound(16, 2, 4).unwrap().minimum, 8);
        assert_eq!(best_bound(16, 2, 8).unwrap().minimum, 16);
        // inapplicable bounds never contribute
        let bb = best_bound(7, 2, 4).unwrap();
        for r in &bb.reports {
            if r.applicable {
                assert!(r.value >= bb.minimum);
            }
        }
    }

    #[test]
    fn values_non_decreasing_in_n() {
        for q in 2u32..=5 {
            for d in 1u64..=12 {
                let mut prev: Option<(u64, u64, u64, u64)> = None;
                for n in d..=d + 60 {
                    let cur = (
                        trivial_equidistant_bound(n, q),
                        rank_bound(n, q, d).unwrap().value,
                        barg_musin_bound(n, q, d).unwrap().value,
                        deza_qary_bound(n, q, d).unwrap().value,
                    );
                    if let Some(p) = prev {
                        assert!(p.0 <= cur.0 && p.1 <= cur.1 && p.2 <= cur.2 && p.3 <= cur.3);
                    }
                    prev = Some(cur);
                }
            }
        }
        let mut prev = 0;
        for d in [2u64, 4, 6, 8] {
            prev = 0;
            for n in d..=d + 120 {
                let v = deza_binary_bound(n, d).unwrap().value;
                assert!(v >= prev);
                prev = v;
            }
        }
        let _ = prev;
    }

    #[test]
    fn constructions_respect_best_bound() {
        use crate::constructions::{kernel_sunflower_code, simplex_linear_code, sunflower_code};
        for (q, kmax) in [(2u32, 5u32), (3, 3), (4, 3), (5, 3)] {
            for k in 1..=kmax {
                let code = simplex_linear_code(q, k).unwrap();
                if let Some(d) = code.is_equidistant().distance() {
                    let bb = best_bound(code.n() as u64, q, d as u64).unwrap();
                    assert!(code.size() as u64 <= bb.minimum, "simplex({q},{k})");
                }
            }
        }
        for q in [2u32, 3, 5] {
            for n in 2u64..=40 {
                for d in (2..=n).step_by(2) {
                    for code in [
                        sunflower_code(n as usize, d as usize, q).unwrap(),
                        kernel_sunflower_code(n as usize, d as usize, q).unwrap(),
                    ] {
                        let bb = best_bound(n, q, d).unwrap();
                        assert!(code.size() as u64 <= bb.minimum, "sunflower {n} {d} {q}");
                    }
                }
            }
        }
    }
}
