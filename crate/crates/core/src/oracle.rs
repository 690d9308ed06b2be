//! Plain reference implementations used to cross-check the production code
//! paths. These stay deliberately naive: full enumeration, no symmetry cuts,
//! no pruning.

use crate::dist::ValueDistribution;
use crate::error::{Error, Result};
use crate::set::{all_subsets, Subset};
use crate::valuation::{Valuation, MAX_SCAN_GOODS};

/// Distribution by brute 2^m enumeration, regardless of the valuation's
/// kind; certifies the closed-form and dynamic-programming fast paths.
pub fn enumerated_distribution(v: &Valuation, p: f64) -> Result<ValueDistribution> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("survival probability {p} outside [0,1]")));
    }
    let m = v.goods();
    if m > MAX_SCAN_GOODS {
        return Err(Error::capability(format!(
            "oracle enumeration needs m <= {MAX_SCAN_GOODS}, got {m}"
        )));
    }
    let mut atoms = Vec::with_capacity(1 << m);
    for s in all_subsets(m) {
        let mut prob = 1.0;
        for g in 1..=m {
            prob *= if s.contains(g) { p } else { 1.0 - p };
        }
        atoms.push((v.eval(s)?, prob));
    }
    Ok(ValueDistribution::from_atoms(atoms))
}

fn check_scale(n: usize, m: u32) -> Result<()> {
    let assignments = (n as u128).checked_pow(m);
    if assignments.is_none_or(|a| a > 10_000_000) {
        return Err(Error::capability(format!(
            "oracle enumerates n^m assignments; n={n}, m={m} is past 1e7"
        )));
    }
    Ok(())
}

/// Whether some ordered assignment of goods to agents gives everyone a
/// bundle meeting their threshold. Walks all n^m assignments.
pub fn brute_force_feasible(profile: &[Valuation], thresholds: &[f64]) -> Result<bool> {
    if profile.is_empty() || profile.len() != thresholds.len() {
        return Err(Error::domain("profile and thresholds must align and be nonempty"));
    }
    let n = profile.len();
    let m = profile[0].goods();
    if profile.iter().any(|v| v.goods() != m) {
        return Err(Error::domain("all valuations must share one ground set"));
    }
    check_scale(n, m)?;
    let total = (n as u64).pow(m);
    let mut bundles = vec![Subset::EMPTY; n];
    for code in 0..total {
        for b in bundles.iter_mut() {
            *b = Subset::EMPTY;
        }
        let mut rest = code;
        for g in 1..=m {
            bundles[(rest % n as u64) as usize] = bundles[(rest % n as u64) as usize].with(g);
            rest /= n as u64;
        }
        let mut ok = true;
        for (i, v) in profile.iter().enumerate() {
            if v.eval(bundles[i])? < thresholds[i] {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Maximin share by walking all n^m ordered partitions, no cuts.
pub fn naive_mms(v: &Valuation, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("agent count must be positive"));
    }
    let m = v.goods();
    check_scale(n, m)?;
    let total = (n as u64).pow(m);
    let mut best = f64::NEG_INFINITY;
    let mut bundles = vec![Subset::EMPTY; n];
    for code in 0..total {
        for b in bundles.iter_mut() {
            *b = Subset::EMPTY;
        }
        let mut rest = code;
        for g in 1..=m {
            bundles[(rest % n as u64) as usize] = bundles[(rest % n as u64) as usize].with(g);
            rest /= n as u64;
        }
        let mut worst = f64::INFINITY;
        for b in &bundles {
            worst = worst.min(v.eval(*b)?);
        }
        best = best.max(worst);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::exact_distribution;
    use crate::shares::mms;

    #[test]
    fn oracle_agrees_with_fast_distribution() {
        let vs = vec![
            Valuation::additive(vec![1.0, 2.0, 2.0]).unwrap(),
            Valuation::threshold(5, 2).unwrap(),
            Valuation::nonempty(4).unwrap(),
        ];
        for v in vs {
            for p in [0.0, 0.25, 0.6, 1.0] {
                let fast = exact_distribution(&v, p).unwrap();
                let slow = enumerated_distribution(&v, p).unwrap();
                assert_eq!(fast.support(), slow.support());
                for (a, b) in fast.probs().iter().zip(slow.probs()) {
                    assert!((a - b).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn naive_mms_agrees_with_pruned_search() {
        let vs = vec![
            Valuation::additive(vec![3.0, 2.0, 2.0, 1.0]).unwrap(),
            Valuation::unit_demand(vec![1.0, 2.0, 3.0, 4.0]).unwrap(),
            Valuation::cardinality(5),
        ];
        for v in vs {
            for n in 1..=3 {
                assert_eq!(naive_mms(&v, n).unwrap(), mms(&v, n).unwrap().value);
            }
        }
    }

    #[test]
    fn brute_force_feasibility_spot_checks() {
        let profile = vec![Valuation::nonempty(2).unwrap(); 3];
        assert!(!brute_force_feasible(&profile, &[1.0, 1.0, 1.0]).unwrap());
        assert!(brute_force_feasible(&profile, &[1.0, 1.0, 0.0]).unwrap());
    }
}
