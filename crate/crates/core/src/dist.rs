//! Exact value distribution of an independently thinned bundle: each good
//! survives with probability p, independently, and we track the law of the
//! bundle's value.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::set::all_subsets;
use crate::shares::ShareValue;
use crate::valuation::{Valuation, ValuationKind, MAX_SCAN_GOODS};

/// Slack applied when comparing cumulative mass against a quantile level, so
/// levels sitting exactly on an atom boundary resolve to that atom.
pub const QUANTILE_SLACK: f64 = 1e-12;

/// Support points this close (relatively) are one atom.
const MERGE_REL: f64 = 1e-12;

/// Total probability mass must land this close to 1.
pub const NORM_TOL: f64 = 1e-9;

/// Integer-sum dynamic programming is attempted up to this total.
const DP_TOTAL_CAP: f64 = 1e6;

/// A finitely supported distribution: ascending support with per-atom
/// probabilities. Atoms of probability zero are kept when the value is
/// attained by some bundle, so quantiles always land on attained values.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueDistribution {
    support: Vec<f64>,
    probs: Vec<f64>,
}

impl ValueDistribution {
    /// Sorts, merges support points within `MERGE_REL` relative distance, and
    /// keeps zero-probability atoms.
    pub(crate) fn from_atoms(mut atoms: Vec<(f64, f64)>) -> ValueDistribution {
        debug_assert!(!atoms.is_empty());
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut support: Vec<f64> = Vec::new();
        let mut probs: Vec<f64> = Vec::new();
        for (v, p) in atoms {
            match support.last() {
                Some(&last) if (v - last).abs() <= MERGE_REL * f64::max(last.abs(), v.abs()) => {
                    *probs.last_mut().unwrap() += p;
                }
                _ => {
                    support.push(v);
                    probs.push(p);
                }
            }
        }
        let dist = ValueDistribution { support, probs };
        debug_assert!((dist.total() - 1.0).abs() <= NORM_TOL, "mass {}", dist.total());
        dist
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Probability of the atom exactly equal to `value` (0 if absent).
    pub fn prob_of(&self, value: f64) -> f64 {
        self.support
            .iter()
            .position(|&v| v == value)
            .map_or(0.0, |i| self.probs[i])
    }

    /// P[X <= t].
    pub fn cdf_at(&self, t: f64) -> f64 {
        self.support
            .iter()
            .zip(&self.probs)
            .take_while(|(&v, _)| v <= t)
            .map(|(_, &p)| p)
            .sum()
    }

    /// Smallest support point whose cumulative mass reaches `q` (with
    /// `QUANTILE_SLACK` grace). Requires 0 < q < 1.
    pub fn left_quantile(&self, q: f64) -> Result<ShareValue> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::domain(format!(
                "quantile level must lie strictly between 0 and 1, got {q}"
            )));
        }
        let mut cum = 0.0;
        for (&v, &p) in self.support.iter().zip(&self.probs) {
            cum += p;
            if cum >= q - QUANTILE_SLACK {
                return Ok(ShareValue { value: v, attained: true });
            }
        }
        // reachable only through rounding loss in the final partial sums
        Ok(ShareValue { value: *self.support.last().expect("nonempty support"), attained: true })
    }

    /// Two-column CSV, ascending support, probabilities with 17 significant
    /// digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,probability\n");
        for (v, p) in self.support.iter().zip(&self.probs) {
            out.push_str(&format!("{v},{p:.16e}\n"));
        }
        out
    }
}

/// P[Bin(trials, p) <= k], by the ascending term recurrence. `k >= trials`
/// returns 1.
pub fn binom_cdf(trials: u32, p: f64, k: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("success probability {p} outside [0,1]")));
    }
    if k >= trials {
        return Ok(1.0);
    }
    if p == 0.0 {
        return Ok(1.0);
    }
    if p == 1.0 {
        return Ok(0.0);
    }
    let ratio = p / (1.0 - p);
    let mut term = (1.0 - p).powi(trials as i32);
    let mut sum = term;
    for i in 0..k {
        term *= ratio * f64::from(trials - i) / f64::from(i + 1);
        sum += term;
    }
    Ok(sum)
}

/// Law of v(X) where X keeps each good independently with probability `p`.
/// Additive integer weights go through sum-indexed dynamic programming, the
/// 0/1 structural kinds through closed forms on their intrinsic domain, and
/// everything else through 2^m enumeration (m <= 20).
pub fn exact_distribution(v: &Valuation, p: f64) -> Result<ValueDistribution> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("survival probability {p} outside [0,1]")));
    }
    match v.kind() {
        ValuationKind::Additive { weights }
            if weights.iter().all(|w| w.fract() == 0.0)
                && weights.iter().sum::<f64>() <= DP_TOTAL_CAP =>
        {
            Ok(dp_integer(weights, p))
        }
        ValuationKind::Threshold { goods, min_size } => {
            if *min_size > *goods {
                // the bundle can never reach the threshold
                return Ok(ValueDistribution::from_atoms(vec![(0.0, 1.0)]));
            }
            let p0 = binom_cdf(*goods, p, *min_size - 1)?;
            Ok(two_point(p0))
        }
        ValuationKind::Nonempty { goods } => {
            let p0 = (1.0 - p).powi(*goods as i32);
            Ok(two_point(p0))
        }
        ValuationKind::TwoBlock { red, blue } => {
            let miss_red = (1.0 - p).powi(red.card() as i32);
            let miss_blue = (1.0 - p).powi(blue.card() as i32);
            let p1 = (1.0 - miss_red) * (1.0 - miss_blue);
            Ok(two_point(1.0 - p1))
        }
        _ => enumerate_distribution(v, p),
    }
}

fn two_point(p0: f64) -> ValueDistribution {
    // both atoms stay even at probability zero: 0 and 1 are attained values
    ValueDistribution::from_atoms(vec![(0.0, p0), (1.0, 1.0 - p0)])
}

fn dp_integer(weights: &[f64], p: f64) -> ValueDistribution {
    let mut law: BTreeMap<u64, f64> = BTreeMap::new();
    law.insert(0, 1.0);
    for &w in weights {
        let w = w as u64;
        let mut next: BTreeMap<u64, f64> = BTreeMap::new();
        for (&s, &pr) in &law {
            *next.entry(s).or_insert(0.0) += pr * (1.0 - p);
            *next.entry(s + w).or_insert(0.0) += pr * p;
        }
        law = next;
    }
    ValueDistribution::from_atoms(law.into_iter().map(|(s, pr)| (s as f64, pr)).collect())
}

fn enumerate_distribution(v: &Valuation, p: f64) -> Result<ValueDistribution> {
    let m = v.goods();
    if m > MAX_SCAN_GOODS {
        return Err(Error::capability(format!(
            "exact distribution for this kind enumerates 2^m bundles and needs m <= {MAX_SCAN_GOODS}, got {m}"
        )));
    }
    let mut pow_p = vec![1.0; m as usize + 1];
    let mut pow_q = vec![1.0; m as usize + 1];
    for i in 1..=m as usize {
        pow_p[i] = pow_p[i - 1] * p;
        pow_q[i] = pow_q[i - 1] * (1.0 - p);
    }
    let mut atoms = Vec::with_capacity(1 << m);
    for s in all_subsets(m) {
        let c = s.card() as usize;
        atoms.push((v.eval(s)?, pow_p[c] * pow_q[m as usize - c]));
    }
    Ok(ValueDistribution::from_atoms(atoms))
}
