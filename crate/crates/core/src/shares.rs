//! Share benchmarks: thinned quantile shares, proportional share, maximin
//! share, its residual strengthening, and the Monte Carlo quantile bracket.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dist::exact_distribution;
use crate::error::{Error, Result};
use crate::set::{all_subsets, Subset};
use crate::valuation::Valuation;

/// A share value together with whether some bundle attains it exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShareValue {
    pub value: f64,
    pub attained: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShareSpec {
    ThinnedQuantile { c: f64, q: f64 },
    /// Alias for thinned_quantile with c = 1.
    Quantile { q: f64 },
    Proportional,
    Mms,
    Rmms,
}

impl ShareSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ShareSpec::ThinnedQuantile { c, q } => {
                if !(c > 0.0 && c <= 1.0) {
                    return Err(Error::domain(format!(
                        "thinning parameter must lie in (0,1], got {c}"
                    )));
                }
                check_level(q)
            }
            ShareSpec::Quantile { q } => check_level(q),
            _ => Ok(()),
        }
    }
}

fn check_level(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!(
            "quantile level must lie strictly between 0 and 1, got {q}"
        )));
    }
    Ok(())
}

fn check_agents(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("agent count must be positive"));
    }
    Ok(())
}

/// Left q-quantile of the value of a bundle thinned at rate c/n.
pub fn thinned_quantile_share(v: &Valuation, n: usize, c: f64, q: f64) -> Result<ShareValue> {
    check_agents(n)?;
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::domain(format!("thinning parameter must lie in (0,1], got {c}")));
    }
    check_level(q)?;
    exact_distribution(v, c / n as f64)?.left_quantile(q)
}

/// v([m]) / n, flagged with whether any bundle is worth exactly that.
pub fn proportional_share(v: &Valuation, n: usize) -> Result<ShareValue> {
    check_agents(n)?;
    let value = v.grand_value()? / n as f64;
    let attained = v.attains(value)?;
    Ok(ShareValue { value, attained })
}

/// Maximin share: best over ordered n-partitions of the worst bundle value.
/// Exhaustive with good 1 pinned to bundle 1 and a monotone upper-bound
/// prune; refuses instances with n^m > 1e8 assignments.
pub fn mms(v: &Valuation, n: usize) -> Result<ShareValue> {
    check_agents(n)?;
    if n == 1 {
        return Ok(ShareValue { value: v.grand_value()?, attained: true });
    }
    let m = v.goods();
    let assignments = (n as u128).checked_pow(m);
    if assignments.is_none_or(|a| a > 100_000_000) {
        return Err(Error::capability(format!(
            "maximin search enumerates n^m partitions; n={n}, m={m} is past 1e8"
        )));
    }
    let mut bundles = vec![Subset::EMPTY; n];
    bundles[0] = Subset::singleton(1);
    let mut best = f64::NEG_INFINITY;
    mms_search(v, &mut bundles, 2, m, Subset::singleton(1), &mut best)?;
    Ok(ShareValue { value: best, attained: true })
}

fn mms_search(
    v: &Valuation,
    bundles: &mut [Subset],
    good: u32,
    m: u32,
    assigned: Subset,
    best: &mut f64,
) -> Result<()> {
    let rest = Subset::full(m).minus(assigned);
    // ceiling: every bundle can at best absorb all unassigned goods
    let mut ub = f64::INFINITY;
    for b in bundles.iter() {
        ub = ub.min(v.eval(b.union(rest))?);
    }
    if ub <= *best {
        return Ok(());
    }
    if good > m {
        // ub is now the exact minimum over the completed partition
        *best = ub;
        return Ok(());
    }
    for j in 0..bundles.len() {
        bundles[j] = bundles[j].with(good);
        mms_search(v, bundles, good + 1, m, assigned.with(good), best)?;
        bundles[j] = bundles[j].without(good);
    }
    Ok(())
}

/// Residual self-feasibility at level t: the whole ground set splits into n
/// bundles worth >= t, and after removing any 1..n-1 pairwise disjoint
/// bundles each worth < t, the remainder still splits into that many fewer
/// bundles worth >= t.
pub fn residually_self_feasible(v: &Valuation, n: usize, t: f64) -> Result<bool> {
    check_agents(n)?;
    let m = v.goods();
    if m > 8 || n > 3 {
        return Err(Error::capability(format!(
            "residual feasibility enumerates removal tuples and needs m <= 8, n <= 3; got m={m}, n={n}"
        )));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(format!("level must be a nonnegative real, got {t}")));
    }
    if t == 0.0 {
        return Ok(true);
    }
    if !can_partition_at_least(v, Subset::full(m), n, t)? {
        return Ok(false);
    }
    // candidate removals: nonempty bundles worth < t (dropping an empty
    // bundle from a removal tuple only weakens it, so nonempty suffices)
    let mut bad = Vec::new();
    for s in all_subsets(m).skip(1) {
        if v.eval(s)? < t {
            bad.push(s);
        }
    }
    RemovalSearch { v, bad: &bad, n, t, m }.ok(0, Subset::EMPTY, n - 1, 0)
}

/// Fixed context for the removal-tuple recursion: only the tuple under
/// construction varies along a branch.
struct RemovalSearch<'a> {
    v: &'a Valuation,
    bad: &'a [Subset],
    n: usize,
    t: f64,
    m: u32,
}

impl RemovalSearch<'_> {
    fn ok(&self, start: usize, used: Subset, slots_left: usize, removed: usize) -> Result<bool> {
        if removed > 0 {
            let remainder = Subset::full(self.m).minus(used);
            if !can_partition_at_least(self.v, remainder, self.n - removed, self.t)? {
                return Ok(false);
            }
        }
        if slots_left == 0 {
            return Ok(true);
        }
        for i in start..self.bad.len() {
            if self.bad[i].is_disjoint(used)
                && !self.ok(i + 1, used.union(self.bad[i]), slots_left - 1, removed + 1)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether `ground` splits into `j` (possibly empty) bundles each worth >= t.
fn can_partition_at_least(v: &Valuation, ground: Subset, j: usize, t: f64) -> Result<bool> {
    if j == 0 {
        return Ok(ground.is_empty());
    }
    let elems: Vec<u32> = ground.iter().collect();
    let mut bundles = vec![Subset::EMPTY; j];
    partition_ok(v, &elems, 0, &mut bundles, ground, t)
}

fn partition_ok(
    v: &Valuation,
    elems: &[u32],
    i: usize,
    bundles: &mut [Subset],
    rest: Subset,
    t: f64,
) -> Result<bool> {
    // with rest exhausted this is the final feasibility check; otherwise it
    // prunes bundles that cannot reach t even with every leftover good
    for b in bundles.iter() {
        if v.eval(b.union(rest))? < t {
            return Ok(false);
        }
    }
    if i == elems.len() {
        return Ok(true);
    }
    let e = elems[i];
    let rest = rest.without(e);
    // the first element is pinned to bundle 0: bundles are unlabeled
    let lim = if i == 0 { 1 } else { bundles.len() };
    for j in 0..lim {
        bundles[j] = bundles[j].with(e);
        if partition_ok(v, elems, i + 1, bundles, rest, t)? {
            return Ok(true);
        }
        bundles[j] = bundles[j].without(e);
    }
    Ok(false)
}

/// Residual maximin share: the largest attained value t at which the
/// valuation stays residually self-feasible. Feasibility is monotone
/// nonincreasing in t, so binary search over the attained values applies.
pub fn rmms(v: &Valuation, n: usize) -> Result<ShareValue> {
    check_agents(n)?;
    let m = v.goods();
    if m > 8 || n > 3 {
        return Err(Error::capability(format!(
            "residual maximin needs m <= 8, n <= 3; got m={m}, n={n}"
        )));
    }
    let mut candidates = vec![0.0f64];
    for s in all_subsets(m) {
        let val = v.eval(s)?;
        if val > 0.0 {
            candidates.push(val);
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // candidates[0] = 0 is always feasible
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if residually_self_feasible(v, n, candidates[mid])? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(ShareValue { value: candidates[lo], attained: true })
}

/// Dispatch on a share specification.
pub fn share_of(spec: &ShareSpec, v: &Valuation, n: usize) -> Result<ShareValue> {
    spec.validate()?;
    match *spec {
        ShareSpec::ThinnedQuantile { c, q } => thinned_quantile_share(v, n, c, q),
        ShareSpec::Quantile { q } => thinned_quantile_share(v, n, 1.0, q),
        ShareSpec::Proportional => proportional_share(v, n),
        ShareSpec::Mms => mms(v, n),
        ShareSpec::Rmms => rmms(v, n),
    }
}

/// Universally safe thinning parameter, independent of n.
pub const UNIVERSAL_FALLBACK_C: f64 = 1.0 / 250.0;

/// Smallest agent count at which the second budget branch applies.
const LARGE_N: u64 = 10_000_002;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThinningBudget {
    pub n: u64,
    /// Largest certified thinning parameter for this n.
    pub c_max: f64,
    /// n-independent fallback, always within budget.
    pub fallback_c: f64,
}

pub fn thinning_budget(n: u64) -> Result<ThinningBudget> {
    if n < 2 {
        return Err(Error::domain(format!("budget needs at least 2 agents, got {n}")));
    }
    let base = 1.0 / (12.0 * (2.0 + (n as f64).ln()));
    let c_max = if n >= LARGE_N {
        base.max(1.0 / (3.0 * std::f64::consts::E))
    } else {
        base
    };
    Ok(ThinningBudget { n, c_max, fallback_c: UNIVERSAL_FALLBACK_C })
}

impl ThinningBudget {
    /// Quantile level (1 - c/n)^(n-1) certified for a within-budget c.
    pub fn quantile_for(&self, c: f64) -> Result<f64> {
        if !(c > 0.0 && c <= self.c_max) {
            return Err(Error::domain(format!(
                "thinning parameter {c} outside the certified budget (0, {}]",
                self.c_max
            )));
        }
        Ok((1.0 - c / self.n as f64).powf((self.n - 1) as f64))
    }
}

/// Sample count that makes the empirical CDF uniformly accurate to epsilon
/// with probability 1 - delta.
pub fn samples_needed(epsilon: f64, delta: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::domain(format!("accuracy must lie in (0, 0.5), got {epsilon}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain(format!("confidence slack must lie in (0,1), got {delta}")));
    }
    Ok(((2.0 / delta).ln() / (2.0 * epsilon * epsilon)).ceil() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantileBracket {
    pub lo: f64,
    pub hi: f64,
    pub q: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Monte Carlo bracket [lo, hi] for the left q-quantile of the thinned
/// value, from empirical quantiles at q -/+ epsilon. Sample s is drawn from
/// ChaCha8 stream s of the seed, so output depends only on (seed, s) and the
/// thread count never changes results.
#[allow(clippy::too_many_arguments)] // flat knob list, same shape as the exact-share entry points
pub fn mc_quantile_bracket(
    v: &Valuation,
    n: usize,
    c: f64,
    q: f64,
    epsilon: f64,
    delta: f64,
    seed: u64,
    threads: usize,
) -> Result<QuantileBracket> {
    check_agents(n)?;
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::domain(format!("thinning parameter must lie in (0,1], got {c}")));
    }
    check_level(q)?;
    if !(q - epsilon > 0.0 && q + epsilon < 1.0) {
        return Err(Error::domain(format!(
            "band [q-eps, q+eps] = [{}, {}] must stay inside (0,1)",
            q - epsilon,
            q + epsilon
        )));
    }
    let total = samples_needed(epsilon, delta)?;
    let p = c / n as f64;
    let m = v.goods();
    let mut values = vec![0.0f64; total as usize];
    let workers = threads.clamp(1, values.len().max(1));
    let chunk = values.len().div_ceil(workers);
    std::thread::scope(|scope| -> Result<()> {
        let mut handles = Vec::new();
        for (ci, buf) in values.chunks_mut(chunk).enumerate() {
            handles.push(scope.spawn(move || -> Result<()> {
                let base = ci * chunk;
                for (j, slot) in buf.iter_mut().enumerate() {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream((base + j) as u64);
                    let mut mask = 0u64;
                    for bit in 0..m {
                        if rng.gen::<f64>() < p {
                            mask |= 1 << bit;
                        }
                    }
                    *slot = v.eval(Subset::from_mask(mask))?;
                }
                Ok(())
            }));
        }
        for h in handles {
            h.join().expect("sampler thread panicked")?;
        }
        Ok(())
    })?;
    values.sort_by(f64::total_cmp);
    let lo = empirical_left_quantile(&values, q - epsilon);
    let hi = empirical_left_quantile(&values, q + epsilon);
    Ok(QuantileBracket { lo, hi, q, epsilon, delta, samples: total, seed })
}

fn empirical_left_quantile(sorted: &[f64], level: f64) -> f64 {
    let n = sorted.len();
    let k = (level * n as f64).ceil() as usize;
    sorted[k.clamp(1, n) - 1]
}
