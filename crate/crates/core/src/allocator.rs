//! Exact search for allocations giving every agent a bundle worth their
//! threshold, driven by the minimal accepted bundles of each agent's 0/1
//! reduction.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::set::Subset;
use crate::shares::{share_of, ShareValue};
use crate::valuation::Valuation;
use crate::zero_one::reduce_01;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Search is limited to this many goods (candidate bundle lists are built by
/// 2^m reduction scans).
pub const MAX_SEARCH_GOODS: u32 = 16;

/// One bundle per agent. Construction does not validate: `verify_allocation`
/// exists to judge arbitrary bundle lists, including broken ones.
#[derive(Clone, Debug, PartialEq)]
pub struct Allocation {
    bundles: Vec<Subset>,
}

impl Allocation {
    pub fn new(bundles: Vec<Subset>) -> Allocation {
        Allocation { bundles }
    }

    pub fn bundles(&self) -> &[Subset] {
        &self.bundles
    }

    pub fn bundle(&self, agent: usize) -> Subset {
        self.bundles[agent]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Feasible(Allocation),
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    pub shares: Vec<ShareValue>,
    pub outcome: SearchOutcome,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Whether `alloc` partitions the ground set and gives agent i a bundle
/// worth at least `thresholds[i]`.
pub fn verify_allocation(
    profile: &[Valuation],
    thresholds: &[f64],
    alloc: &Allocation,
) -> Result<bool> {
    let m = check_profile(profile, thresholds)?;
    if alloc.bundles().len() != profile.len() {
        return Err(Error::domain(format!(
            "allocation has {} bundles for {} agents",
            alloc.bundles().len(),
            profile.len()
        )));
    }
    let full = Subset::full(m);
    let mut seen = Subset::EMPTY;
    for &b in alloc.bundles() {
        if !b.is_subset_of(full) || !seen.is_disjoint(b) {
            return Ok(false);
        }
        seen = seen.union(b);
    }
    if seen != full {
        return Ok(false);
    }
    for (i, v) in profile.iter().enumerate() {
        if v.eval(alloc.bundle(i))? < thresholds[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_profile(profile: &[Valuation], thresholds: &[f64]) -> Result<u32> {
    if profile.is_empty() {
        return Err(Error::domain("profile must contain at least one agent"));
    }
    if profile.len() != thresholds.len() {
        return Err(Error::domain(format!(
            "{} valuations but {} thresholds",
            profile.len(),
            thresholds.len()
        )));
    }
    let m = profile[0].goods();
    if profile.iter().any(|v| v.goods() != m) {
        return Err(Error::domain("all valuations must share one ground set"));
    }
    for &t in thresholds {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::domain(format!(
                "thresholds must be nonnegative finite reals, got {t}"
            )));
        }
    }
    Ok(m)
}

/// Backtracking over minimal accepted bundles: each agent with a positive
/// threshold picks one of their minimal bundles, pairwise disjoint across
/// agents; leftovers go to agent 1 (monotonicity keeps every guarantee).
/// Agents are tried sparsest-first. Each candidate inspection counts as one
/// node against `budget`.
pub fn find_fair_allocation(
    profile: &[Valuation],
    thresholds: &[f64],
    budget: u64,
) -> Result<(SearchOutcome, u64)> {
    let m = check_profile(profile, thresholds)?;
    if m > MAX_SEARCH_GOODS {
        return Err(Error::capability(format!(
            "allocation search needs m <= {MAX_SEARCH_GOODS}, got {m}"
        )));
    }
    let mut active: Vec<(usize, Vec<Subset>)> = Vec::new();
    for (i, (v, &t)) in profile.iter().zip(thresholds).enumerate() {
        if t > 0.0 {
            let u = reduce_01(v, t)?;
            if u.minimal_accepted().is_empty() {
                // this agent cannot be satisfied by any bundle at all
                return Ok((SearchOutcome::Infeasible, 0));
            }
            active.push((i, u.minimal_accepted().to_vec()));
        }
    }
    // fewest options first fails fast; the sort is stable so ties keep
    // agent order and the search stays deterministic
    active.sort_by_key(|(_, sets)| sets.len());
    let mut chosen = vec![Subset::EMPTY; active.len()];
    let mut nodes = 0u64;
    let found = assign(&active, 0, Subset::EMPTY, &mut chosen, &mut nodes, budget)?;
    if !found {
        return Ok((SearchOutcome::Infeasible, nodes));
    }
    let mut bundles = vec![Subset::EMPTY; profile.len()];
    for (slot, (agent, _)) in active.iter().enumerate() {
        bundles[*agent] = chosen[slot];
    }
    let used = bundles.iter().fold(Subset::EMPTY, |acc, b| acc.union(*b));
    bundles[0] = bundles[0].union(Subset::full(m).minus(used));
    let alloc = Allocation::new(bundles);
    debug_assert!(matches!(verify_allocation(profile, thresholds, &alloc), Ok(true)));
    Ok((SearchOutcome::Feasible(alloc), nodes))
}

fn assign(
    active: &[(usize, Vec<Subset>)],
    idx: usize,
    used: Subset,
    chosen: &mut [Subset],
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    if idx == active.len() {
        return Ok(true);
    }
    for &cand in &active[idx].1 {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::capability(format!(
                "allocation search exceeded its budget of {budget} nodes"
            )));
        }
        if cand.is_disjoint(used) {
            chosen[idx] = cand;
            if assign(active, idx + 1, used.union(cand), chosen, nodes, budget)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Computes every agent's share under the instance's specification, then
/// searches for an allocation meeting all of them.
pub fn feasibility_report(inst: &Instance, budget: u64) -> Result<FeasibilityReport> {
    let start = Instant::now();
    let shares = inst
        .valuations
        .iter()
        .map(|v| share_of(&inst.share, v, inst.agents))
        .collect::<Result<Vec<_>>>()?;
    let thresholds: Vec<f64> = shares.iter().map(|s| s.value).collect();
    let (outcome, nodes_explored) = find_fair_allocation(&inst.valuations, &thresholds, budget)?;
    Ok(FeasibilityReport { shares, outcome, nodes_explored, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shares::ShareSpec;

    fn nonempty_profile(n: usize, m: u32) -> Vec<Valuation> {
        (0..n).map(|_| Valuation::nonempty(m).unwrap()).collect()
    }

    #[test]
    fn three_agents_two_goods_infeasible() {
        let profile = nonempty_profile(3, 2);
        let (outcome, _) = find_fair_allocation(&profile, &[1.0, 1.0, 1.0], 1_000).unwrap();
        assert_eq!(outcome, SearchOutcome::Infeasible);
    }

    #[test]
    fn two_agents_two_goods_feasible() {
        let profile = nonempty_profile(2, 2);
        let (outcome, _) = find_fair_allocation(&profile, &[1.0, 1.0], 1_000).unwrap();
        let SearchOutcome::Feasible(alloc) = outcome else {
            panic!("expected a feasible allocation");
        };
        assert!(verify_allocation(&profile, &[1.0, 1.0], &alloc).unwrap());
    }

    #[test]
    fn zero_thresholds_need_no_search() {
        let profile = nonempty_profile(3, 2);
        let (outcome, nodes) = find_fair_allocation(&profile, &[0.0, 0.0, 0.0], 1_000).unwrap();
        let SearchOutcome::Feasible(alloc) = outcome else {
            panic!("expected a feasible allocation");
        };
        assert_eq!(nodes, 0);
        // all goods land on agent 1 and the partition covers everything
        assert_eq!(alloc.bundle(0), Subset::full(2));
        assert!(verify_allocation(&profile, &[0.0, 0.0, 0.0], &alloc).unwrap());
    }

    #[test]
    fn unsatisfiable_agent_short_circuits() {
        let profile = nonempty_profile(2, 3);
        let (outcome, nodes) = find_fair_allocation(&profile, &[2.0, 1.0], 1_000).unwrap();
        assert_eq!(outcome, SearchOutcome::Infeasible);
        assert_eq!(nodes, 0);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let profile = nonempty_profile(3, 3);
        let err = find_fair_allocation(&profile, &[1.0, 1.0, 1.0], 2).unwrap_err();
        assert!(matches!(err, Error::Capability(_)));
    }

    #[test]
    fn verify_rejects_broken_allocations() {
        let profile = nonempty_profile(2, 2);
        let t = [1.0, 1.0];
        let overlap =
            Allocation::new(vec![Subset::from_elems(&[1, 2]), Subset::from_elems(&[2])]);
        assert!(!verify_allocation(&profile, &t, &overlap).unwrap());
        let not_covering = Allocation::new(vec![Subset::singleton(1), Subset::EMPTY]);
        assert!(!verify_allocation(&profile, &t, &not_covering).unwrap());
        let below = Allocation::new(vec![Subset::full(2), Subset::EMPTY]);
        assert!(!verify_allocation(&profile, &t, &below).unwrap());
        let good = Allocation::new(vec![Subset::singleton(1), Subset::singleton(2)]);
        assert!(verify_allocation(&profile, &t, &good).unwrap());
    }

    #[test]
    fn report_on_upper_bound_instance() {
        let inst = Instance {
            agents: 3,
            goods: 2,
            valuations: nonempty_profile(3, 2),
            share: ShareSpec::ThinnedQuantile { c: 1.0, q: 0.5 },
        };
        let report = feasibility_report(&inst, DEFAULT_NODE_BUDGET).unwrap();
        for s in &report.shares {
            assert_eq!(s.value, 1.0);
        }
        assert_eq!(report.outcome, SearchOutcome::Infeasible);
    }
}
