//! The nine property suites behind `verify`. Every suite is deterministic in
//! its seed; reports count individual checks and carry the first few failure
//! descriptions.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fairshare_core::allocator::{
    feasibility_report, find_fair_allocation, verify_allocation, SearchOutcome,
};
use fairshare_core::dist::exact_distribution;
use fairshare_core::error::{Error, Result};
use fairshare_core::extremal::{
    all_down_sets, check_differential_inequality, check_downset_inequality,
    construction_clique, construction_star, emc_bound, is_cross_dependent, kk_lower_bound,
    level_down_set, max_min_cross_dependent, mu, shadow, SetFamily,
};
use fairshare_core::instance::Instance;
use fairshare_core::oracle::{brute_force_feasible, enumerated_distribution};
use fairshare_core::random::{
    random_down_set, random_monotone_table, random_nonempty_subset, random_subset,
    random_zero_one,
};
use fairshare_core::set::{all_subsets, k_subsets, Subset};
use fairshare_core::shares::{
    mc_quantile_bracket, samples_needed, thinned_quantile_share, ShareSpec,
};
use fairshare_core::valuation::Valuation;
use fairshare_core::zero_one::reduce_01;

pub const SUITES: [&str; 9] = [
    "downset",
    "kk",
    "monotonicity",
    "padding",
    "reduction",
    "mc-vs-exact",
    "emc-tiny",
    "allocator-oracle",
    "theorem-regime",
];

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub failures: u64,
    pub seed: u64,
    pub elapsed: Duration,
    /// First few failure descriptions, in discovery order.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Default)]
pub(crate) struct Tally {
    pub(crate) cases: u64,
    pub(crate) failures: u64,
    pub(crate) notes: Vec<String>,
}

impl Tally {
    const MAX_NOTES: usize = 8;

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.notes.len() < Self::MAX_NOTES {
                self.notes.push(detail());
            }
        }
    }
}

pub fn run_suite(name: &str, seed: u64, budget: u64, threads: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let tally = match name {
        "downset" => downset_suite(seed)?,
        "kk" => kk_suite(seed)?,
        "monotonicity" => monotonicity_suite(seed)?,
        "padding" => padding_suite(seed)?,
        "reduction" => reduction_suite(seed)?,
        "mc-vs-exact" => mc_vs_exact_suite(seed, threads)?,
        "emc-tiny" => emc_tiny_suite()?,
        "allocator-oracle" => allocator_oracle_suite(seed, budget)?,
        "theorem-regime" => theorem_regime_suite(seed, budget)?,
        _ => {
            return Err(Error::domain(format!(
                "unknown suite {name:?}; known suites: {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        cases: tally.cases,
        failures: tally.failures,
        seed,
        elapsed: start.elapsed(),
        notes: tally.notes,
    })
}

/// Down-set inequality and its differential form: exhaustive over every
/// down-set on up to 4 points, randomized at 5 and 6, plus the level-set
/// bridge identifying product measures with thinned-value CDFs.
fn downset_suite(seed: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let p_grid: Vec<f64> = (1..=9).map(|i| f64::from(i) / 10.0).collect();
    let a_grid: Vec<f64> = (1..=10).map(|i| f64::from(i) / 10.0).collect();
    let mut families = Vec::new();
    for m in 0..=4 {
        families.extend(all_down_sets(m)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in [5u32, 6] {
        for _ in 0..100 {
            families.push(random_down_set(m, &mut rng));
        }
    }
    for d in &families {
        for &p in &p_grid {
            for &a in &a_grid {
                let r = check_downset_inequality(d, p, a)?;
                t.check(r >= -1e-12, || {
                    format!(
                        "downset residual {r} at m={} size={} p={p} alpha={a}",
                        d.ground(),
                        d.len()
                    )
                });
            }
            let r = check_differential_inequality(d, p, 1e-5)?;
            t.check(r >= -1e-6, || {
                format!(
                    "differential residual {r} at m={} size={} p={p}",
                    d.ground(),
                    d.len()
                )
            });
        }
    }
    for _ in 0..50 {
        let m = rng.gen_range(1..=5);
        let v = random_monotone_table(m, &mut rng);
        for &p in &p_grid {
            let dist = exact_distribution(&v, p)?;
            for &cut in dist.support() {
                let lvl = level_down_set(&v, cut)?;
                let gap = (mu(&lvl, p)? - dist.cdf_at(cut)).abs();
                t.check(gap <= 1e-12, || {
                    format!("level set measure off by {gap} at m={m} p={p} cut={cut}")
                });
            }
        }
    }
    Ok(t)
}

fn family_from_mask(base: &[Subset], ground: u32, k: u32, mask: u32) -> SetFamily {
    SetFamily::new(
        ground,
        k,
        base.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| *s),
    )
    .expect("base sets are k-uniform")
}

/// Shadow sizes against the Lovasz-form bound on random subfamilies of
/// C([6],3), the tightness witness, and shadow monotonicity.
fn kk_suite(seed: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = k_subsets(Subset::full(6), 3);
    let full_mask = (1u32 << base.len()) - 1;
    for _ in 0..10_000 {
        let mask = loop {
            let x = rng.gen::<u32>() & full_mask;
            if x != 0 {
                break x;
            }
        };
        let fam = family_from_mask(&base, 6, 3, mask);
        for order in 0..=3 {
            let actual = shadow(&fam, order)?.len() as f64;
            let bound = kk_lower_bound(fam.len() as u64, 3, order)?;
            t.check(actual >= bound - 1e-9, || {
                format!(
                    "shadow of size-{} family has {actual} members, below bound {bound} at t={order}",
                    fam.len()
                )
            });
        }
    }
    let witness = SetFamily::complete(3, 2)?;
    let actual = shadow(&witness, 1)?.len();
    let bound = kk_lower_bound(witness.len() as u64, 2, 1)?;
    t.check(actual == 3 && (bound - 3.0).abs() <= 1e-9, || {
        format!("tightness witness: bound {bound}, actual {actual}")
    });
    for _ in 0..500 {
        let big_mask = rng.gen::<u32>() & full_mask;
        let sub_mask = big_mask & rng.gen::<u32>();
        let big = family_from_mask(&base, 6, 3, big_mask);
        let sub = family_from_mask(&base, 6, 3, sub_mask);
        let order = rng.gen_range(0..=3);
        let sh_big = shadow(&big, order)?;
        let ok = shadow(&sub, order)?.members().all(|s| sh_big.contains(s));
        t.check(ok, || format!("shadow not monotone under inclusion at t={order}"));
    }
    Ok(t)
}

/// Quantile-share monotonicity across thinning parameters, both the
/// level-adjusted comparison and the e^{-c} diagonal.
pub(crate) fn monotonicity_suite(seed: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c_grid: Vec<f64> = (1..=10).map(|i| f64::from(i) / 10.0).collect();
    let q_grid: Vec<f64> = (1..=9).map(|i| f64::from(i) / 10.0).collect();
    let n = 2.0;
    for _ in 0..1000 {
        let m = rng.gen_range(2..=5);
        let v = random_monotone_table(m, &mut rng);
        let dists = c_grid
            .iter()
            .map(|c| exact_distribution(&v, c / n))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..c_grid.len() {
            for j in i + 1..c_grid.len() {
                let (c1, c2) = (c_grid[i], c_grid[j]);
                for &q in &q_grid {
                    let lhs = dists[i].left_quantile(q)?.value;
                    let rhs = dists[j].left_quantile(q.powf(c2 / c1))?.value;
                    t.check(lhs <= rhs, || {
                        format!(
                            "level-adjusted monotonicity broke at m={m} c={c1}->{c2} q={q}: {lhs} > {rhs}"
                        )
                    });
                }
                let lhs = dists[i].left_quantile((-c1).exp())?.value;
                let rhs = dists[j].left_quantile((-c2).exp())?.value;
                t.check(lhs <= rhs, || {
                    format!("diagonal monotonicity broke at m={m} c={c1}->{c2}: {lhs} > {rhs}")
                });
            }
        }
    }
    Ok(t)
}

/// Dummy goods change nothing: quantile shares, an independently enumerated
/// distribution, and pointwise evaluation all survive padding.
fn padding_suite(seed: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q_grid = [0.2, (-1.0f64).exp(), 0.8];
    let c_grid = [0.3, 1.0];
    for _ in 0..1000 {
        let m = rng.gen_range(1..=4);
        let v = match rng.gen_range(0..10) {
            0 => Valuation::threshold(m, rng.gen_range(1..=m)).expect("valid threshold"),
            1 => Valuation::nonempty(m).expect("valid"),
            2 => {
                let w = (0..m).map(|_| rng.gen_range(0.0..4.0)).collect();
                Valuation::additive(w).expect("valid weights")
            }
            _ => random_monotone_table(m, &mut rng),
        };
        let big = rng.gen_range(m..=10);
        let padded = v.pad(big)?;
        for &c in &c_grid {
            for &q in &q_grid {
                let a = thinned_quantile_share(&v, 2, c, q)?;
                let b = thinned_quantile_share(&padded, 2, c, q)?;
                t.check(a.value == b.value, || {
                    format!("padding moved the share at m={m}->{big} c={c} q={q}: {} vs {}", a.value, b.value)
                });
            }
        }
        let da = enumerated_distribution(&v, 0.37)?;
        let db = enumerated_distribution(&padded, 0.37)?;
        let qa = da.left_quantile(0.5)?.value;
        let qb = db.left_quantile(0.5)?.value;
        t.check(qa == qb, || {
            format!("oracle quantile moved under padding at m={m}->{big}: {qa} vs {qb}")
        });
        for _ in 0..5 {
            let bundle = random_subset(big, &mut rng);
            let ok = padded.eval(bundle)? == v.eval(bundle.restrict(m))?;
            t.check(ok, || format!("padded evaluation differs on {bundle} at m={m}->{big}"));
        }
    }
    Ok(t)
}

/// Cutting at a positive quantile share yields a 0/1 valuation whose own
/// share at the same level is exactly 1, and whose acceptance matches the
/// direct comparison.
fn reduction_suite(seed: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c_grid = [0.5, 1.0];
    let q_grid = [0.5, 0.8, 0.95];
    for _ in 0..1000 {
        let (v, c, q, tau) = loop {
            let m = rng.gen_range(2..=5);
            let v = random_monotone_table(m, &mut rng);
            let c = c_grid[rng.gen_range(0..c_grid.len())];
            let q = q_grid[rng.gen_range(0..q_grid.len())];
            let tau = thinned_quantile_share(&v, 2, c, q)?.value;
            if tau > 0.0 {
                break (v, c, q, tau);
            }
        };
        let u = reduce_01(&v, tau)?;
        let cut = u.to_valuation()?;
        let one = thinned_quantile_share(&cut, 2, c, q)?.value;
        t.check(one == 1.0, || {
            format!("reduced share is {one}, not 1, at m={} c={c} q={q} tau={tau}", v.goods())
        });
        let agree = all_subsets(v.goods())
            .all(|s| u.accepts(s) == (v.eval(s).expect("table complete") >= tau));
        t.check(agree, || {
            format!("acceptance disagrees with the direct cut at tau={tau}")
        });
    }
    Ok(t)
}

/// Bracket calibration on the canonical small instance: 1000 seeds, the
/// exact quantile must land inside at least 99% of brackets.
fn mc_vs_exact_suite(seed: u64, threads: usize) -> Result<Tally> {
    let mut t = Tally::default();
    let v = Valuation::nonempty(2)?;
    let (n, c, q) = (3usize, 1.0, 0.5);
    let (epsilon, delta) = (0.01, 0.001);
    let exact = thinned_quantile_share(&v, n, c, q)?.value;
    let want_samples = samples_needed(epsilon, delta)?;
    let mut hits = 0u64;
    for s in 0..1000u64 {
        let b = mc_quantile_bracket(&v, n, c, q, epsilon, delta, seed.wrapping_add(s), threads)?;
        t.check(b.lo <= b.hi && b.samples == want_samples, || {
            format!("bracket malformed at seed offset {s}: [{}, {}] n={}", b.lo, b.hi, b.samples)
        });
        if b.lo <= exact && exact <= b.hi {
            hits += 1;
        }
    }
    t.check(hits >= 990, || {
        format!("bracket covered the exact quantile only {hits}/1000 times")
    });
    Ok(t)
}

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 1..=k {
        r = r * (n - k + i) / i;
    }
    r
}

/// Exact search agrees with the conjectured bound on every tractable tuple,
/// and both closed-form constructions deliver their branch sizes.
fn emc_tiny_suite() -> Result<Tally> {
    let mut t = Tally::default();
    let tuples: [(usize, u32, u32); 12] = [
        (2, 1, 3),
        (2, 1, 4),
        (2, 1, 5),
        (2, 1, 6),
        (3, 1, 3),
        (3, 1, 4),
        (3, 1, 5),
        (3, 1, 6),
        (4, 1, 4),
        (4, 1, 5),
        (4, 1, 6),
        (2, 2, 5),
    ];
    for (n, k, m) in tuples {
        let w = max_min_cross_dependent(n, k, m)?;
        let bound = emc_bound(n as u64, k as u64, m as u64)?;
        t.check(BigUint::from(w.value) == bound, || {
            format!("max-min {} but bound {bound} at (n,k,M)=({n},{k},{m})", w.value)
        });
        let witness_ok = w.families.len() == n
            && is_cross_dependent(&w.families)?
            && w.families.iter().all(|f| f.len() as u64 >= w.value);
        t.check(witness_ok, || format!("witness broken at ({n},{k},{m})"));
        let clique = construction_clique(n, k, m)?;
        let clique_size = choose(k as u64 * n as u64 - 1, k as u64);
        let clique_ok = is_cross_dependent(&clique)?
            && clique.iter().all(|f| f.len() as u64 == clique_size);
        t.check(clique_ok, || format!("clique construction broken at ({n},{k},{m})"));
        let star = construction_star(n, k, m)?;
        let star_size = choose(m as u64, k as u64) - choose(m as u64 - (n as u64 - 1), k as u64);
        let star_ok =
            is_cross_dependent(&star)? && star.iter().all(|f| f.len() as u64 == star_size);
        t.check(star_ok, || format!("star construction broken at ({n},{k},{m})"));
    }
    Ok(t)
}

/// Backtracking verdicts match the naive assignment scan, and any allocation
/// found verifies.
fn allocator_oracle_suite(seed: u64, budget: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..500 {
        let n = rng.gen_range(2..=3);
        let m = rng.gen_range(2..=8);
        let profile: Vec<Valuation> =
            (0..n).map(|_| random_monotone_table(m, &mut rng)).collect();
        let thresholds: Vec<f64> = profile
            .iter()
            .map(|v| match rng.gen_range(0..4) {
                0 => v.eval(random_subset(m, &mut rng)).expect("table complete"),
                1 => {
                    v.eval(random_nonempty_subset(m, &mut rng)).expect("table complete")
                        * 1.01
                        + 0.001
                }
                2 => 0.0,
                _ => rng.gen_range(0.0..=1.0) * v.grand_value().expect("table complete"),
            })
            .collect();
        let (outcome, _) = find_fair_allocation(&profile, &thresholds, budget)?;
        let fast = matches!(outcome, SearchOutcome::Feasible(_));
        let slow = brute_force_feasible(&profile, &thresholds)?;
        t.check(fast == slow, || {
            format!("verdict mismatch at case {case} (n={n} m={m}): search {fast}, oracle {slow}")
        });
        if let SearchOutcome::Feasible(alloc) = &outcome {
            t.check(verify_allocation(&profile, &thresholds, alloc)?, || {
                format!("found allocation fails verification at case {case}")
            });
        }
    }
    Ok(t)
}

/// In the certified thinning regime, random monotone 0/1 profiles always
/// admit a fair allocation.
fn theorem_regime_suite(seed: u64, budget: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c: f64 = 1.0 / 250.0;
    let q = (-c).exp();
    for case in 0..500 {
        let m = rng.gen_range(3..=6);
        let valuations: Vec<Valuation> = (0..3)
            .map(|_| random_zero_one(m, &mut rng).to_valuation().expect("small table"))
            .collect();
        let inst = Instance {
            agents: 3,
            goods: m,
            valuations,
            share: ShareSpec::ThinnedQuantile { c, q },
        };
        let report = feasibility_report(&inst, budget)?;
        let feasible = matches!(report.outcome, SearchOutcome::Feasible(_));
        t.check(feasible, || format!("infeasible profile in the certified regime at case {case} (m={m})"));
        if let SearchOutcome::Feasible(alloc) = &report.outcome {
            let thresholds: Vec<f64> = report.shares.iter().map(|s| s.value).collect();
            t.check(verify_allocation(&inst.valuations, &thresholds, alloc)?, || {
                format!("allocation fails verification at case {case}")
            });
        }
    }
    Ok(t)
}
