//! Extremal set-family machinery: down-sets under product measures, shadows
//! with their Lovasz-form lower bound, and cross-dependent family search.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::set::{all_subsets, k_subsets, Subset};
use crate::valuation::{Valuation, MAX_SCAN_GOODS};

/// A family of subsets of [m] closed under taking subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct DownSet {
    m: u32,
    /// Sorted masks.
    members: Vec<u64>,
}

impl DownSet {
    pub fn new(m: u32, members: impl IntoIterator<Item = Subset>) -> Result<DownSet> {
        if m > MAX_SCAN_GOODS {
            return Err(Error::capability(format!(
                "down-sets are stored explicitly and need m <= {MAX_SCAN_GOODS}, got {m}"
            )));
        }
        let full = Subset::full(m).mask();
        let mut masks: Vec<u64> = members.into_iter().map(|s| s.mask()).collect();
        masks.sort_unstable();
        masks.dedup();
        if masks.iter().any(|&s| s & !full != 0) {
            return Err(Error::domain("member outside the ground set"));
        }
        for &s in &masks {
            for e in Subset::from_mask(s).iter() {
                let sub = Subset::from_mask(s).without(e).mask();
                if masks.binary_search(&sub).is_err() {
                    return Err(Error::domain(format!(
                        "family is not closed downward: contains {} but not {}",
                        Subset::from_mask(s),
                        Subset::from_mask(sub)
                    )));
                }
            }
        }
        Ok(DownSet { m, members: masks })
    }

    pub fn empty(m: u32) -> DownSet {
        DownSet { m, members: Vec::new() }
    }

    pub fn full_power_set(m: u32) -> Result<DownSet> {
        DownSet::new(m, all_subsets(m))
    }

    pub fn ground(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s.mask()).is_ok()
    }

    pub fn members(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().map(|&m| Subset::from_mask(m))
    }
}

/// Product measure of the down-set: each element present independently with
/// probability p.
pub fn mu(d: &DownSet, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("probability {p} outside [0,1]")));
    }
    let m = d.m as usize;
    let mut pow_p = vec![1.0; m + 1];
    let mut pow_q = vec![1.0; m + 1];
    for i in 1..=m {
        pow_p[i] = pow_p[i - 1] * p;
        pow_q[i] = pow_q[i - 1] * (1.0 - p);
    }
    Ok(d
        .members()
        .map(|s| {
            let c = s.card() as usize;
            pow_p[c] * pow_q[m - c]
        })
        .sum())
}

/// Residual mu_{alpha p}(D) - mu_p(D)^alpha; nonnegative (up to floating
/// error) for every down-set, 0 < alpha <= 1.
pub fn check_downset_inequality(d: &DownSet, p: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!("exponent must lie in (0,1], got {alpha}")));
    }
    Ok(mu(d, alpha * p)? - mu(d, p)?.powf(alpha))
}

/// Central-difference residual -p F'(p) - F(p) ln(1/F(p)) where
/// F(p) = mu_p(D); nonnegative up to discretization error. Uses the
/// convention 0 ln(1/0) = 0.
pub fn check_differential_inequality(d: &DownSet, p: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h <= 1e-4) {
        return Err(Error::domain(format!("step must lie in (0, 1e-4], got {h}")));
    }
    if !(p - h > 0.0 && p + h < 1.0) {
        return Err(Error::domain(format!(
            "p = {p} with step {h} leaves the open unit interval"
        )));
    }
    let f = mu(d, p)?;
    let deriv = (mu(d, p + h)? - mu(d, p - h)?) / (2.0 * h);
    let entropy = if f > 0.0 { f * (1.0 / f).ln() } else { 0.0 };
    Ok(-p * deriv - entropy)
}

/// {S : v(S) <= t} for a monotone valuation: exactly the event that the
/// thinned bundle is worth at most t, so its product measure is the CDF.
pub fn level_down_set(v: &Valuation, t: f64) -> Result<DownSet> {
    let m = v.goods();
    if m > MAX_SCAN_GOODS {
        return Err(Error::capability(format!(
            "level sets are scanned over 2^m bundles and need m <= {MAX_SCAN_GOODS}, got {m}"
        )));
    }
    let mut members = Vec::new();
    for s in all_subsets(m) {
        if v.eval(s)? <= t {
            members.push(s);
        }
    }
    // a non-monotone table surfaces here as a closure failure
    DownSet::new(m, members)
}

/// Every down-set on [m]. The count grows like the Dedekind numbers, so this
/// stays capped at m <= 4 (where there are 168).
pub fn all_down_sets(m: u32) -> Result<Vec<DownSet>> {
    if m > 4 {
        return Err(Error::capability(format!(
            "enumerating all down-sets is Dedekind-sized and capped at m <= 4, got {m}"
        )));
    }
    let subsets: Vec<Subset> = all_subsets(m).collect();
    let count = subsets.len();
    let mut out = Vec::new();
    'family: for fam in 0u32..1 << count {
        for (i, s) in subsets.iter().enumerate() {
            if fam >> i & 1 == 1 {
                for e in s.iter() {
                    let sub = s.without(e).mask() as usize;
                    if fam >> sub & 1 == 0 {
                        continue 'family;
                    }
                }
            }
        }
        let members = subsets.iter().copied().filter(|s| fam >> s.mask() & 1 == 1);
        out.push(DownSet::new(m, members).expect("family checked closed"));
    }
    Ok(out)
}

/// A k-uniform family on ground set [ground].
#[derive(Clone, Debug, PartialEq)]
pub struct SetFamily {
    ground: u32,
    k: u32,
    /// Sorted masks.
    members: Vec<u64>,
}

impl SetFamily {
    pub fn new(ground: u32, k: u32, members: impl IntoIterator<Item = Subset>) -> Result<SetFamily> {
        if ground > 63 {
            return Err(Error::domain(format!("ground set size {ground} exceeds 63")));
        }
        let full = Subset::full(ground);
        let mut masks = Vec::new();
        for s in members {
            if !s.is_subset_of(full) {
                return Err(Error::domain(format!("{s} is not a subset of the ground set")));
            }
            if s.card() != k {
                return Err(Error::domain(format!("{s} does not have {k} elements")));
            }
            masks.push(s.mask());
        }
        masks.sort_unstable();
        masks.dedup();
        Ok(SetFamily { ground, k, members: masks })
    }

    /// All k-subsets of [ground]; ground is capped at 20 to keep C(ground, k)
    /// enumerable.
    pub fn complete(ground: u32, k: u32) -> Result<SetFamily> {
        if ground > MAX_SCAN_GOODS {
            return Err(Error::capability(format!(
                "complete families are enumerated and need ground <= {MAX_SCAN_GOODS}, got {ground}"
            )));
        }
        SetFamily::new(ground, k, k_subsets(Subset::full(ground), k))
    }

    pub fn empty(ground: u32, k: u32) -> SetFamily {
        SetFamily { ground, k, members: Vec::new() }
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }

    pub fn uniformity(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s.mask()).is_ok()
    }

    pub fn members(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().map(|&m| Subset::from_mask(m))
    }
}

/// The t-shadow: all t-subsets contained in some member.
pub fn shadow(f: &SetFamily, t: u32) -> Result<SetFamily> {
    if t > f.k {
        return Err(Error::domain(format!(
            "shadow order {t} exceeds the family's uniformity {}",
            f.k
        )));
    }
    let mut out = BTreeSet::new();
    for s in f.members() {
        for sub in k_subsets(s, t) {
            out.insert(sub.mask());
        }
    }
    Ok(SetFamily { ground: f.ground, k: t, members: out.into_iter().collect() })
}

/// Generalized binomial coefficient C(x, k) = x(x-1)...(x-k+1)/k! for real x.
pub fn binom_real(x: f64, k: u32) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r *= (x - i as f64) / (i as f64 + 1.0);
    }
    r
}

/// Lovasz-form shadow bound: solve C(x, k) = size for real x >= k, return
/// C(x, t). Every k-uniform family of this size has a t-shadow at least this
/// large.
pub fn kk_lower_bound(size: u64, k: u32, t: u32) -> Result<f64> {
    if size < 1 {
        return Err(Error::domain("family size must be at least 1"));
    }
    if t > k {
        return Err(Error::domain(format!("shadow order {t} exceeds uniformity {k}")));
    }
    if k == 0 {
        // the only 0-uniform family is {{}}, whose 0-shadow is itself
        return Ok(1.0);
    }
    let target = size as f64;
    // C(., k) is strictly increasing on [k, inf) with C(k, k) = 1 and
    // C(k + size, k) >= 1 + size > size, so the root lies in this bracket
    let (mut lo, mut hi) = (k as f64, (k as u64 + size) as f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if binom_real(mid, k) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok(binom_real(0.5 * (lo + hi), t))
}

fn check_tuple(families: &[SetFamily]) -> Result<()> {
    if families.is_empty() {
        return Err(Error::domain("need at least one family"));
    }
    let g = families[0].ground();
    let k = families[0].uniformity();
    if families.iter().any(|f| f.ground() != g || f.uniformity() != k) {
        return Err(Error::domain(
            "families must share one ground set and one uniformity",
        ));
    }
    Ok(())
}

/// Searches for pairwise disjoint representatives, one member per family.
/// Returns the lexicographically first such system, or None.
pub fn rainbow_transversal(families: &[SetFamily]) -> Result<Option<Vec<Subset>>> {
    check_tuple(families)?;
    let mut product: u128 = 1;
    for f in families {
        product = product.saturating_mul(f.len() as u128);
        if product > 100_000_000 {
            return Err(Error::capability(
                "transversal search space exceeds 1e8 candidate systems",
            ));
        }
    }
    let mut picked = vec![Subset::EMPTY; families.len()];
    if transversal_search(families, 0, Subset::EMPTY, &mut picked) {
        Ok(Some(picked))
    } else {
        Ok(None)
    }
}

fn transversal_search(
    families: &[SetFamily],
    idx: usize,
    used: Subset,
    picked: &mut [Subset],
) -> bool {
    if idx == families.len() {
        return true;
    }
    for s in families[idx].members() {
        if s.is_disjoint(used) {
            picked[idx] = s;
            if transversal_search(families, idx + 1, used.union(s), picked) {
                return true;
            }
        }
    }
    false
}

/// A tuple is cross-dependent when no rainbow transversal exists. Any tuple
/// containing an empty family is trivially cross-dependent.
pub fn is_cross_dependent(families: &[SetFamily]) -> Result<bool> {
    Ok(rainbow_transversal(families)?.is_none())
}

fn big_binom(m: u64, k: u64) -> BigUint {
    if k > m {
        return BigUint::from(0u32);
    }
    let k = k.min(m - k);
    let mut r = BigUint::from(1u32);
    for i in 1..=k {
        r = r * BigUint::from(m - k + i) / BigUint::from(i);
    }
    r
}

/// Conjectured maximum of the smallest family size over cross-dependent
/// n-tuples of k-uniform families on [m_ground]: the better of the star and
/// clique constructions, exactly.
pub fn emc_bound(n: u64, k: u64, m_ground: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::domain(format!(
            "cross-dependence is degenerate below two families, got n={n}"
        )));
    }
    if k < 1 {
        return Err(Error::domain("uniformity must be at least 1"));
    }
    if m_ground < n * k {
        return Err(Error::domain(format!(
            "ground set must hold n*k = {} elements, got {m_ground}",
            n * k
        )));
    }
    let star = big_binom(m_ground, k) - big_binom(m_ground - (n - 1), k);
    let clique = big_binom(k * n - 1, k);
    Ok(star.max(clique))
}

fn check_construction(n: usize, k: u32, ground: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("need at least two families, got n={n}")));
    }
    if k < 1 {
        return Err(Error::domain("uniformity must be at least 1"));
    }
    if (ground as u64) < n as u64 * k as u64 {
        return Err(Error::domain(format!(
            "ground set must hold n*k = {} elements, got {ground}",
            n as u64 * k as u64
        )));
    }
    if ground > MAX_SCAN_GOODS {
        return Err(Error::capability(format!(
            "constructions enumerate k-subsets and need ground <= {MAX_SCAN_GOODS}, got {ground}"
        )));
    }
    Ok(())
}

/// n copies of all k-subsets of the first kn-1 elements. Cross-dependent: n
/// pairwise disjoint members would need kn elements.
pub fn construction_clique(n: usize, k: u32, ground: u32) -> Result<Vec<SetFamily>> {
    check_construction(n, k, ground)?;
    let base = k_subsets(Subset::full(k * n as u32 - 1), k);
    (0..n).map(|_| SetFamily::new(ground, k, base.iter().copied())).collect()
}

/// n copies of the k-subsets meeting the first n-1 elements. Cross-dependent
/// by pigeonhole: n disjoint members cannot all hit n-1 hub elements.
pub fn construction_star(n: usize, k: u32, ground: u32) -> Result<Vec<SetFamily>> {
    check_construction(n, k, ground)?;
    let hub = Subset::full(n as u32 - 1);
    let members: Vec<Subset> = k_subsets(Subset::full(ground), k)
        .into_iter()
        .filter(|s| !s.inter(hub).is_empty())
        .collect();
    (0..n).map(|_| SetFamily::new(ground, k, members.iter().copied())).collect()
}

#[derive(Clone, Debug)]
pub struct MaxMinWitness {
    /// max over cross-dependent n-tuples of min_i |F_i|.
    pub value: u64,
    pub families: Vec<SetFamily>,
}

/// Exact maximum of the smallest family size over cross-dependent n-tuples
/// of k-uniform families on [ground].
///
/// Families are bitmasks over the N = C(ground, k) base sets. The search
/// enumerates the first n-1 families in nondecreasing mask order, keeping
/// only candidates larger than the best value so far, and completes each
/// prefix with its unique maximal closing family: every base set whose
/// addition creates no rainbow. Dropping the largest-mask family of any
/// optimal tuple leaves a prefix that is enumerated here, and the completion
/// dominates the dropped family, so the scan is exact. The star and clique
/// constructions seed the best value, which only sharpens the pruning.
pub fn max_min_cross_dependent(n: usize, k: u32, ground: u32) -> Result<MaxMinWitness> {
    check_construction(n, k, ground)?;
    let base = k_subsets(Subset::full(ground), k);
    let count = base.len();
    let feasible = (n == 2 && count <= 10) || (k == 1 && ground <= 6 && n <= 4);
    if !feasible {
        return Err(Error::capability(format!(
            "exact search enumerates families over {count} base sets; only n=2 with at most 10 base sets, or k=1 with ground <= 6 and n <= 4, stay tractable"
        )));
    }
    let elems: Vec<u64> = base.iter().map(|s| s.mask()).collect();
    let full_mask: u32 = if count == 32 { u32::MAX } else { (1u32 << count) - 1 };

    let mut best_value = 0u64;
    let mut best_families: Vec<u32> = Vec::new();
    for seed in [construction_clique(n, k, ground)?, construction_star(n, k, ground)?] {
        let masks: Vec<u32> = seed.iter().map(|f| family_to_mask(f, &base)).collect();
        let value = masks.iter().map(|m| m.count_ones() as u64).min().unwrap();
        if value > best_value {
            best_value = value;
            best_families = masks;
        }
    }

    let mut prefix: Vec<u32> = Vec::with_capacity(n - 1);
    scan_prefixes(
        n - 1,
        0,
        full_mask,
        &elems,
        &mut prefix,
        &mut best_value,
        &mut best_families,
    );

    let families = best_families
        .iter()
        .map(|&mask| mask_to_family(mask, &base, ground, k))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(matches!(is_cross_dependent(&families), Ok(true)));
    Ok(MaxMinWitness { value: best_value, families })
}

fn family_to_mask(f: &SetFamily, base: &[Subset]) -> u32 {
    let mut mask = 0u32;
    for (i, s) in base.iter().enumerate() {
        if f.contains(*s) {
            mask |= 1 << i;
        }
    }
    mask
}

fn mask_to_family(mask: u32, base: &[Subset], ground: u32, k: u32) -> Result<SetFamily> {
    SetFamily::new(
        ground,
        k,
        base.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| *s),
    )
}

fn scan_prefixes(
    slots: usize,
    depth: usize,
    full_mask: u32,
    elems: &[u64],
    prefix: &mut Vec<u32>,
    best_value: &mut u64,
    best_families: &mut Vec<u32>,
) {
    if depth == slots {
        let completion = maximal_completion(prefix, elems);
        let value = prefix
            .iter()
            .chain(std::iter::once(&completion))
            .map(|m| m.count_ones() as u64)
            .min()
            .unwrap();
        if value > *best_value {
            *best_value = value;
            *best_families = prefix.clone();
            best_families.push(completion);
        }
        return;
    }
    let start = prefix.last().copied().unwrap_or(0);
    for mask in start..=full_mask {
        // every family in a better tuple is strictly larger than the best min
        if u64::from(mask.count_ones()) <= *best_value {
            continue;
        }
        prefix.push(mask);
        scan_prefixes(slots, depth + 1, full_mask, elems, prefix, best_value, best_families);
        prefix.pop();
    }
}

/// Base sets whose addition to the last slot keeps the tuple cross-dependent:
/// those admitting no rainbow through the prefix that avoids them.
fn maximal_completion(prefix: &[u32], elems: &[u64]) -> u32 {
    let mut completion = 0u32;
    for (j, &avoid) in elems.iter().enumerate() {
        if !prefix_rainbow(prefix, elems, 0, avoid) {
            completion |= 1 << j;
        }
    }
    completion
}

fn prefix_rainbow(prefix: &[u32], elems: &[u64], idx: usize, used: u64) -> bool {
    if idx == prefix.len() {
        return true;
    }
    let mut fam = prefix[idx];
    while fam != 0 {
        let i = fam.trailing_zeros() as usize;
        fam &= fam - 1;
        if elems[i] & used == 0 && prefix_rainbow(prefix, elems, idx + 1, used | elems[i]) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn downset_from(m: u32, members: &[&[u32]]) -> DownSet {
        DownSet::new(m, members.iter().map(|e| Subset::from_elems(e))).unwrap()
    }

    #[test]
    fn measure_reference_value() {
        let d = downset_from(2, &[&[], &[1], &[2]]);
        assert_eq!(mu(&d, 0.5).unwrap(), 0.75);
        assert_eq!(mu(&d, 0.0).unwrap(), 1.0);
        assert_eq!(mu(&d, 1.0).unwrap(), 0.0);
        let empty = DownSet::empty(3);
        assert_eq!(mu(&empty, 0.4).unwrap(), 0.0);
        let full = DownSet::full_power_set(3).unwrap();
        assert!((mu(&full, 0.4).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn downset_closure_enforced() {
        let r = DownSet::new(2, vec![Subset::from_elems(&[1, 2])]);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn inequality_reference_residual() {
        let d = downset_from(2, &[&[], &[1], &[2]]);
        let r = check_downset_inequality(&d, 0.5, 0.5).unwrap();
        // mu at 0.25 is 15/16; 0.75^0.5 = sqrt(3)/2
        let want = 0.9375 - 0.75f64.sqrt();
        assert!((r - want).abs() < 1e-15);
        assert!((r - 0.0715).abs() < 5e-4);
        assert!(check_downset_inequality(&d, 0.5, 0.0).is_err());
        assert!(check_downset_inequality(&d, 0.5, 1.5).is_err());
        // alpha = 1 is an identity
        assert_eq!(check_downset_inequality(&d, 0.37, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn differential_inequality_on_small_downsets() {
        for d in all_down_sets(3).unwrap() {
            for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
                let r = check_differential_inequality(&d, p, 1e-5).unwrap();
                assert!(r >= -1e-6, "residual {r} at p={p}");
            }
        }
    }

    #[test]
    fn down_set_counts_follow_dedekind() {
        for (m, want) in [(0u32, 2usize), (1, 3), (2, 6), (3, 20), (4, 168)] {
            assert_eq!(all_down_sets(m).unwrap().len(), want, "m={m}");
        }
        assert!(all_down_sets(5).is_err());
    }

    #[test]
    fn level_sets_realize_the_cdf() {
        let v = Valuation::additive(vec![1.0, 2.0, 3.0]).unwrap();
        let d = level_down_set(&v, 2.5).unwrap();
        assert!(d.contains(Subset::EMPTY));
        assert!(d.contains(Subset::singleton(2)));
        assert!(!d.contains(Subset::singleton(3)));
        assert!(!d.contains(Subset::from_elems(&[1, 2])));
        let cdf = crate::dist::exact_distribution(&v, 0.3).unwrap().cdf_at(2.5);
        assert!((mu(&d, 0.3).unwrap() - cdf).abs() <= 1e-12);
    }

    #[test]
    fn shadow_reference() {
        let f = SetFamily::new(
            3,
            2,
            vec![Subset::from_elems(&[1, 2]), Subset::from_elems(&[1, 3])],
        )
        .unwrap();
        let sh = shadow(&f, 1).unwrap();
        let got: Vec<Subset> = sh.members().collect();
        assert_eq!(
            got,
            vec![Subset::singleton(1), Subset::singleton(2), Subset::singleton(3)]
        );
        let sh0 = shadow(&f, 0).unwrap();
        assert_eq!(sh0.len(), 1);
        assert!(shadow(&f, 3).is_err());
    }

    #[test]
    fn binom_real_reference() {
        assert!((binom_real(2.5, 2) - 1.875).abs() < 1e-15);
        assert_eq!(binom_real(5.0, 2), 10.0);
        assert_eq!(binom_real(7.0, 0), 1.0);
        assert_eq!(binom_real(3.0, 4), 0.0);
    }

    #[test]
    fn kk_bound_basics() {
        // size 1: bound is C(k, t)
        assert!((kk_lower_bound(1, 3, 2).unwrap() - 3.0).abs() < 1e-9);
        // complete family C([3], 2) has 1-shadow exactly 3 and the bound is tight
        let b = kk_lower_bound(3, 2, 1).unwrap();
        assert!((b - 3.0).abs() < 1e-9);
        // C(x, 2) = 6 at x = 4, so the 1-shadow bound is 4
        assert!((kk_lower_bound(6, 2, 1).unwrap() - 4.0).abs() < 1e-9);
        assert!(kk_lower_bound(0, 2, 1).is_err());
        assert!(kk_lower_bound(5, 2, 3).is_err());
        assert_eq!(kk_lower_bound(1, 0, 0).unwrap(), 1.0);
    }

    #[test]
    fn kk_bound_never_exceeds_actual_shadows() {
        // every subfamily of C([5], 3), via masks over the 10 base sets
        let base = k_subsets(Subset::full(5), 3);
        for mask in 1u32..1 << 10 {
            let fam = SetFamily::new(
                5,
                3,
                base.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, s)| *s),
            )
            .unwrap();
            for t in 0..=3 {
                let actual = shadow(&fam, t).unwrap().len() as f64;
                let bound = kk_lower_bound(fam.len() as u64, 3, t).unwrap();
                assert!(
                    actual >= bound - 1e-9,
                    "family mask {mask}: shadow {actual} below bound {bound} at t={t}"
                );
            }
        }
    }

    #[test]
    fn rainbow_and_cross_dependence() {
        let f1 = SetFamily::new(4, 2, vec![Subset::from_elems(&[1, 2])]).unwrap();
        let f2 = SetFamily::new(4, 2, vec![Subset::from_elems(&[3, 4])]).unwrap();
        let tv = rainbow_transversal(&[f1.clone(), f2.clone()]).unwrap().unwrap();
        assert_eq!(tv, vec![Subset::from_elems(&[1, 2]), Subset::from_elems(&[3, 4])]);
        assert!(!is_cross_dependent(&[f1.clone(), f2]).unwrap());
        let f3 = SetFamily::new(4, 2, vec![Subset::from_elems(&[1, 3])]).unwrap();
        assert!(is_cross_dependent(&[f1.clone(), f3]).unwrap());
        // an empty family blocks every transversal
        assert!(is_cross_dependent(&[f1, SetFamily::empty(4, 2)]).unwrap());
    }

    #[test]
    fn emc_bound_reference_values() {
        for m in 3..=6u64 {
            assert_eq!(emc_bound(2, 1, m).unwrap(), BigUint::from(1u32), "n=2 m={m}");
            assert_eq!(emc_bound(3, 1, m).unwrap(), BigUint::from(2u32), "n=3 m={m}");
        }
        for m in 4..=6u64 {
            assert_eq!(emc_bound(4, 1, m).unwrap(), BigUint::from(3u32), "n=4 m={m}");
        }
        assert_eq!(emc_bound(2, 2, 5).unwrap(), BigUint::from(4u32));
        // clique wins here: C(5,3) - C(4,3) = 6 vs C(5,3) = 10
        assert_eq!(emc_bound(2, 3, 6).unwrap(), BigUint::from(10u32));
        assert!(emc_bound(1, 1, 5).is_err());
        assert!(emc_bound(2, 2, 3).is_err());
    }

    #[test]
    fn constructions_are_cross_dependent() {
        for (n, k, m) in [(2usize, 1u32, 3u32), (3, 1, 4), (2, 2, 5), (3, 2, 7)] {
            let clique = construction_clique(n, k, m).unwrap();
            assert!(is_cross_dependent(&clique).unwrap(), "clique n={n} k={k} m={m}");
            let star = construction_star(n, k, m).unwrap();
            assert!(is_cross_dependent(&star).unwrap(), "star n={n} k={k} m={m}");
            // sizes follow the closed forms
            let clique_want = big_binom(k as u64 * n as u64 - 1, k as u64);
            assert_eq!(BigUint::from(clique[0].len()), clique_want);
            let star_want =
                big_binom(m as u64, k as u64) - big_binom(m as u64 - (n as u64 - 1), k as u64);
            assert_eq!(BigUint::from(star[0].len()), star_want);
        }
    }

    #[test]
    fn max_min_matches_bound_on_tiny_cases() {
        let w = max_min_cross_dependent(2, 2, 5).unwrap();
        assert_eq!(w.value, 4);
        assert_eq!(w.families.len(), 2);
        assert!(is_cross_dependent(&w.families).unwrap());
        assert!(w.families.iter().all(|f| f.len() >= 4));

        let w = max_min_cross_dependent(3, 1, 4).unwrap();
        assert_eq!(w.value, 2);
        assert!(is_cross_dependent(&w.families).unwrap());

        assert!(max_min_cross_dependent(3, 2, 7).is_err());
    }
}
