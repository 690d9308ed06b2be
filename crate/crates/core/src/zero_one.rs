//! Monotone 0/1 valuations, stored as the antichain of minimal accepted
//! bundles, and the cut that turns any monotone valuation into one.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::set::{all_subsets, Subset, MAX_GROUND};
use crate::valuation::{Valuation, MAX_SCAN_GOODS};

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroOneValuation {
    m: u32,
    /// Antichain of minimal accepted bundles, ascending by mask.
    minimal: Vec<Subset>,
}

impl ZeroOneValuation {
    /// Builds the up-set generated by `generators`; dominated generators are
    /// dropped so only minimal accepted bundles remain. The empty set is not
    /// a legal generator (it would give the empty bundle value 1).
    pub fn new(m: u32, generators: Vec<Subset>) -> Result<ZeroOneValuation> {
        if m == 0 || m > MAX_GROUND {
            return Err(Error::domain(format!("good count {m} out of range")));
        }
        let full = Subset::full(m);
        for g in &generators {
            if g.is_empty() {
                return Err(Error::malformed(
                    "empty generator would value the empty bundle at 1",
                ));
            }
            if !g.is_subset_of(full) {
                return Err(Error::malformed(format!(
                    "generator {g} is not a subset of the ground set"
                )));
            }
        }
        let mut minimal: Vec<Subset> = Vec::new();
        for &g in &generators {
            if !generators.iter().any(|&h| h != g && h.is_subset_of(g))
                && !minimal.contains(&g)
            {
                minimal.push(g);
            }
        }
        minimal.sort();
        Ok(ZeroOneValuation { m, minimal })
    }

    pub fn goods(&self) -> u32 {
        self.m
    }

    pub fn minimal_accepted(&self) -> &[Subset] {
        &self.minimal
    }

    pub fn accepts(&self, s: Subset) -> bool {
        let s = s.restrict(self.m);
        self.minimal.iter().any(|g| g.is_subset_of(s))
    }

    pub fn eval(&self, s: Subset) -> f64 {
        if self.accepts(s) {
            1.0
        } else {
            0.0
        }
    }

    /// Materializes the full 2^m table.
    pub fn to_valuation(&self) -> Result<Valuation> {
        if self.m > MAX_SCAN_GOODS {
            return Err(Error::capability(format!(
                "materializing a table needs m <= {MAX_SCAN_GOODS}, got {}",
                self.m
            )));
        }
        let values: BTreeMap<u64, f64> =
            all_subsets(self.m).map(|s| (s.mask(), self.eval(s))).collect();
        Valuation::table(self.m, values)
    }
}

/// Cuts a monotone valuation at `tau`: the result accepts exactly the bundles
/// worth at least `tau`. Requires `tau > 0` so the empty bundle is rejected.
pub fn reduce_01(v: &Valuation, tau: f64) -> Result<ZeroOneValuation> {
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::domain(format!(
            "reduction threshold must be a positive real, got {tau}"
        )));
    }
    let m = v.goods();
    if m > MAX_SCAN_GOODS {
        return Err(Error::capability(format!(
            "reduction scans 2^m bundles and needs m <= {MAX_SCAN_GOODS}, got {m}"
        )));
    }
    let size = 1usize << m;
    let mut accepted = vec![false; size];
    for s in all_subsets(m) {
        accepted[s.mask() as usize] = v.eval(s)? >= tau;
    }
    let mut minimal = Vec::new();
    for s in all_subsets(m) {
        if accepted[s.mask() as usize]
            && s.iter().all(|e| !accepted[s.without(e).mask() as usize])
        {
            minimal.push(s);
        }
    }
    // monotone input makes `accepted` an up-set, so the minimal members
    // generate it exactly
    Ok(ZeroOneValuation { m, minimal })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_minimalized() {
        let u = ZeroOneValuation::new(
            3,
            vec![
                Subset::from_elems(&[1, 2]),
                Subset::from_elems(&[1, 2, 3]),
                Subset::singleton(3),
                Subset::singleton(3),
            ],
        )
        .unwrap();
        assert_eq!(
            u.minimal_accepted(),
            &[Subset::from_elems(&[1, 2]), Subset::singleton(3)]
        );
        assert_eq!(u.eval(Subset::singleton(1)), 0.0);
        assert_eq!(u.eval(Subset::from_elems(&[1, 3])), 1.0);
        assert_eq!(u.eval(Subset::EMPTY), 0.0);
    }

    #[test]
    fn empty_generator_rejected() {
        assert!(ZeroOneValuation::new(3, vec![Subset::EMPTY]).is_err());
    }

    #[test]
    fn no_generators_means_never_accept() {
        let u = ZeroOneValuation::new(2, vec![]).unwrap();
        assert!(u.minimal_accepted().is_empty());
        assert_eq!(u.eval(Subset::full(2)), 0.0);
    }

    #[test]
    fn reduction_cuts_at_threshold() {
        let v = Valuation::additive(vec![1.0, 2.0, 3.0]).unwrap();
        let u = reduce_01(&v, 3.0).unwrap();
        // minimal bundles worth >= 3: {1,2} and {3}
        assert_eq!(
            u.minimal_accepted(),
            &[Subset::from_elems(&[1, 2]), Subset::singleton(3)]
        );
        assert!(u.accepts(Subset::from_elems(&[2, 3])));
        assert!(!u.accepts(Subset::from_elems(&[1])));
    }

    #[test]
    fn reduction_requires_positive_threshold() {
        let v = Valuation::cardinality(3);
        assert!(reduce_01(&v, 0.0).is_err());
        assert!(reduce_01(&v, -1.0).is_err());
        assert!(reduce_01(&v, f64::NAN).is_err());
    }

    #[test]
    fn reduction_agrees_with_direct_comparison() {
        let v = Valuation::unit_demand(vec![1.0, 2.0, 2.0, 5.0]).unwrap();
        for tau in [0.5, 1.0, 1.5, 2.0, 5.0, 6.0] {
            let u = reduce_01(&v, tau).unwrap();
            for s in all_subsets(4) {
                let want = v.eval(s).unwrap() >= tau;
                assert_eq!(u.accepts(s), want, "tau={tau} s={s}");
            }
        }
    }

    #[test]
    fn reduction_is_idempotent_on_zero_one() {
        let u = ZeroOneValuation::new(
            4,
            vec![Subset::from_elems(&[1, 2]), Subset::from_elems(&[3, 4])],
        )
        .unwrap();
        let v = u.to_valuation().unwrap();
        let again = reduce_01(&v, 1.0).unwrap();
        assert_eq!(again, u);
    }

    #[test]
    fn table_round_trip() {
        let u = ZeroOneValuation::new(2, vec![Subset::singleton(2)]).unwrap();
        let v = u.to_valuation().unwrap();
        assert!(v.is_monotone().unwrap());
        for s in all_subsets(2) {
            assert_eq!(v.eval(s).unwrap(), u.eval(s));
        }
    }
}
