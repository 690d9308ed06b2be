//! Seeded generators for random test material. Everything draws through the
//! caller's RNG, so suites stay reproducible from a single seed.

use std::collections::BTreeMap;

use rand::Rng;

use crate::extremal::DownSet;
use crate::set::{subsets_of, Subset};
use crate::valuation::Valuation;
use crate::zero_one::ZeroOneValuation;

pub fn random_subset<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Subset {
    Subset::from_mask(rng.gen::<u64>() & Subset::full(m).mask())
}

pub fn random_nonempty_subset<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Subset {
    loop {
        let s = random_subset(m, rng);
        if !s.is_empty() {
            return s;
        }
    }
}

/// Monotone table built by nondecreasing steps up the subset lattice. Flat
/// stretches are frequent on purpose: quantile ties and zero-probability
/// atoms need exercise.
pub fn random_monotone_table<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Valuation {
    let mut vals = vec![0.0f64; 1 << m];
    for mask in 1u64..1 << m {
        let s = Subset::from_mask(mask);
        let floor = s
            .iter()
            .map(|e| vals[s.without(e).mask() as usize])
            .fold(0.0, f64::max);
        let bump = if rng.gen_bool(0.4) { rng.gen_range(0.0..1.0) } else { 0.0 };
        vals[mask as usize] = floor + bump;
    }
    let table: BTreeMap<u64, f64> =
        vals.iter().enumerate().map(|(k, v)| (k as u64, *v)).collect();
    Valuation::table(m, table).expect("lattice construction yields a valid table")
}

/// Random monotone 0/1 valuation from a handful of nonempty generators.
pub fn random_zero_one<R: Rng + ?Sized>(m: u32, rng: &mut R) -> ZeroOneValuation {
    let count = rng.gen_range(1..=m.max(2));
    let gens: Vec<Subset> =
        (0..count).map(|_| random_nonempty_subset(m, rng)).collect();
    ZeroOneValuation::new(m, gens).expect("nonempty generators are valid")
}

/// Random down-set: the downward closure of a few random generators.
pub fn random_down_set<R: Rng + ?Sized>(m: u32, rng: &mut R) -> DownSet {
    let count = rng.gen_range(1..=3);
    let mut members = std::collections::BTreeSet::new();
    for _ in 0..count {
        let gen = random_subset(m, rng);
        for sub in subsets_of(gen) {
            members.insert(sub.mask());
        }
    }
    DownSet::new(m, members.into_iter().map(Subset::from_mask))
        .expect("downward closure is a down-set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            let m = rng.gen_range(1..=6);
            let s = random_subset(m, &mut rng);
            assert!(s.is_subset_of(Subset::full(m)));
            assert!(!random_nonempty_subset(m, &mut rng).is_empty());
            let v = random_monotone_table(m, &mut rng);
            assert!(v.is_monotone().unwrap());
            let u = random_zero_one(m, &mut rng);
            assert!(!u.minimal_accepted().is_empty());
            let d = random_down_set(m, &mut rng);
            assert!(d.contains(Subset::EMPTY));
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            assert_eq!(random_monotone_table(4, &mut a), random_monotone_table(4, &mut b));
        }
    }
}
