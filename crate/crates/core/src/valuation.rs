//! Monotone valuations over indivisible goods.
//!
//! Each kind stores its intrinsic domain (weight vector length, stored good
//! count, or block union); the enclosing `Valuation` carries the ambient good
//! count `m >= intrinsic`, and evaluation restricts bundles to the intrinsic
//! domain. Padding with dummy goods therefore only raises `m` and never
//! rewrites the kind.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::set::{all_subsets, Subset, MAX_GROUND};

/// Largest ground set for which 2^m scans are attempted.
pub const MAX_SCAN_GOODS: u32 = 20;

#[derive(Clone, Debug, PartialEq)]
pub enum ValuationKind {
    Additive { weights: Vec<f64> },
    UnitDemand { weights: Vec<f64> },
    /// 1 iff the bundle holds at least `min_size` of the first `goods` goods.
    Threshold { goods: u32, min_size: u32 },
    /// 1 iff the bundle meets both blocks.
    TwoBlock { red: Subset, blue: Subset },
    /// 1 iff the bundle meets [goods].
    Nonempty { goods: u32 },
    /// Explicit values keyed by subset mask over [goods].
    Table { goods: u32, values: BTreeMap<u64, f64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Valuation {
    kind: ValuationKind,
    m: u32,
}

fn ind(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Only emptiness is rejected: kinds whose value law has a closed form are
/// usable far beyond the 63-good subset representation, so the ambient count
/// itself is uncapped. Operations that must enumerate or represent bundles
/// enforce their own limits.
fn check_ground(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::domain("good count must be positive"));
    }
    Ok(())
}

fn check_weights(weights: &[f64]) -> Result<()> {
    for (i, w) in weights.iter().enumerate() {
        if !w.is_finite() || *w < 0.0 {
            return Err(Error::malformed(format!(
                "weight for good {} must be a nonnegative finite real, got {w}",
                i + 1
            )));
        }
    }
    Ok(())
}

impl Valuation {
    pub fn additive(weights: Vec<f64>) -> Result<Valuation> {
        check_ground(weights.len() as u32)?;
        check_weights(&weights)?;
        let m = weights.len() as u32;
        Ok(Valuation { kind: ValuationKind::Additive { weights }, m })
    }

    pub fn unit_demand(weights: Vec<f64>) -> Result<Valuation> {
        check_ground(weights.len() as u32)?;
        check_weights(&weights)?;
        let m = weights.len() as u32;
        Ok(Valuation { kind: ValuationKind::UnitDemand { weights }, m })
    }

    /// `min_size = 0` is rejected: the constant-1 function would break v(empty) = 0.
    pub fn threshold(m: u32, min_size: u32) -> Result<Valuation> {
        check_ground(m)?;
        if min_size == 0 {
            return Err(Error::domain("threshold size 0 would value the empty bundle at 1"));
        }
        Ok(Valuation { kind: ValuationKind::Threshold { goods: m, min_size }, m })
    }

    pub fn two_block(m: u32, red: Subset, blue: Subset) -> Result<Valuation> {
        check_ground(m)?;
        if red.is_empty() || blue.is_empty() {
            return Err(Error::domain("two_block blocks must be nonempty"));
        }
        if !red.is_disjoint(blue) {
            return Err(Error::domain("two_block blocks must be disjoint"));
        }
        if !red.union(blue).is_subset_of(Subset::full(m.min(MAX_GROUND))) {
            return Err(Error::domain("two_block blocks must lie inside the ground set"));
        }
        Ok(Valuation { kind: ValuationKind::TwoBlock { red, blue }, m })
    }

    pub fn nonempty(m: u32) -> Result<Valuation> {
        check_ground(m)?;
        Ok(Valuation { kind: ValuationKind::Nonempty { goods: m }, m })
    }

    /// Entries are taken at face value; completeness and monotonicity are
    /// checked by `is_monotone` (and enforced when parsing instance files).
    pub fn table(m: u32, values: BTreeMap<u64, f64>) -> Result<Valuation> {
        check_ground(m)?;
        if m > MAX_SCAN_GOODS {
            return Err(Error::capability(format!(
                "table valuations need m <= {MAX_SCAN_GOODS}, got {m}"
            )));
        }
        let full = Subset::full(m).mask();
        for (&key, val) in &values {
            if key & !full != 0 {
                return Err(Error::malformed(format!(
                    "table key {} is not a subset of the ground set",
                    Subset::from_mask(key)
                )));
            }
            if !val.is_finite() || *val < 0.0 {
                return Err(Error::malformed(format!(
                    "table value for {} must be a nonnegative finite real, got {val}",
                    Subset::from_mask(key)
                )));
            }
        }
        Ok(Valuation { kind: ValuationKind::Table { goods: m, values }, m })
    }

    /// v(T) = |T|: additive with unit weights.
    pub fn cardinality(m: u32) -> Valuation {
        Valuation::additive(vec![1.0; m as usize]).expect("unit weights are valid")
    }

    pub fn goods(&self) -> u32 {
        self.m
    }

    pub fn kind(&self) -> &ValuationKind {
        &self.kind
    }

    pub fn eval(&self, s: Subset) -> Result<f64> {
        let s = s.restrict(self.m);
        Ok(match &self.kind {
            // + 0.0 normalizes the empty sum, which folds up from -0.0
            ValuationKind::Additive { weights } => {
                s.restrict(weights.len() as u32)
                    .iter()
                    .map(|e| weights[(e - 1) as usize])
                    .sum::<f64>()
                    + 0.0
            }
            ValuationKind::UnitDemand { weights } => s
                .restrict(weights.len() as u32)
                .iter()
                .map(|e| weights[(e - 1) as usize])
                .fold(0.0, f64::max),
            ValuationKind::Threshold { goods, min_size } => {
                ind(s.restrict(*goods).card() >= *min_size)
            }
            ValuationKind::TwoBlock { red, blue } => {
                ind(!s.inter(*red).is_empty() && !s.inter(*blue).is_empty())
            }
            ValuationKind::Nonempty { goods } => ind(!s.restrict(*goods).is_empty()),
            ValuationKind::Table { goods, values } => {
                let key = s.restrict(*goods).mask();
                *values.get(&key).ok_or_else(|| {
                    Error::malformed(format!(
                        "table has no entry for subset {}",
                        Subset::from_mask(key)
                    ))
                })? + 0.0
            }
        })
    }

    /// Value of the whole ground set, computed structurally so domains past
    /// the subset representation still answer.
    pub fn grand_value(&self) -> Result<f64> {
        Ok(match &self.kind {
            ValuationKind::Additive { weights } => weights.iter().sum::<f64>() + 0.0,
            ValuationKind::UnitDemand { weights } => weights.iter().fold(0.0, |a, b| a.max(*b)),
            ValuationKind::Threshold { goods, min_size } => ind(min_size <= goods),
            ValuationKind::TwoBlock { .. } | ValuationKind::Nonempty { .. } => 1.0,
            ValuationKind::Table { goods, .. } => self.eval(Subset::full(*goods))?,
        })
    }

    /// Structural kinds are monotone by construction; tables are scanned
    /// exhaustively (single-element deletions over all 2^m subsets).
    pub fn is_monotone(&self) -> Result<bool> {
        let ValuationKind::Table { goods, .. } = &self.kind else {
            return Ok(true);
        };
        let g = *goods;
        if self.eval(Subset::EMPTY)? != 0.0 {
            return Ok(false);
        }
        for s in all_subsets(g) {
            let val = self.eval(s)?;
            for e in s.iter() {
                if self.eval(s.without(e))? > val {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Extends the ground set with dummy goods: the padded valuation ignores
    /// everything above the original domain, so its value law under any
    /// product measure matches the original's.
    pub fn pad(&self, to: u32) -> Result<Valuation> {
        if to < self.m {
            return Err(Error::domain(format!(
                "cannot pad from {} goods down to {to}",
                self.m
            )));
        }
        check_ground(to)?;
        Ok(Valuation { kind: self.kind.clone(), m: to })
    }

    /// Whether some bundle is worth exactly `target`. Exact f64 comparison;
    /// beyond the 2^m scan range each kind answers from its structure (the
    /// additive path walks subset sums in eval's summation order and is
    /// worst-case exponential on adversarial weights).
    pub fn attains(&self, target: f64) -> Result<bool> {
        if target == 0.0 {
            return Ok(true);
        }
        if self.m <= MAX_SCAN_GOODS {
            for s in all_subsets(self.m) {
                if self.eval(s)? == target {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        Ok(match &self.kind {
            ValuationKind::Additive { weights } => subset_sum_hits(weights, target),
            ValuationKind::UnitDemand { weights } => weights.contains(&target),
            ValuationKind::Threshold { goods, min_size } => {
                target == 1.0 && min_size <= goods
            }
            ValuationKind::TwoBlock { .. } | ValuationKind::Nonempty { .. } => target == 1.0,
            ValuationKind::Table { values, .. } => values.values().any(|v| *v == target),
        })
    }
}

fn subset_sum_hits(weights: &[f64], target: f64) -> bool {
    fn go(ws: &[f64], i: usize, acc: f64, target: f64) -> bool {
        if acc == target {
            return true;
        }
        // nonnegative additions never decrease the accumulator
        if i == ws.len() || acc > target {
            return false;
        }
        (ws[i] > 0.0 && go(ws, i + 1, acc + ws[i], target)) || go(ws, i + 1, acc, target)
    }
    go(weights, 0, 0.0, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_from(m: u32, entries: &[(&[u32], f64)]) -> Valuation {
        let values = entries
            .iter()
            .map(|(elems, v)| (Subset::from_elems(elems).mask(), *v))
            .collect();
        Valuation::table(m, values).unwrap()
    }

    #[test]
    fn eval_per_kind() {
        let add = Valuation::additive(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(add.eval(Subset::from_elems(&[1, 3])).unwrap(), 4.0);

        let thr = Valuation::threshold(3, 2).unwrap();
        assert_eq!(thr.eval(Subset::singleton(1)).unwrap(), 0.0);
        assert_eq!(thr.eval(Subset::from_elems(&[1, 2])).unwrap(), 1.0);

        let tb = Valuation::two_block(
            6,
            Subset::from_elems(&[1, 2, 3]),
            Subset::from_elems(&[4, 5, 6]),
        )
        .unwrap();
        assert_eq!(tb.eval(Subset::from_elems(&[1, 4])).unwrap(), 1.0);
        assert_eq!(tb.eval(Subset::from_elems(&[1, 2, 3])).unwrap(), 0.0);

        let ud = Valuation::unit_demand(vec![0.5, 2.0]).unwrap();
        assert_eq!(ud.eval(Subset::EMPTY).unwrap(), 0.0);
        assert_eq!(ud.eval(Subset::full(2)).unwrap(), 2.0);

        let ne = Valuation::nonempty(2).unwrap();
        assert_eq!(ne.eval(Subset::singleton(2)).unwrap(), 1.0);
        assert_eq!(ne.eval(Subset::EMPTY).unwrap(), 0.0);
    }

    #[test]
    fn monotonicity_checks() {
        assert!(Valuation::additive(vec![0.5, 2.0]).unwrap().is_monotone().unwrap());
        let bad = table_from(2, &[(&[], 0.0), (&[1], 1.0), (&[2], 0.0), (&[1, 2], 0.0)]);
        assert!(!bad.is_monotone().unwrap());
        let good = table_from(2, &[(&[], 0.0), (&[1], 1.0), (&[2], 0.0), (&[1, 2], 1.5)]);
        assert!(good.is_monotone().unwrap());
    }

    #[test]
    fn threshold_zero_rejected() {
        assert!(matches!(Valuation::threshold(3, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn table_missing_key_is_malformed() {
        let sparse = table_from(2, &[(&[], 0.0), (&[1, 2], 1.0)]);
        assert!(matches!(
            sparse.eval(Subset::singleton(1)),
            Err(Error::MalformedValuation(_))
        ));
        assert!(matches!(sparse.is_monotone(), Err(Error::MalformedValuation(_))));
    }

    #[test]
    fn padding_behaves_like_dummy_goods() {
        let ne = Valuation::nonempty(1).unwrap();
        let padded = ne.pad(3).unwrap();
        assert_eq!(padded.goods(), 3);
        assert_eq!(padded.eval(Subset::from_elems(&[2, 3])).unwrap(), 0.0);
        assert_eq!(padded.eval(Subset::from_elems(&[1, 3])).unwrap(), 1.0);

        let add = Valuation::additive(vec![1.0, 2.0]).unwrap();
        let padded = add.pad(4).unwrap();
        assert_eq!(padded.eval(Subset::from_elems(&[2, 4])).unwrap(), 2.0);

        let same = add.pad(2).unwrap();
        assert_eq!(same, add);
        assert!(matches!(add.pad(1), Err(Error::Domain(_))));
    }

    #[test]
    fn pad_then_restrict_exhaustive() {
        let kinds = vec![
            Valuation::additive(vec![1.0, 0.5, 2.0]).unwrap(),
            Valuation::unit_demand(vec![3.0, 1.0, 2.0]).unwrap(),
            Valuation::threshold(3, 2).unwrap(),
            Valuation::nonempty(3).unwrap(),
            Valuation::two_block(4, Subset::singleton(1), Subset::singleton(3)).unwrap(),
        ];
        for v in kinds {
            let m = v.goods();
            for big in m..=8 {
                let padded = v.pad(big).unwrap();
                for t in all_subsets(big) {
                    assert_eq!(
                        padded.eval(t).unwrap(),
                        v.eval(t.restrict(m)).unwrap(),
                        "pad/restrict mismatch at {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn attains_scan_and_structural() {
        let add = Valuation::additive(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(add.attains(3.0).unwrap());
        assert!(add.attains(6.0).unwrap());
        assert!(!add.attains(2.5).unwrap());

        // beyond the scan cap the structural paths answer
        let big = Valuation::cardinality(30);
        assert!(big.attains(17.0).unwrap());
        assert!(!big.attains(30.5).unwrap());
        let thr = Valuation::threshold(25, 40).unwrap();
        assert!(!thr.attains(1.0).unwrap());
        assert!(thr.attains(0.0).unwrap());
    }

    #[test]
    fn weight_validation() {
        assert!(Valuation::additive(vec![]).is_err());
        assert!(Valuation::additive(vec![f64::NAN]).is_err());
        assert!(Valuation::additive(vec![-1.0]).is_err());
        assert!(Valuation::two_block(2, Subset::singleton(1), Subset::singleton(1)).is_err());
        assert!(Valuation::two_block(1, Subset::singleton(1), Subset::singleton(2)).is_err());
    }
}
