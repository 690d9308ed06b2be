//! Bit-indexed subsets of a 1-indexed ground set [m].
//!
//! Element i occupies bit i-1, so masks order subsets the usual way and
//! m is capped at 63 structurally. All enumeration helpers yield subsets
//! in ascending mask order, which every caller relies on for determinism.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

pub const MAX_GROUND: u32 = 63;

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full ground set [m].
    pub fn full(m: u32) -> Subset {
        debug_assert!(m <= MAX_GROUND);
        if m == 0 {
            Subset(0)
        } else {
            Subset(u64::MAX >> (64 - m))
        }
    }

    pub fn from_mask(mask: u64) -> Subset {
        Subset(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    /// Singleton {e}, e 1-indexed.
    pub fn singleton(e: u32) -> Subset {
        debug_assert!((1..=MAX_GROUND).contains(&e));
        Subset(1 << (e - 1))
    }

    pub fn from_elems(elems: &[u32]) -> Subset {
        elems.iter().fold(Subset::EMPTY, |s, &e| s.with(e))
    }

    pub fn contains(self, e: u32) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 >> (e - 1) & 1 == 1
    }

    pub fn with(self, e: u32) -> Subset {
        Subset(self.0 | Subset::singleton(e).0)
    }

    pub fn without(self, e: u32) -> Subset {
        Subset(self.0 & !Subset::singleton(e).0)
    }

    pub fn card(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn inter(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement_in(self, m: u32) -> Subset {
        Subset(!self.0 & Subset::full(m).0)
    }

    /// Intersection with [m], saturating at the representation cap: domains
    /// beyond 63 goods cannot exclude any representable subset.
    pub fn restrict(self, m: u32) -> Subset {
        self.inter(Subset::full(m.min(MAX_GROUND)))
    }

    /// Members in ascending order, 1-indexed.
    pub fn iter(self) -> Elems {
        Elems(self.0)
    }
}

pub struct Elems(u64);

impl Iterator for Elems {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All 2^m subsets of [m] in ascending mask order. m <= 30 guards the shift.
pub fn all_subsets(m: u32) -> impl Iterator<Item = Subset> {
    assert!(m <= 30, "2^m enumeration needs small m");
    (0u64..1 << m).map(Subset::from_mask)
}

/// All subsets of `of`, ascending mask order.
pub fn subsets_of(of: Subset) -> SubsetsOf {
    SubsetsOf { of: of.0, cur: 0, done: false }
}

pub struct SubsetsOf {
    of: u64,
    cur: u64,
    done: bool,
}

impl Iterator for SubsetsOf {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let out = Subset(self.cur);
        if self.cur == self.of {
            self.done = true;
        } else {
            // next submask in ascending order
            self.cur = (self.cur.wrapping_sub(self.of)) & self.of;
        }
        Some(out)
    }
}

/// All k-element subsets of `ground`, ascending mask order.
pub fn k_subsets(ground: Subset, k: u32) -> Vec<Subset> {
    let elems: Vec<u32> = ground.iter().collect();
    if k as usize > elems.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut chosen = Subset::EMPTY;
    fn go(elems: &[u32], start: usize, left: u32, chosen: &mut Subset, out: &mut Vec<Subset>) {
        if left == 0 {
            out.push(*chosen);
            return;
        }
        for i in start..=elems.len() - left as usize {
            *chosen = chosen.with(elems[i]);
            go(elems, i + 1, left - 1, chosen, out);
            *chosen = chosen.without(elems[i]);
        }
    }
    go(&elems, 0, k, &mut chosen, &mut out);
    out.sort_unstable();
    out
}
