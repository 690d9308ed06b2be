//! JSON problem instances: agents, goods, one valuation per agent, and the
//! share specification to test against.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::set::{Subset, MAX_GROUND};
use crate::shares::ShareSpec;
use crate::valuation::Valuation;

#[derive(Clone, Debug)]
pub struct Instance {
    pub agents: usize,
    pub goods: u32,
    pub valuations: Vec<Valuation>,
    pub share: ShareSpec,
}

#[derive(Deserialize)]
struct RawInstance {
    agents: usize,
    goods: u32,
    valuations: Vec<RawValuation>,
    share: ShareSpec,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawValuation {
    Additive {
        weights: Vec<f64>,
    },
    UnitDemand {
        weights: Vec<f64>,
    },
    Threshold {
        #[serde(rename = "T")]
        min_size: u32,
    },
    TwoBlock {
        red: Vec<u32>,
        blue: Vec<u32>,
    },
    Nonempty,
    Table {
        values: BTreeMap<String, f64>,
    },
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
    if raw.agents < 2 {
        return Err(Error::domain(format!(
            "instances need at least 2 agents, got {}",
            raw.agents
        )));
    }
    if raw.goods == 0 || raw.goods > MAX_GROUND {
        return Err(Error::domain(format!("good count {} out of range", raw.goods)));
    }
    if raw.valuations.len() != raw.agents {
        return Err(Error::domain(format!(
            "expected {} valuations, found {}",
            raw.agents,
            raw.valuations.len()
        )));
    }
    raw.share.validate()?;
    let valuations = raw
        .valuations
        .into_iter()
        .enumerate()
        .map(|(i, rv)| {
            build_valuation(rv, raw.goods)
                .map_err(|e| Error::parse(format!("valuation for agent {}: {e}", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance { agents: raw.agents, goods: raw.goods, valuations, share: raw.share })
}

fn build_valuation(raw: RawValuation, m: u32) -> Result<Valuation> {
    match raw {
        RawValuation::Additive { weights } => {
            check_weight_count(weights.len(), m)?;
            Valuation::additive(weights)
        }
        RawValuation::UnitDemand { weights } => {
            check_weight_count(weights.len(), m)?;
            Valuation::unit_demand(weights)
        }
        RawValuation::Threshold { min_size } => Valuation::threshold(m, min_size),
        RawValuation::TwoBlock { red, blue } => {
            Valuation::two_block(m, elems_to_subset(&red, m)?, elems_to_subset(&blue, m)?)
        }
        RawValuation::Nonempty => Valuation::nonempty(m),
        RawValuation::Table { values } => {
            let mut map = BTreeMap::new();
            for (key, val) in values {
                map.insert(parse_subset_key(&key, m)?.mask(), val);
            }
            let v = Valuation::table(m, map)?;
            // is_monotone demands a complete table, so sparse input fails here
            if !v.is_monotone()? {
                return Err(Error::malformed("table valuation is not monotone"));
            }
            Ok(v)
        }
    }
}

fn check_weight_count(len: usize, m: u32) -> Result<()> {
    if len != m as usize {
        return Err(Error::domain(format!("weight count {len} does not match {m} goods")));
    }
    Ok(())
}

fn elems_to_subset(elems: &[u32], m: u32) -> Result<Subset> {
    let mut s = Subset::EMPTY;
    for &e in elems {
        if e == 0 || e > m {
            return Err(Error::domain(format!("good index {e} out of range 1..={m}")));
        }
        s = s.with(e);
    }
    Ok(s)
}

/// Parses a subset key: comma-separated good indices, strictly ascending,
/// 1-indexed; the empty string is the empty set.
pub fn parse_subset_key(key: &str, m: u32) -> Result<Subset> {
    if key.is_empty() {
        return Ok(Subset::EMPTY);
    }
    let mut prev = 0u32;
    let mut s = Subset::EMPTY;
    for part in key.split(',') {
        let e: u32 = part
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad good index {part:?} in subset key {key:?}")))?;
        if e == 0 || e > m {
            return Err(Error::parse(format!("good index {e} out of range 1..={m}")));
        }
        if e <= prev {
            return Err(Error::parse(format!(
                "subset key {key:?} must list indices in strictly ascending order"
            )));
        }
        s = s.with(e);
        prev = e;
    }
    Ok(s)
}

/// Inverse of `parse_subset_key`.
pub fn subset_key(s: Subset) -> String {
    s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}
