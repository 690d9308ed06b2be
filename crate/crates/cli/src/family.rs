//! Compact one-line family literals: `M=5;k=2;F1=12,13,23;F2=12,13,23`.
//! Each set token concatenates single-digit elements; sets touching elements
//! of 10 or more switch to dot separation, as in `1.10.12`.

use fairshare_core::error::{Error, Result};
use fairshare_core::extremal::SetFamily;
use fairshare_core::set::Subset;

#[derive(Clone, Debug)]
pub struct FamilyLiteral {
    pub ground: u32,
    pub k: u32,
    pub families: Vec<SetFamily>,
}

pub fn parse_family_literal(text: &str) -> Result<FamilyLiteral> {
    let mut sections = text.split(';');
    let ground = parse_kv(sections.next(), "M")?;
    let k = parse_kv(sections.next(), "k")?;
    let mut families = Vec::new();
    for (i, sec) in sections.enumerate() {
        let want = format!("F{}", i + 1);
        let (key, val) = sec
            .split_once('=')
            .ok_or_else(|| Error::parse(format!("section {sec:?} is not key=value")))?;
        if key.trim() != want {
            return Err(Error::parse(format!(
                "expected section {want}, found {:?}",
                key.trim()
            )));
        }
        families.push(SetFamily::new(ground, k, parse_members(val, ground)?)?);
    }
    if families.is_empty() {
        return Err(Error::parse("literal must list at least one family"));
    }
    Ok(FamilyLiteral { ground, k, families })
}

fn parse_kv(section: Option<&str>, key: &str) -> Result<u32> {
    let sec = section.ok_or_else(|| Error::parse(format!("missing {key}= section")))?;
    let (k, v) = sec
        .split_once('=')
        .ok_or_else(|| Error::parse(format!("section {sec:?} is not key=value")))?;
    if k.trim() != key {
        return Err(Error::parse(format!("expected section {key}, found {:?}", k.trim())));
    }
    v.trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad value {:?} for {key}", v.trim())))
}

fn parse_members(text: &str, ground: u32) -> Result<Vec<Subset>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|tok| parse_set_token(tok.trim(), ground)).collect()
}

pub fn parse_set_token(tok: &str, ground: u32) -> Result<Subset> {
    if tok.is_empty() {
        return Err(Error::parse("empty set token"));
    }
    let elems: Vec<u32> = if tok.contains('.') {
        tok.split('.')
            .map(|d| {
                d.parse()
                    .map_err(|_| Error::parse(format!("bad element {d:?} in token {tok:?}")))
            })
            .collect::<Result<_>>()?
    } else {
        tok.chars()
            .map(|ch| {
                ch.to_digit(10)
                    .ok_or_else(|| Error::parse(format!("bad digit {ch:?} in token {tok:?}")))
            })
            .collect::<Result<_>>()?
    };
    let mut s = Subset::EMPTY;
    for e in elems {
        if e == 0 || e > ground {
            return Err(Error::parse(format!(
                "element {e} in token {tok:?} outside 1..={ground}"
            )));
        }
        if s.contains(e) {
            return Err(Error::parse(format!("duplicate element {e} in token {tok:?}")));
        }
        s = s.with(e);
    }
    Ok(s)
}

/// The empty set renders as an empty token.
pub fn format_set_token(s: Subset) -> String {
    let elems: Vec<u32> = s.iter().collect();
    if elems.iter().any(|e| *e >= 10) {
        elems.iter().map(u32::to_string).collect::<Vec<_>>().join(".")
    } else {
        elems.iter().map(u32::to_string).collect()
    }
}

pub fn format_members(f: &SetFamily) -> String {
    f.members().map(format_set_token).collect::<Vec<_>>().join(",")
}

pub fn format_family_literal(lit: &FamilyLiteral) -> String {
    let mut out = format!("M={};k={}", lit.ground, lit.k);
    for (i, f) in lit.families.iter().enumerate() {
        out.push_str(&format!(";F{}={}", i + 1, format_members(f)));
    }
    out
}
