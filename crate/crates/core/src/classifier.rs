//! Classification of finitely generated subgroups `H` of `G_mu ~= D_inf`.
//!
//! Every such subgroup is trivial, `<g_d>`, `{e, f_k}` or `<f_k, g_d>`.
//! Reflection indices are canonicalised to `0 <= k < d` in the dihedral case.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dihedral::{f_of, g_of, DihedralNF, GmuElement};
use crate::error::{Error, Result};
use crate::exact::{self, gcd_all};

/// Largest word length accepted by [`enumerate_closure`].
pub const MAX_CLOSURE_WORD_LEN: usize = 16;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneratorSet(pub Vec<GmuElement>);

impl GeneratorSet {
    pub fn new(gens: Vec<GmuElement>) -> Self {
        Self(gens)
    }

    pub fn elements(&self) -> &[GmuElement] {
        &self.0
    }

    pub fn conjugate_by(&self, h: &GmuElement) -> Result<GeneratorSet> {
        self.0.iter().map(|g| g.conjugate_by(h)).collect::<Result<_>>().map(GeneratorSet)
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for GeneratorSet {
    type Err = Error;

    /// Comma-separated `f<k>` / `g<n>` tokens, e.g. `f0,f3` or `g-4,f1`.
    /// Blank input is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(GeneratorSet::default());
        }
        let mut gens = Vec::new();
        let mut pos = 0;
        for raw in s.split(',') {
            let lead = raw.len() - raw.trim_start().len();
            let token = raw.trim();
            let at = pos + lead;
            pos += raw.len() + 1;
            let mut chars = token.chars();
            let make: fn(i64) -> GmuElement = match chars.next() {
                Some('f') => f_of,
                Some('g') => g_of,
                Some(c) => {
                    return Err(Error::Parse { pos: at, msg: format!("expected 'f' or 'g', found '{c}'") });
                }
                None => return Err(Error::Parse { pos: at, msg: "empty generator".into() }),
            };
            let index = chars.as_str();
            let k = index
                .parse::<i64>()
                .map_err(|_| Error::Parse { pos: at + 1, msg: format!("invalid index '{index}'") })?;
            gens.push(make(k));
        }
        Ok(GeneratorSet(gens))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum SubgroupClass {
    Trivial,
    /// `<g_d>`, `d >= 1`.
    CyclicZ { d: i64 },
    /// `{e, f_k}`.
    OrderTwo { k: i64 },
    /// `<f_k, g_d>` with `d >= 1` and `0 <= k < d`.
    DihedralInf { k: i64, d: i64 },
}

impl fmt::Display for SubgroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupClass::Trivial => write!(f, "trivial"),
            SubgroupClass::CyclicZ { d } => write!(f, "Z d={d}"),
            SubgroupClass::OrderTwo { k } => write!(f, "Z2 k={k}"),
            SubgroupClass::DihedralInf { k, d } => write!(f, "Dinf k={k} d={d}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsoType {
    Trivial,
    Z,
    Z2,
    Dinf,
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IsoType::Trivial => "trivial",
            IsoType::Z => "Z",
            IsoType::Z2 => "Z2",
            IsoType::Dinf => "Dinf",
        };
        f.write_str(s)
    }
}

pub fn isomorphism_type(cls: &SubgroupClass) -> IsoType {
    match cls {
        SubgroupClass::Trivial => IsoType::Trivial,
        SubgroupClass::CyclicZ { .. } => IsoType::Z,
        SubgroupClass::OrderTwo { .. } => IsoType::Z2,
        SubgroupClass::DihedralInf { .. } => IsoType::Dinf,
    }
}

/// The twist subgroup is generated by the `g_n` and the differences
/// `k_i - k_0` of reflection indices, so `d` is their gcd.
pub fn classify(gens: &GeneratorSet) -> Result<SubgroupClass> {
    let mut reflections = Vec::new();
    let mut twists = Vec::new();
    for g in gens.elements() {
        let nf = g.nf();
        if nf.refl {
            reflections.push(nf.n);
        } else {
            twists.push(nf.n);
        }
    }

    let Some(&k0) = reflections.first() else {
        let d = gcd_all(twists)?;
        return Ok(if d == 0 { SubgroupClass::Trivial } else { SubgroupClass::CyclicZ { d } });
    };

    let diffs = reflections
        .iter()
        .map(|&k| exact::sub(k, k0, "classify"))
        .collect::<Result<Vec<_>>>()?;
    let d = gcd_all(diffs.into_iter().chain(twists))?;
    if d == 0 {
        Ok(SubgroupClass::OrderTwo { k: k0 })
    } else {
        Ok(SubgroupClass::DihedralInf { k: k0.rem_euclid(d), d })
    }
}

pub fn member(cls: &SubgroupClass, x: &GmuElement) -> bool {
    member_nf(cls, x.nf())
}

pub fn member_nf(cls: &SubgroupClass, nf: DihedralNF) -> bool {
    if nf.is_identity() {
        return true;
    }
    match (*cls, nf.refl) {
        (SubgroupClass::CyclicZ { d }, false) | (SubgroupClass::DihedralInf { d, .. }, false) => nf.n % d == 0,
        (SubgroupClass::OrderTwo { k }, true) => nf.n == k,
        (SubgroupClass::DihedralInf { k, d }, true) => (nf.n as i128 - k as i128) % d as i128 == 0,
        _ => false,
    }
}

/// All products of at most `max_word_len` generators and their inverses,
/// deduplicated by normal form. Breadth-first with one frontier per length.
pub fn enumerate_closure(gens: &GeneratorSet, max_word_len: usize) -> Result<BTreeSet<DihedralNF>> {
    if max_word_len > MAX_CLOSURE_WORD_LEN {
        return Err(Error::ClosureBound(max_word_len));
    }
    let mut letters: Vec<DihedralNF> = Vec::new();
    for g in gens.elements() {
        letters.push(g.nf());
        letters.push(g.nf().inverse()?);
    }
    letters.sort();
    letters.dedup();

    let mut seen = BTreeSet::from([DihedralNF::IDENTITY]);
    let mut frontier = vec![DihedralNF::IDENTITY];
    for _ in 0..max_word_len {
        let mut next = Vec::new();
        for x in &frontier {
            for l in &letters {
                let y = x.mul(l)?;
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(seen)
}

/// Canonical generators of the class: `[]`, `[g_d]`, `[f_k]` or `[f_k, g_d]`.
pub fn canonical_generators(cls: &SubgroupClass) -> GeneratorSet {
    GeneratorSet(match *cls {
        SubgroupClass::Trivial => vec![],
        SubgroupClass::CyclicZ { d } => vec![g_of(d)],
        SubgroupClass::OrderTwo { k } => vec![f_of(k)],
        SubgroupClass::DihedralInf { k, d } => vec![f_of(k), g_of(d)],
    })
}
