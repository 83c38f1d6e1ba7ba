//! JSON wire formats shared by fixture files and the command-line front
//! end.
//!
//! A group is encoded by its cyclic factors, an element or character by its
//! exponent vector over those factors, a datum by group plus generator and
//! character lists, and a parameter family by a map from `"i,j"` root keys
//! to scalar text in the form produced by [`Scalar`]'s display (for example
//! `1/2 + 3*z^2`, with `z` the primitive root of unity of the ambient
//! conductor). Loading a datum chooses the conductor to be the group
//! exponent, so two files describing isomorphic groups land in the same
//! cyclotomic context and their scalars can be compared directly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloContext, Scalar};
use crate::datum::{CartanDatum, Root};
use crate::group::FiniteAbelianGroup;
use crate::iso::{DiagramPart, IsoWitness};
use crate::params::ParamFamily;
use crate::{Error, Result};

/// Group wire form: `{"factors":[9,3]}` for Z/9 x Z/3.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupWire {
    pub factors: Vec<u64>,
}

/// Element wire form: `{"exp":[1,1]}`, exponents over the group factors.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ElementWire {
    pub exp: Vec<i64>,
}

/// Character wire form: `{"exp":[3,3]}`, meaning the character sends an
/// element with exponents b to zeta_L^{sum a_t b_t L/m_t}.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CharacterWire {
    pub exp: Vec<i64>,
}

/// Datum wire form: group, generator list, character list.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DatumWire {
    pub group: GroupWire,
    pub g: Vec<ElementWire>,
    pub chi: Vec<CharacterWire>,
}

/// Parameter family wire form: `{"entries":{"1,3":"<scalar-text>"}}`.
/// Roots not listed default to zero.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct MuWire {
    #[serde(default)]
    pub entries: BTreeMap<String, String>,
}

/// One isomorphism witness: which diagram map was used (`"id"` or
/// `"sigma"`), the group isomorphism as the list of images of the source
/// generators, the forced scaling values t_ij on the support, and the rank
/// of the unconstrained part of the scaling torus.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessWire {
    pub rho: String,
    pub phi: PhiWire,
    pub t: BTreeMap<String, String>,
    pub free_rank: usize,
}

/// Group homomorphism wire form: images of the source generators in order.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PhiWire {
    pub images: Vec<ElementWire>,
}

/// Isomorphism verdict: true together with the full witness list, or false
/// with none.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerdictWire {
    pub isomorphic: bool,
    pub witnesses: Vec<WitnessWire>,
}

fn exps_to_i64(exps: &[u64]) -> Vec<i64> {
    exps.iter().map(|&e| e as i64).collect()
}

/// Builds a datum from its wire form, placing it in the cyclotomic context
/// of conductor equal to the group exponent.
pub fn load_datum(wire: &DatumWire) -> Result<CartanDatum> {
    let group = FiniteAbelianGroup::new(wire.factors().to_vec())?;
    let ctx = CycloContext::new(group.exponent());
    let rank = group.rank();
    let check_len = |what: &str, len: usize| -> Result<()> {
        if len != rank {
            return Err(Error::BadInput(format!(
                "{what} exponent vector has length {len}, expected {rank}"
            )));
        }
        Ok(())
    };
    let mut g = Vec::with_capacity(wire.g.len());
    for e in &wire.g {
        check_len("generator", e.exp.len())?;
        g.push(group.element(&e.exp));
    }
    let mut chi = Vec::with_capacity(wire.chi.len());
    for c in &wire.chi {
        check_len("character", c.exp.len())?;
        chi.push(group.character(&c.exp));
    }
    CartanDatum::build(&ctx, group, g, chi)
}

impl DatumWire {
    fn factors(&self) -> &[u64] {
        &self.group.factors
    }
}

/// Serializes a datum back into its wire form.
pub fn save_datum(d: &CartanDatum) -> DatumWire {
    DatumWire {
        group: GroupWire {
            factors: d.group().factors().to_vec(),
        },
        g: (1..=d.n())
            .map(|i| ElementWire {
                exp: exps_to_i64(d.g(i).exps()),
            })
            .collect(),
        chi: (1..=d.n())
            .map(|i| CharacterWire {
                exp: exps_to_i64(d.chi(i).exps()),
            })
            .collect(),
    }
}

/// Parses a root key of the form `"i,j"`.
pub fn parse_root_key(key: &str) -> Result<Root> {
    let mut parts = key.split(',');
    let bad = || Error::BadInput(format!("root key {key:?} is not of the form \"i,j\""));
    let i = parts
        .next()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .ok_or_else(bad)?;
    let j = parts
        .next()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Root::new(i, j)
}

/// Formats a root as the wire key `"i,j"`.
pub fn root_key(r: Root) -> String {
    format!("{},{}", r.i(), r.j())
}

/// Builds a parameter family from its wire form in the datum's context,
/// rejecting roots outside the datum's positive-root range.
pub fn load_family(d: &CartanDatum, wire: &MuWire) -> Result<ParamFamily> {
    let mut mu = ParamFamily::zero();
    for (key, text) in &wire.entries {
        let r = parse_root_key(key)?;
        if r.j() > d.n() + 1 {
            return Err(Error::BadInput(format!(
                "root ({}, {}) lies outside a rank-{} datum",
                r.i(),
                r.j(),
                d.n()
            )));
        }
        mu.set(r, Scalar::parse(d.context(), text)?);
    }
    Ok(mu)
}

/// Serializes a parameter family into its wire form: nonzero entries only.
pub fn save_family(mu: &ParamFamily) -> MuWire {
    MuWire {
        entries: mu
            .entries()
            .map(|(r, v)| (root_key(*r), v.to_string()))
            .collect(),
    }
}

/// Serializes an isomorphism verdict with its witness list.
pub fn save_verdict(witnesses: &[IsoWitness]) -> VerdictWire {
    VerdictWire {
        isomorphic: !witnesses.is_empty(),
        witnesses: witnesses
            .iter()
            .map(|w| WitnessWire {
                rho: match w.rho {
                    DiagramPart::Identity => "id".to_string(),
                    DiagramPart::Sigma => "sigma".to_string(),
                },
                phi: PhiWire {
                    images: w
                        .phi
                        .images()
                        .iter()
                        .map(|e| ElementWire {
                            exp: exps_to_i64(e.exps()),
                        })
                        .collect(),
                },
                t: w.scaling
                    .required()
                    .iter()
                    .map(|(r, v)| (root_key(*r), v.to_string()))
                    .collect(),
                free_rank: w.scaling.free_rank(),
            })
            .collect(),
    }
}
