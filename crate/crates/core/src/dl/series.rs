//! Unipotent / θ-representation labels with witnesses.

use serde::{Deserialize, Serialize};

use super::eval::DlEvaluator;
use super::torus::{theta_w, TorusCharacter, TorusDescriptor};
use super::weyl::weyl_classes;
use super::DlError;
use crate::chartab::ClassFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesLabel {
    Unipotent,
    Theta,
    /// No witness at supported scale. This is inconclusive, not a negative.
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesWitness {
    /// ⟨π, R_{T,θ}⟩ = multiplicity ≠ 0.
    DeligneLusztig { torus: String, character: String, multiplicity: i128 },
    /// Identified through a lifting chain by the caller.
    Chain { note: String },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesClass {
    pub label: SeriesLabel,
    pub witness: SeriesWitness,
}

/// An irreducible already known to carry a label, with how it was obtained.
#[derive(Clone, Debug)]
pub struct ChainWitness {
    pub character: ClassFunction,
    pub label: SeriesLabel,
    pub note: String,
}

fn probe(ev: &DlEvaluator, pi: &ClassFunction, theta: &TorusCharacter) -> Result<Option<SeriesWitness>, DlError> {
    let r = match ev.dl_character(theta) {
        Ok(r) => r,
        Err(DlError::UnsupportedScale(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let m = pi.inner_product(&r)?;
    let m = m.to_integer().ok_or_else(|| DlError::NotRational(m.to_string()))?;
    Ok((m != 0).then(|| SeriesWitness::DeligneLusztig {
        torus: theta.torus.to_string(),
        character: theta.to_string(),
        multiplicity: m,
    }))
}

/// Search supported R_{T_w,1}, then R_{T_w,θ_w}, then the chain witnesses.
pub fn classify_series(ev: &DlEvaluator, pi: &ClassFunction, chains: &[ChainWitness]) -> Result<SeriesClass, DlError> {
    let q = ev.q();
    let tori: Vec<TorusDescriptor> = weyl_classes(ev.rank()).iter().map(TorusDescriptor::from_cycle_type).collect();
    for t in &tori {
        if let Some(w) = probe(ev, pi, &TorusCharacter::trivial(t.clone(), q))? {
            return Ok(SeriesClass { label: SeriesLabel::Unipotent, witness: w });
        }
    }
    for t in &tori {
        if let Some(w) = probe(ev, pi, &theta_w(t, q))? {
            return Ok(SeriesClass { label: SeriesLabel::Theta, witness: w });
        }
    }
    for c in chains {
        if &c.character == pi {
            return Ok(SeriesClass { label: c.label, witness: SeriesWitness::Chain { note: c.note.clone() } });
        }
    }
    Ok(SeriesClass { label: SeriesLabel::Other, witness: SeriesWitness::None })
}
