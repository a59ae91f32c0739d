//! JSON form of character tables. Coefficients are decimal strings so that
//! 128-bit values survive any JSON reader.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ChartabError, CharacterTable, ClassFunction};
use crate::algebra::Cyclotomic;
use crate::groups::{GroupDescriptor, GroupTable};

pub const SCHEMA: &str = "theta-chartab/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub conductor: u32,
    pub den: String,
    pub num: Vec<String>,
}

impl From<&Cyclotomic> for CyclotomicJson {
    fn from(c: &Cyclotomic) -> Self {
        CyclotomicJson {
            conductor: c.conductor(),
            den: c.denominator().to_string(),
            num: c.numerators().iter().map(|x| x.to_string()).collect(),
        }
    }
}

impl TryFrom<&CyclotomicJson> for Cyclotomic {
    type Error = ChartabError;
    fn try_from(j: &CyclotomicJson) -> Result<Self, ChartabError> {
        let parse = |s: &str| s.parse::<i128>().map_err(|e| ChartabError::BadData(format!("{s}: {e}")));
        let num = j.num.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
        Cyclotomic::from_parts(j.conductor, num, parse(&j.den)?)
            .ok_or_else(|| ChartabError::BadData(format!("bad cyclotomic with conductor {}", j.conductor)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub size: u64,
    pub order: u32,
    /// Representative matrix entries, row-major.
    pub rep: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub degree: u64,
    pub values: Vec<CyclotomicJson>,
    pub display: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTableJson {
    pub schema: String,
    pub group: GroupDescriptor,
    pub label: String,
    pub order: u64,
    pub classes: Vec<ClassJson>,
    pub characters: Vec<CharacterJson>,
}

impl CharacterTable {
    pub fn to_json(&self) -> CharacterTableJson {
        let g = self.group();
        CharacterTableJson {
            schema: SCHEMA.to_string(),
            group: g.descriptor().clone(),
            label: g.label(),
            order: g.order(),
            classes: g
                .classes()
                .iter()
                .map(|c| ClassJson { size: c.size, order: c.order, rep: g.elem_slice(c.rep).to_vec() })
                .collect(),
            characters: self
                .characters()
                .iter()
                .map(|c| CharacterJson {
                    degree: c.degree().to_integer().unwrap_or(0) as u64,
                    values: c.values().iter().map(CyclotomicJson::from).collect(),
                    display: c.values().iter().map(|v| v.to_string()).collect(),
                })
                .collect(),
        }
    }

    /// Rebuild a table against an already-built group; class data must match.
    pub fn from_json(group: Arc<GroupTable>, j: &CharacterTableJson) -> Result<Self, ChartabError> {
        if j.schema != SCHEMA {
            return Err(ChartabError::BadData(format!("schema {}", j.schema)));
        }
        if &j.group != group.descriptor() || j.classes.len() != group.num_classes() {
            return Err(ChartabError::GroupMismatch(j.label.clone(), group.label()));
        }
        for (c, cj) in group.classes().iter().zip(&j.classes) {
            if group.elem_slice(c.rep) != cj.rep.as_slice() || c.size != cj.size {
                return Err(ChartabError::BadData("class representatives differ".into()));
            }
        }
        let chars = j
            .characters
            .iter()
            .map(|cj| {
                let values = cj.values.iter().map(Cyclotomic::try_from).collect::<Result<Vec<_>, _>>()?;
                ClassFunction::new(group.clone(), values)
            })
            .collect::<Result<Vec<_>, _>>()?;
        CharacterTable::from_characters(group, chars)
    }
}
