//! Shared, memoized prerequisites for the suites: group tables, character
//! tables, Deligne-Lusztig evaluators and dual-pair decompositions.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use theta_core::algebra::{AddChar, Cyclotomic, Field, FieldSpec, FqMatrix};
use theta_core::chartab::{
    character_table, is_cuspidal, maximal_parabolics, CharacterTable, CharacterTableJson, ClassFunction,
};
use theta_core::dl::DlEvaluator;
use theta_core::groups::{build_group, persist, DualPairEmbedding, Family, GroupDescriptor, GroupTable, ParabolicData, Sign};
use theta_core::weil::{decompose_dual_pair, pair_character, MultiplicityMatrix};

use crate::cache::Cache;
use crate::config::RunConfig;
use crate::{Result, VerifyError, CODE_VERSION};

/// One slot per key, so concurrent suites wait for a table in progress
/// instead of computing it twice.
type Memo<K, V> = Mutex<HashMap<K, Arc<Mutex<Option<Arc<V>>>>>>;
type PairKey = (GroupDescriptor, GroupDescriptor, bool, bool);

pub struct Context {
    cfg: RunConfig,
    cache: Option<Cache>,
    groups: Memo<GroupDescriptor, GroupTable>,
    tables: Memo<GroupDescriptor, CharacterTable>,
    evaluators: Memo<GroupDescriptor, DlEvaluator>,
    parabolics: Memo<GroupDescriptor, Vec<ParabolicData>>,
    decompositions: Memo<PairKey, MultiplicityMatrix>,
}

fn memo<K: Eq + Hash + Clone, V>(m: &Memo<K, V>, k: &K, make: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
    let slot = m.lock().expect("memo lock").entry(k.clone()).or_default().clone();
    let mut slot = slot.lock().expect("memo slot");
    if let Some(v) = slot.as_ref() {
        return Ok(v.clone());
    }
    let v = Arc::new(make()?);
    *slot = Some(v.clone());
    Ok(v)
}

fn describe<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("descriptors serialize")
}

pub fn field_spec(q: u32) -> FieldSpec {
    FieldSpec { p: q as u8, k: 1 }
}
pub fn sp(n: usize, q: u32) -> GroupDescriptor {
    GroupDescriptor::sp(n as u32, field_spec(q))
}
/// O^ε_{2n'+1}.
pub fn odd_o(np: usize, eps: Sign, q: u32) -> GroupDescriptor {
    GroupDescriptor::orthogonal(2 * np as u32 + 1, eps, field_spec(q))
}
/// SO^ε_{2n'+1}.
pub fn odd_so(np: usize, eps: Sign, q: u32) -> GroupDescriptor {
    GroupDescriptor::special_orthogonal(2 * np as u32 + 1, eps, field_spec(q))
}

/// O^-_{2n+1} and SO^-_{2n+1} are the same matrix groups as their + twins;
/// only the form differs, so they share enumeration and character table.
fn plus_twin(d: &GroupDescriptor) -> Option<GroupDescriptor> {
    let odd_orth = matches!(d.family, Family::O | Family::SO) && d.dim % 2 == 1;
    (odd_orth && d.eps == Some(Sign::Minus)).then(|| GroupDescriptor { eps: Some(Sign::Plus), ..d.clone() })
}

impl Context {
    pub fn new(cfg: RunConfig) -> Result<Self> {
        cfg.validate()?;
        let cache = cfg.cache_root().map(Cache::new).transpose()?;
        Ok(Context {
            cfg,
            cache,
            groups: Mutex::default(),
            tables: Mutex::default(),
            evaluators: Mutex::default(),
            parabolics: Mutex::default(),
            decompositions: Mutex::default(),
        })
    }

    pub fn config(&self) -> &RunConfig {
        &self.cfg
    }

    pub fn psi(&self, q: u32) -> AddChar {
        if self.cfg.psi_twist {
            AddChar::twisted(&Field::prime(q as u8).expect("validated prime"))
        } else {
            AddChar::standard()
        }
    }

    fn check_budget(d: &GroupDescriptor, budget: u64, what: &str) -> Result<()> {
        match d.expected_order() {
            Some(order) if order > budget as u128 => {
                Err(VerifyError::BudgetExceeded { what: format!("{what} of {}", d.label()), order, budget })
            }
            _ => Ok(()),
        }
    }

    /// Whether the character table of `d` fits the table budget.
    pub fn table_fits(&self, d: &GroupDescriptor) -> bool {
        Self::check_budget(d, self.cfg.table_budget, "table").is_ok()
    }

    pub fn group(&self, d: &GroupDescriptor) -> Result<Arc<GroupTable>> {
        memo(&self.groups, d, || {
            if let Some(plus) = plus_twin(d) {
                let f = Field::prime(d.field.p)?;
                return Ok((*self.group(&plus)?).clone().with_descriptor(d.clone(), d.space(&f)));
            }
            Self::check_budget(d, self.cfg.budget, "enumeration")?;
            let key = describe(d);
            if let Some(bytes) = self.cache.as_ref().and_then(|c| c.get("group", &key)) {
                if let Ok(t) = persist::from_bytes(&bytes, CODE_VERSION) {
                    return Ok(t);
                }
            }
            let t = build_group(d, self.cfg.budget)?;
            if let Some(c) = &self.cache {
                c.put("group", &key, &persist::to_bytes(&t, CODE_VERSION))?;
            }
            Ok(t)
        })
    }

    pub fn table(&self, d: &GroupDescriptor) -> Result<Arc<CharacterTable>> {
        memo(&self.tables, d, || {
            Self::check_budget(d, self.cfg.table_budget, "character table")?;
            let g = self.group(d)?;
            if let Some(plus) = plus_twin(d) {
                let base = self.table(&plus)?;
                let chars = base.characters().iter().map(|c| ClassFunction::new(g.clone(), c.values().to_vec()));
                return Ok(CharacterTable::from_characters(g.clone(), chars.collect::<std::result::Result<_, _>>()?)?);
            }
            let key = describe(d);
            if let Some(bytes) = self.cache.as_ref().and_then(|c| c.get("chartab", &key)) {
                if let Ok(j) = serde_json::from_slice::<CharacterTableJson>(&bytes) {
                    if let Ok(t) = CharacterTable::from_json(g.clone(), &j) {
                        return Ok(t);
                    }
                }
            }
            let t = character_table(g)?;
            if let Some(c) = &self.cache {
                c.put("chartab", &key, &serde_json::to_vec(&t.to_json())?)?;
            }
            Ok(t)
        })
    }

    pub fn evaluator(&self, d: &GroupDescriptor) -> Result<Arc<DlEvaluator>> {
        memo(&self.evaluators, d, || Ok(DlEvaluator::new(self.group(d)?)?))
    }

    /// Cuspidality; for O_{2n+1} = SO_{2n+1} × {±I} it is read off SO_{2n+1}.
    pub fn is_cuspidal(&self, pi: &ClassFunction) -> Result<bool> {
        let g = pi.group();
        let d = g.descriptor();
        if d.family == Family::O && d.dim % 2 == 1 {
            let so = self.group(&so_of(d))?;
            return self.is_cuspidal(&transport(pi, &so)?);
        }
        if g.dim() <= 1 {
            return Ok(true);
        }
        let ps = memo(&self.parabolics, g.descriptor(), || Ok(maximal_parabolics(g)?))?;
        Ok(is_cuspidal(g, pi, &ps)?)
    }

    /// ω for Sp_{2n} × O(V'), decomposed; the symplectic group is the left factor.
    pub fn decomposition(&self, sp_d: &GroupDescriptor, o_d: &GroupDescriptor) -> Result<Arc<MultiplicityMatrix>> {
        let key = (sp_d.clone(), o_d.clone(), self.cfg.psi_twist, self.cfg.linear_orthogonal);
        memo(&self.decompositions, &key, || {
            let mm = self.weil_decomposition(sp_d, o_d)?;
            if !self.cfg.linear_orthogonal || !model_twist(sp_d.field.q(), sp_d.dim as usize / 2) {
                return Ok(mm);
            }
            let s = sgn(mm.right.group());
            let perm = mm
                .right
                .characters()
                .iter()
                .map(|c| index_of(&mm.right, &c.mul(&s)?))
                .collect::<Result<Vec<_>>>()?;
            let entries = mm.entries.iter().map(|row| perm.iter().map(|&j| row[j]).collect()).collect();
            Ok(MultiplicityMatrix { entries, ..mm })
        })
    }

    fn weil_decomposition(&self, sp_d: &GroupDescriptor, o_d: &GroupDescriptor) -> Result<MultiplicityMatrix> {
        let key = (sp_d.clone(), o_d.clone(), self.cfg.psi_twist);
        let (lt, rt) = (self.table(sp_d)?, self.table(o_d)?);
        let desc = describe(&key);
        if let Some(bytes) = self.cache.as_ref().and_then(|c| c.get("theta", &desc)) {
            if let Ok(entries) = serde_json::from_slice::<Vec<Vec<u64>>>(&bytes) {
                let total_dim = (sp_d.field.q() as u128).pow(sp_d.dim / 2 * o_d.dim);
                let mm = MultiplicityMatrix { left: lt.clone(), right: rt.clone(), entries, total_dim };
                if mm.check_dimension().is_ok() {
                    return Ok(mm);
                }
            }
        }
        let (l, r) = (lt.group(), rt.group());
        let emb = DualPairEmbedding::new(
            l.space().expect("symplectic groups carry a form"),
            r.space().expect("orthogonal groups carry a form"),
            l.field(),
        )?;
        let theta = pair_character(&emb, l, r, self.psi(sp_d.field.q()))?;
        let mm = decompose_dual_pair(&theta, &lt, &rt)?;
        if let Some(c) = &self.cache {
            c.put("theta", &desc, &serde_json::to_vec(&mm.entries)?)?;
        }
        Ok(mm)
    }
}

/// Whether ω on O(V) at Sp_2n differs from the linear action, by sgn.
pub fn model_twist(q: u32, n: usize) -> bool {
    q % 4 == 3 && n % 2 == 1
}

fn index_of(t: &CharacterTable, c: &ClassFunction) -> Result<usize> {
    t.characters()
        .iter()
        .position(|x| x == c)
        .ok_or_else(|| VerifyError::Core(format!("twisted character is not irreducible on {}", t.group().label())))
}

/// A class function moved to a table of the same or a smaller matrix group.
pub fn transport(f: &ClassFunction, target: &Arc<GroupTable>) -> Result<ClassFunction> {
    let src = f.group();
    let mut missing = false;
    let out = ClassFunction::from_rep(target.clone(), |pos| match src.position(&target.element(pos)) {
        Some(p) => f.at(p).clone(),
        None => {
            missing = true;
            Cyclotomic::zero()
        }
    });
    if missing {
        return Err(VerifyError::Core(format!("{} is not contained in {}", target.label(), src.label())));
    }
    Ok(out)
}

fn det_sign(m: &FqMatrix, f: &Field) -> i128 {
    if m.det(f) == 1 {
        1
    } else {
        -1
    }
}

/// The determinant character of an orthogonal group.
pub fn sgn(o: &Arc<GroupTable>) -> ClassFunction {
    let f = o.field().clone();
    ClassFunction::from_rep(o.clone(), |pos| Cyclotomic::from_int(det_sign(&o.element(pos), &f)))
}

/// σ ⊗ (±1 on −I) on O_{2n'+1} = SO_{2n'+1} × {±I}.
pub fn extend_from_so(sigma: &ClassFunction, o: &Arc<GroupTable>, central: i128) -> Result<ClassFunction> {
    let so = sigma.group();
    let f = o.field().clone();
    let minus = f.neg(1);
    let mut missing = false;
    let out = ClassFunction::from_rep(o.clone(), |pos| {
        let m = o.element(pos);
        let (m, s) = if det_sign(&m, &f) == 1 { (m, 1) } else { (m.scale(minus, &f), central) };
        match so.position(&m) {
            Some(p) => sigma.at(p).scale(s, 1),
            None => {
                missing = true;
                Cyclotomic::zero()
            }
        }
    });
    if missing {
        return Err(VerifyError::Core(format!("{} does not sit inside {}", so.label(), o.label())));
    }
    Ok(out)
}

/// The SO table matching an odd orthogonal table.
pub fn so_of(o: &GroupDescriptor) -> GroupDescriptor {
    debug_assert_eq!(o.family, Family::O);
    GroupDescriptor::special_orthogonal(o.dim, o.eps.unwrap_or(Sign::Plus), o.field)
}

/// Value at −I divided by the degree: the central sign of an irreducible.
pub fn central_sign(pi: &ClassFunction) -> Option<i128> {
    let g = pi.group();
    let f = g.field();
    let pos = g.position(&FqMatrix::scalar(g.dim(), f.neg(1)))?;
    let v = pi.at(pos).to_rational()?;
    let d = pi.degree().to_integer()?;
    (v.1 == 1 && d != 0 && v.0 % d == 0).then(|| v.0 / d)
}

/// Parse `Sp4`, `O5+`, `SO3-` and the like at field size q.
pub fn parse_group(spec: &str, q: u32) -> Result<GroupDescriptor> {
    let bad = || VerifyError::InvalidConfig(format!("unrecognised group `{spec}`; expected e.g. Sp4, O5+, SO3-"));
    let s = spec.trim();
    let (family, rest) = if let Some(r) = s.strip_prefix("Sp") {
        (Family::Sp, r)
    } else if let Some(r) = s.strip_prefix("SO") {
        (Family::SO, r)
    } else if let Some(r) = s.strip_prefix('O') {
        (Family::O, r)
    } else {
        return Err(bad());
    };
    let (digits, eps) = match rest.strip_suffix('+') {
        Some(d) => (d, Some(Sign::Plus)),
        None => match rest.strip_suffix('-') {
            Some(d) => (d, Some(Sign::Minus)),
            None => (rest, None),
        },
    };
    let dim: u32 = digits.parse().map_err(|_| bad())?;
    let fs = field_spec(q);
    match (family, eps) {
        (Family::Sp, None) if dim.is_multiple_of(2) => Ok(GroupDescriptor::sp(dim / 2, fs)),
        (Family::O, e) => Ok(GroupDescriptor::orthogonal(dim, e.unwrap_or(Sign::Plus), fs)),
        (Family::SO, e) => Ok(GroupDescriptor::special_orthogonal(dim, e.unwrap_or(Sign::Plus), fs)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_specs() {
        assert_eq!(parse_group("Sp4", 3).unwrap(), sp(2, 3));
        assert_eq!(parse_group("O5-", 3).unwrap(), odd_o(2, Sign::Minus, 3));
        assert_eq!(parse_group("SO3", 5).unwrap(), odd_so(1, Sign::Plus, 5));
        for s in ["Sp3", "GL2", "O", "SOx+"] {
            assert!(parse_group(s, 3).is_err(), "{s}");
        }
    }
}
