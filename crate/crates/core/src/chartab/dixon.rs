//! Character tables from the class algebra: common eigenvectors of the class
//! multiplication matrices are found over F_ℓ and lifted to exact cyclotomic
//! values through the power maps.

use std::sync::Arc;

use super::modp::{charpoly, eval, is_prime, nullspace, rref, Mat, Zl};
use super::{check_same, ChartabError, ClassFunction};
use crate::algebra::Cyclotomic;
use crate::groups::GroupTable;

const MAX_SPLIT_ROUNDS: usize = 64;

/// The irreducible characters of a group, trivial character first, then by
/// degree.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<GroupTable>,
    chars: Vec<ClassFunction>,
    lift_prime: u64,
}

/// Smallest prime ℓ ≡ 1 (mod e) with ℓ > bound.
fn lift_prime(e: u64, bound: u64) -> Result<u64, ChartabError> {
    let limit = bound.saturating_mul(1000).max(1 << 20);
    let mut l = e + 1;
    while l <= bound || !is_prime(l) {
        l += e;
        if l > limit {
            return Err(ChartabError::NoLiftPrime(limit));
        }
    }
    Ok(l)
}

/// a[k][j*r + i] = #{x ∈ C_j : x^{-1} z_k ∈ C_i} for the representative z_k of class k.
fn class_constants(g: &GroupTable) -> Vec<Vec<u32>> {
    let r = g.num_classes();
    crate::par::map_range(r, |k| {
        let z = g.class(k).rep;
        let mut a = vec![0u32; r * r];
        for x in 0..g.order() as u32 {
            let j = g.class_of(x);
            let i = g.class_of(g.mul(g.inv(x), z));
            a[j * r + i] += 1;
        }
        a
    })
}

struct Splitter<'a> {
    z: Zl,
    r: usize,
    consts: &'a [Vec<u32>],
}

impl Splitter<'_> {
    /// M = Σ_j c_j M_j with (M_j)_{ik} = a[k][j][i].
    fn combination(&self, c: &[u64]) -> Mat {
        let (z, r) = (self.z, self.r);
        let mut m = vec![vec![0u64; r]; r];
        for k in 0..r {
            for j in 0..r {
                if c[j] == 0 {
                    continue;
                }
                for i in 0..r {
                    let a = self.consts[k][j * r + i] as u64;
                    if a != 0 {
                        m[i][k] = z.add(m[i][k], z.mul(c[j], a % z.l));
                    }
                }
            }
        }
        m
    }

    /// Split an invariant subspace (RREF rows) into eigenspaces of `m`.
    fn split(&self, m: &Mat, basis: &Mat, pivots: &[usize]) -> Result<Vec<(Mat, Vec<usize>)>, ChartabError> {
        let z = self.z;
        let d = basis.len();
        // image of each basis vector, expressed in basis coordinates (pivot entries)
        let images: Vec<Vec<u64>> = basis
            .iter()
            .map(|b| (0..self.r).map(|i| m[i].iter().zip(b).fold(0, |s, (&x, &y)| z.add(s, z.mul(x, y)))).collect())
            .collect();
        let a: Mat = (0..d).map(|s| (0..d).map(|t| images[t][pivots[s]]).collect()).collect();
        let poly = charpoly(z, &a);
        let mut out = Vec::new();
        let mut total = 0;
        for lambda in (0..z.l).filter(|&x| eval(z, &poly, x) == 0) {
            let mut shifted = a.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] = z.sub(row[i], lambda);
            }
            let ns = nullspace(z, &shifted);
            let mut vecs: Mat = ns
                .iter()
                .map(|coords| {
                    let mut v = vec![0u64; self.r];
                    for (t, &c) in coords.iter().enumerate() {
                        if c != 0 {
                            for (x, &b) in v.iter_mut().zip(&basis[t]) {
                                *x = z.add(*x, z.mul(c, b));
                            }
                        }
                    }
                    v
                })
                .collect();
            let piv = rref(z, &mut vecs);
            total += vecs.len();
            out.push((vecs, piv));
        }
        if total != d {
            return Err(ChartabError::SplitFailed(format!("eigenspaces span {total} of {d} dimensions")));
        }
        Ok(out)
    }
}

/// Compute the exact character table of `g`.
pub fn character_table(g: Arc<GroupTable>) -> Result<CharacterTable, ChartabError> {
    let r = g.num_classes();
    let n = g.order();
    let e = g.exponent() as u64;
    let bound = 2 * ((n as f64).sqrt().ceil() as u64) + 1;
    let l = lift_prime(e, bound)?;
    let z = Zl { l };
    let consts = class_constants(&g);
    let sp = Splitter { z, r, consts: &consts };

    let identity: Mat = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut pending = vec![(identity, (0..r).collect::<Vec<_>>())];
    let mut lines: Vec<Vec<u64>> = Vec::new();
    let mut state = 0x5eed_u64 ^ n;
    for _ in 0..MAX_SPLIT_ROUNDS {
        if pending.is_empty() {
            break;
        }
        let coeffs: Vec<u64> = (0..r)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) % l
            })
            .collect();
        let m = sp.combination(&coeffs);
        let mut next = Vec::new();
        for (basis, piv) in &pending {
            for (sub, sp_piv) in sp.split(&m, basis, piv)? {
                if sub.len() == 1 {
                    lines.push(sub.into_iter().next().expect("one row"));
                } else {
                    next.push((sub, sp_piv));
                }
            }
        }
        pending = next;
    }
    if !pending.is_empty() || lines.len() != r {
        return Err(ChartabError::SplitFailed(format!("{} of {r} characters separated", lines.len())));
    }

    let sizes = g.class_sizes();
    let inv_class: Vec<usize> = (0..r).map(|c| g.inverse_class(c)).collect();
    let zeta = z.pow(z.generator(), (l - 1) / e);
    let powers: Vec<Vec<usize>> = (0..r)
        .map(|k| (0..g.class(k).order as i64).map(|j| g.power_class(k, j)).collect())
        .collect();

    let mut chars = Vec::with_capacity(r);
    for w in &lines {
        if w[0] != 1 {
            return Err(ChartabError::LiftFailed("eigenvector not normalized at the identity".into()));
        }
        // Σ_k ω_k ω_{k̄} / h_k = |G| / χ(1)²
        let s = (0..r).fold(0, |acc, k| z.add(acc, z.mul(z.mul(w[k], w[inv_class[k]]), z.inv(sizes[k] % l))));
        let d2 = z.mul(n % l, z.inv(s));
        let deg = z
            .small_sqrt(d2)
            .filter(|&d| d > 0 && n.is_multiple_of(d))
            .ok_or_else(|| ChartabError::LiftFailed(format!("degree square {d2} has no admissible root")))?;
        let modl: Vec<u64> = (0..r).map(|k| z.mul(z.mul(w[k], deg), z.inv(sizes[k] % l))).collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = powers[k].len() as u64;
            let zo = z.pow(zeta, e / o);
            let o_inv = z.inv(o % l);
            let mut mult = Vec::with_capacity(o as usize);
            for t in 0..o {
                let zinv = z.inv(z.pow(zo, t));
                let mut acc = 0;
                let mut step = 1;
                for j in 0..o as usize {
                    acc = z.add(acc, z.mul(modl[powers[k][j]], step));
                    step = z.mul(step, zinv);
                }
                let m = z.mul(acc, o_inv);
                if m > deg {
                    return Err(ChartabError::LiftFailed(format!("eigenvalue multiplicity {m} exceeds degree {deg}")));
                }
                mult.push(m as i128);
            }
            values.push(Cyclotomic::from_exponent_coeffs(o as u32, &mult));
        }
        chars.push(ClassFunction::new(g.clone(), values)?);
    }

    sort_characters(&mut chars, e as u32);
    let table = CharacterTable { group: g, chars, lift_prime: l };
    table.verify_rows()?;
    Ok(table)
}

fn sort_characters(chars: &mut [ClassFunction], e: u32) {
    chars.sort_by_cached_key(|c| {
        let deg = c.degree().to_integer().unwrap_or(0);
        let trivial = c.values().iter().all(|v| *v == Cyclotomic::one());
        let key: Vec<(Vec<i128>, i128)> = c.values().iter().map(|v| v.sort_key(e)).collect();
        (deg, !trivial, key)
    });
}

impl CharacterTable {
    /// Assemble from known irreducibles; orthonormality is checked.
    pub fn from_characters(group: Arc<GroupTable>, mut chars: Vec<ClassFunction>) -> Result<Self, ChartabError> {
        for c in &chars {
            check_same(&group, c.group())?;
        }
        if chars.len() != group.num_classes() {
            return Err(ChartabError::LengthMismatch { expected: group.num_classes(), found: chars.len() });
        }
        sort_characters(&mut chars, group.exponent());
        let t = CharacterTable { group, chars, lift_prime: 0 };
        t.verify_rows()?;
        Ok(t)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }
    pub fn len(&self) -> usize {
        self.chars.len()
    }
    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }
    pub fn characters(&self) -> &[ClassFunction] {
        &self.chars
    }
    pub fn get(&self, i: usize) -> &ClassFunction {
        &self.chars[i]
    }
    /// The auxiliary prime used for the modular computation (0 if imported).
    pub fn lift_prime(&self) -> u64 {
        self.lift_prime
    }
    pub fn degrees(&self) -> Vec<u64> {
        self.chars.iter().map(|c| c.degree().to_integer().expect("integer degree") as u64).collect()
    }
    pub fn index_of(&self, chi: &ClassFunction) -> Option<usize> {
        self.chars.iter().position(|c| c == chi)
    }

    /// Row orthonormality, checked exactly.
    pub fn verify_rows(&self) -> Result<(), ChartabError> {
        let r = self.chars.len();
        let bad = crate::par::map_range(r, |i| {
            (i..r).find(|&j| {
                let ip = self.chars[i].inner_product(&self.chars[j]).expect("same group");
                ip != Cyclotomic::from_int(i128::from(i == j))
            })
            .map(|j| (i, j))
        });
        if let Some((i, j)) = bad.into_iter().flatten().next() {
            return Err(ChartabError::OrthogonalityFailed(format!("rows {i} and {j}")));
        }
        let total: u128 = self.degrees().iter().map(|&d| (d as u128) * (d as u128)).sum();
        if total != self.group.order() as u128 {
            return Err(ChartabError::OrthogonalityFailed(format!("Σ d² = {total}")));
        }
        Ok(())
    }

    /// Column orthogonality Σ_χ χ(a) conj χ(b) = δ_ab |C_G(a)|, checked exactly.
    pub fn verify_columns(&self) -> Result<(), ChartabError> {
        let r = self.chars.len();
        let g = &self.group;
        for a in 0..r {
            for b in a..r {
                let s: Cyclotomic = self.chars.iter().map(|c| c.value(a) * &c.value(b).conj()).sum();
                let expect = if a == b { (g.order() / g.class(a).size) as i128 } else { 0 };
                if s != Cyclotomic::from_int(expect) {
                    return Err(ChartabError::OrthogonalityFailed(format!("columns {a} and {b}")));
                }
            }
        }
        Ok(())
    }

    /// Multiplicities ⟨f, χ_i⟩ for every irreducible, as exact values.
    pub fn inner_products(&self, f: &ClassFunction) -> Result<Vec<Cyclotomic>, ChartabError> {
        self.chars.iter().map(|c| f.inner_product(c)).collect()
    }

    /// Integer multiplicities of a virtual character; errors if any is not integral.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<i128>, ChartabError> {
        self.inner_products(f)?
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.to_integer().ok_or_else(|| ChartabError::NonIntegral(format!("component {i}: {v}"))))
            .collect()
    }

    /// Whether f is a genuine character (all multiplicities are non-negative integers).
    pub fn is_character(&self, f: &ClassFunction) -> bool {
        self.decompose(f).map(|m| m.iter().all(|&x| x >= 0)).unwrap_or(false)
    }

    /// Indices of irreducible characters of a given degree.
    pub fn of_degree(&self, d: u64) -> Vec<usize> {
        self.degrees().iter().enumerate().filter(|(_, &x)| x == d).map(|(i, _)| i).collect()
    }
}
