//! Maximal tori T_w and their characters.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::weyl::{SignedCycle, SignedCycleType};
use crate::algebra::Cyclotomic;
use crate::groups::Sign;

/// GL_1(q^a) for a positive cycle of length a, U_1(q^a) for a negative one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusFactor {
    pub degree: usize,
    pub sign: Sign,
}

impl TorusFactor {
    pub fn order(&self, q: u64) -> u64 {
        let qa = q.pow(self.degree as u32);
        match self.sign {
            Sign::Plus => qa - 1,
            Sign::Minus => qa + 1,
        }
    }
    /// The exponent of the unique order-2 character: (q^a ∓ 1)/2.
    pub fn quadratic_exponent(&self, q: u64) -> u64 {
        self.order(q) / 2
    }
}

impl fmt::Display for TorusFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.sign == Sign::Plus { "GL1" } else { "U1" };
        if self.degree == 1 {
            write!(f, "{name}(q)")
        } else {
            write!(f, "{name}(q^{})", self.degree)
        }
    }
}

/// An F-stable maximal torus, as an ordered list of factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusDescriptor {
    pub factors: Vec<TorusFactor>,
}

impl TorusDescriptor {
    pub fn from_cycle_type(w: &SignedCycleType) -> Self {
        TorusDescriptor { factors: w.cycles().iter().map(|c| TorusFactor { degree: c.len, sign: c.sign }).collect() }
    }
    /// The split torus T_l = GL_1(q)^l.
    pub fn split(l: usize) -> Self {
        TorusDescriptor { factors: vec![TorusFactor { degree: 1, sign: Sign::Plus }; l] }
    }
    pub fn cycle_type(&self) -> SignedCycleType {
        SignedCycleType::new(self.factors.iter().map(|f| SignedCycle { len: f.degree, sign: f.sign }).collect())
    }
    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.degree).sum()
    }
    pub fn epsilon(&self) -> Sign {
        self.factors.iter().fold(Sign::Plus, |acc, f| acc * f.sign)
    }
    pub fn order(&self, q: u64) -> u64 {
        self.factors.iter().map(|f| f.order(q)).product()
    }
    pub fn is_split(&self) -> bool {
        self.factors.iter().all(|f| f.degree == 1 && f.sign == Sign::Plus)
    }
    /// T × T' with factors of `self` first.
    pub fn product(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        TorusDescriptor { factors }
    }
}

impl fmt::Display for TorusDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// θ = ⊗ ν_i^{e_i}, where ν_i identifies factor i with the roots of unity of
/// order |factor i|.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusCharacter {
    pub torus: TorusDescriptor,
    pub exponents: Vec<u64>,
    pub q: u64,
}

impl TorusCharacter {
    pub fn new(torus: TorusDescriptor, exponents: Vec<u64>, q: u64) -> Self {
        assert_eq!(torus.factors.len(), exponents.len(), "one exponent per factor");
        let exponents = torus.factors.iter().zip(exponents).map(|(f, e)| e % f.order(q)).collect();
        TorusCharacter { torus, exponents, q }
    }
    pub fn trivial(torus: TorusDescriptor, q: u64) -> Self {
        let n = torus.factors.len();
        Self::new(torus, vec![0; n], q)
    }
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
    /// The value at the element whose factor coordinates are ν_i^{-1}(ζ^{j_i}).
    pub fn value(&self, logs: &[u64]) -> Cyclotomic {
        let mut out = Cyclotomic::one();
        for ((f, &e), &j) in self.torus.factors.iter().zip(&self.exponents).zip(logs) {
            let m = f.order(self.q);
            let k = (e as u128 * j as u128 % m as u128) as i64;
            out = &out * &Cyclotomic::root_of_unity(m as u32, k);
        }
        out
    }
    /// θ ⊗ θ' on T × T'.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q);
        let mut e = self.exponents.clone();
        e.extend_from_slice(&other.exponents);
        Self::new(self.torus.product(&other.torus), e, self.q)
    }
    /// Pointwise product on the same torus.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.torus, other.torus);
        let e = self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect();
        Self::new(self.torus.clone(), e, self.q)
    }
    /// All characters of the torus.
    pub fn all(torus: &TorusDescriptor, q: u64) -> Vec<Self> {
        let mut out = vec![Vec::new()];
        for f in &torus.factors {
            let m = f.order(q);
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    (0..m).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|e| Self::new(torus.clone(), e, q)).collect()
    }
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.exponents.iter().map(|x| x.to_string()).collect();
        write!(f, "{}[{}]", self.torus, e.join(","))
    }
}

/// θ_T: the order-2 character of every factor.
pub fn theta_w(torus: &TorusDescriptor, q: u64) -> TorusCharacter {
    let e = torus.factors.iter().map(|f| f.quadratic_exponent(q)).collect();
    TorusCharacter::new(torus.clone(), e, q)
}

/// θ_{k,l} on T_l: 1_k ⊗ θ_{l−k} when k ≤ l, trivial otherwise.
pub fn theta_kl(k: usize, l: usize, q: u64) -> TorusCharacter {
    let half = (q - 1) / 2;
    let e = (0..l).map(|i| if k <= l && i >= k { half } else { 0 }).collect();
    TorusCharacter::new(TorusDescriptor::split(l), e, q)
}

/// θ'_{k,l} = θ_{k,l} θ_l on T_l.
pub fn theta_kl_prime(k: usize, l: usize, q: u64) -> TorusCharacter {
    theta_kl(k, l, q).mul(&theta_w(&TorusDescriptor::split(l), q))
}
