//! The hyperoctahedral group W_n: signed cycle types and bipartitions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::groups::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedCycle {
    pub len: usize,
    pub sign: Sign,
}

/// A conjugacy class of W_n, as a multiset of signed cycles. Cycles are kept
/// sorted by (length, sign) with `+` before `−`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedCycleType {
    cycles: Vec<SignedCycle>,
}

impl SignedCycleType {
    pub fn new(mut cycles: Vec<SignedCycle>) -> Self {
        cycles.retain(|c| c.len > 0);
        cycles.sort();
        SignedCycleType { cycles }
    }
    pub fn from_pairs(pairs: &[(usize, Sign)]) -> Self {
        Self::new(pairs.iter().map(|&(len, sign)| SignedCycle { len, sign }).collect())
    }
    pub fn identity(n: usize) -> Self {
        Self::new(vec![SignedCycle { len: 1, sign: Sign::Plus }; n])
    }
    pub fn cycles(&self) -> &[SignedCycle] {
        &self.cycles
    }
    pub fn rank(&self) -> usize {
        self.cycles.iter().map(|c| c.len).sum()
    }
    /// ε_w: the product of the cycle signs.
    pub fn epsilon(&self) -> Sign {
        self.cycles.iter().fold(Sign::Plus, |acc, c| acc * c.sign)
    }
    /// Concatenate two types (the class of v × w in W_{k+l}).
    pub fn join(&self, other: &Self) -> Self {
        let mut c = self.cycles.clone();
        c.extend_from_slice(&other.cycles);
        Self::new(c)
    }
    /// |C_{W_n}(w)| = Π (2a)^{m} m! over the multiplicities m of each signed length a.
    pub fn centralizer_order(&self) -> u64 {
        let mut out = 1u64;
        let mut i = 0;
        while i < self.cycles.len() {
            let mut j = i;
            while j < self.cycles.len() && self.cycles[j] == self.cycles[i] {
                j += 1;
            }
            let m = (j - i) as u64;
            out *= (2 * self.cycles[i].len as u64).pow(m as u32) * factorial(m);
            i = j;
        }
        out
    }
    pub fn class_size(&self) -> u64 {
        weyl_group_order(self.rank()) / self.centralizer_order()
    }
}

impl fmt::Display for SignedCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for c in &self.cycles {
            write!(f, "({}{})", c.len, c.sign)?;
        }
        Ok(())
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// |W_n| = 2^n n!.
pub fn weyl_group_order(n: usize) -> u64 {
    (1u64 << n) * factorial(n as u64)
}

/// Partitions of n in weakly decreasing order, lexicographically descending.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All conjugacy classes of W_n. A class is a pair of partitions: the
/// lengths of the positive cycles and of the negative cycles.
pub fn weyl_classes(n: usize) -> Vec<SignedCycleType> {
    bipartitions(n)
        .into_iter()
        .map(|b| {
            let mut c: Vec<SignedCycle> = b.left.iter().map(|&len| SignedCycle { len, sign: Sign::Plus }).collect();
            c.extend(b.right.iter().map(|&len| SignedCycle { len, sign: Sign::Minus }));
            SignedCycleType::new(c)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    pub fn size(&self) -> usize {
        self.left.iter().sum::<usize>() + self.right.iter().sum::<usize>()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &[usize]| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({} | {})", show(&self.left), show(&self.right))
    }
}

pub fn bipartitions(l: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for j in (0..=l).rev() {
        for a in partitions(j) {
            for b in partitions(l - j) {
                out.push(Bipartition { left: a.clone(), right: b });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 0..=5 {
            let total: u64 = weyl_classes(n).iter().map(|w| w.class_size()).sum();
            assert_eq!(total, weyl_group_order(n));
        }
    }

    #[test]
    fn epsilon_of_small_types() {
        let w = SignedCycleType::from_pairs(&[(1, Sign::Minus), (2, Sign::Minus)]);
        assert_eq!(w.epsilon(), Sign::Plus);
        assert_eq!(w.to_string(), "(1-)(2-)");
        assert_eq!(SignedCycleType::identity(0).to_string(), "()");
    }
}
