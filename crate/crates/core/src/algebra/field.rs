use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// A field element, encoded as `a + p*b` for `a + b*x` in F_p[x]/(f).
pub type Fe = u8;

/// The finite field F_q with q = p^k, p ∈ {3, 5, 7}, k ∈ {1, 2}.
///
/// Arithmetic goes through precomputed q×q tables, so every operation is a
/// single lookup.
#[derive(Clone, Debug)]
pub struct Field {
    p: u8,
    k: u8,
    q: u8,
    /// x^2 = -(c1*x + c0) when k = 2.
    poly: (u8, u8),
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
    trace: Vec<u8>,
    log: Vec<u32>,
    generator: Fe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub struct FieldSpec {
    pub p: u8,
    pub k: u8,
}

impl FieldSpec {
    pub fn q(&self) -> u32 {
        (self.p as u32).pow(self.k as u32)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}
impl Eq for Field {}

fn raw_mul(p: u32, poly: (u32, u32), a: u32, b: u32) -> u32 {
    let (a0, a1) = (a % p, a / p);
    let (b0, b1) = (b % p, b / p);
    // (a0 + a1 x)(b0 + b1 x) = a0b0 + (a0b1 + a1b0) x + a1b1 x^2
    let s = a1 * b1 % p;
    let c0 = (a0 * b0 + s * (p - poly.1 % p)) % p;
    let c1 = (a0 * b1 + a1 * b0 + s * (p - poly.0 % p)) % p;
    c0 + p * c1
}

impl Field {
    pub fn new(p: u8, k: u8) -> Result<Self, AlgebraError> {
        if !matches!(p, 3 | 5 | 7) || !matches!(k, 1 | 2) {
            return Err(AlgebraError::UnsupportedField { p, k });
        }
        let pu = p as u32;
        let q = pu.pow(k as u32);
        let poly = if k == 2 {
            // lexicographically first monic irreducible x^2 + c1 x + c0
            let mut found = None;
            'outer: for c1 in 0..pu {
                for c0 in 0..pu {
                    if (0..pu).all(|x| (x * x + c1 * x + c0) % pu != 0) {
                        found = Some((c1, c0));
                        break 'outer;
                    }
                }
            }
            found.expect("an irreducible quadratic exists")
        } else {
            (0, 0)
        };
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            for b in 0..q {
                let s = (a % pu + b % pu) % pu + pu * ((a / pu + b / pu) % pu);
                add[(a * q + b) as usize] = s as Fe;
                mul[(a * q + b) as usize] = raw_mul(pu, poly, a, b) as Fe;
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as Fe;
                }
                if mul[a * qs + b] == 1 {
                    inv[a] = b as Fe;
                }
            }
        }
        let mut generator = None;
        for g in 1..qs {
            let mut x = 1usize;
            let mut order = 0;
            loop {
                x = mul[x * qs + g] as usize;
                order += 1;
                if x == 1 {
                    break;
                }
            }
            if order == qs - 1 {
                generator = Some(g as Fe);
                break;
            }
        }
        let generator = generator.ok_or(AlgebraError::NoGenerator)?;
        let mut log = vec![u32::MAX; qs];
        let mut x = 1usize;
        for e in 0..(qs - 1) as u32 {
            log[x] = e;
            x = mul[x * qs + generator as usize] as usize;
        }
        let mut f = Field {
            p,
            k,
            q: q as u8,
            poly: (poly.0 as u8, poly.1 as u8),
            add,
            mul,
            neg,
            inv,
            trace: vec![0; qs],
            log,
            generator,
        };
        for a in 0..qs {
            let t = if k == 1 { a as Fe } else { f.add(a as Fe, f.frobenius(a as Fe)) };
            debug_assert!((t as u32) < pu);
            f.trace[a] = t;
        }
        Ok(f)
    }

    pub fn prime(p: u8) -> Result<Self, AlgebraError> {
        Self::new(p, 1)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.p, k: self.k }
    }
    pub fn p(&self) -> u8 {
        self.p
    }
    pub fn degree(&self) -> u8 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q as u32
    }
    /// Coefficients (c1, c0) of the defining polynomial x^2 + c1 x + c0.
    pub fn defining_poly(&self) -> Option<(u8, u8)> {
        (self.k == 2).then_some(self.poly)
    }
    pub fn generator(&self) -> Fe {
        self.generator
    }
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        0..self.q
    }
    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + Clone {
        1..self.q
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }
    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (a != 0).then(|| self.inv[a as usize])
    }
    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }
    /// Absolute trace to F_p, as an integer in 0..p.
    pub fn trace(&self, a: Fe) -> u8 {
        self.trace[a as usize]
    }
    /// Discrete log to the fixed generator; `None` for zero.
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.p as i64) as Fe
    }
    /// The element 1/2.
    pub fn half(&self) -> Fe {
        self.inv(2).expect("odd characteristic")
    }
    /// The lexicographically smallest nonsquare.
    pub fn nonsquare(&self) -> Fe {
        self.nonzero().find(|&a| !self.is_square(a)).expect("odd q has nonsquares")
    }
    pub fn is_square(&self, a: Fe) -> bool {
        a == 0 || self.log[a as usize].is_multiple_of(2)
    }
    /// Elements of norm one in this field viewed as F_{p^2} over F_p, in
    /// generator order: (g^{p-1})^j, j = 0..p.
    pub fn norm_one_elements(&self) -> Vec<Fe> {
        assert_eq!(self.k, 2, "norm-one subgroup needs the quadratic extension");
        let step = self.pow(self.generator, self.p as u64 - 1);
        let mut out = Vec::with_capacity(self.p as usize + 1);
        let mut x = 1;
        for _ in 0..=self.p {
            out.push(x);
            x = self.mul(x, step);
        }
        out
    }
}

/// Legendre symbol of `a` in `f`: 1 for nonzero squares, -1 for nonsquares, 0 for zero.
pub fn legendre(a: Fe, f: &Field) -> i8 {
    if a == 0 {
        0
    } else if f.is_square(a) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_examples() {
        let f3 = Field::prime(3).unwrap();
        let f5 = Field::prime(5).unwrap();
        assert_eq!(legendre(1, &f3), 1);
        assert_eq!(legendre(2, &f3), -1);
        assert_eq!(legendre(4, &f5), 1);
        assert_eq!(legendre(0, &f5), 0);
    }

    #[test]
    fn field_axioms_small() {
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)] {
            let f = Field::new(p, k).unwrap();
            let q = f.q() as u8;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            // Frobenius has order k
            let frob_k = |a| (0..k).fold(a, |x, _| f.frobenius(x));
            assert!(f.elements().all(|a| frob_k(a) == a));
            if k == 2 {
                assert!(f.elements().any(|a| f.frobenius(a) != a));
                assert_eq!(f.norm_one_elements().len(), p as usize + 1);
            }
        }
    }

    #[test]
    fn f9_polynomial_is_x2_plus_1() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.defining_poly(), Some((0, 1)));
    }
}
