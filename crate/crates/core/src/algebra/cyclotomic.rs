use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

/// Reduction data for Q(ζ_n): the cyclotomic polynomial and the power basis
/// images of ζ^j for j = 0..n.
#[derive(Debug)]
struct CycloData {
    phi: usize,
    /// powers[j] = coordinates of x^j mod Φ_n, for j in 0..n.
    powers: Vec<Vec<i128>>,
}

fn cyclo_poly(n: u32) -> Vec<i128> {
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclo_poly(d);
            num = poly_div_exact(&num, &den);
        }
    }
    num
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i128; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd] / den[dd];
        quot[i] = c;
        for j in 0..=dd {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn data(n: u32) -> Arc<CycloData> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(d) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return d.clone();
    }
    let poly = cyclo_poly(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i128; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
    }
    let d = Arc::new(CycloData { phi, powers });
    cache.write().expect("cyclotomic cache poisoned").insert(n, d.clone());
    d
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    (a as u64 / gcd_u64(a as u64, b as u64) * b as u64) as u32
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
fn ck_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}
#[inline]
fn ck_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

/// An element of Q(ζ_n), stored in the power basis 1, ζ, …, ζ^{φ(n)-1}
/// with integer numerators over a common positive denominator.
///
/// Rational values are always stored at conductor 1, so they stay cheap.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cyclotomic {
    conductor: u32,
    num: Vec<i128>,
    den: i128,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_int(0)
    }
    pub fn one() -> Self {
        Self::from_int(1)
    }
    pub fn from_int(a: i128) -> Self {
        Cyclotomic { conductor: 1, num: vec![a], den: 1 }
    }
    pub fn from_rational(a: i128, b: i128) -> Self {
        assert!(b != 0, "zero denominator");
        let mut c = Cyclotomic { conductor: 1, num: vec![a], den: b };
        c.normalize();
        c
    }
    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0);
        let d = data(n);
        let j = k.rem_euclid(n as i64) as usize;
        let mut c = Cyclotomic { conductor: n, num: d.powers[j].clone(), den: 1 };
        c.normalize();
        c
    }
    /// Σ coeffs[j] ζ_n^j for an arbitrary-length integer vector.
    pub fn from_exponent_coeffs(n: u32, coeffs: &[i128]) -> Self {
        let d = data(n);
        let mut num = vec![0i128; d.phi];
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let row = &d.powers[j % n as usize];
                for (x, &r) in num.iter_mut().zip(row) {
                    *x = ck_add(*x, ck_mul(c, r));
                }
            }
        }
        let mut out = Cyclotomic { conductor: n, num, den: 1 };
        out.normalize();
        out
    }

    /// Rebuild from stored parts, validating the basis length.
    pub fn from_parts(conductor: u32, num: Vec<i128>, den: i128) -> Option<Self> {
        if conductor == 0 || den == 0 || num.len() != euler_phi(conductor) as usize {
            return None;
        }
        let mut c = Cyclotomic { conductor, num, den };
        c.normalize();
        Some(c)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }
    pub fn denominator(&self) -> i128 {
        self.den
    }
    pub fn numerators(&self) -> &[i128] {
        &self.num
    }
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }
    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }
    /// (numerator, denominator) when rational.
    pub fn to_rational(&self) -> Option<(i128, i128)> {
        self.is_rational().then(|| (self.num[0], self.den))
    }
    pub fn to_integer(&self) -> Option<i128> {
        match self.to_rational() {
            Some((a, 1)) => Some(a),
            _ => None,
        }
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            for c in &mut self.num {
                *c = -*c;
            }
        }
        if self.conductor > 1 && self.num[1..].iter().all(|&c| c == 0) {
            self.num.truncate(1);
            self.conductor = 1;
        }
        if self.den != 1 {
            let mut g = self.den;
            for &c in &self.num {
                g = gcd_i128(g, c);
                if g == 1 {
                    return;
                }
            }
            if g > 1 {
                self.den /= g;
                for c in &mut self.num {
                    *c /= g;
                }
            }
        }
        if self.is_zero() {
            self.den = 1;
        }
    }

    /// Re-express in Q(ζ_m); requires conductor | m.
    pub fn embed(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.conductor), "conductor {} does not divide {}", self.conductor, m);
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let d = data(m);
        let mut num = vec![0i128; d.phi];
        for (j, &c) in self.num.iter().enumerate() {
            if c != 0 {
                for (x, &r) in num.iter_mut().zip(&d.powers[(j * step) % m as usize]) {
                    *x = ck_add(*x, ck_mul(c, r));
                }
            }
        }
        Cyclotomic { conductor: m, num, den: self.den }
    }

    fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm_u32(a.conductor, b.conductor);
        (a.embed(m), b.embed(m))
    }

    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.conductor;
        let d = data(n);
        let mut num = vec![0i128; d.phi];
        for (j, &c) in self.num.iter().enumerate() {
            if c != 0 {
                let row = &d.powers[(n as usize - j) % n as usize];
                for (x, &r) in num.iter_mut().zip(row) {
                    *x = ck_add(*x, ck_mul(c, r));
                }
            }
        }
        let mut out = Cyclotomic { conductor: n, num, den: self.den };
        out.normalize();
        out
    }

    /// Galois action ζ ↦ ζ^k (k coprime to the conductor).
    pub fn galois(&self, k: i64) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.conductor;
        let d = data(n);
        let mut num = vec![0i128; d.phi];
        for (j, &c) in self.num.iter().enumerate() {
            if c != 0 {
                let e = (j as i64 * k).rem_euclid(n as i64) as usize;
                for (x, &r) in num.iter_mut().zip(&d.powers[e]) {
                    *x = ck_add(*x, ck_mul(c, r));
                }
            }
        }
        let mut out = Cyclotomic { conductor: n, num, den: self.den };
        out.normalize();
        out
    }

    pub fn scale(&self, a: i128, b: i128) -> Self {
        assert!(b != 0, "zero denominator");
        let mut out = Cyclotomic {
            conductor: self.conductor,
            num: self.num.iter().map(|&c| ck_mul(c, a)).collect(),
            den: ck_mul(self.den, b),
        };
        out.normalize();
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// x * conj(x).
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Numerical shadow (re, im).
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &c) in self.num.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * j as f64 / n;
            re += c as f64 * t.cos();
            im += c as f64 * t.sin();
        }
        (re / self.den as f64, im / self.den as f64)
    }

    fn add_impl(&self, other: &Self, sign: i128) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = Self::lift_pair(self, other);
            return a.add_impl(&b, sign);
        }
        let (da, db) = (self.den, other.den);
        let num = if da == db {
            self.num.iter().zip(&other.num).map(|(&x, &y)| ck_add(x, sign * y)).collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(&x, &y)| ck_add(ck_mul(x, db), ck_mul(sign * y, da)))
                .collect()
        };
        let den = if da == db { da } else { ck_mul(da, db) };
        let mut out = Cyclotomic { conductor: self.conductor, num, den };
        out.normalize();
        out
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_rational() {
            return other.scale(self.num[0], self.den);
        }
        if other.is_rational() {
            return self.scale(other.num[0], other.den);
        }
        if self.conductor != other.conductor {
            let (a, b) = Self::lift_pair(self, other);
            return a.mul_impl(&b);
        }
        let d = data(self.conductor);
        let phi = d.phi;
        let mut tmp = vec![0i128; 2 * phi - 1];
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.num.iter().enumerate() {
                if b != 0 {
                    tmp[i + j] = ck_add(tmp[i + j], ck_mul(a, b));
                }
            }
        }
        let mut num = tmp[..phi].to_vec();
        for (j, &c) in tmp.iter().enumerate().skip(phi) {
            if c != 0 {
                for (x, &r) in num.iter_mut().zip(&d.powers[j % self.conductor as usize]) {
                    if r != 0 {
                        *x = ck_add(*x, ck_mul(c, r));
                    }
                }
            }
        }
        let mut out = Cyclotomic { conductor: self.conductor, num, den: ck_mul(self.den, other.den) };
        out.normalize();
        out
    }

    /// A canonical tuple for deterministic ordering.
    pub fn sort_key(&self, conductor: u32) -> (Vec<i128>, i128) {
        let e = self.embed(conductor);
        (e.num, e.den)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = Self::lift_pair(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}
impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Cyclotomic {
        self.add_impl(rhs, 1)
    }
}
impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Cyclotomic {
        self.add_impl(rhs, -1)
    }
}
impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Cyclotomic {
        self.mul_impl(rhs)
    }
}
impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(-1, 1)
    }
}
impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Cyclotomic {
        &self + &rhs
    }
}
impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Cyclotomic {
        &self - &rhs
    }
}
impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Cyclotomic {
        &self * &rhs
    }
}
impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}
impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, &c) in self.num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match j {
                0 => format!("{c}"),
                1 => format!("{c}*z{}", self.conductor),
                _ => format!("{c}*z{}^{j}", self.conductor),
            });
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.den == 1 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclo_poly(1), vec![-1, 1]);
        assert_eq!(cyclo_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclo_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclo_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclo_poly(360).len() as u32 - 1, euler_phi(360));
    }

    #[test]
    fn roots_of_unity_relations() {
        let z = Cyclotomic::root_of_unity(3, 1);
        let s: Cyclotomic = (0..3).map(|k| Cyclotomic::root_of_unity(3, k)).sum();
        assert!(s.is_zero());
        assert_eq!(z.pow(3), Cyclotomic::one());
        assert_eq!(z.conj(), Cyclotomic::root_of_unity(3, 2));
        // ζ_12^4 = ζ_3
        assert_eq!(Cyclotomic::root_of_unity(12, 4), z);
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
    }

    #[test]
    fn rationals_collapse() {
        let a = Cyclotomic::root_of_unity(5, 1);
        let b = &a - &a;
        assert!(b.is_rational() && b.is_zero());
        let h = Cyclotomic::from_rational(6, -4);
        assert_eq!(h.to_rational(), Some((-3, 2)));
    }
}
