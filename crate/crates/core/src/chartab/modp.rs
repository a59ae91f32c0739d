//! Dense linear algebra over a prime field F_ℓ with ℓ < 2^31.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Zl {
    pub l: u64,
}

impl Zl {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.l
    }
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.l - b) % self.l
    }
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }
    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.l;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.l), "inverse of zero mod {}", self.l);
        self.pow(a, self.l - 2)
    }
    /// Smallest generator of F_ℓ^×.
    pub fn generator(self) -> u64 {
        let mut factors = Vec::new();
        let mut m = self.l - 1;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.l)
            .find(|&g| factors.iter().all(|&f| self.pow(g, (self.l - 1) / f) != 1))
            .expect("cyclic group has a generator")
    }
    /// Square root of a in [0, ℓ/2], if one exists.
    pub fn small_sqrt(self, a: u64) -> Option<u64> {
        (0..=self.l / 2).find(|&x| self.mul(x, x) == a % self.l)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) type Mat = Vec<Vec<u64>>;

/// Reduced row echelon form in place; returns pivot columns.
pub(crate) fn rref(z: Zl, m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let inv = z.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = z.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let v = z.mul(f, m[r][j]);
                    m[i][j] = z.sub(m[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of {x : A x = 0}, as vectors.
pub(crate) fn nullspace(z: Zl, a: &Mat) -> Vec<Vec<u64>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut m = a.clone();
    let pivots = rref(z, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = z.sub(0, m[i][f]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial det(xI - A), low degree first, via a Hessenberg reduction.
pub(crate) fn charpoly(z: Zl, a: &Mat) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&i| h[i][c] != 0) else { continue };
        if p != c + 1 {
            h.swap(p, c + 1);
            for row in h.iter_mut() {
                row.swap(p, c + 1);
            }
        }
        let inv = z.inv(h[c + 1][c]);
        for i in c + 2..n {
            if h[i][c] == 0 {
                continue;
            }
            let f = z.mul(h[i][c], inv);
            for j in 0..n {
                let v = z.mul(f, h[c + 1][j]);
                h[i][j] = z.sub(h[i][j], v);
            }
            // similarity: add f * column i to column c+1
            for row in h.iter_mut() {
                let v = z.mul(f, row[i]);
                row[c + 1] = z.add(row[c + 1], v);
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - Σ_{i<k} h_ik (Π_{m=i+1}^{k} h_{m,m-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = z.add(next[d + 1], c);
            next[d] = z.sub(next[d], z.mul(h[k][k], c));
        }
        let mut prod = 1;
        for i in (0..k).rev() {
            prod = z.mul(prod, h[i + 1][i]);
            let f = z.mul(prod, h[i][k]);
            if f == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = z.sub(next[d], z.mul(f, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

pub(crate) fn eval(z: Zl, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| z.add(z.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(z: Zl, a: &Mat) -> u64 {
        let n = a.len();
        let mut m = a.clone();
        let mut d = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m[i][c] != 0) else { return 0 };
            if p != c {
                m.swap(p, c);
                d = z.sub(0, d);
            }
            d = z.mul(d, m[c][c]);
            let inv = z.inv(m[c][c]);
            for i in c + 1..n {
                let f = z.mul(m[i][c], inv);
                for j in 0..n {
                    let v = z.mul(f, m[c][j]);
                    m[i][j] = z.sub(m[i][j], v);
                }
            }
        }
        d
    }

    #[test]
    fn charpoly_matches_determinants() {
        let z = Zl { l: 101 };
        let mut s = 7u64;
        for n in 1..7 {
            let a: Mat = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                            (s >> 33) % 101
                        })
                        .collect()
                })
                .collect();
            let p = charpoly(z, &a);
            assert_eq!(p.len(), n + 1);
            for x in [0u64, 1, 5, 77] {
                let m: Mat = (0..n)
                    .map(|i| (0..n).map(|j| z.sub(if i == j { x } else { 0 }, a[i][j])).collect())
                    .collect();
                assert_eq!(eval(z, &p, x), det(z, &m));
            }
        }
    }

    #[test]
    fn nullspace_is_annihilated() {
        let z = Zl { l: 13 };
        let a: Mat = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]];
        let ns = nullspace(z, &a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                assert_eq!(row.iter().zip(&v).fold(0, |s, (&x, &y)| z.add(s, z.mul(x, y))), 0);
            }
        }
    }
}
