use std::fmt;

use super::field::{Fe, Field};

/// A dense matrix over a finite field, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix { rows, cols, data: vec![0; rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }
    pub fn scalar(n: usize, a: Fe) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, a);
        }
        m
    }
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Fe>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        FqMatrix { rows, cols, data }
    }
    pub fn from_rows(rows: &[Vec<Fe>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        FqMatrix { rows: r, cols: c, data }
    }
    pub fn diag(entries: &[Fe]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &a) in entries.iter().enumerate() {
            m.set(i, i, a);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[Fe] {
        &self.data
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
    pub fn col(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u8::from(r == c)))
    }

    /// Canonical key: row-major bytes.
    pub fn key_bytes(&self) -> Vec<u8> {
        self.data.clone()
    }
    /// Packed base-q key; `None` if it does not fit in 128 bits.
    pub fn packed_key(&self, q: u32) -> Option<u128> {
        let mut k: u128 = 0;
        for &x in &self.data {
            k = k.checked_mul(q as u128)?.checked_add(x as u128)?;
        }
        Some(k)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self, f: &Field) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fe], f: &Field) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|r| dot(self.row(r), v, f)).collect()
    }

    pub fn add(&self, other: &Self, f: &Field) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }
    pub fn sub(&self, other: &Self, f: &Field) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }
    pub fn scale(&self, a: Fe, f: &Field) -> Self {
        let data = self.data.iter().map(|&x| f.mul(a, x)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }
    pub fn neg(&self, f: &Field) -> Self {
        let data = self.data.iter().map(|&x| f.neg(x)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn kron(&self, other: &Self, f: &Field) -> Self {
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = Self::zeros(r1 * r2, c1 * c2);
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        out.set(i * r2 + k, j * c2 + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                out.set(r - r0, c - c0, self.get(r, c));
            }
        }
        out
    }
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c));
            }
        }
    }
    /// [[a, b], [c, d]].
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let mut out = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        out.set_block(0, 0, a);
        out.set_block(0, a.cols, b);
        out.set_block(a.rows, 0, c);
        out.set_block(a.rows, a.cols, d);
        out
    }
    pub fn block_diag(blocks: &[&Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
    pub fn vstack(&self, other: &Self) -> Self {
        if self.rows == 0 {
            return other.clone();
        }
        if other.rows == 0 {
            return self.clone();
        }
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FqMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }
    pub fn hstack(&self, other: &Self) -> Self {
        self.transpose().vstack(&other.transpose()).transpose()
    }
    /// Select columns by index.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &Field) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            m.scale_row(r, inv, f);
            for i in 0..m.rows {
                if i != r {
                    let a = m.get(i, c);
                    if a != 0 {
                        m.add_row_multiple(i, r, f.neg(a), f);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space(&self, f: &Field) -> Self {
        let (r, piv) = self.rref(f);
        r.block(0, piv.len(), 0, self.cols)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis (as rows) of {x : self · x = 0}.
    pub fn nullspace(&self, f: &Field) -> Self {
        let (r, piv) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (i, &pc) in piv.iter().enumerate() {
                out.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    pub fn inverse(&self, f: &Field) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Self::identity(n));
        let (r, piv) = aug.rref(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, 2 * n))
    }

    pub fn det(&self, f: &Field) -> Fe {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut d: Fe = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else { return 0 };
            if pr != c {
                m.swap_rows(c, pr);
                d = f.neg(d);
            }
            let p = m.get(c, c);
            d = f.mul(d, p);
            let inv = f.inv(p).expect("nonzero pivot");
            for i in c + 1..n {
                let a = m.get(i, c);
                if a != 0 {
                    m.add_row_multiple(i, c, f.neg(f.mul(a, inv)), f);
                }
            }
        }
        d
    }

    /// Invertible U, V with self = U · E_r · V, E_r = diag(1^r, 0).
    pub fn rank_normal_form(&self, f: &Field) -> (Self, Self, usize) {
        assert!(self.is_square());
        let n = self.rows;
        // row reduce [A | I]: P A = R
        let aug = self.hstack(&Self::identity(n));
        let (red, _) = aug.rref(f);
        let r_mat = red.block(0, n, 0, n);
        let p = red.block(0, n, n, 2 * n);
        let (_, piv) = r_mat.rref(f);
        let rank = piv.len();
        // column ops: R Q = E_r, Q built from pivots then free columns
        let mut order = piv.clone();
        order.extend((0..n).filter(|c| !piv.contains(c)));
        let perm = Self::permutation_cols(&order);
        let rp = r_mat.mul(&perm, f);
        // rp = [[I, B], [0, 0]]; clear B with column ops
        let mut clear = Self::identity(n);
        for i in 0..rank {
            for j in rank..n {
                clear.set(i, j, f.neg(rp.get(i, j)));
            }
        }
        let q = perm.mul(&clear, f);
        let u = p.inverse(f).expect("row transform invertible");
        let v = q.inverse(f).expect("column transform invertible");
        (u, v, rank)
    }

    /// Permutation matrix sending column j to position order[j] source.
    fn permutation_cols(order: &[usize]) -> Self {
        let n = order.len();
        let mut m = Self::zeros(n, n);
        for (j, &src) in order.iter().enumerate() {
            m.set(src, j, 1);
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
    pub fn scale_row(&mut self, r: usize, a: Fe, f: &Field) {
        for c in 0..self.cols {
            let v = f.mul(a, self.get(r, c));
            self.set(r, c, v);
        }
    }
    /// row[dst] += a * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, a: Fe, f: &Field) {
        for c in 0..self.cols {
            let v = f.add(self.get(dst, c), f.mul(a, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }
    pub fn is_alternating(&self, f: &Field) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| self.get(r, r) == 0 && (0..r).all(|c| self.get(r, c) == f.neg(self.get(c, r))))
    }

    /// Smallest k ≥ 1 with self^k = I.
    pub fn order(&self, f: &Field) -> u64 {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self, f);
            k += 1;
        }
        k
    }

    pub fn pow(&self, mut e: u64, f: &Field) -> Self {
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }
}

pub fn dot(a: &[Fe], b: &[Fe], f: &Field) -> Fe {
    a.iter().zip(b).fold(0, |s, (&x, &y)| f.add(s, f.mul(x, y)))
}

/// xᵀ M y.
pub fn bilinear(x: &[Fe], m: &FqMatrix, y: &[Fe], f: &Field) -> Fe {
    dot(x, &m.mul_vec(y, f), f)
}

/// Coordinates of `v` in the row basis `basis` (assumed in RREF with the
/// given pivots); `None` if `v` is not in the span.
pub fn coords_in_rref(basis: &FqMatrix, pivots: &[usize], v: &[Fe], f: &Field) -> Option<Vec<Fe>> {
    let c: Vec<Fe> = pivots.iter().map(|&p| v[p]).collect();
    let mut w = vec![0; basis.cols()];
    for (i, &ci) in c.iter().enumerate() {
        if ci != 0 {
            for (j, wj) in w.iter_mut().enumerate() {
                *wj = f.add(*wj, f.mul(ci, basis.get(i, j)));
            }
        }
    }
    (w == v).then_some(c)
}

/// All vectors of F_q^n in lexicographic order of base-q digits.
pub fn all_vectors(n: usize, f: &Field) -> Vec<Vec<Fe>> {
    let q = f.q() as usize;
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0; n];
            for x in v.iter_mut().rev() {
                *x = (idx % q) as Fe;
                idx /= q;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn inverse_and_det() {
        let f = f3();
        let a = FqMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let ai = a.inverse(&f).unwrap();
        assert!(a.mul(&ai, &f).is_identity());
        assert_eq!(a.det(&f), 1);
        let s = FqMatrix::from_rows(&[vec![1, 2], vec![2, 1]]);
        assert_eq!(s.det(&f), 0);
        assert!(s.inverse(&f).is_none());
    }

    #[test]
    fn rank_normal_form_reconstructs() {
        let f = Field::prime(5).unwrap();
        let a = FqMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 1], vec![3, 1, 4]]);
        let (u, v, r) = a.rank_normal_form(&f);
        let mut e = FqMatrix::zeros(3, 3);
        for i in 0..r {
            e.set(i, i, 1);
        }
        assert_eq!(u.mul(&e, &f).mul(&v, &f), a);
        assert_eq!(r, a.rank(&f));
    }

    #[test]
    fn nullspace_is_kernel() {
        let f = f3();
        let a = FqMatrix::from_rows(&[vec![1, 2, 0, 1], vec![0, 0, 1, 1]]);
        let k = a.nullspace(&f);
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            assert!(a.mul_vec(k.row(r), &f).iter().all(|&x| x == 0));
        }
    }
}
