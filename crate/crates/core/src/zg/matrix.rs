//! Dense integer matrices with Smith and Hermite normal forms.
//!
//! Matrices act on column vectors. All arithmetic is exact in `i128`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i128) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn row_vector(v: &[i128]) -> Self {
        IntMatrix { rows: 1, cols: v.len(), data: v.to_vec() }
    }

    pub fn column_vector(v: &[i128]) -> Self {
        IntMatrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as i128))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if b != 0 {
                        out.data[base + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i128) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Kronecker product; row index is `i * other.rows + k`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols)
        })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> IntMatrix {
        IntMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows.start + i, cols.start + j))
    }

    pub fn hstack(parts: &[IntMatrix]) -> IntMatrix {
        let rows = parts.first().map_or(0, |p| p.rows);
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            out.paste(0, off, p);
            off += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[IntMatrix]) -> IntMatrix {
        let cols = parts.first().map_or(0, |p| p.cols);
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            out.paste(off, 0, p);
            off += p.rows;
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(parts: &[IntMatrix]) -> IntMatrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.paste(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &IntMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j));
            }
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn rank(&self) -> usize {
        smith(self).rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) {
        if k != 0 {
            for j in 0..self.cols {
                let v = self.get(src, j);
                if v != 0 {
                    self.data[dst * self.cols + j] += k * v;
                }
            }
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i128) {
        if k != 0 {
            for i in 0..self.rows {
                let v = self.get(i, src);
                if v != 0 {
                    self.data[i * self.cols + dst] += k * v;
                }
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self.data[r * self.cols + j] *= -1;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            self.data[i * self.cols + c] *= -1;
        }
    }
}

/// `u · a · v = diag(d_1, …, d_k, 0, …)` with `d_i | d_{i+1}`, `d_i > 0`,
/// and `u`, `v` unimodular. The inverses are tracked alongside.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries.
    pub diagonal: Vec<i128>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries different from 1.
    pub fn torsion(&self) -> Vec<i128> {
        self.diagonal.iter().copied().filter(|&d| d != 1).collect()
    }
}

struct Tracked {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Tracked {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) {
        self.a.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
        self.u_inv.add_col(src, dst, -k);
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i128) {
        self.a.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
        self.v_inv.add_row(src, dst, -k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut t = Tracked {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut diagonal = Vec::new();
    for s in 0..m.min(n) {
        let Some((pi, pj)) = min_entry(&t.a, s) else { break };
        t.swap_rows(s, pi);
        t.swap_cols(s, pj);
        loop {
            let mut dirty = false;
            for i in s + 1..m {
                let q = t.a.get(i, s).div_euclid(t.a.get(s, s));
                t.add_row(i, s, -q);
                if t.a.get(i, s) != 0 {
                    dirty = true;
                }
            }
            for j in s + 1..n {
                let q = t.a.get(s, j).div_euclid(t.a.get(s, s));
                t.add_col(j, s, -q);
                if t.a.get(s, j) != 0 {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_in_cross(&t.a, s);
                t.swap_rows(s, pi);
                t.swap_cols(s, pj);
                continue;
            }
            let d = t.a.get(s, s);
            let bad = (s + 1..m).find(|&i| (s + 1..n).any(|j| t.a.get(i, j) % d != 0));
            match bad {
                Some(i) => t.add_row(s, i, 1),
                None => break,
            }
        }
        if t.a.get(s, s) < 0 {
            t.negate_row(s);
        }
        diagonal.push(t.a.get(s, s));
    }
    Smith { u: t.u, u_inv: t.u_inv, v: t.v, v_inv: t.v_inv, diagonal }
}

fn min_entry(a: &IntMatrix, s: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for i in s..a.rows {
        for j in s..a.cols {
            let v = a.get(i, j).abs();
            if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Least nonzero entry in row `s` or column `s` (from `s` on).
fn min_in_cross(a: &IntMatrix, s: usize) -> (usize, usize) {
    let mut best = (a.get(s, s).abs(), s, s);
    for i in s + 1..a.rows {
        let v = a.get(i, s).abs();
        if v != 0 && (best.0 == 0 || v < best.0) {
            best = (v, i, s);
        }
    }
    for j in s + 1..a.cols {
        let v = a.get(s, j).abs();
        if v != 0 && (best.0 == 0 || v < best.0) {
            best = (v, s, j);
        }
    }
    (best.1, best.2)
}

/// Row Hermite normal form: the nonzero rows of an echelon basis of the row
/// lattice, pivots positive, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (m, n) = (h.rows, h.cols);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let piv = (r..m).filter(|&i| h.get(i, c) != 0).min_by_key(|&i| h.get(i, c).abs());
            let Some(p) = piv else { break };
            h.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..m {
                let q = h.get(i, c).div_euclid(h.get(r, c));
                h.add_row(i, r, -q);
                if h.get(i, c) != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, c) == 0 {
            continue;
        }
        if h.get(r, c) < 0 {
            h.negate_row(r);
        }
        let d = h.get(r, c);
        for i in 0..r {
            let q = h.get(i, c).div_euclid(d);
            h.add_row(i, r, -q);
        }
        r += 1;
    }
    h.submatrix(0..r, 0..n)
}

/// Reduces a row vector modulo the row lattice of a Hermite basis.
pub fn reduce_mod_hermite(v: &[i128], h: &IntMatrix) -> Vec<i128> {
    let mut out = v.to_vec();
    for i in 0..h.rows {
        let row = h.row(i);
        let Some(c) = row.iter().position(|&x| x != 0) else { continue };
        let q = out[c].div_euclid(row[c]);
        if q != 0 {
            for (o, &x) in out.iter_mut().zip(row) {
                *o -= q * x;
            }
        }
    }
    out
}

/// A basis of the integer kernel {x : a·x = 0}, as columns in column
/// Hermite form. The kernel is saturated by construction.
pub fn kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let cols: Vec<usize> = (s.rank()..a.cols).collect();
    let k = s.v.select_columns(&cols);
    if k.cols == 0 {
        return k;
    }
    hermite_rows(&k.transpose()).transpose()
}

/// A left inverse of a matrix with saturated, full-rank column lattice.
pub fn left_inverse(b: &IntMatrix) -> Option<IntMatrix> {
    let s = smith(b);
    if s.rank() != b.cols || s.diagonal.iter().any(|&d| d != 1) {
        return None;
    }
    Some(s.v.mul(&s.u.submatrix(0..b.cols, 0..b.rows)))
}

/// Solves `b · x = y` exactly when `b` has saturated full-rank columns.
pub fn solve(b: &IntMatrix, y: &IntMatrix) -> Option<IntMatrix> {
    let x = left_inverse(b)?.mul(y);
    (b.mul(&x) == *y).then_some(x)
}

/// Whether the matrix is square with determinant ±1.
pub fn is_unimodular(a: &IntMatrix) -> bool {
    a.rows == a.cols && {
        let s = smith(a);
        s.rank() == a.rows && s.diagonal.iter().all(|&d| d == 1)
    }
}

pub fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| num_integer::Integer::gcd(&g, &x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(a: &IntMatrix) -> Smith {
        let s = smith(a);
        let d = s.u.mul(a).mul(&s.v);
        for i in 0..d.rows {
            for j in 0..d.cols {
                let expect = if i == j && i < s.rank() { s.diagonal[i] } else { 0 };
                assert_eq!(d.get(i, j), expect, "{a:?}");
            }
        }
        assert!(s.u.mul(&s.u_inv).is_identity());
        assert!(s.v.mul(&s.v_inv).is_identity());
        for w in s.diagonal.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        s
    }

    #[test]
    fn smith_examples() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(check_smith(&a).diagonal, vec![2, 6, 12]);
        let b = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(check_smith(&b).torsion(), vec![2]);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(check_smith(&z).rank(), 0);
    }

    #[test]
    fn smith_on_pseudorandom_matrices() {
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 11) as i128 - 5
        };
        for _ in 0..200 {
            let m = 1 + (next().unsigned_abs() as usize % 5);
            let n = 1 + (next().unsigned_abs() as usize % 5);
            let a = IntMatrix::from_fn(m, n, |_, _| next());
            check_smith(&a);
            let k = kernel(&a);
            assert!(a.mul(&k).is_zero());
            assert_eq!(k.cols() + a.rank(), n);
        }
    }

    #[test]
    fn hermite_and_reduction() {
        let a = IntMatrix::from_rows(&[vec![3, 0], vec![0, 3], vec![3, 3]]);
        let h = hermite_rows(&a);
        assert_eq!(h, IntMatrix::from_rows(&[vec![3, 0], vec![0, 3]]));
        assert_eq!(reduce_mod_hermite(&[4, -1], &h), vec![1, 2]);
    }

    #[test]
    fn kernel_of_norm_is_augmentation_free() {
        let g_minus_1 = IntMatrix::from_rows(&[vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]);
        assert_eq!(kernel(&g_minus_1), IntMatrix::column_vector(&[1, 1, 1]));
        let b = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let li = left_inverse(&b).unwrap();
        assert!(li.mul(&b).is_identity());
        assert!(left_inverse(&IntMatrix::column_vector(&[2, 0])).is_none());
    }
}
