//! Irreducible character tables by Dixon's modular method.

use std::sync::Arc;

use super::class_function::{inner_product, ClassFunction};
use super::cyclotomic::{Cyclotomic, Rational};
use super::{CharError, Result};
use crate::group::{is_prime, FiniteGroup, Group, GroupError, DEFAULT_SUBGROUP_CAP};

/// Largest group order for which a table is computed.
pub const TABLE_CAP: usize = DEFAULT_SUBGROUP_CAP;

/// Irreducible characters as rows of values over the conjugacy classes.
/// Row 0 is the trivial character; rows are sorted by degree, then by value.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    prime: u64,
    rows: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// The prime used for the modular computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.rows[i]
    }

    /// The irreducible characters as class functions on `g`, which must be
    /// the group the table was computed for.
    pub fn irreducibles(&self, g: &Group) -> Vec<ClassFunction> {
        self.rows.iter().map(|r| ClassFunction::new(g, r.clone())).collect()
    }

    pub fn irreducible(&self, g: &Group, i: usize) -> ClassFunction {
        ClassFunction::new(g, self.rows[i].clone())
    }
}

/// The character table of `g`, computed once and cached on the group.
pub fn character_table(g: &Group) -> Result<Arc<CharacterTable>> {
    if let Some(t) = g.cached_table().get() {
        return Ok(t.clone());
    }
    let t = Arc::new(compute_character_table(g)?);
    verify_orthogonality(g, &t)?;
    Ok(g.cached_table().get_or_init(|| t).clone())
}

fn verify_orthogonality(g: &Group, t: &CharacterTable) -> Result<()> {
    let irr = t.irreducibles(g);
    for i in 0..irr.len() {
        for j in i..irr.len() {
            let ip = inner_product(&irr[i], &irr[j]);
            let expect = if i == j { 1 } else { 0 };
            if ip.as_integer() != Some(expect) {
                return Err(CharError::LiftFailure(format!("rows {i},{j} not orthonormal")));
            }
        }
    }
    Ok(())
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

/// Least-index generator of F_ℓ^*.
fn primitive_root(l: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = l - 1;
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
    (2..l).find(|&a| factors.iter().all(|&f| pow_mod(a, (l - 1) / f, l) != 1)).unwrap_or(1)
}

/// Primes ℓ ≡ 1 (mod e) with ℓ > 2·√|G|·(largest class size), in increasing order.
fn candidate_primes(order: usize, exponent: usize, max_class: usize) -> impl Iterator<Item = u64> {
    let bound = 4 * order as u128 * (max_class as u128).pow(2);
    let e = exponent as u64;
    (1u64..).map(move |k| k * e + 1).filter(move |&l| (l as u128) * (l as u128) > bound && is_prime(l as usize))
}

pub fn compute_character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    if g.order() > TABLE_CAP {
        return Err(GroupError::TooLarge { order: g.order(), cap: TABLE_CAP }.into());
    }
    let max_class = *g.classes().class_sizes.iter().max().unwrap();
    let mut last = String::new();
    for l in candidate_primes(g.order(), g.exponent(), max_class).take(8) {
        match dixon(g, l) {
            Ok(t) => return Ok(t),
            Err(CharError::LiftFailure(msg)) => last = msg,
            Err(e) => return Err(e),
        }
    }
    Err(CharError::LiftFailure(last))
}

fn lift_failure(l: u64, what: &str) -> CharError {
    CharError::LiftFailure(format!("prime {l}: {what}"))
}

fn dixon(g: &FiniteGroup, l: u64) -> Result<CharacterTable> {
    let cl = g.classes();
    let k = cl.len();
    let n = g.order();

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|i| unit(k, i)).collect()];
    for j in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(g, j, l);
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split(&m, s, l));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(lift_failure(l, "class matrices do not split the algebra"));
    }

    let inv_class: Vec<usize> = cl.representatives.iter().map(|&x| cl.class_of[g.inv(x)]).collect();
    let sizes: Vec<u64> = cl.class_sizes.iter().map(|&s| s as u64).collect();
    let e = g.exponent();
    let zeta = pow_mod(primitive_root(l), (l - 1) / e as u64, l);
    let divisors: Vec<u64> = (1..=n as u64).filter(|d| (n as u64).is_multiple_of(*d) && d * d <= n as u64).collect();

    // Power maps: classes of g_i^t for t < o(g_i).
    let power_classes: Vec<Vec<usize>> = cl
        .representatives
        .iter()
        .map(|&x| {
            let mut y = 0;
            (0..g.element_order(x))
                .map(|_| {
                    let c = cl.class_of[y];
                    y = g.mul(y, x);
                    c
                })
                .collect()
        })
        .collect();

    let mut rows = Vec::with_capacity(k);
    let mut degrees = Vec::with_capacity(k);
    for s in spaces {
        let mut v = s.into_iter().next().unwrap();
        if v[0] == 0 {
            return Err(lift_failure(l, "eigenvector vanishes at the identity"));
        }
        let iv = inv_mod(v[0], l);
        v.iter_mut().for_each(|x| *x = *x * iv % l);
        let mut s = 0;
        for i in 0..k {
            s = (s + v[i] * v[inv_class[i]] % l * inv_mod(sizes[i] % l, l)) % l;
        }
        if s == 0 {
            return Err(lift_failure(l, "degenerate norm"));
        }
        let target = n as u64 % l * inv_mod(s, l) % l;
        let d = divisors
            .iter()
            .copied()
            .find(|&d| d * d % l == target)
            .ok_or_else(|| lift_failure(l, "no degree matches"))?;
        let chi: Vec<u64> = (0..k).map(|i| d % l * v[i] % l * inv_mod(sizes[i] % l, l) % l).collect();

        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            let pc = &power_classes[i];
            let o = pc.len() as u64;
            let z = pow_mod(zeta, e as u64 / o, l);
            let zinv = inv_mod(z, l);
            let oinv = inv_mod(o % l, l);
            let mut powers = Vec::new();
            let mut total = 0;
            for kk in 0..o {
                let step = pow_mod(zinv, kk, l);
                let mut acc = 0;
                let mut w = 1;
                for t in 0..o as usize {
                    acc = (acc + chi[pc[t]] * w) % l;
                    w = w * step % l;
                }
                let m = acc * oinv % l;
                if m > d {
                    return Err(lift_failure(l, "eigenvalue multiplicity out of range"));
                }
                total += m;
                if m > 0 {
                    powers.push(((kk * (e as u64 / o)) as u32, Rational::from_integer(m as i128)));
                }
            }
            if total != d {
                return Err(lift_failure(l, "multiplicities do not sum to the degree"));
            }
            row.push(Cyclotomic::from_powers(e as u32, &powers));
        }
        rows.push(row);
        degrees.push(d);
    }
    if degrees.iter().map(|d| d * d).sum::<u64>() != n as u64 {
        return Err(lift_failure(l, "sum of squared degrees differs from the order"));
    }

    let mut order: Vec<usize> = (0..k).collect();
    let is_trivial = |r: &Vec<Cyclotomic>| r.iter().all(|v| v.as_integer() == Some(1));
    order.sort_by(|&a, &b| {
        (degrees[a], !is_trivial(&rows[a]), &rows[a]).cmp(&(degrees[b], !is_trivial(&rows[b]), &rows[b]))
    });
    Ok(CharacterTable {
        prime: l,
        rows: order.iter().map(|&i| rows[i].clone()).collect(),
        degrees: order.iter().map(|&i| degrees[i]).collect(),
    })
}

fn unit(k: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

/// `M[i][l] = #{x ∈ C_i : x^{-1} g_l ∈ C_j}`; the class-sum structure
/// constants, with the central characters as right eigenvectors.
fn class_matrix(g: &FiniteGroup, j: usize, l: u64) -> Vec<Vec<u64>> {
    let cl = g.classes();
    let k = cl.len();
    let mut m = vec![vec![0u64; k]; k];
    for (col, &gl) in cl.representatives.iter().enumerate() {
        for &y in cl.members(j) {
            // x^{-1} g_l = y  ⇔  x = g_l y^{-1}
            let x = g.mul(gl, g.inv(y));
            m[cl.class_of[x]][col] += 1;
        }
    }
    for row in &mut m {
        row.iter_mut().for_each(|v| *v %= l);
    }
    m
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, l: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let iv = inv_mod(rows[r][c], l);
        rows[r].iter_mut().for_each(|x| *x = *x * iv % l);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for cc in 0..ncols {
                    let sub = f * rows[r][cc] % l;
                    rows[i][cc] = (rows[i][cc] + l - sub) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

fn nullspace(mut a: Vec<Vec<u64>>, l: u64) -> Vec<Vec<u64>> {
    let ncols = a.first().map_or(0, Vec::len);
    let pivots = rref(&mut a, l);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (l - a[r][free]) % l;
        }
        out.push(v);
    }
    out
}

/// Splits an invariant subspace (basis vectors) into eigenspaces of `m`.
fn split(m: &[Vec<u64>], mut basis: Vec<Vec<u64>>, l: u64) -> Vec<Vec<Vec<u64>>> {
    let pivots = rref(&mut basis, l);
    let d = basis.len();
    let k = m.len();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| (0..k).map(|i| m[i].iter().zip(b).fold(0, |acc, (x, y)| (acc + x * y) % l)).collect())
        .collect();
    // R[t][s] = (M b_s)[p_t]
    let r: Vec<Vec<u64>> = (0..d).map(|t| (0..d).map(|s| images[s][pivots[t]]).collect()).collect();
    let cp = charpoly(r.clone(), l);
    let roots: Vec<u64> = (0..l).filter(|&x| eval(&cp, x, l) == 0).collect();
    if roots.len() <= 1 {
        return vec![basis];
    }
    roots
        .into_iter()
        .map(|lambda| {
            let shifted: Vec<Vec<u64>> = (0..d)
                .map(|t| (0..d).map(|s| if s == t { (r[t][s] + l - lambda) % l } else { r[t][s] }).collect())
                .collect();
            nullspace(shifted, l)
                .into_iter()
                .map(|c| {
                    (0..k).map(|i| (0..d).fold(0, |acc, s| (acc + c[s] * basis[s][i]) % l)).collect()
                })
                .collect()
        })
        .collect()
}

fn eval(p: &[u64], x: u64, l: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| (acc * x + c) % l)
}

/// Characteristic polynomial (lowest degree first) via Hessenberg reduction.
fn charpoly(mut a: Vec<Vec<u64>>, l: u64) -> Vec<u64> {
    let n = a.len();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| a[i][j] != 0) else { continue };
        if i != j + 1 {
            a.swap(i, j + 1);
            for row in a.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let iv = inv_mod(a[j + 1][j], l);
        for r in j + 2..n {
            let u = a[r][j] * iv % l;
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let sub = u * a[j + 1][c] % l;
                a[r][c] = (a[r][c] + l - sub) % l;
            }
            for row in a.iter_mut() {
                let add = u * row[r] % l;
                row[j + 1] = (row[j + 1] + add) % l;
            }
        }
    }
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &p[m - 1];
        let mut cur = vec![0u64; m + 1];
        let h = a[m - 1][m - 1];
        for (deg, &c) in prev.iter().enumerate() {
            cur[deg + 1] = (cur[deg + 1] + c) % l;
            cur[deg] = (cur[deg] + l - h * c % l) % l;
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = t * a[i][i - 1] % l;
            let coef = t * a[i - 1][m - 1] % l;
            if coef == 0 {
                continue;
            }
            for (deg, &c) in p[i - 1].iter().enumerate() {
                cur[deg] = (cur[deg] + l - coef * c % l) % l;
            }
        }
        p.push(cur);
    }
    p.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_small() {
        // [[2,1],[1,2]] over F_7: x^2 - 4x + 3
        assert_eq!(charpoly(vec![vec![2, 1], vec![1, 2]], 7), vec![3, 3, 1]);
        // companion-like 3x3
        let cp = charpoly(vec![vec![0, 0, 6], vec![1, 0, 0], vec![0, 1, 0]], 7);
        assert_eq!(cp, vec![1, 0, 0, 1]);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(13), 2);
    }
}
