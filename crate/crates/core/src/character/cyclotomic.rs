//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! An element is stored in the power basis 1, ζ, …, ζ^{φ(N)-1}, reduced
//! modulo the N-th cyclotomic polynomial, so equal elements of the same
//! conductor have equal coefficient vectors.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = Ratio<i128>;

/// Coefficients of Φ_N, lowest degree first.
fn cyclotomic_poly(n: u32) -> Arc<Vec<i128>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i128>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i128; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_div(&poly, &cyclotomic_poly(d));
        }
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

/// Exact division by a monic integer polynomial.
fn exact_div(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i128; r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        for (j, &b) in den.iter().enumerate() {
            r[i + j] -= c * b;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

#[cfg(test)]
fn totient(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Builds Σ c_k ζ_N^k from coefficients on arbitrary powers.
    pub fn from_powers(conductor: u32, powers: &[(u32, Rational)]) -> Self {
        let n = conductor as usize;
        let mut full = vec![Rational::zero(); n.max(1)];
        for (k, c) in powers {
            full[*k as usize % n.max(1)] += *c;
        }
        Self::reduce(conductor, full)
    }

    fn reduce(conductor: u32, mut c: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(conductor);
        let deg = phi.len() - 1;
        for i in (deg..c.len()).rev() {
            let lead = c[i];
            if lead.is_zero() {
                continue;
            }
            for (j, &b) in phi.iter().enumerate() {
                if b != 0 {
                    c[i - deg + j] -= lead * Rational::from_integer(b);
                }
            }
        }
        c.truncate(deg);
        c.resize(deg, Rational::zero());
        Cyclotomic { conductor, coeffs: c }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i128) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// ζ_N^k.
    pub fn root_of_unity(conductor: u32, k: u32) -> Self {
        Self::from_powers(conductor, &[(k, Rational::one())])
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, when it lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i128> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Re-expresses the element in ℚ(ζ_M), where N divides M.
    pub fn lift(&self, m: u32) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.conductor), "conductor {} does not divide {m}", self.conductor);
        let step = m / self.conductor;
        let powers: Vec<(u32, Rational)> =
            self.coeffs.iter().enumerate().map(|(k, c)| (k as u32 * step, *c)).collect();
        Self::from_powers(m, &powers)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.conductor.lcm(&other.conductor);
        (self.lift(m), other.lift(m))
    }

    /// Complex conjugate: ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        let powers: Vec<(u32, Rational)> =
            self.coeffs.iter().enumerate().map(|(k, c)| ((n - k as u32 % n) % n, *c)).collect();
        Self::from_powers(n, &powers)
    }

    /// Galois conjugate ζ ↦ ζ^k (k coprime to the conductor).
    pub fn galois(&self, k: u32) -> Self {
        let n = self.conductor;
        let powers: Vec<(u32, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| ((i as u64 * k as u64 % n as u64) as u32, *c))
            .collect();
        Self::from_powers(n, &powers)
    }

    pub fn scale(&self, r: Rational) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn div_rational(&self, r: Rational) -> Self {
        assert!(!r.is_zero(), "division by zero");
        self.scale(r.recip())
    }

    /// Multiplicative inverse, by solving the linear system for
    /// multiplication by `self` in the power basis.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.coeffs.len();
        // Column k holds self * ζ^k.
        let cols: Vec<Cyclotomic> = (0..d)
            .map(|k| self * &Cyclotomic::root_of_unity(self.conductor, k as u32))
            .collect();
        let mut m: Vec<Vec<Rational>> = (0..d)
            .map(|r| {
                let mut row: Vec<Rational> = (0..d).map(|c| cols[c].coeff(r)).collect();
                row.push(if r == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= inv;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col];
                    for c in col..=d {
                        let v = m[col][c];
                        m[r][c] -= f * v;
                    }
                }
            }
        }
        Some(Cyclotomic { conductor: self.conductor, coeffs: m.iter().map(|row| row[d]).collect() })
    }

    fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).copied().unwrap_or_else(Rational::zero)
    }

    /// The smallest conductor in which the element can be written.
    pub fn minimal_conductor(&self) -> u32 {
        let n = self.conductor;
        let mut best = n;
        for d in 1..n {
            if n.is_multiple_of(d) && d < best && self.lies_in(d) {
                best = d;
            }
        }
        best
    }

    fn lies_in(&self, d: u32) -> bool {
        // Fixed by every automorphism ζ_N ↦ ζ_N^k with k ≡ 1 mod d.
        let n = self.conductor;
        (1..n).filter(|&k| k.gcd(&n) == 1 && k % d == 1 % d).all(|k| self.galois(k) == *self)
    }

    /// Numerical value (for display only).
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n;
            let c = c.to_f64().unwrap_or(f64::NAN);
            (re + c * a.cos(), im + c * a.sin())
        })
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

fn add_same(a: &Cyclotomic, b: &Cyclotomic, sign: i128) -> Cyclotomic {
    let (a, b) = a.common(b);
    let s = Rational::from_integer(sign);
    Cyclotomic {
        conductor: a.conductor,
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y * s).collect(),
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        add_same(self, rhs, 1)
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        add_same(self, rhs, -1)
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        let (a, b) = self.common(rhs);
        let mut prod = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        Cyclotomic::reduce(a.conductor, prod)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl From<i128> for Cyclotomic {
    fn from(n: i128) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

/// Equality is field equality: elements of different conductors are
/// compared after lifting to the lcm.
impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (x, y) = self.common(other);
        x.coeffs == y.coeffs
    }
}

impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order for canonical sorting only (no field meaning).
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.conductor == other.conductor {
            return self.coeffs.cmp(&other.coeffs);
        }
        let (a, b) = self.common(other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    /// Prints rationals plainly and everything else as a sum of powers of
    /// `z{N}`, e.g. `-1 - 2*z9^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let term = match k {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{k}", self.conductor),
            };
            if term.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{term}")?;
            } else {
                write!(f, "{mag}*{term}")?;
            }
        }
        Ok(())
    }
}

/// Σ_{k} ζ_n^k over k in `ks`, as an element of conductor `n`.
pub fn sum_of_roots(n: u32, ks: impl IntoIterator<Item = u32>) -> Cyclotomic {
    let powers: Vec<(u32, Rational)> = ks.into_iter().map(|k| (k, Rational::one())).collect();
    Cyclotomic::from_powers(n, &powers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(totient(25), 20);
    }

    #[test]
    fn roots_sum_to_zero() {
        for n in [2u32, 3, 5, 9, 25, 27] {
            assert!(sum_of_roots(n, 0..n).is_zero());
            assert_eq!(Cyclotomic::root_of_unity(n, 1).lift(n * 3), Cyclotomic::root_of_unity(n * 3, 3));
        }
    }

    #[test]
    fn field_operations() {
        let z = Cyclotomic::root_of_unity(9, 1);
        let z8 = Cyclotomic::root_of_unity(9, 8);
        assert_eq!(&z * &z8, Cyclotomic::one());
        assert_eq!(z.conj(), z8);
        let a = &z + &Cyclotomic::from_rational(q(1, 2));
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Cyclotomic::one());
        let w = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(w, Cyclotomic::root_of_unity(9, 3));
        assert_eq!((&w + &w.conj()).as_integer(), Some(-1));
        assert_eq!(Cyclotomic::root_of_unity(9, 3).minimal_conductor(), 3);
    }

    #[test]
    fn display() {
        let z = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(format!("{}", z.scale(q(-2, 1))), "-2*z3");
        assert_eq!(format!("{}", Cyclotomic::from_int(5)), "5");
    }
}
