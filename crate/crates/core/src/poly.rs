//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! [`IntPoly`] is the value type shared by every other module. Besides ring
//! arithmetic it carries the structural operators used on h-polynomials:
//! r-sections, the `E_r` operator, palindromicity tests, gamma expansion and
//! the symmetric decomposition `h = a + z b`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Polynomial in `z` with coefficients stored low-to-high.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `z`
    pub fn z() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// `1 + z`
    pub fn one_plus_z() -> Self {
        Self::from_i64s(&[1, 1])
    }

    /// `c z^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from a histogram of exponent counts.
    pub fn from_counts(counts: &[u64]) -> Self {
        Self::from_coeffs(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `z -> z^r`.
    pub fn inflate(&self, r: usize) -> Self {
        if self.is_zero() || r == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * r + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * r] = c.clone();
        }
        IntPoly { coeffs }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact sign of `self(x)` at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        // q^d f(p/q) = sum c_i p^i q^(d-i), q > 0
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        acc.cmp(&BigInt::zero())
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Returns `(f^<r,0>, ..., f^<r,r-1>)` with `f(z) = sum_j z^j f^<r,j>(z^r)`.
    pub fn r_sections(&self, r: usize) -> Result<Vec<IntPoly>> {
        if r == 0 {
            return Err(Error::InvalidParameter("r-sections need r >= 1".into()));
        }
        let mut parts = vec![Vec::new(); r];
        for (i, c) in self.coeffs.iter().enumerate() {
            parts[i % r].push(c.clone());
        }
        Ok(parts.into_iter().map(Self::from_coeffs).collect())
    }

    /// Inverse of [`IntPoly::r_sections`]: `sum_j z^j sections[j](z^r)`.
    pub fn recombine_sections(sections: &[IntPoly]) -> Self {
        let r = sections.len();
        sections
            .iter()
            .enumerate()
            .map(|(j, s)| s.inflate(r).shift(j))
            .sum()
    }

    /// The linear operator `E_r`: keeps exponents divisible by `r` and divides them by `r`.
    pub fn er_apply(&self, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("E_r needs r >= 1".into()));
        }
        Ok(Self::from_coeffs(
            self.coeffs.iter().step_by(r).cloned().collect(),
        ))
    }

    /// Symmetry about `n/2`: `[z^i] = [z^(n-i)]` for `0 <= i <= n`, reading
    /// missing coefficients as zero. Coefficients above `n` must vanish.
    pub fn is_palindromic(&self, n: usize) -> bool {
        if self.degree().is_some_and(|d| d > n) {
            return false;
        }
        (0..=n / 2).all(|i| self.coeff(i) == self.coeff(n - i))
    }

    /// Coordinates in the basis `z^i (1+z)^(n-2i)`, `0 <= i <= n/2`.
    ///
    /// Entries may be negative; gamma-positivity is left to the caller.
    pub fn gamma_expand(&self, n: usize) -> Result<Vec<BigInt>> {
        if !self.is_palindromic(n) {
            return domain(format!("{self} is not palindromic with center {n}/2"));
        }
        let mut rest = self.clone();
        let mut gamma = Vec::with_capacity(n / 2 + 1);
        for i in 0..=n / 2 {
            let g = rest.coeff(i);
            if !g.is_zero() {
                rest = &rest - &gamma_basis(i, n).scale(&g);
            }
            gamma.push(g);
        }
        if !rest.is_zero() {
            return Err(Error::Consistency(format!(
                "gamma expansion left remainder {rest}"
            )));
        }
        Ok(gamma)
    }

    /// Rebuilds `sum gamma_i z^i (1+z)^(n-2i)`.
    pub fn from_gamma(gamma: &[BigInt], n: usize) -> Self {
        gamma
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(i, g)| gamma_basis(i, n).scale(g))
            .sum()
    }

    /// The unique `(a, b)` with `self = a + z b`, `a` palindromic about `n/2`
    /// and `b` palindromic about `(n-1)/2`.
    pub fn symmetric_decompose(&self, n: usize) -> Result<(IntPoly, IntPoly)> {
        if self.degree().is_some_and(|d| d > n) {
            return domain(format!("degree of {self} exceeds {n}"));
        }
        // h_i = a_i + b_{i-1}, a_i = a_{n-i}, b_i = b_{n-1-i}
        let h = |i: usize| self.coeff(i);
        let mut a = vec![BigInt::zero(); n + 1];
        let mut b = vec![BigInt::zero(); n];
        for i in 0..=n {
            a[i] = if i == 0 { h(0) } else { h(i) - &b[i - 1] };
            if i < n {
                b[i] = h(n - i) - &a[i];
            }
        }
        let a = Self::from_coeffs(a);
        let b = Self::from_coeffs(b);
        let ok = a.is_palindromic(n)
            && (n == 0 && b.is_zero() || n > 0 && b.is_palindromic(n - 1))
            && &a + &b.shift(1) == *self;
        if !ok {
            return domain(format!(
                "{self} has no symmetric decomposition with center {n}/2"
            ));
        }
        Ok((a, b))
    }

    /// Exact quotient by `z^k` when `z^k` divides `self`.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < k || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.coeffs[k..].to_vec()))
    }
}

fn gamma_basis(i: usize, n: usize) -> IntPoly {
    IntPoly::one_plus_z().pow((n - 2 * i) as u32).shift(i)
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Powers `(1+z)^0, ..., (1+z)^max`.
pub fn one_plus_z_powers(max: usize) -> Vec<IntPoly> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(IntPoly::one());
    for i in 0..max {
        out.push(&out[i] * &IntPoly::one_plus_z());
    }
    out
}

/// Sums `(1+z)^a z^b` weighted by a count table indexed `[a][b]`.
pub fn poly_from_histogram(table: &[Vec<u64>]) -> IntPoly {
    let powers = one_plus_z_powers(table.len().saturating_sub(1));
    table
        .iter()
        .zip(&powers)
        .filter(|(row, _)| row.iter().any(|&c| c > 0))
        .map(|(row, p)| p * &IntPoly::from_counts(row))
        .sum()
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], negate_b: bool) -> IntPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let coeffs = (0..n)
        .map(|i| {
            let x = a.get(i).unwrap_or(&zero);
            let y = b.get(i).unwrap_or(&zero);
            if negate_b {
                x - y
            } else {
                x + y
            }
        })
        .collect();
    IntPoly::from_coeffs(coeffs)
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl AddAssign for IntPoly {
    fn add_assign(&mut self, rhs: IntPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        *self = &*self - rhs;
    }
}

impl Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<'a> Sum<&'a IntPoly> for IntPoly {
    fn sum<I: Iterator<Item = &'a IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

#[derive(Serialize, Deserialize)]
struct PolyDoc {
    var: String,
    coeffs: Vec<String>,
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyDoc {
            var: "z".into(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = PolyDoc::deserialize(deserializer)?;
        if doc.var != "z" {
            return Err(serde::de::Error::custom(format!(
                "unsupported variable {:?}",
                doc.var
            )));
        }
        let coeffs = doc
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPoly::from_coeffs(coeffs))
    }
}
