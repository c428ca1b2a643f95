//! Dense univariate polynomials with exact rational coefficients.

use super::{rat_i, rat_to_f64, rat_to_string, Rat};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable, coefficients low-to-high.
///
/// Canonical form: no trailing zero coefficients; the zero polynomial has an
/// empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// Builds a polynomial from low-to-high coefficients, trimming trailing
    /// zeros.
    #[must_use]
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from integer coefficients (low-to-high).
    #[must_use]
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat_i(c)).collect())
    }

    /// The zero polynomial.
    #[must_use]
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial `1`.
    #[must_use]
    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// The monomial `x`.
    #[must_use]
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// A constant polynomial.
    #[must_use]
    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^k`.
    #[must_use]
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// `true` for the zero polynomial.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    #[must_use]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    #[must_use]
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Low-to-high coefficient slice (no trailing zeros).
    #[must_use]
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    #[must_use]
    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// `true` if nonzero with leading coefficient 1.
    #[must_use]
    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rat::is_one)
    }

    /// Multiplies by the scalar `c`.
    #[must_use]
    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`.
    #[must_use]
    pub fn mul_xpow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// `self^k` by repeated multiplication.
    #[must_use]
    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation by Horner's rule.
    #[must_use]
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Floating-point evaluation (each coefficient rounded once, then
    /// Horner in `f64`).
    #[must_use]
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    /// Smallest integer root `>= n0`, or `None`.
    ///
    /// Candidate range comes from the Cauchy root bound
    /// `|root| <= 1 + max |c_i| / |c_lead|`; each integer in range is
    /// tested exactly. The scan is capped at one million candidates — a
    /// polynomial whose coefficient ratio exceeds that bound is treated as
    /// having no integer roots past the cap, which suits this crate's use
    /// (pre-checking series denominators for poles) where roots are small.
    #[must_use]
    pub fn first_integer_root_at_or_after(&self, n0: i64) -> Option<i64> {
        let lead = self.leading()?;
        if self.coeffs.len() == 1 {
            // Nonzero constant: no roots.
            return None;
        }
        let mut bound = 0.0f64;
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            bound = bound.max(rat_to_f64(&(c / lead).abs()));
        }
        let hi = (1.0 + bound).ceil().min(1.0e6) as i64;
        if n0 > hi {
            return None;
        }
        (n0.max(-hi)..=hi).find(|&n| self.eval(&Rat::from_integer(n.into())).is_zero())
    }

    /// Taylor shift: returns `p(x + c)`.
    ///
    /// Repeated in-place synthetic division by `(x - c)`; pass `k` leaves
    /// the `k`-th Taylor coefficient of `p` at `c` in slot `k`. `O(n^2)`
    /// exact operations.
    #[must_use]
    pub fn shift(&self, c: &Rat) -> Poly {
        if self.is_zero() || c.is_zero() {
            return self.clone();
        }
        let mut a = self.coeffs.clone();
        let m = a.len();
        for k in 0..m.saturating_sub(1) {
            for i in (k..m - 1).rev() {
                let t = &a[i + 1] * c;
                a[i] += t;
            }
        }
        Poly::new(a)
    }

    /// Exact Euclidean division: returns `(q, r)` with `self = q*d + r` and
    /// `deg r < deg d`.
    ///
    /// # Panics
    /// Panics if `d` is zero.
    #[must_use]
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lead_inv = Rat::one() / d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let qn = rem.len() - dd;
        let mut q = vec![Rat::zero(); qn];
        for i in (0..qn).rev() {
            let c = rem[i + dd].clone() * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = dc * &c;
                    rem[i + j] -= t;
                }
            }
            q[i] = c;
        }
        (Poly::new(q), Poly::new(rem))
    }

    /// Monic greatest common divisor by a primitive-remainder ladder over
    /// integers (denominators cleared first, contents stripped every step so
    /// coefficients stay small). Returns the zero polynomial iff both inputs
    /// are zero.
    #[must_use]
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic_or_zero();
        }
        if b.is_zero() {
            return a.monic_or_zero();
        }
        let mut u = primitive_int_coeffs(a);
        let mut v = primitive_int_coeffs(b);
        if u.len() < v.len() {
            std::mem::swap(&mut u, &mut v);
        }
        while !v.is_empty() {
            let r = pseudo_rem(&u, &v);
            u = v;
            v = primitive_part(r);
        }
        let p = Poly::new(u.into_iter().map(Rat::from_integer).collect());
        p.monic_or_zero()
    }

    fn monic_or_zero(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&(Rat::one() / l.clone())),
        }
    }
}

/// Clears denominators and strips the content: the primitive integer
/// coefficient vector of a nonzero polynomial.
fn primitive_int_coeffs(p: &Poly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    primitive_part(ints)
}

/// Divides out the gcd of all coefficients (result empty iff input zero).
fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    for c in &mut v {
        *c = &*c / &g;
    }
    v
}

/// Fraction-free pseudo-remainder of `u` by `v` (both nonzero, `deg u >=
/// deg v` not required): repeatedly scales `u` by the leading coefficient of
/// `v` and subtracts a multiple of `v` until the degree drops below `deg v`.
fn pseudo_rem(u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    let dv = v.len() - 1;
    let lv = v[dv].clone();
    let mut r = u.to_vec();
    while r.len() > dv {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r := lv * r - lr * x^(dr-dv) * v
        for c in &mut r {
            *c = &*c * &lv;
        }
        for (j, vc) in v.iter().enumerate() {
            r[dr - dv + j] -= &lr * vc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mag_s = rat_to_string(&mag);
            match k {
                0 => write!(f, "{mag_s}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_s}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
