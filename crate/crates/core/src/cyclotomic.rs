//! Exact arithmetic in `Z[ζ_n]` and `Q(ζ_n)`.
//!
//! A [`CycInt`] is stored in group-ring form: a length-`n` coefficient vector
//! for `Σ c_i ζ_n^i`, reduced only modulo `x^n - 1`. Accumulating a character
//! sum term is then a single coefficient increment. Equality and rationality
//! questions go through [`CycInt::canonical`], which reduces the representing
//! polynomial modulo the cyclotomic polynomial `Φ_n`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// Largest cyclotomic order reachable through [`CycInt::promote`].
pub const MAX_ORDER: usize = 5000;

/// `Φ_n` with integer coefficients, low degree first. Memoized.
pub fn cyclotomic_poly(n: usize) -> Arc<Vec<i128>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<i128>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.read().unwrap().get(&n) {
        return hit.clone();
    }
    assert!(n >= 1, "cyclotomic order must be positive");
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i128; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        poly = exact_div(&poly, &cyclotomic_poly(d));
    }
    let poly = Arc::new(poly);
    cache.write().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i128; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// An element of `Z[ζ_n]` in group-ring representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    n: usize,
    coeffs: Vec<i128>,
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.canonical();
        let mut terms = Vec::new();
        for (i, &c) in canon.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else if terms.len() == 1 && canon.coeffs[1..].iter().all(|&c| c == 0) {
            write!(f, "{}", terms[0])
        } else {
            write!(f, "[{}] (z = zeta_{})", terms.join(" + "), self.n)
        }
    }
}

impl CycInt {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        Self {
            n,
            coeffs: vec![0; n],
        }
    }

    pub fn from_int(n: usize, v: i128) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[0] = v;
        out
    }

    pub fn one(n: usize) -> Self {
        Self::from_int(n, 1)
    }

    /// `ζ_n^k`.
    pub fn root(n: usize, k: i64) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[k.rem_euclid(n as i64) as usize] = 1;
        out
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<i128>) -> Self {
        let mut out = Self::zero(n);
        for (i, c) in coeffs.into_iter().enumerate() {
            out.coeffs[i % n] += c;
        }
        out
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Group-ring coefficients (not canonical).
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Adds `v · ζ_n^k` in place.
    #[inline]
    pub fn bump(&mut self, k: usize, v: i128) {
        self.coeffs[k % self.n] += v;
    }

    /// Adds `v · ζ^shift · other` in place.
    pub fn add_rotated(&mut self, other: &CycInt, shift: usize, v: i128) {
        assert_eq!(self.n, other.n, "order mismatch");
        let n = self.n;
        let shift = shift % n;
        for (i, &c) in other.coeffs.iter().enumerate() {
            if c != 0 {
                let k = if i + shift >= n {
                    i + shift - n
                } else {
                    i + shift
                };
                self.coeffs[k] += v * c;
            }
        }
    }

    pub fn l1_norm(&self) -> i128 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        let (a, b) = lift_pair(self, other).expect("incompatible cyclotomic orders");
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycInt { n: a.n, coeffs }
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, v: i128) -> CycInt {
        CycInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * v).collect(),
        }
    }

    /// Product in the group ring. Panics on coefficient overflow, which the
    /// ℓ¹ guard in [`CycInt::checked_mul`] detects before any work is done.
    pub fn mul(&self, other: &CycInt) -> CycInt {
        self.checked_mul(other).expect("cyclotomic product")
    }

    pub fn checked_mul(&self, other: &CycInt) -> Result<CycInt> {
        let (a, b) = lift_pair(self, other)?;
        // |coefficients of a·b| ≤ ‖a‖₁‖b‖₁
        a.l1_norm()
            .checked_mul(b.l1_norm())
            .ok_or(Error::CoefficientOverflow)?;
        let n = a.n;
        let (sparse, dense) = if nonzeros(&a) <= nonzeros(&b) {
            (&a, &b)
        } else {
            (&b, &a)
        };
        let mut out = vec![0i128; n];
        for (i, &x) in sparse.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (head, tail) = dense.coeffs.split_at(n - i);
            for (slot, &y) in out[i..].iter_mut().zip(head) {
                *slot += x * y;
            }
            for (slot, &y) in out[..i].iter_mut().zip(tail) {
                *slot += x * y;
            }
        }
        Ok(CycInt { n, coeffs: out })
    }

    pub fn pow(&self, mut e: u32) -> CycInt {
        let mut acc = CycInt::one(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplication by `ζ_n^k`.
    pub fn rotate(&self, k: i64) -> CycInt {
        let n = self.n;
        let k = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + k) % n] = c;
        }
        CycInt { n, coeffs }
    }

    /// Complex conjugation `ζ_n ↦ ζ_n^{-1}`.
    pub fn conj(&self) -> CycInt {
        self.galois(-1)
    }

    /// The automorphism `ζ_n ↦ ζ_n^k` for `gcd(k, n) = 1`.
    pub fn galois(&self, k: i64) -> CycInt {
        let n = self.n;
        let mut coeffs = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i as i64 * k).rem_euclid(n as i64) as usize] += c;
        }
        CycInt { n, coeffs }
    }

    /// The same element viewed in `Z[ζ_m]` for a multiple `m` of the order.
    pub fn promote(&self, m: usize) -> Result<CycInt> {
        if !m.is_multiple_of(self.n) {
            return Err(Error::Domain(format!(
                "order {} does not divide {m}",
                self.n
            )));
        }
        if m > MAX_ORDER {
            return Err(Error::OrderBudget(m));
        }
        let step = m / self.n;
        let mut coeffs = vec![0; m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c;
        }
        Ok(CycInt { n: m, coeffs })
    }

    /// Representative of degree below `φ(n)`: the group-ring polynomial
    /// reduced modulo `Φ_n`. Idempotent.
    pub fn canonical(&self) -> CycInt {
        let phi = cyclotomic_poly(self.n);
        let deg = phi.len() - 1;
        let mut c = self.coeffs.clone();
        for top in (deg..self.n).rev() {
            let lead = c[top];
            if lead == 0 {
                continue;
            }
            for (j, &pj) in phi[..deg].iter().enumerate() {
                if pj != 0 {
                    let slot = &mut c[top - deg + j];
                    *slot = lead
                        .checked_mul(pj)
                        .and_then(|t| slot.checked_sub(t))
                        .expect("coefficient overflow during reduction");
                }
            }
            c[top] = 0;
        }
        CycInt {
            n: self.n,
            coeffs: c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0) || self.canonical().coeffs.iter().all(|&c| c == 0)
    }

    /// Equality as elements of `Z[ζ]`, lifting to a common order if needed.
    pub fn equals(&self, other: &CycInt) -> bool {
        match lift_pair(self, other) {
            Ok((a, b)) => a.sub(&b).is_zero(),
            Err(_) => false,
        }
    }

    /// The integer value if the element lies in `Z`.
    pub fn to_integer(&self) -> Option<i128> {
        let c = self.canonical();
        c.coeffs[1..].iter().all(|&x| x == 0).then_some(c.coeffs[0])
    }

    /// Content (gcd of the canonical coefficients).
    fn content(&self) -> i128 {
        self.coeffs.iter().fold(0i128, |g, &c| g.gcd(&c))
    }
}

fn nonzeros(a: &CycInt) -> usize {
    a.coeffs.iter().filter(|&&c| c != 0).count()
}

/// Lifts both operands to `Z[ζ_lcm]`.
pub fn lift_pair(a: &CycInt, b: &CycInt) -> Result<(CycInt, CycInt)> {
    if a.n == b.n {
        return Ok((a.clone(), b.clone()));
    }
    let m = a.n.lcm(&b.n);
    Ok((a.promote(m)?, b.promote(m)?))
}

/// An element of `Q(ζ_n)` written `num / den` with `den > 0`, the numerator
/// canonical and `gcd(den, content(num)) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycRat {
    num: CycInt,
    den: i128,
}

impl fmt::Debug for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            None if self.den == 1 => write!(f, "{}", self.num),
            None => write!(f, "{} / {}", self.num, self.den),
        }
    }
}

impl CycRat {
    pub fn new(num: CycInt, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let mut num = num.canonical();
        let mut den = den;
        if den < 0 {
            num = num.neg();
            den = -den;
        }
        let g = num.content().gcd(&den);
        if g > 1 {
            for c in num.coeffs.iter_mut() {
                *c /= g;
            }
            den /= g;
        }
        Self { num, den }
    }

    pub fn from_int(n: usize, v: i128) -> Self {
        Self::new(CycInt::from_int(n, v), 1)
    }

    pub fn from_ratio(n: usize, r: Ratio<i128>) -> Self {
        Self::new(CycInt::from_int(n, *r.numer()), *r.denom())
    }

    pub fn zero(n: usize) -> Self {
        Self::from_int(n, 0)
    }

    pub fn numer(&self) -> &CycInt {
        &self.num
    }
    pub fn denom(&self) -> i128 {
        self.den
    }
    pub fn order(&self) -> usize {
        self.num.n
    }

    pub fn add(&self, other: &CycRat) -> CycRat {
        let g = self.den.gcd(&other.den);
        let (l, r) = (other.den / g, self.den / g);
        let num = self.num.scale(l).add(&other.num.scale(r));
        CycRat::new(num, self.den / g * other.den)
    }

    pub fn neg(&self) -> CycRat {
        CycRat {
            num: self.num.neg(),
            den: self.den,
        }
    }

    pub fn sub(&self, other: &CycRat) -> CycRat {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycRat) -> CycRat {
        CycRat::new(self.num.mul(&other.num), self.den * other.den)
    }

    pub fn scale(&self, r: Ratio<i128>) -> CycRat {
        CycRat::new(self.num.scale(*r.numer()), self.den * r.denom())
    }

    pub fn scale_int(&self, v: i128) -> CycRat {
        self.scale(Ratio::from_integer(v))
    }

    pub fn conj(&self) -> CycRat {
        CycRat::new(self.num.conj(), self.den)
    }

    pub fn promote(&self, m: usize) -> Result<CycRat> {
        Ok(CycRat::new(self.num.promote(m)?, self.den))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn equals(&self, other: &CycRat) -> bool {
        match lift_pair(&self.num, &other.num) {
            Ok((a, b)) => a.scale(other.den).sub(&b.scale(self.den)).is_zero(),
            Err(_) => false,
        }
    }

    /// The rational value when every non-constant canonical coefficient is 0.
    pub fn to_rational(&self) -> Option<Ratio<i128>> {
        self.num.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then(|| Ratio::new(self.num.coeffs[0], self.den))
    }
}
