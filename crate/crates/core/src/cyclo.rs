//! Exact elements of `Z[zeta_n]` for the conductors `n` in {1, 4, p}.
//!
//! Coefficients are over the power basis `1, zeta, ..., zeta^(phi(n)-1)`; for
//! `n = p` the relation `zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))` keeps the
//! representation canonical.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Serialize, Deserialize)]
pub struct CycInt {
    n: u32,
    coeffs: Vec<i64>,
}

fn basis_len(n: u32) -> usize {
    match n {
        1 => 1,
        4 => 2,
        p => p as usize - 1,
    }
}

fn checked_sum(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

impl CycInt {
    /// The zero element of conductor `n`.
    pub fn zero(n: u32) -> Self {
        assert!(n == 1 || n == 4 || (n > 2 && crate::field::is_prime(n as u64)), "unsupported conductor {n}");
        Self { n, coeffs: vec![0; basis_len(n)] }
    }

    pub fn integer(k: i64) -> Self {
        Self { n: 1, coeffs: vec![k] }
    }

    /// `i` in `Z[i]`.
    pub fn i() -> Self {
        Self { n: 4, coeffs: vec![0, 1] }
    }

    /// Builds `sum_k counts[k] zeta_N^k` for a root order `N` in {1, 2, 4, p}.
    /// Order 2 lands in conductor 1.
    pub fn from_buckets(counts: &[i64]) -> Result<Self> {
        let order = counts.len();
        let coeffs = match order {
            1 => vec![counts[0]],
            2 => vec![counts[0].checked_sub(counts[1]).ok_or(Error::Overflow)?],
            4 => vec![
                counts[0].checked_sub(counts[2]).ok_or(Error::Overflow)?,
                counts[1].checked_sub(counts[3]).ok_or(Error::Overflow)?,
            ],
            p => {
                let last = counts[p - 1];
                counts[..p - 1]
                    .iter()
                    .map(|&c| c.checked_sub(last).ok_or(Error::Overflow))
                    .collect::<Result<_>>()?
            }
        };
        let n = match order {
            1 | 2 => 1,
            k => k as u32,
        };
        Ok(Self { n, coeffs })
    }

    /// `zeta_order^k` for `order` in {1, 2, 4, p}.
    pub fn root_of_unity(order: u32, k: u32) -> Self {
        let mut counts = vec![0i64; order as usize];
        counts[(k % order) as usize] = 1;
        Self::from_buckets(&counts).expect("single bucket cannot overflow")
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn lift(&self, n: u32) -> Result<Self> {
        if self.n == n {
            return Ok(self.clone());
        }
        if self.n != 1 {
            return Err(Error::ConductorMismatch(self.n, n));
        }
        let mut out = Self::zero(n);
        out.coeffs[0] = self.coeffs[0];
        Ok(out)
    }

    fn common(&self, other: &Self) -> Result<(Self, Self)> {
        let n = if self.n == 1 { other.n } else { self.n };
        Ok((self.lift(n)?, other.lift(n)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| checked_sum(x, y))
            .collect::<Result<_>>()?;
        Ok(Self { n: a.n, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.try_neg()?)
    }

    pub fn try_neg(&self) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|&c| c.checked_neg().ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(Self { n: self.n, coeffs })
    }

    pub fn try_scale(&self, k: i64) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|&c| c.checked_mul(k).ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(Self { n: self.n, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other)?;
        let n = a.n;
        match n {
            1 => Ok(Self::integer(a.coeffs[0].checked_mul(b.coeffs[0]).ok_or(Error::Overflow)?)),
            4 => {
                let (x, y, u, v) = (a.coeffs[0] as i128, a.coeffs[1] as i128, b.coeffs[0] as i128, b.coeffs[1] as i128);
                let re = x * u - y * v;
                let im = x * v + y * u;
                Ok(Self { n, coeffs: vec![narrow(re)?, narrow(im)?] })
            }
            p => {
                let p = p as usize;
                let mut acc = vec![0i128; p];
                for (i, &x) in a.coeffs.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.coeffs.iter().enumerate() {
                        acc[(i + j) % p] += x as i128 * y as i128;
                    }
                }
                let last = acc[p - 1];
                let coeffs = acc[..p - 1].iter().map(|&c| narrow(c - last)).collect::<Result<_>>()?;
                Ok(Self { n, coeffs })
            }
        }
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        match self.n {
            1 => self.clone(),
            4 => Self { n: 4, coeffs: vec![self.coeffs[0], -self.coeffs[1]] },
            p => {
                let p = p as usize;
                let mut counts = vec![0i64; p];
                for (k, &c) in self.coeffs.iter().enumerate() {
                    counts[(p - k) % p] = c;
                }
                Self::from_buckets(&counts).expect("conjugation permutes coefficients")
            }
        }
    }

    /// `x * conj(x)` as a rational integer.
    pub fn norm_sq(&self) -> Result<i64> {
        self.try_mul(&self.conj())?.as_integer()
    }

    pub fn as_integer(&self) -> Result<i64> {
        if self.coeffs[1..].iter().any(|&c| c != 0) {
            return Err(Error::NotRationalInteger);
        }
        Ok(self.coeffs[0])
    }

    /// Floating-point embedding with `zeta_n = exp(2 pi i / n)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.n.max(1) as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += c as f64 * ang.cos();
            im += c as f64 * ang.sin();
        }
        (re, im)
    }
}

/// Values compare equal across conductors when one is a rational integer.
impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        match self.common(other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for CycInt {}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let name = if self.n == 4 { "i".to_string() } else { format!("z{}", self.n) };
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match k {
                0 => c.to_string(),
                1 => format!("{c}*{name}"),
                _ => format!("{c}*{name}^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("cyclotomic addition")
    }
}

impl Add for CycInt {
    type Output = CycInt;
    fn add(self, rhs: CycInt) -> CycInt {
        &self + &rhs
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("cyclotomic subtraction")
    }
}

impl Sub for CycInt {
    type Output = CycInt;
    fn sub(self, rhs: CycInt) -> CycInt {
        &self - &rhs
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("cyclotomic multiplication")
    }
}

impl Mul for CycInt {
    type Output = CycInt;
    fn mul(self, rhs: CycInt) -> CycInt {
        &self * &rhs
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.try_neg().expect("cyclotomic negation")
    }
}
