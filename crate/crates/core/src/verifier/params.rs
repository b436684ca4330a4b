//! Parameter sets and the calculators relating them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub n: u64,
}

impl DsParams {
    /// Checks `lambda (v - 1) = k (k - 1)` and fills in `n = k - lambda`.
    pub fn new(v: u64, k: u64, lambda: u64) -> Result<Self> {
        if v < 2 || k > v || lambda > k {
            return Err(Error::PreconditionViolated(format!("({v},{k},{lambda}) out of range")));
        }
        if lambda as u128 * (v as u128 - 1) != k as u128 * (k.max(1) as u128 - 1) {
            return Err(Error::PreconditionViolated(format!("({v},{k},{lambda}) fails lambda(v-1) = k(k-1)")));
        }
        Ok(Self { v, k, lambda, n: k - lambda })
    }

    /// Like [`DsParams::new`], also checking a supplied `n`.
    pub fn with_n(v: u64, k: u64, lambda: u64, n: u64) -> Result<Self> {
        let p = Self::new(v, k, lambda)?;
        if p.n != n {
            return Err(Error::PreconditionViolated(format!("n = {n} but k - lambda = {}", p.n)));
        }
        Ok(p)
    }

    /// `k` in {0, 1, v-1, v} or `lambda = k`.
    pub fn is_trivial(&self) -> bool {
        self.k <= 1 || self.k + 1 >= self.v || self.lambda == self.k
    }

    /// The complementary difference set `(v, v-k, v-2k+lambda, n)`.
    pub fn complement(&self) -> Self {
        Self { v: self.v, k: self.v - self.k, lambda: self.v + self.lambda - 2 * self.k, n: self.n }
    }
}

/// Menon/Hadamard parameters `(4t^2, 2t^2 - t, t^2 - t, t^2)`.
pub fn hadamard(t: u64) -> DsParams {
    DsParams { v: 4 * t * t, k: 2 * t * t - t, lambda: t * t - t, n: t * t }
}

/// The nontrivial difference set parameters possible in a group of order `2^r`
/// (with `k < v/2`): `r = 2(d+1)` and `t = 2^d`.
pub fn two_group_ds(r: u32) -> Option<DsParams> {
    (r >= 2 && r % 2 == 0).then(|| hadamard(1u64 << (r / 2 - 1)))
}

/// The sets `D_(t,z)`, `D_z` in a group of order `2^(2m)`.
pub fn suzuki_ds(m: u32) -> DsParams {
    two_group_ds(2 * m).expect("even exponent")
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdsParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl PdsParams {
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Self {
        Self { v, k, lambda, mu }
    }

    /// The counting identity `k (k - 1 - lambda) = mu (v - 1 - k)`.
    pub fn counting_identity_holds(&self) -> bool {
        let (v, k, l, mu) = (self.v as i128, self.k as i128, self.lambda as i128, self.mu as i128);
        k * (k - 1 - l) == mu * (v - 1 - k)
    }

    /// Eigenvalues of the Cayley graph: roots of `x^2 - (lambda - mu) x - (k - mu)`,
    /// when both are integers.
    pub fn integer_eigenvalues(&self) -> Option<(i64, i64)> {
        let a = self.lambda as i128 - self.mu as i128;
        let b = self.k as i128 - self.mu as i128;
        let disc = a * a + 4 * b;
        if disc < 0 {
            return None;
        }
        let s = isqrt(disc as u128) as i128;
        if s * s != disc || (a + s) % 2 != 0 {
            return None;
        }
        Some((((a - s) / 2) as i64, ((a + s) / 2) as i64))
    }

    pub fn latin_square_type(&self) -> Option<LatinSquare> {
        let n = isqrt(self.v as u128) as i64;
        if (n as u128) * (n as u128) != self.v as u128 {
            return None;
        }
        for eps in [1i64, -1] {
            let d = n - eps;
            if d <= 0 || self.k as i64 % d != 0 {
                continue;
            }
            let r = self.k as i64 / d;
            if latin_square(n as u64, r as u64, eps) == Some(*self) {
                return Some(LatinSquare { n: n as u64, r: r as u64, epsilon: eps as i8 });
            }
        }
        None
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatinSquare {
    pub n: u64,
    pub r: u64,
    pub epsilon: i8,
}

/// `(n^2, r(n - eps), eps n + r^2 - 3 eps r, r^2 - eps r)`.
pub fn latin_square(n: u64, r: u64, eps: i64) -> Option<PdsParams> {
    let (n, r) = (n as i64, r as i64);
    let k = r * (n - eps);
    let lambda = eps * n + r * r - 3 * eps * r;
    let mu = r * r - eps * r;
    (k >= 0 && lambda >= 0 && mu >= 0).then(|| PdsParams::new((n * n) as u64, k as u64, lambda as u64, mu as u64))
}

/// The odd-p central partial difference sets: Latin square type with
/// `n = p^m`, `r = p^(m-1)`.
pub fn suzuki_pds(p: u32, m: u32) -> Option<PdsParams> {
    let n = (p as u64).checked_pow(m)?;
    latin_square(n, n / p as u64, 1)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingParams {
    pub mu: i64,
    pub eta: i64,
    /// Number of sets in the family.
    pub l: usize,
}

/// `eta = k (k + sign sqrt(n)) / v`, `mu = eta - sign sqrt(n)`.
pub fn linking_from_ds(p: &DsParams, sign: i64, l: usize) -> Option<LinkingParams> {
    let s = isqrt(p.n as u128) as i64;
    if (s * s) as u64 != p.n {
        return None;
    }
    let num = p.k as i128 * (p.k as i128 + sign as i128 * s as i128);
    if num % p.v as i128 != 0 {
        return None;
    }
    let eta = (num / p.v as i128) as i64;
    Some(LinkingParams { mu: eta - sign * s, eta, l })
}

/// Families in a group of order `2^(2m)`: `eta = 2^(m-2)(2^m - 1)`, `mu - eta = -2^(m-1)`.
pub fn suzuki_linking(m: u32, l: usize) -> LinkingParams {
    let eta = (1i64 << (m - 2)) * ((1i64 << m) - 1);
    LinkingParams { mu: eta - (1i64 << (m - 1)), eta, l }
}

pub fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    let mut r = (x as f64).sqrt() as u128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn menon_family() {
        assert_eq!(suzuki_ds(3), DsParams { v: 64, k: 28, lambda: 12, n: 16 });
        assert_eq!(suzuki_ds(5), DsParams { v: 1024, k: 496, lambda: 240, n: 256 });
        assert_eq!(suzuki_ds(2), DsParams::with_n(16, 6, 2, 4).unwrap());
        assert!(two_group_ds(5).is_none());
        assert!(DsParams::new(64, 28, 11).is_err());
        let c = suzuki_ds(3).complement();
        assert_eq!(c, DsParams::new(64, 36, 20).unwrap());
        assert!(DsParams::new(64, 63, 62).unwrap().is_trivial());
    }

    #[test]
    fn latin_square_displays() {
        let a = PdsParams::new(81, 24, 9, 6);
        let b = PdsParams::new(81, 32, 13, 12);
        assert_eq!(suzuki_pds(3, 2), Some(a));
        assert_eq!(a.latin_square_type(), Some(LatinSquare { n: 9, r: 3, epsilon: 1 }));
        assert_eq!(b.latin_square_type(), Some(LatinSquare { n: 9, r: 4, epsilon: 1 }));
        assert!(a.counting_identity_holds() && b.counting_identity_holds());
        assert!(!PdsParams::new(81, 24, 9, 7).counting_identity_holds());
        assert_eq!(a.integer_eigenvalues(), Some((-3, 6)));
        // Paley (9,4,1,2) fits both signs: (n, r) = (3, 2) and (3, 1)
        let paley = PdsParams::new(9, 4, 1, 2);
        assert_eq!(paley.latin_square_type(), Some(LatinSquare { n: 3, r: 2, epsilon: 1 }));
        assert_eq!(latin_square(3, 1, -1), Some(paley));
        let big = suzuki_pds(5, 9).unwrap();
        assert_eq!(big.k, 5u64.pow(8) * (5u64.pow(9) - 1));
        assert_eq!(big.integer_eigenvalues(), Some((-(5i64.pow(8)), 4 * 5i64.pow(8))));
    }

    #[test]
    fn linking_two_group_case() {
        for m in [3, 4, 6, 8] {
            let ds = suzuki_ds(m);
            assert_eq!(linking_from_ds(&ds, 1, 3), Some(suzuki_linking(m, 3)));
        }
        let l = suzuki_linking(6, 3);
        assert_eq!((l.mu - l.eta, l.eta), (-32, 1008));
    }

    proptest::proptest! {
        #[test]
        fn hadamard_satisfies_the_ds_identity(t in 1u64..5000) {
            let h = hadamard(t);
            proptest::prop_assert_eq!(DsParams::new(h.v, h.k, h.lambda).unwrap(), h);
        }

        #[test]
        fn latin_squares_satisfy_counting(n in 2u64..400, r in 1u64..50, neg in proptest::bool::ANY) {
            let eps = if neg { -1 } else { 1 };
            if let Some(p) = latin_square(n, r, eps) {
                if p.k < p.v {
                    proptest::prop_assert!(p.counting_identity_holds());
                }
            }
        }
    }
}
