//! Exact arithmetic in GF(p^m) together with the fixed field GF(p^e) of the
//! Frobenius power `theta(x) = x^(p^l)`.
//!
//! Elements are stored as their coefficient vector (polynomial basis, ascending
//! degree) packed into a base-p integer: `index = sum c_i p^i`. The integer
//! order of that index is the canonical order used for every "smallest
//! admissible" choice in this crate. Multiplication goes through discrete
//! log/antilog tables built once per context.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;
const MAX_DEGREE: usize = 22;

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn from_index(index: u32) -> Self {
        Self(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F#{}", self.0)
    }
}

/// An element of the fixed subfield GF(p^e), indexed by its coordinates in
/// the basis `1, beta, ..., beta^(e-1)` where `beta` generates GF(p^e)^*.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubfieldElement(u32);

impl SubfieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn from_index(index: u32) -> Self {
        Self(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for SubfieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S#{}", self.0)
    }
}

/// `p,m,l` or `p,m,l,c0:c1:...:cm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub l: u32,
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn new(p: u32, m: u32, l: u32) -> Self {
        Self { p, m, l, modulus: None }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(',').collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(Error::Parse(format!("field spec `{s}` must be p,m,l[,c0:..:cm]")));
        }
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad integer `{t}` in field spec")))
        };
        let modulus = match parts.get(3) {
            Some(coeffs) => Some(coeffs.split(':').map(num).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        Ok(Self { p: num(parts[0])?, m: num(parts[1])?, l: num(parts[2])?, modulus })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.p, self.m, self.l)?;
        if let Some(modulus) = &self.modulus {
            let coeffs: Vec<String> = modulus.iter().map(u32::to_string).collect();
            write!(f, ",{}", coeffs.join(":"))?;
        }
        Ok(())
    }
}

/// A realization of GF(p^m) with its Frobenius power theta and fixed field.
pub struct FieldCtx {
    p: u32,
    m: u32,
    l: u32,
    e: u32,
    f: u32,
    q: u32,
    pe: u32,
    modulus: Vec<u32>,
    explicit_modulus: bool,
    gamma: FieldElement,
    /// `exp[k] = gamma^k` for `k < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`.
    log: Vec<u32>,
    /// `p^l mod (q-1)`.
    theta_exp: u64,
    /// `Tr_m(x^i)` for the polynomial basis.
    basis_trace: Vec<u32>,
    sub_to_full: Vec<FieldElement>,
    full_to_sub: Vec<u32>,
    sub_trace: Vec<u32>,
    shared_j: Option<FieldElement>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("l", &self.l)
            .field("e", &self.e)
            .field("f", &self.f)
            .field("modulus", &self.modulus)
            .field("gamma", &self.gamma)
            .finish()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % n as u128) as u64;
        }
        base = (base as u128 * base as u128 % n as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Solves `c * x = r (mod n)`; returns every solution in `[0, n)`.
fn solve_congruence(c: u64, r: u64, n: u64) -> Vec<u64> {
    let c = c % n;
    let r = r % n;
    let g = gcd(c, n);
    if r % g != 0 {
        return Vec::new();
    }
    let (c1, r1, n1) = (c / g, r / g, n / g);
    let inv = if n1 == 1 { 0 } else { mod_inverse(c1, n1) };
    let x0 = (r1 as u128 * inv as u128 % n1.max(1) as u128) as u64;
    (0..g).map(|k| x0 + k * n1).collect()
}

fn mod_inverse(a: u64, n: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    old_s.rem_euclid(n as i128) as u64
}

/// Dense polynomial arithmetic over GF(p); coefficient vectors are ascending.
mod poly {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn reduce(prod: &mut Vec<u64>, modulus: &[u32], p: u64) -> Vec<u32> {
        let m = modulus.len() - 1;
        for k in (m..prod.len()).rev() {
            let c = prod[k] % p;
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            let neg = p - c;
            for i in 0..m {
                prod[k - m + i] = (prod[k - m + i] + neg * modulus[i] as u64) % p;
            }
        }
        let mut out: Vec<u32> = prod.iter().take(m).map(|&c| (c % p) as u32).collect();
        out.resize(m, 0);
        out
    }

    pub fn mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u64) -> Vec<u32> {
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
                }
            }
        }
        reduce(&mut prod, modulus, p)
    }

    pub fn powmod(base: &[u32], mut exp: u64, modulus: &[u32], p: u64) -> Vec<u32> {
        let m = modulus.len() - 1;
        let mut acc = vec![0u32; m];
        acc[0] = 1;
        let mut b = base.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(&acc, &b, modulus, p);
            }
            b = mulmod(&b, &b, modulus, p);
            exp >>= 1;
        }
        acc
    }

    fn inv_mod_p(a: u64, p: u64) -> u64 {
        super::pow_mod(a, p - 2, p)
    }

    /// Remainder of `a` modulo `b` (b nonzero, trimmed).
    fn rem(a: &[u32], b: &[u32], p: u64) -> Vec<u32> {
        let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
        let db = b.len() - 1;
        let lead_inv = inv_mod_p(b[db] as u64, p);
        while r.len() > db {
            let top = r.len() - 1;
            let c = r[top] % p * lead_inv % p;
            if c != 0 {
                for i in 0..=db {
                    let idx = top - db + i;
                    r[idx] = (r[idx] + (p - c) * b[i] as u64 % p) % p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        r.into_iter().map(|c| c as u32).collect()
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u64) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Rabin's irreducibility test for a monic polynomial of degree >= 2.
    pub fn is_irreducible(modulus: &[u32], p: u64) -> bool {
        let m = modulus.len() - 1;
        if modulus[m] != 1 || modulus[0] == 0 {
            return false;
        }
        let mut x = vec![0u32; m];
        x[1] = 1;
        let mut frob = Vec::with_capacity(m + 1);
        frob.push(x.clone());
        for k in 1..=m {
            let next = powmod(&frob[k - 1], p, modulus, p);
            frob.push(next);
        }
        if frob[m] != x {
            return false;
        }
        for r in super::prime_factors(m as u64) {
            let h = &frob[m / r as usize];
            let mut diff: Vec<u32> = h.clone();
            diff[1] = ((diff[1] as u64 + p - 1) % p) as u32;
            trim(&mut diff);
            if diff.is_empty() {
                return false;
            }
            let g = gcd(&diff, modulus, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl FieldCtx {
    pub fn new(p: u32, m: u32, l: u32) -> Result<Self> {
        Self::build(p, m, l, None)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Self::build(spec.p, spec.m, spec.l, spec.modulus.clone())
    }

    pub fn with_modulus(p: u32, m: u32, l: u32, modulus: Vec<u32>) -> Result<Self> {
        Self::build(p, m, l, Some(modulus))
    }

    fn build(p: u32, m: u32, l: u32, explicit: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m < 2 {
            return Err(Error::DegreeTooSmall(m));
        }
        if l == 0 || l % m == 0 {
            return Err(Error::TrivialTheta { m, l });
        }
        let e = gcd(l as u64, m as u64) as u32;
        let f = m / e;
        let order = (p as u64).checked_pow(m).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = match order {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge((p as u64).saturating_pow(m))),
        };
        if m as usize > MAX_DEGREE {
            return Err(Error::FieldTooLarge(q as u64));
        }
        let pu = p as u64;

        let explicit_modulus = explicit.is_some();
        let modulus = match explicit {
            Some(modulus) => {
                if modulus.len() != m as usize + 1
                    || modulus.iter().any(|&c| c >= p)
                    || !poly::is_irreducible(&modulus, pu)
                {
                    return Err(Error::NotIrreducible(m));
                }
                modulus
            }
            None => (0..q)
                .map(|low| {
                    let mut coeffs = digits_of(low, p, m);
                    coeffs.push(1);
                    coeffs
                })
                .find(|cand| poly::is_irreducible(cand, pu))
                .ok_or(Error::NotIrreducible(m))?,
        };

        let order_mult = (q - 1) as u64;
        let factors = prime_factors(order_mult);
        let gamma_coeffs = (1..q)
            .map(|idx| digits_of(idx, p, m))
            .find(|g| {
                factors.iter().all(|&r| {
                    let h = poly::powmod(g, order_mult / r, &modulus, pu);
                    !(h[0] == 1 && h[1..].iter().all(|&c| c == 0))
                })
            })
            .expect("a finite field always has a primitive element");
        let gamma = FieldElement(index_of(&gamma_coeffs, p));

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        for k in 0..n {
            let idx = index_of(&cur, p);
            exp[k] = idx;
            exp[k + n] = idx;
            log[idx as usize] = k as u32;
            cur = poly::mulmod(&cur, &gamma_coeffs, &modulus, pu);
        }

        let theta_exp = pow_mod(pu, l as u64, order_mult);
        let mut ctx = FieldCtx {
            p,
            m,
            l,
            e,
            f,
            q,
            pe: p.pow(e),
            modulus,
            explicit_modulus,
            gamma,
            exp,
            log,
            theta_exp,
            basis_trace: Vec::new(),
            sub_to_full: Vec::new(),
            full_to_sub: Vec::new(),
            sub_trace: Vec::new(),
            shared_j: None,
        };

        ctx.basis_trace = (0..m)
            .map(|i| {
                let t = ctx.trace_slow(FieldElement(p.pow(i)));
                debug_assert!(t.0 < p);
                t.0
            })
            .collect();

        // beta = gamma^((q-1)/(p^e-1)) generates GF(p^e)^*.
        let beta = ctx.pow(gamma, order_mult / (ctx.pe as u64 - 1));
        let beta_pows: Vec<FieldElement> =
            (0..e).map(|k| ctx.pow(beta, k as u64)).collect();
        let mut full_to_sub = vec![u32::MAX; q as usize];
        let mut sub_to_full = Vec::with_capacity(ctx.pe as usize);
        for s in 0..ctx.pe {
            let coords = digits_of(s, p, e);
            let mut acc = FieldElement::ZERO;
            for (k, &c) in coords.iter().enumerate() {
                acc = ctx.add(acc, ctx.mul(FieldElement(c), beta_pows[k]));
            }
            full_to_sub[acc.0 as usize] = s;
            sub_to_full.push(acc);
        }
        ctx.full_to_sub = full_to_sub;
        ctx.sub_to_full = sub_to_full;
        ctx.sub_trace = (0..ctx.pe)
            .map(|s| {
                let x = ctx.sub_to_full[s as usize];
                let mut acc = FieldElement::ZERO;
                let mut y = x;
                for _ in 0..e {
                    acc = ctx.add(acc, y);
                    y = ctx.pow(y, p as u64);
                }
                debug_assert!(acc.0 < p);
                acc.0
            })
            .collect();

        if f == 2 {
            let j = ctx.elements().find(|&j| ctx.trace_rel(j) == SubfieldElement::ONE);
            ctx.shared_j = j;
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    /// `p^m`.
    pub fn order(&self) -> u32 {
        self.q
    }
    /// `p^e`.
    pub fn sub_order(&self) -> u32 {
        self.pe
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn gamma(&self) -> FieldElement {
        self.gamma
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            m: self.m,
            l: self.l,
            modulus: self.explicit_modulus.then(|| self.modulus.clone()),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(FieldElement)
    }

    pub fn sub_elements(&self) -> impl Iterator<Item = SubfieldElement> + '_ {
        (0..self.pe).map(SubfieldElement)
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.q
    }

    /// Coefficients of `a` in ascending degree.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits_of(a.0, self.p, self.m)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!(
                "expected {} coefficients below {}, got {coeffs:?}",
                self.m, self.p
            )));
        }
        Ok(FieldElement(index_of(coeffs, self.p)))
    }

    pub fn sub_coeffs(&self, x: SubfieldElement) -> Vec<u32> {
        digits_of(x.0, self.p, self.e)
    }

    pub fn sub_from_coeffs(&self, coeffs: &[u32]) -> Result<SubfieldElement> {
        if coeffs.len() != self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!(
                "expected {} subfield coefficients below {}, got {coeffs:?}",
                self.e, self.p
            )));
        }
        Ok(SubfieldElement(index_of(coeffs, self.p)))
    }

    /// The image of a residue `c mod p` in GF(p^m).
    pub fn scalar(&self, c: u32) -> FieldElement {
        FieldElement(c % self.p)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut w) = (0u32, 1u32);
        while x != 0 || y != 0 {
            let s = x % p + y % p;
            out += if s >= p { s - p } else { s } * w;
            x /= p;
            y /= p;
            w = w.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut x = a.0;
        let (mut out, mut w) = (0u32, 1u32);
        while x != 0 {
            let d = x % p;
            if d != 0 {
                out += (p - d) * w;
            }
            x /= p;
            w = w.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroParameter);
        }
        let n = self.q - 1;
        Ok(FieldElement(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.q - 1) as u64;
        let idx = (self.log[a.0 as usize] as u64 % n) as u128 * (k % n) as u128 % n as u128;
        FieldElement(self.exp[idx as usize])
    }

    /// Discrete logarithm to base gamma; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    pub fn gamma_pow(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    /// `theta(a) = a^(p^l)`.
    pub fn theta(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.theta_exp)
    }

    /// `theta^k(a)`.
    pub fn theta_iter(&self, a: FieldElement, k: u32) -> FieldElement {
        let n = (self.q - 1) as u64;
        self.pow(a, pow_mod(self.theta_exp, k as u64, n))
    }

    /// `a * theta(a)`.
    pub fn norm_like(&self, a: FieldElement) -> FieldElement {
        self.mul(a, self.theta(a))
    }

    fn trace_slow(&self, a: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut y = a;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as u64);
        }
        acc
    }

    /// Absolute trace GF(p^m) -> GF(p), as a residue.
    pub fn trace_m(&self, a: FieldElement) -> u32 {
        let p = self.p;
        if p == 2 {
            let mut acc = 0;
            let mut x = a.0;
            let mut i = 0;
            while x != 0 {
                acc ^= (x & 1) & self.basis_trace[i];
                x >>= 1;
                i += 1;
            }
            return acc;
        }
        let mut x = a.0;
        let mut acc = 0u64;
        let mut i = 0;
        while x != 0 {
            acc += (x % p) as u64 * self.basis_trace[i] as u64;
            x /= p;
            i += 1;
        }
        (acc % p as u64) as u32
    }

    /// Coefficients `t_i = Tr_m(u * x^i)`, so that `Tr_m(u*b) = sum digit_i(b) t_i`.
    pub fn trace_functional(&self, u: FieldElement) -> Vec<u32> {
        (0..self.m).map(|i| self.trace_m(self.mul(u, FieldElement(self.p.pow(i))))).collect()
    }

    /// Absolute trace GF(p^e) -> GF(p).
    pub fn trace_e(&self, u: SubfieldElement) -> u32 {
        self.sub_trace[u.0 as usize]
    }

    /// Relative trace GF(p^m) -> GF(p^e).
    pub fn trace_rel(&self, a: FieldElement) -> SubfieldElement {
        let mut acc = FieldElement::ZERO;
        let mut y = a;
        for _ in 0..self.f {
            acc = self.add(acc, y);
            y = self.theta(y);
        }
        self.to_sub(acc).expect("relative trace lands in the fixed field")
    }

    pub fn embed(&self, u: SubfieldElement) -> FieldElement {
        self.sub_to_full[u.0 as usize]
    }

    pub fn to_sub(&self, a: FieldElement) -> Option<SubfieldElement> {
        match self.full_to_sub[a.0 as usize] {
            u32::MAX => None,
            s => Some(SubfieldElement(s)),
        }
    }

    pub fn in_subfield(&self, a: FieldElement) -> bool {
        self.full_to_sub[a.0 as usize] != u32::MAX
    }

    pub fn s_add(&self, x: SubfieldElement, y: SubfieldElement) -> SubfieldElement {
        self.sub_of(self.add(self.embed(x), self.embed(y)))
    }

    pub fn s_neg(&self, x: SubfieldElement) -> SubfieldElement {
        self.sub_of(self.neg(self.embed(x)))
    }

    pub fn s_sub(&self, x: SubfieldElement, y: SubfieldElement) -> SubfieldElement {
        self.sub_of(self.sub(self.embed(x), self.embed(y)))
    }

    pub fn s_mul(&self, x: SubfieldElement, y: SubfieldElement) -> SubfieldElement {
        self.sub_of(self.mul(self.embed(x), self.embed(y)))
    }

    pub fn s_pow(&self, x: SubfieldElement, k: u64) -> SubfieldElement {
        self.sub_of(self.pow(self.embed(x), k))
    }

    pub fn s_inv(&self, x: SubfieldElement) -> Result<SubfieldElement> {
        Ok(self.sub_of(self.inv(self.embed(x))?))
    }

    /// Scales a subfield element by a residue mod p.
    pub fn s_scale(&self, c: u32, x: SubfieldElement) -> SubfieldElement {
        self.sub_of(self.mul(self.scalar(c), self.embed(x)))
    }

    fn sub_of(&self, a: FieldElement) -> SubfieldElement {
        SubfieldElement(self.full_to_sub[a.0 as usize])
    }

    /// Nonzero square in GF(p^m) (every nonzero element when p = 2).
    pub fn is_square(&self, a: FieldElement) -> bool {
        match self.log(a) {
            None => false,
            Some(k) => self.p == 2 || k % 2 == 0,
        }
    }

    /// Nonzero square of GF(p^e).
    pub fn s_is_square(&self, u: SubfieldElement) -> bool {
        let Some(k) = self.log(self.embed(u)) else {
            return false;
        };
        if self.p == 2 {
            return true;
        }
        let step = (self.q - 1) / (self.pe - 1);
        (k / step) % 2 == 0
    }

    /// The smallest nonsquare of GF(p^e) (p odd).
    pub fn x0(&self) -> Option<SubfieldElement> {
        if self.p == 2 {
            return None;
        }
        self.sub_elements().find(|&u| !u.is_zero() && !self.s_is_square(u))
    }

    /// `f_{a,theta}(x) = a*theta(x) - x*theta(a)`.
    pub fn f_a_theta(&self, a: FieldElement, x: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(self.sub(self.mul(a, self.theta(x)), self.mul(x, self.theta(a))))
    }

    /// The complement generator `j` with `j + theta(j) = 1` used when f = 2.
    pub fn shared_j(&self) -> Option<FieldElement> {
        self.shared_j
    }

    /// Decomposition `GF(p^m) = Im(f_{a,theta}) + j_a GF(p^e)` with the canonical `j_a`.
    pub fn image_and_j(&self, a: FieldElement) -> Result<ImageDecomp> {
        ImageDecomp::new(self, a)
    }

    /// Solves for the canonical `a_v`.
    ///
    /// For p = 2 this is the unique `a` with `a*theta(a) = v^-1`; for odd p it is
    /// the smaller of the two solutions of `v*a*theta(a) = x_v`, where `x_v` is 1
    /// for squares and the smallest subfield nonsquare otherwise.
    pub fn solve_a_v(&self, v: FieldElement) -> Result<FieldElement> {
        if v.is_zero() {
            return Err(Error::ZeroParameter);
        }
        if self.f % 2 == 0 {
            return Err(Error::NoSolution(format!("a_v requires odd f, got f = {}", self.f)));
        }
        if self.p != 2 && self.f % self.p == 0 {
            return Err(Error::NoSolution(format!("a_v requires p not dividing f = {}", self.f)));
        }
        let vinv = self.inv(v)?;
        let target = if self.p == 2 || self.is_square(v) {
            vinv
        } else {
            let x0 = self.x0().expect("odd p has a subfield nonsquare");
            self.mul(self.embed(x0), vinv)
        };
        self.solve_norm_like(target).ok_or_else(|| {
            Error::NoSolution(format!("a*theta(a) = {target:?} has no solution"))
        })
    }

    /// Smallest `a` with `a*theta(a) = target`.
    pub fn solve_norm_like(&self, target: FieldElement) -> Option<FieldElement> {
        let n = (self.q - 1) as u64;
        let rhs = self.log(target)? as u64;
        solve_congruence(1 + self.theta_exp, rhs, n)
            .into_iter()
            .map(|k| self.gamma_pow(k))
            .min()
    }

    /// The canonical `z` and its square root in GF(p^e).
    ///
    /// For p = 2 any nonzero `z` is admissible and `sqrt(z) = z^(2^(e-1))`. For
    /// odd p, `z` must be a nonzero square with `Tr_e(z) = 0`.
    pub fn find_z(&self, supplied: Option<SubfieldElement>) -> Result<(SubfieldElement, SubfieldElement)> {
        let admissible = |z: SubfieldElement| {
            !z.is_zero() && (self.p == 2 || (self.s_is_square(z) && self.trace_e(z) == 0))
        };
        let z = match supplied {
            Some(z) if admissible(z) => z,
            Some(_) => return Err(Error::NoValidZ),
            None => self.sub_elements().find(|&z| admissible(z)).ok_or(Error::NoValidZ)?,
        };
        Ok((z, self.sqrt_subfield(z)?))
    }

    pub fn sqrt_subfield(&self, z: SubfieldElement) -> Result<SubfieldElement> {
        if self.p == 2 {
            return Ok(self.s_pow(z, 1u64 << (self.e - 1)));
        }
        self.sub_elements()
            .find(|&r| self.s_mul(r, r) == z)
            .ok_or_else(|| Error::NoSolution(format!("{z:?} is not a square in GF(p^e)")))
    }

    /// One representative per coset of GF(p)^* in GF(p^m)^*, each the smallest
    /// (or smallest square) element of its coset, in increasing order.
    pub fn coset_reps_t(&self, squares_only: bool) -> Result<Vec<FieldElement>> {
        if squares_only && self.p != 2 && self.m % 2 == 0 {
            return Err(Error::NoSquareRepresentative);
        }
        let n = (self.q - 1) as u64;
        let step = n / (self.p as u64 - 1);
        let mut seen = vec![false; self.q as usize];
        let mut reps = Vec::with_capacity((n / (self.p as u64 - 1)) as usize);
        for a in self.nonzero_elements() {
            if seen[a.0 as usize] || (squares_only && !self.is_square(a)) {
                continue;
            }
            reps.push(a);
            let base = self.log[a.0 as usize] as u64;
            for k in 0..(self.p as u64 - 1) {
                seen[self.gamma_pow(base + k * step).0 as usize] = true;
            }
        }
        Ok(reps)
    }
}

/// `GF(p^m) = Im(f_{a,theta}) (+) j_a GF(p^e)` for a fixed nonzero `a`.
#[derive(Clone, Debug)]
pub struct ImageDecomp {
    a: FieldElement,
    j: FieldElement,
    basis: Vec<FieldElement>,
    /// Rows mapping the coefficient vector of `y` to the subfield coordinates of
    /// its `j_a` component.
    proj: Vec<Vec<u32>>,
    p: u32,
    m: u32,
}

/// Row-reduces `vectors` over GF(p) and returns the indices of a maximal independent subset.
fn independent_subset(vectors: &[Vec<u32>], p: u32) -> Vec<usize> {
    let m = vectors.first().map_or(0, Vec::len);
    let mut pivots: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut r = v.clone();
        for (col, row) in &pivots {
            let c = r[*col];
            if c != 0 {
                for k in 0..m {
                    r[k] = (r[k] + (p - c) * row[k] % p) % p;
                }
            }
        }
        if let Some(col) = r.iter().position(|&c| c != 0) {
            let inv = pow_mod(r[col] as u64, p as u64 - 2, p as u64) as u32;
            for c in r.iter_mut() {
                *c = (*c as u64 * inv as u64 % p as u64) as u32;
            }
            pivots.push((col, r));
            chosen.push(idx);
        }
    }
    chosen
}

/// Inverts a square matrix over GF(p); `None` if singular.
fn invert_matrix(mat: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = mat.len();
    let pu = p as u64;
    let mut aug: Vec<Vec<u32>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|k| u32::from(k == i)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, piv);
        let inv = pow_mod(aug[col][col] as u64, pu - 2, pu);
        for c in aug[col].iter_mut() {
            *c = (*c as u64 * inv % pu) as u32;
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let factor = aug[r][col] as u64;
                for k in 0..2 * n {
                    let sub = factor * aug[col][k] as u64 % pu;
                    aug[r][k] = ((aug[r][k] as u64 + pu - sub) % pu) as u32;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl ImageDecomp {
    fn new(ctx: &FieldCtx, a: FieldElement) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let (p, m, e) = (ctx.p, ctx.m as usize, ctx.e as usize);
        let images: Vec<FieldElement> = (0..m)
            .map(|i| ctx.f_a_theta(a, FieldElement(p.pow(i as u32))))
            .collect::<Result<_>>()?;
        let image_vecs: Vec<Vec<u32>> = images.iter().map(|&y| ctx.coeffs(y)).collect();
        let basis: Vec<FieldElement> =
            independent_subset(&image_vecs, p).into_iter().map(|i| images[i]).collect();
        assert_eq!(basis.len(), m - e, "Im(f_a) must be an F_(p^e)-hyperplane");

        let j = if ctx.f == 2 {
            ctx.shared_j.expect("f = 2 context carries j")
        } else if ctx.f % p != 0 {
            ctx.norm_like(a)
        } else {
            let base: Vec<Vec<u32>> = basis.iter().map(|&b| ctx.coeffs(b)).collect();
            ctx.elements()
                .find(|&y| {
                    let mut vs = base.clone();
                    vs.push(ctx.coeffs(y));
                    independent_subset(&vs, p).len() == m - e + 1
                })
                .expect("a hyperplane has a complement")
        };

        // Columns: image basis, then j * beta^k.
        let mut cols: Vec<Vec<u32>> = basis.iter().map(|&b| ctx.coeffs(b)).collect();
        for k in 0..e {
            let beta_k = ctx.embed(SubfieldElement(p.pow(k as u32)));
            cols.push(ctx.coeffs(ctx.mul(j, beta_k)));
        }
        let mat: Vec<Vec<u32>> = (0..m).map(|row| cols.iter().map(|c| c[row]).collect()).collect();
        let inv = invert_matrix(&mat, p).ok_or_else(|| {
            Error::NoSolution(format!("j_a = {j:?} lies in Im(f_a) for a = {a:?}"))
        })?;
        let proj = inv[m - e..].to_vec();
        Ok(Self { a, j, basis, proj, p, m: ctx.m })
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn j(&self) -> FieldElement {
        self.j
    }

    /// GF(p)-basis of `Im(f_{a,theta})`.
    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// The `x` with `y in j_a x + Im(f_a)`.
    pub fn coordinate(&self, y: FieldElement) -> SubfieldElement {
        let digits = digits_of(y.0, self.p, self.m);
        let p = self.p as u64;
        let mut idx = 0u32;
        let mut w = 1u32;
        for row in &self.proj {
            let mut acc = 0u64;
            for (c, d) in row.iter().zip(&digits) {
                acc += *c as u64 * *d as u64;
            }
            idx += (acc % p) as u32 * w;
            w *= self.p;
        }
        SubfieldElement(idx)
    }

    pub fn contains(&self, y: FieldElement) -> bool {
        self.coordinate(y).is_zero()
    }

    /// Every element of `Im(f_{a,theta})`.
    pub fn image_elements(&self, ctx: &FieldCtx) -> Vec<FieldElement> {
        let mut out = vec![FieldElement::ZERO];
        for &b in &self.basis {
            let current = out.clone();
            for c in 1..self.p {
                let scaled = ctx.mul(ctx.scalar(c), b);
                out.extend(current.iter().map(|&y| ctx.add(y, scaled)));
            }
        }
        out
    }
}

pub(crate) fn digits_of(mut idx: u32, p: u32, len: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(len as usize);
    for _ in 0..len {
        out.push(idx % p);
        idx /= p;
    }
    out
}

pub(crate) fn index_of(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, m: u32, l: u32) -> FieldCtx {
        FieldCtx::new(p, m, l).unwrap()
    }

    #[test]
    fn make_field_examples() {
        let ctx = f(2, 3, 1);
        assert_eq!((ctx.e(), ctx.f()), (1, 3));
        assert_eq!(ctx.modulus(), &[1, 1, 0, 1]);
        let ctx = f(2, 2, 1);
        assert_eq!((ctx.e(), ctx.f()), (1, 2));
        assert_eq!(FieldCtx::new(2, 3, 3).unwrap_err(), Error::TrivialTheta { m: 3, l: 3 });
        assert_eq!(FieldCtx::new(4, 3, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldCtx::new(2, 1, 1).unwrap_err(), Error::DegreeTooSmall(1));
    }

    #[test]
    fn modulus_is_smallest_irreducible_by_brute_force() {
        // Oracle: a degree-m polynomial is irreducible iff it has no monic factor of
        // degree 1..=m/2, checked by trial multiplication.
        for (p, m) in [(2u32, 3u32), (2, 4), (3, 2), (5, 3), (3, 3)] {
            let ctx = f(p, m, 1);
            let monic = |low: u32, deg: u32| {
                let mut c = digits_of(low, p, deg);
                c.push(1);
                c
            };
            let mul = |a: &[u32], b: &[u32]| {
                let mut out = vec![0u32; a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] = (out[i + j] + x * y) % p;
                    }
                }
                out
            };
            let reducible = |cand: &[u32]| {
                (1..=m / 2).any(|d| {
                    (0..p.pow(d)).any(|a| {
                        (0..p.pow(m - d)).any(|b| mul(&monic(a, d), &monic(b, m - d)) == cand)
                    })
                })
            };
            let expected = (0..p.pow(m)).map(|low| monic(low, m)).find(|c| !reducible(c)).unwrap();
            assert_eq!(ctx.modulus(), expected.as_slice(), "p={p} m={m}");
        }
    }

    #[test]
    fn explicit_modulus_is_checked() {
        assert!(FieldCtx::with_modulus(2, 3, 1, vec![1, 0, 1, 1]).is_ok());
        assert_eq!(
            FieldCtx::with_modulus(2, 3, 1, vec![1, 1, 1, 1]).unwrap_err(),
            Error::NotIrreducible(3)
        );
    }

    #[test]
    fn gamma_is_primitive() {
        let ctx = f(2, 3, 1);
        assert_eq!(ctx.gamma(), FieldElement::from_index(2));
        let mut seen = std::collections::HashSet::new();
        let mut x = FieldElement::ONE;
        for _ in 0..7 {
            seen.insert(x);
            x = ctx.mul(x, ctx.gamma());
        }
        assert_eq!(seen.len(), 7);
    }

    #[test]
    fn theta_examples() {
        let ctx = f(2, 3, 1);
        let g = ctx.gamma();
        assert_eq!(ctx.theta(g), ctx.mul(g, g));
        for a in ctx.elements() {
            assert_eq!(ctx.theta(ctx.theta(ctx.theta(a))), a);
        }
        for u in ctx.sub_elements() {
            let x = ctx.embed(u);
            assert_eq!(ctx.theta(x), x);
        }
    }

    #[test]
    fn theta_is_automorphism_exhaustive() {
        for (p, m, l) in [(2, 4, 1), (2, 6, 2), (3, 3, 1), (5, 3, 2), (2, 5, 3)] {
            let ctx = f(p, m, l);
            for a in ctx.elements() {
                for b in ctx.elements().step_by(3) {
                    assert_eq!(ctx.theta(ctx.add(a, b)), ctx.add(ctx.theta(a), ctx.theta(b)));
                    assert_eq!(ctx.theta(ctx.mul(a, b)), ctx.mul(ctx.theta(a), ctx.theta(b)));
                }
            }
        }
    }

    #[test]
    fn fixed_field_is_the_embedded_subfield() {
        for (p, m, l) in [(2, 6, 2), (2, 6, 4), (3, 4, 2), (2, 3, 1), (5, 3, 1)] {
            let ctx = f(p, m, l);
            let fixed: Vec<_> = ctx.elements().filter(|&x| ctx.theta(x) == x).collect();
            assert_eq!(fixed.len() as u32, ctx.sub_order());
            assert!(fixed.iter().all(|&x| ctx.in_subfield(x)));
        }
    }

    #[test]
    fn trace_examples() {
        let ctx = f(2, 3, 1);
        assert_eq!(ctx.trace_m(FieldElement::ONE), 1);
        assert_eq!(ctx.trace_m(ctx.gamma()), 0);
        let ctx = f(3, 2, 1);
        for u in ctx.sub_elements() {
            assert_eq!(ctx.trace_e(u), u.index());
        }
    }

    #[test]
    fn traces_compose() {
        for (p, m, l) in [(2, 6, 2), (3, 4, 2), (2, 4, 2), (5, 2, 1), (2, 6, 3)] {
            let ctx = f(p, m, l);
            for a in ctx.elements() {
                assert_eq!(ctx.trace_m(a), ctx.trace_e(ctx.trace_rel(a)));
                assert_eq!(ctx.trace_m(a), ctx.trace_slow(a).index());
            }
        }
    }

    #[test]
    fn f_a_theta_examples() {
        let ctx = f(2, 3, 1);
        let mut img: Vec<_> = ctx.elements().map(|x| ctx.f_a_theta(FieldElement::ONE, x).unwrap()).collect();
        img.sort();
        img.dedup();
        let g = ctx.gamma();
        let mut expected = vec![FieldElement::ZERO, g, ctx.pow(g, 2), ctx.pow(g, 4)];
        expected.sort();
        assert_eq!(img, expected);
        assert!(img.iter().all(|&y| ctx.trace_m(y) == 0));
        for a in ctx.nonzero_elements() {
            assert!(ctx.f_a_theta(a, a).unwrap().is_zero());
        }
        assert_eq!(ctx.f_a_theta(FieldElement::ZERO, g), Err(Error::ZeroParameter));
    }

    #[test]
    fn image_is_kernel_of_relative_trace_when_f_is_two() {
        for (p, m) in [(2, 2), (3, 2), (2, 4), (5, 2)] {
            let ctx = f(p, m, m / 2);
            for a in ctx.nonzero_elements() {
                let dec = ctx.image_and_j(a).unwrap();
                for y in ctx.elements() {
                    assert_eq!(dec.contains(y), ctx.trace_rel(y).is_zero());
                }
            }
        }
    }

    #[test]
    fn image_and_j_examples() {
        let ctx = f(2, 3, 1);
        let dec = ctx.image_and_j(FieldElement::ONE).unwrap();
        assert_eq!(dec.j(), FieldElement::ONE);
        let img = dec.image_elements(&ctx);
        assert_eq!(img.len(), 4);
        assert!(img.iter().all(|&y| ctx.trace_m(y) == 0));

        let ctx = f(2, 2, 1);
        let j = ctx.shared_j().unwrap();
        assert_eq!(ctx.add(j, ctx.theta(j)), FieldElement::ONE);
        assert!(!ctx.in_subfield(j));
        let smallest = ctx.elements().find(|&x| ctx.add(x, ctx.mul(x, x)) == FieldElement::ONE);
        assert_eq!(Some(j), smallest);
    }

    #[test]
    fn decomposition_is_unique_and_image_is_hyperplane() {
        for (p, m, l) in [(2, 3, 1), (2, 6, 2), (3, 3, 1), (2, 4, 1), (3, 2, 1), (3, 6, 2)] {
            let ctx = f(p, m, l);
            for a in ctx.nonzero_elements().step_by(5) {
                let dec = ctx.image_and_j(a).unwrap();
                let img = dec.image_elements(&ctx);
                assert_eq!(img.len() as u32, p.pow(m - ctx.e()));
                assert!(!dec.contains(dec.j()));
                // every y = j x + h with h in the image, and the pair is unique
                let mut hits = std::collections::HashMap::new();
                for x in ctx.sub_elements() {
                    for &h in &img {
                        let y = ctx.add(ctx.mul(dec.j(), ctx.embed(x)), h);
                        assert_eq!(dec.coordinate(y), x);
                        *hits.entry(y).or_insert(0) += 1;
                    }
                }
                assert_eq!(hits.len() as u32, ctx.order());
                assert!(hits.values().all(|&c| c == 1));
            }
        }
    }

    #[test]
    fn solve_a_v_examples() {
        let ctx = f(2, 3, 1);
        assert_eq!(ctx.solve_a_v(FieldElement::ONE).unwrap(), FieldElement::ONE);
        let g = ctx.gamma();
        assert_eq!(ctx.solve_a_v(g).unwrap(), ctx.pow(g, 2));
        let ctx = f(5, 3, 1);
        // brute-force scan of GF(125)
        let sols: Vec<_> = ctx
            .nonzero_elements()
            .filter(|&a| ctx.norm_like(a) == FieldElement::ONE)
            .collect();
        assert_eq!(sols.len(), 2);
        assert_eq!(ctx.solve_a_v(FieldElement::ONE).unwrap(), sols[0]);
        assert_eq!(sols[0], FieldElement::ONE);
        assert_eq!(ctx.solve_a_v(FieldElement::ZERO), Err(Error::ZeroParameter));
        assert!(matches!(f(2, 4, 1).solve_a_v(g), Err(Error::NoSolution(_))));
    }

    #[test]
    fn solve_a_v_brute_force_odd_p() {
        let ctx = f(3, 5, 1);
        let x0 = ctx.embed(ctx.x0().unwrap());
        for v in ctx.nonzero_elements().step_by(7) {
            let xv = if ctx.is_square(v) { FieldElement::ONE } else { x0 };
            let expected = ctx
                .nonzero_elements()
                .find(|&a| ctx.mul(v, ctx.norm_like(a)) == xv)
                .unwrap();
            assert_eq!(ctx.solve_a_v(v).unwrap(), expected);
        }
    }

    #[test]
    fn norm_like_is_bijective_for_odd_f_and_p_two() {
        for (m, l) in [(3, 1), (5, 1), (5, 2), (7, 3), (9, 3), (6, 2), (10, 2)] {
            let ctx = f(2, m, l);
            if ctx.f() % 2 == 0 {
                continue;
            }
            let mut seen = vec![false; ctx.order() as usize];
            for a in ctx.nonzero_elements() {
                let n = ctx.norm_like(a);
                assert!(!seen[n.index() as usize]);
                seen[n.index() as usize] = true;
            }
        }
    }

    #[test]
    fn find_z_examples() {
        let ctx = f(2, 6, 2);
        let (z, r) = ctx.find_z(None).unwrap();
        assert_eq!((z, r), (SubfieldElement::ONE, SubfieldElement::ONE));
        assert_eq!(f(5, 3, 1).find_z(None), Err(Error::NoValidZ));
        let ctx = f(5, 6, 3);
        let (z, r) = ctx.find_z(None).unwrap();
        let expected = ctx
            .sub_elements()
            .find(|&u| !u.is_zero() && ctx.s_is_square(u) && ctx.trace_e(u) == 0)
            .unwrap();
        assert_eq!(z, expected);
        assert_eq!(ctx.s_mul(r, r), z);
    }

    #[test]
    fn sqrt_squares_back() {
        for (p, m, l) in [(2, 6, 2), (2, 6, 3), (5, 6, 3), (3, 4, 2)] {
            let ctx = f(p, m, l);
            for u in ctx.sub_elements() {
                if p == 2 || ctx.s_is_square(u) || u.is_zero() {
                    let r = ctx.sqrt_subfield(u).unwrap();
                    assert_eq!(ctx.s_mul(r, r), u);
                }
            }
        }
    }

    #[test]
    fn coset_reps_examples() {
        let ctx = f(2, 3, 1);
        assert_eq!(ctx.coset_reps_t(false).unwrap().len(), 7);
        let ctx = f(5, 3, 1);
        let t = ctx.coset_reps_t(false).unwrap();
        assert_eq!(t.len(), 31);
        let ts = ctx.coset_reps_t(true).unwrap();
        assert_eq!(ts.len(), 31);
        assert!(ts.iter().all(|&a| ctx.is_square(a)));
        assert_eq!(f(3, 2, 1).coset_reps_t(true), Err(Error::NoSquareRepresentative));
    }

    #[test]
    fn field_spec_roundtrip() {
        let spec: FieldSpec = "2,3,1".parse().unwrap();
        assert_eq!(spec, FieldSpec::new(2, 3, 1));
        let spec: FieldSpec = "2,3,1,1:0:1:1".parse().unwrap();
        assert_eq!(spec.to_string(), "2,3,1,1:0:1:1");
        assert!("2,3".parse::<FieldSpec>().is_err());
    }
}
