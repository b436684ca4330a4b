//! Exact group-ring arithmetic: `X Y^(-1)` by pairwise accumulation.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::SuzukiGroup;
use crate::set::CentralSet;

/// Pair budget for one product.
pub const MAX_PAIRS: u128 = 10_000_000_000;
/// Largest group the dense coefficient vector is allowed to cover.
pub const MAX_DENSE_ORDER: u64 = 1 << 26;

/// A finite group on `0..order`.
pub trait FiniteGroup: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, x: usize, y: usize) -> usize;
    fn inv(&self, x: usize) -> usize;

    /// `x y^(-1)`.
    fn div(&self, x: usize, y: usize) -> usize {
        self.mul(x, self.inv(y))
    }

    /// How witnesses print an element.
    fn label(&self, x: usize) -> String {
        x.to_string()
    }
}

impl FiniteGroup for SuzukiGroup {
    fn order(&self) -> usize {
        SuzukiGroup::order(self) as usize
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        let g = SuzukiGroup::mul(self, self.element_at(x as u64), self.element_at(y as u64));
        self.element_index(g) as usize
    }

    fn inv(&self, x: usize) -> usize {
        self.element_index(SuzukiGroup::inv(self, self.element_at(x as u64))) as usize
    }

    /// `(a, b)(c, d)^(-1) = (a - c, b - d + (c - a) theta(c))`.
    fn div(&self, x: usize, y: usize) -> usize {
        let f = self.field();
        let (g, h) = (self.element_at(x as u64), self.element_at(y as u64));
        let a = f.sub(g.a, h.a);
        let b = f.sub(f.sub(g.b, h.b), f.mul(a, f.theta(h.a)));
        (a.index() as usize) * f.order() as usize + b.index() as usize
    }

    fn label(&self, x: usize) -> String {
        let g = self.element_at(x as u64);
        format!("({:?}, {:?})", self.field().coeffs(g.a), self.field().coeffs(g.b))
    }
}

/// `(Z/p)^n` with base-`p` digit vectors as indices.
#[derive(Clone, Debug)]
pub struct ElementaryAbelian {
    p: usize,
    n: u32,
}

impl ElementaryAbelian {
    pub fn new(p: u32, n: u32) -> Self {
        Self { p: p as usize, n }
    }

    fn digits(&self, mut x: usize) -> Vec<usize> {
        (0..self.n)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[usize]) -> usize {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }
}

impl FiniteGroup for ElementaryAbelian {
    fn order(&self) -> usize {
        self.p.pow(self.n)
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.digits(x), self.digits(y));
        let s: Vec<usize> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.undigits(&s)
    }

    fn inv(&self, x: usize) -> usize {
        let s: Vec<usize> = self.digits(x).iter().map(|u| (self.p - u) % self.p).collect();
        self.undigits(&s)
    }
}

/// Dense integer coefficients indexed like the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingVec {
    pub coeffs: Vec<i64>,
}

impl GroupRingVec {
    pub fn indicator<G: FiniteGroup>(g: &G, elems: &[usize]) -> Self {
        let mut coeffs = vec![0; g.order()];
        for &x in elems {
            coeffs[x] += 1;
        }
        Self { coeffs }
    }

    /// Elements with nonzero coefficient, each repeated by its multiplicity.
    pub fn support(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c < 0 {
                return Err(Error::PreconditionViolated("negative coefficient in a set".into()));
            }
            out.extend(std::iter::repeat(i).take(c as usize));
        }
        Ok(out)
    }
}

fn guard(order: usize, a: usize, b: usize) -> Result<()> {
    if a as u128 * b as u128 > MAX_PAIRS {
        return Err(Error::TooLarge(format!("{a} x {b} products exceed the budget of {MAX_PAIRS}")));
    }
    if order as u64 > MAX_DENSE_ORDER {
        return Err(Error::TooLarge(format!("group of order {order} is too large for dense coefficients")));
    }
    Ok(())
}

/// Coefficients of `X Y^(-1)`, where `X`, `Y` are lists of element indices.
pub fn convolve<G: FiniteGroup>(g: &G, x: &[usize], y: &[usize]) -> Result<GroupRingVec> {
    let n = g.order();
    guard(n, x.len(), y.len())?;
    if x.len() * y.len() < 1 << 16 {
        let mut coeffs = vec![0i64; n];
        for &a in x {
            for &b in y {
                coeffs[g.div(a, b)] += 1;
            }
        }
        return Ok(GroupRingVec { coeffs });
    }
    let chunk = (x.len() / (4 * rayon::current_num_threads()).max(1)).max(1);
    let coeffs = x
        .par_chunks(chunk)
        .map(|xs| {
            let mut acc = vec![0i64; n];
            for &a in xs {
                for &b in y {
                    acc[g.div(a, b)] += 1;
                }
            }
            acc
        })
        .reduce(
            || vec![0i64; n],
            |mut a, b| {
                for (u, v) in a.iter_mut().zip(b) {
                    *u += v;
                }
                a
            },
        );
    Ok(GroupRingVec { coeffs })
}

/// `D D^(-1)`.
pub fn convolve_ddinv<G: FiniteGroup>(g: &G, d: &[usize]) -> Result<GroupRingVec> {
    convolve(g, d, d)
}

/// Element indices of a class set, sorted.
pub fn set_indices(group: &SuzukiGroup, set: &CentralSet) -> Result<Vec<usize>> {
    let card = set.cardinality();
    if card as u128 * card as u128 > MAX_PAIRS || group.order() > MAX_DENSE_ORDER {
        return Err(Error::TooLarge(format!("set of {card} elements in a group of order {}", group.order())));
    }
    let mut out: Vec<usize> = set
        .classes()
        .flat_map(|c| group.class_elements(c))
        .map(|g| group.element_index(g) as usize)
        .collect();
    out.sort_unstable();
    Ok(out)
}
