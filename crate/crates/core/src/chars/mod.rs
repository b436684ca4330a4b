//! Irreducible characters of `A_p(m, theta)` and the central functional
//! `omega_chi(S) = sum_{C in S} |C| chi(C) / chi(1)`.
//!
//! Every character is described by a central parameter `u` (its value on
//! `C_b` is `deg * psi_u(b)`) and, for each nonzero `a`, either zero on all of
//! `C_{a,*}` or a monomial `coef * zeta_N^(exp + step*Tr_e(slope*x))` on `C_{a,x}`.

mod aux;
pub mod validate;

use serde::Serialize;

pub use aux::{kappa, Aux2, QReading};

use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement, SubfieldElement};
use crate::group::{ClassId, SuzukiGroup};
use crate::set::{mask_elements, CentralSet};

/// Which of the four table shapes applies.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// f = 2.
    FTwo,
    /// f > 2 even (partial: one family omitted).
    FEven,
    /// p = 2, f odd.
    OddTwo,
    /// p odd, f odd, p not dividing f.
    OddP,
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CharId {
    F2Lin { v: FieldElement, w: SubfieldElement },
    F2NonLin { v: FieldElement },
    EvenLin { v: FieldElement },
    EvenMid { v: FieldElement, s: u32 },
    OddLin2 { v: FieldElement },
    OddNonLin2 { v: FieldElement, w: SubfieldElement, eps: i8 },
    OddLinP { v: FieldElement },
    OddNonLinP { v: FieldElement, w: SubfieldElement, s: u32 },
}

impl CharId {
    pub fn is_linear(&self) -> bool {
        matches!(
            self,
            CharId::F2Lin { .. } | CharId::EvenLin { .. } | CharId::OddLin2 { .. } | CharId::OddLinP { .. }
        )
    }

    pub fn is_trivial(&self) -> bool {
        match *self {
            CharId::F2Lin { v, w } => v.is_zero() && w.is_zero(),
            CharId::EvenLin { v } | CharId::OddLin2 { v } | CharId::OddLinP { v } => v.is_zero(),
            _ => false,
        }
    }
}

/// `coef * zeta_N^exp`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Mono {
    pub coef: i64,
    pub exp: u32,
}

/// Values of a character on the classes `C_{a,x}`, x ranging over `GF(p^e)`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct GenericRow {
    pub coef: i64,
    pub exp: u32,
    pub slope: SubfieldElement,
}

/// Which nonzero `a` can carry nonzero values.
#[derive(Copy, Clone, Debug)]
pub enum Support {
    None,
    All,
    /// `a in a_v GF(p^e)^*`.
    Line(FieldElement),
}

#[derive(Copy, Clone, Debug)]
pub struct TableOptions {
    pub q_reading: QReading,
    /// Use coset representatives that are squares (p odd, m odd).
    pub squares_only_t: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self { q_reading: QReading::HalfPowerPlusOne, squares_only_t: false }
    }
}

/// `Tr_m(u * b)` for all `b`, by splitting `b` into low and high base-p digits.
pub struct TraceForm {
    p: u32,
    split: u32,
    lo: Vec<u8>,
    hi: Vec<u8>,
}

impl TraceForm {
    pub fn new(ctx: &FieldCtx, u: FieldElement) -> Self {
        let t = ctx.trace_functional(u);
        let p = ctx.p();
        let m = ctx.m();
        let h = m.div_ceil(2);
        let build = |digits: &[u32], count: u32| -> Vec<u8> {
            (0..count)
                .map(|mut idx| {
                    let mut acc = 0u32;
                    for &ti in digits {
                        acc += (idx % p) * ti;
                        idx /= p;
                    }
                    (acc % p) as u8
                })
                .collect()
        };
        let lo = build(&t[..h as usize], p.pow(h));
        let hi = build(&t[h as usize..], p.pow(m - h));
        Self { p, split: p.pow(h), lo, hi }
    }

    #[inline]
    pub fn eval(&self, b: FieldElement) -> u32 {
        let i = b.index();
        let s = self.lo[(i % self.split) as usize] as u32 + self.hi[(i / self.split) as usize] as u32;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
}

pub struct CharTable<'g> {
    group: &'g SuzukiGroup,
    family: Family,
    order: u32,
    step: u32,
    options: TableOptions,
    /// Coset representatives of `GF(p)^*` (p odd) or `J_1'` (f > 2 even).
    reps: Vec<FieldElement>,
    /// Coset representatives of `GF(2^e)/GF(2)` (p = 2, f odd).
    w_reps: Vec<SubfieldElement>,
    aux: Option<Aux2>,
    x0: Option<SubfieldElement>,
    inv2: u32,
    /// `Tr_e(s * x)` indexed by `s * p^e + x`.
    sub_trace_prod: Vec<u8>,
}

impl<'g> CharTable<'g> {
    pub fn new(group: &'g SuzukiGroup) -> Result<Self> {
        Self::with_options(group, TableOptions::default())
    }

    pub fn with_options(group: &'g SuzukiGroup, options: TableOptions) -> Result<Self> {
        let f = group.field();
        let p = f.p();
        let family = if f.f() == 2 {
            Family::FTwo
        } else if f.f() % 2 == 0 {
            Family::FEven
        } else if p == 2 {
            Family::OddTwo
        } else if f.f() % p != 0 {
            Family::OddP
        } else {
            return Err(Error::UnsupportedFamily(format!("p = {p} divides f = {}", f.f())));
        };
        let order = match (p, family) {
            (2, Family::OddTwo) => 4,
            (2, _) => 2,
            (p, _) => p,
        };
        let reps = match family {
            Family::OddP => f.coset_reps_t(options.squares_only_t)?,
            Family::FEven => {
                let n = (f.order() - 1) as u64;
                let g = crate::field::gcd(f.sub_order() as u64 + 1, n);
                f.coset_reps_t(false)?
                    .into_iter()
                    .filter(|&v| f.log(v).unwrap() as u64 % g != 0)
                    .collect()
            }
            _ => Vec::new(),
        };
        let w_reps = if family == Family::OddTwo {
            f.sub_elements().filter(|&w| w < f.s_add(w, SubfieldElement::ONE)).collect()
        } else {
            Vec::new()
        };
        let aux = (family == Family::OddTwo).then(|| Aux2::new(f, options.q_reading));
        let pe = f.sub_order();
        let mut sub_trace_prod = Vec::with_capacity((pe * pe) as usize);
        for s in f.sub_elements() {
            for x in f.sub_elements() {
                sub_trace_prod.push(f.trace_e(f.s_mul(s, x)) as u8);
            }
        }
        Ok(Self {
            group,
            family,
            order,
            step: order / p,
            options,
            reps,
            w_reps,
            aux,
            x0: f.x0(),
            inv2: if p == 2 { 0 } else { (p + 1) / 2 },
            sub_trace_prod,
        })
    }

    pub fn group(&self) -> &SuzukiGroup {
        self.group
    }

    fn field(&self) -> &FieldCtx {
        self.group.field()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn options(&self) -> TableOptions {
        self.options
    }

    /// Order N of the roots of unity appearing in the table.
    pub fn root_order(&self) -> u32 {
        self.order
    }

    pub fn aux(&self) -> Option<&Aux2> {
        self.aux.as_ref()
    }

    /// `J_1'` for f > 2 even, the coset representatives `T` for p odd.
    pub fn reps(&self) -> &[FieldElement] {
        &self.reps
    }

    pub fn w_reps(&self) -> &[SubfieldElement] {
        &self.w_reps
    }

    fn q(&self) -> u64 {
        self.field().order() as u64
    }

    fn pe(&self) -> u64 {
        self.field().sub_order() as u64
    }

    fn linear_count(&self) -> u64 {
        match self.family {
            Family::FTwo => self.q() * self.pe(),
            _ => self.q(),
        }
    }

    /// Number of characters listed by the table.
    pub fn len(&self) -> u64 {
        let p = self.field().p() as u64;
        self.linear_count()
            + match self.family {
                Family::FTwo => self.q() - self.pe(),
                Family::FEven => self.reps.len() as u64 * (p - 1),
                Family::OddTwo => (self.q() - 1) * self.w_reps.len() as u64 * 2,
                Family::OddP => self.reps.len() as u64 * self.pe() * (p - 1),
            }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Characters of the f > 2 even family that have no listed values.
    pub fn omitted_count(&self) -> u64 {
        if self.family != Family::FEven {
            return 0;
        }
        let listed: u64 = self.iter().map(|c| (self.degree(c) as u64).pow(2)).sum();
        let f = self.field();
        let d = (f.p() as u64).pow((f.m() - 2 * f.e()) / 2);
        (self.group.order() - listed) / (d * d)
    }

    /// Degree of the omitted f > 2 even characters.
    pub fn omitted_degree(&self) -> Option<i64> {
        let f = self.field();
        (self.family == Family::FEven).then(|| (f.p() as i64).pow((f.m() - 2 * f.e()) / 2))
    }

    pub fn char_at(&self, index: u64) -> CharId {
        let f = self.field();
        let p = f.p() as u64;
        let lin = self.linear_count();
        if index < lin {
            return match self.family {
                Family::FTwo => CharId::F2Lin {
                    v: FieldElement::from_index((index / self.pe()) as u32),
                    w: SubfieldElement::from_index((index % self.pe()) as u32),
                },
                Family::FEven => CharId::EvenLin { v: FieldElement::from_index(index as u32) },
                Family::OddTwo => CharId::OddLin2 { v: FieldElement::from_index(index as u32) },
                Family::OddP => CharId::OddLinP { v: FieldElement::from_index(index as u32) },
            };
        }
        let r = index - lin;
        match self.family {
            Family::FTwo => {
                let v = f.elements().filter(|&v| !f.in_subfield(v)).nth(r as usize).expect("index in range");
                CharId::F2NonLin { v }
            }
            Family::FEven => CharId::EvenMid { v: self.reps[(r / (p - 1)) as usize], s: (r % (p - 1)) as u32 + 1 },
            Family::OddTwo => {
                let per_v = self.w_reps.len() as u64 * 2;
                let v = FieldElement::from_index((r / per_v) as u32 + 1);
                let k = r % per_v;
                CharId::OddNonLin2 { v, w: self.w_reps[(k / 2) as usize], eps: if k % 2 == 0 { 1 } else { -1 } }
            }
            Family::OddP => {
                let per_v = self.pe() * (p - 1);
                let v = self.reps[(r / per_v) as usize];
                let k = r % per_v;
                CharId::OddNonLinP { v, w: SubfieldElement::from_index((k / (p - 1)) as u32), s: (k % (p - 1)) as u32 + 1 }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = CharId> + '_ {
        (0..self.len()).map(move |i| self.char_at(i))
    }

    pub fn degree(&self, chi: CharId) -> i64 {
        let f = self.field();
        let p = f.p() as i64;
        match chi {
            CharId::F2Lin { .. } | CharId::EvenLin { .. } | CharId::OddLin2 { .. } | CharId::OddLinP { .. } => 1,
            CharId::F2NonLin { .. } => p.pow(f.e()),
            CharId::EvenMid { .. } => p.pow(f.m() / 2),
            CharId::OddNonLin2 { .. } | CharId::OddNonLinP { .. } => p.pow((f.m() - f.e()) / 2),
        }
    }

    /// `u` such that the value on `C_b` is `deg * psi_u(b)`.
    pub fn central_param(&self, chi: CharId) -> FieldElement {
        let f = self.field();
        match chi {
            CharId::F2Lin { w, .. } => f.embed(w),
            CharId::F2NonLin { v } | CharId::OddNonLin2 { v, .. } => v,
            CharId::EvenLin { .. } | CharId::OddLin2 { .. } | CharId::OddLinP { .. } => FieldElement::ZERO,
            CharId::EvenMid { v, s } | CharId::OddNonLinP { v, s, .. } => f.mul(f.scalar(s), v),
        }
    }

    /// The `a_v` that anchors the support of an f odd nonlinear character.
    pub fn anchor(&self, v: FieldElement) -> Result<FieldElement> {
        self.field().solve_a_v(v)
    }

    pub fn support(&self, chi: CharId) -> Result<Support> {
        Ok(match chi {
            CharId::F2NonLin { .. } | CharId::EvenMid { .. } => Support::None,
            CharId::OddNonLin2 { v, .. } | CharId::OddNonLinP { v, .. } => Support::Line(self.anchor(v)?),
            _ => Support::All,
        })
    }

    /// Values on `C_{a,x}` for fixed nonzero `a`, with `anchor` the precomputed `a_v` if any.
    pub fn generic_row_with(&self, chi: CharId, a: FieldElement, anchor: Option<FieldElement>) -> Option<GenericRow> {
        let f = self.field();
        let p = f.p();
        let step = self.step;
        let n = self.order;
        match chi {
            CharId::F2NonLin { .. } | CharId::EvenMid { .. } => None,
            CharId::EvenLin { v } | CharId::OddLin2 { v } | CharId::OddLinP { v } => {
                Some(GenericRow { coef: 1, exp: step * f.trace_m(f.mul(v, a)), slope: SubfieldElement::ZERO })
            }
            CharId::F2Lin { v, w } => {
                let norm = f.to_sub(f.norm_like(a)).expect("a theta(a) is a norm when f = 2");
                let t = f.trace_m(f.mul(v, a)) + p - f.trace_e(f.s_mul(w, norm));
                Some(GenericRow { coef: 1, exp: step * (t % p) % n, slope: w })
            }
            CharId::OddNonLin2 { w, eps, .. } => {
                let av = anchor.expect("anchor for p = 2 nonlinear character");
                let u = f.to_sub(f.mul(a, f.inv(av).ok()?))?;
                if u.is_zero() {
                    return None;
                }
                let aux = self.aux.as_ref().expect("p = 2 auxiliaries");
                let (delta, u1) = aux.split(f, u);
                let sign = aux.q(f, u1)
                    ^ f.trace_e(f.s_mul(f.s_scale(delta, aux.u0()), u1))
                    ^ f.trace_e(f.s_mul(w, u1));
                let i_power = kappa(delta) * if eps == 1 { 1 } else { 3 };
                Some(GenericRow { coef: self.degree(chi), exp: (i_power + 2 * sign) % 4, slope: f.s_mul(u, u) })
            }
            CharId::OddNonLinP { v, w, s } => {
                let av = anchor.expect("anchor for p odd nonlinear character");
                let u = f.to_sub(f.mul(a, f.inv(av).ok()?))?;
                if u.is_zero() {
                    return None;
                }
                let xv = if f.is_square(v) { SubfieldElement::ONE } else { self.x0.expect("odd p") };
                let sf = (s as u64 * f.f() as u64 % p as u64) as u32;
                let u2 = f.s_mul(u, u);
                let xu2 = f.s_mul(xv, u2);
                let quad = (self.inv2 as u64 * sf as u64 % p as u64 * f.trace_e(xu2) as u64 % p as u64) as u32;
                let exp = (p - quad + f.trace_e(f.s_mul(w, u))) % p;
                Some(GenericRow { coef: self.degree(chi), exp, slope: f.s_scale(sf, xu2) })
            }
        }
    }

    pub fn generic_row(&self, chi: CharId, a: FieldElement) -> Result<Option<GenericRow>> {
        let anchor = match self.support(chi)? {
            Support::Line(av) => Some(av),
            _ => None,
        };
        Ok(self.generic_row_with(chi, a, anchor))
    }

    #[inline]
    fn sub_trace(&self, s: SubfieldElement, x: SubfieldElement) -> u32 {
        self.sub_trace_prod[(s.index() * self.field().sub_order() + x.index()) as usize] as u32
    }

    /// The value of `chi` on a class, as a monomial.
    pub fn value_mono(&self, chi: CharId, c: ClassId) -> Result<Mono> {
        let f = self.field();
        match c {
            ClassId::Central(b) => {
                let u = self.central_param(chi);
                Ok(Mono { coef: self.degree(chi), exp: self.step * f.trace_m(f.mul(u, b)) })
            }
            ClassId::Generic(a, x) => Ok(match self.generic_row(chi, a)? {
                None => Mono { coef: 0, exp: 0 },
                Some(row) => Mono { coef: row.coef, exp: (row.exp + self.step * self.sub_trace(row.slope, x)) % self.order },
            }),
        }
    }

    pub fn mono_to_cyc(&self, m: Mono) -> CycInt {
        let mut buckets = vec![0i64; self.order as usize];
        buckets[m.exp as usize] = m.coef;
        CycInt::from_buckets(&buckets).expect("single term")
    }

    /// `chi(C)` as an exact cyclotomic integer.
    pub fn char_value(&self, chi: CharId, c: ClassId) -> Result<CycInt> {
        Ok(self.mono_to_cyc(self.value_mono(chi, c)?))
    }

    /// `psi_v(x) = zeta_p^Tr_m(vx)`.
    pub fn psi(&self, v: FieldElement, x: FieldElement) -> CycInt {
        let f = self.field();
        let order = if f.p() == 2 { 2 } else { f.p() };
        CycInt::root_of_unity(order, f.trace_m(f.mul(v, x)))
    }

    /// `phi_w(y) = zeta_p^Tr_e(wy)`.
    pub fn phi(&self, w: SubfieldElement, y: SubfieldElement) -> CycInt {
        let f = self.field();
        let order = if f.p() == 2 { 2 } else { f.p() };
        CycInt::root_of_unity(order, f.trace_e(f.s_mul(w, y)))
    }

    /// `omega_chi(S)` as bucket counts over the N-th roots of unity.
    pub fn omega_buckets(&self, chi: CharId, set: &CentralSet) -> Result<Vec<i64>> {
        let f = self.field();
        let n = self.order as usize;
        let mut buckets = vec![0i64; n];
        let u = self.central_param(chi);
        if u.is_zero() {
            buckets[0] += set.central_count() as i64;
        } else if f.p() == 2 {
            let form = TraceForm::new(f, u);
            let mut ones = 0i64;
            let mut total = 0i64;
            for b in set.central_elements() {
                ones += form.eval(b) as i64;
                total += 1;
            }
            buckets[0] += total - ones;
            buckets[self.step as usize] += ones;
        } else {
            let form = TraceForm::new(f, u);
            for b in set.central_elements() {
                buckets[(self.step * form.eval(b)) as usize] += 1;
            }
        }

        let deg = self.degree(chi);
        let size = set.generic_class_size() as i64;
        let weight = |row: &GenericRow| -> Result<i64> {
            let num = size.checked_mul(row.coef).ok_or(Error::Overflow)?;
            if num % deg != 0 {
                return Err(Error::InexactDivision(deg));
            }
            Ok(num / deg)
        };
        let add_row = |buckets: &mut Vec<i64>, row: GenericRow, mask: u128| -> Result<()> {
            let wgt = weight(&row)?;
            if row.slope.is_zero() {
                buckets[row.exp as usize] += wgt * mask.count_ones() as i64;
            } else {
                for x in mask_elements(mask) {
                    let k = (row.exp + self.step * self.sub_trace(row.slope, x)) as usize % n;
                    buckets[k] += wgt;
                }
            }
            Ok(())
        };
        match self.support(chi)? {
            Support::None => {}
            Support::Line(av) => {
                for us in f.sub_elements().skip(1) {
                    let a = f.mul(av, f.embed(us));
                    let mask = set.gamma_mask(a);
                    if mask == 0 {
                        continue;
                    }
                    if let Some(row) = self.generic_row_with(chi, a, Some(av)) {
                        add_row(&mut buckets, row, mask)?;
                    }
                }
            }
            Support::All => {
                if let CharId::F2Lin { .. } = chi {
                    for (a, mask) in set.generic_parts() {
                        let row = self.generic_row_with(chi, a, None).expect("linear");
                        add_row(&mut buckets, row, mask)?;
                    }
                } else {
                    let v = match chi {
                        CharId::EvenLin { v } | CharId::OddLin2 { v } | CharId::OddLinP { v } => v,
                        _ => unreachable!(),
                    };
                    let form = TraceForm::new(f, v);
                    for (a, mask) in set.generic_parts() {
                        let k = (self.step * form.eval(a)) as usize;
                        buckets[k] += size * mask.count_ones() as i64;
                    }
                }
            }
        }
        Ok(buckets)
    }

    /// `omega_chi(S)`.
    pub fn omega(&self, chi: CharId, set: &CentralSet) -> Result<CycInt> {
        CycInt::from_buckets(&self.omega_buckets(chi, set)?)
    }

    /// `omega_chi(C) = |C| chi(C) / chi(1)` for a single class.
    pub fn omega_class(&self, chi: CharId, c: ClassId) -> Result<CycInt> {
        let m = self.value_mono(chi, c)?;
        let num = (self.group.class_size(c) as i64).checked_mul(m.coef).ok_or(Error::Overflow)?;
        let deg = self.degree(chi);
        if num % deg != 0 {
            return Err(Error::InexactDivision(deg));
        }
        Ok(self.mono_to_cyc(Mono { coef: num / deg, exp: m.exp }))
    }

    pub fn describe(&self, chi: CharId) -> String {
        let f = self.field();
        match chi {
            CharId::F2Lin { v, w } => format!("lin(v={:?},w={:?})", f.coeffs(v), f.sub_coeffs(w)),
            CharId::F2NonLin { v } => format!("deg{}(v={:?})", self.degree(chi), f.coeffs(v)),
            CharId::EvenLin { v } | CharId::OddLin2 { v } | CharId::OddLinP { v } => format!("lin(v={:?})", f.coeffs(v)),
            CharId::EvenMid { v, s } => format!("deg{}(v={:?},s={s})", self.degree(chi), f.coeffs(v)),
            CharId::OddNonLin2 { v, w, eps } => {
                format!("deg{}(v={:?},w={:?},eps={eps})", self.degree(chi), f.coeffs(v), f.sub_coeffs(w))
            }
            CharId::OddNonLinP { v, w, s } => {
                format!("deg{}(v={:?},w={:?},s={s})", self.degree(chi), f.coeffs(v), f.sub_coeffs(w))
            }
        }
    }
}

#[cfg(test)]
mod tests;
