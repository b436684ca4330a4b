//! Builders for the central difference sets, linking systems and partial
//! difference sets of `A_p(m, theta)`.

mod dillon;
mod examples;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use dillon::{build_dillon, dillon_form_of, DillonPart, DillonSpec, DillonWitness};
pub use examples::{build_example_mf, match_example, ExampleMatch};

use crate::chars::{Aux2, QReading};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement, SubfieldElement};
use crate::group::SuzukiGroup;
use crate::set::{full_mask, CentralSet, SubMask};

/// Default seed for randomized variant choices.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// A kernel or its complement.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Ker,
    Comp,
}

impl Side {
    /// `+1` for the kernel, `-1` for the complement.
    pub fn sign(self) -> i32 {
        match self {
            Side::Ker => 1,
            Side::Comp => -1,
        }
    }

    pub fn from_sign(s: i32) -> Self {
        if s > 0 {
            Side::Ker
        } else {
            Side::Comp
        }
    }

    fn from_bit(b: bool) -> Self {
        if b {
            Side::Comp
        } else {
            Side::Ker
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GammaVariant {
    Uniform(Side),
    /// Indexed by the field index of `a`; entry 0 is ignored.
    PerA(Vec<Side>),
}

/// Which of "kernel or complement" each free choice takes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantSpec {
    pub b: Side,
    pub gamma: GammaVariant,
}

impl VariantSpec {
    pub fn uniform(b: Side, gamma: Side) -> Self {
        Self { b, gamma: GammaVariant::Uniform(gamma) }
    }

    pub fn all_ker() -> Self {
        Self::uniform(Side::Ker, Side::Ker)
    }

    pub fn all_comp() -> Self {
        Self::uniform(Side::Comp, Side::Comp)
    }

    /// ChaCha8 seeded with `seed`: one draw for `B`, then one per nonzero `a` in index order.
    pub fn seeded(seed: u64, q: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = Side::from_bit(rng.gen_bool(0.5));
        let mut per = vec![Side::Ker; q as usize];
        for s in per.iter_mut().skip(1) {
            *s = Side::from_bit(rng.gen_bool(0.5));
        }
        Self { b, gamma: GammaVariant::PerA(per) }
    }

    pub fn gamma_at(&self, a: FieldElement) -> Side {
        match &self.gamma {
            GammaVariant::Uniform(s) => *s,
            GammaVariant::PerA(v) => v.get(a.index() as usize).copied().unwrap_or(Side::Ker),
        }
    }

    pub fn uniform_gamma(&self) -> Option<Side> {
        match &self.gamma {
            GammaVariant::Uniform(s) => Some(*s),
            GammaVariant::PerA(v) => {
                let first = *v.get(1)?;
                v.iter().skip(1).all(|&s| s == first).then_some(first)
            }
        }
    }
}

/// Where variant choices come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VariantSource {
    AllKer,
    AllComp,
    Seed(u64),
    Explicit(VariantSpec),
}

impl VariantSource {
    /// The spec for a single set.
    pub fn spec(&self, q: u32) -> VariantSpec {
        match self {
            VariantSource::AllKer => VariantSpec::all_ker(),
            VariantSource::AllComp => VariantSpec::all_comp(),
            VariantSource::Seed(s) => VariantSpec::seeded(*s, q),
            VariantSource::Explicit(v) => v.clone(),
        }
    }

    /// The spec for member `index` of a linking family, where `Gamma` must not depend on `a`.
    pub fn member_spec(&self, index: usize) -> VariantSpec {
        match self {
            VariantSource::AllKer => VariantSpec::all_ker(),
            VariantSource::AllComp => VariantSpec::all_comp(),
            VariantSource::Seed(s) => {
                let mut rng = ChaCha8Rng::seed_from_u64(s.wrapping_add(index as u64));
                VariantSpec::uniform(Side::from_bit(rng.gen_bool(0.5)), Side::from_bit(rng.gen_bool(0.5)))
            }
            VariantSource::Explicit(v) => VariantSpec::uniform(v.b, v.uniform_gamma().unwrap_or(Side::Ker)),
        }
    }
}

impl FromStr for VariantSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-ker" => Ok(VariantSource::AllKer),
            "all-comp" => Ok(VariantSource::AllComp),
            _ => {
                let n = s
                    .strip_prefix("seed:")
                    .ok_or_else(|| Error::Parse(format!("unknown variant source `{s}`")))?;
                n.parse().map(VariantSource::Seed).map_err(|_| Error::Parse(format!("bad seed `{n}`")))
            }
        }
    }
}

impl fmt::Display for VariantSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariantSource::AllKer => write!(f, "all-ker"),
            VariantSource::AllComp => write!(f, "all-comp"),
            VariantSource::Seed(s) => write!(f, "seed:{s}"),
            VariantSource::Explicit(_) => write!(f, "explicit"),
        }
    }
}

/// `Ker(phi_z) = {x in GF(p^e) : Tr_e(z x) = 0}` as a mask.
pub fn ker_phi(ctx: &FieldCtx, z: SubfieldElement) -> SubMask {
    ctx.sub_elements()
        .filter(|&x| ctx.trace_e(ctx.s_mul(z, x)) == 0)
        .fold(0, |m, x| m | 1 << x.index())
}

fn sided_phi(ctx: &FieldCtx, z: SubfieldElement, side: Side) -> SubMask {
    let k = ker_phi(ctx, z);
    match side {
        Side::Ker => k,
        Side::Comp => full_mask(ctx.sub_order()) & !k,
    }
}

/// `Ker(psi_t)` or its complement.
pub fn sided_psi(ctx: &FieldCtx, t: FieldElement, side: Side) -> impl Iterator<Item = FieldElement> + '_ {
    let want = match side {
        Side::Ker => 0,
        Side::Comp => 1,
    };
    ctx.elements().filter(move |&b| (ctx.trace_m(ctx.mul(t, b)) != 0) as u32 == want)
}

fn require_two_odd(ctx: &FieldCtx) -> Result<()> {
    if ctx.p() != 2 || ctx.f() % 2 == 0 {
        return Err(Error::PreconditionViolated(format!(
            "needs p = 2 and f odd, got p = {}, f = {}",
            ctx.p(),
            ctx.f()
        )));
    }
    Ok(())
}

fn nonzero_sub(ctx: &FieldCtx, z: SubfieldElement) -> Result<SubfieldElement> {
    if z.is_zero() || z.index() >= ctx.sub_order() {
        return Err(Error::ZeroParameter);
    }
    Ok(z)
}

/// `a_t sqrt(z)`, the generic coset left empty by `D_(t,z)`.
pub fn excluded_a(ctx: &FieldCtx, t: FieldElement, z: SubfieldElement) -> Result<FieldElement> {
    let at = ctx.solve_a_v(t)?;
    let (_, r) = ctx.find_z(Some(z))?;
    Ok(ctx.mul(at, ctx.embed(r)))
}

/// `D_(t,z)`: `B` a side of `Ker(psi_t)`, `Gamma(a)` a side of `Ker(phi_z)`, empty at `a_t sqrt(z)`.
pub fn build_ds_tz(group: &SuzukiGroup, t: FieldElement, z: SubfieldElement, spec: &VariantSpec) -> Result<CentralSet> {
    let ctx = group.field();
    require_two_odd(ctx)?;
    if t.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let z = nonzero_sub(ctx, z)?;
    let hole = excluded_a(ctx, t, z)?;
    CentralSet::from_parts(group, sided_psi(ctx, t, spec.b), |a| {
        if a == hole {
            0
        } else {
            sided_phi(ctx, z, spec.gamma_at(a))
        }
    })
}

/// `D_z`: no central part, `Gamma(a)` a side of `Ker(phi_z)` for every nonzero `a`.
pub fn build_ds_z(group: &SuzukiGroup, z: SubfieldElement, spec: &VariantSpec) -> Result<CentralSet> {
    let ctx = group.field();
    require_two_odd(ctx)?;
    let z = nonzero_sub(ctx, z)?;
    CentralSet::from_parts(group, std::iter::empty(), |a| sided_phi(ctx, z, spec.gamma_at(a)))
}

/// The sign exponent `delta' + delta delta' + Tr_e(u1 u1' + delta' u0 u1 + delta u0 u1')` mod 2.
pub fn linking_sign_exponent(ctx: &FieldCtx, z: SubfieldElement, z2: SubfieldElement) -> Result<u32> {
    let aux = Aux2::new(ctx, QReading::HalfPowerPlusOne);
    let (_, r1) = ctx.find_z(Some(z))?;
    let (_, r2) = ctx.find_z(Some(z2))?;
    let (d, u1) = aux.split(ctx, r1);
    let (d2, u1b) = aux.split(ctx, r2);
    let u0 = aux.u0();
    let mut inner = ctx.s_mul(u1, u1b);
    if d2 == 1 {
        inner = ctx.s_add(inner, ctx.s_mul(u0, u1));
    }
    if d == 1 {
        inner = ctx.s_add(inner, ctx.s_mul(u0, u1b));
    }
    Ok((d2 + d * d2 + ctx.trace_e(inner)) % 2)
}

/// Parameters of the third set `D_(t, z+z')` (or `D_(z+z')`) fixed by the sign rules
/// `eta_(z+z') = -eta_z eta_z'` and
/// `eps_(z+z') = -eps_z eps_z' (-1)^(delta' + delta delta' + Tr_e(...))`.
pub fn linking_third(
    ctx: &FieldCtx,
    z: SubfieldElement,
    spec: &VariantSpec,
    z2: SubfieldElement,
    spec2: &VariantSpec,
) -> Result<(SubfieldElement, VariantSpec)> {
    require_two_odd(ctx)?;
    let z = nonzero_sub(ctx, z)?;
    let z2 = nonzero_sub(ctx, z2)?;
    if z == z2 {
        return Err(Error::EqualZ);
    }
    let (Some(g1), Some(g2)) = (spec.uniform_gamma(), spec2.uniform_gamma()) else {
        return Err(Error::PreconditionViolated("linking members need a Gamma choice independent of a".into()));
    };
    let eta = -spec.b.sign() * spec2.b.sign();
    let flip = if linking_sign_exponent(ctx, z, z2)? == 1 { -1 } else { 1 };
    let eps = -g1.sign() * g2.sign() * flip;
    Ok((ctx.s_add(z, z2), VariantSpec::uniform(Side::from_sign(eta), Side::from_sign(eps))))
}

#[derive(Clone, Debug)]
pub struct LinkingMember {
    pub z: SubfieldElement,
    pub spec: VariantSpec,
    pub set: CentralSet,
}

/// A family `{D_(t,z)}` or `{D_z}` indexed by `z in GF(2^e)^*`.
#[derive(Clone, Debug)]
pub struct LinkingFamily {
    pub t: Option<FieldElement>,
    pub members: Vec<LinkingMember>,
}

impl LinkingFamily {
    /// Fewer than two members: pair conditions are vacuous.
    pub fn is_degenerate(&self) -> bool {
        self.members.len() < 2
    }

    /// `D_(i,j)` for the ordered pair of members, with its variant spec.
    pub fn third(&self, group: &SuzukiGroup, i: usize, j: usize) -> Result<(SubfieldElement, VariantSpec, CentralSet)> {
        let (a, b) = (&self.members[i], &self.members[j]);
        let (z, spec) = linking_third(group.field(), a.z, &a.spec, b.z, &b.spec)?;
        let set = match self.t {
            Some(t) => build_ds_tz(group, t, z, &spec)?,
            None => build_ds_z(group, z, &spec)?,
        };
        Ok((z, spec, set))
    }
}

fn build_family(group: &SuzukiGroup, t: Option<FieldElement>, source: &VariantSource) -> Result<LinkingFamily> {
    let ctx = group.field();
    require_two_odd(ctx)?;
    let members = ctx
        .sub_elements()
        .skip(1)
        .enumerate()
        .map(|(i, z)| {
            let spec = source.member_spec(i);
            let set = match t {
                Some(t) => build_ds_tz(group, t, z, &spec)?,
                None => build_ds_z(group, z, &spec)?,
            };
            Ok(LinkingMember { z, spec, set })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinkingFamily { t, members })
}

/// `R_t = {D_(t,z) : z in GF(2^e)^*}`.
pub fn build_linking_rt(group: &SuzukiGroup, t: FieldElement, source: &VariantSource) -> Result<LinkingFamily> {
    if t.is_zero() {
        return Err(Error::ZeroParameter);
    }
    build_family(group, Some(t), source)
}

/// `R = {D_z : z in GF(2^e)^*}`.
pub fn build_linking_r(group: &SuzukiGroup, source: &VariantSource) -> Result<LinkingFamily> {
    build_family(group, None, source)
}

/// The four odd-p partial difference set shapes.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PdsKind {
    /// `B_t` = complement of `Ker(psi_t)`, `Gamma` empty on `a_t sqrt(z) GF(p)`.
    Tz,
    Z,
    ZPrime,
    ZDoublePrime,
}

fn require_odd_pds(ctx: &FieldCtx) -> Result<()> {
    let (p, m, f) = (ctx.p(), ctx.m(), ctx.f());
    if p == 2 || m % 2 == 0 || f % 2 == 0 || f % p == 0 {
        return Err(Error::PreconditionViolated(format!(
            "needs p odd, m and f odd, p not dividing f; got p = {p}, m = {m}, f = {f}"
        )));
    }
    Ok(())
}

/// Odd-p central partial difference sets. `t` is used only by [`PdsKind::Tz`] and
/// must be a nonzero square.
pub fn build_pds(group: &SuzukiGroup, kind: PdsKind, t: Option<FieldElement>, z: Option<SubfieldElement>) -> Result<CentralSet> {
    let ctx = group.field();
    require_odd_pds(ctx)?;
    let (z, root) = ctx.find_z(z)?;
    let ker = ker_phi(ctx, z);
    let comp = full_mask(ctx.sub_order()) & !ker;
    match kind {
        PdsKind::Tz => {
            let t = t.ok_or(Error::ZeroParameter)?;
            if t.is_zero() {
                return Err(Error::ZeroParameter);
            }
            if !ctx.is_square(t) {
                return Err(Error::PreconditionViolated("t must be a nonzero square".into()));
            }
            let base = ctx.mul(ctx.solve_a_v(t)?, ctx.embed(root));
            let mut hole = vec![false; ctx.order() as usize];
            for c in 1..ctx.p() {
                hole[ctx.mul(base, ctx.scalar(c)).index() as usize] = true;
            }
            CentralSet::from_parts(group, sided_psi(ctx, t, Side::Comp), |a| if hole[a.index() as usize] { 0 } else { ker })
        }
        PdsKind::Z => CentralSet::from_parts(group, std::iter::empty(), |_| ker),
        PdsKind::ZPrime => CentralSet::from_parts(group, ctx.nonzero_elements(), |_| ker),
        PdsKind::ZDoublePrime => CentralSet::from_parts(group, std::iter::empty(), |_| comp),
    }
}

/// `(G \ S) \ {1}` as a class set.
pub fn complement_minus_identity(set: &CentralSet) -> CentralSet {
    let mut c = set.complement();
    c.remove_central(FieldElement::ZERO);
    c
}

#[cfg(test)]
mod tests;
