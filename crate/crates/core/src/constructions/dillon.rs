//! Difference sets `D = g_1 H_1 + ... + g_s H_s` built from the hyperplanes of the
//! center `E = Z(G)`, and recognition of the `D_(t,z)`, `D_z` sets in that form.

use std::collections::HashSet;

use super::{excluded_a, ker_phi, Side};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement, SubfieldElement};
use crate::group::{GroupElement, SuzukiGroup};
use crate::set::{mask_elements, CentralSet};

/// One translate `rep * H`, with `H = {(0, x) : Tr_m(u x) = 0}` named by `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DillonPart {
    pub rep: GroupElement,
    pub hyperplane: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DillonSpec {
    pub q: u64,
    pub d: u32,
    /// Number of hyperplanes, `(q^(d+1) - 1) / (q - 1)`.
    pub s: u64,
    /// First coordinate of the coset of `E` left out.
    pub omitted: FieldElement,
    pub parts: Vec<DillonPart>,
}

impl DillonSpec {
    /// Coset `(a, *)` gets `(a, 0) Ker(psi_a)`; the coset `a = 0` is left out.
    pub fn standard(group: &SuzukiGroup) -> Result<Self> {
        let ctx = group.field();
        require_binary(ctx)?;
        let parts = ctx
            .nonzero_elements()
            .map(|a| DillonPart { rep: GroupElement::new(a, FieldElement::ZERO), hyperplane: a })
            .collect();
        Ok(Self::new(ctx, FieldElement::ZERO, parts))
    }

    fn new(ctx: &FieldCtx, omitted: FieldElement, parts: Vec<DillonPart>) -> Self {
        let d = ctx.m() - 1;
        Self { q: 2, d, s: (1u64 << (d + 1)) - 1, omitted, parts }
    }

    /// `(v, k, lambda, n) = (q^(d+1)(s+1), q^d s, q^d (s - q^d), q^(2d))`.
    pub fn mcfarland_params(&self) -> (u64, u64, u64, u64) {
        let qd = self.q.pow(self.d);
        (qd * self.q * (self.s + 1), qd * self.s, qd * (self.s - qd), qd * qd)
    }
}

fn require_binary(ctx: &FieldCtx) -> Result<()> {
    if ctx.p() != 2 {
        return Err(Error::PreconditionViolated(format!(
            "the center has index s + 1 only for p = 2, got p = {}",
            ctx.p()
        )));
    }
    Ok(())
}

fn kernel_of(ctx: &FieldCtx, u: FieldElement) -> impl Iterator<Item = FieldElement> + '_ {
    ctx.elements().filter(move |&x| ctx.trace_m(ctx.mul(u, x)) == 0)
}

/// The elements of `D = union g_i H_i`, sorted by element index.
pub fn build_dillon(group: &SuzukiGroup, spec: &DillonSpec) -> Result<Vec<GroupElement>> {
    let ctx = group.field();
    require_binary(ctx)?;
    if spec.parts.len() as u64 != spec.s {
        return Err(Error::PreconditionViolated(format!("{} parts for s = {}", spec.parts.len(), spec.s)));
    }
    let mut cosets = HashSet::new();
    let mut planes = HashSet::new();
    for part in &spec.parts {
        if part.rep.a == spec.omitted || !cosets.insert(part.rep.a) {
            return Err(Error::PreconditionViolated("coset representatives must be distinct and avoid the omitted coset".into()));
        }
        if part.hyperplane.is_zero() || !planes.insert(part.hyperplane) {
            return Err(Error::PreconditionViolated("hyperplanes must be distinct".into()));
        }
    }
    let mut out: Vec<GroupElement> = spec
        .parts
        .iter()
        .flat_map(|part| kernel_of(ctx, part.hyperplane).map(move |x| group.mul(part.rep, GroupElement::new(FieldElement::ZERO, x))))
        .collect();
    out.sort_by_key(|g| group.element_index(*g));
    Ok(out)
}

/// The hyperplanes `X_a` used for each coset, and the recovered spec.
#[derive(Clone, Debug)]
pub struct DillonWitness {
    pub spec: DillonSpec,
    pub z: SubfieldElement,
    pub t: Option<FieldElement>,
}

/// The functional `u` with `X = Ker(psi_u)`, if `X` is a hyperplane.
fn functional_of(ctx: &FieldCtx, x: &[FieldElement]) -> Option<FieldElement> {
    if x.len() as u32 * 2 != ctx.order() {
        return None;
    }
    let u = ctx.nonzero_elements().find(|&u| x.iter().all(|&y| ctx.trace_m(ctx.mul(u, y)) == 0))?;
    Some(u)
}

/// `X_a = j_a Ker(phi_z) + Im(f_a)` as second coordinates.
fn x_a(group: &SuzukiGroup, a: FieldElement, ker: u128) -> Vec<FieldElement> {
    let ctx = group.field();
    let dec = group.decomp(a);
    let img = dec.image_elements(ctx);
    let mut out = Vec::with_capacity(img.len() * ker.count_ones() as usize);
    for k in mask_elements(ker) {
        let base = ctx.mul(dec.j(), ctx.embed(k));
        out.extend(img.iter().map(|&h| ctx.add(base, h)));
    }
    out
}

/// Rewrites `D_(t,z)` (with `t`) or `D_z` (without) as `union g_i H_i` and checks
/// element-level equality with `set`.
pub fn dillon_form_of(
    group: &SuzukiGroup,
    set: &CentralSet,
    z: SubfieldElement,
    t: Option<FieldElement>,
) -> Result<DillonWitness> {
    let ctx = group.field();
    require_binary(ctx)?;
    let ker = ker_phi(ctx, z);
    let comp = crate::set::full_mask(ctx.sub_order()) & !ker;
    let d_off = mask_elements(comp).next().ok_or_else(|| Error::NotDillonForm("Ker(phi_z) is everything".into()))?;
    let hole = match t {
        Some(t) => excluded_a(ctx, t, z)?,
        None => FieldElement::ZERO,
    };
    let mut parts = Vec::new();
    for a in ctx.nonzero_elements() {
        let g = set.gamma_mask(a);
        if a == hole {
            if g != 0 {
                return Err(Error::NotDillonForm(format!("Gamma({:?}) should be empty", ctx.coeffs(a))));
            }
            continue;
        }
        let side = if g == ker {
            Side::Ker
        } else if g == comp {
            Side::Comp
        } else {
            return Err(Error::NotDillonForm(format!("Gamma({:?}) is not a side of Ker(phi_z)", ctx.coeffs(a))));
        };
        let x = x_a(group, a, ker);
        let u = functional_of(ctx, &x).ok_or_else(|| Error::NotDillonForm("X_a is not a hyperplane".into()))?;
        let rep = match side {
            Side::Ker => GroupElement::new(a, FieldElement::ZERO),
            Side::Comp => GroupElement::new(a, ctx.mul(group.j(a), ctx.embed(d_off))),
        };
        parts.push(DillonPart { rep, hyperplane: u });
    }
    let central: Vec<FieldElement> = set.central_elements().collect();
    match t {
        None => {
            if !central.is_empty() {
                return Err(Error::NotDillonForm("D_z has no central classes".into()));
            }
        }
        Some(t) => {
            let x = x_a(group, hole, ker);
            let u = functional_of(ctx, &x).ok_or_else(|| Error::NotDillonForm("X_(a_t sqrt z) is not a hyperplane".into()))?;
            let mut kt: Vec<FieldElement> = kernel_of(ctx, t).collect();
            let mut xs = x.clone();
            kt.sort();
            xs.sort();
            if kt != xs {
                return Err(Error::NotDillonForm("X_(a_t sqrt z) differs from Ker(psi_t)".into()));
            }
            let in_ker = |b: &FieldElement| ctx.trace_m(ctx.mul(t, *b)) == 0;
            let rep_b = if central.len() == kt.len() && central.iter().all(in_ker) {
                FieldElement::ZERO
            } else if central.len() == kt.len() && !central.iter().any(in_ker) {
                ctx.elements().find(|b| !in_ker(b)).expect("t is nonzero")
            } else {
                return Err(Error::NotDillonForm("B is not a side of Ker(psi_t)".into()));
            };
            parts.push(DillonPart { rep: GroupElement::new(FieldElement::ZERO, rep_b), hyperplane: u });
        }
    }
    let spec = DillonSpec::new(ctx, hole, parts);
    let built = build_dillon(group, &spec).map_err(|e| Error::NotDillonForm(e.to_string()))?;
    let mut mine: Vec<GroupElement> = set.classes().flat_map(|c| group.class_elements(c)).collect();
    mine.sort_by_key(|g| group.element_index(*g));
    if built != mine {
        return Err(Error::NotDillonForm(format!(
            "element sets differ ({} vs {} elements)",
            built.len(),
            mine.len()
        )));
    }
    Ok(DillonWitness { spec, z, t })
}
