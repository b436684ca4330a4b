//! The m = f families: `C_{a,0}` for `a in J0`, `C_{a,1}` for `a in J1`, with or
//! without a central part `B_t`.

use super::{sided_psi, Side};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::group::SuzukiGroup;
use crate::set::CentralSet;

fn require_prime_subfield(ctx: &FieldCtx) -> Result<()> {
    if ctx.p() != 2 || ctx.e() != 1 || ctx.f() % 2 == 0 {
        return Err(Error::PreconditionViolated(format!(
            "needs p = 2, e = 1 and m = f odd, got p = {}, m = {}, e = {}",
            ctx.p(),
            ctx.m(),
            ctx.e()
        )));
    }
    Ok(())
}

/// With `t`: `B_t` a side of `Ker(psi_t)` and `J0 + J1 = GF(2^m)^* \ {a_t}`.
/// Without: no central part and `J0 + J1 = GF(2^m)^*`.
pub fn build_example_mf(
    group: &SuzukiGroup,
    t: Option<(FieldElement, Side)>,
    j0: &[FieldElement],
    j1: &[FieldElement],
) -> Result<CentralSet> {
    let ctx = group.field();
    require_prime_subfield(ctx)?;
    let q = ctx.order() as usize;
    let mut mark = vec![0u8; q];
    for (bit, list) in [(1u8, j0), (2u8, j1)] {
        for &a in list {
            if a.is_zero() || a.index() as usize >= q {
                return Err(Error::BadPartition(format!("{:?} is not a nonzero field element", a)));
            }
            if mark[a.index() as usize] != 0 {
                return Err(Error::BadPartition(format!("{:?} listed twice", ctx.coeffs(a))));
            }
            mark[a.index() as usize] = bit;
        }
    }
    let hole = match t {
        Some((t, _)) => Some(ctx.solve_a_v(t)?),
        None => None,
    };
    for a in ctx.nonzero_elements() {
        let listed = mark[a.index() as usize] != 0;
        if listed == (Some(a) == hole) {
            return Err(Error::BadPartition(format!(
                "{:?} {}",
                ctx.coeffs(a),
                if listed { "must be left out" } else { "is missing" }
            )));
        }
    }
    let central: Vec<FieldElement> = match t {
        Some((t, side)) => sided_psi(ctx, t, side).collect(),
        None => Vec::new(),
    };
    CentralSet::from_parts(group, central, |a| match mark[a.index() as usize] {
        1 => 0b01,
        2 => 0b10,
        _ => 0,
    })
}

/// How a set decomposes into one of the two m = f families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleMatch {
    /// `t` and the side of `Ker(psi_t)`; `None` for the family without central part.
    pub t: Option<(FieldElement, Side)>,
    pub j0: Vec<FieldElement>,
    pub j1: Vec<FieldElement>,
}

/// Recognizes the shapes produced by [`build_example_mf`].
pub fn match_example(group: &SuzukiGroup, set: &CentralSet) -> Result<Option<ExampleMatch>> {
    let ctx = group.field();
    require_prime_subfield(ctx)?;
    let central: Vec<FieldElement> = set.central_elements().collect();
    let t = if central.is_empty() {
        None
    } else {
        let mut found = None;
        for t in ctx.nonzero_elements() {
            for side in [Side::Ker, Side::Comp] {
                let want: Vec<FieldElement> = sided_psi(ctx, t, side).collect();
                if want == central {
                    found = Some((t, side));
                }
            }
        }
        match found {
            Some(x) => Some(x),
            None => return Ok(None),
        }
    };
    let hole = match t {
        Some((t, _)) => Some(ctx.solve_a_v(t)?),
        None => None,
    };
    let (mut j0, mut j1) = (Vec::new(), Vec::new());
    for a in ctx.nonzero_elements() {
        let g = set.gamma_mask(a);
        match (Some(a) == hole, g) {
            (true, 0) => {}
            (false, 0b01) => j0.push(a),
            (false, 0b10) => j1.push(a),
            _ => return Ok(None),
        }
    }
    Ok(Some(ExampleMatch { t, j0, j1 }))
}
