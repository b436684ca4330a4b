//! Auxiliary functions used by the characters of `A_2(m, theta)` with f odd:
//! the quadratic form `Q` on `GF(2^e)`, `kappa`, and the splitting
//! `u = delta u_0 + u_1` with `Tr_e(u_1) = 0`.

use serde::Serialize;

use crate::field::{FieldCtx, SubfieldElement};

/// How the last term of `Q` is read when `e` is even.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum QReading {
    /// `Tr_e(c x^(2^(e/2) + 1))`.
    HalfPowerPlusOne,
    /// `Tr_e(c x^(2^(e/2 + 1)))`.
    DoubledHalfPower,
}

pub struct Aux2 {
    e: u32,
    u0: SubfieldElement,
    c: Option<SubfieldElement>,
    reading: QReading,
}

/// `kappa(0) = 0`, `kappa(1) = 1`.
pub fn kappa(delta: u32) -> u32 {
    delta & 1
}

impl Aux2 {
    pub fn new(ctx: &FieldCtx, reading: QReading) -> Self {
        assert_eq!(ctx.p(), 2, "Q is defined over GF(2^e)");
        let e = ctx.e();
        let u0 = ctx.sub_elements().find(|&u| ctx.trace_e(u) == 1).expect("trace is onto");
        let c = (e % 2 == 0).then(|| {
            let half = 1u64 << (e / 2);
            ctx.sub_elements()
                .find(|&c| ctx.s_add(c, ctx.s_pow(c, half)) == SubfieldElement::ONE)
                .expect("c + c^(2^(e/2)) = 1 is solvable")
        });
        Self { e, u0, c, reading }
    }

    pub fn u0(&self) -> SubfieldElement {
        self.u0
    }

    pub fn c(&self) -> Option<SubfieldElement> {
        self.c
    }

    pub fn reading(&self) -> QReading {
        self.reading
    }

    /// `u = delta u_0 + u_1` with `Tr_e(u_1) = 0`.
    pub fn split(&self, ctx: &FieldCtx, u: SubfieldElement) -> (u32, SubfieldElement) {
        let delta = ctx.trace_e(u);
        let u1 = if delta == 1 { ctx.s_add(u, self.u0) } else { u };
        (delta, u1)
    }

    pub fn q(&self, ctx: &FieldCtx, x: SubfieldElement) -> u32 {
        let e = self.e;
        let mut acc = 0;
        let top = if e % 2 == 1 { (e - 1) / 2 } else { e / 2 - 1 };
        for s in 0..=top {
            acc ^= ctx.trace_e(ctx.s_pow(x, (1u64 << s) + 1));
        }
        if let Some(c) = self.c {
            let exp = match self.reading {
                QReading::HalfPowerPlusOne => (1u64 << (e / 2)) + 1,
                QReading::DoubledHalfPower => 1u64 << (e / 2 + 1),
            };
            acc ^= ctx.trace_e(ctx.s_mul(c, ctx.s_pow(x, exp)));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_with_e(e: u32) -> FieldCtx {
        // f = 3 keeps the family in the odd-f setting.
        FieldCtx::new(2, 3 * e, e).unwrap()
    }

    fn polarization_holds_on(ctx: &FieldCtx, aux: &Aux2, only_trace_zero: bool) -> bool {
        let dom: Vec<_> = ctx.sub_elements().filter(|&u| !only_trace_zero || ctx.trace_e(u) == 0).collect();
        dom.iter().all(|&u| {
            dom.iter().all(|&w| {
                let lhs = aux.q(ctx, ctx.s_add(u, w));
                let rhs = aux.q(ctx, u) ^ aux.q(ctx, w) ^ ctx.trace_e(ctx.s_mul(u, w));
                lhs == rhs
            })
        })
    }

    #[test]
    fn quadratic_identity_holds_on_trace_zero_elements() {
        for e in 1..=6 {
            let ctx = ctx_with_e(e);
            let aux = Aux2::new(&ctx, QReading::HalfPowerPlusOne);
            assert!(polarization_holds_on(&ctx, &aux, true), "e = {e}");
        }
    }

    #[test]
    fn quadratic_identity_fails_off_trace_zero_elements() {
        // On all of GF(2) the identity would force Tr(1) = 0.
        let ctx = ctx_with_e(1);
        let aux = Aux2::new(&ctx, QReading::HalfPowerPlusOne);
        assert!(!polarization_holds_on(&ctx, &aux, false));
    }

    #[test]
    fn readings_agree_on_trace_zero_when_e_is_two() {
        let ctx = ctx_with_e(2);
        let a = Aux2::new(&ctx, QReading::HalfPowerPlusOne);
        let b = Aux2::new(&ctx, QReading::DoubledHalfPower);
        for u in ctx.sub_elements().filter(|&u| ctx.trace_e(u) == 0) {
            assert_eq!(a.q(&ctx, u), b.q(&ctx, u));
        }
    }

    #[test]
    fn doubled_exponent_reading_breaks_the_identity() {
        for e in [4, 6] {
            let ctx = ctx_with_e(e);
            let aux = Aux2::new(&ctx, QReading::DoubledHalfPower);
            assert!(!polarization_holds_on(&ctx, &aux, true), "e = {e}");
        }
    }

    #[test]
    fn split_is_unique() {
        let ctx = ctx_with_e(4);
        let aux = Aux2::new(&ctx, QReading::HalfPowerPlusOne);
        assert_eq!(ctx.trace_e(aux.u0()), 1);
        for u in ctx.sub_elements() {
            let (d, u1) = aux.split(&ctx, u);
            assert_eq!(ctx.trace_e(u1), 0);
            let back = if d == 1 { ctx.s_add(u1, aux.u0()) } else { u1 };
            assert_eq!(back, u);
        }
        let c = aux.c().unwrap();
        assert_eq!(ctx.s_add(c, ctx.s_pow(c, 4)), SubfieldElement::ONE);
        assert_eq!((kappa(0), kappa(1)), (0, 1));
    }
}
