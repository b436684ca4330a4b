//! The Suzuki p-group `A_p(m, theta)` on `GF(p^m) x GF(p^m)` with
//! `(a, b)(c, d) = (a + c, b + d + a theta(c))`, and its conjugacy classes.

use std::borrow::Cow;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement, ImageDecomp, SubfieldElement};

/// Fields up to this order keep every `Im(f_a)` decomposition in memory.
const EAGER_DECOMP_LIMIT: u32 = 1 << 13;

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl GroupElement {
    pub fn new(a: FieldElement, b: FieldElement) -> Self {
        Self { a, b }
    }
}

/// A conjugacy class: `C_b = {(0, b)}` or `C_{a,x} = {(a, j_a x + y) : y in Im(f_a)}`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassId {
    Central(FieldElement),
    Generic(FieldElement, SubfieldElement),
}

impl fmt::Debug for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Central(b) => write!(f, "C[{}]", b.index()),
            ClassId::Generic(a, x) => write!(f, "C[{},{}]", a.index(), x.index()),
        }
    }
}

pub struct SuzukiGroup {
    field: FieldCtx,
    decomps: Vec<ImageDecomp>,
}

impl fmt::Debug for SuzukiGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuzukiGroup").field("field", &self.field).finish()
    }
}

impl SuzukiGroup {
    pub fn new(field: FieldCtx) -> Result<Self> {
        let decomps = if field.order() <= EAGER_DECOMP_LIMIT {
            field.nonzero_elements().map(|a| field.image_and_j(a)).collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        Ok(Self { field, decomps })
    }

    pub fn from_params(p: u32, m: u32, l: u32) -> Result<Self> {
        Self::new(FieldCtx::new(p, m, l)?)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// `p^(2m)`.
    pub fn order(&self) -> u64 {
        let q = self.field.order() as u64;
        q * q
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(FieldElement::ZERO, FieldElement::ZERO)
    }

    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let f = &self.field;
        GroupElement::new(f.add(g.a, h.a), f.add(f.add(g.b, h.b), f.mul(g.a, f.theta(h.a))))
    }

    /// `(a, b)^-1 = (-a, a theta(a) - b)`.
    pub fn inv(&self, g: GroupElement) -> GroupElement {
        let f = &self.field;
        GroupElement::new(f.neg(g.a), f.sub(f.norm_like(g.a), g.b))
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.field.contains(g.a) && self.field.contains(g.b)
    }

    pub fn checked_mul(&self, g: GroupElement, h: GroupElement) -> Result<GroupElement> {
        if !self.contains(g) || !self.contains(h) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.mul(g, h))
    }

    pub fn checked_inv(&self, g: GroupElement) -> Result<GroupElement> {
        if !self.contains(g) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.inv(g))
    }

    pub fn conjugate(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn commutator(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)))
    }

    /// Dense index `a * p^m + b`.
    pub fn element_index(&self, g: GroupElement) -> u64 {
        g.a.index() as u64 * self.field.order() as u64 + g.b.index() as u64
    }

    pub fn element_at(&self, index: u64) -> GroupElement {
        let q = self.field.order() as u64;
        GroupElement::new(FieldElement::from_index((index / q) as u32), FieldElement::from_index((index % q) as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element_at(i))
    }

    /// The decomposition `GF(p^m) = Im(f_a) + j_a GF(p^e)`.
    pub fn decomp(&self, a: FieldElement) -> Cow<'_, ImageDecomp> {
        assert!(!a.is_zero(), "decomposition needs a nonzero a");
        match self.decomps.get(a.index() as usize - 1) {
            Some(d) => Cow::Borrowed(d),
            None => Cow::Owned(self.field.image_and_j(a).expect("nonzero a")),
        }
    }

    pub fn j(&self, a: FieldElement) -> FieldElement {
        self.decomp(a).j()
    }

    pub fn class_of(&self, g: GroupElement) -> ClassId {
        if g.a.is_zero() {
            ClassId::Central(g.b)
        } else {
            ClassId::Generic(g.a, self.decomp(g.a).coordinate(g.b))
        }
    }

    /// `p^m + p^(m+e) - p^e`.
    pub fn num_classes(&self) -> usize {
        let q = self.field.order() as usize;
        q + (q - 1) * self.field.sub_order() as usize
    }

    /// Size of a generic class, `p^(m-e)`.
    pub fn generic_class_size(&self) -> u64 {
        (self.field.order() / self.field.sub_order()) as u64
    }

    pub fn class_size(&self, c: ClassId) -> u64 {
        match c {
            ClassId::Central(_) => 1,
            ClassId::Generic(..) => self.generic_class_size(),
        }
    }

    /// Central classes first (by b), then generic classes by (a, x).
    pub fn class_index(&self, c: ClassId) -> usize {
        let q = self.field.order() as usize;
        match c {
            ClassId::Central(b) => b.index() as usize,
            ClassId::Generic(a, x) => {
                q + (a.index() as usize - 1) * self.field.sub_order() as usize + x.index() as usize
            }
        }
    }

    pub fn class_at(&self, index: usize) -> ClassId {
        let q = self.field.order() as usize;
        if index < q {
            ClassId::Central(FieldElement::from_index(index as u32))
        } else {
            let pe = self.field.sub_order() as usize;
            let r = index - q;
            ClassId::Generic(FieldElement::from_index((r / pe + 1) as u32), SubfieldElement::from_index((r % pe) as u32))
        }
    }

    pub fn classes(&self) -> impl Iterator<Item = ClassId> + '_ {
        (0..self.num_classes()).map(|i| self.class_at(i))
    }

    pub fn class_elements(&self, c: ClassId) -> Vec<GroupElement> {
        match c {
            ClassId::Central(b) => vec![GroupElement::new(FieldElement::ZERO, b)],
            ClassId::Generic(a, x) => {
                let d = self.decomp(a);
                let base = self.field.mul(d.j(), self.field.embed(x));
                d.image_elements(&self.field)
                    .into_iter()
                    .map(|h| GroupElement::new(a, self.field.add(base, h)))
                    .collect()
            }
        }
    }

    /// A representative `(a, j_a x)` or `(0, b)`.
    pub fn class_rep(&self, c: ClassId) -> GroupElement {
        match c {
            ClassId::Central(b) => GroupElement::new(FieldElement::ZERO, b),
            ClassId::Generic(a, x) => GroupElement::new(a, self.field.mul(self.j(a), self.field.embed(x))),
        }
    }

    /// The class containing the inverses of the elements of `c`.
    pub fn inverse_class(&self, c: ClassId) -> ClassId {
        self.class_of(self.inv(self.class_rep(c)))
    }

    /// `Z(G) = {(0, x)}`, as the list of second coordinates.
    pub fn center(&self) -> Vec<FieldElement> {
        self.field.elements().collect()
    }

    /// `G'` as second coordinates: `Im(f_1)` when f = 2, all of `GF(p^m)` otherwise.
    pub fn derived_subgroup(&self) -> Vec<FieldElement> {
        if self.field.f() == 2 {
            let mut img = self.decomp(FieldElement::ONE).image_elements(&self.field);
            img.sort();
            img
        } else {
            self.center()
        }
    }

    pub fn class_to_json(&self, c: ClassId) -> Value {
        let f = &self.field;
        match c {
            ClassId::Central(b) => json!({"type": "central", "b": f.coeffs(b)}),
            ClassId::Generic(a, x) => json!({"type": "generic", "a": f.coeffs(a), "x": f.sub_coeffs(x)}),
        }
    }

    pub fn class_from_json(&self, v: &Value) -> Result<ClassId> {
        let coeffs = |key: &str| -> Result<Vec<u32>> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("class entry lacks `{key}`: {v}")))?;
            arr.iter()
                .map(|c| {
                    c.as_u64()
                        .and_then(|c| u32::try_from(c).ok())
                        .ok_or_else(|| Error::Parse(format!("bad coefficient in {v}")))
                })
                .collect()
        };
        match v.get("type").and_then(Value::as_str) {
            Some("central") => Ok(ClassId::Central(self.field.from_coeffs(&coeffs("b")?)?)),
            Some("generic") => {
                let a = self.field.from_coeffs(&coeffs("a")?)?;
                if a.is_zero() {
                    return Err(Error::Parse("generic class with a = 0".into()));
                }
                Ok(ClassId::Generic(a, self.field.sub_from_coeffs(&coeffs("x")?)?))
            }
            _ => Err(Error::Parse(format!("unknown class type in {v}"))),
        }
    }
}
