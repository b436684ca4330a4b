//! Unions of conjugacy classes, stored as `(B, Gamma)`: the central classes
//! `C_b` with `b in B`, and the generic classes `C_{a,x}` with `x in Gamma(a)`.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldElement, SubfieldElement};
use crate::group::{ClassId, SuzukiGroup};

/// Bitmask over `GF(p^e)` by subfield index.
pub type SubMask = u128;

/// Largest `p^e` a [`SubMask`] can hold.
pub const MAX_SUB_ORDER: u32 = 128;

#[derive(Clone)]
pub struct CentralSet {
    q: u32,
    pe: u32,
    generic_size: u64,
    central: Vec<u64>,
    palette: Vec<SubMask>,
    palette_lookup: HashMap<SubMask, u32>,
    /// Palette index of `Gamma(a)`; entry 0 (a = 0) is unused.
    gamma: Vec<u32>,
    card: u64,
}

impl fmt::Debug for CentralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CentralSet")
            .field("central", &self.central_count())
            .field("generic_classes", &self.generic_class_count())
            .field("cardinality", &self.card)
            .finish()
    }
}

impl PartialEq for CentralSet {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
            && self.pe == other.pe
            && self.central == other.central
            && (1..self.q).all(|a| self.gamma_mask_at(a) == other.gamma_mask_at(a))
    }
}

impl Eq for CentralSet {}

pub fn full_mask(pe: u32) -> SubMask {
    if pe == 128 {
        u128::MAX
    } else {
        (1u128 << pe) - 1
    }
}

pub fn mask_elements(mask: SubMask) -> impl Iterator<Item = SubfieldElement> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let bit = m.trailing_zeros();
        m &= m - 1;
        Some(SubfieldElement::from_index(bit))
    })
}

impl CentralSet {
    pub fn empty(group: &SuzukiGroup) -> Result<Self> {
        let f = group.field();
        let (q, pe) = (f.order(), f.sub_order());
        if pe > MAX_SUB_ORDER {
            return Err(Error::TooLarge(format!("subfield order {pe} exceeds {MAX_SUB_ORDER}")));
        }
        let mut palette_lookup = HashMap::new();
        palette_lookup.insert(0, 0);
        Ok(Self {
            q,
            pe,
            generic_size: group.generic_class_size(),
            central: vec![0; (q as usize).div_ceil(64)],
            palette: vec![0],
            palette_lookup,
            gamma: vec![0; q as usize],
            card: 0,
        })
    }

    /// Builds a set from a central part and a rule giving `Gamma(a)` for each nonzero `a`.
    pub fn from_parts(
        group: &SuzukiGroup,
        central: impl IntoIterator<Item = FieldElement>,
        mut gamma: impl FnMut(FieldElement) -> SubMask,
    ) -> Result<Self> {
        let mut set = Self::empty(group)?;
        for b in central {
            set.insert_central(b);
        }
        for a in 1..set.q {
            let a = FieldElement::from_index(a);
            set.set_gamma(a, gamma(a));
        }
        Ok(set)
    }

    pub fn from_classes(group: &SuzukiGroup, classes: impl IntoIterator<Item = ClassId>) -> Result<Self> {
        let mut set = Self::empty(group)?;
        for c in classes {
            set.insert(c);
        }
        Ok(set)
    }

    pub fn field_order(&self) -> u32 {
        self.q
    }

    pub fn sub_order(&self) -> u32 {
        self.pe
    }

    pub fn generic_class_size(&self) -> u64 {
        self.generic_size
    }

    /// Number of group elements.
    pub fn cardinality(&self) -> u64 {
        self.card
    }

    pub fn contains_central(&self, b: FieldElement) -> bool {
        let i = b.index() as usize;
        self.central[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert_central(&mut self, b: FieldElement) {
        if !self.contains_central(b) {
            let i = b.index() as usize;
            self.central[i / 64] |= 1 << (i % 64);
            self.card += 1;
        }
    }

    pub fn remove_central(&mut self, b: FieldElement) {
        if self.contains_central(b) {
            let i = b.index() as usize;
            self.central[i / 64] &= !(1 << (i % 64));
            self.card -= 1;
        }
    }

    fn gamma_mask_at(&self, a: u32) -> SubMask {
        self.palette[self.gamma[a as usize] as usize]
    }

    /// `Gamma(a)` as a bitmask over subfield indices.
    pub fn gamma_mask(&self, a: FieldElement) -> SubMask {
        if a.is_zero() {
            0
        } else {
            self.gamma_mask_at(a.index())
        }
    }

    pub fn set_gamma(&mut self, a: FieldElement, mask: SubMask) {
        assert!(!a.is_zero(), "Gamma is indexed by nonzero a");
        let mask = mask & full_mask(self.pe);
        let old = self.gamma_mask_at(a.index());
        let next = self.palette.len() as u32;
        let idx = *self.palette_lookup.entry(mask).or_insert(next);
        if idx == next {
            self.palette.push(mask);
        }
        self.gamma[a.index() as usize] = idx;
        self.card = self.card - old.count_ones() as u64 * self.generic_size + mask.count_ones() as u64 * self.generic_size;
    }

    pub fn contains(&self, c: ClassId) -> bool {
        match c {
            ClassId::Central(b) => self.contains_central(b),
            ClassId::Generic(a, x) => self.gamma_mask(a) >> x.index() & 1 == 1,
        }
    }

    pub fn insert(&mut self, c: ClassId) {
        match c {
            ClassId::Central(b) => self.insert_central(b),
            ClassId::Generic(a, x) => {
                let m = self.gamma_mask(a) | 1 << x.index();
                self.set_gamma(a, m);
            }
        }
    }

    pub fn remove(&mut self, c: ClassId) {
        match c {
            ClassId::Central(b) => self.remove_central(b),
            ClassId::Generic(a, x) => {
                let m = self.gamma_mask(a) & !(1 << x.index());
                self.set_gamma(a, m);
            }
        }
    }

    /// Toggles one class in or out.
    pub fn toggle(&mut self, c: ClassId) {
        if self.contains(c) {
            self.remove(c)
        } else {
            self.insert(c)
        }
    }

    pub fn central_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.central.iter().enumerate().flat_map(|(w, &word)| {
            let mut m = word;
            std::iter::from_fn(move || {
                if m == 0 {
                    return None;
                }
                let bit = m.trailing_zeros();
                m &= m - 1;
                Some(FieldElement::from_index(w as u32 * 64 + bit))
            })
        })
    }

    pub fn central_count(&self) -> u64 {
        self.central.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn generic_class_count(&self) -> u64 {
        (self.card - self.central_count()) / self.generic_size
    }

    /// `(a, Gamma(a))` for every nonzero `a` with nonempty `Gamma(a)`.
    pub fn generic_parts(&self) -> impl Iterator<Item = (FieldElement, SubMask)> + '_ {
        (1..self.q).filter_map(move |a| {
            let m = self.gamma_mask_at(a);
            (m != 0).then(|| (FieldElement::from_index(a), m))
        })
    }

    /// Every class of the set in canonical order: central by b, then generic by (a, x).
    pub fn classes(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.central_elements()
            .map(ClassId::Central)
            .chain(self.generic_parts().flat_map(|(a, m)| mask_elements(m).map(move |x| ClassId::Generic(a, x))))
    }

    /// `G \ S` as a union of classes.
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        out.card = 0;
        for (i, w) in out.central.iter_mut().enumerate() {
            let bits = (self.q as usize).saturating_sub(i * 64).min(64);
            let full = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
            *w = !*w & full;
            out.card += w.count_ones() as u64;
        }
        let full = full_mask(self.pe);
        for a in 1..self.q {
            let m = full & !self.gamma_mask_at(a);
            out.set_gamma_raw(a, m);
        }
        out
    }

    fn set_gamma_raw(&mut self, a: u32, mask: SubMask) {
        let next = self.palette.len() as u32;
        let idx = *self.palette_lookup.entry(mask).or_insert(next);
        if idx == next {
            self.palette.push(mask);
        }
        self.gamma[a as usize] = idx;
        self.card += mask.count_ones() as u64 * self.generic_size;
    }

    pub fn to_json(&self, group: &SuzukiGroup) -> Value {
        json!({
            "field": group.field().spec().to_string(),
            "classes": self.classes().map(|c| group.class_to_json(c)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(group: &SuzukiGroup, v: &Value) -> Result<Self> {
        let classes = v
            .get("classes")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("set file lacks `classes`".into()))?;
        let ids = classes.iter().map(|c| group.class_from_json(c)).collect::<Result<Vec<_>>>()?;
        Self::from_classes(group, ids)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_tracks_edits() {
        let grp = SuzukiGroup::from_params(2, 3, 1).unwrap();
        let mut s = CentralSet::empty(&grp).unwrap();
        s.insert(ClassId::Central(FieldElement::ONE));
        s.insert(ClassId::Generic(FieldElement::ONE, SubfieldElement::ZERO));
        assert_eq!(s.cardinality(), 5);
        s.insert(ClassId::Generic(FieldElement::ONE, SubfieldElement::ZERO));
        assert_eq!(s.cardinality(), 5);
        s.toggle(ClassId::Central(FieldElement::ONE));
        assert_eq!(s.cardinality(), 4);
        let all: Vec<_> = s.classes().collect();
        assert_eq!(all, vec![ClassId::Generic(FieldElement::ONE, SubfieldElement::ZERO)]);
        let c = s.complement();
        assert_eq!(c.cardinality(), 60);
        assert_eq!(c.complement(), s);
    }

    #[test]
    fn json_roundtrip() {
        let grp = SuzukiGroup::from_params(3, 2, 1).unwrap();
        let s = CentralSet::from_classes(&grp, grp.classes().step_by(3)).unwrap();
        let back = CentralSet::from_json(&grp, &s.to_json(&grp)).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.cardinality(), s.cardinality());
    }
}
