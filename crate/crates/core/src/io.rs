//! Set files: `{"field": spec, "classes": [...]}`, or `"elements"` for sets that need
//! not be central, plus the construction that produced the set.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::{linking_third, LinkingFamily, LinkingMember, PdsKind, Side, VariantSpec};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement, FieldSpec, SubfieldElement};
use crate::group::{GroupElement, SuzukiGroup};
use crate::set::CentralSet;

/// Field elements are coefficient lists in ascending degree.
pub type Coeffs = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    DsTz {
        t: Coeffs,
        z: Coeffs,
        variants: VariantSpec,
    },
    DsZ {
        z: Coeffs,
        variants: VariantSpec,
    },
    Pds {
        shape: PdsKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<Coeffs>,
        z: Coeffs,
    },
    Dillon,
    ExampleMf {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<Coeffs>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        side: Option<Side>,
        j0: Vec<Coeffs>,
        j1: Vec<Coeffs>,
    },
    Search {
        params: Vec<u64>,
        index: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetFile {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Value>>,
    /// `[a, b]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<[Coeffs; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetContents {
    Central(CentralSet),
    Elements(Vec<GroupElement>),
}

impl SetFile {
    pub fn central(group: &SuzukiGroup, set: &CentralSet, construction: Option<Construction>) -> Self {
        Self {
            field: group.field().spec().to_string(),
            classes: Some(set.classes().map(|c| group.class_to_json(c)).collect()),
            elements: None,
            construction,
        }
    }

    pub fn from_elements(group: &SuzukiGroup, elems: &[GroupElement], construction: Option<Construction>) -> Self {
        let f = group.field();
        Self {
            field: f.spec().to_string(),
            classes: None,
            elements: Some(elems.iter().map(|g| [f.coeffs(g.a), f.coeffs(g.b)]).collect()),
            construction,
        }
    }

    pub fn group(&self) -> Result<SuzukiGroup> {
        let spec: FieldSpec = self.field.parse()?;
        SuzukiGroup::new(FieldCtx::from_spec(&spec)?)
    }

    pub fn contents(&self, group: &SuzukiGroup) -> Result<SetContents> {
        match (&self.classes, &self.elements) {
            (Some(cls), None) => {
                let ids = cls.iter().map(|c| group.class_from_json(c)).collect::<Result<Vec<_>>>()?;
                Ok(SetContents::Central(CentralSet::from_classes(group, ids)?))
            }
            (None, Some(els)) => {
                let f = group.field();
                let elems = els
                    .iter()
                    .map(|[a, b]| Ok(GroupElement::new(f.from_coeffs(a)?, f.from_coeffs(b)?)))
                    .collect::<Result<_>>()?;
                Ok(SetContents::Elements(elems))
            }
            _ => Err(Error::Parse("a set file needs exactly one of `classes` and `elements`".into())),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))?;
        fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

fn sub(ctx: &FieldCtx, c: &[u32]) -> Result<SubfieldElement> {
    ctx.sub_from_coeffs(c)
}

/// Rebuilds a linking family from member sets and their `ds-tz` / `ds-z` metadata, so
/// that third sets can be produced by the sign rules.
pub fn linking_family(group: &SuzukiGroup, members: &[(CentralSet, Option<Construction>)]) -> Result<LinkingFamily> {
    let ctx = group.field();
    let mut t: Option<Option<FieldElement>> = None;
    let mut out = Vec::with_capacity(members.len());
    for (i, (set, cons)) in members.iter().enumerate() {
        let (mt, z, spec) = match cons {
            Some(Construction::DsTz { t, z, variants }) => (Some(ctx.from_coeffs(t)?), sub(ctx, z)?, variants.clone()),
            Some(Construction::DsZ { z, variants }) => (None, sub(ctx, z)?, variants.clone()),
            _ => {
                return Err(Error::PreconditionViolated(format!(
                    "member {i} lacks ds-tz or ds-z construction data needed for the third set"
                )))
            }
        };
        match t {
            None => t = Some(mt),
            Some(prev) if prev != mt => {
                return Err(Error::ParameterMismatch(format!("member {i} uses a different t")));
            }
            _ => {}
        }
        out.push(LinkingMember { z, spec, set: set.clone() });
    }
    if out.len() >= 2 {
        // fail early on unusable metadata
        linking_third(ctx, out[0].z, &out[0].spec, out[1].z, &out[1].spec)?;
    }
    Ok(LinkingFamily { t: t.flatten(), members: out })
}
