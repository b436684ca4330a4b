//! Exhaustive searches for central difference sets and central partial
//! difference sets with given parameters.
//!
//! The pruned search walks blocks of classes (one block per central class or
//! inverse pair, one per generic coset `a` or pair `{a, -a}`) and drops a partial
//! assignment only when a necessary condition fails: the cardinality can no
//! longer reach `k`, or some `omega_chi` can no longer reach its required value
//! even if every remaining block moved it as far as possible. The magnitude test
//! runs in floating point with a margin, so it never rejects a solution; every
//! leaf is then verified exactly.

use rayon::prelude::*;
use serde::Serialize;

use super::character::{ds_outcome, pds_outcome};
use super::checks::{groupring_ds, groupring_pds};
use super::params::{DsParams, PdsParams};
use super::report::Params;
use crate::chars::{CharTable, Family};
use crate::error::{Error, Result};
use crate::group::{ClassId, SuzukiGroup};
use crate::set::CentralSet;

/// Class-count limit for the plain enumeration.
pub const MAX_BRUTE_CLASSES: usize = 40;
/// Class-count limit for the pruned search.
pub const MAX_PRUNED_CLASSES: usize = 64;

const MARGIN: f64 = 1e-6;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Every subset of classes, checked by convolution.
    Brute,
    /// Block-wise search with cardinality and character bounds.
    Pruned,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub mode: SearchMode,
    #[serde(skip)]
    pub sets: Vec<CentralSet>,
    /// Assignments that reached exact verification.
    pub leaves_checked: u64,
    pub notes: Vec<String>,
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Kind {
    Ds(DsParams),
    Pds(PdsParams),
}

impl Kind {
    fn v(self) -> u64 {
        match self {
            Kind::Ds(p) => p.v,
            Kind::Pds(p) => p.v,
        }
    }

    fn k(self) -> u64 {
        match self {
            Kind::Ds(p) => p.k,
            Kind::Pds(p) => p.k,
        }
    }

    fn matches(self, got: &Option<Params>) -> bool {
        match (self, got) {
            (Kind::Ds(p), Some(Params::Ds(q))) => p == *q,
            (Kind::Pds(p), Some(Params::Pds(q))) => p == q.params,
            _ => false,
        }
    }
}

fn canonical_order(group: &SuzukiGroup, sets: &mut [CentralSet]) {
    sets.sort_by_cached_key(|s| s.classes().map(|c| group.class_index(c)).collect::<Vec<_>>());
}

fn precheck(group: &SuzukiGroup, kind: Kind) -> Result<Option<String>> {
    if kind.v() != group.order() {
        return Err(Error::PreconditionViolated(format!("v = {} but |G| = {}", kind.v(), group.order())));
    }
    Ok(match kind {
        Kind::Ds(p) => DsParams::with_n(p.v, p.k, p.lambda, p.n).err().map(|e| e.to_string()),
        Kind::Pds(p) => (!p.counting_identity_holds())
            .then(|| format!("k(k-1-lambda) = mu(v-1-k) fails for ({},{},{},{})", p.v, p.k, p.lambda, p.mu)),
    })
}

pub fn search_central_ds(group: &SuzukiGroup, params: DsParams, mode: SearchMode) -> Result<SearchOutcome> {
    search(group, Kind::Ds(params), mode)
}

pub fn search_central_pds(group: &SuzukiGroup, params: PdsParams, mode: SearchMode) -> Result<SearchOutcome> {
    search(group, Kind::Pds(params), mode)
}

fn search(group: &SuzukiGroup, kind: Kind, mode: SearchMode) -> Result<SearchOutcome> {
    let classes = group.num_classes();
    let limit = match mode {
        SearchMode::Brute => MAX_BRUTE_CLASSES,
        SearchMode::Pruned => MAX_PRUNED_CLASSES,
    };
    if classes > limit {
        return Err(Error::SearchSpaceTooLarge(classes));
    }
    if let Some(why) = precheck(group, kind)? {
        return Ok(SearchOutcome { mode, sets: Vec::new(), leaves_checked: 0, notes: vec![format!("parameters infeasible: {why}")] });
    }
    let mut out = match mode {
        SearchMode::Brute => brute(group, kind)?,
        SearchMode::Pruned => pruned(group, kind)?,
    };
    canonical_order(group, &mut out.sets);
    Ok(out)
}

fn brute(group: &SuzukiGroup, kind: Kind) -> Result<SearchOutcome> {
    let c = group.num_classes();
    let members: Vec<Vec<usize>> = group
        .classes()
        .map(|cl| group.class_elements(cl).into_iter().map(|g| group.element_index(g) as usize).collect())
        .collect();
    let sizes: Vec<u64> = members.iter().map(|m| m.len() as u64).collect();
    let k = kind.k();
    let found: Vec<(u64, Option<u64>)> = (0..1u64 << c)
        .into_par_iter()
        .filter(|&mask| (0..c).filter(|&i| mask >> i & 1 == 1).map(|i| sizes[i]).sum::<u64>() == k)
        .map(|mask| {
            let elems: Vec<usize> = (0..c).filter(|&i| mask >> i & 1 == 1).flat_map(|i| members[i].iter().copied()).collect();
            let got = match kind {
                Kind::Ds(_) => groupring_ds(group, &elems, 0),
                Kind::Pds(_) => groupring_pds(group, &elems, 0),
            }?;
            Ok((mask, (got.holds && kind.matches(&got.params)).then_some(mask)))
        })
        .collect::<Result<_>>()?;
    let leaves = found.len() as u64;
    let sets = found
        .into_iter()
        .filter_map(|(_, hit)| hit)
        .map(|mask| CentralSet::from_classes(group, (0..c).filter(|&i| mask >> i & 1 == 1).map(|i| group.class_at(i))))
        .collect::<Result<_>>()?;
    Ok(SearchOutcome { mode: SearchMode::Brute, sets, leaves_checked: leaves, notes: Vec::new() })
}

struct Choice {
    classes: Vec<ClassId>,
    size: u64,
    contrib: Vec<(f64, f64)>,
}

/// Target values of `omega_chi` for nontrivial `chi`.
enum Target {
    Modulus(f64),
    Values(Vec<f64>),
    Free,
}

impl Target {
    /// Whether a value within `r` of `(x, y)` can hit the target.
    fn reachable(&self, (x, y): (f64, f64), r: f64) -> bool {
        match self {
            Target::Modulus(s) => {
                let m = x.hypot(y);
                m - r <= s + MARGIN && m + r >= s - MARGIN
            }
            Target::Values(vals) => vals.iter().any(|&t| (x - t).hypot(y) <= r + MARGIN),
            Target::Free => true,
        }
    }
}

fn blocks(group: &SuzukiGroup, kind: Kind) -> Vec<Vec<Vec<ClassId>>> {
    let f = group.field();
    let regular = matches!(kind, Kind::Pds(_));
    let mut out = Vec::new();
    let mut seen = vec![false; f.order() as usize];
    for a in f.nonzero_elements() {
        if seen[a.index() as usize] {
            continue;
        }
        let na = f.neg(a);
        seen[a.index() as usize] = true;
        let partner = regular.then_some(na);
        if let Some(b) = partner {
            seen[b.index() as usize] = true;
        }
        let mut choices = Vec::new();
        for mask in 0u64..1 << f.sub_order() {
            let mut cls: Vec<ClassId> = f
                .sub_elements()
                .filter(|x| mask >> x.index() & 1 == 1)
                .map(|x| ClassId::Generic(a, x))
                .collect();
            if partner.is_some() {
                let inv: Vec<ClassId> = cls.iter().map(|&c| group.inverse_class(c)).collect();
                if na == a {
                    let mut x = inv.clone();
                    x.sort();
                    if x != cls {
                        continue;
                    }
                } else {
                    cls.extend(inv);
                }
            }
            choices.push(cls);
        }
        out.push(choices);
    }
    let mut seen = vec![false; f.order() as usize];
    for b in f.elements() {
        if seen[b.index() as usize] {
            continue;
        }
        seen[b.index() as usize] = true;
        if regular {
            if b.is_zero() {
                continue;
            }
            let nb = f.neg(b);
            seen[nb.index() as usize] = true;
            let mut both = vec![ClassId::Central(b)];
            if nb != b {
                both.push(ClassId::Central(nb));
            }
            out.push(vec![Vec::new(), both]);
        } else {
            out.push(vec![Vec::new(), vec![ClassId::Central(b)]]);
        }
    }
    out
}

fn pruned(group: &SuzukiGroup, kind: Kind) -> Result<SearchOutcome> {
    let table = CharTable::new(group)?;
    let complete = table.family() != Family::FEven;
    let chars: Vec<_> = table.iter().filter(|c| !c.is_trivial()).collect();
    let mut notes = Vec::new();
    if !complete {
        notes.push("partial character table: bounds use the listed characters, leaves use convolution".into());
    }
    let target = match kind {
        Kind::Ds(p) => Target::Modulus((p.n as f64).sqrt()),
        Kind::Pds(p) => match p.integer_eigenvalues() {
            Some((a, b)) => Target::Values(vec![a as f64, b as f64]),
            None => Target::Free,
        },
    };
    let omega_class = |c: ClassId| -> Result<Vec<(f64, f64)>> {
        chars.iter().map(|&chi| Ok(table.omega_class(chi, c)?.to_complex())).collect()
    };
    let blocks: Vec<Vec<Choice>> = blocks(group, kind)
        .into_iter()
        .map(|choices| {
            choices
                .into_iter()
                .map(|classes| {
                    let mut contrib = vec![(0.0, 0.0); chars.len()];
                    for &c in &classes {
                        for (acc, (x, y)) in contrib.iter_mut().zip(omega_class(c)?) {
                            acc.0 += x;
                            acc.1 += y;
                        }
                    }
                    let size = classes.iter().map(|&c| group.class_size(c)).sum();
                    Ok(Choice { classes, size, contrib })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    // suffix bounds from block d on
    let nb = blocks.len();
    let mut reach = vec![vec![0.0f64; chars.len()]; nb + 1];
    let mut lo = vec![0u64; nb + 1];
    let mut hi = vec![0u64; nb + 1];
    for d in (0..nb).rev() {
        for x in 0..chars.len() {
            let m = blocks[d].iter().map(|c| c.contrib[x].0.hypot(c.contrib[x].1)).fold(0.0, f64::max);
            reach[d][x] = reach[d + 1][x] + m;
        }
        lo[d] = lo[d + 1] + blocks[d].iter().map(|c| c.size).min().unwrap_or(0);
        hi[d] = hi[d + 1] + blocks[d].iter().map(|c| c.size).max().unwrap_or(0);
    }
    let ctx = Walk { blocks: &blocks, reach: &reach, lo: &lo, hi: &hi, k: kind.k(), target: &target };

    let first = &blocks[0];
    let branches: Vec<(Vec<Vec<ClassId>>, u64)> = (0..first.len())
        .into_par_iter()
        .map(|i| {
            let mut leaves = Vec::new();
            let c = &first[i];
            if c.size <= ctx.k {
                let mut picked = vec![i];
                ctx.walk(1, c.size, c.contrib.clone(), &mut picked, &mut leaves);
            }
            let n = leaves.len() as u64;
            let sets = leaves
                .into_iter()
                .map(|pick: Vec<usize>| pick.iter().enumerate().flat_map(|(d, &i)| blocks[d][i].classes.clone()).collect())
                .collect();
            (sets, n)
        })
        .collect();

    let mut leaves_checked = 0;
    let mut candidates = Vec::new();
    for (sets, n) in branches {
        leaves_checked += n;
        candidates.extend(sets);
    }
    let verified: Vec<Option<CentralSet>> = candidates
        .into_par_iter()
        .map(|cls: Vec<ClassId>| {
            let set = CentralSet::from_classes(group, cls)?;
            let got = if complete {
                match kind {
                    Kind::Ds(_) => ds_outcome(&table, &set, 0)?,
                    Kind::Pds(_) => pds_outcome(&table, &set, 0)?,
                }
            } else {
                let idx = super::groupring::set_indices(group, &set)?;
                match kind {
                    Kind::Ds(_) => groupring_ds(group, &idx, 0)?,
                    Kind::Pds(_) => groupring_pds(group, &idx, 0)?,
                }
            };
            Ok((got.holds && kind.matches(&got.params)).then_some(set))
        })
        .collect::<Result<_>>()?;
    let sets = verified.into_iter().flatten().collect();
    Ok(SearchOutcome { mode: SearchMode::Pruned, sets, leaves_checked, notes })
}

struct Walk<'a> {
    blocks: &'a [Vec<Choice>],
    reach: &'a [Vec<f64>],
    lo: &'a [u64],
    hi: &'a [u64],
    k: u64,
    target: &'a Target,
}

impl Walk<'_> {
    fn walk(&self, d: usize, size: u64, acc: Vec<(f64, f64)>, picked: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if size + self.lo[d] > self.k || size + self.hi[d] < self.k {
            return;
        }
        if acc.iter().zip(&self.reach[d]).any(|(&p, &r)| !self.target.reachable(p, r)) {
            return;
        }
        if d == self.blocks.len() {
            out.push(picked.clone());
            return;
        }
        for (i, c) in self.blocks[d].iter().enumerate() {
            let next: Vec<(f64, f64)> = acc.iter().zip(&c.contrib).map(|(a, b)| (a.0 + b.0, a.1 + b.1)).collect();
            picked.push(i);
            self.walk(d + 1, size + c.size, next, picked, out);
            picked.pop();
        }
    }
}
