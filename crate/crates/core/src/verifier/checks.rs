//! `check_ds`, `check_pds`, `check_linking` and their group-ring sides.

use std::time::Instant;

use super::character;
use super::groupring::{convolve, convolve_ddinv, set_indices, FiniteGroup};
use super::params::{linking_from_ds, DsParams, LinkingParams, PdsParams};
use super::report::{
    Engine, EngineOutcome, Method, Params, VerifyOptions, VerifyReport, Witness, WitnessKind, Witnesses,
};
use crate::chars::CharTable;
use crate::error::{Error, Result};
use crate::group::{GroupElement, SuzukiGroup};
use crate::set::CentralSet;

/// Group-ring side of the difference set test on element indices.
pub fn groupring_ds<G: FiniteGroup>(g: &G, elems: &[usize], cap: usize) -> Result<EngineOutcome> {
    let c = convolve_ddinv(g, elems)?;
    let id = g.identity();
    let v = g.order() as u64;
    let k = elems.len() as u64;
    let lambda = c.coeffs[if id == 0 { 1 } else { 0 }];
    let mut w = Witnesses::new(cap);
    for (x, &val) in c.coeffs.iter().enumerate() {
        if x != id && val != lambda {
            w.push_with(|| Witness::new(WitnessKind::Element, g.label(x), val, lambda));
        }
    }
    if !w.is_empty() {
        return Ok(EngineOutcome::new(Engine::GroupRing, false, false, None, w));
    }
    let p = DsParams { v, k, lambda: lambda as u64, n: k - lambda as u64 };
    Ok(EngineOutcome::new(Engine::GroupRing, true, p.is_trivial(), Some(Params::Ds(p)), w))
}

/// Group-ring side of the partial difference set test, regularity included.
pub fn groupring_pds<G: FiniteGroup>(g: &G, elems: &[usize], cap: usize) -> Result<EngineOutcome> {
    let n = g.order();
    let id = g.identity();
    let mut inside = vec![false; n];
    for &x in elems {
        inside[x] = true;
    }
    let mut w = Witnesses::new(cap);
    if inside[id] {
        w.push(Witness::new(WitnessKind::Element, g.label(id), "in the set", "absent"));
    }
    for &x in elems {
        if !inside[g.inv(x)] {
            w.push_with(|| Witness::new(WitnessKind::Element, g.label(x), "inverse missing", "present"));
        }
    }
    if !w.is_empty() {
        return Ok(EngineOutcome::new(Engine::GroupRing, false, false, None, w));
    }
    let k = elems.len() as u64;
    if k == 0 || k + 1 == n as u64 {
        return Ok(EngineOutcome::new(Engine::GroupRing, true, true, None, w));
    }
    let c = convolve_ddinv(g, elems)?;
    let first_in = (0..n).find(|&x| inside[x]).expect("nonempty");
    let first_out = (0..n).find(|&x| x != id && !inside[x]).expect("not everything");
    let (lambda, mu) = (c.coeffs[first_in], c.coeffs[first_out]);
    for (x, &val) in c.coeffs.iter().enumerate() {
        if x == id {
            continue;
        }
        let want = if inside[x] { lambda } else { mu };
        if val != want {
            w.push_with(|| Witness::new(WitnessKind::Element, g.label(x), val, want));
        }
    }
    if !w.is_empty() {
        return Ok(EngineOutcome::new(Engine::GroupRing, false, false, None, w));
    }
    let p = PdsParams::new(n as u64, k, lambda as u64, mu as u64);
    Ok(EngineOutcome::new(Engine::GroupRing, true, false, Some(Params::Pds(p.into())), w))
}

/// Difference set test on an arbitrary finite group (group-ring engine only).
pub fn check_ds_in<G: FiniteGroup>(g: &G, elems: &[usize], opts: &VerifyOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let e = groupring_ds(g, elems, opts.max_witnesses)?;
    Ok(VerifyReport::from_engines("ds", Method::GroupRing, vec![e], opts.max_witnesses, start))
}

/// Partial difference set test on an arbitrary finite group (group-ring engine only).
pub fn check_pds_in<G: FiniteGroup>(g: &G, elems: &[usize], opts: &VerifyOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let e = groupring_pds(g, elems, opts.max_witnesses)?;
    Ok(VerifyReport::from_engines("pds", Method::GroupRing, vec![e], opts.max_witnesses, start))
}

fn run(
    check: &str,
    group: &SuzukiGroup,
    set: &CentralSet,
    method: Method,
    opts: &VerifyOptions,
    gr: fn(&SuzukiGroup, &[usize], usize) -> Result<EngineOutcome>,
    ch: fn(&CharTable, &CentralSet, usize) -> Result<EngineOutcome>,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let cap = opts.max_witnesses;
    let mut engines = Vec::new();
    if method.uses(Engine::GroupRing) {
        engines.push(gr(group, &set_indices(group, set)?, cap)?);
    }
    if method.uses(Engine::Character) {
        let table = CharTable::new(group)?;
        engines.push(ch(&table, set, cap)?);
    }
    Ok(VerifyReport::from_engines(check, method, engines, cap, start))
}

pub fn check_ds(group: &SuzukiGroup, set: &CentralSet, method: Method, opts: &VerifyOptions) -> Result<VerifyReport> {
    run("ds", group, set, method, opts, groupring_ds::<SuzukiGroup>, character::ds_outcome)
}

pub fn check_pds(group: &SuzukiGroup, set: &CentralSet, method: Method, opts: &VerifyOptions) -> Result<VerifyReport> {
    run("pds", group, set, method, opts, groupring_pds::<SuzukiGroup>, character::pds_outcome)
}

/// The class set with exactly these elements, if they form a union of classes.
pub fn as_central(group: &SuzukiGroup, elems: &[GroupElement]) -> Result<Option<CentralSet>> {
    let mut sorted: Vec<u64> = elems.iter().map(|&g| group.element_index(g)).collect();
    sorted.sort_unstable();
    sorted.dedup();
    let set = CentralSet::from_classes(group, elems.iter().map(|&g| group.class_of(g)))?;
    Ok((set.cardinality() == sorted.len() as u64).then_some(set))
}

/// [`check_ds`] for an element list; the character method needs a union of classes.
pub fn check_ds_elements(
    group: &SuzukiGroup,
    elems: &[GroupElement],
    method: Method,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    match as_central(group, elems)? {
        Some(set) => check_ds(group, &set, method, opts),
        None if method == Method::GroupRing => {
            let idx: Vec<usize> = elems.iter().map(|&g| group.element_index(g) as usize).collect();
            check_ds_in(group, &idx, opts)
        }
        None => Err(Error::NonCentralSetForCharacterMethod),
    }
}

/// Group-ring side of one ordered pair; returns the observed `(mu, eta)`.
fn groupring_pair(
    group: &SuzukiGroup,
    x: &[usize],
    y: &[usize],
    third: &[usize],
    w: &mut Witnesses,
    pair: (usize, usize),
) -> Result<Option<(i64, i64)>> {
    let n = group.order() as usize;
    let c = convolve(group, x, y)?;
    let mut on = vec![false; n];
    for &t in third {
        on[t] = true;
    }
    let mu = third.first().map(|&t| c.coeffs[t]);
    let eta = (0..n).find(|&t| !on[t]).map(|t| c.coeffs[t]);
    let before = w.total;
    for (t, &val) in c.coeffs.iter().enumerate() {
        let want = if on[t] { mu } else { eta }.expect("side is nonempty");
        if val != want {
            w.push_with(|| Witness::new(WitnessKind::Element, FiniteGroup::label(group, t), val, want).in_pair(pair.0, pair.1));
        }
    }
    Ok((w.total == before).then(|| (mu.unwrap_or(0), eta.unwrap_or(0))))
}

/// Checks `D_i D_j^(-1) = (mu - eta) D_(i,j) + eta G` for every ordered pair `i != j`,
/// with one `(mu, eta)` shared by all pairs and matching `eta = k (k +- sqrt(n)) / v`.
pub fn check_linking(
    group: &SuzukiGroup,
    members: &[CentralSet],
    third: &dyn Fn(usize, usize) -> Result<CentralSet>,
    method: Method,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let cap = opts.max_witnesses;
    if members.len() < 2 {
        let mut r = VerifyReport::from_engines("linking", method, Vec::new(), cap, start);
        r.passed = true;
        r.degenerate = true;
        r.notes.push(format!("family of size {}: pair conditions are vacuous", members.len()));
        return Ok(r);
    }
    let k = members[0].cardinality();
    if let Some(bad) = members.iter().position(|m| m.cardinality() != k) {
        return Err(Error::ParameterMismatch(format!(
            "member 0 has {k} elements, member {bad} has {}",
            members[bad].cardinality()
        )));
    }
    let l = members.len();
    let pairs: Vec<(usize, usize)> = (0..l).flat_map(|i| (0..l).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let thirds: Vec<CentralSet> = pairs.iter().map(|&(i, j)| third(i, j)).collect::<Result<_>>()?;

    let mut engines = Vec::new();
    let mut run_engine = |engine: Engine,
                          pair_fn: &mut dyn FnMut(usize, &mut Witnesses) -> Result<Option<(i64, i64)>>|
     -> Result<()> {
        let mut w = Witnesses::new(cap);
        let mut shared: Option<(i64, i64)> = None;
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            if let Some(obs) = pair_fn(idx, &mut w)? {
                match shared {
                    None => shared = Some(obs),
                    Some(s) if s != obs => w.push(
                        Witness::new(WitnessKind::Pair, "(mu, eta)", format!("{obs:?}"), format!("{s:?}")).in_pair(i, j),
                    ),
                    _ => {}
                }
            }
        }
        let holds = w.is_empty();
        let params = shared.filter(|_| holds).map(|(mu, eta)| Params::Linking(LinkingParams { mu, eta, l }));
        engines.push(EngineOutcome::new(engine, holds, false, params, w));
        Ok(())
    };
    if method.uses(Engine::GroupRing) {
        let idx: Vec<Vec<usize>> = members.iter().map(|m| set_indices(group, m)).collect::<Result<_>>()?;
        let tidx: Vec<Vec<usize>> = thirds.iter().map(|m| set_indices(group, m)).collect::<Result<_>>()?;
        run_engine(Engine::GroupRing, &mut |p, w| {
            let (i, j) = pairs[p];
            groupring_pair(group, &idx[i], &idx[j], &tidx[p], w, (i, j))
        })?;
    }
    if method.uses(Engine::Character) {
        let table = CharTable::new(group)?;
        run_engine(Engine::Character, &mut |p, w| {
            let (i, j) = pairs[p];
            character::linking_pair(&table, &members[i], &members[j], &thirds[p], w, (i, j))
        })?;
    }
    let mut r = VerifyReport::from_engines("linking", method, engines, cap, start);

    // every member is a difference set with the shared parameters
    let mut ds = None;
    for (i, m) in members.iter().enumerate() {
        let sub = check_ds(group, m, method, opts)?;
        match (&sub.params, sub.passed) {
            (Some(Params::Ds(p)), true) => ds = ds.or(Some(*p)),
            _ => r.fail(Witness::new(WitnessKind::Pair, format!("member {i}"), "not a difference set", "a difference set")),
        }
    }
    if let (Some(p), Some(Params::Linking(lp))) = (ds, r.params.clone()) {
        let matched = [1i64, -1].into_iter().find(|&s| linking_from_ds(&p, s, l) == Some(lp));
        match matched {
            Some(s) => r.notes.push(format!(
                "eta = k(k {} sqrt n)/v = {} for (v,k,lambda,n) = ({},{},{},{})",
                if s > 0 { "+" } else { "-" },
                lp.eta,
                p.v,
                p.k,
                p.lambda,
                p.n
            )),
            None => r.fail(Witness::new(WitnessKind::Pair, "(mu, eta)", format!("({}, {})", lp.mu, lp.eta), "k(k +- sqrt n)/v")),
        }
    }
    r.stamp(start);
    Ok(r)
}
