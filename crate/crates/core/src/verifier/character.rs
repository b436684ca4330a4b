//! The character criterion: a central `D` is determined by the scalars
//! `omega_chi(D)` it induces on the irreducible representations.

use rayon::prelude::*;

use super::params::{DsParams, PdsParams};
use super::report::{Engine, EngineOutcome, Params, Witness, WitnessKind, Witnesses};
use crate::chars::{CharId, CharTable, Family};
use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::group::SuzukiGroup;
use crate::field::FieldElement;
use crate::set::CentralSet;

/// The criterion needs every irreducible character.
pub fn require_complete(table: &CharTable) -> Result<()> {
    if table.family() == Family::FEven {
        return Err(Error::UnsupportedFamily(format!(
            "the table for f = {} even lists only part of the characters",
            table.group().field().f()
        )));
    }
    if table.options().squares_only_t {
        return Err(Error::UnsupportedFamily("a squares-only table is a partial list".into()));
    }
    Ok(())
}

/// `omega_chi(S)` for every nontrivial listed character, in table order.
pub fn nontrivial_omegas(table: &CharTable, set: &CentralSet) -> Result<Vec<(CharId, CycInt)>> {
    (0..table.len())
        .into_par_iter()
        .map(|i| table.char_at(i))
        .filter(|chi| !chi.is_trivial())
        .map(|chi| Ok((chi, table.omega(chi, set)?)))
        .collect()
}

pub fn ds_outcome(table: &CharTable, set: &CentralSet, cap: usize) -> Result<EngineOutcome> {
    require_complete(table)?;
    let v = table.group().order();
    let k = set.cardinality();
    let mut w = Witnesses::new(cap);
    let omegas = nontrivial_omegas(table, set)?;
    let norms: Vec<i64> = omegas.iter().map(|(_, x)| x.norm_sq()).collect::<Result<_>>()?;
    let n = norms[0];
    for ((chi, x), &nn) in omegas.iter().zip(&norms) {
        if nn != n {
            w.push_with(|| Witness::new(WitnessKind::Character, table.describe(*chi), format!("|{x}|^2 = {nn}"), n));
        }
    }
    if !w.is_empty() {
        return Ok(EngineOutcome::new(Engine::Character, false, false, None, w));
    }
    // trivial character: k^2 = lambda v + n
    let num = k as i128 * k as i128 - n as i128;
    if num < 0 || num % v as i128 != 0 || num / v as i128 > k as i128 {
        w.push(Witness::new(WitnessKind::Character, "trivial", k * k, format!("lambda * {v} + {n}")));
        return Ok(EngineOutcome::new(Engine::Character, false, false, None, w));
    }
    let p = DsParams { v, k, lambda: (num / v as i128) as u64, n: n as u64 };
    Ok(EngineOutcome::new(Engine::Character, true, p.is_trivial(), Some(Params::Ds(p)), w))
}

/// `1 not in S` and `S^(-1) = S`, class by class.
pub fn regular_by_classes(group: &SuzukiGroup, set: &CentralSet, w: &mut Witnesses) -> bool {
    let mut ok = true;
    if set.contains_central(FieldElement::ZERO) {
        ok = false;
        w.push(Witness::new(WitnessKind::Class, "identity", "in the set", "absent"));
    }
    for c in set.classes() {
        let inv = group.inverse_class(c);
        if !set.contains(inv) {
            ok = false;
            w.push_with(|| {
                let show = |c| group.class_to_json(c).to_string();
                Witness::new(WitnessKind::Class, show(c), format!("inverse {} missing", show(inv)), "present")
            });
        }
    }
    ok
}

pub fn pds_outcome(table: &CharTable, set: &CentralSet, cap: usize) -> Result<EngineOutcome> {
    require_complete(table)?;
    let group = table.group();
    let v = group.order();
    let k = set.cardinality();
    let mut w = Witnesses::new(cap);
    if !regular_by_classes(group, set, &mut w) {
        return Ok(EngineOutcome::new(Engine::Character, false, false, None, w));
    }
    if k == 0 || k + 1 == v {
        return Ok(EngineOutcome::new(Engine::Character, true, true, None, w));
    }
    let omegas = nontrivial_omegas(table, set)?;
    let mut distinct: Vec<CycInt> = Vec::new();
    for (chi, x) in &omegas {
        if distinct.contains(x) {
            continue;
        }
        if distinct.len() == 2 {
            let expected = format!("{} or {}", distinct[0], distinct[1]);
            w.push_with(|| Witness::new(WitnessKind::Character, table.describe(*chi), x, expected));
            continue;
        }
        distinct.push(x.clone());
    }
    if !w.is_empty() {
        return Ok(EngineOutcome::new(Engine::Character, false, false, None, w));
    }
    if distinct.len() < 2 {
        w.push(Witness::new(WitnessKind::Character, "all nontrivial", &distinct[0], "two eigenvalues"));
        return Ok(EngineOutcome::new(Engine::Character, false, false, None, w));
    }
    // omega^2 = alpha omega + beta with alpha = r1 + r2, beta = -r1 r2
    let (r1, r2) = (&distinct[0], &distinct[1]);
    let alpha = r1.try_add(r2)?.as_integer();
    let beta = r1.try_mul(r2)?.as_integer().map(|x| -x);
    let (Ok(alpha), Ok(beta)) = (alpha, beta) else {
        w.push(Witness::new(WitnessKind::Character, "eigenvalues", format!("{r1}, {r2}"), "roots of an integer quadratic"));
        return Ok(EngineOutcome::new(Engine::Character, false, false, None, w));
    };
    let (vi, ki) = (v as i128, k as i128);
    let mu = ki - beta as i128;
    let lambda = alpha as i128 + mu;
    if mu < 0 || lambda < 0 || ki * ki != mu * vi + alpha as i128 * ki + beta as i128 {
        w.push(Witness::new(WitnessKind::Character, "trivial", ki * ki, format!("mu v + alpha k + beta with mu = {mu}")));
        return Ok(EngineOutcome::new(Engine::Character, false, false, None, w));
    }
    let p = PdsParams::new(v, k, lambda as u64, mu as u64);
    Ok(EngineOutcome::new(Engine::Character, true, false, Some(Params::Pds(p.into())), w))
}

/// Character-side test of `D_i D_j^(-1) = (mu - eta) D_(i,j) + eta G`; returns `(mu, eta)`.
pub fn linking_pair(
    table: &CharTable,
    x: &CentralSet,
    y: &CentralSet,
    third: &CentralSet,
    w: &mut Witnesses,
    pair: (usize, usize),
) -> Result<Option<(i64, i64)>> {
    let ox = nontrivial_omegas(table, x)?;
    let oy = nontrivial_omegas(table, y)?;
    let ot = nontrivial_omegas(table, third)?;
    let lhs: Vec<CycInt> = ox.iter().zip(&oy).map(|((_, a), (_, b))| a.try_mul(&b.conj())).collect::<Result<_>>()?;
    // c = mu - eta from the first character where the third set is visible
    let mut c = None;
    for (l, (_, t)) in lhs.iter().zip(&ot) {
        if t.is_zero() {
            continue;
        }
        let num = l.try_mul(&t.conj())?.as_integer();
        let den = t.norm_sq()?;
        match num {
            Ok(num) if num % den == 0 => c = Some(num / den),
            _ => {}
        }
        break;
    }
    let Some(c) = c else {
        w.push(Witness::new(WitnessKind::Pair, "mu - eta", "undetermined", "an integer").in_pair(pair.0, pair.1));
        return Ok(None);
    };
    let before = w.total;
    for (l, (chi, t)) in lhs.iter().zip(&ot) {
        let rhs = t.try_scale(c)?;
        if *l != rhs {
            w.push_with(|| Witness::new(WitnessKind::Character, table.describe(*chi), l, &rhs).in_pair(pair.0, pair.1));
        }
    }
    let v = table.group().order() as i128;
    let num = x.cardinality() as i128 * y.cardinality() as i128 - c as i128 * third.cardinality() as i128;
    if num % v != 0 {
        w.push(Witness::new(WitnessKind::Character, "trivial", num, format!("a multiple of {v}")).in_pair(pair.0, pair.1));
        return Ok(None);
    }
    let eta = (num / v) as i64;
    Ok((w.total == before).then_some((c + eta, eta)))
}
