//! Engine cross-validation on random central sets, and sampled checks for
//! groups too large for convolution.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::character::{ds_outcome, pds_outcome};
use super::checks::{groupring_ds, groupring_pds};
use super::groupring::set_indices;
use super::report::{Method, VerifyReport, Witness, WitnessKind, Witnesses};
use crate::chars::CharTable;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::group::{ClassId, SuzukiGroup};
use crate::set::{mask_elements, CentralSet};

/// Largest group `cross_validate` accepts.
pub const MAX_CROSS_ORDER: u64 = 4096;

#[derive(Clone, Debug, Default, Serialize)]
pub struct CrossValidation {
    pub samples: usize,
    pub agreed: usize,
    /// Sets both engines call difference sets.
    pub ds_holds: usize,
    /// Sets both engines call partial difference sets.
    pub pds_holds: usize,
    pub disagreements: Vec<Witness>,
}

impl CrossValidation {
    pub fn all_agree(&self) -> bool {
        self.agreed == self.samples
    }

    fn record(&mut self, group: &SuzukiGroup, table: &CharTable, set: &CentralSet) -> Result<()> {
        let idx = set_indices(group, set)?;
        let ds = (groupring_ds(group, &idx, 0)?, ds_outcome(table, set, 0)?);
        let pds = (groupring_pds(group, &idx, 0)?, pds_outcome(table, set, 0)?);
        self.samples += 1;
        let ds_ok = ds.0.verdict() == ds.1.verdict();
        let pds_ok = pds.0.verdict() == pds.1.verdict();
        if ds_ok && pds_ok {
            self.agreed += 1;
            self.ds_holds += ds.0.holds as usize;
            self.pds_holds += pds.0.holds as usize;
        } else {
            let which = if ds_ok { &pds } else { &ds };
            self.disagreements.push(Witness::new(
                WitnessKind::Engine,
                set.to_json(group).to_string(),
                format!("character {:?}", which.1.verdict()),
                format!("groupring {:?}", which.0.verdict()),
            ));
        }
        Ok(())
    }

    pub fn to_report(&self, start: Instant) -> VerifyReport {
        let mut r = VerifyReport::from_engines("cross-validate", Method::Both, Vec::new(), 0, start);
        r.passed = self.all_agree();
        r.witness_total = self.disagreements.len() as u64;
        r.witnesses = self.disagreements.iter().take(super::report::WITNESS_CAP).cloned().collect();
        r.notes.push(format!(
            "{}/{} agree; {} difference sets, {} partial difference sets",
            self.agreed, self.samples, self.ds_holds, self.pds_holds
        ));
        r
    }
}

/// A random central set; odd-numbered draws are made regular so the PDS side
/// sees inverse-closed inputs too.
fn random_set(group: &SuzukiGroup, rng: &mut ChaCha8Rng, regular: bool) -> Result<CentralSet> {
    let density: f64 = rng.gen_range(0.05..0.95);
    let mut set = CentralSet::from_classes(group, group.classes().filter(|_| rng.gen_bool(density)))?;
    if regular {
        set.remove_central(FieldElement::ZERO);
        let classes: Vec<ClassId> = set.classes().collect();
        for c in classes {
            set.insert(group.inverse_class(c));
        }
    }
    Ok(set)
}

/// Runs both engines, for DS and PDS, on `extra` followed by `samples` seeded random
/// central sets, and compares their verdicts.
pub fn cross_validate(group: &SuzukiGroup, samples: usize, seed: u64, extra: &[CentralSet]) -> Result<CrossValidation> {
    if group.order() > MAX_CROSS_ORDER {
        return Err(Error::TooLarge(format!("cross-validation is limited to |G| <= {MAX_CROSS_ORDER}")));
    }
    let table = CharTable::new(group)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets: Vec<CentralSet> = extra.to_vec();
    for i in 0..samples {
        sets.push(random_set(group, &mut rng, i % 2 == 1)?);
    }
    let parts: Vec<CrossValidation> = sets
        .par_iter()
        .map(|s| {
            let mut cv = CrossValidation::default();
            cv.record(group, &table, s)?;
            Ok(cv)
        })
        .collect::<Result<_>>()?;
    Ok(merge(parts))
}

/// Every central subset; needs at most 20 classes.
pub fn cross_validate_exhaustive(group: &SuzukiGroup) -> Result<CrossValidation> {
    let c = group.num_classes();
    if c > 20 {
        return Err(Error::SearchSpaceTooLarge(c));
    }
    let table = CharTable::new(group)?;
    let parts: Vec<CrossValidation> = (0..1u64 << c)
        .into_par_iter()
        .map(|mask| {
            let set = CentralSet::from_classes(group, (0..c).filter(|&i| mask >> i & 1 == 1).map(|i| group.class_at(i)))?;
            let mut cv = CrossValidation::default();
            cv.record(group, &table, &set)?;
            Ok(cv)
        })
        .collect::<Result<_>>()?;
    Ok(merge(parts))
}

fn merge(parts: Vec<CrossValidation>) -> CrossValidation {
    let mut out = CrossValidation::default();
    for p in parts {
        out.samples += p.samples;
        out.agreed += p.agreed;
        out.ds_holds += p.ds_holds;
        out.pds_holds += p.pds_holds;
        out.disagreements.extend(p.disagreements);
    }
    out
}

/// Draws `sample_size` distinct nontrivial characters from `seed` and checks that
/// `omega_chi(S)` is a rational integer in `expected`.
pub fn sampled_char_check(
    table: &CharTable,
    set: &CentralSet,
    expected: &[i64],
    sample_size: usize,
    seed: u64,
    cap: usize,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let len = table.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = usize::try_from(len - 1).map_err(|_| Error::TooLarge(format!("{len} characters")))?;
    let picks: Vec<u64> = sample(&mut rng, pool, sample_size.min(pool)).into_iter().map(|i| i as u64 + 1).collect();
    let values: Vec<(u64, Result<i64>)> = picks
        .par_iter()
        .map(|&i| {
            let chi = table.char_at(i);
            debug_assert!(!chi.is_trivial());
            (i, table.omega(chi, set).and_then(|x| x.as_integer()))
        })
        .collect();
    let mut w = Witnesses::new(cap);
    let mut seen: BTreeMap<i64, usize> = BTreeMap::new();
    for (i, v) in values {
        match v {
            Ok(x) if expected.contains(&x) => *seen.entry(x).or_default() += 1,
            Ok(x) => w.push(Witness::new(WitnessKind::Character, table.describe(table.char_at(i)), x, format!("{expected:?}"))),
            Err(Error::NotRationalInteger) => {
                w.push(Witness::new(WitnessKind::Character, table.describe(table.char_at(i)), "irrational", format!("{expected:?}")))
            }
            Err(e) => return Err(e),
        }
    }
    let mut r = VerifyReport::from_engines("sampled-omega", Method::Character, Vec::new(), cap, start);
    r.passed = w.is_empty();
    r.witness_total = w.total;
    r.witnesses = w.kept;
    r.notes.push(format!("{} characters drawn with seed {seed}; trivial character excluded", picks.len()));
    r.notes.push(format!(
        "observed {}",
        seen.iter().map(|(v, c)| format!("{v} x{c}")).collect::<Vec<_>>().join(", ")
    ));
    r.stamp(start);
    Ok(r)
}

/// Checks `1 not in S` and, on `samples` seeded classes of `S`, that the inverse class is in `S`.
pub fn sampled_regularity(group: &SuzukiGroup, set: &CentralSet, samples: usize, seed: u64, cap: usize) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut w = Witnesses::new(cap);
    if set.contains_central(FieldElement::ZERO) {
        w.push(Witness::new(WitnessKind::Class, "identity", "in the set", "absent"));
    }
    let central: Vec<FieldElement> = set.central_elements().collect();
    let parts: Vec<(FieldElement, u128)> = set.generic_parts().collect();
    let mut prefix = Vec::with_capacity(parts.len());
    let mut total = central.len() as u64;
    for &(_, m) in &parts {
        prefix.push(total);
        total += m.count_ones() as u64;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<u64> = (0..samples).map(|_| rng.gen_range(0..total.max(1))).collect();
    let classes: Vec<ClassId> = draws
        .iter()
        .map(|&r| {
            if r < central.len() as u64 {
                return ClassId::Central(central[r as usize]);
            }
            let i = prefix.partition_point(|&s| s <= r) - 1;
            let (a, m) = parts[i];
            let x = mask_elements(m).nth((r - prefix[i]) as usize).expect("offset inside the mask");
            ClassId::Generic(a, x)
        })
        .collect();
    let bad: Vec<ClassId> = classes.par_iter().copied().filter(|&c| !set.contains(group.inverse_class(c))).collect();
    for c in bad {
        w.push(Witness::new(WitnessKind::Class, group.class_to_json(c).to_string(), "inverse missing", "present"));
    }
    let mut r = VerifyReport::from_engines("sampled-regularity", Method::Character, Vec::new(), cap, start);
    r.passed = w.is_empty();
    r.witness_total = w.total;
    r.witnesses = w.kept;
    r.notes.push(format!("{samples} classes drawn with seed {seed} from {total}"));
    r.stamp(start);
    Ok(r)
}
