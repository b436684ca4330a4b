use super::*;
use crate::constructions::{build_ds_tz, build_linking_r, complement_minus_identity, VariantSource, VariantSpec};
use crate::field::{FieldCtx, FieldElement, SubfieldElement};
use crate::group::{ClassId, SuzukiGroup};
use crate::set::CentralSet;
use crate::Error;

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn small_ds(g: &SuzukiGroup) -> CentralSet {
    build_ds_tz(g, FieldElement::ONE, SubfieldElement::ONE, &VariantSpec::all_ker()).unwrap()
}

#[test]
fn constructed_set_passes_both_engines() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    let r = check_ds(&g, &small_ds(&g), Method::Both, &opts()).unwrap();
    assert!(r.passed, "{r:?}");
    assert!(!r.trivial);
    assert_eq!(r.params, Some(Params::Ds(DsParams { v: 64, k: 28, lambda: 12, n: 16 })));
    assert_eq!(r.engines.len(), 2);
    let c = convolve_ddinv(&g, &set_indices(&g, &small_ds(&g)).unwrap()).unwrap();
    assert_eq!(c.coeffs[0], 28);
    assert!(c.coeffs[1..].iter().all(|&x| x == 12));
}

#[test]
fn whole_group_is_trivial() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    let all = CentralSet::from_classes(&g, g.classes()).unwrap();
    let r = check_ds(&g, &all, Method::Both, &opts()).unwrap();
    assert!(r.passed && r.trivial);
    let empty = CentralSet::empty(&g).unwrap();
    let r = check_ds(&g, &empty, Method::Both, &opts()).unwrap();
    assert!(r.passed && r.trivial);
    assert_eq!(r.params, Some(Params::Ds(DsParams { v: 64, k: 0, lambda: 0, n: 0 })));
}

#[test]
fn mutation_is_caught_with_witnesses() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    let mut s = small_ds(&g);
    s.toggle(ClassId::Central(FieldElement::from_index(3)));
    let r = check_ds(&g, &s, Method::Both, &opts()).unwrap();
    assert!(!r.passed);
    assert!(!r.witnesses.is_empty() && r.witnesses.len() <= WITNESS_CAP);
    assert!(r.engines.iter().all(|e| !e.holds && !e.witnesses.is_empty()));
}

#[test]
fn non_central_element_lists() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    let elems: Vec<_> = g.elements().skip(9).take(5).collect();
    assert_eq!(check_ds_elements(&g, &elems, Method::Character, &opts()).unwrap_err(), Error::NonCentralSetForCharacterMethod);
    assert!(!check_ds_elements(&g, &elems, Method::GroupRing, &opts()).unwrap().passed);
    let ds: Vec<_> = small_ds(&g).classes().flat_map(|c| g.class_elements(c)).collect();
    assert!(check_ds_elements(&g, &ds, Method::Both, &opts()).unwrap().passed);
}

/// Nonzero squares of GF(9) in its additive group.
fn paley9() -> (ElementaryAbelian, Vec<usize>) {
    let f = FieldCtx::new(3, 2, 1).unwrap();
    let mut sq: Vec<usize> = f.nonzero_elements().map(|a| f.mul(a, a).index() as usize).collect();
    sq.sort();
    sq.dedup();
    (ElementaryAbelian::new(3, 2), sq)
}

#[test]
fn paley_nine() {
    let (g, sq) = paley9();
    assert_eq!(sq.len(), 4);
    let r = check_pds_in(&g, &sq, &opts()).unwrap();
    assert!(r.passed);
    let Some(Params::Pds(s)) = r.params else { panic!() };
    assert_eq!(s.params, PdsParams::new(9, 4, 1, 2));
    // not a difference set
    assert!(!check_ds_in(&g, &sq, &opts()).unwrap().passed);
}

#[test]
fn identity_breaks_regularity() {
    let (g, mut sq) = paley9();
    sq.push(0);
    let r = check_pds_in(&g, &sq, &opts()).unwrap();
    assert!(!r.passed);
    assert_eq!(r.witnesses[0].kind, WitnessKind::Element);

    let gs = SuzukiGroup::from_params(3, 2, 1).unwrap();
    let s = CentralSet::from_classes(&gs, [ClassId::Central(FieldElement::ZERO)]).unwrap();
    let r = check_pds(&gs, &s, Method::Both, &opts()).unwrap();
    assert!(!r.passed && r.engines.iter().all(|e| !e.holds));
}

#[test]
fn complements_of_pds_through_identity() {
    let (g, sq) = paley9();
    // S = squares + {0}; a subgroup of order 3 plus its complement
    let line: Vec<usize> = vec![0, 1, 2];
    for s in [[sq.clone(), vec![0]].concat(), line] {
        let minus: Vec<usize> = s.iter().copied().filter(|&x| x != 0).collect();
        let comp: Vec<usize> = (0..9).filter(|x| !s.contains(x)).collect();
        assert!(check_pds_in(&g, &minus, &opts()).unwrap().passed, "{minus:?}");
        assert!(check_pds_in(&g, &comp, &opts()).unwrap().passed, "{comp:?}");
    }
}

#[test]
fn huge_sets_are_refused() {
    let g = SuzukiGroup::from_params(5, 9, 3).unwrap();
    let s = crate::constructions::build_pds(&g, crate::constructions::PdsKind::Tz, Some(FieldElement::ONE), None).unwrap();
    assert!(matches!(check_pds(&g, &s, Method::GroupRing, &opts()), Err(Error::TooLarge(_))));
}

#[test]
fn linking_identity_at_order_4096() {
    let g = SuzukiGroup::from_params(2, 6, 2).unwrap();
    let fam = build_linking_r(&g, &VariantSource::Seed(5)).unwrap();
    let members: Vec<CentralSet> = fam.members.iter().map(|m| m.set.clone()).collect();
    let third = |i, j| fam.third(&g, i, j).map(|t| t.2);
    let r = check_linking(&g, &members, &third, Method::Both, &opts()).unwrap();
    assert!(r.passed, "{:?}", r.witnesses);
    let Some(Params::Linking(lp)) = r.params else { panic!() };
    assert_eq!((lp.mu - lp.eta, lp.eta, lp.l), (-32, 1008, 3));

    // a wrong third set: flip Gamma for pair (0, 1)
    let wrong = |i: usize, j: usize| -> crate::Result<CentralSet> {
        let (z, mut spec, set) = fam.third(&g, i, j)?;
        if (i, j) != (0, 1) {
            return Ok(set);
        }
        spec.gamma = crate::constructions::GammaVariant::Uniform(crate::constructions::Side::Comp);
        spec.b = crate::constructions::Side::Ker;
        let s = crate::constructions::build_ds_z(&g, z, &spec)?;
        Ok(if s == set { crate::constructions::build_ds_z(&g, z, &VariantSpec::all_ker())? } else { s })
    };
    let r = check_linking(&g, &members, &wrong, Method::Both, &opts()).unwrap();
    assert!(!r.passed);
    assert!(r.witnesses.iter().any(|w| w.pair == Some([0, 1])));

    let r = check_linking(&g, &members[..1], &third, Method::Both, &opts()).unwrap();
    assert!(r.passed && r.degenerate);
    let odd = vec![members[0].clone(), CentralSet::empty(&g).unwrap()];
    assert!(matches!(check_linking(&g, &odd, &third, Method::GroupRing, &opts()), Err(Error::ParameterMismatch(_))));
}

#[test]
fn no_central_ds_when_f_is_two() {
    let g = SuzukiGroup::from_params(2, 2, 1).unwrap();
    let p = DsParams::with_n(16, 6, 2, 4).unwrap();
    for mode in [SearchMode::Brute, SearchMode::Pruned] {
        assert!(search_central_ds(&g, p, mode).unwrap().sets.is_empty());
    }
}

#[test]
fn pds_searches_at_order_81() {
    let g = SuzukiGroup::from_params(3, 2, 1).unwrap();
    for p in [PdsParams::new(81, 24, 9, 6), PdsParams::new(81, 32, 13, 12)] {
        let out = search_central_pds(&g, p, SearchMode::Pruned).unwrap();
        assert!(out.sets.is_empty());
    }
    let out = search_central_pds(&g, PdsParams::new(81, 24, 9, 7), SearchMode::Pruned).unwrap();
    assert!(out.sets.is_empty() && out.leaves_checked == 0);
    assert!(out.notes[0].contains("infeasible"));
    // sanity: the search does find PDS that exist, e.g. the center minus 1
    let center = PdsParams::new(81, 8, 7, 0);
    let found = search_central_pds(&g, center, SearchMode::Pruned).unwrap().sets;
    assert!(found.iter().any(|s| s.generic_class_count() == 0 && s.central_count() == 8));
    for s in &found {
        assert!(check_pds(&g, s, Method::GroupRing, &opts()).unwrap().passed);
    }
}

#[test]
fn search_guards() {
    let g = SuzukiGroup::from_params(2, 4, 1).unwrap();
    let p = DsParams::with_n(256, 120, 56, 64).unwrap();
    assert!(matches!(search_central_ds(&g, p, SearchMode::Brute), Err(Error::SearchSpaceTooLarge(_))));
}

#[test]
fn engines_agree_on_every_subset_at_order_16() {
    let g = SuzukiGroup::from_params(2, 2, 1).unwrap();
    let cv = cross_validate_exhaustive(&g).unwrap();
    assert_eq!(cv.samples, 1024);
    assert!(cv.all_agree(), "{:?}", cv.disagreements);
}

#[test]
fn engines_agree_on_random_sets() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    let extra = [CentralSet::empty(&g).unwrap(), small_ds(&g), complement_minus_identity(&small_ds(&g))];
    let cv = cross_validate(&g, 100, 42, &extra).unwrap();
    assert_eq!(cv.samples, 103);
    assert!(cv.all_agree(), "{:?}", cv.disagreements);
    assert!(cv.ds_holds >= 2);
    let g = SuzukiGroup::from_params(3, 2, 1).unwrap();
    let cv = cross_validate(&g, 60, 42, &[]).unwrap();
    assert!(cv.all_agree(), "{:?}", cv.disagreements);
}
