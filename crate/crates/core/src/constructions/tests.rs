use super::*;
use crate::group::GroupElement;
use proptest::prelude::*;

fn elements_of(g: &SuzukiGroup, s: &CentralSet) -> Vec<GroupElement> {
    s.classes().flat_map(|c| g.class_elements(c)).collect()
}

/// Coefficients of `X Y^(-1)` in the group ring, indexed by element index.
fn product(g: &SuzukiGroup, x: &[GroupElement], y: &[GroupElement]) -> Vec<u32> {
    let mut out = vec![0u32; g.order() as usize];
    let yinv: Vec<_> = y.iter().map(|&h| g.inv(h)).collect();
    for &a in x {
        for &b in &yinv {
            out[g.element_index(g.mul(a, b)) as usize] += 1;
        }
    }
    out
}

/// `Some(lambda)` when every nonidentity element is hit equally often.
fn ds_lambda(g: &SuzukiGroup, d: &[GroupElement]) -> Option<u32> {
    let c = product(g, d, d);
    let id = g.element_index(g.identity()) as usize;
    assert_eq!(c[id] as usize, d.len());
    let lam = c[(id + 1) % c.len()];
    c.iter().enumerate().all(|(i, &v)| i == id || v == lam).then_some(lam)
}

fn assert_ds(g: &SuzukiGroup, s: &CentralSet) {
    let d = elements_of(g, s);
    let lam = ds_lambda(g, &d).expect("not a difference set");
    let (v, k) = (g.order(), d.len() as u64);
    assert_eq!(k * (k - 1), lam as u64 * (v - 1));
}

const Z1: SubfieldElement = SubfieldElement::ONE;

#[test]
fn ds_tz_all_t_and_variants_small() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    let f = g.field();
    for t in f.nonzero_elements() {
        for spec in [
            VariantSpec::all_ker(),
            VariantSpec::all_comp(),
            VariantSpec::uniform(Side::Ker, Side::Comp),
            VariantSpec::seeded(3, f.order()),
        ] {
            let s = build_ds_tz(&g, t, Z1, &spec).unwrap();
            assert_eq!(s.cardinality(), 28);
            assert_eq!(s.gamma_mask(excluded_a(f, t, Z1).unwrap()), 0);
            assert_ds(&g, &s);
        }
    }
}

#[test]
fn ds_tz_at_order_1024() {
    let g = SuzukiGroup::from_params(2, 5, 1).unwrap();
    let f = g.field();
    let t = f.gamma();
    let s = build_ds_tz(&g, t, Z1, &VariantSpec::seeded(DEFAULT_SEED, f.order())).unwrap();
    assert_eq!(s.cardinality(), 496);
    assert_ds(&g, &s);
}

#[test]
fn ds_z_small() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    for spec in [VariantSpec::all_ker(), VariantSpec::all_comp(), VariantSpec::seeded(9, 8)] {
        let s = build_ds_z(&g, Z1, &spec).unwrap();
        assert_eq!(s.central_count(), 0);
        assert_eq!(s.cardinality(), 28);
        assert_ds(&g, &s);
    }
    // Ker(phi_1) = {0} over GF(2)
    let s = build_ds_z(&g, Z1, &VariantSpec::all_ker()).unwrap();
    assert!(g.field().nonzero_elements().all(|a| s.gamma_mask(a) == 0b01));
}

#[test]
fn ds_with_larger_subfield() {
    let g = SuzukiGroup::from_params(2, 6, 2).unwrap();
    let f = g.field();
    assert_eq!(f.e(), 2);
    for z in f.sub_elements().skip(1) {
        let s = build_ds_tz(&g, f.gamma(), z, &VariantSpec::seeded(1, f.order())).unwrap();
        assert_ds(&g, &s);
        let s = build_ds_z(&g, z, &VariantSpec::all_comp()).unwrap();
        assert_ds(&g, &s);
    }
}

#[test]
fn error_cases() {
    let g = SuzukiGroup::from_params(3, 2, 1).unwrap();
    let one = SubfieldElement::ONE;
    assert!(matches!(
        build_ds_tz(&g, FieldElement::ONE, one, &VariantSpec::all_ker()),
        Err(Error::PreconditionViolated(_))
    ));
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    assert_eq!(build_ds_tz(&g, FieldElement::ZERO, one, &VariantSpec::all_ker()).unwrap_err(), Error::ZeroParameter);
    assert_eq!(build_ds_z(&g, SubfieldElement::ZERO, &VariantSpec::all_ker()).unwrap_err(), Error::ZeroParameter);
    let k = VariantSpec::all_ker();
    assert_eq!(linking_third(g.field(), one, &k, one, &k).unwrap_err(), Error::EqualZ);
    assert!(build_linking_r(&g, &VariantSource::AllKer).unwrap().is_degenerate());

    let g = SuzukiGroup::from_params(5, 3, 1).unwrap();
    assert_eq!(build_pds(&g, PdsKind::Z, None, None).unwrap_err(), Error::NoValidZ);
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    assert!(matches!(build_pds(&g, PdsKind::Z, None, None), Err(Error::PreconditionViolated(_))));
}

#[test]
fn variant_source_parses() {
    assert_eq!("all-ker".parse::<VariantSource>().unwrap(), VariantSource::AllKer);
    assert_eq!("seed:42".parse::<VariantSource>().unwrap(), VariantSource::Seed(42));
    assert!("seed:x".parse::<VariantSource>().is_err());
    assert!("bogus".parse::<VariantSource>().is_err());
    assert_eq!(VariantSource::Seed(7).to_string(), "seed:7");
    assert_eq!(VariantSpec::seeded(5, 16), VariantSpec::seeded(5, 16));
    let v = serde_json::to_value(VariantSpec::all_comp()).unwrap();
    assert_eq!(v, serde_json::json!({"b": "comp", "gamma": "comp"}));
}

/// Coefficients of `D_i D_j^(-1)` off and on the third set, each required constant.
fn check_pair(g: &SuzukiGroup, fam: &LinkingFamily, i: usize, j: usize) -> (u32, u32) {
    let x = elements_of(g, &fam.members[i].set);
    let y = elements_of(g, &fam.members[j].set);
    let (_, _, third) = fam.third(g, i, j).unwrap();
    let mut on = vec![false; g.order() as usize];
    for h in elements_of(g, &third) {
        on[g.element_index(h) as usize] = true;
    }
    let c = product(g, &x, &y);
    let (mut inside, mut outside) = (None, None);
    for (idx, &v) in c.iter().enumerate() {
        let slot = if on[idx] { &mut inside } else { &mut outside };
        match *slot {
            None => *slot = Some(v),
            Some(w) => assert_eq!(w, v, "pair ({i},{j}) at element {idx}"),
        }
    }
    (outside.unwrap(), inside.unwrap())
}

#[test]
fn linking_families_close_up() {
    let g = SuzukiGroup::from_params(2, 6, 2).unwrap();
    let f = g.field();
    for fam in [
        build_linking_rt(&g, f.gamma(), &VariantSource::Seed(4)).unwrap(),
        build_linking_r(&g, &VariantSource::AllKer).unwrap(),
        build_linking_r(&g, &VariantSource::Seed(11)).unwrap(),
    ] {
        assert_eq!(fam.members.len(), 3);
        let mut seen = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    seen.push(check_pair(&g, &fam, i, j));
                }
            }
        }
        // D D'^(-1) = 1008 G - 32 D'' for every ordered pair
        assert!(seen.iter().all(|&s| s == (1008, 976)), "{seen:?}");
    }
}

#[test]
fn flipped_sign_breaks_linking() {
    let g = SuzukiGroup::from_params(2, 6, 2).unwrap();
    let fam = build_linking_r(&g, &VariantSource::AllKer).unwrap();
    let (z, mut spec, _) = fam.third(&g, 0, 1).unwrap();
    let gamma = spec.uniform_gamma().unwrap();
    spec.gamma = GammaVariant::Uniform(if gamma == Side::Ker { Side::Comp } else { Side::Ker });
    let wrong = build_ds_z(&g, z, &spec).unwrap();
    let x = elements_of(&g, &fam.members[0].set);
    let y = elements_of(&g, &fam.members[1].set);
    let c = product(&g, &x, &y);
    let mut on = vec![false; g.order() as usize];
    for h in elements_of(&g, &wrong) {
        on[g.element_index(h) as usize] = true;
    }
    let vals: std::collections::BTreeSet<_> = c.iter().zip(&on).map(|(&v, &o)| (o, v)).collect();
    assert!(vals.len() > 2, "{vals:?}");
}

#[test]
fn dillon_standard_is_a_difference_set() {
    for m in [3, 5] {
        let g = SuzukiGroup::from_params(2, m, 1).unwrap();
        let spec = DillonSpec::standard(&g).unwrap();
        let (v, k, lam, n) = spec.mcfarland_params();
        assert_eq!(v, g.order());
        assert_eq!(k - lam, n);
        let d = build_dillon(&g, &spec).unwrap();
        assert_eq!(d.len() as u64, k);
        assert_eq!(ds_lambda(&g, &d), Some(lam as u32));
    }
}

#[test]
fn central_sets_have_dillon_form() {
    for (m, l) in [(3, 1), (6, 2)] {
        let g = SuzukiGroup::from_params(2, m, l).unwrap();
        let f = g.field();
        for z in f.sub_elements().skip(1) {
            for t in f.nonzero_elements().step_by(5) {
                let s = build_ds_tz(&g, t, z, &VariantSpec::seeded(t.index() as u64, f.order())).unwrap();
                let w = dillon_form_of(&g, &s, z, Some(t)).unwrap();
                assert_eq!(w.spec.omitted, excluded_a(f, t, z).unwrap());
            }
            let s = build_ds_z(&g, z, &VariantSpec::seeded(2, f.order())).unwrap();
            assert_eq!(dillon_form_of(&g, &s, z, None).unwrap().spec.omitted, FieldElement::ZERO);
        }
    }
}

#[test]
fn corrupted_set_is_not_dillon() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    let f = g.field();
    let t = FieldElement::ONE;
    let z = SubfieldElement::ONE;
    let mut s = build_ds_tz(&g, t, z, &VariantSpec::all_ker()).unwrap();
    let a = f.nonzero_elements().find(|&a| a != excluded_a(f, t, z).unwrap()).unwrap();
    s.set_gamma(a, 0b11);
    assert!(matches!(dillon_form_of(&g, &s, z, Some(t)), Err(Error::NotDillonForm(_))));
    let mut s = build_ds_tz(&g, t, z, &VariantSpec::all_ker()).unwrap();
    s.insert_central(f.nonzero_elements().find(|&b| !s.contains_central(b)).unwrap());
    assert!(matches!(dillon_form_of(&g, &s, z, Some(t)), Err(Error::NotDillonForm(_))));
    let s = build_ds_z(&g, z, &VariantSpec::all_ker()).unwrap();
    assert!(matches!(dillon_form_of(&g, &s, z, Some(t)), Err(Error::NotDillonForm(_))));
}

#[test]
fn example_families() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    let f = g.field();
    let all: Vec<_> = f.nonzero_elements().collect();
    // no central part, J0 everything: that is D_1 with Gamma = Ker
    let s = build_example_mf(&g, None, &all, &[]).unwrap();
    assert_eq!(s, build_ds_z(&g, SubfieldElement::ONE, &VariantSpec::all_ker()).unwrap());
    assert_ds(&g, &s);

    let t = f.gamma();
    let at = f.solve_a_v(t).unwrap();
    let rest: Vec<_> = all.iter().copied().filter(|&a| a != at).collect();
    let (j0, j1) = rest.split_at(2);
    let s = build_example_mf(&g, Some((t, Side::Comp)), j0, j1).unwrap();
    assert_ds(&g, &s);
    let m = match_example(&g, &s).unwrap().unwrap();
    assert_eq!(m.t, Some((t, Side::Comp)));
    assert_eq!((m.j0.as_slice(), m.j1.as_slice()), (j0, j1));

    assert!(matches!(build_example_mf(&g, Some((t, Side::Ker)), &all, &[]), Err(Error::BadPartition(_))));
    assert!(matches!(build_example_mf(&g, None, &all[1..], &[]), Err(Error::BadPartition(_))));
    assert!(matches!(build_example_mf(&g, None, &all, &all[..1]), Err(Error::BadPartition(_))));
    let g2 = SuzukiGroup::from_params(2, 6, 2).unwrap();
    assert!(matches!(build_example_mf(&g2, None, &[], &[]), Err(Error::PreconditionViolated(_))));
}

#[test]
fn pds_complement_identity() {
    let g = SuzukiGroup::from_params(5, 9, 3).unwrap();
    let zpp = build_pds(&g, PdsKind::ZDoublePrime, None, None).unwrap();
    let zp = build_pds(&g, PdsKind::ZPrime, None, None).unwrap();
    assert_eq!(complement_minus_identity(&zpp), zp);
    let z = build_pds(&g, PdsKind::Z, None, None).unwrap();
    assert_eq!(z.central_count(), 0);
    assert_eq!(zp.central_count() + 1, g.field().order() as u64);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn seeded_variants_are_difference_sets(seed in any::<u64>(), ti in 1u32..8, with_t in any::<bool>()) {
        let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
        let spec = VariantSpec::seeded(seed, 8);
        let s = if with_t {
            build_ds_tz(&g, FieldElement::from_index(ti), SubfieldElement::ONE, &spec).unwrap()
        } else {
            build_ds_z(&g, SubfieldElement::ONE, &spec).unwrap()
        };
        let d = elements_of(&g, &s);
        prop_assert_eq!(ds_lambda(&g, &d), Some(12));
    }
}
