use super::validate::{validate_table, HomCheck};
use super::*;
use crate::group::GroupElement;

fn table_report(p: u32, m: u32, l: u32, opts: TableOptions, hom: HomCheck) -> validate::ValidationReport {
    let g = SuzukiGroup::from_params(p, m, l).unwrap();
    let t = CharTable::with_options(&g, opts).unwrap();
    validate_table(&t, hom).unwrap()
}

fn assert_all_pass(r: &validate::ValidationReport) {
    for c in &r.checks {
        assert!(c.passed, "{} {}: {}", r.field, c.name, c.detail);
    }
}

#[test]
fn counts_match_class_numbers() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    let t = CharTable::new(&g).unwrap();
    assert_eq!(t.len(), 22);
    assert_eq!(t.iter().filter(|c| c.is_linear()).count(), 8);
    assert_eq!(t.iter().filter(|c| t.degree(*c) == 2).count(), 14);

    let g = SuzukiGroup::from_params(2, 4, 1).unwrap();
    let t = CharTable::new(&g).unwrap();
    assert_eq!(t.len(), 26);
    assert_eq!(t.reps().len(), 10);
    assert_eq!(t.omitted_count(), 20);
}

#[test]
fn odd_two_table_validates() {
    assert_all_pass(&table_report(2, 3, 1, TableOptions::default(), HomCheck::Full));
}

#[test]
fn two_five_one_validates() {
    assert_all_pass(&table_report(2, 5, 1, TableOptions::default(), HomCheck::Full));
}

#[test]
fn odd_p_table_validates() {
    let r = table_report(5, 3, 1, TableOptions::default(), HomCheck::Sampled { pairs: 400, seed: 7 });
    assert_eq!(r.listed_characters, 745);
    assert_eq!(r.sum_degree_squares, 15625);
    assert_all_pass(&r);
    let sq = TableOptions { squares_only_t: true, ..Default::default() };
    assert_all_pass(&table_report(5, 3, 1, sq, HomCheck::Skip));
    assert_all_pass(&table_report(3, 5, 1, sq, HomCheck::Skip));
}

#[test]
fn f_two_tables_validate() {
    assert_all_pass(&table_report(2, 2, 1, TableOptions::default(), HomCheck::Full));
    assert_all_pass(&table_report(3, 2, 1, TableOptions::default(), HomCheck::Full));
    assert_all_pass(&table_report(2, 4, 2, TableOptions::default(), HomCheck::Skip));
}

#[test]
fn partial_even_table_validates() {
    let r = table_report(2, 4, 1, TableOptions::default(), HomCheck::Skip);
    assert_eq!(r.omitted_characters, 20);
    assert_all_pass(&r);
    assert!(r.checks.iter().any(|c| c.name == "column_orthogonality" && c.skipped));
}

#[test]
fn both_q_readings_validate_when_e_is_two() {
    let hom = HomCheck::Sampled { pairs: 600, seed: 11 };
    assert_all_pass(&table_report(2, 6, 2, TableOptions::default(), hom));
    let alt = TableOptions { q_reading: QReading::DoubledHalfPower, ..Default::default() };
    assert_all_pass(&table_report(2, 6, 2, alt, hom));
}

/// Pairs of classes on the support line of `v`, spread over all pairs of line points.
fn line_pairs(t: &CharTable, v: FieldElement, count: usize) -> Vec<(ClassId, ClassId)> {
    let f = t.group().field();
    let av = t.anchor(v).unwrap();
    let line: Vec<_> = f.sub_elements().skip(1).map(|u| f.mul(av, f.embed(u))).collect();
    let mut all = Vec::new();
    for (i, &a) in line.iter().enumerate() {
        for &b in &line[i + 1..] {
            let x = SubfieldElement::from_index((i % f.sub_order() as usize) as u32);
            all.push((ClassId::Generic(a, x), ClassId::Generic(b, SubfieldElement::ONE)));
        }
    }
    let stride = (all.len() / count).max(1);
    all.into_iter().step_by(stride).take(count).collect()
}

#[test]
fn q_reading_is_decided_by_multiplicativity() {
    // e = 4 is the first case where the readings differ on trace-zero inputs.
    let g = SuzukiGroup::from_params(2, 12, 4).unwrap();
    let mut outcomes = Vec::new();
    for reading in [QReading::HalfPowerPlusOne, QReading::DoubledHalfPower] {
        let t = CharTable::with_options(&g, TableOptions { q_reading: reading, ..Default::default() }).unwrap();
        let f = g.field();
        let mut chars = Vec::new();
        let mut pairs = Vec::new();
        for v in [FieldElement::ONE, f.gamma()] {
            for &w in t.w_reps().iter().take(3) {
                for eps in [1, -1] {
                    chars.push(CharId::OddNonLin2 { v, w, eps });
                }
            }
            pairs.extend(line_pairs(&t, v, 12));
        }
        let check = validate::homomorphism_on(&t, &chars, &pairs).unwrap();
        outcomes.push(check.passed);
    }
    assert_eq!(outcomes, vec![true, false]);
}

/// Linear characters of `G/G'` for f = 2, computed on elements.
fn quotient_linear(g: &SuzukiGroup, v: FieldElement, w: SubfieldElement, x: GroupElement) -> (u32, u32) {
    let f = g.field();
    let norm = f.to_sub(f.norm_like(x.a)).unwrap();
    let y = f.s_sub(f.trace_rel(x.b), norm);
    (f.trace_m(f.mul(v, x.a)), f.trace_e(f.s_mul(w, y)))
}

#[test]
fn f_two_linear_rows_come_from_the_abelianization() {
    for (p, m, l) in [(2, 2, 1), (3, 2, 1), (2, 4, 2)] {
        let g = SuzukiGroup::from_params(p, m, l).unwrap();
        let f = g.field();
        let t = CharTable::new(&g).unwrap();
        let elems: Vec<_> = g.elements().collect();
        for v in f.elements().step_by(3) {
            for w in f.sub_elements() {
                let val = |x| {
                    let (s, r) = quotient_linear(&g, v, w, x);
                    (s + r) % p
                };
                for &x in elems.iter().step_by(5) {
                    for &y in elems.iter().step_by(7) {
                        assert_eq!(val(g.mul(x, y)), (val(x) + val(y)) % p);
                    }
                }
                for c in g.classes() {
                    let rep = g.class_rep(c);
                    let want = t.mono_to_cyc(Mono { coef: 1, exp: val(rep) * t.step });
                    assert_eq!(t.char_value(CharId::F2Lin { v, w }, c).unwrap(), want);
                    // literal reading psi_w(b) on central classes
                    if let ClassId::Central(b) = c {
                        let lit = t.mono_to_cyc(Mono { coef: 1, exp: f.trace_m(f.mul(f.embed(w), b)) * t.step });
                        assert_eq!(lit, want);
                    }
                }
            }
        }
    }
}

#[test]
fn binary_nonlinear_value_on_central_one() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    let t = CharTable::new(&g).unwrap();
    let chi = CharId::OddNonLin2 { v: FieldElement::ONE, w: SubfieldElement::ZERO, eps: 1 };
    assert_eq!(t.char_value(chi, ClassId::Central(FieldElement::ONE)).unwrap(), CycInt::integer(-2));
    let av = t.anchor(FieldElement::ONE).unwrap();
    let off = g.field().nonzero_elements().find(|&a| a != av).unwrap();
    assert!(t.char_value(chi, ClassId::Generic(off, SubfieldElement::ZERO)).unwrap().is_zero());
}

#[test]
fn omega_examples() {
    let g = SuzukiGroup::from_params(2, 3, 1).unwrap();
    let f = g.field();
    let t = CharTable::new(&g).unwrap();
    let gamma = f.gamma();
    let one = CentralSet::from_classes(&g, [ClassId::Central(FieldElement::ZERO)]).unwrap();
    let all = CentralSet::from_classes(&g, g.classes()).unwrap();
    for chi in t.iter() {
        assert_eq!(t.omega(chi, &one).unwrap(), CycInt::integer(1));
        let want = if chi.is_trivial() { 64 } else { 0 };
        assert_eq!(t.omega(chi, &all).unwrap(), CycInt::integer(want), "{}", t.describe(chi));
    }
    let c = CentralSet::from_classes(&g, [ClassId::Generic(gamma, SubfieldElement::ZERO)]).unwrap();
    assert_eq!(t.omega(CharId::OddLin2 { v: FieldElement::ONE }, &c).unwrap(), CycInt::integer(4));
}

#[test]
fn omega_agrees_with_class_sums() {
    for (p, m, l) in [(2, 3, 1), (3, 2, 1), (5, 3, 1), (2, 4, 1)] {
        let g = SuzukiGroup::from_params(p, m, l).unwrap();
        let t = CharTable::new(&g).unwrap();
        let set = CentralSet::from_classes(&g, g.classes().filter(|c| g.class_index(*c) % 3 != 1)).unwrap();
        for chi in t.iter() {
            let mut acc = CycInt::zero(1);
            for c in set.classes() {
                acc = acc + t.omega_class(chi, c).unwrap();
            }
            assert_eq!(t.omega(chi, &set).unwrap(), acc);
        }
    }
}

#[test]
fn subgroup_character_sums_vanish_or_fill() {
    for (p, m) in [(2u32, 4u32), (3, 3), (2, 6)] {
        let f = FieldCtx::new(p, m, 1).unwrap();
        // span of the first k powers of gamma
        for k in 1..=m {
            let basis: Vec<_> = (0..k).map(|i| f.gamma_pow(i as u64 * 3 + 1)).collect();
            let mut sub = vec![FieldElement::ZERO];
            for &bv in &basis {
                let mut next = Vec::new();
                for &s in &sub {
                    for c in 0..p {
                        next.push(f.add(s, f.mul(f.scalar(c), bv)));
                    }
                }
                next.sort();
                next.dedup();
                sub = next;
            }
            for v in f.elements() {
                let mut buckets = vec![0i64; p as usize];
                for &x in &sub {
                    buckets[f.trace_m(f.mul(v, x)) as usize] += 1;
                }
                let s = CycInt::from_buckets(&buckets).unwrap();
                let n = sub.len() as i64;
                assert!(s == CycInt::integer(n) || s.is_zero());
            }
        }
    }
}
