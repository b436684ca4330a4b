//! Exact self-checks of a character table: orthogonality, degree accounting
//! and multiplicativity of `omega` on class sums.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{CharId, CharTable, Family, Mono};
use crate::cyclo::CycInt;
use crate::error::Result;
use crate::group::{ClassId, SuzukiGroup};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub skipped: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str, detail: String) -> Self {
        Self { name, passed: true, skipped: false, detail }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        Self { name, passed: false, skipped: false, detail }
    }

    fn skip(name: &'static str, detail: &str) -> Self {
        Self { name, passed: true, skipped: true, detail: detail.to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub field: String,
    pub family: Family,
    pub group_order: u64,
    pub classes: usize,
    pub listed_characters: u64,
    pub omitted_characters: u64,
    pub sum_degree_squares: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// How much of the class-sum multiplication table to test.
#[derive(Copy, Clone, Debug)]
pub enum HomCheck {
    Skip,
    /// Every unordered pair of classes.
    Full,
    /// A seeded sample of unordered pairs.
    Sampled { pairs: usize, seed: u64 },
}

impl HomCheck {
    /// Full up to order 1024, skipped above.
    pub fn default_for(group: &SuzukiGroup) -> Self {
        if group.order() <= 1024 {
            HomCheck::Full
        } else {
            HomCheck::Skip
        }
    }
}

/// Dense values `chi(C)` for every listed character and class.
pub fn dense_rows(table: &CharTable) -> Result<Vec<Vec<Mono>>> {
    let classes: Vec<ClassId> = table.group().classes().collect();
    let chars: Vec<_> = table.iter().collect();
    chars
        .par_iter()
        .map(|&chi| {
            let anchor = match table.support(chi)? {
                super::Support::Line(av) => Some(av),
                _ => None,
            };
            let f = table.group().field();
            let deg = table.degree(chi);
            let u = table.central_param(chi);
            let mut row = Vec::with_capacity(classes.len());
            let mut cached: Option<(crate::field::FieldElement, Option<super::GenericRow>)> = None;
            for &c in &classes {
                let m = match c {
                    ClassId::Central(b) => Mono { coef: deg, exp: table.step * f.trace_m(f.mul(u, b)) },
                    ClassId::Generic(a, x) => {
                        if cached.map(|(ca, _)| ca != a).unwrap_or(true) {
                            cached = Some((a, table.generic_row_with(chi, a, anchor)));
                        }
                        match cached.unwrap().1 {
                            None => Mono { coef: 0, exp: 0 },
                            Some(r) => Mono { coef: r.coef, exp: (r.exp + table.step * table.sub_trace(r.slope, x)) % table.order },
                        }
                    }
                };
                row.push(m);
            }
            Ok(row)
        })
        .collect()
}

fn bucket_sum(order: u32, terms: impl Iterator<Item = (i64, u32)>) -> Result<CycInt> {
    let mut buckets = vec![0i64; order as usize];
    for (c, e) in terms {
        buckets[e as usize] += c;
    }
    CycInt::from_buckets(&buckets)
}

/// `<chi_i, chi_j> * |G|` for every pair, compared against `|G| delta_ij`.
fn row_orthogonality(table: &CharTable, rows: &[Vec<Mono>], sizes: &[i64]) -> Result<Check> {
    let n = table.order;
    let g = table.group().order() as i64;
    let failures: Vec<String> = (0..rows.len())
        .into_par_iter()
        .map(|i| -> Result<Option<String>> {
            for j in i..rows.len() {
                let terms = rows[i].iter().zip(&rows[j]).zip(sizes).filter(|((a, b), _)| a.coef != 0 && b.coef != 0).map(
                    |((a, b), &s)| (s * a.coef * b.coef, (a.exp + n - b.exp) % n),
                );
                let v = bucket_sum(n, terms)?;
                let want = if i == j { g } else { 0 };
                if v != CycInt::integer(want) {
                    let ci = table.char_at(i as u64);
                    let cj = table.char_at(j as u64);
                    return Ok(Some(format!("<{}, {}> * |G| = {v}, expected {want}", table.describe(ci), table.describe(cj))));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(match failures.first() {
        None => Check::pass("row_orthogonality", format!("{} rows, norms included", rows.len())),
        Some(w) => Check::fail("row_orthogonality", format!("{} failing rows; first: {w}", failures.len())),
    })
}

fn column_orthogonality(table: &CharTable, rows: &[Vec<Mono>], sizes: &[i64]) -> Result<Check> {
    let n = table.order;
    let g = table.group().order() as i64;
    let cols = sizes.len();
    let failures: Vec<String> = (0..cols)
        .into_par_iter()
        .map(|a| -> Result<Option<String>> {
            for b in a..cols {
                let terms = rows
                    .iter()
                    .filter(|r| r[a].coef != 0 && r[b].coef != 0)
                    .map(|r| (r[a].coef * r[b].coef, (r[a].exp + n - r[b].exp) % n));
                let v = bucket_sum(n, terms)?;
                let want = if a == b { g / sizes[a] } else { 0 };
                if v != CycInt::integer(want) {
                    return Ok(Some(format!("columns {a}, {b}: {v}, expected {want}")));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(match failures.first() {
        None => Check::pass("column_orthogonality", format!("{cols} columns")),
        Some(w) => Check::fail("column_orthogonality", format!("{} failing columns; first: {w}", failures.len())),
    })
}

/// Nonzero structure constants of `C_i C_j` as `(k, a_ijk)`.
pub fn class_product(group: &SuzukiGroup, elems: &[Vec<crate::group::GroupElement>], i: usize, j: usize) -> Vec<(usize, i64)> {
    let mut counts = std::collections::BTreeMap::<usize, i64>::new();
    for &x in &elems[i] {
        for &y in &elems[j] {
            *counts.entry(group.class_index(group.class_of(group.mul(x, y)))).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .map(|(k, c)| (k, c / elems[k].len() as i64))
        .collect()
}

fn homomorphism(table: &CharTable, rows: &[Vec<Mono>], sizes: &[i64], mode: HomCheck) -> Result<Check> {
    let group = table.group();
    let ncls = sizes.len();
    let pairs: Vec<(usize, usize)> = match mode {
        HomCheck::Skip => return Ok(Check::skip("omega_homomorphism", "group too large for class-sum products")),
        HomCheck::Full => (0..ncls).flat_map(|i| (i..ncls).map(move |j| (i, j))).collect(),
        HomCheck::Sampled { pairs, seed } => {
            let total = ncls * ncls;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            sample(&mut rng, total, pairs.min(total)).into_iter().map(|k| (k / ncls, k % ncls)).collect()
        }
    };
    let elems: Vec<_> = group.classes().map(|c| group.class_elements(c)).collect();
    let n = table.order;
    let degrees: Vec<i64> = table.iter().map(|c| table.degree(c)).collect();
    // omega on single classes: |C| chi(C) / chi(1).
    let mut omegas = Vec::with_capacity(rows.len());
    for (r, &d) in rows.iter().zip(&degrees) {
        let mut row = Vec::with_capacity(ncls);
        for (m, &s) in r.iter().zip(sizes) {
            let num = s * m.coef;
            if num % d != 0 {
                return Ok(Check::fail("omega_homomorphism", format!("|C| chi(C) not divisible by degree {d}")));
            }
            row.push(Mono { coef: num / d, exp: m.exp });
        }
        omegas.push(row);
    }
    let failures: Vec<String> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Option<String>> {
            let prod = class_product(group, &elems, i, j);
            for (ci, w) in omegas.iter().enumerate() {
                let lhs = bucket_sum(n, std::iter::once((w[i].coef * w[j].coef, (w[i].exp + w[j].exp) % n)))?;
                let rhs = bucket_sum(n, prod.iter().map(|&(k, a)| (a * w[k].coef, w[k].exp)))?;
                if lhs != rhs {
                    let chi = table.char_at(ci as u64);
                    return Ok(Some(format!(
                        "{} on classes {i}, {j}: {lhs} vs {rhs}",
                        table.describe(chi)
                    )));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(match failures.first() {
        None => Check::pass("omega_homomorphism", format!("{} class pairs", pairs.len())),
        Some(w) => Check::fail("omega_homomorphism", format!("{} failing pairs; first: {w}", failures.len())),
    })
}

/// `omega(C) omega(C') = sum_k a_k omega(C_k)` for the given characters and class pairs,
/// expanding each product by direct multiplication.
pub fn homomorphism_on(table: &CharTable, chars: &[CharId], pairs: &[(ClassId, ClassId)]) -> Result<Check> {
    let group = table.group();
    let n = table.order;
    let omega = |chi: CharId, c: ClassId| -> Result<Mono> {
        let m = table.value_mono(chi, c)?;
        let num = group.class_size(c) as i64 * m.coef;
        let d = table.degree(chi);
        if num % d != 0 {
            return Err(crate::error::Error::InexactDivision(d));
        }
        Ok(Mono { coef: num / d, exp: m.exp })
    };
    let failures: Vec<String> = pairs
        .par_iter()
        .map(|&(c1, c2)| -> Result<Vec<String>> {
            let mut counts = std::collections::BTreeMap::<ClassId, i64>::new();
            let e2 = group.class_elements(c2);
            for x in group.class_elements(c1) {
                for &y in &e2 {
                    *counts.entry(group.class_of(group.mul(x, y))).or_default() += 1;
                }
            }
            let mut bad = Vec::new();
            for &chi in chars {
                let (w1, w2) = (omega(chi, c1)?, omega(chi, c2)?);
                let lhs = bucket_sum(n, std::iter::once((w1.coef * w2.coef, (w1.exp + w2.exp) % n)))?;
                let mut terms = Vec::with_capacity(counts.len());
                for (&k, &cnt) in &counts {
                    let a = cnt / group.class_size(k) as i64;
                    let w = omega(chi, k)?;
                    terms.push((a * w.coef, w.exp));
                }
                let rhs = bucket_sum(n, terms.into_iter())?;
                if lhs != rhs {
                    bad.push(format!("{}: {lhs} vs {rhs}", table.describe(chi)));
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(match failures.first() {
        None => Check::pass("omega_homomorphism", format!("{} characters on {} class pairs", chars.len(), pairs.len())),
        Some(w) => Check::fail("omega_homomorphism", format!("{} failures; first: {w}", failures.len())),
    })
}

pub fn validate_table(table: &CharTable, hom: HomCheck) -> Result<ValidationReport> {
    let group = table.group();
    let g = group.order();
    let sizes: Vec<i64> = group.classes().map(|c| group.class_size(c) as i64).collect();
    let rows = dense_rows(table)?;
    let listed = table.len();
    let sum_sq: u64 = table.iter().map(|c| (table.degree(c) as u64).pow(2)).sum();
    let omitted = table.omitted_count();
    let partial = table.family() == Family::FEven;
    let mut checks = vec![row_orthogonality(table, &rows, &sizes)?];

    let deg_detail = format!("sum deg^2 = {sum_sq}, |G| = {g}");
    checks.push(if partial {
        let d = table.omitted_degree().unwrap() as u64;
        if sum_sq + omitted * d * d == g && sum_sq < g {
            Check::pass("degree_squares", format!("{deg_detail}, {omitted} omitted of degree {d}"))
        } else {
            Check::fail("degree_squares", deg_detail)
        }
    } else if sum_sq == g {
        Check::pass("degree_squares", deg_detail)
    } else {
        Check::fail("degree_squares", deg_detail)
    });

    let count = listed + omitted;
    let count_detail = format!("{listed} listed + {omitted} omitted, {} classes", sizes.len());
    checks.push(if count == sizes.len() as u64 {
        Check::pass("character_count", count_detail)
    } else {
        Check::fail("character_count", count_detail)
    });

    checks.push(if partial {
        Check::skip("column_orthogonality", "needs the omitted family")
    } else {
        column_orthogonality(table, &rows, &sizes)?
    });
    checks.push(homomorphism(table, &rows, &sizes, hom)?);

    let passed = checks.iter().all(|c| c.passed);
    Ok(ValidationReport {
        field: group.field().spec().to_string(),
        family: table.family(),
        group_order: g,
        classes: sizes.len(),
        listed_characters: listed,
        omitted_characters: omitted,
        sum_degree_squares: sum_sq,
        checks,
        passed,
    })
}
