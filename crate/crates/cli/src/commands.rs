use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use suzuki_core::chars::validate::{validate_table, HomCheck};
use suzuki_core::chars::TableOptions;
use suzuki_core::constructions::{self as cons, PdsKind, Side, VariantSource, VariantSpec};
use suzuki_core::io::{linking_family, Construction, SetContents, SetFile};
use suzuki_core::verifier::{
    check_ds, check_ds_elements, check_linking, check_pds, check_pds_in, search_central_ds, search_central_pds,
    DsParams, Method, PdsParams, SearchMode, VerifyOptions, VerifyReport,
};
use suzuki_core::{CentralSet, CharTable, FieldCtx, FieldElement, FieldSpec, GroupElement, SubfieldElement, SuzukiGroup};

use crate::config::{emit, envelope, write_json, RunConfig};
use crate::{Cli, Command, ConstructArgs, ConstructKind, Mode, SearchKind, VerifyKind, FAIL, PASS};

/// Largest set file `construct` writes, in classes.
const MAX_FILE_CLASSES: usize = 1 << 20;
/// Largest table `chartable` writes, in entries.
const MAX_CSV_ENTRIES: u64 = 1 << 22;

pub fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    let threads = if g.no_timing { None } else { g.threads };
    match &cli.command {
        Command::FieldInfo { field } => field_info(field, RunConfig::new("field-info", Some(field), threads), g.pretty),
        Command::Chartable { field, csv, report, squares_only, no_hom } => {
            let mut cfg = RunConfig::new("chartable", Some(field), threads)
                .param("squares_only", squares_only)
                .param("hom_check", !no_hom);
            cfg.outputs.extend(csv.iter().chain(report).cloned());
            chartable(field, csv.as_deref(), report.as_deref(), *squares_only, *no_hom, cfg, g.pretty)
        }
        Command::Construct(args) => construct(args, threads, g.pretty),
        Command::Verify { what, inputs, method, report, max_witnesses } => {
            let method: Method = method.parse().map_err(|e| anyhow!("{e}"))?;
            let mut cfg = RunConfig::new("verify", None, threads)
                .param("check", what)
                .param("inputs", inputs)
                .param("method", method)
                .param("max_witnesses", max_witnesses);
            cfg.outputs.extend(report.clone());
            verify(*what, inputs, method, *max_witnesses, report.as_deref(), cfg, g)
        }
        Command::Search { what, field, params, mode, report, sets_dir } => {
            let mut cfg = RunConfig::new("search", Some(field), threads)
                .param("kind", what)
                .param("params", params)
                .param("mode", mode);
            cfg.outputs.extend(report.iter().chain(sets_dir).cloned());
            search(*what, field, params, *mode, report.as_deref(), sets_dir.as_deref(), cfg, g)
        }
    }
}

fn group_of(field: &str) -> Result<SuzukiGroup> {
    let spec: FieldSpec = field.parse()?;
    Ok(SuzukiGroup::new(FieldCtx::from_spec(&spec)?)?)
}

/// An index, or `c0:c1:...` coefficients.
fn elem(ctx: &FieldCtx, s: &str) -> Result<FieldElement> {
    if s.contains(':') {
        return Ok(ctx.from_coeffs(&coeffs(s)?)?);
    }
    let i: u32 = s.parse().with_context(|| format!("bad field element `{s}`"))?;
    if i >= ctx.order() {
        bail!("field element index {i} out of range");
    }
    Ok(FieldElement::from_index(i))
}

fn sub_elem(ctx: &FieldCtx, s: &str) -> Result<SubfieldElement> {
    if s.contains(':') {
        return Ok(ctx.sub_from_coeffs(&coeffs(s)?)?);
    }
    let i: u32 = s.parse().with_context(|| format!("bad subfield element `{s}`"))?;
    if i >= ctx.sub_order() {
        bail!("subfield element index {i} out of range");
    }
    Ok(SubfieldElement::from_index(i))
}

fn coeffs(s: &str) -> Result<Vec<u32>> {
    s.split(':').map(|c| c.parse().with_context(|| format!("bad coefficient in `{s}`"))).collect()
}

fn field_info(field: &str, cfg: RunConfig, pretty: bool) -> Result<u8> {
    let g = group_of(field)?;
    let f = g.field();
    let family = CharTable::new(&g).map(|t| format!("{:?}", t.family())).unwrap_or_else(|e| format!("none: {e}"));
    let info = json!({
        "field": f.spec().to_string(),
        "p": f.p(), "m": f.m(), "l": f.l(), "e": f.e(), "f": f.f(),
        "modulus": f.modulus(),
        "field_order": f.order(),
        "subfield_order": f.sub_order(),
        "group_order": g.order(),
        "classes": g.num_classes(),
        "generic_class_size": g.generic_class_size(),
        "character_family": family,
    });
    let summary = format!(
        "GF({}^{}), theta = x^({}^{}), e = {}, f = {}: |G| = {}, {} classes, family {}",
        f.p(),
        f.m(),
        f.p(),
        f.l(),
        f.e(),
        f.f(),
        g.order(),
        g.num_classes(),
        family
    );
    emit(None, pretty, &summary, &envelope(&cfg, info))?;
    Ok(PASS)
}

fn class_label(g: &SuzukiGroup, c: suzuki_core::ClassId) -> String {
    let f = g.field();
    match c {
        suzuki_core::ClassId::Central(b) => format!("C({:?})", f.coeffs(b)),
        suzuki_core::ClassId::Generic(a, x) => format!("C({:?};{:?})", f.coeffs(a), f.sub_coeffs(x)),
    }
}

fn chartable(
    field: &str,
    csv_out: Option<&str>,
    report: Option<&str>,
    squares_only: bool,
    no_hom: bool,
    cfg: RunConfig,
    pretty: bool,
) -> Result<u8> {
    let g = group_of(field)?;
    let table = CharTable::with_options(&g, TableOptions { squares_only_t: squares_only, ..Default::default() })?;
    let entries = table.len() * g.num_classes() as u64;
    if entries > MAX_CSV_ENTRIES {
        bail!("table has {entries} entries, more than {MAX_CSV_ENTRIES}");
    }
    let hom = if no_hom { HomCheck::Skip } else { HomCheck::default_for(&g) };
    let validation = validate_table(&table, hom)?;
    if let Some(path) = csv_out {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {path}"))?;
        let mut header = vec!["character".to_string(), "degree".to_string()];
        header.extend(g.classes().map(|c| class_label(&g, c)));
        w.write_record(&header)?;
        for chi in table.iter() {
            let mut row = vec![table.describe(chi), table.degree(chi).to_string()];
            for c in g.classes() {
                row.push(table.char_value(chi, c)?.to_string());
            }
            w.write_record(&row)?;
        }
        w.flush()?;
    }
    let summary = format!(
        "{}: {} characters listed, {} omitted, validation {}",
        validation.field,
        validation.listed_characters,
        validation.omitted_characters,
        if validation.passed { "passed" } else { "FAILED" }
    );
    let passed = validation.passed;
    emit(report, pretty, &summary, &envelope(&cfg, validation))?;
    Ok(if passed { PASS } else { FAIL })
}

fn variant_source(s: &str) -> Result<(VariantSource, String)> {
    if let Some(path) = s.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let spec: VariantSpec = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
        let shown = serde_json::to_string(&spec)?;
        return Ok((VariantSource::Explicit(spec), format!("file:{shown}")));
    }
    Ok((s.parse()?, s.to_string()))
}

fn member_path(out: &str, i: usize) -> String {
    let p = Path::new(out);
    let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("set");
    let name = format!("{stem}-{i}.json");
    match p.parent().filter(|d| !d.as_os_str().is_empty()) {
        Some(d) => d.join(name).display().to_string(),
        None => name,
    }
}

fn construct(a: &ConstructArgs, threads: Option<usize>, pretty: bool) -> Result<u8> {
    let g = group_of(&a.field)?;
    let ctx = g.field();
    let q = ctx.order();
    let (source, shown) = variant_source(&a.variants)?;
    let mut cfg = RunConfig::new("construct", Some(&a.field), threads).param("kind", a.kind);
    if let Some(t) = &a.t {
        cfg = cfg.param("t", t);
    }
    if let Some(z) = &a.z {
        cfg = cfg.param("z", z);
    }
    cfg.variants = Some(shown);
    if let VariantSource::Seed(s) = source {
        cfg.seed = s;
    }
    let t = a.t.as_deref().map(|s| elem(ctx, s)).transpose()?;
    let z = a.z.as_deref().map(|s| sub_elem(ctx, s)).transpose()?;
    let need_t = || t.ok_or_else(|| anyhow!("--t is required"));
    let z1 = z.unwrap_or(SubfieldElement::ONE);

    let mut built: Vec<Built> = Vec::new();
    match a.kind {
        ConstructKind::DsTz => {
            let t = need_t()?;
            let spec = source.spec(q);
            let s = cons::build_ds_tz(&g, t, z1, &spec)?;
            let c = Construction::DsTz { t: ctx.coeffs(t), z: ctx.sub_coeffs(z1), variants: spec };
            built.push(Built::Central(s, c));
        }
        ConstructKind::DsZ => {
            let spec = source.spec(q);
            let s = cons::build_ds_z(&g, z1, &spec)?;
            built.push(Built::Central(s, Construction::DsZ { z: ctx.sub_coeffs(z1), variants: spec }));
        }
        ConstructKind::LinkingRt | ConstructKind::LinkingR => {
            let fam = match a.kind {
                ConstructKind::LinkingRt => cons::build_linking_rt(&g, need_t()?, &source)?,
                _ => cons::build_linking_r(&g, &source)?,
            };
            for m in &fam.members {
                let c = match fam.t {
                    Some(t) => Construction::DsTz { t: ctx.coeffs(t), z: ctx.sub_coeffs(m.z), variants: m.spec.clone() },
                    None => Construction::DsZ { z: ctx.sub_coeffs(m.z), variants: m.spec.clone() },
                };
                built.push(Built::Central(m.set.clone(), c));
            }
        }
        ConstructKind::PdsTz | ConstructKind::PdsZ | ConstructKind::PdsZprime | ConstructKind::PdsZdprime => {
            let shape = match a.kind {
                ConstructKind::PdsTz => PdsKind::Tz,
                ConstructKind::PdsZ => PdsKind::Z,
                ConstructKind::PdsZprime => PdsKind::ZPrime,
                _ => PdsKind::ZDoublePrime,
            };
            let s = cons::build_pds(&g, shape, t, z)?;
            let (zz, _) = ctx.find_z(z)?;
            let c = Construction::Pds { shape, t: t.map(|t| ctx.coeffs(t)), z: ctx.sub_coeffs(zz) };
            built.push(Built::Central(s, c));
        }
        ConstructKind::Dillon => {
            let spec = cons::DillonSpec::standard(&g)?;
            let elems = cons::build_dillon(&g, &spec)?;
            built.push(Built::Elements(elems, Construction::Dillon));
        }
        ConstructKind::ExampleMf => {
            let side: Side = serde_json::from_value(Value::String(a.side.clone())).context("--side is ker or comp")?;
            let j0 = a.j0.iter().map(|s| elem(ctx, s)).collect::<Result<Vec<_>>>()?;
            let j1 = a.j1.iter().map(|s| elem(ctx, s)).collect::<Result<Vec<_>>>()?;
            let s = cons::build_example_mf(&g, t.map(|t| (t, side)), &j0, &j1)?;
            let c = Construction::ExampleMf {
                t: t.map(|t| ctx.coeffs(t)),
                side: t.map(|_| side),
                j0: j0.iter().map(|&x| ctx.coeffs(x)).collect(),
                j1: j1.iter().map(|&x| ctx.coeffs(x)).collect(),
            };
            built.push(Built::Central(s, c));
        }
    }

    let sizes: Vec<u64> = built.iter().map(Built::size).collect();
    let constructions: Vec<&Construction> = built.iter().map(Built::construction).collect();
    let mut written = Vec::new();
    if let Some(out) = &a.out {
        for (i, b) in built.iter().enumerate() {
            let path = if built.len() == 1 { out.clone() } else { member_path(out, i + 1) };
            b.file(&g)?.write(Path::new(&path))?;
            written.push(path);
        }
    }
    cfg.outputs = written.clone();
    let body = json!({
        "sets": built.len(),
        "cardinalities": sizes,
        "files": written,
        "construction": constructions,
    });
    let summary = match written.is_empty() {
        true => format!("{} set(s) of size {:?}", built.len(), sizes),
        false => format!("{} set(s) of size {:?} written to {}", built.len(), sizes, written.join(", ")),
    };
    let small = built.iter().all(|b| b.classes() <= MAX_FILE_CLASSES as u64);
    if a.out.is_none() && !pretty && small {
        // no file requested: print the set files themselves
        let files = built.iter().map(|b| b.file(&g)).collect::<Result<Vec<_>>>()?;
        println!("{}", serde_json::to_string_pretty(&envelope(&cfg, json!({"summary": body, "sets": files})))?);
    } else {
        emit(None, pretty, &summary, &envelope(&cfg, body))?;
    }
    Ok(PASS)
}

enum Built {
    Central(CentralSet, Construction),
    Elements(Vec<GroupElement>, Construction),
}

impl Built {
    fn size(&self) -> u64 {
        match self {
            Built::Central(s, _) => s.cardinality(),
            Built::Elements(e, _) => e.len() as u64,
        }
    }

    fn classes(&self) -> u64 {
        match self {
            Built::Central(s, _) => s.central_count() + s.generic_class_count(),
            Built::Elements(e, _) => e.len() as u64,
        }
    }

    fn construction(&self) -> &Construction {
        match self {
            Built::Central(_, c) | Built::Elements(_, c) => c,
        }
    }

    fn file(&self, g: &SuzukiGroup) -> Result<SetFile> {
        let n = self.classes();
        if n > MAX_FILE_CLASSES as u64 {
            bail!("set has {n} classes, more than the {MAX_FILE_CLASSES} a set file may hold");
        }
        Ok(match self {
            Built::Central(s, c) => SetFile::central(g, s, Some(c.clone())),
            Built::Elements(e, c) => SetFile::from_elements(g, e, Some(c.clone())),
        })
    }
}

fn load(inputs: &[String]) -> Result<(SuzukiGroup, Vec<SetFile>)> {
    let files = inputs.iter().map(|p| SetFile::read(Path::new(p))).collect::<suzuki_core::Result<Vec<_>>>()?;
    let first = files.first().ok_or_else(|| anyhow!("no input files"))?;
    if let Some(f) = files.iter().find(|f| f.field != first.field) {
        bail!("inputs mix fields {} and {}", first.field, f.field);
    }
    Ok((first.group()?, files))
}

fn verify(
    what: VerifyKind,
    inputs: &[String],
    method: Method,
    max_witnesses: usize,
    report: Option<&str>,
    mut cfg: RunConfig,
    global: &crate::Global,
) -> Result<u8> {
    let (g, files) = load(inputs)?;
    cfg.field = Some(files[0].field.clone());
    let opts = VerifyOptions { max_witnesses };
    let mut r: VerifyReport = match what {
        VerifyKind::Ds | VerifyKind::Pds => {
            if files.len() != 1 {
                bail!("verify {what:?} takes exactly one set file");
            }
            match (files[0].contents(&g)?, what) {
                (SetContents::Central(s), VerifyKind::Ds) => check_ds(&g, &s, method, &opts)?,
                (SetContents::Central(s), _) => check_pds(&g, &s, method, &opts)?,
                (SetContents::Elements(e), VerifyKind::Ds) => check_ds_elements(&g, &e, method, &opts)?,
                (SetContents::Elements(e), _) => pds_elements(&g, &e, method, &opts)?,
            }
        }
        VerifyKind::Linking => {
            let members = files
                .iter()
                .map(|f| match f.contents(&g)? {
                    SetContents::Central(s) => Ok((s, f.construction.clone())),
                    SetContents::Elements(_) => Err(suzuki_core::Error::NonCentralSetForCharacterMethod),
                })
                .collect::<suzuki_core::Result<Vec<_>>>()?;
            let fam = linking_family(&g, &members)?;
            let sets: Vec<CentralSet> = fam.members.iter().map(|m| m.set.clone()).collect();
            let third = |i, j| fam.third(&g, i, j).map(|t| t.2);
            check_linking(&g, &sets, &third, method, &opts)?
        }
    };
    if global.no_timing {
        r.elapsed_ms = None;
    }
    let summary = pretty_report(&r);
    let passed = r.passed;
    emit(report, global.pretty, &summary, &envelope(&cfg, r))?;
    Ok(if passed { PASS } else { FAIL })
}

fn pds_elements(g: &SuzukiGroup, e: &[GroupElement], method: Method, opts: &VerifyOptions) -> Result<VerifyReport> {
    match suzuki_core::verifier::as_central(g, e)? {
        Some(s) => Ok(check_pds(g, &s, method, opts)?),
        None if method == Method::GroupRing => {
            let mut idx: Vec<usize> = e.iter().map(|&x| g.element_index(x) as usize).collect();
            idx.sort_unstable();
            idx.dedup();
            Ok(check_pds_in(g, &idx, opts)?)
        }
        None => Err(suzuki_core::Error::NonCentralSetForCharacterMethod.into()),
    }
}

fn pretty_report(r: &VerifyReport) -> String {
    let mut out = format!(
        "{}: {} ({}){}",
        r.check,
        if r.passed { "PASS" } else { "FAIL" },
        serde_json::to_string(&r.method).unwrap_or_default().trim_matches('"'),
        if r.trivial { ", trivial" } else { "" }
    );
    if let Some(p) = &r.params {
        out += &format!("\n  params: {}", serde_json::to_string(p).unwrap_or_default());
    }
    for w in &r.witnesses {
        out += &format!("\n  witness {:?} at {}: got {}, expected {}", w.kind, w.at, w.got, w.expected);
    }
    if r.witness_total > r.witnesses.len() as u64 {
        out += &format!("\n  ... {} witnesses in total", r.witness_total);
    }
    for n in &r.notes {
        out += &format!("\n  note: {n}");
    }
    out
}

#[derive(Serialize)]
struct SearchReport {
    kind: SearchKind,
    params: Value,
    mode: SearchMode,
    count: usize,
    leaves_checked: u64,
    notes: Vec<String>,
    /// Each set as sorted class indices.
    sets: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
fn search(
    what: SearchKind,
    field: &str,
    params: &[u64],
    mode: Mode,
    report: Option<&str>,
    sets_dir: Option<&str>,
    cfg: RunConfig,
    global: &crate::Global,
) -> Result<u8> {
    let (pretty, no_timing) = (global.pretty, global.no_timing);
    let g = group_of(field)?;
    let start = Instant::now();
    let mode = match mode {
        Mode::Brute => SearchMode::Brute,
        Mode::Pruned => SearchMode::Pruned,
    };
    let [v, k, l, x] = params else { bail!("--params needs four values") };
    let (out, shown) = match what {
        SearchKind::Ds => {
            let p = DsParams::with_n(*v, *k, *l, *x)?;
            (search_central_ds(&g, p, mode)?, serde_json::to_value(p)?)
        }
        SearchKind::Pds => {
            let p = PdsParams::new(*v, *k, *l, *x);
            (search_central_pds(&g, p, mode)?, serde_json::to_value(p)?)
        }
    };
    let sets: Vec<Vec<usize>> = out.sets.iter().map(|s| s.classes().map(|c| g.class_index(c)).collect()).collect();
    if let Some(dir) = sets_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {dir}"))?;
        for (i, s) in out.sets.iter().enumerate() {
            let c = Construction::Search { params: params.to_vec(), index: i };
            write_json(&format!("{dir}/set-{:04}.json", i + 1), &SetFile::central(&g, s, Some(c)))?;
        }
    }
    let r = SearchReport {
        kind: what,
        params: shown,
        mode,
        count: sets.len(),
        leaves_checked: out.leaves_checked,
        notes: out.notes,
        sets,
        elapsed_ms: (!no_timing).then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    let summary = format!("{} sets found, {} leaves checked", r.count, r.leaves_checked);
    emit(report, pretty, &summary, &envelope(&cfg, r))?;
    Ok(PASS)
}
