use std::collections::BTreeMap;

use coxring::families::{self, validate_family, Violation};
use coxring::formats::{
    big_to_json, elem_from_json, elem_to_json, to_big, unit_from_json, FamilyDoc, ToricDoc,
    SCHEMA_VERSION,
};
use coxring::toricdiv::{self, class_group, nonnegative_window};
use coxring::{ext1_units, AbHom, Elem, FgAb, IntMatrix, Unit, UnitGroup};
use serde::{Deserialize, Serialize};

use crate::table::tuple;
use crate::{
    parse_json, read_input, CliResult, CoxdimArgs, Failure, GroupArgs, InputArgs, Rendered,
    ReportArgs, Table,
};

fn group(lit: &str) -> CliResult<FgAb> {
    Ok(lit.parse::<FgAb>()?)
}

fn units(lit: &str) -> CliResult<UnitGroup> {
    Ok(lit.parse::<UnitGroup>()?)
}

fn cocycle_table(doc: &FamilyDoc) -> Table {
    let mut t = Table::new(&["g", "h", "value"]);
    for e in &doc.cocycle {
        t.push(vec![tuple(&e.g), tuple(&e.h), tuple(&e.value)]);
    }
    t
}

#[derive(Serialize)]
struct Ext1Out {
    schema_version: u32,
    command: &'static str,
    grading: String,
    units: String,
    ext1: String,
    order: Option<String>,
}

pub fn ext1(a: &GroupArgs) -> CliResult<Rendered> {
    let g = group(&a.group)?;
    let u = units(&a.units)?;
    let e = ext1_units(&g, &u);
    let out = Ext1Out {
        schema_version: SCHEMA_VERSION,
        command: "ext1",
        grading: g.literal(),
        units: u.literal(),
        ext1: e.literal(),
        order: e.order().map(|o| o.to_string()),
    };
    let mut t = Table::new(&["grading", "units", "ext1", "order"]);
    t.push(vec![
        out.grading.clone(),
        out.units.clone(),
        out.ext1.clone(),
        out.order.clone().unwrap_or_else(|| "infinite".into()),
    ]);
    Rendered::new(&out, t)
}

#[derive(Serialize)]
struct ClassifyOut {
    schema_version: u32,
    command: &'static str,
    grading: String,
    units: String,
    ext1: String,
    count: usize,
    representatives: Vec<FamilyDoc>,
}

pub fn classify(a: &GroupArgs) -> CliResult<Rendered> {
    let g = group(&a.group)?;
    let u = units(&a.units)?;
    let report = families::classify(&g, &u)?;
    let representatives = report
        .representatives
        .iter()
        .map(FamilyDoc::from_family)
        .collect::<coxring::Result<Vec<_>>>()?;
    let mut t = Table::new(&["class", "g", "h", "value"]);
    for (i, rep) in representatives.iter().enumerate() {
        if rep.cocycle.is_empty() {
            t.push(vec![i.to_string(), "-".into(), "-".into(), "-".into()]);
        }
        for e in &rep.cocycle {
            t.push(vec![i.to_string(), tuple(&e.g), tuple(&e.h), tuple(&e.value)]);
        }
    }
    let out = ClassifyOut {
        schema_version: SCHEMA_VERSION,
        command: "classify",
        grading: report.grading.literal(),
        units: report.units.literal(),
        ext1: report.ext1.literal(),
        count: report.count(),
        representatives,
    };
    Rendered::new(&out, t)
}

#[derive(Serialize)]
struct ViolationOut {
    kind: &'static str,
    at: Vec<Vec<i64>>,
}

impl ViolationOut {
    fn new(v: &Violation) -> coxring::Result<Self> {
        let (kind, at): (_, Vec<&Elem>) = match v {
            Violation::Normalization { g } => ("normalization", vec![g]),
            Violation::Symmetry { g, h } => ("symmetry", vec![g, h]),
            Violation::Cocycle { g, h, t } => ("cocycle", vec![g, h, t]),
        };
        Ok(ViolationOut {
            kind,
            at: at.into_iter().map(elem_to_json).collect::<coxring::Result<_>>()?,
        })
    }
}

#[derive(Serialize)]
struct ValidateItem {
    index: usize,
    valid: bool,
    violations: Vec<ViolationOut>,
}

#[derive(Serialize)]
struct ValidateOut {
    schema_version: u32,
    command: &'static str,
    valid: bool,
    families: Vec<ValidateItem>,
}

/// A single family, or the `representatives` of a classification.
fn family_docs(text: &str) -> CliResult<Vec<FamilyDoc>> {
    let value: serde_json::Value = parse_json(text)?;
    match value.get("representatives") {
        Some(reps) => serde_json::from_value(reps.clone())
            .map_err(|e| Failure::input(format!("invalid representatives: {e}"))),
        None => Ok(vec![serde_json::from_value(value)
            .map_err(|e| Failure::input(format!("invalid family: {e}")))?]),
    }
}

pub fn family_validate(a: &InputArgs) -> CliResult<Rendered> {
    let docs = family_docs(&read_input(a)?)?;
    let mut items = Vec::with_capacity(docs.len());
    let mut t = Table::new(&["family", "kind", "at"]);
    for (index, doc) in docs.iter().enumerate() {
        let f = doc.to_family()?;
        let violations = validate_family(&f)
            .iter()
            .map(ViolationOut::new)
            .collect::<coxring::Result<Vec<_>>>()?;
        for v in &violations {
            let at: Vec<String> = v.at.iter().map(|x| tuple(x)).collect();
            t.push(vec![index.to_string(), v.kind.to_string(), at.join(" ")]);
        }
        items.push(ValidateItem {
            index,
            valid: violations.is_empty(),
            violations,
        });
    }
    let out = ValidateOut {
        schema_version: SCHEMA_VERSION,
        command: "family-validate",
        valid: items.iter().all(|i| i.valid),
        families: items,
    };
    Rendered::new(&out, t)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IsoInput {
    left: FamilyDoc,
    right: FamilyDoc,
}

#[derive(Serialize)]
struct MuEntry {
    g: Vec<i64>,
    value: Vec<i64>,
}

#[derive(Serialize)]
struct IsoOut {
    schema_version: u32,
    command: &'static str,
    isomorphic: bool,
    mu: Option<Vec<MuEntry>>,
}

pub fn family_iso(a: &InputArgs) -> CliResult<Rendered> {
    let input: IsoInput = parse_json(&read_input(a)?)?;
    let left = input.left.to_family()?;
    let right = input.right.to_family()?;
    let iso = families::find_isomorphism(&left, &right)?;
    let mut t = Table::new(&["g", "mu"]);
    let mu = iso
        .map(|iso| {
            iso.mu()
                .iter()
                .map(|(g, v)| {
                    let e = MuEntry {
                        g: elem_to_json(g)?,
                        value: elem_to_json(v.elem())?,
                    };
                    t.push(vec![tuple(&e.g), tuple(&e.value)]);
                    Ok(e)
                })
                .collect::<coxring::Result<Vec<_>>>()
        })
        .transpose()?;
    if mu.is_none() {
        t.push(vec!["-".into(), "not isomorphic".into()]);
    }
    let out = IsoOut {
        schema_version: SCHEMA_VERSION,
        command: "family-iso",
        isomorphic: mu.is_some(),
        mu,
    };
    Rendered::new(&out, t)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtendInput {
    family: FamilyDoc,
    /// Literal of the larger group.
    grading: String,
    /// Images of the generators of the family's grading, in the generators
    /// of `grading`.
    embedding: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct FamilyOut {
    schema_version: u32,
    command: &'static str,
    family: FamilyDoc,
}

pub fn family_extend(a: &InputArgs) -> CliResult<Rendered> {
    let input: ExtendInput = parse_json(&read_input(a)?)?;
    let f = input.family.to_family()?;
    let g = group(&input.grading)?;
    let alpha = map_from_images(f.grading(), &g, &input.embedding)?;
    let ext = families::extend_family(&f, &alpha)?;
    let doc = FamilyDoc::from_family(&ext)?;
    let t = cocycle_table(&doc);
    let out = FamilyOut {
        schema_version: SCHEMA_VERSION,
        command: "family-extend",
        family: doc,
    };
    Rendered::new(&out, t)
}

fn map_from_images(source: &FgAb, target: &FgAb, images: &[Vec<i64>]) -> CliResult<AbHom> {
    if images.len() != source.num_generators() {
        return Err(Failure::input(format!(
            "embedding lists {} images for {} generators",
            images.len(),
            source.num_generators()
        )));
    }
    if let Some(v) = images.iter().find(|v| v.len() != target.num_generators()) {
        return Err(Failure::input(format!(
            "image {v:?} does not have {} coordinates",
            target.num_generators()
        )));
    }
    let cols: Vec<_> = images.iter().map(|v| to_big(v)).collect();
    let m = IntMatrix::from_columns(&cols, target.num_generators())?;
    Ok(AbHom::new(source.clone(), target.clone(), m)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TrivEntry {
    g: Vec<i64>,
    value: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuotientInput {
    family: FamilyDoc,
    /// Generators of the subgroup, in the generators of the grading.
    subgroup: Vec<Vec<i64>>,
    /// Values on elements of the subgroup; found automatically when absent.
    #[serde(default)]
    trivialization: Option<Vec<TrivEntry>>,
    /// Search radius for the automatic trivialization of an infinite subgroup.
    #[serde(default)]
    window: Option<u64>,
}

pub fn family_quotient(a: &InputArgs) -> CliResult<Rendered> {
    let input: QuotientInput = parse_json(&read_input(a)?)?;
    let f = input.family.to_family()?;
    let g = f.grading().clone();
    let gens = input
        .subgroup
        .iter()
        .map(|v| elem_from_json(&g, v))
        .collect::<coxring::Result<Vec<_>>>()?;
    let (h, incl) = g.subgroup(&gens)?;
    let triv: BTreeMap<Elem, Unit> = match &input.trivialization {
        Some(entries) => {
            let mut map = BTreeMap::new();
            for e in entries {
                let x = elem_from_json(&g, &e.g)?;
                let y = incl.preimage(&x).ok_or_else(|| {
                    Failure::from(coxring::Error::Precondition(format!(
                        "{x} is not in the subgroup"
                    )))
                })?;
                map.insert(y, unit_from_json(f.units(), &e.value)?);
            }
            map.entry(h.zero()).or_insert_with(|| f.units().one());
            map
        }
        None => families::trivialization_on(&f, &incl, input.window.unwrap_or(2))?.ok_or_else(
            || {
                Failure::from(coxring::Error::Precondition(
                    "family is not trivial on the subgroup".into(),
                ))
            },
        )?,
    };
    let bar = families::induce_quotient_family(&f, &incl, &triv)?;
    let doc = FamilyDoc::from_family(&bar)?;
    let t = cocycle_table(&doc);
    let out = FamilyOut {
        schema_version: SCHEMA_VERSION,
        command: "family-quotient",
        family: doc,
    };
    Rendered::new(&out, t)
}

#[derive(Serialize)]
struct ClassGroupOut {
    schema_version: u32,
    command: &'static str,
    class_group: String,
    ray_classes: Vec<Vec<i64>>,
    positive_relation: Option<Vec<i64>>,
}

pub fn toric_classgroup(a: &InputArgs) -> CliResult<Rendered> {
    let doc: ToricDoc = parse_json(&read_input(a)?)?;
    let t = doc.presentation()?;
    let (cl, proj) = class_group(&t)?;
    let free = FgAb::free(t.num_rays());
    let ray_classes = (0..t.num_rays())
        .map(|i| elem_to_json(&proj.apply(&free.generator(i))))
        .collect::<coxring::Result<Vec<_>>>()?;
    let mut table = Table::new(&["ray", "class"]);
    for (i, c) in ray_classes.iter().enumerate() {
        table.push(vec![tuple(&doc.rays[i]), tuple(c)]);
    }
    let out = ClassGroupOut {
        schema_version: SCHEMA_VERSION,
        command: "toric-classgroup",
        class_group: cl.literal(),
        ray_classes,
        positive_relation: t.positive_relation().map(big_to_json).transpose()?,
    };
    Rendered::new(&out, table)
}

fn int_list(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<i64>()
                .map_err(|_| Failure::input(format!("bad integer {p:?} in {s:?}")))
        })
        .collect()
}

#[derive(Serialize)]
struct CoxdimOut {
    schema_version: u32,
    command: &'static str,
    class_group: String,
    class: Vec<i64>,
    preimage: Vec<i64>,
    dimension: u64,
    monomial_dimension: u64,
}

pub fn toric_coxdim(a: &CoxdimArgs) -> CliResult<Rendered> {
    let doc: ToricDoc = parse_json(&read_input(&a.input)?)?;
    let p = doc.divisorial()?;
    let cl = p.class_group().clone();
    let class = match (&a.class, &a.divisor) {
        (Some(c), _) => cl.reduce(to_big(&int_list(c)?))?,
        (None, Some(d)) => cl.from_generators(&to_big(&int_list(d)?))?,
        (None, None) => return Err(Failure::input("give --class or --divisor")),
    };
    let preimage = p.preimage(&class)?;
    let out = CoxdimOut {
        schema_version: SCHEMA_VERSION,
        command: "toric-coxdim",
        class_group: cl.literal(),
        class: elem_to_json(&class)?,
        preimage: big_to_json(&preimage)?,
        dimension: toricdiv::cox_piece_dimension(&p, &class)?,
        monomial_dimension: toricdiv::monomial_piece_dimension(p.toric(), &class)?,
    };
    let mut t = Table::new(&["class", "preimage", "dimension", "monomial_dimension"]);
    t.push(vec![
        tuple(&out.class),
        tuple(&out.preimage),
        out.dimension.to_string(),
        out.monomial_dimension.to_string(),
    ]);
    Rendered::new(&out, t)
}

#[derive(Serialize)]
struct RowOut {
    k: Vec<i64>,
    class: Vec<i64>,
    dimension: u64,
    cox_dimension: u64,
    monomial_dimension: u64,
}

#[derive(Serialize)]
struct ReportOut {
    schema_version: u32,
    command: &'static str,
    class_group: String,
    max_degree: u32,
    rows: Vec<RowOut>,
}

pub fn toric_report(a: &ReportArgs) -> CliResult<Rendered> {
    let doc: ToricDoc = parse_json(&read_input(&a.input)?)?;
    let p = doc.divisorial()?;
    let window = nonnegative_window(p.k0_rank(), a.max_degree);
    let rows = toricdiv::divisorial_algebra_report(&p, &window)?
        .into_iter()
        .map(|r| {
            Ok(RowOut {
                k: big_to_json(&r.k)?,
                class: elem_to_json(&r.class)?,
                dimension: r.dimension,
                cox_dimension: r.cox_dimension,
                monomial_dimension: r.monomial_dimension,
            })
        })
        .collect::<coxring::Result<Vec<_>>>()?;
    let mut t = Table::new(&["k", "class", "dimension", "cox_dimension", "monomial_dimension"]);
    for r in &rows {
        t.push(vec![
            tuple(&r.k),
            tuple(&r.class),
            r.dimension.to_string(),
            r.cox_dimension.to_string(),
            r.monomial_dimension.to_string(),
        ]);
    }
    let out = ReportOut {
        schema_version: SCHEMA_VERSION,
        command: "toric-report",
        class_group: p.class_group().literal(),
        max_degree: a.max_degree,
        rows,
    };
    Rendered::new(&out, t)
}
